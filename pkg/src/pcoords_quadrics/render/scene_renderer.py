from __future__ import annotations

from abc import ABC, abstractmethod

from pcoords_quadrics.models import Scene


class SceneRenderer(ABC):
    """
    Interface for turning a parallel-coordinates scene into a document.
    This is the base abstract class that all renderers should extend.
    """

    @abstractmethod
    def render(self, scene: Scene) -> str:
        """
        Render a scene.

        Args:
            scene: Axes, cloud, boundary conic and polylines to draw

        Returns:
            The document text; identical scenes give identical text
        """
        pass
