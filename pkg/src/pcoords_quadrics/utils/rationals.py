from __future__ import annotations

import json
from fractions import Fraction
from typing import List, Tuple, Union

import numpy as np

from pcoords_quadrics.errors import UsageError


class RationalJsonEncoder(json.JSONEncoder):
    """A custom JSON encoder that can encode exact rationals and numpy scalars."""

    def default(self, obj):
        if isinstance(obj, Fraction):
            if obj.denominator == 1:
                return obj.numerator
            return f"{obj.numerator}/{obj.denominator}"
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return float(obj)
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        return json.JSONEncoder.default(self, obj)


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """
    Parse "3", "-1/2" or "0.25" into an exact Fraction.

    Raises:
        UsageError: the text is not a finite rational literal
    """
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"Not a rational number: {text!r}") from e


def parse_rational_list(text: str) -> List[Fraction]:
    """Comma separated rationals, e.g. the spacing flag "0,1/2,3"."""
    pieces = [piece for piece in text.split(",") if piece.strip()]
    if not pieces:
        raise UsageError(f"Expected a comma separated list of rationals, got {text!r}")
    return [parse_rational(piece) for piece in pieces]


def parse_interval(text: str) -> Tuple[float, float]:
    """An interval "lo:hi" with lo < hi."""
    try:
        low, high = (float(part) for part in text.split(":"))
    except ValueError as e:
        raise UsageError(f"Interval must look like lo:hi, got {text!r}") from e
    if not low < high:
        raise UsageError(f"Empty interval {text!r}")
    return low, high


def parse_domain(text: str) -> List[Tuple[float, float]]:
    """
    Per-variable sampling intervals: "-4:4,-4:4,-2:2".

    A single interval is repeated for every variable by the caller.
    """
    return [parse_interval(piece) for piece in text.split(",") if piece.strip()]
