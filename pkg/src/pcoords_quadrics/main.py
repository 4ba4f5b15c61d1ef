from __future__ import annotations

import argparse
import io
import json
import logging
import re
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from pcoords_quadrics.boundary import boundary_curve
from pcoords_quadrics.errors import BoundaryError, PcoordsError, UsageError
from pcoords_quadrics.models import (
    AxisSpacing,
    BoundaryCurve,
    CloudReport,
    QuadricSurface,
    SampleConfig,
    SampleMode,
)
from pcoords_quadrics.parsing import parse_surface
from pcoords_quadrics.render import DEFAULT_RESOLUTION, build_scene, render_svg, scene_json
from pcoords_quadrics.sampler import (
    attach_curve_residual,
    dual_cloud,
    sample_surface,
    validate_boundary,
    write_cloud_csv,
)
from pcoords_quadrics.suite import run_suite
from pcoords_quadrics.utils import RationalJsonEncoder, parse_domain

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
DEFAULT_LOG_LEVEL = "WARNING"

# Output format used when --format is not given.
DEFAULT_FORMATS = {
    "boundary": "json",
    "sample": "csv",
    "verify": "json",
    "render": "svg",
    "paper-suite": "text",
}
FORMATS = {
    "boundary": ("json", "text"),
    "sample": ("csv", "json"),
    "verify": ("json", "text"),
    "render": ("svg", "json"),
    "paper-suite": ("text", "json"),
}

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# Flags whose values may start with a minus sign, e.g. --domain -6:6 or --point -1,0,2.
SIGNED_VALUE_FLAGS = ("--domain", "--spacing", "--point")
SIGNED_VALUE = re.compile(r"^-[0-9.]")


def _configure_logging(level: str) -> None:
    logging.basicConfig(
        format="%(asctime)s %(levelname)s - %(message)s",
        datefmt="%d-%b-%y %H:%M:%S",
        level=level,
        stream=sys.stderr,
        force=True,
    )


def _common_parser() -> argparse.ArgumentParser:
    """Flags shared by every subcommand."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--surface", type=str, help='Surface equation, e.g. "x^2 + y^2 + z^2 = 2".')
    common.add_argument(
        "--surface-file", type=str, help='File holding the surface equation; "-" reads stdin.'
    )
    common.add_argument(
        "--nvars",
        type=int,
        help="Number of variables when the equation uses x1..xn names. Default: highest index used.",
    )
    common.add_argument(
        "--spacing", type=str, help='Axis positions as rationals, e.g. "0,1,2". Default: 0,1,...,n-1.'
    )
    common.add_argument(
        "--domain",
        type=str,
        help='Sampling box "lo:hi" (repeated for every variable) or one interval per variable.',
    )
    common.add_argument("--count", type=int, help="Target number of surface samples. Default: 1000.")
    common.add_argument("--seed", type=int, help="Random seed for the samplers. Default: 0.")
    common.add_argument(
        "--mode",
        type=str,
        choices=[mode.value for mode in SampleMode],
        help="Surface sampler. Default: builtin-param.",
    )
    common.add_argument("--tol-contact", type=float, help="Boundary hit tolerance on the contact value.")
    common.add_argument("--tol-curve", type=float, help="Tolerance on the conic residual of boundary hits.")
    common.add_argument("--refine", type=int, help="Contact sign changes refined per cloud. Default: 32.")
    common.add_argument("--workers", type=int, help="Threads evaluating the dual cloud. Default: 1.")
    common.add_argument(
        "--resolution",
        type=int,
        help=f"Contour grid cells per side when rendering. Default: {DEFAULT_RESOLUTION}.",
    )
    common.add_argument(
        "--point",
        type=str,
        action="append",
        help='Point drawn as its polygonal line, e.g. "1,1,0". May be repeated.',
    )
    common.add_argument("--out", type=str, help="Write the output here instead of stdout.")
    common.add_argument("--format", type=str, help="Output format; depends on the subcommand.")
    common.add_argument("--config", type=str, help="JSON file whose keys mirror these flags.")
    common.add_argument(
        "--log-level",
        type=str.upper,
        choices=LOG_LEVELS,
        help=f"Logging threshold on stderr. Default: {DEFAULT_LOG_LEVEL}.",
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    argparser = argparse.ArgumentParser(
        prog="pcoords-quadrics",
        description="Represent quadric surfaces in parallel coordinates.",
    )
    subparsers = argparser.add_subparsers(dest="command", required=True)
    subparsers.add_parser(
        "boundary", parents=[common], help="Compute the boundary conic of the dual region."
    )
    subparsers.add_parser(
        "sample", parents=[common], help="Sample the surface and write its dual point cloud."
    )
    subparsers.add_parser(
        "verify",
        parents=[common],
        help="Cross-check the symbolic boundary against a numeric dual cloud.",
    )
    subparsers.add_parser(
        "render", parents=[common], help="Draw axes, dual cloud and boundary conic as SVG."
    )
    subparsers.add_parser(
        "paper-suite",
        parents=[common],
        help="Run the saddle, sphere and hyperboloid reference surfaces end to end.",
    )
    return argparser


def load_config(path: str) -> Dict:
    """
    Read a JSON config file mirroring the long flag names.

    Keys may use dashes or underscores. List values for "point" are accepted
    as lists of strings or lists of numbers.

    Raises:
        UsageError: the file is missing, not JSON, or names an unknown flag
    """
    try:
        data = json.loads(Path(path).read_text())
    except OSError as e:
        raise UsageError(f"Cannot read config file {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise UsageError(f"Config file {path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise UsageError(f"Config file {path} must hold a JSON object")

    known = {action.dest for action in _common_parser()._actions}
    config = {}
    for key, value in data.items():
        dest = key.lstrip("-").replace("-", "_")
        if dest not in known or dest == "config":
            raise UsageError(f"Unknown config key {key!r} in {path}")
        if dest == "point":
            value = [
                item if isinstance(item, str) else ",".join(str(v) for v in item)
                for item in value
            ]
        elif dest == "log_level":
            value = str(value).upper()
        elif dest == "domain" and isinstance(value, list):
            value = ",".join(
                item if isinstance(item, str) else ":".join(str(v) for v in item) for item in value
            )
        elif dest == "spacing" and isinstance(value, list):
            value = ",".join(str(v) for v in value)
        config[dest] = value
    return config


def join_signed_values(argv: Sequence[str]) -> List[str]:
    """
    Rewrite "--domain -6:6" as "--domain=-6:6" for the flags in
    SIGNED_VALUE_FLAGS; argparse would otherwise read "-6:6" as an option.
    """
    joined: List[str] = []
    tokens = iter(argv)
    for token in tokens:
        if token in SIGNED_VALUE_FLAGS:
            value = next(tokens, None)
            if value is None:
                joined.append(token)
            elif SIGNED_VALUE.match(value):
                joined.append(f"{token}={value}")
            else:
                joined.extend([token, value])
        else:
            joined.append(token)
    return joined


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Parse the command line; values from --config fill in flags that were not given."""
    argv = sys.argv[1:] if argv is None else argv
    args = build_parser().parse_args(join_signed_values(argv))
    if args.config:
        for dest, value in load_config(args.config).items():
            if getattr(args, dest, None) is None:
                setattr(args, dest, value)
    return args


def read_surface(args: argparse.Namespace) -> QuadricSurface:
    if args.surface and args.surface_file:
        raise UsageError("Give either --surface or --surface-file, not both")
    if args.surface:
        text = args.surface
    elif args.surface_file:
        if args.surface_file == "-":
            text = sys.stdin.read()
        else:
            try:
                text = Path(args.surface_file).read_text()
            except OSError as e:
                raise UsageError(f"Cannot read surface file {args.surface_file}: {e}") from e
    else:
        raise UsageError("A surface is required: pass --surface or --surface-file")
    return parse_surface(text.strip(), args.nvars)


def read_spacing(args: argparse.Namespace, nvars: int) -> AxisSpacing:
    spacing = AxisSpacing.parse(args.spacing) if args.spacing else None
    return AxisSpacing.resolve(spacing, nvars)


def read_sample_config(args: argparse.Namespace) -> SampleConfig:
    changes: Dict = {}
    if args.mode is not None:
        changes["mode"] = SampleMode.parse(args.mode)
    if args.domain is not None:
        changes["domain"] = tuple(parse_domain(args.domain))
    for name in ("count", "seed", "tol_contact", "tol_curve", "refine", "workers"):
        value = getattr(args, name)
        if value is not None:
            changes[name] = value
    return SampleConfig().with_changes(**changes)


def read_points(args: argparse.Namespace, nvars: int) -> List[List[float]]:
    points = []
    for text in args.point or ():
        try:
            point = [float(value) for value in text.split(",")]
        except ValueError as e:
            raise UsageError(f"Not a point: {text!r}") from e
        if len(point) != nvars:
            raise UsageError(f"Point {text!r} has {len(point)} coordinates, expected {nvars}")
        points.append(point)
    return points


def output_format(args: argparse.Namespace) -> str:
    chosen = args.format or DEFAULT_FORMATS[args.command]
    if chosen not in FORMATS[args.command]:
        raise UsageError(
            f"Format {chosen!r} is not available for {args.command}; "
            f"choose one of {', '.join(FORMATS[args.command])}"
        )
    return chosen


def emit(text: str, out: Optional[str]) -> None:
    if out:
        try:
            Path(out).write_text(text)
        except OSError as e:
            raise UsageError(f"Cannot write {out}: {e}") from e
        logging.info(f"Wrote {out}")
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def to_json(record) -> str:
    return json.dumps(record, cls=RationalJsonEncoder, indent=2, sort_keys=True) + "\n"


def _cloud(surface: QuadricSurface, spacing: AxisSpacing, config: SampleConfig) -> CloudReport:
    points = sample_surface(surface, config)
    return dual_cloud(surface, points, spacing, config)


def _cloud_csv(report: CloudReport) -> str:
    buffer = io.StringIO()
    write_cloud_csv(report, buffer)
    return buffer.getvalue()


def command_boundary(args: argparse.Namespace) -> int:
    surface = read_surface(args)
    spacing = read_spacing(args, surface.nvars)
    fmt = output_format(args)
    curve = boundary_curve(surface, spacing)
    if fmt == "json":
        emit(to_json(curve.asdict()), args.out)
    elif curve.text is not None:
        emit(f"{curve.text} = 0\n", args.out)
    else:
        emit(f"{curve.degenerate}: indexed point {curve.indexed_point}\n", args.out)
    return EXIT_OK


def command_sample(args: argparse.Namespace) -> int:
    surface = read_surface(args)
    spacing = read_spacing(args, surface.nvars)
    fmt = output_format(args)
    report = _cloud(surface, spacing, read_sample_config(args))
    if surface.nvars == 3:
        try:
            report = attach_curve_residual(report, boundary_curve(surface, spacing))
        except BoundaryError as e:
            logging.info(f"No boundary conic to measure the cloud against: {e}")
    if fmt == "csv":
        emit(_cloud_csv(report), args.out)
    else:
        emit(to_json(report.asdict()), args.out)
    return EXIT_OK


def command_verify(args: argparse.Namespace) -> int:
    surface = read_surface(args)
    spacing = read_spacing(args, surface.nvars)
    fmt = output_format(args)
    config = read_sample_config(args)
    curve = boundary_curve(surface, spacing)
    report = attach_curve_residual(_cloud(surface, spacing, config), curve)
    summary = validate_boundary(report, curve, config)
    if fmt == "json":
        record = {"boundary": curve.text, "validation": summary.asdict(), "cloud": report.asdict()}
        emit(to_json(record), args.out)
    else:
        status = "PASS" if summary.passed else "FAIL"
        detail = summary.reason or f"{summary.n_checked} hits within {summary.tolerance:g}"
        emit(f"{status} {curve.text} = 0 ({detail})\n", args.out)
    return EXIT_OK if summary.passed else EXIT_FAILED


def command_render(args: argparse.Namespace) -> int:
    surface = read_surface(args)
    spacing = read_spacing(args, surface.nvars)
    fmt = output_format(args)
    config = read_sample_config(args)
    curve: Optional[BoundaryCurve] = None
    if surface.nvars == 3:
        try:
            curve = boundary_curve(surface, spacing)
        except BoundaryError as e:
            logging.warning(f"Rendering without a boundary conic: {e}")
    scene = build_scene(
        spacing,
        cloud=_cloud(surface, spacing, config),
        curve=curve,
        polylines=read_points(args, surface.nvars),
        title=f"{surface}",
        resolution=args.resolution or DEFAULT_RESOLUTION,
    )
    emit(render_svg(scene) if fmt == "svg" else scene_json(scene) + "\n", args.out)
    return EXIT_OK


def command_paper_suite(args: argparse.Namespace) -> int:
    fmt = output_format(args)
    results = run_suite(read_sample_config(args))
    if fmt == "text":
        emit("".join(result.line() + "\n" for result in results), args.out)
    else:
        emit(
            to_json(
                [
                    {
                        "name": result.case.name,
                        "passed": result.passed,
                        "boundary": result.boundary,
                        "expected": result.case.boundary,
                        "published_caption": result.case.published_caption,
                        "validation": result.validation.asdict() if result.validation else None,
                        "n_points": result.n_points,
                        "error": result.error,
                    }
                    for result in results
                ]
            ),
            args.out,
        )
    return EXIT_OK if all(result.passed for result in results) else EXIT_FAILED


COMMANDS = {
    "boundary": command_boundary,
    "sample": command_sample,
    "verify": command_verify,
    "render": command_render,
    "paper-suite": command_paper_suite,
}


def report_error(message: str) -> None:
    """Write an error to stderr regardless of the configured log level."""
    logging.debug(message)
    sys.stderr.write(f"pcoords-quadrics: error: {message}\n")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the CLI and return its exit status.

    Returns:
        0 on success, 1 when a verification or the suite fails, 2 on usage,
        parse or degenerate-input errors
    """
    try:
        args = parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    except PcoordsError as e:
        report_error(str(e))
        return EXIT_USAGE

    _configure_logging(args.log_level or DEFAULT_LOG_LEVEL)
    try:
        return COMMANDS[args.command](args)
    except PcoordsError as e:
        report_error(f"{args.command} failed: {e}")
        return EXIT_USAGE


def main() -> None:
    """Main entry point for the CLI."""
    sys.exit(run())
