"""Command-line front end.

Every subcommand prints JSON (rationals as ``"n/d"`` strings) unless ``--format``
asks for CSV or SVG.  Exit codes: 0 success, 2 bad arguments, 3 precondition
violation, 4 resource cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from .boxes import BoxSet, image
from .directions import classify, entropy, height, zeta_series
from .errors import PreconditionError, ResourceCapError
from .group import (
    SolenoidPoint,
    WilsonTrace,
    act,
    add,
    reduce_to_F,
    truncate,
    wilson_backward,
    wilson_forward,
)
from .partition import (
    DEFAULT_CAP,
    generator_profile,
    markov_check,
    orbit_join,
    transition_matrix,
    xi,
)
from .rational import format_rational, parse_rational
from .render import PROJECTIONS, RenderSpec, render_boxset, render_cone_gallery

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_CAP = 0, 2, 3, 4


# -- argument types ------------------------------------------------------------


def _rational(text: str):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"malformed rational {text!r}; expected n/d") from exc


def _triple(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated rationals, got {text!r}")
    return tuple(_rational(p.strip()) for p in parts)


def _rational_list(text: str):
    return tuple(_rational(p.strip()) for p in text.split(",") if p.strip())


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from exc
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _nonnegative(text: str) -> int:
    try:
        n = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}") from exc
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {n}")
    return n


def _directions(text: str) -> list[tuple[int, int]]:
    out = []
    for item in text.split(";"):
        item = item.strip()
        if not item:
            continue
        try:
            a, b = (int(v) for v in item.split(","))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"bad direction {item!r}; expected a,b") from exc
        out.append((a, b))
    return out


# -- output ---------------------------------------------------------------------


def _csv(rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in rows:
        w.writerow(["" if v is None else format_rational(v) if isinstance(v, Fraction) else v for v in row])
    return buf.getvalue()


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _boxset_rows(s: BoxSet) -> list[list]:
    rows: list[list] = [["lo", "hi", "two_res", "two_exp", "three_res", "three_exp"]]
    for b in s.boxes:
        rows.append([format_rational(b.lo), format_rational(b.hi), b.cls2.residue, b.cls2.mod_exp, b.cls3.residue, b.cls3.mod_exp])
    return rows


def _point(args: argparse.Namespace, name: str) -> SolenoidPoint:
    value = getattr(args, name)
    if value is None:
        raise PreconditionError(f"--{name} is required")
    return SolenoidPoint(*value)


def _load_boxset(path: str) -> BoxSet:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise PreconditionError(f"cannot read box set from {path}: {exc}") from exc
    return BoxSet.from_json(obj)


# -- subcommands -----------------------------------------------------------------


def cmd_reduce(args) -> str:
    x, r = reduce_to_F(args.x)
    return _json({"point": x.to_json(), "shift": format_rational(r)})


def cmd_add(args) -> str:
    return _json({"point": add(_point(args, "x"), _point(args, "y")).to_json()})


def cmd_act(args) -> str:
    return _json({"a": args.a, "b": args.b, "point": act(_point(args, "x"), args.a, args.b).to_json()})


def _source_set(args) -> BoxSet:
    if args.boxset:
        return _load_boxset(args.boxset)
    base = xi(args.a, args.b)
    if not 0 <= args.atom < len(base):
        raise PreconditionError(f"atom index {args.atom} outside 0..{len(base) - 1}")
    return base[args.atom]


def cmd_image(args) -> str:
    s = image(_source_set(args), args.power * args.a, args.power * args.b)
    if args.format == "csv":
        return _csv(_boxset_rows(s))
    return _json({"a": args.a, "b": args.b, "power": args.power, "image": s.to_json()})


def cmd_partition(args) -> str:
    p = xi(args.a, args.b)
    if args.format == "csv":
        rows = [["atom", "lo", "hi"]]
        rows += [[k, format_rational(s.boxes[0].lo), format_rational(s.boxes[0].hi)] for k, s in enumerate(p)]
        return _csv(rows)
    return _json({"a": args.a, "b": args.b, "height": height(args.a, args.b), **p.to_json()})


def cmd_refine(args) -> str:
    n = args.depth
    part, report = orbit_join(args.a, args.b, -n, n, args.cap)
    if args.format == "csv":
        r = report.to_json()
        return _csv([list(r.keys()), list(r.values())])
    out = {"a": args.a, "b": args.b, "report": report.to_json()}
    if args.atoms:
        out["atoms"] = [{"word": list(part.word(k)), "set": part[k].to_json()} for k in range(len(part))]
    return _json(out)


def cmd_markov(args) -> str:
    report = markov_check(args.a, args.b, args.depth, args.cap)
    tm = transition_matrix(args.a, args.b)
    if args.figure:
        from .plotting import transition_figure

        transition_figure(tm, args.figure, f"({args.a},{args.b}) allowed transitions")
    if args.format == "csv":
        return tm.to_csv()
    return _json({"markov": report.to_json(), "transition_matrix": tm.to_json()})


def cmd_generator(args) -> str:
    profile = generator_profile(args.a, args.b, args.depth, args.cap)
    if args.figure:
        from .plotting import generator_figure

        generator_figure(profile, args.figure)
    if args.format == "csv":
        rows = [["depth", "atom_count", "real_diam_max", "two_exp_min", "three_exp_min", "all_rectangles"]]
        for r in (profile.baseline, *profile.reports):
            rows.append([r.depth, r.atom_count, format_rational(r.real_diam_max), r.two_exp_min, r.three_exp_min, r.all_rectangles])
        return _csv(rows)
    return _json(profile.to_json())


def cmd_classify(args) -> str:
    return _json(classify(args.a, args.b).to_json())


def cmd_entropy(args) -> str:
    e = entropy(args.a, args.b)
    return _json({"a": args.a, "b": args.b, "height": e.base, "entropy": e.symbol, "value": e.value})


def cmd_zeta(args) -> str:
    z = zeta_series(args.a, args.b, args.order)
    if args.figure:
        from .plotting import zeta_figure

        zeta_figure(z, args.figure)
    if args.format == "csv":
        rows = [["n", "count", "series", "closed_form", "printed_form", "cover_series"]]
        rows += [list(r) for r in z.comparison_rows()]
        return _csv(rows)
    return _json(z.to_json())


def cmd_wilson(args) -> str:
    if args.trace is not None:
        trace = WilsonTrace(args.trace)
        digits = wilson_backward(trace)
    else:
        x = _point(args, "x")
        trace = wilson_forward(x, args.depth)
        digits = truncate(x, args.depth)
    return _json(
        {
            **trace.to_json(),
            "consistent": trace.is_consistent(),
            "real": format_rational(digits.real),
            "two_residue": digits.two,
            "three_residue": digits.three,
            "depth": digits.depth,
        }
    )


def _render_spec(args) -> RenderSpec:
    return RenderSpec(args.projection, args.monna_depth_2, args.monna_depth_3, args.width, args.height)


def cmd_render(args) -> str:
    s = image(_source_set(args), args.power * args.a, args.power * args.b)
    return render_boxset(s, _render_spec(args))


def cmd_gallery(args) -> str:
    return render_cone_gallery(args.directions, _render_spec(args))


COMMANDS: dict[str, tuple[Callable, str, tuple[str, ...]]] = {
    "reduce": (cmd_reduce, "reduce a rational triple into the fundamental domain", ("json",)),
    "add": (cmd_add, "group law x + y", ("json",)),
    "act": (cmd_act, "apply alpha^(a,b) to a point", ("json",)),
    "image": (cmd_image, "image of an atom of xi^(a,b) (or a box set file) under alpha^(a,b)^power", ("json", "csv")),
    "partition": (cmd_partition, "the partition xi^(a,b)", ("json", "csv")),
    "refine": (cmd_refine, "join of alpha^j(xi) for |j| <= depth", ("json", "csv")),
    "markov-check": (cmd_markov, "finite-depth Markov condition and transition matrix", ("json", "csv")),
    "generator-check": (cmd_generator, "per-coordinate widths of orbit refinements", ("json", "csv")),
    "classify": (cmd_classify, "Lyapunov signature and cone of a direction", ("json",)),
    "entropy": (cmd_entropy, "entropy log H(2^a 3^b)", ("json",)),
    "zeta": (cmd_zeta, "periodic point counts and zeta coefficients", ("json", "csv")),
    "wilson": (cmd_wilson, "projective-limit coordinates of a point, or digits from a trace", ("json",)),
    "render": (cmd_render, "SVG of an image set", ("svg",)),
    "gallery": (cmd_gallery, "SVG gallery of alpha^(a,b)(A_0) across cones", ("svg",)),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to FILE instead of standard output")
    common.add_argument("--format", choices=("json", "csv", "svg"), help="output format")
    common.add_argument("--cap", type=_positive, default=DEFAULT_CAP, help="atom/word cap (default %(default)s)")

    direction = argparse.ArgumentParser(add_help=False)
    direction.add_argument("--a", type=int, default=None)
    direction.add_argument("--b", type=int, default=None)

    parser = argparse.ArgumentParser(prog="solenoid", description="Exact computations on the x2,x3 solenoid.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, help_text, _) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, parents=[common, direction])
        if name in ("reduce", "add", "act", "wilson"):
            p.add_argument("--x", type=_triple, help='point "real,two,three", e.g. --x=1/2,0,-1/5')
        if name == "add":
            p.add_argument("--y", type=_triple)
        if name in ("refine", "markov-check", "generator-check", "wilson"):
            p.add_argument("--depth", type=_nonnegative if name == "wilson" else _positive, default=None)
        if name == "zeta":
            p.add_argument("--order", type=_positive, default=6)
        if name in ("markov-check", "generator-check", "zeta"):
            p.add_argument("--figure", help="also write a matplotlib figure (format from the file suffix)")
        if name == "refine":
            p.add_argument("--atoms", action="store_true", help="include every atom and its word")
        if name in ("image", "render"):
            p.add_argument("--atom", type=_nonnegative, default=0, help="atom index of xi^(a,b)")
            p.add_argument("--power", type=int, default=1, help="apply alpha^(a,b) this many times")
            p.add_argument("--boxset", help="JSON box set file to map instead of an atom")
        if name == "wilson":
            p.add_argument("--trace", type=_rational_list, help="comma-separated levels z_0,...,z_K")
        if name in ("render", "gallery"):
            p.add_argument("--projection", choices=PROJECTIONS, default="isometric")
            p.add_argument("--monna-depth-2", type=_positive, default=4)
            p.add_argument("--monna-depth-3", type=_positive, default=3)
            p.add_argument("--width", type=_positive, default=480)
            p.add_argument("--height", type=_positive, default=480)
        if name == "gallery":
            p.add_argument("--directions", type=_directions, default=[], help='e.g. "1,1;-1,1;1,-1"')
    return parser


NEEDS_DIRECTION = {
    "act", "image", "partition", "refine", "markov-check", "generator-check",
    "classify", "entropy", "zeta", "render",
}


def _validate(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    allowed = COMMANDS[args.command][2]
    if args.format is None:
        args.format = allowed[0]
    elif args.format not in allowed:
        parser.error(f"{args.command} supports --format {', '.join(allowed)}")
    if args.command in NEEDS_DIRECTION and (args.a is None or args.b is None):
        parser.error(f"{args.command} requires --a and --b")
    if args.command in ("refine", "markov-check", "generator-check") and args.depth is None:
        parser.error(f"{args.command} requires --depth")
    if args.command == "wilson" and args.trace is None and (args.x is None or args.depth is None):
        parser.error("wilson requires --x and --depth, or --trace")
    if args.command in ("reduce", "act") and args.x is None:
        parser.error(f"{args.command} requires --x")
    if args.command == "add" and (args.x is None or args.y is None):
        parser.error("add requires --x and --y")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(parser, args)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = COMMANDS[args.command][0]
    try:
        _emit(args, handler(args))
    except ResourceCapError as exc:
        print(f"solenoid: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except PreconditionError as exc:
        print(f"solenoid: precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"solenoid: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
