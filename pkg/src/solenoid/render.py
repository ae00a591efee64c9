"""Deterministic SVG drawings of box sets as cuboids.

The 2-adic and 3-adic axes are embedded in ``[0, 1]`` by the Monna map
``sum a_n p^n -> sum a_n p^(-n-1)``, which sends the coset ``t + p^m Z_p`` to a
closed interval of length ``p^-m``.  All layout is exact rational arithmetic;
numbers are rounded to six decimals only when written into SVG attributes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape

from .boxes import Box, BoxSet, PadicClass, image
from .directions import CONES, classify
from .errors import PreconditionError
from .partition import xi

ISOMETRIC = "isometric"
THREE_FACES = "three_faces"
PROJECTIONS = (ISOMETRIC, THREE_FACES)

FILL = "#9ecae1"
EDGE = "#08306b"
GUIDE = "#c8c8c8"
OUTLINE = "#808080"

# rational stand-in for log 2 / log 3, used only to draw the line 2^a 3^b = 1
LOG_RATIO = Fraction(630930, 1000000)


@dataclass(frozen=True)
class RenderSpec:
    projection: str = ISOMETRIC
    monna_depth_2: int = 4
    monna_depth_3: int = 3
    width: int = 480
    height: int = 480
    shaded_atom: int | None = None

    def __post_init__(self) -> None:
        if self.projection not in PROJECTIONS:
            raise PreconditionError(f"unknown projection {self.projection!r}")
        if self.monna_depth_2 < 1 or self.monna_depth_3 < 1:
            raise PreconditionError("Monna depths must be at least 1")
        if self.width < 1 or self.height < 1:
            raise PreconditionError("canvas must be positive")


def monna(residue: int, p: int, digits: int) -> Fraction:
    """Monna image of the first ``digits`` p-adic digits of ``residue``."""
    out = Fraction(0)
    scale = Fraction(1, p)
    for _ in range(digits):
        residue, d = divmod(residue, p)
        out += d * scale
        scale /= p
    return out


def monna_interval(c: PadicClass) -> tuple[Fraction, Fraction]:
    lo = monna(c.residue, c.p, c.mod_exp)
    return lo, lo + c.width


def fmt(x: Fraction) -> str:
    """Six-decimal rendering of an exact rational (presentation only)."""
    n = round(Fraction(x) * 10**6)
    sign = "-" if n < 0 else ""
    whole, part = divmod(abs(n), 10**6)
    return f"{sign}{whole}.{part:06d}"


Cuboid = tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction], tuple[Fraction, Fraction]]


def cuboid(b: Box) -> Cuboid:
    return (b.lo, b.hi), monna_interval(b.cls2), monna_interval(b.cls3)


class _Canvas:
    """Affine map from model coordinates to pixels plus an element buffer."""

    def __init__(self, spec: RenderSpec):
        self.spec = spec
        self.parts: list[str] = []

    def polygon(self, pts: Sequence[tuple[Fraction, Fraction]], fill: str, stroke: str, width: str = "1") -> None:
        coords = " ".join(f"{fmt(x)},{fmt(y)}" for x, y in pts)
        self.parts.append(
            f'<polygon points="{coords}" fill="{fill}" stroke="{stroke}" stroke-width="{width}"/>'
        )

    def line(self, p: tuple[Fraction, Fraction], q: tuple[Fraction, Fraction], stroke: str, width: str = "1") -> None:
        self.parts.append(
            f'<line x1="{fmt(p[0])}" y1="{fmt(p[1])}" x2="{fmt(q[0])}" y2="{fmt(q[1])}" '
            f'stroke="{stroke}" stroke-width="{width}"/>'
        )

    def text(self, pos: tuple[Fraction, Fraction], s: str, size: int = 12, anchor: str = "middle") -> None:
        self.parts.append(
            f'<text x="{fmt(pos[0])}" y="{fmt(pos[1])}" font-family="sans-serif" font-size="{size}" '
            f'text-anchor="{anchor}">{escape(s)}</text>'
        )


# -- isometric view ----------------------------------------------------------------
#
# model (X real, Y 2-adic, Z 3-adic) in the unit cube; screen
# u = X - Y, v = (X + Y)/2 - Z, both in [-1, 1]; scaled to fit the canvas.


def _iso(spec: RenderSpec):
    scale = Fraction(2 * min(spec.width, spec.height), 5)
    cx, cy = Fraction(spec.width, 2), Fraction(spec.height, 2)

    def proj(x: Fraction, y: Fraction, z: Fraction) -> tuple[Fraction, Fraction]:
        return cx + scale * (x - y), cy + scale * ((x + y) / 2 - z)

    return proj


def _iso_guides(cv: _Canvas, proj) -> None:
    spec = cv.spec
    zero, one = Fraction(0), Fraction(1)
    # floor grid on Z = 0 (2-adic subdivisions) and back wall X = 0 (3-adic subdivisions)
    n2, n3 = 2**spec.monna_depth_2, 3**spec.monna_depth_3
    for k in range(1, n2):
        y = Fraction(k, n2)
        cv.line(proj(zero, y, zero), proj(one, y, zero), GUIDE, "0.5")
    for k in range(1, n3):
        z = Fraction(k, n3)
        cv.line(proj(zero, zero, z), proj(zero, one, z), GUIDE, "0.5")
    corners = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)]
    for i, p in enumerate(corners):
        for q in corners[i + 1 :]:
            if sum(a != b for a, b in zip(p, q)) == 1:
                cv.line(proj(*map(Fraction, p)), proj(*map(Fraction, q)), OUTLINE)


def _iso_cuboid(cv: _Canvas, proj, c: Cuboid, fill: str, stroke: str) -> None:
    (x0, x1), (y0, y1), (z0, z1) = c
    cv.polygon([proj(x0, y0, z1), proj(x1, y0, z1), proj(x1, y1, z1), proj(x0, y1, z1)], fill, stroke)
    cv.polygon([proj(x1, y0, z0), proj(x1, y1, z0), proj(x1, y1, z1), proj(x1, y0, z1)], fill, stroke)
    cv.polygon([proj(x0, y1, z0), proj(x1, y1, z0), proj(x1, y1, z1), proj(x0, y1, z1)], fill, stroke)


def _depth_key(c: Cuboid) -> tuple:
    # painter's order: far (small X + Y, high Z) first
    (x0, _), (y0, _), (z0, z1) = c
    return (x0 + y0, -z1, x0, y0, z0)


def _draw_isometric(cv: _Canvas, shaded: Sequence[Cuboid], outlined: Sequence[Cuboid]) -> None:
    proj = _iso(cv.spec)
    _iso_guides(cv, proj)
    for c in sorted(outlined, key=_depth_key):
        _iso_cuboid(cv, proj, c, "none", OUTLINE)
    for c in sorted(shaded, key=_depth_key):
        _iso_cuboid(cv, proj, c, FILL, EDGE)


# -- three axis-aligned projections -----------------------------------------------

_FACES = (("R", "Z2", 0, 1), ("R", "Z3", 0, 2), ("Z2", "Z3", 1, 2))


def _draw_three_faces(cv: _Canvas, shaded: Sequence[Cuboid], outlined: Sequence[Cuboid]) -> None:
    spec = cv.spec
    cell = Fraction(spec.width, 3)
    side = min(cell, Fraction(spec.height)) * Fraction(3, 4)
    top = (Fraction(spec.height) - side) / 2
    depths = {"Z2": 2**spec.monna_depth_2, "Z3": 3**spec.monna_depth_3}
    for k, (hname, vname, hi, vi) in enumerate(_FACES):
        left = cell * k + (cell - side) / 2

        def at(h: Fraction, v: Fraction) -> tuple[Fraction, Fraction]:
            return left + side * h, top + side * (1 - v)

        for name, horizontal in ((hname, True), (vname, False)):
            n = depths.get(name)
            for j in range(1, n or 1):
                t = Fraction(j, n)
                if horizontal:
                    cv.line(at(t, Fraction(0)), at(t, Fraction(1)), GUIDE, "0.5")
                else:
                    cv.line(at(Fraction(0), t), at(Fraction(1), t), GUIDE, "0.5")
        square = [at(Fraction(0), Fraction(0)), at(Fraction(1), Fraction(0)), at(Fraction(1), Fraction(1)), at(Fraction(0), Fraction(1))]
        cv.polygon(square, "none", OUTLINE)
        for group, fill, stroke in ((outlined, "none", OUTLINE), (shaded, FILL, EDGE)):
            for c in sorted({(c[hi], c[vi]) for c in group}):
                (h0, h1), (v0, v1) = c
                cv.polygon([at(h0, v0), at(h1, v0), at(h1, v1), at(h0, v1)], fill, stroke)
        cv.text((left + side / 2, top + side + 18), f"{hname} x {vname}")


def _panel(spec: RenderSpec, shaded: Sequence[Cuboid], outlined: Sequence[Cuboid]) -> str:
    cv = _Canvas(spec)
    if spec.projection == ISOMETRIC:
        _draw_isometric(cv, shaded, outlined)
    else:
        _draw_three_faces(cv, shaded, outlined)
    return '<g class="panel">\n' + "\n".join(cv.parts) + "\n</g>"


def _document(width: int | Fraction, height: int | Fraction, body: str) -> str:
    w, h = fmt(Fraction(width)), fmt(Fraction(height))
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">\n'
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>\n{body}\n</svg>\n'
    )


def render_panel(s: BoxSet, spec: RenderSpec = RenderSpec()) -> str:
    """The ``<g class="panel">`` element drawing ``s``; shared by standalone and gallery output."""
    if s.is_empty():
        raise PreconditionError("cannot render an empty box set")
    return _panel(spec, [cuboid(b) for b in s.normalized().boxes], ())


def render_boxset(s: BoxSet, spec: RenderSpec = RenderSpec()) -> str:
    return _document(spec.width, spec.height, render_panel(s, spec))


def render_partition(atoms: Sequence[BoxSet], spec: RenderSpec) -> str:
    """All atoms outlined, with ``spec.shaded_atom`` filled."""
    if spec.shaded_atom is None or not 0 <= spec.shaded_atom < len(atoms):
        raise PreconditionError("shaded_atom must index an atom of the partition")
    shaded = atoms[spec.shaded_atom]
    if shaded.is_empty():
        raise PreconditionError("cannot render an empty box set")
    outlined = [cuboid(b) for k, atom in enumerate(atoms) if k != spec.shaded_atom for b in atom.normalized().boxes]
    return _document(spec.width, spec.height, _panel(spec, [cuboid(b) for b in shaded.normalized().boxes], outlined))


def gallery_set(a: int, b: int) -> BoxSet:
    """The shaded set of a gallery panel: ``alpha^(a,b)(A_0)`` for ``xi^(a,b)``."""
    if not classify(a, b).expansive:
        raise PreconditionError(f"direction ({a}, {b}) is not expansive; nothing to shade")
    return image(xi(a, b)[0], a, b)


_CONE_SPOTS = {
    CONES[0]: (Fraction(2), Fraction(2)),
    CONES[1]: (Fraction(-1), Fraction(5, 2)),
    CONES[2]: (Fraction(5, 2), Fraction(-3, 4)),
    CONES[3]: (Fraction(-2), Fraction(-2)),
    CONES[4]: (Fraction(1), Fraction(-5, 2)),
    CONES[5]: (Fraction(-5, 2), Fraction(3, 4)),
}

PLANE_SIZE = 360
PLANE_RANGE = 3
COLUMNS = 3
LABEL_BAND = 24


def _plane(directions: Sequence[tuple[int, int]]) -> str:
    cv = _Canvas(RenderSpec(width=PLANE_SIZE, height=PLANE_SIZE))
    half = Fraction(PLANE_SIZE, 2)
    unit = half / (PLANE_RANGE + Fraction(1, 2))

    def at(a: Fraction, b: Fraction) -> tuple[Fraction, Fraction]:
        return half + unit * a, half - unit * b

    r = Fraction(PLANE_RANGE)
    cv.line(at(-r, Fraction(0)), at(r, Fraction(0)), EDGE)
    cv.line(at(Fraction(0), -r), at(Fraction(0), r), EDGE)
    # 2^a 3^b = 1, i.e. b = -a log 2 / log 3; endpoints clipped to |a| <= range
    cv.line(at(-r, r * LOG_RATIO), at(r, -r * LOG_RATIO), EDGE)
    cv.text((half + unit * r, half + 14), "b=0", 10, "end")
    cv.text((half + 4, half - unit * r), "a=0", 10, "start")
    cv.text(at(-r, r * LOG_RATIO - Fraction(1, 3)), "2^a3^b=1", 10, "start")
    for cone, spot in _CONE_SPOTS.items():
        cv.text(at(*spot), cone, 9)
    for k, (a, b) in enumerate(directions):
        x, y = at(Fraction(a), Fraction(b))
        cv.parts.append(f'<circle cx="{fmt(x)}" cy="{fmt(y)}" r="3.000000" fill="{EDGE}"/>')
        cv.text((x + 6, y - 6), str(k + 1), 10, "start")
    return '<g class="plane">\n' + "\n".join(cv.parts) + "\n</g>"


def render_cone_gallery(directions: Sequence[tuple[int, int]], spec: RenderSpec = RenderSpec()) -> str:
    """The ``(a, b)`` plane with cone labels, then one panel per direction in input order."""
    sets = [gallery_set(a, b) for a, b in directions]
    rows = -(-len(directions) // COLUMNS)
    width = max(PLANE_SIZE, COLUMNS * spec.width) if directions else PLANE_SIZE
    height = PLANE_SIZE + rows * (spec.height + LABEL_BAND)
    parts = [f'<g transform="translate({fmt(Fraction(width - PLANE_SIZE, 2))},0.000000)">', _plane(directions), "</g>"]
    for k, ((a, b), s) in enumerate(zip(directions, sets)):
        row, col = divmod(k, COLUMNS)
        x = Fraction(col * spec.width)
        y = Fraction(PLANE_SIZE + row * (spec.height + LABEL_BAND))
        cone = classify(a, b).cone
        parts.append(f'<g transform="translate({fmt(x)},{fmt(y)})">')
        parts.append(
            f'<text x="{fmt(Fraction(spec.width, 2))}" y="16.000000" font-family="sans-serif" font-size="12" '
            f'text-anchor="middle">{escape(f"{k + 1}: (a,b)=({a},{b})  {cone}")}</text>'
        )
        parts.append(f'<g transform="translate(0.000000,{fmt(Fraction(LABEL_BAND))})">')
        parts.append(render_panel(s, spec))
        parts.append("</g>\n</g>")
    return _document(width, height, "\n".join(parts))
