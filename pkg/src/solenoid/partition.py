"""The partitions xi^(a,b), their orbit refinements, and Markov/generator checks.

``xi^(a,b)`` cuts the real coordinate into ``H(2^a 3^b)`` equal intervals with
full p-adic fibres.  Images are computed with the box algebra; joins of many
images run on an exact cell grid (:mod:`solenoid.grid`).
"""

from __future__ import annotations

import io
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .boxes import Box, BoxSet, PadicClass, box, image, intersect
from .directions import height
from .errors import PreconditionError, ResourceCapError
from .group import multiplier
from .grid import MAX_GRID_CELLS, Grid, GridPartition, grid_join
from .rational import format_rational

DEFAULT_CAP = 1_000_000


@dataclass(frozen=True)
class Partition:
    """Indexed atoms; ``words[k]`` names the parents atom ``k`` came from."""

    atoms: tuple[BoxSet, ...]
    words: tuple[tuple[int, ...], ...] | None = None

    def __len__(self) -> int:
        return len(self.atoms)

    def __getitem__(self, k: int) -> BoxSet:
        return self.atoms[k]

    def __iter__(self):
        return iter(self.atoms)

    def is_partition(self) -> bool:
        """Exact check that the atoms are disjoint and cover X."""
        try:
            Grid.covering(self.atoms).rasterize(self.atoms)
        except PreconditionError:
            return False
        return True

    def to_json(self) -> dict:
        out: dict = {"atoms": [a.to_json() for a in self.atoms]}
        if self.words is not None:
            out["words"] = [list(w) for w in self.words]
        return out


def trivial_partition() -> Partition:
    return Partition((BoxSet.full(),), ((0,),))


def xi(a: int, b: int) -> Partition:
    """``xi^(a,b)``: intervals ``[j/H, (j+1)/H) x Z_2 x Z_3``."""
    h = height(a, b)
    atoms = tuple(BoxSet((box(Fraction(j, h), Fraction(j + 1, h)),), normalized=True) for j in range(h))
    return Partition(atoms, tuple((j,) for j in range(h)))


def image_partition(p: Partition, a: int, b: int) -> Partition:
    return Partition(tuple(image(atom, a, b) for atom in p.atoms), p.words)


def join(p: Partition, q: Partition) -> Partition:
    """All nonempty pairwise intersections, ordered by parent indices."""
    atoms, words = [], []
    pw = p.words or tuple((i,) for i in range(len(p)))
    qw = q.words or tuple((j,) for j in range(len(q)))
    for i, s in enumerate(p.atoms):
        for j, t in enumerate(q.atoms):
            c = intersect(s, t)
            if not c.is_empty():
                atoms.append(c.normalized())
                words.append(pw[i] + qw[j])
    return Partition(tuple(atoms), tuple(words))


def cylinder(a: int, b: int, word: Mapping[int, int]) -> BoxSet:
    """``intersection over j of alpha^j(A_{word[j]})`` for the atoms of ``xi^(a,b)``."""
    base = xi(a, b)
    acc = BoxSet.full()
    for j, i in sorted(word.items()):
        if not 0 <= i < len(base):
            raise PreconditionError(f"atom index {i} out of range")
        acc = intersect(acc, image(base[i], j * a, j * b))
        if acc.is_empty():
            break
    return acc.normalized()


# -- refinement reports ------------------------------------------------------


@dataclass(frozen=True)
class RefinementReport:
    depth: int
    atom_count: int
    real_diam_max: Fraction
    two_exp_min: int
    three_exp_min: int
    all_rectangles: bool
    j_min: int = 0
    j_max: int = 0

    @property
    def widths(self) -> tuple[Fraction, Fraction, Fraction]:
        """Real diameter and the two p-adic coset widths."""
        return (self.real_diam_max, Fraction(1, 2**self.two_exp_min), Fraction(1, 3**self.three_exp_min))

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "j_min": self.j_min,
            "j_max": self.j_max,
            "atom_count": self.atom_count,
            "real_diam_max": format_rational(self.real_diam_max),
            "two_exp_min": self.two_exp_min,
            "three_exp_min": self.three_exp_min,
            "all_rectangles": self.all_rectangles,
        }


def report_for(part: GridPartition, j_min: int, j_max: int) -> RefinementReport:
    st = part.atom_stats()
    g = part.grid
    return RefinementReport(
        depth=max(-j_min, j_max),
        atom_count=len(part),
        real_diam_max=Fraction(int((st.real_hi - st.real_lo).max()), g.real_den),
        two_exp_min=int(st.two_exp.min()),
        three_exp_min=int(st.three_exp.min()),
        all_rectangles=bool(st.rectangle.all()),
        j_min=j_min,
        j_max=j_max,
    )


def grid_bound(a: int, b: int, j_min: int, j_max: int) -> Grid:
    """A grid fine enough for every layer ``alpha^j(xi)``, computed without building the layers.

    The image of ``[k/H, (k+1)/H)`` under ``q^j`` has endpoints ``q^j k/H - rho`` where
    ``rho`` has denominator ``2^m 3^n`` with ``m = max(0, -ja)``, ``n = max(0, -jb)``, and
    cosets of exponent ``max(ja, 0)`` and ``max(jb, 0)``.
    """
    h = height(a, b)
    den, e2, e3 = 1, 0, 0
    for j in range(j_min, j_max + 1):
        qj = multiplier(j * a, j * b)
        den = math.lcm(den, h * qj.denominator, 2 ** max(0, -j * a) * 3 ** max(0, -j * b))
        e2, e3 = max(e2, j * a), max(e3, j * b)
    return Grid(den, e2, e3)


def orbit_layers(a: int, b: int, j_min: int, j_max: int, limit: int | None = MAX_GRID_CELLS) -> list[Partition]:
    bound = grid_bound(a, b, j_min, j_max)
    if limit is not None:
        bound.check_size(limit)
    else:
        # per-slab work: only one real slab of the grid is materialised at a time
        Grid(bound.real_den // height(a, b), bound.two_exp, bound.three_exp).check_size()
    base = xi(a, b)
    return [image_partition(base, j * a, j * b) for j in range(j_min, j_max + 1)]


def orbit_join(
    a: int, b: int, j_min: int, j_max: int, cap: int = DEFAULT_CAP
) -> tuple[GridPartition, RefinementReport]:
    """Join of ``alpha^j(xi^(a,b))`` for ``j_min <= j <= j_max``."""
    if not j_min <= 0 <= j_max:
        raise PreconditionError("need j_min <= 0 <= j_max")
    layers = orbit_layers(a, b, j_min, j_max)
    part = grid_join([layer.atoms for layer in layers], offsets=range(j_min, j_max + 1), cap=cap)
    return part, report_for(part, j_min, j_max)


# -- closed-form atoms in the positive quadrant --------------------------------


def _check_quadrant(a: int, b: int, k: int, ells: Sequence[int]) -> int:
    if a <= 0 or b <= 0:
        raise PreconditionError("closed-form atoms need a > 0 and b > 0")
    q = 2**a * 3**b
    for i in (k, *ells):
        if not 0 <= i < q:
            raise PreconditionError(f"index {i} outside 0..{q - 1}")
    return q


def closed_form_forward_atom(a: int, b: int, k: int, ells: Sequence[int] = ()) -> Box:
    """The atom ``A_{k, l_1, ..., l_{n-1}}`` with ``n = len(ells) + 1``.

    It equals ``alpha(A_{i_1}) & ... & alpha^n(A_{i_n})`` for ``k = i_n`` and
    ``ells = (i_{n-1}, ..., i_1)``.
    """
    q = _check_quadrant(a, b, k, ells)
    n = len(ells) + 1
    offset = 0
    for i in (k, *ells):
        offset = offset * q + i
    m2, m3 = 2 ** (a * n), 3 ** (b * n)
    return Box(Fraction(0), Fraction(1), PadicClass(2, -offset % m2, a * n), PadicClass(3, -offset % m3, b * n))


def closed_form_backward_atom(a: int, b: int, k: int, ells: Sequence[int] = ()) -> Box:
    """The atom ``A^{k, l_1, ..., l_n}``: an interval of width ``q^-(n+1)`` with full fibres.

    It equals ``A_{i_0} & alpha^-1(A_{i_1}) & ... & alpha^-n(A_{i_n})`` for
    ``k = i_n`` and ``ells = (i_{n-1}, ..., i_0)``.
    """
    q = _check_quadrant(a, b, k, ells)
    n = len(ells)
    shift = sum((Fraction(l, q ** (n - pos)) for pos, l in enumerate(ells)), Fraction(0))
    lo = Fraction(k, q ** (n + 1)) + shift
    return Box(lo, lo + Fraction(1, q ** (n + 1)), PadicClass(2, 0, 0), PadicClass(3, 0, 0))


# -- Markov condition ----------------------------------------------------------


@dataclass(frozen=True)
class MarkovReport:
    a: int
    b: int
    depth: int
    passed: bool
    forward_words: int
    backward_words: int
    two_sided_words: int
    full_shift: bool
    counterexample: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "depth": self.depth,
            "passed": self.passed,
            "forward_words": self.forward_words,
            "backward_words": self.backward_words,
            "two_sided_words": self.two_sided_words,
            "full_shift": self.full_shift,
            "counterexample": list(self.counterexample) if self.counterexample is not None else None,
        }


def _codes(labels: Sequence[np.ndarray], radix: int) -> np.ndarray:
    code = np.zeros(labels[0].shape, dtype=np.int64)
    for lab in labels:
        code *= radix
        code += lab
    return code.ravel()


def _digits(code: int, radix: int, length: int) -> tuple[int, ...]:
    out = []
    for _ in range(length):
        code, d = divmod(code, radix)
        out.append(d)
    return tuple(reversed(out))


def markov_check(a: int, b: int, n: int, cap: int = DEFAULT_CAP) -> MarkovReport:
    """Check: nonempty forward and backward cylinders force a nonempty two-sided one.

    Words ``(i_-n, ..., i_n)`` are grouped by their middle symbol ``i_0``.  For
    each ``i_0`` the nonempty forward words ``(i_1..i_n)``, backward words
    ``(i_-n..i_-1)`` and two-sided words are read off the cell grid; the
    implication holds exactly when every compatible pair occurs, i.e. when the
    two-sided count is the product of the one-sided counts.  ``cap`` bounds the
    words examined per middle symbol.
    """
    if n < 1:
        raise PreconditionError("depth must be at least 1")
    h = height(a, b)
    if h ** (2 * n) > 2**62:
        raise ResourceCapError("words too long to encode")
    layers = orbit_layers(a, b, -n, n, limit=None)
    grid = Grid.covering(s for layer in layers for s in layer.atoms)
    slab = grid.real_den // h
    Grid(slab, grid.two_exp, grid.three_exp).check_size()
    fwd_total = bwd_total = two_total = 0
    counterexample = None
    for i0 in range(h):
        rows = (i0 * slab, (i0 + 1) * slab)
        labels = [grid.rasterize(layer.atoms, rows) for layer in layers]
        fwd = _codes(labels[n + 1 :], h)
        bwd = _codes(labels[:n], h)
        fw_u = np.unique(fwd)
        bw_u = np.unique(bwd)
        pairs = np.unique(bwd * h**n + fwd)
        if len(pairs) > cap:
            raise ResourceCapError(f"{len(pairs)} two-sided words for i_0={i0}, above the cap of {cap}")
        fwd_total += len(fw_u)
        bwd_total += len(bw_u)
        two_total += len(pairs)
        if counterexample is None and len(pairs) != len(fw_u) * len(bw_u):
            present = set(pairs.tolist())
            for bcode, fcode in itertools.product(bw_u.tolist(), fw_u.tolist()):
                if bcode * h**n + fcode not in present:
                    counterexample = _digits(bcode, h, n) + (i0,) + _digits(fcode, h, n)
                    break
    full = fwd_total == h ** (n + 1) and bwd_total == h ** (n + 1)
    return MarkovReport(a, b, n, counterexample is None, fwd_total, bwd_total, two_total, full, counterexample)


# -- transition matrix -----------------------------------------------------------


@dataclass(frozen=True)
class TransitionMatrix:
    size: int
    allowed: tuple[tuple[bool, ...], ...]

    def as_array(self) -> np.ndarray:
        return np.array(self.allowed, dtype=bool)

    def to_json(self) -> dict:
        return {"size": self.size, "allowed": [[int(v) for v in row] for row in self.allowed]}

    def to_csv(self) -> str:
        buf = io.StringIO()
        for row in self.allowed:
            buf.write(",".join("1" if v else "0" for v in row) + "\n")
        return buf.getvalue()

    def periodic_words(self, n: int) -> int:
        """Trace of the n-th power: periodic points of the symbolic cover."""
        m = [[int(v) for v in row] for row in self.allowed]
        acc = [[int(i == j) for j in range(self.size)] for i in range(self.size)]
        for _ in range(n):
            acc = [[sum(acc[i][k] * m[k][j] for k in range(self.size)) for j in range(self.size)] for i in range(self.size)]
        return sum(acc[i][i] for i in range(self.size))

    def word_count(self, n: int) -> int:
        """Number of allowed words of length ``n``."""
        vec = [1] * self.size
        for _ in range(n - 1):
            vec = [sum(vec[i] for i in range(self.size) if self.allowed[i][j]) for j in range(self.size)]
        return sum(vec)


def transition_matrix(a: int, b: int) -> TransitionMatrix:
    base = xi(a, b)
    imgs = [image(atom, a, b) for atom in base]
    allowed = tuple(tuple(not intersect(img, tgt).is_empty() for tgt in base) for img in imgs)
    return TransitionMatrix(len(base), allowed)


# -- generator profile -------------------------------------------------------------

COORDINATES = ("R", "Q2", "Q3")


@dataclass(frozen=True)
class GeneratorProfile:
    a: int
    b: int
    reports: tuple[RefinementReport, ...]
    baseline: RefinementReport
    generating_trend: bool
    obstructed: tuple[str, ...] = field(default_factory=tuple)

    @property
    def verdict(self) -> str:
        n = self.reports[-1].depth if self.reports else 0
        if self.generating_trend:
            return f"consistent with generating through depth {n}"
        if self.obstructed:
            return "obstructed(" + ",".join(self.obstructed) + f") through depth {n}"
        return f"no strict decrease through depth {n}"

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "baseline": self.baseline.to_json(),
            "reports": [r.to_json() for r in self.reports],
            "generating_trend": self.generating_trend,
            "obstructed": list(self.obstructed),
            "verdict": self.verdict,
        }


def generator_profile(a: int, b: int, n_max: int, cap: int = DEFAULT_CAP) -> GeneratorProfile:
    """Widths of ``join_{-n<=j<=n} alpha^j(xi)`` for ``n = 1..n_max``.

    The partition ``xi`` itself (depth 0) is the baseline of the trend.  A
    coordinate is obstructed when its width never changes.
    """
    if n_max < 1:
        raise PreconditionError("n_max must be at least 1")
    h = height(a, b)
    baseline = RefinementReport(0, h, Fraction(1, h), 0, 0, True, 0, 0)
    reports = tuple(orbit_join(a, b, -n, n, cap)[1] for n in range(1, n_max + 1))
    seq = [baseline.widths, *(r.widths for r in reports)]
    trend = all(all(later[c] < earlier[c] for c in range(3)) for earlier, later in zip(seq, seq[1:]))
    obstructed = tuple(name for c, name in enumerate(COORDINATES) if len({w[c] for w in seq}) == 1)
    return GeneratorProfile(a, b, reports, baseline, trend, obstructed)
