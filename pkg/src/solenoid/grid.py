"""Exact rasterisation of box sets onto a common cell grid.

A grid with real denominator ``N`` and exponents ``E``, ``F`` has cells
``[i/N, (i+1)/N) x (r + 2^E Z_2) x (s + 3^F Z_3)``.  Any finite family of box
sets whose endpoints have denominators dividing ``N`` and whose cosets have
exponents at most ``E``, ``F`` is a union of cells, so joins of partitions
become integer label arithmetic on numpy arrays.  Nothing here is approximate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .boxes import Box, BoxSet, PadicClass, normalize_boxes
from .errors import PreconditionError, ResourceCapError

MAX_GRID_CELLS = 40_000_000


@dataclass(frozen=True)
class Grid:
    real_den: int
    two_exp: int
    three_exp: int

    @property
    def n2(self) -> int:
        return 2**self.two_exp

    @property
    def n3(self) -> int:
        return 3**self.three_exp

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.real_den, self.n2, self.n3)

    @property
    def size(self) -> int:
        return self.real_den * self.n2 * self.n3

    @classmethod
    def covering(cls, sets: Iterable[BoxSet]) -> Grid:
        den, e2, e3 = 1, 0, 0
        for s in sets:
            for b in s.boxes:
                den = math.lcm(den, b.lo.denominator, b.hi.denominator)
                e2 = max(e2, b.cls2.mod_exp)
                e3 = max(e3, b.cls3.mod_exp)
        return cls(den, e2, e3)

    def check_size(self, limit: int = MAX_GRID_CELLS) -> None:
        if self.size > limit:
            raise ResourceCapError(
                f"grid of {self.size} cells ({self.real_den} x 2^{self.two_exp} x 3^{self.three_exp}) "
                f"exceeds the limit of {limit}"
            )

    def box_slices(self, b: Box) -> tuple[slice, slice, slice]:
        i0 = b.lo * self.real_den
        i1 = b.hi * self.real_den
        if i0.denominator != 1 or i1.denominator != 1:
            raise PreconditionError("box endpoints do not lie on the grid")
        if b.cls2.mod_exp > self.two_exp or b.cls3.mod_exp > self.three_exp:
            raise PreconditionError("box cosets are finer than the grid")
        return (
            slice(int(i0), int(i1)),
            slice(b.cls2.residue, None, b.cls2.modulus),
            slice(b.cls3.residue, None, b.cls3.modulus),
        )

    def rasterize(self, atoms: Sequence[BoxSet], rows: tuple[int, int] | None = None) -> np.ndarray:
        """Label every cell by the index of the atom containing it.

        ``rows`` restricts the labelling to real cells ``r0 <= i < r1``.  Raises
        when the atoms overlap or fail to cover the labelled cells.
        """
        r0, r1 = rows if rows is not None else (0, self.real_den)
        dtype = np.int16 if len(atoms) < 2**15 else np.int32
        labels = np.full((r1 - r0, self.n2, self.n3), -1, dtype=dtype)
        for k, atom in enumerate(atoms):
            for b in atom.boxes:
                sl = self.box_slices(b)
                lo, hi = max(sl[0].start, r0), min(sl[0].stop, r1)
                if lo >= hi:
                    continue
                view = labels[lo - r0 : hi - r0, sl[1], sl[2]]
                if (view != -1).any():
                    raise PreconditionError(f"atoms overlap (atom {k})")
                view[...] = k
        if (labels == -1).any():
            raise PreconditionError("atoms do not cover the space")
        return labels

    def decode(self, flat: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        n3, n23 = self.n3, self.n2 * self.n3
        return flat // n23, (flat // n3) % self.n2, flat % n3

    def cells_to_boxset(self, flat: np.ndarray) -> BoxSet:
        """The set covered by the given flat cell indices, in normal form."""
        i, r2, r3 = self.decode(np.asarray(flat, dtype=np.int64))
        order = np.lexsort((i, r3, r2))
        i, r2, r3 = i[order], r2[order], r3[order]
        boxes = []
        den = self.real_den
        # a run is a maximal block of consecutive real indices with the same cosets
        brk = np.flatnonzero((np.diff(i) != 1) | (np.diff(r2) != 0) | (np.diff(r3) != 0)) + 1
        starts = np.r_[0, brk]
        ends = np.r_[brk, len(i)]
        for s, e in zip(starts.tolist(), ends.tolist()):
            boxes.append(
                Box(
                    Fraction(int(i[s]), den),
                    Fraction(int(i[e - 1]) + 1, den),
                    PadicClass(2, int(r2[s]), self.two_exp),
                    PadicClass(3, int(r3[s]), self.three_exp),
                )
            )
        return BoxSet(normalize_boxes(boxes), normalized=True)


def padic_valuation_array(d: np.ndarray, p: int, cap: int) -> np.ndarray:
    """Elementwise ``min(v_p(d), cap)`` with ``v_p(0) = cap``."""
    v = np.zeros(d.shape, dtype=np.int64)
    cur = np.abs(d)
    live = cur != 0
    for _ in range(cap):
        live &= cur % p == 0
        if not live.any():
            break
        v += live
        cur = np.where(live, cur // p, cur)
    v[d == 0] = cap
    return v


@dataclass
class AtomStats:
    """Per-atom geometry of a gridded partition, as integer arrays.

    Real extents are in grid units of ``1/real_den``; ``two_exp``/``three_exp``
    are the exponents of the smallest cosets containing the atom's projections.
    """

    real_lo: np.ndarray
    real_hi: np.ndarray
    two_exp: np.ndarray
    three_exp: np.ndarray
    cells: np.ndarray
    rectangle: np.ndarray


class GridPartition:
    """A partition of X stored as a cell labelling.

    Atoms are indexed in lexicographic order of their parent words, so atom
    ``k`` is the nonempty intersection named by ``words[k]``.
    """

    def __init__(self, grid: Grid, order: np.ndarray, starts: np.ndarray, words: np.ndarray, offsets: Sequence[int]):
        self.grid = grid
        self._order = order
        self._starts = starts
        self._ends = np.r_[starts[1:], len(order)]
        self.words = words
        self.offsets = tuple(offsets)
        self._stats: AtomStats | None = None

    def __len__(self) -> int:
        return len(self._starts)

    def __getitem__(self, k: int) -> BoxSet:
        if not -len(self) <= k < len(self):
            raise IndexError(k)
        k %= len(self)
        return self.grid.cells_to_boxset(self._order[self._starts[k] : self._ends[k]])

    def __iter__(self):
        for k in range(len(self)):
            yield self[k]

    def word(self, k: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.words[k])

    def atom_cells(self, k: int) -> np.ndarray:
        return self._order[self._starts[k] : self._ends[k]]

    def cell_labels(self) -> np.ndarray:
        lab = np.empty(self.grid.size, dtype=np.int64)
        lab[self._order] = np.repeat(np.arange(len(self)), self._ends - self._starts)
        return lab

    def atom_stats(self) -> AtomStats:
        if self._stats is None:
            self._stats = self._compute_stats()
        return self._stats

    def _compute_stats(self) -> AtomStats:
        g = self.grid
        i, r2, r3 = g.decode(self._order)
        starts = self._starts
        counts = self._ends - starts
        lo = np.minimum.reduceat(i, starts)
        hi = np.maximum.reduceat(i, starts) + 1
        ref2 = np.repeat(r2[starts], counts)
        ref3 = np.repeat(r3[starts], counts)
        e2 = np.minimum.reduceat(padic_valuation_array(r2 - ref2, 2, g.two_exp), starts)
        e3 = np.minimum.reduceat(padic_valuation_array(r3 - ref3, 3, g.three_exp), starts)
        hull = (hi - lo) * (2 ** (g.two_exp - e2)) * (3 ** (g.three_exp - e3))
        return AtomStats(lo, hi, e2, e3, counts, hull == counts)

    def to_partition(self):
        from .partition import Partition

        return Partition(tuple(self), tuple(self.word(k) for k in range(len(self))))


def grid_join(layers: Sequence[Sequence[BoxSet]], offsets: Sequence[int] | None = None, cap: int | None = None) -> GridPartition:
    """Join the given partitions exactly on their common grid."""
    grid = Grid.covering(s for layer in layers for s in layer)
    grid.check_size()
    radix = [len(layer) for layer in layers]
    if math.prod(radix) >= 2**62:
        raise ResourceCapError("too many layers to encode words in 64 bits")
    code = np.zeros(grid.size, dtype=np.int64)
    for layer in layers:
        code *= len(layer)
        code += grid.rasterize(layer).ravel()
    order = np.argsort(code, kind="stable")
    sc = code[order]
    del code
    starts = np.flatnonzero(np.r_[True, sc[1:] != sc[:-1]])
    if cap is not None and len(starts) > cap:
        raise ResourceCapError(f"join has {len(starts)} atoms, above the cap of {cap}")
    uniq = sc[starts]
    words = np.empty((len(uniq), len(layers)), dtype=np.int64)
    for pos in range(len(layers) - 1, -1, -1):
        words[:, pos] = uniq % radix[pos]
        uniq = uniq // radix[pos]
    if offsets is None:
        offsets = range(len(layers))
    return GridPartition(grid, order, starts, words, offsets)
