"""Finite unions of boxes ``[lo, hi) x (t + 2^m Z_2) x (s + 3^n Z_3)`` inside F.

Every set the partition engine touches is a :class:`BoxSet`.  The family is
closed under intersection, difference and the automorphisms ``alpha^(a,b)``;
all of those are computed exactly here.  Equality of sets is semantic
(:func:`equals`), never a comparison of box lists.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import PreconditionError
from .group import SolenoidPoint, multiplier
from .rational import (
    RationalLike,
    as_rational,
    format_rational,
    frac_p,
    is_sixadic,
    parse_rational,
    residue_mod,
    split_p,
)

ONE = Fraction(1)
ZERO = Fraction(0)


@dataclass(frozen=True, slots=True, order=True)
class PadicClass:
    """The coset ``residue + p**mod_exp Z_p``; ``mod_exp == 0`` is all of Z_p."""

    p: int
    residue: int
    mod_exp: int

    def __post_init__(self) -> None:
        if self.p not in (2, 3):
            raise PreconditionError(f"unsupported prime {self.p}")
        if self.mod_exp < 0 or not 0 <= self.residue < self.p**self.mod_exp:
            raise PreconditionError(f"bad coset {self.residue} mod {self.p}^{self.mod_exp}")

    @property
    def modulus(self) -> int:
        return self.p**self.mod_exp

    @property
    def width(self) -> Fraction:
        """Haar measure of the coset inside Z_p."""
        return Fraction(1, self.modulus)

    def contains_residue(self, r: int) -> bool:
        return r % self.modulus == self.residue

    def contains_class(self, other: PadicClass) -> bool:
        return other.mod_exp >= self.mod_exp and other.residue % self.modulus == self.residue

    def intersect(self, other: PadicClass) -> PadicClass | None:
        if self.mod_exp <= other.mod_exp:
            return other if other.residue % self.modulus == self.residue else None
        return self if self.residue % other.modulus == other.residue else None

    def refine(self, new_exp: int) -> list[PadicClass]:
        return refine_class(self, new_exp)

    def parent(self) -> PadicClass:
        e = self.mod_exp - 1
        return PadicClass(self.p, self.residue % self.p**e, e)

    def minus(self, sub: PadicClass) -> list[PadicClass]:
        """Cosets covering ``self`` minus ``sub`` (``sub`` must lie inside ``self``)."""
        out = []
        p = self.p
        for e in range(self.mod_exp + 1, sub.mod_exp + 1):
            step = p ** (e - 1)
            base = sub.residue % step
            keep = sub.residue % (step * p)
            for d in range(p):
                r = base + d * step
                if r != keep:
                    out.append(PadicClass(p, r, e))
        return out

    def to_json(self) -> dict[str, int]:
        return {"res": self.residue, "exp": self.mod_exp}


def full_class(p: int) -> PadicClass:
    return PadicClass(p, 0, 0)


def refine_class(c: PadicClass, new_exp: int) -> list[PadicClass]:
    """The ``p**(new_exp - c.mod_exp)`` subcosets of ``c`` at exponent ``new_exp``."""
    if new_exp < c.mod_exp:
        raise PreconditionError(f"cannot refine exponent {c.mod_exp} down to {new_exp}")
    step = c.modulus
    return [PadicClass(c.p, c.residue + k * step, new_exp) for k in range(c.p ** (new_exp - c.mod_exp))]


@dataclass(frozen=True, slots=True)
class Box:
    lo: Fraction
    hi: Fraction
    cls2: PadicClass
    cls3: PadicClass

    def __post_init__(self) -> None:
        if not 0 <= self.lo < self.hi <= 1:
            raise PreconditionError(f"bad real interval [{self.lo}, {self.hi})")
        if not (is_sixadic(self.lo) and is_sixadic(self.hi)):
            raise PreconditionError(f"real endpoints {self.lo}, {self.hi} must lie in Z[1/6]")
        if self.cls2.p != 2 or self.cls3.p != 3:
            raise PreconditionError("box cosets must be 2-adic then 3-adic")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def measure(self) -> Fraction:
        return self.width / (self.cls2.modulus * self.cls3.modulus)

    def sort_key(self) -> tuple:
        c2, c3 = self.cls2, self.cls3
        return (c2.mod_exp, c2.residue, c3.mod_exp, c3.residue, self.lo, self.hi)

    def contains(self, x: SolenoidPoint) -> bool:
        return (
            self.lo <= x.real < self.hi
            and residue_mod(x.two, 2, self.cls2.mod_exp) == self.cls2.residue
            and residue_mod(x.three, 3, self.cls3.mod_exp) == self.cls3.residue
        )

    def to_json(self) -> dict:
        return {
            "real": [format_rational(self.lo), format_rational(self.hi)],
            "two": self.cls2.to_json(),
            "three": self.cls3.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> Box:
        lo, hi = (parse_rational(v) for v in obj["real"])
        two, three = obj["two"], obj["three"]
        return cls(lo, hi, PadicClass(2, int(two["res"]), int(two["exp"])), PadicClass(3, int(three["res"]), int(three["exp"])))


def box(
    lo: RationalLike = 0,
    hi: RationalLike = 1,
    two: tuple[int, int] = (0, 0),
    three: tuple[int, int] = (0, 0),
) -> Box:
    """Convenience constructor; cosets are given as ``(residue, exponent)``."""
    r2, e2 = two
    r3, e3 = three
    return Box(
        as_rational(lo),
        as_rational(hi),
        PadicClass(2, r2 % 2**e2, e2),
        PadicClass(3, r3 % 3**e3, e3),
    )


FULL_BOX = box()


def intersect_boxes(s: Box, t: Box) -> Box | None:
    lo = s.lo if s.lo > t.lo else t.lo
    hi = s.hi if s.hi < t.hi else t.hi
    if lo >= hi:
        return None
    c2 = s.cls2.intersect(t.cls2)
    if c2 is None:
        return None
    c3 = s.cls3.intersect(t.cls3)
    if c3 is None:
        return None
    return Box(lo, hi, c2, c3)


def subtract_boxes(s: Box, t: Box) -> list[Box]:
    common = intersect_boxes(s, t)
    if common is None:
        return [s]
    out = []
    if s.lo < common.lo:
        out.append(Box(s.lo, common.lo, s.cls2, s.cls3))
    if common.hi < s.hi:
        out.append(Box(common.hi, s.hi, s.cls2, s.cls3))
    lo, hi = common.lo, common.hi
    for c2 in s.cls2.minus(common.cls2):
        out.append(Box(lo, hi, c2, s.cls3))
    for c3 in s.cls3.minus(common.cls3):
        out.append(Box(lo, hi, common.cls2, c3))
    return out


class BoxSet:
    """An immutable finite disjoint union of boxes."""

    __slots__ = ("boxes", "_normal")

    def __init__(self, boxes: Iterable[Box] = (), *, normalized: bool = False):
        self.boxes: tuple[Box, ...] = tuple(boxes)
        self._normal = self if normalized else None

    @classmethod
    def full(cls) -> BoxSet:
        return cls((FULL_BOX,), normalized=True)

    @classmethod
    def empty(cls) -> BoxSet:
        return cls((), normalized=True)

    def __iter__(self) -> Iterator[Box]:
        return iter(self.boxes)

    def __len__(self) -> int:
        return len(self.boxes)

    def __repr__(self) -> str:
        parts = ", ".join(_box_repr(b) for b in self.boxes)
        return f"BoxSet([{parts}])"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BoxSet):
            return NotImplemented
        return equals(self, other)

    def __hash__(self) -> int:
        # equal sets have equal measure, whatever their box lists look like
        return hash(haar_measure(self))

    def normalized(self) -> BoxSet:
        if self._normal is None:
            self._normal = BoxSet(normalize_boxes(self.boxes), normalized=True)
        return self._normal

    def is_empty(self) -> bool:
        return not self.boxes

    def measure(self) -> Fraction:
        return haar_measure(self)

    def __and__(self, other: BoxSet) -> BoxSet:
        return intersect(self, other)

    def __or__(self, other: BoxSet) -> BoxSet:
        return union(self, other)

    def __sub__(self, other: BoxSet) -> BoxSet:
        return subtract(self, other)

    def contains(self, x: SolenoidPoint) -> bool:
        return contains_point(self, x)

    def bounding_box(self) -> Box:
        return bounding_box(self)

    def is_rectangle(self) -> bool:
        """True when the set is exactly one box (decided by measure, not by representation)."""
        return bool(self.boxes) and bounding_box(self).measure() == haar_measure(self)

    def to_json(self) -> dict:
        return {"boxes": [b.to_json() for b in self.boxes]}

    @classmethod
    def from_json(cls, obj: dict) -> BoxSet:
        return cls(Box.from_json(b) for b in obj["boxes"])


def _box_repr(b: Box) -> str:
    return (
        f"[{b.lo},{b.hi})x({b.cls2.residue} mod 2^{b.cls2.mod_exp})"
        f"x({b.cls3.residue} mod 3^{b.cls3.mod_exp})"
    )


def boxset(*boxes: Box) -> BoxSet:
    return BoxSet(boxes)


# -- normal form -------------------------------------------------------------


def _merge_real(boxes: list[Box]) -> tuple[list[Box], bool]:
    groups: dict[tuple, list[Box]] = defaultdict(list)
    for b in boxes:
        groups[(b.cls2, b.cls3)].append(b)
    out: list[Box] = []
    changed = False
    for (c2, c3), grp in groups.items():
        grp.sort(key=lambda b: b.lo)
        lo, hi = grp[0].lo, grp[0].hi
        for b in grp[1:]:
            if b.lo == hi:
                hi = b.hi
                changed = True
            else:
                out.append(Box(lo, hi, c2, c3))
                lo, hi = b.lo, b.hi
        out.append(Box(lo, hi, c2, c3))
    return out, changed


def _merge_cosets(boxes: list[Box], p: int) -> tuple[list[Box], bool]:
    groups: dict[tuple, set[PadicClass]] = defaultdict(set)
    for b in boxes:
        if p == 2:
            groups[(b.lo, b.hi, b.cls3)].add(b.cls2)
        else:
            groups[(b.lo, b.hi, b.cls2)].add(b.cls3)
    out: list[Box] = []
    changed = False
    for (lo, hi, other), classes in groups.items():
        merged = True
        while merged:
            merged = False
            by_parent: dict[PadicClass, list[PadicClass]] = defaultdict(list)
            for c in classes:
                if c.mod_exp > 0:
                    by_parent[c.parent()].append(c)
            for par, kids in by_parent.items():
                if len(kids) == p:
                    classes.difference_update(kids)
                    classes.add(par)
                    merged = changed = True
        for c in classes:
            out.append(Box(lo, hi, c, other) if p == 2 else Box(lo, hi, other, c))
    return out, changed


def normalize_boxes(boxes: Iterable[Box]) -> tuple[Box, ...]:
    """Merge adjacent intervals and complete sibling cosets until nothing changes.

    The result is sorted by (2-adic coset, 3-adic coset, lo).  It is a normal
    form for many sets but not all; semantic comparisons go through
    :func:`equals`.
    """
    work = list(boxes)
    if len(work) > 1:
        changed = True
        while changed:
            work, c1 = _merge_real(work)
            work, c2 = _merge_cosets(work, 2)
            work, c3 = _merge_cosets(work, 3)
            changed = c1 or c2 or c3
    work.sort(key=Box.sort_key)
    return tuple(work)


# -- set algebra -------------------------------------------------------------


def intersect(s: BoxSet, t: BoxSet) -> BoxSet:
    out = []
    tb = sorted(t.boxes, key=lambda b: b.lo)
    for a in s.boxes:
        for b in tb:
            if b.lo >= a.hi:
                break
            c = intersect_boxes(a, b)
            if c is not None:
                out.append(c)
    return BoxSet(out)


def subtract(s: BoxSet, t: BoxSet) -> BoxSet:
    work = list(s.boxes)
    for b in t.boxes:
        if not work:
            break
        nxt = []
        for a in work:
            nxt.extend(subtract_boxes(a, b))
        work = nxt
    return BoxSet(work)


def union(s: BoxSet, t: BoxSet) -> BoxSet:
    return BoxSet(s.boxes + subtract(t, s).boxes).normalized()


def union_all(sets: Iterable[BoxSet]) -> BoxSet:
    acc = BoxSet.empty()
    for s in sets:
        acc = BoxSet(acc.boxes + subtract(s, acc).boxes)
    return acc.normalized()


def is_empty(s: BoxSet) -> bool:
    return s.is_empty()


def is_subset(s: BoxSet, t: BoxSet) -> bool:
    return subtract(s, t).is_empty()


def equals(s: BoxSet, t: BoxSet) -> bool:
    """Semantic set equality."""
    if s.normalized().boxes == t.normalized().boxes:
        return True
    if haar_measure(s) != haar_measure(t):
        return False
    return is_subset(s, t) and is_subset(t, s)


def haar_measure(s: BoxSet) -> Fraction:
    return sum((b.measure() for b in s.boxes), ZERO)


def contains_point(s: BoxSet, x: SolenoidPoint) -> bool:
    return any(b.contains(x) for b in s.boxes)


def _hull_class(classes: Sequence[PadicClass]) -> PadicClass:
    """The smallest coset containing every coset in ``classes``."""
    p = classes[0].p
    ref = classes[0].residue
    exp = min(c.mod_exp for c in classes)
    for c in classes[1:]:
        d = c.residue - ref
        if d:
            exp = min(exp, split_p(d, p)[0])
    return PadicClass(p, ref % p**exp, exp)


def bounding_box(s: BoxSet) -> Box:
    if s.is_empty():
        raise PreconditionError("the empty set has no bounding box")
    lo = min(b.lo for b in s.boxes)
    hi = max(b.hi for b in s.boxes)
    return Box(lo, hi, _hull_class([b.cls2 for b in s.boxes]), _hull_class([b.cls3 for b in s.boxes]))


# -- automorphisms -----------------------------------------------------------


def image_box(b: Box, a: int, c: int) -> list[Box]:
    """Exact image of one box under ``alpha^(a,c)``."""
    if a == 0 and c == 0:
        return [b]
    q = multiplier(a, c)
    m2 = max(b.cls2.mod_exp, -a)
    m3 = max(b.cls3.mod_exp, -c)
    e2, e3 = a + m2, c + m3
    mod2, mod3 = 2**e2, 3**e3
    qlo, qhi = q * b.lo, q * b.hi
    out = []
    for t in refine_class(b.cls2, m2):
        qt = q * t.residue
        f2 = frac_p(qt, 2)
        for s in refine_class(b.cls3, m3):
            qs = q * s.residue
            rho = f2 + frac_p(qs, 3)
            x0, x1 = qlo - rho, qhi - rho
            # qt - rho and qs - rho are 2- resp. 3-integral by construction
            u2 = qt - rho
            u3 = qs - rho
            base2 = u2.numerator * pow(u2.denominator, -1, mod2) % mod2 if mod2 > 1 else 0
            base3 = u3.numerator * pow(u3.denominator, -1, mod3) % mod3 if mod3 > 1 else 0
            for k in range(math.floor(x0), math.ceil(x1)):
                plo = x0 - k if x0 > k else ZERO
                phi = x1 - k if x1 < k + 1 else ONE
                if plo >= phi:
                    continue
                out.append(
                    Box(plo, phi, PadicClass(2, (base2 - k) % mod2, e2), PadicClass(3, (base3 - k) % mod3, e3))
                )
    return out


def image(s: BoxSet, a: int, b: int) -> BoxSet:
    """Exact image of ``s`` under ``alpha^(a,b)``, normalised."""
    if a == 0 and b == 0:
        return s
    out: list[Box] = []
    for bx in s.boxes:
        out.extend(image_box(bx, a, b))
    return BoxSet(out).normalized()


def real_denominators(s: BoxSet) -> set[int]:
    dens = set()
    for b in s.boxes:
        dens.add(b.lo.denominator)
        dens.add(b.hi.denominator)
    return dens


def check_sixadic(s: BoxSet) -> None:
    for b in s.boxes:
        if not (is_sixadic(b.lo) and is_sixadic(b.hi)):
            raise PreconditionError(f"box endpoint outside Z[1/6]: {_box_repr(b)}")
