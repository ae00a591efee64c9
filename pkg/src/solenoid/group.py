"""Points of the x2,x3 solenoid as coset representatives in [0,1) x Z_2 x Z_3.

A point is stored as three exact rationals.  Rational points are closed under
the group law, inversion and every automorphism ``alpha^(a,b)`` (multiplication
by ``2**a * 3**b``), so nothing here ever truncates a digit expansion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence

from .errors import PreconditionError
from .rational import (
    RationalLike,
    as_rational,
    digit_p,
    floor_frac,
    format_rational,
    frac_p,
    is_p_integral,
    norm_p,
    parse_rational,
    residue_mod,
)

AdeleTriple = tuple[Fraction, Fraction, Fraction]


@dataclass(frozen=True, slots=True)
class SolenoidPoint:
    real: Fraction
    two: Fraction
    three: Fraction

    def __post_init__(self) -> None:
        for name in ("real", "two", "three"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if not 0 <= self.real < 1:
            raise PreconditionError(f"real coordinate {self.real} not in [0, 1)")
        if not is_p_integral(self.two, 2):
            raise PreconditionError(f"2-adic coordinate {self.two} is not 2-integral")
        if not is_p_integral(self.three, 3):
            raise PreconditionError(f"3-adic coordinate {self.three} is not 3-integral")

    def __iter__(self) -> Iterator[Fraction]:
        return iter((self.real, self.two, self.three))

    def to_json(self) -> dict[str, str]:
        return {
            "real": format_rational(self.real),
            "two": format_rational(self.two),
            "three": format_rational(self.three),
        }

    @classmethod
    def from_json(cls, obj: dict[str, str]) -> SolenoidPoint:
        return cls(parse_rational(obj["real"]), parse_rational(obj["two"]), parse_rational(obj["three"]))


ZERO = SolenoidPoint(Fraction(0), Fraction(0), Fraction(0))


def point(real: RationalLike, two: RationalLike, three: RationalLike) -> SolenoidPoint:
    return SolenoidPoint(as_rational(real), as_rational(two), as_rational(three))


def multiplier(a: int, b: int) -> Fraction:
    """The rational ``2**a * 3**b`` by which ``alpha^(a,b)`` acts locally."""
    return Fraction(2) ** a * Fraction(3) ** b


def reduce_to_F(g: Sequence[RationalLike]) -> tuple[SolenoidPoint, Fraction]:
    """Reduce an arbitrary rational triple modulo the diagonal copy of Z[1/6].

    Returns the representative ``x`` in ``[0,1) x Z_2 x Z_3`` and the shift
    ``r`` in Z[1/6] with ``g = x + (r, r, r)``.
    """
    x_real, x_two, x_three = (as_rational(c) for c in g)
    f2 = frac_p(x_two, 2)
    f3 = frac_p(x_three, 3)
    r = f2 + f3 + math.floor(x_real - f2 - f3)
    return SolenoidPoint(x_real - r, x_two - r, x_three - r), r


def add(s: SolenoidPoint, t: SolenoidPoint) -> SolenoidPoint:
    carry, real = floor_frac(s.real + t.real)
    return SolenoidPoint(real, s.two + t.two - carry, s.three + t.three - carry)


def neg(x: SolenoidPoint) -> SolenoidPoint:
    if x.real == 0:
        return SolenoidPoint(Fraction(0), -x.two, -x.three)
    return SolenoidPoint(1 - x.real, 1 - x.two, 1 - x.three)


def sub(s: SolenoidPoint, t: SolenoidPoint) -> SolenoidPoint:
    return add(s, neg(t))


def act(x: SolenoidPoint, a: int, b: int) -> SolenoidPoint:
    """Apply ``alpha^(a,b)``."""
    if a == 0 and b == 0:
        return x
    q = multiplier(a, b)
    return reduce_to_F((q * x.real, q * x.two, q * x.three))[0]


def _place_max(diff: AdeleTriple, r: Fraction) -> Fraction:
    return max(abs(diff[0] + r), norm_p(diff[1] + r, 2), norm_p(diff[2] + r, 3))


def distance(
    x: SolenoidPoint, y: SolenoidPoint, denom_bound: int = 3, height_bound: int = 3
) -> Fraction:
    """Bounded search for the quotient metric.

    Minimises the max of the three place norms of ``x - y + (r, r, r)`` over
    ``r = u / 6**k`` with ``k <= denom_bound`` and ``|u| <= height_bound * 6**k``.
    The result is an upper bound for the true distance and equals it whenever
    the optimal shift lies in the searched set.
    """
    if denom_bound < 0 or height_bound < 1:
        raise PreconditionError("distance bounds must be positive")
    diff = (x.real - y.real, x.two - y.two, x.three - y.three)
    best = _place_max(diff, Fraction(0))
    for k in range(denom_bound + 1):
        scale = 6**k
        span = height_bound * scale
        for u in range(-span, span + 1):
            if k and u % 6 == 0:
                continue  # already tried at a smaller k
            cand = _place_max(diff, Fraction(u, scale))
            if cand < best:
                best = cand
    return best


@dataclass(frozen=True, slots=True)
class WilsonTrace:
    """Circle coordinates ``z_0, ..., z_K`` of the projective-limit picture."""

    levels: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "levels", tuple(as_rational(z) for z in self.levels))

    @property
    def depth(self) -> int:
        return len(self.levels) - 1

    def is_consistent(self) -> bool:
        lv = self.levels
        return all(0 <= z < 1 for z in lv) and all(
            (6 * lv[k + 1] - lv[k]).denominator == 1 for k in range(len(lv) - 1)
        )

    def to_json(self) -> dict[str, list[str]]:
        return {"levels": [format_rational(z) for z in self.levels]}

    @classmethod
    def from_json(cls, obj: dict[str, list[str]]) -> WilsonTrace:
        return cls(tuple(parse_rational(z) for z in obj["levels"]))


class WilsonDigits(NamedTuple):
    real: Fraction
    two: int  # residue modulo 2**depth
    three: int  # residue modulo 3**depth
    depth: int


def wilson_forward(x: SolenoidPoint, depth: int) -> WilsonTrace:
    if depth < 0:
        raise PreconditionError("depth must be nonnegative")
    z = [x.real]
    for k in range(depth):
        d2 = digit_p(x.two, k, 2)
        d3 = digit_p(x.three, k, 3)
        z.append(z[-1] / 6 + Fraction(d2, 2) + Fraction(d3, 6))
    return WilsonTrace(tuple(z))


def wilson_backward(trace: WilsonTrace) -> WilsonDigits:
    lv = trace.levels
    if not lv:
        raise PreconditionError("empty Wilson trace")
    two = three = 0
    for k in range(len(lv) - 1):
        if not (0 <= lv[k] < 1 and 0 <= lv[k + 1] < 1):
            raise PreconditionError(f"level {k} of the trace leaves [0, 1)")
        c = 6 * lv[k + 1] - lv[k]
        if c.denominator != 1:
            raise PreconditionError(f"6*z[{k + 1}] is not congruent to z[{k}] mod 1")
        c = int(c)
        if not 0 <= c < 6:
            raise PreconditionError(f"levels {k}, {k + 1} admit no digit pair")
        two += (c // 3) * 2**k
        three += (c % 3) * 3**k
    return WilsonDigits(lv[0], two, three, len(lv) - 1)


def truncate(x: SolenoidPoint, depth: int) -> WilsonDigits:
    """The data a depth-``depth`` Wilson trace determines: real part and residues."""
    return WilsonDigits(x.real, residue_mod(x.two, 2, depth), residue_mod(x.three, 3, depth), depth)
