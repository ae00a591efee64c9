"""Exact rationals with 2-adic and 3-adic valuations, fractional parts and digits.

``fractions.Fraction`` is the scalar type everywhere; this module adds the
place-dependent operations on top of it.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from typing import Union

from .errors import InfiniteValuation, PreconditionError

Rational = Fraction
RationalLike = Union[Fraction, int, str]

PRIMES = (2, 3)


class Place(enum.Enum):
    REAL = "real"
    TWO_ADIC = "two_adic"
    THREE_ADIC = "three_adic"


def as_rational(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"n/d"`` or ``"n"``; floats and decimals are refused."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {text!r}; expected 'n/d'") from None
    if d == 0:
        raise ValueError(f"malformed rational {text!r}: zero denominator")
    return Fraction(n, d)


def format_rational(x: Fraction) -> str:
    """Always ``n/d`` in lowest terms, integers included (``5/1``)."""
    x = as_rational(x)
    return f"{x.numerator}/{x.denominator}"


def _check_prime(p: int) -> None:
    if p not in PRIMES:
        raise PreconditionError(f"only the primes 2 and 3 are supported, got {p}")


def split_p(n: int, p: int) -> tuple[int, int]:
    """Return ``(k, m)`` with ``n = p**k * m`` and ``p`` not dividing ``m`` (n != 0)."""
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def val_p(x: RationalLike, p: int) -> int:
    """p-adic valuation; ``|x|_p = p**(-val_p(x, p))``."""
    _check_prime(p)
    x = as_rational(x)
    if x == 0:
        raise InfiniteValuation("the valuation of 0 is infinite")
    return split_p(x.numerator, p)[0] - split_p(x.denominator, p)[0]


def norm_p(x: RationalLike, p: int) -> Fraction:
    x = as_rational(x)
    if x == 0:
        return Fraction(0)
    return Fraction(p) ** (-val_p(x, p))


def is_p_integral(x: RationalLike, p: int) -> bool:
    return as_rational(x).denominator % p != 0


def frac_p(x: RationalLike, p: int) -> Fraction:
    """The p-adic fractional part ``t / p**j`` with ``0 <= t < p**j``.

    ``x - frac_p(x, p)`` is p-integral.  Works for any rational, including
    ones whose denominators mix several primes.
    """
    _check_prime(p)
    x = as_rational(x)
    j, rest = split_p(x.denominator, p)
    if j == 0:
        return Fraction(0)
    mod = p**j
    t = x.numerator * pow(rest, -1, mod) % mod
    return Fraction(t, mod)


def residue_mod(x: RationalLike, p: int, exp: int) -> int:
    """The residue of a p-integral rational modulo ``p**exp``."""
    x = as_rational(x)
    if x.denominator % p == 0:
        raise PreconditionError(f"{format_rational(x)} is not {p}-integral")
    mod = p**exp
    if mod == 1:
        return 0
    return x.numerator * pow(x.denominator, -1, mod) % mod


def digit_p(x: RationalLike, n: int, p: int) -> int:
    """The n-th base-p digit of a p-integral rational."""
    _check_prime(p)
    if n < 0:
        raise PreconditionError("digit index must be nonnegative")
    return residue_mod(x, p, n + 1) // p**n


def floor_frac(x: RationalLike) -> tuple[int, Fraction]:
    """Split into integer part (rounded toward minus infinity) and ``[0, 1)`` part."""
    x = as_rational(x)
    fl = math.floor(x)
    return fl, x - fl


def is_sixadic(x: Fraction) -> bool:
    """True when ``x`` lies in Z[1/6]."""
    _, rest = split_p(x.denominator, 2)
    _, rest = split_p(rest, 3)
    return rest == 1
