"""Per-direction invariants of ``alpha^(a,b)``: height, entropy, cones, zeta functions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PreconditionError
from .group import multiplier
from .rational import format_rational, norm_p

UNSTABLE = "u"
STABLE = "s"
NEUTRAL = "neutral"

CONES = (
    "a>0,b>0",
    "a<0,b>0,2^a3^b>1",
    "a>0,b<0,2^a3^b>1",
    "a<0,b<0",
    "a>0,b<0,2^a3^b<1",
    "a<0,b>0,2^a3^b<1",
)
LINE_A0 = "line_a0"
LINE_B0 = "line_b0"
ORIGIN = "origin"


def _require_nonzero(a: int, b: int) -> None:
    if a == 0 and b == 0:
        raise PreconditionError("(a, b) = (0, 0) is the identity; no partition or entropy")


def num_den(a: int, b: int) -> tuple[int, int]:
    """Numerator and denominator of ``2**a * 3**b`` in lowest terms."""
    return 2 ** max(a, 0) * 3 ** max(b, 0), 2 ** max(-a, 0) * 3 ** max(-b, 0)


def height(a: int, b: int) -> int:
    """Naive height ``max(|r|, |s|)`` of ``2**a 3**b = r/s``."""
    _require_nonzero(a, b)
    return max(num_den(a, b))


@dataclass(frozen=True)
class Entropy:
    base: int

    @property
    def symbol(self) -> str:
        return f"log {self.base}"

    @property
    def value(self) -> float:
        """Floating value for display only."""
        return math.log(self.base)


def entropy(a: int, b: int) -> Entropy:
    return Entropy(height(a, b))


@dataclass(frozen=True)
class LyapunovTriple:
    """Exact exponents ``c2*log 2 + c3*log 3`` at the real, 2-adic and 3-adic places."""

    real: tuple[int, int]
    two: tuple[int, int]
    three: tuple[int, int]


def lyapunov(a: int, b: int) -> LyapunovTriple:
    return LyapunovTriple((a, b), (-a, 0), (0, -b))


def _sign_symbol(sign: int) -> str:
    return UNSTABLE if sign > 0 else STABLE if sign < 0 else NEUTRAL


@dataclass(frozen=True)
class DirectionClass:
    a: int
    b: int
    signature: tuple[str, str, str]
    cone: str
    expansive: bool
    lyapunov: LyapunovTriple = field(repr=False)

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "signature": {"real": self.signature[0], "two_adic": self.signature[1], "three_adic": self.signature[2]},
            "cone": self.cone,
            "expansive": self.expansive,
            "lyapunov": {
                "real": list(self.lyapunov.real),
                "two_adic": list(self.lyapunov.two),
                "three_adic": list(self.lyapunov.three),
            },
        }


def classify(a: int, b: int) -> DirectionClass:
    r, s = num_den(a, b)
    real_sign = (r > s) - (r < s)  # sign of a log 2 + b log 3, decided on integers
    signature = (_sign_symbol(real_sign), _sign_symbol(-a), _sign_symbol(-b))
    if a == 0 and b == 0:
        cone = ORIGIN
    elif a == 0:
        cone = LINE_A0
    elif b == 0:
        cone = LINE_B0
    elif a > 0 and b > 0:
        cone = CONES[0]
    elif a < 0 and b < 0:
        cone = CONES[3]
    elif a < 0:
        cone = CONES[1] if real_sign > 0 else CONES[5]
    else:
        cone = CONES[2] if real_sign > 0 else CONES[4]
    return DirectionClass(a, b, signature, cone, a != 0 and b != 0, lyapunov(a, b))


def periodic_point_count(a: int, b: int, n: int) -> Fraction:
    """Number of points of period ``n``: the product over all three places of ``|q^n - 1|``."""
    _require_nonzero(a, b)
    if n < 1:
        raise PreconditionError("period must be positive")
    d = multiplier(a, b) ** n - 1
    return abs(d) * norm_p(d, 2) * norm_p(d, 3)


def exp_log_series(counts: list[Fraction]) -> list[Fraction]:
    """Coefficients of ``exp(sum_n counts[n-1] z^n / n)`` through ``z^len(counts)``."""
    c = [Fraction(1)]
    for n in range(1, len(counts) + 1):
        c.append(sum((counts[k - 1] * c[n - k] for k in range(1, n + 1)), Fraction(0)) / n)
    return c


@dataclass(frozen=True)
class ClosedForm:
    """``(1 - low*z) / (1 - high*z)`` with rational coefficients."""

    low: Fraction
    high: Fraction

    def series(self, order: int) -> list[Fraction]:
        # coefficients h^n - l h^(n-1)
        return [Fraction(1)] + [self.high**n - self.low * self.high ** (n - 1) for n in range(1, order + 1)]

    def __str__(self) -> str:
        return f"(1 - {_fmt_coeff(self.low)}z)/(1 - {_fmt_coeff(self.high)}z)"


def _fmt_coeff(x: Fraction) -> str:
    if x == 1:
        return ""
    return str(x.numerator) if x.denominator == 1 else f"({x})"


@dataclass(frozen=True)
class ZetaSeries:
    a: int
    b: int
    counts: list[Fraction]
    series: list[Fraction]
    cover_counts: list[int]
    cover_series: list[Fraction]
    closed_form: ClosedForm | None
    printed_form: ClosedForm | None
    discrepancy: bool
    note: str

    def to_json(self) -> dict:
        order = len(self.counts)
        out = {
            "a": self.a,
            "b": self.b,
            "order": order,
            "counts": [format_rational(c) for c in self.counts],
            "series": [format_rational(c) for c in self.series],
            "cover_counts": [str(c) for c in self.cover_counts],
            "cover_series": [format_rational(c) for c in self.cover_series],
            "closed_form": None,
            "printed_form": None,
            "discrepancy": self.discrepancy,
            "note": self.note,
        }
        if self.closed_form is not None:
            out["closed_form"] = {
                "formula": str(self.closed_form),
                "series": [format_rational(c) for c in self.closed_form.series(order)],
            }
        if self.printed_form is not None:
            out["printed_form"] = {
                "formula": str(self.printed_form),
                "series": [format_rational(c) for c in self.printed_form.series(order)],
            }
        return out

    def comparison_rows(self) -> list[tuple]:
        """Rows ``(n, F_n, computed, closed form, printed form, cover)`` for tables."""
        order = len(self.counts)
        closed = self.closed_form.series(order) if self.closed_form else [None] * (order + 1)
        printed = self.printed_form.series(order) if self.printed_form else [None] * (order + 1)
        rows = []
        for n in range(order + 1):
            rows.append(
                (n, self.counts[n - 1] if n else None, self.series[n], closed[n], printed[n], self.cover_series[n])
            )
        return rows


def zeta_series(a: int, b: int, order: int) -> ZetaSeries:
    """Truncated zeta function of ``alpha^(a,b)`` and of its symbolic cover.

    Counts come from the product formula.  In expansive directions they are
    ``H^n - L^n`` with ``H``/``L`` the larger/smaller of numerator and
    denominator of ``2^a 3^b``, giving ``(1 - Lz)/(1 - Hz)``; the cover is the
    full ``H``-shift.
    """
    _require_nonzero(a, b)
    if order < 1:
        raise PreconditionError("order must be positive")
    counts = [periodic_point_count(a, b, n) for n in range(1, order + 1)]
    series = exp_log_series(counts)
    h = height(a, b)
    cover_counts = [h**n for n in range(1, order + 1)]
    cover_series = exp_log_series([Fraction(c) for c in cover_counts])
    cls = classify(a, b)
    closed = printed = None
    discrepancy = False
    note = ""
    if cls.expansive:
        closed = ClosedForm(Fraction(min(num_den(a, b))), Fraction(h))
        if cls.cone == CONES[0]:
            printed = ClosedForm(Fraction(1), Fraction(h))
        elif cls.cone == CONES[1]:
            # the printed formula for this cone is (1 - 2^a z)/(1 - 3^b z)
            printed = ClosedForm(Fraction(2) ** a, Fraction(3) ** b)
        if printed is not None:
            discrepancy = printed != closed
            if discrepancy:
                note = (
                    f"printed closed form {printed} differs from the product-formula result "
                    f"{closed}; the computed counts follow the product formula"
                )
            else:
                note = f"computed series agrees with the printed closed form {printed}"
        else:
            note = f"no printed closed form for cone {cls.cone}; derived form {closed}"
    else:
        note = "non-expansive direction: no rational closed form is asserted"
    return ZetaSeries(a, b, counts, series, cover_counts, cover_series, closed, printed, discrepancy, note)
