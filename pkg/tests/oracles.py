"""Independent reference computations used to check the library.

Nothing here imports the package's arithmetic: every formula is written out
again from first principles so a shared bug cannot hide.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product


def padic_unit_part(n: int, p: int) -> tuple[int, int]:
    k = 0
    while n and n % p == 0:
        n //= p
        k += 1
    return k, n


def padic_norm(x: Fraction, p: int) -> Fraction:
    if x == 0:
        return Fraction(0)
    vn, _ = padic_unit_part(x.numerator, p)
    vd, _ = padic_unit_part(x.denominator, p)
    return Fraction(p) ** (vd - vn)


def mod_residue(x: Fraction, m: int) -> int:
    """Residue of ``x`` modulo ``m`` for ``x`` with denominator prime to ``m``."""
    if m == 1:
        return 0
    return x.numerator * pow(x.denominator, -1, m) % m


def two_adic_digit0(x: Fraction) -> int:
    """Lowest binary digit of a 2-integral rational: numerator parity, since the denominator is odd."""
    return x.numerator % 2


def alpha_0_1(x):
    """Closed form for multiplication by 3: ({3x}, 3x2 - [3x], 3x3 - [3x])."""
    r, t, s = x
    fl = math.floor(3 * r)
    return (3 * r - fl, 3 * t - fl, 3 * s - fl)


def alpha_m1_0(x):
    """Halving, with the doubling-verified first coordinate x/2 + d/2 (d the lowest 2-adic digit)."""
    r, t, s = x
    half_d = Fraction(two_adic_digit0(t), 2)
    return (r / 2 + half_d, t / 2 + half_d, s / 2 + half_d)


def alpha_m1_1(x):
    """Multiplication by 3/2 written through the lowest 2-adic digit."""
    r, t, s = x
    d = two_adic_digit0(t)
    y = Fraction(3, 2) * r + Fraction(3, 2) * d
    fl = math.floor(y)
    return (y - fl, Fraction(3, 2) * t + Fraction(3, 2) * d - fl, Fraction(3, 2) * s + Fraction(3, 2) * d - fl)


def in_fundamental_domain(x) -> bool:
    r, t, s = x
    return 0 <= r < 1 and t.denominator % 2 != 0 and s.denominator % 3 != 0


def is_z_one_sixth(x: Fraction) -> bool:
    _, rest = padic_unit_part(x.denominator, 2)
    _, rest = padic_unit_part(rest, 3)
    return rest == 1


def same_coset(g, h) -> bool:
    """True when ``g - h`` lies on the diagonal copy of Z[1/6]."""
    d = [gi - hi for gi, hi in zip(g, h)]
    return d[0] == d[1] == d[2] and is_z_one_sixth(d[0])


def series_of_ratio(low: Fraction, high: Fraction, order: int) -> list[Fraction]:
    """Power series of (1 - low z)/(1 - high z) by long division."""
    num = [Fraction(1), -Fraction(low)] + [Fraction(0)] * order
    out = []
    rem = num[: order + 1]
    for n in range(order + 1):
        c = rem[n]
        out.append(c)
        if n + 1 <= order:
            rem[n + 1] += high * c
    return out


def periodic_count_by_places(q: Fraction, n: int) -> Fraction:
    d = q**n - 1
    return abs(d) * padic_norm(d, 2) * padic_norm(d, 3)


def exp_of_log_series(counts: list[Fraction], order: int) -> list[Fraction]:
    """Coefficients of exp(sum c_n z^n / n) by repeated multiplication of truncated power series."""
    log = [Fraction(0)] + [Fraction(counts[n - 1], 1) / n for n in range(1, order + 1)]
    result = [Fraction(1)] + [Fraction(0)] * order
    term = [Fraction(1)] + [Fraction(0)] * order
    for k in range(1, order + 1):
        nxt = [Fraction(0)] * (order + 1)
        for i, a in enumerate(term):
            if a:
                for j in range(1, order + 1 - i):
                    nxt[i + j] += a * log[j]
        term = [c / k for c in nxt]
        result = [r + t for r, t in zip(result, term)]
    return result


def monna_point(residue: int, p: int, digits: int) -> Fraction:
    total = Fraction(0)
    for n in range(digits):
        total += Fraction((residue // p**n) % p, p ** (n + 1))
    return total


def positive_quadrant_forward(a: int, b: int, word: list[int]) -> list[tuple[int, int]]:
    """``alpha(A_{i_1}) & ... & alpha^n(A_{i_n})`` for ``a, b > 0`` as a list of coset pairs.

    ``alpha^j(A_i)`` is the union over integers ``k`` in ``q^(j-1) i + [0, q^(j-1))``
    of ``[0,1) x (2^(aj) Z_2 - k) x (3^(bj) Z_3 - k)``: multiplying ``A_i`` by ``q^j``
    gives real parts sweeping ``[k, k+1)`` and p-adic parts in ``q^j Z_p``, and the
    reduction subtracts ``k``.  A coset pair at level ``n`` is named by ``K mod q^n``
    through the Chinese remainder theorem, so the intersection is a brute-force
    filter over ``K``.  Returns the pairs ``(K mod 2^(an), K mod 3^(bn))``.
    """
    q = 2**a * 3**b
    n = len(word)
    keep = []
    for big_k in range(q**n):
        ok = True
        for j in range(1, n + 1):
            i = word[j - 1]
            lows = {(-(q ** (j - 1) * i + r)) % q**j for r in range(q ** (j - 1))}
            if big_k % q**j not in lows:
                ok = False
                break
        if ok:
            keep.append((big_k % 2 ** (a * n), big_k % 3 ** (b * n)))
    return keep


def brute_force_words(h: int, length: int):
    return product(range(h), repeat=length)
