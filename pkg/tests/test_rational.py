from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from solenoid.errors import InfiniteValuation, PreconditionError
from solenoid.rational import (
    digit_p,
    format_rational,
    frac_p,
    is_p_integral,
    is_sixadic,
    norm_p,
    parse_rational,
    residue_mod,
    val_p,
)

from oracles import padic_norm

F = Fraction


@pytest.mark.parametrize(
    "x, p, v",
    [(F(12), 2, 2), (F(12), 3, 1), (F(1, 18), 3, -2), (F(5, 7), 2, 0), (F(-8, 3), 2, 3)],
)
def test_valuation(x, p, v):
    assert val_p(x, p) == v
    assert norm_p(x, p) == F(p) ** (-v)


def test_valuation_of_zero():
    with pytest.raises(InfiniteValuation):
        val_p(0, 2)
    assert norm_p(0, 3) == 0


def test_unsupported_prime():
    with pytest.raises(PreconditionError):
        val_p(F(5), 5)


@pytest.mark.parametrize(
    "x, p, f",
    [(F(1, 2), 2, F(1, 2)), (F(3, 4), 2, F(3, 4)), (F(5, 4), 2, F(1, 4)), (F(1, 6), 2, F(1, 2)),
     (F(1, 6), 3, F(2, 3)), (F(-1, 3), 3, F(2, 3)), (F(7), 2, F(0)), (F(1, 5), 3, F(0))],
)
def test_frac_p_examples(x, p, f):
    assert frac_p(x, p) == f


@given(st.integers(-10**6, 10**6), st.integers(1, 10**4), st.sampled_from([2, 3]))
def test_frac_p_splits(n, d, p):
    x = F(n, d)
    f = frac_p(x, p)
    assert 0 <= f < 1
    assert is_p_integral(x - f, p)
    assert f.denominator in {p**k for k in range(40)}


@given(st.integers(-10**6, 10**6), st.integers(1, 10**4).filter(lambda d: d % 2), st.integers(0, 8))
def test_residue_and_digits(n, d, e):
    x = F(n, d)
    r = residue_mod(x, 2, e)
    assert 0 <= r < 2**e
    assert padic_norm(x - r, 2) <= F(1, 2**e)
    assert r == sum(digit_p(x, k, 2) * 2**k for k in range(e))


def test_residue_requires_integrality():
    with pytest.raises(PreconditionError):
        residue_mod(F(1, 2), 2, 1)


def test_digits():
    # 1/3 = 1 + 2 + 8 + 32 + ... in Z_2 (binary ...010101011)
    assert [digit_p(F(1, 3), k, 2) for k in range(6)] == [1, 1, 0, 1, 0, 1]
    assert [digit_p(F(-1), k, 3) for k in range(4)] == [2, 2, 2, 2]


@pytest.mark.parametrize("text, value", [("3/4", F(3, 4)), ("-2/6", F(-1, 3)), ("5", F(5)), (" 1/2 ", F(1, 2))])
def test_parse(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1/0", "0.5", "a/b", "", "1/2/3"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


@given(st.fractions())
def test_format_round_trip(x):
    assert parse_rational(format_rational(x)) == x


def test_sixadic():
    assert is_sixadic(F(5, 72))
    assert not is_sixadic(F(1, 10))
