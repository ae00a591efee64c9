from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from solenoid.directions import (
    CONES,
    LINE_A0,
    LINE_B0,
    ORIGIN,
    classify,
    entropy,
    exp_log_series,
    height,
    periodic_point_count,
    zeta_series,
)
from solenoid.errors import PreconditionError
from solenoid.partition import transition_matrix

from oracles import exp_of_log_series, periodic_count_by_places, series_of_ratio
from strategies import nonzero_directions

F = Fraction


@pytest.mark.parametrize("d, h", [((1, 1), 6), ((1, 0), 2), ((-1, 1), 3), ((-2, 1), 4), ((0, -2), 9), ((3, -2), 9)])
def test_height(d, h):
    assert height(*d) == h


def test_entropy_examples():
    assert entropy(1, 1).symbol == "log 6"
    assert entropy(1, 0).base == 2
    assert entropy(-2, 1).symbol == "log 4"


def test_origin_rejected():
    for fn in (height, entropy):
        with pytest.raises(PreconditionError):
            fn(0, 0)
    with pytest.raises(PreconditionError):
        periodic_point_count(0, 0, 1)
    with pytest.raises(PreconditionError):
        zeta_series(0, 0, 3)
    c = classify(0, 0)
    assert c.cone == ORIGIN and not c.expansive and c.signature == ("neutral",) * 3


@pytest.mark.parametrize(
    "d, sig, cone",
    [
        ((1, 1), ("u", "s", "s"), CONES[0]),
        ((-1, 2), ("u", "u", "s"), CONES[1]),
        ((-1, 1), ("u", "u", "s"), CONES[1]),
        ((2, -1), ("u", "s", "u"), CONES[2]),
        ((-1, -1), ("s", "u", "u"), CONES[3]),
        ((1, -2), ("s", "s", "u"), CONES[4]),
        ((1, -1), ("s", "s", "u"), CONES[4]),
        ((-2, 1), ("s", "u", "s"), CONES[5]),
    ],
)
def test_table_signatures(d, sig, cone):
    c = classify(*d)
    assert c.signature == sig and c.cone == cone and c.expansive


def test_lines():
    c = classify(1, 0)
    assert c.signature == ("u", "s", "neutral") and c.cone == LINE_B0 and not c.expansive
    c = classify(0, -1)
    assert c.signature == ("s", "neutral", "u") and c.cone == LINE_A0 and not c.expansive
    assert classify(-3, 2).lyapunov.real == (-3, 2)
    assert classify(-3, 2).to_json()["lyapunov"]["three_adic"] == [0, -2]


@given(nonzero_directions, st.integers(1, 5))
def test_classify_is_ray_invariant(d, k):
    a, b = d
    c, ck = classify(a, b), classify(k * a, k * b)
    assert (ck.signature, ck.cone, ck.expansive) == (c.signature, c.cone, c.expansive)


@given(nonzero_directions)
def test_inverse_swaps_signature(d):
    a, b = d
    swap = {"u": "s", "s": "u", "neutral": "neutral"}
    assert classify(-a, -b).signature == tuple(swap[x] for x in classify(a, b).signature)
    assert height(-a, -b) == height(a, b)
    assert entropy(-a, -b) == entropy(a, b)


@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(1, 6))
def test_periodic_counts_match_oracle(a, b, n):
    if (a, b) == (0, 0):
        return
    f = periodic_point_count(a, b, n)
    assert f == periodic_count_by_places(F(2) ** a * F(3) ** b, n)
    assert f.denominator == 1 and f >= 1
    if a != 0 and b != 0:
        assert f <= height(a, b) ** n


@pytest.mark.parametrize("d", [(1, 1), (2, 1), (1, 3)])
def test_positive_quadrant_counts(d):
    q = 2 ** d[0] * 3 ** d[1]
    assert [periodic_point_count(*d, n) for n in range(1, 7)] == [q**n - 1 for n in range(1, 7)]


def test_periodic_count_examples():
    assert periodic_point_count(1, 1, 1) == 5
    assert periodic_point_count(1, 1, 2) == 35
    assert periodic_point_count(-1, 1, 2) == 5
    assert [periodic_point_count(1, 0, n) for n in range(1, 5)] == [1, 1, 7, 5]
    with pytest.raises(PreconditionError):
        periodic_point_count(1, 1, 0)


@given(st.lists(st.integers(0, 50), min_size=1, max_size=7))
def test_exp_log_series_matches_oracle(counts):
    fc = [F(c) for c in counts]
    assert exp_log_series(fc) == exp_of_log_series(fc, len(fc))


def test_zeta_positive_quadrant():
    z = zeta_series(1, 1, 3)
    assert z.counts == [5, 35, 215]
    assert z.series == [1, 5, 30, 180]
    assert z.cover_series == [1, 6, 36, 216]
    assert not z.discrepancy
    assert z.series == series_of_ratio(F(1), F(6), 3)


def test_zeta_mixed_cone_discrepancy():
    z = zeta_series(-1, 1, 4)
    assert z.counts == [1, 5, 19, 65]
    assert z.series == series_of_ratio(F(2), F(3), 4)
    assert z.discrepancy
    assert z.printed_form.series(4) == series_of_ratio(F(1, 2), F(3), 4)
    assert "differs" in z.note
    assert z.to_json()["discrepancy"] is True


def test_zeta_non_expansive():
    z = zeta_series(1, 0, 4)
    assert z.counts == [1, 1, 7, 5]
    assert z.closed_form is None and z.printed_form is None
    assert "no rational closed form" in z.note
    with pytest.raises(PreconditionError):
        zeta_series(1, 1, 0)


@pytest.mark.parametrize("d", [(1, 1), (-1, 1), (2, -1), (-1, -1)])
def test_cover_counts_match_transition_matrix(d):
    tm = transition_matrix(*d)
    z = zeta_series(*d, 4)
    for n in range(1, 5):
        assert tm.word_count(n) == z.cover_counts[n - 1] == height(*d) ** n
        assert z.counts[n - 1] <= z.cover_counts[n - 1]


def test_comparison_rows():
    rows = zeta_series(1, 1, 2).comparison_rows()
    assert rows[0] == (0, None, 1, 1, 1, 1)
    assert rows[2] == (2, 35, 30, 30, 30, 36)
