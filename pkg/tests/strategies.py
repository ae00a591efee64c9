from fractions import Fraction

from hypothesis import strategies as st

from solenoid.boxes import Box, BoxSet, PadicClass
from solenoid.group import SolenoidPoint


@st.composite
def unit_rationals(draw, max_den: int = 60) -> Fraction:
    d = draw(st.integers(1, max_den))
    return Fraction(draw(st.integers(0, d - 1)), d)


@st.composite
def p_integral(draw, p: int, max_den: int = 40) -> Fraction:
    d = draw(st.integers(1, max_den).filter(lambda n: n % p != 0))
    return Fraction(draw(st.integers(-200, 200)), d)


@st.composite
def points(draw) -> SolenoidPoint:
    return SolenoidPoint(draw(unit_rationals()), draw(p_integral(2)), draw(p_integral(3)))


@st.composite
def sixadic_unit(draw, max_i: int = 3, max_j: int = 2) -> Fraction:
    d = 2 ** draw(st.integers(0, max_i)) * 3 ** draw(st.integers(0, max_j))
    return Fraction(draw(st.integers(0, d)), d)


@st.composite
def padic_classes(draw, p: int, max_exp: int = 2) -> PadicClass:
    e = draw(st.integers(0, max_exp))
    return PadicClass(p, draw(st.integers(0, p**e - 1)), e)


@st.composite
def boxes(draw) -> Box:
    lo, hi = sorted(draw(st.lists(sixadic_unit(), min_size=2, max_size=2, unique=True)))
    return Box(lo, hi, draw(padic_classes(2)), draw(padic_classes(3)))


@st.composite
def box_sets(draw, max_boxes: int = 3) -> BoxSet:
    """Disjoint unions built by adding boxes minus what is already covered."""
    acc = BoxSet.empty()
    for b in draw(st.lists(boxes(), min_size=1, max_size=max_boxes)):
        acc = acc | BoxSet((b,))
    return acc


directions = st.tuples(st.integers(-2, 2), st.integers(-2, 2))
nonzero_directions = directions.filter(lambda d: d != (0, 0))
