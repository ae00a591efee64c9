import re
from fractions import Fraction

import pytest
from hypothesis import given, settings

from solenoid.boxes import BoxSet, PadicClass, box, boxset, image
from solenoid.errors import PreconditionError
from solenoid.partition import xi
from solenoid.render import (
    RenderSpec,
    cuboid,
    fmt,
    gallery_set,
    monna,
    monna_interval,
    render_boxset,
    render_cone_gallery,
    render_panel,
    render_partition,
)

from oracles import monna_point
from strategies import box_sets, padic_classes

F = Fraction


def test_fmt():
    assert fmt(F(1, 3)) == "0.333333"
    assert fmt(F(-2, 3)) == "-0.666667"
    assert fmt(F(480)) == "480.000000"


@pytest.mark.parametrize("p", [2, 3])
def test_monna_matches_digit_oracle(p):
    for r in range(p**4):
        assert monna(r, p, 4) == monna_point(r, p, 4)


@settings(max_examples=50)
@given(padic_classes(2, 5))
def test_monna_interval_length_2(c):
    lo, hi = monna_interval(c)
    assert hi - lo == F(1, 2**c.mod_exp)
    assert 0 <= lo and hi <= 1


@settings(max_examples=50)
@given(padic_classes(3, 4))
def test_monna_interval_length_3(c):
    lo, hi = monna_interval(c)
    assert hi - lo == F(1, 3**c.mod_exp)


def test_monna_intervals_tile():
    # the p^m cosets of level m map onto non-overlapping intervals covering [0, 1]
    for p, m in [(2, 3), (3, 2)]:
        spans = sorted(monna_interval(PadicClass(p, r, m)) for r in range(p**m))
        assert spans[0][0] == 0 and spans[-1][1] == 1
        assert all(x[1] == y[0] for x, y in zip(spans, spans[1:]))


def test_cuboid_examples():
    assert cuboid(box()) == ((0, 1), (0, 1), (0, 1))
    # 2Z_2 is the lower half of the 2-adic axis
    assert cuboid(box(two=(0, 1))) == ((0, 1), (0, F(1, 2)), (0, 1))
    assert cuboid(box(F(1, 2), 1, three=(2, 1))) == ((F(1, 2), 1), (0, 1), (F(2, 3), 1))


def test_full_set_is_one_cuboid():
    svg = render_boxset(BoxSet.full())
    assert svg.startswith("<svg") and svg.endswith("</svg>\n")
    # one shaded cuboid is three filled faces
    assert svg.count('fill="#9ecae1"') == 3


def test_three_halves_image_renders_two_pieces():
    s = image(xi(-1, 1)[0], -1, 1)
    assert [cuboid(b) for b in s.normalized().boxes] == [
        ((0, F(1, 2)), (0, 1), (0, F(1, 3))),
        ((F(1, 2), 1), (0, 1), (F(2, 3), 1)),
    ]
    assert render_boxset(s).count('fill="#9ecae1"') == 6


def test_render_is_deterministic():
    s = boxset(box(0, F(1, 6), two=(1, 2)), box(F(1, 2), F(2, 3), three=(5, 2)))
    for spec in (RenderSpec(), RenderSpec(projection="three_faces", width=600, height=240)):
        assert render_boxset(s, spec) == render_boxset(boxset(*reversed(s.boxes)), spec)


@settings(max_examples=20, deadline=None)
@given(box_sets())
def test_render_depends_only_on_the_set(s):
    again = BoxSet(tuple(sorted(s.boxes, key=repr, reverse=True)))
    assert render_boxset(s) == render_boxset(again)
    numbers = re.findall(r'(?:x1|y1|x2|y2|points)="([^"]*)"', render_boxset(s))
    numbers = [v for attr in numbers for v in re.split(r"[ ,]", attr)]
    assert numbers and all(len(n.split(".")[1]) == 6 for n in numbers)


def test_render_errors():
    with pytest.raises(PreconditionError, match="empty"):
        render_boxset(BoxSet.empty())
    for bad in [dict(projection="perspective"), dict(monna_depth_2=0), dict(width=0)]:
        with pytest.raises(PreconditionError):
            RenderSpec(**bad)


def test_render_partition():
    atoms = list(xi(1, 1))
    svg = render_partition(atoms, RenderSpec(shaded_atom=2))
    assert svg.count('fill="#9ecae1"') == 3
    with pytest.raises(PreconditionError):
        render_partition(atoms, RenderSpec())
    with pytest.raises(PreconditionError):
        render_partition(atoms, RenderSpec(shaded_atom=6))


def test_gallery_panels_match_standalone():
    dirs = [(1, 1), (-1, 1), (1, -1)]
    svg = render_cone_gallery(dirs)
    for d in dirs:
        s = gallery_set(*d)
        assert s == image(xi(*d)[0], *d)
        assert render_panel(s) in svg
    assert svg.count('<g class="panel">') == 3
    assert svg == render_cone_gallery(dirs)


def test_gallery_edge_cases():
    empty = render_cone_gallery([])
    assert '<g class="plane">' in empty and '<g class="panel">' not in empty
    assert "2^a3^b=1" in empty
    dup = render_cone_gallery([(1, 1), (1, 1)])
    assert dup.count(render_panel(gallery_set(1, 1))) == 2
    for d in [(1, 0), (0, -1), (0, 0)]:
        with pytest.raises(PreconditionError, match="not expansive"):
            render_cone_gallery([(1, 1), d])
