"""Exact computations on the x2,x3 solenoid: group law, box sets, Markov partitions, zeta functions."""

from .boxes import Box, BoxSet, PadicClass, box, boxset, equals, haar_measure, image, intersect, subtract, union
from .directions import classify, entropy, height, periodic_point_count, zeta_series
from .errors import InfiniteValuation, PreconditionError, ResourceCapError, SolenoidError
from .group import SolenoidPoint, act, add, neg, point, reduce_to_F, sub, wilson_backward, wilson_forward
from .partition import (
    Partition,
    closed_form_backward_atom,
    closed_form_forward_atom,
    cylinder,
    generator_profile,
    join,
    markov_check,
    orbit_join,
    transition_matrix,
    xi,
)
from .render import RenderSpec, render_boxset, render_cone_gallery

__all__ = [
    "Box", "BoxSet", "PadicClass", "box", "boxset", "equals", "haar_measure", "image", "intersect",
    "subtract", "union", "classify", "entropy", "height", "periodic_point_count", "zeta_series",
    "InfiniteValuation", "PreconditionError", "ResourceCapError", "SolenoidError", "SolenoidPoint",
    "act", "add", "neg", "point", "reduce_to_F", "sub", "wilson_backward", "wilson_forward",
    "Partition", "closed_form_backward_atom", "closed_form_forward_atom", "cylinder",
    "generator_profile", "join", "markov_check", "orbit_join", "transition_matrix", "xi",
    "RenderSpec", "render_boxset", "render_cone_gallery",
]
