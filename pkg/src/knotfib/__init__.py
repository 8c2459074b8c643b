"""Degree-one Vassiliev invariants of knots and links in R^1-fibrations
over planar surfaces, computed from gated Gauss codes."""

from .annulus import (
    LaurentPoly,
    RangeError,
    a_poly,
    canonical_form,
    delta_twist,
    homology,
    is_in_range,
    parse_poly,
    psi,
    range_violations,
    realize_polynomial,
    spiral_knot,
    symmetry_check,
    twist_diagram,
)
from .diagram import (
    Component,
    Crossing,
    Diagram,
    Gate,
    Surface,
    Visit,
    component_word,
    parse,
    random_diagram,
    serialize,
    split_at,
    validate,
)
from .invariants import (
    ModuleElement,
    WeightSystem,
    evaluate_v1,
    phi_push,
    u_homological,
    u_knot,
    u_link,
    u_multi,
    u_tilde,
)
from .moves import (
    Move,
    MoveLog,
    apply,
    bite_then_flip,
    fiber_flip,
    fuzz,
    predicted_jump,
    predicted_link_jump,
)
from .words import (
    AbelianVector,
    ConjClass,
    EightClass,
    Word,
    abelianize,
    conj_class,
    eight_class,
    reduce,
)

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly",
    "RangeError",
    "a_poly",
    "canonical_form",
    "delta_twist",
    "homology",
    "is_in_range",
    "parse_poly",
    "psi",
    "range_violations",
    "realize_polynomial",
    "spiral_knot",
    "symmetry_check",
    "twist_diagram",
    "Component",
    "Crossing",
    "Diagram",
    "Gate",
    "Surface",
    "Visit",
    "component_word",
    "parse",
    "random_diagram",
    "serialize",
    "split_at",
    "validate",
    "ModuleElement",
    "WeightSystem",
    "evaluate_v1",
    "phi_push",
    "u_homological",
    "u_knot",
    "u_link",
    "u_multi",
    "u_tilde",
    "Move",
    "MoveLog",
    "apply",
    "bite_then_flip",
    "fiber_flip",
    "fuzz",
    "predicted_jump",
    "predicted_link_jump",
    "AbelianVector",
    "ConjClass",
    "EightClass",
    "Word",
    "abelianize",
    "conj_class",
    "eight_class",
    "reduce",
]
