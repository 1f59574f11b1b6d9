"""Bi-Lipschitz invariants of plane curve germs: polar arcs, gradient canyons,
augmented Newton polygons and second-level data, computed exactly."""

__version__ = "0.1.0"

from .arith import QQ, Coeff, FieldTower, adjoin_root, root_of_unity  # noqa: E402
from .errors import CanyonError, TruncationTooLow  # noqa: E402
from .poly import BivarPoly, derivative_x, parse, relative  # noqa: E402
from .series import PuiseuxSeries, contact_order, conjugates  # noqa: E402
from .solver import puiseux_roots  # noqa: E402
from .canyon import analyze, gradient_degree  # noqa: E402
from .invariants import IdentityCard, compare_cards, identity_card  # noqa: E402

__all__ = [
    "QQ", "Coeff", "FieldTower", "adjoin_root", "root_of_unity",
    "CanyonError", "TruncationTooLow",
    "BivarPoly", "derivative_x", "parse", "relative",
    "PuiseuxSeries", "contact_order", "conjugates",
    "puiseux_roots", "analyze", "gradient_degree",
    "IdentityCard", "compare_cards", "identity_card",
]
