from polyalg.orders import MonomialOrder, coefficients_in
from polyalg.groebner import GroebnerBasis, normal_form, buchberger, elimination_ideal
from polyalg.relations import RelationIdeal, relations_ideal

__all__ = [
    "MonomialOrder",
    "coefficients_in",
    "GroebnerBasis",
    "normal_form",
    "buchberger",
    "elimination_ideal",
    "RelationIdeal",
    "relations_ideal",
]
