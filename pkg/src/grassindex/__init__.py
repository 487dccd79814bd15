"""Fadell-Husseini index of real Grassmannians G_n(R^2n) over F_2, with equal-shadow solvers."""

from .grassmann import GrassmannRing, dual_classes, graded_dimension, z2_decompose
from .index import IndexCertificate, closed_form_power, index_power, verify_prop_relations, verify_t_vanishing
from .wreath import WreathContext, WreathElement, wreath_sw_component

__all__ = [
    "GrassmannRing",
    "IndexCertificate",
    "WreathContext",
    "WreathElement",
    "closed_form_power",
    "dual_classes",
    "graded_dimension",
    "index_power",
    "verify_prop_relations",
    "verify_t_vanishing",
    "wreath_sw_component",
    "z2_decompose",
]
