"""Quantum symmetry groups of Potts models on weighted graphs."""

__version__ = "0.1.0"

from .classical import automorphisms, brute_force_automorphisms, disjoint_pair_search
from .classify import build_numeric_certificate, classify, structure_hint, verify_numeric_rep
from .model import ModelError, PottsModel, build_model, color_table, level_function
from .oracle import (
    bilinear_form,
    check_preservation,
    energy_spectrum,
    hamiltonian,
    lift_configuration,
    partition_function,
)
from .relations import (
    Inconsistent,
    commutant_identities,
    extract_presentation,
    init_relations,
    propagate,
    saturate,
)
from .scalars import GaussianRational, parse_scalar

__all__ = [
    "GaussianRational",
    "Inconsistent",
    "ModelError",
    "PottsModel",
    "automorphisms",
    "bilinear_form",
    "brute_force_automorphisms",
    "build_model",
    "build_numeric_certificate",
    "check_preservation",
    "classify",
    "color_table",
    "commutant_identities",
    "disjoint_pair_search",
    "energy_spectrum",
    "extract_presentation",
    "hamiltonian",
    "init_relations",
    "level_function",
    "lift_configuration",
    "parse_scalar",
    "partition_function",
    "propagate",
    "saturate",
    "structure_hint",
    "verify_numeric_rep",
]
