"""Quivers with potentials, cluster mutation and desk-scale Donaldson-Thomas series."""

from __future__ import annotations

from .cluster import (
    ClusterState,
    Seed,
    c_vector,
    cluster_state,
    f_polynomial,
    fz,
    g_recursion_check,
    g_vector,
    initial_seed,
    mutate_seed,
    sign_sequence,
    tg_vector,
)
from .config import Config
from .document import Document, parse_input
from .errors import QPDTError
from .lattice import LatticeVector, chi, class_in_M, phi_inverse_step
from .laurent import Laurent
from .potential import QP, Potential, cyclic_derivative, mutate_qp, premutate, reduce
from .quiver import Quiver, mutate_quiver, principal_framing
from .representations import (
    ModuleRep,
    count_grass_points,
    count_hilb_points,
    euler_from_counts,
    grass_series,
    hilb_series,
)
from .torus import (
    TorusAutomorphism,
    TorusSeries,
    ad_minus_automorphism,
    ad_plus_automorphism,
    compose,
    dt_automorphism,
    invert,
    mul,
    pi_project,
    sigma_involution,
)
from .verify import VerificationReport, verify_cc, verify_factorization, verify_transformation

__version__ = "0.1.0"

__all__ = [
    "ClusterState", "Seed", "c_vector", "cluster_state", "f_polynomial", "fz", "g_recursion_check",
    "g_vector", "initial_seed", "mutate_seed", "sign_sequence", "tg_vector",
    "Config", "Document", "parse_input", "QPDTError",
    "LatticeVector", "chi", "class_in_M", "phi_inverse_step", "Laurent",
    "QP", "Potential", "cyclic_derivative", "mutate_qp", "premutate", "reduce",
    "Quiver", "mutate_quiver", "principal_framing",
    "ModuleRep", "count_grass_points", "count_hilb_points", "euler_from_counts", "grass_series",
    "hilb_series",
    "TorusAutomorphism", "TorusSeries", "ad_minus_automorphism", "ad_plus_automorphism", "compose",
    "dt_automorphism", "invert", "mul", "pi_project", "sigma_involution",
    "VerificationReport", "verify_cc", "verify_factorization", "verify_transformation",
]
