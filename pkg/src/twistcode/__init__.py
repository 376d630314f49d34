"""Qubit and Majorana surface codes on graphs embedded in surfaces."""

from __future__ import annotations

from .checkerboard import find_defect, is_checkerboardable
from .derived_graphs import decoding_graph, doubled, embedded_decoding_components, face_vertex, medial
from .errors import AlreadyCheckerboardable, BudgetExceeded, InconsistentPattern, InputError, TwistcodeError
from .logical_analysis import (
    DistanceReport,
    centralizer_basis,
    distance_report,
    distance_upper_J,
    exact_distance,
    hsys,
    omega,
    sigma,
    trail_is_trivial,
)
from .pauli_f2 import Pauli, PauliList, cal_construct, solve_pattern
from .rotation_system import (
    OrientedRotationSystem,
    RotationSystem,
    dual,
    from_oriented,
    parse_rotation_system,
    serialize_rotation_system,
    validate,
)
from .surface_code import SurfaceCode, build_code, code_params_nk

__all__ = [
    "AlreadyCheckerboardable",
    "BudgetExceeded",
    "DistanceReport",
    "InconsistentPattern",
    "InputError",
    "OrientedRotationSystem",
    "Pauli",
    "PauliList",
    "RotationSystem",
    "SurfaceCode",
    "TwistcodeError",
    "build_code",
    "cal_construct",
    "centralizer_basis",
    "code_params_nk",
    "decoding_graph",
    "distance_report",
    "distance_upper_J",
    "doubled",
    "dual",
    "embedded_decoding_components",
    "exact_distance",
    "face_vertex",
    "find_defect",
    "from_oriented",
    "hsys",
    "is_checkerboardable",
    "medial",
    "omega",
    "parse_rotation_system",
    "serialize_rotation_system",
    "sigma",
    "solve_pattern",
    "trail_is_trivial",
    "validate",
]
