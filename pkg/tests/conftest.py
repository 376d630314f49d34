from __future__ import annotations

import random

import pytest

from twistcode import families as fam
from twistcode.random_graphs import random_rotation_system
from twistcode.rotation_system import OrientedRotationSystem, RotationSystem, from_oriented


def loop_sphere() -> RotationSystem:
    # one vertex, one loop, two faces
    return RotationSystem([1, 0, 3, 2], [1, 0, 3, 2], [2, 3, 0, 1])


def loop_oriented() -> RotationSystem:
    return from_oriented(OrientedRotationSystem((1, 0), (1, 0)))


def code_fixtures() -> dict[str, RotationSystem]:
    """Graphs with every degree >= 3, small enough for exact distance."""
    return {
        "torus2x2": fam.square_toric(2, 2),
        "torus3x3": fam.square_toric(3, 3),
        "torus2x3": fam.square_toric(2, 3),
        "torus4x4": fam.square_toric(4, 4),
        "k5": fam.cyclic_toric(1, 2)[0],
        "cyc13": fam.cyclic_toric(1, 3)[0],
        "rot88": fam.rotated_toric((2, 2), (-2, 2)),
        "stellated32": fam.stellated_high_genus(3, 2),
        "stellated31": fam.stellated_high_genus(3, 1),
        "surface3": fam.rotated_surface(3),
        "random_a": random_rotation_system(random.Random(11), max_edges=10),
        "random_b": random_rotation_system(random.Random(12), max_edges=12),
        "random_c": random_rotation_system(random.Random(13), max_edges=9, twist_prob=0.6),
        "random_d": random_rotation_system(random.Random(14), max_edges=12, twist_prob=0.0),
    }


def all_fixtures() -> dict[str, RotationSystem]:
    out = {"loop": loop_sphere()}
    out.update(code_fixtures())
    return out


CODE_FIXTURES = code_fixtures()
ALL_FIXTURES = all_fixtures()


@pytest.fixture(params=sorted(CODE_FIXTURES))
def code_graph(request: pytest.FixtureRequest) -> RotationSystem:
    return CODE_FIXTURES[request.param]


@pytest.fixture(params=sorted(ALL_FIXTURES))
def any_graph(request: pytest.FixtureRequest) -> RotationSystem:
    return ALL_FIXTURES[request.param]
