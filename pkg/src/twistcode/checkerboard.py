"""Face 2-colorings with and without defects.

Vectors over faces or edges are int bitsets indexed by canonical face/edge
order (minimal flag).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import f2
from .rotation_system import RotationSystem

__all__ = [
    "Coloring",
    "CheckerboardResult",
    "face_edge_matrix",
    "edge_faces",
    "edge_endpoints",
    "checkerboard",
    "is_checkerboardable",
    "is_checkerboardable_with_defect",
    "find_defect",
    "coloring_from_defect",
    "vertex_parity",
    "flag_partition",
]


@dataclass(frozen=True)
class Coloring:
    """Bit f of ``black`` set means face f is black."""

    black: int
    n_faces: int

    def color(self, f: int) -> str:
        return "black" if (self.black >> f) & 1 else "white"

    def as_list(self) -> list[str]:
        return [self.color(f) for f in range(self.n_faces)]


@dataclass(frozen=True)
class CheckerboardResult:
    black: list[int]
    white: list[int]
    gamma: int


def face_edge_matrix(r: RotationSystem) -> list[int]:
    """Rows of Phi: bit e of row f is 1 iff f lies on exactly one side of e."""
    s = r.summary
    rows = [0] * s.F
    for e, orb in enumerate(s.edges):
        h = orb[0]
        f1, f2_ = s.face_of[h], s.face_of[r.tau[h]]
        if f1 != f2_:
            rows[f1] |= 1 << e
            rows[f2_] |= 1 << e
    return rows


def edge_faces(r: RotationSystem) -> list[tuple[int, int]]:
    s = r.summary
    return [(s.face_of[o[0]], s.face_of[r.tau[o[0]]]) for o in s.edges]


def edge_endpoints(r: RotationSystem) -> list[tuple[int, int]]:
    s = r.summary
    return [(s.vertex_of[o[0]], s.vertex_of[r.lam[o[0]]]) for o in s.edges]


def _columns(phi: Sequence[int], n_edges: int) -> list[list[int]]:
    cols: list[list[int]] = [[] for _ in range(n_edges)]
    for f, row in enumerate(phi):
        for e in f2.bits(row):
            cols[e].append(f)
    return cols


def checkerboard(phi: Sequence[int], delta: int, n_edges: int | None = None) -> CheckerboardResult:
    """Greedy coloring that also outputs a valid defect gamma.

    gamma equals delta exactly when delta is already a valid defect.
    """
    if n_edges is None:
        n_edges = max((row.bit_length() for row in phi), default=0)
        n_edges = max(n_edges, delta.bit_length())
    cols = _columns(phi, n_edges)
    black: list[int] = [0]
    white: list[int] = []
    colored = {0: 1}
    gamma = delta
    for e in range(n_edges):
        if not cols[e]:
            gamma |= 1 << e
    b = phi[0] if phi else 0
    while b:
        e = (b & -b).bit_length() - 1
        fa, fb = cols[e]
        if (fa in colored) != (fb in colored):
            f, g = (fb, fa) if fa in colored else (fa, fb)
            ge = (gamma >> e) & 1
            if colored[g] == 0 and ge == 0:
                black.append(f)
                colored[f] = 1
            if colored[g] == 1 and ge == 1:
                black.append(f)
                colored[f] = 1
            if f not in colored:
                white.append(f)
                colored[f] = 0
            for e2 in f2.bits(phi[f]):
                if any(h not in colored for h in cols[e2]):
                    b |= 1 << e2
        else:
            same = colored[fa] == colored[fb]
            if same:
                gamma |= 1 << e
            else:
                gamma &= ~(1 << e)
        b &= ~(1 << e)
    return CheckerboardResult(black, white, gamma)


def find_defect(r: RotationSystem) -> int:
    phi = face_edge_matrix(r)
    return checkerboard(phi, 0, r.summary.E).gamma


def coloring_from_defect(r: RotationSystem, delta: int) -> Coloring | None:
    """A coloring x with x Phi = 1 + delta, or None."""
    s = r.summary
    phi = face_edge_matrix(r)
    target = ((1 << s.E) - 1) ^ delta
    x = f2.solve_combination(phi, target)
    if x is None:
        return None
    # normalize so the face holding flag 0 is black
    if not x & 1:
        x ^= (1 << s.F) - 1
    return Coloring(x, s.F)


def is_checkerboardable_with_defect(r: RotationSystem, delta: int) -> bool:
    return coloring_from_defect(r, delta) is not None


def is_checkerboardable(r: RotationSystem) -> tuple[bool, Coloring | None]:
    s = r.summary
    phi = face_edge_matrix(r)
    res = checkerboard(phi, 0, s.E)
    if res.gamma:
        return False, None
    x = 0
    for f in res.black:
        x |= 1 << f
    return True, Coloring(x, s.F)


def vertex_parity(r: RotationSystem, delta: int) -> int:
    """Bit v set iff an odd number of defect edge-ends meet vertex v."""
    out = 0
    for e, (u, v) in enumerate(edge_endpoints(r)):
        if (delta >> e) & 1:
            out ^= 1 << u
            out ^= 1 << v
    return out


def flag_partition(r: RotationSystem, coloring: Coloring) -> tuple[list[int], list[int]]:
    """(H_w, H_b): flags lying in white and black faces."""
    fof = r.summary.face_of
    hw = [h for h in range(r.flag_count) if not (coloring.black >> fof[h]) & 1]
    hb = [h for h in range(r.flag_count) if (coloring.black >> fof[h]) & 1]
    return hw, hb
