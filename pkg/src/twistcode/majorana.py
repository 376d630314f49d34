"""Phase-tracked Majorana operators and the Majorana surface code.

An operator is ``i^phase * gamma_a`` where ``gamma_a`` is the product of the
modes in ``a`` taken in ascending label order.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import f2
from .checkerboard import is_checkerboardable
from .errors import InputError
from .pauli_f2 import Pauli
from .rotation_system import RotationSystem

__all__ = [
    "MajoranaOp",
    "MajoranaLabeling",
    "maj_mul",
    "maj_commute",
    "label_majoranas",
    "majorana_stabilizers",
    "k_majorana",
    "k_majorana_rank",
    "jordan_wigner",
    "contains_minus_identity",
]


@dataclass(frozen=True, slots=True)
class MajoranaOp:
    m: int
    phase: int
    support: int

    @classmethod
    def mode(cls, m: int, j: int) -> MajoranaOp:
        return cls(m, 0, 1 << j)

    @classmethod
    def identity(cls, m: int) -> MajoranaOp:
        return cls(m, 0, 0)

    @property
    def weight(self) -> int:
        return self.support.bit_count()

    def __mul__(self, other: MajoranaOp) -> MajoranaOp:
        return maj_mul(self, other)

    def scaled(self, k: int) -> MajoranaOp:
        """Multiply by i^k."""
        return MajoranaOp(self.m, (self.phase + k) % 4, self.support)

    def is_hermitian(self) -> bool:
        sq = maj_mul(self, self)
        return sq.support == 0 and sq.phase == 0


def _xi(a: int, b: int) -> int:
    total = 0
    for i in f2.bits(b):
        total += (a >> (i + 1)).bit_count()
    return total


def maj_mul(a: MajoranaOp, b: MajoranaOp) -> MajoranaOp:
    if a.m != b.m:
        raise ValueError("mode count mismatch")
    phase = (a.phase + b.phase + 2 * _xi(a.support, b.support)) % 4
    return MajoranaOp(a.m, phase, a.support ^ b.support)


def maj_commute(a: MajoranaOp, b: MajoranaOp) -> int:
    """1 when a and b anticommute."""
    wa, wb = a.weight, b.weight
    return (wa * wb + (a.support & b.support).bit_count()) & 1


@dataclass(frozen=True)
class MajoranaLabeling:
    m: int
    half_edge: list[int]  # label per half-edge index
    odd_vertex: dict[int, int]  # label per odd-degree vertex


def _euler_circuit(r: RotationSystem) -> list[tuple[int, int, int]]:
    """Closed trail through every edge: list of (edge, half-edge out, half-edge in)."""
    s = r.summary
    hof, vof = s.half_edge_of, s.vertex_of
    adj: list[list[tuple[int, int, int]]] = [[] for _ in range(s.V)]
    for e, orb in enumerate(s.edges):
        h = orb[0]
        a, b = hof[h], hof[r.lam[h]]
        adj[vof[h]].append((a, e, b))
        adj[vof[r.lam[h]]].append((b, e, a))
    for lst in adj:
        lst.sort()
    used = [False] * s.E
    ptr = [0] * s.V
    start = vof[0]
    stack: list[tuple[int, tuple[int, int, int] | None]] = [(start, None)]
    out: list[tuple[int, int, int]] = []
    while stack:
        v, via = stack[-1]
        lst = adj[v]
        while ptr[v] < len(lst) and used[lst[ptr[v]][1]]:
            ptr[v] += 1
        if ptr[v] == len(lst):
            stack.pop()
            if via is not None:
                out.append(via)
            continue
        a, e, b = lst[ptr[v]]
        used[e] = True
        stack.append((vof[s.half_edges[b][0]], (e, a, b)))
    out.reverse()
    if len(out) != s.E:
        raise AssertionError("Euler circuit incomplete")
    return out


def label_majoranas(r: RotationSystem) -> MajoranaLabeling:
    s = r.summary
    if min(s.degrees) < 3:
        raise InputError("Majorana surface codes need every vertex of degree >= 3")
    m = 2 * s.E + s.M
    labels = [-1] * len(s.half_edges)
    ok, _ = is_checkerboardable(r)
    if ok:
        for k, (_, a, b) in enumerate(_euler_circuit(r)):
            labels[a] = 2 * k
            labels[b] = 2 * k + 1
    else:
        for e, orb in enumerate(s.edges):
            h = orb[0]
            labels[s.half_edge_of[h]] = 2 * e
            labels[s.half_edge_of[r.lam[h]]] = 2 * e + 1
    odd = {v: 2 * s.E + i for i, v in enumerate(s.odd_vertices)}
    return MajoranaLabeling(m, labels, odd)


def majorana_stabilizers(
    r: RotationSystem, labeling: MajoranaLabeling | None = None
) -> tuple[list[MajoranaOp], list[MajoranaOp]]:
    """(vertex stabilizers, face stabilizers) in canonical vertex/face order."""
    if labeling is None:
        labeling = label_majoranas(r)
    s = r.summary
    m = labeling.m
    svs = []
    for v, orb in enumerate(s.vertices):
        sup = 0
        for h in orb:
            sup |= 1 << labeling.half_edge[s.half_edge_of[h]]
        d = s.degrees[v]
        if d % 2:
            sup |= 1 << labeling.odd_vertex[v]
            phase = (d + 1) // 2
        else:
            phase = d // 2
        # ascending order is the canonical order of gamma_a
        svs.append(MajoranaOp(m, phase % 4, sup))
    sfs = []
    for orb in s.faces:
        fset = set(orb)
        sup = 0
        for h in orb:
            if r.tau[h] not in fset:
                sup |= 1 << labeling.half_edge[s.half_edge_of[h]]
        sfs.append(MajoranaOp(m, (sup.bit_count() // 2) % 4, sup))
    return svs, sfs


def k_majorana(r: RotationSystem) -> int:
    """Encoded qubits from topology: (2 - chi) plus twist term when needed."""
    s = r.summary
    ok, _ = is_checkerboardable(r)
    k = 2 - s.chi
    if not ok:
        k += (s.M - 2) // 2
    return k


def k_majorana_rank(r: RotationSystem, labeling: MajoranaLabeling | None = None) -> int:
    if labeling is None:
        labeling = label_majoranas(r)
    svs, sfs = majorana_stabilizers(r, labeling)
    return labeling.m // 2 - f2.rank(op.support for op in svs + sfs)


def jordan_wigner(op: MajoranaOp) -> tuple[int, Pauli]:
    """Return (k, P) with JW(op) = i^k P and P a Hermitian Pauli string."""
    if op.m % 2:
        raise InputError("Jordan-Wigner needs an even number of modes")
    n = op.m // 2
    p, x, z = op.phase, 0, 0
    for j in f2.bits(op.support):
        q = j // 2
        below = (1 << q) - 1
        gp, gx, gz = (0, 1 << q, below) if j % 2 == 0 else (1, 1 << q, below | (1 << q))
        p += gp + 2 * (z & gx).bit_count()
        x ^= gx
        z ^= gz
    p -= (x & z).bit_count()
    return p % 4, Pauli(n, x, z)


def contains_minus_identity(gens: list[MajoranaOp]) -> bool:
    """Whether -I lies in the group generated by ``gens``."""
    for i, a in enumerate(gens):
        for b in gens[i + 1 :]:
            if maj_commute(a, b):
                return True
    basis: dict[int, MajoranaOp] = {}
    for g in gens:
        cur = g
        while cur.support:
            top = cur.support.bit_length() - 1
            piv = basis.get(top)
            if piv is None:
                basis[top] = cur
                break
            cur = maj_mul(cur, piv)
        else:
            if cur.phase == 2:
                return True
    return False
