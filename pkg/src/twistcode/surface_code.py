"""Qubit surface codes from embedded graphs.

Each vertex v carries N_v = ceil((deg v - 2) / 2) qubits and an extremal CAL
with one Pauli per sector; sector k of v is the sector of (tau rho)^k applied
to v's minimal flag. A face stabilizer is the product of its sector Paulis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping

from .derived_graphs import sector_positions
from .errors import InputError
from .majorana import k_majorana
from .pauli_f2 import Pauli, PauliList, cal_construct, is_extremal_cal, min_cal_qubits
from .rotation_system import RotationSystem, rotation_system_to_dict

__all__ = [
    "SurfaceCode",
    "assign_cals",
    "build_code",
    "code_params_nk",
    "k_rank",
    "code_to_dict",
    "qubits_per_vertex",
]


def qubits_per_vertex(deg: int) -> int:
    return (deg - 1) // 2


@dataclass(frozen=True)
class SurfaceCode:
    graph: RotationSystem
    qubit_layout: list[tuple[int, int]]  # per vertex: (first qubit, N_v)
    cal_map: list[PauliList]
    stabilizers: PauliList
    sector_vertex: list[int]
    sector_pos: list[int]

    @property
    def n(self) -> int:
        return self.stabilizers.n

    def sector_pauli(self, sec: int) -> Pauli:
        v = self.sector_vertex[sec]
        off, _ = self.qubit_layout[v]
        return self.cal_map[v][self.sector_pos[sec]].embed(off, self.n)


def assign_cals(r: RotationSystem, spec: Mapping[str, list[str]] | None = None) -> list[PauliList]:
    """Per-vertex CALs: overrides keyed by the vertex's minimal flag, else canonical."""
    s = r.summary
    if s.V and min(s.degrees) < 3:
        raise InputError("surface codes need every vertex of degree >= 3")
    first = {orb[0]: v for v, orb in enumerate(s.vertices)}
    overrides: dict[int, list[str]] = {}
    for key, strs in (spec or {}).items():
        try:
            h = int(key)
        except (TypeError, ValueError) as exc:
            raise InputError(f"CAL key {key!r} is not a flag index") from exc
        if h not in first:
            raise InputError(f"CAL key {key} is not the minimal flag of a vertex")
        overrides[first[h]] = list(strs)
    out = []
    for v, d in enumerate(s.degrees):
        if v in overrides:
            strs = overrides[v]
            nv = min_cal_qubits(d)
            if len(strs) != d:
                raise InputError(f"vertex {v}: CAL has {len(strs)} entries, degree is {d}")
            cal = PauliList.from_strs(strs)
            if cal.n != nv:
                raise InputError(f"vertex {v}: CAL acts on {cal.n} qubits, expected {nv}")
            if not is_extremal_cal(cal):
                raise InputError(f"vertex {v}: override is not an extremal CAL")
            out.append(cal)
        else:
            out.append(cal_construct(d))
    return out


def build_code(r: RotationSystem, cal_map: list[PauliList] | None = None) -> SurfaceCode:
    if cal_map is None:
        cal_map = assign_cals(r, r.cals)
    s = r.summary
    layout = []
    off = 0
    for v, d in enumerate(s.degrees):
        nv = qubits_per_vertex(d)
        if cal_map[v].n != nv or len(cal_map[v]) != d:
            raise InputError(f"vertex {v}: CAL shape does not match degree {d}")
        layout.append((off, nv))
        off += nv
    n = off
    vert, pos = sector_positions(r)
    sec_paulis = []
    for sec in range(len(s.sectors)):
        v = vert[sec]
        sec_paulis.append(cal_map[v][pos[sec]].embed(layout[v][0], n))
    stabs = []
    for orb in s.faces:
        acc = Pauli.identity(n)
        seen = set()
        for h in orb:
            sec = s.sector_of[h]
            if sec not in seen:
                seen.add(sec)
                acc = acc * sec_paulis[sec]
        stabs.append(acc)
    return SurfaceCode(r, layout, list(cal_map), PauliList(n, tuple(stabs)), vert, pos)


def k_rank(code: SurfaceCode) -> int:
    return code.n - code.stabilizers.dim()


def code_params_nk(code: SurfaceCode) -> tuple[int, int]:
    """(N, K); K is computed topologically and by rank, and they must agree."""
    s = code.graph.summary
    n_formula = s.E - s.V + s.M // 2
    if n_formula != code.n:
        raise AssertionError(f"qubit count {code.n} != |E|-|V|+M/2 = {n_formula}")
    k_top = k_majorana(code.graph)
    k_lin = k_rank(code)
    if k_top != k_lin:
        raise AssertionError(f"K mismatch: topological {k_top}, rank {k_lin}")
    return code.n, k_lin


def code_to_dict(code: SurfaceCode, source: dict[str, Any] | None = None) -> dict[str, Any]:
    n, k = code_params_nk(code)
    src = dict(source or {})
    src.setdefault("rotation_system", rotation_system_to_dict(code.graph))
    return {"n": n, "k": k, "stabilizers": code.stabilizers.strings(), "source": src}
