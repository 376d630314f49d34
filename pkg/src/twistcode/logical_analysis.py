"""Centralizers, exact distance, logical-operator maps and distance bounds."""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Any, Callable, Sequence

import numpy as np

from . import f2
from .checkerboard import (
    edge_endpoints,
    face_edge_matrix,
    find_defect,
    is_checkerboardable,
)
from .derived_graphs import doubled, embedded_decoding_components, face_vertex
from .errors import BudgetExceeded, InputError
from .pauli_f2 import Pauli, PauliList, solve_pattern
from .rotation_system import RotationSystem
from .surface_code import SurfaceCode

__all__ = [
    "DEFAULT_BUDGET",
    "DistanceResult",
    "DistanceReport",
    "HsysResult",
    "JResult",
    "centralizer_basis",
    "exact_distance",
    "sigma",
    "omega",
    "trail_is_trivial",
    "trail_boundary",
    "hsys",
    "hsys_bfs",
    "homology_signatures",
    "distance_upper_J",
    "distance_report",
    "resolve_budget",
]

DEFAULT_BUDGET = 1 << 28
_INNER_BITS = 18


def resolve_budget(budget: int | None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("TWISTCODE_EXACT_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"TWISTCODE_EXACT_BUDGET={env!r} is not an integer") from exc
    return DEFAULT_BUDGET


# ---------------------------------------------------------------- centralizer


def centralizer_basis(stabs: PauliList) -> tuple[PauliList, int]:
    """Basis of the centralizer whose first ``r`` rows span the stabilizer group.

    Returns (basis, r); the remaining 2K rows complete it to the centralizer.
    """
    n = stabs.n
    basis = f2.EchelonBasis()
    prefix = []
    for p in stabs:
        if basis.add(p.sym):
            prefix.append(p.sym)
    r = len(prefix)
    duals = [p.z | (p.x << n) for p in stabs]
    rest = []
    for v in f2.right_kernel(duals, 2 * n):
        if basis.add(v):
            rest.append(v)
    rows = prefix + rest
    return PauliList(n, tuple(Pauli.from_sym(n, v) for v in rows)), r


# ------------------------------------------------------------- exact distance


@dataclass(frozen=True)
class DistanceResult:
    distance: int | None
    witness: Pauli | None
    strategy: str
    steps: int


def _require_word(n: int) -> None:
    if n > 64:
        raise BudgetExceeded(f"exact search supports at most 64 qubits, got {n}")


def _gray_cost(r: int, k: int) -> int:
    return ((1 << (2 * k)) - 1) << r


def _distance_gray(cbasis: PauliList, r: int, budget: int) -> DistanceResult:
    n = cbasis.n
    _require_word(n)
    k2 = len(cbasis) - r
    cost = _gray_cost(r, k2 // 2)
    if cost > budget:
        raise BudgetExceeded(f"Gray enumeration needs {cost} steps > budget {budget}")
    xs = [p.x for p in cbasis]
    zs = [p.z for p in cbasis]
    b = min(r, _INNER_BITS)
    tx = np.zeros(1, dtype=np.uint64)
    tz = np.zeros(1, dtype=np.uint64)
    for i in range(b):
        tx = np.concatenate([tx, tx ^ np.uint64(xs[i])])
        tz = np.concatenate([tz, tz ^ np.uint64(zs[i])])
    outer = list(range(b, r))
    best = n + 1
    best_vec: tuple[int, int] | None = None
    for lmask in range(1, 1 << k2):
        lx = lz = 0
        for j in f2.bits(lmask):
            lx ^= xs[r + j]
            lz ^= zs[r + j]
        cx, cz = lx, lz
        for step in range(1 << len(outer)):
            if step:
                flip = outer[(step & -step).bit_length() - 1]
                cx ^= xs[flip]
                cz ^= zs[flip]
            w = np.bitwise_count((tx ^ np.uint64(cx)) | (tz ^ np.uint64(cz)))
            i = int(np.argmin(w))
            if int(w[i]) < best:
                best = int(w[i])
                best_vec = (cx ^ int(tx[i]), cz ^ int(tz[i]))
    assert best_vec is not None
    return DistanceResult(best, Pauli(n, *best_vec), "gray", cost)


def _distance_weight(cbasis: PauliList, r: int, budget: int, max_weight: int | None = None) -> DistanceResult:
    n = cbasis.n
    logical = list(cbasis)[r:]
    stab_basis = list(cbasis)[:r]
    tests = stab_basis + logical
    if len(tests) > 64:
        raise BudgetExceeded("weight search supports at most 64 syndrome bits")
    lo_mask = np.uint64((1 << r) - 1)
    # syndrome of single-qubit X, Y, Z on each qubit
    tab = np.zeros((n, 3), dtype=np.uint64)
    for q in range(n):
        for c, (bx, bz) in enumerate(((1, 0), (1, 1), (0, 1))):
            p = Pauli(n, bx << q, bz << q)
            syn = 0
            for j, t in enumerate(tests):
                if (p.x & t.z) ^ (p.z & t.x):
                    syn |= 1 << j
            tab[q, c] = syn
    steps = 0
    top = n if max_weight is None else min(n, max_weight)
    for w in range(1, top + 1):
        level = comb(n, w) * 3**w
        if steps + level > budget:
            raise BudgetExceeded(f"weight search exceeds budget {budget} at weight {w}")
        steps += level
        per_chunk = max(1, (1 << 22) // 3**w)
        it = combinations(range(n), w)
        while True:
            chunk = list(_take(it, per_chunk))
            if not chunk:
                break
            qs = np.array(chunk, dtype=np.int64)
            syn = tab[qs[:, 0]]
            for j in range(1, w):
                syn = (syn[:, :, None] ^ tab[qs[:, j]][:, None, :]).reshape(len(chunk), -1)
            hit = ((syn & lo_mask) == 0) & ((syn >> np.uint64(r)) != 0)
            if hit.any():
                row, col = np.argwhere(hit)[0]
                return DistanceResult(w, _rebuild(n, chunk[row], int(col), w), "weight", steps)
    return DistanceResult(None, None, "weight", steps)


def _take(it: Any, k: int) -> Any:
    for _ in range(k):
        try:
            yield next(it)
        except StopIteration:
            return


def _rebuild(n: int, qubits: Sequence[int], col: int, w: int) -> Pauli:
    x = z = 0
    digits = []
    for _ in range(w):
        digits.append(col % 3)
        col //= 3
    digits.reverse()
    for q, c in zip(qubits, digits):
        bx, bz = ((1, 0), (1, 1), (0, 1))[c]
        x |= bx << q
        z |= bz << q
    return Pauli(n, x, z)


def exact_distance(stabs: PauliList, budget: int | None = None, strategy: str = "auto") -> DistanceResult:
    """Minimum weight of a centralizer element outside the stabilizer group.

    Strategies: ``gray`` enumerates the whole centralizer coset space;
    ``weight`` scans Paulis by increasing weight; ``auto`` tries the weight
    scan within the Gray cost and falls back to Gray.
    """
    budget = resolve_budget(budget)
    cbasis, r = centralizer_basis(stabs)
    k2 = len(cbasis) - r
    if k2 == 0:
        return DistanceResult(None, None, "none", 0)
    if strategy == "gray":
        return _distance_gray(cbasis, r, budget)
    if strategy == "weight":
        return _distance_weight(cbasis, r, budget)
    if strategy != "auto":
        raise InputError(f"unknown strategy {strategy!r}")
    gray_cost = _gray_cost(r, k2 // 2)
    try:
        return _distance_weight(cbasis, r, min(budget, gray_cost))
    except BudgetExceeded:
        if gray_cost <= budget and cbasis.n <= 64:
            return _distance_gray(cbasis, r, budget)
        raise


# ------------------------------------------------------------ logical maps


def sigma(code: SurfaceCode, sectors: Sequence[int] | int) -> Pauli:
    """Pauli represented by a set of decoding-graph edges (sector ids)."""
    if isinstance(sectors, int):
        sectors = f2.bits(sectors)
    s = code.graph.summary
    sectors = list(sectors)
    face_deg = [0] * s.F
    for sec in sectors:
        face_deg[s.face_of[s.sectors[sec][0]]] ^= 1
    if any(face_deg):
        raise InputError("sector set has odd degree at a face node; not a cycle")
    pattern = [0] * s.V
    for sec in sectors:
        v = code.sector_vertex[sec]
        pattern[v] ^= 1 << code.sector_pos[sec]
    return _assemble(code, pattern)


def _assemble(code: SurfaceCode, pattern: Sequence[int]) -> Pauli:
    n = code.n
    out = Pauli.identity(n)
    for v, x in enumerate(pattern):
        if x:
            local = solve_pattern(code.cal_map[v], x)
            out = out * local.embed(code.qubit_layout[v][0], n)
    return out


def omega(code: SurfaceCode, trail: int) -> Pauli:
    """Pauli attached to an edge set whose odd vertices are the odd-degree ones."""
    r = code.graph
    _check_trail(r, trail)
    s = r.summary
    in_trail = [((trail >> s.edge_of[orb[0]]) & 1) for orb in s.half_edges]
    pattern = [0] * s.V
    for sec, orb in enumerate(s.sectors):
        h = orb[0]
        bit = in_trail[s.half_edge_of[h]] ^ in_trail[s.half_edge_of[r.rho[h]]]
        if bit:
            pattern[code.sector_vertex[sec]] |= 1 << code.sector_pos[sec]
    return _assemble(code, pattern)


def trail_boundary(r: RotationSystem, trail: int) -> list[int]:
    """Vertices meeting an odd number of trail edges."""
    odd = [0] * r.summary.V
    for e, (u, v) in enumerate(edge_endpoints(r)):
        if (trail >> e) & 1 and u != v:
            odd[u] ^= 1
            odd[v] ^= 1
    return [v for v, b in enumerate(odd) if b]


def _check_trail(r: RotationSystem, trail: int) -> None:
    s = r.summary
    if trail < 0 or trail >> s.E:
        raise InputError("trail mentions edges outside the graph")
    bad = [v for v in trail_boundary(r, trail) if s.degrees[v] % 2 == 0]
    if bad:
        raise InputError(f"trail has even-degree endpoint(s) {bad}")


def trail_is_trivial(r: RotationSystem, trail: int) -> bool:
    """Whether x Phi equals the trail or its complement for some face set x."""
    _check_trail(r, trail)
    s = r.summary
    phi = face_edge_matrix(r)
    full = (1 << s.E) - 1
    return f2.solve_combination(phi, trail) is not None or f2.solve_combination(phi, full ^ trail) is not None


# ------------------------------------------------------- homological systole


@dataclass(frozen=True)
class HsysResult:
    value: int | None  # None when no nontrivial cycle exists
    exact: bool
    dim: int


def homology_signatures(r: RotationSystem) -> tuple[list[tuple[int, int]], list[int], int]:
    """Per edge: endpoints and a homology signature over F2; plus the dimension.

    Signatures are linear: a cycle is homologically trivial iff the XOR of
    its edge signatures is zero.
    """
    s = r.summary
    ends = edge_endpoints(r)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(s.V)]
    for e, (u, v) in enumerate(ends):
        adj[u].append((v, e))
        if u != v:
            adj[v].append((u, e))
    tree = set()
    seen = [False] * s.V
    seen[0] = True
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v, e in adj[u]:
            if not seen[v]:
                seen[v] = True
                tree.add(e)
                queue.append(v)
    coord: dict[int, int] = {}
    for e in range(s.E):
        if e not in tree:
            coord[e] = len(coord)
    raw = [1 << coord[e] if e in coord else 0 for e in range(s.E)]
    basis = f2.EchelonBasis()
    for row in face_edge_matrix(r):
        acc = 0
        for e in f2.bits(row):
            acc ^= raw[e]
        basis.add(acc)
    pivots = set(basis.rows)
    free = [c for c in range(len(coord)) if c not in pivots]
    remap = {c: i for i, c in enumerate(free)}
    sigs = []
    for e in range(s.E):
        red, _ = basis.reduce_full(raw[e])
        sig = 0
        for c in f2.bits(red):
            sig |= 1 << remap[c]
        sigs.append(sig)
    return ends, sigs, len(free)


def hsys(r: RotationSystem, class_filter: Callable[[int], bool] | None = None) -> HsysResult:
    """Length of a shortest homologically nontrivial cycle.

    Every candidate is a BFS-tree path pair closed by one edge; the family of
    nontrivial cycles satisfies the three-path condition, so the minimum over
    candidates is the systole.
    """
    ends, sigs, dim = homology_signatures(r)
    if dim == 0:
        return HsysResult(None, True, 0)
    nv = r.summary.V
    adj: list[list[tuple[int, int]]] = [[] for _ in range(nv)]
    for e, (u, v) in enumerate(ends):
        adj[u].append((v, e))
        if u != v:
            adj[v].append((u, e))
    best: int | None = None
    for root in range(nv):
        dist = [-1] * nv
        psig = [0] * nv
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, e in adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    psig[v] = psig[u] ^ sigs[e]
                    queue.append(v)
        for e, (u, v) in enumerate(ends):
            sig = psig[u] ^ psig[v] ^ sigs[e]
            if sig and (class_filter is None or class_filter(sig)):
                length = dist[u] + dist[v] + 1
                if best is None or length < best:
                    best = length
    return HsysResult(best, True, dim)


def hsys_bfs(r: RotationSystem, max_dim: int = 12) -> HsysResult:
    """Shortest nontrivial closed walk by BFS over (vertex, homology class)."""
    ends, sigs, dim = homology_signatures(r)
    if dim == 0:
        return HsysResult(None, True, 0)
    if dim > max_dim:
        fallback = hsys(r)
        return HsysResult(fallback.value, False, dim)
    nv = r.summary.V
    adj: list[list[tuple[int, int]]] = [[] for _ in range(nv)]
    for e, (u, v) in enumerate(ends):
        adj[u].append((v, sigs[e]))
        adj[v].append((u, sigs[e]))
    best: int | None = None
    for root in range(nv):
        dist = {(root, 0): 0}
        queue = deque([(root, 0)])
        while queue:
            u, sg = queue.popleft()
            d = dist[(u, sg)]
            if best is not None and d >= best:
                break
            for v, es in adj[u]:
                key = (v, sg ^ es)
                if key not in dist:
                    dist[key] = d + 1
                    if v == root and key[1]:
                        if best is None or d + 1 < best:
                            best = d + 1
                    queue.append(key)
    return HsysResult(best, True, dim)


# ------------------------------------------------------------- path basis J


@dataclass(frozen=True)
class JResult:
    vertices: int | None  # vertex count of the best nontrivial basis path
    weight: int | None  # Pauli weight of omega on the best basis path
    trail: int | None
    operator: Pauli | None


def _path_basis(r: RotationSystem) -> list[int]:
    """Minimum cycle basis of G plus a clique on odd vertices (Horton)."""
    s = r.summary
    ends = list(edge_endpoints(r))
    odd = s.odd_vertices
    for i, a in enumerate(odd):
        for b in odd[i + 1 :]:
            ends.append((a, b))
    ne = len(ends)
    adj: list[list[tuple[int, int]]] = [[] for _ in range(s.V)]
    for e, (u, v) in enumerate(ends):
        adj[u].append((v, e))
        if u != v:
            adj[v].append((u, e))
    cands: set[int] = set()
    for root in range(s.V):
        path = [0] * s.V
        seen = [False] * s.V
        seen[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, e in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    path[v] = path[u] | (1 << e)
                    queue.append(v)
        for e, (u, v) in enumerate(ends):
            c = path[u] ^ path[v] ^ (1 << e)
            if c:
                cands.add(c)
    target = ne - s.V + 1
    basis = f2.EchelonBasis()
    chosen = []
    for c in sorted(cands, key=lambda c: (c.bit_count(), c)):
        if basis.add(c):
            chosen.append(c)
            if len(chosen) == target:
                break
    return chosen


def distance_upper_J(code: SurfaceCode) -> JResult:
    """Best nontrivial element of a minimum path basis and its omega weight."""
    r = code.graph
    s = r.summary
    gmask = (1 << s.E) - 1
    ends = edge_endpoints(r)
    best_v: int | None = None
    best: tuple[int, int, Pauli] | None = None
    for c in _path_basis(r):
        t = c & gmask
        if not t or trail_is_trivial(r, t):
            continue
        verts = set()
        for e in f2.bits(t):
            verts.update(ends[e])
        if best_v is None or len(verts) < best_v:
            best_v = len(verts)
        op = omega(code, t)
        if best is None or op.weight < best[0]:
            best = (op.weight, t, op)
    if best is None:
        return JResult(None, None, None, None)
    return JResult(best_v, best[0], best[1], best[2])


# --------------------------------------------------------------- report


@dataclass
class DistanceReport:
    n: int
    k: int
    exact: int | None = None
    lower_bounds: list[tuple[int, str]] = field(default_factory=list)
    upper_bounds: list[tuple[int, str]] = field(default_factory=list)
    informational: list[tuple[int, str]] = field(default_factory=list)
    witness: Pauli | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def lower(self) -> int | None:
        return max((v for v, _ in self.lower_bounds), default=None)

    @property
    def upper(self) -> int | None:
        return min((v for v, _ in self.upper_bounds), default=None)

    def consistent(self) -> bool:
        lo, hi = self.lower, self.upper
        if lo is not None and hi is not None and lo > hi:
            return False
        if self.exact is not None:
            if lo is not None and self.exact < lo:
                return False
            if hi is not None and self.exact > hi:
                return False
        return True

    def as_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "k": self.k,
            "exact": self.exact,
            "lower_bounds": [{"value": v, "source": s} for v, s in self.lower_bounds],
            "upper_bounds": [{"value": v, "source": s} for v, s in self.upper_bounds],
            "informational": [{"value": v, "source": s} for v, s in self.informational],
            "witness": str(self.witness) if self.witness is not None else None,
            "notes": list(self.notes),
        }


def _half_ceil(v: int, q: int) -> int:
    return -(-v // q)


def distance_report(code: SurfaceCode, budget: int | None = None, bounds_only: bool = False) -> DistanceReport:
    r = code.graph
    s = r.summary
    n = code.n
    k = n - code.stabilizers.dim()
    rep = DistanceReport(n, k)
    if k == 0:
        rep.notes.append("no logical qubits")
        return rep
    small_degree = max(s.degrees) <= 4
    ok, col = is_checkerboardable(r)
    if ok:
        comps = embedded_decoding_components(r, col)
        h = [hsys(c).value for c in comps]
        hv = min(v for v in h if v is not None)
        rep.lower_bounds.append((_half_ceil(hv, 2), "half-hsys-decoding"))
        if small_degree:
            rep.upper_bounds.append((hv // 2, "half-hsys-decoding-4valent"))
    else:
        g2 = doubled(r, find_defect(r))
        comps = embedded_decoding_components(g2)
        h = [hsys(c).value for c in comps]
        hv = min(v for v in h if v is not None)
        rep.lower_bounds.append((_half_ceil(hv, 4), "quarter-hsys-doubled"))
        if small_degree:
            rep.upper_bounds.append((hv // 2, "half-hsys-doubled"))
        else:
            rep.informational.append((hv // 2, "half-hsys-doubled"))
    if all(d % 2 == 0 for d in s.degrees) and s.genus > 0:
        fv = hsys(face_vertex(r)).value
        if fv is not None:
            if s.orientable and s.genus == 1:
                rep.lower_bounds.append((fv // 2, "face-width"))
            else:
                rep.informational.append((fv // 2, "face-width"))
    j = distance_upper_J(code)
    if j.weight is not None:
        value = j.vertices if small_degree and j.vertices is not None else j.weight
        rep.upper_bounds.append((value, "J-path-basis"))
    budget = resolve_budget(budget)
    if not bounds_only and budget > 0:
        try:
            res = exact_distance(code.stabilizers, budget)
            rep.exact = res.distance
            rep.witness = res.witness
            if res.distance is not None:
                rep.upper_bounds.append((res.distance, "witness-operator"))
        except BudgetExceeded as exc:
            rep.notes.append(f"exact distance skipped: {exc}")
    return rep
