"""Medial, face-vertex, decoding and doubled graphs.

Product flag sets H x {+1, -1} are numbered ``2h`` for (h, +1) and ``2h+1``
for (h, -1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .checkerboard import (
    Coloring,
    edge_endpoints,
    flag_partition,
    is_checkerboardable,
    is_checkerboardable_with_defect,
)
from .errors import AlreadyCheckerboardable, InputError
from .rotation_system import RotationSystem, validate

__all__ = [
    "DecodingGraph",
    "medial",
    "is_medial",
    "face_vertex",
    "decoding_graph",
    "embedded_decoding_components",
    "doubled",
    "graph_to_dot",
    "decoding_graph_to_dot",
]

Node = tuple  # ("u", f) | ("w", v, 0) | ("w", v, +1/-1)


def _pair(h: int, j: int) -> int:
    return 2 * h + (0 if j == 1 else 1)


def medial(r: RotationSystem) -> RotationSystem:
    n = r.flag_count
    lam = [0] * (2 * n)
    rho = [0] * (2 * n)
    tau = [0] * (2 * n)
    for h in range(n):
        for j in (1, -1):
            i = _pair(h, j)
            tau[i] = _pair(h, -j)
            lam[i] = _pair(r.rho[h], j)
            rho[i] = _pair(r.lam[h] if j == -1 else r.tau[h], j)
    return RotationSystem(lam, rho, tau)


def face_vertex(r: RotationSystem) -> RotationSystem:
    n = r.flag_count
    lam = [0] * (2 * n)
    rho = [0] * (2 * n)
    tau = [0] * (2 * n)
    for h in range(n):
        for j in (1, -1):
            i = _pair(h, j)
            lam[i] = _pair(h, -j)
            rho[i] = _pair(r.tau[h] if j == -1 else r.lam[h], j)
            tau[i] = _pair(r.rho[h], j)
    return RotationSystem(lam, rho, tau)


def is_medial(r: RotationSystem) -> tuple[bool, RotationSystem | None]:
    """Whether ``r`` is a medial graph; when it is, also a preimage."""
    s = r.summary
    if any(d != 4 for d in s.degrees):
        return False, None
    ok, col = is_checkerboardable(r)
    if not ok or col is None:
        return False, None
    hw, hb = flag_partition(r, col)
    side = hb if 0 in hb else hw
    idx = {h: i for i, h in enumerate(side)}
    lam = [idx[r.tau[r.rho[r.tau[h]]]] for h in side]
    rho = [idx[r.lam[h]] for h in side]
    tau = [idx[r.rho[h]] for h in side]
    pre = RotationSystem(lam, rho, tau)
    if not validate(pre).ok:
        return False, None
    m = medial(pre).summary
    if (m.V, m.E, m.F) != (s.V, s.E, s.F):
        return False, None
    return True, pre


@dataclass(frozen=True)
class DecodingGraph:
    """Bipartite graph: face nodes vs vertex-side nodes, one edge per sector.

    ``edges[k]`` is ``(face_node, vertex_node)`` for sector k.
    """

    nodes: list[Node]
    edges: list[tuple[Node, Node]]

    def node_index(self) -> dict[Node, int]:
        return {v: i for i, v in enumerate(self.nodes)}

    def components(self) -> list[list[Node]]:
        idx = self.node_index()
        parent = list(range(len(self.nodes)))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a, b in self.edges:
            ra, rb = find(idx[a]), find(idx[b])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, list[Node]] = {}
        for i, v in enumerate(self.nodes):
            groups.setdefault(find(i), []).append(v)
        return [groups[k] for k in sorted(groups)]


def sector_positions(r: RotationSystem) -> tuple[list[int], list[int]]:
    """Per sector: its vertex and its step index k from the vertex's minimal flag.

    Step k is the sector of (tau rho)^k applied to the minimal flag.
    """
    s = r.summary
    vert = [0] * len(s.sectors)
    pos = [0] * len(s.sectors)
    for v, orb in enumerate(s.vertices):
        h = orb[0]
        for k in range(s.degrees[v]):
            sec = s.sector_of[h]
            vert[sec] = v
            pos[sec] = k
            h = r.tau[r.rho[h]]
    return vert, pos


def decoding_graph(r: RotationSystem) -> DecodingGraph:
    s = r.summary
    if min(s.degrees) < 3:
        raise InputError("decoding graphs need every vertex of degree >= 3")
    vert, pos = sector_positions(r)
    nodes: list[Node] = [("u", f) for f in range(s.F)]
    for v, d in enumerate(s.degrees):
        if d % 2:
            nodes.append(("w", v, 0))
        else:
            nodes.append(("w", v, 1))
            nodes.append(("w", v, -1))
    edges = []
    for sec, orb in enumerate(s.sectors):
        v = vert[sec]
        if s.degrees[v] % 2:
            w: Node = ("w", v, 0)
        else:
            w = ("w", v, 1 if pos[sec] % 2 == 0 else -1)
        edges.append((("u", s.face_of[orb[0]]), w))
    return DecodingGraph(nodes, edges)


def _component(r: RotationSystem, flags: Sequence[int]) -> RotationSystem:
    idx = {}
    for h in flags:
        for j in (1, -1):
            idx[(h, j)] = len(idx)
    n = len(idx)
    lam = [0] * n
    rho = [0] * n
    tau = [0] * n
    for (h, j), i in idx.items():
        lam[i] = idx[(h, -j)]
        if j == -1:
            rho[i] = idx[(r.tau[r.rho[r.tau[h]]], j)]
        else:
            rho[i] = idx[(r.lam[h], j)]
        tau[i] = idx[(r.rho[h], j)]
    return RotationSystem(lam, rho, tau)


def embedded_decoding_components(
    r: RotationSystem, coloring: Coloring | None = None
) -> tuple[RotationSystem, RotationSystem]:
    """The two embedded components (white-face part, black-face part)."""
    if coloring is None:
        ok, coloring = is_checkerboardable(r)
        if not ok or coloring is None:
            raise InputError("decoding components need a checkerboardable graph")
    hw, hb = flag_partition(r, coloring)
    return _component(r, hw), _component(r, hb)


def doubled(r: RotationSystem, delta: int) -> RotationSystem:
    """Two-sheeted system branched along the defect ``delta``."""
    ok, _ = is_checkerboardable(r)
    if ok:
        raise AlreadyCheckerboardable("graph is already checkerboardable")
    if not is_checkerboardable_with_defect(r, delta):
        raise InputError("delta is not a valid defect")
    s = r.summary
    n = r.flag_count
    lam = [0] * (2 * n)
    rho = [0] * (2 * n)
    tau = [0] * (2 * n)
    for h in range(n):
        flip = (delta >> s.edge_of[h]) & 1
        for j in (1, -1):
            i = _pair(h, j)
            lam[i] = _pair(r.lam[h], j)
            rho[i] = _pair(r.rho[h], j)
            tau[i] = _pair(r.tau[h], -j if flip else j)
    out = RotationSystem(lam, rho, tau)
    rep = validate(out)
    if not rep.ok:
        raise InputError(f"doubled system invalid: {rep}")
    return out


def graph_to_dot(r: RotationSystem, name: str = "G") -> str:
    s = r.summary
    lines = [f"graph {name} {{"]
    for v in range(s.V):
        lines.append(f'  v{v} [label="v{v}"];')
    for e, (u, v) in enumerate(edge_endpoints(r)):
        lines.append(f'  v{u} -- v{v} [label="e{e}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _node_name(node: Node) -> tuple[str, str]:
    if node[0] == "u":
        return f"u{node[1]}", f"u_f{node[1]}"
    v, side = node[1], node[2]
    if side == 0:
        return f"w{v}", f"w_v{v}"
    tag = "p" if side == 1 else "m"
    return f"w{v}{tag}", f"w_v{v}^{'+' if side == 1 else '-'}"


def decoding_graph_to_dot(g: DecodingGraph, name: str = "Gdec") -> str:
    lines = [f"graph {name} {{"]
    for node in g.nodes:
        ident, label = _node_name(node)
        lines.append(f'  {ident} [label="{label}"];')
    for k, (a, b) in enumerate(g.edges):
        lines.append(f'  {_node_name(a)[0]} -- {_node_name(b)[0]} [label="s{k}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
