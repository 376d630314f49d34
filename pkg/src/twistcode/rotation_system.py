"""General and oriented rotation systems.

Flags are dense ints ``0..|H|-1``. Every orbit (vertex, edge, face, half-edge,
sector) is identified by its minimal flag, and orbit lists are sorted by that
flag so indices are canonical.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Hashable, Mapping, Sequence

from .errors import InputError

__all__ = [
    "RotationSystem",
    "OrientedRotationSystem",
    "GraphSummary",
    "ValidationReport",
    "validate",
    "summarize",
    "dual",
    "from_oriented",
    "to_oriented",
    "from_faces",
    "from_rotations",
    "parse_rotation_system",
    "serialize_rotation_system",
    "orbits",
    "compose",
]


def compose(p: Sequence[int], q: Sequence[int]) -> list[int]:
    """(p o q)[h] = p[q[h]]."""
    return [p[x] for x in q]


def orbits(gens: Sequence[Sequence[int]], n: int) -> tuple[list[list[int]], list[int]]:
    """Orbits of the group generated by ``gens`` plus an orbit-index map."""
    idx = [-1] * n
    out: list[list[int]] = []
    for start in range(n):
        if idx[start] >= 0:
            continue
        k = len(out)
        idx[start] = k
        orb = [start]
        stack = [start]
        while stack:
            h = stack.pop()
            for g in gens:
                t = g[h]
                if idx[t] < 0:
                    idx[t] = k
                    orb.append(t)
                    stack.append(t)
        orb.sort()
        out.append(orb)
    return out, idx


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.errors

    def __str__(self) -> str:
        return "valid" if self.ok else "; ".join(self.errors)


@dataclass(frozen=True)
class GraphSummary:
    vertices: list[list[int]]
    edges: list[list[int]]
    faces: list[list[int]]
    half_edges: list[list[int]]
    sectors: list[list[int]]
    vertex_of: list[int]
    edge_of: list[int]
    face_of: list[int]
    half_edge_of: list[int]
    sector_of: list[int]
    degrees: list[int]
    M: int
    chi: int
    orientable: bool
    genus: int
    coloring: list[int] | None  # orientation classes 0/1 when orientable

    @property
    def V(self) -> int:
        return len(self.vertices)

    @property
    def E(self) -> int:
        return len(self.edges)

    @property
    def F(self) -> int:
        return len(self.faces)

    @property
    def odd_vertices(self) -> list[int]:
        return [v for v, d in enumerate(self.degrees) if d % 2]

    def as_dict(self) -> dict[str, Any]:
        return {
            "V": self.V,
            "E": self.E,
            "F": self.F,
            "chi": self.chi,
            "orientable": self.orientable,
            "genus": self.genus,
            "M": self.M,
            "degrees": self.degrees,
        }


@dataclass(frozen=True, eq=False)
class RotationSystem:
    lam: tuple[int, ...]
    rho: tuple[int, ...]
    tau: tuple[int, ...]
    cals: Mapping[str, list[str]] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", tuple(self.lam))
        object.__setattr__(self, "rho", tuple(self.rho))
        object.__setattr__(self, "tau", tuple(self.tau))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RotationSystem):
            return NotImplemented
        return (self.lam, self.rho, self.tau) == (other.lam, other.rho, other.tau)

    def __hash__(self) -> int:
        return hash((self.lam, self.rho, self.tau))

    @property
    def flag_count(self) -> int:
        return len(self.lam)

    @cached_property
    def summary(self) -> GraphSummary:
        return summarize(self)

    def checked(self) -> RotationSystem:
        rep = validate(self)
        if not rep.ok:
            raise InputError(f"invalid rotation system: {rep}")
        return self

    def with_cals(self, cals: Mapping[str, list[str]] | None) -> RotationSystem:
        return RotationSystem(self.lam, self.rho, self.tau, cals)


@dataclass(frozen=True)
class OrientedRotationSystem:
    nu: tuple[int, ...]
    eps: tuple[int, ...]

    @property
    def half_edge_count(self) -> int:
        return len(self.nu)


def _perm_problems(name: str, p: Sequence[int], n: int) -> list[str]:
    if len(p) != n:
        return [f"{name}: length {len(p)} != flag_count {n}"]
    if sorted(p) != list(range(n)):
        return [f"{name}: not-permutation"]
    errs = []
    if any(p[h] == h for h in range(n)):
        errs.append(f"{name}: fixed-point")
    if any(p[p[h]] != h for h in range(n)):
        errs.append(f"{name}: non-involution")
    return errs


def validate(r: RotationSystem) -> ValidationReport:
    n = r.flag_count
    errs: list[str] = []
    if n == 0:
        return ValidationReport(("empty flag set",))
    for name, p in (("lambda", r.lam), ("rho", r.rho), ("tau", r.tau)):
        errs += _perm_problems(name, p, n)
    if any("length" in e or "not-permutation" in e for e in errs):
        return ValidationReport(tuple(errs))
    if any(r.lam[r.tau[h]] != r.tau[r.lam[h]] for h in range(n)):
        errs.append("lambda and tau do not commute")
    if n % 4:
        errs.append(f"flag_count {n} not divisible by 4")
    orbs, _ = orbits((r.lam, r.rho, r.tau), n)
    if len(orbs) > 1:
        errs.append(f"not transitive ({len(orbs)} orbits)")
    return ValidationReport(tuple(errs))


def _two_color(gens: Sequence[Sequence[int]], n: int) -> list[int] | None:
    """Color flags so every generator flips the color; None if impossible."""
    color = [-1] * n
    for start in range(n):
        if color[start] >= 0:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            h = queue.popleft()
            for g in gens:
                t = g[h]
                if color[t] < 0:
                    color[t] = color[h] ^ 1
                    queue.append(t)
                elif color[t] == color[h]:
                    return None
    return color


def summarize(r: RotationSystem) -> GraphSummary:
    n = r.flag_count
    verts, vof = orbits((r.rho, r.tau), n)
    edges, eof = orbits((r.lam, r.tau), n)
    faces, fof = orbits((r.rho, r.lam), n)
    hes, hof = orbits((r.tau,), n)
    secs, sof = orbits((r.rho,), n)
    degrees = [len(v) // 2 for v in verts]
    chi = len(verts) - len(edges) + len(faces)
    coloring = _two_color((r.lam, r.rho, r.tau), n)
    orientable = coloring is not None
    genus = (2 - chi) // 2 if orientable else 2 - chi
    return GraphSummary(
        vertices=verts,
        edges=edges,
        faces=faces,
        half_edges=hes,
        sectors=secs,
        vertex_of=vof,
        edge_of=eof,
        face_of=fof,
        half_edge_of=hof,
        sector_of=sof,
        degrees=degrees,
        M=sum(d % 2 for d in degrees),
        chi=chi,
        orientable=orientable,
        genus=genus,
        coloring=coloring,
    )


def dual(r: RotationSystem) -> RotationSystem:
    return RotationSystem(r.tau, r.rho, r.lam)


def from_oriented(ro: OrientedRotationSystem) -> RotationSystem:
    """Flag (h, +1) is ``2h`` and (h, -1) is ``2h+1``."""
    nu, eps = ro.nu, ro.eps
    m = len(nu)
    if sorted(nu) != list(range(m)):
        raise InputError("nu is not a permutation")
    if sorted(eps) != list(range(m)) or any(eps[h] == h or eps[eps[h]] != h for h in range(m)):
        raise InputError("epsilon must be a fixed-point-free involution")
    if len(orbits((nu, eps), m)[0]) != 1:
        raise InputError("oriented system not transitive")
    nu_inv = [0] * m
    for h, t in enumerate(nu):
        nu_inv[t] = h
    lam = [0] * (2 * m)
    rho = [0] * (2 * m)
    tau = [0] * (2 * m)
    for h in range(m):
        p, q = 2 * h, 2 * h + 1
        lam[p], lam[q] = 2 * eps[h] + 1, 2 * eps[h]
        rho[p], rho[q] = 2 * nu[h] + 1, 2 * nu_inv[h]
        tau[p], tau[q] = q, p
    return RotationSystem(lam, rho, tau)


def to_oriented(r: RotationSystem) -> tuple[OrientedRotationSystem, list[int]]:
    """Recover (nu, eps) on half-edges of an orientable system.

    Returns the oriented system and, per half-edge index, its representative
    flag (the one in the color class of flag 0).
    """
    s = r.summary
    if not s.orientable or s.coloring is None:
        raise InputError("rotation system is not orientable")
    col = s.coloring
    reps = [orb[0] if col[orb[0]] == col[0] else orb[1] for orb in s.half_edges]
    hof = s.half_edge_of
    nu = [hof[r.rho[r.tau[h]]] for h in reps]
    eps = [hof[r.lam[r.tau[h]]] for h in reps]
    return OrientedRotationSystem(tuple(nu), tuple(eps)), reps


def from_rotations(darts_at: Sequence[Sequence[int]], partner: Sequence[int]) -> RotationSystem:
    """Oriented system from cyclic dart orders per vertex and the dart pairing."""
    m = len(partner)
    nu = [-1] * m
    for cyc in darts_at:
        for i, d in enumerate(cyc):
            nu[d] = cyc[(i + 1) % len(cyc)]
    if -1 in nu:
        raise InputError("some dart is missing from the vertex rotations")
    return from_oriented(OrientedRotationSystem(tuple(nu), tuple(partner)))


def from_faces(
    edges: Mapping[Hashable, tuple[Hashable, Hashable]],
    faces: Sequence[Sequence[tuple[Hashable, bool]]],
    vertex_order: Sequence[Hashable] | None = None,
    anchors: Mapping[Hashable, tuple[Hashable, bool]] | None = None,
) -> tuple[RotationSystem, list[Hashable], dict[tuple[Hashable, bool], int]]:
    """Oriented system from consistently oriented face boundaries.

    ``edges`` maps an edge key to its (tail, head); a face is a cyclic list of
    darts ``(edge_key, forward)``. Each dart must occur in exactly one face.
    Darts are numbered grouped by tail vertex following ``vertex_order``, so
    each vertex's flags form a contiguous block; ``anchors`` picks the dart
    that gets the smallest number at a vertex.

    Returns the system, the vertex order used, and the dart numbering.
    """
    succ: dict[tuple[Hashable, bool], tuple[Hashable, bool]] = {}
    for face in faces:
        for i, d in enumerate(face):
            if d in succ:
                raise InputError(f"dart {d!r} appears twice; faces are not coherently oriented")
            succ[d] = face[(i + 1) % len(face)]
    for key in edges:
        for fwd in (True, False):
            if (key, fwd) not in succ:
                raise InputError(f"dart {(key, fwd)!r} not on any face")

    def tail(d: tuple[Hashable, bool]) -> Hashable:
        u, v = edges[d[0]]
        return u if d[1] else v

    by_vertex: dict[Hashable, list[tuple[Hashable, bool]]] = {}
    order: list[Hashable] = list(vertex_order) if vertex_order is not None else []
    seen = set(order)
    for key in edges:
        for fwd in (True, False):
            t = tail((key, fwd))
            by_vertex.setdefault(t, []).append((key, fwd))
            if t not in seen:
                seen.add(t)
                order.append(t)
    # nu = phi o eps; walk each vertex's darts in nu-order so numbering is cyclic
    dart_id: dict[tuple[Hashable, bool], int] = {}
    for v in order:
        ds = by_vertex.get(v, [])
        if not ds:
            continue
        start = anchors[v] if anchors is not None and v in anchors else ds[0]
        if tail(start) != v:
            raise InputError(f"anchor dart for {v!r} does not leave it")
        d = start
        while True:
            dart_id[d] = len(dart_id)
            d = succ[(d[0], not d[1])]
            if tail(d) != v:
                raise InputError("face boundary is not a closed walk")
            if d == start:
                break
        if any(x not in dart_id for x in ds):
            raise InputError(f"darts at vertex {v!r} do not form one rotation cycle")
    m = len(dart_id)
    nu = [0] * m
    eps = [0] * m
    for d, i in dart_id.items():
        eps[i] = dart_id[(d[0], not d[1])]
        nu[i] = dart_id[succ[(d[0], not d[1])]]
    return from_oriented(OrientedRotationSystem(tuple(nu), tuple(eps))), order, dart_id


def _check_int_list(obj: Any, name: str) -> list[int]:
    if not isinstance(obj, list) or not all(isinstance(v, int) and not isinstance(v, bool) and v >= 0 for v in obj):
        raise InputError(f"'{name}' must be an array of nonnegative integers")
    return obj


def parse_rotation_system(text: str) -> RotationSystem:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"not valid JSON: {exc}") from exc
    return rotation_system_from_dict(data)


def rotation_system_from_dict(data: Any) -> RotationSystem:
    if not isinstance(data, dict):
        raise InputError("rotation system must be a JSON object")
    for key in ("flag_count", "lambda", "rho", "tau"):
        if key not in data:
            raise InputError(f"missing key '{key}'")
    n = data["flag_count"]
    if not isinstance(n, int) or isinstance(n, bool) or n <= 0:
        raise InputError("'flag_count' must be a positive integer")
    perms = []
    for key in ("lambda", "rho", "tau"):
        p = _check_int_list(data[key], key)
        if len(p) != n:
            raise InputError(f"'{key}' has length {len(p)}, expected {n}")
        perms.append(p)
    cals = data.get("cals")
    if cals is not None:
        if not isinstance(cals, dict) or not all(
            isinstance(k, str) and isinstance(v, list) and all(isinstance(s, str) for s in v)
            for k, v in cals.items()
        ):
            raise InputError("'cals' must map vertex flags to lists of Pauli strings")
    r = RotationSystem(perms[0], perms[1], perms[2], cals)
    rep = validate(r)
    if not rep.ok:
        raise InputError(f"invalid rotation system: {rep}")
    return r


def rotation_system_to_dict(r: RotationSystem) -> dict[str, Any]:
    out: dict[str, Any] = {
        "flag_count": r.flag_count,
        "lambda": list(r.lam),
        "rho": list(r.rho),
        "tau": list(r.tau),
    }
    if r.cals is not None:
        out["cals"] = {k: list(v) for k, v in r.cals.items()}
    return out


def serialize_rotation_system(r: RotationSystem) -> str:
    return json.dumps(rotation_system_to_dict(r))
