"""Generators for code families and the number theory of cyclic codes."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd
from typing import Hashable

from . import f2
from .errors import InputError
from .pauli_f2 import Pauli, PauliList
from .rotation_system import RotationSystem, from_faces, from_rotations

__all__ = [
    "LatticeVectors",
    "CyclicSpec",
    "square_toric",
    "rotated_toric",
    "rotated_toric_layout",
    "rotated_toric_distance_formula",
    "cyclic_toric",
    "cyclic_toric_params",
    "stellated_high_genus",
    "rotated_surface",
    "cyclic4_consistent",
    "cyclic4_stabilizers",
    "cyclic4_k",
    "cyclic4_k_rank",
    "cyclic2_spec",
    "cyclic2_code",
    "membership_xz_4param",
    "membership_y_2param",
    "membership_2param_formula",
    "subgroup_order",
    "shift_partition_exists",
    "shift_partition",
]

Vec = tuple[int, int]


@dataclass(frozen=True)
class LatticeVectors:
    l1: Vec
    l2: Vec

    def __post_init__(self) -> None:
        if self.det == 0:
            raise InputError("lattice vectors are linearly dependent")

    @property
    def det(self) -> int:
        return self.l1[0] * self.l2[1] - self.l1[1] * self.l2[0]

    def reduce(self, p: Vec) -> Vec:
        """Canonical representative of ``p`` in the half-open fundamental cell."""
        d = self.det
        (a1, b1), (a2, b2) = self.l1, self.l2
        alpha = (p[0] * b2 - p[1] * a2) // d
        beta = (a1 * p[1] - b1 * p[0]) // d
        return (p[0] - alpha * a1 - beta * a2, p[1] - alpha * b1 - beta * b2)


_STEPS = {"N": (0, 1), "E": (1, 0), "S": (0, -1), "W": (-1, 0)}


def rotated_toric_layout(lat: LatticeVectors) -> list[Vec]:
    """Vertices of Z^2/lattice in BFS order from the origin."""
    start = lat.reduce((0, 0))
    order = [start]
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for dx, dy in _STEPS.values():
            w = lat.reduce((v[0] + dx, v[1] + dy))
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    if len(order) != abs(lat.det):
        raise AssertionError("lattice quotient has the wrong size")
    return order


def rotated_toric(l1: Vec, l2: Vec) -> RotationSystem:
    """Square lattice on the torus R^2 / <l1, l2>.

    Each vertex's smallest flag sits on its north edge, so the canonical
    degree-4 CAL puts X on the NE/SW sectors and every face reads XZXZ.
    """
    lat = LatticeVectors(tuple(l1), tuple(l2))
    order = rotated_toric_layout(lat)

    def step(v: Vec, d: str) -> Vec:
        dx, dy = _STEPS[d]
        return lat.reduce((v[0] + dx, v[1] + dy))

    edges: dict[Hashable, tuple[Hashable, Hashable]] = {}
    for v in order:
        edges[("N", v)] = (v, step(v, "N"))
        edges[("E", v)] = (v, step(v, "E"))
    faces = []
    for v in order:
        faces.append(
            [
                (("E", v), True),
                (("N", step(v, "E")), True),
                (("E", step(v, "N")), False),
                (("N", v), False),
            ]
        )
    anchors = {v: (("N", v), True) for v in order}
    r, _, _ = from_faces(edges, faces, order, anchors)
    return r


def square_toric(m: int, n: int) -> RotationSystem:
    """m x n square lattice on the torus (m columns, n rows)."""
    if m < 2 or n < 2:
        raise InputError("square_toric needs m, n >= 2")
    return rotated_toric((m, 0), (0, n))


def rotated_toric_distance_formula(l1: Vec, l2: Vec) -> int:
    """min over nonzero lattice vectors of the sup norm, in a safe box."""
    lat = LatticeVectors(tuple(l1), tuple(l2))
    if (abs(l1[0]) + abs(l1[1])) % 2 or (abs(l2[0]) + abs(l2[1])) % 2:
        raise InputError("distance formula needs both lattice vectors of even 1-norm")
    box = max(abs(c) for c in lat.l1) + max(abs(c) for c in lat.l2) + 2
    return _min_sup_norm(lat, box)


def _min_sup_norm(lat: LatticeVectors, box: int) -> int:
    best = None
    for m1 in range(-box, box + 1):
        for m2 in range(-box, box + 1):
            if m1 == 0 and m2 == 0:
                continue
            x = m1 * lat.l1[0] + m2 * lat.l2[0]
            y = m1 * lat.l1[1] + m2 * lat.l2[1]
            v = max(abs(x), abs(y))
            if best is None or v < best:
                best = v
    assert best is not None
    return best


def cyclic_toric_params(a: int, b: int) -> tuple[int, int, int]:
    """(N, K, D) predicted for the cyclic toric code with coprime b > a >= 1."""
    n = a * a + b * b
    if n % 2:
        return n, 1, a + b
    return n, 2, b


def cyclic_toric(a: int, b: int) -> tuple[RotationSystem, PauliList]:
    """Torus with L1=(a,b), L2=(-b,a) and its cyclic generator list.

    The generator list acts on qubits numbered along the (1,0) direction:
    qubit ``k`` is vertex ``k*(1,0)``. It holds the N shifts of
    Z X I^s X Z I^(N-s-4) with s = ceil(N t / b) - 2, t minimal positive with
    b | (t a + 1).
    """
    if not (b > a >= 1) or gcd(a, b) != 1:
        raise InputError("cyclic_toric needs coprime b > a >= 1")
    r = rotated_toric((a, b), (-b, a))
    n = a * a + b * b
    t = next(t for t in range(1, b + 1) if (t * a + 1) % b == 0)
    s = -(-n * t // b) - 2
    base = "ZX" + "I" * s + "XZ" + "I" * (n - s - 4)
    shifts = [base[n - k :] + base[: n - k] for k in range(n)]
    return r, PauliList.from_strs(shifts)


def line_permutation(l1: Vec, l2: Vec) -> list[int]:
    """Map BFS vertex index -> k where the vertex is k*(1,0) modulo the lattice."""
    lat = LatticeVectors(tuple(l1), tuple(l2))
    order = rotated_toric_layout(lat)
    pos = {v: i for i, v in enumerate(order)}
    perm = [0] * len(order)
    for k in range(len(order)):
        v = lat.reduce((k, 0))
        if v not in pos:
            raise AssertionError("bad reduction")
        perm[pos[v]] = k
    if sorted(perm) != list(range(len(order))):
        raise InputError("(1,0) does not generate the quotient group")
    return perm


def stellated_high_genus(s: int, t: int) -> RotationSystem:
    """s rhombi of t x t squares glued around one centre vertex.

    There are 2s spokes from the centre C, alternately ending at A (even
    spokes) and B (odd spokes). Rhombus k uses spokes k, k+1, k+s, k+s+1; the
    corner wedges at C between consecutive spokes j, j+1 belong to rhombus
    j mod s. C has degree 2s, A and B degree s, every other vertex degree 4.
    """
    if s < 3 or s % 2 == 0:
        raise InputError("stellated_high_genus needs odd s >= 3")
    if t < 1:
        raise InputError("stellated_high_genus needs t >= 1")
    ns = 2 * s

    def spoke_pt(j: int, p: int) -> Hashable:
        if p == 0:
            return "C"
        if p == t:
            return "A" if j % 2 == 0 else "B"
        return ("spoke", j, p)

    sides = []
    for k in range(s):
        j0, j1 = (k, k + s) if k % 2 == 0 else (k + s, k)
        sides.append((j0, (j0 + 1) % ns, j1, (j1 + 1) % ns))  # bottom, left, top, right

    def pt(k: int, u: int, v: int) -> Hashable:
        bottom, left, top, right = sides[k]
        if v == 0:
            return spoke_pt(bottom, u)
        if u == 0:
            return spoke_pt(left, v)
        if v == t:
            return spoke_pt(top, t - u)
        if u == t:
            return spoke_pt(right, t - v)
        return ("in", k, u, v)

    edges: dict[Hashable, tuple[Hashable, Hashable]] = {}

    def seg(key: Hashable, a: Hashable, b: Hashable, fwd: bool) -> tuple[Hashable, bool]:
        if key not in edges:
            edges[key] = (a, b) if fwd else (b, a)
        return (key, fwd)

    def hseg(k: int, u: int, v: int) -> tuple[Hashable, bool]:
        """Dart (u,v) -> (u+1,v) in rhombus k."""
        bottom, _, top, _ = sides[k]
        a, b = pt(k, u, v), pt(k, u + 1, v)
        if v == 0:
            return seg(("spoke", bottom, u), a, b, True)
        if v == t:
            return seg(("spoke", top, t - u - 1), a, b, False)
        return seg(("h", k, u, v), a, b, True)

    def vseg(k: int, u: int, v: int) -> tuple[Hashable, bool]:
        """Dart (u,v) -> (u,v+1) in rhombus k."""
        _, left, _, right = sides[k]
        a, b = pt(k, u, v), pt(k, u, v + 1)
        if u == 0:
            return seg(("spoke", left, v), a, b, True)
        if u == t:
            return seg(("spoke", right, t - v - 1), a, b, False)
        return seg(("v", k, u, v), a, b, True)

    def rev(d: tuple[Hashable, bool]) -> tuple[Hashable, bool]:
        return (d[0], not d[1])

    faces = []
    for k in range(s):
        for u in range(t):
            for v in range(t):
                faces.append([hseg(k, u, v), vseg(k, u + 1, v), rev(hseg(k, u, v + 1)), rev(vseg(k, u, v))])
    r, _, _ = from_faces(edges, faces, ["C", "A", "B"])
    return r


def rotated_surface(d: int) -> RotationSystem:
    """Planar d x d grid with boundary arcs making 2-gon faces.

    Arcs cover alternating boundary pairs in a pinwheel, so the four corners
    are the only odd (degree-3) vertices.
    """
    if d < 3 or d % 2 == 0:
        raise InputError("rotated_surface needs odd d >= 3")
    out: dict[Vec, list[tuple[float, int]]] = {(x, y): [] for y in range(d) for x in range(d)}
    ends: list[tuple[Vec, float, Vec, float]] = []
    for y in range(d):
        for x in range(d - 1):
            ends.append(((x, y), 0.0, (x + 1, y), 180.0))
    for x in range(d):
        for y in range(d - 1):
            ends.append(((x, y), 90.0, (x, y + 1), 270.0))
    top = d - 1
    for x in range(0, d - 2, 2):
        ends.append(((x, 0), 300.0, (x + 1, 0), 240.0))
    for y in range(0, d - 2, 2):
        ends.append(((top, y), 30.0, (top, y + 1), 330.0))
    for x in range(1, d - 1, 2):
        ends.append(((x, top), 60.0, (x + 1, top), 120.0))
    for y in range(1, d - 1, 2):
        ends.append(((0, y), 150.0, (0, y + 1), 210.0))
    # darts 2i and 2i+1 are the two ends of edge i before renumbering
    for i, (a, ang_a, b, ang_b) in enumerate(ends):
        out[a].append((ang_a, 2 * i))
        out[b].append((ang_b, 2 * i + 1))
    new_id: dict[int, int] = {}
    rotations = []
    for y in range(d):
        for x in range(d):
            cyc = [dart for _, dart in sorted(out[(x, y)])]
            for dart in cyc:
                new_id[dart] = len(new_id)
            rotations.append([new_id[dart] for dart in cyc])
    partner = [0] * len(new_id)
    for dart, i in new_id.items():
        partner[i] = new_id[dart ^ 1]
    return from_rotations(rotations, partner)


@dataclass(frozen=True)
class CyclicSpec:
    N: int
    p: int
    q: int
    r: int

    def __post_init__(self) -> None:
        if min(self.p, self.q, self.r) < 1:
            raise InputError("p, q, r must be positive")
        if len({self.r, self.q, self.p + self.r}) != 3:
            raise InputError("r, q and p+r must be distinct")
        if max(self.q, self.p + self.r) + 1 > self.N:
            raise InputError("N too small for the generator support")

    def generator(self) -> Pauli:
        n = self.N
        return Pauli(n, (1 << self.r) | (1 << (self.p + self.r)), 1 | (1 << self.q))


def _shift(p: Pauli, k: int) -> Pauli:
    n = p.n
    mask = (1 << n) - 1
    k %= n

    def rot(v: int) -> int:
        return ((v << k) | (v >> (n - k))) & mask

    return Pauli(n, rot(p.x), rot(p.z))


def cyclic4_stabilizers(spec: CyclicSpec) -> PauliList:
    g = spec.generator()
    return PauliList(spec.N, tuple(_shift(g, i) for i in range(spec.N)))


def cyclic4_consistent(spec: CyclicSpec) -> bool:
    """All shifts commute iff S_0, S_q, S_r, S_{p+r} pairwise commute."""
    g = spec.generator()
    picks = [_shift(g, k) for k in (0, spec.q, spec.r, spec.p + spec.r)]
    return all(a.commutes(b) for i, a in enumerate(picks) for b in picks[i + 1 :])


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def cyclic4_k(spec: CyclicSpec) -> int:
    n, p, q = spec.N, spec.p, spec.q
    return gcd(p, n) * gcd(q, n) // gcd(_lcm(p, q), n)


def cyclic4_k_rank(spec: CyclicSpec) -> int:
    return spec.N - cyclic4_stabilizers(spec).dim()


def cyclic2_spec(s: int, t: int) -> CyclicSpec:
    if s < 0 or t < 0:
        raise InputError("s, t must be nonnegative")
    return CyclicSpec(s + t + 4, s + 1, s + 3, 1)


def cyclic2_code(s: int, t: int) -> tuple[PauliList, int]:
    """Shifts of Z X I^s X Z I^t and their K."""
    spec = cyclic2_spec(s, t)
    return cyclic4_stabilizers(spec), cyclic4_k(spec)


def membership_xz_4param(spec: CyclicSpec) -> tuple[bool, bool]:
    """(Z^N in <S>, X^N in <S>) by the gcd criteria."""
    n, p, q = spec.N, spec.p, spec.q
    gp, gq = gcd(p, n), gcd(q, n)
    return (gp // gcd(q, gp)) % 2 == 0, (gq // gcd(p, gq)) % 2 == 0


def membership_2param_formula(s: int, t: int) -> dict[str, bool]:
    """Closed-form membership of Z^N, X^N, Y^N for the two-parameter family."""
    return {
        "Z": s % 4 == 3 and t % 4 == 1,
        "X": s % 4 == 1 and t % 4 == 3,
        "Y": s % 2 == 0 and t % 2 == 0,
    }


def membership_y_2param(s: int, t: int) -> bool:
    return membership_2param_formula(s, t)["Y"]


def subgroup_order(a: int, b: int, m: int) -> int:
    """Order of {k1 a + k2 b mod m}."""
    return m * gcd(_lcm(a, b), m) // (gcd(a, m) * gcd(b, m))


def shift_partition_exists(a: int, m: int) -> bool:
    """Whether Z_m splits as M1 u (M1 + a)."""
    return (m // gcd(a, m)) % 2 == 0


def shift_partition(a: int, m: int) -> tuple[list[int], list[int]] | None:
    if not shift_partition_exists(a, m):
        return None
    m1: list[int] = []
    for x in range(gcd(a, m)):
        cur, k = x, 0
        while True:
            if k % 2 == 0:
                m1.append(cur)
            cur = (cur + a) % m
            k += 1
            if cur == x:
                break
    m1.sort()
    m2 = sorted((v + a) % m for v in m1)
    return m1, m2
