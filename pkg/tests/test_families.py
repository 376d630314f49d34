from __future__ import annotations

import itertools
import random
from math import gcd

import pytest

from twistcode import f2
from twistcode import families as fam
from twistcode.checkerboard import is_checkerboardable
from twistcode.errors import InputError
from twistcode.logical_analysis import exact_distance
from twistcode.pauli_f2 import Pauli, PauliList
from twistcode.surface_code import build_code, code_params_nk, k_rank


def nkd(stabs: PauliList) -> tuple[int, int, int | None]:
    return stabs.n, stabs.n - stabs.dim(), exact_distance(stabs).distance


def code_nkd(r) -> tuple[int, int, int | None]:
    return nkd(build_code(r).stabilizers)


def same_rowspace(a: PauliList, b: PauliList) -> bool:
    ra, rb = a.sym_rows(), b.sym_rows()
    return f2.rank(ra) == f2.rank(rb) == f2.rank(ra + rb)


# ------------------------------------------------------------ square toric


@pytest.mark.parametrize("m,n", [(m, n) for m in range(2, 6) for n in range(2, 6) if m * n <= 20])
def test_square_toric(m: int, n: int) -> None:
    r = fam.square_toric(m, n)
    s = r.summary
    assert (s.V, s.E, s.F, s.genus, s.orientable) == (m * n, 2 * m * n, m * n, 1, True)
    assert set(s.degrees) == {4}
    code = build_code(r)
    k = 2 if m % 2 == 0 and n % 2 == 0 else 1
    assert code_params_nk(code) == (m * n, k)
    assert is_checkerboardable(r)[0] == (k == 2)
    for st in code.stabilizers:
        text = str(st)
        assert text.count("X") == 2 and text.count("Z") == 2


def test_square_toric_examples() -> None:
    assert code_nkd(fam.square_toric(2, 2)) == (4, 2, 2)
    assert code_nkd(fam.square_toric(3, 3)) == (9, 1, 3)
    n, k, d = code_nkd(fam.square_toric(4, 4))
    assert (n, k, d) == (16, 2, 4) and n * 2 == k * d * d
    with pytest.raises(InputError):
        fam.square_toric(1, 3)


# ----------------------------------------------------------- rotated toric


def test_rotated_toric_examples() -> None:
    a = build_code(fam.rotated_toric((2, 0), (0, 2)))
    b = build_code(fam.square_toric(2, 2))
    assert code_params_nk(a) == code_params_nk(b) == (4, 2)
    assert code_params_nk(build_code(fam.rotated_toric((1, 2), (-2, 1)))) == (5, 1)
    assert code_params_nk(build_code(fam.rotated_toric((2, 2), (-2, 2)))) == (8, 2)
    with pytest.raises(InputError):
        fam.rotated_toric((1, 2), (2, 4))


def random_lattices(count: int, seed: int, max_det: int = 20) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        l1 = (rng.randint(-4, 4), rng.randint(-4, 4))
        l2 = (rng.randint(-4, 4), rng.randint(-4, 4))
        det = abs(l1[0] * l2[1] - l1[1] * l2[0])
        if 4 <= det <= max_det:
            out.append((l1, l2))
    return out


def test_rotated_toric_k_rule() -> None:
    for l1, l2 in random_lattices(60, 8):
        r = fam.rotated_toric(l1, l2)
        det = abs(l1[0] * l2[1] - l1[1] * l2[0])
        even = (abs(l1[0]) + abs(l1[1])) % 2 == 0 and (abs(l2[0]) + abs(l2[1])) % 2 == 0
        assert r.summary.V == det
        assert code_params_nk(build_code(r)) == (det, 2 if even else 1)


def test_distance_formula() -> None:
    assert fam.rotated_toric_distance_formula((2, 0), (0, 2)) == 2
    assert fam.rotated_toric_distance_formula((2, 2), (-2, 2)) == 2
    assert fam.rotated_toric_distance_formula((1, 3), (-3, 1)) == 3
    with pytest.raises(InputError):
        fam.rotated_toric_distance_formula((1, 2), (-2, 1))
    seen = 0
    for l1, l2 in random_lattices(200, 9):
        if (abs(l1[0]) + abs(l1[1])) % 2 or (abs(l2[0]) + abs(l2[1])) % 2:
            continue
        d = fam.rotated_toric_distance_formula(l1, l2)
        lat = fam.LatticeVectors(l1, l2)
        box = max(abs(c) for c in l1) + max(abs(c) for c in l2) + 2
        assert fam._min_sup_norm(lat, 2 * box) == d
        assert exact_distance(build_code(fam.rotated_toric(l1, l2)).stabilizers).distance == d
        seen += 1
    assert seen >= 10


# ------------------------------------------------------------ cyclic toric


COPRIME = [(a, b) for b in range(2, 6) for a in range(1, b) if gcd(a, b) == 1 and a * a + b * b <= 26]


@pytest.mark.parametrize("a,b", COPRIME)
def test_cyclic_toric_theorem(a: int, b: int) -> None:
    r, shifts = fam.cyclic_toric(a, b)
    n, k, d = fam.cyclic_toric_params(a, b)
    assert (n, k, d) == ((n, 1, a + b) if n % 2 else (n, 2, b))
    assert code_nkd(r) == (n, k, d)
    assert nkd(shifts) == (n, k, d)
    code = build_code(r)
    perm = fam.line_permutation((a, b), (-b, a))
    relabeled = PauliList(n, tuple(p.permute(perm) for p in code.stabilizers))
    assert same_rowspace(relabeled, shifts)


def test_cyclic_toric_examples() -> None:
    assert fam.cyclic_toric(1, 2)[1].strings()[0] == "ZXIXZ"
    assert fam.cyclic_toric_params(1, 3) == (10, 2, 3)
    assert fam.cyclic_toric_params(2, 3) == (13, 1, 5)
    for bad in [(2, 4), (3, 2), (0, 1)]:
        with pytest.raises(InputError):
            fam.cyclic_toric(*bad)


# --------------------------------------------------------------- stellated


@pytest.mark.parametrize("s,t", [(s, t) for s in (3, 5, 7) for t in (1, 2, 3)])
def test_stellated_formulas(s: int, t: int) -> None:
    r = fam.stellated_high_genus(s, t)
    g = r.summary
    assert g.orientable and g.genus == (s - 1) // 2
    degs = sorted(g.degrees)
    assert degs.count(2 * s) == 1 and degs.count(s) == 2
    assert all(d == 4 for d in degs if d not in (s, 2 * s))
    assert code_params_nk(build_code(r)) == (s * t * t + s - 2, s - 1)


def test_stellated_examples() -> None:
    assert code_nkd(fam.stellated_high_genus(3, 2)) == (13, 2, 4)
    assert code_nkd(fam.stellated_high_genus(5, 2)) == (23, 4, 4)
    assert code_params_nk(build_code(fam.stellated_high_genus(3, 1))) == (4, 2)
    for s, t in [(3, 1), (5, 1), (7, 1), (3, 2)]:
        assert code_nkd(fam.stellated_high_genus(s, t))[2] <= 2 * t
    with pytest.raises(InputError):
        fam.stellated_high_genus(4, 2)


# ---------------------------------------------------------- rotated surface


def test_rotated_surface() -> None:
    for d in (3, 5):
        r = fam.rotated_surface(d)
        s = r.summary
        assert s.genus == 0 and s.V == d * d and s.M == 4 and min(s.degrees) >= 3
        assert len(s.odd_vertices) == 4
        assert code_nkd(r) == (d * d, 1, d)
    assert code_params_nk(build_code(fam.rotated_surface(7))) == (49, 1)
    with pytest.raises(InputError):
        fam.rotated_surface(4)


# --------------------------------------------------------- cyclic families


def all_shifts_commute(spec: fam.CyclicSpec) -> bool:
    st = fam.cyclic4_stabilizers(spec)
    return all(a.commutes(b) for a, b in itertools.combinations(st, 2))


def random_specs(count: int, seed: int, consistent: bool = True) -> list[fam.CyclicSpec]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(4, 24)
        p, q, r = rng.randint(1, n), rng.randint(1, n), rng.randint(1, n)
        try:
            spec = fam.CyclicSpec(n, p, q, r)
        except InputError:
            continue
        if not consistent or fam.cyclic4_consistent(spec):
            out.append(spec)
    return out


def test_cyclic4_consistent_vs_brute() -> None:
    assert fam.cyclic4_consistent(fam.CyclicSpec(8, 1, 2, 3)) == all_shifts_commute(fam.CyclicSpec(8, 1, 2, 3))
    for spec in random_specs(300, 1, consistent=False):
        assert fam.cyclic4_consistent(spec) == all_shifts_commute(spec)
    for s in range(6):
        for t in range(6):
            assert fam.cyclic4_consistent(fam.cyclic2_spec(s, t))


def test_cyclic_spec_errors() -> None:
    for args in [(8, 1, 2, 2), (8, 0, 2, 3), (4, 1, 5, 1), (8, 1, 3, 2)]:
        with pytest.raises(InputError):
            fam.CyclicSpec(*args)


def test_cyclic4_k_vs_rank() -> None:
    specs = random_specs(500, 2)
    assert len({(s.p, s.q) for s in specs}) > 50
    for spec in specs:
        assert fam.cyclic4_k(spec) == fam.cyclic4_k_rank(spec)


def test_cyclic2_examples() -> None:
    assert fam.cyclic2_code(1, 1)[1] == 2 and fam.cyclic2_code(1, 1)[0].n == 6
    assert fam.cyclic2_code(0, 1)[1] == 1 and fam.cyclic2_code(0, 1)[0].n == 5
    assert fam.cyclic2_code(2, 4)[1] == 1
    assert fam.cyclic4_k(fam.cyclic2_spec(0, 0)) == 1
    assert nkd(fam.cyclic2_code(0, 0)[0]) == (4, 1, 2)
    assert nkd(fam.cyclic2_code(0, 1)[0]) == (5, 1, 3)
    assert nkd(fam.cyclic2_code(2, 4)[0]) == (10, 1, 2)
    for s in range(10):
        for t in range(10):
            st, k = fam.cyclic2_code(s, t)
            assert k == st.n - st.dim() == (2 if s % 2 and t % 2 else 1)


def test_cyclic2_interchange() -> None:
    for s in range(7):
        for t in range(s + 1, 7):
            assert nkd(fam.cyclic2_code(s, t)[0]) == nkd(fam.cyclic2_code(t, s)[0])


def test_cyclic2_diagonals() -> None:
    for s in range(8):
        assert nkd(fam.cyclic2_code(s, s)[0])[2] == 2
        assert nkd(fam.cyclic2_code(s, s + 1)[0])[2] == 3
        assert nkd(fam.cyclic2_code(s, s + 2)[0])[2] == 2


def solve_all(stabs: PauliList, letter: str) -> bool:
    return f2.in_span(Pauli.from_str(letter * stabs.n).sym, stabs.sym_rows())


def test_membership_4param_vs_solve() -> None:
    for spec in random_specs(300, 3):
        st = fam.cyclic4_stabilizers(spec)
        assert fam.membership_xz_4param(spec) == (solve_all(st, "Z"), solve_all(st, "X"))


def test_membership_2param_vs_solve() -> None:
    for s in range(10):
        for t in range(10):
            st, _ = fam.cyclic2_code(s, t)
            formula = fam.membership_2param_formula(s, t)
            assert formula == {c: solve_all(st, c) for c in "XYZ"}
            assert fam.membership_xz_4param(fam.cyclic2_spec(s, t)) == (formula["Z"], formula["X"])
            assert fam.membership_y_2param(s, t) == formula["Y"]
    assert fam.membership_2param_formula(3, 1)["Z"]
    assert fam.membership_2param_formula(1, 3)["X"]
    f00 = fam.membership_2param_formula(0, 0)
    assert not f00["X"] and not f00["Z"] and f00["Y"]


# ----------------------------------------------------------- number theory


def test_subgroup_order_brute() -> None:
    assert fam.subgroup_order(7, 7, 7) == 1
    assert fam.subgroup_order(1, 1, 9) == 9
    for m in range(1, 13):
        for a in range(1, 13):
            for b in range(1, 13):
                brute = {(k1 * a + k2 * b) % m for k1 in range(m) for k2 in range(m)}
                assert fam.subgroup_order(a, b, m) == len(brute)


def test_shift_partition_brute() -> None:
    assert fam.shift_partition(1, 2) == ([0], [1])
    assert fam.shift_partition(1, 3) is None
    for m in range(1, 13):
        for a in range(1, 13):
            exists = False
            for mask in range(1 << m):
                m1 = {i for i in range(m) if mask >> i & 1}
                m2 = {(i + a) % m for i in m1}
                if not (m1 & m2) and len(m1 | m2) == m:
                    exists = True
                    break
            assert fam.shift_partition_exists(a, m) == exists
            part = fam.shift_partition(a, m)
            assert (part is not None) == exists
            if part:
                m1, m2 = set(part[0]), set(part[1])
                assert m2 == {(i + a) % m for i in m1}
                assert not (m1 & m2) and len(m1 | m2) == m


def test_identity_subsets_are_coset_unions() -> None:
    checked = 0
    for s in range(9):
        for t in range(9 - s):
            st, k = fam.cyclic2_code(s, t)
            n = st.n
            if n > 12:
                continue
            rows = st.sym_rows()
            kernel = {m for m in range(1 << n) if not _xor_rows(rows, m)}
            coset_masks = [_mask({(c + j * k) % n for j in range(n)}) for c in range(k)]
            unions = set()
            for sel in range(1 << k):
                u = 0
                for c in range(k):
                    if sel >> c & 1:
                        u |= coset_masks[c]
                unions.add(u)
            assert kernel == unions
            checked += 1
    assert checked >= 30


def _mask(idx: set[int]) -> int:
    return sum(1 << i for i in idx)


def _xor_rows(rows: list[int], mask: int) -> int:
    acc = 0
    for i in f2.bits(mask):
        acc ^= rows[i]
    return acc


def test_k_rank_matches_surface_code() -> None:
    for a, b in COPRIME:
        r, _ = fam.cyclic_toric(a, b)
        assert k_rank(build_code(r)) == fam.cyclic_toric_params(a, b)[1]
