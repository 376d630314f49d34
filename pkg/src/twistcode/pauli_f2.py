"""Phase-free Pauli algebra, commutation-matrix realization and CALs.

A Pauli on ``n`` qubits is the pair of bitsets ``(x, z)``; qubit ``i`` is bit
``i``. Its symplectic row is the int ``x | (z << n)``. Phases are dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import f2
from .errors import InconsistentPattern, InputError

__all__ = [
    "Pauli",
    "PauliList",
    "commute",
    "f2_rank",
    "f2_rref",
    "in_rowspace",
    "commutation_matrix",
    "lbl_decompose",
    "realize_commutation",
    "cal_construct",
    "compose_cals",
    "is_cal",
    "is_extremal_cal",
    "min_cal_qubits",
    "cal_dim",
    "cal_consistency_matrix",
    "solve_pattern",
    "contains_y",
    "identity_subsets",
]

_CHARS = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
_BITS = {c: b for b, c in _CHARS.items()}


@dataclass(frozen=True, slots=True)
class Pauli:
    n: int
    x: int = 0
    z: int = 0

    @classmethod
    def from_str(cls, s: str) -> Pauli:
        x = z = 0
        for i, c in enumerate(s):
            b = _BITS.get(c)
            if b is None:
                raise InputError(f"bad Pauli character {c!r} in {s!r}")
            x |= b[0] << i
            z |= b[1] << i
        return cls(len(s), x, z)

    @classmethod
    def identity(cls, n: int) -> Pauli:
        return cls(n, 0, 0)

    @classmethod
    def from_sym(cls, n: int, v: int) -> Pauli:
        mask = (1 << n) - 1
        return cls(n, v & mask, (v >> n) & mask)

    def __str__(self) -> str:
        return "".join(_CHARS[((self.x >> i) & 1, (self.z >> i) & 1)] for i in range(self.n))

    def __repr__(self) -> str:
        return f"Pauli({str(self)!r})"

    def __mul__(self, other: Pauli) -> Pauli:
        if other.n != self.n:
            raise ValueError("qubit count mismatch")
        return Pauli(self.n, self.x ^ other.x, self.z ^ other.z)

    @property
    def sym(self) -> int:
        return self.x | (self.z << self.n)

    @property
    def support(self) -> int:
        return self.x | self.z

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def is_identity(self) -> bool:
        return not (self.x | self.z)

    def commutes(self, other: Pauli) -> bool:
        return commute(self, other) == 0

    def embed(self, offset: int, n_total: int) -> Pauli:
        return Pauli(n_total, self.x << offset, self.z << offset)

    def restrict(self, offset: int, size: int) -> Pauli:
        mask = (1 << size) - 1
        return Pauli(size, (self.x >> offset) & mask, (self.z >> offset) & mask)

    def permute(self, perm: Sequence[int]) -> Pauli:
        """Move qubit ``i`` to ``perm[i]``."""
        x = z = 0
        for i in f2.bits(self.x):
            x |= 1 << perm[i]
        for i in f2.bits(self.z):
            z |= 1 << perm[i]
        return Pauli(self.n, x, z)


def commute(p: Pauli, q: Pauli) -> int:
    """1 when p and q anticommute, else 0."""
    return ((p.x & q.z) ^ (p.z & q.x)).bit_count() & 1


@dataclass(frozen=True)
class PauliList:
    n: int
    paulis: tuple[Pauli, ...]

    @classmethod
    def from_strs(cls, strs: Iterable[str], n: int | None = None) -> PauliList:
        ps = tuple(Pauli.from_str(s) for s in strs)
        if n is None:
            if not ps:
                raise InputError("empty Pauli list needs explicit n")
            n = ps[0].n
        if any(p.n != n for p in ps):
            raise InputError("Pauli strings have inconsistent lengths")
        return cls(n, ps)

    @classmethod
    def of(cls, paulis: Sequence[Pauli], n: int | None = None) -> PauliList:
        if n is None:
            n = paulis[0].n
        return cls(n, tuple(paulis))

    def __len__(self) -> int:
        return len(self.paulis)

    def __iter__(self) -> Iterator[Pauli]:
        return iter(self.paulis)

    def __getitem__(self, i: int) -> Pauli:
        return self.paulis[i]

    def strings(self) -> list[str]:
        return [str(p) for p in self.paulis]

    def sym_rows(self) -> list[int]:
        return [p.sym for p in self.paulis]

    def dim(self) -> int:
        return f2_rank(self.sym_rows())

    def commutation_matrix(self) -> list[int]:
        return commutation_matrix(self.paulis)


def f2_rank(rows: Iterable[int]) -> int:
    return f2.rank(rows)


def f2_rref(rows: Sequence[int], n_cols: int) -> tuple[list[int], list[int]]:
    return f2.rref(rows, n_cols)


def in_rowspace(vec: int, rows: Iterable[int]) -> bool:
    return f2.in_span(vec, rows)


def commutation_matrix(paulis: Sequence[Pauli]) -> list[int]:
    """Row bitsets of C with C_ij = 1 iff paulis i and j anticommute."""
    rows = []
    for p in paulis:
        r = 0
        for j, q in enumerate(paulis):
            if commute(p, q):
                r |= 1 << j
        rows.append(r)
    return rows


def _check_commutation_matrix(c: Sequence[int]) -> int:
    ell = len(c)
    for i in range(ell):
        if (c[i] >> i) & 1:
            raise InputError("commutation matrix must have zero diagonal")
        if c[i] >> ell:
            raise InputError("commutation matrix row too wide")
        for j in range(i + 1, ell):
            if ((c[i] >> j) & 1) != ((c[j] >> i) & 1):
                raise InputError("commutation matrix must be symmetric")
    return ell


def lbl_decompose(c: Sequence[int]) -> tuple[list[int], list[int]]:
    """Return (L, B) with C = L B L^T, L unit lower triangular.

    B has at most one 1 per row and column, and |B| = rank(C).
    """
    ell = _check_commutation_matrix(c)
    b = list(c)
    lo = [1 << i for i in range(ell)]
    for i in range(ell - 1):
        row = b[i]
        j = (row & -row).bit_length() - 1 if row else i
        jmask = 1 << j
        while True:
            k = next((k for k in range(i + 1, ell) if b[k] & jmask), None)
            if k is None:
                break
            # B <- E B E^T with E = I + e_k e_i^T
            b[k] ^= b[i]
            imask, kmask = 1 << i, 1 << k
            for r in range(ell):
                if b[r] & imask:
                    b[r] ^= kmask
            # L <- L E: column i gains column k
            for r in range(ell):
                if lo[r] & kmask:
                    lo[r] ^= imask
    return lo, b


def realize_commutation(c: Sequence[int], k: int | None = None) -> PauliList:
    """Paulis with commutation matrix ``c`` on the fewest qubits.

    With ``k`` given, the list has dimension ``k`` (needs rank(C) <= k <= l).
    """
    ell = len(c)
    lo, b = lbl_decompose(c)
    pairs = [(i, (b[i] & -b[i]).bit_length() - 1) for i in range(ell) if b[i]]
    pairs = [(i, j) for i, j in pairs if i < j]
    r = 2 * len(pairs)
    zero_rows = [i for i in range(ell) if not b[i]]
    extra: list[int] = []
    if k is not None:
        if k < r or k > ell:
            raise InputError(f"target dimension {k} outside [{r}, {ell}]")
        extra = zero_rows[: k - r]
        n = max(1, k - r // 2)
    else:
        n = max(1, r // 2)
    q = [0] * ell  # symplectic rows over n qubits
    for qubit, (i, j) in enumerate(pairs):
        q[i] = 1 << qubit
        q[j] = 1 << (n + qubit)
    for off, i in enumerate(extra):
        q[i] = 1 << (n + len(pairs) + off)
    rows = f2.matmul(lo, q)
    return PauliList(n, tuple(Pauli.from_sym(n, v) for v in rows))


_SEED3 = PauliList.from_strs(["X", "Y", "Z"])
_SEED4 = PauliList.from_strs(["X", "Z", "X", "Z"])


def compose_cals(a: PauliList, b: PauliList) -> PauliList:
    """Splice two CALs; ``a`` must have even length. Qubits of ``a`` come first."""
    la, lb = len(a), len(b)
    if la % 2:
        raise InputError("first CAL must have even length")
    n = a.n + b.n
    pa = [p.embed(0, n) for p in a]
    pb = [p.embed(a.n, n) for p in b]
    h = la // 2
    out = pa[: h - 1] + [pa[h - 1] * pb[0]] + pb[1 : lb - 1] + [pb[lb - 1] * pa[h]] + pa[h + 1 :]
    return PauliList(n, tuple(out))


def cal_construct(ell: int) -> PauliList:
    """Canonical extremal CAL of length ``ell`` (weight at most two)."""
    if ell < 3:
        raise InputError("CAL construction needs length >= 3")
    if ell == 3:
        return _SEED3
    cur = _SEED4
    length = 4
    target_even = ell if ell % 2 == 0 else ell - 1
    while length < target_even:
        cur = compose_cals(cur, _SEED4)
        length += 2
    if ell % 2:
        cur = compose_cals(cur, _SEED3)
    return cur


def _cyclic_pattern(ell: int) -> list[int]:
    rows = [0] * ell
    if ell < 2:
        return rows
    for i in range(ell):
        for j in ((i + 1) % ell, (i - 1) % ell):
            if j != i:
                rows[i] |= 1 << j
    return rows


def is_cal(paulis: PauliList | Sequence[Pauli]) -> bool:
    ps = list(paulis)
    return commutation_matrix(ps) == _cyclic_pattern(len(ps))


def min_cal_qubits(ell: int) -> int:
    if ell <= 2:
        return 1
    return (ell - 1) // 2 if ell % 2 else (ell - 2) // 2


def is_extremal_cal(paulis: PauliList) -> bool:
    return is_cal(paulis) and paulis.n == min_cal_qubits(len(paulis))


def cal_dim(paulis: PauliList | Sequence[Pauli]) -> int:
    return f2_rank(p.sym for p in paulis)


def cal_consistency_matrix(ell: int) -> list[int]:
    """Columns (as bitsets over list positions) of the dependency matrix M."""
    cols = [(1 << ell) - 1]
    if ell % 2 == 0:
        cols.append(sum(1 << i for i in range(0, ell, 2)))
    return cols


def solve_pattern(cal: PauliList, x: int) -> Pauli:
    """The Pauli (mod phase) whose commutation with cal[i] is bit i of ``x``."""
    ell = len(cal)
    if ell < 3 or not is_extremal_cal(cal):
        raise InputError("solve_pattern needs an extremal CAL of length >= 3")
    for col in cal_consistency_matrix(ell):
        if (x & col).bit_count() & 1:
            raise InconsistentPattern(f"pattern {x:b} violates a list dependency")
    n = cal.n
    # row i: symplectic dual of cal[i], so row . q = commutation bit
    rows = [p.z | (p.x << n) for p in cal]
    sol = f2.solve_linear(rows, x, 2 * n)
    if sol is None:
        raise InconsistentPattern(f"pattern {x:b} not realizable")
    return Pauli.from_sym(n, sol)


def contains_y(paulis: PauliList | Sequence[Pauli]) -> bool:
    return any(p.x & p.z for p in paulis)


def identity_subsets(paulis: Sequence[Pauli]) -> list[int]:
    """All nonempty index subsets (as masks) whose product is proportional to I."""
    ell = len(paulis)
    out = []
    for mask in range(1, 1 << ell):
        acc = 0
        for i in f2.bits(mask):
            acc ^= paulis[i].sym
        if acc == 0:
            out.append(mask)
    return out

