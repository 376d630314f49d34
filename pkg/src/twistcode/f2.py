"""GF(2) linear algebra on int bitsets.

A vector is a Python int; bit ``i`` is coordinate ``i``. A matrix is a list of
row ints. Everything here is pure and allocation-light.
"""

from __future__ import annotations

from typing import Iterable, Sequence

__all__ = [
    "popcount",
    "bits",
    "dot",
    "rank",
    "in_span",
    "rref",
    "solve_combination",
    "solve_linear",
    "right_kernel",
    "left_kernel",
    "matmul",
    "transpose",
    "EchelonBasis",
]


def popcount(v: int) -> int:
    return v.bit_count()


def bits(v: int) -> list[int]:
    """Indices of set bits in ascending order."""
    out = []
    while v:
        low = v & -v
        out.append(low.bit_length() - 1)
        v ^= low
    return out


def dot(a: int, b: int) -> int:
    return (a & b).bit_count() & 1


class EchelonBasis:
    """Incremental basis keyed by leading (highest) bit.

    Optionally tracks which inserted vectors combine into each basis row.
    """

    __slots__ = ("rows", "combos", "_count")

    def __init__(self) -> None:
        self.rows: dict[int, int] = {}
        self.combos: dict[int, int] = {}
        self._count = 0

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: int) -> tuple[int, int]:
        combo = 0
        rows, combos = self.rows, self.combos
        while v:
            p = v.bit_length() - 1
            r = rows.get(p)
            if r is None:
                break
            v ^= r
            combo ^= combos[p]
        return v, combo

    def reduce_full(self, v: int) -> tuple[int, int]:
        """Reduce every reducible bit, not just the leading one."""
        combo = 0
        rows, combos = self.rows, self.combos
        for p in sorted(rows, reverse=True):
            if (v >> p) & 1:
                v ^= rows[p]
                combo ^= combos[p]
        return v, combo

    def add(self, v: int) -> bool:
        """Insert ``v``; returns True when it was independent."""
        tag = 1 << self._count
        self._count += 1
        r, combo = self.reduce(v)
        if r == 0:
            return False
        p = r.bit_length() - 1
        self.rows[p] = r
        self.combos[p] = combo ^ tag
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0


def rank(rows: Iterable[int]) -> int:
    basis = EchelonBasis()
    for r in rows:
        basis.add(r)
    return len(basis)


def in_span(vec: int, rows: Iterable[int]) -> bool:
    basis = EchelonBasis()
    for r in rows:
        basis.add(r)
    return basis.contains(vec)


def rref(rows: Sequence[int], n_cols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form with pivots taken by ascending column."""
    work = [r for r in rows]
    pivots: list[int] = []
    top = 0
    for col in range(n_cols):
        mask = 1 << col
        piv = None
        for i in range(top, len(work)):
            if work[i] & mask:
                piv = i
                break
        if piv is None:
            continue
        work[top], work[piv] = work[piv], work[top]
        pr = work[top]
        for i in range(len(work)):
            if i != top and work[i] & mask:
                work[i] ^= pr
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return work[:top], pivots


def solve_combination(rows: Sequence[int], target: int) -> int | None:
    """Mask ``m`` with XOR of ``rows[i]`` over set bits of ``m`` equal to target."""
    basis = EchelonBasis()
    for r in rows:
        basis.add(r)
    rem, combo = basis.reduce(target)
    if rem:
        return None
    return combo


def solve_linear(rows: Sequence[int], rhs: int, n_cols: int) -> int | None:
    """Solve ``rows[i] . x = rhs_i`` for x; free variables set to zero."""
    aug = [r | (((rhs >> i) & 1) << n_cols) for i, r in enumerate(rows)]
    red, pivots = rref(aug, n_cols + 1)
    x = 0
    for r, p in zip(red, pivots):
        if p == n_cols:
            return None
        if (r >> n_cols) & 1:
            x |= 1 << p
    return x


def right_kernel(rows: Sequence[int], n_cols: int) -> list[int]:
    """Basis of {x : rows[i] . x = 0 for all i}."""
    red, pivots = rref(rows, n_cols)
    pivset = set(pivots)
    out = []
    for free in range(n_cols):
        if free in pivset:
            continue
        v = 1 << free
        for r, p in zip(red, pivots):
            if (r >> free) & 1:
                v |= 1 << p
        out.append(v)
    return out


def left_kernel(rows: Sequence[int]) -> list[int]:
    """Basis of row-index masks whose rows XOR to zero."""
    basis = EchelonBasis()
    out = []
    for i, r in enumerate(rows):
        rem, combo = basis.reduce(r)
        if rem == 0:
            out.append(combo | (1 << i))
            basis._count += 1
        else:
            p = rem.bit_length() - 1
            basis.rows[p] = rem
            basis.combos[p] = combo | (1 << i)
            basis._count += 1
    return out


def transpose(rows: Sequence[int], n_cols: int) -> list[int]:
    out = [0] * n_cols
    for i, r in enumerate(rows):
        for j in bits(r):
            out[j] |= 1 << i
    return out


def matmul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Row-major product: row i of a picks rows of b."""
    out = []
    for r in a:
        acc = 0
        for j in bits(r):
            acc ^= b[j]
        out.append(acc)
    return out
