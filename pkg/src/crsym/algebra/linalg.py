"""Exact linear algebra over the rationals.

Elimination runs on integer rows: every row is scaled to integers and kept
primitive (content divided out) after each combination, so no fractions are
ever formed.  Kernel bases come from the reduced echelon form and are
returned as primitive integer vectors whose first nonzero entry is positive.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

__all__ = [
    "RatMatrix",
    "kernel_basis",
    "sparse_kernel_basis",
    "rank",
    "in_span",
    "solve_unique",
]


class RatMatrix:
    """Dense immutable rational matrix."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence], cols: int | None = None):
        rows = [tuple(Fraction(x) for x in r) for r in data]
        if cols is None:
            if not rows:
                raise ValueError("column count needed for an empty matrix")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        self.rows = len(rows)
        self.cols = cols
        self.data = tuple(rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def apply(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self.data]

    def transpose(self) -> "RatMatrix":
        return RatMatrix([list(c) for c in zip(*self.data)], cols=self.rows) if self.rows else RatMatrix([], cols=0)

    def __repr__(self):
        return f"RatMatrix({self.rows}x{self.cols})"


def _int_row(row: Iterable) -> list[int]:
    row = list(row)
    den = 1
    for x in row:
        if type(x) is not int:
            x = Fraction(x)
            if x.denominator != 1:
                den = den * x.denominator // gcd(den, x.denominator)
    if den == 1:
        return _primitive([int(x) for x in row])
    return _primitive([int(Fraction(x) * den) for x in row])


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def _rref_int(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Integer Gauss-Jordan; returns (pivot rows, pivot columns)."""
    rows = [r for r in rows if any(r)]
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        if top == len(rows):
            break
        best = None
        for r in range(top, len(rows)):
            v = rows[r][col]
            if v and (best is None or abs(v) < abs(rows[best][col])):
                best = r
                if abs(v) == 1:
                    break
        if best is None:
            continue
        rows[top], rows[best] = rows[best], rows[top]
        prow = rows[top]
        p = prow[col]
        for r in range(len(rows)):
            if r == top:
                continue
            row = rows[r]
            f = row[col]
            if f:
                g = gcd(p, f)
                a, b = p // g, f // g
                rows[r] = _primitive([a * x - b * y for x, y in zip(row, prow)])
        pivots.append(col)
        top += 1
    return rows[:top], pivots


def _normalize(v: list[int]) -> tuple[int, ...]:
    v = _primitive(v)
    for x in v:
        if x:
            if x < 0:
                v = [-y for y in v]
            break
    return tuple(v)


def _kernel_from_rref(rows: list[list[int]], pivots: list[int], ncols: int) -> list[tuple[int, ...]]:
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        # v_f = L, v_{c_i} = -R_i[f] * L / p_i
        lcm = 1
        for row, c in zip(rows, pivots):
            if row[f]:
                p = abs(row[c])
                lcm = lcm * p // gcd(lcm, p)
        v = [0] * ncols
        v[f] = lcm
        for row, c in zip(rows, pivots):
            if row[f]:
                v[c] = -row[f] * (lcm // row[c])
        basis.append(_normalize(v))
    return basis


def _rows_cols(m, cols):
    if isinstance(m, RatMatrix):
        return m.data, m.cols
    if cols is None:
        if not m:
            raise ValueError("column count needed for an empty matrix")
        cols = len(m[0])
    if any(len(r) != cols for r in m):
        raise ValueError("ragged matrix")
    return m, cols


def kernel_basis(m: RatMatrix | Sequence[Sequence], cols: int | None = None) -> list[tuple[int, ...]]:
    """Right null space basis of ``m`` as primitive integer vectors.

    One vector per free column of the reduced echelon form, in increasing
    order of that column.
    """
    data, ncols = _rows_cols(m, cols)
    red, piv = _rref_int([_int_row(r) for r in data], ncols)
    return _kernel_from_rref(red, piv, ncols)


def rank(m: RatMatrix | Sequence[Sequence], cols: int | None = None) -> int:
    data, ncols = _rows_cols(m, cols)
    _, piv = _rref_int([_int_row(r) for r in data], ncols)
    return len(piv)


def in_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    """Whether ``v`` is a rational combination of ``vectors``."""
    if not vectors:
        return not any(v)
    base = rank(vectors)
    return rank(list(vectors) + [v]) == base


def solve_unique(m: RatMatrix | Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Solve a square nonsingular system exactly; ``None`` when singular."""
    if not isinstance(m, RatMatrix):
        m = RatMatrix(m)
    if m.rows != m.cols:
        raise ValueError("solve_unique needs a square matrix")
    aug = [_int_row(list(r) + [Fraction(b)]) for r, b in zip(m.data, rhs)]
    red, piv = _rref_int(aug, m.cols + 1)
    if piv != list(range(m.cols)):
        return None
    return [Fraction(row[-1], row[i]) for i, row in enumerate(red)]


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


def sparse_kernel_basis(columns: Sequence[Mapping], ncols: int | None = None) -> list[tuple[int, ...]]:
    """Kernel of a sparse matrix given column-wise as ``{row_key: value}``.

    The column graph is split into connected blocks and each block is reduced
    on its own.  The result equals :func:`kernel_basis` on the dense matrix.
    """
    ncols = len(columns) if ncols is None else ncols
    uf = _UnionFind(ncols)
    first_col: dict = {}
    for j, col in enumerate(columns):
        for key, val in col.items():
            if not val:
                continue
            owner = first_col.setdefault(key, j)
            if owner != j:
                uf.union(owner, j)
    blocks: dict[int, list[int]] = {}
    for j in range(ncols):
        blocks.setdefault(uf.find(j), []).append(j)
    tagged = []
    for cols in blocks.values():
        row_keys: dict = {}
        for j in cols:
            for key, val in columns[j].items():
                if val:
                    row_keys.setdefault(key, len(row_keys))
        if len(cols) == 1:
            # a single column with a nonzero entry has trivial kernel
            if not row_keys:
                v = [0] * ncols
                v[cols[0]] = 1
                tagged.append((cols[0], tuple(v)))
            continue
        if not row_keys:
            for j in cols:
                v = [0] * ncols
                v[j] = 1
                tagged.append((j, tuple(v)))
            continue
        local = [[0] * len(cols) for _ in row_keys]
        for lj, j in enumerate(cols):
            for key, val in columns[j].items():
                if val:
                    local[row_keys[key]][lj] = val
        for kv in kernel_basis(local, len(cols)):
            v = [0] * ncols
            last = 0
            for lj, x in enumerate(kv):
                if x:
                    v[cols[lj]] = x
                    last = cols[lj]
            tagged.append((last, tuple(v)))
    tagged.sort(key=lambda t: t[0])
    return [v for _, v in tagged]
