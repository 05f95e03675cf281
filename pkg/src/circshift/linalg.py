"""Dense matrices over GF(2) (bit-packed rows) and over GF(2^m_L)."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .gfpoly import FieldContext, cyclic_reduce


def rotl(v: int, j: int, L: int) -> int:
    """Rotate an L-bit word so bit i moves to bit (i + j) mod L."""
    j %= L
    if j == 0:
        return v
    mask = (1 << L) - 1
    return ((v << j) & mask) | (v >> (L - j))


class BinMatrix:
    """Matrix over GF(2); row i is an int whose bit c is entry (i, c)."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[int], ncols: int):
        self.rows = list(rows)
        self.nrows = len(self.rows)
        self.ncols = ncols
        if ncols < 0:
            raise ValueError("negative column count")
        limit = 1 << ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError(f"row {r:#x} does not fit in {ncols} columns")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BinMatrix":
        return cls([0] * nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "BinMatrix":
        return cls([1 << i for i in range(n)], n)

    @classmethod
    def from_array(cls, a) -> "BinMatrix":
        a = np.asarray(a)
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        if np.any((a != 0) & (a != 1)):
            raise ValueError("entries must be 0 or 1")
        weights = 1 << np.arange(a.shape[1], dtype=object)
        rows = [int(np.dot(row.astype(object), weights)) if a.shape[1] else 0 for row in a]
        return cls(rows, a.shape[1])

    def to_array(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.uint8)
        for i, r in enumerate(self.rows):
            c = 0
            while r:
                if r & 1:
                    out[i, c] = 1
                r >>= 1
                c += 1
        return out

    @classmethod
    def from_bitstrings(cls, rows: Sequence[str]) -> "BinMatrix":
        if not rows:
            raise ValueError("no rows")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ValueError("ragged bit-string rows")
        return cls.from_array([[int(c) for c in r] for r in rows])

    def to_bitstrings(self) -> list[str]:
        return ["".join(str(b) for b in row) for row in self.to_array()]

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __eq__(self, other) -> bool:
        if not isinstance(other, BinMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self) -> str:
        return f"BinMatrix({self.nrows}x{self.ncols})"

    def __add__(self, other: "BinMatrix") -> "BinMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return BinMatrix([a ^ b for a, b in zip(self.rows, other.rows)], self.ncols)

    def vecmul(self, v: int) -> int:
        """Row vector v (bit i = coordinate i) times this matrix."""
        if v >> self.nrows:
            raise ValueError("vector longer than the row count")
        acc = 0
        i = 0
        rows = self.rows
        while v:
            if v & 1:
                acc ^= rows[i]
            v >>= 1
            i += 1
        return acc

    def __matmul__(self, other: "BinMatrix") -> "BinMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        return BinMatrix([other.vecmul(r) for r in self.rows], other.ncols)

    @property
    def T(self) -> "BinMatrix":
        out = [0] * self.ncols
        for i, r in enumerate(self.rows):
            c = 0
            while r:
                if r & 1:
                    out[c] |= 1 << i
                r >>= 1
                c += 1
        return BinMatrix(out, self.nrows)

    def submatrix(self, rows: Sequence[int]) -> "BinMatrix":
        return BinMatrix([self.rows[i] for i in rows], self.ncols)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def rank(self) -> int:
        return gf2_rank(self.rows)

    def right_inverse(self) -> "BinMatrix":
        return right_inverse(self)


def hstack(mats: Sequence[BinMatrix]) -> BinMatrix:
    if not mats:
        raise ValueError("nothing to stack")
    n = mats[0].nrows
    if any(m.nrows != n for m in mats):
        raise ValueError("row counts differ")
    rows = [0] * n
    offset = 0
    for m in mats:
        for i, r in enumerate(m.rows):
            rows[i] |= r << offset
        offset += m.ncols
    return BinMatrix(rows, offset)


def vstack(mats: Sequence[BinMatrix]) -> BinMatrix:
    if not mats:
        raise ValueError("nothing to stack")
    c = mats[0].ncols
    if any(m.ncols != c for m in mats):
        raise ValueError("column counts differ")
    return BinMatrix([r for m in mats for r in m.rows], c)


def block(grid: Sequence[Sequence[BinMatrix]]) -> BinMatrix:
    return vstack([hstack(row) for row in grid])


def gf2_rank(rows: Sequence[int]) -> int:
    work = [r for r in rows if r]
    rank = 0
    while work:
        pivot = work.pop()
        if not pivot:
            continue
        rank += 1
        low = pivot & -pivot
        work = [r ^ pivot if r & low else r for r in work]
        work = [r for r in work if r]
    return rank


def right_inverse(M: BinMatrix) -> BinMatrix:
    """Some X with M @ X = I for a full-row-rank M.

    Row reduction of [M | I] gives E M = R in reduced form; placing the rows of
    E at the pivot columns of R yields X.
    """
    r, c = M.shape
    aug = [row | (1 << (c + i)) for i, row in enumerate(M.rows)]
    pivots = []
    prow = 0
    for col in range(c):
        bit = 1 << col
        sel = next((i for i in range(prow, r) if aug[i] & bit), None)
        if sel is None:
            continue
        aug[prow], aug[sel] = aug[sel], aug[prow]
        for i in range(r):
            if i != prow and aug[i] & bit:
                aug[i] ^= aug[prow]
        pivots.append(col)
        prow += 1
        if prow == r:
            break
    if prow < r:
        raise np.linalg.LinAlgError(f"matrix has rank {prow} < {r} rows; no right inverse")
    X = [0] * c
    for i, col in enumerate(pivots):
        X[col] = aug[i] >> c
    return BinMatrix(X, r)


def kron(A: BinMatrix, B: BinMatrix) -> BinMatrix:
    rows = []
    for a in A.rows:
        for b in B.rows:
            acc = 0
            j = 0
            v = a
            while v:
                if v & 1:
                    acc |= b << (j * B.ncols)
                v >>= 1
                j += 1
            rows.append(acc)
    return BinMatrix(rows, A.ncols * B.ncols)


def cyclic_perm_power(L: int, j: int) -> BinMatrix:
    """C_L^j: row i has its single 1 in column (i + j) mod L."""
    if L < 1:
        raise ValueError("L must be positive")
    return BinMatrix([1 << ((i + j) % L) for i in range(L)], L)


def circulant_of_poly(k: int, L: int) -> BinMatrix:
    """k(C_L); row i is the coefficient word of k rotated by i."""
    k = cyclic_reduce(k, L)
    return BinMatrix([rotl(k, i, L) for i in range(L)], L)


class FieldMatrix:
    """Matrix over the field of a FieldContext; entries are ints."""

    __slots__ = ("ctx", "rows")

    def __init__(self, ctx: FieldContext, rows: Sequence[Sequence[int]]):
        self.ctx = ctx
        self.rows = [list(r) for r in rows]
        if self.rows and any(len(r) != len(self.rows[0]) for r in self.rows):
            raise ValueError("ragged rows")
        top = 1 << ctx.m
        if any(not 0 <= x < top for r in self.rows for x in r):
            raise ValueError("entry outside the field")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return self.ctx.modulus == other.ctx.modulus and self.rows == other.rows

    def __repr__(self) -> str:
        body = "; ".join(" ".join(self.ctx.element_str(x) for x in r) for r in self.rows)
        return f"FieldMatrix([{body}])"

    @classmethod
    def identity(cls, ctx: FieldContext, n: int) -> "FieldMatrix":
        return cls(ctx, [[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def T(self) -> "FieldMatrix":
        return FieldMatrix(self.ctx, [list(c) for c in zip(*self.rows)])

    def __matmul__(self, other: "FieldMatrix") -> "FieldMatrix":
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        mul = self.ctx.mul
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = 0
                for a, b in zip(r, c):
                    if a and b:
                        acc ^= mul(a, b)
                row.append(acc)
            out.append(row)
        return FieldMatrix(self.ctx, out)

    def map(self, fn) -> "FieldMatrix":
        return FieldMatrix(self.ctx, [[fn(x) for x in r] for r in self.rows])

    def _eliminate(self, aug: list[list[int]] | None = None):
        """Forward elimination with first-nonzero pivots; returns (rank, det)."""
        ctx = self.ctx
        work = [list(r) for r in self.rows]
        nr, nc = self.shape
        det = 1
        prow = 0
        for col in range(nc):
            sel = next((i for i in range(prow, nr) if work[i][col]), None)
            if sel is None:
                det = 0
                continue
            if sel != prow:
                work[prow], work[sel] = work[sel], work[prow]
                if aug is not None:
                    aug[prow], aug[sel] = aug[sel], aug[prow]
            p = work[prow][col]
            det = ctx.mul(det, p)
            pinv = ctx.inv(p)
            work[prow] = [ctx.mul(pinv, x) for x in work[prow]]
            if aug is not None:
                aug[prow] = [ctx.mul(pinv, x) for x in aug[prow]]
            for i in range(nr):
                f = work[i][col]
                if i != prow and f:
                    work[i] = [x ^ ctx.mul(f, y) for x, y in zip(work[i], work[prow])]
                    if aug is not None:
                        aug[i] = [x ^ ctx.mul(f, y) for x, y in zip(aug[i], aug[prow])]
            prow += 1
            if prow == nr:
                break
        if prow < nc:
            det = 0
        return prow, det

    def rank(self) -> int:
        return self._eliminate()[0]

    def det(self) -> int:
        nr, nc = self.shape
        if nr != nc:
            raise ValueError("determinant of a non-square matrix")
        return self._eliminate()[1]

    def inverse(self) -> "FieldMatrix":
        n, nc = self.shape
        if n != nc:
            raise ValueError("inverse of a non-square matrix")
        aug = [[int(i == j) for j in range(n)] for i in range(n)]
        rank, _ = self._eliminate(aug)
        if rank < n:
            raise ZeroDivisionError("singular matrix")
        return FieldMatrix(self.ctx, aug)

    def is_binary(self) -> bool:
        return all(x in (0, 1) for r in self.rows for x in r)

    def to_binary(self) -> BinMatrix:
        if not self.is_binary():
            raise ValueError("matrix has entries outside GF(2)")
        return BinMatrix([sum(x << c for c, x in enumerate(r)) for r in self.rows],
                         self.shape[1])


def vandermonde(ctx: FieldContext) -> FieldMatrix:
    """V_L with entry (i, j) = alpha^(i*j)."""
    L = ctx.L
    return FieldMatrix(ctx, [[ctx.alpha_pow(i * j) for j in range(L)] for i in range(L)])


def vandermonde_inverse(ctx: FieldContext) -> FieldMatrix:
    """Closed form: entry (i, j) = alpha^(-i*j)."""
    L = ctx.L
    return FieldMatrix(ctx, [[ctx.alpha_pow(-i * j) for j in range(L)] for i in range(L)])
