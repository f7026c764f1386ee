"""Sparse binary matrices, F_2 orthogonality and row-overlap sets."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch


@dataclass(frozen=True)
class BinaryMatrix:
    """Binary matrix stored as one sorted tuple of column indices per row."""

    rows: int
    cols: int
    row_support: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimension")
        if len(self.row_support) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.row_support)}")
        for i, supp in enumerate(self.row_support):
            prev = -1
            for j in supp:
                if j <= prev:
                    raise ValueError(f"row {i}: support not strictly increasing")
                prev = j
            if supp and supp[-1] >= self.cols:
                raise ValueError(f"row {i}: column {supp[-1]} out of range")

    @classmethod
    def from_supports(cls, supports: Iterable[Iterable[int]], cols: int) -> "BinaryMatrix":
        rs = tuple(tuple(sorted(set(int(j) for j in s))) for s in supports)
        return cls(len(rs), cols, rs)

    @classmethod
    def from_dense(cls, a) -> "BinaryMatrix":
        a = np.asarray(a)
        if a.ndim != 2:
            raise ValueError("expected a 2-d array")
        if np.any((a != 0) & (a != 1)):
            raise ValueError("entries must be 0 or 1")
        rows, cols = a.shape
        rs = tuple(tuple(int(j) for j in np.flatnonzero(a[i])) for i in range(rows))
        return cls(rows, cols, rs)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BinaryMatrix":
        return cls(rows, cols, ((),) * rows)

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls(n, n, tuple((i,) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return sum(len(s) for s in self.row_support)

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for i, supp in enumerate(self.row_support):
            a[i, list(supp)] = 1
        return a

    def col_support(self) -> tuple[tuple[int, ...], ...]:
        cs: list[list[int]] = [[] for _ in range(self.cols)]
        for i, supp in enumerate(self.row_support):
            for j in supp:
                cs[j].append(i)
        return tuple(tuple(c) for c in cs)

    def transpose(self) -> "BinaryMatrix":
        return BinaryMatrix(self.cols, self.rows, self.col_support())

    def positions(self) -> list[tuple[int, int]]:
        """Nonzero positions in row-major order."""
        return [(i, j) for i, supp in enumerate(self.row_support) for j in supp]

    def __contains__(self, pos) -> bool:
        i, j = pos
        return j in self.row_support[i]

    def matvec(self, x: Sequence[int]) -> tuple[int, ...]:
        if len(x) != self.cols:
            raise DimensionMismatch(f"vector of length {len(x)} for {self.cols} columns")
        return tuple(sum(x[j] for j in supp) & 1 for supp in self.row_support)


@dataclass(frozen=True)
class CssPair:
    """Two binary check matrices over the same N columns."""

    hc: BinaryMatrix
    hd: BinaryMatrix

    def __post_init__(self):
        if self.hc.cols != self.hd.cols:
            raise DimensionMismatch(f"column counts differ: {self.hc.cols} vs {self.hd.cols}")

    @property
    def n(self) -> int:
        return self.hc.cols


OverlapTable = dict[tuple[int, int], tuple[int, ...]]


def _intersect(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    # merge of two sorted lists
    out = []
    x = y = 0
    while x < len(a) and y < len(b):
        if a[x] == b[y]:
            out.append(a[x])
            x += 1
            y += 1
        elif a[x] < b[y]:
            x += 1
        else:
            y += 1
    return tuple(out)


def overlap_sets(pair: CssPair) -> OverlapTable:
    """Shared columns of every (row of hc, row of hd) pair, empty ones omitted.

    Cost is O(M_X * M_Z * w) for row weight w; this pairwise loop is the
    scaling bottleneck for large codes.  Keys are in (i, i') lexicographic order.
    """
    table: OverlapTable = {}
    for i, a in enumerate(pair.hc.row_support):
        if not a:
            continue
        for ip, b in enumerate(pair.hd.row_support):
            s = _intersect(a, b)
            if s:
                table[(i, ip)] = s
    return table


def check_orthogonal_f2(pair: CssPair) -> list[tuple[int, int, int]]:
    """Return every (i, i', |S|) with odd overlap; an empty list means H_C H_D^T = 0."""
    return [(i, ip, len(s)) for (i, ip), s in overlap_sets(pair).items() if len(s) % 2]


def is_orthogonal_f2(pair: CssPair) -> bool:
    return not check_orthogonal_f2(pair)


def overlap_histogram(table: OverlapTable) -> dict[int, int]:
    return dict(sorted(Counter(len(s) for s in table.values()).items()))


def rank_f2(mat: BinaryMatrix) -> int:
    return len(_rref_f2(mat.to_dense())[1])


def _rref_f2(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    a = (np.asarray(a) & 1).astype(np.uint8, copy=True)
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        hits = np.flatnonzero(a[r:, c])
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        others = np.flatnonzero(a[:, c])
        others = others[others != r]
        a[others] ^= a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def nullspace_f2(mat: BinaryMatrix) -> list[tuple[int, ...]]:
    """Basis of the right kernel {x : mat @ x = 0 over F_2}, one vector per free column."""
    red, pivots = _rref_f2(mat.to_dense())
    n = mat.cols
    pivset = set(pivots)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        v = [0] * n
        v[free] = 1
        for r, c in enumerate(pivots):
            if red[r, free]:
                v[c] = 1
        basis.append(tuple(v))
    return basis


def random_matrix(rows: int, cols: int, rng: np.random.Generator, density: float = 0.5) -> BinaryMatrix:
    return BinaryMatrix.from_dense((rng.random((rows, cols)) < density).astype(np.uint8))
