"""Hypergraph-product CSS pairs from two classical binary seeds."""

from __future__ import annotations

from dataclasses import dataclass

from .binmat import BinaryMatrix, CssPair
from .errors import EmptySeed


@dataclass(frozen=True)
class HgpShape:
    r1: int
    n1: int
    r2: int
    n2: int

    @classmethod
    def of(cls, h1: BinaryMatrix, h2: BinaryMatrix) -> "HgpShape":
        return cls(h1.rows, h1.cols, h2.rows, h2.cols)

    @property
    def n(self) -> int:
        return self.n1 * self.n2 + self.r1 * self.r2

    @property
    def rows_x(self) -> int:
        return self.r1 * self.n2

    @property
    def rows_z(self) -> int:
        return self.n1 * self.r2


def hgp(h1: BinaryMatrix, h2: BinaryMatrix) -> CssPair:
    """Hypergraph product of two binary matrices.

    Returns the pair::

        H_X = ( H1 (x) I_n2  |  I_r1 (x) H2^T )
        H_Z = ( I_n1 (x) H2  |  H1^T (x) I_r2 )

    Column (j1, k) of the left block is j1*n2 + k and column (i1, i2) of the
    right block is n1*n2 + i1*r2 + i2.  Row (i1, k) of H_X is i1*n2 + k and
    row (j1, i2) of H_Z is j1*r2 + i2.  H_X H_Z^T = 0 over F_2 for any seeds.
    """
    if 0 in (h1.rows, h1.cols, h2.rows, h2.cols):
        raise EmptySeed(f"seeds must be nonempty, got {h1.shape} and {h2.shape}")
    s = HgpShape.of(h1, h2)
    h1_cols = h1.col_support()
    h2_cols = h2.col_support()
    offset = s.n1 * s.n2

    hx = []
    for i1 in range(s.r1):
        for k in range(s.n2):
            left = [j1 * s.n2 + k for j1 in h1.row_support[i1]]
            right = [offset + i1 * s.r2 + i2 for i2 in h2_cols[k]]
            hx.append(tuple(left + right))
    hz = []
    for j1 in range(s.n1):
        for i2 in range(s.r2):
            left = [j1 * s.n2 + k for k in h2.row_support[i2]]
            right = [offset + i1 * s.r2 + i2 for i1 in h1_cols[j1]]
            hz.append(tuple(left + right))
    return CssPair(BinaryMatrix(s.rows_x, s.n, tuple(hx)), BinaryMatrix(s.rows_z, s.n, tuple(hz)))

