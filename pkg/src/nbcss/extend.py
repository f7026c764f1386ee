"""Non-binary matrices over GF(2^m) on a fixed binary support.

Covers assembling (H_Gamma, H_Delta) from exponents, the separable
assignment gamma = alpha^(A_i + C_j), delta = alpha^(B_i' - C_j), and
end-to-end checks of support and orthogonality over the field.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .binmat import BinaryMatrix, CssPair, check_orthogonal_f2
from .congruence import GAMMA, VarIndex, build_var_index
from .errors import DimensionMismatch, DomainMismatch, NotACodeword, OddOverlap
from .field import FieldSpec, same_field


@dataclass(frozen=True)
class FieldMatrix:
    """Sparse matrix over ``field``; ``row_entries[i]`` maps column -> nonzero element."""

    rows: int
    cols: int
    field: FieldSpec
    row_entries: tuple[dict[int, int], ...]

    def __post_init__(self):
        if len(self.row_entries) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.row_entries)}")
        for i, ent in enumerate(self.row_entries):
            for j, x in ent.items():
                if not 0 <= j < self.cols:
                    raise ValueError(f"row {i}: column {j} out of range")
                if not 0 < x < self.field.order:
                    raise ValueError(f"row {i}, col {j}: {x!r} is not a nonzero element")

    @classmethod
    def from_dense(cls, grid: Sequence[Sequence[int]], field: FieldSpec, cols: int | None = None) -> "FieldMatrix":
        rows = len(grid)
        if cols is None:
            cols = len(grid[0]) if rows else 0
        ents = []
        for row in grid:
            if len(row) != cols:
                raise DimensionMismatch(f"ragged grid: row of length {len(row)}, expected {cols}")
            ents.append({j: int(x) for j, x in enumerate(row) if x})
        return cls(rows, cols, field, tuple(ents))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for i, ent in enumerate(self.row_entries):
            for j, x in ent.items():
                out[i][j] = x
        return out

    def support(self) -> BinaryMatrix:
        return BinaryMatrix(self.rows, self.cols, tuple(tuple(sorted(e)) for e in self.row_entries))

    def matvec(self, x: Sequence[int]) -> list[int]:
        if len(x) != self.cols:
            raise DimensionMismatch(f"vector of length {len(x)} for {self.cols} columns")
        F = self.field
        out = []
        for ent in self.row_entries:
            acc = 0
            for j, g in ent.items():
                acc ^= F.mul(g, x[j])
            out.append(acc)
        return out


@dataclass(frozen=True)
class ExponentAssignment:
    """Exponents of every nonzero: gamma_{i,j} = alpha^e[i,j], delta_{i',j} = alpha^f[i',j]."""

    e: Mapping[tuple[int, int], int]
    f: Mapping[tuple[int, int], int]
    modulus: int

    @classmethod
    def from_vector(cls, idx: VarIndex, v: Sequence[int], modulus: int) -> "ExponentAssignment":
        if len(v) != len(idx):
            raise DomainMismatch(f"{len(v)} values for {len(idx)} variables")
        e, f = {}, {}
        for var, x in zip(idx.vars, v):
            (e if var.side == GAMMA else f)[(var.row, var.col)] = int(x) % modulus
        return cls(e, f, modulus)

    def to_vector(self, idx: VarIndex) -> list[int]:
        return [(self.e if var.side == GAMMA else self.f)[(var.row, var.col)] for var in idx.vars]

    @classmethod
    def zeros(cls, pair: CssPair, modulus: int) -> "ExponentAssignment":
        return cls({p: 0 for p in pair.hc.positions()}, {p: 0 for p in pair.hd.positions()}, modulus)


def _assemble_one(mat: BinaryMatrix, exps: Mapping[tuple[int, int], int], field: FieldSpec, name: str) -> FieldMatrix:
    positions = mat.positions()
    if set(positions) != set(exps):
        missing = sorted(set(positions) - set(exps))
        extra = sorted(set(exps) - set(positions))
        raise DomainMismatch(f"{name}: missing {missing[:5]} extra {extra[:5]}")
    ents = tuple({j: field.alpha_pow(exps[(i, j)]) for j in supp} for i, supp in enumerate(mat.row_support))
    return FieldMatrix(mat.rows, mat.cols, field, ents)


def assemble(pair: CssPair, asg: ExponentAssignment, field: FieldSpec) -> tuple[FieldMatrix, FieldMatrix]:
    """Put alpha^e on each nonzero of H_C and alpha^f on each nonzero of H_D."""
    return (
        _assemble_one(pair.hc, asg.e, field, "H_C"),
        _assemble_one(pair.hd, asg.f, field, "H_D"),
    )


def extract_exponents(hg: FieldMatrix, hd: FieldMatrix) -> ExponentAssignment:
    """Inverse of :func:`assemble`: discrete logs of every stored entry."""
    same_field(hg.field, hd.field)
    F = hg.field
    e = {(i, j): F.dlog(x) for i, ent in enumerate(hg.row_entries) for j, x in ent.items()}
    f = {(i, j): F.dlog(x) for i, ent in enumerate(hd.row_entries) for j, x in ent.items()}
    return ExponentAssignment(e, f, F.modulus)


def verify_orthogonal_fq(hg: FieldMatrix, hd: FieldMatrix) -> list[tuple[int, int]]:
    """All (i, i') whose rows have a nonzero inner product; empty means H_Gamma H_Delta^T = 0.

    Computes every inner product directly, independent of any congruence system.
    """
    same_field(hg.field, hd.field)
    if hg.cols != hd.cols:
        raise DimensionMismatch(f"column counts differ: {hg.cols} vs {hd.cols}")
    F = hg.field
    bad = []
    for i, a in enumerate(hg.row_entries):
        for ip, b in enumerate(hd.row_entries):
            small, big = (a, b) if len(a) <= len(b) else (b, a)
            acc = 0
            for j, x in small.items():
                y = big.get(j)
                if y:
                    acc ^= F.mul(x, y)
            if acc:
                bad.append((i, ip))
    return bad


def verify_support(hg: FieldMatrix, hc: BinaryMatrix) -> list[tuple[int, int]]:
    """Positions where exactly one of hg, hc is nonzero."""
    if hg.shape != hc.shape:
        raise DimensionMismatch(f"shapes differ: {hg.shape} vs {hc.shape}")
    bad = []
    for i, (ent, supp) in enumerate(zip(hg.row_entries, hc.row_support)):
        bad.extend((i, j) for j in sorted(set(ent).symmetric_difference(supp)))
    return bad


# ---------------------------------------------------------------------------
# Canonical separable assignment
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CsaParams:
    """Row offsets ``a`` (H_C rows), ``b`` (H_D rows) and column offsets ``c``, all mod q-1."""

    a: tuple[int, ...]
    b: tuple[int, ...]
    c: tuple[int, ...]

    @classmethod
    def random(cls, pair: CssPair, modulus: int, seed=None) -> "CsaParams":
        rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
        draw = lambda k: tuple(int(x) for x in rng.integers(0, modulus, size=k))  # noqa: E731
        return cls(draw(pair.hc.rows), draw(pair.hd.rows), draw(pair.n))

    @classmethod
    def zeros(cls, pair: CssPair) -> "CsaParams":
        return cls((0,) * pair.hc.rows, (0,) * pair.hd.rows, (0,) * pair.n)

    def check(self, pair: CssPair) -> None:
        want = (pair.hc.rows, pair.hd.rows, pair.n)
        if (len(self.a), len(self.b), len(self.c)) != want:
            raise DomainMismatch(f"params sized {(len(self.a), len(self.b), len(self.c))}, pair needs {want}")


def csa_exponents(pair: CssPair, params: CsaParams, modulus: int) -> ExponentAssignment:
    params.check(pair)
    e = {(i, j): (params.a[i] + params.c[j]) % modulus for i, j in pair.hc.positions()}
    f = {(i, j): (params.b[i] - params.c[j]) % modulus for i, j in pair.hd.positions()}
    return ExponentAssignment(e, f, modulus)


def csa(pair: CssPair, params: CsaParams, field: FieldSpec) -> tuple[FieldMatrix, FieldMatrix]:
    """Separable assignment, orthogonal for any even overlap sizes.

    Every product gamma_{i,j} delta_{i',j} equals alpha^(A_i + B_i'), so a row
    pair's inner product is |S_{i,i'}| copies of one element, which vanishes
    in characteristic 2 whenever the overlap is even.
    """
    odd = check_orthogonal_f2(pair)
    if odd:
        raise OddOverlap(odd)
    return assemble(pair, csa_exponents(pair, params, field.modulus), field)


def csa_lift(hc: BinaryMatrix, x: Sequence[int], params: CsaParams, field: FieldSpec) -> list[int]:
    """Lift a binary codeword of ``hc`` to xi_j = alpha^(-C_j) x_j.

    The result has the support of ``x`` and lies in the kernel of the CSA
    matrix H_Gamma, since row i of H_Gamma xi is alpha^(A_i) * sum x_j = 0.
    """
    if len(params.c) != hc.cols:
        raise DomainMismatch(f"{len(params.c)} column offsets for {hc.cols} columns")
    x = [int(b) for b in x]
    if any(b not in (0, 1) for b in x):
        raise ValueError("x must be a binary vector")
    if any(hc.matvec(x)):
        raise NotACodeword("H x != 0 over F_2")
    return [field.alpha_pow(-params.c[j]) if b else 0 for j, b in enumerate(x)]


def support_equal(hg: FieldMatrix, hd: FieldMatrix, pair: CssPair) -> bool:
    return not verify_support(hg, pair.hc) and not verify_support(hd, pair.hd)


def extend_from_vector(pair: CssPair, v: Sequence[int], field: FieldSpec, idx: VarIndex | None = None):
    """Assemble from a flat exponent vector ordered like ``build_var_index(pair)``."""
    if idx is None:
        idx = build_var_index(pair)
    return assemble(pair, ExponentAssignment.from_vector(idx, v, field.modulus), field)
