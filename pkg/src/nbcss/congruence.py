"""Exponent congruences A v = 0 (mod q-1) for pairs with 0/2 row overlaps.

Writing gamma_{i,j} = alpha^e[i,j] and delta_{i',j} = alpha^f[i',j], a row pair
sharing exactly the columns j < j' is orthogonal over GF(2^m) iff

    e[i,j] - e[i,j'] + f[i',j] - f[i',j'] = 0   (mod 2^m - 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .binmat import CssPair, OverlapTable, overlap_sets
from .errors import OverlapTooLarge

GAMMA = "e"
DELTA = "f"


class Var(NamedTuple):
    side: str  # GAMMA or DELTA
    row: int
    col: int

    def __str__(self) -> str:
        return f"{self.side}[{self.row},{self.col}]"


@dataclass(frozen=True)
class VarIndex:
    """All Gamma-side variables in (row, col) order, then all Delta-side ones."""

    vars: tuple[Var, ...]
    n_gamma: int

    def __post_init__(self):
        object.__setattr__(self, "_lookup", {v: k for k, v in enumerate(self.vars)})

    def __len__(self) -> int:
        return len(self.vars)

    def __getitem__(self, k: int) -> Var:
        return self.vars[k]

    def index(self, side: str, row: int, col: int) -> int:
        return self._lookup[Var(side, row, col)]

    def e(self, i: int, j: int) -> int:
        return self._lookup[Var(GAMMA, i, j)]

    def f(self, i: int, j: int) -> int:
        return self._lookup[Var(DELTA, i, j)]


def build_var_index(pair: CssPair) -> VarIndex:
    gam = [Var(GAMMA, i, j) for i, j in pair.hc.positions()]
    dlt = [Var(DELTA, i, j) for i, j in pair.hd.positions()]
    return VarIndex(tuple(gam + dlt), len(gam))


class RowLabel(NamedTuple):
    i: int
    ip: int
    j: int
    jp: int


@dataclass(frozen=True)
class CongruenceSystem:
    """Sparse rows of (variable, coefficient) pairs, all congruent to 0 mod ``modulus``."""

    coeffs: tuple[tuple[tuple[int, int], ...], ...]
    n_vars: int
    modulus: int
    row_labels: tuple[RowLabel, ...] = ()
    var_index: VarIndex | None = None

    @property
    def n_rows(self) -> int:
        return len(self.coeffs)

    def dense(self) -> list[list[int]]:
        """Integer coefficient matrix (entries in {0, +1, -1})."""
        a = [[0] * self.n_vars for _ in self.coeffs]
        for r, row in enumerate(self.coeffs):
            for k, c in row:
                a[r][k] += c
        return a

    def residuals(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.n_vars:
            raise ValueError(f"expected {self.n_vars} values, got {len(v)}")
        return [sum(c * v[k] for k, c in row) % self.modulus for row in self.coeffs]

    def is_solution(self, v: Sequence[int]) -> bool:
        return not any(self.residuals(v))

    def unsatisfied(self, v: Sequence[int]) -> list[int]:
        return [r for r, x in enumerate(self.residuals(v)) if x]


def system_from_dense(a: Sequence[Sequence[int]], modulus: int, n_vars: int | None = None) -> CongruenceSystem:
    """Wrap a plain integer matrix as a system (no labels or variable index)."""
    if n_vars is None:
        n_vars = len(a[0]) if a else 0
    coeffs = tuple(tuple((k, int(c)) for k, c in enumerate(row) if c) for row in a)
    return CongruenceSystem(coeffs, n_vars, modulus)


def build_system(pair: CssPair, modulus: int, table: OverlapTable | None = None) -> CongruenceSystem:
    """One congruence per row pair sharing exactly two columns.

    Raises
    ------
    OverlapTooLarge
        On the first overlap of size other than 0 or 2 (in (i, i') order).
    """
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    if table is None:
        table = overlap_sets(pair)
    idx = build_var_index(pair)
    rows = []
    labels = []
    for (i, ip), s in sorted(table.items()):
        if len(s) != 2:
            raise OverlapTooLarge(i, ip, len(s))
        j, jp = s
        rows.append(((idx.e(i, j), 1), (idx.e(i, jp), -1), (idx.f(ip, j), 1), (idx.f(ip, jp), -1)))
        labels.append(RowLabel(i, ip, j, jp))
    return CongruenceSystem(tuple(rows), len(idx), modulus, tuple(labels), idx)


def dump_system(sys: CongruenceSystem) -> str:
    """Render the system one congruence per line.

    ``(i,i',j,j') : +e[i,j] -e[i,j'] +f[i',j] -f[i',j'] (mod n)``
    """
    lines = []
    for label, row in zip(sys.row_labels, sys.coeffs):
        terms = []
        for k, c in row:
            name = str(sys.var_index[k]) if sys.var_index is not None else f"v[{k}]"
            terms.append(("+" if c > 0 else "-") + name)
        lines.append(f"({label.i},{label.ip},{label.j},{label.jp}) : {' '.join(terms)} (mod {sys.modulus})")
    return "\n".join(lines) + ("\n" if lines else "")
