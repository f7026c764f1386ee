"""Solvers for homogeneous congruence systems A v = 0 (mod n).

Four routes are provided:

* :func:`unit_pivot_eliminate` -- division-free row reduction that only uses
  row swaps and integer row additions, pivoting on entries equal to +1 or -1.
* :func:`snf` / :func:`snf_nullspace_mod` -- Smith normal form over Z, which
  parameterizes the full solution module for any modulus.
* :func:`prime_field_nullspace` -- ordinary Gaussian elimination when n is prime.
* :func:`heuristic_solve` -- randomized single-variable repair.

All integer work uses Python ints, so nothing overflows.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from .congruence import CongruenceSystem, system_from_dense
from .errors import NoUnitPivot, NotPrime, Timeout

log = logging.getLogger(__name__)

SOLVERS = ("eliminate", "snf", "heuristic", "prime-field")


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


# ---------------------------------------------------------------------------
# Solution sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SolutionSampler:
    """The solution set as {sum_i t_i * g_i mod n : 0 <= t_i < order_i}.

    Every route builds its generators so that this map is a bijection onto
    the solution set, hence uniform t gives a uniform solution.
    """

    modulus: int
    n_vars: int
    generators: tuple[tuple[int, ...], ...]
    orders: tuple[int, ...]

    def count(self) -> int:
        return math.prod(self.orders)

    @property
    def dimension(self) -> int:
        """Number of independent generators (the nullity when n is prime)."""
        return len(self.generators)

    def combine(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        n = self.modulus
        v = [0] * self.n_vars
        for t, g in zip(coeffs, self.generators):
            if t:
                for k, x in enumerate(g):
                    if x:
                        v[k] += t * x
        return tuple(x % n for x in v)

    def sample(self, seed=None) -> tuple[int, ...]:
        rng = _rng(seed)
        return self.combine([int(rng.integers(0, o)) for o in self.orders])

    def enumerate(self) -> Iterator[tuple[int, ...]]:
        for coeffs in itertools.product(*(range(o) for o in self.orders)):
            yield self.combine(coeffs)


def sample_solution(sampler: SolutionSampler, seed=None) -> tuple[int, ...]:
    """Draw one solution; identical seeds give identical vectors."""
    return sampler.sample(seed)


# ---------------------------------------------------------------------------
# Unit-pivot elimination
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RowOp:
    """``swap`` exchanges rows a, b; ``add`` does R_a <- R_a + k * R_b (mod n)."""

    kind: str
    a: int
    b: int
    k: int = 0

    def __str__(self) -> str:
        if self.kind == "swap":
            return f"swap R{self.a} R{self.b}"
        sign, k = ("-", -self.k) if self.k < 0 else ("+", self.k)
        return f"R{self.a} <- R{self.a} {sign} {k}*R{self.b}"


@dataclass(frozen=True)
class ReducedSystem:
    """Row-reduced form whose pivots are all +1 or -1 modulo n.

    ``rows[k]`` has its pivot at ``pivot_cols[k]`` and zeros in every other
    pivot column.  Rows reduced to zero are dropped.
    """

    rows: tuple[tuple[int, ...], ...]
    pivot_cols: tuple[int, ...]
    free_cols: tuple[int, ...]
    modulus: int
    ops: tuple[RowOp, ...] = field(default=(), repr=False)

    @property
    def rank(self) -> int:
        return len(self.pivot_cols)

    def sampler(self) -> SolutionSampler:
        n = self.modulus
        n_vars = len(self.pivot_cols) + len(self.free_cols)
        gens = []
        for f in self.free_cols:
            g = [0] * n_vars
            g[f] = 1
            for row, c in zip(self.rows, self.pivot_cols):
                # pivot p is its own inverse: x_c = -p * sum(a_f x_f)
                g[c] = -row[c] * row[f] % n
            gens.append(tuple(g))
        return SolutionSampler(n, n_vars, tuple(gens), (n,) * len(gens))


def unit_pivot_eliminate(
    sys: CongruenceSystem, trace: Callable[[str], None] | None = None
) -> ReducedSystem:
    """Reduce ``sys`` with row swaps and integer row additions only.

    1. Pick the first entry equal to +1 or -1 (mod n) in a column-major scan
       of the unreduced rows and non-pivot columns; swap its row into place.
    2. Clear that column in every row below by adding a multiple of the
       pivot row.
    3. After the forward pass, clear above each pivot, last pivot first.
    4. Columns without a pivot are free.

    Raises
    ------
    NoUnitPivot
        If unreduced rows remain nonzero but contain no +-1 entry.
    """
    n = sys.modulus
    units = {1 % n, (n - 1) % n}
    a = [[x % n for x in row] for row in sys.dense()]
    m, ncols = len(a), sys.n_vars
    ops: list[RowOp] = []

    def emit(op: RowOp) -> None:
        ops.append(op)
        if trace is not None:
            trace(f"{op} (mod {n})" if op.kind == "add" else str(op))

    def add_row(dst: int, src: int, k: int) -> None:
        # logged with the signed representative so -1 reads as a subtraction
        emit(RowOp("add", dst, src, k - n if k > n // 2 else k))
        rs = a[src]
        a[dst] = [(x + k * y) % n for x, y in zip(a[dst], rs)]

    pivots: list[int] = []
    pivset: set[int] = set()
    r = 0
    while r < m:
        hit = None
        for c in range(ncols):
            if c in pivset:
                continue
            for i in range(r, m):
                if a[i][c] in units:
                    hit = (i, c)
                    break
            if hit:
                break
        if hit is None:
            break
        i, c = hit
        if i != r:
            emit(RowOp("swap", r, i))
            a[r], a[i] = a[i], a[r]
        p = a[r][c]
        for i in range(r + 1, m):
            if a[i][c]:
                add_row(i, r, -a[i][c] * p % n)
        pivots.append(c)
        pivset.add(c)
        r += 1

    stuck = sorted({c for row in a[r:] for c, x in enumerate(row) if x})
    if stuck:
        raise NoUnitPivot(stuck)

    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        p = a[k][c]
        for i in range(k):
            if a[i][c]:
                add_row(i, k, -a[i][c] * p % n)

    free = tuple(c for c in range(ncols) if c not in pivset)
    return ReducedSystem(tuple(tuple(row) for row in a[:r]), tuple(pivots), free, n, tuple(ops))


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SnfResult:
    """U @ A @ V = D with U, V unimodular and D diagonal, d_1 | d_2 | ..."""

    U: tuple[tuple[int, ...], ...]
    D: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i][i] for i in range(min(len(self.D), len(self.V))))

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def snf(a: Sequence[Sequence[int]], n_cols: int | None = None) -> SnfResult:
    """Smith normal form of an integer matrix, with both transforms.

    ``n_cols`` is only needed when ``a`` has no rows.
    """
    d = [[int(x) for x in row] for row in a]
    m = len(d)
    nc = len(d[0]) if m else (n_cols or 0)
    U = _identity(m)
    V = _identity(nc)

    def row_add(dst, src, k):
        d[dst] = [x + k * y for x, y in zip(d[dst], d[src])]
        U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def col_add(dst, src, k):
        for M in (d, V):
            for row in M:
                row[dst] += k * row[src]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (d, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(m, nc):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, nc):
                    x = d[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = d[t][t]
            dirty = False
            for i in range(t + 1, m):
                if d[i][t]:
                    row_add(i, t, -(d[i][t] // p))
                    dirty |= d[i][t] != 0
            for j in range(t + 1, nc):
                if d[t][j]:
                    col_add(j, t, -(d[t][j] // p))
                    dirty |= d[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, nc) if d[i][j] % p), None)
            if bad is not None:
                row_add(t, bad, 1)
                continue
            break
        if best is None:
            break
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            U[t] = [-x for x in U[t]]
        t += 1

    as_t = lambda M: tuple(tuple(r) for r in M)  # noqa: E731
    return SnfResult(as_t(U), as_t(d), as_t(V))


def snf_nullspace_mod(res: SnfResult, n: int) -> SolutionSampler:
    """Solutions of A v = 0 (mod n) as v = V w.

    w_i ranges over multiples of n / gcd(d_i, n) for the nonzero invariant
    factors and over all of Z_n otherwise, so the count is
    n^(cols - r) * prod(gcd(d_i, n)).
    """
    if n < 2:
        raise ValueError(f"modulus must be >= 2, got {n}")
    V = res.V
    nc = len(V)
    factors = res.invariant_factors
    gens, orders = [], []
    for i in range(nc):
        col = [V[k][i] for k in range(nc)]
        if i < len(factors):
            g = math.gcd(factors[i], n)
            if g == 1:
                continue
            step = n // g
            gens.append(tuple(step * x % n for x in col))
            orders.append(g)
        else:
            gens.append(tuple(x % n for x in col))
            orders.append(n)
    return SolutionSampler(n, nc, tuple(gens), tuple(orders))


def snf_solution_count(res: SnfResult, n: int) -> int:
    free = len(res.V) - res.rank
    return n**free * math.prod(math.gcd(d, n) for d in res.invariant_factors)


def system_snf(sys: CongruenceSystem) -> SnfResult:
    return snf(sys.dense(), n_cols=sys.n_vars)


# ---------------------------------------------------------------------------
# Prime modulus
# ---------------------------------------------------------------------------


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def prime_field_nullspace(sys: CongruenceSystem) -> SolutionSampler:
    """Nullspace basis by Gauss-Jordan elimination over Z_p, p = sys.modulus prime."""
    p = sys.modulus
    if not is_prime(p):
        raise NotPrime(f"modulus {p} is not prime")
    a = [[x % p for x in row] for row in sys.dense()]
    m, nc = len(a), sys.n_vars
    pivots = []
    r = 0
    for c in range(nc):
        if r == m:
            break
        i = next((i for i in range(r, m) if a[i][c]), None)
        if i is None:
            continue
        a[r], a[i] = a[i], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                k = a[i][c]
                a[i] = [(x - k * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    pivset = set(pivots)
    gens = []
    for f in range(nc):
        if f in pivset:
            continue
        g = [0] * nc
        g[f] = 1
        for row, c in zip(a, pivots):
            g[c] = -row[f] % p
        gens.append(tuple(g))
    return SolutionSampler(p, nc, tuple(gens), (p,) * len(gens))


# ---------------------------------------------------------------------------
# Heuristic repair
# ---------------------------------------------------------------------------


def heuristic_solve(sys: CongruenceSystem, seed=None, max_iters: int = 1000) -> list[int]:
    """Randomized repair starting from uniform random residues.

    Each step picks an unsatisfied row uniformly, picks one of its variables
    uniformly, and sets that variable to the unique value satisfying the row.
    ``max_iters`` counts sweeps of ``n_rows`` updates each.

    Raises
    ------
    Timeout
        If rows are still unsatisfied after the budget.  This says nothing
        about feasibility.
    """
    n = sys.modulus
    rng = _rng(seed)
    v = [int(x) for x in rng.integers(0, n, size=sys.n_vars)]
    rows = sys.coeffs
    fixable = []
    for r, row in enumerate(rows):
        terms = [(k, c) for k, c in row if math.gcd(c, n) == 1]
        if not terms and row:
            raise ValueError(f"row {r} has no invertible coefficient mod {n}")
        fixable.append(terms)
    touching: list[list[int]] = [[] for _ in range(sys.n_vars)]
    for r, row in enumerate(rows):
        for k, _ in row:
            touching[k].append(r)

    def residual(r: int) -> int:
        return sum(c * v[k] for k, c in rows[r]) % n

    # unsatisfied rows kept in a list + position map for O(1) uniform picks
    bad: list[int] = []
    where: dict[int, int] = {}

    def mark(r: int, unsat: bool) -> None:
        if unsat and r not in where:
            where[r] = len(bad)
            bad.append(r)
        elif not unsat and r in where:
            pos = where.pop(r)
            last = bad.pop()
            if last != r:
                bad[pos] = last
                where[last] = pos

    for r in range(len(rows)):
        mark(r, residual(r) != 0)

    budget = max_iters * max(1, len(rows))
    steps = 0
    while bad:
        if steps >= budget:
            raise Timeout(f"{len(bad)} congruences unsatisfied after {steps} updates")
        r = bad[int(rng.integers(0, len(bad)))]
        k, c = fixable[r][int(rng.integers(0, len(fixable[r])))]
        rest = (residual(r) - c * v[k]) % n
        v[k] = -rest * pow(c, -1, n) % n
        for rr in touching[k]:
            mark(rr, residual(rr) != 0)
        steps += 1
    log.debug("heuristic converged after %d updates", steps)
    return v


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------


def make_sampler(
    sys: CongruenceSystem,
    solver: str = "eliminate",
    fallback: bool = True,
    trace: Callable[[str], None] | None = None,
) -> SolutionSampler:
    if solver == "eliminate":
        try:
            return unit_pivot_eliminate(sys, trace=trace).sampler()
        except NoUnitPivot as exc:
            if not fallback:
                raise
            log.info("%s; falling back to Smith normal form", exc)
            return snf_nullspace_mod(system_snf(sys), sys.modulus)
    if solver == "snf":
        return snf_nullspace_mod(system_snf(sys), sys.modulus)
    if solver == "prime-field":
        return prime_field_nullspace(sys)
    raise ValueError(f"no sampler for solver {solver!r}")


def solve(
    sys: CongruenceSystem,
    solver: str = "eliminate",
    seed=None,
    *,
    fallback: bool = True,
    max_iters: int = 1000,
    trace: Callable[[str], None] | None = None,
) -> list[int]:
    """One solution of ``sys`` by the named route, drawn with ``seed``."""
    if solver not in SOLVERS:
        raise ValueError(f"unknown solver {solver!r}; choose from {SOLVERS}")
    if solver == "heuristic":
        return heuristic_solve(sys, seed, max_iters)
    return list(make_sampler(sys, solver, fallback, trace).sample(seed))


__all__ = [
    "RowOp",
    "ReducedSystem",
    "SnfResult",
    "SolutionSampler",
    "SOLVERS",
    "heuristic_solve",
    "is_prime",
    "make_sampler",
    "prime_field_nullspace",
    "sample_solution",
    "snf",
    "snf_nullspace_mod",
    "snf_solution_count",
    "solve",
    "system_from_dense",
    "system_snf",
    "unit_pivot_eliminate",
]
