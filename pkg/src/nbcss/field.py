"""Table-based arithmetic in GF(2^m).

Elements are plain ints holding the polynomial-basis bitmask (bit k is the
coefficient of x^k).  The primitive element is always ``alpha = x``, so
``exp_table[k]`` is x^k reduced modulo the field polynomial.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field as dc_field

from .errors import BadDegree, FieldMismatch, LogOfZero, NotPrimitive

MIN_DEGREE = 2
MAX_DEGREE = 16

# One primitive polynomial per degree (bitmask, bit k = coefficient of x^k).
# Each entry is re-checked for primitivity whenever a field is built.
DEFAULT_POLYS: dict[int, int] = {
    2: 0x7,  # x^2 + x + 1
    3: 0xB,  # x^3 + x + 1
    4: 0x13,  # x^4 + x + 1
    5: 0x25,  # x^5 + x^2 + 1
    6: 0x43,  # x^6 + x + 1
    7: 0x89,  # x^7 + x^3 + 1
    8: 0x11D,  # x^8 + x^4 + x^3 + x^2 + 1
    9: 0x211,  # x^9 + x^4 + 1
    10: 0x409,  # x^10 + x^3 + 1
    11: 0x805,  # x^11 + x^2 + 1
    12: 0x1053,  # x^12 + x^6 + x^4 + x + 1
    13: 0x201B,  # x^13 + x^4 + x^3 + x + 1
    14: 0x4443,  # x^14 + x^10 + x^6 + x + 1
    15: 0x8003,  # x^15 + x + 1
    16: 0x1100B,  # x^16 + x^12 + x^3 + x + 1
}


def poly_str(poly: int) -> str:
    """Render a bitmask polynomial as ``x^8 + x^4 + ... + 1``."""
    terms = []
    for k in range(poly.bit_length() - 1, -1, -1):
        if poly >> k & 1:
            terms.append("1" if k == 0 else "x" if k == 1 else f"x^{k}")
    return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class FieldSpec:
    """GF(2^m) with primitive element x under ``poly``.

    Build instances with :func:`make_field`; the tables are filled there.
    """

    m: int
    poly: int
    exp_table: tuple[int, ...] = dc_field(repr=False, compare=False)
    log_table: tuple[int, ...] = dc_field(repr=False, compare=False)

    @property
    def order(self) -> int:
        return 1 << self.m

    @property
    def q(self) -> int:
        return 1 << self.m

    @property
    def modulus(self) -> int:
        """Order of the multiplicative group, q - 1."""
        return (1 << self.m) - 1

    @property
    def alpha(self) -> int:
        return self.exp_table[1]

    def __str__(self) -> str:
        return f"GF(2^{self.m}) poly={self.poly:#x}"

    def check(self, *elements: int) -> None:
        for a in elements:
            if not 0 <= a < self.order:
                raise ValueError(f"{a!r} is not an element of {self}")

    def add(self, a: int, b: int) -> int:
        return a ^ b

    # subtraction is addition in characteristic 2
    sub = add

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp_table[(self.log_table[a] + self.log_table[b]) % self.modulus]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.exp_table[-self.log_table[a] % self.modulus]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if k == 0 else 0
        return self.exp_table[self.log_table[a] * k % self.modulus]

    def alpha_pow(self, k: int) -> int:
        """alpha^k, with k reduced mod q - 1 (negative k allowed)."""
        return self.exp_table[k % self.modulus]

    def dlog(self, a: int) -> int:
        """Exponent k in [0, q-2] with alpha^k = a."""
        if a == 0:
            raise LogOfZero("discrete log of 0 is undefined")
        self.check(a)
        return self.log_table[a]

    def dot(self, xs, ys) -> int:
        acc = 0
        for a, b in zip(xs, ys):
            acc ^= self.mul(a, b)
        return acc


def _tables(m: int, poly: int) -> tuple[list[int], list[int]]:
    q = 1 << m
    exp = [0] * (q - 1)
    log = [0] * q
    a = 1
    for k in range(q - 1):
        if k > 0 and a == 1:
            raise NotPrimitive(f"x has order {k} < {q - 1} modulo {poly:#x}")
        exp[k] = a
        log[a] = k
        a <<= 1
        if a & q:
            a ^= poly
    if a != 1:
        # x^(q-1) != 1 means poly is reducible with x a zero divisor or worse
        raise NotPrimitive(f"x^{q - 1} != 1 modulo {poly:#x}")
    return exp, log


@functools.lru_cache(maxsize=None)
def make_field(m: int, poly: int | None = None) -> FieldSpec:
    """Build GF(2^m) with exp/log tables for the primitive element x.

    Parameters
    ----------
    m : int
        Extension degree, 2 <= m <= 16.
    poly : int, optional
        Field polynomial as a bitmask including the x^m term.  Defaults to
        ``DEFAULT_POLYS[m]``.

    Raises
    ------
    BadDegree
        If m is out of range or ``poly`` does not have degree m.
    NotPrimitive
        If x does not generate the multiplicative group modulo ``poly``.
    """
    if not isinstance(m, int) or not MIN_DEGREE <= m <= MAX_DEGREE:
        raise BadDegree(f"degree must be in [{MIN_DEGREE}, {MAX_DEGREE}], got {m!r}")
    if poly is None:
        poly = DEFAULT_POLYS[m]
    if poly.bit_length() - 1 != m:
        raise BadDegree(f"polynomial {poly:#x} does not have degree {m}")
    if not poly & 1:
        raise NotPrimitive(f"polynomial {poly:#x} is divisible by x")
    exp, log = _tables(m, poly)
    return FieldSpec(m=m, poly=poly, exp_table=tuple(exp), log_table=tuple(log))


def same_field(a: FieldSpec, b: FieldSpec) -> None:
    if (a.m, a.poly) != (b.m, b.poly):
        raise FieldMismatch(f"{a} vs {b}")
