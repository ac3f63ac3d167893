"""Arithmetic in GF(2^n) over a polynomial basis.

Field elements are plain ints: bit i holds the coefficient of alpha^i, where
alpha is the residue class of x modulo the field's irreducible polynomial.
Addition is XOR. Multiplication goes through log/exp tables for small fields
and through a carryless multiply-and-reduce otherwise.

Vectorised variants (``mul_array`` and friends) operate on int64 numpy arrays
and are what the scanning deciders and the dense linear algebra build on.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityExceeded, LengthMismatch, ZeroInverse

MAX_N = 30

# Scalar lookups use Python lists (fast indexing), vector lookups numpy arrays.
_PY_TABLE_MAX_N = 16
_NP_TABLE_MAX_N = 20


# ---------- GF(2)[x] on ints


def clmul(a: int, b: int) -> int:
    """Carryless product of two bit-packed GF(2) polynomials."""
    if a < b:
        a, b = b, a
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def gf2_mod(a: int, m: int) -> int:
    dm = m.bit_length()
    while True:
        la = a.bit_length()
        if la < dm:
            return a
        a ^= m << (la - dm)


def gf2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, gf2_mod(a, b)
    return a


def is_irreducible(m: int) -> bool:
    """Ben-Or test: no factor of degree k <= n/2, and x^(2^n) = x mod m."""
    n = m.bit_length() - 1
    if n < 1:
        return False
    x = gf2_mod(2, m)
    t = x
    for k in range(1, n + 1):
        t = gf2_mod(clmul(t, t), m)
        if k <= n // 2 and gf2_gcd(t ^ x, m) != 1:
            return False
    return t == x


def _prime_factors(v: int) -> list[int]:
    out = []
    p = 2
    while p * p <= v:
        if v % p == 0:
            out.append(p)
            while v % p == 0:
                v //= p
        p += 1
    if v > 1:
        out.append(v)
    return out


# ---------- field description


@dataclass(frozen=True)
class FieldSpec:
    """GF(2^n) given by an explicit irreducible modulus of degree n."""

    n: int
    modulus: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise CapacityExceeded(f"field degree {self.n} outside 1..{MAX_N}")
        if self.modulus.bit_length() != self.n + 1:
            raise ValueError(f"modulus {self.modulus:#x} does not have degree {self.n}")
        if not is_irreducible(self.modulus):
            raise ValueError(f"modulus {self.modulus:#x} is reducible")

    @property
    def size(self) -> int:
        return 1 << self.n

    @property
    def units(self) -> int:
        """Order of the multiplicative group, 2^n - 1."""
        return (1 << self.n) - 1

    @property
    def mask(self) -> int:
        return (1 << self.n) - 1

    def __repr__(self):
        return f"FieldSpec(n={self.n}, modulus={self.modulus:#x})"

    @cached_property
    def generator(self) -> int:
        """Smallest primitive element (used only to build lookup tables)."""
        q = _prime_factors(self.units) if self.units > 1 else []
        for g in range(1, self.size):
            if all(_pow_slow(self, g, self.units // p) != 1 for p in q):
                return g
        raise AssertionError("multiplicative group has no generator")

    @cached_property
    def _np_tables(self):
        if self.n > _NP_TABLE_MAX_N:
            return None
        g = self.generator
        N = self.units
        exp = np.empty(N, dtype=np.int64)
        exp[0] = 1
        filled, gl = 1, g
        while filled < N:
            take = min(filled, N - filled)
            exp[filled : filled + take] = _mul_array_bitwise(self, exp[:take], gl)
            filled += take
            gl = _mul_slow(self, gl, gl)
        log = np.zeros(self.size, dtype=np.int64)
        log[exp] = np.arange(N, dtype=np.int64)
        return np.concatenate([exp, exp]), log

    @cached_property
    def _py_tables(self):
        if self.n > _PY_TABLE_MAX_N:
            return None
        exp, log = self._np_tables
        return exp.tolist(), log.tolist()


def _mul_slow(spec: FieldSpec, a: int, b: int) -> int:
    return gf2_mod(clmul(a, b), spec.modulus)


def _pow_slow(spec: FieldSpec, a: int, e: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = _mul_slow(spec, r, a)
        a = _mul_slow(spec, a, a)
        e >>= 1
    return r


@lru_cache(maxsize=None)
def default_modulus(n: int) -> FieldSpec:
    """Field spec with the lexicographically smallest irreducible of degree n."""
    if not 1 <= n <= MAX_N:
        raise CapacityExceeded(f"field degree {n} outside 1..{MAX_N}")
    for m in range(1 << n, 1 << (n + 1)):
        if is_irreducible(m):
            return FieldSpec(n, m)
    raise AssertionError(f"no irreducible polynomial of degree {n}")


# ---------- scalar arithmetic


def fe_add(a: int, b: int) -> int:
    return a ^ b


def fe_mul(spec: FieldSpec, a: int, b: int) -> int:
    tables = spec._py_tables
    if tables is not None:
        if a == 0 or b == 0:
            return 0
        exp, log = tables
        return exp[log[a] + log[b]]
    return gf2_mod(clmul(a, b), spec.modulus)


def fe_pow(spec: FieldSpec, a: int, e: int) -> int:
    if e < 0:
        a, e = fe_inv(spec, a), -e
    if a == 0:
        return 1 if e == 0 else 0
    tables = spec._py_tables
    if tables is not None:
        exp, log = tables
        return exp[(log[a] * e) % spec.units]
    return _pow_slow(spec, a, e % spec.units)


def fe_inv(spec: FieldSpec, a: int) -> int:
    if a == 0:
        raise ZeroInverse("0 has no inverse")
    tables = spec._py_tables
    if tables is not None:
        exp, log = tables
        return exp[(spec.units - log[a]) % spec.units]
    return _pow_slow(spec, a, spec.units - 1)


def fe_div(spec: FieldSpec, a: int, b: int) -> int:
    return fe_mul(spec, a, fe_inv(spec, b))


def fe_frobenius(spec: FieldSpec, a: int, i: int) -> int:
    """a^(2^i); the Frobenius map has order n so i is reduced first."""
    for _ in range(i % spec.n):
        a = fe_mul(spec, a, a)
    return a


def enumerate_nonzero(spec: FieldSpec) -> range:
    return range(1, spec.size)


def fe_to_hex(a: int) -> str:
    return hex(a)


def fe_from_hex(spec: FieldSpec, text: str) -> int:
    v = int(text, 16)
    if v < 0 or v >= spec.size:
        raise ValueError(f"{text} is not an element of GF(2^{spec.n})")
    return v


# ---------- bit-vector identification


def _bits(v: str | Sequence[int]) -> list[int]:
    if isinstance(v, str):
        if set(v) - {"0", "1"}:
            raise ValueError(f"not a bit string: {v!r}")
        return [int(ch) for ch in v]
    return [int(b) & 1 for b in v]


def lift_bits(spec: FieldSpec, v: str | Sequence[int]) -> int:
    """Field element sum v_k alpha^(k-1); missing trailing bits read as 0."""
    bits = _bits(v)
    if len(bits) > spec.n:
        raise LengthMismatch(f"{len(bits)} bits do not fit GF(2^{spec.n})")
    return sum(b << k for k, b in enumerate(bits))


def unlift_bits(spec: FieldSpec, u: int, length: int | None = None) -> str:
    length = spec.n if length is None else length
    return "".join(str((u >> k) & 1) for k in range(length))


# ---------- vectorised arithmetic


def _mul_array_bitwise(spec: FieldSpec, a, b) -> np.ndarray:
    a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
    n = spec.n
    acc = np.zeros(a.shape, dtype=np.int64)
    for k in range(n):
        acc ^= (a << k) * ((b >> k) & 1)
    for k in range(2 * n - 2, n - 1, -1):
        acc ^= ((acc >> k) & 1) * (spec.modulus << (k - n))
    return acc


def mul_array(spec: FieldSpec, a, b) -> np.ndarray:
    """Elementwise product of broadcastable arrays of field elements."""
    tables = spec._np_tables
    if tables is None:
        return _mul_array_bitwise(spec, a, b)
    exp, log = tables
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    out = exp[log[a] + log[b]]
    return np.where((a == 0) | (b == 0), 0, out)


def square_array(spec: FieldSpec, a) -> np.ndarray:
    return mul_array(spec, a, a)


def inv_array(spec: FieldSpec, a) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    if np.any(a == 0):
        raise ZeroInverse("0 has no inverse")
    tables = spec._np_tables
    if tables is not None:
        exp, log = tables
        return exp[(spec.units - log[a]) % spec.units]
    return np.array([fe_inv(spec, int(x)) for x in a.ravel()], dtype=np.int64).reshape(a.shape)


def frobenius_ladder(spec: FieldSpec, u) -> list[np.ndarray]:
    """[u, u^2, u^4, ..., u^(2^(n-1))] for an array of elements."""
    ladder = [np.asarray(u, dtype=np.int64)]
    for _ in range(spec.n - 1):
        ladder.append(square_array(spec, ladder[-1]))
    return ladder


def iter_chunks(start: int, stop: int, size: int = 1 << 18) -> Iterable[np.ndarray]:
    for lo in range(start, stop, size):
        yield np.arange(lo, min(stop, lo + size), dtype=np.int64)
