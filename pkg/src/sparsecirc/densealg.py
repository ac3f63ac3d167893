"""Dense univariate polynomials and dense matrices over GF(2^n).

This is the explicit, brute-force layer: everything here materialises full
coefficient vectors or full matrices. Heavy loops are vectorised with numpy
through :func:`gf2n.mul_array`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import BothZero, DegreeZeroModulus, NotSquare
from .gf2n import FieldSpec, fe_inv, fe_mul, mul_array, square_array


# ---------- polynomials


@dataclass(frozen=True)
class DensePoly:
    """Polynomial with coefficient list indexed by exponent (no trailing zeros)."""

    spec: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        k = len(c)
        while k and c[k - 1] == 0:
            k -= 1
        object.__setattr__(self, "coeffs", c[:k])

    @classmethod
    def from_array(cls, spec: FieldSpec, arr) -> "DensePoly":
        return cls(spec, tuple(np.asarray(arr, dtype=np.int64).tolist()))

    @classmethod
    def monomial(cls, spec: FieldSpec, e: int, c: int = 1) -> "DensePoly":
        return cls(spec, (0,) * e + (c,))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, e: int) -> int:
        return self.coeffs[e] if 0 <= e < len(self.coeffs) else 0

    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def __add__(self, other: "DensePoly") -> "DensePoly":
        return poly_add(self, other)

    def __mul__(self, other: "DensePoly") -> "DensePoly":
        return poly_mul(self, other)


def poly_add(p: DensePoly, q: DensePoly) -> DensePoly:
    a, b = p.coeffs, q.coeffs
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] ^= c
    return DensePoly(p.spec, tuple(out))


def poly_scale(p: DensePoly, c: int) -> DensePoly:
    if not p.coeffs:
        return p
    return DensePoly.from_array(p.spec, mul_array(p.spec, p.array(), c))


def poly_mul(p: DensePoly, q: DensePoly) -> DensePoly:
    """Schoolbook product, one vectorised row per coefficient of the shorter factor."""
    spec = p.spec
    if p.is_zero() or q.is_zero():
        return DensePoly(spec, ())
    if len(p.coeffs) < len(q.coeffs):
        p, q = q, p
    a = p.array()
    out = np.zeros(len(p.coeffs) + len(q.coeffs) - 1, dtype=np.int64)
    for i, c in enumerate(q.coeffs):
        if c:
            out[i : i + len(a)] ^= mul_array(spec, a, c)
    return DensePoly.from_array(spec, out)


def _mod_inplace(spec: FieldSpec, a: np.ndarray, m: np.ndarray, quotient: np.ndarray | None = None) -> np.ndarray:
    """Reduce coefficient array ``a`` modulo ``m`` (no trailing zeros in m)."""
    dm = len(m) - 1
    inv_lead = fe_inv(spec, int(m[-1]))
    mm = m[:-1]
    for i in range(len(a) - 1, dm - 1, -1):
        c = int(a[i])
        if not c:
            continue
        f = fe_mul(spec, c, inv_lead)
        if quotient is not None:
            quotient[i - dm] = f
        a[i] = 0
        if dm:
            a[i - dm : i] ^= mul_array(spec, mm, f)
    return a[:dm] if dm else a[:0]


def poly_divmod(p: DensePoly, m: DensePoly) -> tuple[DensePoly, DensePoly]:
    if m.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    spec = p.spec
    if p.degree < m.degree:
        return DensePoly(spec, ()), p
    q = np.zeros(p.degree - m.degree + 1, dtype=np.int64)
    r = _mod_inplace(spec, p.array(), m.array(), q)
    return DensePoly.from_array(spec, q), DensePoly.from_array(spec, r)


def poly_mod(p: DensePoly, m: DensePoly) -> DensePoly:
    if m.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if p.degree < m.degree:
        return p
    return DensePoly.from_array(p.spec, _mod_inplace(p.spec, p.array(), m.array()))


def poly_monic(p: DensePoly) -> DensePoly:
    if p.is_zero() or p.lead == 1:
        return p
    return poly_scale(p, fe_inv(p.spec, p.lead))


def poly_gcd(p: DensePoly, q: DensePoly) -> DensePoly:
    """Monic gcd by Euclid's algorithm."""
    if p.is_zero() and q.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    spec = p.spec
    a, b = p.array(), q.array()
    while len(b):
        r = _mod_inplace(spec, a.copy(), b)
        k = len(r)
        while k and r[k - 1] == 0:
            k -= 1
        a, b = b, r[:k]
    return poly_monic(DensePoly.from_array(spec, a))


def poly_eval(p: DensePoly, u: int) -> int:
    """Horner evaluation."""
    acc = 0
    for c in reversed(p.coeffs):
        acc = fe_mul(p.spec, acc, u) ^ c
    return acc


def _square_mod(spec: FieldSpec, a: np.ndarray, m: np.ndarray) -> np.ndarray:
    # char 2: (sum c_i x^i)^2 = sum c_i^2 x^(2i)
    sq = np.zeros(2 * len(a) - 1 if len(a) else 0, dtype=np.int64)
    sq[::2] = square_array(spec, a)
    return _mod_inplace(spec, sq, m)


def _times_x_mod(spec: FieldSpec, a: np.ndarray, m: np.ndarray) -> np.ndarray:
    return _mod_inplace(spec, np.concatenate([[0], a]).astype(np.int64), m)


def _check_modulus(m: DensePoly):
    if m.degree < 1:
        raise DegreeZeroModulus("modulus must have degree >= 1")


def poly_powmod_x(spec: FieldSpec, e_log2: int, m: DensePoly) -> DensePoly:
    """x^(2^k) mod m by k squarings."""
    _check_modulus(m)
    marr = m.array()
    a = _mod_inplace(spec, np.array([0, 1], dtype=np.int64), marr)
    for _ in range(e_log2):
        a = _square_mod(spec, a, marr)
    return DensePoly.from_array(spec, a)


def poly_powmod_x_int(spec: FieldSpec, e: int, m: DensePoly) -> DensePoly:
    """x^e mod m by left-to-right square-and-multiply."""
    _check_modulus(m)
    marr = m.array()
    a = _mod_inplace(spec, np.array([1], dtype=np.int64), marr)
    for bit in bin(e)[2:] if e else "":
        a = _square_mod(spec, a, marr)
        if bit == "1":
            a = _times_x_mod(spec, a, marr)
    return DensePoly.from_array(spec, a)


# ---------- matrices


@dataclass(frozen=True)
class DenseMatrix:
    spec: FieldSpec
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")

    @classmethod
    def from_array(cls, spec: FieldSpec, arr) -> "DenseMatrix":
        arr = np.asarray(arr, dtype=np.int64)
        return cls(spec, arr.shape[0], arr.shape[1], tuple(arr.ravel().tolist()))

    @classmethod
    def from_rows(cls, spec: FieldSpec, rows: Sequence[Sequence[int]]) -> "DenseMatrix":
        return cls.from_array(spec, np.array(rows, dtype=np.int64))

    @classmethod
    def identity(cls, spec: FieldSpec, size: int) -> "DenseMatrix":
        return cls.from_array(spec, np.eye(size, dtype=np.int64))

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def format_grid(self) -> str:
        width = max(len(f"{x:x}") for x in self.entries)
        return "\n".join(
            " ".join(f"{self[i, j]:>{width}x}" for j in range(self.cols)) for i in range(self.rows)
        )


def mat_mul(A: DenseMatrix, B: DenseMatrix) -> DenseMatrix:
    if A.cols != B.rows:
        raise ValueError("inner dimensions differ")
    spec = A.spec
    a, b = A.array(), B.array()
    out = np.zeros((A.rows, B.cols), dtype=np.int64)
    for k in range(A.cols):
        out ^= mul_array(spec, a[:, k : k + 1], b[k : k + 1, :])
    return DenseMatrix.from_array(spec, out)


def det_array(spec: FieldSpec, a: np.ndarray) -> int:
    """Determinant of a square int64 array by Gaussian elimination.

    Pivot = topmost nonzero entry in the current column. Row swaps need no
    sign correction in characteristic 2.
    """
    a = np.array(a, dtype=np.int64)
    size = a.shape[0]
    det = 1
    for c in range(size):
        nz = np.flatnonzero(a[c:, c])
        if nz.size == 0:
            return 0
        r = c + int(nz[0])
        if r != c:
            a[[c, r]] = a[[r, c]]
        piv = int(a[c, c])
        det = fe_mul(spec, det, piv)
        below = a[c + 1 :, c]
        if below.any():
            f = mul_array(spec, below, fe_inv(spec, piv))
            a[c + 1 :, c:] ^= mul_array(spec, f[:, None], a[c, c:][None, :])
    return det


def mat_det(M: DenseMatrix) -> int:
    if M.rows != M.cols:
        raise NotSquare(f"{M.rows}x{M.cols} matrix has no determinant")
    return det_array(M.spec, M.array())


def solve_array(spec: FieldSpec, a: np.ndarray, y: np.ndarray) -> np.ndarray | None:
    """Solve a x = y for a with at least as many rows as columns.

    Pivots are taken from the first usable row at or below the diagonal, so a
    tall matrix selects its own independent rows. None when a has deficient
    column rank or the extra rows are inconsistent with the solution.
    """
    a = np.array(a, dtype=np.int64)
    y = np.array(y, dtype=np.int64)
    rows, size = a.shape
    if rows < size:
        raise ValueError(f"need at least {size} rows, got {rows}")
    for c in range(size):
        nz = np.flatnonzero(a[c:, c])
        if nz.size == 0:
            return None
        r = c + int(nz[0])
        if r != c:
            a[[c, r]] = a[[r, c]]
            y[[c, r]] = y[[r, c]]
        inv = fe_inv(spec, int(a[c, c]))
        a[c, c:] = mul_array(spec, a[c, c:], inv)
        y[c] = fe_mul(spec, int(y[c]), inv)
        below = a[c + 1 :, c].copy()
        if below.any():
            a[c + 1 :, c:] ^= mul_array(spec, below[:, None], a[c, c:][None, :])
            y[c + 1 :] ^= mul_array(spec, below, int(y[c]))
    if y[size:].any():
        return None
    x = y[:size]
    for c in range(size - 1, 0, -1):
        col = a[:c, c]
        if x[c] and col.any():
            x[:c] ^= mul_array(spec, col, int(x[c]))
    return x
