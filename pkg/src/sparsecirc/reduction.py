"""From pseudoquadratic roots to sparse circulant singularity.

``sc_from_pq`` is the production path: it writes P's exponents straight into
first-row positions. The explicit Sylvester construction and its column
surgery exist to witness that path at toy sizes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .circulant import (
    SparseCirculant,
    sc_singular_eigscan,
    sc_singular_gauss,
    sc_singular_gcd,
)
from .densealg import DenseMatrix, DensePoly
from .errors import CapacityExceeded, DegreeOutOfRange, ZeroConstantTerm
from .gf2n import default_modulus
from .mq import QuadraticSystem, mq_brute_solutions, mq_square
from .pq import PseudoQuadratic, pq_from_mq, pq_root_scan

SYLVESTER_MAX_N = 4
CHAIN_MAX_SIZE = 8


@dataclass(frozen=True)
class ReductionOutcome:
    """Either a trivial 'has root 0' verdict or an SC instance."""

    instance: SparseCirculant | None = None
    trivial_reason: str | None = None

    @property
    def trivially_singular(self) -> bool:
        return self.trivial_reason is not None


def sc_from_pq(P: PseudoQuadratic) -> ReductionOutcome:
    """SC instance singular iff P has a root in GF(2^n)*.

    Exponents are reduced mod N = 2^n - 1, which is the identity for n >= 3;
    for n <= 2 the top exponent N coincides with x^0 on the unit group.
    """
    emap = P.canonical()
    if not emap:
        return ReductionOutcome(trivial_reason="zero-polynomial")
    if emap.get(0, 0) == 0:
        return ReductionOutcome(trivial_reason="zero-constant-term")
    N = P.spec.units
    entries: dict[int, int] = {}
    for e, v in emap.items():
        p = e % N
        entries[p] = entries.get(p, 0) ^ v
    return ReductionOutcome(instance=SparseCirculant(P.spec, entries))


# ---------- explicit Sylvester path (toy sizes only)


def sylvester_matrix(p: DensePoly, n: int) -> DenseMatrix:
    """Sylvester matrix of x^(2^n) + x and p, size (2^n + k) with k = deg p.

    Rows 0..k-1 carry shifts of x^(2^n) + x, the remaining 2^n rows shifts of p,
    coefficients written from the highest power down.
    """
    if n > SYLVESTER_MAX_N:
        raise CapacityExceeded(f"explicit Sylvester matrix limited to n <= {SYLVESTER_MAX_N}")
    if p.spec.n != n:
        raise ValueError("polynomial is not over GF(2^n)")
    q = 1 << n
    k = p.degree
    if not 1 <= k < q:
        raise DegreeOutOfRange(f"need 1 <= deg p < {q}, got {k}")
    size = q + k
    a = np.zeros((size, size), dtype=np.int64)
    for r in range(k):
        a[r, r] = 1
        a[r, r + q - 1] = 1
    desc = np.array(p.coeffs[::-1], dtype=np.int64)
    for s in range(q):
        a[k + s, s : s + k + 1] = desc
    return DenseMatrix.from_array(p.spec, a)


def surgery_stages(syl: DenseMatrix, p: DensePoly, n: int) -> list[DenseMatrix]:
    """Intermediate matrices: last row/column erased, columns added, block cut.

    Column c (c < k) is added into column c + 2^n - 1, which cancels the x-term
    entries of the first k rows and leaves them as unit rows.
    """
    if p.coeff(0) == 0:
        raise ZeroConstantTerm("constant term of p must be nonzero")
    q = 1 << n
    k = p.degree
    a = syl.array()
    if a.shape != (q + k, q + k):
        raise ValueError("matrix does not match the Sylvester layout for p")
    erased = a[:-1, :-1].copy()
    added = erased.copy()
    for c in range(k):
        added[:, c + q - 1] ^= added[:, c]
    block = added[k:, k:].copy()
    spec = syl.spec
    return [DenseMatrix.from_array(spec, m) for m in (erased, added, block)]


def sylvester_to_circulant(syl: DenseMatrix, p: DensePoly, n: int) -> DenseMatrix:
    return surgery_stages(syl, p, n)[-1]


# ---------- equivalence harness


@dataclass
class ChainReport:
    mq_solvable: bool
    pq_root: int | None
    sc_trivial: str | None
    sc_decisions: dict[str, bool] = field(default_factory=dict)

    @property
    def pq_has_root(self) -> bool:
        return self.pq_root is not None

    @property
    def sc_singular(self) -> dict[str, bool]:
        if self.sc_trivial is not None:
            return {"trivial": True}
        return self.sc_decisions

    @property
    def agree(self) -> bool:
        vals = {self.mq_solvable, self.pq_has_root, *self.sc_singular.values()}
        return len(vals) == 1

    def dump(self) -> str:
        return (
            f"mq_solvable={self.mq_solvable} pq_root={self.pq_root} "
            f"sc_trivial={self.sc_trivial} sc={self.sc_decisions}"
        )


def chain_check(S: QuadraticSystem, seed: int = 0, square_mode: str = "repeat-last") -> ChainReport:
    """Evaluate MQ solvability, PQ root existence and SC singularity side by side."""
    size = max(len(S.equations), len(S.free_vars))
    if size > CHAIN_MAX_SIZE:
        raise CapacityExceeded(f"full chain limited to max(m, n) <= {CHAIN_MAX_SIZE}")
    mq_ok = bool(mq_brute_solutions(S))
    if size == 0:
        return ChainReport(mq_ok, 0, "zero-polynomial")
    sq, _ = mq_square(S, square_mode)
    P = pq_from_mq(sq, default_modulus(sq.n_vars), seed)
    root = pq_root_scan(P)
    out = sc_from_pq(P)
    if out.trivially_singular:
        return ChainReport(mq_ok, root, out.trivial_reason)
    M = out.instance
    decisions = {
        "eig": sc_singular_eigscan(M).singular,
        "gauss": sc_singular_gauss(M).singular,
        "gcd": sc_singular_gcd(M).singular,
    }
    return ChainReport(mq_ok, root, None, decisions)
