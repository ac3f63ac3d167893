"""Sparse circulant matrices of size (2^n - 1) held by their first row.

Entries live at positions 0, 1 and 2^i + 2^j (at most 2^n - 2). The first row
r defines two equivalent matrices:

* symmetric convention: a[i][j] = r[(i + j) mod N]
* standard convention:  b[i][j] = r[(j - i) mod N]

They differ by the column permutation j -> -j, so in characteristic 2 their
determinants coincide. The standard one has eigenvectors (1, u, u^2, ...) for
every u in GF(2^n)*, with eigenvalue R(u) = sum_p r_p u^p; that is what the
scanning decider exploits.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Mapping, Sequence

import numpy as np

from .densealg import DenseMatrix, DensePoly, det_array, poly_gcd, poly_powmod_x_int
from .errors import CapacityExceeded, TooManyEntries, ZeroF, ZeroWitness
from .gf2n import FieldSpec, fe_div, fe_pow, iter_chunks, mul_array
from .pq import sparse_eval, sparse_eval_array

MATERIALIZE_MAX_N = 8
GAUSS_MAX_N = 8
GCD_MAX_N = 12
EIG_MAX_N = 24
FIRST_ROW_DENSE_MAX_N = 14
F_CIRCULANT_MAX = 255


@lru_cache(maxsize=None)
def valid_positions(n: int) -> frozenset[int]:
    top = (1 << n) - 2
    pos = {0, 1} | {(1 << i) + (1 << j) for i in range(n) for j in range(i, n)}
    return frozenset(p for p in pos if p <= top)


@dataclass(frozen=True, eq=False)
class SparseCirculant:
    spec: FieldSpec
    entries: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        allowed = valid_positions(self.spec.n)
        clean = {}
        for p, v in dict(self.entries).items():
            if p not in allowed:
                raise ValueError(f"position {p} is not a sparse-circulant position for n={self.spec.n}")
            if not 0 <= v < self.spec.size:
                raise ValueError(f"entry {v:#x} outside the field")
            if v:
                clean[p] = v
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    @property
    def dim(self) -> int:
        return self.spec.units

    def __eq__(self, other):
        if not isinstance(other, SparseCirculant):
            return NotImplemented
        return self.spec == other.spec and self.entries == other.entries

    def __hash__(self):
        return hash((self.spec, tuple(self.entries.items())))


@dataclass(frozen=True)
class Decision:
    singular: bool
    witness: int | None = None
    algorithm: str = ""

    def __str__(self):
        if not self.singular:
            return "NONSINGULAR"
        if self.witness is None:
            return "SINGULAR"
        return f"SINGULAR witness={self.witness:#x}"


def first_row(M: SparseCirculant) -> np.ndarray:
    row = np.zeros(M.dim, dtype=np.int64)
    for p, v in M.entries.items():
        row[p] = v
    return row


def sc_materialize(M: SparseCirculant, convention: str = "standard") -> DenseMatrix:
    if M.spec.n > MATERIALIZE_MAX_N:
        raise CapacityExceeded(f"materialisation needs n <= {MATERIALIZE_MAX_N}")
    N = M.dim
    row = first_row(M)
    i = np.arange(N)[:, None]
    j = np.arange(N)[None, :]
    if convention == "symmetric":
        idx = (i + j) % N
    elif convention == "standard":
        idx = (j - i) % N
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return DenseMatrix.from_array(M.spec, row[idx])


def f_circulant(spec: FieldSpec, c: Sequence[int], f: int, m: int, n: int) -> DenseMatrix:
    """m x n matrix z[i][j] = c[(i-j) mod m], scaled by f strictly above the diagonal."""
    if f == 0:
        raise ZeroF("f must be nonzero")
    if m > F_CIRCULANT_MAX or n > F_CIRCULANT_MAX:
        raise CapacityExceeded(f"f-circulant dimensions limited to {F_CIRCULANT_MAX}")
    c = np.asarray(c, dtype=np.int64)
    if len(c) != m:
        raise ValueError(f"column has length {len(c)}, expected {m}")
    i = np.arange(m)[:, None]
    j = np.arange(n)[None, :]
    z = c[(i - j) % m]
    upper = np.broadcast_to(i < j, z.shape)
    z = np.where(upper, mul_array(spec, z, f), z)
    return DenseMatrix.from_array(spec, z)


def sc_first_row_poly(M: SparseCirculant) -> DensePoly:
    if M.spec.n > FIRST_ROW_DENSE_MAX_N:
        raise CapacityExceeded(f"dense first-row polynomial needs n <= {FIRST_ROW_DENSE_MAX_N}")
    return DensePoly(M.spec, tuple(first_row(M).tolist()))


def sc_eval(M: SparseCirculant, u: int) -> int:
    """R(u) by sparse evaluation."""
    return sparse_eval(M.spec, M.entries, u)


# ---------- deciders


def sc_singular_eigscan(M: SparseCirculant) -> Decision:
    """Singular iff some nonzero u has R(u) = 0; witness = smallest such u."""
    spec = M.spec
    if spec.n > EIG_MAX_N:
        raise CapacityExceeded(f"eigenvalue scan needs n <= {EIG_MAX_N}")
    if not M.entries:
        return Decision(True, 1, "eig")
    for us in iter_chunks(1, spec.size):
        hits = np.flatnonzero(sparse_eval_array(spec, M.entries, us) == 0)
        if hits.size:
            return Decision(True, int(us[hits[0]]), "eig")
    return Decision(False, None, "eig")


def sc_singular_gauss(M: SparseCirculant) -> Decision:
    if M.spec.n > GAUSS_MAX_N:
        raise CapacityExceeded(f"Gaussian elimination needs n <= {GAUSS_MAX_N}")
    det = det_array(M.spec, sc_materialize(M, "standard").array())
    return Decision(det == 0, None, "gauss")


def sc_singular_gcd(M: SparseCirculant) -> Decision:
    """Singular iff gcd(R, x^N - 1) has positive degree."""
    spec = M.spec
    if spec.n > GCD_MAX_N:
        raise CapacityExceeded(f"gcd decider needs n <= {GCD_MAX_N}")
    R = sc_first_row_poly(M)
    if R.is_zero():
        return Decision(True, None, "gcd")
    if R.degree == 0:
        return Decision(False, None, "gcd")
    h = poly_powmod_x_int(spec, spec.units, R)
    h = h + DensePoly(spec, (1,))
    g = poly_gcd(R, h)
    return Decision(g.degree >= 1, None, "gcd")


def sc_singular_two_term(M: SparseCirculant) -> Decision:
    """O(n) decision for at most two nonzero entries.

    r_p u^p + r_q u^q = 0 with u != 0 means u^(q-p) = r_p / r_q, which has a
    solution in the cyclic group of order N iff (r_p / r_q)^(N / gcd(q-p, N)) = 1.
    """
    k = len(M.entries)
    if k > 2:
        raise TooManyEntries(f"{k} entries; two-term decider handles at most 2")
    if k == 0:
        return Decision(True, None, "two-term")
    if k == 1:
        return Decision(False, None, "two-term")
    spec = M.spec
    (p, rp), (q, rq) = sorted(M.entries.items())
    target = fe_div(spec, rp, rq)
    N = spec.units
    g = gcd(q - p, N)
    return Decision(fe_pow(spec, target, N // g) == 1, None, "two-term")


DECIDERS = {
    "eig": sc_singular_eigscan,
    "gauss": sc_singular_gauss,
    "gcd": sc_singular_gcd,
    "two-term": sc_singular_two_term,
}


def auto_decider(M: SparseCirculant) -> str:
    n = M.spec.n
    if len(M.entries) <= 2:
        return "two-term"
    if n <= GAUSS_MAX_N:
        return "gauss"
    if n <= GCD_MAX_N:
        return "gcd"
    if n <= EIG_MAX_N:
        return "eig"
    raise CapacityExceeded(f"no decider runs at n = {n}")


def sc_decide(M: SparseCirculant, alg: str = "auto") -> Decision:
    if alg == "auto":
        alg = auto_decider(M)
    try:
        fn = DECIDERS[alg]
    except KeyError:
        raise ValueError(f"unknown decider {alg!r}") from None
    return fn(M)


def sc_verify_root(M: SparseCirculant, u: int) -> bool:
    """Accept iff R(u) = 0 for a nonzero u; polynomial time at any n."""
    if u == 0:
        raise ZeroWitness("u = 0 certifies nothing about the circulant")
    if not 0 < u < M.spec.size:
        raise ValueError(f"{u:#x} is not an element of GF(2^{M.spec.n})")
    return sc_eval(M, u) == 0
