"""Pseudoquadratic univariate polynomials over GF(2^n).

A pseudoquadratic polynomial is

    P(x) = c + sum_i b_i x^(2^i) + sum_{i<=j} a_ij x^(2^i + 2^j)

with all indices in 0..n-1. In characteristic 2 several slots share an
exponent (b_i and a_{i-1,i-1} both sit on 2^i) and x^(2^n) = x on the field,
so equality is defined on the merged *canonical exponent map*.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

import numpy as np

from .densealg import DensePoly, solve_array
from .errors import CapacityExceeded, InterpolationFailed
from .gf2n import FieldSpec, fe_frobenius, fe_mul, frobenius_ladder, iter_chunks, mul_array
from .mq import QuadraticEquation, QuadraticSystem, mq_eval_packed

DENSE_MAX_N = 14
SCAN_MAX_N = 24
INTERPOLATION_ATTEMPTS = 32
_EXHAUSTIVE_CHECK_MAX_N = 10
_SPOT_CHECKS = 256
_OVERSAMPLE = 64


@lru_cache(maxsize=None)
def exponent_decomposition(n: int) -> dict[int, tuple[int, ...]]:
    """Canonical exponents of degree-n pseudoquadratics, with their ladder split.

    Maps e -> () for e = 0, (m,) for e = 2^m, (i, j) with i < j for
    e = 2^i + 2^j. These are exactly the exponents in [0, 2^n - 1] of binary
    weight at most 2.
    """
    out: dict[int, tuple[int, ...]] = {0: ()}
    for m in range(n):
        out[1 << m] = (m,)
    for i in range(n):
        for j in range(i + 1, n):
            out[(1 << i) + (1 << j)] = (i, j)
    return dict(sorted(out.items()))


def canonical_exponents(n: int) -> list[int]:
    return list(exponent_decomposition(n))


def term_bound(n: int) -> int:
    """Distinct canonical exponents: 1 + n(n+1)/2."""
    return 1 + n * (n + 1) // 2


def raw_term_bound(n: int) -> int:
    return 2 + n * (n + 1) // 2


@dataclass(frozen=True, eq=False)
class PseudoQuadratic:
    spec: FieldSpec
    c: int = 0
    b: tuple[int, ...] = ()
    a: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        n = self.spec.n
        b = tuple(self.b) + (0,) * (n - len(self.b))
        if len(b) != n:
            raise ValueError(f"expected {n} linear coefficients, got {len(self.b)}")
        a = {}
        for (i, j), v in dict(self.a).items():
            i, j = min(i, j), max(i, j)
            if not 0 <= i <= j < n:
                raise ValueError(f"quadratic index ({i}, {j}) outside 0..{n - 1}")
            if v:
                a[(i, j)] = a.get((i, j), 0) ^ v
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "a", {k: v for k, v in sorted(a.items()) if v})
        for v in (self.c, *self.b, *self.a.values()):
            if not 0 <= v < self.spec.size:
                raise ValueError(f"coefficient {v:#x} outside the field")

    @classmethod
    def from_exponent_map(cls, spec: FieldSpec, emap: Mapping[int, int]) -> "PseudoQuadratic":
        dec = exponent_decomposition(spec.n)
        c, b, a = 0, [0] * spec.n, {}
        for e, v in emap.items():
            if e not in dec:
                raise ValueError(f"exponent {e} is not pseudoquadratic for n={spec.n}")
            parts = dec[e]
            if not parts:
                c ^= v
            elif len(parts) == 1:
                b[parts[0]] ^= v
            else:
                a[parts] = a.get(parts, 0) ^ v
        return cls(spec, c, tuple(b), a)

    def raw_exponent_map(self) -> dict[int, int]:
        """Merged by exponent but without folding x^(2^n) into x."""
        out: dict[int, int] = {}

        def put(e, v):
            out[e] = out.get(e, 0) ^ v

        put(0, self.c)
        for i, v in enumerate(self.b):
            put(1 << i, v)
        for (i, j), v in self.a.items():
            put((1 << i) + (1 << j), v)
        return {e: v for e, v in sorted(out.items()) if v}

    def canonical(self) -> dict[int, int]:
        raw = self.raw_exponent_map()
        top = 1 << self.spec.n
        if top in raw:
            v = raw.pop(top)
            raw[1] = raw.get(1, 0) ^ v
        return {e: v for e, v in sorted(raw.items()) if v}

    def is_zero(self) -> bool:
        return not self.canonical()

    def __eq__(self, other):
        if not isinstance(other, PseudoQuadratic):
            return NotImplemented
        return self.spec == other.spec and self.canonical() == other.canonical()

    def __hash__(self):
        return hash((self.spec, tuple(self.canonical().items())))


# ---------- evaluation


def sparse_eval(spec: FieldSpec, emap: Mapping[int, int], u: int) -> int:
    """Evaluate sum v x^e over weight<=2 exponents with one Frobenius ladder."""
    ladder = [u]
    for _ in range(spec.n - 1):
        ladder.append(fe_mul(spec, ladder[-1], ladder[-1]))
    dec = exponent_decomposition(spec.n)
    acc = 0
    for e, v in emap.items():
        parts = dec[e]
        if not parts:
            acc ^= v
        elif len(parts) == 1:
            acc ^= fe_mul(spec, v, ladder[parts[0]])
        else:
            acc ^= fe_mul(spec, v, fe_mul(spec, ladder[parts[0]], ladder[parts[1]]))
    return acc


def sparse_eval_array(spec: FieldSpec, emap: Mapping[int, int], us) -> np.ndarray:
    """Vectorised :func:`sparse_eval`; quadratic terms grouped by their lower index."""
    us = np.asarray(us, dtype=np.int64)
    ladder = frobenius_ladder(spec, us)
    dec = exponent_decomposition(spec.n)
    acc = np.zeros(us.shape, dtype=np.int64)
    inner: dict[int, np.ndarray] = {}
    for e, v in emap.items():
        if not v:
            continue
        parts = dec[e]
        if not parts:
            acc ^= v
        elif len(parts) == 1:
            acc ^= mul_array(spec, ladder[parts[0]], v)
        else:
            i, j = parts
            term = mul_array(spec, ladder[j], v)
            if i in inner:
                inner[i] ^= term
            else:
                inner[i] = term
    for i, s in inner.items():
        acc ^= mul_array(spec, ladder[i], s)
    return acc


def pq_eval(P: PseudoQuadratic, u: int) -> int:
    return sparse_eval(P.spec, P.canonical(), u)


def pq_eval_array(P: PseudoQuadratic, us) -> np.ndarray:
    return sparse_eval_array(P.spec, P.canonical(), us)


def pq_to_dense(P: PseudoQuadratic) -> DensePoly:
    if P.spec.n > DENSE_MAX_N:
        raise CapacityExceeded(f"dense form needs n <= {DENSE_MAX_N}")
    emap = P.canonical()
    coeffs = [0] * (max(emap) + 1 if emap else 0)
    for e, v in emap.items():
        coeffs[e] = v
    return DensePoly(P.spec, tuple(coeffs))


def pq_root_scan(P: PseudoQuadratic) -> int | None:
    """Smallest root in the order 0, 1, 2, ... or None."""
    spec = P.spec
    if spec.n > SCAN_MAX_N:
        raise CapacityExceeded(f"root scan needs n <= {SCAN_MAX_N}")
    emap = P.canonical()
    if emap.get(0, 0) == 0:
        return 0
    for us in iter_chunks(1, spec.size):
        hits = np.flatnonzero(sparse_eval_array(spec, emap, us) == 0)
        if hits.size:
            return int(us[hits[0]])
    return None


# ---------- MQ <-> PQ


def _check_square(S: QuadraticSystem, spec: FieldSpec):
    if S.fixed:
        raise ValueError("system has fixed variables; square it first")
    if not (S.n_vars == len(S.equations) == spec.n):
        raise ValueError(
            f"need a square system with n = {spec.n}; got {len(S.equations)} equations in {S.n_vars} variables"
        )


def pq_from_mq(S: QuadraticSystem, spec: FieldSpec, seed: int = 0) -> PseudoQuadratic:
    """Interpolate the pseudoquadratic polynomial that realises S on GF(2^n).

    The field point with coordinate bits v maps to the point whose coordinate
    bits are the equation values at v. Coefficients are found by solving the
    evaluation system on the canonical exponent basis at random distinct points,
    with 64 extra points so that t independent rows exist.
    """
    _check_square(S, spec)
    n = spec.n
    exps = canonical_exponents(n)
    dec = exponent_decomposition(n)
    t = len(exps)
    rng = random.Random(seed)
    coeffs = None
    # t points alone are usually singular: the monomials span F times the
    # Boolean quadratics, so t points must hit an information set of that code.
    # Each extra point roughly halves the chance of a rank deficit.
    draw = min(spec.size, t + _OVERSAMPLE)
    for _ in range(INTERPOLATION_ATTEMPTS):
        pts = np.array(rng.sample(range(spec.size), draw), dtype=np.int64)
        ladder = frobenius_ladder(spec, pts)
        cols = []
        for e in exps:
            parts = dec[e]
            if not parts:
                cols.append(np.ones_like(pts))
            elif len(parts) == 1:
                cols.append(ladder[parts[0]])
            else:
                cols.append(mul_array(spec, ladder[parts[0]], ladder[parts[1]]))
        vander = np.stack(cols, axis=1)
        coeffs = solve_array(spec, vander, mq_eval_packed(S, pts))
        if coeffs is not None:
            break
    if coeffs is None:
        raise InterpolationFailed(f"evaluation matrix rank-deficient in {INTERPOLATION_ATTEMPTS} draws")
    P = PseudoQuadratic.from_exponent_map(spec, dict(zip(exps, coeffs.tolist())))

    if n <= _EXHAUSTIVE_CHECK_MAX_N:
        check = np.arange(spec.size, dtype=np.int64)
    else:
        check = np.array([rng.randrange(spec.size) for _ in range(_SPOT_CHECKS)], dtype=np.int64)
    if not np.array_equal(pq_eval_array(P, check), mq_eval_packed(S, check)):
        raise InterpolationFailed("interpolated polynomial disagrees with the system")
    return P


def pq_to_mq(P: PseudoQuadratic) -> QuadraticSystem:
    """Expand P coordinate-wise into n quadratic equations in n variables.

    x = sum_k v_k alpha^(k-1) makes every x^(2^i) an F_2-linear form in v, so each
    x^(2^i + 2^j) is a product of two linear forms.
    """
    spec = P.spec
    n = spec.n
    # beta[i][k] = (alpha^k)^(2^i), the coefficient of v_{k+1} in x^(2^i)
    beta = [[fe_frobenius(spec, 1 << k, i) for k in range(n)] for i in range(n)]
    const = 0
    lin = [0] * n
    quad: dict[tuple[int, int], int] = {}
    for e, g in P.canonical().items():
        parts = exponent_decomposition(n)[e]
        if not parts:
            const ^= g
        elif len(parts) == 1:
            for k in range(n):
                lin[k] ^= fe_mul(spec, g, beta[parts[0]][k])
        else:
            bi, bj = beta[parts[0]], beta[parts[1]]
            for k in range(n):
                gk = fe_mul(spec, g, bi[k])
                if not gk:
                    continue
                for l in range(n):
                    w = fe_mul(spec, gk, bj[l])
                    if k == l:
                        lin[k] ^= w
                    else:
                        key = (min(k, l), max(k, l))
                        quad[key] = quad.get(key, 0) ^ w
    eqs = []
    for r in range(n):
        eqs.append(
            QuadraticEquation(
                frozenset((k + 1, l + 1) for (k, l), w in quad.items() if (w >> r) & 1),
                frozenset(k + 1 for k in range(n) if (lin[k] >> r) & 1),
                (const >> r) & 1,
            )
        )
    return QuadraticSystem(n, tuple(eqs))
