"""Quadratic systems over F_2.

Variables are 1-based. Bit vectors are strings of '0'/'1' where character k-1
holds the value of variable k, matching the ``0010010`` notation used for
solutions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import AlreadyFixed, CapacityExceeded, EmptySystem, LengthMismatch

BRUTE_MAX_FREE = 24
_CHUNK = 1 << 18

SQUARE_MODES = ("repeat-last", "pad-zero")


@dataclass(frozen=True)
class QuadraticEquation:
    """quad: pairs (i, j) with i < j; lin: single indices; constant: 0 or 1."""

    quad: frozenset = frozenset()
    lin: frozenset = frozenset()
    constant: int = 0

    @classmethod
    def from_terms(cls, terms: Iterable[Sequence[int]]) -> "QuadraticEquation":
        """Build from monomials given as index tuples: () is 1, (i,) is x_i.

        x_i*x_i folds to x_i and repeated monomials cancel mod 2.
        """
        quad: set = set()
        lin: set = set()
        const = 0
        for t in terms:
            t = tuple(t)
            if len(t) == 0:
                const ^= 1
            elif len(t) == 1 or t[0] == t[1]:
                lin ^= {t[0]}
            elif len(t) == 2:
                quad ^= {(min(t), max(t))}
            else:
                raise ValueError(f"monomial of degree {len(t)} in a quadratic system")
        return cls(frozenset(quad), frozenset(lin), const)

    @property
    def variables(self) -> set[int]:
        out = set(self.lin)
        for i, j in self.quad:
            out.add(i)
            out.add(j)
        return out

    def is_zero(self) -> bool:
        return not self.quad and not self.lin and not self.constant

    def evaluate(self, values: Mapping[int, int] | Sequence[int]) -> int:
        """Value at an assignment; sequences are read 1-based (values[k-1])."""
        get = values.__getitem__ if isinstance(values, Mapping) else (lambda k: values[k - 1])
        v = self.constant
        for i in self.lin:
            v ^= get(i)
        for i, j in self.quad:
            v ^= get(i) & get(j)
        return v

    def __str__(self):
        parts = [f"x{i}*x{j}" for i, j in sorted(self.quad)]
        parts += [f"x{i}" for i in sorted(self.lin)]
        if self.constant:
            parts.append("1")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class QuadraticSystem:
    n_vars: int
    equations: tuple[QuadraticEquation, ...]
    fixed: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.n_vars < 0:
            raise ValueError("negative variable count")
        object.__setattr__(self, "equations", tuple(self.equations))
        object.__setattr__(self, "fixed", dict(self.fixed))
        for eq in self.equations:
            for v in eq.variables:
                if not 1 <= v <= self.n_vars:
                    raise ValueError(f"variable x{v} outside 1..{self.n_vars}")
        for v, b in self.fixed.items():
            if not 1 <= v <= self.n_vars or b not in (0, 1):
                raise ValueError(f"bad fixed entry x{v}={b}")

    @property
    def free_vars(self) -> list[int]:
        return [k for k in range(1, self.n_vars + 1) if k not in self.fixed]

    def __len__(self):
        return len(self.equations)


def bits_str(v: Sequence[int]) -> str:
    return "".join(str(int(b) & 1) for b in v)


def _as_bits(v) -> list[int]:
    if isinstance(v, str):
        if set(v) - {"0", "1"}:
            raise ValueError(f"not a bit string: {v!r}")
        return [int(c) for c in v]
    return [int(b) & 1 for b in v]


def mq_eval(S: QuadraticSystem, v) -> tuple[int, ...]:
    bits = _as_bits(v)
    if len(bits) != S.n_vars:
        raise LengthMismatch(f"assignment has {len(bits)} bits, system has {S.n_vars} variables")
    for k, b in S.fixed.items():
        if bits[k - 1] != b:
            raise ValueError(f"assignment sets x{k}={bits[k - 1]} but it is fixed to {b}")
    return tuple(eq.evaluate(bits) for eq in S.equations)


def _eval_columns(S: QuadraticSystem, assignments: np.ndarray) -> list[np.ndarray]:
    """Per-equation value arrays over packed assignments (bit k-1 = x_k)."""
    cache: dict[int, np.ndarray] = {}

    def bit(k):
        if k not in cache:
            cache[k] = (assignments >> (k - 1)) & 1
        return cache[k]

    out = []
    for eq in S.equations:
        acc = np.full(assignments.shape, eq.constant, dtype=np.int64)
        for i in eq.lin:
            acc ^= bit(i)
        for i, j in eq.quad:
            acc ^= bit(i) & bit(j)
        out.append(acc)
    return out


def mq_eval_packed(S: QuadraticSystem, assignments) -> np.ndarray:
    """Vectorised evaluation: equation e's value lands in bit e-1 of the output."""
    assignments = np.asarray(assignments, dtype=np.int64)
    if len(S.equations) > 62:
        raise CapacityExceeded("too many equations to pack into 64-bit words")
    out = np.zeros(assignments.shape, dtype=np.int64)
    for e, col in enumerate(_eval_columns(S, assignments)):
        out |= col << e
    return out


def mq_substitute(S: QuadraticSystem, var: int, bit: int) -> QuadraticSystem:
    """Fix x_var = bit and eliminate it from every equation."""
    if var in S.fixed:
        raise AlreadyFixed(f"x{var} is already fixed")
    if not 1 <= var <= S.n_vars:
        raise ValueError(f"x{var} outside 1..{S.n_vars}")
    bit &= 1
    new_eqs = []
    for eq in S.equations:
        quad = set()
        lin = set(eq.lin)
        const = eq.constant
        for i, j in eq.quad:
            if var not in (i, j):
                quad.add((i, j))
            elif bit:
                lin ^= {j if i == var else i}
        if var in lin:
            lin.discard(var)
            const ^= bit
        new_eqs.append(QuadraticEquation(frozenset(quad), frozenset(lin), const))
    fixed = dict(S.fixed)
    fixed[var] = bit
    return QuadraticSystem(S.n_vars, tuple(new_eqs), fixed)


def mq_square(S: QuadraticSystem, mode: str = "repeat-last") -> tuple[QuadraticSystem, dict[int, int]]:
    """Square system over the free variables plus the old->new variable map.

    With fewer equations than free variables, ``repeat-last`` duplicates the
    last equation and ``pad-zero`` appends zero equations. With more equations,
    unused variables are appended.
    """
    if mode not in SQUARE_MODES:
        raise ValueError(f"unknown squaring mode {mode!r}")
    free = S.free_vars
    m, nf = len(S.equations), len(free)
    if m == 0 and nf == 0:
        raise EmptySystem("no free variables and no equations")
    reindex = {old: new for new, old in enumerate(free, 1)}
    eqs = []
    for eq in S.equations:
        try:
            quad = frozenset((reindex[i], reindex[j]) for i, j in eq.quad)
            lin = frozenset(reindex[i] for i in eq.lin)
        except KeyError as exc:
            raise ValueError(f"equation still mentions fixed variable x{exc.args[0]}") from None
        eqs.append(QuadraticEquation(quad, lin, eq.constant))
    size = max(m, nf)
    if m < nf:
        filler = eqs[-1] if (eqs and mode == "repeat-last") else QuadraticEquation()
        eqs.extend([filler] * (nf - m))
    return QuadraticSystem(size, tuple(eqs)), reindex


def mq_brute_solutions(S: QuadraticSystem) -> set[str]:
    """All full assignments (fixed bits included) that zero every equation."""
    free = S.free_vars
    if len(free) > BRUTE_MAX_FREE:
        raise CapacityExceeded(f"{len(free)} free variables exceed brute-force limit {BRUTE_MAX_FREE}")
    base = sum(b << (k - 1) for k, b in S.fixed.items())
    sols: set[str] = set()
    for lo in range(0, 1 << len(free), _CHUNK):
        idx = np.arange(lo, min(1 << len(free), lo + _CHUNK), dtype=np.int64)
        full = np.full(idx.shape, base, dtype=np.int64)
        for f, k in enumerate(free):
            full |= ((idx >> f) & 1) << (k - 1)
        alive = np.ones(idx.shape, dtype=bool)
        for col in _eval_columns(S, full):
            alive &= col == 0
            if not alive.any():
                break
        for a in full[alive].tolist():
            sols.add("".join(str((a >> k) & 1) for k in range(S.n_vars)))
    return sols


def mq_random(n_vars: int, n_eqs: int, seed: int) -> QuadraticSystem:
    """Each possible monomial enters each equation with probability 1/2."""
    if n_vars < 1:
        raise ValueError("need at least one variable")
    rng = random.Random(seed)
    pairs = [(i, j) for i in range(1, n_vars + 1) for j in range(i + 1, n_vars + 1)]
    eqs = []
    for _ in range(n_eqs):
        quad = frozenset(p for p in pairs if rng.getrandbits(1))
        lin = frozenset(i for i in range(1, n_vars + 1) if rng.getrandbits(1))
        eqs.append(QuadraticEquation(quad, lin, rng.getrandbits(1)))
    return QuadraticSystem(n_vars, tuple(eqs))
