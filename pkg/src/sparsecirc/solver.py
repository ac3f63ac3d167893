"""Recovering MQ solutions from a solvability oracle, and certificates.

The search grows a binary tree breadth first: the node at depth k with index
string i has the first k variables (in the chosen order) fixed to the bits of
i. Only nodes the oracle calls solvable are expanded, so every yes-node leads
to at least one solution and each depth holds at most s yes-nodes for s
solutions. That caps the oracle calls at 2*n*s + 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .circulant import DECIDERS, SparseCirculant, sc_verify_root
from .errors import DigestMismatch, FormatError, InvalidWitness
from .formats import _kv, _lines, instance_digest
from .gf2n import default_modulus
from .mq import QuadraticSystem, mq_brute_solutions, mq_eval, mq_square, mq_substitute
from .pq import pq_from_mq
from .reduction import sc_from_pq

Oracle = Callable[[QuadraticSystem], bool]


def brute_oracle(S: QuadraticSystem) -> bool:
    return bool(mq_brute_solutions(S))


class SCOracle:
    """Solvability through the reduction: square, interpolate, build SC, decide."""

    def __init__(self, decider: str = "eig", seed: int = 0, square_mode: str = "repeat-last"):
        if decider not in DECIDERS:
            raise ValueError(f"unknown decider {decider!r}")
        self.decider = decider
        self.seed = seed
        self.square_mode = square_mode
        self.name = f"sc-{decider}"

    def __call__(self, S: QuadraticSystem) -> bool:
        if not S.equations:
            return True
        sq, _ = mq_square(S, self.square_mode)
        P = pq_from_mq(sq, default_modulus(sq.n_vars), self.seed)
        out = sc_from_pq(P)
        if out.trivially_singular:
            return True
        return DECIDERS[self.decider](out.instance).singular


def make_oracle(name: str, seed: int = 0, square_mode: str = "repeat-last") -> Oracle:
    if name == "brute":
        return brute_oracle
    if name.startswith("sc-"):
        return SCOracle(name[3:], seed, square_mode)
    raise ValueError(f"unknown oracle {name!r}")


@dataclass(frozen=True)
class SearchNode:
    depth: int
    index: str
    yes: bool


@dataclass
class SolveResult:
    solutions: set[str]
    oracle_calls: int
    trace: list[SearchNode] = field(default_factory=list)

    @property
    def nodes(self) -> int:
        return len(self.trace)

    def trace_lines(self) -> list[str]:
        return [f"{t.depth} {t.index or '-'} {'yes' if t.yes else 'no'}" for t in self.trace]


def solve_mq(S: QuadraticSystem, oracle: Oracle, order: Sequence[int] | None = None) -> SolveResult:
    order = list(S.free_vars if order is None else order)
    if sorted(order) != sorted(S.free_vars):
        raise ValueError("variable order must be a permutation of the free variables")
    root_yes = oracle(S)
    calls = 1
    trace = [SearchNode(0, "", root_yes)]
    level = [("", S)] if root_yes else []
    for depth, var in enumerate(order, 1):
        nxt = []
        for idx, node in level:
            for bit in (0, 1):
                child = mq_substitute(node, var, bit)
                yes = oracle(child)
                calls += 1
                trace.append(SearchNode(depth, idx + str(bit), yes))
                if yes:
                    nxt.append((idx + str(bit), child))
        level = nxt
    solutions = {"".join(str(node.fixed[k]) for k in range(1, S.n_vars + 1)) for _, node in level}
    return SolveResult(solutions, calls, trace)


# ---------- certificates


@dataclass(frozen=True)
class Certificate:
    kind: str  # "root" or "assignment"
    payload: int | str
    digest: str | None = None

    def to_text(self) -> str:
        out = ["CERT v1", f"type: {self.kind}"]
        if self.kind == "root":
            out.append(f"value: {self.payload:#x}")
        else:
            out.append(f"bits: {self.payload}")
        if self.digest:
            out.append(f"digest: {self.digest}")
        return "\n".join(out) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Certificate":
        lines = _lines(text)
        try:
            no, first = next(lines)
        except StopIteration:
            raise FormatError("empty certificate") from None
        if first != "CERT v1":
            raise FormatError(f"expected header 'CERT v1', got {first!r}", no)
        fields = {}
        for no, line in lines:
            k, v = _kv(line, no)
            if k not in ("type", "value", "bits", "digest"):
                raise FormatError(f"unknown key {k!r}", no)
            fields[k] = v
        kind = fields.get("type")
        digest = fields.get("digest")
        if kind == "root" and "value" in fields:
            try:
                return cls("root", int(fields["value"], 16), digest)
            except ValueError:
                raise FormatError(f"bad root value {fields['value']!r}") from None
        if kind == "assignment" and "bits" in fields:
            bits = fields["bits"]
            if not bits or set(bits) - {"0", "1"}:
                raise FormatError(f"bad bit string {bits!r}")
            return cls("assignment", bits, digest)
        raise FormatError("certificate needs 'type: root' + 'value:' or 'type: assignment' + 'bits:'")


def make_certificate(S: QuadraticSystem, solution: str) -> Certificate:
    try:
        ok = not any(mq_eval(S, solution))
    except ValueError as exc:
        raise InvalidWitness(str(exc)) from None
    if not ok:
        raise InvalidWitness(f"{solution} violates the system")
    return Certificate("assignment", solution, instance_digest(S))


def root_certificate(M: SparseCirculant, u: int) -> Certificate:
    if not sc_verify_root(M, u):
        raise InvalidWitness(f"R({u:#x}) != 0")
    return Certificate("root", u, instance_digest(M))


def verify_certificate(cert: Certificate, instance) -> bool:
    """Re-check a certificate against its instance; no search is performed."""
    if cert.digest is not None and cert.digest != instance_digest(instance):
        raise DigestMismatch("certificate was issued for a different instance")
    if cert.kind == "assignment":
        if not isinstance(instance, QuadraticSystem):
            return False
        try:
            return not any(mq_eval(instance, cert.payload))
        except ValueError:
            return False
    if cert.kind == "root":
        if not isinstance(instance, SparseCirculant):
            return False
        if not 0 < cert.payload < instance.spec.size:
            return False
        return sc_verify_root(instance, cert.payload)
    return False
