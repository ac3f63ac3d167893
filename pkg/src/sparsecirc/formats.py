"""Text formats for MQ, PQ and SC instances.

All formats are line oriented, UTF-8, ``#`` starts a comment and blank lines
are ignored. Field elements and moduli are lowercase hex (``0x5``).
"""

from __future__ import annotations

import hashlib
import re

from .circulant import SparseCirculant
from .errors import FormatError
from .gf2n import FieldSpec
from .mq import QuadraticEquation, QuadraticSystem
from .pq import PseudoQuadratic

_MONO = re.compile(r"^[xt](\d+)(?:\*[xt](\d+))?$")


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _kv(line: str, no: int) -> tuple[str, str]:
    if ":" not in line:
        raise FormatError(f"expected 'key: value', got {line!r}", no)
    k, v = line.split(":", 1)
    return k.strip(), v.strip()


def _int(text: str, no: int, base: int = 10) -> int:
    try:
        return int(text, base)
    except ValueError:
        raise FormatError(f"bad number {text!r}", no) from None


def _header(lines, tag: str):
    try:
        no, first = next(lines)
    except StopIteration:
        raise FormatError("empty input") from None
    if first != f"{tag} v1":
        raise FormatError(f"expected header '{tag} v1', got {first!r}", no)


def _spec(n: int, mod: int, no: int) -> FieldSpec:
    try:
        return FieldSpec(n, mod)
    except ValueError as exc:
        raise FormatError(str(exc), no) from None


def sniff(text: str) -> str:
    """Return the format tag (MQ, PQ, SC, CERT) of a document."""
    for no, line in _lines(text):
        tag = line.split()[0]
        if tag in ("MQ", "PQ", "SC", "CERT"):
            return tag
        raise FormatError(f"unknown header {line!r}", no)
    raise FormatError("empty input")


# ---------- MQ


def parse_equation(body: str, no: int | None = None) -> QuadraticEquation:
    terms = []
    for mono in body.split("+"):
        mono = mono.replace(" ", "")
        if mono == "1":
            terms.append(())
        elif mono == "0":
            continue
        else:
            m = _MONO.match(mono)
            if not m:
                raise FormatError(f"bad monomial {mono!r}", no)
            idx = tuple(int(g) for g in m.groups() if g is not None)
            terms.append(idx)
    return QuadraticEquation.from_terms(terms)


def parse_mq(text: str) -> QuadraticSystem:
    lines = _lines(text)
    _header(lines, "MQ")
    n_vars = None
    eqs = []
    for no, line in lines:
        key, val = _kv(line, no)
        if key == "vars":
            n_vars = _int(val, no)
        elif key == "eq":
            if n_vars is None:
                raise FormatError("'vars:' must precede equations", no)
            eq = parse_equation(val, no)
            bad = [v for v in eq.variables if not 1 <= v <= n_vars]
            if bad:
                raise FormatError(f"variable x{bad[0]} outside 1..{n_vars}", no)
            eqs.append(eq)
        else:
            raise FormatError(f"unknown key {key!r}", no)
    if n_vars is None:
        raise FormatError("missing 'vars:' line")
    return QuadraticSystem(n_vars, tuple(eqs))


def dump_mq(S: QuadraticSystem) -> str:
    out = ["MQ v1", f"vars: {S.n_vars}"]
    out += [f"eq: {eq}" for eq in S.equations]
    return "\n".join(out) + "\n"


# ---------- PQ


def parse_pq(text: str) -> PseudoQuadratic:
    lines = _lines(text)
    _header(lines, "PQ")
    n = mod = None
    c = 0
    b: dict[int, int] = {}
    a: dict[tuple[int, int], int] = {}
    body = []
    for no, line in lines:
        key, val = _kv(line, no)
        words = key.split()
        if key == "n":
            n = _int(val, no)
        elif key == "mod":
            mod = _int(val, no, 16)
        elif key == "c":
            c = _int(val, no, 16)
        elif words[0] in ("a", "b"):
            body.append((no, words, _int(val, no, 16)))
        else:
            raise FormatError(f"unknown key {key!r}", no)
    if n is None or mod is None:
        raise FormatError("missing 'n:' or 'mod:' line")
    spec = _spec(n, mod, None)
    for no, words, v in body:
        idx = [_int(w, no) for w in words[1:]]
        if words[0] == "b" and len(idx) == 1 and 0 <= idx[0] < n:
            b[idx[0]] = b.get(idx[0], 0) ^ v
        elif words[0] == "a" and len(idx) == 2 and 0 <= idx[0] <= idx[1] < n:
            a[(idx[0], idx[1])] = a.get((idx[0], idx[1]), 0) ^ v
        else:
            raise FormatError(f"bad coefficient index {' '.join(words)!r}", no)
    try:
        return PseudoQuadratic(spec, c, tuple(b.get(i, 0) for i in range(n)), a)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def dump_pq(P: PseudoQuadratic) -> str:
    spec = P.spec
    out = ["PQ v1", f"n: {spec.n}", f"mod: {spec.modulus:#x}", f"c: {P.c:#x}"]
    out += [f"b {i}: {v:#x}" for i, v in enumerate(P.b) if v]
    out += [f"a {i} {j}: {v:#x}" for (i, j), v in P.a.items()]
    return "\n".join(out) + "\n"


# ---------- SC


def parse_sc(text: str) -> SparseCirculant:
    lines = _lines(text)
    _header(lines, "SC")
    n = mod = None
    entries = []
    for no, line in lines:
        key, val = _kv(line, no)
        words = key.split()
        if key == "n":
            n = _int(val, no)
        elif key == "mod":
            mod = _int(val, no, 16)
        elif words[0] == "entry" and len(words) == 2:
            entries.append((no, _int(words[1], no), _int(val, no, 16)))
        else:
            raise FormatError(f"unknown key {key!r}", no)
    if n is None or mod is None:
        raise FormatError("missing 'n:' or 'mod:' line")
    spec = _spec(n, mod, None)
    m: dict[int, int] = {}
    for no, p, v in entries:
        if p in m:
            raise FormatError(f"duplicate entry at position {p}", no)
        m[p] = v
    try:
        return SparseCirculant(spec, m)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def dump_sc(M: SparseCirculant) -> str:
    spec = M.spec
    out = ["SC v1", f"n: {spec.n}", f"mod: {spec.modulus:#x}"]
    out += [f"entry {p}: {v:#x}" for p, v in M.entries.items()]
    return "\n".join(out) + "\n"


def load_instance(text: str):
    tag = sniff(text)
    loaders = {"MQ": parse_mq, "PQ": parse_pq, "SC": parse_sc}
    if tag not in loaders:
        raise FormatError(f"{tag} document is not an instance")
    return loaders[tag](text)


def instance_digest(instance) -> str:
    """sha256 over the canonical text of an MQ system or SC instance."""
    if isinstance(instance, QuadraticSystem):
        text = dump_mq(instance)
        if instance.fixed:
            text += "fixed: " + " ".join(f"{k}={v}" for k, v in sorted(instance.fixed.items())) + "\n"
    elif isinstance(instance, SparseCirculant):
        text = dump_sc(instance)
    elif isinstance(instance, PseudoQuadratic):
        text = dump_pq(instance)
    else:
        raise TypeError(f"cannot digest {type(instance).__name__}")
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()
