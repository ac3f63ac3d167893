import time

import pytest

from sparsecirc import reference_system
from sparsecirc.circulant import SparseCirculant, sc_singular_eigscan
from sparsecirc.errors import DigestMismatch, FormatError, InvalidWitness
from sparsecirc.formats import instance_digest, parse_equation
from sparsecirc.gf2n import default_modulus, lift_bits
from sparsecirc.mq import QuadraticSystem, mq_brute_solutions, mq_random, mq_square, mq_substitute
from sparsecirc.pq import pq_eval, pq_from_mq
from sparsecirc.reduction import sc_from_pq
from sparsecirc.solver import (
    Certificate,
    SCOracle,
    brute_oracle,
    make_certificate,
    make_oracle,
    root_certificate,
    solve_mq,
    verify_certificate,
)

from conftest import random_sc

KNOWN_SOLUTIONS = {"0010010", "1110100", "1110101"}


def node_bound(n, s):
    return max(1, 2 * n * s + 1)


def check_tree(result, n):
    s = len(result.solutions)
    assert result.nodes <= node_bound(n, s)
    assert result.oracle_calls <= 2 * n * s + 1
    yes = {}
    for node in result.trace:
        if node.yes:
            yes.setdefault(node.depth, set()).add(node.index)
    for depth, idxs in yes.items():
        assert len(idxs) <= max(s, 1)
        if depth < n:
            for i in idxs:
                assert any(j.startswith(i) for j in yes.get(depth + 1, ()))
    if s:
        assert yes[n] == result.solutions


def test_reference_brute():
    r = solve_mq(reference_system(), brute_oracle)
    assert r.solutions == KNOWN_SOLUTIONS
    check_tree(r, 7)
    assert r.nodes == r.oracle_calls


def test_unsat_single_node():
    S = QuadraticSystem(3, (parse_equation("1"),))
    r = solve_mq(S, brute_oracle)
    assert r.solutions == set()
    assert r.nodes == 1 and r.oracle_calls == 1
    assert r.trace_lines() == ["0 - no"]


def test_empty_system_all_vectors():
    r = solve_mq(QuadraticSystem(2, ()), SCOracle("eig"))
    assert r.solutions == {"00", "01", "10", "11"}


def test_brute_oracle_sweep():
    for seed in range(200):
        n = 1 + seed % 7
        S = mq_random(n, 1 + seed % 9, seed)
        r = solve_mq(S, brute_oracle)
        assert r.solutions == mq_brute_solutions(S)
        check_tree(r, n)


@pytest.mark.parametrize("decider", ["eig", "gauss", "gcd"])
def test_sc_oracle_matches_brute(decider):
    for seed in range(30):
        n = 2 + seed % 6
        S = mq_random(n, n, 3000 + seed)
        r = solve_mq(S, make_oracle(f"sc-{decider}", seed))
        assert r.solutions == mq_brute_solutions(S)
        check_tree(r, n)


def test_sc_oracle_non_square():
    for seed in range(20):
        n, m = 2 + seed % 5, 1 + seed % 8
        S = mq_random(n, m, seed)
        assert solve_mq(S, SCOracle("eig", square_mode="pad-zero")).solutions == mq_brute_solutions(S)


def test_custom_order():
    S = reference_system()
    r = solve_mq(S, brute_oracle, order=[7, 6, 5, 4, 3, 2, 1])
    assert r.solutions == KNOWN_SOLUTIONS
    with pytest.raises(ValueError):
        solve_mq(S, brute_oracle, order=[1, 2])


def test_partially_fixed_input():
    S = mq_substitute(reference_system(), 1, 1)
    r = solve_mq(S, brute_oracle)
    assert r.solutions == {"1110100", "1110101"}


def test_make_oracle():
    assert make_oracle("brute") is brute_oracle
    assert make_oracle("sc-gcd").name == "sc-gcd"
    with pytest.raises(ValueError):
        make_oracle("sc-fft")
    with pytest.raises(ValueError):
        make_oracle("magic")


def test_assignment_certificates():
    S = reference_system()
    cert = make_certificate(S, "1110100")
    assert cert.digest == instance_digest(S)
    assert verify_certificate(cert, S)
    with pytest.raises(InvalidWitness):
        make_certificate(S, "1110110")
    with pytest.raises(InvalidWitness):
        make_certificate(S, "111")
    tampered = Certificate("assignment", "1110110", cert.digest)
    assert verify_certificate(tampered, S) is False
    other = mq_random(7, 26, 1)
    with pytest.raises(DigestMismatch):
        verify_certificate(cert, other)
    assert verify_certificate(Certificate("assignment", "1110100"), S)


def test_root_certificates(rng):
    made = 0
    while made < 20:
        M = random_sc(rng.randrange(2, 8), rng, density=0.3)
        d = sc_singular_eigscan(M)
        if not (d.singular and d.witness):
            continue
        cert = root_certificate(M, d.witness)
        assert verify_certificate(cert, M)
        assert verify_certificate(Certificate.from_text(cert.to_text()), M)
        made += 1
    f8 = default_modulus(3)
    M = SparseCirculant(f8, {0: 1})
    with pytest.raises(InvalidWitness):
        root_certificate(M, 3)
    assert verify_certificate(Certificate("root", 3), M) is False
    assert verify_certificate(Certificate("root", 9), M) is False


def test_reference_root_certificate():
    sq, _ = mq_square(reference_system())
    P = pq_from_mq(sq, default_modulus(26))
    M = sc_from_pq(P).instance
    u = lift_bits(P.spec, "1110100" + "0" * 19)
    assert pq_eval(P, u) == 0
    cert = root_certificate(M, u)
    t = time.perf_counter()
    assert verify_certificate(Certificate.from_text(cert.to_text()), M)
    assert time.perf_counter() - t < 1.0


def test_certificate_text():
    cert = Certificate("assignment", "0101", "sha256:" + "0" * 64)
    assert cert.to_text() == "CERT v1\ntype: assignment\nbits: 0101\ndigest: sha256:" + "0" * 64 + "\n"
    assert Certificate.from_text(cert.to_text()) == cert
    root = Certificate.from_text("# witness\nCERT v1\ntype: root\nvalue: 0x1f\n")
    assert root == Certificate("root", 0x1F, None)
    for bad in ("", "CERT v2\n", "CERT v1\ntype: root\n", "CERT v1\ntype: assignment\nbits: 01a\n", "CERT v1\nfoo: 1\n"):
        with pytest.raises(FormatError):
            Certificate.from_text(bad)
