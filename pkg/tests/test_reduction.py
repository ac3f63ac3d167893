import pytest

from sparsecirc.circulant import SparseCirculant, f_circulant, sc_singular_eigscan, sc_singular_gauss
from sparsecirc.densealg import DensePoly, mat_det
from sparsecirc.errors import CapacityExceeded, DegreeOutOfRange, ZeroConstantTerm
from sparsecirc.formats import parse_equation
from sparsecirc.gf2n import default_modulus
from sparsecirc.mq import QuadraticSystem, mq_random
from sparsecirc.pq import PseudoQuadratic, pq_root_scan, pq_to_dense
from sparsecirc.reduction import (
    chain_check,
    sc_from_pq,
    surgery_stages,
    sylvester_matrix,
    sylvester_to_circulant,
)

from conftest import cofactor_det, naive_field_mul


def rand_p(spec, k, rng, a0_nonzero=True):
    c = [rng.randrange(1 if a0_nonzero else 0, spec.size)]
    c += [rng.randrange(spec.size) for _ in range(k - 1)]
    c.append(rng.randrange(1, spec.size))
    return DensePoly(spec, tuple(c))


def has_root(p):
    return any(_horner(p, u) == 0 for u in range(p.spec.size))


def _horner(p, u):
    acc = 0
    for c in reversed(p.coeffs):
        acc = naive_field_mul(acc, u, p.spec.modulus) ^ c
    return acc


def random_pq(spec, rng, density=0.6):
    r = lambda: rng.randrange(spec.size) if rng.random() < density else 0
    n = spec.n
    return PseudoQuadratic(spec, r(), tuple(r() for _ in range(n)), {(i, j): r() for i in range(n) for j in range(i, n)})


def test_sylvester_template_n3_k5(f8):
    # distinct symbols a_i = i + 1 so every band is identifiable
    p = DensePoly(f8, (1, 2, 3, 4, 5, 6))
    a = sylvester_matrix(p, 3).array()
    assert a.shape == (13, 13)
    for r in range(5):
        expect = [0] * 13
        expect[r] = 1
        expect[r + 7] = 1
        assert a[r].tolist() == expect
    for s in range(8):
        expect = [0] * 13
        expect[s : s + 6] = [6, 5, 4, 3, 2, 1]
        assert a[5 + s].tolist() == expect


def test_sylvester_sizes(rng):
    for n in (1, 2, 3, 4):
        spec = default_modulus(n)
        x = DensePoly(spec, (0, 1))
        assert sylvester_matrix(x, n).array().shape == (2**n + 1, 2**n + 1)
    with pytest.raises(DegreeOutOfRange):
        sylvester_matrix(DensePoly(default_modulus(3), (1,)), 3)
    with pytest.raises(DegreeOutOfRange):
        sylvester_matrix(DensePoly.monomial(default_modulus(3), 8), 3)
    with pytest.raises(CapacityExceeded):
        sylvester_matrix(DensePoly(default_modulus(5), (1, 1)), 5)


def test_sylvester_resultant_criterion(f8, rng):
    for _ in range(60):
        p = rand_p(f8, rng.randrange(1, 8), rng, a0_nonzero=rng.random() < 0.8)
        assert (mat_det(sylvester_matrix(p, 3)) == 0) == has_root(p)


def test_sylvester_small_cofactor(rng):
    # n = 1, 2: compare against the Laplace expansion
    for n in (1, 2):
        spec = default_modulus(n)
        for _ in range(10):
            p = rand_p(spec, rng.randrange(1, 2**n), rng, a0_nonzero=False)
            syl = sylvester_matrix(p, n)
            assert mat_det(syl) == cofactor_det(syl.array().tolist(), spec.modulus)


def test_surgery_block_pattern(f8):
    p = DensePoly(f8, (1, 2, 3, 4, 5, 6))
    block = sylvester_to_circulant(sylvester_matrix(p, 3), p, 3).array()
    assert block.shape == (7, 7)
    a = [1, 2, 3, 4, 5, 6]
    row = [a[0], 0, a[5], a[4], a[3], a[2], a[1]]
    for i in range(7):
        assert block[i].tolist() == row[7 - i :] + row[: 7 - i]


def test_surgery_determinants(f8, rng):
    for _ in range(60):
        k = rng.randrange(1, 6)
        p = rand_p(f8, k, rng)
        syl = sylvester_matrix(p, 3)
        erased, added, block = surgery_stages(syl, p, 3)
        d_syl, d_er, d_add, d_blk = (mat_det(m) for m in (syl, erased, added, block))
        a0 = p.coeff(0)
        assert d_syl == naive_field_mul(a0, d_er, f8.modulus)
        assert d_add == d_er
        assert d_blk == d_add
        assert d_syl == naive_field_mul(a0, d_blk, f8.modulus)
    with pytest.raises(ZeroConstantTerm):
        p = DensePoly(f8, (0, 1, 1))
        sylvester_to_circulant(sylvester_matrix(p, 3), p, 3)


def test_surgery_first_k_rows_become_unit(f8, rng):
    p = rand_p(f8, 4, rng)
    added = surgery_stages(sylvester_matrix(p, 3), p, 3)[1].array()
    for r in range(4):
        expect = [0] * added.shape[1]
        expect[r] = 1
        assert added[r].tolist() == expect


def test_block_is_f_circulant(rng):
    for n in (2, 3, 4):
        spec = default_modulus(n)
        N = spec.units
        for _ in range(10):
            k = rng.randrange(1, N + 1)
            p = rand_p(spec, k, rng)
            block = sylvester_to_circulant(sylvester_matrix(p, n), p, n)
            # a_N lands on the a_0 diagonal when deg p = N
            col = [0] * N
            for e, c in enumerate(p.coeffs):
                col[e % N] ^= c
            assert block == f_circulant(spec, col, 1, N, N)


def test_explicit_and_direct_paths_agree(rng):
    for n in (2, 3, 4):
        spec = default_modulus(n)
        checked = 0
        while checked < 25:
            P = random_pq(spec, rng)
            out = sc_from_pq(P)
            if out.trivially_singular:
                continue
            dense = pq_to_dense(P)
            if dense.degree < 1:
                continue
            block = sylvester_to_circulant(sylvester_matrix(dense, n), dense, n)
            assert (mat_det(block) == 0) == sc_singular_gauss(out.instance).singular
            checked += 1


def test_sc_from_pq_examples(f8):
    out = sc_from_pq(PseudoQuadratic(f8, 1))
    assert out.instance == SparseCirculant(f8, {0: 1})
    assert not sc_singular_eigscan(out.instance).singular
    out = sc_from_pq(PseudoQuadratic(f8, 0, (1, 2)))
    assert out.trivially_singular and out.trivial_reason == "zero-constant-term"
    assert sc_from_pq(PseudoQuadratic(f8)).trivial_reason == "zero-polynomial"


def test_sc_from_pq_positions_are_exponents(f8):
    P = PseudoQuadratic(f8, 3, (0, 5), {(1, 2): 7})
    assert sc_from_pq(P).instance.entries == {0: 3, 2: 5, 6: 7}


def test_sc_from_pq_small_n_fold():
    # n = 2: x^3 = 1 on the unit group, so the top exponent folds onto position 0
    f4 = default_modulus(2)
    P = PseudoQuadratic(f4, 1, a={(0, 1): 1})
    out = sc_from_pq(P)
    assert out.instance.entries == {}
    assert sc_singular_eigscan(out.instance).singular


def test_sc_from_pq_matches_root_scan(rng):
    for n in range(1, 9):
        spec = default_modulus(n)
        for _ in range(15):
            P = random_pq(spec, rng, density=rng.choice([0.2, 0.5, 1.0]))
            out = sc_from_pq(P)
            found = pq_root_scan(P) is not None
            assert found == (out.trivially_singular or sc_singular_eigscan(out.instance).singular)


def test_chain_examples():
    r = chain_check(QuadraticSystem(1, (parse_equation("1"),)))
    assert not r.mq_solvable and not r.pq_has_root
    assert r.sc_trivial is None and not any(r.sc_singular.values())
    assert r.agree
    r = chain_check(QuadraticSystem(2, ()))
    assert r.mq_solvable and r.pq_has_root
    assert all(r.sc_singular.values())
    assert r.agree
    with pytest.raises(CapacityExceeded):
        chain_check(mq_random(9, 9, 0))


def test_chain_agreement_random():
    for seed in range(120):
        n = 2 + seed % 6
        r = chain_check(mq_random(n, n, 9000 + seed), seed)
        assert r.agree, r.dump()
