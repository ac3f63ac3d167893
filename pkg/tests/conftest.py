"""Independent oracles and instance generators shared by the test modules.

Nothing here calls into the package's arithmetic except through FieldSpec
for the modulus; the oracles are deliberately naive.
"""

import random

import pytest

from sparsecirc.circulant import SparseCirculant, valid_positions
from sparsecirc.gf2n import default_modulus


def naive_field_mul(a, b, modulus):
    """Multiply coefficient lists, then long-divide by the modulus."""
    n = modulus.bit_length() - 1
    abits = [(a >> i) & 1 for i in range(n)]
    bbits = [(b >> i) & 1 for i in range(n)]
    prod = [0] * (2 * n)
    for i, x in enumerate(abits):
        for j, y in enumerate(bbits):
            prod[i + j] ^= x & y
    mbits = [(modulus >> i) & 1 for i in range(n + 1)]
    for d in range(2 * n - 1, n - 1, -1):
        if prod[d]:
            for i in range(n + 1):
                prod[d - n + i] ^= mbits[i]
    return sum(bit << i for i, bit in enumerate(prod[:n]))


def naive_pow(a, e, modulus):
    r = 1
    for _ in range(e):
        r = naive_field_mul(r, a, modulus)
    return r


def gf2_polys_of_degree(d):
    return range(1 << d, 1 << (d + 1))


def gf2_divides(d, m):
    """Does GF(2) polynomial d divide m (bit-packed)?"""
    while m.bit_length() >= d.bit_length():
        m ^= d << (m.bit_length() - d.bit_length())
    return m == 0


def irreducible_by_trial_division(m):
    n = m.bit_length() - 1
    for d in range(1, n // 2 + 1):
        for f in gf2_polys_of_degree(d):
            if gf2_divides(f, m):
                return False
    return True


def cofactor_det(rows, modulus):
    """Laplace expansion along the first row; char 2 so all signs are +."""
    size = len(rows)
    if size == 1:
        return rows[0][0]
    total = 0
    for j in range(size):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
            total ^= naive_field_mul(rows[0][j], cofactor_det(minor, modulus), modulus)
    return total


def random_sc(n, rng, density=1.0):
    spec = default_modulus(n)
    entries = {p: rng.randrange(spec.size) for p in sorted(valid_positions(n)) if rng.random() < density}
    return SparseCirculant(spec, entries)


@pytest.fixture
def rng():
    return random.Random(20261015)


@pytest.fixture
def f8():
    return default_modulus(3)
