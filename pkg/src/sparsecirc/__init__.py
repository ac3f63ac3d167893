"""Quadratic systems over F_2, pseudoquadratic polynomials over GF(2^n), and
the singularity of sparse circulant matrices they reduce to."""

from importlib import resources

from .circulant import (
    Decision,
    SparseCirculant,
    f_circulant,
    sc_decide,
    sc_first_row_poly,
    sc_materialize,
    sc_singular_eigscan,
    sc_singular_gauss,
    sc_singular_gcd,
    sc_singular_two_term,
    sc_verify_root,
)
from .densealg import DenseMatrix, DensePoly, mat_det, poly_eval, poly_gcd, poly_powmod_x
from .formats import dump_mq, dump_pq, dump_sc, parse_mq, parse_pq, parse_sc
from .gf2n import (
    FieldSpec,
    default_modulus,
    enumerate_nonzero,
    fe_frobenius,
    fe_inv,
    fe_mul,
    lift_bits,
    unlift_bits,
)
from .mq import (
    QuadraticEquation,
    QuadraticSystem,
    mq_brute_solutions,
    mq_eval,
    mq_random,
    mq_square,
    mq_substitute,
)
from .pq import PseudoQuadratic, pq_eval, pq_from_mq, pq_root_scan, pq_to_dense, pq_to_mq
from .reduction import chain_check, sc_from_pq, sylvester_matrix, sylvester_to_circulant
from .solver import (
    Certificate,
    SCOracle,
    brute_oracle,
    make_certificate,
    root_certificate,
    solve_mq,
    verify_certificate,
)

__version__ = "0.1.0"


def reference_text() -> str:
    """The bundled 26-equation, 7-variable example system in MQ format."""
    return resources.files(__package__).joinpath("data/appendixA.mq").read_text()


def reference_system() -> QuadraticSystem:
    return parse_mq(reference_text())
