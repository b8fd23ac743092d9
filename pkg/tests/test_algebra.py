import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

import chevalley
from conftest import ALGEBRAS
from gaquadrics import dcga, dpga, qcga
from gaquadrics.algebra import (
    Algebra,
    Multivector,
    ProductCounter,
    commutator,
    dual,
    exp_bivector,
    geometric_product,
    grade_projection,
    inverse,
    left_contraction,
    outer_product,
    reverse,
    scalar_product,
    versor_sandwich,
)
from gaquadrics.errors import AlgebraMismatchError, SingularVersorError

coef = st.floats(-4, 4, allow_nan=False, allow_infinity=False)


def random_mv(alg, rng, n=6, grades=None):
    terms = {}
    for _ in range(n):
        k = int(rng.integers(0, 1 << alg.dim))
        if grades is None or bin(k).count("1") in grades:
            terms[k] = float(rng.uniform(-1, 1))
    return Multivector(alg, terms)


def random_vector(alg, rng):
    return alg.vector(rng.uniform(-1, 1, alg.dim))


@pytest.mark.parametrize("name", list(ALGEBRAS))
def test_geometric_product_matches_chevalley_on_blades(name):
    alg = ALGEBRAS[name]
    rng = np.random.default_rng(hash(name) % 2**32)
    for _ in range(1000):
        a = int(rng.integers(0, 1 << alg.dim))
        b = int(rng.integers(0, 1 << alg.dim))
        got = geometric_product(Multivector(alg, {a: 1.0}), Multivector(alg, {b: 1.0}))
        assert got.terms == chevalley.product({a: 1.0}, {b: 1.0}, alg.gram)


@pytest.mark.parametrize("name", list(ALGEBRAS))
def test_geometric_product_matches_chevalley_on_multivectors(name, rng):
    alg = ALGEBRAS[name]
    for _ in range(30):
        a, b = random_mv(alg, rng), random_mv(alg, rng)
        want = Multivector(alg, chevalley.product(a.terms, b.terms, alg.gram))
        assert geometric_product(a, b).isclose(want, 1e-12)


def test_worked_products():
    A = dpga.ALGEBRA
    w0, w0s = A.e("w0"), A.e("w0*")
    assert (w0 * w0s).terms == {0: 0.5, **(w0 ^ w0s).terms}
    D = dcga.ALGEBRA
    eo, ei = D.e("eo1"), D.e("einf1")
    assert (eo * ei).isclose(-1.0 + (eo ^ ei), 0.0)
    b = D.e("e2") ^ D.e("e5")
    assert (D.scalar(1.0) * b) == b


def test_contraction_examples():
    A, D, Q = dpga.ALGEBRA, dcga.ALGEBRA, qcga.ALGEBRA
    assert left_contraction(A.e("w0"), A.e("w0*")).scalar_part() == 0.5
    assert left_contraction(D.e("eo1"), D.e("einf1")).scalar_part() == -1.0
    assert left_contraction(Q.e("eo1"), Q.e("einf1")).scalar_part() == -1.0


@pytest.mark.parametrize("name", list(ALGEBRAS))
def test_vector_contraction_is_gram(name, rng):
    alg = ALGEBRAS[name]
    for _ in range(20):
        u, v = rng.uniform(-1, 1, alg.dim), rng.uniform(-1, 1, alg.dim)
        a, b = alg.vector(u), alg.vector(v)
        want = u @ alg.gram @ v
        assert math.isclose(left_contraction(a, b).scalar_part(), want, abs_tol=1e-12)
        assert math.isclose(left_contraction(b, a).scalar_part(), want, abs_tol=1e-12)


@pytest.mark.parametrize("name", list(ALGEBRAS))
def test_diagonalization_round_trip(name):
    alg = ALGEBRAS[name]
    P, s = alg.P, alg.signature
    assert np.allclose(P.T @ np.diag(s) @ P, alg.gram, atol=1e-12)
    assert np.allclose(alg.P_inv @ P, np.eye(alg.dim), atol=1e-12)


def test_outer_product_ignores_metric(rng):
    base = dpga.ALGEBRA
    flipped = Algebra(base.names, -base.gram)
    for _ in range(20):
        a, b = random_mv(base, rng), random_mv(base, rng)
        want = outer_product(a, b).terms
        got = outer_product(Multivector(flipped, a.terms), Multivector(flipped, b.terms)).terms
        assert got == want


@settings(max_examples=60, deadline=None)
@given(st.lists(coef, min_size=24, max_size=24))
def test_outer_product_associative(vals):
    A = dpga.ALGEBRA
    a, b, c = (A.vector(vals[k:k + 8]) for k in (0, 8, 16))
    bc = A.e("w1") ^ A.e("w2*")
    lhs = a ^ ((b + bc) ^ c)
    rhs = (a ^ (b + bc)) ^ c
    assert lhs.isclose(rhs, 1e-12 * max(1.0, lhs.max_abs()))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**10 - 1), st.integers(0, 2**10 - 1), st.integers(0, 2**10 - 1))
def test_geometric_product_associative_on_blades(x, y, z):
    A = dcga.ALGEBRA
    a, b, c = (Multivector(A, {k: 1.0}) for k in (x, y, z))
    assert ((a * b) * c).isclose(a * (b * c), 1e-12)


def test_antisymmetry_and_nilpotence():
    D = dcga.ALGEBRA
    e1, e2 = D.e("e1"), D.e("e2")
    assert (e1 ^ e1).is_zero()
    assert (e1 ^ e2) == -(e2 ^ e1)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(1, 8), st.integers(0, 2**16))
def test_outer_product_count_bound(u, v, seed):
    A = dpga.ALGEBRA
    r = np.random.default_rng(seed)
    a = Multivector(A, {1 << int(k): 1.0 + r.random() for k in r.choice(8, u, replace=False)})
    b = Multivector(A, {1 << int(k): 1.0 + r.random() for k in r.choice(8, v, replace=False)})
    c = ProductCounter()
    outer_product(a, b, c)
    assert c.products <= u * v


def test_counter_is_monotone(rng):
    A = qcga.ALGEBRA
    c = ProductCounter()
    seen = [0]
    for _ in range(10):
        geometric_product(random_vector(A, rng), random_vector(A, rng), c)
        seen.append(c.products)
    assert seen == sorted(seen)


def test_commutator():
    D = dcga.ALGEBRA
    a = D.e("e1") ^ D.e("einf1")
    assert commutator(a, a).is_zero()
    b = D.e("e4") ^ D.e("e2")
    assert commutator(a, b) == -commutator(b, a)
    sphere = dcga.quadric_from_coefficients(dcga.QuadricCoefficients(1, 1, 1, j=-1))
    got = commutator(dcga.D[0], sphere)
    want = 2.0 * (0.5 * (D.blade("e1", "einf2") + D.blade("einf1", "e4")))
    assert got.isclose(want, 1e-14)


def test_reverse_and_sandwich():
    D = dcga.ALGEBRA
    b = D.e("e1") ^ D.e("e2")
    assert reverse(b) == -b
    x = D.e("e3") + 2.0
    assert versor_sandwich(D.scalar(1.0), x).isclose(x, 0.0)
    null = D.e("eo1")
    with pytest.raises(SingularVersorError):
        inverse(null)


def test_mismatched_algebras():
    with pytest.raises(AlgebraMismatchError):
        geometric_product(dcga.ALGEBRA.e("e1"), dpga.ALGEBRA.e("w0"))
    with pytest.raises(AlgebraMismatchError):
        dcga.ALGEBRA.e("e1") + dpga.ALGEBRA.e("w0")


def test_prune_and_key_invariants():
    D = dcga.ALGEBRA
    m = Multivector(D, {3: 1.0, 5: 0.0})
    assert 5 not in m.terms
    with pytest.raises(ValueError):
        Multivector(D, {1 << D.dim: 1.0})
    # a product whose exact result is zero leaves no crumbs behind
    x = D.e("e1") * 0.1 + D.e("e2") * 0.3
    assert ((x * x) - x.norm() ** 2 * D.scalar(1.0)).is_zero(1e-15)


def test_exp_zero_and_closed_form():
    D = dcga.ALGEBRA
    assert exp_bivector(D.zero().grade(2)) == D.scalar(1.0)
    theta = 0.83
    B = D.e("e1") ^ D.e("e2")  # B^2 = -1
    got = exp_bivector(B * theta)
    want = math.cos(theta) + B * math.sin(theta)
    assert got.isclose(want, 1e-12)
    with pytest.raises(ValueError):
        exp_bivector(D.e("e1"))


def _left_matrix(alg, B):
    n = 1 << alg.dim
    M = np.zeros((n, n))
    for k in range(n):
        for C, c in chevalley.product(B.terms, {k: 1.0}, alg.gram).items():
            M[C, k] = c
    return M


@pytest.mark.parametrize("theta", [np.pi, 1.0])
@pytest.mark.parametrize("single_term", [True, False])
def test_exp_matches_matrix_exponential(theta, single_term):
    alg = dpga.ALGEBRA
    if single_term:
        B = geometric_product(dpga.W[0], dpga.WS[1]).grade(2) * (0.5 * theta)
    else:
        B = ((dpga.W[0] ^ dpga.WS[1]) - (dpga.W[1] ^ dpga.WS[0])) * (-theta)
    M = _left_matrix(alg, B)
    col = scipy.linalg.expm(M)[:, 0]
    want = Multivector(alg, {k: v for k, v in enumerate(col) if abs(v) > 1e-15})
    got = exp_bivector(B)
    assert got.isclose(want, 1e-12)
    assert got.grades() <= {0, 2, 4, 6, 8}


def test_dual_and_grade_projection():
    for alg in ALGEBRAS.values():
        d = dual(alg.pseudoscalar)
        assert d.grades() == {0} and abs(abs(d.scalar_part()) - 1.0) < 1e-12
    D = dcga.ALGEBRA
    b = D.e("e1") ^ D.e("e2")
    assert grade_projection(1.0 + b, 2) == b


def test_dpga_pseudoscalar_square():
    I = dpga.PSEUDOSCALAR
    sq = I * I
    assert sq.grades() == {0}
    # four null pairs with w.w* = 1/2 give (1/4)^4 up to sign
    assert abs(sq.scalar_part()) == pytest.approx(1 / 256, rel=1e-12)
    assert sq.terms == chevalley.product(I.terms, I.terms, dpga.ALGEBRA.gram)


def test_gram_validation():
    with pytest.raises(ValueError):
        Algebra(["a", "b"], [[0, 1], [2, 0]])
    with pytest.raises(ValueError):
        Algebra(["a", "b"], [[1, 0], [0, 0]], null_pairs=[("a", "b")])
    with pytest.raises(ValueError):
        Algebra([f"e{k}" for k in range(17)], np.eye(17))


def test_scalar_product_and_inner_symmetry(rng):
    A = dcga.ALGEBRA
    for _ in range(10):
        a = random_mv(A, rng, 8, grades={2})
        b = random_mv(A, rng, 8, grades={2})
        assert math.isclose(scalar_product(a, b), scalar_product(b, a), abs_tol=1e-13)
        assert (a | b).isclose(b | a, 1e-13)
