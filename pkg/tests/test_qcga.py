from types import SimpleNamespace

import numpy as np
import pytest

from conftest import rel_err
from gaquadrics import oracle, qcga
from gaquadrics.algebra import scalar_product
from gaquadrics.errors import DegenerateError, NotInSpanError, SingularPointError
from gaquadrics.oracle import NAMES, PluckerLine, QuadricCoefficients

A = qcga.ALGEBRA
SPHERE = QuadricCoefficients(1, 1, 1, j=-1)
ELLIPSOID = QuadricCoefficients(0.25, 1, 1, j=-1)
XAXIS = PluckerLine((1, 0, 0), (0, 0, 0))


def test_gram_and_constants():
    G = A.gram
    assert np.array_equal(np.diag(G)[:3], np.ones(3))
    for k in range(1, 7):
        assert G[A.index(f"eo{k}"), A.index(f"einf{k}")] == -1.0
    assert np.count_nonzero(G) == 3 + 12
    assert scalar_product(qcga.E_O, qcga.E_INF) == -1.0
    assert scalar_product(qcga.E_INF, qcga.E_INF) == 0.0


def test_embed_point_examples():
    assert qcga.embed_point((0, 0, 0)) == qcga.E_O
    want = A.vector({"e1": 1, "e2": 1, "einf1": 0.5, "einf2": 0.5, "einf4": 1, "eo1": 1, "eo2": 1, "eo3": 1})
    assert qcga.embed_point((1, 1, 0)) == want
    assert len(qcga.embed_point((0.1, 0.2, 0.3))) == 12


def test_normalization_examples():
    x = qcga.embed_point((1, 2, 3))
    assert qcga.normalize_point(2.0 * x).isclose(x, 1e-15)
    assert qcga.normalize_point(-5.0 * qcga.embed_point((0, 0, 0))).isclose(qcga.E_O, 1e-15)
    assert qcga.normalize_point(x) == x
    with pytest.raises(DegenerateError):
        qcga.normalize_point(qcga.E[0])


@pytest.mark.parametrize("alpha", [1e-6, -1e-6, 1.0, -1.0, 1e6, -1e6])
def test_normalization_is_scale_invariant(rng, alpha):
    for _ in range(20):
        p = rng.normal(size=3)
        x = qcga.embed_point(p)
        assert qcga.normalize_point(alpha * x).isclose(x, 1e-12 * x.max_abs())
        assert np.allclose(qcga.point_coordinates(alpha * x), p, atol=1e-12)


def test_pseudo_distance():
    e = qcga.embed_point
    assert qcga.pseudo_distance(e((1, 2, 3)), e((1, 2, 3))) == 0.0
    assert qcga.pseudo_distance(e((0, 0, 0)), e((1, 0, 0))) == -0.5
    assert qcga.pseudo_distance(e((1, 2, 3)), e((4, 6, 3))) == -12.5


def test_dual_quadric_assembly():
    qs = qcga.dual_quadric_from_coefficients(SPHERE)
    want = -2.0 * qcga.E_O + qcga.EINF_SUM / 3.0
    assert qs.isclose(want, 1e-15)
    assert qcga.dual_quadric_from_coefficients(QuadricCoefficients(g=1)) == qcga.E[0]


def test_reciprocity_is_identity():
    M = np.array([[scalar_product(qcga.Q_RECIPROCAL[a], qcga.Q_DIRECTIONS[b]) for b in NAMES] for a in NAMES])
    assert np.array_equal(M, np.eye(10))


def test_extraction(rng):
    got = qcga.extract_coefficients(-2.0 * qcga.E_O + qcga.EINF_SUM / 3.0)
    assert np.allclose(got.as_array(), SPHERE.as_array(), atol=1e-15)
    assert np.array_equal(qcga.extract_coefficients(qcga.E[0]).as_array(), np.eye(10)[6])
    assert scalar_product(qcga.Q_RECIPROCAL["a"], qcga.dual_quadric_from_coefficients(QuadricCoefficients(1))) == 1.0
    for _ in range(100):
        q = oracle.random_quadric(rng)
        got = qcga.extract_coefficients(qcga.dual_quadric_from_coefficients(q))
        assert np.allclose(got.as_array(), q.as_array(), rtol=0, atol=1e-12)
    with pytest.raises(NotInSpanError):
        qcga.extract_coefficients(qcga.EINF[0])
    with pytest.raises(NotInSpanError):
        qcga.extract_coefficients(qcga.E[0] ^ qcga.E[1])


def test_membership(rng):
    qs = qcga.dual_quadric_from_coefficients(SPHERE)
    assert qcga.eval_membership(qs, (0, 0, 1)) == 0.0
    assert qcga.eval_membership(qs, (0, 0, 0)) == -1.0
    for _ in range(1000):
        q, p = oracle.random_quadric(rng), rng.uniform(-2, 2, 3)
        assert rel_err(qcga.eval_membership(qcga.dual_quadric_from_coefficients(q), p), oracle.eval(q, p)) < 1e-9


@pytest.mark.parametrize("method", ["reference", "wedge"])
def test_nine_point_fit_examples(rng, method):
    for q in (SPHERE, ELLIPSOID):
        pts = oracle.sample_surface(q, 9, rng)
        got = qcga.extract_coefficients(qcga.quadric_from_nine_points(pts, method=method))
        assert oracle.canonical_distance(got, q) < 1e-8
    dup = oracle.sample_surface(SPHERE, 9, rng)
    dup[3] = dup[0]
    with pytest.raises(DegenerateError):
        qcga.quadric_from_nine_points(dup, method=method)


def test_nine_point_fit_rejects_bad_input(rng):
    pts = oracle.sample_surface(SPHERE, 10, rng)
    with pytest.raises(ValueError):
        qcga.quadric_from_nine_points(pts, method="wedge")
    with pytest.raises(ValueError):
        qcga.quadric_from_nine_points(pts[:9], method="nope")


def test_reference_fit_agrees_with_oracle(rng):
    for _ in range(20):
        q = oracle.random_quadric(rng, "ellipsoid")
        pts = oracle.sample_surface(q, 9, rng)
        ref = qcga.extract_coefficients(qcga.quadric_from_nine_points(pts))
        assert oracle.canonical_distance(ref, oracle.fit_nine_points(pts)) < 1e-12


def test_complement_search():
    narrow = {f"eo{k}": qcga.EO[k - 1] for k in (4, 5, 6)}
    narrow.update({f"einf{k}": qcga.EINF[k - 1] for k in range(1, 7)})
    assert qcga.search_complement_blade(narrow) is None
    wide = dict(narrow)
    wide["eo1-eo2"] = qcga.EO[0] - qcga.EO[1]
    wide["eo2-eo3"] = qcga.EO[1] - qcga.EO[2]
    assert qcga.search_complement_blade(wide) == qcga.COMPLEMENT_LABELS


def test_complement_blade_spans_the_annihilator():
    for k in qcga.COMPLEMENT_FACTORS:
        for name in NAMES:
            assert scalar_product(k, qcga.Q_DIRECTIONS[name]) == 0.0


def test_tangent_plane_examples():
    qs = qcga.dual_quadric_from_coefficients(SPHERE)
    n, d = qcga.plane_normal_offset(qcga.tangent_plane(qs, (1, 0, 0)))
    # |p| = 1 sits next to the raw gradient (length 2), so the unit-normal offset halves
    assert np.allclose(n, [1, 0, 0]) and d == pytest.approx(0.5)
    n, _ = qcga.plane_normal_offset(qcga.tangent_plane(qs, (0, 0, 1)))
    assert np.allclose(n, [0, 0, 1])
    x = qcga.embed_point((1, 0, 0))
    assert -2.0 * scalar_product(qcga.E_O, x) == 1.0
    with pytest.raises(ValueError):
        qcga.tangent_plane(qs, (0, 0, 0))
    cone = qcga.dual_quadric_from_coefficients(QuadricCoefficients(1, 1, -1))
    with pytest.raises(SingularPointError):
        qcga.tangent_plane(cone, (0, 0, 0))


def test_tangent_offset_is_distance_to_origin(rng):
    q = oracle.random_quadric(rng, "ellipsoid")
    qs = qcga.dual_quadric_from_coefficients(q)
    for p in oracle.sample_surface(q, 10, rng):
        n, d = qcga.plane_normal_offset(qcga.tangent_plane(qs, p))
        n0, d0 = oracle.tangent_plane(q, p)
        assert np.allclose(n, n0, atol=1e-9)
        assert 3.0 * qcga.tangent_plane(qs, p).coefficient("einf1") == pytest.approx(np.linalg.norm(p))
        n, d = qcga.plane_normal_offset(qcga.tangent_plane(qs, p, orthogonal_offset=True))
        assert np.allclose(n, n0, atol=1e-9) and d == pytest.approx(d0, abs=1e-9)


def test_lines():
    assert qcga.line_from_plucker(XAXIS).isclose(3.0 * (qcga.E[1] ^ qcga.E[2]), 0.0)
    alt = qcga.line_from_plucker_moment_first(XAXIS)
    assert alt.isclose(qcga.EINF_SUM ^ qcga.E[1] ^ qcga.E[2], 1e-15)
    line = PluckerLine.from_point_direction((0.3, -1, 2), (1, 2, -0.5))
    ls = qcga.line_from_plucker(line)
    assert len(ls) <= 12
    for t in (-2.0, 0.0, 1.5):
        x = qcga.embed_point(line.point_at(t))
        assert (x | ls).max_abs() < 1e-12
    with pytest.raises(DegenerateError):
        qcga.line_from_plucker(SimpleNamespace(n=np.zeros(3), m=np.zeros(3)))


def test_intersection_examples():
    qs = qcga.dual_quadric_from_coefficients(SPHERE)
    c = qcga.intersect(qs, qcga.line_from_plucker(XAXIS))
    for root in ((1, 0, 0), (-1, 0, 0)):
        assert qcga.pair_point_residual(c, root) < 1e-14
    for miss in ((0, 0, 0), (0.5, 0, 0), (1, 0.1, 0)):
        assert qcga.pair_point_residual(c, miss) > 1e-3
    far = qcga.intersect(qs, qcga.line_from_plucker(PluckerLine.from_point_direction((0, 0, 2), (1, 0, 0))))
    for t in np.linspace(-3, 3, 13):
        assert qcga.pair_point_residual(far, (t, 0, 2)) > 1e-3


def test_moment_first_line_misses_the_roots():
    qs = qcga.dual_quadric_from_coefficients(SPHERE)
    c = qcga.intersect(qs, qcga.line_from_plucker_moment_first(XAXIS))
    assert qcga.pair_point_residual(c, (1, 0, 0)) > 0.1
