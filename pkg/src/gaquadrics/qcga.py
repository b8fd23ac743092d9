"""Quadric conformal GA G(9,6): dual quadrics are plain vectors.

Basis order: ``e1 e2 e3 | eo1..eo6 | einf1..einf6`` with ``eoK . einfK = -1``.
A point carries its six degree-two monomials on ``einf1..einf6`` so that the
inner product of a point with a dual quadric ``q*`` is the implicit
polynomial.
"""

from __future__ import annotations

import itertools

import numpy as np

from .algebra import (
    Algebra,
    Multivector,
    ProductCounter,
    dual,
    left_contraction,
    outer_product,
    scalar_product,
    scale,
    wedge_all,
)
from .errors import DegenerateError, FormulaDomainError, NotInSpanError, SingularPointError
from .oracle import NAMES, PluckerLine, QuadricCoefficients, canonical_distance, fit_nine_points

NAMES_QCGA = (["e1", "e2", "e3"] + [f"eo{k}" for k in range(1, 7)]
              + [f"einf{k}" for k in range(1, 7)])


def _gram() -> np.ndarray:
    G = np.zeros((15, 15))
    for k in range(3):
        G[k, k] = 1.0
    for k in range(6):
        G[3 + k, 9 + k] = G[9 + k, 3 + k] = -1.0
    return G


ALGEBRA = Algebra(NAMES_QCGA, _gram(), null_pairs=[(f"eo{k}", f"einf{k}") for k in range(1, 7)],
                  name="QCGA G(9,6)")
_A = ALGEBRA
E = [_A.e(f"e{k}") for k in (1, 2, 3)]
EO = [_A.e(f"eo{k}") for k in range(1, 7)]
EINF = [_A.e(f"einf{k}") for k in range(1, 7)]
EINF_SUM = EINF[0] + EINF[1] + EINF[2]
E_INF = EINF_SUM / 3.0
E_O = EO[0] + EO[1] + EO[2]
I_EUCLID = E[0] ^ E[1] ^ E[2]

# dual-quadric directions, q* = sum of coefficient * direction
Q_DIRECTIONS = {
    "a": -2.0 * EO[0],
    "b": -2.0 * EO[1],
    "c": -2.0 * EO[2],
    "d": -EO[3],  # xy
    "e": -EO[5],  # yz
    "f": -EO[4],  # zx
    "g": E[0],
    "h": E[1],
    "i": E[2],
    "j": -EINF_SUM / 3.0,
}

Q_RECIPROCAL = {
    "a": 0.5 * EINF[0],
    "b": 0.5 * EINF[1],
    "c": 0.5 * EINF[2],
    "d": EINF[3],
    "e": EINF[5],
    "f": EINF[4],
    "g": E[0],
    "h": E[1],
    "i": E[2],
    "j": E_O,
}

# the dual quadrics are exactly the vectors orthogonal to these five
COMPLEMENT_FACTORS = (EO[3], EO[4], EO[5], EO[0] - EO[1], EO[1] - EO[2])
COMPLEMENT_LABELS = ("eo4", "eo5", "eo6", "eo1-eo2", "eo2-eo3")


def embed_point(p) -> Multivector:
    x, y, z = np.asarray(p, dtype=float)
    return _A.vector({
        "e1": x, "e2": y, "e3": z,
        "einf1": 0.5 * x * x, "einf2": 0.5 * y * y, "einf3": 0.5 * z * z,
        "einf4": x * y, "einf5": x * z, "einf6": y * z,
        "eo1": 1.0, "eo2": 1.0, "eo3": 1.0,
    })


def normalize_point(x: Multivector) -> Multivector:
    """``-x / (x . einf)`` with ``einf`` the mean of the first three infinity vectors."""
    w = scalar_product(x, E_INF)
    if abs(w) <= 1e-300:
        raise DegenerateError("point at infinity cannot be normalized")
    return x / (-w)


def point_coordinates(x: Multivector) -> np.ndarray:
    xn = normalize_point(x)
    return np.array([scalar_product(xn, ek) for ek in E])


def pseudo_distance(x1: Multivector, x2: Multivector) -> float:
    """Inner product of the normalized points, ``-|p1 - p2|^2 / 2``."""
    return scalar_product(normalize_point(x1), normalize_point(x2))


def dual_quadric_from_coefficients(q: QuadricCoefficients) -> Multivector:
    out = _A.zero()
    for name, v in zip(NAMES, q.as_array()):
        if v != 0.0:
            out = out + Q_DIRECTIONS[name] * v
    return out


def extract_coefficients(qs: Multivector, tol: float = 1e-9) -> QuadricCoefficients:
    if qs.grades() - {1}:
        raise NotInSpanError("not a QCGA dual quadric: expected a vector")
    coeffs = QuadricCoefficients.from_array([scalar_product(Q_RECIPROCAL[n], qs) for n in NAMES])
    residual = (qs - dual_quadric_from_coefficients(coeffs)).max_abs()
    if residual > tol * max(qs.max_abs(), 1e-300):
        raise NotInSpanError("not a QCGA dual quadric: vector leaves the quadric span")
    return coeffs


def eval_membership(qs: Multivector, p, counter: ProductCounter | None = None) -> float:
    """``x . q*`` for the embedded point ``x``."""
    return scalar_product(embed_point(p), qs, counter)


def quadric_from_nine_points(points, method: str = "reference") -> Multivector:
    """Dual quadric through nine points.

    ``method="reference"`` takes the null space of the design matrix;
    ``method="wedge"`` forms ``x1 ^ ... ^ x9 ^ K`` with the complement blade
    ``K`` of the dual-quadric span and dualizes it.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    ref = fit_nine_points(pts)  # rank check for both paths
    if method == "reference":
        return dual_quadric_from_coefficients(ref)
    if method == "wedge":
        if len(pts) != 9:
            raise ValueError("the wedge path needs exactly nine points")
        return wedge_fit(pts, COMPLEMENT_FACTORS)
    raise ValueError(f"unknown method {method!r}")


def wedge_fit(points, factors) -> Multivector:
    blade = wedge_all([embed_point(p) for p in points] + list(factors))
    if blade.is_zero():
        raise DegenerateError("degenerate configuration: the wedge of the points vanishes")
    qs = dual(blade)
    return qs / qs.max_abs()


def search_complement_blade(pool: dict[str, Multivector], trials: int = 20, seed: int = 0,
                            tol: float = 1e-8) -> tuple[str, ...] | None:
    """First grade-5 blade from ``pool`` whose wedge fit matches the reference fit.

    Candidates are screened on one point set and confirmed on ``trials``
    sets of nine points drawn from random ellipsoids.
    """
    from .oracle import random_quadric, sample_surface

    rng = np.random.default_rng(seed)
    sets = []
    for _ in range(trials):
        q = random_quadric(rng, "ellipsoid")
        sets.append((sample_surface(q, 9, rng), q))
    heads = [wedge_all(embed_point(p) for p in pts) for pts, _ in sets]
    names = list(pool)
    for combo in itertools.combinations(names, 5):
        K = wedge_all(pool[n] for n in combo)
        if K.is_zero():
            continue
        ok = True
        for head, (pts, _) in zip(heads, sets):
            full = outer_product(head, K)
            if full.is_zero(1e-14 * head.max_abs() * K.max_abs()):
                ok = False
                break
            qs = dual(full)
            try:
                got = extract_coefficients(qs, tol=1e-6)
            except NotInSpanError:
                ok = False
                break
            if canonical_distance(got, fit_nine_points(pts)) > tol:
                ok = False
                break
        if ok:
            return combo
    return None


def normal(qs: Multivector, p, counter: ProductCounter | None = None) -> Multivector:
    """Gradient vector ``n_eps`` built from three 4-term probes of ``q*``."""
    x = embed_point(p)
    c = [scalar_product(x, ek, counter) for ek in E]
    probes = [
        [(c[0], EINF[0]), (c[1], EINF[3]), (c[2], EINF[4])],
        [(c[1], EINF[1]), (c[0], EINF[3]), (c[2], EINF[5])],
        [(c[2], EINF[2]), (c[0], EINF[4]), (c[1], EINF[5])],
    ]
    out = _A.zero()
    for k, probe in enumerate(probes):
        v = E[k]
        for s, b in probe:
            v = v + scale(b, s, counter)
        out = out + E[k] * scalar_product(v, qs, counter)
    return out


def tangent_plane(qs: Multivector, p, tol: float = 1e-8, counter: ProductCounter | None = None,
                  orthogonal_offset: bool = False) -> Multivector:
    """Tangent dual plane ``n_eps + einf sqrt(-2 eo . x)``.

    The offset term is the distance of ``p`` from the origin, which is the
    plane's orthogonal offset only when the normal points at the origin.
    ``orthogonal_offset=True`` uses the unit normal and ``n . p`` instead, so
    that the plane passes through ``p``.
    """
    p = np.asarray(p, dtype=float)
    x = embed_point(p)
    qscale = max(qs.max_abs(), 1e-300)
    if abs(scalar_product(x, qs)) > tol * max(1.0, qscale):
        raise ValueError("point is not on the quadric")
    n = normal(qs, p, counter)
    if n.norm() <= 1e-12 * qscale:
        raise SingularPointError("singular point: the gradient vanishes")
    if orthogonal_offset:
        n = n / n.norm()
        d = float(np.dot([n.coefficient(f"e{k}") for k in (1, 2, 3)], p))
        return n + E_INF * d
    radicand = -2.0 * scalar_product(E_O, x, counter)
    if radicand < 0.0:
        raise FormulaDomainError("formula domain: negative radicand in the tangent-plane offset")
    return n + scale(E_INF, np.sqrt(radicand), counter)


def plane_normal_offset(pi: Multivector) -> tuple[np.ndarray, float]:
    """Unit normal and offset ``d`` of a dual plane ``n + d einf`` (``n . x = d``)."""
    n = np.array([pi.coefficient(f"e{k}") for k in (1, 2, 3)])
    norm = np.linalg.norm(n)
    if norm == 0.0:
        raise DegenerateError("plane at infinity has no finite normal")
    d = 3.0 * pi.coefficient("einf1")
    return n / norm, d / norm


def line_from_plucker(line: PluckerLine) -> Multivector:
    """Dual line ``3 n I_eps - (einf1 + einf2 + einf3) ^ m``.

    ``x . l*`` vanishes for every point of the line.  The direction sits in
    the Euclidean bivector part and the moment is wedged with the infinity
    sum.
    """
    n = np.asarray(line.n, dtype=float)
    if np.linalg.norm(n) == 0.0:
        raise DegenerateError("zero direction")
    nv = _A.vector({"e1": n[0], "e2": n[1], "e3": n[2]})
    mv = _A.vector({"e1": line.m[0], "e2": line.m[1], "e3": line.m[2]})
    return 3.0 * (nv * I_EUCLID) - outer_product(EINF_SUM, mv)


def line_from_plucker_moment_first(line: PluckerLine) -> Multivector:
    """Grade-3 alternative ``3 m I_eps + (einf3 + einf2 + einf1) ^ n I_eps``.

    Kept for comparison only: it does not vanish at the intersection points.
    """
    n, m = line.n, line.m
    nv = _A.vector({"e1": n[0], "e2": n[1], "e3": n[2]})
    mv = _A.vector({"e1": m[0], "e2": m[1], "e3": m[2]})
    return 3.0 * (mv * I_EUCLID) + outer_product(EINF_SUM, nv * I_EUCLID)


def intersect(qs: Multivector, ls: Multivector, counter: ProductCounter | None = None) -> Multivector:
    """``c* = q* ^ l*``."""
    return outer_product(qs, ls, counter)


def pair_point_residual(cs: Multivector, p) -> float:
    """Relative size of ``x _| c*``: zero iff ``p`` is on the line and the quadric."""
    x = embed_point(p)
    r = left_contraction(x, cs)
    denom = x.norm() * cs.norm()
    return r.norm() / denom if denom else 0.0


__all__ = [
    "ALGEBRA",
    "embed_point",
    "normalize_point",
    "point_coordinates",
    "pseudo_distance",
    "dual_quadric_from_coefficients",
    "extract_coefficients",
    "eval_membership",
    "quadric_from_nine_points",
    "tangent_plane",
    "line_from_plucker",
    "intersect",
    "pair_point_residual",
]
