"""Double conformal GA G(8,2): two copies of 3D CGA glued by the outer product.

Basis order: ``eo1 e1 e2 e3 einf1 | eo2 e4 e5 e6 einf2`` with
``eoK . einfK = -1`` and the six Euclidean vectors orthonormal.

Quadrics are bivectors spanned by ten ``T`` operators; a point is
``X = x1 ^ x2`` with ``x1, x2`` the CGA embeddings in each copy.  The scalar
``Q . X`` is exactly the implicit polynomial.
"""

from __future__ import annotations

import numpy as np

from .algebra import (
    Algebra,
    Multivector,
    ProductCounter,
    commutator,
    inner,
    left_contraction,
    outer_product,
    scalar_product,
    scale,
)
from .errors import DegenerateError, NotInSpanError, SingularPointError
from .oracle import NAMES, PluckerLine, QuadricCoefficients

NAMES_DCGA = ["eo1", "e1", "e2", "e3", "einf1", "eo2", "e4", "e5", "e6", "einf2"]


def _gram() -> np.ndarray:
    G = np.zeros((10, 10))
    for k in (1, 2, 3, 6, 7, 8):
        G[k, k] = 1.0
    G[0, 4] = G[4, 0] = -1.0
    G[5, 9] = G[9, 5] = -1.0
    return G


ALGEBRA = Algebra(NAMES_DCGA, _gram(), null_pairs=[("eo1", "einf1"), ("eo2", "einf2")], name="DCGA G(8,2)")
_A = ALGEBRA
_b = _A.blade

# directions the ten coefficients multiply; keys follow the canonical letters
T = {
    "a": _b("e4", "e1"),
    "b": _b("e5", "e2"),
    "c": _b("e6", "e3"),
    "d": 0.5 * (_b("e5", "e1") + _b("e4", "e2")),  # xy
    "e": 0.5 * (_b("e5", "e3") + _b("e6", "e2")),  # yz
    "f": 0.5 * (_b("e6", "e1") + _b("e4", "e3")),  # zx
    "g": 0.5 * (_b("e1", "einf2") + _b("einf1", "e4")),
    "h": 0.5 * (_b("e2", "einf2") + _b("einf1", "e5")),
    "i": 0.5 * (_b("e3", "einf2") + _b("einf1", "e6")),
    "j": -_b("einf1", "einf2"),
}

# reciprocal extraction operators: T_RECIPROCAL[k] . T[l] = delta_kl
T_RECIPROCAL = {
    "a": _b("e1", "e4"),
    "b": _b("e2", "e5"),
    "c": _b("e3", "e6"),
    "d": _b("e1", "e5") + _b("e2", "e4"),
    "e": _b("e3", "e5") + _b("e2", "e6"),
    "f": _b("e1", "e6") + _b("e3", "e4"),
    "g": _b("e1", "eo2") + _b("eo1", "e4"),
    "h": _b("e2", "eo2") + _b("eo1", "e5"),
    "i": _b("e3", "eo2") + _b("eo1", "e6"),
    "j": _b("eo1", "eo2"),
}

# differential operators along x, y, z
D = [
    _b("e1", "einf1") + _b("e4", "einf2"),
    _b("e2", "einf1") + _b("e5", "einf2"),
    _b("e3", "einf1") + _b("e6", "einf2"),
]

EINF1 = _A.e("einf1")
EINF2 = _A.e("einf2")
EINF21 = _b("einf2", "einf1")
I_EUCLID_1 = _b("e1", "e2", "e3")
I_EUCLID_2 = _b("e4", "e5", "e6")


def cga_points(p) -> tuple[Multivector, Multivector]:
    """The two CGA embeddings ``x1`` (first copy) and ``x2`` (second copy)."""
    x, y, z = np.asarray(p, dtype=float)
    r2 = 0.5 * (x * x + y * y + z * z)
    x1 = _A.vector({"eo1": 1.0, "e1": x, "e2": y, "e3": z, "einf1": r2})
    x2 = _A.vector({"eo2": 1.0, "e4": x, "e5": y, "e6": z, "einf2": r2})
    return x1, x2


def embed_point(p) -> Multivector:
    x1, x2 = cga_points(p)
    return outer_product(x1, x2)


def normalize_point(X: Multivector) -> Multivector:
    """Rescale a DCGA point so that its ``eo1 ^ eo2`` weight is one.

    The weight is ``X . (einf2 ^ einf1)``, which equals one on embedded points.
    """
    w = scalar_product(X, EINF21)
    if w == 0.0:
        raise DegenerateError("point at infinity cannot be normalized")
    return X / w


def point_coordinates(X: Multivector) -> np.ndarray:
    """Euclidean coordinates of a (possibly scaled) DCGA point."""
    Xn = normalize_point(X)
    e1, e2, e3 = _A.e("e1"), _A.e("e2"), _A.e("e3")
    # e_k _| X is (coordinate k) * x2, so its eo2 part is the coordinate
    return np.array([left_contraction(ek, Xn)[1 << _A.index("eo2")] for ek in (e1, e2, e3)])


def quadric_from_coefficients(q: QuadricCoefficients) -> Multivector:
    out = _A.zero()
    for name, v in zip(NAMES, q.as_array()):
        if v != 0.0:
            out = out + T[name] * v
    return out


def extract_coefficients(Q: Multivector, tol: float = 1e-9) -> QuadricCoefficients:
    coeffs = QuadricCoefficients.from_array([scalar_product(T_RECIPROCAL[n], Q) for n in NAMES])
    residual = (Q - quadric_from_coefficients(coeffs)).max_abs()
    if residual > tol * max(Q.max_abs(), 1e-300):
        raise NotInSpanError("not a DCGA quadric: multivector leaves the T-operator span")
    return coeffs


def contains(Q: Multivector, X: Multivector, counter: ProductCounter | None = None) -> float:
    """``Q . X``: zero exactly when the embedded point lies on the quadric."""
    return scalar_product(Q, X, counter)


def derivative_bivectors(Q: Multivector, counter: ProductCounter | None = None) -> list[Multivector]:
    """``D_k x Q`` for k = x, y, z; each is a linear combination of ``T`` operators."""
    return [commutator(Dk, Q, counter) for Dk in D]


def normal(Q: Multivector, X: Multivector, counter: ProductCounter | None = None,
           setup: ProductCounter | None = None) -> Multivector:
    """Unnormalized gradient ``n1`` in the first CGA copy (``e1, e2, e3``).

    ``setup`` receives the multiplications of the commutators, which are a
    coefficient rearrangement of ``Q`` and not part of the per-point cost.
    """
    dq = derivative_bivectors(Q, setup)
    vals = [scalar_product(dk, X, counter) for dk in dq]
    return _A.vector({"e1": vals[0], "e2": vals[1], "e3": vals[2]})


def tangent_plane(Q: Multivector, p, tol: float = 1e-8, counter: ProductCounter | None = None,
                  setup: ProductCounter | None = None) -> Multivector:
    """Tangent plane ``(n1 + d einf1) ^ (n2 + d einf2)`` with unit ``n1``.

    ``d = n1 . x1`` is the orthogonal distance of the plane from the origin.
    """
    p = np.asarray(p, dtype=float)
    x1, _ = cga_points(p)
    X = embed_point(p)
    qscale = max(Q.max_abs(), 1e-300)
    if abs(contains(Q, X)) > tol * max(1.0, qscale):
        raise ValueError("point is not on the quadric")
    n1 = normal(Q, X, counter, setup)
    sq = scalar_product(n1, n1, counter)
    if sq <= (1e-12 * qscale) ** 2:
        raise SingularPointError("singular point: the gradient vanishes")
    n1 = scale(n1, 1.0 / np.sqrt(sq), counter)
    c = [n1[1 << _A.index(k)] for k in ("e1", "e2", "e3")]
    n2 = _A.vector({"e4": c[0], "e5": c[1], "e6": c[2]})
    d = scalar_product(n1, x1, counter)
    return outer_product(n1 + scale(EINF1, d, counter), n2 + scale(EINF2, d, counter), counter)


def plane_from_normal(n, d: float) -> Multivector:
    """DCGA plane ``n . p = d`` (``n`` is normalized here)."""
    n = np.asarray(n, dtype=float)
    n = n / np.linalg.norm(n)
    n1 = _A.vector({"e1": n[0], "e2": n[1], "e3": n[2], "einf1": d})
    n2 = _A.vector({"e4": n[0], "e5": n[1], "e6": n[2], "einf2": d})
    return outer_product(n1, n2)


def plane_normal_offset(Pi: Multivector) -> tuple[np.ndarray, float]:
    """Read back ``(n, d)`` from a plane bivector, up to a common sign."""
    eu = ("e1", "e2", "e3")
    cp = ("e4", "e5", "e6")
    N = np.array([[Pi.coefficient(a, b) for b in cp] for a in eu])
    k = int(np.argmax(np.abs(np.diag(N))))
    if N[k, k] <= 0.0:
        raise DegenerateError("multivector is not a DCGA plane")
    n = N[k] / np.sqrt(N[k, k])
    d = Pi.coefficient(eu[k], "einf2") / n[k]
    scale_ = np.linalg.norm(n)
    return n / scale_, d / scale_


def _cga_dual_line(direction, point, copy: int) -> Multivector:
    """``d I^-1 - (x . (d I^-1)) ^ einf`` inside one CGA copy."""
    eu = ("e1", "e2", "e3") if copy == 1 else ("e4", "e5", "e6")
    I_eu = I_EUCLID_1 if copy == 1 else I_EUCLID_2
    einf = EINF1 if copy == 1 else EINF2
    I_inv = -I_eu  # (e1 e2 e3)^-1 = -e1 e2 e3
    dvec = _A.vector(dict(zip(eu, direction)))
    x = cga_points(point)[copy - 1]
    B = dvec * I_inv
    return B - outer_product(inner(x, B), einf)


def line_from_plucker(line: PluckerLine) -> Multivector:
    """Grade-4 line ``l1 ^ l2`` built from one CGA dual line per copy."""
    n = line.n / np.linalg.norm(line.n)
    p0 = line.closest_point()
    return outer_product(_cga_dual_line(n, p0, 1), _cga_dual_line(n, p0, 2))


def line_from_planes(P1: Multivector, P2: Multivector) -> Multivector:
    n1, _ = plane_normal_offset(P1)
    n2, _ = plane_normal_offset(P2)
    if np.linalg.norm(np.cross(n1, n2)) < 1e-12:
        raise DegenerateError("parallel planes do not meet in a finite line")
    L = outer_product(P1, P2)
    if L.is_zero(1e-14 * max(P1.max_abs() * P2.max_abs(), 1e-300)):
        raise DegenerateError("planes do not define a line")
    return L


def intersect(Q: Multivector, L: Multivector, counter: ProductCounter | None = None) -> Multivector:
    """Grade-6 pair-point entity ``Q ^ L``."""
    return outer_product(Q, L, counter)


def pair_point_residual(P: Multivector, p) -> float:
    """Relative size of ``X _| P``; vanishes iff ``p`` is on both the quadric and the line."""
    X = embed_point(p)
    r = left_contraction(X, P)
    denom = X.norm() * P.norm()
    return r.norm() / denom if denom else 0.0
