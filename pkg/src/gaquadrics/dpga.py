"""Double perspective GA G(4,4): a projective basis ``w0..w3`` and its dual copy.

The only nonzero inner products are ``wi . wi* = 1/2``.  Points come in a
primal form ``p`` (on the ``w`` side) and a dual form ``p*``; a quadric is a
bivector ``Q`` of mixed ``w* ^ w`` terms evaluated by ``p . Q . p*``.
"""

from __future__ import annotations

import numpy as np

from .algebra import (
    Algebra,
    Multivector,
    ProductCounter,
    exp_bivector,
    geometric_product,
    inner,
    inverse,
    left_contraction,
    outer_product,
    reverse,
    scalar_product,
    versor_sandwich,
)
from .errors import DegenerateError, NotInSpanError, SingularVersorError
from .oracle import NAMES, QuadricCoefficients

NAMES_DPGA = ["w0", "w1", "w2", "w3", "w0*", "w1*", "w2*", "w3*"]


def _gram() -> np.ndarray:
    G = np.zeros((8, 8))
    for k in range(4):
        G[k, k + 4] = G[k + 4, k] = 0.5
    return G


ALGEBRA = Algebra(NAMES_DPGA, _gram(), null_pairs=[(f"w{k}", f"w{k}*") for k in range(4)], name="DPGA G(4,4)")
_A = ALGEBRA
W = [_A.e(f"w{k}") for k in range(4)]
WS = [_A.e(f"w{k}*") for k in range(4)]
I_W = W[0] ^ W[1] ^ W[2] ^ W[3]
I_WS = WS[0] ^ WS[1] ^ WS[2] ^ WS[3]
PSEUDOSCALAR = _A.pseudoscalar


def _sym(k: int, l: int) -> Multivector:
    return (WS[k] ^ W[l]) + (WS[l] ^ W[k])


# quadric directions; index 0,1,2 = x,y,z and 3 = homogeneous
W_DIRECTIONS = {
    "a": 4.0 * (WS[0] ^ W[0]),
    "b": 4.0 * (WS[1] ^ W[1]),
    "c": 4.0 * (WS[2] ^ W[2]),
    "d": 2.0 * _sym(0, 1),  # xy
    "e": 2.0 * _sym(1, 2),  # yz
    "f": 2.0 * _sym(0, 2),  # zx
    "g": 2.0 * _sym(0, 3),
    "h": 2.0 * _sym(1, 3),
    "i": 2.0 * _sym(2, 3),
    "j": 4.0 * (WS[3] ^ W[3]),
}

W_RECIPROCAL = {
    "a": WS[0] ^ W[0],
    "b": WS[1] ^ W[1],
    "c": WS[2] ^ W[2],
    "d": 2.0 * (WS[1] ^ W[0]),
    "e": 2.0 * (WS[2] ^ W[1]),
    "f": 2.0 * (WS[2] ^ W[0]),
    "g": 2.0 * (WS[3] ^ W[0]),
    "h": 2.0 * (WS[3] ^ W[1]),
    "i": 2.0 * (WS[3] ^ W[2]),
    "j": WS[3] ^ W[3],
}

# exp(GENERATOR_SCALE * theta/2 * (wi ^ wj* - wj ^ wi*)) rotates by theta from axis i toward j;
# the value is recovered by calibrate_generator_scale()
GENERATOR_SCALE = -2.0


def point(p, w: float = 1.0) -> Multivector:
    x, y, z = np.asarray(p, dtype=float)
    return _A.vector({"w0": x, "w1": y, "w2": z, "w3": w})


def dual_point(p, w: float = 1.0) -> Multivector:
    x, y, z = np.asarray(p, dtype=float)
    return _A.vector({"w0*": x, "w1*": y, "w2*": z, "w3*": w})


def point_coordinates(v: Multivector) -> np.ndarray:
    """Euclidean coordinates of a primal or dual point, divided by its homogeneous part."""
    primal = [v.coefficient(f"w{k}") for k in range(4)]
    dual_ = [v.coefficient(f"w{k}*") for k in range(4)]
    c = primal if any(primal) else dual_
    if c[3] == 0.0:
        raise DegenerateError("point at infinity has no Euclidean coordinates")
    return np.array(c[:3]) / c[3]


def quadric_from_coefficients(q: QuadricCoefficients) -> Multivector:
    out = _A.zero()
    for name, v in zip(NAMES, q.as_array()):
        if v != 0.0:
            out = out + W_DIRECTIONS[name] * v
    return out


def extract_coefficients(Q: Multivector, tol: float = 1e-9) -> QuadricCoefficients:
    coeffs = QuadricCoefficients.from_array([scalar_product(W_RECIPROCAL[n], Q) for n in NAMES])
    residual = (Q - quadric_from_coefficients(coeffs)).max_abs()
    if residual > tol * max(Q.max_abs(), 1e-300):
        raise NotInSpanError("not a DPGA quadric: multivector leaves the W-operator span")
    return coeffs


def eval_membership(Q: Multivector, p, counter: ProductCounter | None = None) -> float:
    """``p . Q . p*``, contracted left to right."""
    return scalar_product(left_contraction(point(p), Q, counter), dual_point(p), counter)


def eval_polynomial(q: QuadricCoefficients, p) -> float:
    """Closed-form development of ``p . Q . p*`` through the intermediate vector ``p . Q``.

    The four components of ``p . Q`` are twice the half-gradient terms; the
    final contraction with ``p*`` halves each of them again.
    """
    a, b, c, d, e, f, g, h, i, j = q.as_array()
    x, y, z = np.asarray(p, dtype=float)
    v0 = 2 * a * x + d * y + f * z + g
    v1 = 2 * b * y + d * x + e * z + h
    v2 = 2 * c * z + f * x + e * y + i
    v3 = g * x + h * y + i * z + 2 * j
    return 0.5 * (v0 * x + v1 * y + v2 * z + v3)


def tangent_plane_dual(Q: Multivector, p, counter: ProductCounter | None = None) -> Multivector:
    """``Pi* = Q . p*``, a vector on the dual side.

    Its ``w0*, w1*, w2*`` coefficients are the gradient of the implicit
    function at ``p`` and its ``w3*`` coefficient is minus the gradient dotted
    with ``p`` when ``p`` is on the surface.  Off the surface this is the polar
    plane of ``p``.
    """
    return inner(Q, dual_point(p), counter)


def plane_normal_offset(Pi: Multivector) -> tuple[np.ndarray, float]:
    """Unit normal ``n`` and offset ``d`` of the plane ``n . x = d``."""
    n = np.array([Pi.coefficient(f"w{k}*") for k in range(3)])
    c = Pi.coefficient("w3*")
    norm = np.linalg.norm(n)
    if norm == 0.0:
        raise DegenerateError("plane at infinity has no finite normal")
    return n / norm, -c / norm


def line(x1, x2) -> Multivector:
    L = outer_product(point(x1), point(x2))
    if L.is_zero(1e-14):
        raise DegenerateError("coincident points do not define a line")
    return L


def dual_line(x1, x2) -> Multivector:
    L = outer_product(dual_point(x1), dual_point(x2))
    if L.is_zero(1e-14):
        raise DegenerateError("coincident points do not define a line")
    return L


def intersect(Ls: Multivector, Q: Multivector, L: Multivector, counter: ProductCounter | None = None,
              setup: ProductCounter | None = None, pseudoscalar_form: bool = False) -> Multivector:
    """Pair-point bivector of a quadric and a line.

    With ``pseudoscalar_form=True`` this returns ``(L* ^ Q ^ L) . I``.  That bivector
    is the quadric compressed onto the homogeneous complement of the line, so
    every point of the line annihilates it and it cannot single out the
    intersection points.

    The default feeds the same wedge chain with the complements of the line,
    ``L*`` contracted onto ``w0^w1^w2^w3`` and ``L`` onto its dual copy, and
    then divides the complement 4-blade back out.  The result is the quadric
    restricted to the line: ``p . P . p*`` equals the implicit function at
    every point of the line.  ``counter`` sees the wedge chain, ``setup`` the
    complements and the final contraction.
    """
    if pseudoscalar_form:
        return inner(outer_product(outer_product(Ls, Q, counter), L, counter), PSEUDOSCALAR, setup)
    Lp = left_contraction(Ls, I_W, setup)
    Lps = left_contraction(L, I_WS, setup)
    E = outer_product(outer_product(Lps, Q, counter), Lp, counter)
    K = outer_product(Lps, Lp, setup)
    if K.is_zero(1e-14 * max(Lp.max_abs() * Lps.max_abs(), 1e-300)):
        raise DegenerateError("line has no complement; check the input points")
    return left_contraction(inverse(K), E, setup)


def pair_point_residual(P: Multivector, p, L: Multivector | None = None) -> float:
    """Relative size of ``p . P . p*``, plus the incidence ``p ^ L`` when ``L`` is given.

    On the line the first term is the implicit function, so both vanish
    exactly when ``p`` is an intersection point.
    """
    pp = point(p)
    val = abs(scalar_product(left_contraction(pp, P), dual_point(p)))
    scale_ = P.norm() * float(np.dot(np.append(p, 1.0), np.append(p, 1.0)))
    r = val / scale_ if scale_ else 0.0
    if L is not None:
        inc = outer_product(pp, L)
        r = max(r, inc.norm() / (pp.norm() * L.norm()))
    return r


def _generator(i: int, j: int, scale_: float, single_term: bool) -> Multivector:
    if single_term:
        return geometric_product(W[i], WS[j]).grade(2)
    return scale_ * ((W[i] ^ WS[j]) - (W[j] ^ WS[i]))


def rotor(theta: float, i: int, j: int, single_term: bool = False, scale_: float | None = None) -> Multivector:
    """Rotor for a rotation by ``theta`` taking axis ``i`` toward axis ``j``.

    ``single_term=True`` exponentiates the single term ``theta/2 wi wj*``
    instead, which mixes the primal and dual sides and is not a rotation.
    """
    if i == j or not {i, j} <= {0, 1, 2}:
        raise ValueError("rotor needs two distinct axis indices in 0..2")
    s = GENERATOR_SCALE if scale_ is None else scale_
    return exp_bivector(_generator(i, j, s, single_term) * (0.5 * theta))


def axis_rotor(axis: str | int, theta: float) -> Multivector:
    """Right-handed rotation about ``x``, ``y`` or ``z``."""
    k = "xyz".index(axis) if isinstance(axis, str) else int(axis)
    i, j = [(1, 2), (2, 0), (0, 1)][k]
    return rotor(theta, i, j)


def axis_angle_rotor(axis, theta: float) -> Multivector:
    """Right-handed rotation by ``theta`` about an arbitrary axis vector."""
    u = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(u)
    if u.shape != (3,) or norm == 0.0:
        raise ValueError("axis must be a nonzero 3-vector")
    u = u / norm
    B = _A.zero()
    for k, (i, j) in enumerate([(1, 2), (2, 0), (0, 1)]):
        if u[k] != 0.0:
            B = B + _generator(i, j, GENERATOR_SCALE, False) * u[k]
    return exp_bivector(B * (0.5 * theta))


def apply(R: Multivector, Q: Multivector, counter: ProductCounter | None = None) -> Multivector:
    """``R Q R^-1``."""
    n = geometric_product(R, reverse(R))
    if abs(n.scalar_part()) < 1e-12:
        raise SingularVersorError("singular versor: R reverse(R) vanishes")
    return versor_sandwich(R, Q, counter)


def calibrate_generator_scale(theta: float = np.pi / 3, candidates=(0.5, 1.0, 2.0, 4.0)) -> float:
    """Find the generator scale whose rotor matches the coordinate rotation.

    A generic quadric is rotated in the ``x, y`` plane by each candidate (with
    both signs) and compared with the classical matrix transform.  Scales that
    amount to a different angle are rejected by the generic quadric.
    """
    from . import oracle

    rng = np.random.default_rng(7)
    q = QuadricCoefficients.from_array(rng.uniform(-1, 1, 10))
    want = oracle.transform(q, oracle.plane_rotation(0, 1, theta))
    Q = quadric_from_coefficients(q)
    for s in candidates:
        for sign in (1.0, -1.0):
            R = rotor(theta, 0, 1, scale_=sign * s)
            try:
                got = extract_coefficients(apply(R, Q))
            except NotInSpanError:
                continue
            if oracle.canonical_distance(got.as_array(), want.as_array()) < 1e-9:
                return sign * s
    raise ValueError("no candidate generator scale reproduces the rotation")
