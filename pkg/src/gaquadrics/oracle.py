"""Classical quadric geometry in homogeneous coordinates.

Nothing here touches geometric algebra.  The functions serve as the
reference the GA frameworks are checked against, and the types
(:class:`QuadricCoefficients`, :class:`PluckerLine`) are the common currency
between frameworks.

A quadric is ``a x^2 + b y^2 + c z^2 + d xy + e yz + f zx + g x + h y + i z + j = 0``.
Points are plain length-3 arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from .errors import DegenerateError, SingularPointError

NAMES = ("a", "b", "c", "d", "e", "f", "g", "h", "i", "j")
MONOMIALS = ("x^2", "y^2", "z^2", "xy", "yz", "zx", "x", "y", "z", "1")


@dataclass(frozen=True)
class QuadricCoefficients:
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0
    e: float = 0.0
    f: float = 0.0
    g: float = 0.0
    h: float = 0.0
    i: float = 0.0
    j: float = 0.0

    @classmethod
    def from_array(cls, arr) -> "QuadricCoefficients":
        arr = np.asarray(arr, dtype=float).ravel()
        if arr.shape != (10,):
            raise ValueError("need exactly ten coefficients")
        return cls(*(float(v) for v in arr))

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, f.name) for f in fields(self)])

    def __iter__(self):
        return iter(self.as_array())

    @property
    def is_degenerate(self) -> bool:
        return not np.any(self.as_array())

    def validate(self) -> "QuadricCoefficients":
        if self.is_degenerate:
            raise DegenerateError("all ten quadric coefficients are zero")
        if not np.all(np.isfinite(self.as_array())):
            raise ValueError("quadric coefficients must be finite")
        return self

    def canonical(self) -> np.ndarray:
        """Unit-norm coefficient vector with the first nonzero entry positive."""
        return canonical(self.as_array())

    def matrix(self) -> np.ndarray:
        """Symmetric 4x4 matrix ``M`` with ``[p 1] M [p 1]^T = f(p)``."""
        a, b, c, d, e, f, g, h, i, j = self.as_array()
        return np.array(
            [
                [a, d / 2, f / 2, g / 2],
                [d / 2, b, e / 2, h / 2],
                [f / 2, e / 2, c, i / 2],
                [g / 2, h / 2, i / 2, j],
            ]
        )

    @classmethod
    def from_matrix(cls, M) -> "QuadricCoefficients":
        M = np.asarray(M, dtype=float)
        if M.shape != (4, 4) or not np.allclose(M, M.T, rtol=0, atol=1e-12 * max(1.0, np.abs(M).max())):
            raise ValueError("quadric matrix must be symmetric 4x4")
        M = (M + M.T) / 2
        return cls(
            M[0, 0], M[1, 1], M[2, 2],
            2 * M[0, 1], 2 * M[1, 2], 2 * M[0, 2],
            2 * M[0, 3], 2 * M[1, 3], 2 * M[2, 3],
            M[3, 3],
        )

    def __str__(self) -> str:
        return " ".join(f"{v:.17g}" for v in self.as_array())


def canonical(coeffs) -> np.ndarray:
    v = np.asarray(coeffs, dtype=float).ravel()
    n = np.linalg.norm(v)
    if n == 0.0:
        raise DegenerateError("cannot normalize an all-zero quadric")
    v = v / n
    nz = np.flatnonzero(np.abs(v) > 1e-14)
    if v[nz[0]] < 0:
        v = -v
    return v


def canonical_distance(q1, q2) -> float:
    """Max-abs difference between the canonical forms of two quadrics."""
    a = q1.canonical() if isinstance(q1, QuadricCoefficients) else canonical(q1)
    b = q2.canonical() if isinstance(q2, QuadricCoefficients) else canonical(q2)
    # near-zero leading entries can flip the sign convention; compare projectively
    return float(min(np.abs(a - b).max(), np.abs(a + b).max()))


@dataclass(frozen=True)
class PluckerLine:
    """Line with direction ``n`` and moment ``m = p x n`` for any point ``p`` on it."""

    n: np.ndarray
    m: np.ndarray

    def __post_init__(self):
        n = np.asarray(self.n, dtype=float).reshape(3)
        m = np.asarray(self.m, dtype=float).reshape(3)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)
        if not np.linalg.norm(n) > 0:
            raise DegenerateError("line direction must be nonzero")
        if abs(n @ m) > 1e-10 * max(1.0, np.linalg.norm(n) * np.linalg.norm(m)):
            raise ValueError("Plucker coordinates must satisfy n . m = 0")

    @classmethod
    def from_point_direction(cls, p, n) -> "PluckerLine":
        p = np.asarray(p, dtype=float)
        n = np.asarray(n, dtype=float)
        return cls(n, np.cross(p, n))

    @classmethod
    def from_points(cls, p1, p2) -> "PluckerLine":
        p1 = np.asarray(p1, dtype=float)
        return cls.from_point_direction(p1, np.asarray(p2, dtype=float) - p1)

    def closest_point(self) -> np.ndarray:
        """Point of the line nearest the origin."""
        return np.cross(self.n, self.m) / (self.n @ self.n)

    def point_at(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return self.closest_point() + t[..., None] * self.n

    def contains(self, p, tol: float = 1e-8) -> bool:
        p = np.asarray(p, dtype=float)
        return bool(np.linalg.norm(np.cross(p, self.n) - self.m) <= tol * max(1.0, np.linalg.norm(self.n)))


def monomials(p) -> np.ndarray:
    """Monomial row ``(x^2, y^2, z^2, xy, yz, zx, x, y, z, 1)``; broadcasts over leading axes."""
    p = np.asarray(p, dtype=float)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    return np.stack([x * x, y * y, z * z, x * y, y * z, z * x, x, y, z, np.ones_like(x)], axis=-1)


def eval(q: QuadricCoefficients, p) -> float | np.ndarray:
    """Value of the implicit polynomial at ``p`` (vectorized over leading axes)."""
    out = monomials(p) @ q.as_array()
    return float(out) if np.ndim(out) == 0 else out


def gradient(q: QuadricCoefficients, p) -> np.ndarray:
    a, b, c, d, e, f, g, h, i, j = q.as_array()
    x, y, z = np.asarray(p, dtype=float)
    return np.array(
        [
            2 * a * x + d * y + f * z + g,
            2 * b * y + d * x + e * z + h,
            2 * c * z + e * y + f * x + i,
        ]
    )


def tangent_plane(q: QuadricCoefficients, p, tol: float = 1e-8) -> tuple[np.ndarray, float]:
    """Unit normal and offset ``(n, n . p)`` of the tangent plane at ``p``."""
    p = np.asarray(p, dtype=float)
    if abs(eval(q, p)) > tol * max(1.0, np.abs(q.as_array()).max()):
        raise ValueError("point is not on the quadric")
    grad = gradient(q, p)
    norm = np.linalg.norm(grad)
    if norm <= 1e-12 * max(1.0, np.abs(q.as_array()).max()):
        raise SingularPointError("singular point: the gradient vanishes")
    n = grad / norm
    return n, float(n @ p)


def line_polynomial(q: QuadricCoefficients, line: PluckerLine) -> tuple[float, float, float]:
    """Coefficients ``(A, B, C)`` of ``f(p0 + t n) = A t^2 + B t + C``."""
    M = q.matrix()
    u = np.append(line.n, 0.0)
    v = np.append(line.closest_point(), 1.0)
    return float(u @ M @ u), float(2 * (u @ M @ v)), float(v @ M @ v)


def intersect_line(q: QuadricCoefficients, line: PluckerLine, tol: float = 1e-10) -> list[np.ndarray]:
    """Real intersection points of a line and a quadric, ordered along ``n``."""
    A, B, C = line_polynomial(q, line)
    size = max(abs(A), abs(B), abs(C))
    if size == 0.0 or (abs(A) <= tol * size and abs(B) <= tol * size and abs(C) <= tol * size):
        raise DegenerateError("degenerate: line in quadric")
    if abs(A) <= tol * size:
        if abs(B) <= tol * size:
            return []
        return [line.point_at(-C / B)]
    disc = B * B - 4 * A * C
    if abs(disc) <= tol * max(B * B, abs(4 * A * C)):
        return [line.point_at(-B / (2 * A))]
    if disc < 0:
        return []
    root = np.sqrt(disc)
    qq = -0.5 * (B + np.copysign(root, B))
    ts = sorted([qq / A, C / qq])
    return [line.point_at(t) for t in ts]


def rotation_matrix(axis: str | int, angle: float) -> np.ndarray:
    """Right-handed rotation about a coordinate axis (``x``, ``y``, ``z`` or 0..2)."""
    k = "xyz".index(axis) if isinstance(axis, str) else int(axis)
    i, j = [(1, 2), (2, 0), (0, 1)][k]
    return plane_rotation(i, j, angle)


def axis_angle_matrix(axis, angle: float) -> np.ndarray:
    """Right-handed rotation about an arbitrary axis (Rodrigues)."""
    u = np.asarray(axis, dtype=float)
    u = u / np.linalg.norm(u)
    K = np.array([[0, -u[2], u[1]], [u[2], 0, -u[0]], [-u[1], u[0], 0]])
    return np.eye(3) + np.sin(angle) * K + (1 - np.cos(angle)) * K @ K


def plane_rotation(i: int, j: int, angle: float) -> np.ndarray:
    """Rotation by ``angle`` in the coordinate plane taking axis ``i`` toward axis ``j``."""
    if i == j:
        raise ValueError("rotation plane needs two distinct axes")
    R = np.eye(3)
    c, s = np.cos(angle), np.sin(angle)
    R[i, i] = c
    R[j, j] = c
    R[j, i] = s
    R[i, j] = -s
    return R


def transform(q: QuadricCoefficients, R=None, t=None) -> QuadricCoefficients:
    """Quadric ``q'`` with ``q'(R p + t) = q(p)``."""
    R = np.eye(3) if R is None else np.asarray(R, dtype=float)
    t = np.zeros(3) if t is None else np.asarray(t, dtype=float)
    if R.shape != (3, 3) or not np.allclose(R.T @ R, np.eye(3), atol=1e-9):
        raise ValueError("R must be an orthonormal 3x3 matrix")
    A_inv = np.eye(4)
    A_inv[:3, :3] = R.T
    A_inv[:3, 3] = -R.T @ t
    M = A_inv.T @ q.matrix() @ A_inv
    return QuadricCoefficients.from_matrix((M + M.T) / 2)


def design_matrix(points) -> np.ndarray:
    return monomials(np.asarray(points, dtype=float).reshape(-1, 3))


def fit_nine_points(points, rank_tol: float = 1e-10) -> QuadricCoefficients:
    """Quadric through the given points from the null space of the design matrix.

    With exactly nine points the null space is one-dimensional when the
    configuration is generic.  More points give the least-squares quadric
    (smallest right singular vector).
    """
    D = design_matrix(points)
    if D.shape[0] < 9:
        raise DegenerateError("need at least nine points to fit a quadric")
    _, sv, Vt = np.linalg.svd(D)
    rank = int(np.sum(sv > rank_tol * sv[0]))
    if rank < 9:
        raise DegenerateError("degenerate configuration: quadric through these points is not unique")
    return QuadricCoefficients.from_array(canonical(Vt[-1]))


# ----------------------------------------------------------------------
# random test material


def random_quadric(rng: np.random.Generator, kind: str = "dense") -> QuadricCoefficients:
    """Random quadric; ``kind="ellipsoid"`` gives a rotated, shifted ellipsoid."""
    if kind == "dense":
        return QuadricCoefficients.from_array(rng.uniform(-1, 1, 10))
    if kind == "ellipsoid":
        axes = rng.uniform(0.5, 2.0, 3)
        base = QuadricCoefficients(*(1 / axes**2), 0, 0, 0, 0, 0, 0, -1.0)
        R, _ = np.linalg.qr(rng.normal(size=(3, 3)))
        if np.linalg.det(R) < 0:
            R[:, 0] = -R[:, 0]
        return transform(base, R, rng.uniform(-0.5, 0.5, 3))
    raise ValueError(f"unknown quadric kind {kind!r}")


def random_line(rng: np.random.Generator, radius: float = 1.0) -> PluckerLine:
    p = rng.uniform(-radius, radius, 3)
    n = rng.normal(size=3)
    return PluckerLine.from_point_direction(p, n / np.linalg.norm(n))


def sample_surface(q: QuadricCoefficients, count: int, rng: np.random.Generator, radius: float = 1.0,
                   max_tries: int = 10000) -> np.ndarray:
    """Points on ``q`` found by intersecting random lines through a ball."""
    pts: list[np.ndarray] = []
    for _ in range(max_tries):
        try:
            hits = intersect_line(q, random_line(rng, radius))
        except DegenerateError:
            continue
        for p in hits:
            if np.linalg.norm(p) < 4 * radius + 4:
                pts.append(p)
        if len(pts) >= count:
            return np.array(pts[:count])
    raise DegenerateError("could not find enough surface points; is the quadric empty?")
