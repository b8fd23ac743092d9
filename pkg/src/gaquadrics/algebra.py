"""Sparse multivectors over an arbitrary symmetric bilinear form.

Blades are keyed by bitmask in the user's basis (bit ``i`` set means basis
vector ``i`` is a factor of the wedge, factors in ascending order).  The
geometric product is evaluated by mapping each blade through the
outermorphism of a change of basis that diagonalizes the Gram matrix,
multiplying with the usual sign rules, and mapping back.  Blade-pair tables
are cached per algebra, so the diagonal detour is paid once per pair.

Null pairs (``e_o . e_inf = g``, both null) are diagonalized with the exact
dyadic map ``e_o = (f+ + f-)/2``, ``e_inf = g (f+ - f-)``, which keeps every
cached table entry exactly representable for the metrics used here.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import AlgebraMismatchError, ConvergenceError, SingularVersorError

MAX_DIM = 16
PRUNE = 1e-13
_TABLE_EPS = 1e-14


@dataclass
class ProductCounter:
    """Tally of real multiplications performed by counted products."""

    products: int = 0

    def add(self, n: int) -> None:
        self.products += n


def grade_of(blade: int) -> int:
    return blade.bit_count()


def _reorder_sign(a: int, b: int) -> int:
    """Sign picked up when the factors of blade ``a`` pass those of ``b``."""
    a >>= 1
    swaps = 0
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1 if swaps & 1 else 1


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _diagonalize(gram: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return ``P, s, P_inv`` with ``P.T @ diag(s) @ P == gram``.

    Column ``i`` of ``P`` expresses basis vector ``i`` in the diagonal basis.
    Diagonal entries and isolated null pairs get exact closed forms; any
    other coupling falls back to a symmetric eigendecomposition.
    """
    n = gram.shape[0]
    P = np.zeros((n, n))
    P_inv = np.zeros((n, n))
    s = np.zeros(n)
    done: set[int] = set()
    structured = True
    for i in range(n):
        if i in done:
            continue
        partners = [j for j in range(n) if j != i and gram[i, j] != 0.0]
        if not partners:
            g = gram[i, i]
            s[i] = np.sign(g)
            root = math.sqrt(abs(g)) if g != 0.0 else 1.0
            P[i, i] = root
            P_inv[i, i] = 1.0 / root
            done.add(i)
            continue
        if len(partners) == 1:
            j = partners[0]
            others = [k for k in range(n) if k != j and gram[j, k] != 0.0]
            if gram[i, i] == 0.0 and gram[j, j] == 0.0 and others == [i]:
                g = gram[i, j]
                # row i carries f+, row j carries f-
                P[i, i], P[j, i] = 0.5, 0.5
                P[i, j], P[j, j] = g, -g
                P_inv[i, i], P_inv[j, i] = 1.0, 1.0 / (2.0 * g)
                P_inv[i, j], P_inv[j, j] = 1.0, -1.0 / (2.0 * g)
                s[i], s[j] = 1.0, -1.0
                done.update((i, j))
                continue
        structured = False
        break
    if not structured:
        w, V = np.linalg.eigh(gram)
        s = np.sign(np.where(np.abs(w) < 1e-12, 0.0, w))
        scale = np.where(s == 0, 1.0, np.sqrt(np.abs(w)))
        P = scale[:, None] * V.T
        P_inv = np.linalg.inv(P)
    if not np.allclose(P.T @ np.diag(s) @ P, gram, atol=1e-12):
        raise ValueError("diagonalization failed to reproduce the Gram matrix")
    return P, s, P_inv


class Algebra:
    """A geometric algebra defined by basis names and a Gram matrix.

    Parameters
    ----------
    names : sequence of str
        Labels of the grade-1 basis vectors, in bit order.
    gram : array_like
        Symmetric ``dim x dim`` matrix of basis inner products.
    null_pairs : iterable of (str, str), optional
        Declared ``(origin, infinity)`` pairs, validated on construction.
    name : str, optional
    """

    def __init__(self, names: Sequence[str], gram, null_pairs=(), name: str = ""):
        gram = np.asarray(gram, dtype=float)
        dim = len(names)
        if not 0 < dim <= MAX_DIM:
            raise ValueError(f"dimension must be in 1..{MAX_DIM}, got {dim}")
        if gram.shape != (dim, dim):
            raise ValueError("gram shape does not match the number of names")
        if not np.array_equal(gram, gram.T):
            raise ValueError("gram must be symmetric")
        self.name = name
        self.names = list(names)
        self.dim = dim
        self.gram = gram
        self._index = {n: i for i, n in enumerate(self.names)}
        for o, inf in null_pairs:
            io, ii = self._index[o], self._index[inf]
            if gram[io, io] != 0 or gram[ii, ii] != 0 or gram[io, ii] == 0:
                raise ValueError(f"({o}, {inf}) is not a null pair under this gram")
        self.P, self.signature, self.P_inv = _diagonalize(gram)
        self._to_diag: dict[int, dict[int, float]] = {}
        self._from_diag: dict[int, dict[int, float]] = {}
        self._tables: dict[tuple, tuple] = {}
        self._pseudoscalar_inverse: Multivector | None = None

    def __repr__(self) -> str:
        return f"Algebra({self.name or self.dim})"

    # ------------------------------------------------------------------
    # element construction
    def index(self, name: str) -> int:
        return self._index[name]

    def scalar(self, value: float) -> "Multivector":
        return Multivector(self, {0: float(value)})

    def zero(self) -> "Multivector":
        return Multivector(self, {})

    def e(self, name: str) -> "Multivector":
        return Multivector(self, {1 << self._index[name]: 1.0})

    def blade(self, *names: str) -> "Multivector":
        """Wedge of the named basis vectors, in the given order."""
        out = self.scalar(1.0)
        for n in names:
            out = outer_product(out, self.e(n))
        return out

    def vector(self, coeffs: Mapping[str, float] | Sequence[float]) -> "Multivector":
        if isinstance(coeffs, Mapping):
            return Multivector(self, {1 << self._index[k]: float(v) for k, v in coeffs.items()})
        if len(coeffs) != self.dim:
            raise ValueError("vector needs one coefficient per basis vector")
        return Multivector(self, {1 << i: float(v) for i, v in enumerate(coeffs)})

    @property
    def pseudoscalar(self) -> "Multivector":
        return Multivector(self, {(1 << self.dim) - 1: 1.0})

    @property
    def pseudoscalar_inverse(self) -> "Multivector":
        if self._pseudoscalar_inverse is None:
            I = self.pseudoscalar
            self._pseudoscalar_inverse = inverse(I)
        return self._pseudoscalar_inverse

    def blade_name(self, blade: int) -> str:
        if blade == 0:
            return "1"
        return "^".join(self.names[i] for i in _bits(blade))

    # ------------------------------------------------------------------
    # change of basis
    def _outermorphism(self, blade: int, M: np.ndarray, cache: dict) -> dict[int, float]:
        hit = cache.get(blade)
        if hit is not None:
            return hit
        terms: dict[int, float] = {0: 1.0}
        for i in _bits(blade):
            col = [(k, M[k, i]) for k in range(self.dim) if M[k, i] != 0.0]
            nxt: dict[int, float] = defaultdict(float)
            for B, c in terms.items():
                for k, p in col:
                    bit = 1 << k
                    if B & bit:
                        continue
                    nxt[B | bit] += _reorder_sign(B, bit) * c * p
            terms = {k: v for k, v in nxt.items() if v != 0.0}
        cache[blade] = terms
        return terms

    def to_diagonal(self, blade: int) -> dict[int, float]:
        """Expansion of a basis blade in the diagonal basis."""
        return self._outermorphism(blade, self.P, self._to_diag)

    def from_diagonal(self, blade: int) -> dict[int, float]:
        return self._outermorphism(blade, self.P_inv, self._from_diag)

    def _diag_product(self, a: int, b: int) -> float:
        sign = _reorder_sign(a, b)
        for k in _bits(a & b):
            sign *= self.signature[k]
        return sign

    def _gp_table(self, A: int, B: int) -> tuple[tuple[int, float], ...]:
        key = ("gp", A, B)
        hit = self._tables.get(key)
        if hit is not None:
            return hit
        diag: dict[int, float] = defaultdict(float)
        for K1, c1 in self.to_diagonal(A).items():
            for K2, c2 in self.to_diagonal(B).items():
                s = self._diag_product(K1, K2)
                if s != 0.0:
                    diag[K1 ^ K2] += s * c1 * c2
        out: dict[int, float] = defaultdict(float)
        for K, c in diag.items():
            if c == 0.0:
                continue
            for C, t in self.from_diagonal(K).items():
                out[C] += c * t
        table = tuple((C, t) for C, t in sorted(out.items()) if abs(t) > _TABLE_EPS)
        self._tables[key] = table
        return table

    def table(self, kind: str, A: int, B: int) -> tuple[tuple[int, float], ...]:
        """Cached blade-pair product table for ``kind``.

        ``kind`` is one of ``"gp"`` (geometric), ``"lc"`` (left contraction),
        ``"dot"`` (symmetric contraction) or ``"scalar"``.
        """
        key = (kind, A, B)
        hit = self._tables.get(key)
        if hit is not None:
            return hit
        full = self._gp_table(A, B)
        ga, gb = grade_of(A), grade_of(B)
        if kind == "gp":
            return full
        if kind == "lc":
            want = gb - ga if ga <= gb else None
        elif kind == "dot":
            want = abs(gb - ga)
        elif kind == "scalar":
            want = 0
        else:
            raise ValueError(f"unknown product kind {kind!r}")
        table = tuple((C, t) for C, t in full if grade_of(C) == want)
        self._tables[key] = table
        return table


class Multivector:
    """Immutable sparse multivector.

    Arithmetic operators: ``+ - *`` (``*`` is the geometric product, or
    scaling by a real), ``^`` outer product, ``|`` symmetric contraction,
    ``~`` reversion.
    """

    __slots__ = ("algebra", "_terms")
    __array_priority__ = 100  # make numpy scalars defer to our operators

    def __init__(self, algebra: Algebra, terms: Mapping[int, float] | None = None):
        self.algebra = algebra
        clean = {}
        limit = 1 << algebra.dim
        for k, v in (terms or {}).items():
            if not 0 <= k < limit:
                raise ValueError(f"blade key {k} out of range for dim {algebra.dim}")
            if v != 0.0:
                clean[k] = float(v)
        self._terms = clean

    @property
    def terms(self) -> dict[int, float]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __getitem__(self, blade: int) -> float:
        return self._terms.get(blade, 0.0)

    def coefficient(self, *names: str) -> float:
        mask = 0
        for n in names:
            mask |= 1 << self.algebra.index(n)
        sign = 1
        order = [self.algebra.index(n) for n in names]
        # permutation parity of the requested order
        for i in range(len(order)):
            for j in range(i + 1, len(order)):
                if order[i] > order[j]:
                    sign = -sign
        return sign * self._terms.get(mask, 0.0)

    def grades(self) -> set[int]:
        return {grade_of(k) for k in self._terms}

    def grade(self, k: int) -> "Multivector":
        return grade_projection(self, k)

    def scalar_part(self) -> float:
        return self._terms.get(0, 0.0)

    def max_abs(self) -> float:
        return max((abs(v) for v in self._terms.values()), default=0.0)

    def norm(self) -> float:
        """Euclidean norm of the coefficient vector (basis dependent)."""
        return math.sqrt(sum(v * v for v in self._terms.values()))

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(abs(v) <= tol for v in self._terms.values())

    def isclose(self, other: "Multivector", tol: float = 1e-12) -> bool:
        diff = self - other
        return diff.max_abs() <= tol

    def _coerce(self, other) -> "Multivector":
        if isinstance(other, Multivector):
            if other.algebra is not self.algebra:
                raise AlgebraMismatchError("operands belong to different algebras")
            return other
        if isinstance(other, (int, float, np.floating, np.integer)):
            return Multivector(self.algebra, {0: float(other)})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0.0) + v
        return Multivector(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return Multivector(self.algebra, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return Multivector(self.algebra, {k: v * other for k, v in self._terms.items()})
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self * (1.0 / other)
        return NotImplemented

    def __xor__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return outer_product(self, other)

    def __or__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return inner(self, other)

    def __invert__(self):
        return reverse(self)

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.algebra is other.algebra and self._terms == other._terms

    __hash__ = None

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms, key=lambda b: (grade_of(b), b)):
            parts.append(f"{self._terms[k]:.6g}*{self.algebra.blade_name(k)}")
        return " + ".join(parts).replace("+ -", "- ")


# ----------------------------------------------------------------------
# products


def _check(a: Multivector, b: Multivector) -> Algebra:
    if not isinstance(a, Multivector) or not isinstance(b, Multivector):
        raise TypeError("products take Multivector operands")
    if a.algebra is not b.algebra:
        raise AlgebraMismatchError("operands belong to different algebras")
    return a.algebra


def _finish(alg: Algebra, out: dict[int, float], a: Multivector, b: Multivector) -> Multivector:
    # crumbs are judged against the size of the operands that produced them
    limit = PRUNE * a.max_abs() * b.max_abs()
    return Multivector(alg, {k: v for k, v in out.items() if abs(v) > limit})


def _tabled(kind: str, a: Multivector, b: Multivector, counter: ProductCounter | None) -> Multivector:
    alg = _check(a, b)
    out: dict[int, float] = defaultdict(float)
    n = 0
    for A, ca in a._terms.items():
        for B, cb in b._terms.items():
            tab = alg.table(kind, A, B)
            if not tab:
                continue
            ab = ca * cb
            for C, t in tab:
                out[C] += ab * t
            n += len(tab)
    if counter is not None:
        counter.add(n)
    return _finish(alg, out, a, b)


def geometric_product(a: Multivector, b: Multivector, counter: ProductCounter | None = None) -> Multivector:
    return _tabled("gp", a, b, counter)


def left_contraction(a: Multivector, b: Multivector, counter: ProductCounter | None = None) -> Multivector:
    """``a _| b``: grade ``s - r`` part of each ``<a>_r <b>_s`` with ``r <= s``."""
    return _tabled("lc", a, b, counter)


def inner(a: Multivector, b: Multivector, counter: ProductCounter | None = None) -> Multivector:
    """Symmetric contraction: the lower-grade operand is contracted onto the higher.

    For grade-1 or equal-grade operands this is the usual metric inner
    product; for a vector and a bivector it is the left (or right)
    contraction whichever lowers the grade.
    """
    return _tabled("dot", a, b, counter)


def scalar_product(a: Multivector, b: Multivector, counter: ProductCounter | None = None) -> float:
    return _tabled("scalar", a, b, counter).scalar_part()


def outer_product(a: Multivector, b: Multivector, counter: ProductCounter | None = None) -> Multivector:
    alg = _check(a, b)
    out: dict[int, float] = defaultdict(float)
    n = 0
    for A, ca in a._terms.items():
        for B, cb in b._terms.items():
            if A & B:
                continue
            out[A | B] += _reorder_sign(A, B) * ca * cb
            n += 1
    if counter is not None:
        counter.add(n)
    return _finish(alg, out, a, b)


def commutator(a: Multivector, b: Multivector, counter: ProductCounter | None = None) -> Multivector:
    """``(ab - ba) / 2``."""
    return (geometric_product(a, b, counter) - geometric_product(b, a, counter)) * 0.5


def scale(a: Multivector, s: float, counter: ProductCounter | None = None) -> Multivector:
    """Scalar multiple, counting one multiplication per stored term."""
    if counter is not None:
        counter.add(len(a))
    return a * s


def reverse(a: Multivector) -> Multivector:
    return Multivector(
        a.algebra,
        {k: (-v if (grade_of(k) * (grade_of(k) - 1) // 2) & 1 else v) for k, v in a._terms.items()},
    )


def grade_projection(a: Multivector, k: int) -> Multivector:
    return Multivector(a.algebra, {b: v for b, v in a._terms.items() if grade_of(b) == k})


def inverse(v: Multivector) -> Multivector:
    """Inverse of a versor or blade, ``reverse(v) / <v reverse(v)>_0``."""
    rv = reverse(v)
    norm = geometric_product(v, rv)
    n0 = norm.scalar_part()
    rest = norm - n0
    if n0 == 0.0 or rest.max_abs() > 1e-10 * max(abs(n0), 1.0):
        raise SingularVersorError("singular versor: v * reverse(v) is not a nonzero scalar")
    return rv / n0


def versor_sandwich(v: Multivector, x: Multivector, counter: ProductCounter | None = None) -> Multivector:
    """``v x v^-1``."""
    return geometric_product(geometric_product(v, x, counter), inverse(v), counter)


def dual(a: Multivector) -> Multivector:
    """``a _| I^-1`` with ``I`` the wedge of all basis vectors in basis order."""
    return left_contraction(a, a.algebra.pseudoscalar_inverse)


def exp_bivector(B: Multivector, tol: float = 1e-15, max_terms: int = 64) -> Multivector:
    """Power-series exponential of a bivector."""
    if B.grades() - {2}:
        raise ValueError("exp_bivector expects a pure bivector")
    alg = B.algebra
    total = alg.scalar(1.0)
    term = alg.scalar(1.0)
    for k in range(1, max_terms + 1):
        term = geometric_product(term, B) / k
        total = total + term
        if term.max_abs() < tol * max(1.0, total.max_abs()):
            return total
    raise ConvergenceError(f"bivector exponential did not converge in {max_terms} terms")


def wedge_all(items: Iterable[Multivector], counter: ProductCounter | None = None) -> Multivector:
    items = list(items)
    out = items[0]
    for x in items[1:]:
        out = outer_product(out, x, counter)
    return out


def linear_combination(pairs: Iterable[tuple[float, Multivector]]) -> Multivector:
    pairs = list(pairs)
    out = pairs[0][1] * pairs[0][0]
    for c, m in pairs[1:]:
        out = out + m * c
    return out


AlgebraSignature = Algebra
__all__ = [
    "Algebra",
    "AlgebraSignature",
    "Multivector",
    "ProductCounter",
    "geometric_product",
    "outer_product",
    "left_contraction",
    "inner",
    "scalar_product",
    "commutator",
    "reverse",
    "inverse",
    "versor_sandwich",
    "dual",
    "grade_projection",
    "exp_bivector",
    "scale",
    "wedge_all",
]
