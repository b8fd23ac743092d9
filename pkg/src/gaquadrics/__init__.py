"""Quadric surfaces in three geometric algebras: DCGA G(8,2), DPGA G(4,4) and QCGA G(9,6).

Each framework module (:mod:`dcga`, :mod:`dpga`, :mod:`qcga`) builds its
entities on the sparse multivector engine in :mod:`algebra`; :mod:`oracle`
holds the classical homogeneous-coordinate reference, :mod:`interop` moves
quadrics between frameworks and :mod:`costmodel` counts products.
"""

from . import algebra, costmodel, dcga, dpga, interop, oracle, qcga
from .algebra import Algebra, AlgebraSignature, Multivector, ProductCounter
from .errors import (
    AlgebraMismatchError,
    ConvergenceError,
    DegenerateError,
    FormulaDomainError,
    NotInSpanError,
    NumericError,
    QuadricError,
    SingularPointError,
    SingularVersorError,
)
from .interop import FrameworkTag
from .oracle import PluckerLine, QuadricCoefficients

__version__ = "0.1.0"

__all__ = [
    "algebra",
    "costmodel",
    "dcga",
    "dpga",
    "interop",
    "oracle",
    "qcga",
    "Algebra",
    "AlgebraSignature",
    "Multivector",
    "ProductCounter",
    "FrameworkTag",
    "PluckerLine",
    "QuadricCoefficients",
    "QuadricError",
    "AlgebraMismatchError",
    "DegenerateError",
    "NotInSpanError",
    "NumericError",
    "SingularVersorError",
    "SingularPointError",
    "FormulaDomainError",
    "ConvergenceError",
]
