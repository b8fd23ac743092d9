"""Moving quadrics between the three frameworks.

Every hop goes through :class:`QuadricCoefficients`: extract with the
source framework's reciprocal operators, rebuild with the target's
directions.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from . import dcga, dpga, qcga
from .algebra import Multivector
from .oracle import QuadricCoefficients


class FrameworkTag(str, Enum):
    DCGA = "dcga"
    DPGA = "dpga"
    QCGA = "qcga"

    @classmethod
    def parse(cls, value: "FrameworkTag | str") -> "FrameworkTag":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown framework {value!r}; expected dcga, dpga or qcga") from None


_MODULES = {FrameworkTag.DCGA: dcga, FrameworkTag.DPGA: dpga, FrameworkTag.QCGA: qcga}


def to_coefficients(entity: Multivector, tag: FrameworkTag | str) -> QuadricCoefficients:
    tag = FrameworkTag.parse(tag)
    if entity.algebra is not _MODULES[tag].ALGEBRA:
        raise ValueError(f"entity does not live in the {tag.value} algebra")
    return _MODULES[tag].extract_coefficients(entity)


def from_coefficients(q: QuadricCoefficients, tag: FrameworkTag | str) -> Multivector:
    tag = FrameworkTag.parse(tag)
    if tag is FrameworkTag.QCGA:
        return qcga.dual_quadric_from_coefficients(q)
    return _MODULES[tag].quadric_from_coefficients(q)


def convert(entity: Multivector, source: FrameworkTag | str, target: FrameworkTag | str) -> Multivector:
    return from_coefficients(to_coefficients(entity, source), target)


def membership(entity: Multivector, tag: FrameworkTag | str, p) -> float:
    """The framework's own point-on-quadric functional."""
    tag = FrameworkTag.parse(tag)
    if tag is FrameworkTag.DCGA:
        return dcga.contains(entity, dcga.embed_point(p))
    return _MODULES[tag].eval_membership(entity, p)


def fit_rotate_roundtrip(points, theta: float, axis_pair: tuple[int, int] = (0, 1),
                         method: str = "wedge", axis=None) -> Multivector:
    """Fit in QCGA, rotate in DPGA, come back to QCGA.

    ``axis_pair = (i, j)`` rotates by ``theta`` from axis ``i`` toward axis
    ``j``; ``(0, 1)`` is a right-handed turn about ``z``.  Passing an
    ``axis`` vector instead turns right-handedly about that axis.
    """
    qs = qcga.quadric_from_nine_points(np.asarray(points, dtype=float), method=method)
    Q = convert(qs, FrameworkTag.QCGA, FrameworkTag.DPGA)
    if axis is not None:
        R = dpga.axis_angle_rotor(axis, theta)
    else:
        R = dpga.rotor(theta, *axis_pair)
    Qr = dpga.apply(R, Q)
    return convert(Qr, FrameworkTag.DPGA, FrameworkTag.QCGA)
