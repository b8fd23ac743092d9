# %% [markdown]
# # One quadric, three algebras
#
# The same ellipsoid lives as a bivector in DCGA and DPGA and as a plain
# vector in QCGA.  Each algebra has its own way of asking "is this point on
# the surface?", and all three give back the implicit polynomial.

# %%
import numpy as np

from gaquadrics import dcga, dpga, oracle, qcga
from gaquadrics.interop import convert

q = oracle.QuadricCoefficients(a=0.25, b=1, c=1, j=-1)  # x^2/4 + y^2 + z^2 = 1
Q_dcga = dcga.quadric_from_coefficients(q)
Q_dpga = dpga.quadric_from_coefficients(q)
q_qcga = qcga.dual_quadric_from_coefficients(q)
for name, ent in [("DCGA", Q_dcga), ("DPGA", Q_dpga), ("QCGA", q_qcga)]:
    print(f"{name}: {len(ent):2d} terms  {ent!r}")

# %% [markdown]
# Membership.  DCGA contracts the quadric with a 25-term point bivector,
# DPGA sandwiches it between a point and its dual, QCGA takes one inner
# product with a 12-term point vector.

# %%
for p in [(2, 0, 0), (0, 1, 0), (0.5, 0.5, 0.5)]:
    vals = (
        dcga.contains(Q_dcga, dcga.embed_point(p)),
        dpga.eval_membership(Q_dpga, p),
        qcga.eval_membership(q_qcga, p),
        oracle.eval(q, p),
    )
    print(p, " ".join(f"{v:+.6f}" for v in vals))

# %% [markdown]
# The extraction operators read the ten coefficients back, so any entity
# can be moved to any other algebra.

# %%
back = dcga.extract_coefficients(convert(q_qcga, "qcga", "dcga"))
print("QCGA -> DCGA ->", back)

# %% [markdown]
# Tangent planes agree on the normal.  The QCGA plane keeps the raw
# offset term (the distance of the point from the origin), so only its
# direction is compared with the gradient.

# %%
p = np.array([1.2, 0.0, np.sqrt(1 - 0.25 * 1.44)])
n0, d0 = oracle.tangent_plane(q, p)
print("oracle", n0.round(6), round(d0, 6))
print("DCGA  ", *[np.round(v, 6) for v in dcga.plane_normal_offset(dcga.tangent_plane(Q_dcga, p))])
print("DPGA  ", *[np.round(v, 6) for v in dpga.plane_normal_offset(dpga.tangent_plane_dual(Q_dpga, p))])
print("QCGA  ", *[np.round(v, 6) for v in qcga.plane_normal_offset(qcga.tangent_plane(q_qcga, p))])
