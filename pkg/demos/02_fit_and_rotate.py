# %% [markdown]
# # Fit in QCGA, rotate in DPGA
#
# Nine points pin down a quadric.  In QCGA the fit is a single outer
# product: wedge the nine embedded points with a fixed grade-5 blade that
# spans the directions no dual quadric can use, then take the dual.

# %%
import numpy as np

from gaquadrics import dpga, oracle, qcga
from gaquadrics.interop import convert

rng = np.random.default_rng(0)
ellipsoid = oracle.QuadricCoefficients(a=0.25, b=1, c=1, j=-1)
pts = oracle.sample_surface(ellipsoid, 9, rng)
print(pts.round(4))

# %%
print("complement blade:", " ^ ".join(qcga.COMPLEMENT_LABELS))
qs = qcga.quadric_from_nine_points(pts, method="wedge")
fit = qcga.extract_coefficients(qs)
print("fitted   ", fit.canonical().round(6))
print("generator", ellipsoid.canonical().round(6))

# %% [markdown]
# Convert to DPGA and turn a quarter turn about z.  The rotor is the
# exponential of an antisymmetric primal/dual bivector; the scale of that
# generator is checked against the matrix rotation once.

# %%
print("calibrated generator scale:", dpga.calibrate_generator_scale())
Q = convert(qs, "qcga", "dpga")
R = dpga.axis_rotor("z", np.pi / 2)
Qr = dpga.apply(R, Q)
rotated = dpga.extract_coefficients(Qr)
print("rotated  ", rotated.canonical().round(6))
print("oracle   ", oracle.transform(fit, oracle.rotation_matrix("z", np.pi / 2)).canonical().round(6))

# %% [markdown]
# The x and y semi-axes have traded places: the point (0, 2, 0) is now on
# the surface.

# %%
back = convert(Qr, "dpga", "qcga")
print("f(0, 2, 0) =", qcga.eval_membership(back, (0, 2, 0)) / np.linalg.norm(qcga.extract_coefficients(back).as_array()))

# %% [markdown]
# The single-term generator ``w_i w_j*`` is nilpotent, so its exponential
# is a shear; the result leaves the space of quadrics.

# %%
shear = dpga.apply(dpga.rotor(np.pi / 2, 0, 1, single_term=True), dpga.quadric_from_coefficients(ellipsoid))
print(shear)
