# %% [markdown]
# # Lines, intersections and product counts

# %%
import numpy as np

from gaquadrics import costmodel, dcga, dpga, oracle, qcga

sphere = oracle.QuadricCoefficients(a=1, b=1, c=1, j=-1)
line = oracle.PluckerLine.from_point_direction((0, 0.3, 0), (1, 0, 0))
roots = oracle.intersect_line(sphere, line)
print("oracle roots:", [r.round(6) for r in roots])

# %% [markdown]
# Each algebra builds an intersection entity.  A point belongs to the
# intersection when contracting it onto the entity gives zero.  Scanning
# the line shows the residual touching zero only at the two roots.

# %%
P6 = dcga.intersect(dcga.quadric_from_coefficients(sphere), dcga.line_from_plucker(line))
x1, x2 = line.point_at(0.0), line.point_at(1.0)
L = dpga.line(x1, x2)
P2 = dpga.intersect(dpga.dual_line(x1, x2), dpga.quadric_from_coefficients(sphere), L)
c = qcga.intersect(qcga.dual_quadric_from_coefficients(sphere), qcga.line_from_plucker(line))

ts = np.linspace(-1.2, 1.2, 13)
ts = np.sort(np.append(ts, [r[0] for r in roots]))
for t in ts:
    p = line.point_at(t)
    print(f"t={t:+.4f}  dcga {dcga.pair_point_residual(P6, p):.1e}  "
          f"dpga {dpga.pair_point_residual(P2, p, L):.1e}  qcga {qcga.pair_point_residual(c, p):.1e}")

# %% [markdown]
# Product counts.  The model charges u*v products for an outer product of
# u- and v-term operands.  The measured column is the largest count seen on
# a handful of random ellipsoids.

# %%
reports = costmodel.table3()
rng = np.random.default_rng(1)
for rep in reports:
    counts = []
    for _ in range(5):
        q = oracle.random_quadric(rng, "ellipsoid")
        where = {"membership": rng.normal(size=3),
                 "tangent_plane": oracle.sample_surface(q, 1, rng)[0],
                 "quadric_line_intersection": oracle.random_line(rng)}[rep.operation]
        counts.append(costmodel.measure(rep.framework, rep.operation, q, where).measured)
    rep.measured = max(counts)
print(costmodel.format_table(reports))
