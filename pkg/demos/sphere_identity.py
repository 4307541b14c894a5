"""Both sides of the sphere identity for a seeded zonal density, with the corollary term.

Run: python demos/sphere_identity.py   (about ten seconds)
"""

from kplane_bilinear.identities import Settings, seeded_zonal, sphere_constant, verify_sphere_identity

for label, g in (("constant", sphere_constant()), ("zonal seed 0", seeded_zonal(0))):
    rep = verify_sphere_identity(g, g, settings=Settings(quick=True))
    d = rep.diagnostics
    print(f"{label}: lhs={rep.lhs:.6e} rhs={rep.rhs:.6e} rel_err={rep.rel_err:.2e} "
          f"I={d['corollary_I']:.3e} excised={d['excised_fraction']:.1e} {rep.status.value}")
