"""Build curves with prescribed automorphism groups and list their checks."""

from equicurve.arith import QQ, Poly, omega_field
from equicurve.curves import even_cyclic_curve, even_dihedral_curve, klein_construction_polys, klein_curve

x = Poly.x(QQ)

c = even_cyclic_curve(4, 1)
print(f"cyclic of order 4: {c.model.equation()}, genus {c.model.genus()}")

P, Q, _ = klein_construction_polys(x ** 2 - 2)
k = klein_curve(P, Q)
print("Klein four-group curve:")
for line in k.lines():
    print("  " + line)

d = even_dihedral_curve(4, x ** 2 - 2, omega_field(4))
print(f"dihedral of order 8: ok = {d.ok}")
print(f"  {d.model.equation()}")
