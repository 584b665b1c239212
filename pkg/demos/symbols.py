"""Decide a few quaternion symbols over Q(x) and print the evidence."""

from equicurve.arith import QQ, Poly
from equicurve.brauer import is_split_kx

x = Poly.x(QQ)

for f, g in [(-3 * x, x * (x + 27)), (x, x ** 2 - 4 * x + 2), (Poly.const(-1, QQ), x),
             (Poly.const(-1, QQ), x ** 2 + 1)]:
    res = is_split_kx(f, g)
    print(f"({f.to_str()}, {g.to_str()}): {res.describe('x')}  [re-verified: {res.verify()}]")
