"""Polynomial covers of prime degree realizing every cycle type of S_m."""

import sys

from equicurve.ramify import sm_cover

m = int(sys.argv[1]) if len(sys.argv) > 1 else 3
rep = sm_cover(m)
print(f"m = {m}: degree {rep.prime}, ok = {rep.ok}")
print(f"P = {rep.poly.P.to_str()}")
for beta, part, pattern in rep.branches:
    print(f"  over {beta}: partition {part}, multiplicities {pattern}")
