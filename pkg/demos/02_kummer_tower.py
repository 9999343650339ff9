"""Walk the Kummer tower: the quartic in P^3, the three-quadric model in
P^5, the twisted surfaces V_delta, and the explicit maps between the two
projective models.
"""

import random

from genus2covers import CurveData, EtaleAlgebra, Field, JacobianModel, KummerModels
from genus2covers.curve import random_point

F = Field.prime(101)
curve = CurveData(F, [5, 1, 2, 1, 1, 3, 1])
alg = EtaleAlgebra(curve)
km = KummerModels(alg)

print("Kummer quartic in P^3 (terms):", len(km.kummer_quartic().terms))
print("P^5 model matrices: T, RT, R^2T, all symmetric:",
      all(M.is_symmetric() for M in km.y_matrices()))

rng = random.Random(2)
D = random_point(curve, F, rng)
c = D.coords()
kv = [c.v[0], c.kval(1, 2), c.kval(1, 3), c.kval(1, 4)]
print("\nsample class:", D)
print("quartic at its P^3 image:", km.kummer_quartic().evaluate(kv, F))
print("Weddle quartic at (b1..b4):", km.weddle_quartic().evaluate(c.odd[:4], F))

# the P^5 point of the class is an element of L = k[X]/f
z = km.rho_J(D)
print("\nsection value sum b_i g_i =", z)
xi = km.cassels_section(D)
y1y2 = F.mul(D.p1[1], D.p2[1])
print("y1 y2 * (tangent cubic / (X-x1)(X-x2)) matches:", (xi * y1y2).c == z.c)

# V_delta for delta = X shifts the matrix window by one
vd = km.v_delta(alg.x())
print("\nV_X matrices equal RT, R^2T, R^3T:",
      vd.matrices[0].rows == (alg.R * alg.T).rows)

# the quadratic maps between the models
jm = JacobianModel(curve, seed=0)
down = km.map_Y_to_X(c.odd, F)
print("\nP^5 -> P^3 image proportional to (k1..k4):",
      all(F.is_zero(F.sub(F.mul(down[i], kv[j]), F.mul(down[j], kv[i])))
          for i in range(4) for j in range(4)))
r = next(i for i in range(1, 7) if not F.is_zero(c.odd[i - 1]))
up = km.map_X_to_Y(jm, kv, r, F)
print("P^3 -> P^5 lift proportional to (b1..b6):",
      all(F.is_zero(F.sub(F.mul(up[i], c.odd[j]), F.mul(up[j], c.odd[i])))
          for i in range(6) for j in range(6)))
