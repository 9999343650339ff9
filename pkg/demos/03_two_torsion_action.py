"""The translation action of the fifteen nonzero two-torsion points.

Each point P, given by a pair of roots, acts on the P^3 model through an
explicit 4x4 matrix with M_P^2 = Res(g, h) Id; the normalized symmetric
squares satisfy the group law twisted by the Weil pairing, and the whole
rank-5 group of even root masks acts linearly on all sixteen coordinates.
"""

from genus2covers import CurveData, EtaleAlgebra, Field, TorsionActionCtx
from genus2covers.etale import all_two_torsion, weil_pairing, even_masks

F = Field.prime(101)
curve = CurveData(F, [5, 1, 2, 1, 1, 3, 1])
alg = EtaleAlgebra(curve)
ctx = TorsionActionCtx(alg)
K = ctx.K
print("splitting field:", K)

P = all_two_torsion()[0]
M = ctx.mp_matrix(P)
res = ctx.res_gh(P)
print("\nP =", P)
print("M_P^2 = Res(g,h) Id:",
      all(K.eq((M * M).rows[i][j], res if i == j else K.zero())
          for i in range(4) for j in range(4)))
print("det M_P = Res^2:", K.eq(M.det(), K.mul(res, res)))
print("field of definition of M_P:", ctx.definition_field_tag(M))

print("\ngroup law with the pairing cocycle, all 225 ordered pairs:")
bad = 0
for P in all_two_torsion():
    TP = ctx.t10_matrix(P)
    for Q in all_two_torsion():
        e = weil_pairing(P, Q)
        if (TP * ctx.t10_matrix(Q)).rows != \
                ctx.t10_matrix(P + Q).scale(K.from_int(e)).rows:
            bad += 1
print("violations:", bad)

print("\nthe even-mask action is a genuine linear representation:")
m1, m2 = 0b000011, 0b000101
lhs = ctx.rho_matrix(m1) * ctx.rho_matrix(m2)
print("rho(m1) rho(m2) == rho(m1 xor m2):",
      lhs.rows == ctx.rho_matrix(m1 ^ m2).rows)

stable = [m for m in even_masks() if ctx.mask_is_stable(m)]
print("\nFrobenius-stable masks:", len(stable), "of 32; their matrices have",
      "ground-field entries:",
      all(ctx.rho6_matrix(m).frobenius_fixed() for m in stable))
