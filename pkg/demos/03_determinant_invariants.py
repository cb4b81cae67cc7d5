"""
Determinant invariants: brackets, L, Q, V, M
============================================

All the classical modular invariants arise from one alternating bracket
construction: k exterior rows followed by Frobenius-twisted polynomial rows.
"""

import random

from stmilnor import Context, bracket, dickson_q, l_det, mui_m, serialize, v_det
from stmilnor.algebra import apply_matrix, power
from stmilnor.sampling import random_gl

ctx = Context(3, 2)

# the basic determinant [0,1] and its bracket form
L = l_det(ctx, 2)
print("L_2            =", serialize(L))
print("as a bracket   :", L == bracket(ctx, 0, (0, 1), 2))

# Dickson invariants are ratios of such determinants, computed exactly
for s in range(3):
    print(f"Q_2,{s}          =", serialize(dickson_q(ctx, 2, s)))

# V multiplies back to L
V = v_det(ctx, 2)
print("V_2            =", serialize(V))
print("V_2 * L_1 == L_2:", V * l_det(ctx, 1) == L)

# invariants with exterior content
M = mui_m(ctx, 2, (1,))
print("M_2;1          =", serialize(M))
print("M^(2) with ss=(0,):", serialize(mui_m(ctx, 2, (0,), 2)))

# equivariance: L picks up the determinant, Q is untouched
rng = random.Random(1)
g = random_gl(ctx, rng)
d = g.det() % 3
print("g with det", d, "scales L by", d, ":", apply_matrix(g, L) == d * L)
print("g fixes Q_2,1:", apply_matrix(g, dickson_q(ctx, 2, 1)) == dickson_q(ctx, 2, 1))
print("g on L^2 is det^2:", apply_matrix(g, power(L, 2)) == pow(d, 2, 3) * power(L, 2))
