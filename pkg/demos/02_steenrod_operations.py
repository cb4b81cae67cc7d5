"""
Steenrod operations in the Milnor indexing
==========================================

St^{S,R} is indexed by a strictly increasing tuple S and an exponent tuple R.
On generators only a handful of components act; everything else follows from
the Cartan formula, which the engine applies in bulk.
"""

from stmilnor import Context, MilnorOp, apply, serialize, st_delta, st_u, steenrod_p

ctx = Context(3, 2)
x1, y1, y2 = ctx.x(1), ctx.y(1), ctx.y(2)

# generator values: St_u sends x to a p^u power of y, St^{Delta_i} twists y
print("St_0 x1       =", serialize(st_u(0, x1)))
print("St_1 x1       =", serialize(st_u(1, x1)))
print("St^{D_1} y1   =", serialize(st_delta(1, y1)))
print("St^{D_2} y1   =", serialize(st_delta(2, y1)))

# the classical power operations P^r sit inside as St^{(),(r)}
v = y1 * y2 + y1 * y1
print("P^0 v         =", serialize(steenrod_p(0, v)))
print("P^1 v         =", serialize(steenrod_p(1, v)))
print("P^1 == St^{(),(1)}:", steenrod_p(1, v) == apply(MilnorOp((), (1,)), v))

# St^{Delta_i} is a derivation, St_u a signed one
a, b = x1 * y2, y1 + y2
lhs = st_delta(1, a * b)
rhs = st_delta(1, a) * b + a * st_delta(1, b)
print("derivation law:", lhs == rhs)
lhs = st_u(0, a * b)
rhs = st_u(0, a) * b - a * st_u(0, b)  # deg a is odd
print("signed law    :", lhs == rhs)

# a genuinely mixed operation, with its forced degree shift
op = MilnorOp((0, 1), (1,))
w = apply(op, x1 * ctx.x(2) * y1)
print("St^{(0,1),(1)} x1*x2*y1 =", serialize(w))
print("degree shift  :", w.degree() - (x1 * ctx.x(2) * y1).degree(), "=", op.degree_shift(3))
