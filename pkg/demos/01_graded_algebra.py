"""
The graded-commutative algebra and its arithmetic
=================================================

Elements live in E(x_1..x_n) (x) F_p[y_1..y_n]: exterior generators x_i of
degree 1 that anticommute and square to zero, polynomial generators y_i of
degree 2.  Everything is exact arithmetic over F_p.
"""

from stmilnor import Context, exact_div, parse_element, power, serialize

ctx = Context(3, 2)
x1, x2 = ctx.x(1), ctx.x(2)
y1, y2 = ctx.y(1), ctx.y(2)

# the sign rule in action
print("x1*x2      =", serialize(x1 * x2))
print("x2*x1      =", serialize(x2 * x1))
print("x1*x1      =", serialize(x1 * x1))
print("(x1+x2)^2  =", serialize(power(x1 + x2, 2)))

# polynomial part is ordinary commutative arithmetic mod p
a = (y1 + y2) * (y1 + 2 * y2)
print("(y1+y2)(y1+2y2) =", serialize(a))

# Frobenius: p-th powers are additive in characteristic p
print("(y1+y2)^3  =", serialize(power(y1 + y2, 3)))

# exact division by a y-only divisor, with the remainder checked
b = x1 * y2 + 2 * y1 * y1
q = exact_div(a * b, a)
print("division round trip:", serialize(q) == serialize(b))

# the text form parses back to the same element
s = serialize(b)
print("parse(serialize)  :", parse_element(ctx, s) == b, "->", s)
