"""
Base-p digit sets and block decompositions
==========================================

I(u, v) collects integers with isolated 0/1 digits in a window; J(u, v)
also allows runs of two.  Each J-element splits uniquely into two-digit
blocks and isolated parts, and the exponents b(a), c(a) fall out of the
decomposition in closed form.
"""

from stmilnor import b_func, c_func, index_set_I, index_set_J, j_decompose
from stmilnor.padic import digits, j_table_recursive

p, u, v = 3, 0, 7

print(f"I({u},{v}) at p={p}:", index_set_I(p, u, v))
print(f"J({u},{v}) at p={p}:", index_set_J(p, u, v))

# blocks, parts, and the exponents they produce
print(f"\n{'a':>5}  {'digits':<10} {'blocks':<10} {'parts':<14} b     c")
for a in index_set_J(p, u, v):
    dec = j_decompose(p, u, v, a)
    ds = "".join(str(d) for d in digits(a, p)) or "0"
    print(f"{a:>5}  {ds:<10} {str(list(dec.blocks)):<10} {str(list(dec.parts)):<14}"
          f" {b_func(p, u, v, a):<5} {c_func(p, u, v, a)}")

# the recursive three-piece construction reproduces the same table
table = j_table_recursive(p, u, v)
closed = {a: (b_func(p, u, v, a), c_func(p, u, v, a)) for a in index_set_J(p, u, v)}
print("\nrecursive table matches the closed forms:", table == closed)
