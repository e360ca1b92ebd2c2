"""Exact arithmetic in the three built-in groups.

Walks through products, inverses, powers, and commutators in Z^n, the
discrete Heisenberg group, and SL3(Z), including the commutator identities
the rest of the library leans on.
"""

from grouporders import (
    SL3Z,
    commutator,
    heisenberg_element,
    identity,
    inverse,
    multiply,
    power,
    sl3_unipotent,
    zn_element,
)

print("== Z^2: componentwise addition ==")
print("(1,2) * (3,-1) =", multiply(zn_element(1, 2), zn_element(3, -1)))

print("\n== Heisenberg group [a,b,c] with the shear product ==")
x = heisenberg_element(1, 0, 0)
y = heisenberg_element(0, 1, 0)
z = heisenberg_element(0, 0, 1)
print("x * y       =", multiply(x, y), " (the shear adds a*b' to the c slot)")
print("[x, y]      =", commutator(x, y), " which is z")
print("[x^4, y^5]  =", commutator(power(x, 4), power(y, 5)), " = z^20")
print("[1,1,1]^-1  =", inverse(heisenberg_element(1, 1, 1)))

print("\n== SL3(Z): the six elementary unipotent generators ==")
a = {i: sl3_unipotent(i) for i in range(1, 7)}
for i in range(1, 7):
    rows = a[i].payload
    print(f"a_{i} rows:", rows[0:3], rows[3:6], rows[6:9])

print("\nAdjacent generators commute:")
for i in range(1, 7):
    nxt = (i % 6) + 1
    assert commutator(a[i], a[nxt]) == identity(SL3Z)
print("  [a_i, a_(i+1)] = identity for every i mod 6")

print("\nNext-to-adjacent commutators land on the generator in between,")
print("with an orientation that alternates with the index parity:")
for i in range(1, 7):
    prev, nxt = ((i - 2) % 6) + 1, (i % 6) + 1
    c = commutator(a[prev], a[nxt])
    tag = f"a_{i}" if c == a[i] else f"a_{i}^-1"
    print(f"  [a_{prev}, a_{nxt}] = {tag}")
print("Downstream code therefore only ever relies on identities it has")
print("verified by direct matrix arithmetic, never on a quoted orientation.")
