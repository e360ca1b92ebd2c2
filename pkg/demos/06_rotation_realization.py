"""Realizing an irrational rotation as an order and reading the point back.

Each integer k is ranked by the exact value of x + k*(sqrt(2)-1) mod 1.
Averaging the indicator "k sits below 0" over longer and longer initial
segments recovers x; the table shows the finite-stage values (no limit is
taken).  The order has no translation symmetry, unlike a left-invariant
order.
"""

from fractions import Fraction

from grouporders import (
    Sqrt2Num,
    ball,
    cesaro,
    default_generators,
    interval_window,
    lex_functional,
    realize,
    reconstruct,
    rotation_action,
    stabilizer_check,
    zn,
)

alpha = Sqrt2Num.of(-1, 1)  # sqrt(2) - 1
action = rotation_action(alpha)

print("== The order at x = 0 on the window {-2..2} ==")
w5 = ball(default_generators(zn(1)), 2)
m = realize(action, Fraction(0), w5)
ranks = m.ranks()
chain = sorted(range(5), key=ranks.__getitem__)
print("  ", " < ".join(str(w5.element(i).payload[0]) for i in chain))

print("\n== Recovering x from the order alone ==")
x = Fraction(2026, 2**13)
w = interval_window(0, 100_000)
order = realize(action, x, w)
print(f"  true x = {float(x):.6f}")
print("  n        estimate    |error|")
for n in (100, 1_000, 10_000, 100_000):
    est = reconstruct(order, cesaro(n))
    print(f"  {n:<8d} {float(est):.6f}    {abs(float(est - x)):.6f}")

print("\n== Stabilizers ==")
gens1 = default_generators(zn(1))
print("  rotation order, fixed generators:", stabilizer_check(m, w5, gens1))
w2 = ball(default_generators(zn(2)), 2)
lex = lex_functional(2).window_order(w2)
gens2 = default_generators(zn(2))
print("  lexicographic order, fixed generators:",
      stabilizer_check(lex, w2, gens2))
