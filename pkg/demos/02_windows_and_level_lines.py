"""Windows, invariant partial orders, and level-line pictures.

Enumerates Cayley balls, restricts the positive-orthant partial order to a
window, inspects past cones, and renders total orders on a rectangle as a
grid of ranks (a discrete picture of their level lines).
"""

from grouporders import (
    HEISENBERG,
    ball,
    cone_order,
    default_generators,
    direction_set,
    heisenberg_positive_order,
    identity,
    lex_functional,
    past_set,
    quadrant_order,
    render_levels,
    uniform_order,
    window_from_elements,
    zn,
    zn_element,
)

print("== Cayley balls ==")
for r in range(4):
    print(f"  |ball(Z^2, {r})| =", len(ball(default_generators(zn(2)), r)))
print("  |ball(H, 2)|   =", len(ball(default_generators(HEISENBERG), 2)))

print("\n== The orthant partial order on a Z^2 window ==")
w = ball(default_generators(zn(2)), 2)
cone = cone_order(quadrant_order(2), w)
origin = zn_element(0, 0)
print("  above the origin:", sorted(g.payload for g in past_set(cone, origin)))
print("  positive directions at the origin:",
      sorted(g.payload for g in direction_set(cone, origin)))

print("\n== Sheared cones in the Heisenberg group ==")
hw = ball(default_generators(HEISENBERG), 2)
hcone = cone_order(heisenberg_positive_order(), hw)
above = sorted(g.payload for g in past_set(hcone, identity(HEISENBERG)))
print("  cone of the identity inside ball(2):", above)

print("\n== Level lines of total orders on a 5x5 rectangle ==")
rect = window_from_elements(
    zn(2), [zn_element(x, y) for x in range(5) for y in range(5)]
)


def show(grid):
    for row in grid:
        print("   ", " ".join(f"{v:2d}" for v in row))


print("lexicographic order (level lines are vertical sweeps):")
show(render_levels(lex_functional(2).window_order(rect)))
print("a uniform random order (no structure):")
show(render_levels(uniform_order(rect, seed=2)))
