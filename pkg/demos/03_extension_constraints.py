"""Order-extension constraint systems and their certificates.

Builds the "total order extending the orthant order" system on Z^n balls,
solves it, replays the certificate, and cross-checks linear-functional
orders against the same atoms.
"""

from grouporders import (
    ConstraintSystem,
    LinearFunctionalOrder,
    Sqrt2Num,
    ball,
    build_extension_system,
    default_generators,
    extends_quadrant,
    interval_window,
    lex_functional,
    propagate_only,
    quadrant_order,
    solve,
    verify_certificate,
    zn,
)

print("== Extending the orthant order on ball(Z^2, 3) ==")
w = ball(default_generators(zn(2)), 3)
cs = build_extension_system(w, quadrant_order(2))
print(f"  window {len(w)} elements, {len(cs.atoms)} invariance atoms")
cert = solve(cs)
print("  verdict:", cert.verdict)
print("  independent replay:", verify_certificate(cs, cert))

lex_ranks = lex_functional(2).window_order(w).ranks()
print("  lexicographic order satisfies every atom:",
      all(lex_ranks[i] < lex_ranks[j] for i, j in cs.atoms))

print("\n== Linear functionals with exact sqrt(2) tie-breaking ==")
f = LinearFunctionalOrder.of((1, Sqrt2Num.of(0, 1)))  # x + sqrt(2) y
print("  functional (1, sqrt2) extends the orthant order:", extends_quadrant(f))
g = LinearFunctionalOrder.of((-1, 0), lex_functional(2))
print("  functional (-1, 0) extends it:", extends_quadrant(g))

print("\n== An unsatisfiable toy system and its propagation trace ==")
w3 = interval_window(0, 3)
cyclic = ConstraintSystem(w3, ((0, 1), (1, 2), (2, 0)))
cert = propagate_only(cyclic)
print("  verdict:", cert.verdict)
for step in cert.trace:
    kind = step.rule[0]
    detail = step.rule[1] if kind == "atom" else step.rule[1:]
    print(f"    derived {step.pair} by {kind} {detail}")
print("  forced cycle:", cert.cycle)
print("  replay:", verify_certificate(cyclic, cert))
