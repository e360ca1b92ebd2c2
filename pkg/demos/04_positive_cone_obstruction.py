"""The finite obstruction to extending the SL3(Z) positive cone.

The entrywise-nonnegative matrices in SL3(Z) form an invariant partial
order.  On a finite window, demanding a total order that (a) respects that
cone and (b) satisfies translated copies of the chain constraints
"identity < a_i^q * a_(i-1)^(-n) for all n" forces the comparisons
a_1^q < a_2^q < ... < a_6^q < a_1^q, a cycle.  Forward propagation alone
finds it, and the certificate replays step by step.

The translation direction is convention-sensitive, so both readings run:
exactly one of them produces the cycle.
"""

from grouporders import (
    SL3Instance,
    build_sl3_instance,
    power,
    propagate_only,
    sl3_unipotent,
    verify_certificate,
)

q = 2
ns = (3, 4, 3, 5, 3, 4)
print(f"parameters: q={q}, n_i={ns}, truncation={max(ns)}")

for convention in ("plain_left", "inverse_left"):
    inst = SL3Instance(q, ns, max(ns), convention)
    cs = build_sl3_instance(inst)
    cert = propagate_only(cs)
    print(f"\n== convention {convention} ==")
    print(f"  window {len(cs.window)} elements, {len(cs.atoms)} atoms")
    if cert is None:
        print("  propagation is inconclusive (no forced cycle)")
        continue
    print("  UNSAT after", len(cert.trace), "derivation steps")
    print("  replay accepted:", verify_certificate(cs, cert))
    names = {power(sl3_unipotent(i), q).payload: f"a_{i}^{q}" for i in range(1, 7)}
    chain = [
        names.get(cs.window.element(i).payload, ".")
        for i in cert.cycle
    ]
    print("  forced cycle visits:", " < ".join(chain))
    print("  (dots are intermediate window elements on the chain)")
