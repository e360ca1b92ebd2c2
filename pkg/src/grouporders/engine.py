"""Satisfiability of order-extension constraint systems, with replayable
certificates.

Unit propagation is transitive closure of the decided pairs.  An UNSAT
answer carries a propagation trace: every step derives one pair, justified
either by an atom or by transitivity over two earlier pairs, and the final
step closes a cycle.  Propagation runs in synchronous rounds (path length
doubles per round), so short consequences always enter the trace before any
long cycle can close it.

A SAT answer carries a total closed witness.  Branching picks the lowest
undecided index pair and asserts i < j first; adding an undecided pair to a
transitively closed acyclic relation can never create a cycle, so for pair
atoms the branching phase never backtracks once propagation succeeds.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from .constraints import (
    CONVENTIONS,
    ConstraintSystem,
    build_extension_system,
    sl3_positive_order,
)
from .errors import SizeLimitExceeded, SolveTimeout
from .groups import (
    GroupElement,
    SL3Z,
    multiply,
    power,
    sl3_unipotent,
    window_from_elements,
)
from .orders import OrderMatrix

DEFAULT_TIMEOUT = 10.0
DEFAULT_SIZE_LIMIT = 100_000


@dataclass(frozen=True)
class TraceStep:
    pair: tuple[int, int]
    rule: tuple  # ("atom", k) or ("trans", u, v, w): (u,v) and (v,w) give (u,w)


@dataclass(frozen=True)
class Certificate:
    verdict: str  # "sat" | "unsat"
    witness: Optional[OrderMatrix]
    trace: tuple[TraceStep, ...] = ()
    cycle: tuple[int, ...] = ()


class _Tracer:
    """Incremental pair derivation with justification bookkeeping."""

    def __init__(self):
        self.step_of: dict[tuple[int, int], int] = {}
        self.trace: list[TraceStep] = []

    def add(self, pair: tuple[int, int], rule: tuple) -> bool:
        """Record a new pair; returns True when it closes a cycle."""
        if pair in self.step_of:
            return False
        self.step_of[pair] = len(self.trace)
        self.trace.append(TraceStep(pair, rule))
        u, v = pair
        return u == v or (v, u) in self.step_of

    def expand(self, pair: tuple[int, int]) -> list[int]:
        """Element path realizing a derived pair through atom steps."""
        step = self.trace[self.step_of[pair]]
        if step.rule[0] == "atom":
            return [pair[0], pair[1]]
        _, u, v, w = step.rule
        left = self.expand((u, v))
        right = self.expand((v, w))
        return left + right[1:]

    def cycle_from(self, pair: tuple[int, int]) -> tuple[int, ...]:
        u, v = pair
        if u == v:
            return tuple(self.expand(pair))
        fwd = self.expand(pair)
        back = self.expand((v, u))
        return tuple(fwd + back[1:])


def propagate_only(cs: ConstraintSystem) -> Optional[Certificate]:
    """Forward closure of the atoms alone; never branches.

    Returns an UNSAT certificate when the closure forces a cycle, or None
    when propagation is inconclusive.
    """
    tracer = _Tracer()
    for k, pair in enumerate(cs.atoms):
        if tracer.add(pair, ("atom", k)):
            return Certificate(
                "unsat", None, tuple(tracer.trace), tracer.cycle_from(pair)
            )
    out: dict[int, list[int]] = {}
    inc: dict[int, list[int]] = {}
    for u, v in cs.atoms:
        out.setdefault(u, []).append(v)
        inc.setdefault(v, []).append(u)
    delta = sorted(tracer.step_of)
    while delta:
        fresh: list[tuple[tuple[int, int], tuple]] = []
        for u, v in delta:
            for w in out.get(v, ()):
                fresh.append(((u, w), ("trans", u, v, w)))
            for t in inc.get(u, ()):
                fresh.append(((t, v), ("trans", t, u, v)))
        added = []
        for pair, rule in fresh:
            if pair in tracer.step_of:
                continue
            closed_cycle = tracer.add(pair, rule)
            if closed_cycle:
                return Certificate(
                    "unsat", None, tuple(tracer.trace), tracer.cycle_from(pair)
                )
            added.append(pair)
            out.setdefault(pair[0], []).append(pair[1])
            inc.setdefault(pair[1], []).append(pair[0])
        delta = added
    return None


def _closure_rows(n: int, atoms) -> Optional[list[int]]:
    """Bitset transitive closure; None when it violates antisymmetry."""
    rows = [0] * n
    for i, j in atoms:
        rows[i] |= 1 << j
    for k in range(n):
        rk = rows[k]
        if not rk:
            continue
        bit = 1 << k
        for i in range(n):
            if rows[i] & bit:
                rows[i] |= rk
    for i in range(n):
        if rows[i] >> i & 1:
            return None
    for i, j in atoms:
        if rows[j] >> i & 1:
            return None
    # antisymmetry of the full closure follows from acyclicity: a mutual
    # pair would give a cycle and hence a diagonal bit
    return rows


def solve(
    cs: ConstraintSystem,
    timeout: float = DEFAULT_TIMEOUT,
    size_limit: int = DEFAULT_SIZE_LIMIT,
) -> Certificate:
    """Decide the system by propagation plus deterministic branching."""
    n = len(cs.window)
    if n > size_limit:
        raise SizeLimitExceeded(f"window of {n} elements exceeds the cap")
    deadline = time.monotonic() + timeout
    rows = _closure_rows(n, cs.atoms)
    if rows is None:
        cert = propagate_only(cs)
        if cert is None:
            raise AssertionError("bitset closure and tracer disagree on UNSAT")
        return cert
    # branching: lowest undecided pair, i < j asserted first.  The input is
    # already closed and acyclic, so each assertion extends it consistently.
    for i in range(n):
        if time.monotonic() > deadline:
            raise SolveTimeout(f"solve exceeded {timeout} s")
        for j in range(i + 1, n):
            if rows[i] >> j & 1 or rows[j] >> i & 1:
                continue
            reach = rows[j] | 1 << j
            for t in range(n):
                if t == i or rows[t] >> i & 1:
                    rows[t] |= reach
    ranks = [0] * n
    for i in range(n):
        ranks[i] = n - 1 - rows[i].bit_count()
    witness = OrderMatrix.from_ranks(cs.window, ranks)
    return Certificate("sat", witness)


def verify_certificate(cs: ConstraintSystem, cert: Certificate) -> bool:
    """Independent replay; returns False on any mismatch."""
    n = len(cs.window)
    if cert.verdict == "sat":
        w = cert.witness
        if w is None or w.window != cs.window or not w.closed:
            return False
        try:
            ranks = w.ranks()
        except Exception:
            return False
        if sorted(ranks) != list(range(n)):
            return False
        return all(ranks[i] < ranks[j] for i, j in cs.atoms)
    if cert.verdict != "unsat" or cert.witness is not None:
        return False
    if not cert.trace:
        return False
    derived: set[tuple[int, int]] = set()
    for pos, step in enumerate(cert.trace):
        u, v = step.pair
        if not (0 <= u < n and 0 <= v < n):
            return False
        rule = step.rule
        if rule[0] == "atom":
            k = rule[1]
            if not (0 <= k < len(cs.atoms)) or cs.atoms[k] != step.pair:
                return False
        elif rule[0] == "trans":
            _, a, b, c = rule
            if (a, c) != step.pair:
                return False
            if (a, b) not in derived or (b, c) not in derived:
                return False
        else:
            return False
        is_last = pos == len(cert.trace) - 1
        if is_last:
            if not (u == v or (v, u) in derived):
                return False
        derived.add(step.pair)
    cyc = cert.cycle
    if len(cyc) < 3 or cyc[0] != cyc[-1]:
        return False
    for a, b in zip(cyc, cyc[1:]):
        if (a, b) not in derived:
            return False
    return True


@dataclass(frozen=True)
class SL3Instance:
    """Finite witness parameters for the non-extendability of the positive
    cone on SL3(Z).

    For each cyclic index i the instance encodes the translated chain
    constraints 'identity < a_i^q * a_{i-1}^{-n}' for n = 1..trunc, shifted
    by a_{i-1}^{n_i} (plain-left) or a_{i-1}^{-n_i} (inverse-left), on top
    of the positive-cone invariance rules.
    """

    q: int
    n: tuple[int, int, int, int, int, int]
    trunc: int
    convention: str

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be positive")
        if len(self.n) != 6 or any(int(v) <= self.q for v in self.n):
            raise ValueError("every n_i must exceed q")
        if self.trunc < max(self.n):
            raise ValueError("truncation must reach max(n_i)")
        if self.convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {self.convention!r}")


def build_sl3_instance(inst: SL3Instance) -> ConstraintSystem:
    gens = {i: sl3_unipotent(i) for i in range(1, 7)}
    sign = 1 if inst.convention == "plain_left" else -1
    elements: list[GroupElement] = []
    shifted_atoms: list[tuple[GroupElement, GroupElement]] = []
    for i in range(1, 7):
        prev = gens[((i - 2) % 6) + 1]  # a_{i-1}
        cur = gens[i]
        n_i = inst.n[i - 1]
        shift = power(prev, sign * n_i)
        base = power(cur, inst.q)
        for m in range(1, n_i + 1):
            elements.append(power(prev, sign * m))
        for n in range(1, inst.trunc + 1):
            rhs = multiply(shift, multiply(base, power(prev, -n)))
            elements.append(rhs)
            shifted_atoms.append((shift, rhs))
    window = window_from_elements(SL3Z, elements)
    system = build_extension_system(window, sl3_positive_order(), convention=inst.convention)
    atoms = set(system.atoms)
    for x, y in shifted_atoms:
        atoms.add((window.position(x), window.position(y)))
    return ConstraintSystem(window, tuple(sorted(atoms)), inst.convention)
