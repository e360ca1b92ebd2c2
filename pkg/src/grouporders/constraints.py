"""Constraint systems for total orders extending an invariant partial order,
and the linear-functional orders on Z^n.

An invariant partial order is carried by a semigroup of positives; on a
window it unrolls into one atom g < g*s per element and positive generator.
Linear-functional orders compare exact values in Q[sqrt(2)] with a recursive
tie-break cascade ending in lexicographic order, so comparisons are total
and never made in floating point.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .exactnum import Sqrt2Num, _coerce
from .groups import (
    GroupElement,
    GroupId,
    HEISENBERG,
    SL3Z,
    Window,
    default_generators,
    identity,
    inverse,
    multiply,
    zn,
)
from .orders import OrderMatrix

INVERSE_LEFT = "inverse_left"
PLAIN_LEFT = "plain_left"
CONVENTIONS = (INVERSE_LEFT, PLAIN_LEFT)

IDENTITY_CHECK_DEPTH = 6


@dataclass(frozen=True)
class SemigroupSpec:
    """Positive generators of an invariant partial order (identity excluded).

    Identity exclusion is verified for products up to word length 6; that
    bound is a documented soundness boundary, not a proof.
    """

    group: GroupId
    positive_generators: tuple[GroupElement, ...]

    def __post_init__(self):
        e = identity(self.group)
        for g in self.positive_generators:
            if g.group != self.group:
                raise ValueError("generator from a different group")
            if g == e:
                raise ValueError("identity cannot be a positive generator")
        frontier = {g.payload: g for g in self.positive_generators}
        seen = dict(frontier)
        for _ in range(IDENTITY_CHECK_DEPTH - 1):
            nxt = {}
            for g in frontier.values():
                for s in self.positive_generators:
                    h = multiply(g, s)
                    if h == e:
                        raise ValueError(
                            "positive generators reach the identity at short word length"
                        )
                    if h.payload not in seen:
                        nxt[h.payload] = h
            seen.update(nxt)
            frontier = nxt
            if not frontier:
                break


_CACHED_SPECS: dict = {}


def quadrant_order(n: int) -> SemigroupSpec:
    """Positive orthant order on Z^n, generated by the unit vectors."""
    key = ("zn", n)
    if key not in _CACHED_SPECS:
        group = zn(n)
        _CACHED_SPECS[key] = SemigroupSpec(group, default_generators(group).generators)
    return _CACHED_SPECS[key]


def heisenberg_positive_order() -> SemigroupSpec:
    """Nonnegative-entry cone of the Heisenberg group, generated by x, y, z."""
    if "heis" not in _CACHED_SPECS:
        _CACHED_SPECS["heis"] = SemigroupSpec(
            HEISENBERG, default_generators(HEISENBERG).generators
        )
    return _CACHED_SPECS["heis"]


def sl3_positive_order() -> SemigroupSpec:
    """Entrywise-nonnegative cone of SL3(Z), generated by the six elementary
    unipotent matrices."""
    if "sl3" not in _CACHED_SPECS:
        _CACHED_SPECS["sl3"] = SemigroupSpec(
            SL3Z, default_generators(SL3Z).generators
        )
    return _CACHED_SPECS["sl3"]


def cone_contains(spec: SemigroupSpec, g: GroupElement) -> bool:
    """Membership in the generated semigroup, for the three built-in cones.

    Uses the exact entrywise characterizations (nonnegative coordinates /
    nonnegative matrix entries, identity excluded).
    """
    if g.group != spec.group:
        raise ValueError("element from a different group")
    e = identity(spec.group)
    if g == e:
        return False
    kind = spec.group.kind
    if kind == "zn" and spec == quadrant_order(spec.group.n):
        return all(v >= 0 for v in g.payload)
    if kind == "heis" and spec == heisenberg_positive_order():
        return all(v >= 0 for v in g.payload)
    if kind == "sl3" and spec == sl3_positive_order():
        return all(v >= 0 for v in g.payload)
    raise NotImplementedError("membership is only decided for the built-in cones")


def cone_order(spec: SemigroupSpec, window: Window) -> OrderMatrix:
    """The invariant partial order g < h iff g^-1 h is cone-positive,
    restricted to the window (already transitively closed)."""
    pairs = []
    for i, g in enumerate(window):
        ginv = inverse(g)
        for j, h in enumerate(window):
            if i != j and cone_contains(spec, multiply(ginv, h)):
                pairs.append((i, j))
    return OrderMatrix.from_pairs(window, pairs, closed=True)


@dataclass(frozen=True)
class ConstraintSystem:
    """Positivity atoms over a window: index pairs (i, j) demanding i < j."""

    window: Window
    atoms: tuple[tuple[int, int], ...]
    convention: str = INVERSE_LEFT

    def __post_init__(self):
        n = len(self.window)
        for i, j in self.atoms:
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise ValueError(f"invalid atom ({i},{j})")
        if len(set(self.atoms)) != len(self.atoms):
            raise ValueError("atoms must be deduplicated")
        if self.convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {self.convention!r}")


def invariance_atoms(w: Window, s: SemigroupSpec) -> list[tuple[int, int]]:
    """One atom g < g*s for each window element and positive generator with
    g*s still inside the window."""
    out = set()
    for i, g in enumerate(w):
        for gen in s.positive_generators:
            j = w.find(multiply(g, gen))
            if j is not None:
                out.add((i, j))
    return sorted(out)


def build_extension_system(
    w: Window,
    s: SemigroupSpec,
    extra_atoms: Iterable[tuple[GroupElement, GroupElement]] = (),
    convention: str = INVERSE_LEFT,
) -> ConstraintSystem:
    atoms = set(invariance_atoms(w, s))
    for x, y in extra_atoms:
        atoms.add((w.position(x), w.position(y)))
    return ConstraintSystem(w, tuple(sorted(atoms)), convention)


class Comparison(enum.Enum):
    LESS = "less"
    GREATER = "greater"


CoefficientLike = Union[int, Sqrt2Num]


@dataclass(frozen=True)
class LinearFunctionalOrder:
    """Total order on Z^n from a linear functional with exact tie-breaking.

    Primary comparison is the sign of f(x-y); ties cascade into the
    tie-breaker order, and a missing tie-breaker falls back to plain
    lexicographic comparison (which is always total).
    """

    coefficients: tuple[Sqrt2Num, ...]
    tie_breaker: Optional["LinearFunctionalOrder"] = None

    @staticmethod
    def of(coefficients: Sequence[CoefficientLike], tie_breaker=None) -> "LinearFunctionalOrder":
        return LinearFunctionalOrder(
            tuple(_coerce(c) for c in coefficients), tie_breaker
        )

    @property
    def dimension(self) -> int:
        return len(self.coefficients)

    def _value_sign(self, diff: Sequence[int]) -> int:
        total = Sqrt2Num.of(0)
        for c, d in zip(self.coefficients, diff):
            if d:
                total = total + c * d
        return total.sign()

    def compare(self, x: GroupElement, y: GroupElement) -> Comparison:
        if x.payload == y.payload:
            raise ValueError("compare needs distinct elements")
        diff = tuple(a - b for a, b in zip(x.payload, y.payload))
        s = self._value_sign(diff)
        if s < 0:
            return Comparison.LESS
        if s > 0:
            return Comparison.GREATER
        if self.tie_breaker is not None:
            return self.tie_breaker.compare(x, y)
        for d in diff:  # lexicographic fallback; diff != 0 guarantees a decision
            if d:
                return Comparison.LESS if d < 0 else Comparison.GREATER
        raise AssertionError("unreachable: distinct payloads")

    def window_order(self, window: Window) -> OrderMatrix:
        return OrderMatrix.from_compare(
            window, lambda a, b: self.compare(a, b) is Comparison.LESS
        )


def functional_order_compare(
    f: LinearFunctionalOrder, x: GroupElement, y: GroupElement
) -> Comparison:
    return f.compare(x, y)


def lex_functional(n: int) -> LinearFunctionalOrder:
    """The lexicographic order as an explicit unit-functional cascade."""
    tie = None
    for i in reversed(range(n)):
        coeffs = tuple(Sqrt2Num.of(1 if j == i else 0) for j in range(n))
        tie = LinearFunctionalOrder(coeffs, tie)
    return tie


def extends_quadrant(f: LinearFunctionalOrder) -> bool:
    """True iff every positive-orthant generator sits above the origin."""
    n = f.dimension
    group = zn(n)
    zero = identity(group)
    for i in range(n):
        e_i = GroupElement(group, tuple(1 if j == i else 0 for j in range(n)))
        if f.compare(e_i, zero) is not Comparison.GREATER:
            return False
    return True
