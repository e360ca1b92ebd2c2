"""Exact arithmetic and Cayley-ball enumeration for Z^n, the discrete
Heisenberg group, and SL3(Z).

Elements are immutable and carry their group tag.  All integer arithmetic is
checked against the signed 64-bit range: overflow raises, it never wraps.
Window enumeration is deterministic (BFS layer, then lexicographic payload)
so that downstream constraint indices and certificates are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    ElementNotInWindow,
    GroupMismatch,
    IntegerOverflow,
    SizeLimitExceeded,
)

INT64_MIN = -(1 << 63)
INT64_MAX = (1 << 63) - 1

DEFAULT_SIZE_LIMIT = 100_000

KIND_ZN = "zn"
KIND_HEISENBERG = "heis"
KIND_SL3 = "sl3"


@dataclass(frozen=True)
class GroupId:
    kind: str
    n: int = 0

    def __post_init__(self):
        if self.kind == KIND_ZN:
            if self.n < 1:
                raise ValueError("Z^n needs n >= 1")
        elif self.kind in (KIND_HEISENBERG, KIND_SL3):
            if self.n != 0:
                raise ValueError(f"{self.kind} takes no rank parameter")
        else:
            raise ValueError(f"unknown group kind {self.kind!r}")

    def __str__(self):
        return f"zn:{self.n}" if self.kind == KIND_ZN else self.kind


def zn(n: int) -> GroupId:
    return GroupId(KIND_ZN, n)


HEISENBERG = GroupId(KIND_HEISENBERG)
SL3Z = GroupId(KIND_SL3)


@dataclass(frozen=True)
class GroupElement:
    group: GroupId
    payload: tuple[int, ...]

    def __repr__(self):
        return f"<{self.group}|{','.join(map(str, self.payload))}>"


def element_key(g: GroupElement) -> bytes:
    """Canonical byte encoding, stable across runs and windows."""
    return f"{g.group}:{','.join(map(str, g.payload))}".encode("ascii")


def _ck(v: int) -> int:
    if v < INT64_MIN or v > INT64_MAX:
        raise IntegerOverflow(f"entry {v} leaves the 64-bit range")
    return v


def _payload_len(group: GroupId) -> int:
    if group.kind == KIND_ZN:
        return group.n
    if group.kind == KIND_HEISENBERG:
        return 3
    return 9


def _det3(p: tuple[int, ...]) -> int:
    return (
        p[0] * (p[4] * p[8] - p[5] * p[7])
        - p[1] * (p[3] * p[8] - p[5] * p[6])
        + p[2] * (p[3] * p[7] - p[4] * p[6])
    )


def make_element(group: GroupId, data: Iterable[int]) -> GroupElement:
    """Validated element constructor for user-supplied data."""
    payload = tuple(int(v) for v in data)
    if len(payload) != _payload_len(group):
        raise ValueError(f"{group} payload needs {_payload_len(group)} entries")
    for v in payload:
        _ck(v)
    if group.kind == KIND_SL3 and _det3(payload) != 1:
        raise ValueError("SL3(Z) payload must have determinant 1")
    return GroupElement(group, payload)


def zn_element(*coords: int) -> GroupElement:
    return make_element(zn(len(coords)), coords)


def heisenberg_element(a: int, b: int, c: int) -> GroupElement:
    return make_element(HEISENBERG, (a, b, c))


def sl3_element(rows: Iterable[Iterable[int]]) -> GroupElement:
    flat = [v for row in rows for v in row]
    return make_element(SL3Z, flat)


def identity(group: GroupId) -> GroupElement:
    if group.kind == KIND_ZN:
        return GroupElement(group, (0,) * group.n)
    if group.kind == KIND_HEISENBERG:
        return GroupElement(group, (0, 0, 0))
    return GroupElement(group, (1, 0, 0, 0, 1, 0, 0, 0, 1))


def _same_group(g: GroupElement, h: GroupElement):
    if g.group != h.group:
        raise GroupMismatch(f"{g.group} vs {h.group}")


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    _same_group(g, h)
    kind = g.group.kind
    p, q = g.payload, h.payload
    if kind == KIND_ZN:
        payload = tuple(_ck(a + b) for a, b in zip(p, q))
    elif kind == KIND_HEISENBERG:
        # [a,b,c][a',b',c'] = [a+a', b+b', c+c'+a*b']
        payload = (_ck(p[0] + q[0]), _ck(p[1] + q[1]), _ck(p[2] + q[2] + p[0] * q[1]))
    else:
        payload = tuple(
            _ck(sum(p[3 * i + t] * q[3 * t + j] for t in range(3)))
            for i in range(3)
            for j in range(3)
        )
    return GroupElement(g.group, payload)


def inverse(g: GroupElement) -> GroupElement:
    kind = g.group.kind
    p = g.payload
    if kind == KIND_ZN:
        payload = tuple(_ck(-v) for v in p)
    elif kind == KIND_HEISENBERG:
        payload = (_ck(-p[0]), _ck(-p[1]), _ck(p[0] * p[1] - p[2]))
    else:
        # determinant 1, so the inverse is the adjugate
        m = [[p[0], p[1], p[2]], [p[3], p[4], p[5]], [p[6], p[7], p[8]]]

        def cof(i, j):
            return (
                m[(i + 1) % 3][(j + 1) % 3] * m[(i + 2) % 3][(j + 2) % 3]
                - m[(i + 1) % 3][(j + 2) % 3] * m[(i + 2) % 3][(j + 1) % 3]
            )

        payload = tuple(_ck(cof(j, i)) for i in range(3) for j in range(3))
    return GroupElement(g.group, payload)


def commutator(g: GroupElement, h: GroupElement) -> GroupElement:
    """g * h * g^-1 * h^-1 (the convention is fixed here once and for all)."""
    return multiply(multiply(g, h), multiply(inverse(g), inverse(h)))


def power(g: GroupElement, k: int) -> GroupElement:
    if k < 0:
        g, k = inverse(g), -k
    result = identity(g.group)
    base = g
    while k:
        if k & 1:
            result = multiply(result, base)
        k >>= 1
        if k:
            base = multiply(base, base)
    return result


@dataclass(frozen=True)
class GeneratorSet:
    group: GroupId
    generators: tuple[GroupElement, ...]
    symmetric: bool = False

    def __post_init__(self):
        e = identity(self.group)
        seen = set()
        for g in self.generators:
            if g.group != self.group:
                raise GroupMismatch("generator belongs to a different group")
            if g == e:
                raise ValueError("the identity is not a generator")
            seen.add(g.payload)
        if len(seen) != len(self.generators):
            raise ValueError("duplicate generators")
        if self.symmetric:
            for g in self.generators:
                if inverse(g).payload not in seen:
                    raise ValueError("symmetric generator set not closed under inverse")


_SL3_POSITIONS = ((0, 1), (0, 2), (1, 2), (1, 0), (2, 0), (2, 1))


def sl3_unipotent(i: int) -> GroupElement:
    """The i-th elementary unipotent generator, i in 1..6 cyclically."""
    r, c = _SL3_POSITIONS[(i - 1) % 6]
    flat = [1, 0, 0, 0, 1, 0, 0, 0, 1]
    flat[3 * r + c] = 1
    return GroupElement(SL3Z, tuple(flat))


def heisenberg_x() -> GroupElement:
    return GroupElement(HEISENBERG, (1, 0, 0))


def heisenberg_y() -> GroupElement:
    return GroupElement(HEISENBERG, (0, 1, 0))


def heisenberg_z() -> GroupElement:
    return GroupElement(HEISENBERG, (0, 0, 1))


def default_generators(group: GroupId) -> GeneratorSet:
    if group.kind == KIND_ZN:
        gens = tuple(
            GroupElement(group, tuple(1 if i == j else 0 for j in range(group.n)))
            for i in range(group.n)
        )
    elif group.kind == KIND_HEISENBERG:
        gens = (heisenberg_x(), heisenberg_y(), heisenberg_z())
    else:
        gens = tuple(sl3_unipotent(i) for i in range(1, 7))
    return GeneratorSet(group, gens)


class Window:
    """Finite indexed subset of a group; always contains the identity."""

    __slots__ = ("group", "elements", "_index")

    def __init__(self, group: GroupId, elements: Iterable[GroupElement]):
        elems = tuple(elements)
        index: dict[tuple[int, ...], int] = {}
        for pos, g in enumerate(elems):
            if g.group != group:
                raise GroupMismatch("window element from a different group")
            if g.payload in index:
                raise ValueError("duplicate window element")
            index[g.payload] = pos
        if identity(group).payload not in index:
            raise ValueError("window must contain the identity")
        self.group = group
        self.elements = elems
        self._index = index

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def __contains__(self, g: GroupElement) -> bool:
        return g.group == self.group and g.payload in self._index

    def position(self, g: GroupElement) -> int:
        try:
            return self._index[g.payload]
        except KeyError:
            raise ElementNotInWindow(f"{g!r} not in window") from None

    def find(self, g: GroupElement):
        """Position of g, or None when absent."""
        return self._index.get(g.payload)

    def element(self, i: int) -> GroupElement:
        return self.elements[i]

    def __eq__(self, other):
        return (
            isinstance(other, Window)
            and self.group == other.group
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((self.group, self.elements))

    def __repr__(self):
        return f"Window({self.group}, {len(self)} elements)"


def ball(gens: GeneratorSet, radius: int, size_limit: int = DEFAULT_SIZE_LIMIT) -> Window:
    """Breadth-first ball of word length <= radius over gens and inverses."""
    if not gens.generators:
        raise ValueError("ball needs a nonempty generator set")
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    steps = list(gens.generators)
    for g in gens.generators:
        inv = inverse(g)
        if all(inv.payload != s.payload for s in steps):
            steps.append(inv)
    steps.sort(key=lambda g: g.payload)

    e = identity(gens.group)
    seen = {e.payload}
    ordered = [e]
    frontier = [e]
    for _ in range(radius):
        layer = []
        for g in frontier:
            for s in steps:
                h = multiply(g, s)
                if h.payload not in seen:
                    seen.add(h.payload)
                    layer.append(h)
                    if len(seen) > size_limit:
                        raise SizeLimitExceeded(
                            f"ball exceeds the {size_limit}-element cap"
                        )
        layer.sort(key=lambda g: g.payload)
        ordered.extend(layer)
        frontier = layer
        if not layer:
            break
    return Window(gens.group, ordered)


def window_closure(
    w: Window,
    multipliers: Iterable[GroupElement],
    size_limit: int = DEFAULT_SIZE_LIMIT,
) -> Window:
    """Extend w with g*m for every g in w and multiplier m.

    One closure round over the original window; appended elements follow the
    existing ones in lexicographic payload order.
    """
    mults = list(multipliers)
    for m in mults:
        if m.group != w.group:
            raise GroupMismatch("multiplier from a different group")
    fresh = {}
    for g in w:
        for m in mults:
            h = multiply(g, m)
            if h not in w and h.payload not in fresh:
                fresh[h.payload] = h
    if len(w) + len(fresh) > size_limit:
        raise SizeLimitExceeded(f"closure exceeds the {size_limit}-element cap")
    appended = sorted(fresh.values(), key=lambda g: g.payload)
    return Window(w.group, list(w.elements) + appended)


def window_from_elements(group: GroupId, elements: Iterable[GroupElement]) -> Window:
    """Window over the given elements plus the identity, in canonical
    (lexicographic payload) order."""
    pool = {identity(group).payload: identity(group)}
    for g in elements:
        if g.group != group:
            raise GroupMismatch("element from a different group")
        pool[g.payload] = g
    return Window(group, sorted(pool.values(), key=lambda g: g.payload))


def interval_window(lo: int, hi: int) -> Window:
    """Window {lo, ..., hi-1} in Z, in natural order; must contain 0."""
    if not lo <= 0 < hi:
        raise ValueError("interval window must contain 0")
    group = zn(1)
    return Window(group, [GroupElement(group, (k,)) for k in range(lo, hi)])
