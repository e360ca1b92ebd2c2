"""Window-level samplers and constructions for invariant random orders.

The uniform order draws one 64-bit value per element from a counter-based
stream keyed by the element's canonical encoding, so restricting a larger
window reproduces the smaller window's order exactly.  Coset extension,
gluing, and the dynamical realization map are deterministic given their
inputs; orbit values of rotations are compared with exact quadratic-
irrational arithmetic, never floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

from . import rng
from .exactnum import Sqrt2Num, _coerce
from .errors import (
    DomainNotCovered,
    InnerOrderIncomplete,
    StabilizerCollision,
)
from .groups import (
    GeneratorSet,
    GroupElement,
    Window,
    element_key,
    identity,
    inverse,
    multiply,
)
from .orders import OrderMatrix

KEY_BITS = 64
_MASK = (1 << KEY_BITS) - 1


def _draw_distinct(seed: int, tag: str, keys: Sequence[bytes]) -> list[int]:
    """One 64-bit value per key; collisions resample in list order."""
    used = set()
    out = []
    for key in keys:
        attempt = 0
        v = rng.u64(seed, tag, key, attempt)
        while v in used:
            attempt += 1
            v = rng.u64(seed, tag, key, attempt)
        used.add(v)
        out.append(v)
    return out


def uniform_order(w: Window, seed: int) -> OrderMatrix:
    """Total order from iid uniform values, one per window element."""
    values = _draw_distinct(seed, "elem", [element_key(g) for g in w])
    idx = sorted(range(len(w)), key=values.__getitem__)
    ranks = [0] * len(w)
    for r, i in enumerate(idx):
        ranks[i] = r
    return OrderMatrix.from_ranks(w, ranks)


def _spot_check_subgroup(w: Window, member: Callable[[GroupElement], bool], cap: int = 2000):
    e = identity(w.group)
    if not member(e):
        raise ValueError("subgroup test rejects the identity")
    inside = [g for g in w if member(g)]
    for g in inside:
        gi = inverse(g)
        if gi in w and not member(gi):
            raise ValueError("subgroup test not closed under inverse on the window")
    checked = 0
    for g in inside:
        for h in inside:
            gh = multiply(g, h)
            if gh in w and not member(gh):
                raise ValueError("subgroup test not closed under products on the window")
            checked += 1
            if checked >= cap:
                return


def coset_extension(
    w: Window,
    subgroup_test: Callable[[GroupElement], bool],
    inner: OrderMatrix,
    seed: int,
) -> OrderMatrix:
    """Total order: iid labels order the cosets, the inner order decides
    within each coset (transported by the coset representative).

    The representative of the subgroup's own coset is the identity, so the
    restriction to subgroup pairs reproduces the inner order exactly.
    """
    _spot_check_subgroup(w, subgroup_test)
    try:
        inner_rank = {
            inner.window.element(i).payload: r for i, r in enumerate(inner.ranks())
        }
    except Exception as exc:
        raise InnerOrderIncomplete("inner order must be total and closed") from exc

    e = identity(w.group)
    reps: list[GroupElement] = []
    rep_of: list[int] = []
    for g in w:
        if subgroup_test(g):
            target = e
        else:
            target = None
            for r in reps:
                if r != e and subgroup_test(multiply(inverse(r), g)):
                    target = r
                    break
            if target is None:
                target = g
        if target not in reps:
            reps.append(target)
        rep_of.append(reps.index(target))

    labels = _draw_distinct(seed, "coset", [element_key(r) for r in reps])
    keys = []
    for pos, g in enumerate(w):
        t = multiply(inverse(reps[rep_of[pos]]), g)
        if t.payload not in inner_rank:
            raise InnerOrderIncomplete(f"inner order does not cover {t!r}")
        keys.append((labels[rep_of[pos]], inner_rank[t.payload]))
    idx = sorted(range(len(w)), key=keys.__getitem__)
    ranks = [0] * len(w)
    for r, i in enumerate(idx):
        ranks[i] = r
    return OrderMatrix.from_ranks(w, ranks)


def specification_glue(
    m1: OrderMatrix,
    m2: OrderMatrix,
    K: Iterable[GroupElement],
    D: Window,
) -> OrderMatrix:
    """Glue two total orders: inside K^-1 D follow the first order, outside
    follow the second, and place the inside block below the outside block."""
    w = m1.window
    if m2.window != w:
        raise ValueError("glue needs both orders on the same window")
    marked = [False] * len(w)
    for k in K:
        kinv = inverse(k)
        for d in D:
            x = multiply(kinv, d)
            p = w.find(x)
            if p is None:
                raise DomainNotCovered(f"{x!r} outside the glue window")
            marked[p] = True
    r1, r2 = m1.ranks(), m2.ranks()
    keys = [
        (0, r1[i]) if marked[i] else (1, r2[i])
        for i in range(len(w))
    ]
    idx = sorted(range(len(w)), key=keys.__getitem__)
    ranks = [0] * len(w)
    for r, i in enumerate(idx):
        ranks[i] = r
    return OrderMatrix.from_ranks(w, ranks)


def shadowing_report(
    glued: OrderMatrix,
    m1: OrderMatrix,
    m2: OrderMatrix,
    K: Iterable[GroupElement],
    D: Window,
):
    """Check the gluing contract element by element.

    For g in K the glued order must look like the first order through the
    lens of D; for window elements outside (D D^-1) K it must look like the
    second.  Elements whose D-preimage leaves the window are skipped, as are
    the separation-band elements in between.  Returns (all_ok, rows).
    """
    w = glued.window
    k_set = {k.payload for k in K}
    f_set = {
        multiply(d1, inverse(d2)).payload for d1 in D for d2 in D
    }
    fk_set = set()
    for fp in f_set:
        f = GroupElement(w.group, fp)
        for kp in k_set:
            fk_set.add(multiply(f, GroupElement(w.group, kp)).payload)
    rows = []
    all_ok = True
    for g in w:
        ginv = inverse(g)
        pre = [w.find(multiply(ginv, d)) for d in D]
        if any(p is None for p in pre):
            continue
        if g.payload in k_set:
            ref, side = m1, "inside"
        elif g.payload not in fk_set:
            ref, side = m2, "outside"
        else:
            continue
        ok = all(
            glued.has(pre[a], pre[b]) == ref.has(pre[a], pre[b])
            for a in range(len(pre))
            for b in range(len(pre))
            if a != b
        )
        all_ok = all_ok and ok
        rows.append((g, side, ok))
    return all_ok, rows


# -- dynamical realization -----------------------------------------------

ROTATION = "rotation"
TORUS_ROTATION = "torus_rotation"
BERNOULLI_SHIFT = "bernoulli_shift"


@dataclass(frozen=True)
class ActionSpec:
    kind: str
    dim: int
    alphas: tuple[Sqrt2Num, ...] = ()

    def __post_init__(self):
        if self.kind not in (ROTATION, TORUS_ROTATION, BERNOULLI_SHIFT):
            raise ValueError(f"unknown action kind {self.kind!r}")
        if self.kind == ROTATION and self.dim != 1:
            raise ValueError("circle rotation acts through Z")
        if self.kind in (ROTATION, TORUS_ROTATION):
            if len(self.alphas) != self.dim:
                raise ValueError("one angle per generator required")
            for a in self.alphas:
                if a.root2 == 0:
                    raise ValueError("rotation angles must be irrational (root2 part nonzero)")


def rotation_action(alpha: Union[Sqrt2Num, Fraction, int]) -> ActionSpec:
    return ActionSpec(ROTATION, 1, (_coerce(alpha),))


def torus_action(alphas: Sequence[Union[Sqrt2Num, Fraction, int]]) -> ActionSpec:
    return ActionSpec(TORUS_ROTATION, len(alphas), tuple(_coerce(a) for a in alphas))


def bernoulli_action(dim: int) -> ActionSpec:
    return ActionSpec(BERNOULLI_SHIFT, dim)


def _ranks_from_keys(
    w: Window,
    keys: list[int],
    exact: Optional[Callable[[int], Sqrt2Num]],
) -> list[int]:
    """Ranks by integer key; equal keys fall back to exact comparison.

    ``exact(i)`` must return the exact value whose key ties; ties in the
    exact values signal a non-free point.
    """
    import numpy as np

    order = [int(i) for i in np.argsort(np.array(keys, dtype=np.uint64), kind="stable")]
    pos = 0
    while pos + 1 < len(order):
        if keys[order[pos]] != keys[order[pos + 1]]:
            pos += 1
            continue
        stop = pos + 1
        while stop < len(order) and keys[order[stop]] == keys[order[pos]]:
            stop += 1
        if exact is None:
            raise StabilizerCollision(
                f"orbit values collide at window positions {order[pos:stop]}"
            )
        block = order[pos:stop]
        import functools

        block.sort(key=functools.cmp_to_key(lambda a, b: -1 if exact(a) < exact(b) else 1))
        for a, b in zip(block, block[1:]):
            if exact(a) == exact(b):
                raise StabilizerCollision("orbit values collide")
        order[pos:stop] = block
        pos = stop
    ranks = [0] * len(w)
    for r, i in enumerate(order):
        ranks[i] = r
    return ranks


def realize(action: ActionSpec, point, w: Window) -> OrderMatrix:
    """Order the window by exact orbit values: g comes before h when the
    g-image of the point precedes the h-image."""
    group = w.group
    if action.kind == BERNOULLI_SHIFT:
        seed = rng.check_seed(int(point))
        keys = [rng.u64(seed, "site", element_key(g)) for g in w]
        if len(set(keys)) != len(keys):
            raise StabilizerCollision("site labels collide")
        return OrderMatrix.from_ranks(w, _ranks_from_keys(w, keys, None))
    if group.kind != "zn" or group.n != action.dim:
        raise ValueError(f"action needs a Z^{action.dim} window")
    if action.kind == ROTATION:
        x = _coerce(point)
        alpha = action.alphas[0]
        # integer hot path: with L the common denominator, the orbit value at
        # k is ((ax0 + k*astep) + (cx0 + k*cstep) * sqrt2) / L
        from math import isqrt, lcm

        L = lcm(
            x.rational.denominator,
            x.root2.denominator,
            alpha.rational.denominator,
            alpha.root2.denominator,
        )
        ax0 = x.rational.numerator * (L // x.rational.denominator)
        cx0 = x.root2.numerator * (L // x.root2.denominator)
        astep = alpha.rational.numerator * (L // alpha.rational.denominator)
        cstep = alpha.root2.numerator * (L // alpha.root2.denominator)
        ks = [g.payload[0] for g in w]
        keys, floors = [], []
        for k in ks:
            a = (ax0 + k * astep) << KEY_BITS
            c = (cx0 + k * cstep) << KEY_BITS
            if c > 0:
                e = isqrt(2 * c * c)
            elif c < 0:
                e = -isqrt(2 * c * c) - 1
            else:
                e = 0
            scaled = (a + e) // L
            keys.append(scaled & _MASK)
            floors.append(scaled >> KEY_BITS)

        def exact(i):  # key collisions compare exact fractional parts
            return x + alpha * ks[i] - floors[i]

        return OrderMatrix.from_ranks(w, _ranks_from_keys(w, keys, exact))
    # torus: one circle per coordinate, values compared lexicographically
    xs = [_coerce(c) for c in point]
    if len(xs) != action.dim:
        raise ValueError("point dimension mismatch")
    per_coord = []
    for c in range(action.dim):
        col_keys = []
        col_fracs = []
        for g in w:
            v = xs[c] + action.alphas[c] * g.payload[c]
            col_keys.append(v.scaled_floor(KEY_BITS) & _MASK)
            col_fracs.append(v - v.floor())
        per_coord.append((col_keys, col_fracs))
    combined = [
        tuple(per_coord[c][0][i] for c in range(action.dim)) for i in range(len(w))
    ]
    order = sorted(range(len(w)), key=combined.__getitem__)
    for a, b in zip(order, order[1:]):
        if combined[a] == combined[b]:
            exact_a = tuple(per_coord[c][1][a] for c in range(action.dim))
            exact_b = tuple(per_coord[c][1][b] for c in range(action.dim))
            if exact_a == exact_b:
                raise StabilizerCollision("orbit values collide")
    ranks = [0] * len(w)
    for r, i in enumerate(order):
        ranks[i] = r
    return OrderMatrix.from_ranks(w, ranks)


CESARO_INTERVAL = "cesaro_interval"
BOX = "box"


@dataclass(frozen=True)
class AveragingScheme:
    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in (CESARO_INTERVAL, BOX):
            raise ValueError(f"unknown averaging scheme {self.kind!r}")
        if self.n < 1:
            raise ValueError("scheme size must be positive")


def cesaro(n: int) -> AveragingScheme:
    return AveragingScheme(CESARO_INTERVAL, n)


def box(n: int) -> AveragingScheme:
    return AveragingScheme(BOX, n)


def _scheme_support(scheme: AveragingScheme, w: Window) -> list[GroupElement]:
    group = w.group
    if group.kind != "zn":
        raise DomainNotCovered("averaging schemes act on Z^n windows")
    if scheme.kind == CESARO_INTERVAL:
        if group.n != 1:
            raise DomainNotCovered("interval averaging needs Z")
        return [GroupElement(group, (k,)) for k in range(scheme.n)]
    import itertools

    return [
        GroupElement(group, c)
        for c in itertools.product(range(scheme.n), repeat=group.n)
    ]


def reconstruct(m: OrderMatrix, scheme: AveragingScheme) -> Fraction:
    """Measure, under the scheme, of the window elements below the identity.

    This is the finite-stage value of the coordinate-recovery average; no
    limit is claimed.
    """
    w = m.window
    support = _scheme_support(scheme, w)
    e_pos = w.position(identity(w.group))
    count = 0
    for h in support:
        p = w.find(h)
        if p is None:
            raise DomainNotCovered(f"{h!r} outside the order's window")
        if m.has(p, e_pos):
            count += 1
    return Fraction(count, len(support))


def stabilizer_check(m: OrderMatrix, w: Window, gens: GeneratorSet) -> tuple[GroupElement, ...]:
    """Generators whose translate leaves the order unchanged on the overlap."""
    if w != m.window:
        raise ValueError("stabilizer check needs the order's own window")
    fixed = []
    for g in gens.generators:
        ginv = inverse(g)
        pre = [w.find(multiply(ginv, x)) for x in w]
        overlap = [i for i, p in enumerate(pre) if p is not None]
        ok = True
        for a_pos in range(len(overlap)):
            i = overlap[a_pos]
            for b_pos in range(a_pos + 1, len(overlap)):
                j = overlap[b_pos]
                if m.has(i, j) != m.has(pre[i], pre[j]) or m.has(j, i) != m.has(
                    pre[j], pre[i]
                ):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            fixed.append(g)
    return tuple(fixed)
