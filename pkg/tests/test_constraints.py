import random

import pytest

from grouporders import (
    Comparison,
    LinearFunctionalOrder,
    OrderMatrix,
    SemigroupSpec,
    Sqrt2Num,
    ball,
    build_extension_system,
    cone_contains,
    default_generators,
    extends_quadrant,
    functional_order_compare,
    heisenberg_positive_order,
    identity,
    is_total,
    lex_functional,
    multiply,
    quadrant_order,
    sl3_positive_order,
    sl3_unipotent,
    transitive_closure,
    window_from_elements,
    zn,
    zn_element,
)
from grouporders.groups import HEISENBERG, Window


def test_quadrant_order_generators():
    assert [g.payload for g in quadrant_order(2).positive_generators] == [
        (1, 0),
        (0, 1),
    ]
    assert [g.payload for g in quadrant_order(1).positive_generators] == [(1,)]
    assert len(quadrant_order(3).positive_generators) == 3


def test_sl3_positive_order():
    spec = sl3_positive_order()
    assert len(spec.positive_generators) == 6
    assert spec.positive_generators[0].payload[1] == 1  # entry (1,2) of a_1
    assert identity(spec.group) not in spec.positive_generators
    assert not cone_contains(spec, identity(spec.group))
    assert cone_contains(spec, multiply(sl3_unipotent(1), sl3_unipotent(4)))


def test_heisenberg_positive_order():
    spec = heisenberg_positive_order()
    assert [g.payload for g in spec.positive_generators] == [
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
    ]
    assert not cone_contains(spec, identity(HEISENBERG))


def test_identity_exclusion_check():
    with pytest.raises(ValueError):
        SemigroupSpec(zn(1), (zn_element(1), zn_element(-1)))
    with pytest.raises(ValueError):
        SemigroupSpec(zn(1), (identity(zn(1)),))


def test_build_extension_system_ball1():
    w = ball(default_generators(zn(2)), 1)
    cs = build_extension_system(w, quadrant_order(2))
    named = {
        (w.element(i).payload, w.element(j).payload) for i, j in cs.atoms
    }
    assert named == {
        ((0, 0), (1, 0)),
        ((0, 0), (0, 1)),
        ((-1, 0), (0, 0)),
        ((0, -1), (0, 0)),
    }


def test_build_extension_system_trivial_and_dedup():
    w = window_from_elements(zn(2), [])
    assert build_extension_system(w, quadrant_order(2)).atoms == ()
    w1 = ball(default_generators(zn(2)), 1)
    e, ex = zn_element(0, 0), zn_element(1, 0)
    cs = build_extension_system(w1, quadrant_order(2), [(e, ex)])
    assert len(cs.atoms) == 4  # duplicate of a rule is absorbed


def test_extension_system_invariant_under_reordering():
    w = ball(default_generators(zn(2)), 1)
    permuted = Window(zn(2), [w.element(i) for i in (2, 0, 4, 1, 3)])
    cs1 = build_extension_system(w, quadrant_order(2))
    cs2 = build_extension_system(permuted, quadrant_order(2))
    named1 = {(w.element(i).payload, w.element(j).payload) for i, j in cs1.atoms}
    named2 = {
        (permuted.element(i).payload, permuted.element(j).payload)
        for i, j in cs2.atoms
    }
    assert named1 == named2


def test_functional_compare_examples():
    lex = LinearFunctionalOrder.of(
        (1, 0), LinearFunctionalOrder.of((0, 1))
    )
    assert functional_order_compare(lex, zn_element(0, 5), zn_element(1, -100)) is Comparison.LESS
    f = LinearFunctionalOrder.of((1, Sqrt2Num.of(0, 1)))
    assert f.compare(zn_element(1, 0), zn_element(0, 1)) is Comparison.LESS  # 1 < sqrt2
    with pytest.raises(ValueError):
        f.compare(zn_element(1, 0), zn_element(1, 0))


def test_extends_quadrant():
    assert extends_quadrant(lex_functional(2))
    rev = LinearFunctionalOrder.of((-1, 0), LinearFunctionalOrder.of((0, -1)))
    assert not extends_quadrant(rev)
    diag = LinearFunctionalOrder.of((1, 1), lex_functional(2))
    assert extends_quadrant(diag)


def test_functional_orders_are_total_and_consistent():
    w = ball(default_generators(zn(2)), 2)
    rnd = random.Random(2)
    for _ in range(20):
        coeffs = (
            Sqrt2Num.of(rnd.randint(-3, 3), rnd.randint(-3, 3)),
            Sqrt2Num.of(rnd.randint(-3, 3), rnd.randint(-3, 3)),
        )
        f = LinearFunctionalOrder.of(coeffs)
        m = f.window_order(w)
        assert is_total(m) and m.closed
        rebuilt = transitive_closure(OrderMatrix.from_pairs(w, list(m.pairs())))
        assert rebuilt == m


def test_functional_left_invariance():
    w = ball(default_generators(zn(2)), 2)
    f = LinearFunctionalOrder.of((Sqrt2Num.of(1, 1), Sqrt2Num.of(2, 0)))
    shift = zn_element(3, -2)
    for x in w:
        for y in w:
            if x.payload == y.payload:
                continue
            assert f.compare(x, y) == f.compare(multiply(x, shift), multiply(y, shift))


def test_extends_quadrant_matches_atom_satisfaction():
    rnd = random.Random(8)
    w = ball(default_generators(zn(2)), 2)
    cs = build_extension_system(w, quadrant_order(2))
    for _ in range(30):
        f = LinearFunctionalOrder.of(
            (
                Sqrt2Num.of(rnd.randint(-2, 2), rnd.randint(-2, 2)),
                Sqrt2Num.of(rnd.randint(-2, 2), rnd.randint(-2, 2)),
            ),
            lex_functional(2),
        )
        ranks = f.window_order(w).ranks()
        satisfies = all(ranks[i] < ranks[j] for i, j in cs.atoms)
        assert satisfies == extends_quadrant(f)
