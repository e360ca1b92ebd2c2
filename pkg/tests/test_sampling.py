import math
import random
from fractions import Fraction

import pytest

import oracles
from grouporders import (
    DomainNotCovered,
    InnerOrderIncomplete,
    OrderMatrix,
    Sqrt2Num,
    StabilizerCollision,
    ball,
    bernoulli_action,
    box,
    cesaro,
    coset_extension,
    default_generators,
    identity,
    interval_window,
    is_total,
    lex_functional,
    realize,
    reconstruct,
    rotation_action,
    shadowing_report,
    specification_glue,
    stabilizer_check,
    torus_action,
    transitive_closure,
    uniform_order,
    window_from_elements,
    zn,
    zn_element,
)
from grouporders.rng import unit_fraction
from grouporders.sampling import _ranks_from_keys

W2 = ball(default_generators(zn(2)), 2)
ALPHA = Sqrt2Num.of(-1, 1)  # sqrt(2) - 1


def test_uniform_order_deterministic_and_total():
    m1 = uniform_order(W2, 12345)
    m2 = uniform_order(W2, 12345)
    assert m1 == m2 and is_total(m1)
    assert uniform_order(W2, 54321) != m1


def test_uniform_order_pair_symmetry():
    n, hits = 4000, 0
    i, j = W2.position(zn_element(0, 0)), W2.position(zn_element(1, 1))
    for s in range(n):
        if uniform_order(W2, s).has(i, j):
            hits += 1
    se = math.sqrt(0.25 / n)
    assert abs(hits / n - 0.5) < 4 * se


def test_uniform_order_window_inclusion_is_exact():
    big = ball(default_generators(zn(2)), 3)
    for seed in range(50):
        m_small = uniform_order(W2, seed)
        m_big = uniform_order(big, seed)
        pos = [big.position(g) for g in W2]
        for a in range(len(W2)):
            for b in range(len(W2)):
                if a != b:
                    assert m_small.has(a, b) == m_big.has(pos[a], pos[b])


def test_coset_extension_whole_group_returns_inner():
    inner = uniform_order(W2, 9)
    ext = coset_extension(W2, lambda g: True, inner, 4)
    assert ext == inner


def test_coset_extension_trivial_subgroup_matches_uniform_law():
    # one element per coset: cross-coset labels alone decide, so each of the
    # 6 rankings of a 3-set should appear with frequency about 1/6
    D = window_from_elements(zn(2), [zn_element(0, 0), zn_element(1, 0), zn_element(0, 1)])
    e = identity(zn(2))
    inner = OrderMatrix.from_ranks(window_from_elements(zn(2), []), [0])
    counts = [0] * 6
    n = 3000
    from grouporders.stats import permutation_rank, ranking_of

    for s in range(n):
        ext = coset_extension(W2, lambda g: g == e, inner, s)
        counts[permutation_rank(ranking_of(ext, D))] += 1
    expected = n / 6
    chi2 = sum((c - expected) ** 2 / expected for c in counts)
    assert chi2 < 20.5  # 0.999 quantile for 5 dof


def test_coset_extension_z_in_z2():
    inner_w = window_from_elements(zn(2), [zn_element(k, 0) for k in range(-2, 3)])
    inner = lex_functional(2).window_order(inner_w)
    member = lambda g: g.payload[1] == 0
    for seed in range(100):
        ext = coset_extension(W2, member, inner, seed)
        assert is_total(ext)
        rows = {}
        for i, g in enumerate(W2):
            for j, h in enumerate(W2):
                if i == j:
                    continue
                if g.payload[1] == h.payload[1]:
                    assert ext.has(i, j) == (g.payload[0] < h.payload[0])
                else:
                    key = (g.payload[1], h.payload[1])
                    rows.setdefault(key, ext.has(i, j))
                    assert rows[key] == ext.has(i, j)  # constant per coset pair


def test_coset_extension_incomplete_inner():
    inner_w = window_from_elements(zn(2), [zn_element(0, 0)])
    inner = OrderMatrix.from_ranks(inner_w, [0])
    with pytest.raises(InnerOrderIncomplete):
        coset_extension(W2, lambda g: g.payload[1] == 0, inner, 1)


def test_glue_trivial_cases():
    m1 = uniform_order(W2, 1)
    m2 = uniform_order(W2, 2)
    D = window_from_elements(zn(2), [zn_element(0, 0)])
    glued_empty = specification_glue(m1, m2, [], D)
    assert glued_empty == m2
    all_k = list(W2)
    big_d = window_from_elements(zn(2), [zn_element(0, 0)])
    # K^-1 D = whole window when K is the window and D = {e} (inverses of a
    # symmetric ball): every pair comes from m1
    glued_all = specification_glue(m1, m2, all_k, big_d)
    assert glued_all == m1


def test_glue_is_transitive_and_shadows():
    rnd = random.Random(6)
    D = window_from_elements(zn(2), [zn_element(0, 0), zn_element(1, 0)])
    w = ball(default_generators(zn(2)), 3)
    for trial in range(25):
        m1 = uniform_order(w, rnd.getrandbits(64))
        m2 = uniform_order(w, rnd.getrandbits(64))
        K = [zn_element(rnd.randint(-1, 1), rnd.randint(-1, 1))]
        glued = specification_glue(m1, m2, K, D)
        assert is_total(glued)
        rebuilt = transitive_closure(OrderMatrix.from_pairs(w, list(glued.pairs())))
        assert rebuilt == glued
        ok, rows = shadowing_report(glued, m1, m2, K, D)
        assert ok and rows


def test_glue_domain_error():
    m1 = uniform_order(W2, 1)
    m2 = uniform_order(W2, 2)
    D = window_from_elements(zn(2), [zn_element(0, 0), zn_element(2, 0)])
    with pytest.raises(DomainNotCovered):
        specification_glue(m1, m2, [zn_element(0, 2)], D)


def test_realize_rotation_example_against_decimal_oracle():
    w = ball(default_generators(zn(1)), 2)
    m = realize(rotation_action(ALPHA), Fraction(0), w)
    ranks = m.ranks()
    by_rank = [w.element(i).payload[0] for i in sorted(range(5), key=ranks.__getitem__)]
    assert by_rank == [0, -2, 1, -1, 2]
    vals = {
        k: oracles.rotation_fraction_decimal(Fraction(0), k, -1, 1)
        for k in (-2, -1, 0, 1, 2)
    }
    assert by_rank == sorted(vals, key=vals.__getitem__)


def test_realize_singleton_and_bernoulli():
    w = window_from_elements(zn(1), [])
    m = realize(rotation_action(ALPHA), Fraction(1, 3), w)
    assert m.n == 1
    w7 = interval_window(-3, 4)
    mb = realize(bernoulli_action(1), 421, w7)
    assert is_total(mb)
    assert realize(bernoulli_action(1), 421, w7) == mb  # same point, same order


def test_realize_matches_translated_point():
    # order at x of the shifted window equals order at shifted x: sanity of
    # exact value computation across integer parts
    act = rotation_action(ALPHA)
    w = interval_window(-5, 6)
    x = Fraction(3, 7)
    m = realize(act, x, w)
    assert is_total(m)
    vals = [
        oracles.rotation_fraction_decimal(x, g.payload[0], -1, 1) for g in w
    ]
    order = sorted(range(len(w)), key=lambda i: vals[i])
    ranks = m.ranks()
    assert order == sorted(range(len(w)), key=ranks.__getitem__)


def test_ranks_from_keys_detects_exact_ties():
    w = interval_window(0, 3)
    keys = [5, 5, 7]
    vals = [Sqrt2Num.of(1), Sqrt2Num.of(1), Sqrt2Num.of(2)]
    with pytest.raises(StabilizerCollision):
        _ranks_from_keys(w, keys, lambda i: vals[i])
    with pytest.raises(StabilizerCollision):
        _ranks_from_keys(w, keys, None)


def test_realize_torus_lexicographic():
    act = torus_action([ALPHA, Sqrt2Num.of(0, 2)])
    m = realize(act, (Fraction(1, 5), Fraction(2, 5)), W2)
    assert is_total(m)


def test_reconstruct_examples():
    w = interval_window(0, 4)
    m = realize(rotation_action(ALPHA), Fraction(3, 10), w)
    assert reconstruct(m, cesaro(1)) == 0
    est = reconstruct(m, cesaro(4))
    assert 0 <= est <= 1
    with pytest.raises(DomainNotCovered):
        reconstruct(m, cesaro(10))


def test_reconstruct_depends_only_on_order():
    w = interval_window(0, 16)
    m = realize(rotation_action(ALPHA), Fraction(1, 3), w)
    relabeled = OrderMatrix.from_ranks(w, m.ranks())
    for n in (1, 4, 16):
        assert reconstruct(m, cesaro(n)) == reconstruct(relabeled, cesaro(n))


def test_reconstruct_box_scheme():
    m = realize(torus_action([ALPHA, Sqrt2Num.of(0, 3)]), (Fraction(1, 3), Fraction(1, 7)), W2)
    est = reconstruct(m, box(1))
    assert est == 0  # support {origin} only


def test_rotation_error_bound():
    act = rotation_action(ALPHA)
    n = 1000
    w = interval_window(0, n)
    bound = 10 * math.log(n) / n
    for i in range(20):
        x = unit_fraction(1000 + i, "x")
        m = realize(act, x, w)
        est = reconstruct(m, cesaro(n))
        assert abs(est - x) < bound


def test_stabilizer_checks():
    lex = lex_functional(2).window_order(W2)
    gens = default_generators(zn(2))
    assert stabilizer_check(lex, W2, gens) == gens.generators
    exceptions = 0
    w = ball(default_generators(zn(2)), 3)
    for seed in range(200):
        m = uniform_order(w, seed)
        if stabilizer_check(m, w, gens):
            exceptions += 1
    assert exceptions == 0


def test_uniform_translation_invariance_cylinder_frequencies():
    # each ranking of a 3-set under the translated samples stays within
    # 4 sigma of 1/6 over N = 10000 draws
    from grouporders.orders import translate_order
    from grouporders.stats import permutation_rank, ranking_of

    D = window_from_elements(zn(2), [zn_element(0, 0), zn_element(1, 0), zn_element(0, 1)])
    g = zn_element(1, 0)
    n = 10_000
    counts = [0] * 6
    for s in range(n):
        m = uniform_order(W2, s)
        counts[permutation_rank(ranking_of(translate_order(m, g), D))] += 1
    p = 1 / 6
    se = math.sqrt(p * (1 - p) / n)
    for c in counts:
        assert abs(c / n - p) < 4 * se
