from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from weightalign.errors import (
    BoundExceeded,
    DTypeCentralSingleton,
    GroundMismatch,
    LengthMismatch,
    NegationAsymmetric,
    NotAPartition,
    NotIrreflexive,
    NotLinear,
    NotTransitive,
)
from weightalign.orders import (
    ASC,
    DESC,
    GroundSet,
    OrderDescriptor,
    compatible_with_set,
    count_signed,
    enumerate_admissible,
    enumerate_signed,
    is_admissible,
    is_dynkin,
    is_linear,
    is_refinement,
    is_z2_linear,
    locally_sl_compatible,
    make_finite_order,
    ordered_bell,
    positive_blocks,
    s_compatible,
    sl_compatible,
    sp_blocks_finite,
    sp_compatible,
    truncate,
)
from weightalign.sets import SetDescriptor as S
from weightalign.weights import WeightDescriptor as W
from fractions import Fraction as F

P, SG = GroundSet.positive, GroundSet.signed
ODDS = S.periodic((True, False))
EVENS = S.periodic((False, True))


def fo(n, *blocks, signed=False):
    return make_finite_order(SG(n) if signed else P(n), [set(b) for b in blocks])


# ---------------------------------------------------------------- construction


def test_two_block_order():
    o = fo(6, {1, 2, 3}, {4, 5, 6})
    assert o.less(1, 4) and o.same_class(1, 3) and not o.less(4, 1)
    assert o.blocks == (frozenset({1, 2, 3}), frozenset({4, 5, 6}))


def test_single_block_is_antichain():
    o = fo(4, {1, 2, 3, 4})
    assert not o.strict_pairs()


def test_overlap_rejected():
    with pytest.raises(NotAPartition):
        fo(3, {1, 2}, {2, 3})


def test_missing_and_empty_blocks_rejected():
    with pytest.raises(NotAPartition):
        fo(3, {1, 2})
    with pytest.raises(NotAPartition):
        fo(2, {1}, set(), {2})


def test_signed_symmetry_enforced():
    assert fo(2, {1, -2}, {0}, {2, -1}, signed=True).signed
    with pytest.raises(NegationAsymmetric):
        fo(2, {1}, {2}, {0}, {-1}, {-2}, signed=True)


def test_d_type_central_singleton():
    g = SG(2)
    with pytest.raises(DTypeCentralSingleton):
        make_finite_order(g, [{1}, {0, 2, -2}, {-1}], d_type=True)
    make_finite_order(g, [{0, 1, 2, -1, -2}], d_type=True)


def test_is_admissible_examples():
    ok, o = is_admissible(P(3), {(1, 2)})
    assert not ok and o is None
    ok, o = is_admissible(P(3), {(1, 2), (1, 3), (2, 3)})
    assert ok and o == fo(3, {1}, {2}, {3})
    ok, o = is_admissible(P(3), set())
    assert ok and o == fo(3, {1, 2, 3})


def test_is_admissible_rejects_bad_relations():
    with pytest.raises(NotTransitive):
        is_admissible(P(3), {(1, 2), (2, 3)})
    with pytest.raises(NotIrreflexive):
        is_admissible(P(3), {(1, 1)})


# ---------------------------------------------------------------- truncation


def test_truncate_odds_evens():
    d = positive_blocks(ODDS, EVENS)
    assert truncate(d, 4) == fo(4, {1, 3}, {2, 4})
    assert truncate(d, 1) == fo(1, {1})


def test_truncate_segments():
    d = positive_blocks(ODDS, EVENS, kinds=[ASC, DESC])
    assert truncate(d, 5) == fo(5, {1}, {3}, {5}, {4}, {2})
    assert is_linear(truncate(d, 5))


def test_truncation_coherence():
    d = positive_blocks(S.finite([2, 5]), ODDS.difference(S.finite([5])), EVENS.difference(S.finite([2])))
    for n in range(1, 10):
        big = truncate(d, n)
        for m in range(1, n + 1):
            assert big.restrict(range(1, m + 1)) == truncate(d, m)


# ---------------------------------------------------------------- order types


def test_dynkin_orders():
    # ...≺3≺1≺2≺4≺...
    assert is_dynkin(positive_blocks(ODDS, EVENS, kinds=[DESC, ASC]))
    assert not is_dynkin(positive_blocks(ODDS, EVENS, kinds=[ASC, DESC]))
    assert is_dynkin(positive_blocks(S.all_in(), kinds=[ASC]))
    assert is_dynkin(positive_blocks(S.all_in(), kinds=[DESC]))


def test_dynkin_needs_linear():
    with pytest.raises(NotLinear):
        is_dynkin(positive_blocks(ODDS, EVENS))


def test_z2_linear():
    assert is_z2_linear(fo(2, {1}, {-2}, {0}, {2}, {-1}, signed=True))
    assert not is_z2_linear(fo(2, {1}, {0, 2, -2}, {-1}, signed=True))


# ---------------------------------------------------------------- refinement


def test_refinement_examples():
    coarse = fo(3, {1, 2}, {3})
    assert is_refinement(fo(3, {1}, {2}, {3}), coarse)
    assert not is_refinement(fo(3, {3}, {1}, {2}), coarse)
    assert is_refinement(coarse, coarse)


def test_refinement_ground_mismatch():
    with pytest.raises(GroundMismatch):
        is_refinement(fo(2, {1}, {2}), fo(3, {1, 2, 3}))


def test_refinement_is_partial_order():
    orders = list(enumerate_admissible(3))
    for a in orders:
        assert is_refinement(a, a)
        for b in orders:
            if a != b and is_refinement(a, b):
                assert not is_refinement(b, a)
            for c in orders:
                if is_refinement(a, b) and is_refinement(b, c):
                    assert is_refinement(a, c)


# ---------------------------------------------------------------- set compatibility


def test_compatible_with_set():
    d = positive_blocks(ODDS, EVENS)
    assert compatible_with_set(d, ODDS)
    assert not compatible_with_set(d, EVENS)
    assert compatible_with_set(positive_blocks(S.all_in()), EVENS)


def test_compatibility_descriptor_matches_truncations():
    d = positive_blocks(S.finite([1, 4]), ODDS.difference(S.finite([1])), EVENS.difference(S.finite([4])))
    for A in (S.finite([1, 4]), S.finite([1]), S.finite([1, 3, 4]), ODDS.union(S.finite([4])), EVENS):
        want = compatible_with_set(d, A)
        got = all(compatible_with_set(truncate(d, n), A.upto(n)) for n in range(1, 13))
        assert want == got, A


def test_s_compatible_examples():
    assert s_compatible(fo(1, {1}, {0}, {-1}, signed=True), {1})
    assert not s_compatible(fo(1, {-1}, {0}, {1}, signed=True), {1})


def test_s_compatible_descriptor():
    from weightalign.orders import signed_order

    # odds ≺ -evens ≺ 0 ≺ evens ≺ -odds
    d = signed_order([(ODDS, EVENS, "block")])
    assert s_compatible(d, ODDS)
    assert not s_compatible(d, EVENS)
    for n in range(1, 8):
        assert s_compatible(truncate(d, n), ODDS.upto(n))


# ---------------------------------------------------------------- weight compatibility


def test_sl_compatible_examples():
    assert sl_compatible(fo(4, {1, 2}, {3, 4}), (-1, -1, 0, 0))
    assert not sl_compatible(fo(4, {2}, {1, 3, 4}), (-1, F(1, 2), 0, 0))
    # the order of mu itself: F- then F+
    assert sl_compatible(fo(3, {2}, {1, 3}), (0, -2, 5))


def test_sl_compatible_length_mismatch():
    with pytest.raises(LengthMismatch):
        sl_compatible(fo(3, {1, 2, 3}), (0, 0))


def test_sp_blocks_and_compatibility():
    mu = (-1, F(5, 2), 0)
    lo, mid, hi = sp_blocks_finite(mu)
    assert (lo, mid, hi) == ({1, -3}, {0, 2, -2}, {3, -1})
    assert sp_compatible(fo(3, {1, -3}, {0, 2, -2}, {3, -1}, signed=True), mu)
    assert not sp_compatible(fo(3, {1, 3}, {0, 2, -2}, {-1, -3}, signed=True), mu)
    assert sp_compatible(fo(2, {-2, -1, 0, 1, 2}, signed=True), (F(1, 2), F(1, 3)))


def test_locally_sl_compatible_descriptor():
    mu = W((-1, 0, F(1, 2), 0), (1,))
    own = positive_blocks(S.finite([1]), S.finite([3]), S.cofinite([1, 3]))
    assert locally_sl_compatible(own, mu)
    assert not locally_sl_compatible(positive_blocks(S.finite([3]), S.cofinite([3])), mu)


# ---------------------------------------------------------------- enumeration


def ordered_set_partitions(items):
    """Independent recursion: choose the first block, recurse on the rest."""
    items = list(items)
    if not items:
        yield ()
        return
    for r in range(1, len(items) + 1):
        for first in combinations(items, r):
            rest = [x for x in items if x not in first]
            for tail in ordered_set_partitions(rest):
                yield (frozenset(first),) + tail


@pytest.mark.parametrize("n,count", [(1, 1), (3, 13), (4, 75)])
def test_enumeration_counts(n, count):
    orders = list(enumerate_admissible(n))
    assert len(orders) == count == ordered_bell(n)
    want = {tuple(p) for p in ordered_set_partitions(range(1, n + 1))}
    assert {o.blocks for o in orders} == want


def test_enumeration_bound():
    with pytest.raises(BoundExceeded):
        list(enumerate_admissible(7))


def brute_signed_count(n, d_type=False):
    """Count signed orders by filtering all ordered partitions of the signed ground."""
    ground = [x for x in range(-n, n + 1)]
    total = 0
    for part in ordered_set_partitions(ground):
        try:
            make_finite_order(SG(n), part, d_type=d_type)
        except (NegationAsymmetric, DTypeCentralSingleton, NotAPartition):
            continue
        total += 1
    return total


@pytest.mark.parametrize("n", [1, 2])
def test_signed_enumeration_counts(n):
    assert len(list(enumerate_signed(n))) == count_signed(n) == brute_signed_count(n)


def test_signed_counts_rank3():
    assert count_signed(3) == len(set(enumerate_signed(3))) == 147


# ---------------------------------------------------------------- properties


@st.composite
def finite_orders(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    labels = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    ranks = sorted(set(labels))
    blocks = [{i + 1 for i, l in enumerate(labels) if l == r} for r in ranks]
    return make_finite_order(P(n), blocks)


@given(finite_orders())
def test_relation_roundtrip(o):
    ok, back = is_admissible(o.ground, o.strict_pairs())
    assert ok and back == o


@given(finite_orders())
def test_relation_is_strict_order(o):
    pairs = o.strict_pairs()
    assert all(a != b for a, b in pairs)
    for a, b in pairs:
        for c, d in pairs:
            if b == c:
                assert (a, d) in pairs


@settings(max_examples=50)
@given(st.integers(1, 3), st.data())
def test_z2_law(n, data):
    orders = list(enumerate_signed(n))
    o = data.draw(st.sampled_from(orders))
    els = list(o.ground.elements())
    for i in els:
        for j in els:
            assert o.less(i, j) == o.less(-j, -i)


def test_json_roundtrip_descriptor():
    for d in (positive_blocks(ODDS, EVENS), positive_blocks(ODDS, EVENS, kinds=[ASC, DESC]),
              positive_blocks(S.finite([1]), S.cofinite([1]))):
        assert OrderDescriptor.from_json(d.to_json()) == d
