import pytest

from weightalign.errors import DConstraintViolated, NotParabolicSet, RankTooSmall, TypeGroundMismatch
from weightalign.orders import (
    GroundSet,
    enumerate_admissible,
    enumerate_signed,
    make_finite_order,
    positive_blocks,
)
from weightalign.roots import (
    ParabolicDatum,
    Root,
    add_roots,
    levi_decomposition,
    order_from_parabolic,
    parabolic_from_order,
    roots_of,
)
from weightalign.sets import SetDescriptor as S

P, SG = GroundSet.positive, GroundSet.signed
ODDS = S.periodic((True, False))


def fo(n, *blocks, signed=False):
    return make_finite_order(SG(n) if signed else P(n), [set(b) for b in blocks])


def names(roots):
    return sorted(map(repr, roots))


def test_sl2_roots():
    assert roots_of("A", 1) == {Root.e_minus(1, 2), Root.e_minus(2, 1)}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_root_counts(n):
    assert len(roots_of("A", n)) == n * (n + 1)
    assert len(roots_of("B", n)) == 2 * n * n
    assert len(roots_of("C", n)) == 2 * n * n
    if n >= 2:
        assert len(roots_of("D", n)) == 2 * n * (n - 1)


def test_rank_too_small():
    with pytest.raises(RankTooSmall):
        roots_of("D", 1)


def test_root_forms_by_type():
    assert not Root.e(1, 1).legal_in("C")
    assert not Root.two_e(1, 1).legal_in("B")
    assert all(r.legal_in("D") for r in roots_of("D", 3))


def test_type_a_parabolic():
    Pd = parabolic_from_order(fo(4, {1, 3}, {2, 4}), "A")
    assert names(Pd.plus) == names([Root.e_minus(1, 2), Root.e_minus(1, 4), Root.e_minus(3, 2), Root.e_minus(3, 4)])
    zero = {Root.e_minus(1, 3), Root.e_minus(3, 1), Root.e_minus(2, 4), Root.e_minus(4, 2)}
    assert Pd.zero == zero


def test_linear_order_is_borel():
    assert not parabolic_from_order(fo(3, {1}, {2}, {3}), "A").zero


def test_type_b_central_block():
    Pd = parabolic_from_order(fo(2, {1}, {0, 2, -2}, {-1}, signed=True), "B")
    assert Pd.plus == {Root.e(1, 1), Root.e_minus(1, 2), Root.e_plus(1, 2)}
    assert Pd.zero == {Root.e(1, 2), Root.e(-1, 2)}


def test_type_ground_mismatch():
    with pytest.raises(TypeGroundMismatch):
        parabolic_from_order(fo(2, {1}, {2}), "B")
    with pytest.raises(TypeGroundMismatch):
        parabolic_from_order(fo(1, {1}, {0}, {-1}, signed=True), "A")


def test_d_constraint():
    with pytest.raises(DConstraintViolated):
        parabolic_from_order(fo(2, {1}, {0, 2, -2}, {-1}, signed=True), "D")


def test_order_from_parabolic_small():
    one = ParabolicDatum("A", frozenset({Root.e_minus(1, 2)}), (), None, 2)
    assert order_from_parabolic(one) == fo(2, {1}, {2})
    everything = ParabolicDatum("A", frozenset(), (roots_of("A", 2),), None, 3)
    assert order_from_parabolic(everything) == fo(3, {1, 2, 3})


def test_order_from_parabolic_rejects():
    half = ParabolicDatum("A", frozenset({Root.e_minus(1, 2)}), (), None, 3)
    with pytest.raises(NotParabolicSet):
        order_from_parabolic(half)


def check_round_trip(o, typ):
    Pd = parabolic_from_order(o, typ)
    delta = roots_of(typ, o.n, range(1, o.n + 1))
    plus, zero = set(Pd.plus), set(Pd.zero)
    minus = {-r for r in plus}
    assert not (plus & zero) and not (plus & minus) and not (zero & minus)
    assert plus | zero | minus == delta
    assert all(-r in zero for r in zero)
    roots = plus | zero
    for a in roots:
        for b in roots:
            c = add_roots(a, b, typ)
            assert c is None or c in roots
    assert order_from_parabolic(Pd) == o


def test_round_trip_type_a():
    for o in enumerate_admissible(4):
        check_round_trip(o, "A")


@pytest.mark.parametrize("typ", ["B", "C", "D"])
def test_round_trip_signed(typ):
    for n in (1, 2, 3):
        if typ == "D" and n == 1:
            continue
        for o in enumerate_signed(n, d_type=typ == "D"):
            check_round_trip(o, typ)


def test_zero_blocks_match_classes():
    o = fo(5, {1, 4}, {2}, {3, 5})
    Pd = parabolic_from_order(o, "A")
    idx = [sorted({i for r in b for i in r.indices()}) for b in Pd.zero_blocks]
    assert idx == [[1, 4], [3, 5]]


def test_levi_examples():
    blocks = levi_decomposition(fo(6, {1, 2, 3}, {4, 5, 6}), "A")
    assert [(sorted(b.index_set), b.algebra) for b in blocks] == [([1, 2, 3], "sl"), ([4, 5, 6], "sl")]
    blocks = levi_decomposition(fo(2, {1, 2}, {0}, {-1, -2}, signed=True), "C")
    assert [(sorted(b.index_set), b.algebra) for b in blocks] == [([1, 2], "sl")]
    blocks = levi_decomposition(fo(2, {-2, -1, 0, 1, 2}, signed=True), "B")
    assert [(b.algebra, b.rank) for b in blocks] == [("so_B", 2)]


def test_levi_at_most_one_non_sl_block():
    for typ in "BCD":
        for o in enumerate_signed(3, d_type=typ == "D"):
            non_sl = [b for b in levi_decomposition(o, typ) if b.algebra != "sl"]
            assert len(non_sl) <= 1
            if non_sl:
                assert 0 in non_sl[0].index_set


def test_descriptor_parabolic_is_symbolic():
    d = positive_blocks(ODDS, ODDS.complement())
    Pd = parabolic_from_order(d, "A")
    assert Root.e_minus(1, 2) in Pd.plus and Root.e_minus(2, 1) not in Pd.plus
    assert Root.e_minus(1, 3) in Pd.zero
    # the truncation of the symbolic set is the finite parabolic set
    assert Pd.plus.upto(4) == parabolic_from_order(d.truncate(4), "A").plus
    blocks = levi_decomposition(d, "A")
    assert [b.rank for b in blocks] == [None, None]
