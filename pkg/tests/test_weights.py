from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from weightalign.errors import DomainViolation, IncompatibleArguments
from weightalign.orders import ASC, DESC, positive_blocks
from weightalign.roots import roots_of
from weightalign.sets import SetDescriptor as S
from weightalign.weights import (
    DIVERGENT,
    WeightDescriptor as W,
    eps_point,
    eps_set,
    integrality_profile,
    lattice_member,
    mu_of_order,
    named_weight,
    omega_A,
    omega_order,
    s_minus,
    s_minus_n,
    s_plus,
    s_plus_n,
    sim_sl,
    sim_sp,
    tail_equal,
)

h = F(1, 2)
ODDS = S.periodic((True, False))
EVENS = S.periodic((False, True))


def test_lattice_examples():
    assert lattice_member("A", W((1, -1)))
    assert not lattice_member("C", W((1,)))
    assert not lattice_member("A", W((1,)))
    assert lattice_member("B", W((1,)))
    assert lattice_member("D", W((1, 1)))
    assert not lattice_member("B", W((h,)))
    assert not lattice_member("A", W.constant(1))


@pytest.mark.parametrize("typ", "ABCD")
def test_roots_are_in_lattice(typ):
    for r in roots_of(typ, 3):
        v = W.finite([r.vector().get(i, 0) for i in range(1, 5)])
        assert lattice_member(typ, v) and lattice_member(typ, -v)


def test_profiles():
    p = integrality_profile(W((-1, 0, h, 0), (1,)))
    assert p.F_minus == S.finite([1]) and p.I == S.finite([3]) and p.F_plus == S.cofinite([1, 3])
    p = integrality_profile(W((), (1, 0)))
    assert p.I.is_empty() and p.F_minus.is_empty() and p.F_plus.is_all()
    assert integrality_profile(W.constant(-1)).F_minus.is_all()


def test_sim():
    mu = W((1, 2))
    assert sim_sl(mu, mu)
    assert not sim_sl(W((0, -1)), W((-1, 0)))
    c = W((h, h))
    assert sim_sp(c + W((1, 1)), c)
    assert not sim_sp(c + W((1,)), c)


def test_tail_equal():
    assert tail_equal(W.constant(-1), W((5,), (-1,)))
    assert not tail_equal(W((), (1, 0)), W.constant(0))
    assert tail_equal(W.constant(0), W.constant(0))


def test_s_sums():
    assert s_minus(W((-1, -1)), S.finite([1, 2])) == 0
    assert s_plus(W((1, 0, 1)), S.finite([1, 2, 3])) == 2
    assert s_minus(W((-3,)), S.finite([1])) == -2
    assert s_plus(W.constant(1), S.all_in()) is DIVERGENT
    assert s_plus(W((2,), (0,)), S.all_in()) == 2


def test_s_sum_domain():
    with pytest.raises(DomainViolation):
        s_plus(W((-1,)), S.finite([1]))
    with pytest.raises(DomainViolation):
        s_minus(W((0,)), S.finite([1]))


def test_partial_sums():
    mu = W((2, -3, 1), (-1,))
    assert s_plus_n(mu, S.finite([1, 3]), 3) == 3
    assert s_minus_n(mu, S.cofinite([1, 3]), 6) == -2


def test_named_weights():
    seg = positive_blocks(ODDS, EVENS, kinds=[ASC, DESC])
    assert eps_set(seg, ODDS) == W((), (-1, 0))
    assert eps_point(positive_blocks(S.all_in(), kinds=[ASC]), 1, h) == W((h,))
    assert omega_A(S.all_in()) == W.constant(h)
    assert named_weight("omega_A", S.all_in()) == W.constant(h)


def test_eps_point_counts_predecessors():
    seg = positive_blocks(ODDS, EVENS, kinds=[ASC, DESC])
    # 1≺3≺5≺...≺6≺4≺2: everything odd and every even above 4 precede 4
    w = eps_point(seg, 4, h)
    assert [w[i] for i in range(1, 9)] == [-1, 0, -1, h, -1, -1, -1, -1]


def test_eps_set_incompatible():
    seg = positive_blocks(ODDS, EVENS, kinds=[ASC, DESC])
    with pytest.raises(IncompatibleArguments):
        eps_set(seg, EVENS)


def test_omega_order():
    from weightalign.orders import GroundSet, make_finite_order

    o = make_finite_order(GroundSet.signed(2), [{1, -2}, {0}, {2, -1}])
    # -1 below 0, 0 above
    assert omega_order(o).upto(2) == (-1, 0)


def test_mu_of_order():
    assert mu_of_order((2, 1), (3, 1)) == W((1, 0, 2))


def test_json_roundtrip():
    for w in (W((h, 2), (3,)), W((), (-1, 0)), W.constant(0), W((F(-5, 3),), (h,))):
        assert W.from_json(w.to_json()) == w


# ---------------------------------------------------------------- properties

small = st.fractions(min_value=-3, max_value=3, max_denominator=2)
prefix = st.lists(small, min_size=0, max_size=5)
tails = st.sampled_from([F(0), F(-1), F(1), h])


@st.composite
def weights(draw):
    return W(tuple(draw(prefix)), (draw(tails),))


@st.composite
def lattice_steps(draw, even=False):
    v = draw(st.lists(st.integers(-2, 2), min_size=4, max_size=4))
    v[-1] -= sum(v)
    if even and sum(v) % 2:
        v[0] += 1
    return W(tuple(v))


@given(weights(), st.integers(1, 9))
def test_profile_partitions_and_truncates(mu, n):
    p = integrality_profile(mu)
    for k in range(1, n + 1):
        assert (k in p.F_minus) + (k in p.I) + (k in p.F_plus) == 1
    box = S.finite(range(1, n + 1))
    pn = mu.profile(n)
    assert (pn.F_minus, pn.I, pn.F_plus) == (p.F_minus & box, p.I & box, p.F_plus & box)


@given(weights(), lattice_steps(), lattice_steps())
def test_sim_sl_equivalence(mu, a, b):
    lam, nu = mu + a, mu + a + b
    assert sim_sl(mu, mu)
    assert sim_sl(mu, lam) == sim_sl(lam, mu)
    if sim_sl(mu, lam) and sim_sl(lam, nu):
        assert sim_sl(mu, nu)
    if sim_sl(mu, lam):
        assert integrality_profile(mu).F_minus == integrality_profile(lam).F_minus
        assert (lam - mu).total() == 0


@given(weights(), lattice_steps(), lattice_steps())
def test_sim_sp_equivalence(mu, a, b):
    lam, nu = mu + a, mu + a + b
    assert sim_sp(mu, lam) == sim_sp(lam, mu)
    if sim_sp(mu, lam) and sim_sp(lam, nu):
        assert sim_sp(mu, nu)
    if sim_sp(mu, lam):
        assert (lam - mu).total() % 2 == 0


@given(lattice_steps(), lattice_steps())
def test_lattice_closed(a, b):
    assert lattice_member("A", a) and lattice_member("A", a + b) and lattice_member("A", -a)
