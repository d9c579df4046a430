"""The ten acceptance criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` to see the summary lines.
"""
import random
import time
from collections import Counter
from fractions import Fraction as F
from itertools import combinations, permutations, product
from pathlib import Path

import pytest

from weightalign.align import ALIGNED, NEITHER, PSEUDO, check_aligned, fernando_futorny, shadow
from weightalign.cli import borel_sample, dump, run_demo
from weightalign.errors import DConstraintViolated
from weightalign.families import (
    ConaturalVstar,
    IntSequence,
    NaturalV,
    SInfty,
    SpinB,
    SpinD,
    SymPartition,
    Trivial,
    Wedge,
    Xsl,
    Xsp,
    effective,
    support_contains,
)
from weightalign.oracle import (
    auto_window,
    find_u_singular,
    levi_module_of_kernel,
    ray_class_to_shadow,
    realize,
    support_ray,
    verify_bracket,
    weyl_dimension,
)
from weightalign.orders import (
    BLOCK,
    OrderDescriptor,
    POSITIVE,
    Piece,
    enumerate_admissible,
    enumerate_signed,
    is_z2_linear,
    positive_blocks,
    s_compatible,
    signed_order,
)
from weightalign.roots import order_from_parabolic, parabolic_from_order, roots_of
from weightalign.sets import SetDescriptor as S
from weightalign.verify import CATALOG_A, CATALOG_S, _box, _orders_for, ranks_for, run_grid
from weightalign.weights import WeightDescriptor as W, integrality_profile, omega_order

h, t = F(1, 2), F(1, 3)
ODDS = S.periodic((True, False))
EVENS = S.periodic((False, True))
FIXTURES = Path(__file__).parent / "fixtures" / "demos"


def report(capsys, num, ok, detail):
    with capsys.disabled():
        print(f"\n[criterion {num:>2}] {'PASS' if ok else 'FAIL'}  {detail}")


# ---------------------------------------------------------------- 1


def test_c01_order_parabolic_bijection(capsys):
    start = time.perf_counter()
    failures, count = 0, 0
    cases = [(o, "A") for o in enumerate_admissible(4)]
    for typ in "BCD":
        cases += [(o, typ) for o in enumerate_signed(3, d_type=typ == "D")]
    for o, typ in cases:
        count += 1
        Pd = parabolic_from_order(o, typ)
        plus, zero = set(Pd.plus), set(Pd.zero)
        minus = {-r for r in plus}
        delta = roots_of(typ, o.n, range(1, o.n + 1))
        disjoint = not (plus & zero or plus & minus or zero & minus)
        if not (disjoint and plus | zero | minus == delta and order_from_parabolic(Pd) == o):
            failures += 1
    secs = time.perf_counter() - start
    n_a = sum(1 for _, typ in cases if typ == "A")
    ok = failures == 0 and n_a == 75 and secs < 5
    report(capsys, 1, ok, f"order<->parabolic: {count} orders ({n_a} type A), {failures} failures, {secs:.2f}s")
    assert ok


# ---------------------------------------------------------------- 2


def test_c02_bracket_consistency(capsys):
    start = time.perf_counter()
    sl = verify_bracket("sl", 3)
    sp = verify_bracket("sp", 2, probes=500)
    secs = time.perf_counter() - start
    ok = bool(sl) and bool(sp) and secs < 5
    report(capsys, 2, ok, f"bracket checks sl(3) and sp(2) + 500 probes, {secs:.2f}s")
    assert ok


# ---------------------------------------------------------------- 3 and 5


def _catalog_coverage():
    tags = {type(M).__name__ for _, M in CATALOG_A + CATALOG_S}
    xsl_mus = [effective(M).mu for _, M in CATALOG_A + CATALOG_S if isinstance(effective(M), (Xsl, Xsp))]
    sizes = {min(integrality_profile(mu).I.size(), 2) for mu in xsl_mus}
    tails = {mu.tail[0] if len(set(mu.tail)) == 1 else "periodic" for mu in xsl_mus}
    return tags, sizes, tails


def test_c03_criterion_oracle_grid(capsys):
    tags, sizes, tails = _catalog_coverage()
    s = run_grid(4)
    instances = len(CATALOG_A) + len(CATALOG_S)
    covered = len(tags) == 10 and sizes == {0, 1, 2} and {F(-1), F(0)} <= tails and len(tails) >= 3
    ok = not s.counterexamples and s.agreements == s.cells and instances >= 25 and covered and s.seconds < 120
    report(capsys, 3, ok, f"grid: {s.cells} cells, {s.agreements} agreements, "
                          f"{len(s.counterexamples)} counterexamples, {instances} modules / {len(tags)} families, "
                          f"{s.seconds:.1f}s")
    assert ok, s.counterexamples[:3]


def test_c05_inducing_support_law(capsys):
    checked, bad = 0, []
    for name, M in CATALOG_A + CATALOG_S:
        for n in ranks_for(M, 4):
            win = auto_window(M, n)
            R = realize(M, n, window=win)
            for o in _orders_for(M, n):
                rep = check_aligned(M, o, with_trace=False)
                if rep.verdict != ALIGNED:
                    continue
                checked += 1
                closure = levi_module_of_kernel(R, o)
                claimed = rep.inducing.weights(n, _box(M, n, win))
                if Counter(closure) != Counter(claimed):
                    bad.append((name, n, o))
    ok = not bad and checked > 0
    report(capsys, 5, ok, f"Levi closure vs inducing support: {checked} aligned cells, {len(bad)} mismatches")
    assert ok, bad[:3]


# ---------------------------------------------------------------- 4


def left_end_weight(mu, line, n):
    """mu placed on the first len(mu) elements of a linear order, zeros elsewhere."""
    w = [F(0)] * n
    for part, i in zip(mu, line):
        w[i - 1] = F(part)
    return tuple(w)


def refines(line, o):
    return all(o.level(a) <= o.level(b) for a, b in zip(line, line[1:]))


def test_c04_sym_refinement_law(capsys):
    mu, n = (2, 1), 3
    R = realize(SymPartition(mu), n)
    dim_ok = R.dimension() == weyl_dimension(mu, n) == 8
    orders = list(enumerate_admissible(n))
    antichain = [o for o in orders if len(o.blocks) == 1]
    iff_bad = exact_bad = 0
    for o in orders:
        sing = {w for w, _ in find_u_singular(R, o)}
        predicted = {left_end_weight(mu, p, n) for p in permutations(range(1, n + 1)) if refines(p, o)}
        # biconditional over every linear order on Z_3
        for p in permutations(range(1, n + 1)):
            iff_bad += (left_end_weight(mu, p, n) in sing) != refines(p, o)
        if o in antichain:
            exact_bad += sing != set(R.weight_spaces())
        else:
            exact_bad += sing != predicted
    ok = dim_ok and len(orders) == 13 and iff_bad == 0 and exact_bad == 0
    report(capsys, 4, ok, f"S^(2,1) on sl(3): dim {R.dimension()}, {len(orders)} orders, "
                          f"{iff_bad} refinement mismatches, {exact_bad} set mismatches "
                          f"(antichain: whole module)")
    assert ok


# ---------------------------------------------------------------- 6


def _oracle_nonzero(M, o):
    R = realize(M, o.n)
    return bool(find_u_singular(R, o))


def test_c06_spinor_structure(capsys):
    dims_ok = True
    for n in range(1, 5):
        dims_ok &= realize(SpinB(), n).dimension() == 2 ** n
        if n >= 2:
            even, odd = realize(SpinD(), n), realize(SpinD(S.finite([1])), n)
            dims_ok &= even.dimension() == odd.dimension() == 2 ** (n - 1)
            both = set(even.weight_spaces()) | set(odd.weight_spaces())
            dims_ok &= both == set(product((-h, h), repeat=n))
    cells = verdict_bad = law_bad = 0
    for As in (S.all_out(), S.finite([1]), S.finite([1, 2]), ODDS):
        for d_type, M in ((False, SpinB(As)), (True, SpinD(As))):
            for n in range(2 if d_type else 1, 4):
                An = set(As.upto(n))
                for o in enumerate_signed(n, d_type=d_type):
                    cells += 1
                    oracle = _oracle_nonzero(M, o)
                    verdict_bad += (check_aligned(M, o, with_trace=False).verdict == ALIGNED) != oracle
                    # the compatibility law on its own: some A' with the right parity
                    law = any(s_compatible(o, set(Ap), d_type=d_type)
                              for r in range(n + 1) for Ap in combinations(range(1, n + 1), r)
                              if not d_type or len(set(Ap) ^ An) % 2 == 0)
                    law_bad += law != oracle
    ok = dims_ok and verdict_bad == 0 and law_bad == 0
    report(capsys, 6, ok, f"spinors: dimensions {'ok' if dims_ok else 'wrong'}, {cells} signed cells, "
                          f"{verdict_bad} verdict and {law_bad} compatibility mismatches")
    assert ok


# ---------------------------------------------------------------- 7


def test_c07_demo_fixtures(capsys):
    start = time.perf_counter()
    payloads = {p.stem: run_demo(p.stem) for p in sorted(FIXTURES.glob("*.json"))}
    identical = [name for name, obj in payloads.items()
                 if dump(obj) == (FIXTURES / f"{name}.json").read_text(encoding="utf-8")]
    hw = payloads["xsl-hw-J"]
    dyn = hw["dynkin_equivalent"]
    facts = [
        payloads["wedge-odds"]["report"]["inducing_text"] == "trivial",
        payloads["smu-4blocks"]["report"]["inducing_text"].count("⊠") == 2,
        W.from_json(hw["hw_weight"]) == W((), (-1, 0)),
        (dyn["i_prime"], dyn["c"]) == (1, "-1"),
        dyn["order_text"] == "↓{3,5,7,9,...} ≺ ↑{1} ≺ ↑{2,4,6,8,...}",
        payloads["xsl-pseudo-c"]["report"]["verdict"] == PSEUDO,
        payloads["sinfty-two-blocks"]["report"]["inducing_text"] == "Xsl(1,1,…)⊠C",
        payloads["sinfty-two-blocks"]["borel_sample"] == {"orders": 20, "highest_weight": 0},
        len(borel_sample()) == 20,
    ]
    secs = time.perf_counter() - start
    ok = len(payloads) == 6 and len(identical) == 6 and all(facts) and secs < 10
    report(capsys, 7, ok, f"demos: {len(identical)}/{len(payloads)} byte-identical, "
                          f"{sum(facts)}/{len(facts)} example facts, {secs:.2f}s")
    assert ok


# ---------------------------------------------------------------- 8


def random_positive_order(rng):
    k = rng.randint(1, 3)
    head = [rng.randrange(k) for _ in range(rng.randint(0, 4))]
    tail = [rng.randrange(k) for _ in range(rng.randint(1, 2))]
    pieces = []
    for j in range(k):
        s = S(tuple(x == j for x in head), tuple(x == j for x in tail))
        if not s.is_empty():
            pieces.append(Piece(s, S.all_out(), BLOCK))
    return OrderDescriptor(POSITIVE, tuple(pieces))


def random_signed_order(rng):
    """Labels: ('c',) for the central class, or (piece, sign) below 0."""
    k = rng.randint(1, 3)
    labels = [("c",)] + [(j, s) for j in range(k) for s in (1, -1)]
    head = [rng.choice(labels) for _ in range(rng.randint(0, 3))]
    tail = [rng.choice(labels[1:]) for _ in range(rng.randint(1, 2))]

    def where(lab):
        return S(tuple(x == lab for x in head), tuple(x == lab for x in tail))

    lower = [(where((j, 1)), where((j, -1)), BLOCK) for j in range(k)]
    lower = [p for p in lower if not (p[0].is_empty() and p[1].is_empty())]
    return signed_order(lower, where(("c",)))


def integrable_sample(rng):
    wedges = [ODDS, EVENS, S.cofinite([1, 2]).intersection(ODDS).union(S.finite([2]))]
    positive = [NaturalV("A"), ConaturalVstar(), Wedge(rng.choice(wedges)),
                SInfty(IntSequence((1, 1), (1, 0)), dual=rng.random() < 0.5),
                SymPartition(rng.choice([(2, 1), (1,), (2,)]), dual=rng.random() < 0.5)]
    signed = [NaturalV("B"), NaturalV("C"), NaturalV("D"), SpinB(rng.choice([S.all_out(), ODDS, S.finite([1])])),
              SpinD(rng.choice([S.all_out(), ODDS, S.finite([1])]))]
    if rng.random() < 0.5:
        return rng.choice(positive), random_positive_order(rng)
    M = rng.choice(signed)
    return M, random_signed_order(rng)


def confirm_levels(M, o, top=4):
    """Oracle kernels of the rank-n truncations are nonzero for n <= top."""
    lo = 2 if (M.algebra or "A") in ("A", "D") else 1
    if isinstance(M, SymPartition):
        lo = max(lo, len(M.mu))
    for n in range(lo, top + 1):
        try:
            t = o.truncate(n)
        except DConstraintViolated:
            continue
        R = realize(M, n, window=auto_window(M, n))
        if not find_u_singular(R, t):
            return False
    return True


def test_c08_pseudo_trichotomy(capsys):
    rng = random.Random(8)
    counts, bad, pseudo_bad = Counter(), 0, 0
    sampled = 0
    while sampled < 200:
        M, o = integrable_sample(rng)
        try:
            rep = check_aligned(M, o, horizon=10)
        except DConstraintViolated:
            continue
        sampled += 1
        counts[rep.verdict] += 1
        bad += rep.verdict not in (ALIGNED, PSEUDO)
        if rep.verdict == PSEUDO:
            pseudo_bad += not (rep.trace and all(rep.trace) and confirm_levels(M, o))
    # Xsl pseudo cases are checked the same way
    for mu in (W((-1, 0, h, 0), (1,)), W((0,), (-2,))):
        o = fernando_futorny(Xsl(mu))
        rep = check_aligned(Xsl(mu), o, horizon=10)
        counts["xsl-" + rep.verdict] += 1
        pseudo_bad += not (rep.verdict == PSEUDO and all(rep.trace) and confirm_levels(Xsl(mu), o))
    two = check_aligned(Xsl(W((h, t))), positive_blocks(S.finite([1]), S.cofinite([1])))
    neither_ok = two.verdict == NEITHER and two.obstruction == "I-comparable"
    ok = bad == 0 and pseudo_bad == 0 and neither_ok and counts[PSEUDO] > 0
    report(capsys, 8, ok, f"trichotomy: {sampled} integrable pairs {dict(counts)}, {bad} Neither, "
                          f"{pseudo_bad} unconfirmed pseudo, two non-integers -> {two.verdict}/{two.obstruction}")
    assert ok


# ---------------------------------------------------------------- 9


def sample_support_points(M, typ, mu, rng, count=10, n=6):
    base = mu if typ == "sl" else mu + W.constant(h)
    points = [W.finite(base.upto(n))]
    tries = 0
    while len(points) < count and tries < 500:
        tries += 1
        i, j = rng.sample(range(n), 2)
        v = [0] * n
        if typ == "sl":
            v[i], v[j] = 1, -1
        else:
            v[i], v[j] = rng.choice((1, -1)), rng.choice((1, -1))
        cand = rng.choice(points) + W.finite(v)
        if support_contains(M, cand, n) and cand not in points:
            points.append(cand)
    return points


def test_c09_shadow_laws(capsys):
    rng = random.Random(9)
    values = [F(-2), F(-1), F(0), F(1), F(2), h, t, F(-5, 2)]
    n = 6
    mus = rows = part_bad = ray_bad = few = 0
    for typ in ("sl", "sp"):
        A = "A" if typ == "sl" else "C"
        delta = roots_of(A, n, range(1, n + 1))
        for _ in range(20):
            mu = W(tuple(rng.choice(values) for _ in range(rng.randint(2, 6))), (rng.choice([F(-1), F(0), h]),))
            M = Xsl(mu) if typ == "sl" else Xsp(mu)
            if isinstance(effective(M), Trivial):
                continue
            mus += 1
            sh = shadow(M)
            parts = sh.upto(A, n)
            part_bad += not (set().union(*parts.values()) == delta
                             and sum(map(len, parts.values())) == len(delta)
                             and {-r for r in parts["+"]} == parts["-"])
            points = sample_support_points(M, typ, mu, rng)
            few += len(points) < 10
            for r in delta:
                rows += 1
                seen = {ray_class_to_shadow(support_ray(M, lam, r, n=n)) for lam in points}
                ray_bad += seen != {sh.part(r)}
    ok = part_bad == 0 and ray_bad == 0 and few == 0 and mus >= 36
    report(capsys, 9, ok, f"shadows: {mus} mu at rank {n}, {rows} root rows x 10 base points, "
                          f"{part_bad} partition and {ray_bad} ray mismatches")
    assert ok


# ---------------------------------------------------------------- 10


def neg_shift_sum(mu):
    """s+ over F+ plus s- over F- for an integral mu (each negative entry counts mu_i + 1)."""
    return sum(x + 1 if x < 0 else x for x in mu)


def top_below_zero(o):
    below = [x for x in o.ground.elements() if x != 0 and o.less(x, 0)]
    return max(below, key=o.level)


def predicted_hw_weights(M, o, n=3):
    """omega(o) and omega(o) -+ eps_{i'} for the top element i' below 0, shifted by 1/2, in Supp M."""
    om = list(omega_order(o).upto(n))
    cands = [om]
    m = top_below_zero(o)
    c = list(om)
    c[abs(m) - 1] += -1 if m > 0 else 1
    cands.append(c)
    out = set()
    for c in cands:
        w = tuple(F(x) + h for x in c)
        if support_contains(M, W.finite(w), n):
            out.add(w)
    return out


@pytest.fixture(scope="module")
def xsp_sum_rule():
    start = time.perf_counter()
    orders = [o for o in enumerate_signed(3) if is_z2_linear(o)]
    literal_bad = corrected_bad = 0
    for mu in product(range(-3, 3), repeat=3):
        M = Xsp(W(mu))
        R = realize(M, 3, window=auto_window(M, 3))
        any_hw = False
        for o in orders:
            sing = {w for w, _ in find_u_singular(R, o)}
            any_hw |= bool(sing)
            corrected_bad += sing != predicted_hw_weights(M, o)
        literal_bad += any_hw != (neg_shift_sum(mu) in (-1, 0, 1))
    return {"orders": len(orders), "literal": literal_bad, "corrected": corrected_bad,
            "seconds": time.perf_counter() - start}


@pytest.mark.xfail(strict=True, reason="sum rule fails at finite rank: every integral mu has a highest weight")
def test_c10_xsp_sum_rule_literal(capsys, xsp_sum_rule):
    r = xsp_sum_rule
    ok = r["literal"] == 0
    report(capsys, 10, ok, f"Xsp sum rule as stated: {r['literal']}/216 mismatches over {r['orders']} orders")
    assert ok


def test_c10_xsp_hw_weights_per_order(capsys, xsp_sum_rule):
    r = xsp_sum_rule
    ok = r["corrected"] == 0 and r["orders"] == 48 and r["seconds"] < 60
    report(capsys, "10b", ok, f"Xsp hw weights = omega(o), omega(o)-+eps_i' (+1/2) in Supp: "
                              f"{r['corrected']} mismatches over 216 mu x {r['orders']} orders, {r['seconds']:.1f}s")
    assert ok
