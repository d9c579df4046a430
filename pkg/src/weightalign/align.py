"""Closed-form alignment criteria.

For a module M and an order, decide whether M has a nonzero
u-singular weight space (aligned), is only a direct limit of aligned
truncations (pseudo), or neither, and describe the Levi module M^u.
Finite orders are paired with the rank-n truncation of M.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Optional

from .errors import (
    IncompatibleArguments,
    NotAligned,
    NotLinear,
    PartitionTooLong,
    TypeGroundMismatch,
    DConstraintViolated,
)
from .families import (
    ConaturalVstar,
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
    partition_text,
    wedge_degree,
)
from .orders import (
    ASC,
    BLOCK,
    DESC,
    POSITIVE,
    SIGNED,
    FiniteOrder,
    GroundSet,
    OrderDescriptor,
    Piece,
    SignedSet,
    exists_below,
    finite_line,
    is_linear,
    locally_sl_compatible,
    locally_sp_compatible,
    make_finite_order,
    max_lower_class,
)
from .roots import Root, _check_type, roots_of
from .sets import ALL, EMPTY, SetDescriptor
from .weights import (
    DIVERGENT,
    HALF,
    WeightDescriptor,
    eps_point,
    tail_equal_on,
)

ALIGNED, PSEUDO, NEITHER = "aligned", "pseudo", "neither"
DEFAULT_HORIZON = 12
INF = float("inf")


# ---------------------------------------------------------------- Levi factors


@dataclass(frozen=True)
class Factor:
    """One tensor factor of M^u, living on one Levi block.

    kind: trivial, natural, conatural, wedge, semiwedge, cowedge, sym,
    xsl, xsp, spin.  `block` holds the signed indices of the block (a
    frozenset at finite rank, a SignedSet otherwise); `anchor` ties the
    factor's weights to the witness.
    """
    kind: str
    block: object
    params: tuple = ()
    anchor: object = None

    def is_trivial(self):
        return self.kind == "trivial"

    def block_label(self):
        return "[" + str(_block_min(self.block)) + "]"

    def label(self):
        b = self.block_label()
        k, p = self.kind, self.params
        if k == "trivial":
            return "C"
        if k == "natural":
            return f"V_{b}"
        if k == "conatural":
            return f"V*_{b}"
        if k == "wedge":
            return f"Λ^{p[0]}V_{b}"
        if k == "cowedge":
            return f"Λ^{p[0]}V*_{b}"
        if k == "semiwedge":
            return f"Λ^∞/2_{p[0]!r}V_{b}"
        if k == "sym":
            return f"S^{partition_text(p[0])}V{'*' if p[1] else ''}_{b}"
        if k == "xsl":
            return f"Xsl{p[0].render()}"
        if k == "xsp":
            return f"Xsp{p[0].render()}_{b}"
        if k == "spin":
            return f"S^{p[0]}_{b}"
        raise ValueError(k)

    # finite-rank weights, as coordinate deltas from the witness
    def deltas(self, witness, box):
        k, p = self.kind, self.params
        if k == "trivial":
            return [{}]
        blk = sorted(self.block, key=lambda x: (abs(x), x))
        blk = [x for x in blk if x != 0]
        if k == "natural":
            out = [_eps_delta([(s, 1), (self.anchor, -1)]) for s in blk]
            if 0 in self.block and p and p[0] == "B":
                out.append(_eps_delta([(self.anchor, -1)]))
            return out
        if k == "conatural":
            return [_eps_delta([(self.anchor, 1), (s, -1)]) for s in blk]
        if k in ("wedge", "cowedge"):
            sign = 1 if k == "wedge" else -1
            S0 = self.anchor
            out = []
            for S in combinations(blk, len(S0)):
                out.append(_eps_delta([(s, sign) for s in S] + [(s, -sign) for s in S0]))
            return out
        if k == "sym":
            from .oracle import ssyt_contents

            parts, dual = p
            sign = -1 if dual else 1
            symbols = blk
            out = []
            shape = [x for x in parts if x]
            for content in ssyt_contents(shape, symbols):
                d = {}
                for s in symbols:
                    v = sign * content.get(s, 0) - self.anchor.get(s, 0)
                    if v:
                        d[s] = Fraction(v)
                out.append(_eps_delta(list(d.items())))
            return out
        if k == "spin":
            S0 = self.anchor
            blk = sorted({abs(x) for x in blk})
            out = []
            for r in range(len(blk) + 1):
                for S in combinations(blk, r):
                    if p[1] is not None and (len(S) - len(S0)) % 2:
                        continue
                    out.append(_eps_delta([(s, 1) for s in S] + [(s, -1) for s in S0]))
            return out
        if k in ("xsl", "xsp"):
            return self._lattice_deltas(witness, box)
        raise ValueError(f"no finite weights for {k}")

    def _lattice_deltas(self, witness, box):
        k = self.kind
        coords = sorted(self.anchor)  # signed index -> local value
        ranges = []
        for s in coords:
            v = self.anchor[s]
            a = abs(s)
            lo, hi = box(a)
            w = witness[a]
            # epsilon coordinate w + sign(s)*delta must lie in [lo, hi]
            if s > 0:
                dlo, dhi = lo - w, hi - w
            else:
                dlo, dhi = w - hi, w - lo
            cand = []
            for d in range(int(_ceil(dlo)), int(_floor(dhi)) + 1):
                if _same_class(v, v + d):
                    cand.append(d)
            ranges.append(cand)
        out = []
        for ds in product(*ranges):
            tot = sum(ds)
            if (k == "xsl" and tot != 0) or (k == "xsp" and tot % 2):
                continue
            out.append(_eps_delta([(s, Fraction(d)) for s, d in zip(coords, ds) if d]))
        return out


def _ceil(x):
    x = Fraction(x)
    return -((-x.numerator) // x.denominator)


def _floor(x):
    x = Fraction(x)
    return x.numerator // x.denominator


def _same_class(a, b):
    """Same integrality class (negative integer / non-integer / nonnegative integer)."""
    def cls(v):
        v = Fraction(v)
        if v.denominator != 1:
            return 0
        return -1 if v < 0 else 1

    return cls(a) == cls(b)


def _eps_delta(items):
    """Signed-index coefficients to eps coordinates (eps_{-k} = -eps_k)."""
    out = {}
    for s, c in items:
        if s == 0 or s is None:
            continue
        k = abs(s)
        out[k] = out.get(k, 0) + (c if s > 0 else -c)
    return {k: Fraction(v) for k, v in out.items() if v}


def _block_min(block):
    if isinstance(block, (frozenset, set)):
        els = [x for x in block if x != 0]
        if not els:
            return 0
        m = min(abs(x) for x in els)
        return m if m in block else -m
    if isinstance(block, SignedSet):
        a, b = block.pos.minimum(), block.neg.minimum()
        cands = [x for x in (a, b) if x is not None]
        if not cands:
            return 0
        m = min(cands)
        return m if m == a else -m
    if isinstance(block, SetDescriptor):
        return block.minimum()
    return block


@dataclass(frozen=True)
class InducingModule:
    """M^u as an external tensor product over the Levi blocks."""
    witness: WeightDescriptor
    factors: tuple
    rest_trivial: bool = True

    def nontrivial(self):
        return [f for f in self.factors if not f.is_trivial()]

    def render(self):
        parts = [f.label() for f in self.nontrivial()]
        if not parts:
            return "trivial"
        if self.rest_trivial:
            parts.append("C")
        return "⊠".join(parts)

    def to_json(self):
        return [{"block": f.block_label(), "factor": f.label()} for f in self.nontrivial()]

    def weights(self, n, box=None):
        """Weight multiset at rank n (factors with infinite support need a box)."""
        w = list(self.witness.upto(n))
        if box is None:
            box = lambda k: (Fraction(-10 ** 6), Fraction(10 ** 6))
        lists = [f.deltas(self.witness, box) for f in self.factors if not f.is_trivial()]
        out = Counter()
        for combo in product(*lists):
            v = list(w)
            for d in combo:
                for k, c in d.items():
                    v[k - 1] += c
            out[tuple(Fraction(x) for x in v)] += 1
        return out


@dataclass
class AlignmentReport:
    verdict: str
    witness: Optional[WeightDescriptor] = None
    inducing: Optional[InducingModule] = None
    criterion: str = ""
    trace: Optional[list] = None
    obstruction: Optional[str] = None
    exponent: Optional[WeightDescriptor] = None
    extra: dict = field(default_factory=dict)

    @property
    def aligned(self):
        return self.verdict == ALIGNED

    def to_json(self):
        out = {"verdict": self.verdict, "criterion": self.criterion,
               "witness": self.witness.to_json() if self.witness is not None else None,
               "inducing": self.inducing.to_json() if self.inducing else [],
               "inducing_text": self.inducing.render() if self.inducing else None,
               "trace": self.trace}
        if self.obstruction:
            out["obstruction"] = self.obstruction
        if self.exponent is not None:
            out["exponent"] = self.exponent.to_json()
        return out

    @classmethod
    def from_json(cls, obj):
        """Rebuild a report from to_json output (the Levi factors come back as labels)."""
        wit = obj.get("witness")
        exp = obj.get("exponent")
        ind = None
        if obj.get("inducing_text") is not None:
            ind = InducingRecord(tuple((d["block"], d["factor"]) for d in obj.get("inducing", [])),
                                 obj["inducing_text"])
        return cls(obj["verdict"],
                   witness=WeightDescriptor.from_json(wit) if wit is not None else None,
                   inducing=ind, criterion=obj.get("criterion", ""), trace=obj.get("trace"),
                   obstruction=obj.get("obstruction"),
                   exponent=WeightDescriptor.from_json(exp) if exp is not None else None)


@dataclass(frozen=True)
class InducingRecord:
    """A parsed inducing module: (block, factor) labels plus the rendered text."""
    entries: tuple
    text: str

    def render(self):
        return self.text

    def to_json(self):
        return [{"block": b, "factor": f} for b, f in self.entries]


# ---------------------------------------------------------------- order views


class _Line:
    """Uniform view of finite and descriptor orders as a list of pieces."""

    def __init__(self, o):
        self.order = o
        self.signed = o.signed
        if isinstance(o, FiniteOrder):
            self.pieces = finite_line(o)
            self.n = o.n
            self.U = SetDescriptor.finite(range(1, o.n + 1))
            self.central_idx = o.level(0) if o.signed else None
        else:
            self.pieces = o.line()
            self.n = None
            self.U = ALL
            self.central_idx = o.central_index()

    def line(self):
        return self.pieces

    @property
    def finite(self):
        return self.n is not None

    def lower(self):
        return self.pieces[: self.central_idx]

    def signed_sides(self):
        below = above = EMPTY
        for p in self.lower():
            below, above = below | p.pos, above | p.neg
        return below, above, self.pieces[self.central_idx].pos

    def union_pos(self, pieces):
        out = EMPTY
        for p in pieces:
            out = out | p.pos
        return out


def _first_of(p: Piece):
    """A minimal element of a piece (None if it has none)."""
    if p.kind == DESC and not p.is_finite():
        return None
    if p.kind == BLOCK:
        if not p.pos.is_empty():
            return p.pos.minimum()
        if not p.neg.is_empty():
            return -p.neg.minimum()
        return 0
    ks = sorted(p.upto(_horizon_of(p)), key=abs)
    return ks[0] if p.kind == ASC else ks[-1]


def _last_of(p: Piece):
    if p.kind == ASC and not p.is_finite():
        return None
    if p.kind == BLOCK:
        return _first_of(p)
    ks = sorted(p.upto(_horizon_of(p)), key=abs)
    return ks[-1] if p.kind == ASC else ks[0]


def _horizon_of(p):
    return max(len(p.pos.prefix) + len(p.pos.pattern), len(p.neg.prefix) + len(p.neg.pattern)) + 1


def _eps_weight(x, n=None):
    if x == 0:
        return WeightDescriptor.finite([])
    return WeightDescriptor.unit(abs(x), 1 if x > 0 else -1)


def _restrict(w: WeightDescriptor, L: _Line):
    return WeightDescriptor.finite(w.upto(L.n)) if L.finite else w


def _class_members(p: Piece, L: _Line):
    """Signed members of a (block) piece as a frozenset or SignedSet."""
    if L.finite:
        return frozenset(p.upto(L.n))
    return p.members()


def _type_of(M, o):
    typ = M.algebra
    if typ is None:
        typ = "B" if o.signed else "A"
    return typ


def _check_ground(M, o):
    typ = _type_of(M, o)
    _check_type(o, typ)
    return typ


# ---------------------------------------------------------------- front door


def check_aligned(M, o, horizon=DEFAULT_HORIZON, with_trace=True) -> AlignmentReport:
    """Aligned / pseudo / neither, with witness and inducing module."""
    typ = _check_ground(M, o)
    L = _Line(o)
    E = effective(M)
    if isinstance(E, SymPartition) and L.finite and len(E.mu) > L.n:
        raise PartitionTooLong(f"S^{E.mu} vanishes at rank {L.n}")
    rep = _dispatch(E, L, typ)
    if rep.verdict == ALIGNED or L.finite:
        return rep
    # not aligned at infinite rank: pseudo if all truncations are aligned
    if E.integrable and not isinstance(E, (Xsl, Xsp)):
        rep.verdict = PSEUDO
    elif isinstance(E, Xsl) and locally_sl_compatible(o, E.mu):
        rep.verdict = PSEUDO
    elif isinstance(E, Xsp) and locally_sp_compatible(o, E.mu):
        rep.verdict = PSEUDO
    else:
        rep.verdict = NEITHER
        return rep
    if with_trace:
        rep.trace = local_trace(M, o, horizon)
    return rep


def _dispatch(E, L, typ):
    if isinstance(E, Trivial):
        w = _restrict(WeightDescriptor.finite([]), L)
        return AlignmentReport(ALIGNED, w, InducingModule(w, (), True), "trivial-module")
    if isinstance(E, NaturalV):
        return _natural(L, typ)
    if isinstance(E, ConaturalVstar):
        return _conatural(L)
    if isinstance(E, Wedge):
        return _wedge(E, L)
    if isinstance(E, SymPartition):
        return _sym(E, L)
    if isinstance(E, (SpinB, SpinD)):
        return _spinor(E, L)
    if isinstance(E, Xsl):
        return _xsl(E.mu, L)
    if isinstance(E, Xsp):
        return _xsp(E.mu, L)
    raise TypeError(f"unknown module {E!r}")


def local_trace(M, o, horizon=DEFAULT_HORIZON):
    """Aligned flags of the truncations at ranks 1..horizon (valid ranks only)."""
    out = []
    E = effective(M)
    start = 2 if M.algebra == "D" else 1
    if isinstance(E, SymPartition):
        start = max(start, len(E.mu))
    for n in range(start, horizon + 1):
        t = o.truncate(n)
        try:
            rep = check_aligned(M, t)
        except DConstraintViolated:
            continue
        out.append(rep.verdict == ALIGNED)
    return out


def check_pseudo_aligned(M, o, horizon=DEFAULT_HORIZON):
    rep = check_aligned(M, o, horizon)
    return rep.verdict == PSEUDO, rep.trace


# ---------------------------------------------------------------- natural modules


def _natural(L: _Line, typ):
    p = L.pieces[0]
    x = _first_of(p)
    if x is None:
        return AlignmentReport(NEITHER, criterion="natural-minimal",
                               obstruction="the lowest class has no minimal element")
    if typ == "B" and p.kind == BLOCK and p.zero:
        x = 0
    w = _restrict(_eps_weight(x), L)
    block = _class_members(p, L) if p.kind == BLOCK else frozenset([x])
    # a singleton block still carries V_[x], one-dimensional
    f = Factor("natural", block, (typ,), x)
    return AlignmentReport(ALIGNED, w, InducingModule(w, (f,), len(L.pieces) > 1 or p.kind != BLOCK),
                           "natural-minimal")


def _conatural(L: _Line):
    p = L.pieces[-1]
    x = _last_of(p)
    if x is None:
        return AlignmentReport(NEITHER, criterion="conatural-maximal",
                               obstruction="the highest class has no maximal element")
    w = _restrict(-_eps_weight(x), L)
    block = _class_members(p, L) if p.kind == BLOCK else frozenset([x])
    f = Factor("conatural", block, (), x)
    return AlignmentReport(ALIGNED, w, InducingModule(w, (f,), len(L.pieces) > 1 or p.kind != BLOCK),
                           "conatural-maximal")


# ---------------------------------------------------------------- wedge


def _wedge(E: Wedge, L: _Line):
    if L.finite:
        return _wedge_finite(E, L)
    A = E.A
    pieces = L.pieces
    below = EMPTY
    for k, p in enumerate(pieces):
        above = L.union_pos(pieces[k + 1:])
        ok = (below - A).is_finite() and (A & above).is_finite()
        Ak = A & p.pos
        if ok and p.kind != BLOCK:
            ok = Ak.is_finite() or (p.pos - A).is_finite()
        if ok:
            if p.kind == BLOCK:
                Bk = Ak
            else:
                Bk = EMPTY if Ak.is_finite() else p.pos
            B = below | Bk
            w = WeightDescriptor.from_sets([(B, 1)], 0)
            f = _wedge_factor(p, Bk, L)
            return AlignmentReport(ALIGNED, w, InducingModule(w, (f,), True), "wedge-cut",
                                   extra={"B": B})
        below = below | p.pos
    return AlignmentReport(NEITHER, criterion="wedge-cut",
                           obstruction="no B with finite difference from A is compatible with the order")


def _wedge_factor(p: Piece, Bk: SetDescriptor, L):
    cls = p.pos
    block = _class_members(p, L)
    if p.kind != BLOCK or Bk.is_empty() or Bk == cls:
        return Factor("trivial", block)
    if Bk.is_finite():
        return Factor("wedge", block, (Bk.size(),), tuple(sorted(Bk.upto(len(Bk.prefix)))))
    if (cls - Bk).is_finite():
        return Factor("cowedge", block, ((cls - Bk).size(),), None)
    return Factor("semiwedge", block, (Bk,), None)


def _wedge_finite(E, L):
    n = L.n
    k = wedge_degree(E.A, n)
    B, cut, taken = [], None, []
    for p in L.pieces:
        els = sorted(p.upto(n))
        if len(B) + len(els) <= k:
            B.extend(els)
            if len(B) == k:
                cut = None
                break
            continue
        need = k - len(B)
        taken = els[:need]
        B.extend(taken)
        cut = p
        break
    w = WeightDescriptor.finite([1 if i in B else 0 for i in range(1, n + 1)])
    factors = ()
    if cut is not None and taken:
        block = frozenset(cut.upto(n))
        factors = (Factor("wedge", block, (len(taken),), tuple(taken)),)
    return AlignmentReport(ALIGNED, w, InducingModule(w, factors, True), "wedge-cut",
                           extra={"B": frozenset(B)})


# ---------------------------------------------------------------- S^mu V


def _sym(E: SymPartition, L: _Line):
    pieces = list(L.pieces)
    if E.dual:
        pieces = pieces[::-1]
    k = len(E.mu)
    got = 0
    classes = []  # (members in walk order, is_block)
    for p in pieces:
        if got >= k:
            break
        if p.kind == BLOCK:
            els = sorted(p.upto(L.n)) if L.finite else None
            size = p.size()
            classes.append((p, size))
            got = INF if size is None else got + size
            continue
        going_up = (p.kind == ASC) != E.dual
        if not going_up and not p.is_finite():
            return AlignmentReport(NEITHER, criterion="sym-left-end",
                                   obstruction="a descending chain blocks the left end")
        els = sorted(p.upto(L.n if L.finite else _big_enough(p, k)))
        if not going_up:
            els = els[::-1]
        for x in els:
            if got >= k:
                break
            classes.append((x, 1))
            got += 1
    if got < k:
        raise PartitionTooLong(f"S^{E.mu} vanishes at this rank")
    # distribute the parts over the left-end classes
    sign = -1 if E.dual else 1
    vals = {}
    factors = []
    idx = 0
    for c, size in classes:
        take = k - idx if size is None else min(size, k - idx)
        parts = E.mu[idx: idx + take]
        if isinstance(c, Piece):
            if L.finite:
                members = sorted(c.upto(L.n))
            else:
                members = c.pos.first(take)
            for part, i in zip(parts, members):
                vals[i] = sign * part
            padded = tuple(parts) + (0,) * ((size or take) - take) if size is not None else tuple(parts)
            block = _class_members(c, L)
            if size == 1:
                factors.append(Factor("trivial", block))
            else:
                anchor = {i: sign * part for part, i in zip(parts, members)}
                factors.append(Factor("sym", block, (padded, E.dual), anchor))
        else:
            vals[c] = sign * parts[0]
            factors.append(Factor("trivial", frozenset([c])))
        idx += take
    top = max(vals)
    w = WeightDescriptor.finite([vals.get(i, 0) for i in range(1, (L.n or top) + 1)])
    return AlignmentReport(ALIGNED, w, InducingModule(w, tuple(factors), True), "sym-left-end")


def _big_enough(p, k):
    h = _horizon_of(p)
    if p.is_finite():
        return h
    while len(p.upto(h)) < k:
        h *= 2
    return h


# ---------------------------------------------------------------- spinors


def _spinor(E, L: _Line):
    d_type = isinstance(E, SpinD)
    A = E.A & L.U
    below, above, central = L.signed_sides()
    if not L.finite and not ((below - A).is_finite() and (A & above).is_finite()):
        return AlignmentReport(NEITHER, criterion="spinor-S-compatible",
                               obstruction="no A' differing finitely from A is S-compatible")
    Ap = below | (A & central)
    diff = (Ap ^ A).size()
    criterion = "spinor-S-compatible"
    swap = None
    if d_type and diff % 2:
        if not central.is_empty():
            c = central.minimum()
            Ap = Ap ^ SetDescriptor.finite([c])
        else:
            top = max_lower_class(L.order)
            if top is None:
                return AlignmentReport(NEITHER, criterion=criterion,
                                       obstruction="odd difference and no top class below 0")
            if isinstance(top, SignedSet):
                top_set = top
                d = _block_min(top)
            else:
                top_set = frozenset(top)
                d = min(top_set, key=lambda x: (abs(x), x))
            swap = (d, top_set)
            Ap = Ap ^ SetDescriptor.finite([abs(d)])
            criterion = "spinor-D-swap"
    w = _restrict(_omega(Ap), L)
    factors = []
    if not central.is_empty():
        block = _class_members(L.pieces[L.central_idx], L)
        if L.finite or central.is_finite():
            cz = sorted(central.upto(len(central.prefix)) if not L.finite else central.upto(L.n))
            S0 = tuple(k for k in cz if k in Ap)
            chir = None
            name = "B"
            if d_type:
                chir = len(S0) % 2
                name = "D" + ("+" if chir == len(cz) % 2 else "-")
            factors.append(Factor("spin", block, (name, chir), S0))
        else:
            factors.append(Factor("spin", block, ("B" if not d_type else "D", None), None))
    if swap is not None:
        d, top_set = swap
        size = len(top_set) if isinstance(top_set, frozenset) else None
        if size != 1:
            factors.append(Factor("conatural", top_set, (), d))
    return AlignmentReport(ALIGNED, w, InducingModule(w, tuple(factors), True), criterion,
                           extra={"A_prime": Ap})


def _omega(Ap: SetDescriptor):
    return WeightDescriptor.from_sets([(Ap, Fraction(1, 2))], Fraction(-1, 2))


# ---------------------------------------------------------------- X_sl


def _sum(mu, Z, offset):
    return mu.sum_over(Z, offset)


def _profile(mu, L):
    prof = mu.profile(L.n) if L.finite else mu.profile()
    return prof.F_minus, prof.I, prof.F_plus


def _mu_on(mu, L):
    return WeightDescriptor.finite(mu.upto(L.n)) if L.finite else mu


def _xsl(mu, L: _Line):
    mu = _mu_on(mu, L)
    Fm, I, Fp = _profile(mu, L)
    sig = lambda s: SignedSet.positive(s)
    # every I-index must sit in one class
    if not I.is_empty() and exists_below(L, sig(I), sig(I)):
        return AlignmentReport(NEITHER, criterion="xsl-classes", obstruction="I-comparable")
    T_ok = lambda Z, c: tail_equal_on(mu, Z, c)
    # cut shape: F- entirely before F+, no deviant class
    if I.is_empty() and not exists_below(L, sig(Fp), sig(Fm)) and T_ok(Fm, -1) and T_ok(Fp, 0):
        a, b = _sum(mu, Fm, 1), _sum(mu, Fp, 0)
        if a is not DIVERGENT and b is not DIVERGENT and a + b == 0:
            eps = WeightDescriptor.from_sets([(Fm, -1)], 0)
            eps = _restrict(eps, L)
            return AlignmentReport(ALIGNED, eps, _xsl_inducing_cut(eps, L, Fm, Fp), "xsl-cut")
    for below, C, above, block in _xsl_candidates(L, Fm, I, Fp):
        if not I.issubset(C):
            continue
        if not (below.issubset(Fm) and above.issubset(Fp)):
            continue
        if not (T_ok(below, -1) and T_ok(above, 0)):
            continue
        a, b = _sum(mu, below, 1), _sum(mu, above, 0)
        if a is DIVERGENT or b is DIVERGENT:
            continue
        s_out = a + b
        Cm, Cp, Ci = C & Fm, C & Fp, C & I
        up = INF if not (Cp | Ci).is_empty() else _cap(-_sum_or_inf(mu, Cm, 1))
        down = INF if not (Cm | Ci).is_empty() else _cap(_sum_or_inf(mu, Cp, 0))
        if not (-down <= s_out <= up):
            continue
        eps = _xsl_witness(mu, below, C, above, Ci, Cm, Cp, s_out)
        eps = _restrict(eps, L)
        return AlignmentReport(ALIGNED, eps, _xsl_inducing(eps, C, block, L), "xsl-deviant-class")
    prof_bad = exists_below(L, sig(I | Fp), sig(Fm | I))
    return AlignmentReport(NEITHER, criterion="xsl-classes",
                           obstruction="integral-order" if prof_bad else "tail-or-sum")


def _sum_or_inf(mu, Z, offset):
    v = mu.sum_over(Z, offset)
    return INF if v is DIVERGENT else v


def _cap(v):
    return v


def _xsl_candidates(L: _Line, Fm, I, Fp):
    """(below, class, above, block) for every class that could be the deviant one."""
    pieces = L.pieces
    for k, p in enumerate(pieces):
        before = L.union_pos(pieces[:k])
        after = L.union_pos(pieces[k + 1:])
        if p.kind == BLOCK:
            yield before, p.pos, after, _class_members(p, L)
            continue
        S = p.pos
        xs = set()
        if not I.is_empty():
            m = (I & S).minimum()
            if m is not None:
                xs.add(m)
        for part, pick in ((Fm & S, "last"), (Fp & S, "first")):
            if part.is_empty():
                continue
            asc = p.kind == ASC
            if pick == "last":
                # last element of part in chain order
                x = part.maximum() if asc else part.minimum()
            else:
                x = part.minimum() if asc else part.maximum()
            if x is not None:
                xs.add(x)
        for x in sorted(xs):
            lower = S & SetDescriptor.finite(range(1, x))
            upper = S - SetDescriptor.finite(range(1, x + 1))
            if p.kind == DESC:
                lower, upper = upper, lower
            yield before | lower, SetDescriptor.finite([x]), after | upper, frozenset([x])


def _xsl_witness(mu, below, C, above, Ci, Cm, Cp, s_out):
    eps = WeightDescriptor.from_sets([(below, -1), (above, 0)], 0)
    vals = {}
    # mu on C; the total shift s_out is put on C
    rest = s_out
    if not Ci.is_empty():
        i = Ci.minimum()
        vals[i] = mu[i] + rest
        rest = 0
    elif rest > 0 and not Cp.is_empty():
        i = Cp.minimum()
        vals[i] = mu[i] + rest
        rest = 0
    elif rest < 0 and not Cm.is_empty():
        i = Cm.minimum()
        vals[i] = mu[i] + rest
        rest = 0
    else:
        pool = Cm if rest > 0 else Cp
        for i in pool.iter_elements():
            if rest == 0:
                break
            room = (-1 - mu[i]) if rest > 0 else -mu[i]
            step = min(rest, room) if rest > 0 else max(rest, room)
            if step:
                vals[i] = mu[i] + step
                rest -= step
    return _overlay(eps, mu, C, vals)


def _overlay(base, mu, C, vals):
    """base off C, mu on C, with explicit values `vals` on top."""
    n0 = max(len(base.prefix), len(mu.prefix), len(C.prefix), max(vals, default=0))
    from math import lcm

    per = lcm(len(base.tail), len(mu.tail), len(C.pattern))
    out = []
    for k in range(1, n0 + per + 1):
        if k in vals:
            out.append(vals[k])
        elif k in C:
            out.append(mu[k])
        else:
            out.append(base[k])
    return WeightDescriptor(tuple(out[:n0]), tuple(out[n0:]))


def _const_on(eps, C, values):
    n0 = max(len(eps.prefix), len(C.prefix))
    from math import lcm

    per = lcm(len(eps.tail), len(C.pattern))
    seen = {eps[k] for k in range(1, n0 + per + 1) if k in C}
    return len(seen) == 1 and seen <= set(values)


def _restricted_weight(eps, C, L):
    """eps on C as {index: value} (finite C)."""
    return {k: eps[k] for k in C.upto(L.n if L.finite else len(C.prefix))}


def _xsl_inducing(eps, C, block, L):
    size = C.size()
    if size == 1 or _const_on(eps, C, (0,)) or _const_on(eps, C, (-1,)):
        return InducingModule(eps, (Factor("trivial", block),), True)
    if size is None:
        nu = WeightDescriptor.from_sets([], 0)
        local = _local_sequence(eps, C)
        return InducingModule(eps, (Factor("xsl", block, (local,), None),), True)
    anchor = {k: eps[k] for k in C.elements()}
    local = WeightDescriptor.finite([anchor[k] for k in sorted(anchor)])
    return InducingModule(eps, (Factor("xsl", block, (local,), anchor),), True)


def _local_sequence(eps, C):
    """eps restricted to an infinite class, reindexed 1, 2, ... (eventually periodic)."""
    els = C.first(len(C.prefix) + 4 * len(C.pattern) * max(len(eps.tail), 1) + len(eps.prefix) + 4)
    vals = [eps[k] for k in els]
    # the restriction is eventually periodic; pick a period from the tail
    from math import lcm

    per = lcm(len(eps.tail), len(C.pattern)) * max(1, len(C.pattern))
    head = len(vals) - 2 * per
    for start in range(0, max(head, 0) + 1):
        for p in range(1, per + 1):
            if all(vals[i] == vals[i + p] for i in range(start, len(vals) - p)):
                return WeightDescriptor(tuple(vals[:start]), tuple(vals[start:start + p]))
    return WeightDescriptor(tuple(vals), (vals[-1],))


def _xsl_inducing_cut(eps, L, Fm, Fp):
    for p in L.pieces:
        if p.kind == BLOCK and not (p.pos & Fm).is_empty() and not (p.pos & Fp).is_empty():
            return _xsl_inducing(eps, p.pos, _class_members(p, L), L)
    return InducingModule(eps, (), True)


# ---------------------------------------------------------------- X_sp


def _xsp(mu, L: _Line):
    mu = _mu_on(mu, L)
    Fm, I, Fp = _profile(mu, L)
    below, above, central = L.signed_sides()
    T_ok = lambda Z, c: tail_equal_on(mu, Z, c)
    if not I.issubset(central):
        return AlignmentReport(NEITHER, criterion="xsp-classes", obstruction="I-noncentral")
    if not (below.issubset(Fm) and above.issubset(Fp)):
        return AlignmentReport(NEITHER, criterion="xsp-classes", obstruction="integral-order")
    if not (T_ok(below, -1) and T_ok(above, 0)):
        return AlignmentReport(NEITHER, criterion="xsp-classes", obstruction="tail")
    s = mu.sum_over(below, 1) + mu.sum_over(above, 0)
    e = WeightDescriptor.from_sets([(below, -1), (above, 0)], 0)
    if not central.is_empty():
        vals = {}
        if not I.is_empty():
            i = I.minimum()
            vals[i] = mu[i] + s
        elif s % 2:
            c = central.minimum()
            vals[c] = mu[c] - 1 if c in Fm else mu[c] + 1
        e = _restrict(_overlay(e, mu, central, vals), L)
        block = _class_members(L.pieces[L.central_idx], L)
        if L.finite or central.is_finite():
            anchor = {k: e[k] for k in (central.upto(L.n) if L.finite else central.elements())}
            local = WeightDescriptor.finite([anchor[k] for k in sorted(anchor)])
        else:
            anchor, local = None, _local_sequence(e, central)
        f = Factor("xsp", block, (local,), anchor)
        return _xsp_report(e, InducingModule(_wt(e, L), (f,), True), "xsp-central")
    if s % 2 == 0:
        e = _restrict(e, L)
        return _xsp_report(e, InducingModule(_wt(e, L), (), True), "xsp-R")
    top = max_lower_class(L.order)
    if top is None:
        return AlignmentReport(NEITHER, criterion="xsp-classes",
                               obstruction="odd sum and no top class below 0")
    if isinstance(top, SignedSet):
        d = _block_min(top)
        top_set = top
        size = None if not (top.pos.is_finite() and top.neg.is_finite()) else top.pos.size() + top.neg.size()
    else:
        top_set = frozenset(top)
        d = min(top_set, key=lambda x: (abs(x), x))
        size = len(top_set)
    k = abs(d)
    e = e.with_value(k, -2 if d > 0 else 1)
    e = _restrict(e, L)
    factors = ()
    if size != 1:
        if isinstance(top_set, frozenset):
            anchor = {x: (-2 if x == d else -1) for x in top_set}
        else:
            anchor = None
        nu = WeightDescriptor.finite([-2] + [-1] * ((size or 2) - 1))
        factors = (Factor("xsl", top_set, (nu,), anchor),)
    rep = _xsp_report(e, InducingModule(_wt(e, L), factors, True), "xsp-deviant")
    rep.extra["deviant"] = d
    return rep


def _wt(e, L):
    w = e + HALF
    return _restrict(w, L) if L.finite else w


def _xsp_report(e, ind, criterion):
    return AlignmentReport(ALIGNED, ind.witness, ind, criterion, exponent=e)


# ---------------------------------------------------------------- inducing module


def inducing_module(M, o) -> InducingModule:
    rep = check_aligned(M, o, with_trace=False)
    if rep.verdict != ALIGNED:
        raise NotAligned(f"{M.label()} is not aligned for this order ({rep.verdict})")
    return rep.inducing


# ---------------------------------------------------------------- Borel orders


def check_highest_weight(M, o, horizon=DEFAULT_HORIZON):
    """Highest weight data for a Borel (linear) order."""
    if not is_linear(o):
        raise NotLinear("highest weight checks need a linear order")
    rep = check_aligned(M, o, horizon)
    out = {"is_hw": rep.verdict == ALIGNED,
           "hw_weight": rep.witness if rep.verdict == ALIGNED else None,
           "is_pseudo_hw": rep.verdict == PSEUDO,
           "dynkin_equivalent": None,
           "report": rep}
    E = effective(M)
    if rep.verdict == ALIGNED and isinstance(E, Xsl) and isinstance(o, OrderDescriptor):
        out["dynkin_equivalent"] = dynkin_equivalent(rep.witness)
    return out


def dynkin_equivalent(lam: WeightDescriptor):
    """A Dynkin order and a weight eps(≺^d, i', c) with the same simple module.

    lam must be a highest weight: values -1 / 0 except at most one index.
    """
    J = _value_set(lam, -1)
    Z0 = _value_set(lam, 0)
    rest = (J | Z0).complement()
    if not rest.is_empty():
        if rest.size() != 1:
            raise IncompatibleArguments("not a highest weight of the expected shape")
        ip = rest.minimum()
        c = lam[ip]
    elif not J.is_empty():
        ip, c = J.minimum(), Fraction(-1)
    else:
        ip, c = Z0.minimum(), Fraction(0)
    one = SetDescriptor.finite([ip])
    pieces = []
    Jr, Zr = J - one, Z0 - one
    if not Jr.is_empty():
        pieces.append(Piece(Jr, EMPTY, DESC if not Jr.is_finite() else ASC))
    pieces.append(Piece(one, EMPTY, ASC))
    if not Zr.is_empty():
        pieces.append(Piece(Zr, EMPTY, ASC))
    od = OrderDescriptor(POSITIVE, tuple(pieces))
    return od, ip, c, eps_point(od, ip, c)


def _value_set(w: WeightDescriptor, v):
    return SetDescriptor(tuple(x == v for x in w.prefix), tuple(x == v for x in w.tail))


# ---------------------------------------------------------------- shadow


@dataclass(frozen=True)
class Shadow:
    """Roots split by the boundedness of support rays: F, I, + and -."""
    kind: str
    Fm: SetDescriptor
    I: SetDescriptor
    Fp: SetDescriptor

    def _cls(self, s):
        if self.kind == "all":
            return 0
        if self.kind == "sl":
            k = s
            return -1 if k in self.Fm else (0 if k in self.I else 1)
        # sp: signed classes N (-1), ±I ∪ {0} (0), -N (+1)
        if s == 0:
            return 0
        k = abs(s)
        if k in self.I:
            return 0
        neg = (k in self.Fm) if s > 0 else (k in self.Fp)
        return -1 if neg else 1

    def part(self, r: Root):
        if self.kind == "all":
            return "F"
        a, b = self._cls(r.s), self._cls(r.t)
        if a == b:
            return "I" if a == 0 else "F"
        return "+" if a < b else "-"

    def upto(self, typ, n):
        out = {"F": set(), "I": set(), "+": set(), "-": set()}
        for r in roots_of(typ, n, range(1, n + 1)):
            out[self.part(r)].add(r)
        return {k: frozenset(v) for k, v in out.items()}


def shadow(M) -> Shadow:
    E = effective(M)
    if isinstance(E, Xsl):
        prof = E.mu.profile()
        return Shadow("sl", prof.F_minus, prof.I, prof.F_plus)
    if isinstance(E, Xsp):
        prof = E.mu.profile()
        return Shadow("sp", prof.F_minus, prof.I, prof.F_plus)
    return Shadow("all", EMPTY, EMPTY, EMPTY)


def fernando_futorny(M, n=None):
    """The order whose parabolic is (g^F + g^I) + g^+ (≺_mu)."""
    E = effective(M)
    if isinstance(E, Xsl):
        prof = E.mu.profile()
        sets = [prof.F_minus, prof.I, prof.F_plus]
        if n is not None:
            g = GroundSet.positive(n)
            blocks = [s.upto(n) for s in sets if s.upto(n)]
            return make_finite_order(g, blocks)
        return OrderDescriptor(POSITIVE, tuple(Piece(s) for s in sets if not s.is_empty()))
    if isinstance(E, Xsp):
        prof = E.mu.profile()
        if n is not None:
            g = GroundSet.signed(n)
            low = set(prof.F_minus.upto(n)) | {-k for k in prof.F_plus.upto(n)}
            mid = {0} | set(prof.I.upto(n)) | {-k for k in prof.I.upto(n)}
            high = {-x for x in low}
            return make_finite_order(g, [b for b in (low, mid, high) if b])
        pieces = ()
        if not (prof.F_minus | prof.F_plus).is_empty():
            pieces = (Piece(prof.F_minus, prof.F_plus, BLOCK),)
        return OrderDescriptor(SIGNED, pieces, prof.I)
    signed = E.algebra in ("B", "C", "D")
    if n is not None:
        g = GroundSet.signed(n) if signed else GroundSet.positive(n)
        return make_finite_order(g, [g.elements()])
    if signed:
        return OrderDescriptor(SIGNED, (), ALL)
    return OrderDescriptor(POSITIVE, (Piece(ALL),))


def ff_aligned(M, horizon=DEFAULT_HORIZON) -> AlignmentReport:
    return check_aligned(M, fernando_futorny(M), horizon)
