"""Root systems of types A-D and the order <-> parabolic dictionary.

Every root is stored as a signed pair (s, t) meaning eps_s - eps_t, with
eps_{-k} = -eps_k and eps_0 = 0.  The pairs (s, t) and (-t, -s) name the
same root; the one with a positive first entry is preferred.  With this encoding
a root lies in P(≺)+ exactly when s ≺ t, and in P(≺)0 when s, t share a
class, for every type at once.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import (
    DConstraintViolated,
    DTypeCentralSingleton,
    NotParabolicSet,
    NotTransitive,
    RankTooSmall,
    TypeGroundMismatch,
)
from .orders import (
    POSITIVE,
    SIGNED,
    FiniteOrder,
    GroundSet,
    OrderDescriptor,
    is_admissible,
)

TYPES = ("A", "B", "C", "D")


def _pair_key(s, t):
    # prefer a positive first entry, so type A roots keep positive indices
    return (0 if s > 0 else 1 if s == 0 else 2, s, t)


@dataclass(frozen=True, order=True)
class Root:
    s: int
    t: int

    def __post_init__(self):
        s, t = self.s, self.t
        if s == t:
            raise ValueError("eps_s - eps_s is not a root")
        if _pair_key(-t, -s) < _pair_key(s, t):
            object.__setattr__(self, "s", -t)
            object.__setattr__(self, "t", -s)

    # named forms
    @classmethod
    def e_minus(cls, i, j):
        return cls(i, j)

    @classmethod
    def e_plus(cls, i, j):
        return cls(i, -j)

    @classmethod
    def neg_e_plus(cls, i, j):
        return cls(-i, j)

    @classmethod
    def two_e(cls, sign, i):
        return cls(sign * i, -sign * i)

    @classmethod
    def e(cls, sign, i):
        return cls(sign * i, 0)

    def vector(self):
        """Coefficients {index: c} on eps_1, eps_2, ..."""
        out = {}
        for x, c in ((self.s, 1), (self.t, -1)):
            if x:
                out[abs(x)] = out.get(abs(x), 0) + (c if x > 0 else -c)
        return {k: v for k, v in out.items() if v}

    def form(self):
        """(name, sign or i, index...) in the usual root notation."""
        v = self.vector()
        ks = sorted(v)
        if len(ks) == 1:
            k = ks[0]
            c = v[k]
            sign = 1 if c > 0 else -1
            return ("TwoEi" if abs(c) == 2 else "Ei", sign, k)
        i, j = ks
        if v[i] == -v[j]:
            return ("Ei_minus_Ej", i, j) if v[i] > 0 else ("Ei_minus_Ej", j, i)
        if v[i] > 0:
            return ("Ei_plus_Ej", i, j)
        return ("Neg_Ei_plus_Ej", i, j)

    def kind(self):
        return self.form()[0]

    def indices(self):
        return frozenset(self.vector())

    def __neg__(self):
        return Root(self.t, self.s)

    def legal_in(self, typ):
        k = self.kind()
        if typ == "A":
            return k == "Ei_minus_Ej"
        if typ == "B":
            return k != "TwoEi"
        if typ == "C":
            return k != "Ei"
        if typ == "D":
            return k not in ("Ei", "TwoEi")
        raise ValueError(f"unknown type {typ!r}")

    def __repr__(self):
        v = self.vector()
        parts = []
        for k in sorted(v):
            c = v[k]
            coef = {1: "+", -1: "-", 2: "+2", -2: "-2"}[c]
            parts.append(f"{coef}ε{k}")
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text


def add_roots(a: Root, b: Root, typ: str):
    """a + b if that is a root of the given type, else None."""
    v = dict(a.vector())
    for k, c in b.vector().items():
        v[k] = v.get(k, 0) + c
    v = {k: c for k, c in v.items() if c}
    r = root_from_vector(v)
    if r is None or not r.legal_in(typ):
        return None
    return r


def root_from_vector(v):
    ks = sorted(v)
    if len(ks) == 1:
        k, c = ks[0], v[ks[0]]
        if abs(c) == 1:
            return Root(k if c > 0 else -k, 0)
        if abs(c) == 2:
            return Root(k if c > 0 else -k, -k if c > 0 else k)
        return None
    if len(ks) == 2:
        i, j = ks
        if abs(v[i]) != 1 or abs(v[j]) != 1:
            return None
        return Root(i if v[i] > 0 else -i, -j if v[j] > 0 else j)
    return None


def roots_of(typ: str, n: int, indices: Iterable[int] = None) -> frozenset:
    """All roots; type A at rank n lives on the n+1 indices 1..n+1."""
    if typ not in TYPES:
        raise ValueError(f"unknown type {typ!r}")
    if indices is not None:
        idx = sorted(set(indices))
        if typ == "A" and len(idx) < 2 or not idx:
            raise RankTooSmall("not enough indices")
    else:
        if n < 1 or (typ == "D" and n < 2):
            raise RankTooSmall(f"type {typ} needs rank >= {2 if typ == 'D' else 1}")
        idx = list(range(1, n + 2)) if typ == "A" else list(range(1, n + 1))
    if typ == "D" and len(idx) < 2:
        raise RankTooSmall("type D needs rank >= 2")
    out = set()
    for i in idx:
        for j in idx:
            if i != j:
                out.add(Root(i, j))
                if typ != "A":
                    out.add(Root(i, -j))
                    out.add(Root(-i, j))
        if typ == "B":
            out.update((Root(i, 0), Root(-i, 0)))
        if typ == "C":
            out.update((Root(i, -i), Root(-i, i)))
    return frozenset(out)


def signed_pairs(r: Root):
    """Both (s, t) encodings of a root."""
    return ((r.s, r.t), (-r.t, -r.s))


# ---------------------------------------------------------------- parabolics


@dataclass(frozen=True)
class RootPredicate:
    """A symbolic root set: roots of `typ` with s ≺ t (which='plus') or s ~ t ('zero')."""
    order: OrderDescriptor
    typ: str
    which: str
    block: int = None

    def __contains__(self, r: Root):
        if not r.legal_in(self.typ):
            return False
        if self.which == "plus":
            return self.order.less(r.s, r.t)
        if not self.order.same_class(r.s, r.t):
            return False
        if self.block is None:
            return True
        return _block_key(self.order, r.s) == self.block

    def upto(self, n):
        return frozenset(r for r in roots_of(self.typ, n, range(1, n + 1)) if r in self)


def _block_key(o, x):
    """Index of the class pair {[x], [-x]} (the lower member's level)."""
    if isinstance(o, FiniteOrder):
        if not o.signed:
            return o.level(x)
        return min(o.level(x), o.level(-x))
    idx, _ = o.locate(x)
    if not o.signed:
        return idx
    idx2, _ = o.locate(-x)
    return min(idx, idx2)


@dataclass(frozen=True)
class ParabolicDatum:
    typ: str
    plus: object
    zero_blocks: tuple
    order: object = field(default=None, compare=False)
    n: int = None

    @property
    def zero(self):
        if isinstance(self.plus, frozenset):
            out = set()
            for b in self.zero_blocks:
                out |= b
            return frozenset(out)
        return RootPredicate(self.plus.order, self.typ, "zero")

    def roots(self):
        return frozenset(self.plus) | self.zero


def _check_type(o, typ):
    if typ not in TYPES:
        raise ValueError(f"unknown type {typ!r}")
    signed = o.signed
    if (typ == "A") == signed:
        raise TypeGroundMismatch(f"type {typ} needs a {'positive' if typ == 'A' else 'signed'} ground")
    if typ == "D":
        if isinstance(o, FiniteOrder):
            cp = o.central_positive()
            if len(cp) == 1:
                raise DConstraintViolated("type D central class cannot hold exactly one ±k pair")
        else:
            c = o.central
            if c.is_finite() and c.size() == 1:
                raise DConstraintViolated("type D central class cannot hold exactly one ±k pair")


def parabolic_from_order(o, typ: str) -> ParabolicDatum:
    _check_type(o, typ)
    if isinstance(o, OrderDescriptor):
        blocks = tuple(RootPredicate(o, typ, "zero", k) for k in _levels_descriptor(o))
        return ParabolicDatum(typ, RootPredicate(o, typ, "plus"), blocks, o)
    n = o.n
    delta = roots_of(typ, n, range(1, n + 1))
    plus = frozenset(r for r in delta if o.less(r.s, r.t))
    by_block = {}
    for r in delta:
        if o.same_class(r.s, r.t):
            by_block.setdefault(_block_key(o, r.s), set()).add(r)
    blocks = tuple(frozenset(by_block[k]) for k in sorted(by_block))
    return ParabolicDatum(typ, plus, blocks, o, n)


def _levels_descriptor(o: OrderDescriptor):
    line = o.line()
    if not o.signed:
        return list(range(len(line)))
    return list(range(len(o.pieces) + 1))


def _additively_closed(P, typ):
    for a in P:
        for b in P:
            c = add_roots(a, b, typ)
            if c is not None and c not in P:
                return False
    return True


def is_parabolic_set(P, typ, n) -> bool:
    delta = roots_of(typ, n, range(1, n + 1))
    if not set(P) <= delta:
        return False
    if any(-r not in P for r in delta if r not in P):
        return False
    return _additively_closed(set(P), typ)


def order_from_parabolic(P) -> FiniteOrder:
    """The admissible order whose parabolic set is P (finite rank)."""
    typ, n = P.typ, P.n
    roots = P.roots()
    if n is None:
        raise NotParabolicSet("order_from_parabolic needs a finite-rank datum")
    if not is_parabolic_set(roots, typ, n):
        raise NotParabolicSet("P is not additively closed or P ∪ -P is not Δ")
    plus = {pair for r in roots if -r not in roots for pair in signed_pairs(r)}
    zero = {pair for r in roots if -r in roots for pair in signed_pairs(r)}
    if typ == "A":
        ground = GroundSet.positive(n)
        rel = {(a, b) for a, b in plus if a > 0 and b > 0}
    else:
        ground = GroundSet.signed(n)
        rel = _signed_relation(typ, n, plus, zero)
    try:
        ok, order = is_admissible(ground, rel)
    except NotTransitive as exc:
        raise NotParabolicSet(f"induced relation is not transitive: {exc}") from exc
    if not ok:
        raise NotParabolicSet("induced order is not admissible")
    try:
        back = parabolic_from_order(order, typ)
    except (DConstraintViolated, DTypeCentralSingleton) as exc:
        raise NotParabolicSet(str(exc)) from exc
    if back.roots() != roots:
        raise NotParabolicSet("P is not the parabolic set of any admissible order")
    return order


def _signed_relation(typ, n, plus, zero):
    el = [x for x in range(-n, n + 1) if x]
    rel = {(s, t) for s, t in plus}
    if typ == "D":
        central = {k for k in range(1, n + 1)
                   if any((k, t) in zero and (k, -t) in zero for t in range(1, n + 1) if t != k)}
        lower = set()
        for s in el:
            if abs(s) in central:
                continue
            if central:
                k = next(iter(central))
                if (s, k) in plus:
                    lower.add(s)
                continue
            above = sum(1 for t in el if abs(t) != abs(s) and (s, t) in plus)
            below = sum(1 for t in el if abs(t) != abs(s) and (t, s) in plus)
            if above > below or (above == below and s > 0):
                lower.add(s)
    else:
        lower = {s for s in el if (s, 0) in plus or (s, -s) in plus}
    for s in lower:
        rel.update(((s, 0), (0, -s), (s, -s)))
    # drop pairs through 0 that type B/C record directly, keep the rest
    return {(a, b) for a, b in rel if a != b}


# ---------------------------------------------------------------- Levi blocks


@dataclass(frozen=True)
class LeviBlock:
    index_set: object
    algebra: str
    rank: object

    def to_json(self):
        if isinstance(self.index_set, frozenset):
            idx = sorted(self.index_set)
        else:
            idx = repr(self.index_set)
        return {"indices": idx, "algebra": self.algebra, "rank": self.rank}

    def label(self):
        if isinstance(self.index_set, frozenset):
            body = "{" + ",".join(map(str, sorted(self.index_set))) + "}"
        else:
            body = repr(self.index_set)
        return f"{self.algebra}({body})"


CENTRAL_ALGEBRA = {"B": "so_B", "C": "sp", "D": "so_D"}


def levi_decomposition(o, typ: str):
    _check_type(o, typ)
    if isinstance(o, FiniteOrder):
        return _levi_finite(o, typ)
    return _levi_descriptor(o, typ)


def _levi_finite(o: FiniteOrder, typ):
    out = []
    if typ == "A":
        for b in o.blocks:
            if len(b) > 1:
                out.append(LeviBlock(frozenset(b), "sl", len(b) - 1))
        return out
    for b in o.lower_blocks():
        if len(b) > 1:
            out.append(LeviBlock(frozenset(b), "sl", len(b) - 1))
    cp = o.central_positive()
    if cp:
        out.append(LeviBlock(frozenset(o.central_block()), CENTRAL_ALGEBRA[typ], len(cp)))
    return out


def _levi_descriptor(o: OrderDescriptor, typ):
    from .orders import BLOCK

    out = []
    pieces = o.line() if typ == "A" else list(o.pieces)
    for p in pieces:
        if p.kind != BLOCK:
            continue
        size = p.size()
        if size == 1:
            continue
        out.append(LeviBlock(p.members(), "sl", None if size is None else size - 1))
    if typ != "A" and not o.central.is_empty():
        from .orders import SignedSet

        size = o.central.size()
        out.append(LeviBlock(SignedSet(o.central, o.central, True), CENTRAL_ALGEBRA[typ], size))
    return out
