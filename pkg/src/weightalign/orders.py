"""Admissible partial orders on Z_{>0} and Z2-linear admissible orders on Z.

Finite orders are ordered set partitions: the block list is the linear
order on incomparability classes.  Infinite orders are descriptors: a
finite list of pieces, each either a block (one class) or a chain
(singleton classes ordered by absolute value, ascending or descending).
For signed orders only the pieces below the central class are stored;
the part above is generated by negation.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator

from .errors import (
    BoundExceeded,
    DTypeCentralSingleton,
    GroundMismatch,
    LengthMismatch,
    NegationAsymmetric,
    NotAPartition,
    NotIrreflexive,
    NotLinear,
    NotTransitive,
    ParseError,
)
from .sets import ALL, EMPTY, SetDescriptor

POSITIVE = "positive"
SIGNED = "signed"
BLOCK = "block"
ASC = "asc"
DESC = "desc"

DEFAULT_ENUM_BOUND = 6


@dataclass(frozen=True)
class GroundSet:
    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in (POSITIVE, SIGNED):
            raise ValueError(f"unknown ground kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("ground set needs n >= 1")

    @classmethod
    def positive(cls, n):
        return cls(POSITIVE, n)

    @classmethod
    def signed(cls, n):
        return cls(SIGNED, n)

    def elements(self):
        if self.kind == POSITIVE:
            return list(range(1, self.n + 1))
        return list(range(-self.n, self.n + 1))


# ---------------------------------------------------------------- finite


@dataclass(frozen=True)
class FiniteOrder:
    ground: GroundSet
    blocks: tuple
    _level: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        level = {}
        for idx, b in enumerate(self.blocks):
            for x in b:
                level[x] = idx
        object.__setattr__(self, "_level", level)

    @property
    def signed(self):
        return self.ground.kind == SIGNED

    @property
    def n(self):
        return self.ground.n

    def level(self, x):
        return self._level[x]

    def less(self, x, y):
        return self._level[x] < self._level[y]

    def same_class(self, x, y):
        return self._level[x] == self._level[y]

    def block_of(self, x):
        return self.blocks[self._level[x]]

    def central_block(self):
        if not self.signed:
            return None
        return self.block_of(0)

    def central_positive(self):
        return frozenset(k for k in self.central_block() if k > 0) if self.signed else frozenset()

    def lower_blocks(self):
        """Blocks strictly below the central class (signed orders)."""
        return self.blocks[: self._level[0]]

    def strict_pairs(self):
        return {(x, y) for x in self._level for y in self._level if self.less(x, y)}

    def restrict(self, elements):
        keep = set(elements)
        blocks = tuple(frozenset(b & keep) for b in self.blocks if b & keep)
        n = max((abs(x) for x in keep), default=1)
        return FiniteOrder(GroundSet(self.ground.kind, max(n, 1)), blocks)

    def to_json(self):
        return {"ground": self.ground.kind, "n": self.n,
                "blocks": [sorted(b) for b in self.blocks]}

    def __repr__(self):
        return "≺".join("{" + ",".join(map(str, sorted(b))) + "}" for b in self.blocks)


def make_finite_order(ground: GroundSet, blocks: Iterable[Iterable[int]], d_type=False) -> FiniteOrder:
    """Validate an ordered list of index sets and return the canonical FiniteOrder."""
    blocks = [frozenset(b) for b in blocks]
    if any(not b for b in blocks):
        raise NotAPartition("empty block")
    seen = set()
    for b in blocks:
        if seen & b:
            raise NotAPartition(f"blocks overlap in {sorted(seen & b)}")
        seen |= b
    if seen != set(ground.elements()):
        raise NotAPartition("blocks do not cover the ground set")
    if ground.kind == SIGNED:
        mirrored = [frozenset(-x for x in b) for b in reversed(blocks)]
        if mirrored != blocks:
            raise NegationAsymmetric("negating and reversing the blocks changes the order")
        if d_type:
            central = [b for b in blocks if 0 in b][0]
            if len([k for k in central if k > 0]) == 1:
                raise DTypeCentralSingleton("D-type central class needs 0 or >= 2 positive indices")
    return FiniteOrder(ground, tuple(blocks))


def _classes_from_pairs(elements, less):
    classes = []
    for x in elements:
        cls = frozenset(y for y in elements if y == x or not (less(x, y) or less(y, x)))
        classes.append(cls)
    return classes


def is_admissible(ground: GroundSet, strict_pairs):
    """Return (admissible?, FiniteOrder or None) for a strict order given by pairs."""
    el = ground.elements()
    rel = set((a, b) for a, b in strict_pairs)
    for a, b in rel:
        if a == b:
            raise NotIrreflexive(f"pair ({a},{a})")
        if a not in el or b not in el:
            raise GroundMismatch(f"pair ({a},{b}) outside the ground set")
    for a, b in rel:
        for c, d in rel:
            if b == c and (a, d) not in rel:
                raise NotTransitive(f"({a},{b}),({b},{d}) without ({a},{d})")

    def less(x, y):
        return (x, y) in rel

    classes = _classes_from_pairs(el, less)
    by_elem = dict(zip(el, classes))
    for x in el:
        for y in by_elem[x]:
            if by_elem[y] != by_elem[x]:
                return False, None
    distinct = list(dict.fromkeys(classes))
    distinct.sort(key=lambda c: sum(1 for x in el if less(x, next(iter(c)))))
    order = FiniteOrder(ground, tuple(distinct))
    if order.strict_pairs() != rel:
        return False, None
    if ground.kind == SIGNED:
        mirrored = [frozenset(-x for x in b) for b in reversed(distinct)]
        if mirrored != distinct:
            return False, None
    return True, order


def is_linear(o) -> bool:
    if isinstance(o, OrderDescriptor):
        return o.is_linear()
    return all(len(b) == 1 for b in o.blocks)


def is_z2_linear(o) -> bool:
    """A Z2-linear order: signed, negation symmetric, and linear."""
    if isinstance(o, OrderDescriptor):
        return o.signed and o.is_linear()
    if not o.signed:
        return False
    mirrored = [frozenset(-x for x in b) for b in reversed(o.blocks)]
    return mirrored == list(o.blocks) and is_linear(o)


def is_refinement(fine: FiniteOrder, coarse: FiniteOrder) -> bool:
    if fine.ground != coarse.ground:
        raise GroundMismatch("orders live on different ground sets")
    return all(fine.less(a, b) for a, b in coarse.strict_pairs())


# ----------------------------------------------------------- descriptors


@dataclass(frozen=True)
class SignedSet:
    """A subset of Z given by its positive part, negative part and 0."""
    pos: SetDescriptor = EMPTY
    neg: SetDescriptor = EMPTY
    zero: bool = False

    def __contains__(self, x):
        if x == 0:
            return self.zero
        return (x in self.pos) if x > 0 else (-x in self.neg)

    def negate(self):
        return SignedSet(self.neg, self.pos, self.zero)

    def is_empty(self):
        return not self.zero and self.pos.is_empty() and self.neg.is_empty()

    def __and__(self, other):
        return SignedSet(self.pos & other.pos, self.neg & other.neg, self.zero and other.zero)

    def __or__(self, other):
        return SignedSet(self.pos | other.pos, self.neg | other.neg, self.zero or other.zero)

    def upto(self, n):
        out = set(self.pos.upto(n)) | {-k for k in self.neg.upto(n)}
        if self.zero:
            out.add(0)
        return frozenset(out)

    @classmethod
    def positive(cls, s):
        return cls(s, EMPTY, False)

    @classmethod
    def of(cls, finite: Iterable[int]):
        finite = set(finite)
        return cls(SetDescriptor.finite(k for k in finite if k > 0),
                   SetDescriptor.finite(-k for k in finite if k < 0),
                   0 in finite)


@dataclass(frozen=True)
class Piece:
    """One piece of a descriptor: a block (single class) or a chain."""
    pos: SetDescriptor
    neg: SetDescriptor = EMPTY
    kind: str = BLOCK
    zero: bool = False

    def __post_init__(self):
        if self.kind not in (BLOCK, ASC, DESC):
            raise ParseError(f"unknown piece kind {self.kind!r}")

    @property
    def abs_set(self):
        return self.pos | self.neg

    def members(self):
        return SignedSet(self.pos, self.neg, self.zero)

    def is_empty(self):
        return self.pos.is_empty() and self.neg.is_empty() and not self.zero

    def mirror(self):
        kind = {BLOCK: BLOCK, ASC: DESC, DESC: ASC}[self.kind]
        return Piece(self.neg, self.pos, kind, self.zero)

    def upto(self, n):
        out = set(self.pos.upto(n)) | {-k for k in self.neg.upto(n)}
        if self.zero:
            out.add(0)
        return out

    def ordered_upto(self, n):
        """Chain elements up to |x| <= n in chain order."""
        els = sorted(self.upto(n), key=abs)
        return els if self.kind == ASC else els[::-1]

    def is_finite(self):
        return self.abs_set.is_finite()

    def size(self):
        a, b = self.pos.size(), self.neg.size()
        if a is None or b is None:
            return None
        return a + b + (1 if self.zero else 0)

    def has_min(self):
        return self.kind != DESC or self.is_finite()

    def has_max(self):
        return self.kind != ASC or self.is_finite()


@dataclass(frozen=True)
class OrderDescriptor:
    """An admissible (signed: Z2-linear admissible) order on an infinite ground.

    pieces: listed from the bottom; for signed orders, only those below [0].
    central: positive part of [0] minus {0} (signed orders only).
    """
    ground: str
    pieces: tuple
    central: SetDescriptor = EMPTY

    def __post_init__(self):
        if self.ground not in (POSITIVE, SIGNED):
            raise ParseError(f"unknown ground {self.ground!r}")
        pieces = tuple(self.pieces)
        object.__setattr__(self, "pieces", pieces)
        if any(p.is_empty() for p in pieces):
            raise NotAPartition("empty piece")
        if self.ground == POSITIVE:
            if any(not p.neg.is_empty() for p in pieces) or not self.central.is_empty():
                raise ParseError("positive orders cannot use negative indices or a central class")
        covered = self.central
        for p in pieces:
            if not p.pos.isdisjoint(p.neg):
                raise NegationAsymmetric("a non-central class cannot contain both i and -i")
            if not covered.isdisjoint(p.abs_set):
                raise NotAPartition("pieces overlap")
            covered = covered | p.abs_set
        if not covered.is_all():
            raise NotAPartition("pieces do not cover the ground")

    @property
    def signed(self):
        return self.ground == SIGNED

    # the full line, bottom to top
    def line(self):
        if not self.signed:
            return list(self.pieces)
        mid = Piece(self.central, self.central, BLOCK, True)
        return list(self.pieces) + [mid] + [p.mirror() for p in reversed(self.pieces)]

    def central_index(self):
        return len(self.pieces) if self.signed else None

    def locate(self, x):
        """(piece index on the line, key within chain or None)."""
        for idx, p in enumerate(self.line()):
            if x in p.members():
                if p.kind == BLOCK:
                    return idx, None
                return idx, (abs(x) if p.kind == ASC else -abs(x))
        raise ValueError(f"{x} is not in the ground set")

    def less(self, x, y):
        (i, a), (j, b) = self.locate(x), self.locate(y)
        if i != j:
            return i < j
        return a is not None and a < b

    def same_class(self, x, y):
        return x == y or not (self.less(x, y) or self.less(y, x))

    def is_linear(self):
        ok = all(p.kind != BLOCK or p.size() == 1 for p in self.pieces)
        return ok and (not self.signed or self.central.is_empty())

    def truncate(self, n) -> FiniteOrder:
        blocks = []
        for p in self.line():
            if p.kind == BLOCK:
                b = p.upto(n)
                if b:
                    blocks.append(frozenset(b))
            else:
                blocks.extend(frozenset([x]) for x in p.ordered_upto(n))
        return FiniteOrder(GroundSet(self.ground, n), tuple(blocks))

    # serialization
    def to_json(self):
        out = {"ground": self.ground}
        blocks, segments = [], []
        for p in self.pieces:
            entry = {"set": p.pos.to_json()}
            if self.signed:
                entry["neg"] = p.neg.to_json()
            if p.kind == BLOCK:
                entry["central"] = False
                blocks.append(entry)
            else:
                entry["direction"] = "ascending" if p.kind == ASC else "descending"
                blocks.append(entry)
        if self.signed and not self.central.is_empty():
            blocks.append({"set": self.central.to_json(), "central": True})
        out["blocks"] = blocks
        if any(p.kind != BLOCK for p in self.pieces):
            out["segments"] = True
        return out

    @classmethod
    def from_json(cls, obj):
        try:
            ground = obj["ground"]
            entries = list(obj.get("blocks", []))
            if isinstance(obj.get("segments"), list):
                entries = entries + [dict(e, central=False) for e in obj["segments"]]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad order descriptor: {exc}") from exc
        pieces, central = [], EMPTY
        centrals = 0
        for e in entries:
            pos = SetDescriptor.from_json(e.get("set", {"prefix": [], "tail": "all_out"}))
            neg = SetDescriptor.from_json(e["neg"]) if "neg" in e else EMPTY
            if e.get("central"):
                centrals += 1
                central = pos
                continue
            direction = e.get("direction")
            kind = {None: BLOCK, "ascending": ASC, "descending": DESC,
                    "asc": ASC, "desc": DESC}.get(direction)
            if kind is None:
                raise ParseError(f"bad direction {direction!r}")
            pieces.append(Piece(pos, neg, kind))
        if centrals > 1:
            raise ParseError("at most one central block")
        if ground not in (POSITIVE, SIGNED):
            raise ParseError(f"unknown ground {ground!r}")
        return cls(ground, tuple(pieces), central)

    def describe(self):
        parts = []
        for p in self.line():
            tag = {BLOCK: "", ASC: "↑", DESC: "↓"}[p.kind]
            members = []
            if p.zero:
                members.append("0")
            if not p.pos.is_empty():
                members.append(repr(p.pos))
            if not p.neg.is_empty():
                members.append("-" + repr(p.neg))
            parts.append(tag + "∪".join(members))
        return " ≺ ".join(parts)


# convenient builders


def positive_blocks(*sets, kinds=None):
    kinds = kinds or [BLOCK] * len(sets)
    return OrderDescriptor(POSITIVE, tuple(Piece(s, EMPTY, k) for s, k in zip(sets, kinds)))


def signed_order(lower, central=EMPTY):
    """lower: list of (pos, neg, kind) triples listed from the bottom."""
    return OrderDescriptor(SIGNED, tuple(Piece(p, n, k) for p, n, k in lower), central)


def truncate(d: OrderDescriptor, n: int) -> FiniteOrder:
    return d.truncate(n)


# ---------------------------------------------------------------- order type


def order_type_word(d: OrderDescriptor) -> str:
    """Word over F (finite singleton), A (omega), D (omega*), B (non-singleton block)."""
    word = []
    for p in d.line():
        if p.kind == BLOCK:
            word.append("F" if p.size() == 1 else "B")
        elif p.is_finite():
            word.append("F")
        else:
            word.append("A" if p.kind == ASC else "D")
    return "".join(word)


def is_dynkin(d: OrderDescriptor) -> bool:
    """Order type omega, omega* or zeta."""
    if not isinstance(d, OrderDescriptor) or not d.is_linear():
        raise NotLinear("is_dynkin needs a linear (segment form) descriptor")
    w = order_type_word(d)
    return bool(re.fullmatch(r"F*A|DF*|DF*A", w))


# ------------------------------------------------------------ existence tests


def _chain_precedes(p: Piece, xs: SetDescriptor, ys: SetDescriptor):
    """Inside chain p (abs-value sets), is some x strictly before some y?"""
    if xs.is_empty() or ys.is_empty():
        return False
    if p.kind == ASC:
        if not ys.is_finite():
            return True
        return xs.minimum() < ys.maximum()
    if not xs.is_finite():
        return True
    return xs.maximum() > ys.minimum()


def _abs_part(p: Piece, s: SignedSet):
    return (p.pos & s.pos) | (p.neg & s.neg)


def exists_below(d: OrderDescriptor, xs: SignedSet, ys: SignedSet) -> bool:
    """Decide whether some x in xs and y in ys satisfy x ≺ y."""
    seen_x = False
    for p in d.line():
        mem = p.members()
        px, py = mem & xs, mem & ys
        has_x, has_y = not px.is_empty(), not py.is_empty()
        if seen_x and has_y:
            return True
        if p.kind != BLOCK and _chain_precedes(p, _abs_part(p, xs), _abs_part(p, ys)):
            return True
        seen_x = seen_x or has_x
    return False


def _as_signed(A):
    if isinstance(A, SignedSet):
        return A
    if isinstance(A, SetDescriptor):
        return SignedSet.positive(A)
    return SignedSet.of(A)


def compatible_with_set(o, A) -> bool:
    """For all a in A and b not in A: a ≺ b or [a] = [b]."""
    if isinstance(o, OrderDescriptor):
        sd = A if isinstance(A, SetDescriptor) else SetDescriptor.finite(A)
        return not exists_below(o, SignedSet.positive(sd.complement()), SignedSet.positive(sd))
    A = set(A)
    el = o.ground.elements()
    return not any(o.less(b, a) for a in A for b in el if b not in A)


def _signed_lower_set_finite(o: FiniteOrder):
    return {x for x in o.ground.elements() if x != 0 and o.less(x, 0)}


def s_compatible(o, A_prime, d_type=False) -> bool:
    """Z_{>=0} = A' ≼ 0 ≼ (Z_{>0} minus A'), with ≼ meaning ≺ or same class.

    With d_type, a single swap k <-> -k inside the top class below 0 is
    also accepted when [0] = {0}: type D has no roots ±ε_k, so that swap
    keeps the spinor weight singular.
    """
    if isinstance(o, OrderDescriptor):
        sd = A_prime if isinstance(A_prime, SetDescriptor) else SetDescriptor.finite(A_prime)
        return _s_compatible_descriptor(o, sd, d_type)
    if not o.signed:
        raise GroundMismatch("s-compatibility needs a signed order")
    A = set(A_prime)
    up = {k for k in range(1, o.n + 1) if k in A} | {-k for k in range(1, o.n + 1) if k not in A}
    lower = _signed_lower_set_finite(o)
    if lower <= up:
        return True
    if not d_type or o.central_positive():
        return False
    missing = lower - up
    if len(missing) != 1:
        return False
    s = next(iter(missing))
    lb = o.lower_blocks()
    return bool(lb) and s in lb[-1] and (up - {-s}) == (lower - {s})


def _s_compatible_descriptor(o: OrderDescriptor, A: SetDescriptor, d_type: bool):
    if not o.signed:
        raise GroundMismatch("s-compatibility needs a signed order")
    up = SignedSet(A, A.complement(), False)
    zero = SignedSet(EMPTY, EMPTY, True)
    # lower ⊆ up  <=>  nothing outside `up` lies below 0
    outside = SignedSet(A.complement(), A, False)
    if not exists_below(o, outside, zero):
        return True
    if not d_type or not o.central.is_empty() or not o.pieces:
        return False
    top = o.pieces[-1]
    if top.kind == ASC and not top.is_finite():
        return False
    # the signed elements of L outside `up` must be exactly one element of the top class
    bad = []
    for idx, p in enumerate(o.pieces):
        miss_pos, miss_neg = p.pos - A, p.neg & A
        if not miss_pos.is_finite() or not miss_neg.is_finite():
            return False
        bad.extend((idx, k) for k in miss_pos.elements())
        bad.extend((idx, -k) for k in miss_neg.elements())
    if len(bad) != 1:
        return False
    idx, s = bad[0]
    if idx != len(o.pieces) - 1:
        return False
    if top.kind == BLOCK:
        return True
    top_abs = top.abs_set.maximum() if top.kind == ASC else top.abs_set.minimum()
    return abs(s) == top_abs


# ---------------------------------------------------------- weight compatibility


def _profile_finite(mu):
    from .weights import classify

    fm, ii, fp = set(), set(), set()
    for idx, v in enumerate(mu, start=1):
        c = classify(v)
        (fm if c == "neg" else fp if c == "nonneg" else ii).add(idx)
    return fm, ii, fp


def sl_compatible(o_n: FiniteOrder, mu_n) -> bool:
    """I pairwise incomparable and Int^- ≼ (non-integral) ≼ Int^+ (weakly)."""
    if o_n.signed:
        raise GroundMismatch("sl-compatibility needs a positive order")
    if len(mu_n) != o_n.n:
        raise LengthMismatch(f"weight has length {len(mu_n)}, order has {o_n.n} indices")
    fm, ii, fp = _profile_finite(mu_n)
    hi, lo = ii | fp, fm | ii
    return not any(o_n.less(x, y) for x in hi for y in lo)


def locally_sl_compatible(o: OrderDescriptor, mu) -> bool:
    prof = mu.profile()
    xs = SignedSet.positive(prof.I | prof.F_plus)
    ys = SignedSet.positive(prof.F_minus | prof.I)
    return not exists_below(o, xs, ys)


def sp_blocks_finite(mu_n):
    """([0_-], [0], [0_+]) for a finite weight."""
    fm, ii, fp = _profile_finite(mu_n)
    low = frozenset(fm) | frozenset(-k for k in fp)
    mid = frozenset(ii) | frozenset(-k for k in ii) | {0}
    high = frozenset(-x for x in low)
    return low, mid, high


def sp_compatible(o_n: FiniteOrder, mu_n) -> bool:
    """±I ∪ {0} inside the central class and [0_-] ≼ [0] ≼ [0_+] (weakly)."""
    if not o_n.signed:
        raise GroundMismatch("sp-compatibility needs a signed order")
    if len(mu_n) != o_n.n:
        raise LengthMismatch(f"weight has length {len(mu_n)}, order has {o_n.n} indices")
    low, mid, high = sp_blocks_finite(mu_n)
    if any(not o_n.same_class(x, 0) for x in mid):
        return False
    hi, lo = mid | high, low | mid
    return not any(o_n.less(x, y) for x in hi for y in lo)


def locally_sp_compatible(o: OrderDescriptor, mu) -> bool:
    prof = mu.profile()
    low = SignedSet(prof.F_minus, prof.F_plus, False)
    mid = SignedSet(prof.I, prof.I, True)
    high = low.negate()
    # ±I must be central: nothing of mid below 0 and (by symmetry) above
    if not prof.I.issubset(o.central):
        return False
    return not exists_below(o, mid | high, low | mid)


# ---------------------------------------------------------------- enumeration


@lru_cache(maxsize=None)
def ordered_bell(n: int) -> int:
    """Number of ordered set partitions of an n-set (independent recursion)."""
    if n == 0:
        return 1
    from math import comb

    return sum(comb(n, k) * ordered_bell(n - k) for k in range(1, n + 1))


def _ordered_partitions(items):
    items = tuple(items)
    if not items:
        yield ()
        return
    for r in range(1, len(items) + 1):
        for first in combinations(items, r):
            rest = tuple(x for x in items if x not in first)
            for tail in _ordered_partitions(rest):
                yield (frozenset(first),) + tail


def enumerate_admissible(n: int, bound: int = DEFAULT_ENUM_BOUND) -> Iterator[FiniteOrder]:
    """Every admissible order on {1..n}, each exactly once, in a fixed order."""
    if n > bound:
        raise BoundExceeded(f"n={n} exceeds the enumeration bound {bound}")
    g = GroundSet.positive(n)
    for blocks in _ordered_partitions(range(1, n + 1)):
        yield FiniteOrder(g, blocks)


def d_canonical(o: FiniteOrder) -> bool:
    """Type D representative: no central singleton pair, and a singleton top
    class below {0} holds a positive index (its swap gives the same parabolic)."""
    cp = o.central_positive()
    if len(cp) == 1:
        return False
    if not cp:
        lb = o.lower_blocks()
        if lb and len(lb[-1]) == 1 and next(iter(lb[-1])) < 0:
            return False
    return True


def enumerate_signed(n: int, bound: int = DEFAULT_ENUM_BOUND, d_type: bool = False) -> Iterator[FiniteOrder]:
    """Every Z2-linear admissible order on ±{1..n} ∪ {0}."""
    if n > bound:
        raise BoundExceeded(f"n={n} exceeds the enumeration bound {bound}")
    g = GroundSet.signed(n)
    idx = list(range(1, n + 1))
    for r in range(n + 1):
        for central in combinations(idx, r):
            rest = [k for k in idx if k not in central]
            mid = frozenset([0, *central, *(-k for k in central)])
            for signs in product((1, -1), repeat=len(rest)):
                lower = [s * k for s, k in zip(signs, rest)]
                for part in _ordered_partitions(lower):
                    upper = tuple(frozenset(-x for x in b) for b in reversed(part))
                    o = FiniteOrder(g, part + (mid,) + upper)
                    if d_type and not d_canonical(o):
                        continue
                    yield o


def count_signed(n: int) -> int:
    """Independent count of Z2-linear admissible orders on ±{1..n} ∪ {0}."""
    from math import comb

    return sum(comb(n, r) * 2 ** (n - r) * ordered_bell(n - r) for r in range(n + 1))


# ---------------------------------------------------------------- side sets


def finite_line(o: FiniteOrder):
    """The blocks of a finite order as descriptor pieces."""
    return [Piece(SetDescriptor.finite(k for k in b if k > 0),
                  SetDescriptor.finite(-k for k in b if k < 0), BLOCK, 0 in b)
            for b in o.blocks]


def below_set(o, x: int) -> SetDescriptor:
    """Positive indices strictly below x."""
    if isinstance(o, FiniteOrder):
        return SetDescriptor.finite(k for k in range(1, o.n + 1) if k > 0 and o.less(k, x))
    idx, key = o.locate(x)
    out = EMPTY
    line = o.line()
    for p in line[:idx]:
        out = out | p.pos
    p = line[idx]
    if p.kind == ASC:
        out = out | (p.pos & SetDescriptor.finite(range(1, abs(x))))
    elif p.kind == DESC:
        out = out | (p.pos - SetDescriptor.finite(range(1, abs(x) + 1)))
    return out


def signed_sides(o):
    """Positive k with k ≺ 0, with k ≻ 0, and with k in [0]."""
    if isinstance(o, FiniteOrder):
        ks = range(1, o.n + 1)
        return (SetDescriptor.finite(k for k in ks if o.less(k, 0)),
                SetDescriptor.finite(k for k in ks if o.less(0, k)),
                SetDescriptor.finite(k for k in ks if o.same_class(k, 0)))
    below, above = EMPTY, EMPTY
    for p in o.pieces:
        below = below | p.pos
        above = above | p.neg
    return below, above, o.central


def max_lower_class(o):
    """The top class strictly below [0] as a set of signed indices, or None."""
    if isinstance(o, FiniteOrder):
        lb = o.lower_blocks()
        return frozenset(lb[-1]) if lb else None
    if not o.pieces:
        return None
    top = o.pieces[-1]
    if top.kind == BLOCK:
        return top.members()
    if top.kind == ASC and not top.is_finite():
        return None
    k = top.abs_set.maximum() if top.kind == ASC else top.abs_set.minimum()
    return frozenset([k if k in top.pos else -k])
