"""Eventually periodic subsets of the positive integers.

A set is stored as explicit membership bits for 1..N0 followed by a
periodic word repeated forever.  AllIn is the word (1,), AllOut is (0,).
The representation is canonical, so structural equality is set equality.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import count
from math import lcm
from typing import Iterable, Iterator

from .errors import ParseError


def _min_period(word):
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and word == word[:p] * (n // p):
            return word[:p]
    return word


def _canon(prefix, pattern):
    pattern = _min_period(tuple(pattern))
    prefix = list(prefix)
    # absorb trailing prefix bits that agree with the rotated tail
    while prefix and prefix[-1] == pattern[-1]:
        prefix.pop()
        pattern = (pattern[-1],) + pattern[:-1]
    return tuple(prefix), pattern


@dataclass(frozen=True)
class SetDescriptor:
    prefix: tuple
    pattern: tuple

    def __post_init__(self):
        if not self.pattern:
            raise ParseError("periodic pattern must be nonempty")
        p, q = _canon(tuple(bool(b) for b in self.prefix),
                      tuple(bool(b) for b in self.pattern))
        object.__setattr__(self, "prefix", p)
        object.__setattr__(self, "pattern", q)

    # constructors
    @classmethod
    def all_in(cls):
        return cls((), (True,))

    @classmethod
    def all_out(cls):
        return cls((), (False,))

    @classmethod
    def periodic(cls, bits, prefix=()):
        return cls(tuple(prefix), tuple(bits))

    @classmethod
    def finite(cls, elements: Iterable[int]):
        el = set(elements)
        if any(k < 1 for k in el):
            raise ParseError("set elements must be positive integers")
        top = max(el, default=0)
        return cls(tuple(k in el for k in range(1, top + 1)), (False,))

    @classmethod
    def cofinite(cls, missing: Iterable[int]):
        return cls.finite(missing).complement()

    @classmethod
    def from_predicate(cls, pred, n0, period_bits):
        return cls(tuple(pred(k) for k in range(1, n0 + 1)), tuple(period_bits))

    # membership
    def __contains__(self, k):
        if not isinstance(k, int) or k < 1:
            return False
        if k <= len(self.prefix):
            return self.prefix[k - 1]
        return self.pattern[(k - 1 - len(self.prefix)) % len(self.pattern)]

    def upto(self, n):
        return frozenset(k for k in range(1, n + 1) if k in self)

    def iter_elements(self) -> Iterator[int]:
        """Elements in increasing order (infinite generator if infinite)."""
        if self.is_finite():
            yield from sorted(self.upto(len(self.prefix)))
            return
        for k in count(1):
            if k in self:
                yield k

    def first(self, m):
        out = []
        for k in self.iter_elements():
            if len(out) == m:
                break
            out.append(k)
        return out

    # shape
    def is_empty(self):
        return not any(self.prefix) and not any(self.pattern)

    def is_finite(self):
        return not any(self.pattern)

    def is_cofinite(self):
        return all(self.pattern)

    def is_all(self):
        return not self.prefix and self.pattern == (True,)

    def size(self):
        if not self.is_finite():
            return None
        return sum(self.prefix)

    def elements(self):
        if not self.is_finite():
            raise ValueError("infinite set has no element list")
        return sorted(self.upto(len(self.prefix)))

    def minimum(self):
        if self.is_empty():
            return None
        return next(self.iter_elements())

    def maximum(self):
        if not self.is_finite() or self.is_empty():
            return None
        return max(self.upto(len(self.prefix)))

    def horizon(self):
        """An index beyond which membership is purely periodic from a period start."""
        return len(self.prefix) + len(self.pattern)

    # boolean algebra
    def _aligned(self, other):
        n0 = max(len(self.prefix), len(other.prefix))
        per = lcm(len(self.pattern), len(other.pattern))
        a = [k in self for k in range(1, n0 + per + 1)]
        b = [k in other for k in range(1, n0 + per + 1)]
        return n0, a, b

    def _combine(self, other, op):
        n0, a, b = self._aligned(other)
        bits = [op(x, y) for x, y in zip(a, b)]
        return SetDescriptor(tuple(bits[:n0]), tuple(bits[n0:]))

    def union(self, other):
        return self._combine(other, lambda x, y: x or y)

    def intersection(self, other):
        return self._combine(other, lambda x, y: x and y)

    def difference(self, other):
        return self._combine(other, lambda x, y: x and not y)

    def symmetric_difference(self, other):
        return self._combine(other, lambda x, y: x != y)

    __or__ = union
    __and__ = intersection
    __sub__ = difference
    __xor__ = symmetric_difference

    def complement(self):
        return SetDescriptor(tuple(not b for b in self.prefix),
                             tuple(not b for b in self.pattern))

    def issubset(self, other):
        return (self - other).is_empty()

    def isdisjoint(self, other):
        return (self & other).is_empty()

    def finite_difference(self, other):
        """True iff the symmetric difference is finite."""
        return (self ^ other).is_finite()

    def is_semi_infinite(self):
        return not self.is_finite() and not self.is_cofinite()

    # serialization
    def to_json(self):
        if self.pattern == (True,):
            tail = "all_in"
        elif self.pattern == (False,):
            tail = "all_out"
        else:
            tail = {"periodic": [int(b) for b in self.pattern]}
        return {"prefix": [int(b) for b in self.prefix], "tail": tail}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, list):
            return cls.finite(int(k) for k in obj)
        if not isinstance(obj, dict):
            raise ParseError(f"bad set descriptor: {obj!r}")
        if "elements" in obj:
            base = cls.finite(int(k) for k in obj["elements"])
            if obj.get("tail", "all_out") == "all_out":
                return base
            raise ParseError("'elements' form only allows an all_out tail")
        prefix = obj.get("prefix", [])
        if not all(b in (0, 1, True, False) for b in prefix):
            raise ParseError("prefix must be a list of membership bits")
        tail = obj.get("tail", "all_out")
        if tail == "all_in":
            pattern = (True,)
        elif tail == "all_out":
            pattern = (False,)
        elif isinstance(tail, dict) and "periodic" in tail:
            pattern = tuple(bool(b) for b in tail["periodic"])
            if not pattern:
                raise ParseError("periodic pattern must be nonempty")
        else:
            raise ParseError(f"bad tail rule: {tail!r}")
        return cls(tuple(bool(b) for b in prefix), pattern)

    def __repr__(self):
        if self.is_finite():
            return "{" + ",".join(map(str, self.elements())) + "}"
        shown = ",".join(map(str, self.first(4)))
        return "{" + shown + ",...}"


ALL = SetDescriptor.all_in()
EMPTY = SetDescriptor.all_out()
ODDS = SetDescriptor.periodic((1, 0))
EVENS = SetDescriptor.periodic((0, 1))
