"""Rational weight sequences, integrality profiles, and the named weights.

A WeightDescriptor is a finite prefix of exact rationals followed by a
periodic word of rationals (a constant tail is a word of length one).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import DomainViolation, IncompatibleArguments, ParseError
from .sets import EMPTY, SetDescriptor


class _Divergent:
    """Marker for an infinite sum with a nonzero summand tail."""

    def __repr__(self):
        return "DIVERGENT"

    def __bool__(self):
        return False


DIVERGENT = _Divergent()


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ParseError("booleans are not weights")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {x!r}") from exc
    if isinstance(x, float):
        raise ParseError("floating point weights are not accepted; use 'p/q' strings")
    raise ParseError(f"bad rational {x!r}")


def classify(v) -> str:
    """'neg' for Z_{<0}, 'nonneg' for Z_{>=0}, 'nonint' otherwise."""
    v = to_fraction(v)
    if v.denominator != 1:
        return "nonint"
    return "neg" if v < 0 else "nonneg"


def _min_period(word):
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and word == word[:p] * (n // p):
            return word[:p]
    return word


@dataclass(frozen=True)
class IntegralityProfile:
    F_minus: SetDescriptor
    I: SetDescriptor
    F_plus: SetDescriptor

    @property
    def integral(self):
        return self.F_minus | self.F_plus


@dataclass(frozen=True)
class WeightDescriptor:
    prefix: tuple
    tail: tuple = (Fraction(0),)

    def __post_init__(self):
        tail = tuple(to_fraction(x) for x in self.tail)
        if not tail:
            raise ParseError("weight tail must be nonempty")
        tail = _min_period(tail)
        prefix = [to_fraction(x) for x in self.prefix]
        while prefix and prefix[-1] == tail[-1]:
            prefix.pop()
            tail = (tail[-1],) + tail[:-1]
        object.__setattr__(self, "prefix", tuple(prefix))
        object.__setattr__(self, "tail", tail)

    # constructors
    @classmethod
    def constant(cls, c):
        return cls((), (to_fraction(c),))

    @classmethod
    def finite(cls, values: Iterable):
        return cls(tuple(values), (Fraction(0),))

    @classmethod
    def unit(cls, i, value=1):
        return cls(tuple([0] * (i - 1) + [value]))

    @classmethod
    def from_sets(cls, assignments, default=0):
        """Value v on set S for each (S, v); sets are assumed disjoint."""
        sets = [s for s, _ in assignments]
        n0 = max((len(s.prefix) for s in sets), default=0)
        per = 1
        for s in sets:
            per = lcm(per, len(s.pattern))

        def val(k):
            for s, v in assignments:
                if k in s:
                    return to_fraction(v)
            return to_fraction(default)

        vals = [val(k) for k in range(1, n0 + per + 1)]
        return cls(tuple(vals[:n0]), tuple(vals[n0:]))

    # access
    def __getitem__(self, i):
        if i < 1:
            raise IndexError("weights are indexed from 1")
        if i <= len(self.prefix):
            return self.prefix[i - 1]
        return self.tail[(i - 1 - len(self.prefix)) % len(self.tail)]

    def upto(self, n):
        return tuple(self[i] for i in range(1, n + 1))

    def horizon(self):
        return len(self.prefix) + len(self.tail)

    def _aligned(self, other):
        n0 = max(len(self.prefix), len(other.prefix))
        per = lcm(len(self.tail), len(other.tail))
        return n0, per

    def _combine(self, other, op):
        n0, per = self._aligned(other)
        vals = [op(self[k], other[k]) for k in range(1, n0 + per + 1)]
        return WeightDescriptor(tuple(vals[:n0]), tuple(vals[n0:]))

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __neg__(self):
        return WeightDescriptor(tuple(-x for x in self.prefix), tuple(-x for x in self.tail))

    def shift(self, c):
        c = to_fraction(c)
        return WeightDescriptor(tuple(x + c for x in self.prefix), tuple(x + c for x in self.tail))

    def with_value(self, i, v):
        vals = list(self.upto(max(i, len(self.prefix))))
        vals[i - 1] = to_fraction(v)
        # keep the tail phase: extend prefix to a multiple of the period past i
        n0 = len(vals)
        per = len(self.tail)
        ext = [self[k] for k in range(n0 + 1, n0 + per + 1)]
        return WeightDescriptor(tuple(vals), tuple(ext))

    def is_finite_support(self):
        return all(x == 0 for x in self.tail)

    def support(self):
        if not self.is_finite_support():
            raise ValueError("infinite support")
        return [i for i, x in enumerate(self.prefix, start=1) if x != 0]

    def total(self):
        if not self.is_finite_support():
            raise ValueError("infinite support has no coordinate sum")
        return sum(self.prefix, Fraction(0))

    def is_integral(self):
        return all(x.denominator == 1 for x in self.prefix + self.tail)

    def profile(self, n=None) -> IntegralityProfile:
        bits_p = [classify(x) for x in self.prefix]
        bits_t = [classify(x) for x in self.tail]

        def part(tag):
            s = SetDescriptor(tuple(b == tag for b in bits_p), tuple(b == tag for b in bits_t))
            return s & SetDescriptor.finite(range(1, n + 1)) if n is not None else s

        return IntegralityProfile(part("neg"), part("nonint"), part("nonneg"))

    # sums over index sets
    def sum_over(self, Z: SetDescriptor, offset=0, n=None):
        """Sum of (mu_i + offset) over i in Z (and i <= n if given)."""
        offset = to_fraction(offset)
        if n is not None:
            return sum((self[i] + offset for i in Z.upto(n)), Fraction(0))
        n0 = max(len(self.prefix), len(Z.prefix))
        per = lcm(len(self.tail), len(Z.pattern))
        for k in range(n0 + 1, n0 + per + 1):
            if k in Z and self[k] + offset != 0:
                return DIVERGENT
        return sum((self[k] + offset for k in range(1, n0 + 1) if k in Z), Fraction(0))

    # serialization
    def to_json(self):
        out = {"prefix": [_frac_str(x) for x in self.prefix]}
        if len(self.tail) == 1:
            out["tail"] = _frac_str(self.tail[0])
        else:
            out["tail"] = {"periodic": [_frac_str(x) for x in self.tail]}
        return out

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, list):
            return cls.finite(to_fraction(x) for x in obj)
        if not isinstance(obj, dict) or "prefix" not in obj:
            raise ParseError(f"bad weight descriptor: {obj!r}")
        tail = obj.get("tail", "0")
        if isinstance(tail, dict):
            if "periodic" not in tail:
                raise ParseError(f"bad weight tail: {tail!r}")
            word = tuple(to_fraction(x) for x in tail["periodic"])
        else:
            word = (to_fraction(tail),)
        return cls(tuple(to_fraction(x) for x in obj["prefix"]), word)

    def render(self, shown=None):
        shown = shown or max(self.horizon(), len(self.prefix) + 2 * len(self.tail))
        vals = ",".join(_frac_str(x) for x in self.upto(shown))
        if self.is_finite_support() and shown >= len(self.prefix) and shown > 0:
            return f"({vals},0,…)"
        return f"({vals},…)"

    def __repr__(self):
        return "W" + self.render()


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


ZERO = WeightDescriptor.constant(0)
MINUS_ONE = WeightDescriptor.constant(-1)
ONE = WeightDescriptor.constant(1)
HALF = WeightDescriptor.constant(Fraction(1, 2))


def as_weight(x) -> WeightDescriptor:
    if isinstance(x, WeightDescriptor):
        return x
    return WeightDescriptor.finite(x)


# ---------------------------------------------------------------- lattices


def lattice_member(kind: str, v) -> bool:
    """Membership in the root lattice of type A, B, C or D."""
    v = as_weight(v)
    if not v.is_finite_support() or not v.is_integral():
        return False
    total = v.total()
    if kind == "A":
        return total == 0
    if kind == "B":
        return True
    if kind in ("C", "D"):
        return total % 2 == 0
    raise ValueError(f"unknown type {kind!r}")


def integrality_profile(mu) -> IntegralityProfile:
    return as_weight(mu).profile()


def _same_plus(lam, mu, n=None):
    if n is not None:
        return lam.profile(n).F_plus == mu.profile(n).F_plus
    return lam.profile().F_plus == mu.profile().F_plus


def sim_sl(lam, mu) -> bool:
    lam, mu = as_weight(lam), as_weight(mu)
    return lattice_member("A", lam - mu) and _same_plus(lam, mu)


def sim_sp(lam, mu) -> bool:
    lam, mu = as_weight(lam), as_weight(mu)
    return lattice_member("C", lam - mu) and _same_plus(lam, mu)


def tail_equal(gamma, eta) -> bool:
    return (as_weight(gamma) - as_weight(eta)).is_finite_support()


def tail_equal_on(mu, Z: SetDescriptor, c) -> bool:
    """T(mu_Z) = T(c·1): mu_i = c for all but finitely many i in Z."""
    diff = as_weight(mu).shift(-to_fraction(c))
    n0 = max(len(diff.prefix), len(Z.prefix))
    per = lcm(len(diff.tail), len(Z.pattern))
    return all(diff[k] == 0 for k in range(n0 + 1, n0 + per + 1) if k in Z)


def _check_domain(mu, Z, tag, n=None):
    prof = mu.profile(n)
    bad = Z - (prof.F_minus if tag == "neg" else prof.F_plus)
    if n is not None:
        bad = bad & SetDescriptor.finite(range(1, n + 1))
    if not bad.is_empty():
        raise DomainViolation(f"coordinates {bad!r} are outside the required integrality class")


def s_minus(mu, Z: SetDescriptor):
    """sum over Z of (mu_i + 1); needs mu_Z negative integers."""
    mu = as_weight(mu)
    _check_domain(mu, Z, "neg")
    return mu.sum_over(Z, 1)


def s_plus(mu, Z: SetDescriptor):
    mu = as_weight(mu)
    _check_domain(mu, Z, "nonneg")
    return mu.sum_over(Z, 0)


def s_minus_n(mu, Z: SetDescriptor, n: int):
    mu = as_weight(mu)
    _check_domain(mu, Z, "neg", n)
    return mu.sum_over(Z, 1, n)


def s_plus_n(mu, Z: SetDescriptor, n: int):
    mu = as_weight(mu)
    _check_domain(mu, Z, "nonneg", n)
    return mu.sum_over(Z, 0, n)


def s_total(mu, n=None):
    """s^+(mu_{F+}) + s^-(mu_{F-}), or DIVERGENT."""
    mu = as_weight(mu)
    prof = mu.profile(n)
    a = mu.sum_over(prof.F_minus, 1, n)
    b = mu.sum_over(prof.F_plus, 0, n)
    if a is DIVERGENT or b is DIVERGENT:
        return DIVERGENT
    return a + b


# ------------------------------------------------------------ named weights


def eps_point(order, i_prime: int, c) -> WeightDescriptor:
    """-1 below i', c at i', 0 above (linear order)."""
    from .orders import below_set, is_linear

    if not is_linear(order):
        raise IncompatibleArguments("eps_point needs a linear order")
    below = below_set(order, i_prime)
    return WeightDescriptor.from_sets([(below, -1), (SetDescriptor.finite([i_prime]), c)], 0)


def eps_set(order, J: SetDescriptor) -> WeightDescriptor:
    """-1 on J, 0 elsewhere; J must be compatible with the order."""
    from .orders import compatible_with_set

    if not compatible_with_set(order, J):
        raise IncompatibleArguments("J is not compatible with the order")
    return WeightDescriptor.from_sets([(J, -1)], 0)


def omega_A(A: SetDescriptor) -> WeightDescriptor:
    return WeightDescriptor.from_sets([(A, Fraction(1, 2))], Fraction(-1, 2))


def omega_order(order) -> WeightDescriptor:
    """-1 on i ≺ 0, 0 on i ≻ 0 (needs [0] = {0})."""
    from .orders import signed_sides

    below, above, central = signed_sides(order)
    if not central.is_empty():
        raise IncompatibleArguments("omega(≺) needs the central class to be {0}")
    return WeightDescriptor.from_sets([(below, -1), (above, 0)], 0)


def omega_R(order, central_values: WeightDescriptor = ZERO) -> WeightDescriptor:
    """The element of R(≺) equal to central_values on [0] ∩ Z_{>0}."""
    from .orders import signed_sides

    below, above, central = signed_sides(order)
    base = WeightDescriptor.from_sets([(below, -1), (above, 0)], 0)
    mask = WeightDescriptor.from_sets([(central, 1)], 0)
    n0, per = base._aligned(central_values)
    n0 = max(n0, len(mask.prefix))
    per = lcm(per, len(mask.tail))
    vals = [central_values[k] if mask[k] else base[k] for k in range(1, n0 + per + 1)]
    return WeightDescriptor(tuple(vals[:n0]), tuple(vals[n0:]))


def omega_plus(order) -> WeightDescriptor:
    from .orders import max_lower_class

    if max_lower_class(order) is None:
        raise IncompatibleArguments("no maximal class below [0]")
    return omega_R(order, ZERO)


def omega_minus(order) -> WeightDescriptor:
    from .orders import max_lower_class

    if max_lower_class(order) is None:
        raise IncompatibleArguments("no minimal class above [0]")
    return omega_R(order, MINUS_ONE)


def mu_of_order(partition: Sequence[int], left_end: Sequence[int]) -> WeightDescriptor:
    """sum_j mu_j eps_{i_j} for the first k elements i_1 ≺' i_2 ≺' ... of a linear order."""
    k = len(partition)
    if len(left_end) < k:
        raise IncompatibleArguments("left end shorter than the partition")
    top = max(left_end[:k])
    vals = [0] * top
    for part, idx in zip(partition, left_end):
        vals[idx - 1] = part
    return WeightDescriptor.finite(vals)


def named_weight(kind: str, *args) -> WeightDescriptor:
    table = {
        "eps_point": eps_point,
        "eps_set": eps_set,
        "omega_order": omega_order,
        "omega_A": omega_A,
        "omega_plus": omega_plus,
        "omega_minus": omega_minus,
        "mu_of_order": mu_of_order,
    }
    if kind not in table:
        raise IncompatibleArguments(f"unknown named weight {kind!r}")
    return table[kind](*args)
