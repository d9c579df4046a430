"""The catalog of simple bounded weight modules and their local tests.

A module descriptor names one family with its parameters.  A finite
order of rank n always pairs with the rank-n truncation of the module,
so no separate finite-rank module type exists.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional

from .errors import NotInSupport, ParseError
from .orders import FiniteOrder, OrderDescriptor
from .roots import Root, parabolic_from_order
from .sets import EMPTY, SetDescriptor
from .weights import (
    HALF,
    WeightDescriptor,
    as_weight,
    lattice_member,
    sim_sl,
    sim_sp,
    to_fraction,
)

ALL_KILLED = "AllKilled"
NONE_KILLED = "NoneKilled"
PARTIAL = "Partial"


# ---------------------------------------------------------------- sequences


@dataclass(frozen=True)
class IntSequence:
    """A nondecreasing integer sequence: explicit prefix, then periodic increments."""
    prefix: tuple
    increments: tuple = (0,)

    def __post_init__(self):
        pre = tuple(int(x) for x in self.prefix)
        inc = tuple(int(x) for x in self.increments)
        if not pre:
            raise ParseError("sequence prefix must be nonempty")
        if not inc:
            raise ParseError("increment word must be nonempty")
        if pre[0] < 0 or any(b < a for a, b in zip(pre, pre[1:])) or any(x < 0 for x in inc):
            raise ParseError("S^infty parameter must be a nondecreasing sequence of nonnegative integers")
        object.__setattr__(self, "prefix", pre)
        object.__setattr__(self, "increments", inc)

    def diffs(self) -> WeightDescriptor:
        d = [self.prefix[0]] + [b - a for a, b in zip(self.prefix, self.prefix[1:])]
        return WeightDescriptor(tuple(d), self.increments)

    def __getitem__(self, i):
        d = self.diffs()
        return sum(d[k] for k in range(1, i + 1))

    def to_json(self):
        return {"prefix": list(self.prefix), "increments": list(self.increments)}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, list):
            return cls(tuple(obj), (0,))
        try:
            return cls(tuple(obj["prefix"]), tuple(obj.get("increments", [0])))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad sequence descriptor: {obj!r}") from exc


# ---------------------------------------------------------------- descriptors


@dataclass(frozen=True)
class ModuleDescriptor:
    family = "?"
    algebra = None
    integrable = True

    def check_type(self, typ):
        return self.algebra is None or self.algebra == typ

    def params_json(self):
        return {}

    def to_json(self):
        return {"family": self.family, **self.params_json()}

    def label(self):
        return self.family


@dataclass(frozen=True)
class NaturalV(ModuleDescriptor):
    family = "natural"
    algebra: str = "A"

    def params_json(self):
        return {"type": self.algebra}

    def label(self):
        return "V"


@dataclass(frozen=True)
class ConaturalVstar(ModuleDescriptor):
    family = "conatural"
    algebra: str = "A"

    def __post_init__(self):
        if self.algebra != "A":
            raise ParseError("V_* is only distinct from V in type A")

    def params_json(self):
        return {"type": self.algebra}

    def label(self):
        return "V*"


@dataclass(frozen=True)
class Wedge(ModuleDescriptor):
    algebra = "A"
    family = "wedge"
    A: SetDescriptor = None

    def __post_init__(self):
        if self.A is None or self.A.is_finite() or self.A.is_cofinite():
            raise ParseError("semi-infinite wedge needs A and its complement infinite")

    def params_json(self):
        return {"A": self.A.to_json()}

    def label(self):
        return f"Λ^∞/2_{self.A!r} V"


@dataclass(frozen=True)
class SymPartition(ModuleDescriptor):
    algebra = "A"
    family = "sym"
    mu: tuple = ()
    dual: bool = False

    def __post_init__(self):
        mu = tuple(int(x) for x in self.mu)
        if not mu or any(x <= 0 for x in mu) or any(b > a for a, b in zip(mu, mu[1:])):
            raise ParseError("S^mu needs a partition mu_1 >= ... >= mu_k > 0")
        object.__setattr__(self, "mu", mu)

    def params_json(self):
        return {"mu": list(self.mu), "dual": self.dual}

    def label(self):
        return f"S^{partition_text(self.mu)}V" + ("*" if self.dual else "")


@dataclass(frozen=True)
class SInfty(ModuleDescriptor):
    algebra = "A"
    family = "sinfty"
    a: IntSequence = None
    dual: bool = False
    integrable = False

    def params_json(self):
        return {"a": self.a.to_json(), "dual": self.dual}

    def label(self):
        return "S^∞V" + ("*" if self.dual else "")


@dataclass(frozen=True)
class SpinB(ModuleDescriptor):
    algebra = "B"
    family = "spinB"
    A: SetDescriptor = EMPTY

    def params_json(self):
        return {"A": self.A.to_json()}

    def label(self):
        return "S^B"


@dataclass(frozen=True)
class SpinD(ModuleDescriptor):
    algebra = "D"
    family = "spinD"
    A: SetDescriptor = EMPTY

    def params_json(self):
        return {"A": self.A.to_json()}

    def label(self):
        return "S^D"


@dataclass(frozen=True)
class Xsl(ModuleDescriptor):
    algebra = "A"
    family = "xsl"
    mu: WeightDescriptor = None
    integrable = False

    def params_json(self):
        return {"mu": self.mu.to_json()}

    def label(self):
        return f"Xsl{self.mu.render()}"


@dataclass(frozen=True)
class Xsp(ModuleDescriptor):
    algebra = "C"
    family = "xsp"
    mu: WeightDescriptor = None
    integrable = False

    def params_json(self):
        return {"mu": self.mu.to_json()}

    def label(self):
        return f"Xsp{self.mu.render()}"


@dataclass(frozen=True)
class Trivial(ModuleDescriptor):
    family = "trivial"
    algebra: Optional[str] = None

    def params_json(self):
        return {"type": self.algebra} if self.algebra else {}

    def label(self):
        return "C"


def partition_text(mu):
    return "(" + ",".join(str(x) for x in mu) + ")"


def xsl(mu) -> ModuleDescriptor:
    """Xsl(mu), with Xsl(0) and Xsl(-1) normalized to the trivial module."""
    mu = as_weight(mu)
    if mu == WeightDescriptor.constant(0) or mu == WeightDescriptor.constant(-1):
        return Trivial("A")
    return Xsl(mu)


def xsp(mu) -> ModuleDescriptor:
    return Xsp(as_weight(mu))


def sinfty_to_xsl(a: IntSequence, dual: bool = False) -> ModuleDescriptor:
    d = a.diffs()
    if dual:
        d = (-d).shift(-1)
    return xsl(d)


def effective(M: ModuleDescriptor) -> ModuleDescriptor:
    """The Xsl model of an S^infty module; other modules unchanged."""
    if isinstance(M, SInfty):
        return sinfty_to_xsl(M.a, M.dual)
    return M


# ---------------------------------------------------------------- JSON


def module_from_json(obj) -> ModuleDescriptor:
    if not isinstance(obj, dict) or "family" not in obj:
        raise ParseError(f"bad module descriptor: {obj!r}")
    fam = obj["family"]
    try:
        if fam == "natural":
            return NaturalV(obj.get("type", "A"))
        if fam == "conatural":
            return ConaturalVstar(obj.get("type", "A"))
        if fam == "wedge":
            return Wedge(SetDescriptor.from_json(obj["A"]))
        if fam == "sym":
            return SymPartition(tuple(obj["mu"]), bool(obj.get("dual", False)))
        if fam == "sinfty":
            return SInfty(IntSequence.from_json(obj["a"]), bool(obj.get("dual", False)))
        if fam == "spinB":
            return SpinB(SetDescriptor.from_json(obj["A"]))
        if fam == "spinD":
            return SpinD(SetDescriptor.from_json(obj["A"]))
        if fam == "xsl":
            return xsl(WeightDescriptor.from_json(obj["mu"]))
        if fam == "xsp":
            return xsp(WeightDescriptor.from_json(obj["mu"]))
        if fam == "trivial":
            return Trivial(obj.get("type"))
    except KeyError as exc:
        raise ParseError(f"module descriptor misses field {exc}") from exc
    raise ParseError(f"unknown family {fam!r}")


# ---------------------------------------------------------------- support


def _vec(lam, n=None) -> WeightDescriptor:
    if isinstance(lam, WeightDescriptor):
        if n is not None:
            return WeightDescriptor.finite(lam.upto(n))
        return lam
    return WeightDescriptor.finite(to_fraction(x) for x in lam)


def truncate_weight(mu: WeightDescriptor, n):
    return WeightDescriptor.finite(mu.upto(n))


def _values_in(lam: WeightDescriptor, allowed):
    return all(x in allowed for x in lam.prefix + lam.tail)


def _set_where(lam: WeightDescriptor, value) -> SetDescriptor:
    return SetDescriptor(tuple(x == value for x in lam.prefix), tuple(x == value for x in lam.tail))


def _finite_A(A: SetDescriptor, n):
    return SetDescriptor.finite(A.upto(n))


def wedge_degree(A: SetDescriptor, n):
    """Exterior degree at rank n: the number of elements of A in 1..n."""
    return len(A.upto(n))


def dominated(lam_sorted, mu):
    """Dominance lam <= mu for partitions of the same size."""
    if sum(lam_sorted) != sum(mu):
        return False
    a = b = 0
    for i in range(max(len(lam_sorted), len(mu))):
        a += lam_sorted[i] if i < len(lam_sorted) else 0
        b += mu[i] if i < len(mu) else 0
        if a > b:
            return False
    return True


def support_witness(M: ModuleDescriptor, lam, n=None):
    """The family parameter naming lam, or None when lam is not a weight."""
    lam = _vec(lam, n)
    M = effective(M)
    if isinstance(M, Trivial):
        return () if lam == WeightDescriptor.constant(0) else None
    if isinstance(M, (NaturalV, ConaturalVstar)):
        if not lam.is_finite_support():
            return None
        nz = [(i, v) for i, v in enumerate(lam.prefix, start=1) if v != 0]
        sign = -1 if isinstance(M, ConaturalVstar) else 1
        if not nz:
            return 0 if (isinstance(M, NaturalV) and M.algebra == "B") else None
        if len(nz) != 1 or n is not None and nz[0][0] > n:
            return None
        i, v = nz[0]
        if v == sign:
            return sign * i if isinstance(M, ConaturalVstar) else i
        if M.algebra in ("B", "C", "D") and v == -1:
            return -i
        return None
    if isinstance(M, Wedge):
        if not _values_in(lam, (0, 1)):
            return None
        B = _set_where(lam, 1)
        if n is not None:
            return B if len(B.upto(n)) == wedge_degree(M.A, n) and B.issubset(SetDescriptor.finite(range(1, n + 1))) else None
        return B if B.finite_difference(M.A) else None
    if isinstance(M, SymPartition):
        sign = -1 if M.dual else 1
        if not lam.is_finite_support() or not lam.is_integral():
            return None
        vals = [int(sign * x) for x in lam.prefix]
        if any(v < 0 for v in vals):
            return None
        if n is not None and len(M.mu) > n:
            return None
        srt = sorted((v for v in vals if v), reverse=True)
        return tuple(vals) if dominated(srt, list(M.mu)) else None
    if isinstance(M, (SpinB, SpinD)):
        halves = (Fraction(1, 2), Fraction(-1, 2))
        if n is not None:
            # a rank-n weight only has n coordinates
            coords = lam.upto(n)
            if any(x not in halves for x in coords):
                return None
            Ap = SetDescriptor.finite(i for i, x in enumerate(coords, start=1) if x > 0)
        else:
            if not _values_in(lam, halves):
                return None
            Ap = _set_where(lam, Fraction(1, 2))
        A = M.A if n is None else _finite_A(M.A, n)
        diff = Ap ^ A
        if not diff.is_finite():
            return None
        if isinstance(M, SpinD) and diff.size() % 2:
            return None
        return Ap
    if isinstance(M, Xsl):
        mu = M.mu if n is None else truncate_weight(M.mu, n)
        return lam if sim_sl(lam, mu) else None
    if isinstance(M, Xsp):
        mu = M.mu if n is None else truncate_weight(M.mu, n)
        e = lam - HALF
        if n is not None:
            e = WeightDescriptor.finite(e.upto(n))
        return e if sim_sp(e, mu) else None
    raise TypeError(f"unknown module {M!r}")


def support_contains(M: ModuleDescriptor, lam, n=None) -> bool:
    return support_witness(M, lam, n) is not None


# ---------------------------------------------------------------- root actions


def _signed_val(v, s):
    """Coordinate of eps_s in a weight, with eps_{-k} = -eps_k."""
    if s == 0:
        return Fraction(0)
    return v[s] if s > 0 else -v[-s]


def _nu(e, s):
    """Signed exponent: nu_{+k} = e_k, nu_{-k} = -1 - e_k."""
    return e[s] if s > 0 else -1 - e[-s]


def natural_kills(x, r: Root):
    """Whether the root vector of r annihilates e_x in the natural module."""
    return x not in (r.t, -r.s)


def xsp_kills(e: WeightDescriptor, r: Root):
    s, t = r.s, r.t
    if t == -s:
        return _nu(e, s) in (-1, -2)
    return _nu(e, s) == -1 or _nu(e, -t) == -1


def spinor_kills(Ap, r: Root):
    """Ap: the set of indices with coordinate +1/2."""
    kind = r.form()
    name = kind[0]
    if name == "Ei":
        _, sign, k = kind
        return (k in Ap) if sign > 0 else (k not in Ap)
    _, i, j = kind
    if name == "Ei_minus_Ej":
        return not (i not in Ap and j in Ap)
    if name == "Ei_plus_Ej":
        return not (i not in Ap and j not in Ap)
    if name == "Neg_Ei_plus_Ej":
        return not (i in Ap and j in Ap)
    raise ValueError(f"{r!r} is not a root of type B or D")


def is_root_singular(M: ModuleDescriptor, lam, alpha: Root, n=None):
    """True iff the alpha root vector kills the lam weight space.

    For S^mu V the answer is one of AllKilled / NoneKilled / Partial.
    """
    lam = _vec(lam, n)
    w = support_witness(M, lam, n)
    if w is None:
        raise NotInSupport(f"{lam!r} is not a weight of {M.label()}")
    M = effective(M)
    if isinstance(M, Trivial):
        return True
    if isinstance(M, NaturalV):
        return natural_kills(w, alpha)
    if isinstance(M, ConaturalVstar):
        # e*_x is moved only by eps_x - eps_t
        return alpha.s != -w
    if isinstance(M, Wedge):
        i, j = alpha.s, alpha.t
        return not (i not in w and j in w)
    if isinstance(M, (SpinB, SpinD)):
        return spinor_kills(w, alpha)
    if isinstance(M, Xsl):
        i, j = alpha.s, alpha.t
        return lam[j] == 0 or lam[i] == -1
    if isinstance(M, Xsp):
        return xsp_kills(w, alpha)
    if isinstance(M, SymPartition):
        return _sym_root_singular(M, lam, alpha, n)
    raise TypeError(f"unknown module {M!r}")


def _sym_root_singular(M, lam, alpha, n):
    target = lam + WeightDescriptor.from_sets(
        [(SetDescriptor.finite([k]), c) for k, c in alpha.vector().items()], 0)
    if not support_contains(M, target, n):
        return ALL_KILLED
    vals = sorted((abs(x) for x in lam.prefix if x), reverse=True)
    if tuple(vals) == M.mu:
        # extremal weights span a line; the alpha-string through it is not a dead end
        return NONE_KILLED
    from .oracle import weight_space_action

    rank = n or max(len(lam.prefix), max(alpha.indices()), len(M.mu))
    return weight_space_action(M, rank, lam, alpha)


def exact_horizon(*objs):
    """An index N such that all case splits of pairs of indices occur below N."""
    n0, per = 1, 1
    for ob in objs:
        for s in _sets_of(ob):
            n0 = max(n0, len(s.prefix))
            per = lcm(per, len(s.pattern))
        for w in _weights_of(ob):
            n0 = max(n0, len(w.prefix))
            per = lcm(per, len(w.tail))
    return n0 + 2 * per + 1


def _sets_of(ob):
    if isinstance(ob, SetDescriptor):
        yield ob
    elif isinstance(ob, OrderDescriptor):
        yield ob.central
        for p in ob.pieces:
            yield p.pos
            yield p.neg
    elif isinstance(ob, (Wedge, SpinB, SpinD)):
        yield ob.A


def _weights_of(ob):
    if isinstance(ob, WeightDescriptor):
        yield ob
    elif isinstance(ob, (Xsl, Xsp)):
        yield ob.mu
    elif isinstance(ob, SInfty):
        yield ob.a.diffs()


def is_u_singular(M: ModuleDescriptor, lam, o) -> bool:
    """Every root vector of the nilradical kills the lam weight space."""
    if isinstance(o, FiniteOrder):
        n = o.n
        if not support_contains(M, lam, n):
            raise NotInSupport(f"{lam!r} is not a weight of the rank-{n} truncation")
        if isinstance(M, SymPartition):
            from .oracle import realize, singular_multiplicity

            return singular_multiplicity(realize(M, n), o, _vec(lam, n)) > 0
        P = parabolic_from_order(o, M.algebra or ("A" if not o.signed else "B"))
        return all(is_root_singular(M, lam, r, n) is True for r in P.plus)
    lam = _vec(lam)
    if not support_contains(M, lam):
        raise NotInSupport(f"{lam!r} is not a weight of {M.label()}")
    N = exact_horizon(o, M, lam)
    if isinstance(M, SymPartition):
        return _sym_descriptor_singular(M, lam, o, N)
    typ = M.algebra or ("A" if not o.signed else "B")
    P = parabolic_from_order(o, typ)
    return all(is_root_singular(M, lam, r) is True for r in P.plus.upto(N))


def _sym_descriptor_singular(M, lam, o, N):
    """Reduce to a finite index set: only E_ij with j in the support act
    nonzero on the lam space, and indices outside the support are
    interchangeable, so one representative i ≺ j per j suffices."""
    supp = [k for k in range(1, N + 1) if lam[k] != 0]
    # dual weights are nonpositive, so the acting roots have i in the support
    rel = (lambda out, s: o.less(s, out)) if M.dual else (lambda out, s: o.less(out, s))
    outside = [k for k in range(1, N + 1) if k not in supp]
    keep = set(supp)
    for j in supp:
        rep = next((i for i in outside if rel(i, j)), None)
        if rep is not None:
            keep.add(rep)
    for k in outside:
        if len(keep) >= max(len(M.mu), 2):
            break
        keep.add(k)
    E = sorted(keep)
    pos = {k: idx + 1 for idx, k in enumerate(E)}
    classes = []
    for k in sorted(E, key=lambda x: sum(o.less(y, x) for y in E)):
        for c in classes:
            if o.same_class(c[0], k):
                c.append(k)
                break
        else:
            classes.append([k])
    from .orders import GroundSet, make_finite_order

    fo = make_finite_order(GroundSet.positive(len(E)), [[pos[k] for k in c] for c in classes])
    return is_u_singular(M, WeightDescriptor.finite([lam[k] for k in E]), fo)
