"""Brute-force ground truth at finite rank.

Every family gets an explicit realization: a basis (windowed for the
infinite-dimensional Xsl and Xsp truncations), a weight map and the
action of root vectors.  Singular vectors are then found by exact
kernel computations, independently of the closed-form criteria.
"""
from __future__ import annotations

import os
import random
from collections import Counter
from fractions import Fraction
from itertools import combinations, permutations, product
from math import prod

from .errors import (
    BracketMismatch,
    NotInSupport,
    PartitionTooLong,
    RankBound,
    WindowTooSmall,
)
from .families import (
    ALL_KILLED,
    NONE_KILLED,
    PARTIAL,
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
    support_contains,
    wedge_degree,
)
from .linalg import Echelon, axpy, combine, kernel, rank
from .orders import FiniteOrder
from .roots import Root, parabolic_from_order, roots_of
from .weights import classify, to_fraction

DEFAULT_WINDOW = 6
DEFAULT_RANK_BOUND = 6
HALF = Fraction(1, 2)


def rank_bound():
    return int(os.environ.get("WEIGHT_ALIGN_RANK_BOUND", DEFAULT_RANK_BOUND))


# ---------------------------------------------------------------- realizations


class Realization:
    """Basis keys, weights and root-vector actions of a rank-n module.

    Vectors are sparse dicts over coordinates.  For multiplicity-one
    families a coordinate is a basis key; S^mu V uses tensor words.
    """

    multiplicity_one = True

    def __init__(self, family, typ, n):
        self.family, self.typ, self.n = family, typ, n
        self.roots = sorted(roots_of(typ, n, range(1, n + 1)))

    # subclasses provide keys(), weight(key), act(root, key) -> dict
    def act_vec(self, r, v):
        out = {}
        for k, c in v.items():
            axpy(out, c, self.act(r, k))
        return out

    def in_window(self, key):
        return True

    def vector(self, key):
        return {key: Fraction(1)}

    def weight_spaces(self):
        """weight -> list of basis vectors."""
        out = {}
        for k in self.keys():
            out.setdefault(self.weight(k), []).append(self.vector(k))
        return out

    def weight_of_vector(self, v):
        return self.weight(next(iter(v)))

    def dimension(self):
        return sum(len(b) for b in self.weight_spaces().values())


class TrivialRealization(Realization):
    def __init__(self, typ, n):
        super().__init__("trivial", typ, n)

    def keys(self):
        return [()]

    def weight(self, key):
        return tuple(Fraction(0) for _ in range(self.n))

    def act(self, r, key):
        return {}


def _eps(n, items):
    w = [Fraction(0)] * n
    for idx, c in items:
        w[idx - 1] += c
    return tuple(w)


class NaturalRealization(Realization):
    def __init__(self, typ, n, dual=False):
        super().__init__("conatural" if dual else "natural", typ, n)
        self.dual = dual

    def keys(self):
        if self.typ == "A":
            return list(range(1, self.n + 1))
        ks = [x for x in range(-self.n, self.n + 1) if x]
        return ks + [0] if self.typ == "B" else ks

    def weight(self, x):
        sign = -1 if self.dual else 1
        return _eps(self.n, [(abs(x), sign * (1 if x > 0 else -1))] if x else [])

    def act(self, r, x):
        s, t = r.s, r.t
        if self.dual:
            # E_st e*_x = -delta_{x,s} e*_t
            return {t: Fraction(-1)} if x == s else {}
        out = {}
        if x == t:
            out[s] = Fraction(1)
        if x == -s and t != -s and self.typ != "A":
            axpy(out, Fraction(-1), {-t: Fraction(1)})
        return out


def _fermion_sign(S, k):
    return -1 if sum(1 for x in S if x < k) % 2 else 1


def _wedge_in(S, k):
    """e_k ∧ (e_S) as (sign, S ∪ {k}), or None."""
    if k in S:
        return None
    return _fermion_sign(S, k), S | {k}


def _contract(S, k):
    if k not in S:
        return None
    return _fermion_sign(S, k), S - {k}


def _chain(S, ops):
    sign = 1
    for op, k in reversed(ops):
        res = op(S, k)
        if res is None:
            return None
        c, S = res
        sign *= c
    return sign, S


class ExteriorRealization(Realization):
    """Lambda^k of the natural gl(n)-module; keys are k-subsets."""

    def __init__(self, n, k):
        super().__init__("wedge", "A", n)
        self.k = k

    def keys(self):
        return [frozenset(c) for c in combinations(range(1, self.n + 1), self.k)]

    def weight(self, S):
        return _eps(self.n, [(i, 1) for i in S])

    def act(self, r, S):
        res = _chain(S, [(_wedge_in, r.s), (_contract, r.t)])
        if res is None:
            return {}
        sign, T = res
        return {frozenset(T): Fraction(sign)}


class SpinorRealization(Realization):
    """Subsets S of 1..n in a Clifford module: weight 1/2 on S, -1/2 off S."""

    def __init__(self, typ, n, parity=None):
        super().__init__("spin" + typ, typ, n)
        self.parity = parity

    def keys(self):
        out = []
        for r in range(self.n + 1):
            if self.parity is not None and r % 2 != self.parity:
                continue
            out.extend(frozenset(c) for c in combinations(range(1, self.n + 1), r))
        return out

    def weight(self, S):
        return tuple(HALF if i in S else -HALF for i in range(1, self.n + 1))

    def act(self, r, S):
        name, a, b = r.form()
        if name == "Ei":
            ops = [(_wedge_in, b)] if a > 0 else [(_contract, b)]
        elif name == "Ei_minus_Ej":
            ops = [(_wedge_in, a), (_contract, b)]
        elif name == "Ei_plus_Ej":
            ops = [(_wedge_in, a), (_wedge_in, b)]
        elif name == "Neg_Ei_plus_Ej":
            ops = [(_contract, b), (_contract, a)]
        else:
            raise ValueError(f"{r!r} does not act on spinors")
        res = _chain(S, ops)
        if res is None:
            return {}
        sign, T = res
        return {frozenset(T): Fraction(sign)}


def _plus_set(vals):
    return frozenset(i for i, v in enumerate(vals) if v.denominator == 1 and v >= 0)


class XslRealization(Realization):
    """Laurent monomials x^lambda, lambda = mu + offset, in a box |offset_i| <= W."""

    def __init__(self, mu, window):
        n = len(mu)
        super().__init__("xsl", "A", n)
        self.mu = tuple(to_fraction(x) for x in mu)
        self.window = window
        self._plus = _plus_set(self.mu)

    def needed_radius(self):
        return needed_radius(self.mu) + 1

    def in_window(self, lam):
        return all(abs(a - b) <= self.window for a, b in zip(lam, self.mu))

    def keys(self):
        W = self.window
        out = []
        for d in product(range(-W, W + 1), repeat=self.n):
            if sum(d):
                continue
            lam = tuple(m + x for m, x in zip(self.mu, d))
            if _plus_set(lam) == self._plus:
                out.append(lam)
        return out

    def weight(self, lam):
        return lam

    def act(self, r, lam):
        i, j = r.s, r.t
        c = lam[j - 1]
        if c == 0 or lam[i - 1] == -1:
            return {}
        new = list(lam)
        new[i - 1] += 1
        new[j - 1] -= 1
        return {tuple(new): c}

    def act_cartan(self, i, lam):
        return {lam: lam[i - 1]} if lam[i - 1] else {}


class XspRealization(Realization):
    """x^e with e = mu + offset, sum of offsets even; weight e + 1/2."""

    def __init__(self, mu, window, flip=False):
        n = len(mu)
        super().__init__("xsp", "C", n)
        self.mu = tuple(to_fraction(x) for x in mu)
        self.window = window
        self.flip = flip
        self._plus = _plus_set(self.mu)

    def needed_radius(self):
        return needed_radius(self.mu) + 2

    def in_window(self, e):
        return all(abs(a - b) <= self.window for a, b in zip(e, self.mu))

    def keys(self):
        W = self.window
        out = []
        for d in product(range(-W, W + 1), repeat=self.n):
            if sum(d) % 2:
                continue
            e = tuple(m + x for m, x in zip(self.mu, d))
            if _plus_set(e) == self._plus:
                out.append(e)
        return out

    def weight(self, e):
        return tuple(x + HALF for x in e)

    def act(self, r, e):
        name, a, b = r.form()
        new = list(e)
        if name == "TwoEi":
            k = b - 1
            if a > 0:
                # x_k^2 / 2
                if e[k] in (-1, -2):
                    return {}
                new[k] += 2
                c = HALF
            else:
                # -(1/2) d_k^2 (sign flipped in the negative control)
                c = (HALF if self.flip else -HALF) * e[k] * (e[k] - 1)
                new[k] -= 2
        elif name == "Ei_minus_Ej":
            i, j = a - 1, b - 1
            if e[i] == -1:
                return {}
            c = e[j]
            new[i] += 1
            new[j] -= 1
        elif name == "Ei_plus_Ej":
            i, j = a - 1, b - 1
            if e[i] == -1 or e[j] == -1:
                return {}
            c = Fraction(1)
            new[i] += 1
            new[j] += 1
        else:
            i, j = a - 1, b - 1
            c = -e[i] * e[j]
            new[i] -= 1
            new[j] -= 1
        if c == 0:
            return {}
        return {tuple(new): c}

    def act_cartan(self, i, e):
        c = e[i - 1] + HALF
        return {e: c} if c else {}


def needed_radius(mu):
    """Total distance of the integral coordinates from their nearest of -1, 0."""
    out = 0
    for v in mu:
        v = to_fraction(v)
        if v.denominator != 1:
            continue
        out += int(-1 - v) if v < 0 else int(v)
    return out


# ---------------------------------------------------------------- S^mu V


def weyl_dimension(mu, n):
    """Weyl dimension formula for the gl(n) module of highest weight mu."""
    lam = list(mu) + [0] * (n - len(mu))
    num = prod(lam[i] - lam[j] + j - i for i in range(n) for j in range(i + 1, n))
    den = prod(j - i for i in range(n) for j in range(i + 1, n))
    return num // den


def ssyt_contents(shape, symbols):
    """Contents (as Counter over symbols) of all semistandard tableaux."""
    cells = [(r, c) for r, ln in enumerate(shape) for c in range(ln)]
    out = []
    filling = {}

    def fill(idx):
        if idx == len(cells):
            out.append(Counter(filling.values()))
            return
        r, c = cells[idx]
        lo = 0
        if c > 0:
            lo = max(lo, filling[(r, c - 1)])
        if r > 0:
            lo = max(lo, filling[(r - 1, c)] + 1)
        for v in range(lo, len(symbols)):
            filling[(r, c)] = v
            fill(idx + 1)
        filling.pop((r, c), None)

    fill(0)
    return [Counter({symbols[k]: m for k, m in cnt.items()}) for cnt in out]


def _young_vector(mu):
    """Column-antisymmetrized tensor e_T, T filled by row numbers."""
    cols = [[r for r, ln in enumerate(mu) if ln > c] for c in range(mu[0])]
    positions = [(r, c) for r, ln in enumerate(mu) for c in range(ln)]
    pos_index = {p: k for k, p in enumerate(positions)}
    vec = {}
    for perms in product(*(list(permutations(col)) for col in cols)):
        word = [0] * len(positions)
        sign = 1
        for col_idx, (col, perm) in enumerate(zip(cols, perms)):
            sign *= _perm_sign(perm)
            for r, r2 in zip(col, perm):
                word[pos_index[(r, col_idx)]] = r2 + 1
        axpy(vec, Fraction(sign), {tuple(word): Fraction(1)})
    return vec


def _perm_sign(p):
    p = list(p)
    sign = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


class SymRealization(Realization):
    """S^mu V_n inside the tensor power, built by lowering from e_T."""

    multiplicity_one = False

    def __init__(self, mu, n, dual=False):
        super().__init__("sym", "A", n)
        self.mu, self.dual = tuple(mu), dual
        self._spaces = self._build()

    def _raw_act(self, i, j, v):
        """E_ij on tensors: replace one letter j by i, summed over positions."""
        out = {}
        for word, c in v.items():
            for p, letter in enumerate(word):
                if letter == j:
                    axpy(out, c, {word[:p] + (i,) + word[p + 1:]: Fraction(1)})
        return out

    def _raw_weight(self, word):
        w = [Fraction(0)] * self.n
        for letter in word:
            w[letter - 1] += 1
        return tuple(w)

    def _build(self):
        top = _young_vector(self.mu)
        spaces = {}
        echs = {}
        queue = [top]
        while queue:
            v = queue.pop()
            w = self._raw_weight(next(iter(v)))
            ech = echs.setdefault(w, Echelon())
            new, _ = ech.add(v)
            if not new:
                continue
            spaces.setdefault(w, []).append(v)
            for i in range(1, self.n + 1):
                for j in range(1, i):
                    img = self._raw_act(i, j, v)
                    if img:
                        queue.append(img)
        return spaces

    def weight_spaces(self):
        if not self.dual:
            return self._spaces
        return {tuple(-x for x in w): vs for w, vs in self._spaces.items()}

    def weight_of_vector(self, v):
        w = self._raw_weight(next(iter(v)))
        return tuple(-x for x in w) if self.dual else w

    def act_vec(self, r, v):
        if self.dual:
            # S^mu V* = S^mu V twisted by X -> -X^T
            out = self._raw_act(r.t, r.s, v)
            return {k: -c for k, c in out.items()}
        return self._raw_act(r.s, r.t, v)

    def keys(self):
        raise NotImplementedError("S^mu V realizations expose weight spaces, not keys")


# ---------------------------------------------------------------- front door


def realize(M, n, window=None, flip=False) -> Realization:
    """Rank-n realization of the truncation of M."""
    if n > rank_bound():
        raise RankBound(f"rank {n} exceeds the oracle bound {rank_bound()}")
    M = effective(M)
    if isinstance(M, Trivial):
        return TrivialRealization(M.algebra or "A", n)
    if isinstance(M, NaturalV):
        return NaturalRealization(M.algebra, n)
    if isinstance(M, ConaturalVstar):
        return NaturalRealization("A", n, dual=True)
    if isinstance(M, Wedge):
        return ExteriorRealization(n, wedge_degree(M.A, n))
    if isinstance(M, SpinB):
        return SpinorRealization("B", n)
    if isinstance(M, SpinD):
        return SpinorRealization("D", n, parity=len(M.A.upto(n)) % 2)
    if isinstance(M, SymPartition):
        if len(M.mu) > n:
            raise PartitionTooLong(f"partition {M.mu} has more than {n} parts")
        return SymRealization(M.mu, n, M.dual)
    if isinstance(M, (Xsl, Xsp)):
        mu = M.mu.upto(n)
        W = DEFAULT_WINDOW if window is None else window
        cls = XslRealization if isinstance(M, Xsl) else XspRealization
        R = cls(mu, W, flip=flip) if cls is XspRealization else cls(mu, W)
        if W < R.needed_radius():
            raise WindowTooSmall(f"window {W} is below the needed radius {R.needed_radius()}")
        return R
    raise TypeError(f"no realization for {M!r}")


def auto_window(M, n):
    """The smallest safe window for Xsl/Xsp truncations (others: None)."""
    M = effective(M)
    if isinstance(M, Xsl):
        return max(DEFAULT_WINDOW, needed_radius(M.mu.upto(n)) + 1)
    if isinstance(M, Xsp):
        return max(DEFAULT_WINDOW, needed_radius(M.mu.upto(n)) + 2)
    return None


def _plus_roots(R, o):
    typ = R.typ
    P = parabolic_from_order(o, typ)
    return sorted(P.plus), sorted(P.zero)


def _kill_masks(R):
    cache = getattr(R, "_masks", None)
    if cache is None:
        pos = {r: k for k, r in enumerate(R.roots)}
        cache = {}
        for key in R.keys():
            m = 0
            for r in R.roots:
                if R.act(r, key):
                    m |= 1 << pos[r]
            cache[key] = m
        R._masks = cache
        R._root_pos = pos
    return cache


def singular_kernel(R, o):
    """{weight: list of kernel vectors} for the nilradical of o."""
    plus, _ = _plus_roots(R, o)
    if R.multiplicity_one:
        masks = _kill_masks(R)
        pm = 0
        for r in plus:
            pm |= 1 << R._root_pos[r]
        out = {}
        for key, m in masks.items():
            if not m & pm:
                out.setdefault(R.weight(key), []).append(R.vector(key))
        return out
    out = {}
    for w, basis in R.weight_spaces().items():
        cols = []
        for b in basis:
            col = {}
            for idx, r in enumerate(plus):
                for k, c in R.act_vec(r, b).items():
                    col[(idx, k)] = c
            cols.append(col)
        ker = kernel(cols)
        if ker:
            out[w] = [combine(c, basis) for c in ker]
    return out


def find_u_singular(R, o: FiniteOrder, window=None):
    """Sorted list of (weight, dimension of the singular subspace)."""
    if window is not None and getattr(R, "window", None) is not None:
        if window < R.needed_radius():
            raise WindowTooSmall(f"window {window} is below the needed radius {R.needed_radius()}")
        if window != R.window:
            R = type(R)(R.mu, window)
    ker = singular_kernel(R, o)
    return sorted((w, len(vs)) for w, vs in ker.items())


def singular_multiplicity(R, o, lam):
    lam = tuple(to_fraction(x) for x in (lam.upto(R.n) if hasattr(lam, "upto") else lam))
    ker = singular_kernel(R, o)
    return len(ker.get(lam, []))


def levi_module_of_kernel(R, o):
    """Weight multiset of the l(o)-module generated by the singular vectors."""
    _, zero = _plus_roots(R, o)
    ker = singular_kernel(R, o)
    if R.multiplicity_one:
        seen = set()
        stack = [next(iter(v)) for vs in ker.values() for v in vs]
        while stack:
            k = stack.pop()
            if k in seen or not R.in_window(k):
                continue
            seen.add(k)
            for r in zero:
                stack.extend(R.act(r, k))
        return Counter(R.weight(k) for k in seen)
    echs, stack = {}, [v for vs in ker.values() for v in vs]
    while stack:
        v = stack.pop()
        w = R.weight_of_vector(v)
        ech = echs.setdefault(w, Echelon())
        new, _ = ech.add(v)
        if not new:
            continue
        for r in zero:
            img = R.act_vec(r, v)
            if img:
                stack.append(img)
    return Counter({w: e.rank for w, e in echs.items() if e.rank})


def weight_space_action(M, n, lam, alpha):
    """AllKilled / NoneKilled / Partial for the alpha root vector on a weight space."""
    R = realize(M, n)
    w = tuple(to_fraction(x) for x in lam.upto(n))
    basis = R.weight_spaces().get(w)
    if not basis:
        raise NotInSupport(f"{w} is not a weight at rank {n}")
    r = rank([R.act_vec(alpha, b) for b in basis])
    if r == 0:
        return ALL_KILLED
    return NONE_KILLED if r == len(basis) else PARTIAL


# ---------------------------------------------------------------- brackets


def _sl_matrices(n):
    """gl(n) basis: E_ij -> matrix dict."""
    gens = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            key = ("h", i) if i == j else Root(i, j)
            gens[key] = {(i, j): Fraction(1)}
    return gens


def _sp_matrices(n):
    """sp(2n) basis in the 2n x 2n defining representation."""
    gens = {}
    for i in range(1, n + 1):
        gens[Root(i, -i)] = {(i, n + i): Fraction(1)}
        gens[Root(-i, i)] = {(n + i, i): Fraction(1)}
        gens[("h", i)] = {(i, i): Fraction(1), (n + i, n + i): Fraction(-1)}
        for j in range(1, n + 1):
            if i == j:
                continue
            gens[Root(i, j)] = {(i, j): Fraction(1), (n + j, n + i): Fraction(-1)}
            if i < j:
                gens[Root(i, -j)] = {(i, n + j): Fraction(1), (j, n + i): Fraction(1)}
                gens[Root(-i, j)] = {(n + i, j): Fraction(1), (n + j, i): Fraction(1)}
    return gens


def _matmul(a, b):
    out = {}
    for (i, k), c in a.items():
        for (k2, j), d in b.items():
            if k == k2:
                axpy(out, c * d, {(i, j): Fraction(1)})
    return out


def _commutator(a, b):
    out = _matmul(a, b)
    axpy(out, Fraction(-1), _matmul(b, a))
    return out


def _decompose(mat, gens):
    """Coefficients expressing mat in the generator basis (exact)."""
    keys = list(gens)
    ech = Echelon()
    for idx, k in enumerate(keys):
        ech.add(gens[k], idx)
    residue, combo = ech.reduce({p: -c for p, c in mat.items()}, {})
    if residue:
        raise BracketMismatch("commutator leaves the algebra", counterexample=mat)
    # -mat + (reduction terms) = 0 and the reduction terms equal sum combo_k gen_k
    return {keys[idx]: c for idx, c in combo.items() if c}


def _apply(R, g, v):
    if isinstance(g, tuple) and g and g[0] == "h":
        out = {}
        for k, c in v.items():
            axpy(out, c, R.act_cartan(g[1], k))
        return out
    return R.act_vec(g, v)


def verify_bracket(typ, n, trials=None, flip=False, seed=0, probes=0):
    """Check action([g, g']) = [action(g), action(g')] on a monomial window.

    typ 'sl' uses Xsl with a generic base point and gl(n); 'sp' uses Xsp.
    With trials, only that many random generator pairs are checked.
    probes adds random monomials with integral base points (drop rule).
    """
    rng = random.Random(seed)
    if typ == "sl":
        gens = _sl_matrices(n)
        mus = [tuple(Fraction(k + 1, k + 3) for k in range(n))]
        make = lambda mu: XslRealization(mu, 2)
    elif typ == "sp":
        gens = _sp_matrices(n)
        mus = [tuple(Fraction(k + 1, k + 4) for k in range(n))]
        make = lambda mu: XspRealization(mu, 2, flip=flip)
    else:
        raise ValueError(f"unknown bracket family {typ!r}")
    pairs = [(a, b) for a in gens for b in gens]
    if trials is not None:
        pairs = rng.sample(pairs, min(trials, len(pairs)))
    checks = []
    for mu in mus:
        R = make(mu)
        near = [k for k in R.keys() if max(abs(a - b) for a, b in zip(k, mu)) <= 1]
        checks.extend((a, b, R, k) for a, b in pairs for k in near)
    # random probes: a random generator pair on a random monomial over an integral base
    bases = [make(tuple(Fraction(rng.randint(-3, 3)) for _ in range(n))) for _ in range(8)]
    keyed = [(R, R.keys()) for R in bases]
    all_pairs = [(a, b) for a in gens for b in gens]
    for _ in range(probes):
        R, keys = rng.choice(keyed)
        a, b = rng.choice(all_pairs)
        checks.append((a, b, R, rng.choice(keys)))
    comm_cache = {}
    for a, b, R, key in checks:
        if (a, b) not in comm_cache:
            comm_cache[(a, b)] = _decompose(_commutator(gens[a], gens[b]), gens)
        comb = comm_cache[(a, b)]
        v = R.vector(key)
        lhs = {}
        for g, c in comb.items():
            axpy(lhs, c, _apply(R, g, v))
        rhs = _apply(R, a, _apply(R, b, v))
        axpy(rhs, Fraction(-1), _apply(R, b, _apply(R, a, v)))
        if lhs != rhs:
            raise BracketMismatch(
                f"[{a!r}, {b!r}] fails on x^{key}",
                counterexample={"pair": (a, b), "monomial": key, "lhs": lhs, "rhs": rhs})
    return True


# ---------------------------------------------------------------- support rays


FINITE, UP, DOWN, BI = "finite", "up-infinite", "down-infinite", "bi-infinite"


def support_ray(M, lam, alpha: Root, horizon=12, n=None):
    """How far lam + q*alpha stays in Supp M, for real q.

    Each family's support is cut out by integrality classes of single
    coordinates, which stabilize once |q| exceeds every coordinate
    involved; so probing a few q past that point decides each side.
    A scan over |q| <= horizon replays the answer.
    """
    from .weights import WeightDescriptor

    lam = lam if isinstance(lam, WeightDescriptor) else WeightDescriptor.finite(lam)
    if not support_contains(M, lam, n):
        raise NotInSupport(f"{lam!r} is not a weight")
    vec = alpha.vector()
    big = 2 * (int(max(abs(lam[i]) for i in vec)) + 5)

    def inside(q):
        step = WeightDescriptor.finite(
            [q * vec.get(i, 0) for i in range(1, max(vec) + 1)])
        return support_contains(M, lam + step, n)

    offsets = [Fraction(k, 2) for k in range(0, 4)]
    up = any(inside(big + d) for d in offsets)
    down = any(inside(-big - d) for d in offsets)
    verdict = {(False, False): FINITE, (True, False): UP,
               (False, True): DOWN, (True, True): BI}[(up, down)]
    top = Fraction(max(horizon, big))
    hits = [q for q in (Fraction(k, 2) for k in range(int(-2 * top), int(2 * top) + 1)) if inside(q)]
    if (max(hits) > top - 2) != up or (min(hits) < 2 - top) != down:
        raise WindowTooSmall("ray probe disagrees with the horizon replay")
    return verdict


def ray_class_to_shadow(c):
    return {FINITE: "F", BI: "I", DOWN: "+", UP: "-"}[c]
