"""The pinned module catalog and the criterion-vs-oracle grid."""
from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .align import ALIGNED, check_aligned
from .errors import BracketMismatch
from .families import (
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
)
from .oracle import auto_window, find_u_singular, realize, verify_bracket
from .orders import enumerate_admissible, enumerate_signed
from .sets import SetDescriptor
from .weights import WeightDescriptor as W

ODDS = SetDescriptor.periodic((True, False))
EVENS = SetDescriptor.periodic((False, True))
h, t = Fraction(1, 2), Fraction(1, 3)

# modules on the positive ground (type A)
CATALOG_A = [
    ("natural-A", NaturalV("A")),
    ("conatural", ConaturalVstar()),
    ("wedge-odds", Wedge(ODDS)),
    ("wedge-evens", Wedge(EVENS)),
    ("sym-21", SymPartition((2, 1))),
    ("sym-2", SymPartition((2,))),
    ("sym-11-dual", SymPartition((1, 1), dual=True)),
    ("sinfty-1122", SInfty(IntSequence((1, 1), (1, 0)))),
    ("sinfty-dual-0112", SInfty(IntSequence((0, 1, 1), (1, 0)), dual=True)),
    ("trivial-A", Trivial("A")),
    ("xsl-alt", Xsl(W((), (-1, 0)))),
    ("xsl-int-tail0", Xsl(W((2, 0, -3)))),
    ("xsl-int-tail-1", Xsl(W((-3, 1), (-1,)))),
    ("xsl-int-tail1", Xsl(W((-2, 0), (1,)))),
    ("xsl-one-nonint", Xsl(W((-1, 0, h, 0), (1,)))),
    ("xsl-one-nonint-head", Xsl(W((h, -1)))),
    ("xsl-two-nonint", Xsl(W((h, t)))),
    ("xsl-two-nonint-mixed", Xsl(W((h, -1, t), (-1,)))),
]

# modules on the signed ground
CATALOG_S = [
    ("natural-B", NaturalV("B")),
    ("natural-C", NaturalV("C")),
    ("natural-D", NaturalV("D")),
    ("spinB", SpinB()),
    ("spinB-odds", SpinB(ODDS)),
    ("spinD", SpinD()),
    ("spinD-odds", SpinD(ODDS)),
    ("trivial-C", Trivial("C")),
    ("xsp-one-nonint", Xsp(W((-1, Fraction(5, 2), 0)))),
    ("xsp-int-even", Xsp(W((-1, -2, 1)))),
    ("xsp-int-odd", Xsp(W((0, 1, 0)))),
    ("xsp-int-tail-1", Xsp(W((-3, 2), (-1,)))),
    ("xsp-two-nonint", Xsp(W((h, t)))),
    ("xsp-nonint-tail", Xsp(W((t, 0), (-2,)))),
]


@dataclass
class GridSummary:
    cells: int = 0
    aligned: int = 0
    agreements: int = 0
    counterexamples: list = field(default_factory=list)
    seconds: float = 0.0
    brackets: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.counterexamples

    def to_json(self):
        return {"cells": self.cells, "aligned": self.aligned, "agreements": self.agreements,
                "brackets": self.brackets,
                "counterexamples": self.counterexamples}


def _orders_for(M, n):
    if (M.algebra or "A") == "A":
        return list(enumerate_admissible(n))
    return list(enumerate_signed(n, d_type=M.algebra == "D"))


def _box(M, n, win):
    E = effective(M)
    if not isinstance(E, (Xsl, Xsp)):
        return None
    mu = E.mu.upto(n)
    shift = h if isinstance(E, Xsp) else 0
    return lambda k: (mu[k - 1] + shift - win, mu[k - 1] + shift + win)


def check_cell(M, o, n, R=None, win=None, supports=True):
    """(agree, detail) for one grid cell."""
    rep = check_aligned(M, o, with_trace=False)
    if R is None:
        win = auto_window(M, n)
        R = realize(M, n, window=win)
    sing = Counter(dict(find_u_singular(R, o)))
    if (rep.verdict == ALIGNED) != bool(sing):
        return False, {"why": "verdict", "verdict": rep.verdict, "oracle": len(sing)}
    if supports and sing:
        claimed = rep.inducing.weights(n, _box(M, n, win))
        if claimed != sing:
            return False, {"why": "support", "inducing": rep.inducing.render()}
    return True, {"verdict": rep.verdict}


def ranks_for(M, rank_bound):
    typ = M.algebra or "A"
    lo = 2 if typ in ("A", "D") else 1
    if isinstance(M, SymPartition):
        lo = max(lo, len(M.mu))
    return range(lo, rank_bound + 1)


def run_grid(rank_bound=4, flip=False, catalog=None, seed=0, window=None):
    """Every catalog module x every admissible order at each rank <= rank_bound."""
    start = time.perf_counter()
    out = GridSummary()
    catalog = catalog or CATALOG_A + CATALOG_S
    for name, M in catalog:
        for n in ranks_for(M, rank_bound):
            win = auto_window(M, n)
            if win is not None and window is not None:
                win = max(win, window)
            R = realize(M, n, window=win)
            for o in _orders_for(M, n):
                ok, detail = check_cell(M, o, n, R, win)
                out.cells += 1
                out.aligned += detail.get("verdict") == ALIGNED
                if ok:
                    out.agreements += 1
                else:
                    out.counterexamples.append({"module": name, "n": n, "order": o.to_json(), **detail})
    for typ, n in (("sl", 3), ("sp", 2)):
        try:
            verify_bracket(typ, n, flip=flip, seed=seed, probes=250)
            out.brackets.append(f"{typ}{n}: ok")
        except BracketMismatch as exc:
            out.brackets.append(f"{typ}{n}: mismatch")
            out.counterexamples.append({"bracket": typ, "n": n, "detail": str(exc)})
    out.seconds = time.perf_counter() - start
    return out
