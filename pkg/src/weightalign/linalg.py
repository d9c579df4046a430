"""Sparse exact linear algebra over the rationals.

Vectors are dicts {coordinate: Fraction} with no zero entries.
"""
from __future__ import annotations

import heapq
from fractions import Fraction


def clean(v):
    return {k: c for k, c in v.items() if c != 0}


def axpy(y, a, x):
    """y += a*x in place (sparse)."""
    if a == 0:
        return y
    for k, c in x.items():
        t = y.get(k, 0) + a * c
        if t:
            y[k] = t
        else:
            y.pop(k, None)
    return y


def scale(a, x):
    return {k: a * c for k, c in x.items()} if a else {}


class Echelon:
    """Incremental row echelon basis, optionally tracking combinations.

    add(v, tag) reduces v against the stored rows; a nonzero remainder is
    stored and True returned.  With tracking, a vector reducing to zero
    yields the combination of tags that vanishes.
    """

    def __init__(self):
        self.rows = {}  # pivot -> (row, combo)
        self._ids = {}

    def _id(self, k):
        i = self._ids.get(k)
        if i is None:
            i = self._ids[k] = len(self._ids)
        return i

    def reduce(self, v, combo=None):
        v = dict(v)
        combo = dict(combo) if combo is not None else None
        # eliminate pivots in increasing id order; each row only adds larger ids
        heap = [(self._id(k), k) for k in v if k in self.rows]
        heapq.heapify(heap)
        while heap:
            _, p = heapq.heappop(heap)
            if p not in v:
                continue
            row, rc = self.rows[p]
            a = -v[p] / row[p]
            axpy(v, a, row)
            if combo is not None:
                axpy(combo, a, rc)
            for k in row:
                if k in v and k in self.rows and k != p:
                    heapq.heappush(heap, (self._id(k), k))
        return v, combo

    def add(self, v, tag=None):
        combo = {tag: Fraction(1)} if tag is not None else None
        r, combo = self.reduce(v, combo)
        if not r:
            return False, combo
        p = min(r, key=self._id)
        self.rows[p] = (r, combo or {})
        return True, None

    @property
    def rank(self):
        return len(self.rows)


def kernel(columns):
    """Basis of {c : sum_b c_b columns[b] = 0}, each as a dict over column indices."""
    ech = Echelon()
    out = []
    for idx, col in enumerate(columns):
        new, combo = ech.add(col, idx)
        if not new:
            out.append(clean(combo))
    return out


def rank(vectors):
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


def combine(coeffs, vectors):
    out = {}
    for i, c in coeffs.items():
        axpy(out, c, vectors[i])
    return out
