"""The m-divisible noncrossing partitions as delta sequences of multichains.

An element is ``(d_0, ..., d_m)`` with ``d_0 = x_1``, ``d_i = x_i^-1 x_{i+1}``
and ``d_m = x_m^-1 c`` for a multichain ``x_1 <= ... <= x_m`` in ``L_W``.
The order compares ``d_1, ..., d_m`` componentwise and the rank is
``l(d_1) + ... + l(d_m) = n - l(d_0)``.  With this orientation
``(c, 1, ..., 1)`` is the unique minimum and the maxima are the sequences
with ``d_0 = 1``.
"""

from __future__ import annotations

import time
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

import numpy as np

from . import formulas
from .diagram import CoxeterType, as_type, delete_vertex
from .group import ResourceBoundExceeded, build_group
from .nclattice import NcLattice, build_lattice
from .poset import GradedPoset, _ones, _vecmat, check_composition, sub_compositions
from .recursions import VerificationReport, _deleted, _irreducible_h, _report

DEFAULT_MAX_MPOSET = 5000


class MDivisiblePoset(GradedPoset):
    """``L^(m)_W``.  ``deltas[p]`` is the delta sequence (group ids) of element
    ``p`` and ``chains[p]`` the positions in ``L`` of its multichain."""

    def __init__(self, lattice: NcLattice, m: int, deltas: np.ndarray, chains: np.ndarray, ranks: np.ndarray, order: np.ndarray):
        self.lattice = lattice
        self.m = m
        self.deltas = deltas
        self.chains = chains
        self.ranks = ranks
        self.order_matrix = order
        n = lattice.rank
        levels = [np.flatnonzero(ranks == r) for r in range(n + 1)]
        covers = [order[np.ix_(levels[r], levels[r + 1])] for r in range(n)]
        super().__init__(levels, covers)
        self._check_graded()

    def _check_graded(self) -> None:
        # every relation must factor through rank-one steps
        rk = self.ranks
        strict = self.order_matrix & ~np.eye(len(rk), dtype=bool)
        if (strict & (rk[:, None] >= rk[None, :])).any():
            raise AssertionError("order relation does not increase rank")
        for r1 in range(self.rank + 1):
            for r2 in range(r1 + 1, self.rank + 1):
                block = self.order_matrix[np.ix_(self.levels[r1], self.levels[r2])]
                if not np.array_equal(block, self.order(r1, r2)):
                    raise AssertionError(f"order between ranks {r1} and {r2} is not generated by covers")

    @property
    def minimum(self) -> int:
        return int(self.levels[0][0])

    def count_m_rank_jump(self, j: Sequence[int]) -> int:
        """Multichains from the minimum to a maximal element with rank jumps ``j``."""
        return self.count_rank_jump(j)

    def count_unanchored(self, j: Sequence[int]) -> int:
        """Multichains ``x_1 <= ... <= x_k`` with ``rank(x_1) = j_1``, jumps ``j_2..j_k``
        and ``rank(x_k) = n - j_{k+1}``, with no condition on the ends."""
        j = check_composition(j, self.rank)
        if len(j) == 1:
            return 1
        r = j[0]
        v = _ones(len(self.levels[r]))
        for part in j[1:-1]:
            v = _vecmat(v, self.order(r, r + part))
            r += part
        return int(sum(v))

    def count_m_maximal_chains(self) -> int:
        return self.count_maximal_chains()

    def count_m_edges(self) -> int:
        return self.count_edges()

    def count_m_sc(self, k: int) -> int:
        return self.count_saturated(k)


def _multichains(leq: np.ndarray, m: int) -> np.ndarray:
    """All weakly increasing m-tuples of positions, lexicographic."""
    chains = np.arange(leq.shape[0]).reshape(-1, 1)
    for _ in range(m - 1):
        rows, nxt = np.nonzero(leq[chains[:, -1]])
        chains = np.concatenate([chains[rows], nxt.reshape(-1, 1)], axis=1)
    return chains


def build_m_poset(L: NcLattice, m: int, max_size: int = DEFAULT_MAX_MPOSET) -> MDivisiblePoset:
    if m < 1:
        raise ValueError("m must be at least 1")
    W = L.system
    if W is None:
        raise ValueError("m-divisible posets need a lattice built from a group table")
    expected = L.count_multichains(m)
    if expected > max_size:
        raise ResourceBoundExceeded(f"L^({m}) has {expected} elements, bound {max_size}")
    leq = L.leq()
    chains = _multichains(leq, m)
    xs = L.elements[chains]  # group ids, shape (N, m)
    N = len(xs)
    deltas = np.empty((N, m + 1), dtype=np.int64)
    deltas[:, 0] = xs[:, 0]
    for i in range(1, m):
        deltas[:, i] = W.compose_many(W.inverse[xs[:, i - 1]], xs[:, i])
    deltas[:, m] = W.compose_many(W.inverse[xs[:, m - 1]], np.full(N, L.top))
    where = np.full(W.order, -1, dtype=np.int64)
    where[L.elements] = np.arange(L.size)
    pos = where[deltas]
    if (pos < 0).any():
        raise AssertionError("a delta entry lies outside [1, c]")
    ranks = L.rank - W.length[deltas[:, 0]].astype(np.int64)
    order = np.ones((N, N), dtype=bool)
    for i in range(1, m + 1):
        order &= leq[np.ix_(pos[:, i], pos[:, i])]
    return MDivisiblePoset(L, m, deltas, chains, ranks, order)


# -- cached posets and product rules ------------------------------------------------


@lru_cache(maxsize=None)
def _poset(name: str, m: int) -> MDivisiblePoset:
    return build_m_poset(build_lattice(build_group(name)), m)


def m_poset(t, m: int) -> MDivisiblePoset:
    return _poset(as_type(t).canonical().render(), m)


@lru_cache(maxsize=None)
def _m_reducible(name: str, m: int, j: tuple[int, ...]) -> int:
    t = as_type(name)
    if len(t.factors) <= 1:
        return _poset(name, m).count_m_rank_jump(j)
    first, rest = CoxeterType(t.factors[:1]), CoxeterType(t.factors[1:])
    total = 0
    for a in sub_compositions(j, first.rank):
        b = tuple(x - y for x, y in zip(j, a))
        total += _m_reducible(first.render(), m, a) * _m_reducible(rest.render(), m, b)
    return total


def m_reducible_count(t, m: int, j: Sequence[int]) -> int:
    """``C^(m)_j`` assembled from irreducible factors by the product rule."""
    t = as_type(t).canonical()
    return _m_reducible(t.render(), m, check_composition(j, t.rank))


@lru_cache(maxsize=None)
def _m_sc_vector(name: str, m: int) -> tuple[int, ...]:
    t = as_type(name)
    if len(t.factors) <= 1:
        P = _poset(name, m)
        return tuple(P.count_m_sc(k) for k in range(t.rank + 1))
    first, rest = CoxeterType(t.factors[:1]), CoxeterType(t.factors[1:])
    a, b = _m_sc_vector(first.render(), m), _m_sc_vector(rest.render(), m)
    # a saturated chain in a product interleaves one in each factor
    return tuple(
        sum(comb(k, i) * a[i] * b[k - i] for i in range(max(0, k - len(b) + 1), min(k, len(a) - 1) + 1))
        for k in range(t.rank + 1)
    )


def m_sc_vector(t, m: int) -> tuple[int, ...]:
    """``(SC^(m)_0, ..., SC^(m)_n)``; products via interleaving of chains."""
    return _m_sc_vector(as_type(t).canonical().render(), m)


# -- verifications ----------------------------------------------------------------------


def verify_m_jump_recursion(t, m: int, j: Sequence[int], i: int) -> VerificationReport:
    """``C^(m)_j(W) = mh/2 sum_s C^(m)_(j without j_i)(W<s>)``."""
    start = time.perf_counter()
    t = as_type(t)
    h = _irreducible_h(t, "the m-jump recursion")
    j = check_composition(j, t.rank)
    jd = _deleted(j, i)
    left = m_poset(t, m).count_m_rank_jump(j)
    right = Fraction(m * h, 2) * sum(m_reducible_count(delete_vertex(t, s), m, jd) for s in range(t.rank))
    return _report("m-jump", t, {"m": m, "j": list(j), "i": i}, left, right, start)


def verify_m_size(t, m: int) -> VerificationReport:
    start = time.perf_counter()
    t = as_type(t)
    return _report("m-size", t, {"m": m}, m_poset(t, m).size, formulas.fuss_catalan(t, m), start)


def verify_m_mc(t, m: int) -> VerificationReport:
    start = time.perf_counter()
    t = as_type(t)
    return _report("m-mc", t, {"m": m}, m_poset(t, m).count_m_maximal_chains(), formulas.m_mc_closed(t, m), start)


def verify_m_lower_saturated(t, m: int, k: int) -> VerificationReport:
    """Saturated chains from the minimum: ``m^k TW_k(W)``."""
    start = time.perf_counter()
    t = as_type(t)
    P = m_poset(t, m)
    if len(P.levels[0]) != 1:
        raise AssertionError("L^(m) should have a unique minimal element")
    right = m**k * P.lattice.count_tw(k)
    return _report("m-lower-saturated", t, {"m": m, "k": k}, P.count_lower_saturated(k), right, start)


def verify_m_edges(t, m: int) -> list[VerificationReport]:
    """E^(m): the closed form, the mh/2 recursion over parabolic sizes, and
    the count of pairs (s, x) whose multichain ``x`` leaves ``W<s>``."""
    t = as_type(t)
    h = _irreducible_h(t, "the m-edge formulas")
    P = m_poset(t, m)
    left = P.count_m_edges()
    out = []
    start = time.perf_counter()
    out.append(_report("m-edge-formula", t, {"m": m}, left, formulas.m_edge_closed(t, m), start))
    start = time.perf_counter()
    sizes = sum(formulas.fuss_catalan(delete_vertex(t, s), m) for s in range(t.rank))
    out.append(_report("m-edge-recursion", t, {"m": m}, left, Fraction(m * h, 2) * sizes, start))
    start = time.perf_counter()
    W = P.lattice.system
    tops = P.lattice.elements[P.chains[:, -1]]
    pairs = 0
    for s in range(t.rank):
        # the multichain lies in W<s> iff its largest entry does
        inside = np.isin(tops, W.parabolic(s).embedding)
        pairs += int((~inside).sum())
    out.append(_report("m-edge-pairs", t, {"m": m}, left, pairs, start))
    return out


def verify_m_sc_recursion(t, m: int, k: int) -> VerificationReport:
    """``SC^(m)_k(W) = mh/2 sum_s SC^(m)_{k-1}(W<s>)`` for k >= 1."""
    start = time.perf_counter()
    t = as_type(t)
    h = _irreducible_h(t, "the m-SC recursion")
    if not 1 <= k <= t.rank:
        raise ValueError(f"k must lie in 1..{t.rank}")
    left = m_poset(t, m).count_m_sc(k)
    right = Fraction(m * h, 2) * sum(m_sc_vector(delete_vertex(t, s), m)[k - 1] for s in range(t.rank))
    return _report("m-sc", t, {"m": m, "k": k}, left, right, start)


def clear_caches() -> None:
    for f in (_poset, _m_reducible, _m_sc_vector):
        f.cache_clear()
