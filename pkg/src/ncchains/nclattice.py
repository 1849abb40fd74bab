"""The noncrossing partition lattice ``[1, c]`` and delta sequences."""

from __future__ import annotations

from typing import Iterator, Sequence

import numpy as np

from .group import CoxeterSystem, ResourceBoundExceeded
from .poset import GradedPoset, check_composition

DEFAULT_MAX_LATTICE = 10**6

DeltaSequence = tuple[int, ...]


class NcLattice(GradedPoset):
    """Interval ``[1, top]`` in absolute order, graded by reflection length.

    Element handles are group element ids when ``system`` is set (the BFS
    backend), or indices into ``labels`` for the matrix backend.
    """

    def __init__(self, system: CoxeterSystem | None, top: int, levels, covers, labels=None):
        super().__init__(levels, covers)
        self.system = system
        self.top = top
        self.labels = labels
        self.elements = np.concatenate(self.levels) if self.levels else np.zeros(0, dtype=np.int64)
        self.position = {int(x): i for i, x in enumerate(self.elements)}

    # -- membership -------------------------------------------------------------

    def __contains__(self, w) -> bool:
        return int(w) in self.position

    def rank_of(self, w: int) -> int:
        off = self.offsets()
        p = self.position[int(w)]
        return next(r for r in range(self.rank + 1) if off[r] <= p < off[r + 1])

    def leq_elements(self, x: int, y: int) -> bool:
        return bool(self.leq()[self.position[int(x)], self.position[int(y)]])

    @property
    def atoms(self) -> np.ndarray:
        return self.levels[1] if self.rank >= 1 else self.levels[0][:0]

    @property
    def coatoms(self) -> np.ndarray:
        return self.levels[self.rank - 1] if self.rank >= 1 else self.levels[0][:0]

    # -- named counts -----------------------------------------------------------

    def count_tw(self, k: int) -> int:
        """Reduced T-words for elements of length ``k``: C_(1,...,1,n-k)."""
        if not 0 <= k <= self.rank:
            raise ValueError(f"k={k} outside 0..{self.rank}")
        return self.count_rank_jump((1,) * k + (self.rank - k,))

    def count_sc(self, k: int) -> int:
        return self.count_saturated(k)

    def zeta_value(self, m: int) -> int:
        """Number of ``m``-element multichains, i.e. Z(L, m + 1)."""
        return self.count_multichains(m)

    # -- multichains and delta sequences ----------------------------------------

    def _need_system(self) -> CoxeterSystem:
        if self.system is None:
            raise ValueError("delta sequences need a lattice built from a group table")
        return self.system

    def multichains(self, j: Sequence[int]) -> Iterator[tuple[int, ...]]:
        """Enumerate the multichains ``x_1 <= ... <= x_k`` counted by C_j."""
        j = check_composition(j, self.rank)
        ranks = np.cumsum(j[:-1]).tolist()

        def extend(prefix: list[int], prev_rank: int, prev_idx: int, depth: int):
            if depth == len(ranks):
                yield tuple(prefix)
                return
            r = ranks[depth]
            row = self.order(prev_rank, r)[prev_idx]
            for b in np.flatnonzero(row):
                prefix.append(int(self.levels[r][b]))
                yield from extend(prefix, r, int(b), depth + 1)
                prefix.pop()

        yield from extend([], 0, 0, 0)

    def multichain_to_delta(self, chain: Sequence[int]) -> DeltaSequence:
        W = self._need_system()
        xs = [0] + [int(x) for x in chain] + [self.top]
        for x in xs:
            if x not in self:
                raise ValueError(f"element {x} is not in the lattice")
        for a, b in zip(xs, xs[1:]):
            if not self.leq_elements(a, b):
                raise ValueError("chain is not weakly increasing")
        return tuple(W.compose(W.invert(a), b) for a, b in zip(xs, xs[1:]))

    def check_delta(self, delta: Sequence[int]) -> None:
        W = self._need_system()
        if sum(W.absolute_length(d) for d in delta) != self.rank:
            raise ValueError("delta sequence lengths do not sum to the rank")
        if W.product(list(delta)) != self.top:
            raise ValueError("delta sequence product is not the Coxeter element")

    def delta_to_multichain(self, delta: Sequence[int]) -> tuple[int, ...]:
        W = self._need_system()
        self.check_delta(delta)
        chain, x = [], 0
        for d in delta[:-1]:
            x = W.compose(x, d)
            chain.append(x)
        return tuple(chain)

    def permute_delta(self, delta: Sequence[int], i: int) -> DeltaSequence:
        """Swap positions ``i-1`` and ``i`` (1 <= i <= k): the new entries are
        ``delta[i-1] delta[i] delta[i-1]^-1`` and ``delta[i-1]``."""
        W = self._need_system()
        k = len(delta) - 1
        if not 1 <= i <= k:
            raise ValueError(f"index {i} outside 1..{k}")
        out = list(delta)
        a, b = delta[i - 1], delta[i]
        out[i - 1] = W.conjugate(a, b)
        out[i] = a
        return tuple(out)


def build_interval(W: CoxeterSystem, top: int, max_size: int = DEFAULT_MAX_LATTICE) -> NcLattice:
    """The interval ``[1, top]`` of ``W`` in absolute order."""
    n = W.absolute_length(top)
    ids = np.arange(W.order)
    below = W.compose_many(W.inverse, np.full(W.order, top))
    members = ids[W.length + W.length[below] == n]
    if len(members) > max_size:
        raise ResourceBoundExceeded(f"interval has {len(members)} elements, bound {max_size}")
    ranks = W.length[members]
    levels = [members[ranks == r] for r in range(n + 1)]
    local = np.full(W.order, -1, dtype=np.int64)
    for lv in levels:
        local[lv] = np.arange(len(lv))
    tperm = W.perms[list(W.reflections)] if W.reflections else None
    covers = []
    for r in range(n):
        upper = levels[r + 1]
        cov = np.zeros((len(levels[r]), len(upper)), dtype=bool)
        if len(upper):
            rows = W.perms[upper][:, tperm]  # y * t
            lower = W.lookup(rows)  # (|upper|, |T|)
            hit = W.length[lower] == r
            ys, ts = np.nonzero(hit)
            cov[local[lower[ys, ts]], ys] = True
        covers.append(cov)
    return NcLattice(W, top, levels, covers)


def build_lattice(W: CoxeterSystem, c: int | None = None, max_size: int = DEFAULT_MAX_LATTICE) -> NcLattice:
    """``L_W = [1, c]``, by default for the bipartite Coxeter element."""
    return build_interval(W, W.c if c is None else c, max_size)
