"""Chain counting on finite graded posets stored as per-rank incidence matrices."""

from __future__ import annotations

from typing import Sequence

import numpy as np

_INT64_SAFE = 2**62


def _vecmat(v: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Exact ``v @ m`` for an object vector of Python ints and a 0/1 matrix."""
    if m.shape[0] == 0:
        return np.zeros(m.shape[1], dtype=object)
    bound = max(max(v), 0) * m.shape[0]
    if bound < _INT64_SAFE:
        return (v.astype(np.int64) @ m.astype(np.int64)).astype(object)
    return v @ m.astype(object)


def _ones(n: int) -> np.ndarray:
    out = np.empty(n, dtype=object)
    out[:] = 1
    return out


def check_composition(j: Sequence[int], n: int) -> tuple[int, ...]:
    j = tuple(int(x) for x in j)
    if any(x < 0 for x in j):
        raise ValueError(f"composition {j} has negative parts")
    if sum(j) != n:
        raise ValueError(f"composition {j} sums to {sum(j)}, rank is {n}")
    return j


class GradedPoset:
    """Graded poset with ranks ``0..rank``.

    ``levels[r]`` holds the element handles of rank ``r`` and
    ``covers[r][a, b]`` is true iff ``levels[r][a]`` is covered by
    ``levels[r+1][b]``.  The order between two levels is the boolean product
    of the covers in between.
    """

    def __init__(self, levels: Sequence[np.ndarray], covers: Sequence[np.ndarray]):
        self.levels = [np.asarray(lv) for lv in levels]
        self.covers = [np.asarray(c, dtype=bool) for c in covers]
        self.rank = len(self.levels) - 1
        if len(self.covers) != self.rank:
            raise ValueError("need one cover matrix per pair of adjacent ranks")
        for r, c in enumerate(self.covers):
            if c.shape != (len(self.levels[r]), len(self.levels[r + 1])):
                raise ValueError(f"cover matrix {r} has shape {c.shape}")
        self._order: dict[tuple[int, int], np.ndarray] = {}
        self._leq = None

    @property
    def level_sizes(self) -> tuple[int, ...]:
        return tuple(len(lv) for lv in self.levels)

    @property
    def size(self) -> int:
        return sum(self.level_sizes)

    def __len__(self) -> int:
        return self.size

    def order(self, r1: int, r2: int) -> np.ndarray:
        """Boolean matrix of ``x <= y`` for ``x`` at rank r1, ``y`` at rank r2."""
        if r1 > r2:
            raise ValueError("order() needs r1 <= r2")
        key = (r1, r2)
        if key not in self._order:
            if r1 == r2:
                m = np.eye(len(self.levels[r1]), dtype=bool)
            else:
                prev = self.order(r1, r2 - 1).astype(np.int64)
                m = (prev @ self.covers[r2 - 1].astype(np.int64)) > 0
            self._order[key] = m
        return self._order[key]

    def offsets(self) -> list[int]:
        return [int(x) for x in np.concatenate([[0], np.cumsum(self.level_sizes)])]

    def leq(self) -> np.ndarray:
        """Full order matrix over global positions (levels concatenated)."""
        if self._leq is None:
            off = self.offsets()
            out = np.zeros((self.size, self.size), dtype=bool)
            for r1 in range(self.rank + 1):
                for r2 in range(r1, self.rank + 1):
                    out[off[r1]:off[r1 + 1], off[r2]:off[r2 + 1]] = self.order(r1, r2)
            self._leq = out
        return self._leq

    # -- counts -----------------------------------------------------------------

    def count_rank_jump(self, j: Sequence[int]) -> int:
        """Multichains ``x_0 <= x_1 <= ... <= x_{k+1}`` with ``x_0`` of rank 0,
        ``x_{k+1}`` of rank ``rank`` and rank increments ``j``.  When the
        poset has a unique minimum and maximum this is the number of
        multichains ``x_1 <= ... <= x_k`` with the given rank jumps."""
        j = check_composition(j, self.rank)
        v = _ones(len(self.levels[0]))
        r = 0
        for part in j:
            v = _vecmat(v, self.order(r, r + part))
            r += part
        return int(sum(v))

    def count_maximal_chains(self) -> int:
        return self.count_rank_jump((1,) * self.rank or (0,))

    def count_edges(self) -> int:
        return int(sum(int(c.sum()) for c in self.covers))

    def _paths(self, start: int, k: int) -> int:
        v = _ones(len(self.levels[start]))
        for r in range(start, start + k):
            v = _vecmat(v, self.covers[r])
        return int(sum(v))

    def count_saturated(self, k: int) -> int:
        """Saturated chains ``x_0 < x_1 < ... < x_k`` anywhere in the poset."""
        if not 0 <= k <= self.rank:
            raise ValueError(f"chain length {k} outside 0..{self.rank}")
        return sum(self._paths(r, k) for r in range(self.rank - k + 1))

    def count_lower_saturated(self, k: int) -> int:
        """Saturated chains of length ``k`` starting at rank 0."""
        if not 0 <= k <= self.rank:
            raise ValueError(f"chain length {k} outside 0..{self.rank}")
        return self._paths(0, k)

    def count_multichains(self, m: int) -> int:
        """Multichains ``p_1 <= ... <= p_m`` (the zeta polynomial at ``m + 1``)."""
        if m < 0:
            raise ValueError("multichain length must be >= 0")
        if m == 0:
            return 1
        leq = self.leq()
        v = _ones(self.size)
        for _ in range(m - 1):
            v = _vecmat(v, leq)
        return int(sum(v))

    def truncated(self, top: int) -> GradedPoset:
        """Restriction to ranks ``0..top``."""
        return GradedPoset(self.levels[: top + 1], self.covers[:top])


def compositions(n: int, parts: int):
    """All tuples of ``parts`` nonnegative integers summing to ``n``."""
    if parts == 0:
        if n == 0:
            yield ()
        return
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


def sub_compositions(j: Sequence[int], total: int):
    """Tuples ``j'`` with ``0 <= j'_i <= j_i`` and ``sum(j') == total``."""
    if not j:
        if total == 0:
            yield ()
        return
    rest_cap = sum(j[1:])
    for first in range(max(0, total - rest_cap), min(j[0], total) + 1):
        for rest in sub_compositions(j[1:], total - first):
            yield (first,) + rest
