"""Independent brute-force models used as test oracles.

None of this imports the package's group or lattice code.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations
from math import cos, pi

import numpy as np


# -- noncrossing set partitions ---------------------------------------------------


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in set_partitions(rest):
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]
        yield [[first]] + p


def is_noncrossing(p) -> bool:
    blocks = [sorted(b) for b in p]
    for A, B in combinations(blocks, 2):
        for a, c in combinations(A, 2):
            for b, d in combinations(B, 2):
                if a < b < c < d or b < a < d < c:
                    return False
    return True


def refines(p, q) -> bool:
    return all(any(A <= B for B in q) for A in p)


class RefinementPoset:
    """Elements with a rank function and the refinement order, brute force."""

    def __init__(self, elements, rank_fn, top_rank):
        self.elements = elements
        self.rank = {p: rank_fn(p) for p in elements}
        self.n = top_rank
        self.by_rank = [[p for p in elements if self.rank[p] == r] for r in range(top_rank + 1)]

    def leq(self, p, q) -> bool:
        return refines(p, q)

    def count_jump(self, j) -> int:
        """Multichains bottom <= x_1 <= ... <= x_k <= top with rank jumps j."""
        targets = []
        r = 0
        for part in j:
            r += part
            targets.append(r)
        ways = {p: 1 for p in self.by_rank[0]}
        for r in targets:
            ways = {q: sum(w for p, w in ways.items() if self.leq(p, q)) for q in self.by_rank[r]}
        return sum(ways.values())

    def covers(self):
        return [(p, q) for p in self.elements for q in self.elements if self.rank[q] == self.rank[p] + 1 and self.leq(p, q)]

    def saturated(self, k: int) -> int:
        cov = self.covers()
        up = {p: [q for a, q in cov if a == p] for p in self.elements}

        def paths(p, k):
            return 1 if k == 0 else sum(paths(q, k - 1) for q in up[p])

        return sum(paths(p, k) for p in self.elements)

    def multichains(self, m: int) -> int:
        ways = {p: 1 for p in self.elements}
        for _ in range(m - 1):
            ways = {q: sum(w for p, w in ways.items() if self.leq(p, q)) for q in self.elements}
        return sum(ways.values()) if m else 1


def nc_type_a(n: int) -> RefinementPoset:
    """Noncrossing partitions of [n+1] (the lattice of type A_n)."""
    parts = [frozenset(frozenset(b) for b in p) for p in set_partitions(list(range(n + 1))) if is_noncrossing(p)]
    return RefinementPoset(parts, lambda p: n + 1 - len(p), n)


def nc_type_b(n: int) -> RefinementPoset:
    """Centrally symmetric noncrossing partitions of 2n points on a circle (type B_n)."""

    def symmetric(p) -> bool:
        blocks = {frozenset(b) for b in p}
        return all(frozenset((x + n) % (2 * n) for x in b) in blocks for b in blocks)

    parts = [
        frozenset(frozenset(b) for b in p)
        for p in set_partitions(list(range(2 * n)))
        if symmetric(p) and is_noncrossing(p)
    ]

    def rank(p):
        nonzero = sum(1 for b in p if frozenset((x + n) % (2 * n) for x in b) != b)
        return n - nonzero // 2

    return RefinementPoset(parts, rank, n)


# -- a floating-point reflection representation -------------------------------------


def float_group(mat: list[list[int]]):
    """Generate a finite Coxeter group from its Coxeter matrix using the
    geometric representation over the reals.  Returns the group order, the
    number of reflections, and a histogram of codim(fixed space)."""
    n = len(mat)
    B = np.array([[-cos(pi / mat[i][j]) if i != j else 1.0 for j in range(n)] for i in range(n)])
    gens = []
    for i in range(n):
        g = np.eye(n)
        # s_i(a_j) = a_j - 2 B(a_i, a_j) a_i
        g[i, :] -= 2 * B[i, :]
        gens.append(g)

    def key(x):
        return tuple(np.round(x, 6).ravel().tolist())

    seen = {key(np.eye(n)): np.eye(n)}
    frontier = [np.eye(n)]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                u = w @ g
                k = key(u)
                if k not in seen:
                    seen[k] = u
                    nxt.append(u)
        frontier = nxt
    refl = {key(g): g for g in gens}
    queue = list(gens)
    while queue:
        t = queue.pop()
        for g in gens:
            u = g @ t @ g
            k = key(u)
            if k not in refl:
                refl[k] = u
                queue.append(u)
    hist = Counter(int(np.linalg.matrix_rank(w - np.eye(n), tol=1e-7)) for w in seen.values())
    return len(seen), len(refl), dict(hist)
