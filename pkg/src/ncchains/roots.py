"""Root systems and the permutation action of simple reflections on roots.

Crystallographic factors and H3/H4 use root coordinates in the basis of
simple roots, with Cartan entries in Z or Z[phi].  I2(m) uses the 2m roots
at angles k*pi/m directly, indexed by k, so no cyclotomic arithmetic is
needed.  In every case the simple roots are the first ``rank`` entries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .diagram import CoxeterType, IrreducibleType, as_type, coxeter_matrix
from .golden import PHI, Golden


@dataclass(frozen=True)
class RootSystem:
    rank: int
    coords: tuple | None  # root coordinates (simple-root basis), None for I2(m)
    gens: np.ndarray  # (rank, nroots) int: gens[i, r] = index of s_i(root r)

    @property
    def size(self) -> int:
        return self.gens.shape[1]


def cartan_matrix(t: IrreducibleType):
    """Cartan matrix with ``A[i][j] = <alpha_i^vee, alpha_j>``, or None for
    I2(m) with m outside {5, 6} (no rational or golden realization)."""
    n = t.rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j, m in t.edges():
        if m == 3:
            a[i][j] = a[j][i] = -1
        elif m == 4:
            a[i][j], a[j][i] = -1, -2
        elif m == 5:
            a[i][j] = a[j][i] = -PHI
        elif m == 6:
            a[i][j], a[j][i] = -1, -3
        else:
            return None
    return a


def _reflect(i: int, v: tuple, cartan) -> tuple:
    c = sum((cartan[i][j] * v[j] for j in range(len(v))), 0)
    if not c:
        return v
    return tuple(x - c if k == i else x for k, x in enumerate(v))


def _canon(x):
    # keep Golden values with zero phi-part hashable alongside ints
    if isinstance(x, Golden) and x.b == 0 and x.a.denominator == 1:
        return int(x.a)
    return x


def _cartan_roots(t: IrreducibleType, cartan) -> RootSystem:
    n = t.rank
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    roots = list(simple)
    index = {r: k for k, r in enumerate(roots)}
    head = 0
    while head < len(roots):
        v = roots[head]
        head += 1
        for i in range(n):
            w = tuple(_canon(x) for x in _reflect(i, v, cartan))
            if w not in index:
                index[w] = len(roots)
                roots.append(w)
    gens = np.empty((n, len(roots)), dtype=np.int64)
    for i in range(n):
        for k, v in enumerate(roots):
            gens[i, k] = index[tuple(_canon(x) for x in _reflect(i, v, cartan))]
    return RootSystem(n, tuple(roots), gens)


def _dihedral_roots(m: int) -> RootSystem:
    # root k sits at angle k*pi/m; simple roots at angles 0 and (m-1)pi/m
    order = [0, m - 1] + [k for k in range(2 * m) if k not in (0, m - 1)]
    pos = {k: i for i, k in enumerate(order)}
    gens = np.empty((2, 2 * m), dtype=np.int64)
    for g, a in enumerate((0, m - 1)):
        for i, k in enumerate(order):
            gens[g, i] = pos[(2 * a + m - k) % (2 * m)]
    return RootSystem(2, None, gens)


def irreducible_roots(t: IrreducibleType) -> RootSystem:
    if t.family == "I":
        return _dihedral_roots(t.param)
    return _cartan_roots(t, cartan_matrix(t))


@dataclass(frozen=True)
class ProductRoots:
    """Disjoint union of factor root systems; generators act blockwise."""

    type: CoxeterType
    factors: tuple[RootSystem, ...]
    gens: np.ndarray  # (rank, total roots)
    simple_cols: np.ndarray  # root index of each simple root
    root_offsets: tuple[int, ...]

    @property
    def size(self) -> int:
        return self.gens.shape[1]


def root_action(t: CoxeterType) -> ProductRoots:
    t = as_type(t)
    systems = tuple(irreducible_roots(f) for f in t.factors)
    total = sum(s.size for s in systems)
    gens = np.tile(np.arange(total, dtype=np.int64), (t.rank, 1))
    simple, offsets = [], []
    row = off = 0
    for s in systems:
        offsets.append(off)
        for i in range(s.rank):
            gens[row + i, off:off + s.size] = s.gens[i] + off
            simple.append(off + i)
        row += s.rank
        off += s.size
    _check_coxeter_relations(t, gens)
    return ProductRoots(t, systems, gens, np.array(simple, dtype=np.int64), tuple(offsets))


def _perm_order(p: np.ndarray) -> int:
    ident = np.arange(len(p))
    q, k = p.copy(), 1
    while not np.array_equal(q, ident):
        q = p[q]
        k += 1
    return k


def _check_coxeter_relations(t: CoxeterType, gens: np.ndarray) -> None:
    mat = coxeter_matrix(t)
    n = t.rank
    for i in range(n):
        for j in range(i, n):
            prod = gens[i][gens[j]]
            if _perm_order(prod) != mat[i, j]:
                raise AssertionError(f"root action of {t} violates m({i},{j})")
