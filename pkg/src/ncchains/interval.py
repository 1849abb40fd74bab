"""Matrix backend: build ``[1, c]`` top-down without enumerating the group.

Elements are matrices over Z[phi] in the simple-root basis, stored as a pair
``(A, B)`` of int64 arrays meaning ``A + B*phi`` (``B = 0`` for Weyl groups).
Absolute length is the codimension of the fixed space, and the elements
covered by ``w`` are the ``wt`` with the root of ``t`` in ``im(w - 1)``.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np

from .diagram import CoxeterType, as_type, bipartition
from .golden import Golden
from .group import CoxeterSystem, ResourceBoundExceeded
from .linalg import nullspace, rank
from .nclattice import DEFAULT_MAX_LATTICE, NcLattice
from .roots import cartan_matrix, root_action

Pair = tuple[np.ndarray, np.ndarray]


def _mul(x: Pair, y: Pair) -> Pair:
    (a, b), (c, d) = x, y
    bd = b @ d
    return a @ c + bd, a @ d + b @ c + bd


def _key(x: Pair) -> bytes:
    return x[0].tobytes() + x[1].tobytes()


def _entry(a: int, b: int):
    return Fraction(int(a)) if b == 0 else Golden(int(a), int(b))


def _to_field(x: Pair) -> list[list]:
    a, b = x
    return [[_entry(a[i, j], b[i, j]) for j in range(a.shape[1])] for i in range(a.shape[0])]


def _split(v) -> tuple[Fraction, Fraction]:
    return (v.a, v.b) if isinstance(v, Golden) else (Fraction(v), Fraction(0))


def _integral_rows(rows: list[list]) -> Pair:
    """Rescale each row to Z[phi] entries (rows only matter up to scalars)."""
    n = len(rows[0]) if rows else 0
    a = np.zeros((len(rows), n), dtype=np.int64)
    b = np.zeros((len(rows), n), dtype=np.int64)
    for i, row in enumerate(rows):
        parts = [_split(v) for v in row]
        scale = lcm(*(p.denominator for ab in parts for p in ab))
        for j, (pa, pb) in enumerate(parts):
            a[i, j] = int(pa * scale)
            b[i, j] = int(pb * scale)
    return a, b


def supports(t) -> bool:
    """True when every factor has a rational or golden Cartan matrix."""
    return all(cartan_matrix(f) is not None for f in as_type(t).factors)


def _full_cartan(t: CoxeterType) -> list[list]:
    n = t.rank
    out = [[0] * n for _ in range(n)]
    for f, off in zip(t.factors, t.offsets()):
        a = cartan_matrix(f)
        if a is None:
            raise ValueError(f"no rational or golden realization for {f}")
        for i in range(f.rank):
            for j in range(f.rank):
                out[off + i][off + j] = a[i][j]
    return out


class MatrixRealization:
    """Simple reflections, reflections and their roots as Z[phi] matrices."""

    def __init__(self, t):
        self.type = as_type(t)
        n = self.n = self.type.rank
        cartan = _full_cartan(self.type)
        self.identity: Pair = (np.eye(n, dtype=np.int64), np.zeros((n, n), dtype=np.int64))
        gens = []
        for i in range(n):
            a, b = self.identity[0].copy(), self.identity[1].copy()
            for j in range(n):
                ca, cb = _split(cartan[i][j])
                a[i, j] -= int(ca)
                b[i, j] -= int(cb)
            gens.append((a, b))
        self.gens = gens
        self.reflections = self._closure(gens)
        # root of t, up to a scalar: any nonzero column of t - 1
        roots_a = np.zeros((n, len(self.reflections)), dtype=np.int64)
        roots_b = np.zeros_like(roots_a)
        for k, (a, b) in enumerate(self.reflections):
            da, db = a - self.identity[0], b
            col = next(j for j in range(n) if da[:, j].any() or db[:, j].any())
            roots_a[:, k], roots_b[:, k] = da[:, col], db[:, col]
        self.roots: Pair = (roots_a, roots_b)
        self.t_stack: Pair = (
            np.stack([r[0] for r in self.reflections]) if self.reflections else np.zeros((0, n, n), dtype=np.int64),
            np.stack([r[1] for r in self.reflections]) if self.reflections else np.zeros((0, n, n), dtype=np.int64),
        )
        plus, minus = bipartition(self.type)
        self.c_plus = self.product([gens[s] for s in plus])
        self.c_minus = self.product([gens[s] for s in minus])
        self.c = _mul(self.c_minus, self.c_plus)

    def product(self, mats) -> Pair:
        out = self.identity
        for m in mats:
            out = _mul(out, m)
        return out

    @staticmethod
    def _closure(gens: list[Pair]) -> list[Pair]:
        seen = {_key(g): g for g in gens}
        queue = list(gens)
        while queue:
            t = queue.pop()
            for s in gens:
                u = _mul(_mul(s, t), s)
                k = _key(u)
                if k not in seen:
                    seen[k] = u
                    queue.append(u)
        return [seen[k] for k in sorted(seen)]

    def moved_annihilator(self, w: Pair) -> tuple[Pair, int]:
        """Rows spanning the annihilator of ``im(w - 1)``, and ``rank(w - 1)``."""
        a, b = w
        diff = (a - self.identity[0], b)
        rows_t = _to_field((diff[0].T.copy(), diff[1].T.copy()))
        basis = nullspace(rows_t, self.n)
        if not basis:
            empty = np.zeros((0, self.n), dtype=np.int64)
            return (empty, empty.copy()), self.n
        return _integral_rows(basis), self.n - len(basis)

    def absolute_length(self, w: Pair) -> int:
        a, b = w
        return rank(_to_field((a - self.identity[0], b)))

    def fixed_space(self, w: Pair) -> list[list]:
        a, b = w
        return nullspace(_to_field((a - self.identity[0], b)), self.n)


def _fixed_contains(big: list[list], small: list[list]) -> bool:
    if not small:
        return True
    if not big:
        return False
    return rank(big + small) == rank(big)


class MatrixInterval(NcLattice):
    """``[1, c]`` from the matrix backend; ``labels[i]`` is the matrix of element i."""

    def __init__(self, realization: MatrixRealization, levels, covers, labels):
        top = sum(len(lv) for lv in levels) - 1
        super().__init__(None, top, levels, covers, labels)
        self.realization = realization
        self._fixed: dict[int, list[list]] = {}

    def fixed_space(self, i: int) -> list[list]:
        if i not in self._fixed:
            self._fixed[i] = self.realization.fixed_space(self.labels[i])
        return self._fixed[i]

    def fixed_space_leq(self, i: int, j: int) -> bool:
        """``x_i <= x_j`` read off the fixed spaces: ``F_j`` inside ``F_i``."""
        return _fixed_contains(self.fixed_space(i), self.fixed_space(j))

    def group_ids(self, W: CoxeterSystem) -> np.ndarray:
        """The id in ``W`` of every element, through the images of simple roots."""
        action = root_action(self.realization.type)
        if any(f.coords is None for f in action.factors):
            raise ValueError("dihedral factors have no root coordinates to match")
        index = {}
        for sys, off, roff in zip(action.factors, self.realization.type.offsets(), action.root_offsets):
            for k, coords in enumerate(sys.coords):
                index[(off, coords)] = roff + k
        n = self.realization.n
        out = np.empty(len(self.labels), dtype=np.int64)
        images = np.empty((len(self.labels), n), dtype=np.int64)
        for p, (a, b) in enumerate(self.labels):
            for f, off in zip(self.realization.type.factors, self.realization.type.offsets()):
                for j in range(off, off + f.rank):
                    coords = tuple(
                        int(a[i, j]) if b[i, j] == 0 else Golden(int(a[i, j]), int(b[i, j]))
                        for i in range(off, off + f.rank)
                    )
                    images[p, j] = index[(off, coords)]
        out[:] = W.lookup_simple_images(images)
        return out


def build_interval_lattice(t, max_size: int = DEFAULT_MAX_LATTICE) -> MatrixInterval:
    """``[1, c]`` for the bipartite Coxeter element, built from ``c`` downward."""
    R = MatrixRealization(t)
    n = R.n
    desc: list[list[Pair]] = [[R.c]]
    where: list[dict[bytes, int]] = [{_key(R.c): 0}]
    edges: list[list[tuple[int, int]]] = []
    total = 1
    for r in range(n, 0, -1):
        below: list[Pair] = []
        below_idx: dict[bytes, int] = {}
        cov: list[tuple[int, int]] = []
        for p, w in enumerate(desc[-1]):
            ann, rk = R.moved_annihilator(w)
            if rk != r:
                raise AssertionError(f"fixed-space codimension {rk} at level {r}")
            ya, yb = ann
            ra, rb = R.roots
            prod = _mul((ya, yb), (ra, rb))
            hits = np.flatnonzero(~(prod[0].any(axis=0) | prod[1].any(axis=0)))
            if len(hits) == 0:
                continue
            ta, tb = R.t_stack[0][hits], R.t_stack[1][hits]
            wa, wb = w
            bd = np.einsum("ij,tjk->tik", wb, tb)
            xa = np.einsum("ij,tjk->tik", wa, ta) + bd
            xb = np.einsum("ij,tjk->tik", wa, tb) + np.einsum("ij,tjk->tik", wb, ta) + bd
            for q in range(len(hits)):
                x = (np.ascontiguousarray(xa[q]), np.ascontiguousarray(xb[q]))
                k = _key(x)
                if k not in below_idx:
                    below_idx[k] = len(below)
                    below.append(x)
                cov.append((below_idx[k], p))
        total += len(below)
        if total > max_size:
            raise ResourceBoundExceeded(f"interval exceeds {max_size} elements")
        desc.append(below)
        where.append(below_idx)
        edges.append(cov)
    asc = desc[::-1]
    sizes = [len(lv) for lv in asc]
    if sizes[0] != 1:
        raise AssertionError("interval does not bottom out at the identity")
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    levels = [np.arange(offsets[r], offsets[r + 1]) for r in range(n + 1)]
    covers = []
    for r in range(n):
        m = np.zeros((sizes[r], sizes[r + 1]), dtype=bool)
        for lo, hi in edges[n - 1 - r]:
            m[lo, hi] = True
        covers.append(m)
    labels = [x for lv in asc for x in lv]
    return MatrixInterval(R, levels, covers, labels)
