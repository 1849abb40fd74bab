"""Finite Coxeter groups as permutation groups on their roots.

Elements are integer ids into one system's element table; id 0 is the
identity and the remaining ids follow breadth-first order over the simple
generators (queue order: parent id, then generator index).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from .diagram import (
    CoxeterType,
    as_type,
    bipartition,
    delete_vertex_map,
    invariants,
)
from .roots import ProductRoots, root_action

DEFAULT_MAX_ORDER = 10**6


class ResourceBoundExceeded(RuntimeError):
    """The requested object is larger than the configured bound."""


class _KeyIndex:
    """Maps permutations (through the images of the simple roots) to ids."""

    def __init__(self, base: int, width: int):
        self.width = width
        self.packed = width == 0 or base**width < 2**62
        if self.packed:
            self.powers = np.array([base**k for k in range(width)], dtype=np.int64)
        self.sorted_keys = None
        self.order = None
        self.table: dict = {}

    def keys(self, images: np.ndarray) -> np.ndarray | list:
        """Keys for rows of ``images`` (shape (..., width))."""
        if self.packed:
            return images.astype(np.int64) @ self.powers
        flat = np.ascontiguousarray(images.reshape(-1, self.width), dtype=np.int16)
        out = [r.tobytes() for r in flat]
        return out

    def freeze(self) -> None:
        if self.packed:
            ks = np.fromiter(self.table.keys(), dtype=np.int64, count=len(self.table))
            ids = np.fromiter(self.table.values(), dtype=np.int64, count=len(self.table))
            perm = np.argsort(ks)
            self.sorted_keys, self.order = ks[perm], ids[perm]

    def lookup(self, images: np.ndarray) -> np.ndarray:
        shape = images.shape[:-1]
        k = self.keys(images)
        if self.packed:
            k = np.asarray(k).reshape(-1)
            pos = np.searchsorted(self.sorted_keys, k)
            pos = np.minimum(pos, len(self.sorted_keys) - 1)
            if not np.array_equal(self.sorted_keys[pos], k):
                raise KeyError("permutation not in group")
            return self.order[pos].reshape(shape)
        return np.array([self.table[x] for x in k], dtype=np.int64).reshape(shape)


@dataclass(frozen=True)
class SteinbergOrbit:
    elements: frozenset[int]
    size: int
    simple: frozenset[int]  # vertices s with s in the orbit

    def dichotomy_holds(self, h: int) -> bool:
        if 2 * self.size == h:
            return len(self.simple) == 1
        if self.size == h:
            return len(self.simple) == 2
        return False


class GroupElement:
    """Handle binding an id to its system, for operator-style use."""

    __slots__ = ("system", "id")

    def __init__(self, system: CoxeterSystem, id: int):
        self.system = system
        self.id = int(id)

    def _same(self, other: GroupElement) -> None:
        if not isinstance(other, GroupElement) or other.system is not self.system:
            raise ValueError("elements belong to different Coxeter systems")

    def __mul__(self, other: GroupElement) -> GroupElement:
        self._same(other)
        return GroupElement(self.system, self.system.compose(self.id, other.id))

    def inverse(self) -> GroupElement:
        return GroupElement(self.system, self.system.invert(self.id))

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupElement) and other.system is self.system and other.id == self.id

    def __hash__(self) -> int:
        return hash((id(self.system), self.id))

    @property
    def absolute_length(self) -> int:
        return self.system.absolute_length(self.id)

    def __le__(self, other: GroupElement) -> bool:
        self._same(other)
        return self.system.abs_leq(self.id, other.id)

    def __repr__(self) -> str:
        return f"<{self.system.type} element {self.id}>"


class Parabolic(NamedTuple):
    system: CoxeterSystem
    embedding: np.ndarray  # parabolic id -> id in the ambient system
    vertex_map: list[int]  # parabolic vertex -> ambient vertex
    deleted: int


class CoxeterSystem:
    """A finite Coxeter group with its reflections and absolute length table.

    ``perms[w, r]`` is the index of the root ``w(r)``; composition ``uv``
    means apply ``v`` first.
    """

    def __init__(
        self,
        t: CoxeterType,
        perms: np.ndarray,
        parent: np.ndarray,
        parent_gen: np.ndarray,
        gen_table: np.ndarray,
        length: np.ndarray | None = None,
    ):
        self.type = as_type(t)
        self.rank = self.type.rank
        self.action: ProductRoots = root_action(self.type)
        self.perms = perms
        self.parent = parent
        self.parent_gen = parent_gen
        self.gen_table = gen_table
        self.order = len(perms)
        self._index = _KeyIndex(max(self.action.size, 1), self.rank)
        keys = self._index.keys(perms[:, self.action.simple_cols])
        self._index.table = {k: i for i, k in enumerate(keys.tolist() if self._index.packed else keys)}
        if len(self._index.table) != self.order:
            raise ValueError("element table contains duplicates")
        self._index.freeze()
        self.gens: tuple[int, ...] = tuple(int(x) for x in gen_table[0]) if self.rank else ()
        self.inverse = self.lookup(np.argsort(perms, axis=1)) if self.action.size else np.zeros(1, dtype=np.int64)
        self.reflections: tuple[int, ...] = self._conjugacy_closure(self.gens)
        self._reflection_set = frozenset(self.reflections)
        self.length = self._absolute_lengths() if length is None else np.asarray(length)
        plus, minus = bipartition(self.type)
        self.s_plus, self.s_minus = plus, minus
        self.c_plus = self.product([self.gens[s] for s in plus])
        self.c_minus = self.product([self.gens[s] for s in minus])
        self.c = self.compose(self.c_minus, self.c_plus)

    # -- element table ------------------------------------------------------

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        """Ids of the permutations given as rows (shape (..., nroots))."""
        if self.rank == 0:
            return np.zeros(rows.shape[:-1], dtype=np.int64)
        return self._index.lookup(rows[..., self.action.simple_cols])

    def lookup_simple_images(self, images: np.ndarray) -> np.ndarray:
        """Ids from the root indices of ``w(alpha_s)`` (shape (..., rank))."""
        if self.rank == 0:
            return np.zeros(images.shape[:-1], dtype=np.int64)
        return self._index.lookup(np.asarray(images))

    def element(self, w: int) -> GroupElement:
        self._check(w)
        return GroupElement(self, w)

    def _check(self, *ws: int) -> None:
        for w in ws:
            if not (0 <= int(w) < self.order):
                raise ValueError(f"element id {w} not in {self.type} (order {self.order})")

    def compose(self, u: int, v: int) -> int:
        self._check(u, v)
        if self.rank == 0:
            return 0
        return int(self.lookup(self.perms[u][self.perms[v]]))

    def compose_many(self, us: np.ndarray, vs: np.ndarray) -> np.ndarray:
        """Elementwise products ``us[k] * vs[k]``."""
        us, vs = np.broadcast_arrays(np.asarray(us), np.asarray(vs))
        if self.rank == 0:
            return np.zeros(np.broadcast(us, vs).shape, dtype=np.int64)
        pu, pv = self.perms[us], self.perms[vs]
        rows = np.take_along_axis(pu, pv, axis=-1)
        return self.lookup(rows)

    def product(self, word: Sequence[int]) -> int:
        w = 0
        for x in word:
            w = self.compose(w, x)
        return w

    def invert(self, u: int) -> int:
        self._check(u)
        return int(self.inverse[u])

    def conjugate(self, w: int, u: int) -> int:
        """``w u w^-1``."""
        return self.compose(self.compose(w, u), self.invert(w))

    def _conjugacy_closure(self, seeds: Sequence[int]) -> tuple[int, ...]:
        seen = list(dict.fromkeys(seeds))
        members = set(seen)
        head = 0
        while head < len(seen):
            t = seen[head]
            head += 1
            for g in self.gens:
                x = self.compose(self.compose(g, t), g)
                if x not in members:
                    members.add(x)
                    seen.append(x)
        return tuple(sorted(seen))

    # -- absolute order -------------------------------------------------------

    def _absolute_lengths(self) -> np.ndarray:
        length = np.full(self.order, -1, dtype=np.int64)
        length[0] = 0
        if not self.reflections:
            return length
        tperm = self.perms[list(self.reflections)]
        frontier = np.array([0], dtype=np.int64)
        level = 0
        while len(frontier):
            level += 1
            found = []
            for lo in range(0, len(frontier), 4096):
                block = self.perms[frontier[lo:lo + 4096]]
                rows = block[:, tperm]  # (block, |T|, nroots): w*t
                ids = self.lookup(rows).reshape(-1)
                found.append(ids[length[ids] < 0])
            nxt = np.unique(np.concatenate(found))
            length[nxt] = level
            frontier = nxt
        if (length < 0).any():
            raise AssertionError("reflections do not generate the group")
        return length

    def absolute_length(self, w: int) -> int:
        self._check(w)
        return int(self.length[w])

    def is_reflection(self, t: int) -> bool:
        return int(t) in self._reflection_set

    def abs_leq(self, u: int, v: int) -> bool:
        """``u <= v`` in absolute order: l(u) + l(u^-1 v) = l(v)."""
        d = self.compose(self.invert(u), v)
        return int(self.length[u] + self.length[d]) == int(self.length[v])

    # -- Coxeter elements -------------------------------------------------------

    def coxeter_element(self, order: Sequence[int]) -> int:
        """Product ``s_{order[0]} s_{order[1]} ...`` of all simple generators."""
        if sorted(order) != list(range(self.rank)):
            raise ValueError(f"{list(order)} is not a permutation of the simple generators")
        return self.product([self.gens[s] for s in order])

    def bipartite_coxeter(self) -> tuple[int, int, int]:
        return self.c_minus, self.c_plus, self.c

    def c_plus_word(self, k: int) -> int:
        """Alternating product of |k| factors: ``... c- c+`` (k >= 0, rightmost
        factor c+) or ``c+ c- ...`` (k < 0, leftmost factor c+)."""
        letters = [self.c_plus if i % 2 == 0 else self.c_minus for i in range(abs(k))]
        if k >= 0:
            letters.reverse()
        return self.product(letters)

    def element_order(self, w: int) -> int:
        x, k = w, 1
        while x != 0:
            x = self.compose(x, w)
            k += 1
        return k

    # -- Steinberg's dihedral action --------------------------------------------

    def _require_irreducible(self, what: str) -> None:
        if not self.type.is_irreducible:
            raise ValueError(f"{what} needs an irreducible system, got {self.type}")

    def k_of_t(self, t: int) -> tuple[int, int]:
        """Smallest ``k >= 0`` such that conjugating ``t`` by ``c_+^<k>`` and by
        ``c_+^<k+1>`` gives the same simple reflection ``s``; returns ``(k, s)``
        with ``s`` a vertex."""
        if not self.is_reflection(t):
            raise ValueError(f"element {t} is not a reflection")
        self._require_irreducible("k(t)")
        h = invariants(self.type).h
        gen_vertex = {g: s for s, g in enumerate(self.gens)}
        prev = self.conjugate(self.c_plus_word(0), t)
        for k in range(2 * h + 1):
            nxt = self.conjugate(self.c_plus_word(k + 1), t)
            if prev == nxt and prev in gen_vertex:
                return k, gen_vertex[prev]
            prev = nxt
        raise AssertionError(f"no k(t) for reflection {t}")

    def steinberg_orbit(self, t: int) -> SteinbergOrbit:
        if not self.is_reflection(t):
            raise ValueError(f"element {t} is not a reflection")
        self._require_irreducible("Steinberg orbits")
        orbit, stack = {t}, [t]
        while stack:
            x = stack.pop()
            for g in (self.c_plus, self.c_minus):
                y = self.conjugate(g, x)
                if y not in orbit:
                    orbit.add(y)
                    stack.append(y)
        simple = frozenset(s for s, g in enumerate(self.gens) if g in orbit)
        return SteinbergOrbit(frozenset(orbit), len(orbit), simple)

    def steinberg_orbits(self) -> list[SteinbergOrbit]:
        left, out = set(self.reflections), []
        for t in self.reflections:
            if t in left:
                orb = self.steinberg_orbit(t)
                left -= orb.elements
                out.append(orb)
        return out

    # -- parabolic subgroups ------------------------------------------------------

    def parabolic(self, s: int, max_order: int = DEFAULT_MAX_ORDER) -> Parabolic:
        """Standalone system for the subgroup generated by ``S - {s}`` and its
        embedding, matching simple generators through the vertex map."""
        sub_type, vmap = delete_vertex_map(self.type, s)
        sub = build_group(sub_type, max_order)
        emb = np.zeros(sub.order, dtype=np.int64)
        for e in range(1, sub.order):
            emb[e] = self.gen_table[emb[sub.parent[e]], vmap[sub.parent_gen[e]]]
        return Parabolic(sub, emb, vmap, s)

    def __repr__(self) -> str:
        return f"CoxeterSystem({self.type}, order={self.order})"


def _closure(action: ProductRoots, max_order: int):
    n, size = action.gens.shape[0], action.size
    if n == 0:
        one = np.zeros(1, dtype=np.int64)
        return np.zeros((1, 0), dtype=np.int16), one - 1, one - 1, np.zeros((1, 0), dtype=np.int64)
    index = _KeyIndex(max(size, 1), n)
    ident = np.arange(size, dtype=np.int16)
    chunks = [ident[None, :]]
    first = index.keys(ident[action.simple_cols][None, :])
    index.table[first.tolist()[0] if index.packed else first[0]] = 0
    parent, parent_gen = [-1], [-1]
    gen_rows: list[np.ndarray] = []
    frontier = chunks[0]
    next_id = 1
    gperm = action.gens.astype(np.intp)
    while len(frontier):
        children = frontier[:, gperm]  # (F, n, size): w * s_g
        keys = index.keys(children[:, :, action.simple_cols])
        keys = keys.tolist() if index.packed else [keys[i:i + n] for i in range(0, len(keys), n)]
        base = next_id - len(frontier)
        table = np.empty((len(frontier), n), dtype=np.int64)
        new_f, new_g = [], []
        for f, row in enumerate(keys):
            for g, k in enumerate(row):
                w = index.table.get(k)
                if w is None:
                    w = index.table[k] = next_id
                    next_id += 1
                    parent.append(base + f)
                    parent_gen.append(g)
                    new_f.append(f)
                    new_g.append(g)
                table[f, g] = w
        if next_id > max_order:
            raise ResourceBoundExceeded(f"group order exceeds bound {max_order}")
        gen_rows.append(table)
        frontier = children[new_f, new_g] if new_f else children[:0, 0]
        if len(frontier):
            chunks.append(frontier)
    perms = np.concatenate(chunks).astype(np.int16 if size < 2**15 else np.int32)
    gen_table = np.concatenate(gen_rows) if n else np.zeros((1, 0), dtype=np.int64)
    return perms, np.array(parent), np.array(parent_gen), gen_table


@lru_cache(maxsize=64)
def build_group(t: CoxeterType | str, max_order: int = DEFAULT_MAX_ORDER) -> CoxeterSystem:
    """Enumerate ``W`` by breadth-first closure over the simple generators."""
    t = as_type(t)
    expected = invariants(t).order
    if expected > max_order:
        raise ResourceBoundExceeded(
            f"|W({t})| = {expected} exceeds bound {max_order}; use closed forms or the interval backend"
        )
    perms, parent, parent_gen, gen_table = _closure(root_action(t), max_order)
    if len(perms) != expected:
        raise AssertionError(f"enumerated {len(perms)} elements of {t}, expected {expected}")
    return CoxeterSystem(t, perms, parent, parent_gen, gen_table)
