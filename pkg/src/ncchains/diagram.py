"""Coxeter diagrams for the finite classification.

Vertex numbering (0-based) is fixed per family:

* ``A_n``: path ``0 - 1 - ... - (n-1)``.
* ``B_n``: same path, edge ``(0, 1)`` labelled 4.
* ``D_n``: path ``0 - ... - (n-2)`` plus vertex ``n-1`` attached to the
  branch vertex ``n-3``.
* ``E_n``: path ``0 - ... - (n-2)`` plus vertex ``n-1`` attached to the
  branch vertex ``2``.
* ``F_4``: path, edge ``(1, 2)`` labelled 4.
* ``H_3``, ``H_4``: path, edge ``(0, 1)`` labelled 5.
* ``I_2(m)``: the single edge ``(0, 1)`` labelled ``m``.

A reducible type numbers the vertices of its factors consecutively, in the
order the factors are listed.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence


class TypeParseError(ValueError):
    """Raised for malformed or out-of-range type descriptors."""


# (h, exponents) for the exceptional families, keyed by rank
_EXCEPTIONAL = {
    ("E", 6): (12, (1, 4, 5, 7, 8, 11), 51840),
    ("E", 7): (18, (1, 5, 7, 9, 11, 13, 17), 2903040),
    ("E", 8): (30, (1, 7, 11, 13, 17, 19, 23, 29), 696729600),
    ("F", 4): (12, (1, 5, 7, 11), 1152),
    ("H", 3): (10, (1, 5, 9), 120),
    ("H", 4): (30, (1, 11, 19, 29), 14400),
}


@dataclass(frozen=True, order=True)
class IrreducibleType:
    """One connected Coxeter diagram.  Use :func:`irreducible` to build."""

    family: str
    rank: int
    param: int = 0  # edge label of I2(m); 0 for the other families

    @property
    def name(self) -> str:
        if self.family == "I":
            return f"I2({self.param})"
        return f"{self.family}{self.rank}"

    def __str__(self) -> str:
        return self.name

    def edges(self) -> list[tuple[int, int, int]]:
        """Diagram edges ``(i, j, label)`` with ``i < j`` and label >= 3."""
        f, n = self.family, self.rank
        if f == "I":
            return [(0, 1, self.param)]
        path = [(i, i + 1, 3) for i in range(n - 1)]
        if f == "A":
            return path
        if f == "B":
            return [(0, 1, 4)] + path[1:]
        if f == "F":
            return [(0, 1, 3), (1, 2, 4), (2, 3, 3)]
        if f == "H":
            return [(0, 1, 5)] + path[1:]
        if f == "D":
            return [(i, i + 1, 3) for i in range(n - 2)] + [(n - 3, n - 1, 3)]
        if f == "E":
            return [(i, i + 1, 3) for i in range(n - 2)] + [(2, n - 1, 3)]
        raise AssertionError(f)

    @property
    def coxeter_number(self) -> int:
        return _table(self)[0]

    @property
    def exponents(self) -> tuple[int, ...]:
        return _table(self)[1]

    @property
    def order(self) -> int:
        return _table(self)[2]


def _table(t: IrreducibleType) -> tuple[int, tuple[int, ...], int]:
    f, n = t.family, t.rank
    if f == "A":
        return n + 1, tuple(range(1, n + 1)), math.factorial(n + 1)
    if f == "B":
        return 2 * n, tuple(range(1, 2 * n, 2)), 2**n * math.factorial(n)
    if f == "D":
        exps = tuple(sorted(list(range(1, 2 * n - 2, 2)) + [n - 1]))
        return 2 * n - 2, exps, 2 ** (n - 1) * math.factorial(n)
    if f == "I":
        m = t.param
        return m, (1, m - 1), 2 * m
    return _EXCEPTIONAL[(f, n)]


def irreducible(family: str, rank: int, param: int = 0) -> IrreducibleType:
    """Validate and normalize one factor (D3 -> A3, I2(3) -> A2, I2(4) -> B2)."""
    family = family.upper()
    if family == "I":
        if rank != 2:
            raise TypeParseError(f"I-family has rank 2, got {rank}")
        if param < 3:
            raise TypeParseError(f"I2(m) needs m >= 3, got {param}")
        if param == 3:
            return IrreducibleType("A", 2)
        if param == 4:
            return IrreducibleType("B", 2)
        return IrreducibleType("I", 2, param)
    if param:
        raise TypeParseError(f"family {family} takes no parameter")
    if family == "A" and rank >= 1:
        return IrreducibleType("A", rank)
    if family == "B" and rank >= 2:
        return IrreducibleType("B", rank)
    if family == "D" and rank >= 3:
        return IrreducibleType("A", 3) if rank == 3 else IrreducibleType("D", rank)
    if (family, rank) in _EXCEPTIONAL:
        return IrreducibleType(family, rank)
    raise TypeParseError(f"no finite Coxeter type {family}{rank}")


@dataclass(frozen=True)
class CoxeterType:
    """Ordered tuple of irreducible factors; the empty tuple is rank 0."""

    factors: tuple[IrreducibleType, ...] = ()

    @property
    def rank(self) -> int:
        return sum(f.rank for f in self.factors)

    @property
    def is_irreducible(self) -> bool:
        return len(self.factors) == 1

    def offsets(self) -> list[int]:
        """First vertex index of each factor."""
        out, acc = [], 0
        for f in self.factors:
            out.append(acc)
            acc += f.rank
        return out

    def factor_of(self, s: int) -> int:
        """Index of the factor containing vertex ``s``."""
        self._check_vertex(s)
        for k, (off, f) in enumerate(zip(self.offsets(), self.factors)):
            if off <= s < off + f.rank:
                return k
        raise AssertionError(s)

    def _check_vertex(self, s: int) -> None:
        if not (isinstance(s, int) and 0 <= s < self.rank):
            raise ValueError(f"vertex {s!r} out of range for {self.render()}")

    def canonical(self) -> CoxeterType:
        return CoxeterType(tuple(sorted(self.factors)))

    def render(self) -> str:
        if not self.factors:
            return "A0"
        return "x".join(f.name for f in self.factors)

    def __str__(self) -> str:
        return self.render()

    def __mul__(self, other: CoxeterType) -> CoxeterType:
        return CoxeterType(self.factors + other.factors)

    def edges(self) -> list[tuple[int, int, int]]:
        out = []
        for off, f in zip(self.offsets(), self.factors):
            out.extend((i + off, j + off, m) for i, j, m in f.edges())
        return out


_TOKEN = re.compile(r"^([A-Za-z])(\d+)(?:\((\d+)\))?$")


def parse_type(descriptor: str) -> CoxeterType:
    """Parse descriptors such as ``"A3"``, ``"B4xA1"``, ``"I2(7)"``, ``"h3*a2"``.

    Factor order is preserved, since it fixes the vertex numbering.
    ``"A0"`` denotes the trivial (rank 0) group.
    """
    text = descriptor.strip()
    if not text:
        raise TypeParseError("empty type descriptor")
    factors = []
    for token in re.split(r"\s*[xX*×]\s*", text):
        m = _TOKEN.match(token)
        if not m:
            raise TypeParseError(f"unknown token {token!r}")
        family, rank = m.group(1).upper(), int(m.group(2))
        param = int(m.group(3)) if m.group(3) else 0
        if family == "A" and rank == 0 and not param:
            continue
        if family == "I" and not param:
            raise TypeParseError(f"I2 needs a parameter, e.g. I2(5): {token!r}")
        factors.append(irreducible(family, rank, param))
    return CoxeterType(tuple(factors))


def as_type(t: CoxeterType | IrreducibleType | str) -> CoxeterType:
    if isinstance(t, CoxeterType):
        return t
    if isinstance(t, IrreducibleType):
        return CoxeterType((t,))
    return parse_type(t)


@dataclass(frozen=True)
class CoxeterMatrix:
    entries: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


def coxeter_matrix(t: CoxeterType) -> CoxeterMatrix:
    t = as_type(t)
    n = t.rank
    m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for i, j, label in t.edges():
        m[i][j] = m[j][i] = label
    return CoxeterMatrix(tuple(tuple(row) for row in m))


def _components(vertices: Sequence[int], mat: CoxeterMatrix) -> list[list[int]]:
    left, comps = set(vertices), []
    for v in sorted(vertices):
        if v not in left:
            continue
        comp, stack = [], [v]
        left.discard(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in sorted(left):
                if mat[u, w] > 2:
                    left.discard(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _classify(comp: list[int], mat: CoxeterMatrix) -> tuple[IrreducibleType, list[int]]:
    """Standard type of one connected subdiagram plus the vertex map
    (canonical vertex k -> original vertex)."""
    if len(comp) == 1:
        return IrreducibleType("A", 1), list(comp)
    nbrs = {v: [w for w in comp if w != v and mat[v, w] > 2] for v in comp}
    branch = [v for v in comp if len(nbrs[v]) >= 3]
    if not branch:
        ends = [v for v in comp if len(nbrs[v]) == 1]
        if len(ends) != 2:
            raise ValueError(f"subdiagram {comp} is not a tree")

        def walk(start: int) -> list[int]:
            path, prev = [start], None
            while len(path) < len(comp):
                nxt = [w for w in nbrs[path[-1]] if w != prev]
                prev = path[-1]
                path.append(nxt[0])
            return path

        path = walk(min(ends))
        labels = [mat[path[i], path[i + 1]] for i in range(len(path) - 1)]
        k = len(path)
        if all(x == 3 for x in labels):
            return IrreducibleType("A", k), path
        if k == 2:
            return irreducible("I", 2, labels[0]), path
        special = [i for i, x in enumerate(labels) if x != 3]
        if len(special) == 1:
            pos, label = special[0], labels[special[0]]
            if pos == len(labels) - 1:
                path, labels = path[::-1], labels[::-1]
                pos = 0
            if label == 4 and pos == 0:
                return IrreducibleType("B", k), path
            if label == 4 and k == 4 and pos == 1:
                return IrreducibleType("F", 4), path
            if label == 5 and pos == 0 and k in (3, 4):
                return IrreducibleType("H", k), path
        raise ValueError(f"subdiagram {comp} with labels {labels} is not finite type")

    if len(branch) != 1 or len(nbrs[branch[0]]) != 3:
        raise ValueError(f"subdiagram {comp} is not finite type")
    b = branch[0]
    if any(mat[u, w] != 3 for u in comp for w in nbrs[u]):
        raise ValueError(f"branched subdiagram {comp} must be simply laced")
    arms = []
    for start in nbrs[b]:
        arm, prev = [start], b
        while True:
            nxt = [w for w in nbrs[arm[-1]] if w != prev]
            if not nxt:
                break
            prev = arm[-1]
            arm.append(nxt[0])
        arms.append(arm)  # inner -> outer
    lengths = sorted(len(a) for a in arms)
    if lengths[:2] == [1, 1]:
        # long arm = longest, ties by smallest vertex
        arms.sort(key=lambda a: (-len(a), min(a)))
        long_arm, shorts = arms[0], sorted(arms[1:], key=min)
        n = len(comp)
        return IrreducibleType("D", n), long_arm[::-1] + [b] + [shorts[0][0], shorts[1][0]]
    if lengths[0] == 1 and lengths[1] == 2 and lengths[2] in (2, 3, 4):
        short = next(a for a in arms if len(a) == 1)
        rest = sorted((a for a in arms if a is not short), key=lambda a: (len(a), min(a)))
        two, long_arm = rest[0], rest[1]
        n = len(comp)
        return IrreducibleType("E", n), two[::-1] + [b] + long_arm + short
    raise ValueError(f"branched subdiagram {comp} with arms {lengths} is not finite type")


def restrict(t: CoxeterType, keep: Iterable[int]) -> tuple[CoxeterType, list[int]]:
    """Classify the subdiagram induced on ``keep``.

    Returns the canonical type (factors sorted) and the vertex map: new
    vertex ``k`` corresponds to original vertex ``vmap[k]``.
    """
    t = as_type(t)
    keep = sorted(set(keep))
    for s in keep:
        t._check_vertex(s)
    mat = coxeter_matrix(t)
    pieces = [_classify(comp, mat) for comp in _components(keep, mat)]
    pieces.sort(key=lambda p: (p[0], min(p[1])))
    vmap = [v for _, vs in pieces for v in vs]
    return CoxeterType(tuple(p[0] for p in pieces)), vmap


def delete_vertex_map(t: CoxeterType, s: int) -> tuple[CoxeterType, list[int]]:
    t = as_type(t)
    t._check_vertex(s)
    return restrict(t, (v for v in range(t.rank) if v != s))


def delete_vertex(t: CoxeterType, s: int) -> CoxeterType:
    """Type of the parabolic subgroup generated by all simple reflections but ``s``."""
    return delete_vertex_map(t, s)[0]


def bipartition(t: CoxeterType) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """``(S_plus, S_minus)``; the lowest vertex of each factor goes to ``S_minus``."""
    t = as_type(t)
    mat = coxeter_matrix(t)
    color: dict[int, int] = {}
    for comp in _components(range(t.rank), mat):
        color[comp[0]] = -1
        stack = [comp[0]]
        while stack:
            u = stack.pop()
            for w in comp:
                if mat[u, w] > 2:
                    if w not in color:
                        color[w] = -color[u]
                        stack.append(w)
                    elif color[w] == color[u]:
                        raise ValueError("diagram is not bipartite")
    plus = tuple(v for v in range(t.rank) if color[v] == 1)
    minus = tuple(v for v in range(t.rank) if color[v] == -1)
    return plus, minus


@dataclass(frozen=True)
class GroupInvariants:
    rank: int
    exponents: tuple[int, ...]
    order: int
    factor_h: tuple[int, ...]
    h_s: tuple[int, ...]  # Coxeter number of the factor containing each vertex

    @property
    def h(self) -> int:
        """Coxeter number; only defined for irreducible types."""
        if len(self.factor_h) != 1:
            raise ValueError("global Coxeter number requested for a reducible type")
        return self.factor_h[0]

    @property
    def reflections(self) -> int:
        return sum(self.exponents)


def invariants(t: CoxeterType) -> GroupInvariants:
    t = as_type(t)
    exps: list[int] = []
    order = 1
    h_s: list[int] = []
    for f in t.factors:
        exps.extend(f.exponents)
        order *= f.order
        h_s.extend([f.coxeter_number] * f.rank)
    return GroupInvariants(
        rank=t.rank,
        exponents=tuple(sorted(exps)),
        order=order,
        factor_h=tuple(f.coxeter_number for f in t.factors),
        h_s=tuple(h_s),
    )
