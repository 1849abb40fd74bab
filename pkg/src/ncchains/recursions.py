"""Brute-force checks of the chain-count recursions and identities.

Every check returns a ``VerificationReport``.  Counts on reducible
parabolic subgroups are always assembled from their irreducible factors with
the product rule for ``C_j``, so that rule is exercised by every recursion
that touches a reducible parabolic.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Any, Sequence

import numpy as np

from . import formulas
from .diagram import CoxeterType, as_type, delete_vertex, invariants
from .group import build_group
from .nclattice import NcLattice, build_interval, build_lattice
from .poset import check_composition, sub_compositions

BACKENDS = ("bfs", "matrix")


def _wire(x: Any) -> Any:
    """Integers as decimal strings and fractions as ``p/q``."""
    if isinstance(x, bool):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (list, tuple)):
        return [_wire(v) for v in x]
    if isinstance(x, dict):
        return {k: _wire(v) for k, v in x.items()}
    return x


@dataclass
class VerificationReport:
    identity: str
    type: str
    params: dict
    left: int | Fraction
    right: int | Fraction
    passed: bool
    expected: bool = True
    elapsed_ms: float = 0.0
    note: str = ""
    details: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """The outcome is the predicted one (a match, or a documented mismatch)."""
        return self.passed == self.expected

    def to_record(self) -> dict:
        return {
            "identity": self.identity,
            "type": self.type,
            "params": self.params,
            "left": _wire(self.left),
            "right": _wire(self.right),
            "pass": self.passed,
            "expected": self.expected,
            "ok": self.ok,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "note": self.note,
        }


def _report(identity, t, params, left, right, start, expected=True, note="") -> VerificationReport:
    right = Fraction(right) if not isinstance(right, Fraction) else right
    passed = right.denominator == 1 and left == right
    value = right.numerator if right.denominator == 1 else right
    return VerificationReport(
        identity, str(t), params, left, value, passed, expected, (time.perf_counter() - start) * 1e3, note
    )


# -- cached lattices and counts ---------------------------------------------------


@lru_cache(maxsize=None)
def _lattice(name: str, backend: str) -> NcLattice:
    if backend == "bfs":
        return build_lattice(build_group(name))
    if backend == "matrix":
        from .interval import build_interval_lattice

        return build_interval_lattice(name)
    raise ValueError(f"unknown backend {backend!r}; choose from {BACKENDS}")


def lattice(t, backend: str = "bfs") -> NcLattice:
    return _lattice(as_type(t).canonical().render(), backend)


def _key(t) -> str:
    return as_type(t).canonical().render()


@lru_cache(maxsize=None)
def _direct(name: str, j: tuple[int, ...], backend: str) -> int:
    return lattice(name, backend).count_rank_jump(j)


def direct_count(t, j: Sequence[int], backend: str = "bfs") -> int:
    """``C_j(W)`` counted on the lattice of ``t`` itself."""
    return _direct(_key(t), tuple(j), backend)


@lru_cache(maxsize=None)
def _reducible(name: str, j: tuple[int, ...], backend: str) -> int:
    t = as_type(name)
    if len(t.factors) <= 1:
        return _direct(name, j, backend)
    first = CoxeterType(t.factors[:1])
    rest = CoxeterType(t.factors[1:])
    diff = lambda a: tuple(x - y for x, y in zip(j, a))  # noqa: E731
    return sum(
        _reducible(first.render(), a, backend) * _reducible(rest.render(), diff(a), backend)
        for a in sub_compositions(j, first.rank)
    )


def reducible_count(t, j: Sequence[int], backend: str = "bfs") -> int:
    """``C_j(W)`` assembled from irreducible factors:
    ``sum over j' <= j, |j'| = n_1`` of ``C_j'(W_1) C_(j-j')(W_2)``."""
    t = as_type(t).canonical()
    return _reducible(t.render(), check_composition(j, t.rank), backend)


def _family_compositions(n: int, family: str, k: int = 0) -> list[tuple[int, ...]]:
    """Compositions whose ``C_j`` add up to the named count."""
    if family == "MC":
        return [(1,) * n or (0,)]
    if family == "TW":
        return [(1,) * k + (n - k,)]
    if family == "NC":
        return [(i, n - i) for i in range(n + 1)]
    if family == "E":
        family, k = "SC", 1
    if family == "SC":
        if k == 0:
            return [(i, n - i) for i in range(n + 1)]
        return [(i,) + (1,) * k + (n - i - k,) for i in range(n - k + 1)]
    raise ValueError(f"unknown family {family!r}")


def family_count(t, family: str, k: int = 0, backend: str = "bfs") -> int:
    """MC, TW_k, NC, E or SC_k of ``t`` as a sum of ``C_j`` (product rule on factors)."""
    t = as_type(t)
    if not 0 <= k <= t.rank:
        return 0
    return sum(reducible_count(t, j, backend) for j in _family_compositions(t.rank, family, k))


def _irreducible_h(t: CoxeterType, what: str) -> int:
    if not t.is_irreducible:
        raise ValueError(f"{what} needs an irreducible type, got {t}")
    return t.factors[0].coxeter_number


def _deleted(j: tuple[int, ...], i: int) -> tuple[int, ...]:
    if not 1 <= i <= len(j):
        raise ValueError(f"position {i} outside 1..{len(j)}")
    if j[i - 1] != 1:
        raise ValueError(f"j_{i} = {j[i - 1]}, the recursion needs j_i = 1")
    return j[: i - 1] + j[i:]


# -- jump recursions ---------------------------------------------------------------


def verify_jump_recursion(t, j: Sequence[int], i: int, backend: str = "bfs") -> VerificationReport:
    """``C_j(W) = h/2 sum_s C_(j without j_i)(W_<s>)`` for irreducible W."""
    start = time.perf_counter()
    t = as_type(t)
    h = _irreducible_h(t, "the jump recursion")
    j = check_composition(j, t.rank)
    jd = _deleted(j, i)
    left = direct_count(t, j, backend)
    right = Fraction(h, 2) * sum(reducible_count(delete_vertex(t, s), jd, backend) for s in range(t.rank))
    return _report("jump", t, {"j": list(j), "i": i}, left, right, start)


def verify_one_formula(t, j: Sequence[int], i: int, backend: str = "bfs") -> VerificationReport:
    """``C_j(W) = 1/2 sum_s h_s C_(j without j_i)(W_<s>)`` for any W."""
    start = time.perf_counter()
    t = as_type(t)
    j = check_composition(j, t.rank)
    jd = _deleted(j, i)
    hs = invariants(t).h_s
    left = direct_count(t, j, backend)
    right = Fraction(1, 2) * sum(hs[s] * reducible_count(delete_vertex(t, s), jd, backend) for s in range(t.rank))
    return _report("one-formula", t, {"j": list(j), "i": i}, left, right, start)


def verify_reducible_product(t1, t2, j: Sequence[int], backend: str = "bfs") -> VerificationReport:
    """Direct count on ``W1 x W2`` against the sum over splittings of ``j``."""
    start = time.perf_counter()
    t1, t2 = as_type(t1), as_type(t2)
    t = t1 * t2
    j = check_composition(j, t.rank)
    left = direct_count(t, j, backend)
    right = 0
    for a in sub_compositions(j, t1.rank):
        b = tuple(x - y for x, y in zip(j, a))
        right += direct_count(t1, a, backend) * direct_count(t2, b, backend)
    return _report("reducible", t, {"factors": [str(t1), str(t2)], "j": list(j)}, left, right, start)


def verify_max_reducible(t1, t2, backend: str = "bfs") -> VerificationReport:
    """``MC(W1 x W2) = binom(n1+n2, n1) MC(W1) MC(W2)``."""
    start = time.perf_counter()
    t1, t2 = as_type(t1), as_type(t2)
    t = t1 * t2
    left = lattice(t, backend).count_maximal_chains()
    mc1 = lattice(t1, backend).count_maximal_chains()
    mc2 = lattice(t2, backend).count_maximal_chains()
    right = comb(t.rank, t1.rank) * mc1 * mc2
    return _report("max-reducible", t, {"factors": [str(t1), str(t2)]}, left, right, start)


# -- Steinberg orbits ------------------------------------------------------------


def verify_steinberg(t) -> VerificationReport:
    """Orbits of T under conjugation by <c+, c->: size h meeting S twice, or
    size h/2 meeting S once, and together they partition T."""
    start = time.perf_counter()
    t = as_type(t)
    h = _irreducible_h(t, "the orbit dichotomy")
    W = build_group(t)
    orbits = W.steinberg_orbits()
    covered = sorted(x for o in orbits for x in o.elements)
    partition = covered == sorted(W.reflections)
    good = sum(1 for o in orbits if o.dichotomy_holds(h))
    rep = _report("steinberg", t, {"orbits": len(orbits)}, good, len(orbits), start)
    rep.passed = rep.passed and partition
    rep.note = "orbit sizes " + ",".join(str(o.size) for o in orbits)
    if not partition:
        rep.note += "; orbits do not partition T"
    return rep


# -- zeta polynomial and Fuss-Catalan --------------------------------------------


def _zeta_via_product(t: CoxeterType, m: int, backend: str) -> int:
    """``Z(L, m+1)``: the m-element multichains, summed over rank jumps."""
    from .poset import compositions

    if m == 0:
        return 1
    return sum(reducible_count(t, j, backend) for j in compositions(t.rank, m + 1))


def verify_zeta_recursion(t, m: int, backend: str = "bfs") -> VerificationReport:
    """``Z(L_W, m+1) = (mh+2)/(2n) sum_s Z(L_W<s>, m+1)``."""
    start = time.perf_counter()
    t = as_type(t)
    h = _irreducible_h(t, "the zeta recursion")
    n = t.rank
    left = lattice(t, backend).zeta_value(m)
    total = sum(_zeta_via_product(delete_vertex(t, s), m, backend) for s in range(n))
    right = Fraction(m * h + 2, 2 * n) * total
    rep = _report("zeta", t, {"m": m}, left, right, start)
    if right.denominator != 1:
        rep.note = "non-integral right side"
    return rep


def verify_zeta_fuss_catalan(t, m: int, backend: str = "bfs") -> VerificationReport:
    start = time.perf_counter()
    t = as_type(t)
    return _report("zeta-fuss-catalan", t, {"m": m}, lattice(t, backend).zeta_value(m), formulas.fuss_catalan(t, m), start)


def verify_nc_recursion(t, backend: str = "bfs") -> VerificationReport:
    """``NC(W) = (h+2)/(2n) sum_s NC(W<s>)`` with the parabolic lattices built
    on their own and counted by size."""
    start = time.perf_counter()
    t = as_type(t)
    h = _irreducible_h(t, "the NC recursion")
    n = t.rank
    left = lattice(t, backend).size
    sizes = [lattice(delete_vertex(t, s), backend).size for s in range(n)]
    right = Fraction(h + 2, 2 * n) * sum(sizes)
    return _report("nc-recursion", t, {"parabolic_sizes": sizes}, left, right, start)


# -- edges -----------------------------------------------------------------------


def verify_edge_pair_count(t) -> VerificationReport:
    """``E(W) = #{(s, x) : x in L_W, x not in W<s>}``, any W."""
    start = time.perf_counter()
    t = as_type(t)
    W = build_group(t)
    L = lattice(t)
    members = L.elements
    total = 0
    for s in range(t.rank):
        P = W.parabolic(s)
        inside = np.isin(members, P.embedding)
        total += int((~inside).sum())
    return _report("edge-pairs", t, {}, L.count_edges(), total, start)


def verify_edge_formula(t, backend: str = "bfs") -> VerificationReport:
    start = time.perf_counter()
    t = as_type(t)
    return _report("edge-formula", t, {}, lattice(t, backend).count_edges(), formulas.edge_closed(t), start)


# -- corollaries of the jump recursion ------------------------------------------------


def _left_family(L: NcLattice, family: str, k: int) -> int:
    if family == "MC":
        return L.count_maximal_chains()
    if family == "TW":
        return L.count_tw(k)
    if family == "E":
        return L.count_edges()
    if family == "SC":
        return L.count_sc(k)
    raise ValueError(f"unknown family {family!r}")


def verify_corollary_family(t, which: str, k: int = 1, backend: str = "bfs") -> VerificationReport:
    """MC, TW_k, E and SC_k each equal ``h/2`` times a sum over parabolics
    (MC, TW_{k-1}, NC and SC_{k-1} respectively)."""
    start = time.perf_counter()
    t = as_type(t)
    h = _irreducible_h(t, "the corollary recursions")
    which = which.upper()
    if which in ("TW", "SC") and not 1 <= k <= t.rank:
        raise ValueError(f"{which} recursion needs 1 <= k <= {t.rank}")
    left = _left_family(lattice(t, backend), which, k)
    sub_family, sub_k = {"MC": ("MC", 0), "TW": ("TW", k - 1), "E": ("NC", 0), "SC": ("SC", k - 1)}[which]
    total = sum(family_count(delete_vertex(t, s), sub_family, sub_k, backend) for s in range(t.rank))
    params = {"which": which} if which in ("MC", "E") else {"which": which, "k": k}
    return _report("corollaries", t, params, left, Fraction(h, 2) * total, start)


def verify_mc_closed(t, backend: str = "bfs") -> VerificationReport:
    start = time.perf_counter()
    t = as_type(t)
    left = lattice(t, backend).count_maximal_chains()
    rep = _report("mc-closed", t, {}, left, formulas.mc_closed(t), start)
    if t.is_irreducible and formulas.mc_table(t) != left:
        rep.passed = False
        rep.note = f"table value {formulas.mc_table(t)}"
    return rep


def verify_tw_f(t, k: int, backend: str = "bfs") -> VerificationReport:
    """``TW_k = k! [m^k] f_k(W, m)``."""
    start = time.perf_counter()
    t = as_type(t)
    return _report("tw-f", t, {"k": k}, lattice(t, backend).count_tw(k), formulas.tw_from_fk(t, k), start)


# -- saturated chains ------------------------------------------------------------------


def verify_sc_identities(t, backend: str = "bfs") -> list[VerificationReport]:
    """SC_0 = NC, SC_1 = E, SC_{n-1} = 2 n! h^n/|W| and SC_n = MC."""
    t = as_type(t)
    L = lattice(t, backend)
    n = t.rank
    out = []
    checks = [
        (0, "SC0=NC", lambda: formulas.nc_closed(t)),
        (1, "SC1=E", lambda: L.count_edges()),
        (n - 1, "SC_{n-1}", lambda: formulas.sc_top_closed(t)),
        (n, "SCn=MC", lambda: L.count_maximal_chains()),
    ]
    for k, name, rhs in checks:
        start = time.perf_counter()
        out.append(_report("sc-identity", t, {"k": k, "claim": name}, L.count_sc(k), rhs(), start))
    return out


def verify_obvious(t, k: int, backend: str = "bfs") -> VerificationReport:
    """Compare SC_k with the naive product formula.  Equality is only
    predicted for k in {0, 1, n-1, n}; elsewhere a mismatch is expected."""
    start = time.perf_counter()
    t = as_type(t)
    n = t.rank
    expected = k in (0, 1, n - 1, n)
    left = lattice(t, backend).count_sc(k)
    right = formulas.obvious_formula(t, k)
    rep = _report("obvious", t, {"k": k}, left, right, start, expected=expected)
    rep.note = "equal" if rep.passed else "mismatch"
    if not rep.ok:
        rep.note += " (contrary to the predicted outcome)"
    return rep


# -- parabolic intervals -------------------------------------------------------------


def verify_lemma_para(t, s: int) -> VerificationReport:
    """Deleting ``s`` from the word ``c_- c_+`` gives ``c'`` with ``[1, c']`` in W
    equal to the image of ``[1, c']`` computed inside ``W<s>``."""
    start = time.perf_counter()
    t = as_type(t)
    W = build_group(t)
    word = [W.gens[v] for v in W.s_minus + W.s_plus if v != s]
    c_prime = W.product(word)
    big = build_interval(W, c_prime)
    P = W.parabolic(s)
    inv_map = {old: new for new, old in enumerate(P.vertex_map)}
    local = P.system.product([P.system.gens[inv_map[v]] for v in W.s_minus + W.s_plus if v != s])
    small = build_interval(P.system, local)
    image = P.embedding[small.elements]
    same_set = sorted(image.tolist()) == sorted(big.elements.tolist())
    same_order = False
    if same_set:
        pos = [big.position[int(x)] for x in image]
        same_order = bool(np.array_equal(small.leq(), big.leq()[np.ix_(pos, pos)]))
    rep = _report("lemma-para", t, {"s": s}, big.size, small.size, start)
    rep.passed = rep.passed and same_set and same_order
    return rep


def verify_permute(t, j: Sequence[int], perm: Sequence[int], backend: str = "bfs") -> VerificationReport:
    """``C_j`` does not change when the parts of ``j`` are permuted."""
    start = time.perf_counter()
    t = as_type(t)
    j = check_composition(j, t.rank)
    pj = tuple(j[p] for p in perm)
    return _report("permute", t, {"j": list(j), "permuted": list(pj)}, direct_count(t, j, backend), direct_count(t, pj, backend), start)


def clear_caches() -> None:
    for f in (_lattice, _direct, _reducible):
        f.cache_clear()
