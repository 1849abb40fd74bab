"""Command line: ``ncchains count | verify | table``."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Iterator

from . import formulas, mdivisible, recursions
from .cache import Cache
from .diagram import TypeParseError, as_type, invariants, parse_type
from .group import DEFAULT_MAX_ORDER, ResourceBoundExceeded
from .nclattice import DEFAULT_MAX_LATTICE, NcLattice
from .poset import compositions
from .recursions import VerificationReport, _wire

log = logging.getLogger("ncchains")

IDENTITIES = (
    "jump", "one-formula", "reducible", "steinberg", "zeta", "nc-recursion",
    "edge-pairs", "corollaries", "m-jump", "tw-f", "obvious",
)

# the naive SC_k formula is informational: its failures do not set the exit status
INFORMATIONAL = {"obvious"}


class UsageError(ValueError):
    pass


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def parse_quantity(text: str) -> tuple[str, tuple[int, ...]]:
    """``nc``, ``mc``, ``edges``, ``tw:k``, ``sc:k``, ``rank-jump:j1,j2,..``, ``zeta:m``."""
    name, _, arg = text.partition(":")
    name = name.strip().lower()
    if name in ("nc", "mc", "edges"):
        if arg:
            raise UsageError(f"{name} takes no argument")
        return name, ()
    if name in ("tw", "sc", "zeta"):
        vals = _ints(arg)
        if len(vals) != 1:
            raise UsageError(f"{name} needs one integer, e.g. {name}:2")
        return name, vals
    if name == "rank-jump":
        vals = _ints(arg)
        if not vals:
            raise UsageError("rank-jump needs a composition, e.g. rank-jump:1,1,1")
        return name, vals
    raise UsageError(f"unknown quantity {text!r}")


# -- count ----------------------------------------------------------------------


def _brute_count(P, name: str, args: tuple[int, ...]) -> int:
    if name == "nc":
        return P.size
    if name == "mc":
        return P.count_maximal_chains()
    if name == "edges":
        return P.count_edges()
    if name == "sc":
        return P.count_sc(args[0]) if isinstance(P, NcLattice) else P.count_saturated(args[0])
    if name == "tw":
        if not isinstance(P, NcLattice):
            raise UsageError("tw:k is defined on L_W only (drop --m)")
        return P.count_tw(args[0])
    if name == "zeta":
        if not isinstance(P, NcLattice):
            raise UsageError("zeta:m is defined on L_W only (drop --m)")
        return P.zeta_value(args[0])
    return P.count_rank_jump(args)


def closed_form(t, name: str, args: tuple[int, ...], m: int = 1) -> int | None:
    """The closed-form value for a quantity, or None when there is none."""
    t = as_type(t)
    n = t.rank
    irred = t.is_irreducible
    if name == "nc":
        return formulas.fuss_catalan(t, m)
    if name == "mc":
        return formulas.m_mc_closed(t, m)
    if name == "edges":
        return (formulas.edge_closed(t) if m == 1 else formulas.m_edge_closed(t, m)) if irred else None
    if name == "zeta":
        return formulas.fuss_catalan(t, args[0])
    if name == "tw" and m == 1:
        return formulas.tw_from_fk(t, args[0])
    if name == "sc" and m == 1 and irred and n >= 1:
        k = args[0]
        if k == 0:
            return formulas.nc_closed(t)
        if k == 1:
            return formulas.edge_closed(t)
        if k == n - 1:
            return formulas.sc_top_closed(t)
        if k == n:
            return formulas.mc_closed(t)
    return None


def _build(t, args: argparse.Namespace):
    if args.backend == "matrix":
        from .interval import build_interval_lattice

        return build_interval_lattice(t, max_size=args.max_lattice)
    return Cache(args.cache_dir).lattice(t, args.max_order, args.max_lattice)


def cmd_count(args: argparse.Namespace) -> int:
    t = parse_type(args.type)
    name, qargs = parse_quantity(args.quantity)
    if args.m < 1:
        raise UsageError("--m must be at least 1")
    start = time.perf_counter()
    record: dict = {"quantity": args.quantity, "type": t.render(), "params": {"m": args.m}}
    value = None
    try:
        L = _build(t, args)
        P = L if args.m == 1 else mdivisible.build_m_poset(L, args.m)
        value = _brute_count(P, name, qargs)
        record["source"] = "brute-force"
    except ResourceBoundExceeded as exc:
        if not args.closed_form:
            raise
        log.info("%s; falling back to the closed form", exc)
    if args.closed_form:
        cf = closed_form(t, name, qargs, args.m)
        record["closed_form"] = _wire(cf) if cf is not None else None
        if value is None:
            if cf is None:
                raise UsageError(f"no closed form for {args.quantity} and {t} cannot be built")
            value = cf
            record["source"] = "closed-form"
        elif cf is not None:
            record["match"] = cf == value
    record["value"] = _wire(value)
    record["elapsed_ms"] = round((time.perf_counter() - start) * 1e3, 3)
    print(json.dumps(record))
    return 0 if record.get("match", True) else 1


# -- verify -----------------------------------------------------------------------


def _jump_instances(n: int, j, i, max_parts: int = 4) -> Iterator[tuple[tuple[int, ...], int]]:
    if j is not None:
        positions = [i] if i is not None else [p + 1 for p, x in enumerate(j) if x == 1]
        for p in positions:
            yield tuple(j), p
        return
    for parts in range(1, max_parts + 1):
        for comp in compositions(n, parts):
            for p, x in enumerate(comp):
                if x == 1 and (i is None or i == p + 1):
                    yield comp, p + 1


def verify_reports(t, identity: str, args: argparse.Namespace) -> Iterator[VerificationReport]:
    t = as_type(t)
    n = t.rank
    backend = args.backend
    if identity == "jump":
        for j, i in _jump_instances(n, args.j, args.i):
            yield recursions.verify_jump_recursion(t, j, i, backend)
    elif identity == "one-formula":
        for j, i in _jump_instances(n, args.j, args.i):
            yield recursions.verify_one_formula(t, j, i, backend)
    elif identity == "reducible":
        if len(t.factors) < 2:
            raise UsageError("reducible needs a product type such as A2xA1")
        t1, t2 = as_type(t.factors[0]), type(t)(t.factors[1:])
        comps = [tuple(args.j)] if args.j is not None else [c for p in range(1, 5) for c in compositions(n, p)]
        for j in comps:
            yield recursions.verify_reducible_product(t1, t2, j, backend)
        yield recursions.verify_max_reducible(t1, t2, backend)
    elif identity == "steinberg":
        yield recursions.verify_steinberg(t)
    elif identity == "zeta":
        ms = [args.m] if args.m is not None else range(5)
        for m in ms:
            if t.is_irreducible:
                yield recursions.verify_zeta_recursion(t, m, backend)
            yield recursions.verify_zeta_fuss_catalan(t, m, backend)
    elif identity == "nc-recursion":
        yield recursions.verify_nc_recursion(t, backend)
    elif identity == "edge-pairs":
        yield recursions.verify_edge_pair_count(t)
        if t.is_irreducible:
            yield recursions.verify_edge_formula(t, backend)
    elif identity == "corollaries":
        yield recursions.verify_corollary_family(t, "MC", backend=backend)
        yield recursions.verify_corollary_family(t, "E", backend=backend)
        ks = [args.k] if args.k is not None else range(1, n + 1)
        for k in ks:
            yield recursions.verify_corollary_family(t, "TW", k, backend)
            yield recursions.verify_corollary_family(t, "SC", k, backend)
        yield from recursions.verify_sc_identities(t, backend)
    elif identity == "m-jump":
        m = args.m if args.m is not None else 2
        for j, i in _jump_instances(n, args.j, args.i, max_parts=3):
            yield mdivisible.verify_m_jump_recursion(t, m, j, i)
    elif identity == "tw-f":
        ks = [args.k] if args.k is not None else range(n + 1)
        for k in ks:
            yield recursions.verify_tw_f(t, k, backend)
    elif identity == "obvious":
        ks = [args.k] if args.k is not None else range(n + 1)
        for k in ks:
            yield recursions.verify_obvious(t, k, backend)
    else:
        raise UsageError(f"unknown identity {identity!r}")


def cmd_verify(args: argparse.Namespace) -> int:
    t = parse_type(args.type)
    if invariants(t).order > args.max_order:
        raise ResourceBoundExceeded(f"|W({t})| exceeds bound {args.max_order}")
    failed = 0
    for rep in verify_reports(t, args.identity, args):
        print(json.dumps(rep.to_record()), flush=True)
        if not rep.passed and args.identity not in INFORMATIONAL:
            failed += 1
    if failed:
        log.error("%d of the reports failed", failed)
    return 1 if failed else 0


# -- table ------------------------------------------------------------------------

_RANGE = re.compile(r"^([A-Za-z])(\d+)\.\.(?:[A-Za-z])?(\d+)$")
_DIHEDRAL_RANGE = re.compile(r"^I2\((\d+)\.\.(\d+)\)$", re.IGNORECASE)
EXCEPTIONAL = ("E6", "E7", "E8", "F4", "H3", "H4")
TABLE_COLUMNS = ("type", "n", "h", "order", "NC", "MC", "E", "SC_top", "source")


def expand_sweep(tokens: Iterable[str]) -> list[str]:
    """``A1..A5``, ``I2(3..6)``, ``exceptional`` or plain type names."""
    out: list[str] = []
    for tok in tokens:
        tok = tok.strip()
        if tok.lower() == "exceptional":
            out.extend(EXCEPTIONAL)
        elif m := _DIHEDRAL_RANGE.match(tok):
            out.extend(f"I2({p})" for p in range(int(m.group(1)), int(m.group(2)) + 1))
        elif m := _RANGE.match(tok):
            fam = m.group(1).upper()
            out.extend(f"{fam}{r}" for r in range(int(m.group(2)), int(m.group(3)) + 1))
        else:
            out.append(tok)
    return out


def table_row(token: str, max_order: int = DEFAULT_MAX_ORDER, max_lattice: int = DEFAULT_MAX_LATTICE,
              cache_dir: str | None = None) -> dict:
    t = parse_type(token)
    if not t.is_irreducible:
        raise UsageError(f"table rows need irreducible types, got {token}")
    f = t.factors[0]
    row = {"type": token, "n": f.rank, "h": f.coxeter_number, "order": f.order}
    try:
        L = Cache(cache_dir).lattice(t, max_order, max_lattice)
        row.update(NC=L.size, MC=L.count_maximal_chains(), E=L.count_edges(),
                   SC_top=L.count_sc(f.rank - 1), source="brute-force")
    except ResourceBoundExceeded:
        row.update(NC=formulas.nc_closed(t), MC=formulas.mc_closed(t), E=formulas.edge_closed(t),
                   SC_top=formulas.sc_top_closed(t), source="closed-form")
    return row


def _table_row_job(job: tuple) -> dict:
    return table_row(*job)


def cmd_table(args: argparse.Namespace) -> int:
    tokens = expand_sweep(args.sweep)
    for tok in tokens:
        parse_type(tok)
    jobs = [(tok, args.max_order, args.max_lattice, args.cache_dir) for tok in tokens]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_table_row_job, jobs))
    else:
        rows = [_table_row_job(j) for j in jobs]
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=TABLE_COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: str(v) for k, v in row.items()})
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncchains",
        description="Exact chain counts in noncrossing partition lattices of finite Coxeter groups.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more diagnostics on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def bounds(p):
        p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER, help="largest |W| to enumerate")
        p.add_argument("--max-lattice", type=int, default=DEFAULT_MAX_LATTICE, help="largest lattice to build")
        p.add_argument("--cache-dir", default=None, help="cache directory (default $NCP_CACHE_DIR or ~/.cache/ncchains)")

    p = sub.add_parser("count", help="count one quantity on L_W or L^(m)_W")
    p.add_argument("type", help="Coxeter type, e.g. A3, H3, I2(5), B3xA1")
    p.add_argument("quantity", help="nc, mc, edges, tw:k, sc:k, rank-jump:j1,j2,..., zeta:m")
    p.add_argument("--m", type=int, default=1, help="count on the m-divisible poset (default 1)")
    p.add_argument("--closed-form", action="store_true", help="also report the closed form; use it when too large")
    p.add_argument("--backend", choices=recursions.BACKENDS, default="bfs")
    bounds(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="check a recursion or identity, one JSON line per instance")
    p.add_argument("type")
    p.add_argument("identity", choices=IDENTITIES)
    p.add_argument("--j", type=_ints, default=None, help="rank-jump composition, e.g. 1,1,1")
    p.add_argument("--i", type=int, default=None, help="1-based position with j_i = 1")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--backend", choices=recursions.BACKENDS, default="bfs")
    bounds(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="CSV of NC, MC, E and SC_{n-1} over a sweep of types")
    p.add_argument("sweep", nargs="+", help="A1..A5, I2(3..6), exceptional, or type names")
    p.add_argument("-o", "--output", default=None, help="write CSV here instead of stdout")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    bounds(p)
    p.set_defaults(func=cmd_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (TypeParseError, UsageError) as exc:
        print(f"ncchains: error: {exc}", file=sys.stderr)
        return 2
    except ResourceBoundExceeded as exc:
        print(f"ncchains: resource bound: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"ncchains: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
