"""On-disk cache for group tables and BFS lattices (``.npz`` files).

The directory is chosen by ``--cache-dir``, then ``$NCP_CACHE_DIR``, then
``~/.cache/ncchains``.  Each file stores a format version and the canonical
type string; files that do not match are discarded and rebuilt.
"""

from __future__ import annotations

import logging
import os
import tempfile
from pathlib import Path

import numpy as np

from .diagram import as_type, invariants
from .group import DEFAULT_MAX_ORDER, CoxeterSystem, ResourceBoundExceeded, _closure
from .nclattice import DEFAULT_MAX_LATTICE, NcLattice, build_lattice
from .roots import root_action

FORMAT_VERSION = 1
ENV_VAR = "NCP_CACHE_DIR"

log = logging.getLogger(__name__)


def cache_dir(flag: str | os.PathLike | None = None) -> Path:
    if flag:
        return Path(flag)
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "ncchains"


def _filename(kind: str, key: str) -> str:
    safe = key.replace("(", "_").replace(")", "")
    return f"{kind}-{safe}.npz"


class Cache:
    def __init__(self, directory: str | os.PathLike | None = None):
        self.directory = cache_dir(directory)

    def _path(self, kind: str, key: str) -> Path:
        return self.directory / _filename(kind, key)

    def _read(self, kind: str, key: str) -> dict | None:
        path = self._path(kind, key)
        if not path.exists():
            return None
        try:
            with np.load(path, allow_pickle=False) as z:
                data = {k: z[k] for k in z.files}
        except (OSError, ValueError) as exc:
            log.warning("discarding unreadable cache file %s: %s", path, exc)
            path.unlink(missing_ok=True)
            return None
        if int(data.get("format_version", -1)) != FORMAT_VERSION or str(data.get("type", "")) != key:
            log.info("discarding stale cache file %s", path)
            path.unlink(missing_ok=True)
            return None
        return data

    def _write(self, kind: str, key: str, arrays: dict) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".npz.tmp")
        try:
            with os.fdopen(fd, "wb") as fh:
                np.savez(fh, format_version=np.array(FORMAT_VERSION), type=np.array(key), **arrays)
            os.replace(tmp, self._path(kind, key))
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise

    # -- groups ----------------------------------------------------------------

    def group(self, t, max_order: int = DEFAULT_MAX_ORDER) -> CoxeterSystem:
        t = as_type(t).canonical()
        key = t.render()
        order = invariants(t).order
        if order > max_order:
            raise ResourceBoundExceeded(f"|W({t})| = {order} exceeds bound {max_order}")
        data = self._read("group", key)
        if data is not None:
            log.debug("group cache hit %s", key)
            return CoxeterSystem(t, data["perms"], data["parent"], data["parent_gen"], data["gen_table"], data["length"])
        log.debug("group cache miss %s", key)
        perms, parent, parent_gen, gen_table = _closure(root_action(t), max_order)
        W = CoxeterSystem(t, perms, parent, parent_gen, gen_table)
        self._write(
            "group", key,
            {"perms": perms, "parent": parent, "parent_gen": parent_gen, "gen_table": gen_table, "length": W.length},
        )
        return W

    # -- lattices --------------------------------------------------------------

    def lattice(self, t, max_order: int = DEFAULT_MAX_ORDER, max_size: int = DEFAULT_MAX_LATTICE) -> NcLattice:
        t = as_type(t).canonical()
        key = t.render()
        W = self.group(t, max_order)
        data = self._read("lattice", key)
        if data is not None:
            n = int(data["rank"])
            levels = [data[f"level{r}"] for r in range(n + 1)]
            covers = [data[f"cover{r}"] for r in range(n)]
            size = sum(len(lv) for lv in levels)
            if size > max_size:
                raise ResourceBoundExceeded(f"interval has {size} elements, bound {max_size}")
            log.debug("lattice cache hit %s", key)
            return NcLattice(W, W.c, levels, covers)
        L = build_lattice(W, max_size=max_size)
        arrays = {"rank": np.array(L.rank)}
        arrays.update({f"level{r}": lv for r, lv in enumerate(L.levels)})
        arrays.update({f"cover{r}": c for r, c in enumerate(L.covers)})
        self._write("lattice", key, arrays)
        return L
