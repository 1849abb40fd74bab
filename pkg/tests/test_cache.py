import numpy as np
import pytest

from ncchains import cache as C
from ncchains.group import ResourceBoundExceeded, build_group
from ncchains.nclattice import build_lattice


def test_directory_precedence(tmp_path, monkeypatch):
    monkeypatch.setenv(C.ENV_VAR, str(tmp_path / "env"))
    assert C.cache_dir(tmp_path / "flag") == tmp_path / "flag"
    assert C.cache_dir() == tmp_path / "env"
    monkeypatch.delenv(C.ENV_VAR)
    assert C.cache_dir().parts[-2:] == (".cache", "ncchains")


def test_group_roundtrip(tmp_path):
    cache = C.Cache(tmp_path)
    W1 = cache.group("H3")
    files = sorted(p.name for p in tmp_path.iterdir())
    assert files == ["group-H3.npz"]
    W2 = cache.group("H3")
    assert np.array_equal(W1.perms, W2.perms)
    assert np.array_equal(W1.length, W2.length)
    assert W2.c == build_group("H3").c


def test_lattice_roundtrip_uses_canonical_key(tmp_path):
    cache = C.Cache(tmp_path)
    L1 = cache.lattice("A1xB2")
    L2 = C.Cache(tmp_path).lattice("B2xA1")
    assert (tmp_path / "lattice-A1xB2.npz").exists()
    assert L1.level_sizes == L2.level_sizes
    assert L2.count_maximal_chains() == build_lattice(build_group("A1xB2")).count_maximal_chains()


def test_dihedral_filename(tmp_path):
    C.Cache(tmp_path).lattice("I2(5)")
    assert (tmp_path / "lattice-I2_5.npz").exists()


def test_stale_version_is_discarded(tmp_path, monkeypatch):
    cache = C.Cache(tmp_path)
    cache.group("A3")
    monkeypatch.setattr(C, "FORMAT_VERSION", C.FORMAT_VERSION + 1)
    assert cache._read("group", "A3") is None
    assert not (tmp_path / "group-A3.npz").exists()
    assert cache.group("A3").order == 24


def test_wrong_type_header_is_discarded(tmp_path):
    cache = C.Cache(tmp_path)
    cache.group("A2")
    (tmp_path / "group-A2.npz").rename(tmp_path / "group-B2.npz")
    assert cache._read("group", "B2") is None
    assert cache.group("B2").order == 8


def test_corrupt_file_is_discarded(tmp_path):
    cache = C.Cache(tmp_path)
    (tmp_path / "group-A2.npz").write_bytes(b"not a zip")
    assert cache.group("A2").order == 6


def test_write_is_atomic(tmp_path, monkeypatch):
    cache = C.Cache(tmp_path)

    def boom(*a, **k):
        raise OSError("disk full")

    monkeypatch.setattr(C.os, "replace", boom)
    with pytest.raises(OSError):
        cache.group("A2")
    assert list(tmp_path.iterdir()) == []


def test_bounds(tmp_path):
    cache = C.Cache(tmp_path)
    with pytest.raises(ResourceBoundExceeded):
        cache.group("E6", max_order=100)
    cache.lattice("B3")
    with pytest.raises(ResourceBoundExceeded):
        cache.lattice("B3", max_size=10)
