import pytest
from hypothesis import given, strategies as st

from ncchains.diagram import (
    TypeParseError,
    bipartition,
    coxeter_matrix,
    delete_vertex,
    delete_vertex_map,
    invariants,
    irreducible,
    parse_type,
    restrict,
)


def test_parse_keeps_factor_order():
    t = parse_type("B3xA1")
    assert [f.name for f in t.factors] == ["B3", "A1"]
    assert t.rank == 4
    assert t.canonical().render() == "A1xB3"


@pytest.mark.parametrize("text,expected", [
    ("D3", "A3"),
    ("I2(3)", "A2"),
    ("I2(4)", "B2"),
    ("h4", "H4"),
    ("A2*A1", "A2xA1"),
    ("A0", "A0"),
])
def test_normalization(text, expected):
    assert parse_type(text).render() == expected


@pytest.mark.parametrize("bad", ["", "Q3", "A", "D2", "I2(2)", "E9", "F5", "H5", "B1", "A3x", "I2(x)"])
def test_parse_errors(bad):
    with pytest.raises(TypeParseError):
        parse_type(bad)


def test_trivial_group():
    t = parse_type("A0")
    assert t.rank == 0
    assert invariants(t).order == 1


@pytest.mark.parametrize("name,h,exps,order", [
    ("A3", 4, (1, 2, 3), 24),
    ("B3", 6, (1, 3, 5), 48),
    ("D4", 6, (1, 3, 3, 5), 192),
    ("H3", 10, (1, 5, 9), 120),
    ("I2(7)", 7, (1, 6), 14),
    ("E6", 12, (1, 4, 5, 7, 8, 11), 51840),
])
def test_invariants(name, h, exps, order):
    f = parse_type(name).factors[0]
    assert (f.coxeter_number, f.exponents, f.order) == (h, exps, order)
    # |W| = prod (e_i + 1) and |T| = nh/2
    prod = 1
    for e in exps:
        prod *= e + 1
    assert prod == order
    assert sum(exps) == f.rank * h // 2


@pytest.mark.parametrize("name,s,expected", [
    ("A3", 1, "A1xA1"),
    ("A4", 0, "A3"),
    ("B3", 0, "A2"),
    ("B3", 2, "B2"),
    ("D4", 1, "A1xA1xA1"),
    ("D5", 4, "A4"),
    ("D5", 0, "D4"),
    ("E6", 2, "A1xA2xA2"),
    ("E6", 5, "A5"),
    ("E6", 0, "D5"),
    ("E7", 5, "E6"),
    ("E7", 6, "A6"),
    ("E7", 0, "D6"),
    ("E8", 6, "E7"),
    ("E8", 7, "A7"),
    ("E8", 5, "A1xE6"),
    ("F4", 0, "B3"),
    ("F4", 3, "B3"),
    ("F4", 1, "A1xA2"),
    ("H3", 2, "I2(5)"),
    ("H4", 3, "H3"),
    ("H4", 0, "A3"),
    ("I2(7)", 0, "A1"),
    ("A1", 0, "A0"),
    ("B3xA1", 3, "B3"),
])
def test_delete_vertex(name, s, expected):
    assert delete_vertex(parse_type(name), s).render() == expected


def test_delete_vertex_map_preserves_edges():
    t = parse_type("E7")
    full = coxeter_matrix(t)
    for s in range(t.rank):
        sub, vmap = delete_vertex_map(t, s)
        m = coxeter_matrix(sub)
        for i in range(sub.rank):
            for j in range(sub.rank):
                assert m[i, j] == full[vmap[i], vmap[j]]


def test_restrict_to_branch():
    t, vmap = restrict(parse_type("D4"), [0, 1, 3])
    assert t.render() == "A3"
    assert sorted(vmap) == [0, 1, 3]


def test_delete_vertex_rejects_bad_vertex():
    with pytest.raises(ValueError):
        delete_vertex(parse_type("A2"), 2)


@pytest.mark.parametrize("name", ["A5", "B4", "D5", "E6", "E8", "F4", "H4", "I2(9)", "A2xB3xA1"])
def test_bipartition_is_proper(name):
    t = parse_type(name)
    plus, minus = bipartition(t)
    assert sorted(plus + minus) == list(range(t.rank))
    mat = coxeter_matrix(t)
    for side in (plus, minus):
        for a in side:
            for b in side:
                assert a == b or mat[a, b] == 2


families = st.one_of(
    st.builds(lambda n: f"A{n}", st.integers(1, 9)),
    st.builds(lambda n: f"B{n}", st.integers(2, 9)),
    st.builds(lambda n: f"D{n}", st.integers(4, 9)),
    st.sampled_from(["E6", "E7", "E8", "F4", "H3", "H4"]),
    st.builds(lambda m: f"I2({m})", st.integers(5, 30)),
)


@given(st.lists(families, min_size=1, max_size=3))
def test_render_parse_roundtrip(tokens):
    t = parse_type("x".join(tokens))
    assert parse_type(t.render()) == t
    assert t.rank == sum(f.rank for f in t.factors)


@given(families)
def test_irreducible_deletions_have_rank_one_less(token):
    t = parse_type(token)
    for s in range(t.rank):
        assert delete_vertex(t, s).rank == t.rank - 1
    assert irreducible(t.factors[0].family, t.factors[0].rank, t.factors[0].param) == t.factors[0]
