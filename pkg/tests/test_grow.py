import pytest

from rado.core import enumerate_subcomplexes, from_facets, induced, link
from rado.errors import SizeLimitError, ValidationError, WitnessUnavailableError
from rado.rado_grow import grow, witness_lookup

from oracles import all_subcomplexes, as_sets


def test_level_counts():
    assert [(len(X.vertices), len(X)) for X in grow(0).levels] == [(1, 1)]
    rec = grow(2)
    assert [(len(X.vertices), len(X)) for X in rec.levels] == [(1, 1), (3, 4), (13, 33)]


def test_level_two_count_from_oracle():
    X1 = grow(1).top
    subs = all_subcomplexes(as_sets(X1))
    assert len(subs) == 10
    assert len(X1) + sum(1 + len(A) for A in subs) == 33


def test_witness_lookup_examples():
    rec = grow(2)
    X0, X1, X2 = rec.levels
    v_empty = witness_lookup(rec, 0, from_facets([]))
    v_point = witness_lookup(rec, 0, X0)
    assert link(X1, (v_empty,)).simplexes == set()
    assert link(X1, (v_point,)) == X0
    top = witness_lookup(rec, 1, X1)
    assert induced(link(X2, (top,)), X1.vertices) == X1
    with pytest.raises(WitnessUnavailableError):
        witness_lookup(rec, 0, from_facets([(5,)]))


def test_link_condition_every_level():
    rec = grow(2)
    for n in range(2):
        Xn, Xn1 = rec.levels[n], rec.levels[n + 1]
        for A in enumerate_subcomplexes(Xn, max_simplexes=64):
            v = witness_lookup(rec, n, A)
            assert induced(link(Xn1, (v,)), Xn.vertices) == A


def test_levels_are_induced_and_apexes_fresh():
    rec = grow(3, base_vertex_bound=2)
    for a, b in zip(rec.levels, rec.levels[1:]):
        assert induced(b, a.vertices) == a
    apexes = list(rec.apex_of.values())
    assert len(apexes) == len(set(apexes))
    assert sorted(rec.top.vertices) == list(range(1, len(rec.top.vertices) + 1))


def test_bounded_growth_link_condition():
    rec = grow(3, base_vertex_bound=2)
    for (n, A), v in rec.apex_of.items():
        assert len(A.vertices) <= 2
        assert induced(link(rec.levels[n + 1], (v,)), rec.levels[n].vertices) == A


def test_determinism():
    a, b = grow(3, base_vertex_bound=2), grow(3, base_vertex_bound=2)
    assert a.levels == b.levels and a.witness_table() == b.witness_table()


def test_unbounded_third_level_exceeds_budget():
    with pytest.raises(SizeLimitError, match="level 3"):
        grow(3, apex_budget=10_000)


def test_bad_arguments():
    with pytest.raises(ValidationError):
        grow(-1)
    with pytest.raises(ValidationError):
        grow(1, base_vertex_bound=-2)
