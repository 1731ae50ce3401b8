import math
from collections import Counter
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rado.core import (
    EMPTY,
    Complex,
    boundary_of_simplex,
    enumerate_subcomplexes,
    from_facets,
    full_simplex,
    induced,
    materialize,
)
from rado.errors import ApexCollisionError, SizeLimitError, SubcomplexError, ValidationError
from rado.hashrng import SAMPLE_STREAM, simplex_uniform, vertex_uniforms
from rado.rado_grow import grow
from rado.randomness import (
    CylinderSet,
    ProbabilitySystem,
    cylinder_measure,
    extension_lower_bound,
    extension_probability,
    induced_measure,
    lemma21_bruteforce,
    lemma21_sum,
    p_of_subcomplex,
    random_complex,
    sample_complex,
    sample_induced,
    select_vertices,
)

from oracles import all_subcomplexes, as_sets, subset_weight_marginals

TRI = from_facets([(1, 2, 3)])
EDGE = from_facets([(1, 2)])
HALF = ProbabilitySystem.constant(0.5)


def cx(*fs):
    return from_facets(fs)


def delta(n):
    return full_simplex(range(1, n + 1), lazy=False)


# probability systems --------------------------------------------------------------


def test_system_flags_and_validation():
    assert HALF.medial and HALF.p((1, 2)) == 0.5 and HALF.q((1,)) == 0.5
    assert not ProbabilitySystem.constant(1).medial
    assert not ProbabilitySystem.per_size({1: 0.0, 2: 0.5}).medial
    with pytest.raises(ValidationError):
        ProbabilitySystem.constant(1.5)
    with pytest.raises(ValidationError):
        ProbabilitySystem.seeded(0.8, 0.2, 1)
    with pytest.raises(ValidationError):
        ProbabilitySystem.per_size({1: 0.5}).p((1, 2))


def test_seeded_system_in_range_and_reproducible():
    P = ProbabilitySystem.seeded(0.2, 0.7, 42)
    vals = [P.p(s) for s in combinations(range(1, 12), 2)]
    assert all(0.2 <= v <= 0.7 for v in vals) and len(set(vals)) > 40
    assert vals == [ProbabilitySystem.seeded(0.2, 0.7, 42).p(s) for s in combinations(range(1, 12), 2)]
    E = ProbabilitySystem.seeded(Fraction(1, 5), Fraction(7, 10), 42, exact=True)
    assert isinstance(E.p((3, 4)), Fraction) and E.is_exact


def test_from_spec_kinds():
    assert ProbabilitySystem.from_spec({"kind": "constant", "p": 0.3}).p((1,)) == 0.3
    P = ProbabilitySystem.from_spec({"kind": "per-size", "table": {"1": 1, "2": 0.25}, "default": 0.5})
    assert (P.p((4,)), P.p((1, 2)), P.p((1, 2, 3))) == (1.0, 0.25, 0.5)
    T = ProbabilitySystem.from_spec(
        {"kind": "table", "default": 0.5, "table": [{"simplex": ["1", "2"], "p": 0.9}]}
    )
    assert (T.p((1, 2)), T.p((1, 3))) == (0.9, 0.5)
    S = ProbabilitySystem.from_spec({"kind": "seeded", "low": 0.1, "high": 0.9, "seed": 3})
    assert 0.1 <= S.p((1,)) <= 0.9
    X = ProbabilitySystem.from_spec({"kind": "constant", "p": "37/100"}, exact=True)
    assert X.p((1,)) == Fraction(37, 100)
    with pytest.raises(ValidationError):
        ProbabilitySystem.from_spec({"kind": "nope"})
    with pytest.raises(ValidationError):
        ProbabilitySystem.from_spec({"kind": "constant"})


def test_spec_roundtrip():
    for P in (
        ProbabilitySystem.constant(0.3),
        ProbabilitySystem.per_size({1: 0.9, 2: 0.4}, 0.5),
        ProbabilitySystem.table({(1, 2): 0.8}, 0.5),
        ProbabilitySystem.seeded(0.2, 0.6, 9),
    ):
        Q = ProbabilitySystem.from_spec(P.spec)
        for s in [(1,), (1, 2), (2, 3), (1, 2, 3)]:
            assert P.p(s) == Q.p(s)


# measure formulas --------------------------------------------------------------------


def test_p_of_subcomplex_examples():
    p = 0.3
    P = ProbabilitySystem.constant(p)
    assert math.isclose(p_of_subcomplex(EMPTY, EDGE, P), (1 - p) ** 2)
    assert math.isclose(p_of_subcomplex(cx((1,), (2,)), EDGE, P), p * p * (1 - p))
    assert math.isclose(p_of_subcomplex(EDGE, EDGE, P), p**3)
    with pytest.raises(SubcomplexError):
        p_of_subcomplex(cx((3,)), EDGE, P)


def test_lemma21_examples():
    assert lemma21_sum(cx((4,)), ProbabilitySystem.constant(Fraction(2, 7))) == 1
    assert lemma21_sum(EDGE, ProbabilitySystem.seeded(Fraction(1, 10), Fraction(9, 10), 5, exact=True)) == 1
    assert abs(lemma21_sum(TRI, ProbabilitySystem.seeded(0.1, 0.9, 5)) - 1) <= 1e-9


def test_lemma21_bruteforce_examples():
    P = ProbabilitySystem.constant(Fraction(1, 3))
    total, marg = lemma21_bruteforce(cx((4,)), P)
    assert total == 1 and marg == {EMPTY: Fraction(2, 3), cx((4,)): Fraction(1, 3)}
    total, marg = lemma21_bruteforce(EDGE, P)
    assert total == 1 and len(marg) == 5
    assert all(w == p_of_subcomplex(A, EDGE, P) for A, w in marg.items())
    total, marg = lemma21_bruteforce(boundary_of_simplex([1, 2, 3]), P)
    assert total == 1
    with pytest.raises(SizeLimitError):
        lemma21_bruteforce(full_simplex(range(1, 6), lazy=False), P)


def test_bruteforce_matches_independent_oracle():
    P = ProbabilitySystem.seeded(Fraction(1, 10), Fraction(9, 10), 77, exact=True)
    for L in (EDGE, TRI, cx((1, 2), (2, 3), (4,))):
        _, marg = lemma21_bruteforce(L, P)
        ref = subset_weight_marginals(as_sets(L), lambda s: P.p(tuple(sorted(s))))
        got = {as_sets(A): w for A, w in marg.items() if w}
        assert got == {k: w for k, w in ref.items() if w}


small_complexes = st.lists(
    st.sets(st.integers(1, 5), min_size=1, max_size=3).map(lambda s: tuple(sorted(s))), max_size=4
).map(from_facets)


@settings(max_examples=40, deadline=None)
@given(small_complexes, st.integers(0, 2**32))
def test_normalisation_property(L, seed):
    if len(L) > 12:
        return
    P = ProbabilitySystem.seeded(0.05, 0.95, seed)
    assert abs(lemma21_sum(L, P) - 1) <= 1e-9
    if len(L) <= 10:
        total, marg = lemma21_bruteforce(L, P)
        assert abs(total - 1) <= 1e-9
        for A, w in marg.items():
            assert abs(w - p_of_subcomplex(A, L, P)) <= 1e-12


def test_cylinder_examples():
    P = ProbabilitySystem.seeded(Fraction(1, 10), Fraction(9, 10), 3, exact=True)
    p, q = P.p, P.q
    assert cylinder_measure(CylinderSet(EMPTY, 2), P) == q((1,)) * q((2,))
    assert cylinder_measure(CylinderSet(EDGE, 2), P) == p((1,)) * p((2,)) * p((1, 2))
    assert cylinder_measure(CylinderSet(cx((1,), (2,)), 2), P) == p((1,)) * p((2,)) * q((1, 2))
    with pytest.raises(ValidationError):
        CylinderSet(cx((3,)), 2)
    with pytest.raises(SizeLimitError):
        cylinder_measure(CylinderSet(EMPTY, 13), P)


def test_cylinders_partition_unity():
    P = ProbabilitySystem.seeded(Fraction(1, 10), Fraction(9, 10), 8, exact=True)
    for n in range(4):
        subs = list(enumerate_subcomplexes(delta(n)))
        assert {as_sets(Y) for Y in subs} == set(all_subcomplexes(as_sets(delta(n))))
        assert sum(cylinder_measure(CylinderSet(Y, n), P) for Y in subs) == 1


def test_additivity_across_n():
    P = ProbabilitySystem.seeded(0.1, 0.9, 21)
    for n in range(4):
        children = list(enumerate_subcomplexes(delta(n + 1)))
        for Y in enumerate_subcomplexes(delta(n)):
            total = math.fsum(
                cylinder_measure(CylinderSet(Z, n + 1), P)
                for Z in children
                if induced(Z, range(1, n + 1)) == Y
            )
            assert abs(total - cylinder_measure(CylinderSet(Y, n), P)) <= 1e-9


def test_induced_measure_examples():
    P = ProbabilitySystem.seeded(Fraction(1, 10), Fraction(9, 10), 4, exact=True)
    p, q = P.p, P.q
    assert induced_measure({5}, cx((5,)), P) == p((5,))
    assert induced_measure({1, 2}, EMPTY, P) == q((1,)) * q((2,))
    hollow = boundary_of_simplex([1, 2, 3])
    expect = math.prod(p(s) for s in hollow.simplexes) * q((1, 2, 3))
    assert induced_measure({1, 2, 3}, hollow, P) == expect
    with pytest.raises(SubcomplexError):
        induced_measure({1}, EDGE, P)


def test_induced_measure_decomposes_into_cylinders():
    P = ProbabilitySystem.seeded(0.1, 0.9, 12)
    n = 4
    cylinders = list(enumerate_subcomplexes(delta(n)))
    for U in [(1,), (2, 4), (1, 3, 4), (1, 2, 3, 4)]:
        for L in enumerate_subcomplexes(full_simplex(U, lazy=False)):
            total = math.fsum(
                cylinder_measure(CylinderSet(Y, n), P) for Y in cylinders if induced(Y, U) == L
            )
            assert abs(total - induced_measure(U, L, P)) <= 1e-9


def test_extension_probability_examples():
    P = ProbabilitySystem.seeded(Fraction(1, 10), Fraction(9, 10), 6, exact=True)
    p, q = P.p, P.q
    u, v = 2, 9
    assert extension_probability(cx((u,)), cx((u,)), v, P) == p((v,)) * p((u, v))
    assert extension_probability(cx((u,)), EMPTY, v, P) == p((v,)) * q((u, v))
    assert extension_probability(EMPTY, EMPTY, v, P) == p((v,))
    with pytest.raises(ApexCollisionError):
        extension_probability(cx((u,)), EMPTY, u, P)


def test_extension_probabilities_sum_to_vertex_probability():
    P = ProbabilitySystem.seeded(0.1, 0.9, 30)
    L = cx((1, 2), (2, 3), (1, 3))
    total = math.fsum(extension_probability(L, A, 10, P) for A in enumerate_subcomplexes(L))
    assert abs(total - P.p((10,))) <= 1e-12


@given(st.integers(0, 2**32))
def test_extension_lower_bound_in_medial_regime(seed):
    P = ProbabilitySystem.seeded(0.2, 0.8, seed)
    L = TRI
    for A in enumerate_subcomplexes(L):
        assert extension_probability(L, A, 10, P) >= extension_lower_bound(L, A, P) > 0


# sampling ------------------------------------------------------------------------------


def test_sample_examples():
    assert sample_complex(0, HALF, 1) == EMPTY
    assert sample_complex(2, ProbabilitySystem.constant(1), 1) == EDGE
    assert sample_complex(3, ProbabilitySystem.constant(0), 1) == EMPTY


def test_sample_deterministic_and_lazy_agree():
    for seed in range(5):
        X = sample_complex(11, HALF, seed)
        assert X == sample_complex(11, HALF, seed)
        assert X == materialize(random_complex(11, HALF, seed))


def test_sample_max_size_truncates():
    X = sample_complex(12, ProbabilitySystem.constant(0.9), 4, max_size=2)
    assert X.dim <= 1
    assert X == materialize(sample_complex(12, ProbabilitySystem.constant(0.9), 4), max_size=2)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32), st.floats(0.05, 0.9), st.floats(0.0, 0.1))
def test_monotone_coupling(seed, p, dp):
    lo = sample_complex(9, ProbabilitySystem.constant(p), seed)
    hi = sample_complex(9, ProbabilitySystem.constant(min(1.0, p + dp)), seed)
    assert lo.simplexes <= hi.simplexes


def test_sample_frequencies_match_cylinders():
    n, trials = 2, 20_000
    P = HALF
    counts = Counter(sample_complex(n, P, s) for s in range(trials))
    for Y in enumerate_subcomplexes(delta(n)):
        mu = cylinder_measure(CylinderSet(Y, n), P)
        se = math.sqrt(mu * (1 - mu) / trials)
        assert abs(counts[Y] / trials - mu) <= 4 * se + 1e-12


def test_hash_uniforms_scalar_and_vector_agree():
    labels = np.arange(1, 300, dtype=np.uint64)
    vec = vertex_uniforms(77, labels, SAMPLE_STREAM)
    assert vec.tolist() == [simplex_uniform(77, (int(v),), SAMPLE_STREAM) for v in labels]
    assert 0 <= vec.min() and vec.max() < 1


def test_huge_labels_hash():
    u = simplex_uniform(1, (1, 2**5000 + 3))
    assert 0 <= u < 1 and u != simplex_uniform(1, (1, 2**5000 + 5))


# vertex selection ----------------------------------------------------------------------


def test_sample_induced_examples():
    X = grow(2).top
    assert sample_induced(X, 1.0, 3) == X
    assert sample_induced(X, 0.0, 3) == EMPTY
    assert sample_induced(X, {v: 1 for v in X.vertices if v < 5}, 3) == induced(X, range(1, 5))
    assert sample_induced(X, lambda v: 1.0 if v % 2 else 0.0, 3) == induced(X, range(1, 14, 2))
    with pytest.raises(ValidationError):
        sample_induced(X, "half", 3)


def test_sample_induced_vertex_count_is_binomial():
    X = grow(2).top
    trials = 4000
    counts = Counter(len(sample_induced(X, 0.5, s).vertices) for s in range(trials))
    mean = sum(k * c for k, c in counts.items()) / trials
    var = sum((k - mean) ** 2 * c for k, c in counts.items()) / trials
    assert abs(mean - 6.5) <= 4 * math.sqrt(13 * 0.25 / trials)
    assert abs(var - 3.25) <= 0.35


def test_select_vertices_huge_labels():
    big = [2**70 + i for i in range(50)]
    sel = select_vertices(big, 0.5, 9)
    assert sel <= set(big) and sel == select_vertices(big, 0.5, 9)
