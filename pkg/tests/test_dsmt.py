import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import segment
from stratmorse.core import Complex, build_complex
from stratmorse.dsmt import (coarsen, construct_stratification, find_coarser, is_maximal,
                             refine_frontier, separating_function, simplify, union_gradient)
from stratmorse.errors import (ComplexTooLarge, InvalidStratification, NonRespectingField,
                               NotADSMF)
from stratmorse.morse import VectorField, check_dmf, gradient_of, is_acyclic
from stratmorse.randomgen import random_complex, random_dmf, random_field
from stratmorse.strat import Stratification, check_dsmf, validate_stratification

seeds = st.integers(min_value=0, max_value=10**6)


def named(fix, S):
    return sorted(tuple(fix.vals(ids)) for ids in S.strata.values())


def test_construct_pd(fx):
    pd = fx("pd")
    S, tr = construct_stratification(pd.K, pd.f)
    assert pd.vals(tr.initial_violators) == [1, 2, 10]
    assert pd.vals(tr.removals) == [10]
    assert tr.surviving == [[]]
    assert named(pd, S) == [(1, 2, 3, 4, 5, 6, 7, 8, 9), (10,)]


def test_construct_tet(fx):
    tet = fx("tet")
    S, tr = construct_stratification(tet.K, tet.f)
    assert [tet.f[i] for i in tr.removals] == [10, 14, 6]
    assert named(tet, S) == [(1, 2, 3, 8, 11), (4, 5, 7, 9, 12, 13), (6,), (10,), (14,)]
    assert tr.refinements == []
    doc = tr.to_json()
    assert set(doc) == {"initial_violators", "removals", "surviving", "strata",
                        "gradients", "refinements"}
    assert doc["surviving"][-1] == []


def test_order_override(fx):
    tet = fx("tet")
    S, tr = construct_stratification(tet.K, tet.f, order=tet.ids(14, 7))
    assert [tet.f[i] for i in tr.removals] == [14, 7, 6]
    assert validate_stratification(tet.K, S) == []
    assert check_dsmf(tet.K, tet.f, S) == []
    # without refinement the raw frontier breaks the frontier condition here
    raw, _ = construct_stratification(tet.K, tet.f, order=tet.ids(14, 7), refine=False)
    assert validate_stratification(tet.K, raw)


def test_dmf_gives_trivial():
    K, f = segment()
    S, tr = construct_stratification(K, f)
    assert S == Stratification.trivial(K) or list(S.strata.values()) == [K.all]
    assert tr.removals == []


def test_union_gradient(fx):
    pd = fx("pd")
    S, _ = construct_stratification(pd.K, pd.f)
    V = union_gradient(pd.K, pd.f, S)
    assert pd.pair_vals(V.pairs) == {(3, 1), (4, 2), (7, 5), (8, 6)}
    with pytest.raises(NotADSMF):
        union_gradient(pd.K, pd.f, Stratification.trivial(pd.K))


def test_separating_function_segment():
    # f(a)=1, f(b)=2, f(ab)=0 with strata {a}, {b, ab}
    K = build_complex([((0,), 1.0), ((1,), 2.0), ((0, 1), 0.0)])[0]
    S = Stratification({"a": [0], "rest": [1, 2]})
    V = VectorField([(1, 2)])
    sep = separating_function(K, S, V)
    assert sep.order == ["a", "rest"]
    g = sep.values
    assert g[0] <= sep.thresholds[0] < min(g[1], g[2])
    assert gradient_of(K, g) == V
    with pytest.raises(NonRespectingField):
        separating_function(K, S, VectorField([(0, 2)]))
    with pytest.raises(InvalidStratification):
        separating_function(K, Stratification({"x": [0, 1]}), VectorField())


def test_simplify_examples(fx):
    pd = fx("pd")
    S, _ = construct_stratification(pd.K, pd.f)
    rep = simplify(pd.K, pd.f, S)
    assert rep.critical_counts == (1, 1) and rep.betti == (1, 1)
    assert pd.vals(rep.critical) == [9, 10]
    assert len(rep.collapses) == 4 and rep.euler_from_critical == rep.euler == 0
    sq = fx("split_square")
    S, _ = construct_stratification(sq.K, sq.f)
    rep = simplify(sq.K, sq.f, S)
    assert rep.collapses == [] and len(rep.critical) == len(sq.K)
    K = Complex([(0,)])
    rep = simplify(K, [0.0], Stratification.trivial(K))
    assert rep.critical_counts == (1,) and rep.removal_order == [(0,)]


def test_is_maximal_examples(fx):
    pd = fx("pd")
    S, _ = construct_stratification(pd.K, pd.f)
    assert is_maximal(pd.K, pd.f, S)
    finer, _ = refine_frontier(pd.K, Stratification(
        {"top": [pd.id(10)], "e9": [pd.id(9)], "rest": pd.K.all - set(pd.ids(9, 10))}))
    assert validate_stratification(pd.K, finer) == []
    assert not is_maximal(pd.K, pd.f, finer)
    K, f = segment()
    assert is_maximal(K, f, Stratification.trivial(K))
    with pytest.raises(ComplexTooLarge):
        is_maximal(pd.K, pd.f, S, bound=5)


def test_known_non_maximal(fx):
    # the violator {1} and the refined pieces can be regrouped on the pentagon
    pent = fx("pentagon")
    S, _ = construct_stratification(pent.K, pent.f)
    T = find_coarser(pent.K, pent.f, S)
    assert T is not None
    assert validate_stratification(pent.K, T) == [] and check_dsmf(pent.K, pent.f, T) == []


def coarser_by_brute_force(K, f, S):
    """Every set partition of K, no pruning, tested against the order."""
    pieces = S.pieces(K)
    ids = list(K)
    n = len(ids)
    for labels in _restricted_growth(n):
        blocks = {}
        for i, lab in zip(ids, labels):
            blocks.setdefault(lab, set()).add(i)
        strata = list(blocks.values())
        if not oracles.valid_stratification(K.simplices, strata):
            continue
        if any(oracles.dmf_offenders(K.simplices, f, b) for b in strata):
            continue
        # S below T, and T not below S
        if not all(any(p <= b for b in strata) for p in pieces):
            continue
        t_pieces = [set(p) for b in strata for p in oracles.pieces(K.simplices, b)]
        s_strata = [set(v) for v in S.strata.values()]
        if all(any(p <= b for b in s_strata) for p in t_pieces):
            continue
        return True
    return False


def _restricted_growth(n):
    def rec(prefix, m):
        if len(prefix) == n:
            yield prefix
            return
        for k in range(m + 1):
            yield from rec(prefix + [k], max(m, k + 1))
    yield from rec([], 0)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_find_coarser_matches_brute_force(seed):
    rng = random.Random(seed)
    K = random_complex(rng, max_simplices=8)
    f = random_field(rng, K)
    S, _ = construct_stratification(K, f)
    assert (find_coarser(K, f, S) is not None) == coarser_by_brute_force(K, f, S)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_refinement_and_coarsening(seed):
    rng = random.Random(seed)
    K = random_complex(rng, max_simplices=14)
    f = random_field(rng, K)
    raw, _ = construct_stratification(K, f, refine=False)
    S, _ = refine_frontier(K, raw)
    assert validate_stratification(K, S) == []
    assert check_dsmf(K, f, S) == []
    # refinement only splits
    assert all(any(ids <= r for r in raw.strata.values()) for ids in S.strata.values())
    C = coarsen(K, f, S)
    assert validate_stratification(K, C) == [] and check_dsmf(K, f, C) == []
    assert all(any(p <= c for c in C.strata.values()) for p in S.pieces(K))
    assert len(C.pieces(K)) <= len(S.pieces(K))
    G, _ = construct_stratification(K, f, greedy=True)
    assert G == C


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_separating_round_trip(seed):
    rng = random.Random(seed)
    K = random_complex(rng)
    f = random_field(rng, K)
    S, _ = construct_stratification(K, f)
    V = union_gradient(K, f, S)
    sep = separating_function(K, S, V)
    g = sep.values
    assert check_dmf(K, g) == []
    assert gradient_of(K, g) == V
    assert is_acyclic(K, V)[0]
    done = set()
    for name, a in zip(sep.order, sep.thresholds):
        done |= S[name]
        assert {i for i in K if g[i] <= a} == done


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_dmf_inputs_stay_whole(seed):
    rng = random.Random(seed)
    K = random_complex(rng)
    f = random_dmf(rng, K)
    S, tr = construct_stratification(K, f)
    assert list(S.strata.values()) == [K.all] and tr.removals == []
