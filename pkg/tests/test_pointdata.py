import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from stratmorse.core import Complex
from stratmorse.dsmt import construct_stratification
from stratmorse.errors import NonInjectiveVertexField
from stratmorse.morse import check_dmf, gradient_of, is_acyclic, morse_chain_complex
from stratmorse.pointdata import (extend_dmf, extend_global, extend_stratified, maxf_extension,
                                  mean_extension)
from stratmorse.randomgen import random_2complex, random_vertex_field
from stratmorse.strat import Stratification, check_dsmf, strata_order

seeds = st.integers(min_value=0, max_value=10**6)

PATH = Complex([(0,), (1,), (2,), (0, 1), (1, 2)])
TRI = Complex([(0,), (1,), (2,), (0, 1), (1, 2), (0, 2)])
F0 = {0: 0.0, 1: 1.0, 2: 2.0}


def simp_pairs(K, V):
    return {(K.simplices[a], K.simplices[b]) for a, b in V.pairs}


def test_path():
    V, g, eps = extend_dmf(PATH, F0)
    assert simp_pairs(PATH, V) == {((1,), (0, 1)), ((2,), (1, 2))}
    assert [g[PATH.id_of((v,))] for v in range(3)] == [0.0, 1.0, 2.0]
    assert eps == 0.5
    assert gradient_of(PATH, g) == V


def test_triangle_keeps_one_cycle():
    V, g, _ = extend_dmf(TRI, F0)
    crit = set(TRI) - V.paired()
    assert {TRI.simplices[c] for c in crit} == {(0,), (1, 2)}
    assert morse_chain_complex(TRI, V).betti() == (1, 1)


def test_single_vertex():
    K = Complex([(0,)])
    V, g, _ = extend_dmf(K, {0: 3.0})
    assert len(V) == 0 and g == [3.0]


def test_eps_clamped_and_respected():
    V, g, eps = extend_dmf(TRI, F0, eps=1e-3)
    m = maxf_extension(TRI, F0)
    assert eps == 1e-3
    assert max(abs(a - b) for a, b in zip(g, m)) < eps
    _, _, eps = extend_dmf(TRI, F0, eps=10.0)
    assert eps == 0.5


def test_pre_extensions():
    assert maxf_extension(PATH, F0) == [0.0, 1.0, 2.0, 1.0, 2.0]
    assert mean_extension(PATH, F0) == [0.0, 1.0, 2.0, 0.5, 1.5]
    with pytest.raises(NonInjectiveVertexField):
        maxf_extension(PATH, {0: 0.0, 1: 0.0, 2: 1.0})


def test_stratified_segment():
    # the vertex on its own stratum cannot pair with the edge
    K = Complex([(0,), (1,), (0, 1)])
    f0 = {0: 1.0, 1: 0.0}
    S = Stratification({"a": [0], "rest": [1, 2]})
    ext = extend_stratified(K, S, f0)
    assert len(ext.field) == 0
    g = extend_global(K, S, f0)
    assert check_dmf(K, g) == []
    V, _, _ = extend_dmf(K, f0)
    assert V.pairs == [(0, 2)]


def test_pd_pipeline(fx):
    pd = fx("pd")
    f0 = {t[0]: pd.f[i] for i, t in enumerate(pd.K.simplices) if len(t) == 1}
    S, _ = construct_stratification(pd.K, pd.f)
    ext = extend_stratified(pd.K, S, f0)
    assert check_dsmf(pd.K, ext.values, S) == []
    g = extend_global(pd.K, S, f0)
    assert gradient_of(pd.K, g) == ext.field


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_extension_properties(seed):
    rng = random.Random(seed)
    K = random_2complex(rng)
    f0 = random_vertex_field(rng, K)
    spread = max(f0.values()) - min(f0.values()) or 1.0
    V, g, eps = extend_dmf(K, f0, eps=1e-3 * spread)
    assert is_acyclic(K, V)[0]
    assert not oracles.has_closed_vpath(K.simplices, V.pairs)
    assert morse_chain_complex(K, V).betti() == oracles.betti(K.simplices)
    m = maxf_extension(K, f0)
    assert all(abs(a - b) < eps for a, b in zip(g, m))
    assert check_dmf(K, g) == [] and gradient_of(K, g) == V
    for v, x in f0.items():
        assert g[K.id_of((v,))] == x


@settings(max_examples=60, deadline=None)
@given(seeds, st.sampled_from(["maxf", "mean"]))
def test_stratified_properties(seed, pre):
    rng = random.Random(seed)
    K = random_2complex(rng)
    f0 = random_vertex_field(rng, K)
    f = maxf_extension(K, f0) if pre == "maxf" else mean_extension(K, f0)
    S, _ = construct_stratification(K, f)
    ext = extend_stratified(K, S, f0)
    assert check_dsmf(K, ext.values, S) == []
    for name, V in ext.fields.items():
        assert all(a in S[name] and b in S[name] for a, b in V.pairs)
    g = extend_global(K, S, f0)
    assert check_dmf(K, g) == []
    assert gradient_of(K, g) == ext.field
    _, order = strata_order(K, S)
    assert list(ext.fields) == order
