"""Seeded random complexes, fields and stratifications for property suites."""

from __future__ import annotations

import random
from itertools import combinations

from .core import Complex
from .morse import VectorField, is_acyclic


def closure_of(maximal) -> list[tuple]:
    out = set()
    for m in maximal:
        m = tuple(sorted(m))
        for k in range(1, len(m) + 1):
            out.update(combinations(m, k))
    return sorted(out, key=lambda t: (len(t), t))


def random_complex(rng: random.Random, max_simplices: int = 20, max_dim: int = 3,
                   max_vertices: int = 7) -> Complex:
    """A random complex with at most ``max_simplices`` simplices."""
    while True:
        nv = rng.randint(1, max_vertices)
        verts = list(range(nv))
        maximal = []
        for _ in range(rng.randint(1, 2 * nv)):
            d = rng.randint(0, min(max_dim, nv - 1))
            maximal.append(rng.sample(verts, d + 1))
        # every vertex present
        maximal.extend([v] for v in verts)
        simplices = closure_of(maximal)
        if len(simplices) <= max_simplices:
            return Complex(simplices)


def random_2complex(rng: random.Random, max_simplices: int = 20, max_vertices: int = 7) -> Complex:
    return random_complex(rng, max_simplices, max_dim=2, max_vertices=max_vertices)


def random_field(rng: random.Random, K: Complex, ties: bool = True) -> list[float]:
    """Random simplex-wise values; with ``ties`` values come from a small
    integer range so equal values occur."""
    if ties:
        hi = max(2, len(K) // 2)
        return [float(rng.randint(0, hi)) for _ in K]
    return [rng.random() for _ in K]


def random_vertex_field(rng: random.Random, K: Complex) -> dict:
    vs = K.vertices()
    vals = rng.sample(range(10 * len(vs) + 10), len(vs))
    return {v: float(x) for v, x in zip(vs, vals)}


def random_gradient(rng: random.Random, K: Complex) -> VectorField:
    """Random acyclic matching built greedily from shuffled face pairs."""
    cand = [(s, t) for t in K for s in K.faces[t]]
    rng.shuffle(cand)
    pairs: list[tuple[int, int]] = []
    used: set[int] = set()
    for s, t in cand:
        if s in used or t in used:
            continue
        trial = VectorField(pairs + [(s, t)])
        if is_acyclic(K, trial)[0]:
            pairs.append((s, t))
            used.update((s, t))
    return VectorField(pairs)


def random_dmf(rng: random.Random, K: Complex) -> list[float]:
    """A random discrete Morse function: a random acyclic matching realised
    by a function with that gradient, then jittered by a random order-
    preserving rescale."""
    from .dsmt import separating_function
    from .strat import Stratification

    V = random_gradient(rng, K)
    g = separating_function(K, Stratification.trivial(K), V).values
    levels = sorted(set(g))
    new = {}
    x = rng.uniform(-5, 5)
    for lv in levels:
        x += rng.uniform(0.1, 3.0)
        new[lv] = x
    return [new[v] for v in g]


def torus_grid(m: int, n: int | None = None) -> Complex:
    """Triangulated m-by-n torus: 6mn simplices, every vertex of degree 6."""
    n = m if n is None else n
    vid = lambda i, j: (i % m) * n + (j % n)
    tris = []
    for i in range(m):
        for j in range(n):
            a, b, c, d = vid(i, j), vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1)
            tris.append((a, b, d))
            tris.append((a, c, d))
    return Complex(closure_of(tris))
