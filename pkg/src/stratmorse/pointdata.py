"""
Discrete Morse functions from values sampled at the vertices.

The unstratified extension walks the vertices in increasing order and
builds a gradient on each lower star from a recursively computed gradient
on the lower link, then cones it off over the vertex.  Inside a lower
link, critical pairs joined by exactly one gradient path are cancelled
before coning.  The stratified variant runs the same procedure
inside each stratum, and the global variant turns the resulting union
field into one discrete Morse function on the whole complex.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from .core import Complex, check_injective
from .dsmt import _block_order, separating_function
from .morse import VectorField, is_acyclic
from .errors import CyclicField
from .strat import Stratification, strata_order

Cell = tuple


def maxf_extension(K: Complex, f0: Mapping) -> list[float]:
    """Value of each simplex = largest value among its vertices."""
    check_injective(f0)
    return [float(max(f0[v] for v in t)) for t in K.simplices]


def mean_extension(K: Complex, f0: Mapping) -> list[float]:
    """Piecewise-linear style pre-extension: mean of the vertex values."""
    check_injective(f0)
    return [float(sum(f0[v] for v in t)) / len(t) for t in K.simplices]


def _join(v, t: Cell) -> Cell:
    return tuple(sorted(t + (v,)))


def _faces_in(t: Cell, D) -> list[Cell]:
    if len(t) == 1:
        return []
    out = []
    for i in range(len(t)):
        g = t[:i] + t[i + 1:]
        if g in D:
            out.append(g)
    return out


def _value_key(f0: Mapping):
    # injective on simplices: vertex values sorted from the top
    return lambda t: (len(t), sorted((f0[x] for x in t), reverse=True))


def _path_to(D, up: dict, beta: Cell, alpha: Cell) -> list[Cell] | None:
    """The gradient path from the boundary of ``beta`` to ``alpha`` if there
    is exactly one, as ``[beta, a0, b0, a1, ..., alpha]``."""
    memo: dict[Cell, int] = {}

    def count(x: Cell) -> int:
        # number of paths from x to alpha, capped at 2
        if x in memo:
            return memo[x]
        memo[x] = 0
        if x == alpha:
            n = 1
        elif x in up:
            n = min(2, sum(count(z) for z in _faces_in(up[x], D) if z != x))
        else:
            n = 0
        memo[x] = n
        return n

    starts = _faces_in(beta, D)
    if sum(count(a) for a in starts) != 1:
        return None
    path = [beta]
    x = next(a for a in starts if memo[a] == 1)
    while x != alpha:
        y = up[x]
        path += [x, y]
        x = next(z for z in _faces_in(y, D) if z != x and memo.get(z) == 1)
    path.append(alpha)
    return path


def _cancel(D, pairs: list[tuple[Cell, Cell]], crit: list[Cell], f0: Mapping):
    """Cancel critical pairs joined by a unique gradient path.

    Candidates are scanned by increasing dimension and value of the lower
    cell, then of the upper cell; path counts are recomputed after every
    reversal.
    """
    up = dict(pairs)
    crit_set = set(crit)
    key = _value_key(f0)
    while True:
        hit = None
        for alpha in sorted(crit_set, key=key):
            uppers = sorted((c for c in crit_set if len(c) == len(alpha) + 1), key=key)
            for beta in uppers:
                path = _path_to(D, up, beta, alpha)
                if path is not None:
                    hit = path
                    break
            if hit:
                break
        if hit is None:
            break
        # beta > a0 < b0 > a1 < ... > alpha  becomes  a0 < beta, a1 < b0, ...
        beta, alpha = hit[0], hit[-1]
        tops = [beta] + hit[2:-1:2]
        lows = hit[1:-1:2] + [alpha]
        for a in hit[1:-1:2]:
            del up[a]
        for a, b in zip(lows, tops):
            up[a] = b
        crit_set -= {alpha, beta}
    return sorted(up.items()), sorted(crit_set, key=key)


def _lower_star_field(D, f0: Mapping) -> tuple[list[tuple[Cell, Cell]], list[Cell]]:
    """Gradient pairs and critical cells on the simplex set ``D``."""
    D = set(D)
    blocks: dict = {}
    for t in D:
        blocks.setdefault(max(t, key=f0.__getitem__), []).append(t)
    pairs: list[tuple[Cell, Cell]] = []
    crit: list[Cell] = []
    for v in sorted(blocks, key=f0.__getitem__):
        cells = blocks[v]
        link = set()
        for t in cells:
            if len(t) > 1:
                rest = tuple(x for x in t if x != v)
                if rest in D:
                    link.add(rest)
        if not link:
            crit.extend(cells)
            continue
        lp, lc = _lower_star_field(link, f0)
        lp, lc = _cancel(link, lp, lc, f0)
        considered = {_join(v, a) for a in link}
        pairs.extend((_join(v, a), _join(v, b)) for a, b in lp)
        ws = [c for c in lc if len(c) == 1]
        if (v,) in D:
            considered.add((v,))
            if ws:
                w = min(ws, key=lambda c: f0[c[0]])
                pairs.append(((v,), _join(v, w)))
                lc = [c for c in lc if c != w]
            else:
                crit.append((v,))
        crit.extend(_join(v, a) for a in lc)
        # cells of the block the recursion never reached stay critical
        crit.extend(t for t in cells if t not in considered)
    return pairs, crit


def _field_on(K: Complex, ids: Iterable[int], f0: Mapping) -> VectorField:
    D = {K.simplices[i] for i in ids}
    pairs, _ = _lower_star_field(D, f0)
    return VectorField((K.id_of(a), K.id_of(b)) for a, b in pairs)


def _gap(f0: Mapping) -> float:
    vals = sorted(set(f0.values()))
    gaps = [b - a for a, b in zip(vals, vals[1:])]
    return min(gaps) if gaps else 1.0


def _realize(K: Complex, f0: Mapping, V: VectorField, domains: Iterable[Iterable[int]],
             eps: float | None) -> tuple[list[float], float]:
    """maxf plus a small offset ordering each lower star within each domain.

    Offsets follow a topological order of the cells and gradient pairs of
    the lower star, so inside every domain the gradient is exactly ``V``.
    Lower stars of distinct vertices stay separated because offsets stay
    below half the smallest gap between vertex values.
    """
    half = _gap(f0) / 2
    eff = half if eps is None else min(float(eps), half)
    maxf = maxf_extension(K, f0)
    out = list(maxf)
    for dom in domains:
        groups: dict = {}
        for i in dom:
            groups.setdefault(max(K.simplices[i], key=f0.__getitem__), []).append(i)
        for v, ids in groups.items():
            rank: dict[int, float] = {}
            for k, b in enumerate(_block_order(K, V, ids)):
                if len(b) == 2:
                    rank[b[0]], rank[b[1]] = k + 0.5, float(k)
                else:
                    rank[b[0]] = float(k)
            base = rank.get(K.get((v,)), 0.0)     # keeps f0 on the vertex
            h = eff / (len(ids) + 2)
            for i in ids:
                out[i] = maxf[i] + (rank[i] - base) * h
    return out, eff


def extend_dmf(K: Complex, f0: Mapping, eps: float | None = None
               ) -> tuple[VectorField, list[float], float]:
    """Gradient field and compatible discrete Morse function from vertex data.

    Returns ``(V, values, eps_used)``.  The values agree with ``f0`` on the
    vertices and lie within ``eps_used`` of maxf, where ``eps_used`` is
    ``eps`` clamped below half the smallest gap between vertex values.
    """
    check_injective(f0)
    V = _field_on(K, K.all, f0)
    ok, witness = is_acyclic(K, V)
    if not ok:
        raise CyclicField(witness)
    values, eff = _realize(K, f0, V, [K.all], eps)
    return V, values, eff


@dataclass
class StratifiedExtension:
    values: list[float]
    fields: dict[str, VectorField]
    eps: float

    @property
    def field(self) -> VectorField:
        pairs = []
        for V in self.fields.values():
            pairs.extend(V.pairs)
        return VectorField(pairs)


def extend_stratified(K: Complex, S: Stratification, f0: Mapping,
                      eps: float | None = None) -> StratifiedExtension:
    """Run the lower-star extension inside every stratum.

    Strata are handled in a linear extension of the strata order.  A
    simplex whose lower link needs cells of another stratum is simply not
    reached and stays critical.  No closeness to maxf is claimed here.
    """
    check_injective(f0)
    _, order = strata_order(K, S)
    fields = {name: _field_on(K, S[name], f0) for name in order}
    ext = StratifiedExtension([], fields, 0.0)
    ext.values, ext.eps = _realize(K, f0, ext.field, [S[n] for n in order], eps)
    return ext


def extend_global(K: Complex, S: Stratification, f0: Mapping) -> list[float]:
    """A discrete Morse function on all of K whose gradient is the union of
    the per-stratum fields of :func:`extend_stratified`."""
    ext = extend_stratified(K, S, f0)
    return separating_function(K, S, ext.field).values
