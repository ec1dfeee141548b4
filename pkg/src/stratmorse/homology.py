"""Simplicial homology with coefficients in the two-element field."""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence

import numpy as np

from .core import Complex
from .errors import NotAComplex


def _domain(K: Complex, D: Iterable[int] | None) -> frozenset:
    D = K.all if D is None else frozenset(D)
    if not K.is_closed(D):
        raise NotAComplex("simplex set is not downward closed")
    return D


def boundary_matrix(K: Complex, D: Iterable[int] | None, p: int) -> np.ndarray:
    """Mod-2 boundary map from p-simplices to (p-1)-simplices of ``D``.

    Rows and columns are ordered by simplex id.  For p == 0 the matrix has
    zero rows.
    """
    D = _domain(K, D)
    cols = sorted(s for s in D if K.dims[s] == p)
    rows = sorted(s for s in D if K.dims[s] == p - 1)
    pos = {r: i for i, r in enumerate(rows)}
    M = np.zeros((len(rows), len(cols)), dtype=np.uint8)
    for j, c in enumerate(cols):
        for fc in K.faces[c]:
            M[pos[fc], j] = 1
    return M


def gf2_rank(columns: Iterable[int]) -> int:
    """Rank of a set of columns given as integer bitmasks."""
    pivots: dict[int, int] = {}
    rank = 0
    for col in columns:
        while col:
            low = col & -col
            other = pivots.get(low)
            if other is None:
                pivots[low] = col
                rank += 1
                break
            col ^= other
    return rank


def matrix_rank_gf2(M: np.ndarray) -> int:
    cols = []
    for j in range(M.shape[1]):
        mask = 0
        for i in np.flatnonzero(M[:, j] & 1):
            mask |= 1 << int(i)
        cols.append(mask)
    return gf2_rank(cols)


def betti_from_chain(cells: Mapping[int, Sequence[int]],
                     boundary: Mapping[int, Mapping[int, Iterable[int]]],
                     top: int = -1) -> tuple[int, ...]:
    """Betti numbers of a chain complex over the two-element field.

    ``cells[p]`` lists the generators of degree p and ``boundary[p][c]`` the
    generators of degree p-1 appearing with coefficient one in the boundary
    of ``c``.  The result runs up to the highest degree with generators, or
    up to ``top`` if that is larger.
    """
    if any(cells.values()):
        top = max(top, max(p for p, cs in cells.items() if cs))
    if top < 0:
        return ()
    ranks = {}
    for p in range(1, top + 1):
        rows = {c: i for i, c in enumerate(cells.get(p - 1, ()))}
        cols = []
        for c in cells.get(p, ()):
            mask = 0
            for r in boundary.get(p, {}).get(c, ()):
                mask ^= 1 << rows[r]
            cols.append(mask)
        ranks[p] = gf2_rank(cols)
    out = []
    for p in range(top + 1):
        n = len(cells.get(p, ()))
        out.append(n - ranks.get(p, 0) - ranks.get(p + 1, 0))
    return tuple(out)


def betti(K: Complex, D: Iterable[int] | None = None) -> tuple[int, ...]:
    """Betti vector of the subcomplex ``D`` (default: all of K).

    Trailing dimensions are kept up to the top dimension of ``D``; the empty
    complex gives ``()``.
    """
    D = _domain(K, D)
    cells: dict[int, list[int]] = {}
    for s in sorted(D):
        cells.setdefault(K.dims[s], []).append(s)
    boundary = {p: {c: K.faces[c] for c in cs} for p, cs in cells.items() if p > 0}
    return betti_from_chain(cells, boundary)
