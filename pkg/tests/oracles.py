"""Brute-force reference implementations used only by the tests.

Everything here works from vertex tuples and subset tests, never from the
incidence tables or algorithms of the package.
"""

from __future__ import annotations

import numpy as np


def is_face(s: tuple, t: tuple) -> bool:
    return set(s) < set(t)


def is_immediate_face(s: tuple, t: tuple) -> bool:
    return set(s) < set(t) and len(t) == len(s) + 1


def upper(simplices, f, a, domain=None):
    dom = range(len(simplices)) if domain is None else domain
    return {b for b in dom if is_immediate_face(simplices[a], simplices[b]) and f[b] <= f[a]}


def lower(simplices, f, a, domain=None):
    dom = range(len(simplices)) if domain is None else domain
    return {g for g in dom if is_immediate_face(simplices[g], simplices[a]) and f[g] >= f[a]}


def dmf_offenders(simplices, f, domain=None):
    dom = range(len(simplices)) if domain is None else sorted(domain)
    out = []
    for a in dom:
        U, L = upper(simplices, f, a, domain), lower(simplices, f, a, domain)
        if len(U) > 1 or len(L) > 1 or (U and L):
            out.append(a)
    return out


def gradient(simplices, f, domain=None):
    dom = range(len(simplices)) if domain is None else domain
    return {(a, b) for a in dom for b in upper(simplices, f, a, domain)}


def closure(simplices, A):
    return {i for i, s in enumerate(simplices) if any(set(s) <= set(simplices[a]) for a in A)}


def open_star(simplices, a):
    return {i for i, s in enumerate(simplices) if set(simplices[a]) <= set(s)}


def interior(simplices, A):
    return {a for a in A if open_star(simplices, a) <= set(A)}


def is_locally_closed(simplices, A):
    """A is open in its closure: closure minus A is itself closed."""
    A = set(A)
    rest = closure(simplices, A) - A
    return closure(simplices, rest) == rest


def pieces(simplices, A):
    A = sorted(A)
    comp = {a: a for a in A}

    def root(x):
        while comp[x] != x:
            x = comp[x]
        return x

    for a in A:
        for b in A:
            if is_face(simplices[a], simplices[b]):
                comp[root(a)] = root(b)
    groups = {}
    for a in A:
        groups.setdefault(root(a), set()).add(a)
    return list(groups.values())


def valid_stratification(simplices, strata):
    """Cover, disjointness, local closedness and frontier condition."""
    seen = set()
    for ids in strata:
        if not ids or seen & set(ids):
            return False
        seen |= set(ids)
    if seen != set(range(len(simplices))):
        return False
    for ids in strata:
        if not is_locally_closed(simplices, ids):
            return False
    for a in strata:
        for b in strata:
            if a is b:
                continue
            cl = closure(simplices, b)
            if set(a) & cl and not set(a) <= cl:
                return False
    return True


def has_closed_vpath(simplices, pairs) -> bool:
    """Follow every V-path from every paired face; a revisit on the current
    path is a cycle."""
    up = dict(pairs)

    def succ(a):
        b = up.get(a)
        if b is None:
            return []
        return [c for c, s in enumerate(simplices) if is_immediate_face(s, simplices[b]) and c != a]

    def walk(a, stack):
        if a in stack:
            return True
        return any(walk(c, stack | {a}) for c in succ(a))

    return any(walk(a, frozenset()) for a in up)


def gf2_rank(M: np.ndarray) -> int:
    M = M.copy() % 2
    rank = 0
    rows, cols = M.shape
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if M[r, c]), None)
        if piv is None:
            continue
        M[[rank, piv]] = M[[piv, rank]]
        for r in range(rows):
            if r != rank and M[r, c]:
                M[r] ^= M[rank]
        rank += 1
    return rank


def betti(simplices, A=None):
    A = range(len(simplices)) if A is None else A
    by_dim = {}
    for a in sorted(A):
        by_dim.setdefault(len(simplices[a]) - 1, []).append(a)
    if not by_dim:
        return ()
    top = max(by_dim)
    ranks = {}
    for p in range(1, top + 1):
        rows, cols = by_dim.get(p - 1, []), by_dim.get(p, [])
        M = np.zeros((len(rows), len(cols)), dtype=np.uint8)
        for j, c in enumerate(cols):
            for i, r in enumerate(rows):
                if is_immediate_face(simplices[r], simplices[c]):
                    M[i, j] = 1
        ranks[p] = gf2_rank(M)
    return tuple(len(by_dim.get(p, [])) - ranks.get(p, 0) - ranks.get(p + 1, 0)
                 for p in range(top + 1))


def collapses_onto(simplices, big, small, pairs) -> bool:
    """Remove free pairs from ``pairs`` until only ``small`` is left."""
    cur = set(big)
    todo = {(a, b) for a, b in pairs if a in cur and b in cur and a not in small}
    progress = True
    while todo and progress:
        progress = False
        for a, b in sorted(todo):
            cof = [c for c in cur if is_face(simplices[a], simplices[c])]
            top = [c for c in cur if is_face(simplices[b], simplices[c])]
            if cof == [b] and not top:
                cur -= {a, b}
                todo.discard((a, b))
                progress = True
                break
    return cur == set(small)


def coarser_partitions(blocks):
    """All set partitions of ``blocks`` (used to brute force maximality on
    tiny inputs)."""
    blocks = list(blocks)
    if not blocks:
        yield []
        return
    first, rest = blocks[0], blocks[1:]
    for part in coarser_partitions(rest):
        yield [first] + part
        for i in range(len(part)):
            yield part[:i] + [part[i] | first] + part[i + 1:]
