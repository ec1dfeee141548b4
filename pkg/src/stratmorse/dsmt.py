"""
Stratifications from arbitrary simplex-wise functions, and what they buy.

``construct_stratification`` peels violators off one at a time (lowest
dimension first, then lowest value, then lowest id) until the rest carries a
discrete Morse function, and then splits the rest into its interior and its
frontier.  The remaining functions work with any valid discrete stratified
Morse function: union gradients, strata-separating Morse functions,
simplification by collapsing gradient pairs, and a brute-force maximality
check.
"""

from __future__ import annotations

import gc
import heapq
from collections.abc import Iterable, Sequence
from contextlib import contextmanager
from dataclasses import dataclass, field

from .core import Complex, ScalarField
from .errors import (ComplexTooLarge, CyclicField, InvalidStratification,
                     NonRespectingField, NotADSMF)
from .homology import betti
from .morse import (VectorField, check_dmf, gradient_of, is_acyclic, is_violator,
                    morse_chain_complex)
from .strat import Stratification, check_dsmf, strata_order, validate_stratification

INTERIOR = "interior"
FRONTIER = "frontier"


def violator_name(K: Complex, sid: int) -> str:
    return "violator:" + "-".join(str(v) for v in K.simplices[sid])


@dataclass
class AlgorithmTrace:
    removals: list[int] = field(default_factory=list)
    # violators that stopped being violators at each removal step
    dropped: list[list[int]] = field(default_factory=list)
    initial_violators: list[int] = field(default_factory=list)
    strata: dict[str, list[int]] = field(default_factory=dict)
    gradients: dict[str, list[list[int]]] = field(default_factory=dict)
    refinements: list[str] = field(default_factory=list)

    @property
    def surviving(self) -> list[list[int]]:
        """Violators still pending after each removal step."""
        left = list(self.initial_violators)
        out = []
        for sigma, gone in zip(self.removals, self.dropped):
            drop = set(gone) | {sigma}
            left = [s for s in left if s not in drop]
            out.append(left)
        return out

    def to_json(self) -> dict:
        return {
            "initial_violators": self.initial_violators,
            "removals": self.removals,
            "surviving": self.surviving,
            "strata": self.strata,
            "gradients": self.gradients,
            "refinements": self.refinements,
        }


@contextmanager
def _gc_paused():
    # the construction allocates many small acyclic objects; full collections
    # triggered by them scan every live object and make large inputs superlinear
    was = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was:
            gc.enable()


def violator_order(K: Complex, f: ScalarField, ids: Iterable[int]) -> list[int]:
    return sorted(ids, key=lambda s: (K.dims[s], f[s], s))


def construct_stratification(K: Complex, f: ScalarField,
                             order: Sequence[int] | None = None,
                             refine: bool = True,
                             greedy: bool = False) -> tuple[Stratification, AlgorithmTrace]:
    """Coarse stratification on which ``f`` is a discrete stratified Morse
    function.

    ``order`` overrides the removal priority: violators listed there are
    tried first, in that order, before the default ordering.  With
    ``refine`` the frontier stratum is split further whenever the frontier
    condition would fail; see :func:`refine_frontier`.  ``greedy`` then
    runs :func:`coarsen` on the result.
    """
    with _gc_paused():
        return _construct(K, f, order, refine, greedy)


def _construct(K, f, order, refine, greedy):
    trace = AlgorithmTrace()
    alive = set(K)
    pending = set(check_dmf(K, f))
    trace.initial_violators = violator_order(K, f, pending)

    prio = {s: i for i, s in enumerate(order or ())}
    queue = sorted(pending, key=lambda s: (0, prio[s]) if s in prio
                   else (1, K.dims[s], f[s], s))
    removed: list[int] = []
    for sigma in queue:
        if sigma not in pending:
            continue
        pending.discard(sigma)
        alive.discard(sigma)
        removed.append(sigma)
        # only neighbours of sigma can change status
        gone = []
        for nb in K.faces[sigma] + K.cofaces[sigma]:
            if nb in pending and not is_violator(K, f, nb, alive):
                pending.discard(nb)
                gone.append(nb)
        trace.dropped.append(sorted(gone))
    trace.removals = removed

    interior = K.interior(alive)
    frontier = frozenset(alive) - interior
    strata: dict[str, frozenset] = {}
    for sigma in removed:
        strata[violator_name(K, sigma)] = frozenset([sigma])
    if frontier:
        strata[FRONTIER] = frontier
    if interior:
        strata[INTERIOR] = interior
    S = Stratification(strata)
    if refine:
        S, notes = refine_frontier(K, S)
        trace.refinements = notes
    if greedy:
        S = coarsen(K, f, S)

    trace.strata = S.to_json()
    for name, ids in S.strata.items():
        trace.gradients[name] = gradient_of(K, f, ids).to_json()
    return S, trace


def refine_frontier(K: Complex, S: Stratification) -> tuple[Stratification, list[str]]:
    """Coarse refinement of ``S`` that satisfies the frontier condition.

    A stratum A meets the closure of T exactly where the open star of a
    simplex of A reaches T.  Each stratum is split into classes of simplices
    reaching the same set of other strata, and this is repeated until no
    class splits.  At the fixpoint every stratum lies either inside or
    outside each other closure, which is the frontier condition; local
    closedness follows from it.  Splitting only shrinks U_s and L_s, so a
    discrete stratified Morse function stays one.
    """
    names = list(S.strata)
    label = {i: S.s(i) for i in K}
    # labels met by the star of x = own label plus those met by each coface
    top_down = sorted(K, key=lambda i: -K.dims[i])
    notes: list[str] = []
    while True:
        seen: dict[int, frozenset] = {}
        classes: dict[tuple, list[int]] = {}
        for i in top_down:
            acc = {label[i]}
            for c in K.cofaces[i]:
                acc |= seen[c]
            seen[i] = frozenset(acc)
        for i in K:
            own = label[i]
            classes.setdefault((own, seen[i] - {own}), []).append(i)
        by_name: dict[str, list[list[int]]] = {}
        for (own, _), ids in classes.items():
            by_name.setdefault(own, []).append(ids)
        split = {n: parts for n, parts in by_name.items() if len(parts) > 1}
        if not split:
            break
        for n, parts in sorted(split.items()):
            parts.sort(key=min)
            notes.append(f"split {n} into {len(parts)} parts")
            for k, ids in enumerate(parts):
                for i in ids:
                    label[i] = f"{n}.{k}"
    strata: dict[str, list[int]] = {}
    order = {n: k for k, n in enumerate(names)}
    for i in K:
        strata.setdefault(label[i], []).append(i)
    ranked = sorted(strata, key=lambda n: (order[n.split(".")[0]] if n.split(".")[0] in order
                                           else len(order), n))
    return Stratification({n: strata[n] for n in ranked}), notes


def _require_dsmf(K: Complex, f: ScalarField, S: Stratification) -> None:
    bad = check_dsmf(K, f, S)
    if bad:
        raise NotADSMF(bad)


def union_gradient(K: Complex, f: ScalarField, S: Stratification) -> VectorField:
    """Union of the gradients of ``f`` restricted to each stratum."""
    _require_dsmf(K, f, S)
    pairs = []
    for ids in S.strata.values():
        pairs.extend(gradient_of(K, f, ids).pairs)
    V = VectorField(pairs)
    ok, witness = is_acyclic(K, V)
    if not ok:
        raise CyclicField(witness)
    return V


def _block_order(K: Complex, V: VectorField, ids: Iterable[int]) -> list[tuple[int, ...]]:
    """Topological order of the critical cells and gradient pairs of a set.

    Each block is ``(c,)`` for an unpaired cell or ``(face, coface)`` for a
    pair.  Block X precedes block Y when a simplex of X is an immediate face
    of a simplex of Y and they are not the same pair.  Ties go to the block
    with the smallest (dimension, id) key of its top cell.
    """
    ids = set(ids)
    block_of: dict[int, tuple[int, ...]] = {}
    for s in ids:
        if s in V.up and V.up[s] in ids:
            block_of[s] = (s, V.up[s])
        elif s in V.down and V.down[s] in ids:
            block_of[s] = (V.down[s], s)
        else:
            block_of[s] = (s,)
    blocks = set(block_of.values())
    succ: dict[tuple, set] = {b: set() for b in blocks}
    indeg = {b: 0 for b in blocks}
    for t in ids:
        bt = block_of[t]
        for s in K.faces[t]:
            if s in ids:
                bs = block_of[s]
                if bs != bt and bt not in succ[bs]:
                    succ[bs].add(bt)
                    indeg[bt] += 1

    def key(b):
        top = b[-1]
        return (K.dims[top], top)

    heap = [(key(b), b) for b in blocks if indeg[b] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        _, b = heapq.heappop(heap)
        out.append(b)
        for c in succ[b]:
            indeg[c] -= 1
            if indeg[c] == 0:
                heapq.heappush(heap, (key(c), c))
    if len(out) != len(blocks):
        ok, witness = is_acyclic(K, V)
        raise CyclicField(witness or [])
    return out


@dataclass
class SeparatingFunction:
    values: list[float]
    thresholds: list[float]
    order: list[str]


def separating_function(K: Complex, S: Stratification, V: VectorField) -> SeparatingFunction:
    """Discrete Morse function with gradient ``V`` whose sublevel sets
    exhaust the strata in the order of a linear extension.

    Stratum i receives values in ``(a_{i-1}, a_i]``; inside a stratum every
    block of the gradient gets the next integer, the face of a pair sitting
    half a unit above its coface.
    """
    bad = validate_stratification(K, S)
    if bad:
        raise InvalidStratification(bad)
    for s, t in V.pairs:
        if S.s(s) != S.s(t):
            raise NonRespectingField(f"pair ({s}, {t}) crosses strata")
    ok, witness = is_acyclic(K, V)
    if not ok:
        raise CyclicField(witness)
    _, order = strata_order(K, S)
    g = [0.0] * len(K)
    thresholds = []
    level = 0.0
    for name in order:
        for block in _block_order(K, V, S[name]):
            level += 1.0
            if len(block) == 1:
                g[block[0]] = level
            else:
                face, coface = block
                g[coface] = level
                level += 0.5
                g[face] = level
        thresholds.append(level)
    return SeparatingFunction(g, thresholds, order)


@dataclass
class SimplifyReport:
    critical_counts: tuple[int, ...]
    critical: list[int]
    collapses: list[tuple[int, int]]
    removal_order: list[tuple[int, ...]]
    morse_betti: tuple[int, ...]
    betti: tuple[int, ...]
    euler: int
    pairs: list[tuple[int, int]]

    @property
    def euler_from_critical(self) -> int:
        return sum((-1) ** p * c for p, c in enumerate(self.critical_counts))

    def to_json(self) -> dict:
        return {
            "critical_counts": list(self.critical_counts),
            "critical": self.critical,
            "collapses": [list(p) for p in self.collapses],
            "removal_order": [list(b) for b in self.removal_order],
            "morse_betti": list(self.morse_betti),
            "betti": list(self.betti),
            "euler": self.euler,
            "pairs": [list(p) for p in self.pairs],
        }


def collapse_sequence(K: Complex, V: VectorField, start: Iterable[int],
                      stop: Iterable[int] = ()) -> list[tuple[int, ...]]:
    """Remove ``start - stop`` from ``start`` block by block.

    Blocks are taken in reverse topological order; each step is checked to
    be an elementary collapse (a pair whose face has the coface as its only
    remaining coface, the coface being maximal) or the removal of a single
    maximal cell.  Raises ValueError if a step is not one of these or if the
    result is not a subcomplex.
    """
    current = set(start)
    target = frozenset(stop)
    steps = []
    for block in reversed(_block_order(K, V, current - target)):
        top = block[-1]
        if any(c in current for c in K.cofaces[top]):
            raise ValueError(f"{top} is not maximal when removing {block}")
        if len(block) == 2:
            face = block[0]
            if [c for c in K.cofaces[face] if c in current] != [top]:
                raise ValueError(f"{face} is not a free face of {top}")
        for s in block:
            current.discard(s)
        steps.append(block)
    if not K.is_closed(current):
        raise ValueError("collapse did not end in a subcomplex")
    return steps


def simplify(K: Complex, f: ScalarField, S: Stratification) -> SimplifyReport:
    """Collapse every gradient pair of the union gradient.

    Collapses run stratum by stratum from the top of the strata order down,
    so each one removes a pair lying inside a single stratum.
    """
    V = union_gradient(K, f, S)
    sep = separating_function(K, S, V)
    paired = V.paired()
    blocks = [(a, b) for a, b in V.pairs] + [(c,) for c in K if c not in paired]
    removal = sorted(blocks, key=lambda b: -max(sep.values[s] for s in b))
    _check_removal(K, removal)
    mc = morse_chain_complex(K, V)
    crit = sorted(c for cs in mc.cells.values() for c in cs)
    return SimplifyReport(
        critical_counts=mc.counts(),
        critical=crit,
        collapses=[b for b in removal if len(b) == 2],
        removal_order=removal,
        morse_betti=mc.betti(),
        betti=betti(K),
        euler=K.euler_characteristic(),
        pairs=V.pairs,
    )


def _check_removal(K: Complex, removal: list[tuple[int, ...]]) -> None:
    current = set(K)
    for block in removal:
        top = block[-1]
        if any(c in current for c in K.cofaces[top]):
            raise ValueError(f"{top} is not maximal")
        if len(block) == 2 and [c for c in K.cofaces[block[0]] if c in current] != [top]:
            raise ValueError(f"{block[0]} is not free")
        current.difference_update(block)


# -- greedy coarsening ------------------------------------------------------

def coarsen(K: Complex, f: ScalarField, S: Stratification) -> Stratification:
    """Greedily merge strata pieces of ``S`` while f stays a discrete
    stratified Morse function.

    For each pair of adjacent pieces p, q in different blocks it tries, in
    turn: merging the two blocks, moving p to q's block, moving q to p's
    block, and splitting p and q off into a block of their own.  A move is
    kept when the result is a valid stratification carrying f, every
    current piece stays inside one new block, and the total number of
    pieces drops.  The result is never finer than ``S`` but need not be
    maximal.  Each trial revalidates the whole stratification, so this is
    meant for small and medium complexes.
    """
    _require_dsmf(K, f, S)
    pieces = S.pieces(K)
    closure = [K.closure(p) for p in pieces]
    adj = sorted({(min(i, j), max(i, j)) for i in range(len(pieces))
                  for j in range(len(pieces)) if i != j and pieces[i] & closure[j]})
    blocks = [frozenset(i for i, p in enumerate(pieces) if p <= ids) for ids in S.strata.values()]

    def union(b):
        return frozenset().union(*(pieces[i] for i in b))

    def count(bl):
        return sum(len(K.pieces(union(b))) for b in bl)

    current = count(blocks)
    changed = True
    while changed:
        changed = False
        comps = [c for b in blocks for c in K.pieces(union(b))]
        for p, q in adj:
            bp = next(k for k, b in enumerate(blocks) if p in b)
            bq = next(k for k, b in enumerate(blocks) if q in b)
            if bp == bq:
                continue
            base = [b for k, b in enumerate(blocks) if k not in (bp, bq)]
            moves = [
                [blocks[bp] | blocks[bq]],
                [blocks[bp] - {p}, blocks[bq] | {p}],
                [blocks[bq] - {q}, blocks[bp] | {q}],
                [blocks[bp] - {p}, blocks[bq] - {q}, frozenset({p, q})],
            ]
            for mv in moves:
                cand = base + [b for b in mv if b]
                unions = [union(b) for b in cand]
                if any(check_dmf(K, f, u) for u in unions):
                    continue
                if not all(any(c <= u for u in unions) for c in comps):
                    continue
                n = count(cand)
                if n >= current:
                    continue
                T = Stratification({str(k): u for k, u in enumerate(unions)})
                if validate_stratification(K, T):
                    continue
                blocks, current, changed = cand, n, True
                break
            if changed:
                break
    unions = sorted((union(b) for b in blocks), key=min)
    return Stratification({f"S{k}": u for k, u in enumerate(unions)})


# -- maximality oracle -------------------------------------------------------

def is_maximal(K: Complex, f: ScalarField, S: Stratification, bound: int = 16) -> bool:
    """True iff no strictly coarser stratification carries ``f``."""
    return find_coarser(K, f, S, bound) is None


def find_coarser(K: Complex, f: ScalarField, S: Stratification,
                 bound: int = 16) -> Stratification | None:
    """Brute force: a strictly coarser stratification carrying f, if any.

    Candidates are all partitions of the strata pieces of ``S`` into blocks,
    searched with pruning: a block on which f is not a discrete Morse
    function stays bad under any enlargement.  A candidate is strictly
    coarser when one of its strata pieces is the union of several pieces of
    ``S``.
    """
    if len(K) > bound:
        raise ComplexTooLarge(f"{len(K)} simplices exceeds bound {bound}")
    _require_dsmf(K, f, S)
    pieces = S.pieces(K)
    n = len(pieces)
    adjacent = [[False] * n for _ in range(n)]
    closure = [K.closure(p) for p in pieces]
    for i in range(n):
        for j in range(n):
            if i != j and pieces[i] & closure[j]:
                adjacent[i][j] = adjacent[j][i] = True

    blocks: list[set[int]] = []       # piece indices
    unions: list[frozenset] = []

    def dmf_ok(ids: frozenset) -> bool:
        return not check_dmf(K, f, ids)

    def strictly_coarser() -> bool:
        for blk in blocks:
            if len(blk) < 2:
                continue
            # connected components of the block in the piece adjacency graph
            rest = set(blk)
            while rest:
                comp = {rest.pop()}
                frontier_ = list(comp)
                while frontier_:
                    i = frontier_.pop()
                    for j in list(rest):
                        if adjacent[i][j]:
                            rest.discard(j)
                            comp.add(j)
                            frontier_.append(j)
                if len(comp) > 1:
                    return True
        return False

    found: list[Stratification] = []

    def rec(i: int) -> bool:
        if i == n:
            if not strictly_coarser():
                return False
            cand = Stratification({str(k): u for k, u in enumerate(unions)})
            if validate_stratification(K, cand):
                return False
            found.append(cand)
            return True
        for k in range(len(blocks)):
            merged = unions[k] | pieces[i]
            if not dmf_ok(merged):
                continue
            blocks[k].add(i)
            old = unions[k]
            unions[k] = merged
            if rec(i + 1):
                return True
            unions[k] = old
            blocks[k].discard(i)
        blocks.append({i})
        unions.append(pieces[i])
        hit = rec(i + 1)
        blocks.pop()
        unions.pop()
        return hit

    rec(0)
    return found[0] if found else None

