"""
Stratifications of a simplicial complex.

A stratification is a partition of the open simplices into named strata.
It is valid when every stratum is locally closed and the frontier
condition holds: a stratum meeting the closure of another lies inside it.
"""

from __future__ import annotations

import enum
import heapq
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from .core import Complex, ScalarField
from .errors import InvalidStratification, NotADSMF
from .morse import check_dmf, is_violator, lower_set, upper_set


class Stratification:
    """Named strata plus the assignment map ``s``.

    Strata are kept in insertion order.  Overlapping input is accepted by
    the constructor and reported by :func:`validate_stratification`.
    """

    def __init__(self, strata: Mapping[str, Iterable[int]]):
        self.strata: dict[str, frozenset] = {str(k): frozenset(v) for k, v in strata.items()}
        self.assignment: dict[int, str] = {}
        for name, ids in self.strata.items():
            for i in ids:
                self.assignment.setdefault(i, name)

    @classmethod
    def trivial(cls, K: Complex, name: str = "K") -> "Stratification":
        return cls({name: K.all})

    @classmethod
    def from_assignment(cls, assignment: Mapping[int, str]) -> "Stratification":
        strata: dict[str, set[int]] = {}
        for i, name in sorted(assignment.items()):
            strata.setdefault(str(name), set()).add(int(i))
        return cls(strata)

    def __len__(self) -> int:
        return len(self.strata)

    def __getitem__(self, name: str) -> frozenset:
        return self.strata[name]

    def __iter__(self):
        return iter(self.strata)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Stratification):
            return NotImplemented
        return set(self.strata.values()) == set(other.strata.values())

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {sorted(v)}" for k, v in self.strata.items())
        return f"Stratification({{{body}}})"

    def s(self, sid: int) -> str:
        return self.assignment[sid]

    def blocks(self) -> set[frozenset]:
        return set(self.strata.values())

    def pieces(self, K: Complex) -> list[frozenset]:
        out = []
        for ids in self.strata.values():
            out.extend(K.pieces(ids))
        return sorted(out, key=min)

    def piece_assignment(self, K: Complex) -> dict[int, int]:
        return {i: n for n, piece in enumerate(self.pieces(K)) for i in piece}

    def to_json(self) -> dict[str, list[int]]:
        return {name: sorted(ids) for name, ids in self.strata.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, Iterable[int]]) -> "Stratification":
        return cls({name: [int(i) for i in ids] for name, ids in data.items()})


@dataclass(frozen=True)
class StratumViolation:
    kind: str            # "uncovered" | "overlap" | "empty" | "not-locally-closed" | "frontier"
    strata: tuple[str, ...]
    witnesses: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.kind} {list(self.strata)} witnesses={list(self.witnesses)}"


def validate_stratification(K: Complex, S: Stratification) -> list[StratumViolation]:
    """All ways in which ``S`` fails to be a stratification of ``K``."""
    out: list[StratumViolation] = []
    seen: dict[int, str] = {}
    for name, ids in S.strata.items():
        if not ids:
            out.append(StratumViolation("empty", (name,), ()))
        for i in sorted(ids):
            if not 0 <= i < len(K):
                out.append(StratumViolation("uncovered", (name,), (i,)))
            elif i in seen:
                out.append(StratumViolation("overlap", (seen[i], name), (i,)))
            else:
                seen[i] = name
    missing = [i for i in K if i not in seen]
    if missing:
        out.append(StratumViolation("uncovered", (), tuple(missing)))

    for name, ids in S.strata.items():
        bad = K.sandwich_failures(ids)
        if bad:
            out.append(StratumViolation("not-locally-closed", (name,), tuple(bad)))

    closures = {name: K.closure(ids) for name, ids in S.strata.items()}
    for a, ids in S.strata.items():
        for b, clb in closures.items():
            if a == b:
                continue
            meet = ids & clb
            if meet and not ids <= clb:
                out.append(StratumViolation("frontier", (a, b), tuple(sorted(ids - clb))))
    return out


def is_valid(K: Complex, S: Stratification) -> bool:
    return not validate_stratification(K, S)


def _require_valid(K: Complex, S: Stratification) -> None:
    bad = validate_stratification(K, S)
    if bad:
        raise InvalidStratification(bad)


def strata_order(K: Complex, S: Stratification) -> tuple[frozenset, list[str]]:
    """Induced order ``a < b`` iff stratum a lies in the closure of b.

    Returns the strict relation as a set of ``(lower, upper)`` name pairs
    and a linear extension; ties are broken by stratum name.
    """
    _require_valid(K, S)
    names = list(S.strata)
    closures = {n: K.closure(S[n]) for n in names}
    rel = frozenset((a, b) for a in names for b in names
                    if a != b and S[a] <= closures[b])
    indeg = {n: 0 for n in names}
    succ: dict[str, list[str]] = {n: [] for n in names}
    for a, b in rel:
        indeg[b] += 1
        succ[a].append(b)
    heap = [n for n in names if indeg[n] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        n = heapq.heappop(heap)
        order.append(n)
        for m in succ[n]:
            indeg[m] -= 1
            if indeg[m] == 0:
                heapq.heappush(heap, m)
    return rel, order


def minimal_strata(K: Complex, S: Stratification) -> list[str]:
    rel, order = strata_order(K, S)
    uppers = {b for _, b in rel}
    return [n for n in order if n not in uppers]


def minimal_stratum_is_subcomplex(K: Complex, S: Stratification) -> bool:
    return all(K.is_closed(S[n]) for n in minimal_strata(K, S))


# -- stratified Morse conditions -------------------------------------------

def _local_domain(K: Complex, S: Stratification, a: int, by_piece: bool, cache: dict):
    if by_piece:
        if "pieces" not in cache:
            cache["pieces"] = {i: p for p in S.pieces(K) for i in p}
        return cache["pieces"][a]
    return S[S.s(a)]


def upper_set_s(K: Complex, f: ScalarField, S: Stratification, a: int,
                by_piece: bool = False, _cache=None) -> list[int]:
    dom = _local_domain(K, S, a, by_piece, {} if _cache is None else _cache)
    return upper_set(K, f, a, dom)


def lower_set_s(K: Complex, f: ScalarField, S: Stratification, a: int,
                by_piece: bool = False, _cache=None) -> list[int]:
    dom = _local_domain(K, S, a, by_piece, {} if _cache is None else _cache)
    return lower_set(K, f, a, dom)


def check_dsmf(K: Complex, f: ScalarField, S: Stratification, by_piece: bool = False) -> list[int]:
    """Simplices where (f, s) fails the stratified Morse conditions.

    ``by_piece`` confines U_s and L_s to strata pieces instead of strata.
    An immediate face/coface pair inside one stratum always lies in one
    piece, so both modes agree; the flag exists to make that checkable.
    """
    _require_valid(K, S)
    if by_piece:
        doms = S.pieces(K)
    else:
        doms = list(S.strata.values())
    bad = []
    for dom in doms:
        bad.extend(check_dmf(K, f, dom))
    return sorted(bad)


class Criticality(enum.Enum):
    GLOBALLY_CRITICAL = "globally-critical"
    LOCALLY_CRITICAL = "locally-critical"
    GLOBALLY_NONCRITICAL = "globally-noncritical"
    LOCALLY_NONCRITICAL = "locally-noncritical"

    @property
    def critical(self) -> bool:
        return self in (Criticality.GLOBALLY_CRITICAL, Criticality.LOCALLY_CRITICAL)


@dataclass(frozen=True)
class StratifiedStatus:
    category: Criticality
    partner: int | None = None


def classify_stratified(K: Complex, f: ScalarField, S: Stratification) -> dict[int, StratifiedStatus]:
    bad = check_dsmf(K, f, S)
    if bad:
        raise NotADSMF(bad)
    out = {}
    for a in K:
        dom = S[S.s(a)]
        U, L = upper_set(K, f, a), lower_set(K, f, a)
        Us, Ls = upper_set(K, f, a, dom), lower_set(K, f, a, dom)
        if not U and not L:
            out[a] = StratifiedStatus(Criticality.GLOBALLY_CRITICAL)
        elif not Us and not Ls:
            out[a] = StratifiedStatus(Criticality.LOCALLY_CRITICAL)
        elif len(U) + len(L) == 1:
            out[a] = StratifiedStatus(Criticality.GLOBALLY_NONCRITICAL, (U or L)[0])
        else:
            out[a] = StratifiedStatus(Criticality.LOCALLY_NONCRITICAL, (Us or Ls)[0])
    return out


def critical_simplices(K: Complex, f: ScalarField, S: Stratification) -> list[int]:
    return sorted(a for a, st in classify_stratified(K, f, S).items() if st.category.critical)


def violator_boundary_property(K: Complex, f: ScalarField, S: Stratification) -> bool:
    """Every global violator is locally critical or touches a stratum frontier."""
    cls = classify_stratified(K, f, S)
    frontiers = {n: K.frontier(ids) for n, ids in S.strata.items()}
    for a in K:
        if not is_violator(K, f, a):
            continue
        if cls[a].category is Criticality.LOCALLY_CRITICAL:
            continue
        fr = frontiers[S.s(a)]
        if any(g in fr for g in K.faces[a]):
            continue
        if any(a in frontiers[S.s(t)] for t in K.cofaces[a]):
            continue
        return False
    return True
