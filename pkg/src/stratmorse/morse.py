"""
Discrete Morse machinery on complexes and on arbitrary simplex subsets.

Every function accepts an optional ``domain``: a set of simplex ids that
restricts which faces and cofaces are visible.  ``None`` means the whole
complex.  Ties in function values count toward U and L (weak inequalities).
"""

from __future__ import annotations

import enum
import heapq
from collections.abc import Iterable
from dataclasses import dataclass, field
from graphlib import TopologicalSorter

from .core import Complex, ScalarField
from .errors import CyclicField, NotAMatching, NotAMorseFunction
from .homology import betti_from_chain


def upper_set(K: Complex, f: ScalarField, a: int, domain=None) -> list[int]:
    """Immediate cofaces of ``a`` in ``domain`` with value <= f(a)."""
    fa = f[a]
    return [b for b in K.cofaces[a] if f[b] <= fa and (domain is None or b in domain)]


def lower_set(K: Complex, f: ScalarField, a: int, domain=None) -> list[int]:
    """Immediate faces of ``a`` in ``domain`` with value >= f(a)."""
    fa = f[a]
    return [g for g in K.faces[a] if f[g] >= fa and (domain is None or g in domain)]


def _members(K: Complex, domain) -> Iterable[int]:
    return range(len(K)) if domain is None else sorted(domain)


def is_violator(K: Complex, f: ScalarField, a: int, domain=None) -> bool:
    nu = len(upper_set(K, f, a, domain))
    nl = len(lower_set(K, f, a, domain))
    return nu >= 2 or nl >= 2 or (nu >= 1 and nl >= 1)


def check_dmf(K: Complex, f: ScalarField, domain=None) -> list[int]:
    """Simplices of ``domain`` breaking |U|<=1, |L|<=1 or U/L exclusivity.

    An empty list means ``f`` restricted to ``domain`` is a discrete Morse
    function.
    """
    return [a for a in _members(K, domain) if is_violator(K, f, a, domain)]


class Violation(enum.Flag):
    NONE = 0
    I = enum.auto()
    II = enum.auto()
    III = enum.auto()

    def label(self) -> str:
        return "+".join(m.name for m in (Violation.I, Violation.II, Violation.III) if m in self)


@dataclass(frozen=True)
class Status:
    kind: str                     # "critical" | "regular" | "violator"
    partner: int | None = None
    violation: Violation = Violation.NONE
    upper: tuple[int, ...] = field(default=(), compare=False)
    lower: tuple[int, ...] = field(default=(), compare=False)

    @property
    def code(self) -> str:
        """Short code: C, R, or the violator types (e.g. ``I+II``)."""
        if self.kind == "critical":
            return "C"
        if self.kind == "regular":
            return "R"
        return self.violation.label()


def classify_one(K: Complex, f: ScalarField, a: int, domain=None) -> Status:
    U = tuple(upper_set(K, f, a, domain))
    L = tuple(lower_set(K, f, a, domain))
    nu, nl = len(U), len(L)
    if nu == 0 and nl == 0:
        return Status("critical", upper=U, lower=L)
    if nu + nl == 1:
        return Status("regular", (U or L)[0], upper=U, lower=L)
    v = Violation.NONE
    if nu >= 2:
        v |= Violation.I
    if nl >= 2:
        v |= Violation.II
    if nu == 1 and nl == 1:
        v |= Violation.III
    return Status("violator", violation=v, upper=U, lower=L)


def classify(K: Complex, f: ScalarField, domain=None) -> dict[int, Status]:
    return {a: classify_one(K, f, a, domain) for a in _members(K, domain)}


def violators(K: Complex, f: ScalarField, domain=None) -> list[int]:
    return check_dmf(K, f, domain)


class VectorField:
    """A partial matching of simplices with codimension-1 cofaces.

    ``up[s]`` is the coface paired with ``s``; ``down[t]`` the face paired
    with ``t``.
    """

    __slots__ = ("up", "down")

    def __init__(self, pairs: Iterable[tuple[int, int]] = ()):
        up: dict[int, int] = {}
        down: dict[int, int] = {}
        for s, t in pairs:
            s, t = int(s), int(t)
            if s in up or s in down or t in up or t in down or s == t:
                raise NotAMatching(f"simplex reused in pair ({s}, {t})")
            up[s] = t
            down[t] = s
        self.up = up
        self.down = down

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self.up.items())

    def __len__(self) -> int:
        return len(self.up)

    def __iter__(self):
        return iter(self.pairs)

    def __contains__(self, pair) -> bool:
        s, t = pair
        return self.up.get(s) == t

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.up == other.up

    def __hash__(self):
        return hash(frozenset(self.up.items()))

    def __repr__(self) -> str:
        return f"VectorField({self.pairs})"

    def paired(self) -> set[int]:
        return set(self.up) | set(self.down)

    def partner(self, s: int):
        return self.up.get(s, self.down.get(s))

    def union(self, other: "VectorField") -> "VectorField":
        return VectorField(self.pairs + other.pairs)

    def to_json(self) -> list[list[int]]:
        return [[s, t] for s, t in self.pairs]

    @classmethod
    def from_json(cls, data) -> "VectorField":
        return cls((int(s), int(t)) for s, t in data)


def check_field(K: Complex, V: VectorField) -> None:
    """Raise NotAMatching unless every pair is a codimension-1 face relation."""
    for s, t in V.up.items():
        if not (0 <= t < len(K)) or s not in K.faces[t]:
            raise NotAMatching(f"({s}, {t}) is not a codimension-1 face pair")


def gradient_of(K: Complex, f: ScalarField, domain=None) -> VectorField:
    """Gradient field of ``f`` restricted to ``domain``."""
    bad = check_dmf(K, f, domain)
    if bad:
        raise NotAMorseFunction(bad)
    pairs = []
    for a in _members(K, domain):
        for b in upper_set(K, f, a, domain):
            pairs.append((a, b))
    return VectorField(pairs)


def critical_cells(V: VectorField, D: Iterable[int]) -> frozenset:
    return frozenset(D) - V.paired()


def _vpath_successors(K: Complex, V: VectorField, a: int) -> list[int]:
    b = V.up.get(a)
    if b is None:
        return []
    return [c for c in K.faces[b] if c != a]


def is_acyclic(K: Complex, V: VectorField) -> tuple[bool, list[int] | None]:
    """Check for nontrivial closed V-paths.

    Returns ``(True, None)`` or ``(False, witness)`` where the witness is a
    closed V-path ``[a0, b0, a1, b1, ..., a0]``.
    """
    check_field(K, V)
    WHITE, GREY, BLACK = 0, 1, 2
    color: dict[int, int] = {}
    for start in sorted(V.up):
        if color.get(start, WHITE) != WHITE:
            continue
        stack = [(start, iter(_vpath_successors(K, V, start)))]
        path = [start]
        color[start] = GREY
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = BLACK
                stack.pop()
                path.pop()
                continue
            c = color.get(nxt, WHITE)
            if c == GREY:
                cyc = path[path.index(nxt):] + [nxt]
                witness = []
                for x in cyc[:-1]:
                    witness += [x, V.up[x]]
                witness.append(nxt)
                return False, witness
            if c == WHITE:
                color[nxt] = GREY
                path.append(nxt)
                stack.append((nxt, iter(_vpath_successors(K, V, nxt))))
    return True, None


@dataclass
class MorseComplex:
    """Chain complex over the two-element field on the critical cells."""

    cells: dict[int, list[int]]
    boundary: dict[int, dict[int, frozenset]]
    dim: int = -1     # dimension of the underlying complex

    def betti(self) -> tuple[int, ...]:
        return betti_from_chain(self.cells, self.boundary, self.dim)

    def counts(self) -> tuple[int, ...]:
        top = max([self.dim] + [p for p, cs in self.cells.items() if cs])
        return tuple(len(self.cells.get(p, ())) for p in range(top + 1))


def morse_chain_complex(K: Complex, V: VectorField, D: Iterable[int] | None = None) -> MorseComplex:
    """Morse complex of an acyclic field on the subcomplex ``D``.

    The boundary coefficient between critical cells is the parity of the
    number of gradient paths joining them, computed by flowing the ordinary
    boundary along the field until only critical cells remain.
    """
    D = K.all if D is None else frozenset(D)
    ok, witness = is_acyclic(K, V)
    if not ok:
        raise CyclicField(witness)
    crit = critical_cells(V, D)

    # topological order of the V-path graph, so each cell is flowed once
    ts = TopologicalSorter()
    for a in D:
        ts.add(a)
        for c in _vpath_successors(K, V, a):
            ts.add(c, a)
    pos = {a: i for i, a in enumerate(ts.static_order())}

    cells: dict[int, list[int]] = {}
    for c in sorted(crit):
        cells.setdefault(K.dims[c], []).append(c)
    boundary: dict[int, dict[int, frozenset]] = {}
    for p, cs in cells.items():
        if p == 0:
            continue
        bd = {}
        for t in cs:
            chain = set(K.faces[t])
            heap = [pos[x] for x in chain]
            heapq.heapify(heap)
            order = {pos[x]: x for x in chain}
            while heap:
                x = order[heapq.heappop(heap)]
                if x not in chain or x not in V.up:
                    continue
                for y in K.faces[V.up[x]]:
                    if y in chain:
                        chain.discard(y)
                    else:
                        chain.add(y)
                        if pos[y] not in order:
                            order[pos[y]] = y
                            heapq.heappush(heap, pos[y])
            bd[t] = frozenset(x for x in chain if x in crit)
        boundary[p] = bd
    dim = max((K.dims[s] for s in D), default=-1)
    return MorseComplex(cells, boundary, dim)
