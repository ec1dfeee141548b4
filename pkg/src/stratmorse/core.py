"""
Finite simplicial complexes as sets of open simplices.

A complex stores every simplex once, keyed by its sorted vertex tuple, and
keeps the codimension-1 incidence (the Hasse diagram) in both directions.
Simplex ids are dense integers in input order.  Subsets of a complex are
plain ``frozenset`` objects of ids; scalar fields are sequences of floats
indexed by id.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from itertools import combinations

from .errors import DuplicateSimplex, MissingFace, NonInjectiveVertexField

SimplexSet = frozenset
ScalarField = Sequence[float]


class Complex:
    """Immutable simplicial complex with explicit face/coface incidence.

    >>> K = Complex([(0,), (1,), (0, 1)])
    >>> K.faces[2], K.cofaces[0]
    ((0, 1), (2,))
    """

    __slots__ = ("simplices", "dims", "faces", "cofaces", "_index")

    def __init__(self, simplices: Iterable[Sequence]):
        verts: list[tuple] = []
        index: dict[tuple, int] = {}
        for s in simplices:
            t = tuple(sorted(s))
            if not t:
                raise ValueError("empty simplex")
            if len(set(t)) != len(t):
                raise ValueError(f"repeated vertex in simplex {t}")
            if t in index:
                raise DuplicateSimplex(f"simplex {t} listed twice")
            index[t] = len(verts)
            verts.append(t)

        faces: list[tuple[int, ...]] = []
        cofaces: list[list[int]] = [[] for _ in verts]
        for sid, t in enumerate(verts):
            if len(t) == 1:
                faces.append(())
                continue
            fs = []
            for i in range(len(t)):
                ft = t[:i] + t[i + 1:]
                fid = index.get(ft)
                if fid is None:
                    raise MissingFace(f"face {ft} of simplex {t} is absent")
                fs.append(fid)
                cofaces[fid].append(sid)
            faces.append(tuple(fs))

        self.simplices: tuple[tuple, ...] = tuple(verts)
        self.dims: tuple[int, ...] = tuple(len(t) - 1 for t in verts)
        self.faces: tuple[tuple[int, ...], ...] = tuple(faces)
        self.cofaces: tuple[tuple[int, ...], ...] = tuple(tuple(c) for c in cofaces)
        self._index = index

    def __len__(self) -> int:
        return len(self.simplices)

    def __iter__(self):
        return iter(range(len(self.simplices)))

    def __repr__(self) -> str:
        return f"Complex({len(self)} simplices, dim {self.dimension})"

    @property
    def dimension(self) -> int:
        return max(self.dims, default=-1)

    @property
    def all(self) -> frozenset:
        return frozenset(range(len(self.simplices)))

    def id_of(self, vertices: Iterable) -> int:
        return self._index[tuple(sorted(vertices))]

    def get(self, vertices: Iterable):
        """Id of the simplex spanned by ``vertices``, or None."""
        return self._index.get(tuple(sorted(vertices)))

    def vertices(self) -> list:
        return [t[0] for t in self.simplices if len(t) == 1]

    def vertex_id(self, v) -> int:
        return self._index[(v,)]

    def of_dim(self, p: int) -> list[int]:
        return [i for i, d in enumerate(self.dims) if d == p]

    def all_faces(self, sid: int) -> list[int]:
        """Every proper face of ``sid`` (any codimension)."""
        t = self.simplices[sid]
        out = []
        for k in range(1, len(t)):
            for sub in combinations(t, k):
                out.append(self._index[sub])
        return out

    def star(self, sid: int) -> set[int]:
        """Open star: ``sid`` together with all its iterated cofaces."""
        seen = {sid}
        stack = [sid]
        while stack:
            for c in self.cofaces[stack.pop()]:
                if c not in seen:
                    seen.add(c)
                    stack.append(c)
        return seen

    def is_face(self, a: int, b: int) -> bool:
        """True if ``a`` is a proper face of ``b``."""
        ta, tb = self.simplices[a], self.simplices[b]
        return len(ta) < len(tb) and set(ta) <= set(tb)

    # -- subset calculus -------------------------------------------------

    def closure(self, A: Iterable[int]) -> frozenset:
        seen = set(A)
        stack = list(seen)
        while stack:
            for fc in self.faces[stack.pop()]:
                if fc not in seen:
                    seen.add(fc)
                    stack.append(fc)
        return frozenset(seen)

    def interior(self, A: Iterable[int]) -> frozenset:
        """Members of ``A`` whose open star lies inside ``A``.

        Processed top-down by dimension: a simplex is interior iff it is in
        ``A`` and each immediate coface is interior.
        """
        A = set(A)
        inside: set[int] = set()
        for sid in sorted(A, key=lambda s: -self.dims[s]):
            if all(c in inside for c in self.cofaces[sid]):
                inside.add(sid)
        return frozenset(inside)

    def frontier(self, A: Iterable[int]) -> frozenset:
        A = frozenset(A)
        return self.closure(A) - self.interior(A)

    def pieces(self, A: Iterable[int]) -> list[frozenset]:
        """Connected components of ``A`` under face comparability.

        Components are returned sorted by their smallest id.
        """
        A = set(A)
        parent = {a: a for a in A}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in A:
            for b in self.all_faces(a):
                if b in A:
                    ra, rb = find(a), find(b)
                    if ra != rb:
                        parent[ra] = rb
        groups: dict[int, set[int]] = {}
        for a in A:
            groups.setdefault(find(a), set()).add(a)
        return sorted((frozenset(g) for g in groups.values()), key=min)

    def is_closed(self, A: Iterable[int]) -> bool:
        A = set(A)
        return all(fc in A for a in A for fc in self.faces[a])

    def is_locally_closed(self, A: Iterable[int]) -> bool:
        """Sandwich condition: no ``sigma < tau < rho`` with the ends in A
        and ``tau`` outside."""
        return not self.sandwich_failures(A)

    def sandwich_failures(self, A: Iterable[int]) -> list[int]:
        """Simplices of closure(A) outside A that have a face in A."""
        A = frozenset(A)
        bad = []
        for t in self.closure(A) - A:
            if any(fc in A for fc in self.all_faces(t)):
                bad.append(t)
        return sorted(bad)

    def euler_characteristic(self, A: Iterable[int] | None = None) -> int:
        ids = range(len(self)) if A is None else A
        return sum(-1 if self.dims[s] % 2 else 1 for s in ids)

    def subcomplex(self, A: Iterable[int]) -> "Complex":
        """The complex on the simplices of a downward closed set ``A``."""
        return Complex(self.simplices[s] for s in sorted(A))


def build_complex(descriptions: Iterable[tuple[Sequence, float]]) -> tuple[Complex, tuple[float, ...]]:
    """Complex and scalar field from ``(vertex-list, value)`` pairs.

    Every face must be listed explicitly; nothing is auto-completed.
    """
    descriptions = list(descriptions)
    K = Complex(v for v, _ in descriptions)
    f = tuple(float(val) for _, val in descriptions)
    return K, f


def sublevel_complex(K: Complex, f: ScalarField, c: float) -> frozenset:
    return K.closure(s for s in K if f[s] <= c)


def check_injective(f0: Mapping) -> None:
    if len(set(f0.values())) != len(f0):
        raise NonInjectiveVertexField("vertex values must be pairwise distinct")


def lower_link(K: Complex, v, f0: Mapping) -> Complex:
    """Subcomplex of the link of vertex ``v`` spanned by neighbours with a
    smaller value than ``v``."""
    check_injective(f0)
    fv = f0[v]
    out = []
    for sid in K.star(K.vertex_id(v)):
        t = K.simplices[sid]
        if len(t) == 1:
            continue
        rest = tuple(w for w in t if w != v)
        if all(f0[w] < fv for w in rest):
            out.append(rest)
    out.sort(key=lambda t: (len(t), t))
    return Complex(out)


def euler_characteristic(K: Complex, A: Iterable[int] | None = None) -> int:
    return K.euler_characteristic(A)
