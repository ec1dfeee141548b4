"""Regenerate the bundled example complexes under src/stratmorse/data."""

import json
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "src" / "stratmorse" / "data"


def cycle(vertices, edges):
    """Closed path v0 -e0- v1 -e1- ... -v0; vertex ids are their values."""
    simp = [{"vertices": [v], "value": v} for v in vertices]
    n = len(vertices)
    for i, e in enumerate(edges):
        simp.append({"vertices": sorted([vertices[i], vertices[(i + 1) % n]]), "value": e})
    return simp


def path(vertices, edges):
    return [{"vertices": sorted([vertices[i], vertices[i + 1]]), "value": e}
            for i, e in enumerate(edges)]


def write(name, meta, simplices):
    doc = {"meta": dict(meta, name=name), "simplices": simplices}
    (OUT / f"{name}.json").write_text(json.dumps(doc, indent=1) + "\n")


# upside-down pentagon: 10 -[1]- 3 -[5]- 7 -[9]- 8 -[6]- 4 -[2]- 10
write("pd", {
    "title": "upside-down pentagon",
    "reconstruction": True,
    "notes": "Built from the worked description: every stated U/L set and "
             "Morse pair is reproduced. Vertex ids equal vertex values.",
}, cycle([10, 3, 7, 8, 4], [1, 5, 9, 6, 2]))

# pentagon: 1 -[0]- 3 -[7]- 9 -[8]- 6 -[5]- 4 -[2]- 1
write("pentagon", {
    "title": "pentagon",
    "reconstruction": True,
    "notes": "Only the violators (9, type I; 0, type II) and the critical values "
             "are given; this cycle is the simplest one reproducing both.",
}, cycle([1, 3, 9, 6, 4], [0, 7, 8, 5, 2]))

# tetrahedron boundary, one labelling consistent with the U/L table
tet = [
    ([1], 1), ([3], 3), ([10], 10), ([14], 14),
    ([1, 3], 2), ([1, 10], 4), ([3, 10], 7), ([1, 14], 8), ([3, 14], 11), ([10, 14], 12),
    ([1, 3, 10], 5), ([1, 3, 14], 6), ([1, 10, 14], 9), ([3, 10, 14], 13),
]
write("tet", {
    "title": "tetrahedron boundary",
    "reconstruction": True,
    "notes": "Face relations recovered by constraint satisfaction against the "
             "U/L/type table (see tests/test_fixtures.py::test_tet_table_solutions). "
             "Six assignments fit the table; four of them also give the reported "
             "strata and gradient pairs, and this is the first of those four.",
}, [{"vertices": v, "value": x} for v, x in tet])

# split solid square: diagonal 0-2 valued 11, triangles 4 and 8
square = {(0,): 9, (1,): 1, (2,): 10, (3,): 5, (0, 1): 2, (1, 2): 3, (2, 3): 6,
          (0, 3): 7, (0, 2): 11, (0, 1, 2): 4, (0, 2, 3): 8}
write("split_square", {
    "title": "split solid square",
    "reconstruction": True,
    "notes": "Found by exhaustive search over value assignments with the "
             "diagonal valued 11, triangle 4 having L = {11}, violators exactly "
             "9, 10, 11 (type I) and every simplex critical afterwards.",
}, [{"vertices": list(k), "value": v} for k, v in square.items()])

# split octagon: boundary 30 p1 p2 p3 31 q1 q2 q3, chord 30 r1 r2 31
oct_v = [30, 2, 4, 5, 31, 11, 13, 14, 25, 27]
simp = [{"vertices": [v], "value": v} for v in oct_v]
simp += path([30, 2, 4, 5, 31], [0, 3, 6, 7])
simp += path([31, 11, 13, 14, 30], [10, 12, 15, 16])
simp += path([30, 25, 27, 31], [24, 26, 28])
write("split_octagon", {
    "title": "split octagon",
    "reconstruction": True,
    "notes": "Theta graph: branch vertices 30 and 31 joined by three arcs. "
             "Designed so the violators are exactly 0, 10, 24 (type II) and "
             "30, 31 (type I) and only 30, 31 get removed.",
}, simp)

# circle: triangle boundary with vertex 5 and edge 0 violating
write("circle", {
    "title": "circle with two violators",
    "reconstruction": True,
    "notes": "Vertex 5 (type I) and edge 0 (type II) violate; the rest is regular.",
}, cycle([5, 1, 3], [2, 0, 4]))
