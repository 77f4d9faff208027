"""Oriented smoothing of crossings.

Smoothing reconnects the strands so that orientation is preserved: the
incoming under-strand continues as the outgoing over-strand and vice
versa.  Smoothing one crossing of a knot splits it into a two-component
link summary (LinkSplit); smoothing every crossing yields the disjoint
Seifert circles, whose nesting is recovered combinatorially from the face
structure (no coordinates anywhere).
"""

from dataclasses import dataclass, field

from .errors import MultiComponent, UnknownCrossing
from .indices import quadrants, region_indices, _corner_face
from .planarmap import SRC


def _partner_slot(d, cid, t):
    """Slot whose edge-end joins slot ``t`` after smoothing crossing cid."""
    if d.sign(cid) == 1:
        return {0: 3, 3: 0, 1: 2, 2: 1}[t]
    return {0: 1, 1: 0, 2: 3, 3: 2}[t]


@dataclass(frozen=True)
class LinkSplit:
    """Outcome of smoothing one crossing of a knot diagram."""

    crossing: int
    assignment: dict  # other crossing id -> "intra1" | "intra2" | "inter"
    inter_signs: tuple

    @property
    def linking_number(self):
        total = sum(self.inter_signs)
        assert total % 2 == 0, "inter-component signs must sum evenly"
        return total // 2


def smooth_at(d, cid):
    """Split a knot by smoothing one self-crossing."""
    if d.is_circle or cid not in d.slots:
        raise UnknownCrossing(cid)
    if d.n_components != 1:
        raise MultiComponent("smooth_at needs a knot diagram")
    comp = d.components[0]
    # the two visits to cid cut the edge cycle into the two new components
    under_in = d.dart_at(cid, 0)[0]
    over_in = d.dart_at(cid, d.over_in_slot(cid))[0]
    i, j = sorted((comp.index(under_in), comp.index(over_in)))
    arc1 = set(comp[i + 1 : j + 1])
    arc2 = set(comp[j + 1 :] + comp[: i + 1])
    assignment = {}
    inter_signs = []
    for other in d.crossing_ids:
        if other == cid:
            continue
        e1 = d.dart_at(other, 0)[0]
        e2 = d.dart_at(other, d.over_in_slot(other))[0]
        in1, in2 = e1 in arc1, e2 in arc1
        if in1 and in2:
            assignment[other] = "intra1"
        elif not in1 and not in2:
            assignment[other] = "intra2"
        else:
            assignment[other] = "inter"
            inter_signs.append(d.sign(other))
    return LinkSplit(cid, assignment, tuple(inter_signs))


def linking_number(split):
    return split.linking_number


@dataclass(frozen=True)
class SeifertCircle:
    id: int
    edges: tuple  # original edge ids in circuit order
    orientation: int  # +1 counterclockwise
    parent: int  # enclosing circle id, or -1


@dataclass(frozen=True)
class SeifertForest:
    """Disjoint circles left after smoothing every crossing."""

    circles: tuple
    regions: tuple  # (index, euler characteristic) per region

    @property
    def n_circles(self):
        return len(self.circles)


def smooth_all(d):
    """Seifert circles of a diagram with nesting and orientation data."""
    if d.is_circle:
        sign = 1 if d.circle_ccw else -1
        circle = SeifertCircle(0, (), sign, -1)
        return SeifertForest((circle,), ((0, 0), (sign, 1)))

    # circuits of the smoothed strand successor
    succ = {}
    for e in d.edges.values():
        c, t = e.tgt
        out = d.dart_at(c, _partner_slot(d, c, t))
        succ[e.id] = out[0]
    circuits = []
    circle_of_edge = {}
    seen = set()
    for start in sorted(d.edges):
        if start in seen:
            continue
        cyc = []
        e = start
        while e not in seen:
            seen.add(e)
            cyc.append(e)
            e = succ[e]
        for e in cyc:
            circle_of_edge[e] = len(circuits)
        circuits.append(tuple(cyc))

    # smoothing merges, at every crossing, the two quadrants of equal index
    im = region_indices(d)
    parent_face = {r.id: r.id for r in d.faces}

    def find(x):
        while parent_face[x] != x:
            parent_face[x] = parent_face[parent_face[x]]
            x = parent_face[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent_face[max(ra, rb)] = min(ra, rb)

    for cid in d.crossing_ids:
        q = quadrants(d, cid)
        union(_corner_face(d, cid, q["N"]), _corner_face(d, cid, q["S"]))

    region_ids = sorted({find(r.id) for r in d.faces})
    region_index = {}
    for r in d.faces:
        rep = find(r.id)
        idx = im.region(r.id)
        assert region_index.setdefault(rep, idx) == idx, "merged unequal indices"

    # adjacency: each circle touches the merged regions on its two sides
    adjacency = {rep: set() for rep in region_ids}
    circle_sides = {}
    for eid in d.edges:
        circ = circle_of_edge[eid]
        left = find(d.left_face(eid))
        right = find(d.right_face(eid))
        sides = circle_sides.setdefault(circ, set())
        sides.update((left, right))
        adjacency[left].add(circ)
        adjacency[right].add(circ)
    for circ, sides in circle_sides.items():
        assert len(sides) == 2, "a circle must separate two regions"

    outer_rep = find(d.outer_face.id)
    # bipartite tree regions <-> circles; BFS from the unbounded region
    inside_of = {}
    region_parent_circle = {outer_rep: -1}
    queue = [outer_rep]
    visited_regions = {outer_rep}
    while queue:
        rep = queue.pop()
        for circ in adjacency[rep]:
            if circ in inside_of:
                continue
            a, b = circle_sides[circ]
            inner = b if a == rep else a
            inside_of[circ] = inner
            if inner not in visited_regions:
                visited_regions.add(inner)
                region_parent_circle[inner] = circ
                queue.append(inner)
    assert len(inside_of) == len(circuits), "circle arrangement not a tree"

    circles = []
    for i, cyc in enumerate(circuits):
        inner = inside_of[i]
        a, b = circle_sides[i]
        outer = b if a == inner else a
        orient = region_index[inner] - region_index[outer]
        assert orient in (1, -1), "circle must change index by one"
        parent = region_parent_circle[outer]
        circles.append(SeifertCircle(i, cyc, orient, parent))

    regions = []
    for rep in region_ids:
        k = len(adjacency[rep])
        chi = (1 - k) if rep == outer_rep else (2 - k)
        regions.append((region_index[rep], chi))
    return SeifertForest(tuple(circles), tuple(regions))


def region_data_smoothed(forest):
    """(winding index, Euler characteristic) per region of the circles."""
    return list(forest.regions)
