"""Winding-number indices and basepoint weights.

Region indices are integers assigned by a breadth-first sweep of the face
adjacency graph from the outer region (index 0), increasing by one from the
right of a directed edge to its left.  Edge and crossing indices average
the adjacent regions and are exact rationals with denominator 2 and 4.
"""

from fractions import Fraction

from .errors import (
    BasepointAtCrossing,
    InconsistentIndexing,
    MultiComponent,
    UnknownCrossing,
)
from .planarmap import SRC, TGT


class IndexMap:
    """Indices of regions plus the derived edge and crossing indices."""

    def __init__(self, diagram, by_region):
        self._d = diagram
        self.by_region = dict(by_region)

    def region(self, rid):
        return self.by_region[rid]

    def edge(self, eid):
        d = self._d
        left = self.by_region[d.left_face(eid)]
        right = self.by_region[d.right_face(eid)]
        return Fraction(left + right, 2)

    def crossing(self, cid):
        d = self._d
        if cid not in d.slots:
            raise UnknownCrossing(cid)
        total = sum(self.by_region[_corner_face(d, cid, s)] for s in range(4))
        return Fraction(total, 4)

    def corner(self, cid, slot):
        return self.by_region[_corner_face(self._d, cid, slot)]


def _corner_face(d, cid, slot):
    """Face holding the quadrant between rays ``slot`` and ``slot + 1``.

    The face walk sweeps corner (X, t) when it arrives along the slot-t
    end, i.e. when it departs the opposite end of that edge.
    """
    dart = d.dart_at(cid, slot)
    return d.face_of_dart(d.alpha(dart))


def region_indices(d):
    """Index of every region; outer region pinned to 0."""
    if d.is_circle:
        inner = 1 if d.circle_ccw else -1
        return IndexMap(d, {0: 0, 1: inner})
    idx = {d.outer_face.id: 0}
    queue = [d.outer_face.id]
    # edges incident to each face, for the sweep
    incident = {}
    for eid in d.edges:
        incident.setdefault(d.left_face(eid), []).append(eid)
        incident.setdefault(d.right_face(eid), []).append(eid)
    while queue:
        f = queue.pop()
        for eid in incident[f]:
            left, right = d.left_face(eid), d.right_face(eid)
            expect_left = idx[right] + 1 if right in idx else None
            expect_right = idx[left] - 1 if left in idx else None
            for face, val in ((left, expect_left), (right, expect_right)):
                if val is None:
                    continue
                if face in idx:
                    if idx[face] != val:
                        raise InconsistentIndexing(
                            f"edge {eid}: face {face} gets {val} and {idx[face]}"
                        )
                else:
                    idx[face] = val
                    queue.append(face)
    if len(idx) != len(d.faces):
        raise InconsistentIndexing("face adjacency not connected")
    return IndexMap(d, idx)


def crossing_sign(d, cid):
    """+1 exactly when the over-strand enters at slot 1."""
    return d.sign(cid)


def writhe(d):
    if d.is_circle:
        return 0
    return sum(d.sign(c) for c in d.crossing_ids)


def entering_edges(d, cid):
    """The pair (e_i, e_j) of edges pointing at a crossing.

    e_i is the entering edge of index ind(c) + 1/2: the over-strand edge at
    a positive crossing and the under-strand edge at a negative one.
    """
    under_in = d.dart_at(cid, 0)[0]
    over_in = d.dart_at(cid, d.over_in_slot(cid))[0]
    if d.sign(cid) == 1:
        return over_in, under_in
    return under_in, over_in


def quadrants(d, cid):
    """Corner slots of (r_W, r_E, r_N, r_S) around a crossing.

    r_W lies left of e_i (index ind(c)+1), r_E right of e_j (ind(c)-1),
    r_N and r_S between the strands (ind(c)).
    """
    if d.sign(cid) == 1:
        return {"W": 1, "E": 3, "N": 2, "S": 0}
    return {"W": 0, "E": 2, "N": 1, "S": 3}


class WeightTable:
    """Basepoint weights of crossings, edges and regions."""

    def __init__(self, basepoint, labels, by_crossing, by_edge, by_region):
        self.basepoint = basepoint
        self.labels = labels
        self.by_crossing = by_crossing
        self.by_edge = by_edge
        self.by_region = by_region

    def crossing(self, cid):
        return self.by_crossing[cid]

    def edge(self, eid):
        return self.by_edge[eid]

    def region(self, rid):
        return self.by_region.get(rid, Fraction(0))


def edge_labels(d, basepoint):
    """Label edges 1..2n along the orientation, starting at ``basepoint``."""
    if d.n_components != 1:
        raise MultiComponent("edge labels need a knot diagram")
    if basepoint not in d.edges:
        raise BasepointAtCrossing(f"no edge {basepoint} to anchor the basepoint")
    comp = d.components[0]
    k = comp.index(basepoint)
    ordered = comp[k:] + comp[:k]
    return {eid: i + 1 for i, eid in enumerate(ordered)}


def _weight_tables(d, label_of, crossing_weight):
    by_crossing, by_edge, by_region = {}, {}, {}
    for cid in d.crossing_ids:
        w = crossing_weight(cid)
        ei, ej = entering_edges(d, cid)
        by_crossing[cid] = w
        by_edge[ei] = w
        by_edge[ej] = -w
        q = quadrants(d, cid)
        half = Fraction(w, 2)
        for name, slot in q.items():
            face = _corner_face(d, cid, slot)
            contrib = half if name in ("W", "E") else -half
            by_region[face] = by_region.get(face, Fraction(0)) + contrib
    return by_crossing, by_edge, by_region


def weights(d, basepoint):
    """Weights from a basepoint at the start of edge ``basepoint``."""
    label_of = edge_labels(d, basepoint)

    def cw(cid):
        ei, ej = entering_edges(d, cid)
        diff = label_of[ei] - label_of[ej]
        return 1 if diff > 0 else -1

    bc, be, br = _weight_tables(d, label_of, cw)
    return WeightTable(basepoint, label_of, bc, be, br)


def modified_weights(d):
    """Basepoint-free weights driven by crossing signs."""
    if d.is_circle:
        return WeightTable(None, {}, {}, {}, {})
    bc, be, br = _weight_tables(d, None, lambda cid: d.sign(cid))
    return WeightTable(None, None, bc, be, br)


def winding_number(d):
    """Rotation number of the strand (+1 for the counterclockwise circle)."""
    if d.is_circle:
        return 1 if d.circle_ccw else -1
    if d.n_components != 1:
        raise MultiComponent("winding number needs a knot diagram")
    im = region_indices(d)
    base = min(d.edges)
    wt = weights(d, base)
    total = sum(wt.by_crossing.values()) + 2 * im.edge(base)
    assert total.denominator == 1
    return int(total)
