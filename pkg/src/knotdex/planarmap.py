"""Oriented knot/link diagrams as combinatorial planar maps.

A diagram is stored as a set of directed edges between crossing slots.
Each crossing has four slots in counterclockwise rotational order:

    slot 0  end of the edge entering on the under-strand
    slot 2  start of the edge leaving on the under-strand
    slots 1 and 3  the over-strand (one entering end, one leaving end)

A strand entering at slot s exits at slot (s + 2) % 4.  The crossing is
positive exactly when the over-strand enters at slot 1.

Edge-ends ("darts") are pairs (edge id, SRC|TGT).  The face walk departs
an end d along its edge, arrives at the opposite end, and pivots one slot
counterclockwise; orbits of that walk are the faces.  The face traversed by
departing an edge's source end lies on the edge's left, and the region on
the left of a directed edge has winding index one greater than the region
on its right.  The outer region is the one containing the point at
infinity and always has index 0.
"""

from dataclasses import dataclass
from functools import cached_property

from .errors import (
    EdgeNotOnOuterFace,
    IncompatibleSumEdges,
    InvalidDiagram,
    MultiComponent,
    UnknownCrossing,
    UnknownEdge,
)

SRC = 0
TGT = 1


@dataclass(frozen=True)
class Edge:
    """Directed edge between two crossing slots."""

    id: int
    src: tuple  # (crossing id, slot) where the edge leaves
    tgt: tuple  # (crossing id, slot) where the edge enters

    def end(self, kind):
        return self.src if kind == SRC else self.tgt


@dataclass(frozen=True)
class Region:
    """One face of the map: a cyclic sequence of edge-sides.

    ``darts`` are the departure ends in walk order; ``corners`` the
    (crossing, slot) quadrants the walk sweeps.  A crossing appears in
    ``crossings`` once per corner (multiplicity 1 or 2).
    """

    id: int
    darts: tuple
    corners: tuple
    crossings: tuple
    is_outer: bool

    def __len__(self):
        return len(self.darts)


class ValidationReport:
    """Outcome of the structural checks, one entry per invariant."""

    def __init__(self):
        self.checks = []

    def add(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self):
        return all(ok for _, ok, _ in self.checks)

    def failures(self):
        return [(n, d) for n, ok, d in self.checks if not ok]

    def __repr__(self):
        status = "pass" if self.ok else "FAIL"
        return f"<ValidationReport {status} {self.failures()!r}>"


class Diagram:
    """Immutable oriented diagram.

    The zero-crossing diagram is the distinguished value ``TrivialCircle``
    (or its reverse); it has no edges and carries only its orientation.
    """

    def __init__(self, edges=(), outer_dart=None, circle_ccw=None, check=True):
        if isinstance(edges, dict):
            edges = edges.values()
        self.edges = {e.id: e for e in edges}
        self.outer_dart = outer_dart
        self.circle_ccw = circle_ccw
        if not self.edges:
            if circle_ccw is None:
                raise InvalidDiagram("empty diagram must be a TrivialCircle")
            self.outer_dart = None
        elif check:
            report = self.validate()
            if not report.ok:
                raise InvalidDiagram(f"invalid diagram: {report.failures()}")

    # -- basic structure ------------------------------------------------

    @property
    def is_circle(self):
        return not self.edges

    @cached_property
    def slots(self):
        """crossing id -> list of four darts, indexed by slot."""
        table = {}
        for e in self.edges.values():
            for kind, (c, s) in ((SRC, e.src), (TGT, e.tgt)):
                row = table.setdefault(c, [None, None, None, None])
                if not 0 <= s <= 3:
                    raise InvalidDiagram(f"edge {e.id}: bad slot {s}")
                if row[s] is not None:
                    raise InvalidDiagram(f"crossing {c} slot {s} occupied twice")
                row[s] = (e.id, kind)
        return table

    @cached_property
    def crossing_ids(self):
        return tuple(sorted(self.slots))

    @property
    def n(self):
        """Number of crossings."""
        return 0 if self.is_circle else len(self.slots)

    def dart_position(self, dart):
        eid, kind = dart
        return self.edges[eid].end(kind)

    def dart_at(self, cid, slot):
        return self.slots[cid][slot]

    def sign(self, cid):
        """+1 when the over-strand enters at slot 1, -1 at slot 3."""
        if cid not in self.slots:
            raise UnknownCrossing(cid)
        return 1 if self.slots[cid][1][1] == TGT else -1

    def over_in_slot(self, cid):
        return 1 if self.sign(cid) == 1 else 3

    # -- strand traversal -----------------------------------------------

    def next_edge(self, eid):
        """Edge that continues eid through its target crossing."""
        c, s = self.edges[eid].tgt
        dart = self.slots[c][(s + 2) % 4]
        return dart[0]

    def prev_edge(self, eid):
        c, s = self.edges[eid].src
        dart = self.slots[c][(s + 2) % 4]
        return dart[0]

    @cached_property
    def components(self):
        """Edge cycles under next_edge, each a tuple in strand order."""
        if self.is_circle:
            return ((),)
        seen = set()
        comps = []
        for start in sorted(self.edges):
            if start in seen:
                continue
            cycle = []
            e = start
            while e not in seen:
                seen.add(e)
                cycle.append(e)
                e = self.next_edge(e)
            comps.append(tuple(cycle))
        return tuple(comps)

    @property
    def n_components(self):
        return len(self.components)

    # -- faces ------------------------------------------------------------

    def alpha(self, dart):
        eid, kind = dart
        return (eid, 1 - kind)

    def walk_step(self, dart):
        """Depart along ``dart``, arrive opposite, pivot one slot ccw."""
        opp = self.alpha(dart)
        c, s = self.dart_position(opp)
        return self.slots[c][(s + 1) % 4]

    @cached_property
    def _face_data(self):
        faces = []
        face_of = {}
        todo = set()
        for eid in self.edges:
            todo.add((eid, SRC))
            todo.add((eid, TGT))
        while todo:
            start = min(todo)
            orbit = []
            corners = []
            d = start
            while True:
                orbit.append(d)
                todo.discard(d)
                arr = self.alpha(d)
                corners.append(self.dart_position(arr))
                d = self.walk_step(d)
                if d == start:
                    break
            faces.append((tuple(orbit), tuple(corners)))
        faces.sort(key=lambda f: min(f[1]))
        regions = []
        outer_face_idx = self._face_index_of(self.outer_dart, faces)
        for i, (orbit, corners) in enumerate(faces):
            regions.append(
                Region(
                    id=i,
                    darts=orbit,
                    corners=corners,
                    crossings=tuple(sorted(c for c, _ in corners)),
                    is_outer=(i == outer_face_idx),
                )
            )
            for d in orbit:
                face_of[d] = i
        return tuple(regions), face_of

    @staticmethod
    def _face_index_of(dart, faces):
        for i, (orbit, _) in enumerate(faces):
            if dart in orbit:
                return i
        return -1

    @cached_property
    def faces(self):
        """All regions, outer region flagged.  Two pseudo-regions for circles."""
        if self.is_circle:
            return (
                Region(0, (), (), (), True),
                Region(1, (), (), (), False),
            )
        return self._face_data[0]

    def face_of_dart(self, dart):
        """Region index of the face traversed when departing along ``dart``."""
        return self._face_data[1][dart]

    def left_face(self, eid):
        return self.face_of_dart((eid, SRC))

    def right_face(self, eid):
        return self.face_of_dart((eid, TGT))

    @cached_property
    def outer_face(self):
        for r in self.faces:
            if r.is_outer:
                return r
        raise InvalidDiagram("no outer face")

    # -- validation -------------------------------------------------------

    def validate(self):
        report = ValidationReport()
        if self.is_circle:
            report.add("trivial_circle", True)
            return report
        try:
            slots = self.slots
        except InvalidDiagram as err:
            report.add("slot_occupancy", False, str(err))
            return report
        holes = [
            (c, s) for c, row in slots.items() for s in range(4) if row[s] is None
        ]
        report.add("slot_occupancy", not holes, f"empty slots: {holes}")
        if holes:
            return report

        bad_roles = []
        for c, row in slots.items():
            if row[0][1] != TGT:
                bad_roles.append((c, 0))
            if row[2][1] != SRC:
                bad_roles.append((c, 2))
            if {row[1][1], row[3][1]} != {SRC, TGT}:
                bad_roles.append((c, 1))
        report.add("strand_roles", not bad_roles, f"bad slots: {bad_roles}")
        if bad_roles:
            return report

        n, ne = len(slots), len(self.edges)
        report.add("edge_count", ne == 2 * n, f"{ne} edges for {n} crossings")

        seen = {self.crossing_ids[0]}
        stack = [self.crossing_ids[0]]
        while stack:
            c = stack.pop()
            for dart in slots[c]:
                other, _ = self.dart_position(self.alpha(dart))
                if other not in seen:
                    seen.add(other)
                    stack.append(other)
        report.add("connected", len(seen) == n, f"{len(seen)} of {n} reachable")
        if len(seen) != n:
            return report

        nf = len({self.face_of_dart((e, k)) for e in self.edges for k in (SRC, TGT)})
        report.add("euler", n - ne + nf == 2, f"V-E+F = {n}-{ne}+{nf}")
        report.add(
            "outer_face",
            self.outer_dart in self._all_darts(),
            f"outer dart {self.outer_dart}",
        )
        return report

    def _all_darts(self):
        return {(e, k) for e in self.edges for k in (SRC, TGT)}

    # -- canonical form ----------------------------------------------------

    @cached_property
    def canonical_form(self):
        """Relabeling-invariant byte encoding.

        Breadth-first renumbering is attempted from every crossing and the
        lexicographically smallest serialization wins, so two diagrams get
        equal forms exactly when they are isomorphic as labeled maps with
        the same outer face.
        """
        if self.is_circle:
            return b"circle:ccw" if self.circle_ccw else b"circle:cw"
        best = None
        outer = set(self.outer_face.corners)
        for root in self.crossing_ids:
            enc = self._encode_from(root, outer)
            if best is None or enc < best:
                best = enc
        return best

    def _encode_from(self, root, outer_corners):
        num = {root: 0}
        order = [root]
        i = 0
        while i < len(order):
            c = order[i]
            i += 1
            for dart in self.slots[c]:
                other, _ = self.dart_position(self.alpha(dart))
                if other not in num:
                    num[other] = len(order)
                    order.append(other)
        rows = []
        for c in order:
            row = [self.sign(c)]
            for dart in self.slots[c]:
                oc, os = self.dart_position(self.alpha(dart))
                row.append((num[oc], os))
            rows.append(tuple(row))
        outer_mark = min((num[c], s) for c, s in outer_corners)
        return repr((len(order), tuple(rows), outer_mark)).encode()

    def __eq__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        return self.canonical_form == other.canonical_form

    def __hash__(self):
        return hash(self.canonical_form)

    def __repr__(self):
        if self.is_circle:
            return f"<TrivialCircle {'ccw' if self.circle_ccw else 'cw'}>"
        return f"<Diagram n={self.n} components={self.n_components}>"

    # -- constructors -------------------------------------------------------

    @staticmethod
    def circle(ccw=True):
        return Diagram((), circle_ccw=ccw)

    def relabeled(self, edge_map=None, crossing_map=None):
        """Same diagram with renamed edge/crossing ids (for tests and splices)."""
        if self.is_circle:
            return self
        edge_map = edge_map or {}
        crossing_map = crossing_map or {}

        def me(e):
            return edge_map.get(e, e)

        def mc(pos):
            c, s = pos
            return (crossing_map.get(c, c), s)

        edges = [Edge(me(e.id), mc(e.src), mc(e.tgt)) for e in self.edges.values()]
        od = (me(self.outer_dart[0]), self.outer_dart[1])
        return Diagram(edges, od)


TrivialCircle = Diagram.circle(True)


# -- operations -------------------------------------------------------------


def validate(d):
    """Structural checks; returns the report instead of raising."""
    return d.validate()


def faces(d):
    if not d.is_circle and not d.validate().ok:
        raise InvalidDiagram("faces() on invalid diagram")
    return list(d.faces)


def switch_crossing(d, cid):
    """Swap over/under roles at one crossing; the underlying curve is kept."""
    if d.is_circle or cid not in d.slots:
        raise UnknownCrossing(cid)
    shift = d.over_in_slot(cid)  # old over-in becomes the new slot 0

    def move(pos):
        c, s = pos
        if c != cid:
            return pos
        return (c, (s - shift) % 4)

    edges = [Edge(e.id, move(e.src), move(e.tgt)) for e in d.edges.values()]
    return Diagram(edges, d.outer_dart)


def reverse_orientation(d):
    """Reverse the direction of every strand; crossing signs are preserved."""
    if d.is_circle:
        return Diagram.circle(not d.circle_ccw)

    def move(pos):
        c, s = pos
        return (c, (s + 2) % 4)

    edges = [Edge(e.id, move(e.tgt), move(e.src)) for e in d.edges.values()]
    od = (d.outer_dart[0], 1 - d.outer_dart[1])
    return Diagram(edges, od)


def outer_side(d, eid):
    """Which sides of edge ``eid`` border the outer region ('L'/'R' set)."""
    sides = set()
    outer = d.outer_face.id
    if d.left_face(eid) == outer:
        sides.add("L")
    if d.right_face(eid) == outer:
        sides.add("R")
    return sides


def connected_sum(d, e, edge_d=None, edge_e=None):
    """Splice two one-component diagrams along outer-face edges.

    Both edges must border their outer faces on the same side relative to
    their directions, otherwise the cross-splice is not planar.
    """
    if d.is_circle:
        return e
    if e.is_circle:
        return d
    if d.n_components != 1 or e.n_components != 1:
        raise MultiComponent("connected sum needs one-component diagrams")
    if edge_d is None:
        edge_d = _default_outer_edge(d)
    if edge_e is None:
        edge_e = _pick_compatible_edge(e, outer_side(d, edge_d))
    if edge_d not in d.edges:
        raise UnknownEdge(edge_d)
    if edge_e not in e.edges:
        raise UnknownEdge(edge_e)
    sd, se = outer_side(d, edge_d), outer_side(e, edge_e)
    if not sd:
        raise EdgeNotOnOuterFace(f"edge {edge_d} of first diagram")
    if not se:
        raise EdgeNotOnOuterFace(f"edge {edge_e} of second diagram")
    if not sd & se:
        raise IncompatibleSumEdges(
            f"outer region on side {sd} of edge {edge_d} but {se} of edge {edge_e}"
        )
    side = "R" if "R" in sd & se else "L"

    ce_off = max(d.crossing_ids) + 1 - min(e.crossing_ids)
    ee_off = max(d.edges) + 1 - min(e.edges)
    a = d.edges[edge_d]
    b = e.edges[edge_e]

    def sh(pos):
        return (pos[0] + ce_off, pos[1])

    edges = [ed for ed in d.edges.values() if ed.id != edge_d]
    edges += [
        Edge(ed.id + ee_off, sh(ed.src), sh(ed.tgt))
        for ed in e.edges.values()
        if ed.id != edge_e
    ]
    g1 = Edge(edge_d, a.src, sh(b.tgt))
    g2 = Edge(edge_e + ee_off, sh(b.src), a.tgt)
    edges += [g1, g2]
    outer_dart = (g1.id, TGT if side == "R" else SRC)
    return Diagram(edges, outer_dart)


def _default_outer_edge(d):
    for eid in sorted(d.edges):
        if outer_side(d, eid):
            return eid
    raise EdgeNotOnOuterFace("no edge borders the outer face")


def _pick_compatible_edge(e, want_sides):
    for eid in sorted(e.edges):
        if outer_side(e, eid) & want_sides:
            return eid
    raise IncompatibleSumEdges(f"no edge with outer region on side {want_sides}")


def canonical_form(d):
    return d.canonical_form
