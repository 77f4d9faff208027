"""Reidemeister move engine: sites, surgery, classification.

Move sites are located by ids into the current diagram.  Face-valued
references (bigons, triangles) use the face's smallest corner, written
``<crossing>.<slot>``.  New objects created by a move get ids above the
current maximum, in a documented order, so emitted move sequences replay
deterministically.

Kink sides: a kink is on side L exactly when its one-sided loop face lies
on the left of the loop edge; an L kink has basepoint weight +1 and adds
+1 to the winding number.
"""

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import IllegalSite, IneligibleSite, UnknownCrossing, UnknownEdge
from .indices import region_indices
from .planarmap import SRC, TGT, Diagram, Edge

FORWARD = "forward"
BACKWARD = "backward"

# counterclockwise ray cycle used when rotations are rebuilt from a local
# picture (slot order runs S, W, N, E from the under-in ray)
_CW_FROM = {"S": "W", "W": "N", "N": "E", "E": "S"}


# -- site types -----------------------------------------------------------


@dataclass(frozen=True)
class R1Create:
    edge: int
    side: str  # 'L' | 'R'
    loop_over: bool

    kind = "R1"
    direction = FORWARD


@dataclass(frozen=True)
class R1Remove:
    crossing: int
    loop: int = None

    kind = "R1"
    direction = BACKWARD


@dataclass(frozen=True)
class R1FCreate:
    edge: int
    side: str

    kind = "R1F"
    direction = FORWARD


@dataclass(frozen=True)
class R1FRemove:
    c1: int
    c2: int

    kind = "R1F"
    direction = BACKWARD


@dataclass(frozen=True)
class R2Create:
    # face incidences: (edge id, 'L'|'R'); the named side faces the region
    inc1: tuple
    inc2: tuple
    over: str  # 'first' | 'second'

    kind = "R2"
    direction = FORWARD

    @property
    def matched(self):
        # the two strands are codirected across the shared region exactly
        # when the face walk traverses one forward and the other backward
        return self.inc1[1] != self.inc2[1]


@dataclass(frozen=True)
class R2Remove:
    corner: tuple  # minimal corner (crossing, slot) of the bigon face

    kind = "R2"
    direction = BACKWARD


@dataclass(frozen=True)
class R3Site:
    corner: tuple  # minimal corner of the triangle face

    kind = "R3"
    direction = None  # classified per site


# -- shared helpers ----------------------------------------------------------


def _fresh_ids(d, count):
    base = max(d.edges, default=0)
    return [base + i + 1 for i in range(count)]


def _fresh_crossings(d, count):
    base = max(d.slots, default=0) if not d.is_circle else 0
    return [base + i + 1 for i in range(count)]


def _slots_from_rays(ray_ends, under_in_ray):
    """Slot list 0..3 given edge-ends placed on compass rays."""
    out = []
    ray = under_in_ray
    for _ in range(4):
        out.append(ray_ends[ray])
        ray = _CW_FROM[ray]
    return out


def _circle_winding(d):
    from .indices import winding_number

    return winding_number(d)


def one_gon_loops(d, cid, include_outer=False):
    """Kink loops at ``cid``: loop edges bounding a one-sided inner face."""
    out = []
    for slot in range(4):
        eid, kind = d.slots[cid][slot]
        e = d.edges[eid]
        if kind != SRC or e.tgt[0] != cid:
            continue
        for face_dart, side in (((eid, SRC), "L"), ((eid, TGT), "R")):
            face = d.faces[d.face_of_dart(face_dart)]
            if len(face) == 1 and (include_outer or not face.is_outer):
                out.append((eid, side))
    return sorted(out)


def kink_info(d, cid, loop=None):
    """(loop edge, side, sign) for the removable kink at ``cid``."""
    loops = one_gon_loops(d, cid)
    if loop is not None:
        loops = [(e, s) for e, s in loops if e == loop]
    if not loops:
        return None
    if len(loops) > 1:
        raise IllegalSite(f"crossing {cid} has several kink loops; name one")
    eid, side = loops[0]
    return eid, side, d.sign(cid)


def insert_kink(d, eid, side, loop_over):
    """Add a curl on one side of an edge.  New ids: loop = max+1,
    continuation piece = max+2, crossing = max crossing + 1."""
    if side not in ("L", "R"):
        raise IllegalSite(f"bad kink side {side!r}")
    if d.is_circle:
        return _kink_on_circle(d, side, loop_over)
    if eid not in d.edges:
        raise UnknownEdge(eid)
    host = d.edges[eid]
    (cid,) = _fresh_crossings(d, 1)
    loop_id, cont_id = _fresh_ids(d, 2)
    e1 = Edge(eid, host.src, None)
    e2 = Edge(cont_id, None, host.tgt)
    slots = _kink_slots(side, loop_over)
    ends = {}
    for role, slot in slots.items():
        ends[role] = slot
    e1 = Edge(eid, host.src, (cid, ends["e1_tgt"]))
    loop = Edge(loop_id, (cid, ends["loop_src"]), (cid, ends["loop_tgt"]))
    e2 = Edge(cont_id, (cid, ends["e2_src"]), host.tgt)
    edges = [e for e in d.edges.values() if e.id != eid] + [e1, loop, e2]
    return Diagram(edges, d.outer_dart)


def _kink_slots(side, loop_over):
    if loop_over:
        # strand arriving by the loop passes over
        if side == "L":  # positive
            return {"e1_tgt": 0, "loop_src": 2, "loop_tgt": 1, "e2_src": 3}
        return {"e1_tgt": 0, "loop_src": 2, "loop_tgt": 3, "e2_src": 1}
    if side == "L":  # negative
        return {"loop_tgt": 0, "e2_src": 2, "e1_tgt": 3, "loop_src": 1}
    return {"loop_tgt": 0, "e2_src": 2, "e1_tgt": 1, "loop_src": 3}


def _kink_on_circle(d, side, loop_over):
    slots = _kink_slots(side, loop_over)
    cid, main_id, loop_id = 1, 1, 2
    main = Edge(main_id, (cid, slots["e2_src"]), (cid, slots["e1_tgt"]))
    loop = Edge(loop_id, (cid, slots["loop_src"]), (cid, slots["loop_tgt"]))
    outer_dart = (main_id, TGT if d.circle_ccw else SRC)
    return Diagram([main, loop], outer_dart)


def delete_crossings(d, cids, residual_ccw=None):
    """Remove crossings, splicing each strand straight through.

    Consumed edges chain-merge into the surviving edge entering the
    deleted zone; when nothing survives the result is a trivial circle
    with the caller-supplied orientation.
    """
    gone = set(cids)
    for c in gone:
        if d.is_circle or c not in d.slots:
            raise UnknownCrossing(c)

    def through(edge):
        c, t = edge.tgt
        dart = d.slots[c][(t + 2) % 4]
        return d.edges[dart[0]]

    survivors = []
    for e in sorted(d.edges):
        edge = d.edges[e]
        if edge.src[0] in gone:
            continue
        if edge.tgt[0] not in gone:
            survivors.append(edge)
            continue
        cur = edge
        while cur.tgt[0] in gone:
            cur = through(cur)
        survivors.append(Edge(edge.id, edge.src, cur.tgt))
    if not survivors:
        if residual_ccw is None:
            raise IllegalSite("deletion leaves no crossings; orientation unknown")
        return Diagram.circle(residual_ccw)
    # the outer region persists; its representative edge-side merges into
    # the chain that absorbed the old edge
    eid, kind = d.outer_dart
    cur = d.edges[eid]
    while cur.src[0] in gone:
        c, s = cur.src
        cur = d.edges[d.slots[c][(s + 2) % 4][0]]
    return Diagram(survivors, (cur.id, kind))


# -- type II surgery ----------------------------------------------------------


def _incidence_face(d, inc):
    eid, side = inc
    if eid not in d.edges:
        raise UnknownEdge(eid)
    return d.left_face(eid) if side == "L" else d.right_face(eid)


def r2_create(d, site):
    """Push a finger from one face incidence across another.

    New crossings x1, x2 appear in that order along the finger strand;
    along the other strand the order matches for matched sites and is
    reversed for unmatched ones.  New edge ids (finger mid, finger tail,
    wall mid, wall tail) are max+1..max+4; for a self-crossing site the
    single edge splits into five pieces, finger part first.
    """
    if d.is_circle:
        raise IllegalSite("type II creation needs an edge pair")
    f1 = _incidence_face(d, site.inc1)
    f2 = _incidence_face(d, site.inc2)
    if f1 != f2:
        raise IllegalSite(f"incidences {site.inc1} and {site.inc2} share no region")
    a_eid, a_side = site.inc1
    b_eid, b_side = site.inc2
    over = {"first": "a", "second": "b"}[site.over]
    x1, x2 = _fresh_crossings(d, 2)
    same = a_eid == b_eid
    if same and a_side == b_side:
        raise IllegalSite("self-crossing site needs the edge's two sides")

    a = d.edges[a_eid]
    b = d.edges[b_eid]
    if same:
        am_id, a2_id, bm_id, b2_id = _fresh_ids(d, 4)
        roles = {
            "a_in": (a_eid, a.src, None),
            "am": (am_id, None, None),
            # one piece serves as finger tail and wall head
            "a2": (a2_id, None, None),
            "b_in": (a2_id, None, None),
            "bm": (bm_id, None, None),
            "b2": (b2_id, None, b.tgt),
        }
    else:
        am_id, a2_id, bm_id, b2_id = _fresh_ids(d, 4)
        roles = {
            "a_in": (a_eid, a.src, None),
            "am": (am_id, None, None),
            "a2": (a2_id, None, a.tgt),
            "b_in": (b_eid, b.src, None),
            "bm": (bm_id, None, None),
            "b2": (b2_id, None, b.tgt),
        }

    # local frame: the wall strand runs along a vertical line, the finger
    # crosses eastward at x1 and westward back at x2.  The wall runs north
    # when the shared region (west of it) is on its left; codirected bigon
    # sides mean it meets x1 first.
    wall_north = b_side == "L"
    wall_order = (x1, x2) if site.matched else (x2, x1)

    rays = {}

    def wall_ends(x):
        arrive_ray = "S" if wall_north else "N"
        leave_ray = "N" if wall_north else "S"
        first, second = wall_order
        if x == first:
            return (("b_in", TGT, arrive_ray), ("bm", SRC, leave_ray))
        return (("bm", TGT, arrive_ray), ("b2", SRC, leave_ray))

    slots = {}
    for x, f_in, f_out in ((x1, ("a_in", TGT), ("am", SRC)), (x2, ("am", TGT), ("a2", SRC))):
        ray_ends = {
            "W" if x == x1 else "E": f_in,
            "E" if x == x1 else "W": f_out,
        }
        for role, kind, ray in wall_ends(x):
            ray_ends[ray] = (role, kind)
        if over == "a":
            under_ray = "S" if wall_north else "N"
        else:
            under_ray = "W" if x == x1 else "E"
        slots[x] = _slots_from_rays(ray_ends, under_ray)

    # realize the slot tables as edge endpoints
    ends = {}
    for x, table in slots.items():
        for slot, (role, kind) in enumerate(table):
            ends[(role, kind)] = (x, slot)

    def build(role, rid, src_fix, tgt_fix):
        src = src_fix if src_fix is not None else ends[(role, SRC)]
        tgt = tgt_fix if tgt_fix is not None else ends[(role, TGT)]
        return Edge(rid, src, tgt)

    new_edges = []
    seen_roles = set()
    for role, (rid, src_fix, tgt_fix) in roles.items():
        if rid in seen_roles:
            continue
        seen_roles.add(rid)
        if same and rid == a2_id:
            # combined finger-tail / wall-head piece
            new_edges.append(Edge(rid, ends[("a2", SRC)], ends[("b_in", TGT)]))
        else:
            new_edges.append(build(role, rid, src_fix, tgt_fix))

    keep = [e for e in d.edges.values() if e.id not in (a_eid, b_eid)]
    # split pieces keep their host's source end under the host id, so only
    # target-side darts need remapping (onto the piece holding the target)
    outer = d.outer_dart
    oe, okind = outer
    if okind == TGT:
        if oe == a_eid:
            outer = (b2_id if same else a2_id, TGT)
        elif oe == b_eid:
            outer = (b2_id, TGT)
    return Diagram(keep + new_edges, outer)


def bigon_at(d, corner):
    """The 2-sided face with the given minimal corner, or None."""
    for face in d.faces:
        if len(face) == 2 and min(face.corners) == tuple(corner):
            return face
    return None


def r2_remove_legal(d, face):
    """One strand must pass over both bigon crossings; bounded face only."""
    if face is None or len(face) != 2 or face.is_outer:
        return False
    (c1, _), (c2, _) = face.corners
    if c1 == c2:
        return False
    darts = face.darts
    eids = {e for e, _ in darts}
    over = []
    for eid in eids:
        e = d.edges[eid]
        over.append(e.src[1] in (1, 3) and e.tgt[1] in (1, 3))
    return over[0] != over[1] if len(over) == 2 else False


def r2_remove(d, site):
    face = bigon_at(d, site.corner)
    if not r2_remove_legal(d, face):
        raise IllegalSite(f"no removable bigon at {site.corner}")
    cids = {c for c, _ in face.corners}
    from .indices import winding_number

    hint = None
    if d.n == 2:
        hint = winding_number(d) == 1
    return delete_crossings(d, cids, residual_ccw=hint)


# -- type III surgery ----------------------------------------------------------


def triangle_at(d, corner):
    for face in d.faces:
        if len(face) == 3 and min(face.corners) == tuple(corner):
            return face
    return None


def _triangle_strands(d, face):
    """Structure of a 3-sided face: per side edge, its legs and over-count.

    Returns None when the face is not a legal type-III site: repeated
    crossings, cyclic over/under order, or the unbounded face (the
    vanishing triangle must bound a disk).
    """
    if face.is_outer:
        return None
    corners = face.corners
    if len({c for c, _ in corners}) != 3:
        return None
    sides = []
    for dart in face.darts:
        eid, kind = dart
        e = d.edges[eid]
        sides.append(e)
    if len({e.id for e in sides}) != 3:
        return None
    # over/under relation at each corner crossing
    wins = {e.id: 0 for e in sides}
    for e in sides:
        for cid, slot in (e.src, e.tgt):
            if slot in (1, 3):
                wins[e.id] += 1
    ranked = sorted(sides, key=lambda e: wins[e.id])
    if [wins[e.id] for e in ranked] != [0, 1, 2]:
        return None
    strands = []
    for s in sides:
        (p, ps), (q, qs) = s.src, s.tgt
        in_leg = d.slots[p][(ps + 2) % 4]
        out_leg = d.slots[q][(qs + 2) % 4]
        if in_leg[1] != TGT or out_leg[1] != SRC:
            return None
        strands.append(
            {
                "side": s,
                "in_leg": in_leg[0],
                "out_leg": out_leg[0],
                "first": p,
                "second": q,
                "in_slot_first": (ps + 2) % 4,
                "out_slot_first": ps,
                "in_slot_second": qs,
                "out_slot_second": (qs + 2) % 4,
            }
        )
    return {"sides": sides, "strands": strands, "bottom_top": ranked}


def r3_apply(d, site):
    """Flip the triangle: each strand meets its two crossings in reversed
    order; crossing ids, signs and slot roles are all preserved."""
    face = triangle_at(d, site.corner)
    if face is None:
        raise IllegalSite(f"no triangular face at {site.corner}")
    data = _triangle_strands(d, face)
    if data is None:
        raise IneligibleSite(f"triangle at {site.corner} is not a move site")

    new_tgt = {}
    new_src = {}
    for st in data["strands"]:
        s = st["side"]
        # the strand now passes its old second crossing first
        new_tgt[st["in_leg"]] = (st["second"], st["in_slot_second"])
        new_src[st["out_leg"]] = (st["first"], st["out_slot_first"])
        new_src[s.id] = (st["second"], st["out_slot_second"])
        new_tgt[s.id] = (st["first"], st["in_slot_first"])

    edges = []
    for e in d.edges.values():
        src = new_src.get(e.id, e.src)
        tgt = new_tgt.get(e.id, e.tgt)
        edges.append(Edge(e.id, src, tgt))

    outer = d.outer_dart
    side_ids = {s.id for s in data["sides"]}
    if outer[0] in side_ids:
        for dart in d.outer_face.darts:
            if dart[0] not in side_ids:
                outer = dart
                break
        else:
            raise IllegalSite("outer face inseparable from the triangle")
    return Diagram(edges, outer)


def classify_r3(d, site):
    """(ascending/descending, positive/negative, forward/backward).

    Ascent is read from the cyclic order of the bottom, middle and top
    segments along the strand; the positive/negative bit compares the
    vanishing-triangle parity before and after; the direction derives from
    those two and is cross-checked against the self-crossing index change.
    """
    from .invariants import sci

    face = triangle_at(d, site.corner)
    if face is None:
        raise IllegalSite(f"no triangular face at {site.corner}")
    data = _triangle_strands(d, face)
    if data is None:
        raise IneligibleSite(f"triangle at {site.corner} not eligible")
    bottom, middle, top = data["bottom_top"]
    comp = d.components[0]
    order = {eid: comp.index(eid) for eid in (bottom.id, middle.id, top.id)}
    seq = sorted((bottom.id, middle.id, top.id), key=lambda e: order[e])
    k = seq.index(bottom.id)
    cyc = seq[k:] + seq[:k]
    ascending = cyc == [bottom.id, middle.id, top.id]

    q_before = _triangle_parity(d, face)
    after = r3_apply(d, site)
    new_face = _find_new_triangle(after, {c for c, _ in face.corners})
    q_after = _triangle_parity(after, new_face)
    assert {q_before, q_after} == {1, -1}, "triangle parity must flip"
    positive = (q_before, q_after) == (-1, 1)

    forward = ascending == positive
    delta = sci(after) - sci(d)
    expected = 1 if forward else -1
    assert delta == expected, f"sci changed by {delta}, direction says {expected}"
    return ("ascending" if ascending else "descending",
            "positive" if positive else "negative",
            FORWARD if forward else BACKWARD)


def _find_new_triangle(d, crossings):
    for face in d.faces:
        if len(face) == 3 and {c for c, _ in face.corners} == crossings:
            data = _triangle_strands(d, face)
            if data is not None:
                return face
    raise AssertionError("flipped triangle not found")


def _triangle_parity(d, face):
    """(-1)^n with n the number of sides whose direction agrees with the
    order-of-appearance orientation of the triangle; checked for every
    starting edge of the strand."""
    sides = [d.edges[eid] for eid, _ in face.darts]
    walk_forward = {eid: kind == SRC for eid, kind in face.darts}
    comp = d.components[0]
    values = set()
    for start in range(len(comp)):
        order = comp[start:] + comp[:start]
        pos = {e: i for i, e in enumerate(order)}
        appearance = sorted(sides, key=lambda e: pos[e.id])
        # orientation of the triangle induced by appearance order: compare
        # with the face walk's cyclic order
        walk_ids = [eid for eid, _ in face.darts]
        a, b, c = (e.id for e in appearance)
        i = walk_ids.index(a)
        walk_cycle = walk_ids[i:] + walk_ids[:i]
        agrees_walk = walk_cycle == [a, b, c]
        n = 0
        for e in sides:
            fwd_in_walk = walk_forward[e.id]
            fwd_in_appearance = fwd_in_walk if agrees_walk else not fwd_in_walk
            if fwd_in_appearance:
                n += 1
        values.add((-1) ** n)
    assert len(values) == 1, "triangle parity depends on the basepoint"
    return values.pop()


# -- move application and site discovery ------------------------------------


def r1_create(d, site):
    return insert_kink(d, site.edge, site.side, site.loop_over)


def r1_remove(d, site):
    info = kink_info(d, site.crossing, site.loop)
    if info is None:
        raise IllegalSite(f"crossing {site.crossing} carries no removable kink")
    _, side, _ = info
    hint = None
    if d.n == 1:
        from .indices import winding_number

        hint = (winding_number(d) - (1 if side == "L" else -1)) == 1
    return delete_crossings(d, [site.crossing], residual_ccw=hint)


def r1f_create(d, site):
    mid = insert_kink(d, site.edge, site.side, True)
    cont = 1 if d.is_circle else max(d.edges) + 2
    return insert_kink(mid, cont, site.side, False)


def r1f_pair(d, c1, c2):
    """Validate an adjacent opposite-kink pair; returns (loop1, loop2, side)."""
    i1 = kink_info(d, c1)
    i2 = kink_info(d, c2)
    if i1 is None or i2 is None:
        return None
    l1, s1, sg1 = i1
    l2, s2, sg2 = i2
    if s1 != s2 or sg1 + sg2 != 0:
        return None
    # the strand leaving c1 must run straight into c2
    q = d.slots[c1]
    for slot in range(4):
        eid, kind = q[slot]
        e = d.edges[eid]
        if kind == SRC and e.id != l1 and e.tgt[0] == c2 and e.id != l2:
            return l1, l2, s1
    return None


def r1f_remove(d, site):
    pair = r1f_pair(d, site.c1, site.c2)
    if pair is None:
        raise IllegalSite(f"{site.c1},{site.c2} is not an opposite kink pair")
    _, _, side = pair
    hint = None
    if d.n == 2:
        from .indices import winding_number

        w = winding_number(d) - (2 if side == "L" else -2)
        hint = w == 1
    return delete_crossings(d, [site.c1, site.c2], residual_ccw=hint)


def apply(d, site, direction=None):
    """Apply a move at a site; ``direction`` is validated when given."""
    if direction is not None and site.direction is not None:
        if direction != site.direction:
            raise IllegalSite(
                f"site {site} runs {site.direction}, not {direction}"
            )
    if isinstance(site, R1Create):
        return r1_create(d, site)
    if isinstance(site, R1Remove):
        return r1_remove(d, site)
    if isinstance(site, R1FCreate):
        return r1f_create(d, site)
    if isinstance(site, R1FRemove):
        return r1f_remove(d, site)
    if isinstance(site, R2Create):
        return r2_create(d, site)
    if isinstance(site, R2Remove):
        return r2_remove(d, site)
    if isinstance(site, R3Site):
        return r3_apply(d, site)
    raise IllegalSite(f"unknown site {site!r}")


def classify_r2(d, site):
    """'matched' when the two bigon strands are codirected.

    For creation sites the flag is part of the site; for removal sites the
    bigon's face walk traverses codirected sides once forward and once
    backward.
    """
    if isinstance(site, R2Create):
        return "matched" if site.matched else "unmatched"
    face = bigon_at(d, site.corner)
    if not r2_remove_legal(d, face):
        raise IllegalSite(f"no removable bigon at {site.corner}")
    kinds = [kind for _, kind in face.darts]
    codirected = kinds[0] != kinds[1]
    return "matched" if codirected else "unmatched"


def find_sites(d, kind):
    """All sites of one move kind, deterministically ordered."""
    if kind == "R1+":
        if d.is_circle:
            return [
                R1Create(0, side, over)
                for side in ("L", "R")
                for over in (True, False)
            ]
        return [
            R1Create(e, side, over)
            for e in sorted(d.edges)
            for side in ("L", "R")
            for over in (True, False)
        ]
    if kind == "R1-":
        out = []
        if d.is_circle:
            return out
        for c in d.crossing_ids:
            for loop, _ in one_gon_loops(d, c):
                out.append(R1Remove(c, loop))
        return out
    if kind == "R1F+":
        if d.is_circle:
            return [R1FCreate(0, s) for s in ("L", "R")]
        return [R1FCreate(e, s) for e in sorted(d.edges) for s in ("L", "R")]
    if kind == "R1F-":
        out = []
        if d.is_circle:
            return out
        for c1 in d.crossing_ids:
            for c2 in d.crossing_ids:
                if c1 != c2 and r1f_pair(d, c1, c2) is not None:
                    out.append(R1FRemove(c1, c2))
        return out
    if kind == "R2+":
        return _r2_create_sites(d)
    if kind == "R2-":
        out = []
        if d.is_circle:
            return out
        for face in d.faces:
            if len(face) == 2 and r2_remove_legal(d, face):
                out.append(R2Remove(min(face.corners)))
        return out
    if kind == "R3":
        out = []
        if d.is_circle:
            return out
        for face in d.faces:
            if len(face) == 3 and _triangle_strands(d, face) is not None:
                out.append(R3Site(min(face.corners)))
        return out
    raise IllegalSite(f"unknown move kind {kind!r}")


def _r2_create_sites(d):
    if d.is_circle:
        return []
    incidences = {}
    for e in sorted(d.edges):
        incidences.setdefault(d.left_face(e), []).append((e, "L"))
        incidences.setdefault(d.right_face(e), []).append((e, "R"))
    out = []
    for fid in sorted(incidences):
        incs = sorted(incidences[fid])
        for i in range(len(incs)):
            for j in range(i + 1, len(incs)):
                for over in ("first", "second"):
                    out.append(R2Create(incs[i], incs[j], over))
    return out
