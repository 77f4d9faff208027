"""Geometric test oracles.

Builds Diagram values from explicit closed polylines and recomputes the
quantities under test (region winding numbers, turning number, crossing
handedness) straight from coordinates.  Test-only scaffolding: the library
itself never sees geometry.
"""

import math
from fractions import Fraction

from knotdex.planarmap import SRC, TGT, Diagram, Edge


def seg_intersect(p1, p2, p3, p4):
    """Proper intersection parameters (t, u) of segments p1p2 and p3p4."""
    x1, y1 = p1
    x2, y2 = p2
    x3, y3 = p3
    x4, y4 = p4
    den = (x2 - x1) * (y4 - y3) - (y2 - y1) * (x4 - x3)
    if abs(den) < 1e-12:
        return None
    t = ((x3 - x1) * (y4 - y3) - (y3 - y1) * (x4 - x3)) / den
    u = ((x3 - x1) * (y2 - y1) - (y3 - y1) * (x2 - x1)) / den
    if 1e-9 < t < 1 - 1e-9 and 1e-9 < u < 1 - 1e-9:
        return t, u
    return None


def winding_number_at(point, pts):
    """Winding number of the closed polyline ``pts`` around ``point``."""
    total = 0.0
    px, py = point
    for i in range(len(pts)):
        x1, y1 = pts[i]
        x2, y2 = pts[(i + 1) % len(pts)]
        a1 = math.atan2(y1 - py, x1 - px)
        a2 = math.atan2(y2 - py, x2 - px)
        da = a2 - a1
        while da > math.pi:
            da -= 2 * math.pi
        while da < -math.pi:
            da += 2 * math.pi
        total += da
    return round(total / (2 * math.pi))


def turning_number(pts):
    """Rotation number of the tangent of the closed polyline."""
    total = 0.0
    m = len(pts)
    for i in range(m):
        x1, y1 = pts[i]
        x2, y2 = pts[(i + 1) % m]
        x3, y3 = pts[(i + 2) % m]
        a1 = math.atan2(y2 - y1, x2 - x1)
        a2 = math.atan2(y3 - y2, x3 - x2)
        da = a2 - a1
        while da > math.pi:
            da -= 2 * math.pi
        while da < -math.pi:
            da += 2 * math.pi
        total += da
    return round(total / (2 * math.pi))


class DrawnCurve:
    """A generic closed polyline compiled to a Diagram.

    ``over_first`` decides, per crossing, whether the strand passage that
    comes earlier along the curve is the over-strand.  It may be a bool or
    a callable on (first_param, second_param).
    """

    def __init__(self, pts, over_first=True):
        self.pts = [(float(x), float(y)) for x, y in pts]
        m = len(self.pts)
        hits = []  # (param, crossing index)
        crossings = []  # (param_first, param_second, point)
        for i in range(m):
            for j in range(i + 1, m):
                r = seg_intersect(
                    self.pts[i],
                    self.pts[(i + 1) % m],
                    self.pts[j],
                    self.pts[(j + 1) % m],
                )
                if r is None:
                    continue
                t, u = r
                crossings.append((i + t, j + u))
        crossings.sort()
        self.crossings = crossings
        for k, (a, b) in enumerate(crossings):
            hits.append((a, k))
            hits.append((b, k))
        hits.sort()
        self.hits = hits
        if over_first in ("alt", "alt2"):
            rank = {param: i for i, (param, _) in enumerate(self.hits)}
            parity = 0 if over_first == "alt" else 1
            self.over_first = lambda a, b: rank[a] % 2 == parity
        elif callable(over_first):
            self.over_first = over_first
        else:
            self.over_first = lambda a, b: over_first

    def point_at(self, param):
        m = len(self.pts)
        i = int(param) % m
        t = param - int(param)
        x1, y1 = self.pts[i]
        x2, y2 = self.pts[(i + 1) % m]
        return (x1 + t * (x2 - x1), y1 + t * (y2 - y1))

    def tangent_at(self, param):
        m = len(self.pts)
        i = int(param) % m
        x1, y1 = self.pts[i]
        x2, y2 = self.pts[(i + 1) % m]
        n = math.hypot(x2 - x1, y2 - y1)
        return ((x2 - x1) / n, (y2 - y1) / n)

    def diagram(self):
        """Compile to a combinatorial map with the library's conventions."""
        hits = self.hits
        nseg = len(hits)
        if nseg == 0:
            return Diagram.circle(turning_number(self.pts) > 0)
        # edge k runs from hit k-1 to hit k (1-based ids, cyclic)
        edge_src = {}
        edge_tgt = {}
        for k in range(nseg):
            eid = k + 1
            edge_src[eid] = hits[k - 1]
            edge_tgt[eid] = hits[k]
        # per crossing: the two incoming edges with their params
        incoming = {}
        for eid in edge_src:
            param, cid = edge_tgt[eid]
            incoming.setdefault(cid, []).append((param, eid))
        edges = []
        for cid, (first, second) in enumerate(self.crossings):
            (pa, ea), (pb, eb) = sorted(incoming[cid])
            over_first = self.over_first(first, second)
            # under-strand enters at slot 0; its angular position fixes
            # the other slots counterclockwise.
            under_in = ea if not over_first else eb
            over_in = eb if not over_first else ea
            u_dir = self.tangent_at(
                pa - 1e-7 if under_in == ea else pb - 1e-7
            )
            o_dir = self.tangent_at(
                pb - 1e-7 if under_in == ea else pa - 1e-7
            )
            cross = u_dir[0] * o_dir[1] - u_dir[1] * o_dir[0]
            # library slot 1 holds the over-in end of a right-hand-positive
            # crossing, i.e. when the over direction is the under direction
            # rotated -90 degrees
            over_slot = 1 if cross < 0 else 3
            for eid, slot in (
                (under_in, 0),
                (over_in, over_slot),
            ):
                edge_tgt[eid] = (cid, slot)
            under_out = self._next_edge_id(under_in, nseg)
            over_out = self._next_edge_id(over_in, nseg)
            edge_src[under_out] = (cid, 2)
            edge_src[over_out] = (cid, (over_slot + 2) % 4)
        built = [Edge(eid, edge_src[eid], edge_tgt[eid]) for eid in edge_src]
        outer_dart = self._outer_dart(built)
        return Diagram(built, outer_dart)

    @staticmethod
    def _next_edge_id(eid, nseg):
        return eid % nseg + 1

    def _outer_dart(self, built):
        # nothing lies west of the westmost vertex, so the region on that
        # side of the edge through it is the outer one
        i_min = min(range(len(self.pts)), key=lambda i: self.pts[i][0])
        p = i_min + 1e-6
        eid = self._edge_containing(p)
        bx, by = self.point_at(p)
        tx, ty = self.tangent_at(p)
        qx, qy = self.pts[i_min][0] - 0.05, self.pts[i_min][1]
        side = tx * (qy - by) - ty * (qx - bx)
        return (eid, SRC if side > 0 else TGT)

    def _edge_containing(self, param):
        m = len(self.pts)
        for k in range(len(self.hits)):
            lo = self.hits[k - 1][0]
            hi = self.hits[k][0]
            if lo < hi:
                if lo < param <= hi:
                    return k + 1
            elif param > lo or param <= hi:
                return k + 1
        raise AssertionError("parameter outside all edges")

    def _mid_param(self, p1, p2):
        m = len(self.pts)
        if p2 < p1:
            p2 += m
        return ((p1 + p2) / 2) % m

    def _segment_mid(self, p1, p2):
        return self.point_at(self._mid_param(p1, p2))

    # -- oracles -----------------------------------------------------------

    def edge_side_windings(self, diagram):
        """For each edge: ray-cast winding numbers of its two sides.

        Returns {edge id: (left winding, right winding)} computed purely
        from coordinates.
        """
        out = {}
        m = len(self.pts)
        for k in range(len(self.hits)):
            eid = k + 1
            p1 = self.hits[k - 1][0]
            p2 = self.hits[k][0]
            mid = self._mid_param(p1, p2)
            x, y = self.point_at(mid)
            tx, ty = self.tangent_at(mid)
            nx, ny = -ty, tx  # left normal
            eps = self._safe_eps((x, y))
            left = winding_number_at((x + eps * nx, y + eps * ny), self.pts)
            right = winding_number_at((x - eps * nx, y - eps * ny), self.pts)
            out[eid] = (left, right)
        return out

    def _safe_eps(self, point):
        # small but clear of every other segment
        best = min(
            max(abs(point[0] - x) + abs(point[1] - y), 1e-9)
            for x, y in self.pts
        )
        return min(0.01, best / 4 + 1e-6)


def circle_pts(cx=0.0, cy=0.0, r=1.0, steps=48, ccw=True):
    out = []
    for i in range(steps):
        a = 2 * math.pi * i / steps * (1 if ccw else -1)
        out.append((cx + r * math.cos(a), cy + r * math.sin(a)))
    return out
