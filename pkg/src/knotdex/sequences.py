"""Move records, the move-sequence text format, replay verification,
lower bounds, and desk-scale breadth-first unknotting."""

import re
from collections import deque
from dataclasses import dataclass, field

from . import moves as mv
from .errors import IllegalSite, KdxSyntaxError
from .indices import winding_number
from .invariants import GroupElement, cowrithe, g_functional, hn, jplus, sci, st
from .planarmap import Diagram, SRC, TGT


@dataclass
class MoveRecord:
    kind: str  # R1 | R1F | R2 | R3
    direction: str  # forward | backward
    site: object
    tags: dict = field(default_factory=dict)
    deltas: dict = None

    def line(self):
        return format_move(self)


# -- text format ----------------------------------------------------------


def format_move(rec):
    s = rec.site
    if isinstance(s, mv.R1Create):
        return f"R1+ {s.side} e{s.edge} {'over' if s.loop_over else 'under'}"
    if isinstance(s, mv.R1Remove):
        tail = f" e{s.loop}" if s.loop is not None else ""
        return f"R1- c{s.crossing}{tail}"
    if isinstance(s, mv.R1FCreate):
        return f"R1F+ {s.side} e{s.edge}"
    if isinstance(s, mv.R1FRemove):
        return f"R1F- c{s.c1} c{s.c2}"
    if isinstance(s, mv.R2Create):
        m = "m" if s.matched else "u"
        return (
            f"R2+ {m} e{s.inc1[0]}:{s.inc1[1]} e{s.inc2[0]}:{s.inc2[1]}"
            f" over={s.over}"
        )
    if isinstance(s, mv.R2Remove):
        return f"R2- b{s.corner[0]}.{s.corner[1]}"
    if isinstance(s, mv.R3Site):
        fb = {"forward": "f", "backward": "b", None: "f"}[rec.direction]
        return f"R3 {fb} t{s.corner[0]}.{s.corner[1]}"
    raise ValueError(f"unknown site {s!r}")


_INT = re.compile(r"^[ec](\d+)$")
_INC = re.compile(r"^e(\d+)(?::([LR]))?$")
_FACE = re.compile(r"^[bt](\d+)(?:\.(\d+))?$")


def parse_move(line, lineno=None):
    """One move per line; '#' starts a comment."""
    text = line.split("#", 1)[0].strip()
    if not text:
        return None
    parts = text.split()
    op = parts[0]
    try:
        if op == "R1+":
            side, edge, loop = parts[1], parts[2], parts[3]
            return MoveRecord(
                "R1",
                mv.FORWARD,
                mv.R1Create(_num(edge), side, loop == "over"),
            )
        if op == "R1-":
            loop = _num(parts[2]) if len(parts) > 2 else None
            return MoveRecord("R1", mv.BACKWARD, mv.R1Remove(_num(parts[1]), loop))
        if op == "R1F+":
            return MoveRecord("R1F", mv.FORWARD, mv.R1FCreate(_num(parts[2]), parts[1]))
        if op == "R1F-":
            return MoveRecord(
                "R1F", mv.BACKWARD, mv.R1FRemove(_num(parts[1]), _num(parts[2]))
            )
        if op == "R2+":
            claimed = {"m": "matched", "u": "unmatched"}[parts[1]]
            inc1 = _parse_inc(parts[2])
            inc2 = _parse_inc(parts[3])
            over = parts[4].split("=", 1)[1]
            return MoveRecord(
                "R2",
                mv.FORWARD,
                mv.R2Create(inc1, inc2, over),
                tags={"claimed": claimed},
            )
        if op == "R2-":
            return MoveRecord("R2", mv.BACKWARD, _parse_bigon(parts[1:]))
        if op == "R3":
            fb = {"f": mv.FORWARD, "b": mv.BACKWARD}[parts[1]]
            return MoveRecord("R3", fb, _parse_triangle(parts[2]))
    except (IndexError, KeyError, ValueError) as err:
        raise KdxSyntaxError(f"bad move {text!r}: {err}", lineno) from err
    raise KdxSyntaxError(f"unknown move {op!r}", lineno)


def _num(token):
    m = _INT.match(token)
    if not m:
        raise ValueError(f"expected id, got {token!r}")
    return int(m.group(1))


def _parse_inc(token):
    m = _INC.match(token)
    if not m:
        raise ValueError(f"expected edge incidence, got {token!r}")
    return (int(m.group(1)), m.group(2))


def _parse_bigon(tokens):
    m = _FACE.match(tokens[0])
    if m and tokens[0].startswith("b"):
        slot = int(m.group(2)) if m.group(2) is not None else None
        return mv.R2Remove((int(m.group(1)), slot))
    # crossing pair form
    return mv.R2Remove(("pair", _num(tokens[0]), _num(tokens[1])))


def _parse_triangle(token):
    m = _FACE.match(token)
    if not m or not token.startswith("t"):
        raise ValueError(f"expected triangle token, got {token!r}")
    slot = int(m.group(2)) if m.group(2) is not None else None
    return mv.R3Site((int(m.group(1)), slot))


def parse_sequence(text):
    out = []
    for i, line in enumerate(text.splitlines(), start=1):
        rec = parse_move(line, i)
        if rec is not None:
            out.append(rec)
    return out


def _resolve_site(d, rec):
    """Fill side/slot wildcards of a parsed record against the diagram."""
    s = rec.site
    if isinstance(s, mv.R2Create):
        inc1 = _resolve_inc(d, s.inc1, s.inc2)
        inc2 = _resolve_inc(d, s.inc2, s.inc1)
        return mv.R2Create(inc1, inc2, s.over)
    if isinstance(s, mv.R2Remove):
        if s.corner[0] == "pair":
            _, c1, c2 = s.corner
            hits = [
                f
                for f in d.faces
                if len(f) == 2 and {c for c, _ in f.corners} == {c1, c2}
                and mv.r2_remove_legal(d, f)
            ]
            if len(hits) != 1:
                raise IllegalSite(f"bigon {c1},{c2} not unique ({len(hits)} found)")
            return mv.R2Remove(min(hits[0].corners))
        if s.corner[1] is None:
            hits = [
                f
                for f in d.faces
                if len(f) == 2
                and min(f.corners)[0] == s.corner[0]
                and mv.r2_remove_legal(d, f)
            ]
            if len(hits) != 1:
                raise IllegalSite(f"bigon b{s.corner[0]} ambiguous")
            return mv.R2Remove(min(hits[0].corners))
        return s
    if isinstance(s, mv.R3Site) and s.corner[1] is None:
        hits = [
            f
            for f in d.faces
            if len(f) == 3
            and min(f.corners)[0] == s.corner[0]
            and mv._triangle_strands(d, f) is not None
        ]
        if len(hits) != 1:
            raise IllegalSite(f"triangle t{s.corner[0]} ambiguous")
        return mv.R3Site(min(hits[0].corners))
    return s


def _resolve_inc(d, inc, other):
    eid, side = inc
    if side is not None:
        return inc
    # pick the side sharing a face with the other incidence
    options = []
    for cand in ("L", "R"):
        f = mv._incidence_face(d, (eid, cand))
        for oside in ([other[1]] if other[1] else ("L", "R")):
            if eid == other[0] and cand == oside:
                continue
            if f == mv._incidence_face(d, (other[0], oside)):
                options.append(cand)
                break
    if len(set(options)) != 1:
        raise IllegalSite(f"incidence e{eid} ambiguous; give e{eid}:L or :R")
    return (eid, options[0])


# -- invariant deltas ---------------------------------------------------------


def snapshot(d):
    return {
        "n": d.n,
        "writhe": sum(d.sign(c) for c in d.crossing_ids) if not d.is_circle else 0,
        "winding": winding_number(d),
        "sci": sci(d),
        "hn": hn(d),
        "cowrithe": cowrithe(d),
        "st": st(d),
        "jplus": jplus(d),
    }


def deltas(before, after):
    out = {}
    for key in before:
        if key == "hn":
            out[key] = after[key] - before[key]
        else:
            out[key] = after[key] - before[key]
    return out


# -- verification ----------------------------------------------------------------


@dataclass
class VerificationStep:
    index: int
    record: MoveRecord
    deltas: dict
    tags: dict


@dataclass
class VerificationReport:
    ok: bool
    steps: list
    final: Diagram
    counts: dict
    cumulative: dict
    error: str = None
    failed_index: int = None

    @property
    def r3_count(self):
        return sum(v for (k, _c), v in self.counts.items() if k == "R3")


def verify_sequence(initial, records, framed=False):
    """Replay a move sequence, checking legality and accounting deltas."""
    d = initial
    steps = []
    counts = {}
    total = None
    before = snapshot(d)
    start = dict(before)
    for i, rec in enumerate(records):
        if framed and rec.kind == "R1":
            return VerificationReport(
                False, steps, d, counts, {}, f"plain R1 under framed flag", i
            )
        try:
            site = _resolve_site(d, rec)
            tags = _classify(d, site, rec)
            after_d = mv.apply(d, site)
        except IllegalSite as err:
            return VerificationReport(False, steps, d, counts, {}, str(err), i)
        claimed = rec.tags.get("claimed")
        if claimed is not None and tags.get("classification") != claimed:
            return VerificationReport(
                False,
                steps,
                d,
                counts,
                {},
                f"move claims {claimed}, classified {tags['classification']}",
                i,
            )
        after = snapshot(after_d)
        dl = deltas(before, after)
        if rec.direction is not None and tags.get("direction") not in (
            None,
            rec.direction,
        ):
            return VerificationReport(
                False,
                steps,
                d,
                counts,
                {},
                f"move claims {rec.direction}, classified {tags['direction']}",
                i,
            )
        steps.append(VerificationStep(i, rec, dl, tags))
        key = (rec.kind, tags.get("classification", rec.direction))
        counts[key] = counts.get(key, 0) + 1
        total = dl if total is None else _accumulate(total, dl)
        d, before = after_d, after
    cumulative = deltas(start, before)
    if total is not None and any(cumulative[k] != total[k] for k in cumulative):
        return VerificationReport(
            False, steps, d, counts, cumulative, "delta bookkeeping mismatch", None
        )
    return VerificationReport(True, steps, d, counts, cumulative or {})


def _accumulate(total, dl):
    return {k: total[k] + dl[k] for k in total}


def _classify(d, site, rec):
    tags = {}
    if isinstance(site, (mv.R1Create, mv.R1Remove)):
        if isinstance(site, mv.R1Create):
            tags["side"] = site.side
            tags["classification"] = mv.FORWARD
        else:
            info = mv.kink_info(d, site.crossing, site.loop)
            if info is not None:
                tags["side"] = info[1]
            tags["classification"] = mv.BACKWARD
        tags["direction"] = site.direction
    elif isinstance(site, (mv.R1FCreate, mv.R1FRemove)):
        tags["direction"] = site.direction
        tags["classification"] = site.direction
    elif isinstance(site, (mv.R2Create, mv.R2Remove)):
        tags["classification"] = mv.classify_r2(d, site)
        tags["direction"] = site.direction
    elif isinstance(site, mv.R3Site):
        asc, pos, fwd = mv.classify_r3(d, site)
        tags.update(
            {"ascending": asc, "parity": pos, "direction": fwd, "classification": pos}
        )
    return tags


# -- bounds and search -------------------------------------------------------------


def lower_bounds(d):
    """Move-count floor: |sci| bounds type-III moves, |g(hn)| all framed moves."""
    return {
        "sci_bound": abs(sci(d)),
        "g_bound": abs(g_functional(hn(d))),
    }


@dataclass
class SearchResult:
    reachable: bool
    min_total_moves: int
    min_r3_moves: int
    witness: list
    completed: bool
    states: int


_FRAMED_KINDS = ("R1F+", "R1F-", "R2+", "R2-", "R3")
_REGULAR_KINDS = ("R1+", "R1-") + _FRAMED_KINDS


def _neighbors(d, max_crossings, framed):
    kinds = _FRAMED_KINDS if framed else _REGULAR_KINDS
    grow = {"R1+": 1, "R1F+": 2, "R2+": 2}
    for kind in kinds:
        if kind in grow and d.n + grow[kind] > max_crossings:
            continue
        for site in mv.find_sites(d, kind):
            try:
                nd = mv.apply(d, site)
            except IllegalSite:
                continue
            yield kind, site, nd


def bfs_unknot(d, max_crossings=6, max_states=10**6, framed=True):
    """Shortest unknotting by breadth-first search over canonical forms.

    Runs two searches: one minimizing total moves (with witness), one
    minimizing type-III moves.  Results are exact when the search
    completes within the caps, lower-bound status otherwise.
    """
    if d.n > max_crossings:
        raise IllegalSite(f"{d.n} crossings exceeds cap {max_crossings}")
    targets = {
        Diagram.circle(True).canonical_form,
        Diagram.circle(False).canonical_form,
    }
    start = d.canonical_form
    if start in targets:
        return SearchResult(True, 0, 0, [], True, 1)

    # pass 1: fewest moves, with witness
    dist = {start: (0, None, None)}
    queue = deque([(d, start)])
    found = None
    states = 1
    completed = True
    while queue:
        cur, key = queue.popleft()
        steps = dist[key][0]
        for kind, site, nd in _neighbors(cur, max_crossings, framed):
            nk = nd.canonical_form
            if nk in dist:
                continue
            if states >= max_states:
                completed = False
                queue.clear()
                break
            states += 1
            dist[nk] = (steps + 1, key, (kind, site))
            if nk in targets:
                found = nk
                queue.clear()
                break
            queue.append((nd, nk))
        if found is not None:
            break

    witness = []
    if found is not None:
        key = found
        while dist[key][1] is not None:
            _, parent, move = dist[key]
            witness.append(move)
            key = parent
        witness.reverse()

    # pass 2: fewest type-III moves (0/1 cost search)
    r3_min = None
    dist3 = {start: 0}
    dq = deque([(d, start)])
    states3 = 1
    while dq:
        cur, key = dq.popleft()
        cost = dist3[key]
        if key in targets:
            r3_min = cost
            break
        for kind, site, nd in _neighbors(cur, max_crossings, framed):
            nk = nd.canonical_form
            w = 1 if kind == "R3" else 0
            if nk in dist3 and dist3[nk] <= cost + w:
                continue
            if nk not in dist3:
                if states3 >= max_states:
                    completed = False
                    continue
                states3 += 1
            dist3[nk] = cost + w
            if w:
                dq.append((nd, nk))
            else:
                dq.appendleft((nd, nk))

    return SearchResult(
        reachable=found is not None,
        min_total_moves=dist[found][0] if found else None,
        min_r3_moves=r3_min,
        witness=[(k, s) for k, s in witness],
        completed=completed,
        states=max(states, states3),
    )
