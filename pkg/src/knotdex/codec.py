"""KDX text format and diagram generators.

A document is line oriented; ``#`` starts a comment.  The first record is
the version tag ``kdx 1``.  A zero-crossing diagram is the single record
``circle`` (counterclockwise) or ``circle cw``.  Otherwise the document
lists one ``X(a,b,c,d)`` record per crossing (edge labels
counterclockwise from the incoming under-strand end), an optional
direction table ``dir <edge> +|-`` (``+``: the edge's first occurrence in
the document is its start), and an outer-face designation
``outer=(<edge>,L|R)``.  Edge labels run 1..2n, consecutive along the
orientation within each component.  When omitted, the outer face defaults
to the right of edge 1.
"""

from .errors import (
    BadParameter,
    InconsistentLabels,
    KdxSyntaxError,
    MissingOuterFace,
    NotRealizable,
)
from .planarmap import SRC, TGT, Diagram, Edge


class KdxDocument:
    """Parsed surface form of a KDX text."""

    def __init__(self):
        self.version = None
        self.circle = None  # None | "ccw" | "cw"
        self.records = []  # (lineno, (a, b, c, d))
        self.dirs = {}  # edge label -> '+'|'-'
        self.outer = None  # (edge label, 'L'|'R')


_REC = {
    "X": lambda s: s,
}


def _tokenize(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        yield lineno, line


def parse_document(text):
    doc = KdxDocument()
    lines = list(_tokenize(text))
    if not lines:
        raise KdxSyntaxError("empty document")
    lineno, head = lines[0]
    parts = head.split()
    if len(parts) != 2 or parts[0] != "kdx":
        raise KdxSyntaxError(f"expected version line 'kdx 1', got {head!r}", lineno)
    doc.version = parts[1]
    if doc.version != "1":
        raise KdxSyntaxError(f"unsupported version {doc.version!r}", lineno)
    for lineno, line in lines[1:]:
        for token in _split_records(line, lineno):
            _parse_record(doc, token, lineno)
    return doc


def _split_records(line, lineno):
    # X-records may share a line; other records stand alone
    if line.startswith("X("):
        out = []
        for piece in line.split():
            out.append(piece)
        return out
    return [line]


def _parse_record(doc, token, lineno):
    if token.startswith("circle"):
        rest = token[len("circle") :].strip()
        if rest not in ("", "ccw", "cw"):
            raise KdxSyntaxError(f"bad circle record {token!r}", lineno)
        doc.circle = rest or "ccw"
        return
    if token.startswith("X(") and token.endswith(")"):
        body = token[2:-1]
        try:
            labels = tuple(int(x) for x in body.split(","))
        except ValueError as err:
            raise KdxSyntaxError(f"bad crossing record {token!r}", lineno) from err
        if len(labels) != 4:
            raise KdxSyntaxError(f"crossing record needs 4 labels: {token!r}", lineno)
        doc.records.append((lineno, labels))
        return
    if token.startswith("dir "):
        parts = token.split()
        if len(parts) != 3 or parts[2] not in ("+", "-"):
            raise KdxSyntaxError(f"bad dir record {token!r}", lineno)
        doc.dirs[int(parts[1])] = parts[2]
        return
    if token.replace(" ", "").startswith("outer=("):
        body = token.replace(" ", "")[len("outer=(") : -1]
        if not token.replace(" ", "").endswith(")"):
            raise KdxSyntaxError(f"bad outer record {token!r}", lineno)
        edge_s, side = body.split(",")
        if side not in ("L", "R"):
            raise KdxSyntaxError(f"outer side must be L or R: {token!r}", lineno)
        doc.outer = (int(edge_s), side)
        return
    raise KdxSyntaxError(f"unrecognized record {token!r}", lineno)


def parse(text):
    """KDX text to a validated Diagram."""
    doc = parse_document(text)
    if doc.circle is not None:
        if doc.records:
            raise InconsistentLabels("circle record mixed with crossings")
        return Diagram.circle(doc.circle == "ccw")
    if not doc.records:
        raise KdxSyntaxError("no crossing records")
    n = len(doc.records)
    occurrences = {}
    for rec_idx, (lineno, labels) in enumerate(doc.records):
        for slot, label in enumerate(labels):
            occurrences.setdefault(label, []).append((rec_idx, slot, lineno))
    expected = set(range(1, 2 * n + 1))
    if set(occurrences) != expected or any(
        len(v) != 2 for v in occurrences.values()
    ):
        raise InconsistentLabels(
            f"edge labels must be 1..{2*n}, each exactly twice"
        )
    kinds = _resolve_directions(doc, occurrences)
    edges = []
    for label, occ in sorted(occurrences.items()):
        ends = {}
        for (rec_idx, slot, _), kind in zip(occ, kinds[label]):
            ends[kind] = (rec_idx + 1, slot)
        edges.append(Edge(label, ends[SRC], ends[TGT]))
    outer = doc.outer or (1, "R")
    if outer[0] not in {e.id for e in edges}:
        raise MissingOuterFace(f"outer edge {outer[0]} does not exist")
    outer_dart = (outer[0], SRC if outer[1] == "L" else TGT)
    try:
        d = Diagram(edges, outer_dart, check=False)
        report = d.validate()
    except Exception as err:
        raise NotRealizable(str(err)) from err
    if not report.ok:
        names = [n for n, _ in report.failures()]
        if set(names) & {"euler", "connected"}:
            raise NotRealizable(f"failed checks: {names}")
        raise InconsistentLabels(f"failed checks: {names}")
    _check_consecutive(d)
    return d


def _resolve_directions(doc, occurrences):
    """Decide, per label, which occurrence is the source end.

    Slot 0 is always a target and slot 2 a source; each label has one of
    each; at every crossing one of slots 1,3 is a source.  Constraint
    propagation settles everything except never-under link components,
    which need explicit ``dir`` records.
    """
    kinds = {}

    def settle(label, first_kind):
        kinds[label] = (first_kind, 1 - first_kind)

    changed = True
    for label, side in doc.dirs.items():
        if label not in occurrences:
            raise InconsistentLabels(f"dir record for unknown edge {label}")
        settle(label, SRC if side == "+" else TGT)
    while changed:
        changed = False
        for label, occ in occurrences.items():
            if label in kinds:
                continue
            known = []
            for pos, (rec_idx, slot, _) in enumerate(occ):
                if slot == 0:
                    known.append((pos, TGT))
                elif slot == 2:
                    known.append((pos, SRC))
            if known:
                pos, kind = known[0]
                settle(label, kind if pos == 0 else 1 - kind)
                changed = True
        # crossing over-slot pairing
        over_slots = {}
        for label, occ in occurrences.items():
            for pos, (rec_idx, slot, _) in enumerate(occ):
                if slot in (1, 3):
                    over_slots.setdefault(rec_idx, []).append((label, pos, slot))
        for rec_idx, entries in over_slots.items():
            if len(entries) != 2:
                raise InconsistentLabels(
                    f"crossing {rec_idx + 1} lacks an over-strand pair"
                )
            (l1, p1, _), (l2, p2, _) = entries
            k1 = _occ_kind(kinds, l1, p1)
            k2 = _occ_kind(kinds, l2, p2)
            if k1 is not None and k2 is not None:
                if k1 == k2:
                    raise InconsistentLabels(
                        f"crossing {rec_idx + 1}: over-strand in/out conflict"
                    )
            elif k1 is not None and l2 not in kinds:
                settle(l2, (1 - k1) if p2 == 0 else k1)
                changed = True
            elif k2 is not None and l1 not in kinds:
                settle(l1, (1 - k2) if p1 == 0 else k2)
                changed = True
    missing = [l for l in occurrences if l not in kinds]
    if missing:
        raise KdxSyntaxError(
            f"edge direction undetermined for {missing}; add dir records"
        )
    simple = {}
    for label, occ in occurrences.items():
        pair = kinds[label]
        for (rec_idx, slot, lineno), kind in zip(occ, pair):
            if slot == 0 and kind != TGT or slot == 2 and kind != SRC:
                raise InconsistentLabels(
                    f"edge {label} direction conflicts with slot {slot}"
                )
        simple[label] = pair
    return simple


def _occ_kind(kinds, label, pos):
    if label not in kinds:
        return None
    return kinds[label][pos]


def _check_consecutive(d):
    for comp in d.components:
        labels = sorted(comp)
        lo = labels[0]
        if labels != list(range(lo, lo + len(comp))):
            raise InconsistentLabels(
                f"component labels {sorted(comp)} are not consecutive"
            )
        start = comp.index(lo)
        ordered = list(comp[start:] + comp[:start])
        if ordered != list(range(lo, lo + len(comp))):
            raise InconsistentLabels(
                "labels do not advance along the orientation"
            )


def serialize(d):
    """Diagram to KDX text; labels are renumbered along each component."""
    if d.is_circle:
        body = "circle" if d.circle_ccw else "circle cw"
        return f"kdx 1\n{body}\n"
    label = {}
    next_label = 1
    for comp in d.components:
        start = comp.index(min(comp))
        for eid in comp[start:] + comp[:start]:
            label[eid] = next_label
            next_label += 1
    crossings = {}
    for e in d.edges.values():
        for kind, (cid, slot) in ((SRC, e.src), (TGT, e.tgt)):
            crossings.setdefault(cid, [None] * 4)[slot] = (label[e.id], kind)
    records = sorted(row[0][0] for row in crossings.values())
    lines = ["kdx 1"]
    rows = sorted(crossings.values(), key=lambda row: row[0][0])
    for row in rows:
        a, b, c, dd = (entry[0] for entry in row)
        lines.append(f"X({a},{b},{c},{dd})")
    # direction table: '+' when the first document occurrence is the source
    first_kind = {}
    for row in rows:
        for lbl, kind in row:
            first_kind.setdefault(lbl, kind)
    for lbl in sorted(first_kind):
        lines.append(f"dir {lbl} {'+' if first_kind[lbl] == SRC else '-'}")
    outer = d.outer_face.id
    outer_rec = None
    for e in sorted(d.edges, key=lambda x: label[x]):
        if d.right_face(e) == outer:
            outer_rec = (label[e], "R")
            break
        if outer_rec is None and d.left_face(e) == outer:
            outer_rec = (label[e], "L")
    lines.append(f"outer=({outer_rec[0]},{outer_rec[1]})")
    return "\n".join(lines) + "\n"


# -- generators -----------------------------------------------------------------


def gen_torus2(p):
    """Round diagram of the (2,p) torus knot: p positive crossings,
    alternating, winding twice counterclockwise."""
    if p < 3 or p % 2 == 0:
        raise BadParameter(f"p must be odd and >= 3, got {p}")
    edges = []
    half = (p + 1) // 2
    for m in range(p):
        edges.append(Edge(2 * m + 1, ((m - half) % p + 1, 3), (m + 1, 0)))
        edges.append(Edge(2 * m + 2, (m + 1, 2), ((m + half) % p + 1, 1)))
    return Diagram(edges, (1, TGT))


def gen_arnold_base(i):
    """Base curves: index 0 is the figure-eight, 1 the circle, and i+1 a
    circle with i inward curls, filled with an ascending pattern."""
    from .moves import insert_kink

    if i < 0:
        raise BadParameter(f"index must be >= 0, got {i}")
    if i == 0:
        return insert_kink(Diagram.circle(True), 0, "R", True)
    d = Diagram.circle(True)
    for _ in range(i - 1):
        host = 1 if not d.is_circle else 0
        d = insert_kink(d, host, "L", True)
    return d


def gen_random(n, seed):
    """Random n-crossing unknot diagram built by seeded Reidemeister moves."""
    import random

    from . import moves as mv

    if n < 0:
        raise BadParameter(f"crossing count must be >= 0, got {n}")
    rng = random.Random(seed)
    d = Diagram.circle(True)
    guard = 0
    while d.n != n:
        guard += 1
        if guard > 40 * (n + 4):
            raise BadParameter(f"random walk failed to reach {n} crossings")
        options = []
        if d.n < n:
            options += ["R1+"] * 3 + ["R2+"] * 3
        if d.n + 2 <= n:
            options += ["R2+"] * 2
        if d.n > 0:
            options += ["R3"] * 2
        if d.n > n:
            options += ["R1-", "R2-"] * 3
        elif d.n > 0:
            options += ["R1-", "R2-"]
        kind = rng.choice(options)
        if kind == "R1+" and d.n + 1 > n:
            continue
        if kind == "R2+" and d.n + 2 > n:
            continue
        sites = mv.find_sites(d, kind)
        if not sites:
            continue
        site = rng.choice(sites)
        try:
            d = mv.apply(d, site)
        except Exception:
            continue
    return d


def gen_L(n):
    """Unknot family with 2n crossings and self-crossing index n(n+1)/2:
    a tower of n nested positive curls inside the circle and n negative
    curls on its outer side."""
    from .moves import insert_kink

    if n < 1:
        raise BadParameter(f"n must be >= 1, got {n}")
    d = insert_kink(Diagram.circle(True), 0, "L", True)
    loop = 2
    for _ in range(n - 1):
        before = max(d.edges)
        d = insert_kink(d, loop, "L", True)
        loop = before + 1
    host = 1
    for _ in range(n):
        before = max(d.edges)
        d = insert_kink(d, host, "R", True)
        host = before + 2
    return d


def gen_D(n):
    """Unknot family with 8n-2 crossings realizing the closed forms for
    the self-crossing index and the Hass-Nowik value."""
    raise NotImplementedError
