"""Numerical diagram invariants.

All values are exact: integers, Fractions, or sparse group elements.  The
self-crossing index is computed three independent ways (crossing, edge and
region sums) and the strangeness formulas likewise; the agreement of these
routes is part of the test contract, not an implementation shortcut.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import MultiComponent, SetTooLarge
from .indices import (
    modified_weights,
    region_indices,
    weights,
)
from .planarmap import switch_crossing
from .smoothing import smooth_all, smooth_at


class GroupElement:
    """Element of the free abelian group on X_k, Y_k (k integer).

    Stored sparsely; zero coefficients are never kept.  Rendered with X
    terms by ascending subscript, then Y terms.
    """

    __slots__ = ("xs", "ys")

    def __init__(self, xs=None, ys=None):
        self.xs = {k: v for k, v in (xs or {}).items() if v}
        self.ys = {k: v for k, v in (ys or {}).items() if v}

    @staticmethod
    def zero():
        return GroupElement()

    @staticmethod
    def basis(kind, k, coeff=1):
        if kind == "X":
            return GroupElement(xs={k: coeff})
        return GroupElement(ys={k: coeff})

    def __add__(self, other):
        xs = dict(self.xs)
        ys = dict(self.ys)
        for k, v in other.xs.items():
            xs[k] = xs.get(k, 0) + v
        for k, v in other.ys.items():
            ys[k] = ys.get(k, 0) + v
        return GroupElement(xs, ys)

    def __neg__(self):
        return GroupElement(
            {k: -v for k, v in self.xs.items()},
            {k: -v for k, v in self.ys.items()},
        )

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.xs == other.xs and self.ys == other.ys

    def __hash__(self):
        return hash(
            (tuple(sorted(self.xs.items())), tuple(sorted(self.ys.items())))
        )

    def __bool__(self):
        return bool(self.xs or self.ys)

    def coeff(self, kind, k):
        return (self.xs if kind == "X" else self.ys).get(k, 0)

    def terms(self):
        for k in sorted(self.xs):
            yield ("X", k, self.xs[k])
        for k in sorted(self.ys):
            yield ("Y", k, self.ys[k])

    def __str__(self):
        parts = []
        for kind, k, v in self.terms():
            mag = f"{kind}_{k}" if abs(v) == 1 else f"{abs(v)}{kind}_{k}"
            if not parts:
                parts.append(mag if v > 0 else f"-{mag}")
            else:
                parts.append(f"+ {mag}" if v > 0 else f"- {mag}")
        return " ".join(parts) if parts else "0"

    __repr__ = __str__


def _require_knot(d):
    if not d.is_circle and d.n_components != 1:
        raise MultiComponent("invariant needs a one-component diagram")


# -- self-crossing index ----------------------------------------------------


def sci(d):
    """Sum of sign(c) * ind(c) over all crossings; always an integer."""
    _require_knot(d)
    if d.is_circle:
        return 0
    im = region_indices(d)
    total = sum(d.sign(c) * im.crossing(c) for c in d.crossing_ids)
    assert total.denominator == 1
    return int(total)


def sci_via_edges(d):
    _require_knot(d)
    if d.is_circle:
        return 0
    im = region_indices(d)
    mw = modified_weights(d)
    total = sum(
        Fraction(mw.edge(e)) * im.edge(e) ** 2 for e in d.edges
    ) / 2
    assert total.denominator == 1
    return int(total)


def sci_via_regions(d):
    _require_knot(d)
    if d.is_circle:
        return 0
    im = region_indices(d)
    mw = modified_weights(d)
    total = sum(
        mw.region(r.id) * Fraction(im.region(r.id)) ** 3 for r in d.faces
    ) / 3
    assert total.denominator == 1
    return int(total)


# -- strangeness --------------------------------------------------------------


def st(d, basepoint=None, check_all=False):
    """Strangeness of the underlying curve via the three weight formulas.

    The formulas must agree; with ``check_all`` they are re-evaluated from
    every basepoint (slower, used by the test suite).
    """
    _require_knot(d)
    if d.is_circle:
        return 0
    if check_all:
        basepoints = sorted(d.edges)
    elif basepoint is not None:
        basepoints = [basepoint]
    else:
        basepoints = [min(d.edges)]
    values = {_st_from(d, bp) for bp in basepoints}
    assert len(values) == 1, f"strangeness basepoint-dependent: {values}"
    value = values.pop()
    assert value.denominator == 1
    return int(value)


def _st_from(d, bp):
    im = region_indices(d)
    wt = weights(d, bp)
    delta = im.edge(bp)
    shift = delta * delta - Fraction(1, 4)
    v1 = sum(wt.crossing(c) * im.crossing(c) for c in d.crossing_ids) + shift
    v2 = (
        sum(Fraction(wt.edge(e)) * im.edge(e) ** 2 for e in d.edges) / 2
        + shift
    )
    v3 = (
        sum(wt.region(r.id) * Fraction(im.region(r.id)) ** 3 for r in d.faces)
        / 3
        + shift
    )
    assert v1 == v2 == v3, f"strangeness formulas disagree: {v1} {v2} {v3}"
    return v1


# -- J+ and J- -----------------------------------------------------------------


def jplus(d):
    _require_knot(d)
    forest = smooth_all(d)
    s = sum(chi * idx * idx for idx, chi in forest.regions)
    return 1 + d.n - s


def jminus(d):
    _require_knot(d)
    forest = smooth_all(d)
    s = sum(chi * idx * idx for idx, chi in forest.regions)
    return 1 - s


# -- Hass-Nowik invariant and cowrithe -----------------------------------------


def hn(d):
    """One X/Y term per crossing, subscripted by the split linking number."""
    _require_knot(d)
    total = GroupElement.zero()
    if d.is_circle:
        return total
    for c in d.crossing_ids:
        lk = smooth_at(d, c).linking_number
        kind = "X" if d.sign(c) == 1 else "Y"
        total = total + GroupElement.basis(kind, lk)
    return total


def cowrithe(d):
    """Image of the Hass-Nowik value under X_n -> -n, Y_n -> n."""
    value = hn(d)
    return sum(-k * v for k, v in value.xs.items()) + sum(
        k * v for k, v in value.ys.items()
    )


def g_functional(x):
    """Linear extension of X_k -> 1 + |k|, Y_k -> -1 - |k|."""
    return sum((1 + abs(k)) * v for k, v in x.xs.items()) + sum(
        (-1 - abs(k)) * v for k, v in x.ys.items()
    )


# -- finite differences ---------------------------------------------------------


def vassiliev_derivative(invariant, d, crossings, cap=12):
    """Alternating sum of the invariant over all crossing-switch subsets."""
    crossings = tuple(crossings)
    if len(crossings) > cap:
        raise SetTooLarge(f"{len(crossings)} crossings exceeds cap {cap}")
    if len(set(crossings)) != len(crossings):
        raise ValueError("duplicate crossings in switch set")
    total = None
    for r in range(len(crossings) + 1):
        for subset in combinations(crossings, r):
            dx = d
            for c in subset:
                dx = switch_crossing(dx, c)
            value = invariant(dx)
            if r % 2 == 1:
                value = -value
            total = value if total is None else total + value
    return total


# -- ascending diagrams -----------------------------------------------------------


def ascending_basepoints(d):
    """Edges whose start witnesses that the diagram is ascending."""
    _require_knot(d)
    if d.is_circle:
        return sorted(d.edges)
    comp = d.components[0]
    out = []
    for k, start in enumerate(comp):
        order = comp[k:] + comp[:k]
        pos = {e: i for i, e in enumerate(order)}
        ok = True
        for c in d.crossing_ids:
            under_in = d.dart_at(c, 0)[0]
            over_in = d.dart_at(c, d.over_in_slot(c))[0]
            if pos[under_in] > pos[over_in]:
                ok = False
                break
        if ok:
            out.append(start)
    return out


def is_ascending(d):
    if d.is_circle:
        return True
    return bool(ascending_basepoints(d))


@dataclass(frozen=True)
class SciStReport:
    ascending: bool
    basepoint: object
    sci: int
    st: int
    delta: Fraction
    ok: bool


def sci_st_check(d):
    """For ascending diagrams: sci == st - delta^2 + 1/4 at a lowest point."""
    _require_knot(d)
    if d.is_circle:
        return SciStReport(True, None, 0, 0, Fraction(1, 2), True)
    points = ascending_basepoints(d)
    if not points:
        return SciStReport(False, None, sci(d), st(d), Fraction(0), False)
    bp = points[0]
    delta = region_indices(d).edge(bp)
    value_sci = sci(d)
    value_st = st(d, basepoint=bp)
    ok = value_sci == value_st - delta * delta + Fraction(1, 4)
    return SciStReport(True, bp, value_sci, value_st, delta, ok)
