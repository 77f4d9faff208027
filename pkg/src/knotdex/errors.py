"""Exception types shared across the package."""


class KnotdexError(Exception):
    """Base class for all knotdex errors."""


class InvalidDiagram(KnotdexError):
    """A diagram failed structural validation."""


class InconsistentIndexing(InvalidDiagram):
    """Winding-number labeling of regions is contradictory (non-planar map)."""


class UnknownCrossing(KnotdexError):
    """Referenced crossing id does not exist."""


class UnknownEdge(KnotdexError):
    """Referenced edge id does not exist."""


class MultiComponent(KnotdexError):
    """Operation requires a one-component diagram."""


class BasepointAtCrossing(KnotdexError):
    """Basepoint reference is not a valid edge start."""


class EdgeNotOnOuterFace(KnotdexError):
    """Connected sum requires both splice edges on their outer faces."""


class IncompatibleSumEdges(EdgeNotOnOuterFace):
    """The two splice edges face the outer region on opposite sides."""


class BadParameter(KnotdexError):
    """Generator or operation parameter out of range."""


class KdxSyntaxError(KnotdexError):
    """Malformed KDX text."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InconsistentLabels(KdxSyntaxError):
    """Edge labels of a KDX document do not describe a closed curve."""


class NotRealizable(KdxSyntaxError):
    """Crossing data passes label checks but is not a planar (genus-0) map."""


class MissingOuterFace(KdxSyntaxError):
    """No outer-face designation and the default is not applicable."""


class IllegalSite(KnotdexError):
    """A Reidemeister move was requested at a site where it is not legal."""


class IneligibleSite(IllegalSite):
    """The face exists but does not satisfy the move's eligibility rules."""


class SetTooLarge(KnotdexError):
    """Crossing-switch subset exceeds the finite-difference cap."""
