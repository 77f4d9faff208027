"""knotdex: knot-diagram invariants and a Reidemeister move engine."""

from .planarmap import (
    Diagram,
    Edge,
    Region,
    TrivialCircle,
    canonical_form,
    connected_sum,
    faces,
    reverse_orientation,
    switch_crossing,
    validate,
)

__all__ = [
    "Diagram",
    "Edge",
    "Region",
    "TrivialCircle",
    "canonical_form",
    "connected_sum",
    "faces",
    "reverse_orientation",
    "switch_crossing",
    "validate",
]
