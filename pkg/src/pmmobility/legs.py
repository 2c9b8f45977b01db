"""POC analysis of one serial leg.

The leg is segmented into catalogued sub-chains, the segment POC matrices
are combined on their disjoint columns, and the combined matrix is
normalized against the mechanism-wide relation graph.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poc import PocMatrix, Policy, normalize, poc_or
from .relations import RelationGraph
from .subchains import Segment, extract_subchains, subchain_poc
from .topology import LegTopology


@dataclass(frozen=True)
class LegPoc:
    """Result of analyzing one leg.

    matrix is the normalized POC matrix padded to width 6.  trace records
    the recognized segments with their padded POC matrices, then the
    combined matrix before normalization.
    """

    leg: LegTopology
    matrix: PocMatrix
    segments: tuple[Segment, ...]
    trace: tuple[tuple[Segment, PocMatrix], ...]
    combined: PocMatrix

    @property
    def xi_t(self) -> int:
        return self.matrix.xi_t

    @property
    def xi_r(self) -> int:
        return self.matrix.xi_r


def analyze_leg(leg: LegTopology, g: RelationGraph, policy: Policy = Policy.GENERAL) -> LegPoc:
    """Compute the POC matrix of a leg.

    The output rank never exceeds the leg's joint count or six.
    """
    segments = extract_subchains(leg, g)
    parts = []
    trace = []
    for segment in segments:
        part = subchain_poc(segment.kind, segment.start, leg.f).with_owner(leg.label)
        parts.append(part)
        trace.append((segment, part))
    combined = poc_or(parts)
    matrix = normalize(combined, g, policy).widen(6)
    assert matrix.rank <= min(leg.f, 6)
    return LegPoc(
        leg=leg,
        matrix=matrix,
        segments=segments,
        trace=tuple(trace),
        combined=combined,
    )
