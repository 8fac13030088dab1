"""Dynamic r-index: run-length BWT, sampled suffix arrays and the update engine."""

from .edits import EditKind, EditOp, SaInterval, UpdateStats
from .r_index import DynamicRIndex
from .rlbwt import SENTINEL, RlbwtIndex, Run
from .sampled_sa import SampledSa

__all__ = [
    "SENTINEL",
    "DynamicRIndex",
    "EditKind",
    "EditOp",
    "RlbwtIndex",
    "Run",
    "SaInterval",
    "SampledSa",
    "UpdateStats",
]
