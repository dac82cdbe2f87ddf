"""Fault-tolerant reachability and approximate distance labels for planar digraphs."""

from .embed import EmbeddedDigraph, build_graph, graph_from_json, incise, reverse
from .errors import (ApexCase, BadId, CorruptFile, DanglingReference,
                     Disconnected, InvalidSpec, MalformedRotation, NoSeparator,
                     NonPlanarEmbedding, NotACycle, PlanarFTError,
                     VertexNotInPiece)
from .paths import PathRef
from .views import GraphView, derive

__all__ = [
    "EmbeddedDigraph", "build_graph", "graph_from_json", "incise", "reverse",
    "PathRef", "GraphView", "derive",
    "PlanarFTError", "NonPlanarEmbedding", "MalformedRotation", "NotACycle",
    "DanglingReference", "Disconnected", "VertexNotInPiece", "NoSeparator",
    "ApexCase", "BadId", "CorruptFile", "InvalidSpec",
]
