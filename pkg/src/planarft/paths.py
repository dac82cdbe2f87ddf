"""Directed path references with per-vertex indexing."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PathRef:
    """A directed path of a host graph, as its vertex sequence."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("path repeats a vertex")

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: int) -> bool:
        return v in self.index_of

    @property
    def index_of(self) -> dict[int, int]:
        try:
            return object.__getattribute__(self, "_idx")
        except AttributeError:
            idx = {v: i for i, v in enumerate(self.vertices)}
            object.__setattr__(self, "_idx", idx)
            return idx

    def index(self, v: int) -> int:
        return self.index_of[v]

    def before(self, u: int, v: int) -> bool:
        """u <_P v."""
        return self.index(u) < self.index(v)

    def subpath(self, u: int, v: int) -> "PathRef":
        i, j = self.index(u), self.index(v)
        if i > j:
            raise ValueError("subpath endpoints out of order")
        return PathRef(self.vertices[i:j + 1])

    def reverse(self) -> "PathRef":
        return PathRef(tuple(reversed(self.vertices)))

    def length_in(self, graph_or_view) -> int:
        """Sum of arc weights along the path in the host."""
        total = 0
        for u, v in zip(self.vertices, self.vertices[1:]):
            total += graph_or_view.arc_weight(u, v)
        return total

    def validate_in(self, graph_or_view) -> None:
        for u, v in zip(self.vertices, self.vertices[1:]):
            if not graph_or_view.has_arc(u, v):
                raise ValueError(f"missing arc {u}->{v}")
