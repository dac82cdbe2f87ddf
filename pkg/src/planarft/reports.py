"""Run reports for builds and fuzz runs."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class RunReport:
    graph: dict = field(default_factory=dict)
    label_bits: dict = field(default_factory=dict)
    queries: int = 0
    agreements: int = 0
    violations: int = 0
    seconds: float = 0.0
    notes: list = field(default_factory=list)

    def set_label_stats(self, bits: list[int]) -> None:
        if not bits:
            return
        bs = sorted(bits)
        self.label_bits = {
            "max": bs[-1],
            "mean": sum(bs) // len(bs),
            "p99": bs[min(len(bs) - 1, (99 * len(bs)) // 100)],
        }

    def to_json(self) -> str:
        return json.dumps(self.__dict__, indent=2, sort_keys=True, default=str)
