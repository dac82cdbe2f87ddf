"""Label file container.

Binary layout: magic, version, a JSON header (mode, n, epsilon as p/q,
scheme manifest, record offset table), then length-prefixed per-vertex
records (deterministic JSON bytes).  The query path opens the label file
only and reads exactly the three records it needs; reads are counted so the
locality audit can assert the three-record property.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass

from .errors import BadId, CorruptFile

MAGIC = b"FTLB"
VERSION = 2


def _enc(obj) -> bytes:
    return json.dumps(obj, separators=(",", ":"), sort_keys=True).encode()


def write_label_file(path: str, mode: str, n: int, eps_pair: tuple[int, int],
                     records: list[dict], manifest: dict | None = None) -> dict:
    payloads = [_enc(rec) for rec in records]
    header = {
        "mode": mode,
        "n": n,
        "eps": list(eps_pair),
        "manifest": manifest or {},
        "sizes": [len(p) for p in payloads],
    }
    hbytes = _enc(header)
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<II", VERSION, len(hbytes)))
        fh.write(hbytes)
        for p in payloads:
            fh.write(struct.pack("<I", len(p)))
            fh.write(p)
    return header


class LabelFile:
    """Random-access reader; counts record reads for the locality audit."""

    def __init__(self, path: str):
        self.path = path
        self.reads = 0
        with open(path, "rb") as fh:
            if fh.read(4) != MAGIC:
                raise CorruptFile("bad magic")
            version, hlen = struct.unpack("<II", fh.read(8))
            if version != VERSION:
                raise CorruptFile(f"unsupported version {version}")
            try:
                self.header = json.loads(fh.read(hlen))
            except Exception as exc:
                raise CorruptFile(str(exc))
            base = 12 + hlen
            self.offsets = []
            off = base
            for sz in self.header["sizes"]:
                self.offsets.append((off + 4, sz))
                off += 4 + sz

    @property
    def n(self) -> int:
        return self.header["n"]

    @property
    def mode(self) -> str:
        return self.header["mode"]

    def record(self, v: int) -> dict:
        if not (0 <= v < self.n):
            raise BadId(f"vertex {v} out of range")
        off, sz = self.offsets[v]
        self.reads += 1
        with open(self.path, "rb") as fh:
            fh.seek(off)
            raw = fh.read(sz)
        declared = struct.pack("<I", sz)
        try:
            return json.loads(raw)
        except Exception as exc:
            raise CorruptFile(str(exc))

    def record_bits(self, v: int) -> int:
        return 8 * self.offsets[v][1]


def save_reach(path: str, bundles: list[dict]) -> dict:
    return write_label_file(path, "reach", len(bundles), (0, 1), bundles,
                            manifest={"schemes": ["thorup", "coleaf", "apex",
                                                  "canonical", "incised"]})


def save_dist(path: str, bundles: dict) -> dict:
    eps = bundles["eps"]
    records = bundles["vertices"]
    return write_label_file(path, "dist", bundles["n"], (eps[0], eps[1]),
                            records,
                            manifest={"scales": bundles["scales"],
                                      "schemes": ["nonfaulty", "coleaf",
                                                  "apex", "entries", "tables"]})
