"""Exact cosine-similarity index over document embeddings.

Binary layout (all integers little-endian)::

    b"TDEIDX1"                      magic + format version
    uint32 dim, uint32 count
    count x (uint32 id_len, id bytes (UTF-8), dim x float32)
    uint32 CRC32 of every preceding byte
"""

from __future__ import annotations

import json
import os
import struct
import zlib
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import CorruptIndex, DimensionMismatch, DuplicateId, ZeroVector

MAGIC = b"TDEIDX1"
_U32 = struct.Struct("<I")


def _as_vector(v) -> np.ndarray:
    arr = np.asarray(v, dtype=np.float64)
    if arr.ndim != 1:
        raise DimensionMismatch(f"expected a 1-d vector, got shape {arr.shape}")
    return arr


def cosine(u, v) -> float:
    u, v = _as_vector(u), _as_vector(v)
    if u.shape != v.shape:
        raise DimensionMismatch(f"dimensions differ: {u.shape[0]} vs {v.shape[0]}")
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0 or nv == 0:
        raise ZeroVector("cosine undefined for a zero vector")
    return float(np.clip(np.dot(u, v) / (nu * nv), -1.0, 1.0))


class VectorIndex:
    """Document id -> float32 vector, with cached norms.

    Vectors are stored as float32 (the on-disk precision), so ``save``/``load``
    roundtrips are bit-exact.
    """

    def __init__(self, dim: int):
        if dim < 1:
            raise ValueError(f"dim must be >= 1, got {dim}")
        self.dim = dim
        self._ids: list[str] = []
        self._pos: dict[str, int] = {}
        self._rows: list[np.ndarray] = []
        self._norms: list[float] = []
        self._matrix: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self._ids)

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self._pos

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorIndex):
            return NotImplemented
        return (
            self.dim == other.dim
            and self._ids == other._ids
            and all(a.tobytes() == b.tobytes() for a, b in zip(self._rows, other._rows))
        )

    @property
    def ids(self) -> list[str]:
        return list(self._ids)

    def get(self, doc_id: str) -> np.ndarray:
        return self._rows[self._pos[doc_id]].copy()

    def items(self):
        for i, row in zip(self._ids, self._rows):
            yield i, row.copy()

    def insert(self, doc_id: str, vector) -> None:
        if doc_id in self._pos:
            raise DuplicateId(f"id {doc_id!r} already indexed")
        row = np.asarray(vector, dtype=np.float32)
        if row.shape != (self.dim,):
            raise DimensionMismatch(f"expected dim {self.dim}, got shape {row.shape}")
        if not np.all(np.isfinite(row)):
            raise ValueError(f"vector for {doc_id!r} has non-finite entries")
        norm = float(np.linalg.norm(row.astype(np.float64)))
        if norm == 0:
            raise ZeroVector(f"vector for {doc_id!r} has zero norm")
        self._pos[doc_id] = len(self._ids)
        self._ids.append(doc_id)
        self._rows.append(row)
        self._norms.append(norm)
        self._matrix = None

    def similarities(self, query) -> np.ndarray:
        q = _as_vector(query)
        if q.shape != (self.dim,):
            raise DimensionMismatch(f"query dim {q.shape[0]} != index dim {self.dim}")
        qn = np.linalg.norm(q)
        if qn == 0:
            raise ZeroVector("query vector has zero norm")
        if not self._ids:
            return np.zeros(0)
        if self._matrix is None:
            self._matrix = np.vstack(self._rows).astype(np.float64)
        # row-wise reduction so identical rows give identical scores
        dots = (self._matrix * q).sum(axis=1)
        return np.clip(dots / (np.asarray(self._norms) * qn), -1.0, 1.0)

    def top_k(self, query, k: int = 5, exclude: str | None = None) -> list[tuple[str, float]]:
        """Exact top-``k`` by cosine; ties broken by ascending id."""
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        sims = self.similarities(query)
        ranked = sorted(
            ((doc_id, float(s)) for doc_id, s in zip(self._ids, sims) if doc_id != exclude),
            key=lambda x: (-x[1], x[0]),
        )
        return ranked[:k]

    def to_bytes(self) -> bytes:
        parts = [MAGIC, _U32.pack(self.dim), _U32.pack(len(self._ids))]
        for doc_id, row in zip(self._ids, self._rows):
            raw = doc_id.encode("utf-8")
            parts += [_U32.pack(len(raw)), raw, row.astype("<f4").tobytes()]
        body = b"".join(parts)
        return body + _U32.pack(zlib.crc32(body))

    @classmethod
    def from_bytes(cls, data: bytes) -> "VectorIndex":
        if len(data) < len(MAGIC) + 12:
            raise CorruptIndex("index file truncated")
        if data[: len(MAGIC)] != MAGIC:
            raise CorruptIndex("bad magic or unsupported index version")
        body, (crc,) = data[:-4], _U32.unpack(data[-4:])
        if zlib.crc32(body) != crc:
            raise CorruptIndex("checksum mismatch")
        try:
            off = len(MAGIC)
            (dim,) = _U32.unpack_from(body, off)
            (count,) = _U32.unpack_from(body, off + 4)
            off += 8
            index = cls(dim)
            for _ in range(count):
                (n,) = _U32.unpack_from(body, off)
                off += 4
                doc_id = body[off : off + n].decode("utf-8")
                off += n
                row = np.frombuffer(body, dtype="<f4", count=dim, offset=off).astype(np.float32)
                off += 4 * dim
                index.insert(doc_id, row)
        except (struct.error, ValueError, UnicodeDecodeError) as e:
            raise CorruptIndex(f"malformed index body: {e}") from None
        if off != len(body):
            raise CorruptIndex("trailing bytes after last entry")
        return index

    def save(self, path: str | os.PathLike) -> None:
        Path(path).write_bytes(self.to_bytes())

    @classmethod
    def load(cls, path: str | os.PathLike) -> "VectorIndex":
        return cls.from_bytes(Path(path).read_bytes())

    def to_jsonl(self) -> str:
        return "".join(
            json.dumps({"id": i, "vector": [float(x) for x in row]}) + "\n"
            for i, row in zip(self._ids, self._rows)
        )

    @classmethod
    def from_jsonl(cls, lines: Iterable[str]) -> "VectorIndex":
        index = None
        for line in lines:
            if not line.strip():
                continue
            rec = json.loads(line)
            if index is None:
                index = cls(len(rec["vector"]))
            index.insert(rec["id"], rec["vector"])
        if index is None:
            raise ValueError("empty JSONL: dimension unknown")
        return index


def insert(index: VectorIndex, doc_id: str, vector) -> None:
    index.insert(doc_id, vector)


def top_k(index: VectorIndex, query, k: int = 5, exclude: str | None = None) -> list[tuple[str, float]]:
    return index.top_k(query, k, exclude)


def save(index: VectorIndex, path: str | os.PathLike) -> None:
    index.save(path)


def load(path: str | os.PathLike) -> VectorIndex:
    return VectorIndex.load(path)
