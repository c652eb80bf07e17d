"""
RSXF container: a 16-byte header followed by whole codewords.

Header layout (little-endian): magic "RSXF", version, m, t, reserved (0), payload length
in bytes (u64). The payload is read as an LSB-first bit stream and cut into m-bit
symbols; each symbol of a codeword is stored in ceil(m/8) little-endian bytes.
"""

import logging
import struct
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

from rsxf.errors import CodeParamsError, ContainerError
from rsxf.field_arith import ELEM_DTYPE
from rsxf.rs_codec import CodeParams, ReedSolomonCodec
from tools.pipeline import decode_chunks, div_ceil, encode_chunks, split_message

logger = logging.getLogger("rsxf.container")

MAGIC = b"RSXF"
VERSION = 1
HEADER = struct.Struct("<4sBBBBQ")
HEADER_SIZE = HEADER.size


def symbol_width(m: int) -> int:
    return (m + 7) // 8


@dataclass(frozen=True)
class ContainerHeader:
    m: int
    t: int
    payload_len: int
    version: int = VERSION
    reserved: int = 0

    @property
    def params(self) -> CodeParams:
        return CodeParams(self.m, self.t)

    @property
    def symbol_count(self) -> int:
        return div_ceil(8 * self.payload_len, self.m)

    @property
    def chunk_count(self) -> int:
        return div_ceil(self.symbol_count, self.params.k)

    @property
    def body_size(self) -> int:
        return self.chunk_count * self.params.n * symbol_width(self.m)

    def pack(self) -> bytes:
        return HEADER.pack(MAGIC, self.version, self.m, self.t, self.reserved, self.payload_len)

    @classmethod
    def parse(cls, data: bytes) -> "ContainerHeader":
        if len(data) < HEADER_SIZE:
            raise ContainerError("truncated", f"header needs {HEADER_SIZE} bytes, got {len(data)}")
        magic, version, m, t, reserved, payload_len = HEADER.unpack_from(data)
        if magic != MAGIC:
            raise ContainerError("bad_magic", f"unexpected magic {magic!r}")
        if version != VERSION:
            raise ContainerError("bad_version", f"unsupported version {version}", {"version": version})
        if reserved != 0:
            raise ContainerError("bad_reserved", f"reserved byte is {reserved}")
        header = cls(m=m, t=t, payload_len=payload_len, version=version)
        try:
            header.params
        except CodeParamsError as exc:
            raise ContainerError("bad_params", str(exc), {"m": m, "t": t}) from exc
        return header


# Symbol packing


def pack_symbols(data: bytes, m: int) -> np.ndarray:
    """Cut the LSB-first bit stream of ``data`` into m-bit symbols."""
    raw = np.frombuffer(data, dtype=np.uint8)
    if m == 8:
        return raw.astype(ELEM_DTYPE)
    if m == 16:
        padded = np.zeros(div_ceil(raw.size, 2) * 2, dtype=np.uint8)
        padded[: raw.size] = raw
        return padded.view("<u2").astype(ELEM_DTYPE)
    bits = np.unpackbits(raw, bitorder="little")
    count = div_ceil(bits.size, m)
    stream = np.zeros(count * m, dtype=np.uint8)
    stream[: bits.size] = bits
    return _bits_to_symbols(stream.reshape(count, m))


def _bits_to_symbols(rows: np.ndarray) -> np.ndarray:
    packed = np.packbits(rows, axis=1, bitorder="little")
    slots = np.zeros((rows.shape[0], 2), dtype=np.uint8)
    slots[:, : packed.shape[1]] = packed
    return slots.reshape(-1).view("<u2").astype(ELEM_DTYPE)


def unpack_symbols(symbols: np.ndarray, m: int, nbytes: int) -> bytes:
    """Inverse of ``pack_symbols``; symbols are masked to m bits first."""
    masked = (np.asarray(symbols, dtype=ELEM_DTYPE) & ((1 << m) - 1)).astype("<u2")
    if m == 8:
        return masked.astype(np.uint8).tobytes()[:nbytes]
    if m == 16:
        return masked.tobytes()[:nbytes]
    bits = np.unpackbits(masked.view(np.uint8).reshape(-1, 2), axis=1, bitorder="little")[:, :m]
    return np.packbits(bits.reshape(-1), bitorder="little").tobytes()[:nbytes]


def _slot_dtype(m: int) -> str:
    return "u1" if symbol_width(m) == 1 else "<u2"


def words_to_bytes(words: np.ndarray, m: int) -> bytes:
    return np.ascontiguousarray(words, dtype=_slot_dtype(m)).tobytes()


def bytes_to_words(body: bytes, header: ContainerHeader) -> np.ndarray:
    words = np.frombuffer(body, dtype=_slot_dtype(header.m)).astype(ELEM_DTYPE)
    return words.reshape(header.chunk_count, header.params.n) & ELEM_DTYPE((1 << header.m) - 1)


# Container files


@dataclass(frozen=True)
class Container:
    header: ContainerHeader
    words: np.ndarray

    def to_bytes(self) -> bytes:
        return self.header.pack() + words_to_bytes(self.words, self.header.m)


def parse_container(data: bytes) -> Container:
    header = ContainerHeader.parse(data)
    body = data[HEADER_SIZE:]
    expected = header.body_size
    context = {"expected": expected, "actual": len(body)}
    if len(body) < expected:
        raise ContainerError("truncated", f"body holds {len(body)} of {expected} bytes", context)
    if len(body) > expected:
        raise ContainerError("bad_length", f"body holds {len(body)} bytes, expected {expected}", context)
    return Container(header, bytes_to_words(body, header))


def build_container(data: bytes, m: int, t: int, workers: Optional[int] = None) -> Container:
    codec = ReedSolomonCodec.for_params(m, t)
    header = ContainerHeader(m=m, t=t, payload_len=len(data))
    messages = split_message(pack_symbols(data, m), codec.params.k)
    return Container(header, encode_chunks(codec, messages, workers))


def encode_file(in_path: Union[str, Path], out_path: Union[str, Path], m: int, t: int, workers: Optional[int] = None) -> Dict[str, Any]:
    data = Path(in_path).read_bytes()
    container = build_container(data, m, t, workers)
    Path(out_path).write_bytes(container.to_bytes())
    logger.info("encoded %d bytes into %d chunks (m=%d, t=%d)", len(data), container.header.chunk_count, m, t)
    return {"status": "success", "payload_len": len(data), "chunks": container.header.chunk_count}


@dataclass(frozen=True)
class ChunkReport:
    index: int
    ok: bool
    errors: int = 0
    reason: Optional[str] = None


def decode_container(container: Container, workers: Optional[int] = None):
    """Decoded payload bytes and one ChunkReport per chunk.

    Failed chunks contribute their received message symbols unchanged.
    """
    header = container.header
    params = header.params
    codec = ReedSolomonCodec(params)
    results = decode_chunks(codec, list(container.words), workers)
    reports: List[ChunkReport] = []
    messages = np.zeros((len(results), params.k), dtype=ELEM_DTYPE)
    for i, result in enumerate(results):
        if result.ok:
            messages[i] = result.corrected.message
            reports.append(ChunkReport(i, True, result.error_count))
        else:
            messages[i] = container.words[i][params.T :]
            reports.append(ChunkReport(i, False, reason=result.reason))
    payload = unpack_symbols(messages.reshape(-1)[: header.symbol_count], header.m, header.payload_len)
    return payload, reports


def decode_file(in_path: Union[str, Path], out_path: Union[str, Path], workers: Optional[int] = None) -> Dict[str, Any]:
    container = parse_container(Path(in_path).read_bytes())
    payload, reports = decode_container(container, workers)
    Path(out_path).write_bytes(payload)
    failed = [r.index for r in reports if not r.ok]
    return {
        "status": "failed" if failed else "success",
        "payload_len": len(payload),
        "chunks": [asdict(r) for r in reports],
        "failed_chunks": failed,
    }


def distinct_positions(rng: np.random.Generator, n: int, count: int) -> np.ndarray:
    """``count`` distinct indices below n by a partial Fisher-Yates shuffle.

    Step i swaps slot i with slot ``rng.integers(i, n)``; the first ``count`` slots are
    the result.
    """
    slots = np.arange(n, dtype=np.int64)
    for i in range(count):
        j = int(rng.integers(i, n))
        slots[i], slots[j] = slots[j], slots[i]
    return slots[:count]


def corrupt_container(container: Container, errors: int, seed: int) -> Container:
    """XOR ``errors`` nonzero values into distinct positions of every chunk.

    The generator is numpy's PCG64, ``np.random.default_rng(seed)``. Chunk by chunk it
    first draws the positions with ``distinct_positions`` and then one value per position
    from ``integers(1, n)``.
    """
    params = container.header.params
    if not 0 <= errors <= params.n:
        raise CodeParamsError(f"errors per chunk must be in [0, {params.n}], got {errors}")
    rng = np.random.default_rng(seed)
    words = container.words.copy()
    for word in words:
        if errors == 0:
            break
        positions = distinct_positions(rng, params.n, errors)
        values = rng.integers(1, params.n, size=errors, dtype=np.int64).astype(ELEM_DTYPE)
        word[positions] ^= values
    return Container(container.header, words)


def corrupt_file(in_path: Union[str, Path], out_path: Union[str, Path], errors: int, seed: int) -> Dict[str, Any]:
    container = parse_container(Path(in_path).read_bytes())
    corrupted = corrupt_container(container, errors, seed)
    Path(out_path).write_bytes(corrupted.to_bytes())
    logger.info("placed %d errors in each of %d chunks (seed=%d)", errors, container.header.chunk_count, seed)
    return {"status": "success", "chunks": container.header.chunk_count, "errors_per_chunk": errors}
