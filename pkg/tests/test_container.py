import numpy as np
import pytest

from rsxf.errors import CodeParamsError, ContainerError
from tools.container import (
    HEADER,
    HEADER_SIZE,
    MAGIC,
    ContainerHeader,
    build_container,
    corrupt_container,
    corrupt_file,
    decode_container,
    decode_file,
    distinct_positions,
    encode_file,
    pack_symbols,
    parse_container,
    unpack_symbols,
)


def _payload(rng, size):
    return rng.integers(0, 256, size=size, dtype=np.uint8).tobytes()


def test_header_round_trip():
    header = ContainerHeader(m=12, t=4, payload_len=12345)
    raw = header.pack()
    assert len(raw) == HEADER_SIZE == 16
    assert raw[:4] == MAGIC
    assert ContainerHeader.parse(raw) == header


@pytest.mark.parametrize(
    "raw, code",
    [
        (b"RSXF", "truncated"),
        (HEADER.pack(b"NOPE", 1, 8, 4, 0, 0), "bad_magic"),
        (HEADER.pack(MAGIC, 2, 8, 4, 0, 0), "bad_version"),
        (HEADER.pack(MAGIC, 1, 8, 4, 7, 0), "bad_reserved"),
        (HEADER.pack(MAGIC, 1, 20, 4, 0, 0), "bad_params"),
        (HEADER.pack(MAGIC, 1, 8, 8, 0, 0), "bad_params"),
    ],
)
def test_header_errors(raw, code):
    with pytest.raises(ContainerError) as exc_info:
        ContainerHeader.parse(raw)
    assert exc_info.value.code == code
    assert exc_info.value.to_dict()["status"] == "error"


def test_body_length_is_checked(rng):
    container = build_container(_payload(rng, 100), 8, 4)
    raw = container.to_bytes()
    with pytest.raises(ContainerError) as exc_info:
        parse_container(raw[:-1])
    assert exc_info.value.code == "truncated"
    with pytest.raises(ContainerError) as exc_info:
        parse_container(raw + b"\0")
    assert exc_info.value.code == "bad_length"


@pytest.mark.parametrize("m", [3, 5, 8, 12, 16])
@pytest.mark.parametrize("size", [0, 1, 7, 64])
def test_symbol_packing_round_trip(rng, m, size):
    data = _payload(rng, size)
    symbols = pack_symbols(data, m)
    assert symbols.size == -(-8 * size // m)
    assert int(symbols.max(initial=0)) < 1 << m
    assert unpack_symbols(symbols, m, size) == data


def test_symbol_packing_is_lsb_first():
    # 0b10110100 cut into 3-bit symbols, low bits first
    assert pack_symbols(bytes([0b10110100]), 3).tolist() == [0b100, 0b110, 0b10]


def test_unpack_masks_stray_high_bits():
    symbols = np.array([0x1F5, 0x0FF], dtype=np.uint16)
    assert unpack_symbols(symbols, 8, 2) == bytes([0xF5, 0xFF])


def test_empty_payload_is_header_only(tmp_path):
    src, out = tmp_path / "empty.bin", tmp_path / "empty.rsxf"
    src.write_bytes(b"")
    assert encode_file(src, out, 8, 4)["chunks"] == 0
    assert out.stat().st_size == HEADER_SIZE

    restored = tmp_path / "restored.bin"
    report = decode_file(out, restored)
    assert report["status"] == "success"
    assert restored.read_bytes() == b""


def test_single_byte_in_the_largest_code(tmp_path):
    src, out = tmp_path / "one.bin", tmp_path / "one.rsxf"
    src.write_bytes(b"\x5a")
    encode_file(src, out, 16, 15)
    assert out.stat().st_size == HEADER_SIZE + 65536 * 2


@pytest.mark.parametrize("m, t", [(4, 2), (8, 4), (10, 5)])
def test_file_round_trip_with_errors(tmp_path, rng, m, t):
    data = _payload(rng, 700)
    src, enc, bad, dec = (tmp_path / name for name in ("in.bin", "in.rsxf", "bad.rsxf", "out.bin"))
    src.write_bytes(data)
    encode_file(src, enc, m, t, workers=2)
    corrupt_file(enc, bad, errors=(1 << t) // 2, seed=3)
    report = decode_file(bad, dec, workers=2)
    assert report["status"] == "success"
    assert report["failed_chunks"] == []
    assert all(chunk["errors"] == (1 << t) // 2 for chunk in report["chunks"])
    assert dec.read_bytes() == data


def test_zero_errors_leaves_the_container_unchanged(rng):
    container = build_container(_payload(rng, 300), 8, 4)
    assert corrupt_container(container, 0, 9).to_bytes() == container.to_bytes()


def test_corruption_is_reproducible(rng):
    container = build_container(_payload(rng, 300), 8, 4)
    first = corrupt_container(container, 5, 42).to_bytes()
    assert corrupt_container(container, 5, 42).to_bytes() == first
    assert corrupt_container(container, 5, 43).to_bytes() != first
    changed = np.count_nonzero(corrupt_container(container, 5, 42).words != container.words)
    assert changed == 5 * container.header.chunk_count


def test_distinct_positions_follow_the_documented_shuffle():
    positions = distinct_positions(np.random.default_rng(5), 20, 6)
    rng = np.random.default_rng(5)
    slots = list(range(20))
    for i in range(6):
        j = int(rng.integers(i, 20))
        slots[i], slots[j] = slots[j], slots[i]
    assert positions.tolist() == slots[:6]


@pytest.mark.parametrize("n, count", [(16, 0), (16, 16), (256, 9), (65536, 100)])
def test_distinct_positions_are_distinct_and_in_range(n, count):
    positions = distinct_positions(np.random.default_rng(11), n, count)
    assert positions.size == count
    assert len(set(positions.tolist())) == count
    assert all(0 <= p < n for p in positions.tolist())


def test_corruption_draws_positions_then_values_per_chunk(rng):
    container = build_container(_payload(rng, 300), 8, 4)
    corrupted = corrupt_container(container, 3, 7)
    draw = np.random.default_rng(7)
    for before, after in zip(container.words, corrupted.words):
        positions = distinct_positions(draw, 256, 3)
        values = draw.integers(1, 256, size=3, dtype=np.int64)
        assert np.flatnonzero(before != after).tolist() == sorted(positions.tolist())
        assert (before[positions] ^ after[positions]).tolist() == values.tolist()


def test_corruption_rejects_impossible_counts(rng):
    container = build_container(_payload(rng, 10), 4, 2)
    with pytest.raises(CodeParamsError):
        corrupt_container(container, 17, 0)


def test_failed_chunks_are_reported(rng):
    data = _payload(rng, 400)
    container = build_container(data, 8, 4)
    payload, reports = decode_container(corrupt_container(container, 256, 1))
    assert len(payload) == len(data)
    assert any(not r.ok for r in reports)
    assert all(r.reason for r in reports if not r.ok)


def test_decode_file_reports_failure(tmp_path, rng):
    src, enc, bad, dec = (tmp_path / name for name in ("in.bin", "in.rsxf", "bad.rsxf", "out.bin"))
    src.write_bytes(_payload(rng, 200))
    encode_file(src, enc, 8, 4)
    corrupt_file(enc, bad, errors=256, seed=5)
    report = decode_file(bad, dec)
    assert report["status"] == "failed"
    assert report["failed_chunks"]
