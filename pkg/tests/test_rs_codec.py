import time
from unittest.mock import patch

import numpy as np
import pytest

from evals.oracle_ref import naive_multipoint
from rsxf.basis_ctx import PolyX, PolyXbar, build_basis, default_basis
from rsxf.errors import CodeParamsError, ErrorValueError, LocatorError, SizeMismatchError
from rsxf.field_arith import default_ctx
from rsxf.poly_ops import mul
from rsxf.rs_codec import (
    CodeParams,
    Codeword,
    DecodeFailure,
    DecodeResult,
    ReedSolomonCodec,
    decode,
    encode,
    encode_evaluation,
    error_values,
    find_roots,
    full_syndrome,
    message_from_evaluation,
    syndrome,
)
from rsxf.transform import ifft_x_batch, ifft_xbar
from rsxf.utils.counters import count_ops


def _message(rng, params):
    return rng.integers(0, params.n, size=params.k).astype(np.uint16)


def _corrupt(rng, word, params, errors):
    received = np.array(word.symbols)
    positions = rng.choice(params.n, size=errors, replace=False)
    values = rng.integers(1, params.n, size=errors).astype(np.uint16)
    received[positions] ^= values
    return received, dict(zip(positions.tolist(), values.tolist()))


@pytest.mark.parametrize("m, t", [(1, 1), (17, 4), (4, 0), (4, 4), (8, 9)])
def test_code_params_rejected(m, t):
    with pytest.raises(CodeParamsError):
        CodeParams(m, t)


def test_code_params_derived_sizes():
    params = CodeParams(16, 15)
    assert (params.n, params.T, params.k, params.blocks, params.radius) == (65536, 32768, 32768, 2, 16384)


def test_zero_message_encodes_to_zero(gf256):
    params = CodeParams(8, 4)
    word = encode(gf256, params, np.zeros(params.k, dtype=np.uint16))
    assert not word.symbols.any()


def test_encoding_is_systematic_and_linear(gf256, rng):
    params = CodeParams(8, 4)
    a, b = _message(rng, params), _message(rng, params)
    wa, wb = encode(gf256, params, a), encode(gf256, params, b)
    assert np.array_equal(wa.message, a)
    assert wa.parity.size == params.T
    assert np.array_equal(encode(gf256, params, a ^ b).symbols, wa.symbols ^ wb.symbols)


def test_codeword_is_a_low_degree_evaluation(gf256, rng):
    params = CodeParams(8, 3)
    word = encode(gf256, params, _message(rng, params))
    coeffs = ifft_xbar(gf256, word.symbols, params.m, 0)
    assert coeffs.is_zero or coeffs.degree < params.k
    # values agree with evaluating that polynomial directly
    assert np.array_equal(naive_multipoint(gf256, coeffs, range(params.n)), word.symbols)


def test_blockwise_inverse_transforms_cancel(gf256, rng):
    params = CodeParams(8, 4)
    word = encode(gf256, params, _message(rng, params))
    rows = word.symbols.reshape(params.blocks, params.T)
    betas = gf256.omega_table[np.arange(params.blocks) * params.T]
    assert not np.bitwise_xor.reduce(ifft_x_batch(gf256, rows, params.t, betas), axis=0).any()


def test_encode_uses_one_forward_transform(gf256, rng):
    params = CodeParams(8, 4)
    with count_ops() as counts:
        encode(gf256, params, _message(rng, params))
    assert counts.forward_calls == 1
    assert counts.inverse_calls == params.blocks - 1


def test_encode_rejects_wrong_length(gf256):
    params = CodeParams(8, 4)
    with pytest.raises(SizeMismatchError):
        encode(gf256, params, np.zeros(params.k + 1, dtype=np.uint16))
    with pytest.raises(SizeMismatchError):
        decode(gf256, params, np.zeros(params.n - 1, dtype=np.uint16))
    with pytest.raises(SizeMismatchError):
        Codeword(np.zeros(3, dtype=np.uint16), params)


def test_codeword_is_read_only(gf4):
    params = CodeParams(2, 1)
    word = encode(gf4, params, np.array([1, 2], dtype=np.uint16))
    with pytest.raises(ValueError):
        word.symbols[0] = 1
    assert word == Codeword(word.symbols.copy(), params)
    assert word != Codeword(word.symbols ^ 1, params)


def test_syndrome_of_a_codeword_is_zero(gf256, rng):
    params = CodeParams(8, 4)
    word = encode(gf256, params, _message(rng, params))
    assert syndrome(gf256, params, word).is_zero
    assert full_syndrome(gf256, params, word).is_zero


@pytest.mark.parametrize("m, t", [(4, 2), (8, 4), (10, 7)])
def test_syndrome_matches_full_transform(rng, m, t):
    ctx = default_basis(m)
    params = CodeParams(m, t)
    word = encode(ctx, params, _message(rng, params))
    received, _ = _corrupt(rng, word, params, 3)
    assert syndrome(ctx, params, received) == full_syndrome(ctx, params, received)


def test_syndrome_on_a_custom_basis(rng):
    ctx = build_basis(default_ctx(6), [3, 5, 9, 17, 33, 1])
    params = CodeParams(6, 3)
    word = encode(ctx, params, _message(rng, params))
    received, _ = _corrupt(rng, word, params, 2)
    assert syndrome(ctx, params, received) == full_syndrome(ctx, params, received)
    result = decode(ctx, params, received)
    assert result.ok and result.corrected == word


def test_find_roots(gf256):
    params = CodeParams(8, 4)
    lam = mul(gf256, PolyX.from_coeffs([5, 1]), PolyX.from_coeffs([200, 1]))
    assert find_roots(gf256, params, lam) == frozenset({5, 200})
    assert find_roots(gf256, params, PolyX.one()) == frozenset()


def test_find_roots_rejects_bad_locators(gf256):
    params = CodeParams(8, 2)
    with pytest.raises(LocatorError):
        find_roots(gf256, params, PolyX.zero())
    with pytest.raises(LocatorError):
        find_roots(gf256, params, PolyX.unit(3))


def test_error_values(gf256):
    params = CodeParams(8, 4)
    lam = mul(gf256, PolyX.from_coeffs([5, 1]), PolyX.from_coeffs([200, 1]))
    # lambda' = 5 + 200 is constant in characteristic 2
    values = error_values(gf256, params, PolyX.from_coeffs([5 ^ 200]), lam, {5, 200})
    assert values == {5: 1, 200: 1}
    assert error_values(gf256, params, PolyX.one(), lam, []) == {}


def test_error_values_reject_repeated_roots(gf256):
    params = CodeParams(8, 4)
    lam = mul(gf256, PolyX.from_coeffs([5, 1]), PolyX.from_coeffs([5, 1]))
    with pytest.raises(ErrorValueError):
        error_values(gf256, params, PolyX.one(), lam, {5})


def test_decode_clean_word(gf256, rng):
    params = CodeParams(8, 4)
    word = encode(gf256, params, _message(rng, params))
    result = decode(gf256, params, word)
    assert isinstance(result, DecodeResult)
    assert result.corrected == word
    assert result.error_count == 0


@pytest.mark.parametrize("m, t, trials", [(4, 2, 40), (6, 3, 20), (8, 4, 20), (12, 10, 3)])
def test_round_trip_within_radius(rng, m, t, trials):
    ctx = default_basis(m)
    params = CodeParams(m, t)
    for _ in range(trials):
        word = encode(ctx, params, _message(rng, params))
        errors = int(rng.integers(0, params.radius + 1))
        received, injected = _corrupt(rng, word, params, errors)
        result = decode(ctx, params, received)
        assert result.ok
        assert result.corrected == word
        assert result.error_values == injected
        assert np.array_equal(result.corrected.message, word.message)


def test_errors_confined_to_parity_or_message(gf256, rng):
    params = CodeParams(8, 4)
    word = encode(gf256, params, _message(rng, params))
    for span in (range(0, params.T), range(params.T, params.n)):
        received = np.array(word.symbols)
        positions = rng.choice(list(span), size=params.radius, replace=False)
        received[positions] ^= 1
        result = decode(gf256, params, received)
        assert result.ok and result.corrected == word


def test_decode_with_debug_checks(gf256, rng):
    params = CodeParams(8, 5)
    word = encode(gf256, params, _message(rng, params))
    received, _ = _corrupt(rng, word, params, params.radius)
    with patch("rsxf.rs_codec.DEBUG_CHECKS", True), patch("rsxf.poly_ops.DEBUG_CHECKS", True):
        result = decode(gf256, params, received)
    assert result.ok and result.corrected == word


def test_too_many_errors_never_returns_a_non_codeword(gf256, rng):
    params = CodeParams(8, 4)
    failures = 0
    for _ in range(20):
        word = encode(gf256, params, _message(rng, params))
        received, _ = _corrupt(rng, word, params, params.radius + 1)
        result = decode(gf256, params, received)
        if isinstance(result, DecodeFailure):
            failures += 1
            assert not result.ok and result.reason
        else:
            assert syndrome(gf256, params, result.corrected).is_zero
            assert result.corrected != word
    assert failures > 0


def test_evaluation_encoding(gf256, rng):
    params = CodeParams(8, 4)
    msg = _message(rng, params)
    word = encode_evaluation(gf256, params, msg)
    assert syndrome(gf256, params, word).is_zero
    assert np.array_equal(message_from_evaluation(gf256, params, word), msg)
    assert ifft_xbar(gf256, word.symbols, 8, 0) == PolyXbar(msg)


def test_codec_wrapper(rng):
    codec = ReedSolomonCodec.for_params(6, 3)
    assert repr(codec) == "ReedSolomonCodec(m=6, t=3)"
    word = codec.encode(_message(rng, codec.params))
    received, _ = _corrupt(rng, word, codec.params, 4)
    assert codec.decode(received).corrected == word


@pytest.mark.slow
def test_round_trip_full_field(gf65536, rng):
    params = CodeParams(16, 15)
    word = encode(gf65536, params, _message(rng, params))
    received, injected = _corrupt(rng, word, params, params.radius)
    result = decode(gf65536, params, received)
    assert result.ok and result.corrected == word
    assert result.error_values == injected


@pytest.mark.slow
def test_full_field_timing(gf65536, rng):
    params = CodeParams(16, 15)
    msg = _message(rng, params)
    encode(gf65536, params, msg)

    start = time.perf_counter()
    word = encode(gf65536, params, msg)
    encode_seconds = time.perf_counter() - start

    received, _ = _corrupt(rng, word, params, params.radius)
    start = time.perf_counter()
    result = decode(gf65536, params, received)
    decode_seconds = time.perf_counter() - start

    assert result.ok and result.corrected == word
    assert encode_seconds < 0.05
    assert decode_seconds < 5.0


@pytest.mark.slow
@pytest.mark.parametrize(
    "m, t, trials",
    [(4, 2, 1000), (8, 4, 1000), (12, 10, 1000), (16, 15, 10), (4, 1, 200), (10, 1, 200), (8, 7, 100)],
)
def test_round_trip_sweep(rng, m, t, trials):
    ctx = default_basis(m)
    params = CodeParams(m, t)
    for _ in range(trials):
        word = encode(ctx, params, _message(rng, params))
        errors = int(rng.integers(0, params.radius + 1))
        received, injected = _corrupt(rng, word, params, errors)
        result = decode(ctx, params, received)
        assert result.ok and result.corrected == word
        assert result.error_values == injected


@pytest.mark.slow
@pytest.mark.parametrize("m, t", [(4, 2), (8, 4), (12, 10)])
def test_beyond_the_radius_sweep(rng, m, t):
    ctx = default_basis(m)
    params = CodeParams(m, t)
    for _ in range(1000 if m < 12 else 100):
        word = encode(ctx, params, _message(rng, params))
        received, _ = _corrupt(rng, word, params, params.radius + 1)
        result = decode(ctx, params, received)
        if result.ok:
            # a different codeword within the radius of the received word
            assert syndrome(ctx, params, result.corrected).is_zero
            assert result.corrected != word
            assert result.error_count <= params.radius


@pytest.mark.slow
@pytest.mark.parametrize("m, t", [(4, 2), (8, 4), (12, 10), (16, 15)])
def test_blockwise_inverse_transforms_cancel_sweep(rng, m, t):
    ctx = default_basis(m)
    params = CodeParams(m, t)
    betas = ctx.omega_table[np.arange(params.blocks) * params.T]
    for _ in range(100):
        word = encode(ctx, params, _message(rng, params))
        rows = word.symbols.reshape(params.blocks, params.T)
        assert not np.bitwise_xor.reduce(ifft_x_batch(ctx, rows, params.t, betas), axis=0).any()
