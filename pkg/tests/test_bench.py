import math

import numpy as np
import pytest

from rsxf.basis_ctx import default_basis
from rsxf.rs_codec import CodeParams, decode, encode
from tools import baseline
from tools.bench import (
    BenchReport,
    ScalingRow,
    add_errors,
    fit_exponent,
    format_report,
    random_message,
    run_bench,
    time_codec,
)


def test_fit_exponent_recovers_a_known_slope():
    rows = [ScalingRow(m, m - 1, 1 << m, 1e-6 * (1 << m) * m**2) for m in range(8, 14)]
    assert fit_exponent(rows) == pytest.approx(1.0, abs=1e-9)
    squared = [ScalingRow(r.m, r.t, r.n, r.decode_seconds**2) for r in rows]
    assert fit_exponent(squared) == pytest.approx(2.0, abs=1e-9)


def test_power_syndrome_of_a_codeword_is_zero(rng):
    ctx = default_basis(6)
    params = CodeParams(6, 3)
    word = encode(ctx, params, random_message(params, rng))
    assert not baseline.power_syndrome(ctx, params, word.symbols).any()


@pytest.mark.parametrize("m, t", [(4, 2), (6, 3), (8, 4)])
def test_baseline_agrees_with_the_fast_decoder(rng, m, t):
    ctx = default_basis(m)
    params = CodeParams(m, t)
    for errors in range(params.radius + 1):
        word = encode(ctx, params, random_message(params, rng))
        received = add_errors(word, errors, rng)
        fast = decode(ctx, params, received)
        slow = baseline.decode(ctx, params, received)
        assert fast.ok and slow.ok
        assert slow.corrected == fast.corrected == word
        assert slow.error_values == fast.error_values


def test_baseline_reports_failures(rng):
    ctx = default_basis(6)
    params = CodeParams(6, 3)
    outcomes = []
    for _ in range(10):
        word = encode(ctx, params, random_message(params, rng))
        result = baseline.decode(ctx, params, add_errors(word, 20, rng))
        outcomes.append(result.ok and result.corrected == word)
    assert not any(outcomes)


def test_add_errors_changes_exact_count(rng):
    params = CodeParams(6, 3)
    word = encode(default_basis(6), params, random_message(params, rng))
    assert np.count_nonzero(add_errors(word, 7, rng) != word.symbols) == 7


def test_time_codec_reports_counts():
    enc_s, dec_s, enc_ops, dec_ops = time_codec(6, 3, trials=2)
    assert enc_s > 0 and dec_s > 0
    assert enc_ops["forward_calls"] == 1
    assert enc_ops["inverse_calls"] == 7
    # one inverse per block for the syndrome, one forward per block for the roots
    assert dec_ops["inverse_calls"] >= 8 and dec_ops["forward_calls"] >= 8
    assert dec_ops["multiplications"] > 0


def test_run_bench_small():
    report = run_bench(6, 3, trials=1, scaling_ms=(5, 6, 7), baseline_m=6)
    assert isinstance(report, BenchReport)
    assert [row.m for row in report.scaling] == [5, 6, 7]
    assert report.scaling_exponent is not None and math.isfinite(report.scaling_exponent)
    assert report.baseline_m == 6 and report.baseline_speedup > 0
    assert report.as_dict()["scaling"][0]["n"] == 32

    text = format_report(report)
    assert "(n, k) = (64, 56)" in text
    assert "| 7 | 128 |" in text
    assert "speed-up over quadratic decoder at m=6" in text


def test_run_bench_without_extras():
    report = run_bench(4, 2, trials=1, scaling_ms=None, baseline_m=None)
    assert report.scaling == [] and report.baseline_speedup is None
    assert "fit exponent" not in format_report(report)
