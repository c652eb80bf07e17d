"""
Throughput, operation counts and the decode-time scaling table behind ``app.py bench``.
"""

import logging
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

import numpy as np

from rsxf.basis_ctx import default_basis
from rsxf.rs_codec import CodeParams, Codeword, decode, encode
from rsxf.utils.counters import count_ops
from tools import baseline

logger = logging.getLogger("rsxf.bench")

SCALING_MS = tuple(range(10, 17))


@dataclass
class ScalingRow:
    m: int
    t: int
    n: int
    decode_seconds: float


@dataclass
class BenchReport:
    m: int
    t: int
    trials: int
    encode_seconds: float
    decode_seconds: float
    encode_ops: Dict[str, int]
    decode_ops: Dict[str, int]
    scaling: List[ScalingRow] = field(default_factory=list)
    scaling_exponent: Optional[float] = None
    baseline_m: Optional[int] = None
    baseline_speedup: Optional[float] = None

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


def random_message(params: CodeParams, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, params.n, size=params.k, dtype=np.int64).astype(np.uint16)


def add_errors(word: Codeword, count: int, rng: np.random.Generator) -> np.ndarray:
    """Copy of ``word`` with ``count`` nonzero errors at distinct positions."""
    n = word.params.n
    received = word.symbols.copy()
    positions = rng.choice(n, size=count, replace=False)
    received[positions] ^= rng.integers(1, n, size=count, dtype=np.int64).astype(np.uint16)
    return received


def _time_decoder(decoder, ctx, params, words: Iterable[np.ndarray]) -> float:
    start = time.perf_counter()
    for received in words:
        decoder(ctx, params, received)
    return time.perf_counter() - start


def time_codec(m: int, t: int, trials: int, seed: int = 0) -> Tuple[float, float, Dict[str, int], Dict[str, int]]:
    """Mean encode and decode seconds with T/2 errors per word, plus per-call op counts."""
    params = CodeParams(m, t)
    ctx = default_basis(m)
    rng = np.random.default_rng(seed)
    messages = [random_message(params, rng) for _ in range(trials)]

    start = time.perf_counter()
    words = [encode(ctx, params, msg) for msg in messages]
    encode_seconds = (time.perf_counter() - start) / trials

    received = [add_errors(w, params.radius, rng) for w in words]
    decode_seconds = _time_decoder(decode, ctx, params, received) / trials

    with count_ops() as encode_ops:
        encode(ctx, params, messages[0])
    with count_ops() as decode_ops:
        decode(ctx, params, received[0])
    return encode_seconds, decode_seconds, encode_ops.as_dict(), decode_ops.as_dict()


def scaling_table(ms: Iterable[int] = SCALING_MS, trials: int = 1, seed: int = 0) -> List[ScalingRow]:
    """Decode time at rate 1/2 (t = m - 1) for each m."""
    rows = []
    for m in ms:
        _, decode_seconds, _, _ = time_codec(m, m - 1, trials, seed)
        rows.append(ScalingRow(m, m - 1, 1 << m, decode_seconds))
        logger.info("scaling m=%d: %.4fs per decode", m, decode_seconds)
    return rows


def fit_exponent(rows: List[ScalingRow]) -> float:
    """Least-squares slope of log(time) against log(n lg^2 n)."""
    x = np.log([r.n * np.log2(r.n) ** 2 for r in rows])
    y = np.log([r.decode_seconds for r in rows])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def baseline_speedup(m: int = 12, t: int = 10, trials: int = 1, seed: int = 0) -> float:
    """Quadratic monomial-basis decode time over the fast decode time, same words."""
    params = CodeParams(m, t)
    ctx = default_basis(m)
    rng = np.random.default_rng(seed)
    received = [add_errors(encode(ctx, params, random_message(params, rng)), params.radius, rng) for _ in range(trials)]
    fast = _time_decoder(decode, ctx, params, received)
    slow = _time_decoder(baseline.decode, ctx, params, received)
    return slow / fast


def run_bench(
    m: int,
    t: int,
    trials: int,
    seed: int = 0,
    scaling_ms: Optional[Iterable[int]] = SCALING_MS,
    baseline_m: Optional[int] = 12,
) -> BenchReport:
    encode_seconds, decode_seconds, encode_ops, decode_ops = time_codec(m, t, trials, seed)
    report = BenchReport(m, t, trials, encode_seconds, decode_seconds, encode_ops, decode_ops)
    if scaling_ms:
        report.scaling = scaling_table(scaling_ms, 1, seed)
        if len(report.scaling) >= 2:
            report.scaling_exponent = fit_exponent(report.scaling)
    if baseline_m:
        report.baseline_m = baseline_m
        report.baseline_speedup = baseline_speedup(baseline_m, min(t, baseline_m - 2), 1, seed)
    return report


def format_report(report: BenchReport) -> str:
    params = CodeParams(report.m, report.t)
    symbols_per_s = params.k / report.encode_seconds if report.encode_seconds else float("inf")
    lines = [
        f"(n, k) = ({params.n}, {params.k}), {report.trials} trial(s)",
        f"encode: {report.encode_seconds * 1e3:.2f} ms/codeword ({symbols_per_s:,.0f} symbols/s)",
        f"decode: {report.decode_seconds * 1e3:.2f} ms/codeword with {params.radius} errors",
        f"encode ops: {report.encode_ops}",
        f"decode ops: {report.decode_ops}",
    ]
    if report.scaling:
        lines.append("")
        lines.append("| m | n | decode (s) |")
        lines.append("| :---: | :---: | :---: |")
        for row in report.scaling:
            lines.append(f"| {row.m} | {row.n} | {row.decode_seconds:.4f} |")
    if report.scaling_exponent is not None:
        lines.append(f"fit exponent vs n lg^2 n: {report.scaling_exponent:.3f}")
    if report.baseline_speedup is not None:
        lines.append(f"speed-up over quadratic decoder at m={report.baseline_m}: {report.baseline_speedup:.1f}x")
    return "\n".join(lines)
