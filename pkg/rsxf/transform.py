"""
Multipoint evaluation on cosets V_k + beta in the X-bar and X bases, and the inverses.

The butterflies run level by level over a working buffer instead of recursing.
At level r the buffer is viewed as blocks of 2^r coefficients; block p covers the
coset offset beta + omega_{p 2^r}, and its twiddle s_{r-1}(.)/s_{r-1}(v_{r-1}) is read
from the basis tables using linearity of s_{r-1}. The batched ``*_batch`` entry points
transform several equal-length rows, one coset offset per row, in one pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from rsxf.basis_ctx import BasisCtx, PolyX, PolyXbar
from rsxf.errors import TransformSizeError
from rsxf.field_arith import ELEM_DTYPE, mul_vec
from rsxf.utils.counters import counting, record_calls, record_ops


@dataclass(frozen=True, eq=False)
class EvalVec:
    """Values of a polynomial at omega_i + beta, i = 0 .. 2^k - 1."""

    values: np.ndarray
    k: int
    beta: int

    def __post_init__(self) -> None:
        if self.values.size != 1 << self.k:
            raise TransformSizeError(f"evaluation vector must hold 2^{self.k} values")

    def __len__(self) -> int:
        return int(self.values.size)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EvalVec):
            return NotImplemented
        return self.k == other.k and self.beta == other.beta and np.array_equal(self.values, other.values)

    __hash__ = None


def _check_level(ctx: BasisCtx, k: int) -> None:
    if not 0 <= k <= ctx.m:
        raise TransformSizeError(f"transform level must be in [0, {ctx.m}], got {k}")


def _as_batch(ctx: BasisCtx, rows: np.ndarray, k: int, betas) -> tuple:
    _check_level(ctx, k)
    buf = np.array(rows, dtype=ELEM_DTYPE, ndmin=2)
    if buf.shape[1] != 1 << k:
        raise TransformSizeError(f"expected rows of length 2^{k}, got {buf.shape[1]}")
    beta_idx = ctx.index_of[np.broadcast_to(np.asarray(betas, dtype=np.int64), (buf.shape[0],))]
    return buf, beta_idx


def _level_twiddles(ctx: BasisCtx, r: int, k: int, beta_idx: np.ndarray) -> np.ndarray:
    table = ctx.twiddle[r - 1]
    offsets = np.arange(1 << (k - r), dtype=np.int64) << r
    return table[beta_idx][:, None] ^ table[offsets][None, :]


def _butterfly_mul(ctx: BasisCtx, lo: np.ndarray, hi: np.ndarray, tw: np.ndarray) -> int:
    """lo ^= tw * hi on every block whose twiddle is nonzero; returns the product count."""
    active = tw != 0
    if active.all():
        lo ^= mul_vec(ctx.field, tw[..., None], hi)
        return hi.size
    if active.any():
        lo[active] ^= mul_vec(ctx.field, tw[active][:, None], hi[active])
        return int(active.sum()) * hi.shape[-1]
    return 0


def fft_xbar_batch(ctx: BasisCtx, rows: np.ndarray, k: int, betas) -> np.ndarray:
    """Evaluate each row (X-bar coefficients) on V_k + beta_row."""
    buf, beta_idx = _as_batch(ctx, rows, k, betas)
    batch = buf.shape[0]
    track = counting()
    adds = muls = 0
    for r in range(k, 0, -1):
        half = 1 << (r - 1)
        view = buf.reshape(batch, -1, 2, half)
        lo, hi = view[:, :, 0, :], view[:, :, 1, :]
        products = _butterfly_mul(ctx, lo, hi, _level_twiddles(ctx, r, k, beta_idx))
        hi ^= lo
        if track:
            muls += products
            adds += products + hi.size
    if track:
        record_ops(additions=adds, multiplications=muls)
        record_calls(forward=batch)
    return buf


def ifft_xbar_batch(ctx: BasisCtx, rows: np.ndarray, k: int, betas) -> np.ndarray:
    """Inverse of ``fft_xbar_batch``."""
    buf, beta_idx = _as_batch(ctx, rows, k, betas)
    batch = buf.shape[0]
    track = counting()
    adds = muls = 0
    for r in range(1, k + 1):
        half = 1 << (r - 1)
        view = buf.reshape(batch, -1, 2, half)
        lo, hi = view[:, :, 0, :], view[:, :, 1, :]
        hi ^= lo
        products = _butterfly_mul(ctx, lo, hi, _level_twiddles(ctx, r, k, beta_idx))
        if track:
            muls += products
            adds += products + hi.size
    if track:
        record_ops(additions=adds, multiplications=muls)
        record_calls(inverse=batch)
    return buf


def fft_x_batch(ctx: BasisCtx, rows: np.ndarray, k: int, betas) -> np.ndarray:
    scaled = mul_vec(ctx.field, np.asarray(rows, dtype=ELEM_DTYPE), ctx.norm[: 1 << k])
    return fft_xbar_batch(ctx, scaled, k, betas)


def ifft_x_batch(ctx: BasisCtx, rows: np.ndarray, k: int, betas) -> np.ndarray:
    out = ifft_xbar_batch(ctx, rows, k, betas)
    return mul_vec(ctx.field, out, ctx.norm_inv[: 1 << k])


def _coefficients(d: Union[PolyX, PolyXbar, np.ndarray, Sequence[int]], k: int) -> np.ndarray:
    if isinstance(d, (PolyX, PolyXbar)):
        if len(d) > 1 << k:
            raise TransformSizeError(f"polynomial of degree {d.degree} does not fit a 2^{k}-point transform")
        return d.padded(1 << k)
    arr = np.asarray(d, dtype=ELEM_DTYPE)
    if arr.size != 1 << k:
        raise TransformSizeError(f"expected 2^{k} coefficients, got {arr.size}")
    return arr


def _values(e: Union[EvalVec, np.ndarray, Sequence[int]], k: int) -> np.ndarray:
    arr = e.values if isinstance(e, EvalVec) else np.asarray(e, dtype=ELEM_DTYPE)
    if arr.size != 1 << k:
        raise TransformSizeError(f"expected 2^{k} values, got {arr.size}")
    return arr


def fft_xbar(ctx: BasisCtx, d, k: int, beta: int = 0) -> EvalVec:
    """Evaluate an X-bar polynomial at omega_i + beta for i < 2^k.

    Args:
        ctx: Basis context.
        d: PolyXbar of degree < 2^k, or exactly 2^k coefficients.
        k: Transform level, k <= m.
        beta: Coset offset (a field element).

    Returns:
        EvalVec with 2^k values.
    """
    coeffs = _coefficients(d, k)
    return EvalVec(fft_xbar_batch(ctx, coeffs, k, beta)[0], k, int(beta))


def ifft_xbar(ctx: BasisCtx, e, k: int, beta: int = 0) -> PolyXbar:
    return PolyXbar(ifft_xbar_batch(ctx, _values(e, k), k, beta)[0])


def fft_x(ctx: BasisCtx, d, k: int, beta: int = 0) -> EvalVec:
    """Same as ``fft_xbar`` for coefficients over the monic basis X."""
    coeffs = _coefficients(d, k)
    return EvalVec(fft_x_batch(ctx, coeffs, k, beta)[0], k, int(beta))


def ifft_x(ctx: BasisCtx, e, k: int, beta: int = 0) -> PolyX:
    return PolyX(ifft_x_batch(ctx, _values(e, k), k, beta)[0])
