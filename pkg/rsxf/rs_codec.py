"""
Systematic (n = 2^m, k = n - 2^t) Reed-Solomon encoding and syndrome decoding.

Codewords are evaluations of a polynomial of degree < k at omega_0 .. omega_{n-1}.
The word is viewed as n/T blocks of T = 2^t symbols; block 0 carries the parity and
blocks 1 .. n/T - 1 carry the message verbatim.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Optional, Union

import numpy as np

from rsxf.basis_ctx import BasisCtx, PolyX, default_basis
from rsxf.config import DEBUG_CHECKS
from rsxf.errors import CodeParamsError, ErrorValueError, InvariantViolation, LocatorError, SizeMismatchError
from rsxf.field_arith import ELEM_DTYPE, MAX_M, MIN_M, div_vec, scale_vec
from rsxf.halfgcd import key_equation_residual, solve_key_equation
from rsxf.poly_ops import formal_derivative
from rsxf.transform import fft_x_batch, fft_xbar_batch, ifft_x_batch, ifft_xbar_batch


logger = logging.getLogger("rsxf.rs_codec")


@dataclass(frozen=True)
class CodeParams:
    m: int
    t: int

    def __post_init__(self) -> None:
        if not MIN_M <= self.m <= MAX_M:
            raise CodeParamsError(f"m must be in [{MIN_M}, {MAX_M}], got {self.m}")
        if not 1 <= self.t <= self.m - 1:
            raise CodeParamsError(f"t must be in [1, {self.m - 1}], got {self.t}")

    @property
    def n(self) -> int:
        return 1 << self.m

    @property
    def T(self) -> int:
        return 1 << self.t

    @property
    def k(self) -> int:
        return self.n - self.T

    @property
    def blocks(self) -> int:
        return self.n // self.T

    @property
    def radius(self) -> int:
        """Number of symbol errors the code always corrects."""
        return self.T // 2


@dataclass(frozen=True, eq=False)
class Codeword:
    symbols: np.ndarray
    params: CodeParams

    def __post_init__(self) -> None:
        arr = np.array(self.symbols, dtype=ELEM_DTYPE)
        if arr.shape != (self.params.n,):
            raise SizeMismatchError(f"codeword needs {self.params.n} symbols, got {arr.size}")
        arr.setflags(write=False)
        object.__setattr__(self, "symbols", arr)

    def block(self, i: int) -> np.ndarray:
        T = self.params.T
        return self.symbols[i * T : (i + 1) * T]

    @property
    def parity(self) -> np.ndarray:
        return self.block(0)

    @property
    def message(self) -> np.ndarray:
        return self.symbols[self.params.T :]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Codeword):
            return NotImplemented
        return self.params == other.params and np.array_equal(self.symbols, other.symbols)

    __hash__ = None


@dataclass(frozen=True)
class DecodeResult:
    corrected: Codeword
    error_positions: FrozenSet[int] = frozenset()
    error_values: Dict[int, int] = field(default_factory=dict)
    ok: bool = True

    @property
    def error_count(self) -> int:
        return len(self.error_positions)


@dataclass(frozen=True)
class DecodeFailure:
    """Received word with more errors than the code can locate."""

    reason: str
    syndrome_degree: Optional[int] = None
    locator_degree: Optional[int] = None
    roots_found: Optional[int] = None
    ok: bool = False


def _received(params: CodeParams, recv) -> np.ndarray:
    if isinstance(recv, Codeword):
        return recv.symbols
    arr = np.asarray(recv, dtype=ELEM_DTYPE)
    if arr.shape != (params.n,):
        raise SizeMismatchError(f"received word needs {params.n} symbols, got {arr.size}")
    return arr


def _block_offsets(ctx: BasisCtx, params: CodeParams, blocks: Iterable[int]) -> np.ndarray:
    """omega_{iT} for each block index i."""
    idx = np.fromiter(blocks, dtype=np.int64) * params.T
    return ctx.omega_table[idx].astype(np.int64)


def encode(ctx: BasisCtx, params: CodeParams, msg) -> Codeword:
    """Systematic encoding: one T-point FFT and n/T - 1 T-point IFFTs.

    The blockwise inverse transforms of a codeword sum to zero, so the parity block is
    the forward transform of the summed inverse transforms of the message blocks.
    """
    message = np.asarray(msg, dtype=ELEM_DTYPE)
    if message.shape != (params.k,):
        raise SizeMismatchError(f"message needs {params.k} symbols, got {message.size}")
    T = params.T
    rows = message.reshape(params.blocks - 1, T)
    betas = _block_offsets(ctx, params, range(1, params.blocks))
    folded = np.bitwise_xor.reduce(ifft_xbar_batch(ctx, rows, params.t, betas), axis=0)
    parity = fft_xbar_batch(ctx, folded, params.t, 0)[0]
    return Codeword(np.concatenate([parity, message]), params)


def encode_evaluation(ctx: BasisCtx, params: CodeParams, msg) -> Codeword:
    """Non-systematic encoding: evaluate the X-bar message polynomial on all n points."""
    message = np.asarray(msg, dtype=ELEM_DTYPE)
    if message.shape != (params.k,):
        raise SizeMismatchError(f"message needs {params.k} symbols, got {message.size}")
    coeffs = np.zeros(params.n, dtype=ELEM_DTYPE)
    coeffs[: params.k] = message
    return Codeword(fft_xbar_batch(ctx, coeffs, params.m, 0)[0], params)


def message_from_evaluation(ctx: BasisCtx, params: CodeParams, word: Codeword) -> np.ndarray:
    """Inverse of ``encode_evaluation`` for a valid codeword."""
    coeffs = ifft_xbar_batch(ctx, word.symbols, params.m, 0)[0]
    return coeffs[: params.k]


def syndrome(ctx: BasisCtx, params: CodeParams, recv) -> PolyX:
    """Top T coefficients (basis X) of the received word's interpolating polynomial.

    The blockwise inverse transforms sum to p_k times that slice, so the sum is
    rescaled by 1/p_k.
    """
    word = _received(params, recv)
    rows = word.reshape(params.blocks, params.T)
    betas = _block_offsets(ctx, params, range(params.blocks))
    folded = np.bitwise_xor.reduce(ifft_x_batch(ctx, rows, params.t, betas), axis=0)
    return PolyX(scale_vec(ctx.field, folded, int(ctx.norm_inv[params.k])))


def full_syndrome(ctx: BasisCtx, params: CodeParams, recv) -> PolyX:
    """Same slice taken from the full n-point inverse transform."""
    word = _received(params, recv)
    return PolyX(ifft_x_batch(ctx, word, params.m, 0)[0][params.k :])


def find_roots(ctx: BasisCtx, params: CodeParams, lam: PolyX) -> FrozenSet[int]:
    """Positions i with lambda(omega_i) = 0, by one T-point transform per block."""
    if lam.is_zero:
        raise LocatorError("the zero polynomial vanishes everywhere")
    if lam.degree > params.T // 2:
        raise LocatorError(f"locator degree {lam.degree} exceeds {params.T // 2}")
    if lam.degree == 0:
        return frozenset()
    rows = np.broadcast_to(lam.padded(params.T), (params.blocks, params.T))
    values = fft_x_batch(ctx, rows, params.t, _block_offsets(ctx, params, range(params.blocks)))
    block, offset = np.nonzero(values == 0)
    return frozenset(int(i) for i in block * params.T + offset)


def error_values(ctx: BasisCtx, params: CodeParams, q: PolyX, lam: PolyX, roots: Iterable[int]) -> Dict[int, int]:
    """e_i = q(omega_i) / lambda'(omega_i) at every root, evaluating only blocks with roots."""
    positions = sorted(int(r) for r in roots)
    if not positions:
        return {}
    T = params.T
    blocks = sorted({p // T for p in positions})
    betas = _block_offsets(ctx, params, blocks)
    rows = np.stack([q.padded(T), formal_derivative(ctx, lam).padded(T)])
    rows = np.repeat(rows, len(blocks), axis=0)
    values = fft_x_batch(ctx, rows, params.t, np.concatenate([betas, betas]))
    q_vals, d_vals = values[: len(blocks)], values[len(blocks) :]

    where = {b: i for i, b in enumerate(blocks)}
    row = np.array([where[p // T] for p in positions])
    col = np.array([p % T for p in positions])
    numer, denom = q_vals[row, col], d_vals[row, col]
    if np.any(denom == 0):
        bad = [p for p, d in zip(positions, denom) if d == 0]
        raise ErrorValueError(f"locator derivative vanishes at positions {bad}")
    return dict(zip(positions, (int(v) for v in div_vec(ctx.field, numer, denom))))


def decode(ctx: BasisCtx, params: CodeParams, recv) -> Union[DecodeResult, DecodeFailure]:
    """Correct up to T/2 symbol errors.

    Returns a DecodeResult, or a DecodeFailure when the locator is inconsistent with the
    received word (more than T/2 errors). A word with more errors can still land on a
    different codeword; that is reported as a success by any bounded-distance decoder.
    """
    word = _received(params, recv)
    s = syndrome(ctx, params, word)
    if s.is_zero:
        return DecodeResult(Codeword(word, params))

    lam, q = solve_key_equation(ctx, s, params.t)
    half = params.T // 2
    if lam.is_zero or lam.degree == 0 or lam.degree > half:
        logger.warning("decode failure: locator degree %s with syndrome degree %s", lam.degree, s.degree)
        return DecodeFailure("locator has no roots to find", s.degree, lam.degree)

    roots = find_roots(ctx, params, lam)
    if len(roots) != lam.degree:
        logger.warning("decode failure: %d roots for a locator of degree %d", len(roots), lam.degree)
        return DecodeFailure("locator roots do not match its degree", s.degree, lam.degree, len(roots))

    try:
        values = error_values(ctx, params, q, lam, roots)
    except ErrorValueError as exc:
        logger.warning("decode failure: %s", exc)
        return DecodeFailure(str(exc), s.degree, lam.degree, len(roots))

    corrected = word.copy()
    positions = np.fromiter(values.keys(), dtype=np.int64)
    corrected[positions] ^= np.fromiter(values.values(), dtype=ELEM_DTYPE)

    if DEBUG_CHECKS:
        z = key_equation_residual(ctx, s, lam, q, params.t)
        if not z.is_zero and z.degree > half - 1:
            raise InvariantViolation(f"key equation residual degree {z.degree} exceeds {half - 1}")
        if not syndrome(ctx, params, corrected).is_zero:
            raise InvariantViolation("corrected word has a nonzero syndrome")

    logger.debug("corrected %d symbol errors", len(values))
    return DecodeResult(Codeword(corrected, params), frozenset(values), values)


class ReedSolomonCodec:
    """Shareable (basis, params) pair used by the chunk pipeline and the CLI."""

    def __init__(self, params: CodeParams, basis: Optional[BasisCtx] = None):
        self.params = params
        self.basis = basis or default_basis(params.m)

    @classmethod
    def for_params(cls, m: int, t: int) -> "ReedSolomonCodec":
        return cls(CodeParams(m, t))

    def encode(self, msg) -> Codeword:
        return encode(self.basis, self.params, msg)

    def decode(self, recv) -> Union[DecodeResult, DecodeFailure]:
        return decode(self.basis, self.params, recv)

    def __repr__(self) -> str:
        return f"ReedSolomonCodec(m={self.params.m}, t={self.params.t})"
