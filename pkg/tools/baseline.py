"""
Quadratic-time syndrome decoder in the monomial basis, used as the speed reference.

Works on the same codewords as ``rsxf.rs_codec`` (evaluations of a polynomial of
degree < k on every field element) with power-sum syndromes, the classic extended
Euclid loop and Horner root search over all n points.
"""

import logging
from typing import Union

import numpy as np

from rsxf.basis_ctx import BasisCtx
from rsxf.field_arith import ELEM_DTYPE, div_vec, mul_vec
from rsxf.monomial import mono_derivative, mono_divrem, mono_eval, mono_mul
from rsxf.rs_codec import CodeParams, Codeword, DecodeFailure, DecodeResult

logger = logging.getLogger("rsxf.baseline")


def power_syndrome(ctx: BasisCtx, params: CodeParams, word: np.ndarray) -> np.ndarray:
    """s_l = sum_a r_a a^(T-1-l) for l < T, with 0^0 = 1."""
    field = ctx.field
    points = ctx.omega_table
    T = params.T
    sums = np.zeros(T, dtype=ELEM_DTYPE)
    acc = np.array(word, dtype=ELEM_DTYPE)
    for j in range(T):
        sums[j] = np.bitwise_xor.reduce(acc)
        acc = mul_vec(field, acc, points)
    return sums[::-1].copy()


def _eea(field, r0: np.ndarray, r1: np.ndarray, stop: int):
    """Cofactors (u, v) and remainder r with r = u r0 + v r1 and deg r < stop."""
    u0, u1 = np.ones(1, dtype=ELEM_DTYPE), np.zeros(0, dtype=ELEM_DTYPE)
    v0, v1 = np.zeros(0, dtype=ELEM_DTYPE), np.ones(1, dtype=ELEM_DTYPE)
    while r1.size > stop:
        q, r = mono_divrem(field, r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, _xor(u0, mono_mul(field, q, u1))
        v0, v1 = v1, _xor(v0, mono_mul(field, q, v1))
    return r1, u1, v1


def _xor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros(max(a.size, b.size), dtype=ELEM_DTYPE)
    out[: a.size] ^= a
    out[: b.size] ^= b
    nz = np.flatnonzero(out)
    return out[: nz[-1] + 1] if nz.size else out[:0]


def decode(ctx: BasisCtx, params: CodeParams, recv) -> Union[DecodeResult, DecodeFailure]:
    word = np.array(recv.symbols if isinstance(recv, Codeword) else recv, dtype=ELEM_DTYPE)
    s = power_syndrome(ctx, params, word)
    nz = np.flatnonzero(s)
    if nz.size == 0:
        return DecodeResult(Codeword(word, params))
    s = s[: nz[-1] + 1]

    half = params.T // 2
    x_t = np.zeros(params.T + 1, dtype=ELEM_DTYPE)
    x_t[-1] = 1
    _, q, lam = _eea(ctx.field, x_t, s, half)
    degree = lam.size - 1
    if degree <= 0 or degree > half:
        return DecodeFailure("locator has no roots to find", int(nz[-1]), degree)

    points = ctx.omega_table
    roots = np.flatnonzero(mono_eval(ctx.field, lam, points) == 0)
    if roots.size != degree:
        return DecodeFailure("locator roots do not match its degree", int(nz[-1]), degree, int(roots.size))
    numer = mono_eval(ctx.field, q, points[roots])
    denom = mono_eval(ctx.field, mono_derivative(lam), points[roots])
    if np.any(denom == 0):
        return DecodeFailure("locator derivative vanishes at a root", int(nz[-1]), degree, int(roots.size))

    values = div_vec(ctx.field, numer, denom)
    word[roots] ^= values
    errors = {int(p): int(v) for p, v in zip(roots, values)}
    logger.debug("baseline corrected %d symbol errors", len(errors))
    return DecodeResult(Codeword(word, params), frozenset(errors), errors)
