"""
Arithmetic on polynomials in the monic basis X.

Products are computed by evaluation on V_k (k the smallest level holding the product
degree), pointwise multiplication and interpolation. Products whose degree reaches past
the field size are split into blocks of 2^(m-1) coefficients, multiplied inside the field
and lifted back with exact multiplications by subspace polynomials; this keeps the
intermediate polynomials of a division near the top of the field exact.
"""

from __future__ import annotations

import logging
from typing import List, Sequence, Tuple

import numpy as np

from rsxf.basis_ctx import BasisCtx, PolyX, trim
from rsxf.config import DEBUG_CHECKS, DIVREM_LONG_QUOTIENT, SCHOOLBOOK_DEGREE
from rsxf.errors import DegreeOverflowError, GFZeroDivisionError, InvariantViolation, NewtonInputError
from rsxf.field_arith import ELEM_DTYPE, div, inv, mul_vec, scale_vec
from rsxf.monomial import from_mono, mono_mul, to_mono
from rsxf.transform import fft_x_batch, ifft_x_batch


logger = logging.getLogger("rsxf.poly_ops")


def _empty() -> np.ndarray:
    return np.zeros(0, dtype=ELEM_DTYPE)


def _xor_into(dst: np.ndarray, src: np.ndarray) -> None:
    dst[: src.size] ^= src


# Array-level kernels


def _mul_by_subspace(ctx: BasisCtx, p: np.ndarray, j: int) -> np.ndarray:
    """p * s_j for trimmed X-basis coefficients p.

    Terms whose index lacks bit j move up by 2^j. Terms with bit j set meet s_j twice:
    s_j X_l = s_{j+1} X_{l - 2^j} + c_j X_l, so they stay in place scaled by c_j and
    carry into level j + 1.
    """
    if p.size == 0:
        return p
    step = 1 << j
    out_len = p.size + step
    if j > ctx.top_level or out_len > ctx.capacity:
        raise DegreeOverflowError(f"product degree {out_len - 1} exceeds {ctx.capacity - 1}")
    out = np.zeros(out_len, dtype=ELEM_DTYPE)
    idx = np.arange(p.size)
    has_bit = (idx & step) != 0
    clear = ~has_bit
    out[idx[clear] + step] = p[clear]
    if has_bit.any():
        lifted = p[has_bit]
        c = ctx.level_constant(j)
        if c:
            out[idx[has_bit]] ^= scale_vec(ctx.field, lifted, c)
        carry = np.zeros(p.size - step, dtype=ELEM_DTYPE)
        carry[idx[has_bit] - step] = lifted
        carry = trim(carry)
        if carry.size:
            _xor_into(out, _mul_by_subspace(ctx, carry, j + 1))
    return trim(out)


def _mul_by_basis(ctx: BasisCtx, p: np.ndarray, y: int) -> np.ndarray:
    """p * X_y."""
    if p.size == 0:
        return p
    nz = np.flatnonzero(p)
    if not np.any(nz & y):
        # X_i X_y = X_{i+y} when i and y share no bits
        out = np.zeros(p.size + y, dtype=ELEM_DTYPE)
        out[nz + y] = p[nz]
        return out
    unit = np.zeros(y + 1, dtype=ELEM_DTYPE)
    unit[y] = 1
    return _mul_ext(ctx, p, unit)


def _mul_by_subspaces(ctx: BasisCtx, p: np.ndarray, y: int) -> np.ndarray:
    """p * X_y as one s_j product per set bit j of y; no transforms."""
    j = 0
    while y >> j:
        if (y >> j) & 1:
            p = _mul_by_subspace(ctx, p, j)
        j += 1
    return p


def _long_divrem(ctx: BasisCtx, a: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Long division over X. X_l b has degree l + deg b and the leading coefficient of b,
    so subtracting c X_l b clears that index.
    """
    db = b.size - 1
    lead = int(b[-1])
    rem = np.array(a, dtype=ELEM_DTYPE)
    quot = np.zeros(a.size - db, dtype=ELEM_DTYPE)
    for l in range(quot.size - 1, -1, -1):
        top = int(rem[l + db])
        if top == 0:
            continue
        c = div(ctx.field, top, lead)
        quot[l] = c
        shifted = _mul_by_subspaces(ctx, b, l)
        rem[: shifted.size] ^= scale_vec(ctx.field, shifted, c)
    return trim(quot), trim(rem[:db])


def _mul_schoolbook(ctx: BasisCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return from_mono(ctx, mono_mul(ctx.field, to_mono(ctx, a), to_mono(ctx, b)))


def _mul_field(ctx: BasisCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of two nonzero trimmed polynomials with degree sum below 2^m."""
    if a.size == 1:
        return trim(scale_vec(ctx.field, b, int(a[0])))
    if b.size == 1:
        return trim(scale_vec(ctx.field, a, int(b[0])))
    top = a.size + b.size - 2
    if top < SCHOOLBOOK_DEGREE and top < ctx.mono_size:
        return _mul_schoolbook(ctx, a, b)
    k = top.bit_length()
    rows = np.zeros((2, 1 << k), dtype=ELEM_DTYPE)
    rows[0, : a.size] = a
    rows[1, : b.size] = b
    values = fft_x_batch(ctx, rows, k, 0)
    product = mul_vec(ctx.field, values[0], values[1])
    return trim(ifft_x_batch(ctx, product, k, 0)[0])


def _mul_wide(ctx: BasisCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product with degree sum in [2^m, 2^(m+2)), by blocks of 2^(m-1) coefficients."""
    shift = ctx.m - 1
    width = 1 << shift

    def blocks(p: np.ndarray):
        for u in range((p.size + width - 1) // width):
            part = trim(p[u * width : (u + 1) * width])
            if part.size:
                yield u, part

    out = np.zeros(a.size + b.size - 1, dtype=ELEM_DTYPE)
    b_blocks = list(blocks(b))
    for u, a_part in blocks(a):
        for w, b_part in b_blocks:
            prod = _mul_field(ctx, a_part, b_part)
            # X_{u 2^(m-1)} X_{w 2^(m-1)}, one subspace factor per set bit
            for owner in (u, w):
                bit = 0
                while owner >> bit:
                    if (owner >> bit) & 1:
                        prod = _mul_by_subspace(ctx, prod, shift + bit)
                    bit += 1
            _xor_into(out, prod)
    return trim(out)


def _mul_ext(ctx: BasisCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.size == 0 or b.size == 0:
        return _empty()
    top = a.size + b.size - 2
    if top < ctx.size:
        return _mul_field(ctx, a, b)
    if top < ctx.capacity:
        return _mul_wide(ctx, a, b)
    raise DegreeOverflowError(f"product degree {top} exceeds {ctx.capacity - 1}")


# Public operations


def shift_quotient(a: PolyX, i: int) -> PolyX:
    """Quotient of a by s_i for deg a < 2^(i+1): coefficient l of the result is a_{l + 2^i}."""
    return PolyX(a.coeffs[1 << i :])


def add(a: PolyX, b: PolyX) -> PolyX:
    return a + b


def scale(ctx: BasisCtx, a: PolyX, c: int) -> PolyX:
    return PolyX(scale_vec(ctx.field, a.coeffs, c))


def mul(ctx: BasisCtx, a: PolyX, b: PolyX) -> PolyX:
    """Exact product; deg a + deg b must stay below 2^m."""
    if a.is_zero or b.is_zero:
        return PolyX.zero()
    top = a.degree + b.degree
    if top >= ctx.size:
        raise DegreeOverflowError(f"product degree {top} does not fit GF(2^{ctx.m}) transforms")
    return PolyX(_mul_field(ctx, a.coeffs, b.coeffs))


def mul_sums(ctx: BasisCtx, operands: Sequence[PolyX], sums: Sequence[Sequence[Tuple[int, int]]]) -> List[PolyX]:
    """For each entry of ``sums``, the sum of operands[i] * operands[j] over its index pairs.

    Every operand is transformed once, in one batch, at the smallest level holding all the
    products; the sums are formed pointwise and come back in one batched inverse transform.
    Each product's degree must stay below 2^m, as for ``mul``.
    """
    tops = [
        operands[i].degree + operands[j].degree
        for pairs in sums
        for i, j in pairs
        if not (operands[i].is_zero or operands[j].is_zero)
    ]
    if not tops:
        return [PolyX.zero() for _ in sums]
    top = max(tops)
    if top >= ctx.size:
        raise DegreeOverflowError(f"product degree {top} does not fit GF(2^{ctx.m}) transforms")
    k = top.bit_length()
    rows = np.zeros((len(operands), 1 << k), dtype=ELEM_DTYPE)
    for row, p in zip(rows, operands):
        row[: len(p)] = p.coeffs
    values = fft_x_batch(ctx, rows, k, 0)
    acc = np.zeros((len(sums), 1 << k), dtype=ELEM_DTYPE)
    for out, pairs in zip(acc, sums):
        for i, j in pairs:
            out ^= mul_vec(ctx.field, values[i], values[j])
    return [PolyX(row) for row in ifft_x_batch(ctx, acc, k, 0)]


def mul_subspace(ctx: BasisCtx, p: PolyX, j: int) -> PolyX:
    """p * s_j for 0 <= j <= m + 1 (s_m = x^(2^m) - x, s_(m+1) = s_m^2)."""
    return PolyX(_mul_by_subspace(ctx, p.coeffs, j))


def mul_basis(ctx: BasisCtx, p: PolyX, y: int) -> PolyX:
    """p * X_y."""
    return PolyX(_mul_by_basis(ctx, p.coeffs, y))


def formal_derivative(ctx: BasisCtx, d: PolyX) -> PolyX:
    """Derivative via D' = [D0]' + s'_{k-1} D1 + s_{k-1} [D1]' applied level by level.

    Starting from zero (constants differentiate to zero), level r adds s'_{r-1} times the
    original high half of every 2^r block into its low half; the high half already holds
    [D1]', which the block layout multiplies by s_{r-1}.
    """
    if len(d) <= 1:
        return PolyX.zero()
    k = (len(d) - 1).bit_length()
    if k > ctx.m:
        raise DegreeOverflowError(f"degree {d.degree} exceeds the field size")
    src = d.padded(1 << k)
    out = np.zeros(1 << k, dtype=ELEM_DTYPE)
    for r in range(1, k + 1):
        half = 1 << (r - 1)
        view = out.reshape(-1, 2, half)
        orig = src.reshape(-1, 2, half)
        view[:, 0, :] ^= scale_vec(ctx.field, orig[:, 1, :], int(ctx.sderiv[r - 1]))
    return PolyX(out)


def newton_lambda(ctx: BasisCtx, B: PolyX) -> PolyX:
    """Lambda with Lambda * s_1 * B = s_(D+1) + H, deg H <= 2^D, for deg B = 2^D - 1.

    Each round squares the previous Lambda, multiplies by the top 2^i coefficients of B
    and by s_1, keeps coefficients [2^i, 2^(i+1)) and folds the upper half of those into
    the lower half scaled by s_{i-1}(v_{i-1}).
    """
    if B.is_zero:
        raise NewtonInputError("newton_lambda needs a nonzero polynomial")
    size = len(B)
    if size & (size - 1):
        raise NewtonInputError(f"degree {B.degree} is not of the form 2^j - 1")
    levels = size.bit_length() - 1
    b = B.coeffs
    lam = np.array([inv(ctx.field, int(b[-1]))], dtype=ELEM_DTYPE)
    for i in range(1, levels + 1):
        b_i = b[size - (1 << i) :]
        bar = _mul_ext(ctx, _mul_ext(ctx, lam, lam), b_i)
        bar = _mul_by_subspace(ctx, bar, 1)
        nxt = np.zeros(1 << i, dtype=ELEM_DTYPE)
        upper = bar[1 << i : 1 << (i + 1)]
        nxt[: upper.size] = upper
        half = 1 << (i - 1)
        nxt[:half] ^= scale_vec(ctx.field, nxt[half:], int(ctx.sv[i - 1]))
        lam = trim(nxt)
    result = PolyX(lam)
    if DEBUG_CHECKS:
        residual = lambda_residual(ctx, result, B)
        if not residual.is_zero and residual.degree > size:
            raise InvariantViolation(f"Newton residual degree {residual.degree} exceeds {size}")
    return result


def lambda_residual(ctx: BasisCtx, lam: PolyX, B: PolyX) -> PolyX:
    """H = Lambda * s_1 * B - s_(D+1) for deg B = 2^D - 1."""
    levels = len(B).bit_length() - 1
    prod = _mul_by_subspace(ctx, _mul_ext(ctx, lam.coeffs, B.coeffs), 1)
    return PolyX(prod) + PolyX.unit(1 << (levels + 1))


def divrem(ctx: BasisCtx, a: PolyX, b: PolyX) -> Tuple[PolyX, PolyX]:
    """Quotient and remainder of a by b, a = Q b + r with deg r < deg b.

    For deg a > deg b > 0 both operands are lifted by X_y so the divisor has degree
    2^D - 1, the Newton inverse of the lifted divisor is formed, and the quotient is read
    off the product A * Lambda * s_1 above index 2^(D+1). Quotients shorter than
    RSXF_DIVREM_LONG_QUOTIENT come from long division instead, which needs only
    subspace-polynomial products.
    """
    if b.is_zero:
        raise GFZeroDivisionError("division by the zero polynomial")
    if a.is_zero:
        return PolyX.zero(), PolyX.zero()
    da, db = a.degree, b.degree
    if da < db:
        return PolyX.zero(), a
    if db == 0:
        return scale(ctx, a, inv(ctx.field, b.leading)), PolyX.zero()
    if da == db:
        c = div(ctx.field, a.leading, b.leading)
        return PolyX.unit(0, c), a + scale(ctx, b, c)
    if da - db < DIVREM_LONG_QUOTIENT:
        q, r = _long_divrem(ctx, a.coeffs, b.coeffs)
        quotient, remainder = PolyX(q), PolyX(r)
        if DEBUG_CHECKS and PolyX(_mul_ext(ctx, q, b.coeffs)) + remainder != a:
            raise InvariantViolation("long division does not reproduce the dividend")
        return quotient, remainder

    levels = da.bit_length()
    y = (1 << levels) - db - 1
    A = _mul_by_basis(ctx, a.coeffs, y)
    B = PolyX(_mul_by_basis(ctx, b.coeffs, y))
    top_level = (A.size - 1).bit_length()
    if top_level != levels + 1:
        raise InvariantViolation(f"lifted dividend level {top_level} != {levels + 1}")

    lam = newton_lambda(ctx, B)
    prod = _mul_by_subspace(ctx, _mul_ext(ctx, A, lam.coeffs), 1)
    quotient = PolyX(prod[1 << top_level :])
    remainder = a + PolyX(_mul_ext(ctx, quotient.coeffs, b.coeffs))

    if DEBUG_CHECKS:
        if not remainder.is_zero and remainder.degree >= db:
            raise InvariantViolation(f"remainder degree {remainder.degree} >= divisor degree {db}")
        # Q H + R Lambda s_1 stays below s_(D+1)
        H = lambda_residual(ctx, lam, B)
        lifted_r = _mul_by_basis(ctx, remainder.coeffs, y)
        lhs = PolyX(_mul_ext(ctx, quotient.coeffs, H.coeffs)) + PolyX(
            _mul_by_subspace(ctx, _mul_ext(ctx, lifted_r, lam.coeffs), 1)
        )
        if not lhs.is_zero and lhs.degree > (1 << top_level) - 1:
            raise InvariantViolation(f"quotient bound violated: degree {lhs.degree}")
    return quotient, remainder
