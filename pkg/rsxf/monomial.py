"""Monomial-basis helpers for small degrees: basis conversion, schoolbook product, long division."""

from __future__ import annotations

from typing import Tuple

import numpy as np

from rsxf.basis_ctx import BasisCtx, trim
from rsxf.errors import DegreeOverflowError, GFZeroDivisionError
from rsxf.field_arith import ELEM_DTYPE, FieldCtx, dot_rows, inv, mul, mul_vec, scale_vec


def to_mono(ctx: BasisCtx, coeffs: np.ndarray) -> np.ndarray:
    """X-basis coefficients to monomial coefficients (length <= ctx.mono_size)."""
    n = coeffs.size
    if n > ctx.mono_size:
        raise DegreeOverflowError(f"monomial conversion limited to {ctx.mono_size} coefficients, got {n}")
    return trim(dot_rows(ctx.field, ctx.to_mono[:n, :n], coeffs))


def from_mono(ctx: BasisCtx, coeffs: np.ndarray) -> np.ndarray:
    n = coeffs.size
    if n > ctx.mono_size:
        raise DegreeOverflowError(f"monomial conversion limited to {ctx.mono_size} coefficients, got {n}")
    return trim(dot_rows(ctx.field, ctx.from_mono[:n, :n], coeffs))


def mono_mul(field: FieldCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.size == 0 or b.size == 0:
        return np.zeros(0, dtype=ELEM_DTYPE)
    if a.size > b.size:
        a, b = b, a
    out = np.zeros(a.size + b.size - 1, dtype=ELEM_DTYPE)
    for i in np.flatnonzero(a):
        out[i : i + b.size] ^= scale_vec(field, b, int(a[i]))
    return trim(out)


def mono_divrem(field: FieldCtx, a: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    b = trim(b)
    if b.size == 0:
        raise GFZeroDivisionError("division by the zero polynomial")
    rem = trim(np.array(a, dtype=ELEM_DTYPE))
    if rem.size < b.size:
        return np.zeros(0, dtype=ELEM_DTYPE), rem
    lead_inv = inv(field, int(b[-1]))
    quot = np.zeros(rem.size - b.size + 1, dtype=ELEM_DTYPE)
    for shift in range(quot.size - 1, -1, -1):
        top = int(rem[shift + b.size - 1])
        if top == 0:
            continue
        c = mul(field, top, lead_inv)
        quot[shift] = c
        rem[shift : shift + b.size] ^= scale_vec(field, b, c)
    return trim(quot), trim(rem[: b.size - 1])


def mono_derivative(coeffs: np.ndarray) -> np.ndarray:
    """Formal derivative in characteristic 2: odd-degree terms shift down, even ones vanish."""
    if coeffs.size <= 1:
        return np.zeros(0, dtype=ELEM_DTYPE)
    out = np.array(coeffs[1:], dtype=ELEM_DTYPE)
    out[1::2] = 0
    return trim(out)


def mono_eval(field: FieldCtx, coeffs: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Horner evaluation at every point."""
    acc = np.zeros(np.shape(points), dtype=ELEM_DTYPE)
    for c in coeffs[::-1]:
        acc = mul_vec(field, acc, points) ^ ELEM_DTYPE(c)
    return acc
