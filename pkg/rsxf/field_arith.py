"""
Arithmetic in GF(2^m), 2 <= m <= 16.

Elements are plain unsigned integers (bit patterns of polynomials over GF(2)).
Scalar helpers work on Python ints; the ``*_vec`` helpers work on numpy arrays
and are what the transforms use.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from rsxf.errors import FieldConstructionError, GFZeroDivisionError


logger = logging.getLogger("rsxf.field_arith")

MIN_M = 2
MAX_M = 16

ELEM_DTYPE = np.uint16

# Primitive reduction polynomials, bit i = coefficient of y^i.
DEFAULT_POLYS = {
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
}


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """Log/exp tables for one GF(2^m).

    ``log_table[0]`` points into a zero tail of ``exp_table`` so that
    ``exp_table[log_table[a] + log_table[b]]`` is the product for every a, b,
    zero included.
    """

    m: int
    reduction_poly: int
    log_table: np.ndarray
    exp_table: np.ndarray

    @property
    def size(self) -> int:
        return 1 << self.m

    @property
    def order(self) -> int:
        """Order of the multiplicative group."""
        return (1 << self.m) - 1

    def __repr__(self) -> str:
        return f"FieldCtx(m={self.m}, reduction_poly={self.reduction_poly:#x})"


def build_ctx(m: int, reduction_poly: Optional[int] = None) -> FieldCtx:
    """Build and validate the tables for GF(2^m).

    Args:
        m: Field dimension, 2 <= m <= 16.
        reduction_poly: (m+1)-bit pattern of the reduction polynomial. Defaults to
            the entry of ``DEFAULT_POLYS``.

    Returns:
        An immutable FieldCtx.

    Raises:
        FieldConstructionError: m out of range, wrong polynomial degree, or the
            powers of y do not cycle through all 2^m - 1 nonzero elements.
    """
    if not MIN_M <= m <= MAX_M:
        raise FieldConstructionError(f"m must be in [{MIN_M}, {MAX_M}], got {m}")
    poly = DEFAULT_POLYS[m] if reduction_poly is None else int(reduction_poly)
    if poly >> m != 1:
        raise FieldConstructionError(f"reduction polynomial {poly:#x} does not have degree {m}")

    size = 1 << m
    order = size - 1
    zero_log = 2 * order

    log_table = np.full(size, -1, dtype=np.int64)
    exp_table = np.zeros(4 * order + 1, dtype=ELEM_DTYPE)

    x = 1
    for i in range(order):
        if x == 0 or log_table[x] != -1:
            raise FieldConstructionError(
                f"reduction polynomial {poly:#x} is not primitive for m={m}: cycle length {i}"
            )
        exp_table[i] = x
        log_table[x] = i
        x <<= 1
        if x & size:
            x ^= poly
    if x != 1:
        raise FieldConstructionError(
            f"reduction polynomial {poly:#x} is not primitive for m={m}: y^{order} != 1"
        )

    exp_table[order : 2 * order] = exp_table[:order]
    log_table[0] = zero_log
    log_table = log_table.astype(np.int32)

    log_table.setflags(write=False)
    exp_table.setflags(write=False)
    logger.debug("built GF(2^%d) with reduction polynomial %#x", m, poly)
    return FieldCtx(m=m, reduction_poly=poly, log_table=log_table, exp_table=exp_table)


@lru_cache(maxsize=None)
def default_ctx(m: int) -> FieldCtx:
    """Shared context for the default polynomial of GF(2^m)."""
    return build_ctx(m)


def add(a: int, b: int) -> int:
    return a ^ b


sub = add


def mul(ctx: FieldCtx, a: int, b: int) -> int:
    return int(ctx.exp_table[ctx.log_table[a] + ctx.log_table[b]])


def inv(ctx: FieldCtx, a: int) -> int:
    if a == 0:
        raise GFZeroDivisionError("zero has no multiplicative inverse")
    return int(ctx.exp_table[ctx.order - ctx.log_table[a]])


def div(ctx: FieldCtx, a: int, b: int) -> int:
    if b == 0:
        raise GFZeroDivisionError("division by zero field element")
    if a == 0:
        return 0
    return int(ctx.exp_table[ctx.log_table[a] + ctx.order - ctx.log_table[b]])


def power(ctx: FieldCtx, a: int, e: int) -> int:
    if e == 0:
        return 1
    if a == 0:
        return 0
    return int(ctx.exp_table[(int(ctx.log_table[a]) * e) % ctx.order])


# Vectorised helpers


def mul_vec(ctx: FieldCtx, a, b) -> np.ndarray:
    """Elementwise product; broadcasts like numpy."""
    return ctx.exp_table[ctx.log_table[a] + ctx.log_table[b]]


def scale_vec(ctx: FieldCtx, a: np.ndarray, c: int) -> np.ndarray:
    if c == 0:
        return np.zeros_like(a, dtype=ELEM_DTYPE)
    if c == 1:
        return np.array(a, dtype=ELEM_DTYPE)
    return ctx.exp_table[ctx.log_table[a] + ctx.log_table[c]]


def inv_vec(ctx: FieldCtx, a: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    if np.any(a == 0):
        raise GFZeroDivisionError("zero has no multiplicative inverse")
    return ctx.exp_table[ctx.order - ctx.log_table[a]]


def div_vec(ctx: FieldCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return mul_vec(ctx, a, inv_vec(ctx, b))


def dot_rows(ctx: FieldCtx, matrix: np.ndarray, vec: np.ndarray) -> np.ndarray:
    """Matrix-vector product over GF(2^m)."""
    if vec.size == 0:
        return np.zeros(matrix.shape[0], dtype=ELEM_DTYPE)
    return np.bitwise_xor.reduce(mul_vec(ctx, matrix, vec[None, :]), axis=1).astype(ELEM_DTYPE)
