"""
Subspace polynomials and the polynomial bases X / X-bar built on them.

For a basis v_0..v_{m-1} of GF(2^m) over GF(2), V_j is the span of the first j
elements and s_j(x) is the monic polynomial vanishing exactly on V_j. The
basis polynomial X_i is the product of s_j over the set bits j of i, and
X-bar_i = X_i / p_i with p_i the product of s_j(v_j) over the same bits.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from rsxf.config import HGCD_CUTOVER
from rsxf.errors import BasisConstructionError, DegreeOverflowError, TransformSizeError
from rsxf.field_arith import (
    ELEM_DTYPE,
    FieldCtx,
    default_ctx,
    dot_rows,
    inv,
    inv_vec,
    mul,
    mul_vec,
    scale_vec,
)


logger = logging.getLogger("rsxf.basis_ctx")


def trim(coeffs: np.ndarray) -> np.ndarray:
    """Drop trailing zero coefficients."""
    nz = np.flatnonzero(coeffs)
    if nz.size == 0:
        return coeffs[:0]
    return coeffs[: nz[-1] + 1]


@dataclass(frozen=True, eq=False)
class _BasisPoly:
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        arr = trim(np.asarray(self.coeffs, dtype=ELEM_DTYPE)).copy()
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @classmethod
    def zero(cls):
        return cls(np.zeros(0, dtype=ELEM_DTYPE))

    @classmethod
    def one(cls):
        return cls(np.ones(1, dtype=ELEM_DTYPE))

    @classmethod
    def unit(cls, index: int, value: int = 1):
        """The basis polynomial at ``index`` scaled by ``value``."""
        arr = np.zeros(index + 1, dtype=ELEM_DTYPE)
        arr[index] = value
        return cls(arr)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]):
        return cls(np.fromiter((int(c) for c in coeffs), dtype=ELEM_DTYPE))

    @property
    def is_zero(self) -> bool:
        return self.coeffs.size == 0

    @property
    def degree(self) -> Optional[int]:
        """Index of the top nonzero coefficient; None for the zero polynomial."""
        if self.coeffs.size == 0:
            return None
        return self.coeffs.size - 1

    @property
    def leading(self) -> int:
        return int(self.coeffs[-1]) if self.coeffs.size else 0

    def coeff(self, i: int) -> int:
        return int(self.coeffs[i]) if i < self.coeffs.size else 0

    def padded(self, length: int) -> np.ndarray:
        if self.coeffs.size > length:
            raise DegreeOverflowError(f"polynomial of degree {self.degree} does not fit in {length} coefficients")
        out = np.zeros(length, dtype=ELEM_DTYPE)
        out[: self.coeffs.size] = self.coeffs
        return out

    def to_list(self) -> list:
        return [int(c) for c in self.coeffs]

    def __len__(self) -> int:
        return int(self.coeffs.size)

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        size = max(self.coeffs.size, other.coeffs.size)
        out = np.zeros(size, dtype=ELEM_DTYPE)
        out[: self.coeffs.size] ^= self.coeffs
        out[: other.coeffs.size] ^= other.coeffs
        return type(self)(out)

    __sub__ = __add__

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_list()})"


class PolyX(_BasisPoly):
    """Coefficients over the monic basis X; coefficient i multiplies X_i(x)."""


class PolyXbar(_BasisPoly):
    """Coefficients over the normalized basis X-bar; coefficient i multiplies X-bar_i(x)."""


@dataclass(frozen=True, eq=False)
class BasisCtx:
    """Basis-dependent tables.

    ``twiddle[j, i]`` holds s_j(omega_i) / s_j(v_j). ``to_mono`` / ``from_mono``
    convert the first ``mono_size`` coefficients between the X basis and the
    monomial basis.
    """

    field: FieldCtx
    v: Tuple[int, ...]
    sv: np.ndarray
    sderiv: np.ndarray
    twiddle: np.ndarray
    omega_table: np.ndarray
    index_of: np.ndarray
    norm: np.ndarray
    norm_inv: np.ndarray
    to_mono: np.ndarray
    from_mono: np.ndarray

    @property
    def m(self) -> int:
        return self.field.m

    @property
    def size(self) -> int:
        return self.field.size

    @property
    def mono_size(self) -> int:
        return int(self.to_mono.shape[0])

    @property
    def top_level(self) -> int:
        """Highest subspace level usable in products: s_m and s_{m+1} = s_m^2."""
        return self.field.m + 1

    @property
    def capacity(self) -> int:
        """Exclusive degree bound for polynomials handled by the product routines."""
        return 1 << (self.field.m + 2)

    def level_constant(self, j: int) -> int:
        """c_j in s_{j+1} = s_j^2 + c_j s_j; zero for the formal levels j >= m."""
        if j < self.field.m:
            return int(self.sv[j])
        return 0

    def __repr__(self) -> str:
        return f"BasisCtx(m={self.m}, v={list(self.v)})"


def _subspace_monomials(field: FieldCtx, sv: np.ndarray, levels: int) -> list:
    """Monomial coefficients of s_0..s_levels."""
    polys = [np.array([0, 1], dtype=ELEM_DTYPE)]
    for j in range(levels):
        prev = polys[-1]
        nxt = np.zeros(2 * prev.size - 1, dtype=ELEM_DTYPE)
        nxt[::2] = mul_vec(field, prev, prev)
        nxt[: prev.size] ^= scale_vec(field, prev, int(sv[j]))
        polys.append(nxt)
    return polys


def _mono_tables(field: FieldCtx, sv: np.ndarray, levels: int) -> Tuple[np.ndarray, np.ndarray]:
    size = 1 << levels
    subspace = _subspace_monomials(field, sv, levels)
    to_mono = np.zeros((size, size), dtype=ELEM_DTYPE)
    to_mono[0, 0] = 1
    for i in range(1, size):
        top = i.bit_length() - 1
        rest = to_mono[: i - (1 << top) + 1, i - (1 << top)]
        factor = subspace[top]
        col = np.zeros(size, dtype=ELEM_DTYPE)
        for shift in np.flatnonzero(factor):
            col[shift : shift + rest.size] ^= scale_vec(field, rest, int(factor[shift]))
        to_mono[:, i] = col

    # X_d is monic of degree d, so x^d = X_d + sum_{k<d} to_mono[k, d] x^k.
    from_mono = np.zeros((size, size), dtype=ELEM_DTYPE)
    for d in range(size):
        col = dot_rows(field, from_mono[:, :d], to_mono[:d, d])
        col[d] ^= 1
        from_mono[:, d] = col
    return to_mono, from_mono


def build_basis(field: FieldCtx, v: Optional[Sequence[int]] = None) -> BasisCtx:
    """Build the subspace-polynomial tables for basis ``v``.

    Args:
        field: Field context.
        v: m field elements; defaults to the unit vectors (v_j = 1 << j).

    Raises:
        BasisConstructionError: wrong length, out-of-range element, or linearly
            dependent elements (some s_j(v_j) = 0).
    """
    m = field.m
    size = field.size
    basis = tuple(int(x) for x in (v if v is not None else [1 << j for j in range(m)]))
    if len(basis) != m:
        raise BasisConstructionError(f"basis needs {m} elements, got {len(basis)}")
    if any(not 0 <= x < size for x in basis):
        raise BasisConstructionError("basis elements must be field elements")

    omega = np.zeros(size, dtype=ELEM_DTYPE)
    for j, vj in enumerate(basis):
        step = 1 << j
        omega[step : 2 * step] = omega[:step] ^ vj

    sv = np.zeros(m, dtype=ELEM_DTYPE)
    twiddle = np.zeros((m, size), dtype=ELEM_DTYPE)
    values = omega.copy()
    for j in range(m):
        svj = int(values[1 << j])
        if svj == 0:
            raise BasisConstructionError(f"basis is linearly dependent: s_{j}(v_{j}) = 0")
        sv[j] = svj
        twiddle[j] = scale_vec(field, values, inv(field, svj))
        values = mul_vec(field, values, values ^ svj)

    index_of = np.zeros(size, dtype=np.int64)
    index_of[omega] = np.arange(size)

    sderiv = np.ones(m + 1, dtype=ELEM_DTYPE)
    for j in range(m):
        sderiv[j + 1] = mul(field, int(sderiv[j]), int(sv[j]))

    norm = np.ones(size, dtype=ELEM_DTYPE)
    for j in range(m):
        step = 1 << j
        norm[step : 2 * step] = scale_vec(field, norm[:step], int(sv[j]))
    norm_inv = inv_vec(field, norm)

    levels = min(m, max(HGCD_CUTOVER, 3))
    to_mono, from_mono = _mono_tables(field, sv, levels)

    for table in (sv, sderiv, twiddle, omega, index_of, norm, norm_inv, to_mono, from_mono):
        table.setflags(write=False)
    logger.debug("built basis for GF(2^%d): v=%s", m, list(basis))
    return BasisCtx(
        field=field,
        v=basis,
        sv=sv,
        sderiv=sderiv,
        twiddle=twiddle,
        omega_table=omega,
        index_of=index_of,
        norm=norm,
        norm_inv=norm_inv,
        to_mono=to_mono,
        from_mono=from_mono,
    )


@lru_cache(maxsize=None)
def default_basis(m: int) -> BasisCtx:
    """Unit-vector basis over the default field; omega_i = i."""
    return build_basis(default_ctx(m))


def omega(ctx: BasisCtx, i: int) -> int:
    return int(ctx.omega_table[i])


def subspace_eval(ctx: BasisCtx, j: int, x: int) -> int:
    """s_j(x) by j steps of s_{i+1}(x) = s_i(x) (s_i(x) + s_i(v_i))."""
    if not 0 <= j <= ctx.m:
        raise TransformSizeError(f"subspace level must be in [0, {ctx.m}], got {j}")
    y = int(x)
    for i in range(j):
        y = mul(ctx.field, y, y ^ int(ctx.sv[i]))
    return y


def norm_const(ctx: BasisCtx, i: int) -> int:
    return int(ctx.norm[i])


def xbar_to_x(ctx: BasisCtx, p: PolyXbar) -> PolyX:
    n = len(p)
    return PolyX(mul_vec(ctx.field, p.coeffs, ctx.norm_inv[:n]))


def x_to_xbar(ctx: BasisCtx, p: PolyX) -> PolyXbar:
    n = len(p)
    return PolyXbar(mul_vec(ctx.field, p.coeffs, ctx.norm[:n]))
