"""
Half-GCD in the basis X and the key-equation solver built on it.

``hgcd(a, b, g)`` returns Z = M [a; b] with deg z0 >= 2^(g-1) > deg z1, where M is the
product of the Euclid steps taken. Inputs are split at s_{g-2} and s_{g-1}; the upper
parts drive the recursion and the lower parts are folded back afterwards. In
characteristic 2, -q = q, so the Euclid step matrix is [[0, 1], [1, q]].
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from rsxf.basis_ctx import BasisCtx, PolyX, trim
from rsxf.config import HGCD_CUTOVER
from rsxf.errors import HgcdPreconditionError, KeyEquationError
from rsxf.field_arith import ELEM_DTYPE, scale_vec
from rsxf.monomial import from_mono, mono_divrem, to_mono
from rsxf.poly_ops import divrem, mul, mul_subspace, mul_sums, scale


logger = logging.getLogger("rsxf.halfgcd")


@dataclass(frozen=True)
class PolyVec2:
    z0: PolyX
    z1: PolyX


@dataclass(frozen=True)
class PolyMat2:
    m00: PolyX
    m01: PolyX
    m10: PolyX
    m11: PolyX

    @classmethod
    def identity(cls) -> "PolyMat2":
        return cls(PolyX.one(), PolyX.zero(), PolyX.zero(), PolyX.one())

    def apply(self, ctx: BasisCtx, a: PolyX, b: PolyX) -> PolyVec2:
        """M [a; b]."""
        z0, z1 = mul_sums(ctx, (self.m00, self.m01, self.m10, self.m11, a, b), _APPLY)
        return PolyVec2(z0, z1)

    def matmul(self, ctx: BasisCtx, other: "PolyMat2") -> "PolyMat2":
        operands = (self.m00, self.m01, self.m10, self.m11, other.m00, other.m01, other.m10, other.m11)
        return PolyMat2(*mul_sums(ctx, operands, _MATMUL))

    def euclid_step(self, ctx: BasisCtx, q: PolyX) -> "PolyMat2":
        """[[0, 1], [1, q]] M."""
        q10, q11 = mul_sums(ctx, (q, self.m10, self.m11), _EUCLID)
        return PolyMat2(self.m10, self.m11, self.m00 + q10, self.m01 + q11)


# Index pairs into the operand tuples above for ``mul_sums``.
_APPLY = (((0, 4), (1, 5)), ((2, 4), (3, 5)))
_MATMUL = (
    ((0, 4), (1, 6)),
    ((0, 5), (1, 7)),
    ((2, 4), (3, 6)),
    ((2, 5), (3, 7)),
)
_EUCLID = (((0, 1),), ((0, 2),))


def _below(p: PolyX, bound: int) -> bool:
    """deg p < bound, with the zero polynomial below every bound."""
    return p.is_zero or p.degree < bound


def split3(ctx: BasisCtx, a: PolyX, g: int) -> Tuple[PolyX, PolyX, PolyX]:
    """a = a_LL + s_{g-2} a_LH + s_{g-1} a_H for deg a <= 2^g - 1, g >= 2."""
    if g < 2:
        raise HgcdPreconditionError(f"three-way split needs g >= 2, got {g}")
    if not _below(a, 1 << g):
        raise HgcdPreconditionError(f"degree {a.degree} exceeds 2^{g} - 1")
    quarter, half = 1 << (g - 2), 1 << (g - 1)
    c = a.coeffs
    return PolyX(c[:quarter]), PolyX(c[quarter:half]), PolyX(c[half:])


def mid_form(ctx: BasisCtx, lh: PolyX, h: PolyX, g: int) -> PolyX:
    """a_LH + (s_{g-2} + s_{g-2}(v_{g-2})) a_H, the quotient of a by s_{g-2}."""
    j = g - 2
    return lh + mul_subspace(ctx, h, j) + scale(ctx, h, ctx.level_constant(j))


def _check_inputs(a: PolyX, b: PolyX, g: int) -> None:
    if g < 0:
        raise HgcdPreconditionError(f"level must be non-negative, got {g}")
    if a.is_zero:
        if not b.is_zero:
            raise HgcdPreconditionError("deg b exceeds deg a")
        return
    if a.degree > (1 << g) - 1:
        raise HgcdPreconditionError(f"deg a = {a.degree} exceeds 2^{g} - 1")
    if not b.is_zero and b.degree > a.degree:
        raise HgcdPreconditionError(f"deg b = {b.degree} exceeds deg a = {a.degree}")


def hgcd(ctx: BasisCtx, a: PolyX, b: PolyX, g: int, cutover: Optional[int] = None) -> Tuple[PolyVec2, PolyMat2]:
    """Half-GCD of (a, b) at level g.

    Args:
        ctx: Basis context.
        a, b: deg b <= deg a <= 2^g - 1.
        g: Level; the result stops at the first remainder of degree below 2^(g-1).
        cutover: Levels at or below this use the classic Euclid loop; defaults to
            RSXF_HGCD_CUTOVER. 0 runs the recursion all the way down.

    Returns:
        (Z, M) with Z = M [a; b], deg z0 >= 2^(g-1) (unless the input was already
        reduced), deg z1 <= 2^(g-1) - 1, deg m11 <= deg a - deg z0 and the row/column
        degree dominance of M.
    """
    limit = HGCD_CUTOVER if cutover is None else cutover
    _check_inputs(a, b, g)
    return _hgcd(ctx, a, b, g, limit)


def _hgcd(ctx: BasisCtx, a: PolyX, b: PolyX, g: int, cutover: int) -> Tuple[PolyVec2, PolyMat2]:
    _check_inputs(a, b, g)
    if g == 0 or _below(b, 1 << (g - 1)):
        return PolyVec2(a, b), PolyMat2.identity()
    if g <= cutover and (1 << g) <= ctx.mono_size:
        return _hgcd_classic(ctx, a, b, g)

    half = 1 << (g - 1)
    a_low, a_high = PolyX(a.coeffs[:half]), PolyX(a.coeffs[half:])
    b_low, b_high = PolyX(b.coeffs[:half]), PolyX(b.coeffs[half:])

    z_high, m_high = _hgcd(ctx, a_high, b_high, g - 1, cutover)
    folded = m_high.apply(ctx, a_low, b_low)
    zm0 = mul_subspace(ctx, z_high.z0, g - 1) + folded.z0
    zm1 = mul_subspace(ctx, z_high.z1, g - 1) + folded.z1
    if _below(zm1, half):
        return PolyVec2(zm0, zm1), m_high

    q, r = divrem(ctx, zm0, zm1)
    stepped = m_high.euclid_step(ctx, q)
    if g == 1:
        return PolyVec2(zm1, r), stepped

    z_ll, z_lh, z_h = split3(ctx, zm1, g)
    r_ll, r_lh, r_h = split3(ctx, r, g)
    y_mid, m_mid = _hgcd(ctx, mid_form(ctx, z_lh, z_h, g), mid_form(ctx, r_lh, r_h, g), g - 1, cutover)
    folded = m_mid.apply(ctx, z_ll, r_ll)
    z0 = mul_subspace(ctx, y_mid.z0, g - 2) + folded.z0
    z1 = mul_subspace(ctx, y_mid.z1, g - 2) + folded.z1
    return PolyVec2(z0, z1), m_mid.matmul(ctx, stepped)


def _hgcd_classic(ctx: BasisCtx, a: PolyX, b: PolyX, g: int) -> Tuple[PolyVec2, PolyMat2]:
    """Euclid loop on monomial images until the remainder drops below 2^(g-1).

    The matrix rows are kept as two stacked arrays, [m00; m01] and [m10; m11], and updated
    together. Every entry has degree below 2^g.
    """
    field = ctx.field
    half = 1 << (g - 1)
    width = 1 << g
    r0, r1 = to_mono(ctx, a.coeffs), to_mono(ctx, b.coeffs)
    row0 = np.zeros((2, width), dtype=ELEM_DTYPE)
    row1 = np.zeros((2, width), dtype=ELEM_DTYPE)
    row0[0, 0] = row1[1, 0] = 1
    while r1.size > half:
        q, r = mono_divrem(field, r0, r1)
        r0, r1 = r1, r
        nxt = row0.copy()
        for i in np.flatnonzero(q):
            nxt[:, i:] ^= scale_vec(field, row1[:, : width - i], int(q[i]))
        row0, row1 = row1, nxt
    z = [PolyX(from_mono(ctx, p)) for p in (r0, r1)]
    entries = [PolyX(from_mono(ctx, trim(p))) for p in (row0[0], row0[1], row1[0], row1[1])]
    return PolyVec2(*z), PolyMat2(*entries)


def key_equation_residual(ctx: BasisCtx, s: PolyX, lam: PolyX, q: PolyX, t: int) -> PolyX:
    """z = lambda s + q s_t."""
    return mul(ctx, lam, s) + mul_subspace(ctx, q, t)


def solve_key_equation(ctx: BasisCtx, s: PolyX, t: int) -> Tuple[PolyX, PolyX]:
    """Error locator and evaluator cofactor (lambda, q) for a syndrome of length 2^t.

    Returns lambda and q with deg(lambda s + q s_t) <= 2^(t-1) - 1 and
    deg lambda <= 2^(t-1). The remainder that the half-GCD calls z1 is the one the
    key equation needs.
    """
    if s.is_zero:
        raise KeyEquationError("zero syndrome has no error locator")
    T = 1 << t
    if 2 * T > ctx.size:
        raise KeyEquationError(f"parity count {T} exceeds half the code length")
    half = T // 2
    if s.degree < half:
        logger.debug("syndrome degree %d below %d: no locator of positive degree", s.degree, half)
        return PolyX.one(), PolyX.zero()

    q_t, r_t = divrem(ctx, PolyX.unit(T), s)
    if _below(r_t, half):
        return q_t, PolyX.one()

    _, m = hgcd(ctx, s, r_t, t)
    lam = m.m10 + mul(ctx, m.m11, q_t)
    return lam, m.m11
