"""
Slow reference implementations for the equivalence tests and the self-test runner.

Nothing here imports the transform, product, division or half-GCD code: subspace
polynomials are expanded in the monomial basis from their defining recursion and all
arithmetic is schoolbook, so a disagreement points at the fast path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple, Union
from weakref import WeakKeyDictionary

import numpy as np

from rsxf.basis_ctx import BasisCtx, PolyX, PolyXbar
from rsxf.errors import GFZeroDivisionError
from rsxf.field_arith import ELEM_DTYPE, FieldCtx, div, inv, mul, mul_vec, scale_vec


def _trim(coeffs: Sequence[int]) -> Tuple[int, ...]:
    out = [int(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class PolyMono:
    """Coefficients in the standard monomial basis, constant term first."""

    coeffs: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "PolyMono") -> "PolyMono":
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (size - len(self.coeffs))
        b = other.coeffs + (0,) * (size - len(other.coeffs))
        return PolyMono(tuple(x ^ y for x, y in zip(a, b)))

    __sub__ = __add__


def carryless_mul(field: FieldCtx, a: int, b: int) -> int:
    """Shift-and-add product reduced by the field polynomial, without the log tables."""
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a >> field.m:
            a ^= field.reduction_poly
    return acc


# Subspace polynomials


def _subspace_values(ctx: BasisCtx, x: int, upto: int) -> List[int]:
    """[s_0(x), ..., s_upto(x)] by s_{j+1}(x) = s_j(x) (s_j(x) + s_j(v_j))."""
    field = ctx.field
    at_v = [_level_constant(ctx, j) for j in range(upto)]
    vals = [int(x)]
    for j in range(upto):
        y = vals[-1]
        vals.append(mul(field, y, y ^ at_v[j]))
    return vals


def _subspace_at(ctx: BasisCtx, j: int, x: int) -> int:
    """s_j(x) as the product of (x - w) over the span of v_0 .. v_{j-1}."""
    field = ctx.field
    span = [0]
    for vj in ctx.v[:j]:
        span += [w ^ vj for w in span]
    acc = 1
    for w in span:
        acc = mul(field, acc, int(x) ^ w)
    return acc


_LEVEL_CONSTANTS: "WeakKeyDictionary[BasisCtx, List[int]]" = WeakKeyDictionary()


def _level_constant(ctx: BasisCtx, j: int) -> int:
    """s_j(v_j), from the root product."""
    known = _LEVEL_CONSTANTS.setdefault(ctx, [])
    while len(known) <= j:
        i = len(known)
        known.append(_subspace_at(ctx, i, ctx.v[i]))
    return known[j]


_EXPANSIONS: "WeakKeyDictionary[BasisCtx, Dict[int, Tuple[int, ...]]]" = WeakKeyDictionary()


def _subspace_mono(ctx: BasisCtx, j: int) -> Tuple[int, ...]:
    """Monomial coefficients of s_j, built from s_0 = x by squaring and adding."""
    field = ctx.field
    cache = _EXPANSIONS.setdefault(ctx, {})
    key = -1 - j
    if key in cache:
        return cache[key]
    if j == 0:
        poly = (0, 1)
    else:
        prev = _subspace_mono(ctx, j - 1)
        c = _level_constant(ctx, j - 1)
        sq = [0] * (2 * len(prev) - 1)
        for i, p in enumerate(prev):
            sq[2 * i] = mul(field, p, p)
        for i, p in enumerate(prev):
            sq[i] ^= mul(field, c, p)
        poly = _trim(sq)
    cache[key] = poly
    return poly


def basis_mono(ctx: BasisCtx, i: int) -> Tuple[int, ...]:
    """Monomial coefficients of X_i."""
    cache = _EXPANSIONS.setdefault(ctx, {})
    if i in cache:
        return cache[i]
    if i == 0:
        poly = (1,)
    else:
        top = i.bit_length() - 1
        rest = PolyMono(basis_mono(ctx, i - (1 << top)))
        poly = mono_mul(ctx.field, rest, PolyMono(_subspace_mono(ctx, top))).coeffs
    cache[i] = poly
    return poly


# Evaluation


def eval_basis_fn(ctx: BasisCtx, i: int, a: int, normalized: bool = False) -> int:
    """X_i(a), or X-bar_i(a) when ``normalized``."""
    field = ctx.field
    levels = max(i.bit_length(), 1)
    vals = _subspace_values(ctx, a, levels)
    acc = 1
    norm = 1
    for j in range(levels):
        if (i >> j) & 1:
            acc = mul(field, acc, vals[j])
            if normalized:
                norm = mul(field, norm, _level_constant(ctx, j))
    return div(field, acc, norm)


def naive_multipoint(ctx: BasisCtx, p: Union[PolyX, PolyXbar], points: Iterable[int]) -> np.ndarray:
    """sum_i p_i basis_i(a) at every point, one basis polynomial at a time."""
    field = ctx.field
    pts = np.fromiter((int(x) for x in points), dtype=ELEM_DTYPE)
    out = np.zeros(pts.size, dtype=ELEM_DTYPE)
    if p.is_zero:
        return out
    levels = max(len(p) - 1, 1).bit_length()

    subspace = [pts.copy()]
    for j in range(levels):
        c = _level_constant(ctx, j)
        prev = subspace[-1]
        subspace.append(mul_vec(field, prev, prev ^ ELEM_DTYPE(c)))

    basis = [np.ones(pts.size, dtype=ELEM_DTYPE)]
    for i in range(1, len(p)):
        top = i.bit_length() - 1
        basis.append(mul_vec(field, basis[i - (1 << top)], subspace[top]))

    normalized = isinstance(p, PolyXbar)
    for i, coeff in enumerate(p.to_list()):
        if not coeff:
            continue
        scale = coeff
        if normalized:
            for j in range(i.bit_length()):
                if (i >> j) & 1:
                    scale = div(field, scale, _level_constant(ctx, j))
        out ^= scale_vec(field, basis[i], scale)
    return out


# Basis conversion


def x_to_mono(ctx: BasisCtx, p: PolyX) -> PolyMono:
    acc = PolyMono()
    for i, c in enumerate(p.to_list()):
        if c:
            acc = acc + mono_scale(ctx.field, PolyMono(basis_mono(ctx, i)), c)
    return acc


def mono_to_x(ctx: BasisCtx, p: PolyMono) -> PolyX:
    """Peel the leading term against the monic X_deg until nothing is left."""
    out = [0] * len(p.coeffs)
    rest = p
    while not rest.is_zero:
        d = rest.degree
        c = rest.coeffs[-1]
        out[d] = c
        rest = rest + mono_scale(ctx.field, PolyMono(basis_mono(ctx, d)), c)
    return PolyX.from_coeffs(out)


# Monomial arithmetic


def mono_scale(field: FieldCtx, a: PolyMono, c: int) -> PolyMono:
    return PolyMono(tuple(mul(field, x, c) for x in a.coeffs))


def mono_mul(field: FieldCtx, a: PolyMono, b: PolyMono) -> PolyMono:
    if a.is_zero or b.is_zero:
        return PolyMono()
    out = np.zeros(len(a.coeffs) + len(b.coeffs) - 1, dtype=ELEM_DTYPE)
    bv = np.array(b.coeffs, dtype=ELEM_DTYPE)
    for i, x in enumerate(a.coeffs):
        if x:
            out[i : i + bv.size] ^= scale_vec(field, bv, x)
    return PolyMono(tuple(int(c) for c in out))


def mono_divrem(field: FieldCtx, a: PolyMono, b: PolyMono) -> Tuple[PolyMono, PolyMono]:
    if b.is_zero:
        raise GFZeroDivisionError("division by the zero polynomial")
    db = b.degree
    if a.degree < db:
        return PolyMono(), a
    rem = np.array(a.coeffs, dtype=ELEM_DTYPE)
    bv = np.array(b.coeffs, dtype=ELEM_DTYPE)
    lead_inv = inv(field, b.coeffs[-1])
    quot = [0] * (a.degree - db + 1)
    for shift in range(len(quot) - 1, -1, -1):
        top = int(rem[shift + db])
        if not top:
            continue
        c = mul(field, top, lead_inv)
        quot[shift] = c
        rem[shift : shift + db + 1] ^= scale_vec(field, bv, c)
    return PolyMono(tuple(quot)), PolyMono(tuple(int(x) for x in rem[:db]))


def mono_eea(field: FieldCtx, a: PolyMono, b: PolyMono, stop_degree: int = 0) -> Tuple[PolyMono, PolyMono, PolyMono]:
    """(r, u, v) with a u + b v = r, at the first remainder of degree below ``stop_degree``.

    With stop_degree 0 the loop runs to the zero remainder and returns the last
    nonzero one, i.e. a (non-normalized) gcd.
    """
    r0, r1 = a, b
    u0, u1 = PolyMono((1,)), PolyMono()
    v0, v1 = PolyMono(), PolyMono((1,))
    if stop_degree > 0 and r0.degree < stop_degree:
        return r0, u0, v0
    while not r1.is_zero and r1.degree >= stop_degree:
        q, r = mono_divrem(field, r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 + mono_mul(field, q, u1)
        v0, v1 = v1, v0 + mono_mul(field, q, v1)
    if stop_degree > 0:
        return r1, u1, v1
    return r0, u0, v0


def mono_derivative(a: PolyMono) -> PolyMono:
    return PolyMono(tuple(c if i % 2 == 0 else 0 for i, c in enumerate(a.coeffs[1:])))


def mono_eval(field: FieldCtx, a: PolyMono, x: int) -> int:
    acc = 0
    for c in reversed(a.coeffs):
        acc = mul(field, acc, x) ^ c
    return acc
