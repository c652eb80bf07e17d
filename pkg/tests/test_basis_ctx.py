import numpy as np
import pytest

from evals.oracle_ref import x_to_mono
from rsxf.basis_ctx import (
    PolyX,
    PolyXbar,
    build_basis,
    default_basis,
    norm_const,
    omega,
    subspace_eval,
    x_to_xbar,
    xbar_to_x,
)
from rsxf.errors import BasisConstructionError, DegreeOverflowError, TransformSizeError
from rsxf.field_arith import default_ctx, mul
from rsxf.monomial import from_mono, to_mono

from conftest import random_poly, random_xbar


def test_gf4_tables(gf4):
    assert gf4.sv.tolist() == [1, 1]
    assert omega(gf4, 3) == 3
    assert subspace_eval(gf4, 1, 3) == 1
    assert norm_const(gf4, 3) == 1
    assert gf4.norm.tolist() == [1, 1, 1, 1]


def test_custom_basis_ordering():
    ctx = build_basis(default_ctx(3), [3, 5, 7])
    assert omega(ctx, 0) == 0
    assert omega(ctx, 3) == 3 ^ 5
    assert omega(ctx, 7) == 3 ^ 5 ^ 7
    assert sorted(ctx.omega_table.tolist()) == list(range(8))
    for i in range(8):
        assert ctx.index_of[omega(ctx, i)] == i


@pytest.mark.parametrize("v", [[1, 1], [2, 2], [0, 1], [1, 2, 3]])
def test_dependent_or_malformed_basis_is_rejected(v):
    with pytest.raises(BasisConstructionError):
        build_basis(default_ctx(2), v)


def test_out_of_range_basis_element():
    with pytest.raises(BasisConstructionError):
        build_basis(default_ctx(2), [1, 4])


def test_unit_basis_orders_elements_by_value(gf256):
    assert all(omega(gf256, i) == i for i in range(256))


@pytest.mark.parametrize("m", [4, 8])
def test_twiddle_tables(m):
    ctx = default_basis(m)
    for j in range(m):
        row = ctx.twiddle[j]
        assert row[0] == 0
        assert not row[: 1 << j].any()
        assert row[1 << j :].all()
        assert row[ctx.index_of[ctx.v[j]]] == 1


def test_twiddle_tables_are_linear(rng):
    ctx = build_basis(default_ctx(6), [3, 5, 9, 17, 33, 1])
    for _ in range(200):
        i, l = (int(x) for x in rng.integers(0, 64, size=2))
        for j in range(6):
            assert ctx.twiddle[j][i ^ l] == ctx.twiddle[j][i] ^ ctx.twiddle[j][l]


def test_subspace_eval_vanishes_on_the_subspace(gf256):
    for x in range(256):
        assert subspace_eval(gf256, 0, x) == x
    for j in range(9):
        for i in range(1 << j):
            assert subspace_eval(gf256, j, omega(gf256, i)) == 0
    assert subspace_eval(gf256, 8, 77) == 0
    with pytest.raises(TransformSizeError):
        subspace_eval(gf256, 9, 1)


def test_derivative_constants_are_products_of_subspace_elements():
    ctx = default_basis(5)
    f = ctx.field
    for j in range(6):
        expected = 1
        for a in range(1, 1 << j):
            expected = mul(f, expected, omega(ctx, a))
        assert ctx.sderiv[j] == expected


def test_norm_constants(gf256):
    assert norm_const(gf256, 0) == 1
    for j in range(8):
        assert norm_const(gf256, 1 << j) == gf256.sv[j]
    assert norm_const(gf256, 0b101) == mul(gf256.field, int(gf256.sv[0]), int(gf256.sv[2]))


def test_basis_conversion_round_trip(gf256, rng):
    p = random_poly(rng, 8, 40, PolyXbar)
    assert x_to_xbar(gf256, xbar_to_x(gf256, p)) == p
    assert len(xbar_to_x(gf256, p)) == len(p)
    assert xbar_to_x(gf256, PolyXbar.zero()) == PolyX.zero()


def test_conversion_is_identity_over_gf4(gf4):
    p = PolyX.from_coeffs([1, 2, 3, 1])
    assert x_to_xbar(gf4, p).to_list() == p.to_list()


def test_poly_degree_conventions():
    assert PolyX.zero().degree is None
    assert PolyX.from_coeffs([0, 0]).is_zero
    p = PolyX.from_coeffs([1, 0, 3, 0, 0])
    assert p.degree == 2 and p.leading == 3 and p.coeff(7) == 0
    assert (p + p).is_zero
    assert p + PolyX.unit(4, 5) == PolyX.from_coeffs([1, 0, 3, 0, 5])
    assert PolyX.one() != PolyXbar.one()


def test_monomial_tables_gf4(gf4):
    # X_2 = s_1 = x^2 + x, X_3 = x (x^2 + x)
    assert to_mono(gf4, np.array([0, 0, 1], dtype=np.uint16)).tolist() == [0, 1, 1]
    assert to_mono(gf4, np.array([0, 0, 0, 1], dtype=np.uint16)).tolist() == [0, 0, 1, 1]
    assert from_mono(gf4, np.array([0, 0, 1], dtype=np.uint16)).tolist() == [0, 1, 1]


def test_monomial_tables_round_trip(gf256, rng):
    coeffs = random_poly(rng, 8, gf256.mono_size - 1).coeffs
    assert np.array_equal(from_mono(gf256, to_mono(gf256, coeffs)), coeffs)


def test_padding_past_the_length_is_rejected():
    with pytest.raises(DegreeOverflowError):
        PolyX.from_coeffs([1, 2, 3]).padded(2)
    assert PolyX.from_coeffs([1, 2]).padded(4).tolist() == [1, 2, 0, 0]


def test_top_xbar_coefficient_is_the_monomial_lead_times_norm(gf256, rng):
    # X-bar_h = X_h / p_h with X_h monic of degree h
    for h in range(65):
        p = random_xbar(rng, 8, h)
        mono = x_to_mono(gf256, xbar_to_x(gf256, p))
        assert mono.degree == h
        assert p.leading == mul(gf256.field, mono.coeffs[-1], norm_const(gf256, h))


def test_top_xbar_coefficient_on_a_custom_basis(rng):
    ctx = build_basis(default_ctx(6), [3, 5, 9, 17, 33, 1])
    for h in (1, 7, 32, 50, 63):
        p = random_xbar(rng, 6, h)
        mono = x_to_mono(ctx, xbar_to_x(ctx, p))
        assert p.leading == mul(ctx.field, mono.coeffs[-1], norm_const(ctx, h))
