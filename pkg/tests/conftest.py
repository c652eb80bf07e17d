from functools import lru_cache
from pathlib import Path
import sys

import numpy as np
import pytest


PROJECT_ROOT = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))


from evals.oracle_ref import PolyMono, basis_mono
from rsxf.basis_ctx import PolyX, PolyXbar, default_basis
from rsxf.field_arith import dot_rows


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running acceptance sweeps")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def gf4():
    return default_basis(2)


@pytest.fixture
def gf256():
    return default_basis(8)


@pytest.fixture
def gf65536():
    return default_basis(16)


def random_poly(rng, m, degree, cls=PolyX):
    """Random polynomial of exactly ``degree`` over GF(2^m)."""
    coeffs = rng.integers(0, 1 << m, size=degree + 1, dtype=np.int64)
    coeffs[-1] = rng.integers(1, 1 << m)
    return cls(coeffs.astype(np.uint16))


def random_xbar(rng, m, degree):
    return random_poly(rng, m, degree, PolyXbar)


@lru_cache(maxsize=None)
def _mono_columns(ctx, size):
    cols = np.zeros((size, size), dtype=np.uint16)
    for i in range(size):
        coeffs = basis_mono(ctx, i)
        cols[: len(coeffs), i] = coeffs
    cols.setflags(write=False)
    return cols


def mono_image(ctx, p):
    """Same result as ``x_to_mono``, through a cached matrix of basis_mono columns."""
    if p.is_zero:
        return PolyMono()
    size = 1 << (len(p) - 1).bit_length()
    cols = _mono_columns(ctx, size)
    return PolyMono(tuple(int(c) for c in dot_rows(ctx.field, cols[:, : len(p)], p.coeffs)))
