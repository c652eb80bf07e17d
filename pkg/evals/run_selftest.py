import sys
from pathlib import Path

project_root = str(Path(__file__).parent.parent.resolve())
if project_root not in sys.path:
    sys.path.insert(0, project_root)

import argparse
import logging
import time
from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np

from evals import oracle_ref
from rsxf.basis_ctx import PolyX, PolyXbar, default_basis
from rsxf.halfgcd import hgcd
from rsxf.poly_ops import divrem, formal_derivative, lambda_residual, mul, newton_lambda
from rsxf.rs_codec import CodeParams, decode, encode
from rsxf.transform import fft_xbar, ifft_x_batch, ifft_xbar
from rsxf.utils.counters import count_ops

logger = logging.getLogger("rsxf.selftest")


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int
    seconds: float
    details: str = ""


def degree0(p: PolyX) -> int:
    """Degree with the zero polynomial counted as 0."""
    return p.degree or 0


def random_poly(rng: np.random.Generator, m: int, degree: int, cls=PolyX):
    coeffs = rng.integers(0, 1 << m, size=degree + 1, dtype=np.int64)
    coeffs[-1] = rng.integers(1, 1 << m)
    return cls(coeffs.astype(np.uint16))


def check_hgcd_output(ctx, a: PolyX, b: PolyX, g: int, z, mat) -> Optional[str]:
    """None when every output condition holds, else a description of the first failure."""
    # one product at a time, independent of the batched matrix methods
    z0 = mul(ctx, mat.m00, a) + mul(ctx, mat.m01, b)
    z1 = mul(ctx, mat.m10, a) + mul(ctx, mat.m11, b)
    if z0 != z.z0 or z1 != z.z1:
        return "Z != M [a; b]"
    half = 1 << (g - 1)
    if z.z0.is_zero or z.z0.degree < half:
        return f"deg z0 = {z.z0.degree} below {half}"
    if not z.z1.is_zero and z.z1.degree > half - 1:
        return f"deg z1 = {z.z1.degree} above {half - 1}"
    if degree0(mat.m11) > a.degree - z.z0.degree:
        return f"deg m11 = {mat.m11.degree} above deg a - deg z0"
    if degree0(mat.m00) > degree0(mat.m01) or degree0(mat.m10) > degree0(mat.m11):
        return "row degrees not dominated"
    if degree0(mat.m00) > degree0(mat.m10) or degree0(mat.m01) > degree0(mat.m11):
        return "column degrees not dominated"
    return None


class SelftestRunner:
    """Oracle-equivalence checks at sizes that finish in seconds."""

    def __init__(self, trials: int = 20, seed: int = 0):
        self.trials = trials
        self.rng = np.random.default_rng(seed)
        self.results: List[CheckResult] = []

    def _run(self, name: str, check: Callable[[], Optional[str]]) -> CheckResult:
        start = time.perf_counter()
        try:
            failure = check()
        except Exception as e:
            logger.exception("selftest %s raised", name)
            failure = f"{type(e).__name__}: {e}"
        result = CheckResult(name, failure is None, self.trials, time.perf_counter() - start, failure or "")
        self.results.append(result)
        return result

    def check_transform(self) -> Optional[str]:
        ctx = default_basis(8)
        for _ in range(self.trials):
            k = int(self.rng.integers(0, 7))
            beta = int(self.rng.integers(0, ctx.size)) & ~((1 << k) - 1)
            d = random_poly(self.rng, 8, (1 << k) - 1, PolyXbar)
            points = ctx.omega_table[: 1 << k] ^ beta
            if not np.array_equal(fft_xbar(ctx, d, k, beta).values, oracle_ref.naive_multipoint(ctx, d, points)):
                return f"fft_xbar differs from the naive evaluation at k={k}, beta={beta}"
            if ifft_xbar(ctx, fft_xbar(ctx, d, k, beta), k, beta) != d:
                return f"inverse transform is not exact at k={k}"
        return None

    def check_op_count(self) -> Optional[str]:
        ctx = default_basis(16)
        d = random_poly(self.rng, 16, 1023, PolyXbar)
        with count_ops() as counts:
            fft_xbar(ctx, d, 10, 1023)
        if (counts.additions, counts.multiplications) != (10240, 5120):
            return f"counted {counts.additions} additions and {counts.multiplications} multiplications"
        return None

    def check_divrem(self) -> Optional[str]:
        ctx = default_basis(8)
        for _ in range(self.trials):
            da = int(self.rng.integers(1, 128))
            a = random_poly(self.rng, 8, da)
            b = random_poly(self.rng, 8, int(self.rng.integers(0, da + 1)))
            q, r = divrem(ctx, a, b)
            if mul(ctx, q, b) + r != a or (not r.is_zero and r.degree >= b.degree):
                return f"a != q b + r for deg a={a.degree}, deg b={b.degree}"
            mq, mr = oracle_ref.mono_divrem(ctx.field, oracle_ref.x_to_mono(ctx, a), oracle_ref.x_to_mono(ctx, b))
            if oracle_ref.mono_to_x(ctx, mq) != q or oracle_ref.mono_to_x(ctx, mr) != r:
                return f"quotient differs from long division for deg a={a.degree}, deg b={b.degree}"
        return None

    def check_newton(self) -> Optional[str]:
        ctx = default_basis(16)
        for _ in range(self.trials):
            levels = int(self.rng.integers(0, 7))
            B = random_poly(self.rng, 16, (1 << levels) - 1)
            H = lambda_residual(ctx, newton_lambda(ctx, B), B)
            if not H.is_zero and H.degree > 1 << levels:
                return f"residual degree {H.degree} above {1 << levels}"
        return None

    def check_hgcd(self) -> Optional[str]:
        ctx = default_basis(8)
        for _ in range(self.trials):
            g = int(self.rng.integers(1, 7))
            a = random_poly(self.rng, 8, (1 << g) - 1)
            b = random_poly(self.rng, 8, int(self.rng.integers(0, a.degree + 1)))
            for cutover in (0, None):
                z, mat = hgcd(ctx, a, b, g, cutover=cutover)
                failure = check_hgcd_output(ctx, a, b, g, z, mat)
                if failure:
                    return f"g={g}, cutover={cutover}: {failure}"
        return None

    def check_derivative(self) -> Optional[str]:
        ctx = default_basis(8)
        for _ in range(self.trials):
            d = random_poly(self.rng, 8, int(self.rng.integers(0, 64)))
            expected = oracle_ref.mono_derivative(oracle_ref.x_to_mono(ctx, d))
            if oracle_ref.x_to_mono(ctx, formal_derivative(ctx, d)) != expected:
                return f"derivative differs at degree {d.degree}"
        return None

    def check_round_trip(self) -> Optional[str]:
        for m, t in ((4, 2), (8, 4)):
            params = CodeParams(m, t)
            ctx = default_basis(m)
            for _ in range(self.trials):
                msg = self.rng.integers(0, params.n, size=params.k).astype(np.uint16)
                word = encode(ctx, params, msg)
                rows = word.symbols.reshape(params.blocks, params.T)
                betas = ctx.omega_table[np.arange(params.blocks) * params.T]
                if np.bitwise_xor.reduce(ifft_x_batch(ctx, rows, t, betas), axis=0).any():
                    return f"blockwise inverse transforms of a codeword do not cancel at (m, t) = ({m}, {t})"
                errors = int(self.rng.integers(0, params.radius + 1))
                received = word.symbols.copy()
                positions = self.rng.choice(params.n, size=errors, replace=False)
                received[positions] ^= self.rng.integers(1, params.n, size=errors).astype(np.uint16)
                result = decode(ctx, params, received)
                if not result.ok or result.corrected != word:
                    return f"{errors} errors not corrected at (m, t) = ({m}, {t})"
        return None

    def run(self) -> bool:
        self._run("transform vs naive evaluation", self.check_transform)
        self._run("transform operation count", self.check_op_count)
        self._run("division vs long division", self.check_divrem)
        self._run("Newton inverse residual", self.check_newton)
        self._run("half-GCD output conditions", self.check_hgcd)
        self._run("formal derivative", self.check_derivative)
        self._run("Reed-Solomon round trip", self.check_round_trip)
        self.print_report()
        return all(r.passed for r in self.results)

    def print_report(self):
        print("\n" + "=" * 50)
        print("SELFTEST REPORT")
        print("=" * 50)

        print("\n| Check | Status | Cases | Time (s) | Details |")
        print("| :--- | :---: | :---: | :---: | :--- |")

        passing = 0
        for res in self.results:
            status = "PASS" if res.passed else "FAIL"
            if res.passed:
                passing += 1
            print(f"| {res.name} | {status} | {res.cases} | {res.seconds:.2f} | {res.details} |")

        print(f"\n**Summary: {passing}/{len(self.results)} checks passing**")


if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument("--trials", type=int, default=20, help="Random cases per check")
    parser.add_argument("--seed", type=int, default=0, help="Seed for the random cases")
    args = parser.parse_args()

    runner = SelftestRunner(trials=args.trials, seed=args.seed)
    sys.exit(0 if runner.run() else 1)
