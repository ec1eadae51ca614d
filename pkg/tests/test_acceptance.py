"""Acceptance gate: one test per exit criterion, each at its stated tolerance.

Run with ``pytest tests/test_acceptance.py``; a PASS/FAIL line per criterion
is printed in the terminal summary.
"""

import math
import subprocess
import sys
import time

import numpy as np
import pytest

from gsp import cli, csvio
from gsp.asymptotics import estimate_constant, residual, tail_energy
from gsp.equiangular import (
    DistanceParam,
    closed_form,
    coefficient_a,
    d_upper_bound,
    gsp_recurrence,
    p_from_d,
    transform,
)
from gsp.errors import ParamError
from gsp.linalg_core import rank
from gsp.orthonormalize import gram_schmidt, reorthogonalize
from gsp.verify import verify

SUITE = [(2, 4, -0.9), (8, 8, -0.1), (16, 32, 0.3), (64, 128, 0.5), (128, 256, 0.9)]


def suite_case(n, dim, p):
    X = cli.generate_vectors(n, dim, seed=1000 * n + dim)
    start = time.perf_counter()
    Z = transform(X, p)
    elapsed = time.perf_counter() - start
    return X, Z.vectors, elapsed


def max_pair_dev(Z, p):
    G = Z @ Z.T
    n = len(Z)
    return float(np.max(np.abs(G[~np.eye(n, dtype=bool)] - p)))


def test_01_construction(criterion):
    criterion(1, "construction: |z_i.z_j - p| <= 1e-10, | ||z_i|| - 1 | <= 1e-10, < 1 s")
    worst_angle = worst_norm = slowest = 0.0
    for n, dim, p in SUITE:
        _, Z, elapsed = suite_case(n, dim, p)
        worst_angle = max(worst_angle, max_pair_dev(Z, p))
        worst_norm = max(worst_norm, float(np.max(np.abs(np.linalg.norm(Z, axis=1) - 1))))
        slowest = max(slowest, elapsed)
        assert max_pair_dev(Z, p) <= 1e-10
        assert np.max(np.abs(np.linalg.norm(Z, axis=1) - 1)) <= 1e-10
        assert elapsed < 1.0
    criterion(1, "construction", f"angle {worst_angle:.1e}, norm {worst_norm:.1e}, slowest {slowest:.3f}s")


def test_02_nested_spans(criterion):
    criterion(2, "nested spans: bidirectional residual <= 1e-9 rel, prefix rank == i")
    worst = 0.0
    for n, dim, p in SUITE:
        X, Z, _ = suite_case(n, dim, p)
        report = verify(X, Z, p)
        worst = max(worst, report.max_prefix_span_residual)
        assert report.max_prefix_span_residual <= 1e-9
        for i in range(1, n + 1):
            assert rank(np.vstack([X[:i], Z[:i]])) == i
    criterion(2, "nested spans", f"max residual {worst:.1e}")


@pytest.mark.parametrize("n", [2, 3, 5, 17])
def test_03_feasibility_sharpness(criterion, n):
    criterion(3, f"feasibility sharpness at n={n} (p and d boundaries, +-1e-6)")
    X = cli.generate_vectors(n, n + 1, seed=n)
    bound = -1.0 / (n - 1)
    transform(X, bound + 1e-6)
    with pytest.raises(ParamError):
        transform(X, bound - 1e-6)
    d_bound = d_upper_bound(n)
    Z = transform(X, DistanceParam(d_bound - 1e-6, n))
    assert max_pair_dev(Z.vectors, p_from_d(d_bound - 1e-6)) <= 1e-10
    with pytest.raises(ParamError):
        transform(X, DistanceParam(d_bound + 1e-6, n))
    with pytest.raises(ParamError):
        transform(X, p_from_d(d_bound + 1e-6))


@pytest.mark.parametrize("n", [1, 2, 8, 64, 256, 512])
def test_04_method_equivalence(criterion, n):
    criterion(4, f"recurrence vs closed form <= 1e-10 at n={n}")
    X = cli.generate_vectors(n, n, seed=n + 4)
    Y = reorthogonalize(gram_schmidt(X))
    worst = 0.0
    for p in (-0.001, 0.0, 0.3, 0.5, 0.9):
        if n >= 2 and not p > -1.0 / (n - 1):
            continue
        gap = float(np.max(np.abs(gsp_recurrence(Y, p).vectors - closed_form(Y, p).vectors)))
        worst = max(worst, gap)
        assert gap <= 1e-10
    criterion(4, f"method equivalence n={n}", f"max gap {worst:.1e}")


def test_05_prefix_stability(criterion):
    criterion(5, "prefix coefficients constant over k > i and equal a_i(p) (n=32, p=0.5)")
    n, p = 32, 0.5
    X = cli.generate_vectors(n, 48, seed=5)
    Y = reorthogonalize(gram_schmidt(X))
    Z = gsp_recurrence(Y, p).vectors
    C = Z @ Y.basis.T
    worst = 0.0
    for i in range(n - 1):
        column = C[i + 1:, i]
        dev = float(np.max(np.abs(column - coefficient_a(i + 1, p))))
        spread = float(np.max(column) - np.min(column))
        worst = max(worst, dev, spread)
        assert spread <= 1e-12
        assert dev <= 1e-12
    criterion(5, "prefix stability", f"max deviation {worst:.1e}")


def test_06_sum_identity(criterion):
    criterion(6, "| ||sum z_i||^2 - n(1+p(n-1)) | <= 1e-8 n")
    worst = 0.0
    for n, dim, p in SUITE:
        _, Z, _ = suite_case(n, dim, p)
        s = Z.sum(axis=0)
        dev = abs(float(s @ s) - n * (1 + p * (n - 1)))
        worst = max(worst, dev / n)
        assert dev <= 1e-8 * n
    criterion(6, "sum identity", f"max dev/n {worst:.1e}")


@pytest.mark.parametrize("n", [2, 3, 8, 32, 64])
def test_07_equilateral(criterion, n):
    criterion(7, f"d=1 gives p=0.5 +- 1e-12 and distances 1 +- 1e-10 at n={n}")
    X = cli.generate_vectors(n, n + 3, seed=70 + n)
    Z = transform(X, DistanceParam(1.0, n)).vectors
    assert max_pair_dev(Z, 0.5) <= 1e-12
    for i in range(n):
        for j in range(i + 1, n):
            assert abs(np.linalg.norm(Z[i] - Z[j]) - 1.0) <= 1e-10


def test_08_series_identities(criterion):
    criterion(8, "tail_energy(1,p)=p, 1e6-term brute force <= 1e-9, B bound")
    for p in [round(0.1 * i, 1) for i in range(1, 10)]:
        assert abs(tail_energy(1, p) - p) <= 1e-12
    count = 10**6
    for k, p in [(1, 0.5), (5, 0.5), (2, 0.1), (10, 0.9)]:
        m = np.arange(k, k + count, dtype=np.float64)
        a = p / (1 + p * (m - 1)) * np.sqrt((1 - p) * (1 + p * (m - 1)) / (1 + p * (m - 2)))
        brute = math.fsum(a * a)
        assert abs((tail_energy(k, p) - tail_energy(k + count, p)) - brute) <= 1e-9
    for p in (0.1, 0.5, 0.9):
        for k in (2, 10, 10**3, 10**6):
            rec = residual(k, p)
            assert rec.b_term <= rec.b_bound + 1e-12 / (1 + p * (k - 2))


def test_09_scaled_residual_convergence(criterion):
    criterion(9, "sqrt(k)*residual converges (decade gaps < 1e-3 beyond 1e5), < 1 s")
    start = time.perf_counter()
    lines = []
    for p in (0.1, 0.5, 0.9):
        est = estimate_constant(p, ks=(10**3, 10**4, 10**5, 10**6, 10**7))
        scaled = est.scaled
        assert np.all(np.isfinite(scaled))
        assert math.isfinite(est.extrapolated)
        gaps = est.successive_differences
        # gaps[2] compares 1e5 with 1e6, gaps[3] 1e6 with 1e7
        assert np.all(gaps[2:] < 1e-3)
        lines.append(
            f"p={p}: extrapolated {est.extrapolated:.10f}, "
            f"sqrt(p(1-p)) {est.sqrt_p_one_minus_p:.10f}, sqrt(1-p) {est.sqrt_one_minus_p:.10f}")
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    print("\n".join(lines))
    criterion(9, "scaled residual convergence", "; ".join(lines))


def test_10_cli_contract(criterion, tmp_path):
    criterion(10, "CLI exit codes 0/1/2/3 and bit-exact 64x128 CSV round trip")
    run = lambda *args: subprocess.run([sys.executable, "-m", "gsp", *args], capture_output=True, text=True)
    x = tmp_path / "x.csv"
    z = tmp_path / "z.csv"
    assert run("generate", "--n", "3", "--dim", "4", "--seed", "1", "--output", str(x)).returncode == 0
    assert run("transform", "--input", str(x), "--p", "0.2", "--output", str(z)).returncode == 0
    infeasible = run("transform", "--input", str(x), "--p", "-0.6", "--output", str(z))
    assert infeasible.returncode == 1 and "-0.5" in infeasible.stderr
    dep = tmp_path / "dep.csv"
    dep.write_text("1,2,3\n2,4,6\n")
    dependent = run("transform", "--input", str(dep), "--p", "0.2", "--output", str(z))
    assert dependent.returncode == 2 and "2" in dependent.stderr
    assert run("transform", "--input", str(tmp_path / "missing.csv"), "--p", "0.2",
               "--output", str(z)).returncode == 3

    fixture = tmp_path / "big.csv"
    assert run("generate", "--n", "64", "--dim", "128", "--seed", "10", "--output", str(fixture)).returncode == 0
    X = csvio.read_vectors(fixture)
    assert X.shape == (64, 128)
    assert X.tobytes() == cli.generate_vectors(64, 128, 10).tobytes()
    copy = tmp_path / "copy.csv"
    csvio.write_vectors(copy, X)
    assert copy.read_bytes() == fixture.read_bytes()
    assert csvio.read_vectors(copy).tobytes() == X.tobytes()
