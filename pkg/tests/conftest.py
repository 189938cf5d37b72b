import numpy as np
import pytest

from stkrr import KernelSpec, NoiseModel, eigendecompose, kernel_matrix, make_design


def build(spec, n):
    design = make_design(spec, n)
    K = kernel_matrix(spec, design)
    return design, K, eigendecompose(K)


@pytest.fixture(scope="session")
def sobolev200():
    spec = KernelSpec.sobolev1()
    design, K, E = build(spec, 200)
    return spec, design, K, E


@pytest.fixture(scope="session")
def gaussian200():
    spec = KernelSpec.gaussian(0.1)
    design, K, E = build(spec, 200)
    return spec, design, K, E


@pytest.fixture
def ref_noise():
    return NoiseModel.from_sigma(2.0, 200)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_psd(rng, n, rank=None):
    A = rng.standard_normal((n, rank or n))
    return A @ A.T / n


def random_spectrum(rng, n, low=-6, high=0):
    return np.sort(10.0 ** rng.uniform(low, high, n))[::-1]


# acceptance criteria record one line each; printed after the run
ACCEPTANCE_LINES = []


def record(criterion, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
