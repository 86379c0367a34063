"""Shared fixtures: builtin pairs, seeded signal factories, acceptance log."""

import numpy as np
import pytest

from genharm import (
    BasisPair,
    FourierSpectrum,
    builtin_basis,
    dilate,
    synthesize_fourier,
)

_ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, name, passed, detail in sorted(_ACCEPTANCE_RESULTS):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d} [{name}]: {status} -- {detail}")


@pytest.fixture
def acceptance_log():
    """Recorder for the per-criterion summary printed after the run."""

    def record(num: int, name: str, passed: bool, detail: str) -> None:
        _ACCEPTANCE_RESULTS.append((num, name, passed, detail))

    return record


@pytest.fixture(scope="session")
def builtin_pairs():
    """All ready-made pairs at default depth, keyed by kind."""
    kinds = ("sine_cosine", "square", "sawtooth", "triangle", "trapezoid", "square_saw")
    return {kind: builtin_basis(kind) for kind in kinds}


def random_bandlimited(rng, k_max: int, n: int, decay: float = 1.0, c0: float | None = None):
    """A seeded band-limited signal with 1/k**decay coefficient falloff."""
    k = np.arange(1, k_max + 1, dtype=float)
    a = rng.normal(size=k_max) / k**decay
    b = rng.normal(size=k_max) / k**decay
    mean = rng.normal() if c0 is None else c0
    return synthesize_fourier(FourierSpectrum(mean, a, b), n)


def in_span_signal(pair: BasisPair, rng, k_max: int, n: int, decay: float = 2.0, c0: float = 0.0):
    """A signal lying exactly in the span of the pair's first k_max dilations.

    Components are accumulated in coefficient space, so the result is exact up
    to the representable band; the true expansion coefficients are returned
    alongside the signal for oracle comparisons.
    """
    band = n // 2 - 1
    a = np.zeros(band)
    b = np.zeros(band)
    coeffs = []
    k_range = np.arange(1, k_max + 1, dtype=float)
    weights = rng.normal(size=(k_max, 2)) / k_range[:, None]**decay
    for k in range(1, k_max + 1):
        A, B = weights[k - 1]
        for member, c in ((pair.S, A), (pair.R, B)):
            spec = dilate(member, k, band)
            a[: len(spec.a)] += c * spec.a
            b[: len(spec.b)] += c * spec.b
        coeffs.append((k, float(A), float(B)))
    f = synthesize_fourier(FourierSpectrum(c0, a, b), n)
    return f, tuple(coeffs)
