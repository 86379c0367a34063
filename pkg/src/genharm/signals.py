"""Sampled periodic signals on [0, 1) and exact discrete Fourier analysis.

A signal is one period of a real function, sampled uniformly at x_j = j/n.
All quadrature is the uniform-grid mean (rectangle rule), which is exact for
trigonometric polynomials below the Nyquist limit; higher modules reduce their
inner products either to this layer or to coefficient arithmetic on spectra.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .errors import AliasingError, DimensionError, InvalidSignalError

__all__ = [
    "PeriodicSignal",
    "FourierSpectrum",
    "sample_closed_form",
    "inner_product",
    "norm",
    "analyze_fourier",
    "synthesize_fourier",
    "spectral_inner",
    "read_signal_csv",
    "write_signal_csv",
]


def _check_sample_count(n: int) -> None:
    if n < 4 or n % 2 != 0:
        raise InvalidSignalError(f"sample count must be even and >= 4, got {n}")


@dataclass(frozen=True, eq=False)
class PeriodicSignal:
    """One period of a real signal, sampled at x_j = j/n for j = 0..n-1.

    The sample array is copied and frozen on construction; instances are
    immutable and safe to share across threads.
    """

    samples: np.ndarray

    def __post_init__(self):
        samples = np.array(self.samples, dtype=float, copy=True)
        if samples.ndim != 1:
            raise InvalidSignalError("samples must be a one-dimensional sequence")
        _check_sample_count(samples.size)
        if not np.all(np.isfinite(samples)):
            raise InvalidSignalError("samples contain non-finite values")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @property
    def n(self) -> int:
        """Number of samples in one period."""
        return self.samples.size

    @property
    def grid(self) -> np.ndarray:
        """Sample abscissae x_j = j/n."""
        return np.arange(self.n) / self.n


def sample_closed_form(evaluator: Callable[[float], float], n: int) -> PeriodicSignal:
    """Sample ``evaluator`` at the n uniform grid points of [0, 1).

    The evaluator is called pointwise with each x_j; non-finite output raises
    :class:`InvalidSignalError`.
    """
    _check_sample_count(n)
    values = np.array([evaluator(j / n) for j in range(n)], dtype=float)
    if not np.all(np.isfinite(values)):
        bad = int(np.flatnonzero(~np.isfinite(values))[0])
        raise InvalidSignalError(f"evaluator returned a non-finite value at x={bad}/{n}")
    return PeriodicSignal(values)


def inner_product(f: PeriodicSignal, g: PeriodicSignal) -> float:
    """Mean of the pointwise product, (1/n) * sum_j f_j * g_j.

    Exact for products band-limited below the Nyquist harmonic n/2.
    """
    if f.n != g.n:
        raise DimensionError(f"sample counts differ: {f.n} vs {g.n}")
    return float(f.samples @ g.samples) / f.n


def norm(f: PeriodicSignal) -> float:
    """Root mean square of the samples, sqrt(<f, f>)."""
    return math.sqrt(inner_product(f, f))


@dataclass(frozen=True, eq=False)
class FourierSpectrum:
    """Mean plus per-harmonic sine/cosine coefficients of a periodic signal.

    ``a[i]`` and ``b[i]`` are the sine and cosine coefficients of harmonic
    i + 1, so the represented function is

        c0 + sum_k (a_k sin(2 pi k x) + b_k cos(2 pi k x)).
    """

    c0: float
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.array(self.a, dtype=float, copy=True)
        b = np.array(self.b, dtype=float, copy=True)
        if a.ndim != 1 or b.ndim != 1 or a.size != b.size:
            raise DimensionError("sine and cosine coefficient arrays must be 1-d and equal length")
        if not (np.isfinite(self.c0) and np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise InvalidSignalError("spectrum contains non-finite coefficients")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "c0", float(self.c0))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def max_harmonic(self) -> int:
        return self.a.size

    def terms(self) -> Iterator[tuple[int, float, float]]:
        """Yield (k, a_k, b_k) in strictly increasing harmonic order."""
        for i in range(self.a.size):
            yield i + 1, float(self.a[i]), float(self.b[i])


def analyze_fourier(f: PeriodicSignal, max_harmonic: int) -> FourierSpectrum:
    """Project onto the sine/cosine family up to ``max_harmonic``.

    c0 is the sample mean; a_k = 2<f, sin 2 pi k x> and b_k = 2<f, cos 2 pi k x>.
    Exact (to roundoff) whenever f is band-limited to n/2 - 1 harmonics.
    """
    if max_harmonic < 0:
        raise ValueError("max_harmonic must be nonnegative")
    nyquist_band = f.n // 2 - 1
    if max_harmonic > nyquist_band:
        raise AliasingError(
            f"max harmonic {max_harmonic} exceeds representable band {nyquist_band} at n={f.n}"
        )
    bins = np.fft.rfft(f.samples)
    c0 = bins[0].real / f.n
    a = -2.0 / f.n * bins.imag[1 : max_harmonic + 1]
    b = 2.0 / f.n * bins.real[1 : max_harmonic + 1]
    return FourierSpectrum(c0, a, b)


def synthesize_fourier(spec: FourierSpectrum, n: int) -> PeriodicSignal:
    """Evaluate the trigonometric polynomial of ``spec`` on the n-point grid."""
    _check_sample_count(n)
    if spec.max_harmonic > n // 2 - 1:
        raise AliasingError(
            f"spectrum with max harmonic {spec.max_harmonic} needs more than n={n} samples"
        )
    bins = np.zeros(n // 2 + 1, dtype=complex)
    bins[0] = n * spec.c0
    bins[1 : spec.max_harmonic + 1] = 0.5 * n * (spec.b - 1j * spec.a)
    return PeriodicSignal(np.fft.irfft(bins, n))


def spectral_inner(s: FourierSpectrum, t: FourierSpectrum) -> float:
    """Continuum inner product of two spectra over one period.

    Equals c0*c0' + (1/2) sum_k (a_k a'_k + b_k b'_k); harmonics present in
    only one operand contribute nothing.
    """
    m = min(s.max_harmonic, t.max_harmonic)
    return s.c0 * t.c0 + 0.5 * (float(s.a[:m] @ t.a[:m]) + float(s.b[:m] @ t.b[:m]))


def write_signal_csv(f: PeriodicSignal, path) -> None:
    """Write the signal as ``x,value`` rows with x = j/n ascending."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "value"])
        for j, value in enumerate(f.samples):
            writer.writerow([repr(j / f.n), repr(float(value))])


def read_signal_csv(path) -> PeriodicSignal:
    """Read a ``x,value`` CSV, validating the uniform grid within 1e-12."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["x", "value"]:
            raise InvalidSignalError(f"{path}: expected header 'x,value'")
        xs: list[float] = []
        values: list[float] = []
        for row in reader:
            if not row:
                continue
            if len(row) != 2:
                raise InvalidSignalError(f"{path}: malformed row {row!r}")
            try:
                xs.append(float(row[0]))
                values.append(float(row[1]))
            except ValueError as exc:
                raise InvalidSignalError(f"{path}: non-numeric row {row!r}") from exc
    n = len(values)
    _check_sample_count(n)
    expected = np.arange(n) / n
    if np.max(np.abs(np.asarray(xs) - expected)) > 1e-12:
        raise InvalidSignalError(f"{path}: grid is not uniform x=j/n within 1e-12")
    return PeriodicSignal(np.asarray(values))
