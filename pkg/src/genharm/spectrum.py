"""Generalized spectra, Parseval checks, and band filtering of decompositions.

The generalized spectrum assigns to each analysis frequency k the mean-square
power of its component A_k S(kx) + B_k R(kx) over one period. For a fully
orthogonal pair this reduces to (A_k^2 + B_k^2)/2 and the powers add up to the
signal power exactly; for generic pairs only the per-component energies are
reported, and filtering may break energy accounting, which is reported rather
than renormalized.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .decompose import Decomposition
from .errors import ConfigurationError
from .signals import FourierSpectrum

__all__ = [
    "GeneralizedSpectrum",
    "parseval_power",
    "generalized_spectrum",
    "band_filter",
    "write_spectrum_csv",
]


@dataclass(frozen=True, eq=False)
class GeneralizedSpectrum:
    """Per-frequency component energies of a decomposition, plus c0 squared."""

    entries: tuple
    c0_sq: float

    def __post_init__(self):
        cleaned = tuple((int(k), float(e)) for k, e in self.entries)
        ks = [k for k, _ in cleaned]
        if ks != list(range(1, len(cleaned) + 1)):
            raise ConfigurationError("spectrum entries must cover k = 1..N exactly once")
        if any(e < 0.0 for _, e in cleaned) or self.c0_sq < 0.0:
            raise ConfigurationError("energies must be nonnegative")
        object.__setattr__(self, "entries", cleaned)
        object.__setattr__(self, "c0_sq", float(self.c0_sq))

    def total(self) -> float:
        """c0_sq plus the sum of all component energies."""
        return self.c0_sq + sum(e for _, e in self.entries)


def parseval_power(spec: FourierSpectrum) -> float:
    """Mean power of the signal the spectrum represents.

    Equals c0^2 + (1/2) sum_k (a_k^2 + b_k^2), which matches norm(f)^2 for
    band-limited f.
    """
    return spec.c0 ** 2 + 0.5 * (float(spec.a @ spec.a) + float(spec.b @ spec.b))


def generalized_spectrum(d: Decomposition) -> GeneralizedSpectrum:
    """Energy of each component A_k S(kx) + B_k R(kx) over one period.

    Evaluated exactly in coefficient space:

        energy_k = (1/2) sum_q [(A_k s_q + B_k r_q)^2 + (A_k s'_q + B_k r'_q)^2]

    with no band cap, so dilation truncation never hides energy. Only with a
    fully orthogonal pair do these energies plus c0^2 reproduce the signal
    power; in general the cross terms between components are not counted.
    """
    entries = []
    for k, a_k, b_k in d.coeffs:
        pair = d.pair_at(k)
        cos_mix = a_k * pair.S.cos_coeffs
        sin_mix = a_k * pair.S.sin_coeffs
        depth = max(pair.S.depth, pair.R.depth)
        cos_full = np.zeros(depth)
        sin_full = np.zeros(depth)
        cos_full[: pair.S.depth] = cos_mix
        sin_full[: pair.S.depth] = sin_mix
        cos_full[: pair.R.depth] += b_k * pair.R.cos_coeffs
        sin_full[: pair.R.depth] += b_k * pair.R.sin_coeffs
        energy = 0.5 * float(cos_full @ cos_full + sin_full @ sin_full)
        entries.append((k, energy))
    return GeneralizedSpectrum(tuple(entries), d.c0 ** 2)


def band_filter(d: Decomposition, keep_from: int, keep_to: int) -> Decomposition:
    """Zero every component outside [keep_from, keep_to], and the mean with them.

    The band starts at keep_from >= 1, so the mean c0 never survives: the
    result is band-pass by construction. Energy is not renormalized; compare
    generalized spectra before and after if accounting matters.
    """
    if not (1 <= keep_from <= keep_to <= d.order):
        raise ConfigurationError(
            f"band [{keep_from}, {keep_to}] is empty or outside 1..{d.order}"
        )
    kept = tuple(
        (k, a_k, b_k) if keep_from <= k <= keep_to else (k, 0.0, 0.0)
        for k, a_k, b_k in d.coeffs
    )
    return Decomposition(
        0.0,
        kept,
        d.basis,
        d.method,
        d.pruning,
        d.condition_estimate,
        d.warnings,
    )


def write_spectrum_csv(spec: GeneralizedSpectrum, path) -> None:
    """Write ``k,energy`` rows in ascending k."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["k", "energy"])
        for k, energy in spec.entries:
            writer.writerow([k, repr(energy)])
