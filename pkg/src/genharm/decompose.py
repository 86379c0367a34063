"""Signal analysis over basis pairs: direct Gram solve and iterative deflation.

Both methods express a signal as

    f(x) ~ c0 + sum_{k=1..N} A_k S(kx) + B_k R(kx)

but arrive at the coefficients differently. The direct method assembles the
2N x 2N Gram system of the dilated family and solves it in one shot; its
coefficients depend on N. The indirect method walks the frequencies upward,
solving a 2x2 system per harmonic after subtracting the contributions that
lower-frequency components have already injected there; its coefficients never
change when N grows, and the residual after order N has no content below N+1.

A schedule may swap basis pairs across frequency ranges; the correction terms
then read each stored coefficient against the pair that produced it.
"""

from __future__ import annotations

import json
import math
import warnings as _warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgWarning, get_lapack_funcs, lu_factor, lu_solve

from .basis import (
    DEFAULT_DEPTH,
    BasisFunction,
    BasisPair,
    BasisSchedule,
    EPS_INDEPENDENCE,
    check_independence,
    dilate,
    pair_from_dict,
    pair_to_dict,
    schedule_from_dict,
    schedule_to_dict,
    _dilation_rows,
)
from .errors import (
    AnalysisError,
    ConfigurationError,
    DimensionError,
    IllConditionedBasisError,
)
from .signals import (
    FourierSpectrum,
    PeriodicSignal,
    analyze_fourier,
    spectral_inner,
    synthesize_fourier,
)

__all__ = [
    "Decomposition",
    "GramSystem",
    "PRUNING_RULES",
    "CONDITION_WARN_LIMIT",
    "analyze_indirect",
    "analyze_multiband",
    "analyze_direct",
    "build_gram_system",
    "reconstruct",
    "residual",
    "combined_spectrum",
    "decomposition_to_dict",
    "decomposition_from_dict",
    "save_decomposition",
    "load_decomposition",
]

PRUNING_RULES = ("paper", "lcm", "none")
CONDITION_WARN_LIMIT = 1e12


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Result of an analysis: mean, per-harmonic amplitudes, and provenance.

    ``coeffs`` holds (k, A_k, B_k) for k = 1..N exactly once each. The basis
    field is the pair or schedule the analysis ran with; direct results also
    record the pruning rule and a condition estimate, since their coefficients
    are tied to the order and system they came from.
    """

    c0: float
    coeffs: tuple
    basis: object
    method: str
    pruning: str | None = None
    condition_estimate: float | None = None
    warnings: tuple = ()

    def __post_init__(self):
        if self.method not in ("direct", "indirect"):
            raise ConfigurationError(f"unknown method {self.method!r}")
        if not isinstance(self.basis, (BasisPair, BasisSchedule)):
            raise ConfigurationError("basis must be a BasisPair or BasisSchedule")
        cleaned = tuple((int(k), float(ak), float(bk)) for k, ak, bk in self.coeffs)
        ks = [k for k, _, _ in cleaned]
        if ks != list(range(1, len(cleaned) + 1)):
            raise ConfigurationError("coefficients must cover k = 1..N exactly once, ascending")
        values = [self.c0] + [v for _, ak, bk in cleaned for v in (ak, bk)]
        if not all(math.isfinite(v) for v in values):
            raise ConfigurationError("decomposition values must all be finite")
        object.__setattr__(self, "c0", float(self.c0))
        object.__setattr__(self, "coeffs", cleaned)
        object.__setattr__(self, "warnings", tuple(self.warnings))

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def pair_at(self, k: int) -> BasisPair:
        """The basis pair associated with harmonic k."""
        if isinstance(self.basis, BasisSchedule):
            return self.basis.pair_for(k)
        return self.basis


@dataclass(frozen=True, eq=False)
class GramSystem:
    """The (possibly pruned) 2N x 2N system the direct method solves.

    Rows and columns are ordered (S,1)..(S,N), (R,1)..(R,N); entry (i, j) is
    the inner product of the two dilated members, zeroed where ``pruned_mask``
    is True. ``rhs`` holds the projections of the signal on each row's member.
    """

    matrix: np.ndarray
    rhs: np.ndarray
    pruned_mask: np.ndarray
    order: int
    pruning: str

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=float, copy=True)
        rhs = np.array(self.rhs, dtype=float, copy=True)
        mask = np.array(self.pruned_mask, dtype=bool, copy=True)
        two_n = 2 * self.order
        if matrix.shape != (two_n, two_n) or mask.shape != matrix.shape or rhs.shape != (two_n,):
            raise DimensionError("gram system shapes do not match the order")
        for arr in (matrix, rhs, mask):
            arr.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "rhs", rhs)
        object.__setattr__(self, "pruned_mask", mask)


def _coeff_at(member: BasisFunction, q: int) -> tuple[float, float]:
    """(cosine, sine) coefficient of the member at harmonic q; zero past depth."""
    if 1 <= q <= member.depth:
        return float(member.cos_coeffs[q - 1]), float(member.sin_coeffs[q - 1])
    return 0.0, 0.0


def _require_solvable(pair: BasisPair, eps: float, context: str = "") -> None:
    """Raise unless the pair's first-harmonic 2x2 system is safely invertible."""
    where = f" {context}" if context else ""
    report = check_independence(pair, eps)
    if not report:
        raise AnalysisError(
            f"basis{where} fails the independence condition: "
            f"products {report.products[0]:.6g} and {report.products[1]:.6g}"
        )
    s1c, s1s = _coeff_at(pair.S, 1)
    r1c, r1s = _coeff_at(pair.R, 1)
    det = s1c * r1s - s1s * r1c
    scale = s1c * s1c + s1s * s1s + r1c * r1c + r1s * r1s
    if abs(det) <= eps * scale:
        raise IllConditionedBasisError(
            f"basis{where} first-harmonic system is ill-conditioned: "
            f"determinant {det:.6g} against scale {scale:.6g}"
        )


def _check_band(f: PeriodicSignal, order: int) -> None:
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    band = f.n // 2 - 1
    if order > band:
        raise DimensionError(f"order {order} exceeds the representable band {band} at n={f.n}")


def _indirect_coeffs(f: PeriodicSignal, pair_at, order: int, eps: float) -> np.ndarray:
    """Shared deflation loop; returns the stacked [A_1..A_N, B_1..B_N]."""
    spec = analyze_fourier(f, order)
    out = np.zeros(2 * order)
    for n in range(1, order + 1):
        corr_cos = 0.0
        corr_sin = 0.0
        # contributions already injected at harmonic n by components k < n:
        # only divisors of n reach it, at coefficient index q = n / k of the
        # pair that produced (A_k, B_k)
        for k in range(1, n):
            if n % k != 0:
                continue
            q = n // k
            donor = pair_at(k)
            s_c, s_s = _coeff_at(donor.S, q)
            r_c, r_s = _coeff_at(donor.R, q)
            corr_cos += out[k - 1] * s_c + out[order + k - 1] * r_c
            corr_sin += out[k - 1] * s_s + out[order + k - 1] * r_s
        rhs_cos = float(spec.b[n - 1]) - corr_cos
        rhs_sin = float(spec.a[n - 1]) - corr_sin
        pair = pair_at(n)
        s1c, s1s = _coeff_at(pair.S, 1)
        r1c, r1s = _coeff_at(pair.R, 1)
        det = s1c * r1s - s1s * r1c
        out[n - 1] = (rhs_cos * r1s - r1c * rhs_sin) / det
        out[order + n - 1] = (s1c * rhs_sin - rhs_cos * s1s) / det
    return out


def analyze_indirect(
    f: PeriodicSignal,
    basis: BasisPair,
    order: int,
    eps_independence: float = EPS_INDEPENDENCE,
) -> Decomposition:
    """Frequency-by-frequency analysis of f over a single basis pair.

    Walks k = 1..order, at each step matching the signal's (a_k, b_k) after
    subtracting what lower components already contribute at harmonic k via
    their divisors. The resulting residual has zero Fourier content at every
    harmonic up to the order, and the coefficients do not depend on the order.
    """
    _check_band(f, order)
    _require_solvable(basis, eps_independence)
    x = _indirect_coeffs(f, lambda k: basis, order, eps_independence)
    c0 = float(np.mean(f.samples))
    coeffs = tuple((k, float(x[k - 1]), float(x[order + k - 1])) for k in range(1, order + 1))
    return Decomposition(c0, coeffs, basis, "indirect")


def analyze_multiband(
    f: PeriodicSignal,
    schedule: BasisSchedule,
    order: int,
    eps_independence: float = EPS_INDEPENDENCE,
) -> Decomposition:
    """Indirect analysis with the active basis pair selected per frequency.

    Correction terms at harmonic n read the stored (A_k, B_k) against the pair
    that produced them, so segments may freely disagree about coefficients.
    """
    _check_band(f, order)
    for start, pair in schedule.segments:
        label = pair.label or "unlabeled"
        _require_solvable(pair, eps_independence, f"(segment at k={start}, {label})")
    x = _indirect_coeffs(f, schedule.pair_for, order, eps_independence)
    c0 = float(np.mean(f.samples))
    coeffs = tuple((k, float(x[k - 1]), float(x[order + k - 1])) for k in range(1, order + 1))
    return Decomposition(c0, coeffs, schedule, "indirect")


def _keep_mask(order: int, pruning: str) -> np.ndarray:
    """Boolean (2N, 2N) mask of entries the pruning rule keeps."""
    if pruning not in PRUNING_RULES:
        raise ConfigurationError(f"unknown pruning rule {pruning!r}")
    k = np.arange(1, order + 1)
    kk, mm = np.meshgrid(k, k, indexing="ij")
    if pruning == "none":
        keep = np.ones((order, order), dtype=bool)
    elif pruning == "paper":
        lo = np.minimum(kk, mm)
        hi = np.maximum(kk, mm)
        keep = (kk * mm <= order) | (hi % lo == 0)
    else:  # lcm: prune when the first common harmonic lies beyond the band
        common = kk // np.gcd(kk, mm) * mm
        keep = common <= order
    return np.tile(keep, (2, 2))


def build_gram_system(
    f: PeriodicSignal, basis: BasisPair, order: int, pruning: str = "paper"
) -> GramSystem:
    """Assemble the direct method's system over the dilated family of the pair.

    Entries are inner products of dilated members, computed from coefficient
    spectra wide enough that nothing is truncated, so pruned and unpruned
    variants differ only by the rule. Under ``paper`` pruning a cross-frequency
    entry (k != m) survives only if k*m <= order or the smaller index divides
    the larger; ``lcm`` keeps it only if lcm(k, m) <= order; ``none`` keeps all.
    """
    _check_band(f, order)
    depth = max(basis.S.depth, basis.R.depth)
    cap = max(depth * order, f.n // 2 - 1)
    a_s, b_s = _dilation_rows(basis.S, order, cap)
    a_r, b_r = _dilation_rows(basis.R, order, cap)
    rows_a = np.vstack([a_s, a_r])
    rows_b = np.vstack([b_s, b_r])
    gram = 0.5 * (rows_a @ rows_a.T + rows_b @ rows_b.T)
    keep = _keep_mask(order, pruning)
    gram[~keep] = 0.0
    f_spec = analyze_fourier(f, f.n // 2 - 1)
    band = f_spec.max_harmonic
    rhs = 0.5 * (rows_a[:, :band] @ f_spec.a + rows_b[:, :band] @ f_spec.b)
    return GramSystem(gram, rhs, ~keep, order, pruning)


def _solve_with_condition(matrix: np.ndarray, rhs: np.ndarray) -> tuple[np.ndarray, float]:
    """Dense LU solve with partial pivoting plus a 1-norm condition estimate."""
    with _warnings.catch_warnings():
        _warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(matrix)
    if np.any(np.diag(lu) == 0.0):
        raise AnalysisError("gram system is exactly singular")
    gecon = get_lapack_funcs("gecon", (matrix,))
    anorm = np.linalg.norm(matrix, 1)
    rcond, info = gecon(lu, anorm)
    if info != 0:
        raise AnalysisError(f"condition estimation failed (info={info})")
    if rcond == 0.0:
        raise AnalysisError("gram system is numerically singular")
    solution = lu_solve((lu, piv), rhs)
    return solution, 1.0 / float(rcond)


def analyze_direct(
    f: PeriodicSignal,
    basis: BasisPair,
    order: int,
    pruning: str = "paper",
    eps_independence: float = EPS_INDEPENDENCE,
) -> Decomposition:
    """One-shot analysis of f by solving the (pruned) Gram system.

    Unlike the indirect method, the coefficients depend on the order: adding
    components redistributes weight across the non-orthogonal family. The
    result carries a 1-norm condition estimate of the system; estimates above
    ``CONDITION_WARN_LIMIT`` attach a warning instead of failing.
    """
    _require_solvable(basis, eps_independence)
    system = build_gram_system(f, basis, order, pruning)
    x, cond = _solve_with_condition(system.matrix, system.rhs)
    notes = ()
    if cond > CONDITION_WARN_LIMIT:
        notes = (
            f"condition estimate {cond:.3e} exceeds {CONDITION_WARN_LIMIT:.0e}; "
            "coefficients may be unreliable",
        )
    c0 = float(np.mean(f.samples))
    coeffs = tuple((k, float(x[k - 1]), float(x[order + k - 1])) for k in range(1, order + 1))
    return Decomposition(c0, coeffs, basis, "direct", pruning, cond, notes)


def combined_spectrum(d: Decomposition, band_cap: int) -> FourierSpectrum:
    """Spectrum of the full reconstruction, truncated at ``band_cap``."""
    a = np.zeros(band_cap)
    b = np.zeros(band_cap)
    for k, a_k, b_k in d.coeffs:
        pair = d.pair_at(k)
        for member, weight in ((pair.S, a_k), (pair.R, b_k)):
            spec = dilate(member, k, band_cap)
            m = spec.max_harmonic
            a[:m] += weight * spec.a
            b[:m] += weight * spec.b
    return FourierSpectrum(d.c0, a, b)


def reconstruct(d: Decomposition, n: int) -> PeriodicSignal:
    """Sample c0 + sum_k A_k S(kx) + B_k R(kx) on the n-point grid.

    Each dilated member is truncated at the grid's band limit n/2 - 1.
    """
    return synthesize_fourier(combined_spectrum(d, n // 2 - 1), n)


def residual(f: PeriodicSignal, d: Decomposition) -> PeriodicSignal:
    """f minus its reconstruction at f's own sampling."""
    if d.order > f.n // 2 - 1:
        raise DimensionError(
            f"decomposition of order {d.order} is not representable at n={f.n}"
        )
    approx = reconstruct(d, f.n)
    return PeriodicSignal(f.samples - approx.samples)


# --- JSON interchange --------------------------------------------------------


def decomposition_to_dict(d: Decomposition) -> dict:
    if isinstance(d.basis, BasisSchedule):
        basis_data = schedule_to_dict(d.basis)
    else:
        basis_data = pair_to_dict(d.basis)
    out = {
        "method": d.method,
        "order": d.order,
        "c0": d.c0,
        "coefficients": [{"k": k, "A": a_k, "B": b_k} for k, a_k, b_k in d.coeffs],
        "basis": basis_data,
    }
    if d.pruning is not None:
        out["pruning"] = d.pruning
    if d.condition_estimate is not None:
        out["condition_estimate"] = d.condition_estimate
    if d.warnings:
        out["warnings"] = list(d.warnings)
    return out


def decomposition_from_dict(data) -> Decomposition:
    try:
        basis_data = data["basis"]
        if "segments" in basis_data:
            basis = schedule_from_dict(basis_data)
        else:
            basis = pair_from_dict(basis_data)
        coeffs = tuple(
            (int(item["k"]), float(item["A"]), float(item["B"]))
            for item in data["coefficients"]
        )
        return Decomposition(
            float(data["c0"]),
            coeffs,
            basis,
            str(data["method"]),
            data.get("pruning"),
            data.get("condition_estimate"),
            tuple(data.get("warnings", ())),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigurationError(f"malformed decomposition data: {exc}") from exc


def save_decomposition(d: Decomposition, path) -> None:
    with open(path, "w") as fh:
        json.dump(decomposition_to_dict(d), fh, indent=2)
        fh.write("\n")


def load_decomposition(path) -> Decomposition:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"{path}: invalid JSON: {exc}") from exc
    return decomposition_from_dict(data)
