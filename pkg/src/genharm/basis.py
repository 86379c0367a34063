"""Basis pairs on [0, 1): construction, dilation, validity checks, schedules.

A basis pair holds two zero-mean periodic members S and R as truncated Fourier
coefficient sequences (depth Q). Dilating a member by k moves coefficient q to
harmonic q*k, so every check and inner product below is exact index arithmetic
over coefficients; nothing here goes back to sample-domain quadrature.

Two conditions make a pair usable for analysis:

* independence: the first-harmonic 2x2 systems are solvable,
  ||s1*r'1| - |s'1*r1|| above a relative tolerance;
* the convergence requisite: any combination A*S + B*R carries more energy at
  its fundamental than at all higher harmonics combined, decided as positive
  definiteness of a 2x2 quadratic form.

A pair failing the second check can still be used inside a schedule that
switches to a converging pair at higher frequencies.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConfigurationError
from .signals import FourierSpectrum, analyze_fourier, sample_closed_form

__all__ = [
    "BasisFunction",
    "BasisPair",
    "BasisSchedule",
    "FrameBounds",
    "IndependenceReport",
    "ConvergenceReport",
    "OrthogonalityReport",
    "BUILTIN_KINDS",
    "DEFAULT_DEPTH",
    "EPS_INDEPENDENCE",
    "EPS_CONVERGENCE",
    "ORTHOGONALITY_TOL",
    "builtin_basis",
    "dilate",
    "check_independence",
    "check_convergence",
    "classify_orthogonality",
    "frame_bounds",
    "pair_to_dict",
    "pair_from_dict",
    "schedule_to_dict",
    "schedule_from_dict",
    "save_basis",
    "load_basis",
    "save_schedule",
    "load_schedule",
]

EPS_INDEPENDENCE = 1e-9
EPS_CONVERGENCE = 1e-12
ORTHOGONALITY_TOL = 1e-10
DEFAULT_DEPTH = 64

# guard added to the relative independence threshold so an all-zero product
# pair still fails cleanly instead of comparing 0 > 0
_EPS_ABSOLUTE = 1e-300

_PROJECTION_SAMPLES = 4096
_TRAPEZOID_RISE = 0.125


@dataclass(frozen=True, eq=False)
class BasisFunction:
    """A zero-mean periodic function as cosine/sine coefficients at q = 1..Q.

    ``cos_coeffs[q-1]`` and ``sin_coeffs[q-1]`` are the coefficients of
    cos(2 pi q x) and sin(2 pi q x). There is no DC slot by construction.
    """

    cos_coeffs: np.ndarray
    sin_coeffs: np.ndarray

    def __post_init__(self):
        cos_c = np.array(self.cos_coeffs, dtype=float, copy=True)
        sin_c = np.array(self.sin_coeffs, dtype=float, copy=True)
        if cos_c.ndim != 1 or sin_c.ndim != 1 or cos_c.size != sin_c.size:
            raise ConfigurationError("coefficient arrays must be 1-d and of equal length")
        if cos_c.size < 1:
            raise ConfigurationError("a basis function needs at least one harmonic")
        energy = float(cos_c @ cos_c + sin_c @ sin_c)
        if not math.isfinite(energy) or energy <= 0.0:
            raise ConfigurationError("basis function energy must be finite and positive")
        cos_c.setflags(write=False)
        sin_c.setflags(write=False)
        object.__setattr__(self, "cos_coeffs", cos_c)
        object.__setattr__(self, "sin_coeffs", sin_c)

    @property
    def depth(self) -> int:
        return self.cos_coeffs.size

    def energy(self) -> float:
        """Sum of squared coefficients (twice the mean-square of the function)."""
        return float(self.cos_coeffs @ self.cos_coeffs + self.sin_coeffs @ self.sin_coeffs)


@dataclass(frozen=True, eq=False)
class BasisPair:
    """Two basis members S and R whose dilations span the analysis space."""

    S: BasisFunction
    R: BasisFunction
    label: str = ""

    def __post_init__(self):
        if not isinstance(self.S, BasisFunction) or not isinstance(self.R, BasisFunction):
            raise ConfigurationError("both members of a pair must be BasisFunction values")


@dataclass(frozen=True, eq=False)
class BasisSchedule:
    """Assignment of basis pairs to frequency ranges.

    ``segments`` is an ordered sequence of (start_k, pair); segment i is active
    for harmonics start_k_i <= k < start_k_{i+1}. The first segment must start
    at k = 1 so lookup is total.
    """

    segments: tuple

    def __post_init__(self):
        cleaned = []
        for item in self.segments:
            start, pair = item
            start = int(start)
            if not isinstance(pair, BasisPair):
                raise ConfigurationError("schedule segments must hold BasisPair values")
            cleaned.append((start, pair))
        if not cleaned:
            raise ConfigurationError("a schedule needs at least one segment")
        if cleaned[0][0] != 1:
            raise ConfigurationError("the first schedule segment must start at k = 1")
        starts = [s for s, _ in cleaned]
        if any(b <= a for a, b in zip(starts, starts[1:])):
            raise ConfigurationError("schedule start_k values must be strictly increasing")
        object.__setattr__(self, "segments", tuple(cleaned))

    def pair_for(self, k: int) -> BasisPair:
        """The pair active at harmonic k (k >= 1)."""
        if k < 1:
            raise ValueError(f"harmonic index must be >= 1, got {k}")
        active = self.segments[0][1]
        for start, pair in self.segments:
            if start > k:
                break
            active = pair
        return active


@dataclass(frozen=True)
class FrameBounds:
    """Smallest/largest eigenvalue estimates of the dilated family's Gram matrix."""

    lower: float
    upper: float
    order: int

    def __post_init__(self):
        if not (0.0 <= self.lower <= self.upper):
            raise ValueError(f"need 0 <= lower <= upper, got ({self.lower}, {self.upper})")


@dataclass(frozen=True)
class IndependenceReport:
    """Verdict of the first-coefficient independence check.

    ``products`` holds (s1*r'1, s'1*r1); ``margin`` is how far the absolute
    difference of the products clears the relative threshold (positive passes).
    """

    passed: bool
    products: tuple
    margin: float

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class ConvergenceReport:
    """Verdict of the fundamental-dominance requisite.

    ``eigenvalues`` is (smallest, largest) of the 2x2 form Q; ``form`` is Q
    itself, row-major. The check passes iff the smallest eigenvalue is
    positive beyond tolerance.
    """

    passed: bool
    eigenvalues: tuple
    form: tuple

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class OrthogonalityReport:
    """Orthogonality of a pair along the two axes of the dilated family."""

    horizontal: bool
    vertical: bool
    max_horizontal: float
    max_vertical: float
    k_max: int

    @property
    def horizontal_label(self) -> str:
        return "orthogonal" if self.horizontal else "non_orthogonal"

    @property
    def vertical_label(self) -> str:
        return "orthogonal" if self.vertical else "non_orthogonal"


# --- closed-form waveforms ---------------------------------------------------
#
# All generators are odd (zero-mean) in their canonical phase and return the
# jump midpoint (0) at discontinuities. Phases are in turns; shifting by 0.25
# turns an odd waveform into its even (cosine-phase) counterpart.


def _sinusoid(u: float) -> float:
    return math.sin(2.0 * math.pi * u)


def _square(u: float) -> float:
    if u == 0.0 or u == 0.5:
        return 0.0
    return 1.0 if u < 0.5 else -1.0


def _sawtooth(u: float) -> float:
    return 0.0 if u == 0.0 else 1.0 - 2.0 * u


def _triangle(u: float) -> float:
    if u < 0.25:
        return 4.0 * u
    if u < 0.75:
        return 2.0 - 4.0 * u
    return 4.0 * u - 4.0


def _trapezoid(u: float) -> float:
    rho = _TRAPEZOID_RISE
    if u < rho:
        return u / rho
    if u < 0.5 - rho:
        return 1.0
    if u < 0.5 + rho:
        return (0.5 - u) / rho
    if u < 1.0 - rho:
        return -1.0
    return (u - 1.0) / rho


_QUARTER_COS = {0.0: 1.0, 0.25: 0.0, 0.5: -1.0, 0.75: 0.0}


def _cos_turns(t: float) -> float:
    """cos(2 pi t) with exact values at quarter turns."""
    t = t % 1.0
    exact = _QUARTER_COS.get(t)
    return math.cos(2.0 * math.pi * t) if exact is None else exact


def _sin_turns(t: float) -> float:
    return _cos_turns(t - 0.25)


# kind -> (S generator, default S phase, R generator, default R phase);
# generators are canonical sine-phase, so the defaults below pick the
# even/odd combination that keeps the first-coefficient check solvable
_BUILTIN_LAYOUTS = {
    "square": (_square, 0.25, _sinusoid, 0.0),
    "sawtooth": (_sawtooth, 0.0, _sinusoid, 0.25),
    "triangle": (_triangle, 0.0, _sinusoid, 0.25),
    "trapezoid": (_trapezoid, 0.0, _sinusoid, 0.25),
    "square_saw": (_square, 0.25, _sawtooth, 0.0),
}

BUILTIN_KINDS = ("sine_cosine",) + tuple(_BUILTIN_LAYOUTS) + ("custom",)


def _project(gen: Callable[[float], float], phase: float, depth: int) -> BasisFunction:
    """Project the phase-shifted waveform onto harmonics 1..depth.

    Resolution grows automatically when depth pushes past the default grid's
    Nyquist band. Any DC content is discarded: members are zero-mean by type.
    """
    n = _PROJECTION_SAMPLES
    while n // 2 - 1 < depth:
        n *= 2
    signal = sample_closed_form(lambda x: gen((x + phase) % 1.0), n)
    spec = analyze_fourier(signal, depth)
    return BasisFunction(spec.b, spec.a)


def builtin_basis(
    kind: str,
    phase_s: float | None = None,
    phase_r: float | None = None,
    depth: int = DEFAULT_DEPTH,
    *,
    s_eval: Callable[[float], float] | None = None,
    r_eval: Callable[[float], float] | None = None,
    label: str | None = None,
) -> BasisPair:
    """Construct one of the built-in basis pairs.

    Parameters
    ----------
    kind : str
        One of ``sine_cosine``, ``square``, ``sawtooth``, ``triangle``,
        ``trapezoid``, ``square_saw``, ``custom``.
    phase_s, phase_r : float, optional
        Phase shifts in turns applied to each member. ``None`` selects the
        kind's default. For ``sine_cosine`` the canonical members are already
        cos(2 pi x) and sin(2 pi x) with default shifts 0; all other kinds
        shift canonical sine-phase waveforms, and their defaults pick a
        combination that passes the independence check.
    depth : int
        Harmonic depth Q of each member.
    s_eval, r_eval : callable, optional
        Closed-form evaluators on [0, 1), required for ``kind="custom"``.
    label : str, optional
        Pair label; defaults to the kind name.

    Returns
    -------
    BasisPair
        ``sine_cosine`` is built analytically (exact coefficients, including
        at quarter-turn phases); every other kind is projected numerically at
        high resolution.
    """
    if depth < 1:
        raise ConfigurationError(f"depth must be >= 1, got {depth}")
    if kind == "sine_cosine":
        ps = 0.0 if phase_s is None else float(phase_s)
        pr = 0.0 if phase_r is None else float(phase_r)
        s_cos = np.zeros(depth)
        s_sin = np.zeros(depth)
        r_cos = np.zeros(depth)
        r_sin = np.zeros(depth)
        # S(x) = cos(2 pi (x + ps)), R(x) = sin(2 pi (x + pr))
        s_cos[0] = _cos_turns(ps)
        s_sin[0] = -_sin_turns(ps)
        r_cos[0] = _sin_turns(pr)
        r_sin[0] = _cos_turns(pr)
        pair_label = "sine_cosine" if label is None else label
        return BasisPair(BasisFunction(s_cos, s_sin), BasisFunction(r_cos, r_sin), pair_label)
    if kind == "custom":
        if s_eval is None or r_eval is None:
            raise ConfigurationError("custom basis requires s_eval and r_eval callables")
        gen_s, base_ps, gen_r, base_pr = s_eval, 0.0, r_eval, 0.0
    elif kind in _BUILTIN_LAYOUTS:
        gen_s, base_ps, gen_r, base_pr = _BUILTIN_LAYOUTS[kind]
    else:
        raise ConfigurationError(f"unknown basis kind {kind!r}")
    ps = base_ps if phase_s is None else float(phase_s)
    pr = base_pr if phase_r is None else float(phase_r)
    return BasisPair(
        _project(gen_s, ps, depth),
        _project(gen_r, pr, depth),
        kind if label is None else label,
    )


def dilate(member: BasisFunction, k: int, band_cap: int) -> FourierSpectrum:
    """Spectrum of member(k x): coefficient q lands at harmonic q*k.

    Harmonics above ``band_cap`` are truncated, never folded back; truncation
    is the caller's aliasing guard.
    """
    if k < 1:
        raise ValueError(f"dilation index must be >= 1, got {k}")
    if band_cap < 0:
        raise ValueError(f"band cap must be >= 0, got {band_cap}")
    length = min(member.depth * k, band_cap)
    a = np.zeros(length)
    b = np.zeros(length)
    if length >= k:
        count = length // k
        a[k - 1 :: k] = member.sin_coeffs[:count]
        b[k - 1 :: k] = member.cos_coeffs[:count]
    return FourierSpectrum(0.0, a, b)


def check_independence(pair: BasisPair, eps: float = EPS_INDEPENDENCE) -> IndependenceReport:
    """Decide whether the pair's first-harmonic 2x2 systems are solvable.

    Passes iff ||s1*r'1| - |s'1*r1|| exceeds eps times the magnitude scale of
    the two products. Near-equality means ill-conditioned systems and is
    reported as a failure rather than silently accepted.
    """
    s1 = float(pair.S.cos_coeffs[0])
    sp1 = float(pair.S.sin_coeffs[0])
    r1 = float(pair.R.cos_coeffs[0])
    rp1 = float(pair.R.sin_coeffs[0])
    p_main = s1 * rp1
    p_cross = sp1 * r1
    gap = abs(abs(p_main) - abs(p_cross))
    threshold = eps * (abs(p_main) + abs(p_cross) + _EPS_ABSOLUTE)
    return IndependenceReport(gap > threshold, (p_main, p_cross), gap - threshold)


def check_convergence(pair: BasisPair, eps: float = EPS_CONVERGENCE) -> ConvergenceReport:
    """Decide the fundamental-dominance requisite for the pair.

    For any combination g = A*S + B*R, the energy of g at the fundamental must
    exceed its energy at all higher harmonics combined. Quantified over all
    (A, B) != 0 this is positive definiteness of

        Q = G_1 - sum_{i >= 2} G_i,
        G_i = [[s_i^2 + s'_i^2,        s_i r_i + s'_i r'_i],
               [s_i r_i + s'_i r'_i,   r_i^2 + r'_i^2]],

    decided here via Q's eigenvalues (passes iff the smallest exceeds eps).
    """
    q = max(pair.S.depth, pair.R.depth)
    s = np.zeros(q)
    sp = np.zeros(q)
    r = np.zeros(q)
    rp = np.zeros(q)
    s[: pair.S.depth] = pair.S.cos_coeffs
    sp[: pair.S.depth] = pair.S.sin_coeffs
    r[: pair.R.depth] = pair.R.cos_coeffs
    rp[: pair.R.depth] = pair.R.sin_coeffs
    e_ss = s * s + sp * sp
    e_sr = s * r + sp * rp
    e_rr = r * r + rp * rp
    q00 = float(e_ss[0] - e_ss[1:].sum())
    q01 = float(e_sr[0] - e_sr[1:].sum())
    q11 = float(e_rr[0] - e_rr[1:].sum())
    half_gap = 0.5 * (q00 - q11)
    radius = math.hypot(half_gap, q01)
    center = 0.5 * (q00 + q11)
    lo = center - radius
    hi = center + radius
    return ConvergenceReport(lo > eps, (lo, hi), ((q00, q01), (q01, q11)))


def _dilation_rows(member: BasisFunction, k_max: int, cap: int) -> tuple[np.ndarray, np.ndarray]:
    """Stack the sine/cosine coefficient rows of member(k x) for k = 1..k_max."""
    a = np.zeros((k_max, cap))
    b = np.zeros((k_max, cap))
    for k in range(1, k_max + 1):
        spec = dilate(member, k, cap)
        a[k - 1, : spec.max_harmonic] = spec.a
        b[k - 1, : spec.max_harmonic] = spec.b
    return a, b


def classify_orthogonality(
    pair: BasisPair, k_max: int, tol: float = ORTHOGONALITY_TOL
) -> OrthogonalityReport:
    """Classify the pair's dilated family along both orthogonality axes.

    Horizontal: <S(kx), R(kx)> = 0 at every common index k <= k_max.
    Vertical: every inner product between members at distinct indices
    k != m <= k_max vanishes. Inner products are computed from dilated
    spectra with a cap wide enough that nothing is truncated, so the
    verdicts are exact up to roundoff.
    """
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    cap = max(pair.S.depth, pair.R.depth) * k_max
    a_s, b_s = _dilation_rows(pair.S, k_max, cap)
    a_r, b_r = _dilation_rows(pair.R, k_max, cap)
    gram_sr = 0.5 * (a_s @ a_r.T + b_s @ b_r.T)
    gram_ss = 0.5 * (a_s @ a_s.T + b_s @ b_s.T)
    gram_rr = 0.5 * (a_r @ a_r.T + b_r @ b_r.T)
    max_horizontal = float(np.max(np.abs(np.diag(gram_sr))))
    off = ~np.eye(k_max, dtype=bool)
    if k_max > 1:
        max_vertical = float(
            max(
                np.max(np.abs(gram_ss[off])),
                np.max(np.abs(gram_rr[off])),
                np.max(np.abs(gram_sr[off])),
            )
        )
    else:
        max_vertical = 0.0
    return OrthogonalityReport(
        horizontal=max_horizontal <= tol,
        vertical=max_vertical <= tol,
        max_horizontal=max_horizontal,
        max_vertical=max_vertical,
        k_max=k_max,
    )


def frame_bounds(pair: BasisPair, order: int) -> FrameBounds:
    """Estimate frame bounds of {S(kx), R(kx)}_{k <= order} via the Gram matrix.

    The 2N x 2N Gram matrix (rows ordered (S,1)..(S,N), (R,1)..(R,N)) is built
    un-pruned from dilated spectra at full width, and its extreme eigenvalues
    are returned. A numerically singular family reports lower = 0.
    """
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    cap = max(pair.S.depth, pair.R.depth) * order
    a_s, b_s = _dilation_rows(pair.S, order, cap)
    a_r, b_r = _dilation_rows(pair.R, order, cap)
    rows = np.block([[a_s, b_s], [a_r, b_r]])
    gram = 0.5 * (rows @ rows.T)
    eigs = np.linalg.eigvalsh(gram)
    return FrameBounds(max(0.0, float(eigs[0])), float(eigs[-1]), order)


# --- JSON interchange --------------------------------------------------------


def pair_to_dict(pair: BasisPair) -> dict:
    return {
        "label": pair.label,
        "S": {
            "cos": [float(v) for v in pair.S.cos_coeffs],
            "sin": [float(v) for v in pair.S.sin_coeffs],
        },
        "R": {
            "cos": [float(v) for v in pair.R.cos_coeffs],
            "sin": [float(v) for v in pair.R.sin_coeffs],
        },
    }


def pair_from_dict(data) -> BasisPair:
    try:
        label = str(data.get("label", ""))
        members = {}
        for key in ("S", "R"):
            entry = data[key]
            members[key] = BasisFunction(
                np.asarray(entry["cos"], dtype=float),
                np.asarray(entry["sin"], dtype=float),
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigurationError(f"malformed basis data: {exc}") from exc
    return BasisPair(members["S"], members["R"], label)


def _segment_pair_from_dict(entry) -> BasisPair:
    if "builtin" in entry:
        return builtin_basis(
            str(entry["builtin"]),
            entry.get("phase_s"),
            entry.get("phase_r"),
            int(entry.get("depth", DEFAULT_DEPTH)),
        )
    return pair_from_dict(entry)


def schedule_to_dict(schedule: BasisSchedule) -> dict:
    return {
        "segments": [
            {"start_k": start, "basis": pair_to_dict(pair)}
            for start, pair in schedule.segments
        ]
    }


def schedule_from_dict(data) -> BasisSchedule:
    try:
        segments = [
            (int(item["start_k"]), _segment_pair_from_dict(item["basis"]))
            for item in data["segments"]
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigurationError(f"malformed schedule data: {exc}") from exc
    return BasisSchedule(tuple(segments))


def save_basis(pair: BasisPair, path) -> None:
    with open(path, "w") as fh:
        json.dump(pair_to_dict(pair), fh, indent=2)
        fh.write("\n")


def load_basis(path) -> BasisPair:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"{path}: invalid JSON: {exc}") from exc
    return pair_from_dict(data)


def save_schedule(schedule: BasisSchedule, path) -> None:
    with open(path, "w") as fh:
        json.dump(schedule_to_dict(schedule), fh, indent=2)
        fh.write("\n")


def load_schedule(path) -> BasisSchedule:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"{path}: invalid JSON: {exc}") from exc
    return schedule_from_dict(data)
