"""Experiment orchestration: rho sweeps, decay fits, scheme comparisons.

The quantitative cloaking claims are all statements about how the
discrete maximum of |A| over an observation grid decays as the
regularization parameter rho shrinks: algebraically like rho^2 / rho^3
for the sound-hard linings, and like 1/|ln rho| for the sound-soft ones.
This module runs the sweeps, fits both decay models, and compares
schemes pointwise in rho.

Fits use the smallest ceil(2/3 n) rho values by default; the large-rho
end of a sweep is outside the asymptotic regime.  The two models are

  power-law:    least squares of log(max|A|) against log(rho);
  inverse-log:  least squares of max|A| against 1/|ln rho| (linear).

For cross-model comparison, ``residual`` is the RMS relative prediction
error of max|A| itself, which is dimensionless and comparable between
models.  All results are deterministic functions of their inputs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

import numpy as np

from . import mie
from .errors import DomainError, InsufficientDataError, ShapeError
from .media import MediumSpec, virtual_core_params
from .mie import ModalSolution, SchemeSpec, WaveParams

DEFAULT_ANGLE_COUNT = 100
DEFAULT_FIT_FRACTION = 2.0 / 3.0

CSV_SCHEMA_VERSION = 1

# Leading-order zeros of the sound-hard pattern: theta* with
# cos(theta*)/2 = 1/4 in 2D and = 1/3 in 3D.
SPECIAL_ANGLE_2D = math.pi / 3.0
SPECIAL_ANGLE_3D = math.acos(2.0 / 3.0)


def observation_angles(dim: int, count: int) -> np.ndarray:
    """Equidistant observation grid: [0, 2pi) in 2D, [0, pi] in 3D."""
    if count < 2:
        raise DomainError("need at least two observation angles")
    if dim == 2:
        return 2.0 * math.pi * np.arange(count) / count
    if dim == 3:
        return np.linspace(0.0, math.pi, count)
    raise DomainError(f"dim must be 2 or 3, got {dim}")


@dataclass(frozen=True)
class FitResult:
    """Outcome of a decay fit; ``slope`` is the exponent for power-law."""

    slope: float
    residual: float
    intercept: float
    correlation: float
    model: str
    n_used: int

    def __iter__(self):
        return iter((self.slope, self.residual))


@dataclass(frozen=True)
class SweepResult:
    """max|A| over the observation grid per rho, plus the fitted decay."""

    scheme: SchemeSpec
    dim: int
    k: float
    rho_values: np.ndarray
    max_amplitude: np.ndarray
    fitted_exponent: float
    fit_residual: float
    model: str
    angle_count: int = DEFAULT_ANGLE_COUNT

    def __post_init__(self):
        rho = np.asarray(self.rho_values, dtype=float)
        amp = np.asarray(self.max_amplitude, dtype=float)
        if rho.ndim != 1 or rho.size != amp.size:
            raise ShapeError("rho_values and max_amplitude must match in length")
        if np.any(np.diff(rho) >= 0):
            raise DomainError("rho_values must be strictly decreasing")
        if np.any(amp <= 0):
            raise DomainError("max_amplitude entries must be positive")
        object.__setattr__(self, "rho_values", rho)
        object.__setattr__(self, "max_amplitude", amp)


def _default_core(dim: int, rho: float) -> MediumSpec:
    """Virtual-space contents for physical (sigma', q') = (1, 1)."""
    return virtual_core_params(MediumSpec.isotropic(1.0, 1.0, dim), rho, dim)


def _solve(scheme: SchemeSpec, dim: int, wave: WaveParams, rho: float,
           core_physical: MediumSpec | None) -> ModalSolution:
    if not scheme.is_layered:
        return mie.solve(scheme, dim, wave, rho)
    if core_physical is None:
        core = _default_core(dim, rho)
    else:
        core = virtual_core_params(core_physical, rho, dim)
    return mie.coeffs_layered(dim, wave, rho, scheme, core)


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------
def sweep(scheme: SchemeSpec, dim: int, wave: WaveParams,
          rho_values, angle_count: int = DEFAULT_ANGLE_COUNT,
          core_physical: MediumSpec | None = None,
          model: str | None = None) -> SweepResult:
    """max|A| per rho over the observation grid, with the default fit.

    ``core_physical`` holds physical-space contents for the layered
    schemes (default (1, 1)); the per-rho virtual parameters follow from
    the dilation rule.  The fit model defaults to power-law for the
    sound-hard family and inverse-log for the sound-soft family.
    """
    rho = np.asarray(sorted(set(float(r) for r in rho_values), reverse=True))
    if rho.size == 0:
        raise InsufficientDataError("empty rho list")
    angles = observation_angles(dim, angle_count)
    maxima = np.empty(rho.size)
    for i, r in enumerate(rho):
        try:
            sol = _solve(scheme, dim, wave, r, core_physical)
        except Exception as exc:
            raise RuntimeError(f"solver failed at rho={r:g}: {exc}") from exc
        maxima[i] = mie.far_field(sol, angles).max_abs
    if model is None:
        model = "power-law" if scheme.kind in ("sh", "fsh") else "inverse-log"
    result = SweepResult(scheme=scheme, dim=dim, k=wave.k, rho_values=rho,
                         max_amplitude=maxima, fitted_exponent=math.nan,
                         fit_residual=math.nan, model=model,
                         angle_count=angle_count)
    if rho.size >= 3:
        fit = fit_decay(result, model)
        result = replace(result, fitted_exponent=fit.slope,
                         fit_residual=fit.residual)
    return result


def fit_decay(result: SweepResult, model: str,
              keep_fraction: float = DEFAULT_FIT_FRACTION) -> FitResult:
    """Fit the decay of max|A| over the smallest ceil(keep_fraction*n) rhos.

    power-law: log(max|A|) ~ slope*log(rho) + intercept.
    inverse-log: max|A| ~ slope/|ln rho| + intercept.
    ``residual`` is the RMS relative error of the model's prediction of
    max|A| on the fitted points, comparable across models.
    """
    n = result.rho_values.size
    if n < 3:
        raise InsufficientDataError(f"need >= 3 sweep points, have {n}")
    keep = max(3, int(math.ceil(keep_fraction * n)))
    keep = min(keep, n)
    rho = result.rho_values[n - keep:]   # values are sorted decreasing
    amp = result.max_amplitude[n - keep:]

    if model == "power-law":
        x = np.log(rho)
        slope, intercept = np.polyfit(x, np.log(amp), 1)
        pred = np.exp(slope * x + intercept)
        corr = float(np.corrcoef(x, np.log(amp))[0, 1])
    elif model == "inverse-log":
        x = 1.0 / np.abs(np.log(rho))
        slope, intercept = np.polyfit(x, amp, 1)
        pred = slope * x + intercept
        corr = float(np.corrcoef(x, amp)[0, 1])
    else:
        raise DomainError(f"unknown fit model {model!r}")
    residual = float(np.sqrt(np.mean(((pred - amp) / amp) ** 2)))
    return FitResult(slope=float(slope), residual=residual,
                     intercept=float(intercept), correlation=corr,
                     model=model, n_used=keep)


def compare_schemes(a: SweepResult, b: SweepResult) -> np.ndarray:
    """Per-rho |max|A|_a - max|A|_b|; the grids must match exactly."""
    if a.rho_values.shape != b.rho_values.shape or np.any(a.rho_values != b.rho_values):
        raise ShapeError("sweeps were run on different rho grids")
    return np.abs(a.max_amplitude - b.max_amplitude)


# ---------------------------------------------------------------------------
# Special-angle suppression and near-field deviation
# ---------------------------------------------------------------------------
def special_angle_suppression(dim: int, wave: WaveParams, rho_values,
                              angle_count: int = DEFAULT_ANGLE_COUNT) -> np.ndarray:
    """|A(theta*)| / max|A| per rho for the sound-hard scheme.

    theta* is the zero of the leading-order pattern (pi/3 in 2D,
    arccos(2/3) in 3D); the ratio decays ~rho^2 beyond the global rate
    because only the O((k rho)^{dim+2}) remainder survives there.
    """
    theta_star = SPECIAL_ANGLE_2D if dim == 2 else SPECIAL_ANGLE_3D
    angles = observation_angles(dim, angle_count)
    rho = np.asarray(sorted(set(float(r) for r in rho_values), reverse=True))
    out = np.empty(rho.size)
    for i, r in enumerate(rho):
        sol = mie.coeffs_sound_hard(dim, wave, r)
        peak = mie.far_field(sol, angles).max_abs
        star = abs(mie.far_field(sol, np.array([theta_star])).amplitude[0])
        out[i] = star / peak
    return out


def near_field_deviation(fsh: ModalSolution, sh: ModalSolution, radius: float,
                         sample_count: int = 360) -> float:
    """sup over sampled angles of |u^s_fsh - u^s_sh| at the given radius."""
    if fsh.dim != sh.dim or fsh.k != sh.k or fsh.rho != sh.rho:
        raise ShapeError("solutions must share dim, k and rho")
    if radius < fsh.rho:
        raise DomainError(
            f"radius {radius:g} is inside the scatterer (rho = {fsh.rho:g})")
    hi = 2.0 * math.pi if fsh.dim == 2 else math.pi
    thetas = np.linspace(0.0, hi, sample_count, endpoint=fsh.dim == 3)
    ua = mie.field_on_circle(fsh, radius, thetas, region="exterior",
                             scattered_only=True)
    ub = mie.field_on_circle(sh, radius, thetas, region="exterior",
                             scattered_only=True)
    return float(np.max(np.abs(ua - ub)))


# ---------------------------------------------------------------------------
# Persistence
# ---------------------------------------------------------------------------
def write_sweep_csv(result: SweepResult, path) -> None:
    """CSV with one (rho, max_abs_A) row per sweep point, fit in the footer."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# schema=sweep-v{CSV_SCHEMA_VERSION}\n")
        fh.write("rho,max_abs_A\n")
        for r, a in zip(result.rho_values, result.max_amplitude):
            fh.write(f"{float(r)!r},{float(a)!r}\n")
        fh.write(f"# model,{result.model}\n")
        fh.write(f"# fitted_exponent,{float(result.fitted_exponent)!r}\n")
        fh.write(f"# fit_residual,{float(result.fit_residual)!r}\n")


def sweep_summary(result: SweepResult) -> dict:
    return {
        "schema": f"sweep-summary-v{CSV_SCHEMA_VERSION}",
        "scheme": result.scheme.kind,
        "dim": result.dim,
        "k": result.k,
        "angle_count": result.angle_count,
        "model": result.model,
        "exponent": result.fitted_exponent,
        "residual": result.fit_residual,
        "rho_values": [float(r) for r in result.rho_values],
        "max_amplitude": [float(a) for a in result.max_amplitude],
    }


def write_sweep_json(result: SweepResult, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(sweep_summary(result), fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_sweep_csv(path) -> tuple[np.ndarray, np.ndarray]:
    """Read back the (rho, max_abs_A) table of write_sweep_csv."""
    rho, amp = [], []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or line.startswith("rho"):
                continue
            a, b = line.split(",")
            rho.append(float(a))
            amp.append(float(b))
    return np.asarray(rho), np.asarray(amp)
