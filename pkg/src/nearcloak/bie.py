"""Nystrom solver for 2D exterior sound-hard Helmholtz scattering.

Direct (Green-representation) formulation on a smooth closed curve: the
scattered trace v = u^s|_Gamma solves the second-kind equation

    (1/2) v(x) - (K v)(x) = g(x),        x on Gamma,

where K is the double-layer operator with kernel dG(x-y)/dnu(y),
G(x) = (i/4) H_0^(1)(k|x|), and

    g(x) = -int_Gamma G(x-y) psi(y) ds(y),
    psi = du^s/dnu = -d(e^{ik d.y})/dnu    (sound-hard obstacle).

Both kernels are weakly singular; each is split into an analytic factor
times log(4 sin^2((t-s)/2)) plus a smooth remainder and integrated with
the spectral log-quadrature weights

    R_m = -(2 pi/N) sum_{p=1}^{N-1} cos(p m pi/N)/p - (pi/N^2) (-1)^m

on 2N equispaced nodes (exact for trigonometric polynomials of degree
< N), the smooth parts with the plain trapezoid rule.  Convergence is
spectral on analytic curves.

The far field follows from the same representation,

    A(xhat) = gamma int_Gamma [ d(e^{-ik xhat.y})/dnu v(y)
                                + e^{-ik xhat.y} d(e^{ik d.y})/dnu ] ds(y),

with gamma = e^{i pi/4}/sqrt(8 pi k), a smooth integrand handled by the
trapezoid rule.  A companion routine evaluates the same representation
from Cauchy data sampled on any circle enclosing the scatterer.

The direct second-kind equation is ill-conditioned at interior Neumann
eigenvalues of the curve; the solver estimates the condition number of
the discrete system and raises ResonanceError above 1e12 instead of
silently returning garbage.

Kernel evaluation uses scipy's real-argument Bessel routines; this module
is the cross-validation oracle for the modal solver and deliberately
shares none of its special-function machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import special
from scipy.linalg import lu_factor, lu_solve, get_lapack_funcs

from .errors import DomainError, ResonanceError, ShapeError
from .mie import FarFieldPattern, WaveParams

_EULER_GAMMA = 0.5772156649015328606
MAX_NODES = 2048
RESONANCE_CONDITION = 1e12


# ---------------------------------------------------------------------------
# Curves
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class BoundaryCurve:
    """Closed curve t in [0, 2pi) -> R^2 with two derivatives.

    The callables must be vectorized over t and 2pi-periodic; the
    parametrization must be regular (|x'(t)| > 0) and counterclockwise,
    so that (x2', -x1') is the outward normal.
    """

    position: Callable[[np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray], np.ndarray]
    second_derivative: Callable[[np.ndarray], np.ndarray]
    n_points: int
    name: str = "curve"

    def __post_init__(self):
        if self.n_points % 2 != 0 or self.n_points < 8:
            raise DomainError("n_points must be an even integer >= 8")
        if self.n_points > MAX_NODES:
            raise DomainError(f"n_points capped at {MAX_NODES} for the dense solver")
        t = self.nodes()
        dp = np.asarray(self.derivative(t))
        if np.min(np.hypot(dp[:, 0], dp[:, 1])) <= 0:
            raise DomainError("parametrization is not regular (|x'| = 0 at a node)")
        p0 = np.asarray(self.position(np.array([0.0])))
        p1 = np.asarray(self.position(np.array([2.0 * math.pi])))
        if np.max(np.abs(p0 - p1)) > 1e-10:
            raise DomainError("curve is not closed over [0, 2pi]")

    def nodes(self) -> np.ndarray:
        return 2.0 * math.pi * np.arange(self.n_points) / self.n_points

    def with_points(self, n_points: int) -> "BoundaryCurve":
        return BoundaryCurve(self.position, self.derivative,
                             self.second_derivative, n_points, self.name)


def circle(radius: float, n_points: int = 256) -> BoundaryCurve:
    if radius <= 0:
        raise DomainError("circle radius must be positive")

    def pos(t):
        t = np.asarray(t, dtype=float)
        return radius * np.stack([np.cos(t), np.sin(t)], axis=-1)

    def dpos(t):
        t = np.asarray(t, dtype=float)
        return radius * np.stack([-np.sin(t), np.cos(t)], axis=-1)

    def ddpos(t):
        t = np.asarray(t, dtype=float)
        return radius * np.stack([-np.cos(t), -np.sin(t)], axis=-1)

    return BoundaryCurve(pos, dpos, ddpos, n_points, name=f"circle(r={radius:g})")


def kite(n_points: int = 256) -> BoundaryCurve:
    """The kite benchmark: x(t) = (cos t + 0.65 cos 2t - 0.65, 1.5 sin t)."""

    def pos(t):
        t = np.asarray(t, dtype=float)
        return np.stack([np.cos(t) + 0.65 * np.cos(2 * t) - 0.65,
                         1.5 * np.sin(t)], axis=-1)

    def dpos(t):
        t = np.asarray(t, dtype=float)
        return np.stack([-np.sin(t) - 1.3 * np.sin(2 * t),
                         1.5 * np.cos(t)], axis=-1)

    def ddpos(t):
        t = np.asarray(t, dtype=float)
        return np.stack([-np.cos(t) - 2.6 * np.cos(2 * t),
                         -1.5 * np.sin(t)], axis=-1)

    return BoundaryCurve(pos, dpos, ddpos, n_points, name="kite")


@dataclass(frozen=True)
class DensitySolution:
    """Solved boundary data: trace of u^s and its (known) normal derivative."""

    curve: BoundaryCurve
    wave: WaveParams
    nodes: np.ndarray          # (2N, 2) quadrature points
    trace: np.ndarray          # v = u^s on Gamma at the nodes
    neumann_data: np.ndarray   # psi = du^s/dnu = -d(u^i)/dnu at the nodes
    normals: np.ndarray = field(repr=False, default=None)      # unnormalised (x2', -x1')
    jacobian: np.ndarray = field(repr=False, default=None)     # |x'(t)|
    residual: float = 0.0
    condition_estimate: float = 0.0

    def __post_init__(self):
        n = self.nodes.shape[0]
        if self.trace.shape != (n,) or self.neumann_data.shape != (n,):
            raise ShapeError("trace/neumann_data length must match the node count")


# ---------------------------------------------------------------------------
# Quadrature weights
# ---------------------------------------------------------------------------
def log_weights(n_half: int) -> np.ndarray:
    """Kress weights R_m, m = 0..2N-1, for the log(4 sin^2) factor."""
    m = np.arange(2 * n_half)
    p = np.arange(1, n_half)
    table = np.cos(np.outer(p, m) * math.pi / n_half) / p[:, None]
    r = -(2.0 * math.pi / n_half) * table.sum(axis=0)
    r -= (math.pi / n_half ** 2) * np.cos(m * math.pi)
    return r


def _log_sin_factor(t: np.ndarray) -> np.ndarray:
    """log(4 sin^2((t_i - t_j)/2)) with zeros on the diagonal."""
    dt = t[:, None] - t[None, :]
    s = 4.0 * np.sin(dt / 2.0) ** 2
    np.fill_diagonal(s, 1.0)
    return np.log(s)


# ---------------------------------------------------------------------------
# Assembly and solve
# ---------------------------------------------------------------------------
def _geometry(curve: BoundaryCurve):
    t = curve.nodes()
    pts = np.asarray(curve.position(t), dtype=float)
    d1 = np.asarray(curve.derivative(t), dtype=float)
    d2 = np.asarray(curve.second_derivative(t), dtype=float)
    normals = np.stack([d1[:, 1], -d1[:, 0]], axis=1)  # outward, length |x'|
    jac = np.hypot(d1[:, 0], d1[:, 1])
    return t, pts, d1, d2, normals, jac


def _kernel_matrices(k: float, t, pts, d1, d2, normals, jac):
    """Split double-layer (M1, M2) and single-layer (S1, S2) kernels."""
    diff = pts[:, None, :] - pts[None, :, :]
    r = np.hypot(diff[..., 0], diff[..., 1])
    np.fill_diagonal(r, 1.0)  # placeholder; diagonals are overwritten below
    kr = k * r
    b = diff[..., 0] * normals[None, :, 0] + diff[..., 1] * normals[None, :, 1]
    logsin = _log_sin_factor(t)

    j1 = special.jv(1, kr)
    h1 = special.hankel1(1, kr)
    m_full = 0.25j * k * h1 * b / r
    m1 = -(k / (4.0 * math.pi)) * j1 * b / r
    m2 = m_full - m1 * logsin
    np.fill_diagonal(m1, 0.0)
    diag_m2 = (d2[:, 0] * d1[:, 1] - d2[:, 1] * d1[:, 0]) / (4.0 * math.pi * jac ** 2)
    np.fill_diagonal(m2, diag_m2)

    j0 = special.jv(0, kr)
    h0 = special.hankel1(0, kr)
    s_full = 0.25j * h0 * jac[None, :]
    s1 = -(1.0 / (4.0 * math.pi)) * j0 * jac[None, :]
    s2 = s_full - s1 * logsin
    np.fill_diagonal(s1, -(1.0 / (4.0 * math.pi)) * jac)  # J_0(0) = 1
    diag_s2 = jac * (0.25j - (np.log(0.5 * k * jac) + _EULER_GAMMA) / (2.0 * math.pi))
    np.fill_diagonal(s2, diag_s2)
    return m1, m2, s1, s2


def _quadrature_matrix(k1, k2, r_weights, n_half):
    """Combine a split kernel into one quadrature matrix."""
    n = 2 * n_half
    idx = np.abs(np.arange(n)[:, None] - np.arange(n)[None, :])
    return r_weights[idx] * k1 + (math.pi / n_half) * k2


def assemble_and_solve(curve: BoundaryCurve, wave: WaveParams) -> DensitySolution:
    """Assemble (1/2 I - K) v = g and solve it densely.

    Raises ResonanceError when the system's estimated condition number
    exceeds 1e12 (interior Neumann resonance of the curve).
    """
    if wave.d.size != 2:
        raise DomainError("boundary-integral solver is 2D; give a 2-vector direction")
    k = wave.k
    n_half = curve.n_points // 2
    t, pts, d1, d2, normals, jac = _geometry(curve)
    m1, m2, s1, s2 = _kernel_matrices(k, t, pts, d1, d2, normals, jac)
    rw = log_weights(n_half)
    kmat = _quadrature_matrix(m1, m2, rw, n_half)
    smat = _quadrature_matrix(s1, s2, rw, n_half)

    # psi = du^s/dnu = -d(e^{ik d.y})/dnu; the unit normal is normals/jac.
    phase = np.exp(1j * k * pts @ wave.d)
    psi = -1j * k * (normals @ wave.d) / jac * phase

    g = -(smat @ psi)
    a = 0.5 * np.eye(curve.n_points, dtype=complex) - kmat

    lu, piv = lu_factor(a)
    gecon = get_lapack_funcs(("gecon",), (a,))[0]
    anorm = np.linalg.norm(a, 1)
    rcond, _ = gecon(lu, anorm, norm="1")
    cond = 1.0 / rcond if rcond > 0 else math.inf
    if cond > RESONANCE_CONDITION:
        raise ResonanceError(
            f"discrete system condition ~{cond:.2e}; k={k:g} is near an "
            f"interior resonance of {curve.name}")
    v = lu_solve((lu, piv), g)
    gn = np.linalg.norm(g)
    residual = float(np.linalg.norm(a @ v - g) / gn) if gn > 0 else 0.0
    return DensitySolution(curve=curve, wave=wave, nodes=pts, trace=v,
                           neumann_data=psi, normals=normals, jacobian=jac,
                           residual=residual, condition_estimate=float(cond))


# ---------------------------------------------------------------------------
# Far fields
# ---------------------------------------------------------------------------
def _gamma_2d(k: float) -> complex:
    return np.exp(1j * math.pi / 4) / math.sqrt(8.0 * math.pi * k)


def far_field_from_density(solution: DensitySolution, wave: WaveParams,
                           angles: np.ndarray) -> FarFieldPattern:
    """A(xhat) from the solved trace, trapezoid over the smooth kernel."""
    k = wave.k
    angles = np.asarray(angles, dtype=float)
    xhat = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    pts, normals = solution.nodes, solution.normals
    n_half = solution.curve.n_points // 2

    phase_out = np.exp(-1j * k * xhat @ pts.T)           # (n_angles, 2N)
    dn_out = -1j * k * (xhat @ normals.T) * phase_out    # includes |x'|
    inc_flux = 1j * k * (normals @ wave.d) * np.exp(1j * k * pts @ wave.d)
    integrand = dn_out * solution.trace[None, :] + phase_out * inc_flux[None, :]
    amp = _gamma_2d(k) * (math.pi / n_half) * integrand.sum(axis=1)
    return FarFieldPattern(angles, amp, "2d")


def far_field_from_cauchy_data(radius: float, u: np.ndarray, dudn: np.ndarray,
                               wave: WaveParams,
                               angles: np.ndarray) -> FarFieldPattern:
    """A(xhat) from Cauchy data of u^s on a circle enclosing the scatterer.

    ``u`` and ``dudn`` sample the scattered field and its outward normal
    (radial) derivative at equispaced angles 2 pi j / M on the circle of
    the given radius.
    """
    u = np.asarray(u, dtype=complex)
    dudn = np.asarray(dudn, dtype=complex)
    if u.shape != dudn.shape or u.ndim != 1:
        raise ShapeError("u and dudn must be 1D arrays of equal length")
    if radius <= 0:
        raise DomainError("sampling radius must be positive")
    m = u.size
    k = wave.k
    phis = 2.0 * math.pi * np.arange(m) / m
    ys = radius * np.stack([np.cos(phis), np.sin(phis)], axis=1)
    nu = ys / radius
    angles = np.asarray(angles, dtype=float)
    xhat = np.stack([np.cos(angles), np.sin(angles)], axis=1)

    phase_out = np.exp(-1j * k * xhat @ ys.T)            # (n_angles, M)
    dn_out = -1j * k * (xhat @ nu.T) * phase_out
    integrand = dn_out * u[None, :] - phase_out * dudn[None, :]
    ds = 2.0 * math.pi * radius / m
    amp = _gamma_2d(k) * ds * integrand.sum(axis=1)
    return FarFieldPattern(angles, amp, "2d")
