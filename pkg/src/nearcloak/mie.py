"""Exact modal solver for concentric circular/spherical scatterers.

Solves time-harmonic scattering of a unit plane wave by
* a sound-soft (Dirichlet) or sound-hard (Neumann) obstacle of radius
  rho, and
* the three-region transmission problem: homogeneous exterior, a lossy
  layer occupying rho/2 <= |x| <= rho with isotropic parameters
  (sigma_l, q_l), and a uniform core inside rho/2 with (sigma_a, q_a) --
  all in the virtual-space description.

Per mode n, the exterior field is i^n J_n(k r) + d_n H_n^(1)(k r)
(angular factor e^{i n theta}) in 2D, and the axisymmetric reduction
(2n+1) i^n [j_n(k r) + d_n h_n^(1)(k r)] P_n(cos theta) in 3D, where
theta is the angle between the observation direction and the incident
direction.  The layer carries wavenumber k_tilde = k sqrt(q_l/sigma_l),
branch fixed so Im k_tilde >= 0, and the core k_2 = k sqrt(q_a/sigma_a).

The transmission system per mode is solved by explicit elimination:
first the layer reflection ratio Upsilon_0 = b_n/a_n from the inner
interface, then the impedance-like quotient

    W = (1/C_0) (J_n'(kt rho) + Upsilon_0 H_n'(kt rho))
              / (J_n(kt rho)  + Upsilon_0 H_n(kt rho)),

then d_n from the outer interface, with C_0 = 1/sqrt(sigma_l q_l).
When J_n(k_2 rho/2) vanishes (to the branch threshold) the inner
elimination switches to the degenerate form
Upsilon_0 = -J_n(kt rho/2)/H_n^(1)(kt rho/2).

Everything runs in scaled-mantissa arithmetic (see specfun): for the
finite sound-hard layer, Im(kt rho) grows like rho^{-delta} and the
J/H magnitudes split as e^{+-Im(kt rho)}; the explicit elimination in
log-scale form cancels those factors symbolically, so the solver is
stable down to rho ~ 1e-6.

All solvers are pure functions; modes are independent; returned
solutions are immutable.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import specfun
from .errors import DomainError
from .media import MediumSpec, virtual_core_params
from .specfun import scaled

TAIL_THRESHOLD = 1e-14
DEGENERATE_CONDITION = 1e14

# Switch to the degenerate inner-interface branch below this level.
BRANCH_THRESHOLD = 1e-12

_I_POW = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)  # i^n for n mod 4


# ---------------------------------------------------------------------------
# Parameter records
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class WaveParams:
    """Incident plane wave: wavenumber k > 0 and unit direction d."""

    k: float
    d: np.ndarray

    def __post_init__(self):
        if not (self.k > 0 and math.isfinite(self.k)):
            raise DomainError(f"wavenumber must be positive, got {self.k}")
        d = np.asarray(self.d, dtype=float)
        norm = float(np.linalg.norm(d))
        if d.ndim != 1 or d.size not in (2, 3) or abs(norm - 1.0) > 1e-10:
            raise DomainError("incident direction must be a 2- or 3-vector of unit length")
        object.__setattr__(self, "d", d / norm)


@dataclass(frozen=True)
class SchemeSpec:
    """Which lining to use and its layer parameters (virtual space).

    kinds: "ss" and "sh" are the ideal sound-soft/sound-hard linings;
    "fss" is the lossy layer sigma_l = 1, q_l = 1 + i beta rho^-2;
    "fsh" is the lossy layer sigma_l = C rho^{2+2 delta}, q_l = a + i b;
    "layered" takes explicit (sigma_l, q_l) values as given.
    """

    kind: str
    fss_beta_coeff: float = 2.5
    fsh_c: float = 1.0
    fsh_delta: float = 0.5
    fsh_a: float = 3.0
    fsh_b: float = 2.0
    layer_sigma: float = 1.0
    layer_q: complex = 1.0 + 0j

    def __post_init__(self):
        if self.kind not in ("ss", "sh", "fss", "fsh", "layered"):
            raise DomainError(f"unknown scheme kind {self.kind!r}")
        if self.kind == "fsh" and min(self.fsh_c, self.fsh_delta,
                                      self.fsh_a, self.fsh_b) <= 0:
            raise DomainError("FSH requires C, delta, a, b > 0")
        if self.kind == "fss" and self.fss_beta_coeff <= 0:
            raise DomainError("FSS requires beta > 0")

    @classmethod
    def sound_soft(cls) -> "SchemeSpec":
        return cls("ss")

    @classmethod
    def sound_hard(cls) -> "SchemeSpec":
        return cls("sh")

    @classmethod
    def finite_sound_soft(cls, beta_coeff: float = 2.5) -> "SchemeSpec":
        return cls("fss", fss_beta_coeff=beta_coeff)

    @classmethod
    def finite_sound_hard(cls, c: float = 1.0, delta: float = 0.5,
                          a: float = 3.0, b: float = 2.0) -> "SchemeSpec":
        return cls("fsh", fsh_c=c, fsh_delta=delta, fsh_a=a, fsh_b=b)

    @classmethod
    def layered(cls, sigma_l: float, q_l: complex) -> "SchemeSpec":
        return cls("layered", layer_sigma=sigma_l, layer_q=q_l)

    @property
    def is_layered(self) -> bool:
        return self.kind in ("fss", "fsh", "layered")

    def layer_params(self, rho: float) -> tuple[float, complex]:
        """Virtual-space (sigma_l, q_l) of the lossy layer at this rho."""
        if self.kind == "fss":
            return 1.0, 1.0 + 1j * self.fss_beta_coeff / rho ** 2
        if self.kind == "fsh":
            return (self.fsh_c * rho ** (2.0 + 2.0 * self.fsh_delta),
                    self.fsh_a + 1j * self.fsh_b)
        if self.kind == "layered":
            return self.layer_sigma, complex(self.layer_q)
        raise DomainError(f"scheme {self.kind!r} has no lossy layer")


@dataclass(frozen=True)
class LayerWavenumbers:
    """Derived layer/core constants for a transmission solve.

    k_tilde = k sqrt(q_l/sigma_l) with Im k_tilde >= 0 (chosen branch),
    k2 = k sqrt(q_a/sigma_a), C0 = 1/sqrt(sigma_l q_l),
    coupling = sqrt(q_a sigma_a).
    """

    k_tilde: complex
    k2: complex
    c0: complex
    coupling: complex
    upsilon0_branch: str = "nonzero-core"


@dataclass(frozen=True)
class ModalSolution:
    """Modal coefficients of a radial scattering solve.

    d_n are the exterior scattering coefficients (2D convention includes
    the i^n factor; the 3D entries are the axisymmetric reflection
    coefficients multiplying (2n+1) i^n h_n P_n).  For transmission
    solves a_n/b_n (layer) and c_n (core) are also populated; their
    public complex arrays may underflow to zero for extreme layer decay,
    in which case the scaled copies kept privately still carry the full
    values for field evaluation.
    """

    dim: int
    rho: float
    k: float
    n_max: int
    d_n: np.ndarray
    a_n: np.ndarray | None = None
    b_n: np.ndarray | None = None
    c_n: np.ndarray | None = None
    truncation_tail: float = 0.0
    scheme: SchemeSpec | None = None
    layer: LayerWavenumbers | None = None
    h_quotient: np.ndarray | None = None
    branch_flags: tuple[str, ...] | None = None
    degenerate_modes: tuple[int, ...] = ()
    _a_sv: tuple = field(default=(), repr=False)
    _b_sv: tuple = field(default=(), repr=False)
    _c_sv: tuple = field(default=(), repr=False)

    @property
    def is_layered(self) -> bool:
        return self.layer is not None


@dataclass(frozen=True)
class FarFieldPattern:
    """Sampled scattering amplitude A(theta), theta = angle(xhat, d).

    gamma_convention records the normalisation of the underlying
    far-field formula: "2d" means gamma = e^{i pi/4}/sqrt(8 pi k),
    "3d" means gamma = 1/(4 pi).
    """

    angles: np.ndarray
    amplitude: np.ndarray
    gamma_convention: str

    def __post_init__(self):
        a = np.asarray(self.angles, dtype=float)
        if a.ndim != 1 or np.any(np.diff(a) <= 0):
            raise DomainError("angles must be strictly increasing")
        hi = 2.0 * math.pi if self.gamma_convention == "2d" else math.pi
        if a[0] < 0 or a[-1] > hi + 1e-12:
            raise DomainError("angles outside the valid range")
        object.__setattr__(self, "angles", a)
        object.__setattr__(self, "amplitude",
                           np.asarray(self.amplitude, dtype=complex))

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.amplitude)))


# ---------------------------------------------------------------------------
# Truncation
# ---------------------------------------------------------------------------
def default_n_max(k: float, rho: float) -> int:
    """Initial truncation order: krho + 8 + 4 (krho)^(1/3), rounded up."""
    x = k * rho
    return int(math.ceil(x + 8.0 + 4.0 * x ** (1.0 / 3.0)))


def _tail(d: np.ndarray) -> float:
    peak = float(np.max(np.abs(d)))
    if peak == 0.0:
        return 0.0
    return float(abs(d[-1])) / peak


# ---------------------------------------------------------------------------
# Ideal linings (Dirichlet / Neumann obstacle)
# ---------------------------------------------------------------------------
def _bessel_pack(dim: int, nmax: int, z: complex):
    """(B, H, B', H') scaled sequences of the dim-appropriate family."""
    if dim == 2:
        js = specfun.bessel_j_all(nmax + 1, z)
        hs = specfun.bessel_h1_all(nmax + 1, z)
    else:
        js = specfun.spherical_j_all(nmax + 1, z)
        hs = specfun.spherical_h1_all(nmax + 1, z)
    return js, hs, specfun.derivative_all(js, z), specfun.derivative_all(hs, z)


def _obstacle_coeffs(dim: int, wave: WaveParams, rho: float, neumann: bool,
                     n_max: int | None) -> ModalSolution:
    if rho <= 0:
        raise DomainError("obstacle radius must be positive")
    if dim not in (2, 3):
        raise DomainError(f"dim must be 2 or 3, got {dim}")
    nmax = default_n_max(wave.k, rho) if n_max is None else int(n_max)
    while True:
        z = complex(wave.k * rho)
        js, hs, djs, dhs = _bessel_pack(dim, nmax, z)
        d = np.empty(nmax + 1, dtype=complex)
        for n in range(nmax + 1):
            num, den = (djs[n], dhs[n]) if neumann else (js[n], hs[n])
            phase = _I_POW[n & 3] if dim == 2 else 1.0
            d[n] = (-(phase) * (num / den)).to_complex()
        tail = _tail(d)
        if tail <= TAIL_THRESHOLD or n_max is not None or nmax >= specfun.ORDER_MAX - 2:
            break
        nmax += 8
    return ModalSolution(dim=dim, rho=rho, k=wave.k, n_max=nmax, d_n=d,
                         truncation_tail=tail,
                         scheme=SchemeSpec.sound_hard() if neumann else SchemeSpec.sound_soft())


def coeffs_sound_hard(dim: int, wave: WaveParams, rho: float,
                      n_max: int | None = None) -> ModalSolution:
    """Neumann obstacle: d_n = -i^n J_n'(k rho)/H_n^(1)'(k rho) in 2D."""
    return _obstacle_coeffs(dim, wave, rho, neumann=True, n_max=n_max)


def coeffs_sound_soft(dim: int, wave: WaveParams, rho: float,
                      n_max: int | None = None) -> ModalSolution:
    """Dirichlet obstacle: d_n = -i^n J_n(k rho)/H_n^(1)(k rho) in 2D."""
    return _obstacle_coeffs(dim, wave, rho, neumann=False, n_max=n_max)


# ---------------------------------------------------------------------------
# Layered transmission problem
# ---------------------------------------------------------------------------
def layer_wavenumbers(scheme: SchemeSpec, rho: float, k: float,
                      core: MediumSpec) -> LayerWavenumbers:
    sigma_l, q_l = scheme.layer_params(rho)
    if not core.is_isotropic:
        raise DomainError("radial solver needs an isotropic core")
    sigma_a, q_a = core.sigma_scalar, core.q
    k_tilde = k * cmath.sqrt(q_l / sigma_l)
    if k_tilde.imag < 0:
        k_tilde = -k_tilde
    k2 = k * cmath.sqrt(q_a / sigma_a)
    if k2.imag < 0:
        k2 = -k2
    c0 = 1.0 / cmath.sqrt(sigma_l * q_l)
    coupling = cmath.sqrt(q_a * sigma_a)
    return LayerWavenumbers(k_tilde=k_tilde, k2=k2, c0=c0, coupling=coupling)


def coeffs_layered(dim: int, wave: WaveParams, rho: float, scheme: SchemeSpec,
                   core: MediumSpec, n_max: int | None = None) -> ModalSolution:
    """Solve the layer (rho/2 <= |x| <= rho) + core transmission problem.

    ``core`` holds the virtual-space parameters of the uniform contents
    of the ball of radius rho/2; use media.virtual_core_params to enter
    physical-space contents.  Modes whose outer elimination loses more
    than ~14 digits to cancellation are flagged in degenerate_modes.
    """
    if rho <= 0:
        raise DomainError("rho must be positive")
    if dim not in (2, 3):
        raise DomainError(f"dim must be 2 or 3, got {dim}")
    if not scheme.is_layered:
        raise DomainError(f"scheme {scheme.kind!r} has no layer to solve")
    lw = layer_wavenumbers(scheme, rho, wave.k, core)
    nmax = default_n_max(wave.k, rho) if n_max is None else int(n_max)

    while True:
        zk = complex(wave.k * rho)
        zt = lw.k_tilde * rho
        zt2 = 0.5 * lw.k_tilde * rho
        zc = 0.5 * lw.k2 * rho
        jk, hk, djk, dhk = _bessel_pack(dim, nmax, zk)
        jt, ht, djt, dht = _bessel_pack(dim, nmax, zt)
        jt2, ht2, djt2, dht2 = _bessel_pack(dim, nmax, zt2)
        if dim == 2:
            jc = specfun.bessel_j_all(nmax + 1, zc)
        else:
            jc = specfun.spherical_j_all(nmax + 1, zc)
        djc = specfun.derivative_all(jc, zc)

        c0_sv = scaled(lw.c0, 0.0)
        coup_sv = scaled(lw.coupling, 0.0)

        d = np.empty(nmax + 1, dtype=complex)
        a_arr = np.empty(nmax + 1, dtype=complex)
        b_arr = np.empty(nmax + 1, dtype=complex)
        c_arr = np.empty(nmax + 1, dtype=complex)
        wq = np.empty(nmax + 1, dtype=complex)
        a_sv_list, b_sv_list, c_sv_list = [], [], []
        branches = []
        degenerate = []

        for n in range(nmax + 1):
            # Inner interface: ratio Upsilon_0 = b_n / a_n.
            if jc[n].abs_log() < math.log(BRANCH_THRESHOLD) + max(0.0, djc[n].abs_log()):
                ups = -(jt2[n] / ht2[n])
                branch = "zero-core"
            else:
                f_sv = c0_sv * coup_sv * (djc[n] / jc[n])
                ups = -(djt2[n] - f_sv * jt2[n]) / (dht2[n] - f_sv * ht2[n])
                branch = "nonzero-core"
            branches.append(branch)

            # Outer interface: impedance quotient and exterior coefficient.
            q_den = jt[n] + ups * ht[n]
            q_num = djt[n] + ups * dht[n]
            w_sv = (q_num / q_den) / c0_sv
            num = djk[n] - w_sv * jk[n]
            den = dhk[n] - w_sv * hk[n]
            if den.is_zero:
                degenerate.append(n)
                d_sv = scaled(0.0, 0.0)
            else:
                cancel = math.exp(max(dhk[n].abs_log(), (w_sv * hk[n]).abs_log())
                                  - den.abs_log())
                if cancel > DEGENERATE_CONDITION:
                    degenerate.append(n)
                d_sv = -(num / den)
            phase = _I_POW[n & 3] if dim == 2 else 1.0 + 0j
            d_sv = d_sv * phase

            a_sv = (scaled(phase, 0.0) * jk[n] + d_sv * hk[n]) / q_den
            b_sv = ups * a_sv
            if branch == "nonzero-core":
                c_sv = (a_sv * jt2[n] + b_sv * ht2[n]) / jc[n]
            else:
                c_sv = (a_sv * djt2[n] + b_sv * dht2[n]) / (c0_sv * coup_sv * djc[n])

            d[n] = d_sv.to_complex()
            wq[n] = w_sv.to_complex()
            a_arr[n] = a_sv.to_complex()
            b_arr[n] = b_sv.to_complex()
            c_arr[n] = c_sv.to_complex()
            a_sv_list.append(a_sv)
            b_sv_list.append(b_sv)
            c_sv_list.append(c_sv)

        tail = _tail(d)
        if tail <= TAIL_THRESHOLD or n_max is not None or nmax >= specfun.ORDER_MAX - 2:
            break
        nmax += 8

    lw = LayerWavenumbers(lw.k_tilde, lw.k2, lw.c0, lw.coupling,
                          upsilon0_branch=("nonzero-core" if all(
                              b == "nonzero-core" for b in branches) else "mixed"))
    return ModalSolution(dim=dim, rho=rho, k=wave.k, n_max=nmax, d_n=d,
                         a_n=a_arr, b_n=b_arr, c_n=c_arr,
                         truncation_tail=tail, scheme=scheme, layer=lw,
                         h_quotient=wq, branch_flags=tuple(branches),
                         degenerate_modes=tuple(degenerate),
                         _a_sv=tuple(a_sv_list), _b_sv=tuple(b_sv_list),
                         _c_sv=tuple(c_sv_list))


def solve(scheme: SchemeSpec, dim: int, wave: WaveParams, rho: float,
          core: MediumSpec | None = None,
          n_max: int | None = None) -> ModalSolution:
    """Dispatch to the right solver for the scheme kind.

    ``core`` is the virtual-space contents for layered schemes; when
    omitted it defaults to physical (sigma', q') = (1, 1) converted at
    this rho.
    """
    if scheme.kind == "sh":
        return coeffs_sound_hard(dim, wave, rho, n_max=n_max)
    if scheme.kind == "ss":
        return coeffs_sound_soft(dim, wave, rho, n_max=n_max)
    if core is None:
        core = virtual_core_params(MediumSpec.isotropic(1.0, 1.0, dim), rho, dim)
    return coeffs_layered(dim, wave, rho, scheme, core, n_max=n_max)


# ---------------------------------------------------------------------------
# Far field
# ---------------------------------------------------------------------------
def far_field(solution: ModalSolution, angles: np.ndarray) -> FarFieldPattern:
    """Scattering amplitude on a grid of angles theta = angle(xhat, d).

    2D: A(theta) = sqrt(2/(pi k)) e^{-i pi/4}
                   sum_n eps_n d_n (-i)^n cos(n theta),  eps_0 = 1, eps_n = 2.
    3D: A(theta) = (-i/k) sum_n (2n+1) d_n P_n(cos theta).
    """
    angles = np.asarray(angles, dtype=float)
    k = solution.k
    n = np.arange(solution.n_max + 1)
    if solution.dim == 2:
        eps = np.where(n == 0, 1.0, 2.0)
        coef = eps * solution.d_n * (-1j) ** n
        basis = np.cos(np.outer(n, angles))
        amp = math.sqrt(2.0 / (math.pi * k)) * cmath.exp(-1j * math.pi / 4) * (coef @ basis)
        return FarFieldPattern(angles, amp, "2d")
    pn = specfun.legendre_p_table(solution.n_max, np.cos(angles))
    coef = (2 * n + 1) * solution.d_n
    amp = (-1j / k) * (coef @ pn)
    return FarFieldPattern(angles, amp, "3d")


def leading_asymptotic(dim: int, wave: WaveParams, rho: float,
                       theta: float) -> complex:
    """Leading small-krho term of the sound-hard amplitude.

    2D: e^{i pi/4} sqrt(2 pi/k) (cos(theta)/2 - 1/4) (k rho)^2,
    3D: (1/k) (cos(theta)/2 - 1/3) (k rho)^3.
    The phases follow from the exact modal series (and energy
    conservation); the remainders are O((k rho)^{dim+2}).  Both vanish
    at theta = pi/3 (2D) and theta = arccos(2/3) (3D).
    """
    x = wave.k * rho
    if dim == 2:
        return (cmath.exp(1j * math.pi / 4) * math.sqrt(2.0 * math.pi / wave.k)
                * (math.cos(theta) / 2.0 - 0.25) * x ** 2)
    if dim == 3:
        return (math.cos(theta) / 2.0 - 1.0 / 3.0) * x ** 3 / wave.k
    raise DomainError(f"dim must be 2 or 3, got {dim}")


# ---------------------------------------------------------------------------
# Near fields
# ---------------------------------------------------------------------------
def _region_of(solution: ModalSolution, r: float) -> str:
    if r >= solution.rho:
        return "exterior"
    if solution.is_layered:
        if r >= 0.5 * solution.rho:
            return "layer"
        return "core"
    raise DomainError(
        f"r = {r:.6g} lies inside the obstacle of radius {solution.rho:.6g}")


def _bessel_seq(dim: int, kind: str, nmax: int, z: complex, derivative: bool):
    if dim == 2:
        base = (specfun.bessel_j_all if kind == "j" else specfun.bessel_h1_all)(nmax + 1, z)
    else:
        base = (specfun.spherical_j_all if kind == "j" else specfun.spherical_h1_all)(nmax + 1, z)
    if derivative:
        return specfun.derivative_all(base, z)
    return base[:nmax + 1]


def _radial_sums(solution: ModalSolution, region: str, r: float,
                 scattered_only: bool, derivative: bool) -> np.ndarray:
    """Per-mode radial factors of the field expansion at radius r.

    The 2D factors carry their i^n phase inside the coefficients; the
    3D assembly applies (2n+1) i^n afterwards.
    """
    nmax = solution.n_max
    out = np.empty(nmax + 1, dtype=complex)

    if region == "exterior":
        z = complex(solution.k * r)
        hs = _bessel_seq(solution.dim, "h1", nmax, z, derivative)
        js = None if scattered_only else _bessel_seq(solution.dim, "j", nmax, z, derivative)
        scale = solution.k if derivative else 1.0
        for n in range(nmax + 1):
            term = solution.d_n[n] * hs[n].to_complex()
            if js is not None:
                phase = _I_POW[n & 3] if solution.dim == 2 else 1.0
                term += phase * js[n].to_complex()
            out[n] = scale * term
        return out

    if not solution.is_layered:
        raise DomainError("solution has no interior regions")
    lw = solution.layer
    if region == "layer":
        z = lw.k_tilde * r
        scale = lw.k_tilde if derivative else 1.0
        js = _bessel_seq(solution.dim, "j", nmax, z, derivative)
        hs = _bessel_seq(solution.dim, "h1", nmax, z, derivative)
        for n in range(nmax + 1):
            sv = solution._a_sv[n] * js[n] + solution._b_sv[n] * hs[n]
            out[n] = scale * sv.to_complex()
        return out
    if region == "core":
        z = lw.k2 * r
        if derivative and z == 0:
            raise DomainError("radial derivative undefined at the origin")
        scale = lw.k2 if derivative else 1.0
        js = _bessel_seq(solution.dim, "j", nmax, z, derivative)
        for n in range(nmax + 1):
            out[n] = scale * (solution._c_sv[n] * js[n]).to_complex()
        return out
    raise DomainError(f"unknown region {region!r}")


def field_on_circle(solution: ModalSolution, r: float, thetas: np.ndarray,
                    region: str | None = None, scattered_only: bool = False,
                    radial_derivative: bool = False) -> np.ndarray:
    """Total (or scattered) field at radius r for an array of angles.

    2D assembly: u = sum_n eps_n R_n(r) cos(n theta); 3D assembly:
    u = sum_n (2n+1) i^n R_n(r) P_n(cos theta), with R_n the per-mode
    radial factor of the active region.  Points on an interface use the
    outer region by convention.  ``scattered_only`` drops the incident
    wave (exterior region only).
    """
    if r < 0 or not math.isfinite(r):
        raise DomainError(f"radius must be finite and nonnegative, got {r}")
    thetas = np.asarray(thetas, dtype=float)
    if region is None:
        region = _region_of(solution, r)
    if scattered_only and region != "exterior":
        raise DomainError("scattered_only applies to the exterior region")
    radial = _radial_sums(solution, region, r, scattered_only, radial_derivative)
    n = np.arange(solution.n_max + 1)
    if solution.dim == 2:
        eps = np.where(n == 0, 1.0, 2.0)
        return (eps * radial) @ np.cos(np.outer(n, thetas))
    pn = specfun.legendre_p_table(solution.n_max, np.cos(thetas))
    return ((2 * n + 1) * (1j ** n) * radial) @ pn


def field_at(solution: ModalSolution, point, region: str | None = None,
             scattered_only: bool = False,
             radial_derivative: bool = False) -> complex:
    """Field at a single polar point (r, theta); see field_on_circle."""
    r, theta = float(point[0]), float(point[1])
    return complex(field_on_circle(solution, r, np.array([theta]), region=region,
                                   scattered_only=scattered_only,
                                   radial_derivative=radial_derivative)[0])


def scattered_cauchy_data(solution: ModalSolution, radius: float,
                          thetas: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Scattered field and its radial derivative on a circle (2D)."""
    u = field_on_circle(solution, radius, thetas, scattered_only=True)
    dudr = field_on_circle(solution, radius, thetas, scattered_only=True,
                           radial_derivative=True)
    return u, dudr
