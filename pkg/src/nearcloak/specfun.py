"""Complex-argument Bessel/Hankel functions with overflow-safe scaling.

The lossy-layer solves evaluate J_n and H_n^(1) at arguments z whose
imaginary part reaches into the hundreds, where J_n(z) grows like
e^{|Im z|} and H_n^(1)(z) decays like e^{-Im z}.  Every function here
therefore returns a :class:`ScaledValue` -- a (mantissa, log_scale) pair
representing ``mantissa * exp(log_scale)`` -- and the layer algebra
downstream cancels the exponentials symbolically by adding and
subtracting log scales.  Raw unscaled values are never formed for large
|Im z|.

Algorithms
----------
* J_n: Miller backward recurrence, normalised against the identity
  ``J_0(z) + 2 sum_{m>=1} (-i)^m J_m(z) = exp(-iz)`` for Im z >= 0
  (conjugate reflection below the real axis).  The working values are
  rescaled on the fly, so no intermediate overflow occurs for any
  admissible z.  Upward recurrence is unstable for J and is not used.
* H_n^(1): orders 0 and 1 from the power series with the log term split
  off (|z| < 12.5) or from the large-argument Hankel expansion
  (|z| >= 12.5), then stable upward recurrence.
* spherical j_n: Miller backward recurrence normalised against the
  closed forms j_0 = sin(z)/z, j_1 = sin(z)/z^2 - cos(z)/z.
* spherical h_n^(1): closed forms for orders 0 and 1, upward recurrence.
* derivatives: B_n'(z) = (n/z) B_n(z) - B_{n+1}(z), valid for both the
  cylindrical and the spherical families.
* Legendre P_n: Bonnet recurrence.

Guards: the order must satisfy n <= ORDER_MAX (200) and the argument
|z| <= ARGUMENT_GUARD (2e4); beyond these a :class:`RangeError` is
raised.  Within the guard, arguments with |Im z| in the thousands are
handled through the log scale -- e^{|Im z|} itself is never formed.

Branch convention: the principal branch of ln and sqrt is used
throughout, so results are accurate for arguments in the closed upper
half-plane and on the positive real axis.  This matches the solver-side
choice Im(k_tilde) >= 0 for the lossy-layer wavenumber.

All functions are pure and hold no global state; concurrent use is safe.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RangeError, SingularArgumentError

ORDER_MAX = 200
ARGUMENT_GUARD = 2.0e4

# Terminate power series when a term falls below this fraction of the sum.
SERIES_EPS = 1e-18

# Crossover |z| between the series and the large-argument expansion for H.
_H_ASYMPTOTIC_CUTOFF = 12.5

# The H = J + iY series loses ~e^{|z| + Im z} digits to cancellation; keep it
# only while that stays around 1e-10 in double precision.
_H_SERIES_BUDGET = 13.5

# Mantissas are renormalised once they exceed this during recurrences.
_RESCALE_AT = 1e250

# Scale gap beyond which the smaller addend is negligible in double
# precision (e^-40 ~ 4e-18).
_ADD_SCALE_GAP = 40.0

_EULER_GAMMA = 0.5772156649015328606

_MINUS_I_POW = (1.0 + 0.0j, -1.0j, -1.0 + 0.0j, 1.0j)  # (-i)^m for m mod 4


# ---------------------------------------------------------------------------
# Scaled values
# ---------------------------------------------------------------------------
@dataclass(frozen=True, slots=True)
class ScaledValue:
    """A complex number stored as ``mantissa * exp(log_scale)``.

    The mantissa is kept normalised (|mantissa| in [0.5, 2], here exactly
    1 after construction through :func:`scaled`) unless the value is
    exactly zero, in which case log_scale is 0.
    """

    mantissa: complex
    log_scale: float

    @property
    def is_zero(self) -> bool:
        return self.mantissa == 0

    def abs_log(self) -> float:
        """Natural log of |value| (-inf for zero)."""
        if self.mantissa == 0:
            return -math.inf
        return math.log(abs(self.mantissa)) + self.log_scale

    def to_complex(self) -> complex:
        """Collapse to a plain complex.

        Underflow collapses silently to 0; overflow (log_scale beyond
        ~700) raises :class:`RangeError` because the value cannot be
        represented in double precision.
        """
        if self.mantissa == 0:
            return 0j
        t = math.log(abs(self.mantissa)) + self.log_scale
        if t > 700.0:
            raise RangeError(f"scaled value exp({t:.1f}) overflows a double")
        if t < -745.0:
            return 0j
        return self.mantissa * math.exp(self.log_scale)

    @staticmethod
    def from_complex(value: complex) -> "ScaledValue":
        return scaled(value, 0.0)

    def conjugate(self) -> "ScaledValue":
        return ScaledValue(self.mantissa.conjugate(), self.log_scale)

    # -- arithmetic ---------------------------------------------------------
    def __mul__(self, other):
        if isinstance(other, ScaledValue):
            return scaled(self.mantissa * other.mantissa,
                          self.log_scale + other.log_scale)
        return scaled(self.mantissa * other, self.log_scale)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, ScaledValue):
            if other.mantissa == 0:
                raise ZeroDivisionError("division by zero ScaledValue")
            return scaled(self.mantissa / other.mantissa,
                          self.log_scale - other.log_scale)
        return scaled(self.mantissa / other, self.log_scale)

    def __rtruediv__(self, other):
        if self.mantissa == 0:
            raise ZeroDivisionError("division by zero ScaledValue")
        return scaled(other / self.mantissa, -self.log_scale)

    def __add__(self, other: "ScaledValue") -> "ScaledValue":
        if not isinstance(other, ScaledValue):
            return NotImplemented
        if self.mantissa == 0:
            return other
        if other.mantissa == 0:
            return self
        gap = other.log_scale - self.log_scale
        if gap > _ADD_SCALE_GAP:
            return other
        if gap < -_ADD_SCALE_GAP:
            return self
        if gap >= 0:
            return scaled(self.mantissa * math.exp(-gap) + other.mantissa,
                          other.log_scale)
        return scaled(self.mantissa + other.mantissa * math.exp(gap),
                      self.log_scale)

    def __sub__(self, other: "ScaledValue") -> "ScaledValue":
        return self + (-other)

    def __neg__(self) -> "ScaledValue":
        return ScaledValue(-self.mantissa, self.log_scale)


def scaled(mantissa: complex, log_scale: float) -> ScaledValue:
    """Build a ScaledValue with the mantissa normalised to |m| = 1."""
    if mantissa == 0:
        return ScaledValue(0j, 0.0)
    a = abs(mantissa)
    if not math.isfinite(a):
        raise RangeError("non-finite mantissa in scaled arithmetic")
    return ScaledValue(mantissa / a, log_scale + math.log(a))


_ZERO = ScaledValue(0j, 0.0)


def _scaled_expi(z: complex) -> ScaledValue:
    """exp(i z) as a scaled value: mantissa e^{i Re z}, scale -Im z."""
    return ScaledValue(cmath.exp(1j * z.real), -z.imag)


def _scaled_sin(z: complex) -> ScaledValue:
    if abs(z.imag) <= 30.0:
        return scaled(cmath.sin(z), 0.0)
    if z.imag < 0:
        return _scaled_sin(z.conjugate()).conjugate()
    # sin z = -(e^{-iz}/2i) (1 - e^{2iz}); |e^{2iz}| = e^{-2 Im z} << 1
    corr = 1.0 - cmath.exp(2j * z) if z.imag < 350.0 else 1.0
    return scaled(1j * 0.5 * cmath.exp(-1j * z.real) * corr, z.imag)


def _scaled_cos(z: complex) -> ScaledValue:
    if abs(z.imag) <= 30.0:
        return scaled(cmath.cos(z), 0.0)
    if z.imag < 0:
        return _scaled_cos(z.conjugate()).conjugate()
    corr = 1.0 + cmath.exp(2j * z) if z.imag < 350.0 else 1.0
    return scaled(0.5 * cmath.exp(-1j * z.real) * corr, z.imag)


# ---------------------------------------------------------------------------
# Argument validation
# ---------------------------------------------------------------------------
def _check_order(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise RangeError(f"order must be a nonnegative integer, got {n!r}")
    if n > ORDER_MAX:
        raise RangeError(f"order {n} exceeds the supported maximum {ORDER_MAX}")


def _check_argument(z: complex) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise RangeError("non-finite argument")
    if abs(z) > ARGUMENT_GUARD:
        raise RangeError(f"|z| = {abs(z):.3g} exceeds the guard {ARGUMENT_GUARD:g}")
    return z


# ---------------------------------------------------------------------------
# Cylindrical J_n: Miller backward recurrence
# ---------------------------------------------------------------------------
def _jn_sequence(nmax: int, z: complex) -> list[ScaledValue]:
    """J_0(z) .. J_nmax(z) as scaled values."""
    if z == 0:
        return [scaled(1.0, 0.0)] + [_ZERO] * nmax
    if z.imag < 0:
        return [v.conjugate() for v in _jn_sequence(nmax, z.conjugate())]

    x = abs(z)
    start = nmax + 20 + int(x + 16.0 * x ** (1.0 / 3.0))
    two_over_z = 2.0 / z

    fp = 0j            # F_{m+1}
    fc = 1e-280 + 0j   # F_m; the seed scale drops out in the normalisation
    shift = 0.0        # cumulative log applied to the working values
    vals = [0j] * (nmax + 1)
    logs = [0.0] * (nmax + 1)
    s = 0j             # running normalisation sum, held at the current shift

    for m in range(start, -1, -1):
        if m <= nmax:
            vals[m] = fc
            logs[m] = shift
        if m == 0:
            s += fc
        else:
            s += 2.0 * _MINUS_I_POW[m & 3] * fc
        if m > 0:
            fp, fc = fc, (m * two_over_z) * fc - fp
            a = abs(fc)
            if a > _RESCALE_AT:
                la = math.log(a)
                r = math.exp(-la)
                fc *= r
                fp *= r
                s *= r
                shift += la

    # True J_m = F_m * e^{-iz} / S with F_m = vals[m] e^{logs[m]},
    # S = s e^{shift}, e^{-iz} = e^{-i Re z} e^{Im z}.
    if s == 0:
        raise RangeError("Miller normalisation sum vanished")
    t_mant = cmath.exp(-1j * z.real) / s
    t_log = z.imag - shift
    return [scaled(vals[m] * t_mant, logs[m] + t_log) for m in range(nmax + 1)]


# ---------------------------------------------------------------------------
# Cylindrical H_n^(1): series or asymptotic base, upward recurrence
# ---------------------------------------------------------------------------
def _h01_series(z: complex) -> tuple[complex, complex]:
    """H_0^(1), H_1^(1) by the Maclaurin series with the log term split off.

    Valid on the cut plane; accurate for |z| below the asymptotic
    crossover (the e^{|Re z|} cancellation stays under ~1e5 there).
    """
    q = (z / 2.0) ** 2
    lg = cmath.log(z / 2.0) + _EULER_GAMMA

    # J_0 and sum (-1)^m h_m q^m/(m!)^2 for Y_0
    term = 1.0 + 0j
    j0 = term
    y0s = 0j
    hm = 0.0
    m = 1
    while True:
        term *= -q / (m * m)
        j0 += term
        hm += 1.0 / m
        y0s += term * hm
        if abs(term) < SERIES_EPS * abs(j0):
            break
        m += 1
        if m > 200:  # unreachable for |z| < 13
            break
    y0 = (2.0 / math.pi) * (lg * j0 - y0s)

    # J_1 and sum (-1)^m (h_m + h_{m+1}) (z/2)^{2m+1} / (m!(m+1)!) for Y_1
    term = z / 2.0
    j1 = term
    y1s = term  # m = 0: h_0 + h_1 = 1
    hm = 0.0
    hm1 = 1.0
    m = 1
    while True:
        term *= -q / (m * (m + 1))
        j1 += term
        hm += 1.0 / m
        hm1 += 1.0 / (m + 1)
        y1s += term * (hm + hm1)
        if abs(term) < SERIES_EPS * abs(j1):
            break
        m += 1
        if m > 200:
            break
    y1 = (2.0 / math.pi) * lg * j1 - 2.0 / (math.pi * z) - y1s / math.pi

    return j0 + 1j * y0, j1 + 1j * y1


def _h_asymptotic(n: int, z: complex) -> ScaledValue:
    """H_n^(1)(z) by the large-argument Hankel expansion (orders 0, 1)."""
    s = 1.0 + 0j
    term = 1.0 + 0j
    four_n2 = 4.0 * n * n
    m = 0
    while m < 40:
        new = term * 1j * (four_n2 - (2 * m + 1) ** 2) / (8.0 * z * (m + 1))
        if abs(new) >= abs(term):  # asymptotic tail started diverging
            break
        term = new
        s += term
        if abs(term) < SERIES_EPS * abs(s):
            break
        m += 1
    front = cmath.sqrt(2.0 / (math.pi * z)) * cmath.exp(
        1j * (z.real - n * math.pi / 2.0 - math.pi / 4.0))
    return scaled(front * s, -z.imag)


def _h1_logderiv_cf(z: complex, max_iter: int = 20000) -> complex:
    """Logarithmic derivative H_0^(1)'(z)/H_0^(1)(z) by continued fraction.

    L_0 = -1/(2z) + i + (i/z) * K_{k>=1} [ (k-1/2)^2 / (2(z + ik)) ]
    evaluated with the modified Lentz algorithm.  Converges for z off the
    negative real axis; used in the upper half-plane gap where neither
    the power series nor the large-argument expansion is accurate.
    """
    tiny = 1e-300
    f = tiny + 0j
    c = f
    d = 0j
    for k in range(1, max_iter):
        a = (k - 0.5) ** 2
        b = 2.0 * (z + 1j * k)
        d = b + a * d
        if d == 0:
            d = tiny
        c = b + a / c
        if c == 0:
            c = tiny
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    else:
        raise RangeError("continued fraction for H did not converge")
    return -0.5 / z + 1j + (1j / z) * f


def _h01_base(z: complex) -> tuple[complex, complex, float]:
    """H_0^(1), H_1^(1) for Im z >= 0 as (mantissa0, mantissa1, log_scale)."""
    if abs(z) + max(z.imag, 0.0) <= _H_SERIES_BUDGET:
        h0, h1 = _h01_series(z)
        return h0, h1, 0.0
    if abs(z) >= _H_ASYMPTOTIC_CUTOFF:
        sv0 = _h_asymptotic(0, z)
        sv1 = _h_asymptotic(1, z)
        base_log = sv0.log_scale
        return (sv0.mantissa,
                sv1.mantissa * math.exp(sv1.log_scale - base_log),
                base_log)
    # Gap region: recessive H via its CF log-derivative plus the Wronskian
    # J_0 H_0' - J_0' H_0 = 2i/(pi z), with J_0, J_1 from Miller.
    l0 = _h1_logderiv_cf(z)
    js = _jn_sequence(1, z)
    denom = js[0] * l0 + js[1]  # J_0 L_0 - J_0',  J_0' = -J_1
    if denom.is_zero:
        raise RangeError("degenerate Wronskian solve for H base values")
    h0 = scaled(2j / (math.pi * z), 0.0) / denom
    h1 = -(h0 * l0)  # H_0' = -H_1
    base_log = h0.log_scale
    return h0.mantissa, h1.mantissa * math.exp(h1.log_scale - base_log), base_log


def _h1n_sequence(nmax: int, z: complex) -> list[ScaledValue]:
    """H_0^(1)(z) .. H_nmax^(1)(z) as scaled values."""
    if z.imag < 0:
        # Reflection keeps every ingredient on its stable side: Miller J at
        # z and the upper-half-plane H sequence at the conjugate point.
        js = _jn_sequence(nmax, z)
        hs = _h1n_sequence(nmax, z.conjugate())
        return [js[n] * 2.0 - hs[n].conjugate() for n in range(nmax + 1)]

    h0, h1, base_log = _h01_base(z)
    out = [scaled(h0, base_log)]
    if nmax >= 1:
        out.append(scaled(h1, base_log))
    hp, hc = h0, h1
    shift = base_log
    for m in range(1, nmax):
        hp, hc = hc, (2.0 * m / z) * hc - hp
        a = abs(hc)
        if a > _RESCALE_AT:
            la = math.log(a)
            r = math.exp(-la)
            hc *= r
            hp *= r
            shift += la
        out.append(scaled(hc, shift))
    return out[:nmax + 1]


# ---------------------------------------------------------------------------
# Spherical j_n, h_n^(1)
# ---------------------------------------------------------------------------
def _sph_jn_sequence(nmax: int, z: complex) -> list[ScaledValue]:
    if z == 0:
        return [scaled(1.0, 0.0)] + [_ZERO] * nmax

    # Closed-form anchors.
    sv_sin = _scaled_sin(z)
    sv_cos = _scaled_cos(z)
    j0_ref = sv_sin / z
    j1_ref = sv_sin / (z * z) - sv_cos / z

    x = abs(z)
    start = nmax + 20 + int(x + 16.0 * x ** (1.0 / 3.0))
    fp = 0j
    fc = 1e-280 + 0j
    shift = 0.0
    vals = [0j] * (max(nmax, 1) + 1)
    logs = [0.0] * (max(nmax, 1) + 1)
    for m in range(start, -1, -1):
        if m <= max(nmax, 1):
            vals[m] = fc
            logs[m] = shift
        if m > 0:
            fp, fc = fc, ((2.0 * m + 1.0) / z) * fc - fp
            a = abs(fc)
            if a > _RESCALE_AT:
                la = math.log(a)
                r = math.exp(-la)
                fc *= r
                fp *= r
                shift += la

    # Normalise against whichever anchor is larger (j_0 can sit at a zero).
    if j0_ref.abs_log() >= j1_ref.abs_log():
        p, ref = 0, j0_ref
    else:
        p, ref = 1, j1_ref
    if vals[p] == 0:
        raise RangeError("spherical Miller recurrence lost the anchor order")
    kappa = ref / scaled(vals[p], logs[p])
    return [scaled(vals[m], logs[m]) * kappa for m in range(nmax + 1)]


def _sph_h1n_sequence(nmax: int, z: complex) -> list[ScaledValue]:
    if z == 0:
        raise SingularArgumentError("spherical h_n^(1) is singular at z = 0")
    if z.imag < 0:
        # Same reflection as the cylindrical case: the upward recurrence can
        # pass through a magnitude dip in the lower half-plane.
        js = _sph_jn_sequence(nmax, z)
        hs = _sph_h1n_sequence(nmax, z.conjugate())
        return [js[n] * 2.0 - hs[n].conjugate() for n in range(nmax + 1)]
    phase = cmath.exp(1j * z.real)
    base_log = -z.imag
    h0 = -1j * phase / z
    h1 = -phase * (1.0 / z + 1j / (z * z))

    out = [scaled(h0, base_log)]
    if nmax >= 1:
        out.append(scaled(h1, base_log))
    hp, hc = h0, h1
    shift = base_log
    for m in range(1, nmax):
        hp, hc = hc, ((2.0 * m + 1.0) / z) * hc - hp
        a = abs(hc)
        if a > _RESCALE_AT:
            la = math.log(a)
            r = math.exp(-la)
            hc *= r
            hp *= r
            shift += la
        out.append(scaled(hc, shift))
    return out[:nmax + 1]


# ---------------------------------------------------------------------------
# Batch API (orders 0..nmax at a fixed argument)
# ---------------------------------------------------------------------------
def bessel_j_all(nmax: int, z: complex) -> list[ScaledValue]:
    """J_0(z) .. J_nmax(z)."""
    _check_order(nmax)
    z = _check_argument(z)
    return _jn_sequence(nmax, z)


def bessel_h1_all(nmax: int, z: complex) -> list[ScaledValue]:
    """H_0^(1)(z) .. H_nmax^(1)(z).  Raises on z = 0."""
    _check_order(nmax)
    z = _check_argument(z)
    if z == 0:
        raise SingularArgumentError("H_n^(1) is singular at z = 0")
    return _h1n_sequence(nmax, z)


def spherical_j_all(nmax: int, z: complex) -> list[ScaledValue]:
    """j_0(z) .. j_nmax(z)."""
    _check_order(nmax)
    z = _check_argument(z)
    return _sph_jn_sequence(nmax, z)


def spherical_h1_all(nmax: int, z: complex) -> list[ScaledValue]:
    """h_0^(1)(z) .. h_nmax^(1)(z).  Raises on z = 0."""
    _check_order(nmax)
    z = _check_argument(z)
    return _sph_h1n_sequence(nmax, z)


def derivative_all(values: list[ScaledValue], z: complex) -> list[ScaledValue]:
    """Derivatives of a Bessel-family sequence via B_n' = (n/z)B_n - B_{n+1}.

    ``values`` must hold orders 0..M; the result holds orders 0..M-1.
    The same recurrence covers the cylindrical and spherical families.
    """
    z = complex(z)
    if len(values) < 2:
        raise RangeError("need at least orders 0 and 1 to differentiate")
    out = [-values[1]]
    if len(values) > 2 and z == 0:
        raise SingularArgumentError("derivative recurrence needs z != 0 for n >= 1")
    for n in range(1, len(values) - 1):
        out.append(values[n] * (n / z) - values[n + 1])
    return out


# ---------------------------------------------------------------------------
# Scalar API
# ---------------------------------------------------------------------------
def bessel_j(n: int, z: complex) -> ScaledValue:
    """Cylindrical J_n(z) as a scaled value.

    Relative error <= 1e-10 for |z| <= 50; graceful degradation like
    O(1/|z|) of the asymptotic forms far beyond that.
    """
    return bessel_j_all(n, z)[n]


def bessel_h1(n: int, z: complex) -> ScaledValue:
    """Cylindrical H_n^(1)(z) as a scaled value.

    For Im z > 0 the log scale is negative (exponential decay e^{-Im z}).
    """
    return bessel_h1_all(n, z)[n]


def bessel_y(n: int, z: complex) -> ScaledValue:
    """Cylindrical Y_n(z) = (H_n^(1)(z) - J_n(z)) / i."""
    h = bessel_h1(n, z)
    j = bessel_j(n, z)
    return (h - j) * ScaledValue(-1j, 0.0)


def bessel_deriv(kind: str, n: int, z: complex) -> ScaledValue:
    """Derivative of J_n or H_n^(1) via B_n' = (n/z)B_n - B_{n+1}.

    ``kind`` is "J" or "H1"; for n = 0 the recurrence reduces to
    B_0' = -B_1 and z = 0 is then admissible for kind "J".
    """
    _check_order(n)
    z = _check_argument(z)
    if n > 0 and z == 0:
        raise SingularArgumentError("derivative recurrence needs z != 0 for n >= 1")
    kind = kind.upper()
    if kind == "J":
        seq = _jn_sequence(n + 1, z)
    elif kind == "H1":
        if z == 0:
            raise SingularArgumentError("H_n^(1) is singular at z = 0")
        seq = _h1n_sequence(n + 1, z)
    else:
        raise ValueError(f"kind must be 'J' or 'H1', got {kind!r}")
    if n == 0:
        return -seq[1]
    return seq[n] * (n / z) - seq[n + 1]


def spherical_bessel(kind: str, n: int, z: complex) -> ScaledValue:
    """Spherical j_n(z) or h_n^(1)(z) (kind "j" or "h1")."""
    kind = kind.lower()
    if kind == "j":
        return spherical_j_all(n, z)[n]
    if kind == "h1":
        return spherical_h1_all(n, z)[n]
    raise ValueError(f"kind must be 'j' or 'h1', got {kind!r}")


def spherical_bessel_deriv(kind: str, n: int, z: complex) -> ScaledValue:
    """Derivative of a spherical Bessel function, same recurrence as above."""
    _check_order(n)
    z = _check_argument(z)
    if n > 0 and z == 0:
        raise SingularArgumentError("derivative recurrence needs z != 0 for n >= 1")
    kind = kind.lower()
    if kind == "j":
        seq = _sph_jn_sequence(n + 1, z)
    elif kind == "h1":
        seq = _sph_h1n_sequence(n + 1, z)
    else:
        raise ValueError(f"kind must be 'j' or 'h1', got {kind!r}")
    if n == 0:
        return -seq[1]
    return seq[n] * (n / z) - seq[n + 1]


# ---------------------------------------------------------------------------
# Legendre polynomials
# ---------------------------------------------------------------------------
def legendre_p(n: int, x: float) -> float:
    """P_n(x) by the Bonnet recurrence; requires |x| <= 1."""
    _check_order(n)
    if abs(x) > 1.0 + 1e-14:
        raise DomainError(f"Legendre argument |x| = {abs(x):.6g} > 1")
    x = min(1.0, max(-1.0, float(x)))
    if n == 0:
        return 1.0
    pm, pc = 1.0, x
    for m in range(1, n):
        pm, pc = pc, ((2 * m + 1) * x * pc - m * pm) / (m + 1)
    return pc


def legendre_p_table(nmax: int, x: np.ndarray) -> np.ndarray:
    """P_0..P_nmax at each entry of x; shape (nmax+1, len(x))."""
    _check_order(nmax)
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0 + 1e-14):
        raise DomainError("Legendre argument outside [-1, 1]")
    x = np.clip(x, -1.0, 1.0)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = x
    for m in range(1, nmax):
        out[m + 1] = ((2 * m + 1) * x * out[m] - m * out[m - 1]) / (m + 1)
    return out
