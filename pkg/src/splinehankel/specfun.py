"""Self-contained special functions: Gamma, integer-order Bessel J, and the
generalized hypergeometric series needed by the closed-form monomial integral.

The hypergeometric engine runs a compensated double-precision Taylor series
and, when its running cancellation estimate exceeds the tolerance budget,
re-runs the same series in stdlib ``decimal`` arithmetic at a precision
derived from that estimate.  Beyond a hard digit cap it raises
:class:`PrecisionLossError` so callers can fall back to quadrature.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from decimal import Decimal

import numpy as np

__all__ = [
    "Hyp1F2Params",
    "PrecisionLossError",
    "bessel_j",
    "bessel_j_array",
    "gamma_fn",
    "hyp0f1",
    "hyp1f2",
]


class PrecisionLossError(ArithmeticError):
    """The series cannot reach the requested accuracy at any supported precision."""


# --- Gamma -------------------------------------------------------------------

_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_fn(x: float) -> float:
    """Gamma(x) via a Lanczos approximation, reflection below 1/2."""
    if x <= 0.0 and x == math.floor(x):
        raise ValueError(f"gamma_fn pole at non-positive integer x={x}")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1.0 - x))
    xx = x - 1.0
    a = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        a += _LANCZOS[i] / (xx + i)
    t = xx + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (xx + 0.5) * math.exp(-t) * a


# --- Bessel J of integer order -----------------------------------------------

_SERIES_CUTOFF = 12.0
_RESCALE = 1e250


def _asym_cutoff(nu: int) -> float:
    return 25.0 + float(nu * nu)


def _j_series(nu: int, x: float) -> float:
    # ascending series with Neumaier compensation
    q = 0.25 * x * x
    term = (0.5 * x) ** nu / math.factorial(nu)
    s = term
    comp = 0.0
    for k in range(1, 400):
        term *= -q / (k * (k + nu))
        t = s + term
        if abs(s) >= abs(term):
            comp += (s - t) + term
        else:
            comp += (term - t) + s
        s = t
        if abs(term) <= 1e-18 * (abs(s) + 1e-300):
            break
    return s + comp


def _j_miller(nu: int, x: float) -> float:
    # downward recurrence, normalized by J_0 + 2*sum J_{2k} = 1
    start = int(x + 10.0 * x ** (1.0 / 3.0) + 40.0) + nu
    if start % 2:
        start += 1
    jp = 0.0
    jc = 1e-300
    norm = 2.0 * jc  # start index is even
    out = jc if nu == start else 0.0
    for k in range(start, 0, -1):
        jm = (2.0 * k / x) * jc - jp
        jp, jc = jc, jm
        kk = k - 1
        if kk == nu:
            out = jc
        if kk >= 2 and kk % 2 == 0:
            norm += 2.0 * jc
        if abs(jc) > _RESCALE:
            jp /= _RESCALE
            jc /= _RESCALE
            norm /= _RESCALE
            out /= _RESCALE
    norm += jc  # jc is now the unnormalized J_0
    return out / norm


def _j_asymptotic(nu: int, x: float) -> float:
    # Hankel's large-argument expansion
    mu = 4.0 * nu * nu
    c = 1.0
    p = 1.0
    q = 0.0
    sp, sq = -1.0, 1.0
    for k in range(1, 40):
        c *= (mu - (2.0 * k - 1.0) ** 2) / (8.0 * x * k)
        if k % 2:
            q += sq * c
            sq = -sq
        else:
            p += sp * c
            sp = -sp
        if abs(c) < 1e-18:
            break
    w = x - (0.5 * nu + 0.25) * math.pi
    return math.sqrt(2.0 / (math.pi * x)) * (math.cos(w) * p - math.sin(w) * q)


def _check_bessel_args(nu: int, allow_scalar_x: float | None = None) -> None:
    if not isinstance(nu, (int, np.integer)) or isinstance(nu, bool) or nu < 0:
        raise ValueError(f"Bessel order must be a non-negative integer, got {nu!r}")
    if allow_scalar_x is not None and allow_scalar_x < 0.0:
        raise ValueError(f"Bessel argument must be non-negative, got {allow_scalar_x}")


def bessel_j(nu: int, x: float) -> float:
    """J_nu(x) for integer nu >= 0 and x >= 0."""
    x = float(x)
    _check_bessel_args(nu, x)
    if x == 0.0:
        return 1.0 if nu == 0 else 0.0
    if x <= _SERIES_CUTOFF:
        return _j_series(nu, x)
    if x < _asym_cutoff(nu):
        return _j_miller(nu, x)
    return _j_asymptotic(nu, x)


def _j_series_array(nu: int, x: np.ndarray) -> np.ndarray:
    q = 0.25 * x * x
    term = (0.5 * x) ** nu / math.factorial(nu)
    s = term.copy()
    comp = np.zeros_like(x)
    for k in range(1, 200):
        term = term * (-q) / (k * (k + nu))
        t = s + term
        comp += np.where(np.abs(s) >= np.abs(term), (s - t) + term, (term - t) + s)
        s = t
        if np.all(np.abs(term) <= 1e-18 * (np.abs(s) + 1e-300)):
            break
    return s + comp


def _j_miller_array(nu: int, x: np.ndarray) -> np.ndarray:
    xmax = float(np.max(x))
    start = int(xmax + 10.0 * xmax ** (1.0 / 3.0) + 40.0) + nu
    if start % 2:
        start += 1
    jp = np.zeros_like(x)
    jc = np.full_like(x, 1e-300)
    norm = 2.0 * jc
    out = jc.copy() if nu == start else np.zeros_like(x)
    for k in range(start, 0, -1):
        jm = (2.0 * k) / x * jc - jp
        jp, jc = jc, jm
        kk = k - 1
        if kk == nu:
            out = jc.copy()
        if kk >= 2 and kk % 2 == 0:
            norm = norm + 2.0 * jc
        big = np.abs(jc) > _RESCALE
        if big.any():
            sc = np.where(big, 1.0 / _RESCALE, 1.0)
            jp = jp * sc
            jc = jc * sc
            norm = norm * sc
            out = out * sc
    norm = norm + jc
    return out / norm


def _j_asymptotic_array(nu: int, x: np.ndarray) -> np.ndarray:
    mu = 4.0 * nu * nu
    c = np.ones_like(x)
    p = np.ones_like(x)
    q = np.zeros_like(x)
    sp, sq = -1.0, 1.0
    for k in range(1, 40):
        c = c * ((mu - (2.0 * k - 1.0) ** 2) / (8.0 * k)) / x
        if k % 2:
            q = q + sq * c
            sq = -sq
        else:
            p = p + sp * c
            sp = -sp
        if np.max(np.abs(c)) < 1e-18:
            break
    w = x - (0.5 * nu + 0.25) * math.pi
    return np.sqrt(2.0 / (math.pi * x)) * (np.cos(w) * p - np.sin(w) * q)


def bessel_j_array(nu: int, x: np.ndarray) -> np.ndarray:
    """Vectorized J_nu over a non-negative float array."""
    _check_bessel_args(nu)
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    cutoff = _asym_cutoff(nu)
    small = x <= _SERIES_CUTOFF
    big = x >= cutoff
    mid = ~small & ~big
    if small.any():
        xs = x[small]
        res = np.where(xs == 0.0, 1.0 if nu == 0 else 0.0, _j_series_array(nu, np.maximum(xs, 1e-300)))
        out[small] = res
    if mid.any():
        out[mid] = _j_miller_array(nu, x[mid])
    if big.any():
        out[big] = _j_asymptotic_array(nu, x[big])
    return out


# --- generalized hypergeometric series ----------------------------------------

_MAX_DIGITS = 160


def _bad_denominator(b: float) -> bool:
    return b <= 0.0 and b == math.floor(b)


@dataclass(frozen=True)
class Hyp1F2Params:
    """Parameters of 1F2(a1; b1, b2; z)."""

    a1: float
    b1: float
    b2: float
    z: float

    def __post_init__(self) -> None:
        for b in (self.b1, self.b2):
            if _bad_denominator(b):
                raise ValueError(
                    f"denominator parameter {b} is a pole of the series"
                )


def _hyp_series_float(num, den, z):
    term = 1.0
    s = 1.0
    comp = 0.0
    maxt = 1.0
    kmin = 2 * int(math.sqrt(abs(z))) + 4
    k = 0
    for k in range(0, 5000):
        f = z / (k + 1.0)
        for a in num:
            f *= a + k
        for b in den:
            f /= b + k
        term *= f
        t = s + term
        if abs(s) >= abs(term):
            comp += (s - t) + term
        else:
            comp += (term - t) + s
        s = t
        at = abs(term)
        if at > maxt:
            maxt = at
        if k >= kmin and at <= 1e-17 * (abs(s) + 1e-300):
            break
    return s + comp, maxt, k + 1


def _hyp_series_decimal(num, den, z, digits):
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        zd = Decimal(z)
        nums = [Decimal(a) for a in num]
        dens = [Decimal(b) for b in den]
        term = Decimal(1)
        s = Decimal(1)
        smax = Decimal(1)
        kmin = 2 * int(math.sqrt(abs(z))) + 4
        stop = Decimal(1).scaleb(-(digits - 3))
        for k in range(0, 20000):
            kd = Decimal(k)
            f = zd / (kd + 1)
            for a in nums:
                f *= a + kd
            for b in dens:
                f /= b + kd
            term *= f
            s += term
            at = abs(term)
            if at > smax:
                smax = at
            if abs(s) > smax:
                smax = abs(s)
            if k >= kmin and at <= smax * stop:
                break
        return float(s)


def _hyp_generic(num, den, z, rel_tol):
    s, maxt, _ = _hyp_series_float(num, den, z)
    est = 3e-16 * maxt / max(abs(s), 1e-300)
    if est <= 0.3 * rel_tol:
        return s
    if not math.isfinite(maxt):
        # the float pass overflowed; no digit count salvages this region
        raise PrecisionLossError(
            f"hypergeometric series overflows double range at z={z}"
        )
    cancel = math.log10(maxt / max(abs(s), 1e-300))
    digits = int(cancel) + 30
    while digits <= _MAX_DIGITS:
        v = _hyp_series_decimal(num, den, z, digits)
        achieved = maxt * 10.0 ** (-(digits - 6))
        if achieved <= rel_tol * max(abs(v), 1e-300):
            return v
        digits += 30
    raise PrecisionLossError(
        f"hypergeometric series needs more than {_MAX_DIGITS} digits at z={z}"
    )


def hyp1f2(params: Hyp1F2Params, rel_tol: float = 1e-10) -> float:
    """1F2(a1; b1, b2; z) to the requested relative accuracy."""
    return _hyp_generic((params.a1,), (params.b1, params.b2), params.z, rel_tol)


def hyp0f1(b: float, z: float, rel_tol: float = 1e-10) -> float:
    """0F1(; b; z), same series engine with the numerator parameter absent."""
    if _bad_denominator(b):
        raise ValueError(f"denominator parameter {b} is a pole of the series")
    return _hyp_generic((), (b,), z, rel_tol)
