"""Closed-form Hankel transforms of monomials and of spline wavelet/scaling atoms.

The production route expands each atom piece in monomials about the origin and
sums differences of the closed-form monomial integral between consecutive
breakpoints.  The literal quintuple sum (:func:`eq4_direct`) is kept as an
independent second path for testing; it is algebraically identical but worse
conditioned, so it is restricted to the hypergeometric-series region.
"""

from __future__ import annotations

import math
from bisect import bisect_right, insort
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .specfun import Hyp1F2Params, bessel_j, bessel_j_array, gamma_fn, hyp1f2
from .splines import (
    PiecewisePoly,
    WaveletIndex,
    _check_order,
    bernstein_coeffs,
    scaling_piecewise,
    wavelet_coeffs,
    wavelet_piecewise,
)

__all__ = [
    "Z_SWITCH",
    "BasisTransform",
    "MonomialIntegralQuery",
    "atom_hankel",
    "eq4_direct",
    "haar_closed_form",
    "haar_scaling_closed_form",
    "monomial_hankel",
]

# Handoff between the 1F2 series route and the panel-quadrature route, as a
# bound on |p^2 zeta^2 / 4|.  Override per call via the z_switch argument.
Z_SWITCH = 400.0

# Below p * zeta = this, 1/p-prefactor closed forms switch to an exact
# polynomial-moment series in p (removable singularity at p = 0).
_SMALL_P = 1e-3


def _check_nu(nu: int) -> None:
    if not isinstance(nu, (int, np.integer)) or isinstance(nu, bool) or nu < 0:
        raise ValueError(f"transform order must be a non-negative integer, got {nu!r}")


@dataclass(frozen=True)
class MonomialIntegralQuery:
    """Integral of r**(gamma+1) * J_nu(p r) from 0 to zeta."""

    gamma: int
    nu: int
    zeta: float
    p: float

    def __post_init__(self) -> None:
        if self.gamma < 0:
            raise ValueError(f"monomial power must be >= 0, got {self.gamma}")
        _check_nu(self.nu)
        if not self.zeta > 0.0:
            raise ValueError(f"upper limit must be positive, got {self.zeta}")
        if self.p < 0.0:
            raise ValueError(f"frequency must be non-negative, got {self.p}")


@dataclass(frozen=True)
class BasisTransform:
    """A single scaling or wavelet atom viewed through the order-nu transform."""

    order: int
    nu: int
    kind: str
    index: WaveletIndex

    def __post_init__(self) -> None:
        _check_order(self.order)
        _check_nu(self.nu)
        if self.kind not in ("scaling", "wavelet"):
            raise ValueError(f"kind must be 'scaling' or 'wavelet', got {self.kind!r}")

    def piecewise(self) -> PiecewisePoly:
        if self.kind == "wavelet":
            return wavelet_piecewise(self.order, self.index)
        return scaling_piecewise(self.order, self.index.k)


# --- monomial integral ---------------------------------------------------------

_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)

# running prefix integrals of the quadrature fallback, keyed (gamma, nu, p);
# values are sorted lists of (zeta, integral from 0)
_PREFIX_CACHE: dict[tuple[int, int, float], list[tuple[float, float]]] = {}


@lru_cache(maxsize=1 << 18)
def _hyp1f2_cached(a1: float, b1: float, b2: float, z: float) -> float:
    return hyp1f2(Hyp1F2Params(a1, b1, b2, z))


def _panel_quad(gamma: int, nu: int, p: float, a: float, b: float) -> float:
    # panels no wider than half a Bessel oscillation keep GL-16 near exact
    n = max(1, math.ceil((b - a) * p / math.pi))
    half = 0.5 * (b - a) / n
    centers = a + (2.0 * np.arange(n) + 1.0) * half
    r = (centers[:, None] + half * _GL_X[None, :]).ravel()
    vals = r ** (gamma + 1) * bessel_j_array(nu, p * r)
    return float(vals.reshape(n, len(_GL_X)) @ _GL_W @ np.ones(n)) * half


def _quad_prefix(gamma: int, nu: int, p: float, zeta: float) -> float:
    if len(_PREFIX_CACHE) > 20000:
        _PREFIX_CACHE.clear()
    key = (gamma, nu, p)
    entries = _PREFIX_CACHE.get(key)
    if entries is None:
        entries = [(0.0, 0.0)]
        _PREFIX_CACHE[key] = entries
    i = bisect_right(entries, (zeta, math.inf)) - 1
    z0, v0 = entries[i]
    if z0 == zeta:
        return v0
    v = v0 + _panel_quad(gamma, nu, p, z0, zeta)
    insort(entries, (zeta, v))
    return v


def _monomial(gamma: int, nu: int, zeta: float, p: float, z_switch: float) -> float:
    if p == 0.0:
        return zeta ** (gamma + 2) / (gamma + 2) if nu == 0 else 0.0
    z = -0.25 * (p * zeta) ** 2
    if -z <= z_switch:
        pref = (
            p**nu
            * zeta ** (gamma + 2 + nu)
            / (2.0**nu * (gamma + 2 + nu) * gamma_fn(nu + 1.0))
        )
        return pref * _hyp1f2_cached(
            0.5 * (gamma + 2 + nu), 0.5 * (gamma + 4 + nu), nu + 1.0, z
        )
    return _quad_prefix(gamma, nu, p, zeta)


def monomial_hankel(q: MonomialIntegralQuery, z_switch: float = Z_SWITCH) -> float:
    """Integral of r**(gamma+1) J_nu(p r) over [0, zeta].

    Uses the 1F2 closed form when |p^2 zeta^2 / 4| <= z_switch, otherwise an
    oscillation-aware panel quadrature; the fallback is total.
    """
    return _monomial(q.gamma, q.nu, q.zeta, q.p, z_switch)


# --- atom transforms -----------------------------------------------------------


@lru_cache(maxsize=4096)
def _atom_origin_pieces(m, kind, j, k):
    if kind == "wavelet":
        pp = wavelet_piecewise(m, WaveletIndex(j, k))
    else:
        pp = scaling_piecewise(m, k)
    return tuple(pp.pieces_about_origin())


def atom_hankel(bt: BasisTransform, p: float, z_switch: float = Z_SWITCH) -> float:
    """Order-nu Hankel transform of a single basis atom, finite at p = 0."""
    if p < 0.0:
        raise ValueError(f"frequency must be non-negative, got {p}")
    pieces = _atom_origin_pieces(bt.order, bt.kind, bt.index.j, bt.index.k)
    total = 0.0
    comp = 0.0
    for a, b, coeffs in pieces:
        if b <= 0.0:
            # boundary atoms (negative shift) only count on r >= 0
            continue
        for g, c in enumerate(coeffs):
            if c == 0.0:
                continue
            upper = _monomial(g, bt.nu, b, p, z_switch)
            lower = _monomial(g, bt.nu, a, p, z_switch) if a > 0.0 else 0.0
            term = c * (upper - lower)
            t = total + term
            if abs(total) >= abs(term):
                comp += (total - t) + term
            else:
                comp += (term - t) + total
            total = t
    return total + comp


def eq4_direct(
    m: int, nu: int, idx: WaveletIndex, p: float, z_switch: float = Z_SWITCH
) -> float:
    """Literal quintuple-sum evaluation of the wavelet atom transform.

    Valid only while every 1F2 argument stays within the series region; raises
    ValueError outside it.  Retained as an independent cross-check of
    :func:`atom_hankel`.
    """
    _check_order(m)
    _check_nu(nu)
    if p < 0.0:
        raise ValueError(f"frequency must be non-negative, got {p}")
    j, k = idx.j, idx.k
    if k < 0:
        raise ValueError("eq4_direct requires a non-negative shift")
    scale = 2.0 ** (j + 1)
    amax = m + 2 * k + (3 * m - 2)
    if (p * amax / scale) ** 2 / 4.0 > z_switch:
        raise ValueError(
            f"eq4_direct out of range: p={p} exceeds the series region for "
            f"(m={m}, j={j}, k={k})"
        )
    if p == 0.0 and nu >= 1:
        return 0.0
    q = wavelet_coeffs(m)
    gam = gamma_fn(nu + 1.0)
    denom_pow = 2.0 ** ((j + 2) * nu + 2 * (j + 1))
    pnu = p**nu if p > 0.0 else 1.0
    total = 0.0
    comp = 0.0
    for alpha in range(1, m + 1):
        bern = bernstein_coeffs(m, alpha)
        for n in range(3 * m - 1):
            qn = q[n]
            if qn == 0.0:
                continue
            c = alpha + 2 * k + n - 1
            zc = -((p * c) ** 2) / (scale * scale * 4.0) if c > 0 else 0.0
            zc1 = -((p * (c + 1)) ** 2) / (scale * scale * 4.0)
            for l in range(m):
                al = bern[l]
                if al == 0.0:
                    continue
                for beta in range(m - l):
                    base = (
                        (-1.0) ** beta
                        * comb(m - 1, l)
                        * comb(m - 1 - l, beta)
                        * qn
                        * al
                    )
                    for g in range(beta + l + 1):
                        shift = float(1 - 2 * k - n - alpha) ** (beta + l - g)
                        coef = base * comb(beta + l, g) * shift
                        if coef == 0.0:
                            continue
                        e = g + 2 + nu
                        upper = float(c + 1) ** e * _hyp1f2_cached(
                            0.5 * e, 0.5 * (e + 2), nu + 1.0, zc1
                        )
                        lower = (
                            float(c) ** e
                            * _hyp1f2_cached(0.5 * e, 0.5 * (e + 2), nu + 1.0, zc)
                            if c > 0
                            else 0.0
                        )
                        term = coef * pnu / (denom_pow * e * gam) * (upper - lower)
                        t = total + term
                        if abs(total) >= abs(term):
                            comp += (total - t) + term
                        else:
                            comp += (term - t) + total
                        total = t
    return total + comp


# --- Haar (m = 1) closed forms ---------------------------------------------------


def _moment_series(pp: PiecewisePoly, p: float) -> float:
    # J_0(x) = sum (-1)^k x^{2k} / (4^k k!^2); three terms suffice for p*zeta < 1e-3
    m1 = pp.moment(1)
    m3 = pp.moment(3)
    m5 = pp.moment(5)
    return m1 - 0.25 * p * p * m3 + (p**4 / 64.0) * m5


def haar_closed_form(idx: WaveletIndex, p: float) -> float:
    """Order-0 transform of the Haar wavelet atom psi_1(2**j r - k)."""
    if p < 0.0:
        raise ValueError(f"frequency must be non-negative, got {p}")
    j, k = idx.j, idx.k
    s = 2.0**-j
    if p * s * (k + 1) < _SMALL_P:
        return _moment_series(wavelet_piecewise(1, idx), p)
    return (s / p) * (
        2.0 * (k + 0.5) * bessel_j(1, s * p * (k + 0.5))
        - (k + 1.0) * bessel_j(1, s * p * (k + 1.0))
        - k * bessel_j(1, s * p * k)
    )


def haar_scaling_closed_form(k: int, p: float) -> float:
    """Order-0 transform of the unit indicator on [k, k+1].

    Equals (1/p) [(k+1) J_1(p(k+1)) - k J_1(p k)]; the weights follow from the
    integral itself, verified by quadrature.
    """
    if k < 0:
        raise ValueError(f"translation must be non-negative, got {k}")
    if p < 0.0:
        raise ValueError(f"frequency must be non-negative, got {p}")
    if p * (k + 1) < _SMALL_P:
        return _moment_series(scaling_piecewise(1, k), p)
    return (
        (k + 1.0) * bessel_j(1, p * (k + 1.0)) - k * bessel_j(1, p * k)
    ) / p
