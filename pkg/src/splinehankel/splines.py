"""B-splines on integer knots and the semi-orthogonal spline wavelets built from them.

Everything here is constructed in exact rational arithmetic (``fractions``)
and converted to floats at the boundary, so piecewise representations carry
no rounding beyond the final conversion.  Atoms follow the unnormalized
convention: the level-j, shift-k wavelet is ``psi(2**j * r - k)`` with no
``2**(j/2)`` amplitude factor.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np


def _check_order(m: int) -> None:
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ValueError(f"spline order must be a positive integer, got {m!r}")


@dataclass(frozen=True)
class WaveletIndex:
    """Dyadic level ``j`` and translation ``k`` addressing a basis atom."""

    j: int
    k: int

    def __post_init__(self) -> None:
        if self.j < 0:
            raise ValueError(f"wavelet index needs j >= 0, got {self}")


@dataclass(frozen=True)
class PiecewisePoly:
    """Compactly supported piecewise polynomial.

    ``pieces[i]`` holds power-basis coefficients (ascending) about the left
    endpoint ``breakpoints[i]``.  Evaluation is 0 outside the breakpoint span.
    """

    breakpoints: tuple[float, ...]
    pieces: tuple[tuple[float, ...], ...]
    degree: int

    def __post_init__(self) -> None:
        if len(self.pieces) != len(self.breakpoints) - 1:
            raise ValueError("pieces must be one fewer than breakpoints")
        if any(b >= c for b, c in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must be strictly increasing")

    @property
    def support(self) -> tuple[float, float]:
        return self.breakpoints[0], self.breakpoints[-1]

    def __call__(self, r: float) -> float:
        bps = self.breakpoints
        if r < bps[0] or r >= bps[-1]:
            return 0.0
        i = bisect_right(bps, r) - 1
        t = r - bps[i]
        acc = 0.0
        for c in reversed(self.pieces[i]):
            acc = acc * t + c
        return acc

    def evaluate(self, r: np.ndarray) -> np.ndarray:
        """Vectorized evaluation; zero outside the support."""
        r = np.asarray(r, dtype=float)
        bps = np.asarray(self.breakpoints)
        idx = np.searchsorted(bps, r, side="right") - 1
        inside = (idx >= 0) & (idx < len(self.pieces))
        out = np.zeros_like(r)
        ii = np.clip(idx, 0, len(self.pieces) - 1)
        t = r - bps[ii]
        acc = np.zeros_like(r)
        coeffs = np.zeros((len(self.pieces), self.degree + 1))
        for i, piece in enumerate(self.pieces):
            coeffs[i, : len(piece)] = piece
        for q in range(self.degree, -1, -1):
            acc = acc * t + coeffs[ii, q]
        out[inside] = acc[inside]
        return out

    def pieces_about_origin(self) -> list[tuple[float, float, tuple[float, ...]]]:
        """Each piece re-expanded about r = 0: ``(a, b, coeffs)`` with
        ``sum(c[g] * r**g for g)`` valid on ``[a, b]``."""
        out = []
        for i, piece in enumerate(self.pieces):
            a = self.breakpoints[i]
            b = self.breakpoints[i + 1]
            out.append((a, b, _shift_coeffs(piece, a)))
        return out

    def moment(self, l: int = 0) -> float:
        """Exact polynomial integral of ``r**l * self(r)`` over the support."""
        total = 0.0
        for a, b, coeffs in self.pieces_about_origin():
            for g, c in enumerate(coeffs):
                if c != 0.0:
                    n = g + l + 1
                    total += c * (b**n - a**n) / n
        return total


def _shift_coeffs(coeffs: tuple[float, ...], a: float) -> tuple[float, ...]:
    # p(r) = sum c_i (r-a)^i  ->  coefficients about 0 via binomial expansion
    d = len(coeffs) - 1
    out = [0.0] * (d + 1)
    for i, c in enumerate(coeffs):
        if c == 0.0:
            continue
        for g in range(i + 1):
            out[g] += c * comb(i, g) * (-a) ** (i - g)
    return tuple(out)


# --- exact rational construction ------------------------------------------


def _padd(p, q):
    n = max(len(p), len(q))
    return tuple(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    )


def _pscale(p, s):
    return tuple(c * s for c in p)


def _pmul_linear(p, c0, c1):
    # multiply polynomial p(t) by (c0 + c1 t)
    out = [Fraction(0)] * (len(p) + 1)
    for i, c in enumerate(p):
        out[i] += c * c0
        out[i + 1] += c * c1
    return tuple(out)


@lru_cache(maxsize=None)
def _bspline_pieces_frac(m: int) -> tuple[tuple[Fraction, ...], ...]:
    """Power-basis pieces of N_m on [i, i+1], coefficients in t = x - i."""
    if m == 1:
        return ((Fraction(1),),)
    prev = _bspline_pieces_frac(m - 1)
    zero = (Fraction(0),)
    pieces = []
    for i in range(m):
        left = prev[i] if i < m - 1 else zero
        right = prev[i - 1] if i >= 1 else zero
        # N_m(t+i) = ((t+i) N_{m-1}(t+i) + (m-i-t) N_{m-1}(t+i-1)) / (m-1)
        a = _pmul_linear(left, Fraction(i), Fraction(1))
        b = _pmul_linear(right, Fraction(m - i), Fraction(-1))
        pieces.append(_pscale(_padd(a, b), Fraction(1, m - 1)))
    return tuple(pieces)


def bspline_eval(m: int, x: float) -> float:
    """Cardinal B-spline N_m(x) on integer knots 0..m (Cox-de Boor)."""
    _check_order(m)
    if m == 1:
        return 1.0 if 0.0 <= x < 1.0 else 0.0
    if x < 0.0 or x >= m:
        return 0.0
    return (x * bspline_eval(m - 1, x) + (m - x) * bspline_eval(m - 1, x - 1.0)) / (
        m - 1
    )


@lru_cache(maxsize=None)
def _bspline_at_integers(m: int) -> tuple[Fraction, ...]:
    """N_m(i) for i = 0..m, exactly."""
    pieces = _bspline_pieces_frac(m)
    vals = [Fraction(0)] * (m + 1)
    for i in range(1, m):
        vals[i] = pieces[i][0]
    return tuple(vals)


@lru_cache(maxsize=None)
def _wavelet_coeffs_frac(m: int) -> tuple[Fraction, ...]:
    n2m = _bspline_at_integers(2 * m)

    def n2m_at(i: int) -> Fraction:
        return n2m[i] if 0 <= i <= 2 * m else Fraction(0)

    out = []
    for n in range(3 * m - 1):
        s = sum(comb(m, l) * n2m_at(n + 1 - l) for l in range(m + 1))
        out.append(Fraction((-1) ** n, 2 ** (m - 1)) * s)
    return tuple(out)


def wavelet_coeffs(m: int) -> tuple[float, ...]:
    """The 3m-1 combination coefficients q_n of the order-m spline wavelet."""
    _check_order(m)
    return tuple(float(q) for q in _wavelet_coeffs_frac(m))


@lru_cache(maxsize=None)
def _wavelet_base_pieces_frac(m: int) -> tuple[tuple[Fraction, ...], ...]:
    """Pieces of psi_m on [i/2, (i+1)/2], i = 0..2(2m-1)-1, in t = r - i/2."""
    q = _wavelet_coeffs_frac(m)
    bpieces = _bspline_pieces_frac(m)
    npieces = 2 * (2 * m - 1)
    out = []
    for i in range(npieces):
        acc = (Fraction(0),)
        for n, qn in enumerate(q):
            a = i - n
            if 0 <= a <= m - 1:
                # local variable of the B-spline piece is 2t
                scaled = tuple(c * Fraction(2) ** p for p, c in enumerate(bpieces[a]))
                acc = _padd(acc, _pscale(scaled, qn))
        out.append(acc)
    return tuple(out)


@lru_cache(maxsize=None)
def wavelet_piecewise(m: int, idx: WaveletIndex) -> PiecewisePoly:
    """Piecewise-polynomial form of psi_m(2**j r - k).

    Breakpoints sit at half-integer multiples of 2**-j; the support is
    [2**-j k, 2**-j (k + 2m - 1)].
    """
    _check_order(m)
    base = _wavelet_base_pieces_frac(m)
    j, k = idx.j, idx.k
    scale = Fraction(2) ** j
    bps = [float((Fraction(k) + Fraction(i, 2)) / scale) for i in range(len(base) + 1)]
    pieces = []
    for piece in base:
        # local variable of the base piece is 2**j * (r - left breakpoint)
        pieces.append(tuple(float(c * scale**p) for p, c in enumerate(piece)))
    return PiecewisePoly(tuple(bps), tuple(pieces), m - 1)


@lru_cache(maxsize=None)
def scaling_piecewise(m: int, k: int) -> PiecewisePoly:
    """Piecewise form of the translated scaling function N_m(r - k)."""
    _check_order(m)
    pieces = tuple(
        tuple(float(c) for c in piece) for piece in _bspline_pieces_frac(m)
    )
    bps = tuple(float(k + i) for i in range(m + 1))
    return PiecewisePoly(bps, pieces, m - 1)


def bernstein_coeffs(m: int, alpha: int) -> tuple[float, ...]:
    """Bernstein coefficients a_l of N_m restricted to [alpha-1, alpha].

    The restriction equals sum_l a_l C(m-1, l) (1-t)**(m-1-l) t**l with
    t = y - alpha + 1.
    """
    _check_order(m)
    if not 1 <= alpha <= m:
        raise ValueError(f"alpha must be in 1..{m}, got {alpha}")
    c = _bspline_pieces_frac(m)[alpha - 1]
    c = c + (Fraction(0),) * (m - len(c))
    d = m - 1
    out = []
    for l in range(m):
        b = sum(Fraction(comb(l, i), comb(d, i)) * c[i] for i in range(l + 1))
        out.append(float(b))
    return tuple(out)


def inner_product(
    f: PiecewisePoly, g: PiecewisePoly, lo: float | None = None, hi: float | None = None
) -> float:
    """Exact integral of f*g over the overlap of their supports clipped to [lo, hi]."""
    a = max(f.breakpoints[0], g.breakpoints[0])
    b = min(f.breakpoints[-1], g.breakpoints[-1])
    if lo is not None:
        a = max(a, lo)
    if hi is not None:
        b = min(b, hi)
    if a >= b:
        return 0.0
    cuts = sorted(
        {a, b}
        | {x for x in f.breakpoints if a < x < b}
        | {x for x in g.breakpoints if a < x < b}
    )
    total = 0.0
    for left, right in zip(cuts, cuts[1:]):
        cf = _local_coeffs(f, left, right)
        cg = _local_coeffs(g, left, right)
        conv = [0.0] * (len(cf) + len(cg) - 1)
        for i, ci in enumerate(cf):
            if ci == 0.0:
                continue
            for jx, cj in enumerate(cg):
                conv[i + jx] += ci * cj
        w = right - left
        total += sum(cn * w ** (n + 1) / (n + 1) for n, cn in enumerate(conv))
    return total


def _local_coeffs(pp: PiecewisePoly, left: float, right: float) -> tuple[float, ...]:
    mid = 0.5 * (left + right)
    i = bisect_right(pp.breakpoints, mid) - 1
    piece = pp.pieces[i]
    delta = left - pp.breakpoints[i]
    if delta == 0.0:
        return piece
    out = [0.0] * len(piece)
    for p, c in enumerate(piece):
        if c == 0.0:
            continue
        for gq in range(p + 1):
            out[gq] += c * comb(p, gq) * delta ** (p - gq)
    return tuple(out)
