"""Reference Hankel transform by plain panel quadrature, plus the corrected
Gaussian closed form.

Deliberately slow and simple: SciPy Bessel functions and fixed Gauss-Legendre
panels, sharing no code path with the series method it validates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import special


class QuadratureError(RuntimeError):
    """Panel doubling failed to converge within the panel budget."""


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-10
    max_panels: int = 10**6
    points_per_panel: int = 16

    def __post_init__(self) -> None:
        if not self.abs_tol > 0.0:
            raise ValueError(f"abs_tol must be positive, got {self.abs_tol}")
        if self.max_panels < 1:
            raise ValueError(f"max_panels must be >= 1, got {self.max_panels}")
        if self.points_per_panel < 2:
            raise ValueError(
                f"points_per_panel must be >= 2, got {self.points_per_panel}"
            )


_CHUNK = 1 << 20


def _composite(fe, nu, R, p, n_panels, pts):
    gx, gw = np.polynomial.legendre.leggauss(pts)
    half = 0.5 * R / n_panels
    total = 0.0
    for start in range(0, n_panels, max(1, _CHUNK // pts)):
        stop = min(n_panels, start + max(1, _CHUNK // pts))
        centers = (2.0 * np.arange(start, stop) + 1.0) * half
        r = (centers[:, None] + half * gx[None, :]).ravel()
        vals = fe(r) * special.jv(nu, p * r) * r
        total += float(vals.reshape(stop - start, pts) @ gw @ np.ones(stop - start))
    return total * half


def quadrature_hankel_fn(
    f: Callable[[np.ndarray], np.ndarray],
    nu: int,
    R: float,
    p: float,
    cfg: QuadratureConfig | None = None,
) -> float:
    """Integral of f(r) J_nu(p r) r dr over [0, R] by doubling panel quadrature.

    ``f`` must accept and return numpy arrays.
    """
    if cfg is None:
        cfg = QuadratureConfig()
    if not R > 0.0:
        raise ValueError(f"radius must be positive, got {R}")
    width = min(math.pi / max(p, 1.0), R / 8.0)
    n = max(1, math.ceil(R / width))
    prev = None
    while n <= cfg.max_panels:
        cur = _composite(f, nu, R, p, n, cfg.points_per_panel)
        if prev is not None and abs(cur - prev) < cfg.abs_tol:
            return cur
        prev = cur
        n *= 2
    raise QuadratureError(
        f"no convergence to abs_tol={cfg.abs_tol} within {cfg.max_panels} panels "
        f"(nu={nu}, R={R}, p={p})"
    )


def quadrature_hankel(f, nu: int, R: float, p: float, cfg: QuadratureConfig | None = None) -> float:
    """Same as :func:`quadrature_hankel_fn` for a FunctionSpec-like input."""
    return quadrature_hankel_fn(f.evaluate, nu, R, p, cfg)


def gaussian_exact(a: float, p: float) -> float:
    """Semi-infinite order-0 transform of exp(-(r/a)^2): (a^2/2) exp(-p^2 a^2 / 4)."""
    if not a > 0.0:
        raise ValueError(f"gaussian width must be positive, got {a}")
    if p < 0.0:
        raise ValueError(f"frequency must be non-negative, got {p}")
    return 0.5 * a * a * math.exp(-0.25 * (p * a) ** 2)
