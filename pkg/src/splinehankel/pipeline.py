"""End-to-end transform: expand f on [0, R], then sum coefficient-weighted
closed-form atom transforms over the p grid."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .expansion import (
    ExpansionCoefficients,
    FunctionSpec,
    gram_coefficients,
    haar_coefficients,
)
from .hankel_kernel import BasisTransform, atom_hankel
from .oracle import QuadratureConfig, quadrature_hankel
from .splines import WaveletIndex, _check_order

# terms below this fraction of the largest coefficient are numerically null
_DROP_FRACTION = 1e-14


@dataclass(frozen=True)
class TransformRequest:
    f: FunctionSpec
    nu: int
    m: int
    R: float
    J: int
    p_grid: tuple[float, ...]

    def __post_init__(self) -> None:
        _check_order(self.m)
        if not isinstance(self.nu, (int, np.integer)) or self.nu < 0:
            raise ValueError(f"transform order must be >= 0, got {self.nu!r}")
        if len(self.p_grid) == 0:
            raise ValueError("p grid must be non-empty")
        if any(not math.isfinite(p) or p < 0.0 for p in self.p_grid):
            raise ValueError("p grid must be finite and non-negative")
        if any(b <= a for a, b in zip(self.p_grid, self.p_grid[1:])):
            raise ValueError("p grid must be strictly increasing")


@dataclass(frozen=True)
class Diagnostics:
    coefficient_count: int
    dropped_terms: int
    largest_dropped: float
    f_at_radius: float
    oracle_abs_err: tuple[float, ...] | None = None

    @property
    def max_oracle_err(self) -> float | None:
        if self.oracle_abs_err is None:
            return None
        return max(self.oracle_abs_err)


@dataclass(frozen=True)
class TransformResult:
    p_grid: tuple[float, ...]
    values: tuple[float, ...]
    diagnostics: Diagnostics


def expansion_terms(coeffs: ExpansionCoefficients, nu: int):
    """Coefficient-weighted atoms, sorted by descending magnitude, nulls dropped.

    Returns (terms, dropped_count, largest_dropped) where each term is
    (coefficient, BasisTransform).
    """
    raw = []
    for k, c in enumerate(coeffs.c0, start=coeffs.scaling_start):
        raw.append((float(c), BasisTransform(coeffs.order, nu, "scaling", WaveletIndex(0, k))))
    for j, row in enumerate(coeffs.d):
        for k, c in enumerate(row, start=coeffs.wavelet_start):
            raw.append(
                (float(c), BasisTransform(coeffs.order, nu, "wavelet", WaveletIndex(j, k)))
            )
    cmax = max((abs(c) for c, _ in raw), default=0.0)
    cutoff = _DROP_FRACTION * cmax
    terms = [(c, bt) for c, bt in raw if abs(c) > cutoff]
    dropped = [abs(c) for c, _ in raw if abs(c) <= cutoff]
    terms.sort(key=lambda t: -abs(t[0]))
    return terms, len(dropped), max(dropped, default=0.0)


def _series_value(terms, p):
    total = 0.0
    comp = 0.0
    for c, bt in terms:
        v = atom_hankel(bt, p)
        term = c * v
        if not math.isfinite(term):
            idx = bt.index
            raise ArithmeticError(
                f"non-finite series term: kind={bt.kind} j={idx.j} k={idx.k} p={p}"
            )
        t = total + term
        if abs(total) >= abs(term):
            comp += (total - t) + term
        else:
            comp += (term - t) + total
        total = t
    return total + comp


def transform(req: TransformRequest) -> TransformResult:
    """Hankel transform of order nu via the wavelet series on [0, R]."""
    if req.m == 1:
        coeffs = haar_coefficients(req.f, req.R, req.J)
    else:
        coeffs = gram_coefficients(req.f, req.m, req.R, req.J)
    terms, dropped, largest_dropped = expansion_terms(coeffs, req.nu)
    values = tuple(_series_value(terms, p) for p in req.p_grid)
    diag = Diagnostics(
        coefficient_count=len(terms),
        dropped_terms=dropped,
        largest_dropped=largest_dropped,
        f_at_radius=float(req.f.evaluate(req.R)),
    )
    return TransformResult(tuple(req.p_grid), values, diag)


def transform_with_oracle(
    req: TransformRequest, cfg: QuadratureConfig | None = None
) -> TransformResult:
    """Same as :func:`transform`, with per-point |series - quadrature| attached."""
    result = transform(req)
    errs = tuple(
        abs(v - quadrature_hankel(req.f, req.nu, req.R, p, cfg))
        for p, v in zip(result.p_grid, result.values)
    )
    diag = replace(result.diagnostics, oracle_abs_err=errs)
    return TransformResult(result.p_grid, result.values, diag)
