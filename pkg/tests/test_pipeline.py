import numpy as np
import pytest

from splinehankel.expansion import FunctionSpec, gram_coefficients, reconstruct
from splinehankel.hankel_kernel import atom_hankel
from splinehankel.oracle import quadrature_hankel
from splinehankel.pipeline import (
    TransformRequest,
    expansion_terms,
    transform,
    transform_with_oracle,
)

from .oracles import j1_series


class TestTransform:
    def test_constant_identity(self):
        # details of a constant vanish, leaving F0(p) = J1(p)/p
        grid = tuple(np.linspace(0.5, 12.0, 24))
        req = TransformRequest(FunctionSpec.constant(1.0), 0, 1, 1.0, 3, grid)
        res = transform(req)
        for p, v in zip(grid, res.values):
            assert v == pytest.approx(j1_series(p) / p, abs=1e-9)

    def test_linearity(self):
        grid = (0.0, 1.0, 4.0)
        a = transform(TransformRequest(FunctionSpec.gaussian(1.0), 0, 1, 8.0, 2, grid))
        scaled = FunctionSpec.from_callable(
            lambda r: 3.0 * np.exp(-np.asarray(r, dtype=float) ** 2)
        )
        b = transform(TransformRequest(scaled, 0, 1, 8.0, 2, grid))
        assert np.asarray(b.values) == pytest.approx(
            3.0 * np.asarray(a.values), rel=1e-10
        )

    def test_grid_independence(self):
        f = FunctionSpec.gaussian(1.0)
        lone = transform(TransformRequest(f, 0, 1, 8.0, 3, (2.5,)))
        wide = transform(
            TransformRequest(f, 0, 1, 8.0, 3, tuple(np.linspace(0.0, 10.0, 21)))
        )
        i = list(np.linspace(0.0, 10.0, 21)).index(2.5)
        assert wide.values[i] == lone.values[0]

    def test_diagnostics(self):
        req = TransformRequest(
            FunctionSpec.gaussian(1.0), 0, 1, 8.0, 3, (0.0, 1.0, 2.0)
        )
        res = transform(req)
        diag = res.diagnostics
        assert diag.coefficient_count > 0
        assert diag.f_at_radius == pytest.approx(np.exp(-64.0))
        assert diag.oracle_abs_err is None

    def test_request_validation(self):
        f = FunctionSpec.constant(1.0)
        with pytest.raises(ValueError):
            TransformRequest(f, 0, 1, 1.0, 2, ())
        with pytest.raises(ValueError):
            TransformRequest(f, 0, 1, 1.0, 2, (1.0, 0.5))
        with pytest.raises(ValueError):
            TransformRequest(f, 0, 1, 1.0, 2, (-1.0, 0.5))
        with pytest.raises(ValueError):
            TransformRequest(f, -1, 1, 1.0, 2, (1.0,))


class TestTransformWithOracle:
    def test_zero_function(self):
        req = TransformRequest(FunctionSpec.constant(0.0), 0, 1, 4.0, 2, (0.5, 1.0))
        res = transform_with_oracle(req)
        assert res.diagnostics.max_oracle_err == 0.0

    def test_gaussian_error_column(self):
        grid = tuple(np.linspace(0.0, 20.0, 9))
        req = TransformRequest(FunctionSpec.gaussian(1.0), 0, 1, 8.0, 3, grid)
        res = transform_with_oracle(req)
        errs = res.diagnostics.oracle_abs_err
        assert len(errs) == len(grid)
        assert res.diagnostics.max_oracle_err == max(errs)
        assert res.diagnostics.max_oracle_err < 2e-2

    def test_level_refinement_reduces_error(self):
        grid = tuple(np.linspace(0.0, 20.0, 9))
        f = FunctionSpec.gaussian(1.0)
        errs = {}
        for J in (3, 5):
            res = transform_with_oracle(TransformRequest(f, 0, 1, 8.0, J, grid))
            errs[J] = res.diagnostics.max_oracle_err
        assert errs[5] <= errs[3]


CORPUS = [
    ("constant", FunctionSpec.constant(1.0), 4.0),
    ("ramp", FunctionSpec.ramp(), 4.0),
    ("gauss-half", FunctionSpec.gaussian(0.5), 4.0),
    ("gauss-one", FunctionSpec.gaussian(1.0), 8.0),
    ("gauss-two", FunctionSpec.gaussian(2.0), 16.0),
    ("haar-atom", FunctionSpec.haar_atom(1, 1), 4.0),
]


class TestCorpusOracleEquivalence:
    @pytest.mark.parametrize("name,f,R", CORPUS, ids=[c[0] for c in CORPUS])
    def test_error_non_increasing_in_level(self, name, f, R):
        grid = tuple(np.linspace(0.0, 10.0, 11))
        tols = []
        for J in (2, 3, 4, 5):
            res = transform_with_oracle(TransformRequest(f, 0, 1, R, J, grid))
            tols.append(res.diagnostics.max_oracle_err)
        for a, b in zip(tols, tols[1:]):
            assert b <= a + 1e-12


class TestExactnessOnApproximationSpace:
    def test_reconstruction_transforms_exactly(self):
        # a function already in the span picks up no approximation error
        base = gram_coefficients(FunctionSpec.gaussian(1.0), 2, 8.0, 2)
        f = FunctionSpec.from_callable(
            lambda r: np.array([reconstruct(base, float(x)) for x in np.atleast_1d(r)])
        )
        grid = tuple(np.linspace(0.0, 15.0, 16))
        res = transform(TransformRequest(f, 0, 2, 8.0, 2, grid))
        terms, _, _ = expansion_terms(base, 0)
        for p, v in zip(grid, res.values):
            direct = sum(c * atom_hankel(bt, p) for c, bt in terms)
            assert v == pytest.approx(direct, abs=1e-9)


class TestExpansionTerms:
    def test_null_terms_dropped(self):
        coeffs = gram_coefficients(FunctionSpec.constant(1.0), 1, 4.0, 2)
        terms, dropped, largest = expansion_terms(coeffs, 0)
        # constants have no detail: every wavelet term is numerically null
        assert all(bt.kind == "scaling" for _, bt in terms)
        assert dropped > 0
        assert largest <= 1e-14 * max(abs(c) for c, _ in terms)

    def test_sorted_descending(self):
        coeffs = gram_coefficients(FunctionSpec.gaussian(1.0), 1, 8.0, 3)
        terms, _, _ = expansion_terms(coeffs, 0)
        mags = [abs(c) for c, _ in terms]
        assert mags == sorted(mags, reverse=True)
