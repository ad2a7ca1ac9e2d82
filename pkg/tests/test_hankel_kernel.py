import math

import numpy as np
import pytest
import scipy.integrate
import scipy.special

from splinehankel.hankel_kernel import (
    Z_SWITCH,
    BasisTransform,
    MonomialIntegralQuery,
    atom_hankel,
    eq4_direct,
    haar_closed_form,
    haar_scaling_closed_form,
    monomial_hankel,
)
from splinehankel.splines import WaveletIndex, wavelet_piecewise

from .oracles import j1_series


def quad_atom(pp, nu, p):
    """Reference quadrature of a piecewise-polynomial atom transform."""
    total = 0.0
    for a, b in zip(pp.breakpoints, pp.breakpoints[1:]):
        lo = max(a, 0.0)
        if b <= lo:
            continue
        val, _ = scipy.integrate.quad(
            lambda r: pp(r) * scipy.special.jv(nu, p * r) * r,
            lo,
            b,
            limit=400,
            epsabs=1e-13,
        )
        total += val
    return total


class TestMonomialHankel:
    def test_p_zero_gamma0(self):
        q = MonomialIntegralQuery(gamma=0, nu=0, zeta=1.0, p=0.0)
        assert monomial_hankel(q) == pytest.approx(0.5, abs=1e-15)

    def test_p_zero_gamma2(self):
        q = MonomialIntegralQuery(gamma=2, nu=0, zeta=2.0, p=0.0)
        assert monomial_hankel(q) == pytest.approx(4.0, abs=1e-13)

    def test_bessel_identity(self):
        # int_0^z r J0(pr) dr = z J1(pz) / p
        q = MonomialIntegralQuery(gamma=0, nu=0, zeta=1.0, p=3.0)
        assert monomial_hankel(q) == pytest.approx(j1_series(3.0) / 3.0, abs=1e-12)

    def test_gamma1_nu1_vs_quadrature(self):
        ref, _ = scipy.integrate.quad(
            lambda r: r * r * scipy.special.jv(1, 5.0 * r), 0.0, 1.0, epsabs=1e-13
        )
        q = MonomialIntegralQuery(gamma=1, nu=1, zeta=1.0, p=5.0)
        assert monomial_hankel(q) == pytest.approx(ref, abs=1e-10)

    def test_two_path_overlap(self):
        # force the quadrature fallback and compare with the series route
        for gamma, nu, zeta, p in [(0, 0, 1.0, 8.0), (2, 1, 2.0, 6.0), (3, 2, 1.5, 9.0)]:
            q = MonomialIntegralQuery(gamma=gamma, nu=nu, zeta=zeta, p=p)
            series = monomial_hankel(q)
            quad = monomial_hankel(q, z_switch=1.0)
            assert quad == pytest.approx(series, rel=1e-9, abs=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError):
            MonomialIntegralQuery(gamma=-1, nu=0, zeta=1.0, p=1.0)
        with pytest.raises(ValueError):
            MonomialIntegralQuery(gamma=0, nu=0, zeta=0.0, p=1.0)
        with pytest.raises(ValueError):
            MonomialIntegralQuery(gamma=0, nu=0, zeta=1.0, p=-1.0)


class TestAtomHankel:
    def test_haar_wavelet_p0(self):
        bt = BasisTransform(1, 0, "wavelet", WaveletIndex(0, 0))
        assert atom_hankel(bt, 0.0) == pytest.approx(-0.25, abs=1e-15)

    def test_haar_scaling_identity(self):
        bt = BasisTransform(1, 0, "scaling", WaveletIndex(0, 0))
        assert atom_hankel(bt, 2.0) == pytest.approx(j1_series(2.0) / 2.0, abs=1e-12)

    def test_matches_haar_closed_form(self):
        bt = BasisTransform(1, 0, "wavelet", WaveletIndex(2, 3))
        assert atom_hankel(bt, 1.7) == pytest.approx(
            haar_closed_form(WaveletIndex(2, 3), 1.7), abs=1e-10
        )

    @pytest.mark.parametrize("nu", [0, 1, 2])
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_zero_frequency_law(self, m, nu):
        pp = wavelet_piecewise(m, WaveletIndex(1, 2))
        bt = BasisTransform(m, nu, "wavelet", WaveletIndex(1, 2))
        expected = pp.moment(1) if nu == 0 else 0.0
        assert atom_hankel(bt, 0.0) == pytest.approx(expected, abs=1e-13)

    @pytest.mark.parametrize("kind", ["scaling", "wavelet"])
    def test_against_quadrature(self, kind):
        for m, nu, j, k, p in [
            (1, 0, 0, 0, 1.3),
            (2, 0, 1, 3, 4.0),
            (2, 1, 0, 2, 2.5),
            (3, 2, 2, 5, 7.0),
        ]:
            bt = BasisTransform(m, nu, kind, WaveletIndex(j, k))
            ref = quad_atom(bt.piecewise(), nu, p)
            assert atom_hankel(bt, p) == pytest.approx(ref, abs=1e-8)

    def test_negative_shift_clipped_at_origin(self):
        # boundary atom: only the r >= 0 part contributes
        bt = BasisTransform(2, 0, "scaling", WaveletIndex(0, -1))
        ref = quad_atom(bt.piecewise(), 0, 1.5)
        assert atom_hankel(bt, 1.5) == pytest.approx(ref, abs=1e-10)

    def test_linearity(self):
        # transform of a sum of atoms is the sum of transforms
        p = 3.1
        atoms = [
            BasisTransform(2, 0, "wavelet", WaveletIndex(1, k)) for k in (0, 1, 2)
        ]
        vals = [atom_hankel(bt, p) for bt in atoms]
        combo = lambda r: sum(bt.piecewise()(r) for bt in atoms)
        ref, _ = scipy.integrate.quad(
            lambda r: combo(r) * scipy.special.jv(0, p * r) * r, 0.0, 3.0, limit=200
        )
        assert sum(vals) == pytest.approx(ref, abs=1e-10)

    def test_decay(self):
        bt = BasisTransform(2, 0, "wavelet", WaveletIndex(0, 1))
        assert abs(atom_hankel(bt, 200.0)) < abs(atom_hankel(bt, 5.0))

    def test_negative_p_rejected(self):
        bt = BasisTransform(1, 0, "wavelet", WaveletIndex(0, 0))
        with pytest.raises(ValueError):
            atom_hankel(bt, -1.0)

    def test_kind_validation(self):
        with pytest.raises(ValueError):
            BasisTransform(1, 0, "spline", WaveletIndex(0, 0))


class TestEq4Direct:
    def test_m1_two_path(self):
        bt = BasisTransform(1, 0, "wavelet", WaveletIndex(0, 0))
        direct = eq4_direct(1, 0, WaveletIndex(0, 0), 1.0)
        assert direct == pytest.approx(atom_hankel(bt, 1.0), abs=1e-9)

    def test_m2_two_path(self):
        bt = BasisTransform(2, 0, "wavelet", WaveletIndex(1, 2))
        direct = eq4_direct(2, 0, WaveletIndex(1, 2), 0.5)
        assert direct == pytest.approx(atom_hankel(bt, 0.5), rel=1e-9, abs=1e-12)

    def test_p0_positive_order(self):
        assert eq4_direct(2, 1, WaveletIndex(0, 0), 0.0) == 0.0

    def test_out_of_range_reported(self):
        with pytest.raises(ValueError):
            eq4_direct(1, 0, WaveletIndex(0, 6), 80.0)

    def test_negative_shift_rejected(self):
        with pytest.raises(ValueError):
            eq4_direct(2, 0, WaveletIndex(0, -1), 1.0)


class TestHaarClosedForms:
    def test_wavelet_instantiated(self):
        expected = j1_series(0.5) - j1_series(1.0)
        assert haar_closed_form(WaveletIndex(0, 0), 1.0) == pytest.approx(
            expected, abs=1e-12
        )

    def test_wavelet_small_p_limit(self):
        assert haar_closed_form(WaveletIndex(0, 0), 1e-9) == pytest.approx(
            -0.25, abs=1e-12
        )

    def test_wavelet_matches_atom(self):
        idx = WaveletIndex(3, 5)
        bt = BasisTransform(1, 0, "wavelet", idx)
        assert haar_closed_form(idx, 10.0) == pytest.approx(
            atom_hankel(bt, 10.0), abs=1e-10
        )

    def test_scaling_k0(self):
        assert haar_scaling_closed_form(0, 2.0) == pytest.approx(
            j1_series(2.0) / 2.0, abs=1e-13
        )

    def test_scaling_small_p(self):
        assert haar_scaling_closed_form(0, 1e-9) == pytest.approx(0.5, abs=1e-12)

    def test_scaling_k2_vs_quadrature(self):
        ref, _ = scipy.integrate.quad(
            lambda r: r * scipy.special.jv(0, 1.3 * r), 2.0, 3.0, epsabs=1e-12
        )
        assert haar_scaling_closed_form(2, 1.3) == pytest.approx(ref, abs=1e-10)

    def test_scaling_negative_k_rejected(self):
        with pytest.raises(ValueError):
            haar_scaling_closed_form(-1, 1.0)
