import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from ramancavity.optics import AtomParams, InvalidArgument, PumpSpec
from ramancavity.raman import (SingularDetuning, chi_at_detuning, defect_index_profile,
                               eta_factor, gain_coefficient, raman_susceptibility)

from conftest import GAMMA10

G20 = 0.1 * GAMMA10
OMEGA1_DET = 30 * GAMMA10


def make_atom(k=2.0e5):
    return AtomParams(omega10=3.194e15, omega20=2 * math.pi * 1.8e9,
                      gamma10=GAMMA10, gamma20=G20, coupling_k=k)


# Frozen from a 40-digit mpmath evaluation of K g10^2 / (Omega1^2 (Omega_R + i g20)).
CHI_K200K = {0.0: -3.5367765131532296838e-6j,
             1.0: 1.7683882565766148419e-6 - 1.7683882565766148419e-6j,
             -1.0: -1.7683882565766148419e-6 - 1.7683882565766148419e-6j}
# K chosen so a uniform pump with G1 = gamma10 gives alpha*d = 0.5 T_M / R_M
# over a half-wave defect behind (HL)^10 H mirrors (n_H = 2.35, n_L = 1.45).
K_CALIBRATED = 208520.9245308797
CHI_CALIBRATED_CENTER = -3.6874595419090623673e-6j


@pytest.mark.parametrize("x", [0.0, 1.0, -1.0])
def test_chi_matches_high_precision_reference(x):
    chi = chi_at_detuning(make_atom(), OMEGA1_DET, x * G20)
    assert chi == pytest.approx(CHI_K200K[x], rel=1e-14)


def test_calibrated_coupling_value():
    atom = make_atom(K_CALIBRATED)
    chi = chi_at_detuning(atom, OMEGA1_DET, 0.0)
    assert chi == pytest.approx(CHI_CALIBRATED_CENTER, rel=1e-14)
    # uniform medium over d = lambda/2: alpha d = 2 pi |Im n|
    y = (2.35 / 1.45) ** 20 * 2.35**2
    r_m = ((1 - y) / (1 + y)) ** 2
    alpha_d = 2 * math.pi * -chi.imag
    assert alpha_d == pytest.approx(0.5 * (1 - r_m) / r_m, rel=1e-12)


def test_resonance_is_purely_imaginary_and_maximal():
    atom = make_atom()
    pump = PumpSpec(GAMMA10, OMEGA1_DET)
    omega0 = pump.omega1(atom) - atom.omega20
    resp = raman_susceptibility(atom, pump, omega0)
    assert abs(resp.detuning_raman) < 1.0
    # omega1 - omega20 rounds to within ~0.1 rad/s of the exact resonance
    assert abs(resp.chi_r.real) < 1e-8 * abs(resp.chi_r.imag)
    assert resp.chi_r.imag < 0
    grid = omega0 + np.linspace(-5, 5, 201) * G20
    mags = np.abs(raman_susceptibility(atom, pump, grid).chi_r)
    assert np.argmax(mags) == 100


def test_half_width_identity():
    atom = make_atom()
    c0 = chi_at_detuning(atom, OMEGA1_DET, 0.0)
    cp = chi_at_detuning(atom, OMEGA1_DET, G20)
    cm = chi_at_detuning(atom, OMEGA1_DET, -G20)
    assert cp.imag == pytest.approx(0.5 * c0.imag, rel=1e-15)
    assert cp.real == pytest.approx(-cm.real, rel=1e-15)


@given(x=st.floats(-1e3, 1e3, allow_nan=False))
@settings(max_examples=200)
def test_parity_and_gain_sign(x):
    atom = make_atom()
    c_plus = chi_at_detuning(atom, OMEGA1_DET, x * G20)
    c_minus = chi_at_detuning(atom, OMEGA1_DET, -x * G20)
    assert c_plus.real == pytest.approx(-c_minus.real, rel=4e-16, abs=0)
    assert c_plus.imag == pytest.approx(c_minus.imag, rel=4e-16, abs=0)
    assert c_plus.imag < 0
    alpha = gain_coefficient((c_plus * 4.0).imag, 589.6e-9)
    assert alpha > 0


def test_normal_dispersion_at_line_center():
    atom = make_atom()
    pump = PumpSpec(GAMMA10, OMEGA1_DET)
    omega0 = pump.omega1(atom) - atom.omega20
    h = G20 / 100
    dn = raman_susceptibility(atom, pump, np.array([omega0 - h, omega0 + h])).delta_n
    assert dn[1].real - dn[0].real > 0


def test_zero_detuning_is_singular():
    with pytest.raises(SingularDetuning):
        raman_susceptibility(make_atom(), PumpSpec(GAMMA10, 0.0), 3e15)


def test_small_detuning_warns(caplog):
    atom = make_atom()
    with caplog.at_level("WARNING"):
        raman_susceptibility(atom, PumpSpec(GAMMA10, 3 * GAMMA10), 3.19e15)
    assert "third-order" in caplog.text


class TestDefectIndexProfile:
    atom = make_atom()
    omega1 = atom.omega10 - OMEGA1_DET
    omega0 = omega1 - atom.omega20

    def test_zero_pump_leaves_index_at_one(self):
        n = defect_index_profile(self.atom, np.zeros(50), self.omega1, self.omega0)
        assert np.all(n == 1.0 + 0j)

    def test_uniform_pump_matches_single_point(self):
        g2 = np.full(40, (0.7 * GAMMA10) ** 2)
        n = defect_index_profile(self.atom, g2, self.omega1, self.omega0 + 0.3 * G20)
        ref = raman_susceptibility(self.atom, PumpSpec(0.7 * GAMMA10, OMEGA1_DET),
                                   self.omega0 + 0.3 * G20).delta_n
        np.testing.assert_allclose(n, 1 + ref, rtol=1e-15)

    def test_sin2_profile_average(self):
        d, slices = 1.0, 200
        z = (np.arange(slices) + 0.5) * d / slices
        g_peak2 = GAMMA10**2
        profile = g_peak2 * np.sin(np.pi * z / d) ** 2
        n = defect_index_profile(self.atom, profile, self.omega1, self.omega0, z)
        uniform = defect_index_profile(self.atom, [g_peak2], self.omega1, self.omega0)
        mean_sin2, _ = integrate.quad(lambda s: math.sin(math.pi * s) ** 2, 0, 1)
        assert np.mean(n.imag) == pytest.approx(uniform[0].imag * mean_sin2, rel=1e-6)

    def test_monotone_in_local_intensity(self):
        g2 = np.linspace(0, 4, 30) * GAMMA10**2
        n = defect_index_profile(self.atom, g2, self.omega1, self.omega0 + 0.2 * G20)
        assert np.all(np.diff(np.abs(n.imag)) > 0)

    def test_mismatched_grid(self):
        with pytest.raises(InvalidArgument):
            defect_index_profile(self.atom, np.ones(5), self.omega1, self.omega0, np.ones(4))

    def test_array_frequencies_give_matrix(self):
        n = defect_index_profile(self.atom, np.ones(7), self.omega1,
                                 self.omega0 + np.arange(3) * G20)
        assert n.shape == (3, 7)


def test_gain_coefficient_examples():
    lam = 589.6e-9
    assert gain_coefficient(0.0, lam) == 0.0
    d = 2.9e-7
    assert gain_coefficient(-lam / (4 * math.pi * d), lam) * d == pytest.approx(1.0, rel=1e-15)
    assert gain_coefficient(-1e-8, lam) == pytest.approx(4 * math.pi * 1e-8 / lam, rel=1e-15)
    assert gain_coefficient(-1e-8, lam) == pytest.approx(0.2131, abs=5e-5)
    with pytest.raises(InvalidArgument):
        gain_coefficient(-1e-8, 0.0)


class TestEta:
    atom = make_atom()
    omega0 = atom.omega10 - OMEGA1_DET - atom.omega20

    def test_zero_pump(self):
        assert eta_factor(self.atom, PumpSpec(0.0, OMEGA1_DET), 0.75, self.omega0) == 0.0

    def test_scalings(self):
        e1 = eta_factor(self.atom, PumpSpec(GAMMA10, OMEGA1_DET), 0.5, self.omega0)
        e2 = eta_factor(self.atom, PumpSpec(2 * GAMMA10, OMEGA1_DET), 0.5, self.omega0)
        e3 = eta_factor(self.atom, PumpSpec(GAMMA10, OMEGA1_DET), 1.0, self.omega0)
        assert e2 == pytest.approx(4 * e1, rel=1e-15)
        assert e3 == pytest.approx(2 * e1, rel=1e-15)

    def test_bad_overlap(self):
        with pytest.raises(InvalidArgument):
            eta_factor(self.atom, PumpSpec(GAMMA10, OMEGA1_DET), 0.0, self.omega0)

    @pytest.mark.parametrize("g", [0.2, 1.0, 3.0])
    def test_matches_finite_difference(self, g):
        pump = PumpSpec(g * GAMMA10, OMEGA1_DET)
        h = G20 / 100
        lo, hi = self.omega0 - h, self.omega0 + h
        dn = raman_susceptibility(self.atom, pump, np.array([lo, hi])).delta_n
        eta_fd = 0.8 * self.omega0 * (dn[1].real - dn[0].real) / (hi - lo)
        assert eta_factor(self.atom, pump, 0.8, self.omega0) == pytest.approx(eta_fd, rel=1e-4)
