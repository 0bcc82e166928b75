import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eomsim.lattice import decompose_mode
from eomsim.phase_mod import (
    MultitonePMConfig,
    PMConfig,
    ToneDrive,
    Truncation,
    ladder_phase,
    phase_factor,
    pm_coeff_exact,
    pm_coeff_optical,
    pm_generator_oracle,
    pm_multitone_row,
    pm_scatter_row,
    retained_halfwidth,
)

from oracles import bessel_reference

# Scattering amplitudes frozen from the defining expression evaluated at
# 40-digit precision: prefactor exp(j phi_b) (j exp(j theta))^(q-q0) times
# [J_{q-q0}(m) -+ J_{q+q0}(m)], wall term sign set by the parity of q0.
FROZEN_COEFFS = [
    (10, 10, 1.0, 0.3, 0.7, 0.7310212713633237 + 0.2261313784683892j),
    (12, 10, 1.0, 0.3, 0.7, 0.014804681408844146 - 0.11394574260532117j),
    (8, 10, 1.0, 0.3, 0.7, -0.05211977510339234 + 0.10240283146801794j),
    (1, 3, 2.0, -0.4, 1.1, 0.3314700608923846 + 0.1994112659735146j),
    (2, 1, 0.8, 0.0, 0.0, 0.37908881242472364j),
    (5, 2, 3.5, 1.2, -2.0, 0.37856955877603365 - 0.03325198592703809j),
]


@pytest.mark.parametrize("q, q0, m, phi_b, theta, want", FROZEN_COEFFS)
def test_frozen_scattering_amplitudes(q, q0, m, phi_b, theta, want):
    tone = 3
    dec = decompose_mode(q0 * tone, tone)
    cfg = PMConfig(phi_b=phi_b, m=m, theta_rf=theta, tone=tone)
    assert pm_coeff_exact(q, dec, cfg) == pytest.approx(want, abs=5e-15)


@pytest.mark.parametrize("q, q0, m, phi_b, theta, want", FROZEN_COEFFS)
def test_coefficients_against_independent_bessel_oracle(q, q0, m, phi_b, theta, want):
    s = q - q0
    pref = cmath.exp(1j * phi_b) * (1j * cmath.exp(1j * theta)) ** s
    sign = -1.0 if q0 % 2 else 1.0
    val = pref * (bessel_reference(s, m) - sign * bessel_reference(q + q0, m))
    assert val == pytest.approx(want, abs=5e-13)


@given(s=st.integers(-60, 60), theta=st.floats(-math.pi, math.pi, allow_nan=False))
def test_ladder_phase_matches_direct_power(s, theta):
    got = ladder_phase(s, theta)
    want = (1j) ** (s % 4) * cmath.exp(1j * (s * theta))
    assert abs(got) == pytest.approx(1.0, abs=1e-15)
    assert got == pytest.approx(want, abs=1e-12)


@pytest.mark.parametrize(
    "theta, table",
    [
        (0.0, (1, 1j, -1, -1j)),
        (math.pi / 2, (1, -1, 1, -1)),
        (math.pi, (1, -1j, -1, 1j)),
        (-math.pi / 2, (1, 1, 1, 1)),
    ],
)
def test_ladder_phase_exact_on_quarter_turn_grid(theta, table):
    for s in range(8):
        assert ladder_phase(s, theta) == table[s % 4]


def test_phase_factor_exact_values():
    assert phase_factor(0.0) == 1.0
    assert phase_factor(math.pi / 2) == 1j
    assert phase_factor(math.pi) == -1.0
    assert phase_factor(-math.pi / 2) == -1j
    assert phase_factor(0.3) == cmath.exp(0.3j)


def test_wall_term_matters_at_low_rungs():
    cfg = PMConfig(phi_b=0.0, m=1.5, theta_rf=0.0, tone=1)
    dec = decompose_mode(2, 1)
    assert abs(pm_coeff_exact(2, dec, cfg) - pm_coeff_optical(2, dec, cfg)) > 1e-3


def test_wall_term_negligible_at_high_rungs():
    cfg = PMConfig(phi_b=0.0, m=2.0, theta_rf=0.0, tone=1)
    dec = decompose_mode(30, 1)
    for q in range(20, 41):
        assert abs(pm_coeff_exact(q, dec, cfg) - pm_coeff_optical(q, dec, cfg)) < 1e-15


@settings(deadline=None)
@given(
    m=st.floats(0.0, 5.0, allow_nan=False),
    tone=st.integers(1, 5),
    q0=st.integers(5, 40),
)
def test_scatter_row_is_normalized(m, tone, q0):
    cfg = PMConfig(phi_b=0.5, m=m, theta_rf=-0.8, tone=tone)
    row = pm_scatter_row(q0 * tone, cfg)
    assert sum(abs(v) ** 2 for v in row.values()) == pytest.approx(1.0, abs=1e-11)


@settings(deadline=None)
@given(
    m=st.floats(0.1, 3.0, allow_nan=False),
    tone=st.integers(1, 4),
    n0=st.integers(1, 12),
)
def test_scatter_row_respects_lattice_wall(m, tone, n0):
    cfg = PMConfig(phi_b=0.0, m=m, theta_rf=0.4, tone=tone)
    row = pm_scatter_row(n0, cfg)
    assert all(mode >= 1 for mode in row)
    assert all((mode - n0) % tone == 0 for mode in row)
    assert sum(abs(v) ** 2 for v in row.values()) == pytest.approx(1.0, abs=1e-11)


@pytest.mark.parametrize("m, tone, n0", [(1.0, 3, 30), (2.4, 1, 7), (0.6, 5, 22)])
def test_scatter_row_matches_generator_route(m, tone, n0):
    cfg = PMConfig(phi_b=0.9, m=m, theta_rf=1.7, tone=tone)
    hw = retained_halfwidth(m, Truncation())
    n_max = (decompose_mode(n0, tone).q0 + hw + 12) * tone
    mat = pm_generator_oracle(cfg, n_max)
    row = pm_scatter_row(n0, cfg)
    for mode, amp in row.items():
        assert mat[n0 - 1, mode - 1] == pytest.approx(amp, abs=1e-10)
    # and nothing sizable was dropped
    kept = set(row)
    for mode in range(1, n_max + 1):
        if mode not in kept and (mode - n0) % tone == 0:
            assert abs(mat[n0 - 1, mode - 1]) < 1e-11


def test_zero_depth_row_is_pure_bias():
    cfg = PMConfig(phi_b=0.77, m=0.0, theta_rf=0.2, tone=4)
    assert pm_scatter_row(9, cfg) == {9: phase_factor(0.77)}


def test_retained_halfwidth_behavior():
    tr = Truncation()
    assert retained_halfwidth(0.0, tr) == tr.margin
    widths = [retained_halfwidth(m, tr) for m in (0.1, 0.5, 1.0, 2.0, 5.0)]
    assert widths == sorted(widths)
    assert retained_halfwidth(1.0, Truncation(eps=1e-6, margin=0)) < retained_halfwidth(
        1.0, Truncation(eps=1e-14, margin=0)
    )


def test_truncation_controls_row_size():
    cfg = PMConfig(phi_b=0.0, m=1.0, theta_rf=0.0, tone=2)
    slim = pm_scatter_row(80, cfg, truncation=Truncation(eps=1e-4, margin=0))
    wide = pm_scatter_row(80, cfg)
    assert len(slim) < len(wide)
    assert sum(abs(v) ** 2 for v in slim.values()) == pytest.approx(1.0, abs=1e-6)


def test_multitone_row_structure():
    cfg = MultitonePMConfig(
        phi_b=0.25,
        tones=(ToneDrive(m=0.01, theta_rf=0.3, tone=2), ToneDrive(m=0.02, theta_rf=-0.6, tone=7)),
    )
    row = pm_multitone_row(50, cfg)
    assert set(row) == {43, 48, 50, 52, 57}
    bias = phase_factor(0.25)
    assert row[50] == bias
    assert row[52] == pytest.approx(bias * 1j * 0.01 * cmath.exp(0.3j))
    assert row[43] == pytest.approx(bias * 1j * 0.02 * cmath.exp(0.6j))


def test_multitone_same_tone_adds_coherently():
    cfg = MultitonePMConfig(
        phi_b=0.0,
        tones=(ToneDrive(m=0.01, theta_rf=0.0, tone=3), ToneDrive(m=0.01, theta_rf=math.pi, tone=3)),
    )
    row = pm_multitone_row(30, cfg)
    # equal depths in antiphase cancel both sidebands exactly
    assert set(row) == {30}


def test_multitone_half_convention_scales_sidebands():
    full = pm_multitone_row(40, MultitonePMConfig(
        phi_b=0.1, tones=(ToneDrive(m=0.02, theta_rf=0.5, tone=4),), convention="full"))
    half = pm_multitone_row(40, MultitonePMConfig(
        phi_b=0.1, tones=(ToneDrive(m=0.02, theta_rf=0.5, tone=4),), convention="half"))
    assert half[44] == pytest.approx(0.5 * full[44])
    assert half[36] == pytest.approx(0.5 * full[36])
    assert half[40] == full[40]


def test_multitone_rejects_wall_crossing():
    cfg = MultitonePMConfig(phi_b=0.0, tones=(ToneDrive(m=0.01, theta_rf=0.0, tone=10),))
    with pytest.raises(ValueError):
        pm_multitone_row(10, cfg)


def test_multitone_no_tones_is_carrier_only():
    cfg = MultitonePMConfig(phi_b=-0.4, tones=())
    assert pm_multitone_row(17, cfg) == {17: phase_factor(-0.4)}


def test_config_validation():
    with pytest.raises(ValueError):
        PMConfig(phi_b=0.0, m=-0.1, theta_rf=0.0, tone=1)
    with pytest.raises(ValueError):
        PMConfig(phi_b=0.0, m=51.0, theta_rf=0.0, tone=1)
    with pytest.raises(ValueError):
        PMConfig(phi_b=0.0, m=1.0, theta_rf=0.0, tone=0)
    with pytest.raises(ValueError):
        PMConfig(phi_b=math.inf, m=1.0, theta_rf=0.0, tone=1)
    with pytest.raises(ValueError):
        MultitonePMConfig(phi_b=0.0, tones=(ToneDrive(m=0.1, theta_rf=0.0, tone=1),),
                          convention="exact")
    with pytest.raises(ValueError):
        Truncation(eps=0.0)
    with pytest.raises(ValueError):
        Truncation(margin=-1)


def test_scatter_row_rejects_unknown_model():
    cfg = PMConfig(phi_b=0.0, m=1.0, theta_rf=0.0, tone=1)
    with pytest.raises(ValueError):
        pm_scatter_row(10, cfg, model="classical")
