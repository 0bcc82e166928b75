import math

import numpy as np
import pytest

from eomsim.engine import (
    port_entanglement,
    preset,
    two_photon_dc_closed_form,
    two_photon_output,
)
from eomsim.phase_mod import PMConfig, Truncation, pm_scatter_row

DPHI_GRID = [0.0, math.pi / 8, math.pi / 4, 3 * math.pi / 8, math.pi / 2]


def _dc_pair_config(delta_phi, m=0.4, tone=2):
    pm1 = PMConfig(phi_b=delta_phi, m=m, theta_rf=0.0, tone=tone)
    pm2 = PMConfig(phi_b=0.0, m=m, theta_rf=0.0, tone=tone)
    return preset("dc_dual", pm1=pm1, pm2=pm2)


def test_identity_device_keeps_photons_split():
    state = two_photon_output(preset("yb_dual"), 100)
    assert set(state.amps) == {((1, 100), (2, 100))}
    assert state.amps[(1, 100), (2, 100)] == pytest.approx(1.0, abs=1e-14)
    sectors = state.sector_probabilities()
    assert sectors["split"] == pytest.approx(1.0, abs=1e-12)
    svs = port_entanglement(state)
    assert svs[0] == pytest.approx(1.0, abs=1e-12)
    assert len(svs) == 1 or abs(svs[1]) < 1e-14


@pytest.mark.parametrize("dphi", DPHI_GRID)
def test_norm_and_sector_split(dphi):
    state = two_photon_output(_dc_pair_config(dphi), 60)
    assert state.norm_sq() == pytest.approx(1.0, abs=1e-12)
    sectors = state.sector_probabilities()
    assert sum(sectors.values()) == pytest.approx(1.0, abs=1e-12)
    want_split = math.cos(dphi) ** 2
    assert sectors["split"] == pytest.approx(want_split, abs=1e-12)
    # bunched output is shared evenly between the two ports
    assert sectors["both_port1"] == pytest.approx(sectors["both_port2"], abs=1e-12)
    assert sectors["both_port1"] == pytest.approx(0.5 * math.sin(dphi) ** 2, abs=1e-12)


@pytest.mark.parametrize("dphi", DPHI_GRID)
def test_general_path_matches_closed_form(dphi):
    cfg = _dc_pair_config(dphi)
    state = two_photon_output(cfg, 60)
    # the closed form is driven by the common-arm scattering row
    row = pm_scatter_row(60, cfg.pm2)
    want = two_photon_dc_closed_form(dphi, row)
    keys = set(state.amps) | set(want.amps)
    for key in keys:
        assert state.amps.get(key, 0.0) == pytest.approx(want.amps.get(key, 0.0), abs=1e-12)


def test_pair_coalescence_removes_split_outcomes():
    state = two_photon_output(_dc_pair_config(math.pi / 2), 60)
    split = [abs(a) for ((p1, _), (p2, _)), a in state.amps.items() if p1 != p2]
    assert max(split, default=0.0) < 1e-14
    svs = port_entanglement(state)
    assert svs[0] == pytest.approx(math.sqrt(0.5), abs=1e-10)
    assert svs[1] == pytest.approx(math.sqrt(0.5), abs=1e-10)


def test_matched_pair_is_product_state():
    svs = port_entanglement(two_photon_output(_dc_pair_config(0.0), 60))
    assert svs[0] == pytest.approx(1.0, abs=1e-12)
    if len(svs) > 1:
        assert svs[1] < 1e-12


def test_distinct_tones_forbid_cross_ladder_pairs():
    cfg = preset(
        "dc_dual",
        pm1=PMConfig(phi_b=0.0, m=0.5, theta_rf=0.0, tone=2),
        pm2=PMConfig(phi_b=0.0, m=0.5, theta_rf=0.0, tone=5),
    )
    state = two_photon_output(cfg, 60)
    for ((_, m1), (_, m2)), amp in state.amps.items():
        both_arm1 = (m1 - 60) % 2 == 0 and (m2 - 60) % 2 == 0
        both_arm2 = (m1 - 60) % 5 == 0 and (m2 - 60) % 5 == 0
        assert both_arm1 or both_arm2, f"cross-ladder pair {m1},{m2} with amp {amp!r}"


def test_double_occupancy_counts_twice():
    state = two_photon_output(_dc_pair_config(math.pi / 2), 60)
    manual = sum(
        (2.0 if x == y else 1.0) * abs(c) ** 2 for (x, y), c in state.amps.items()
    )
    assert state.norm_sq() == pytest.approx(manual, abs=0.0)
    key = ((1, 60), (1, 60))
    if key in state.amps:
        assert state.pair_probability(key) == pytest.approx(2.0 * abs(state.amps[key]) ** 2)


def test_truncation_propagates_to_pairs():
    slim = two_photon_output(_dc_pair_config(0.3, m=0.3), 60, truncation=Truncation(eps=1e-4, margin=0))
    wide = two_photon_output(_dc_pair_config(0.3, m=0.3), 60)
    assert len(slim.amps) < len(wide.amps)
    assert slim.norm_sq() == pytest.approx(1.0, abs=1e-6)
