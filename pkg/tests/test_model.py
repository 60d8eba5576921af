"""Interaction-law and parameter-container tests."""

import math

import pytest
from hypothesis import given, strategies as st

from rydgate import (
    GateParams,
    InteractionModel,
    InvalidModelError,
    OutOfRangeError,
    RydbergLevel,
    dmin_resonance_rule,
    fit_single_anchor,
    pair_shift,
)
from rydgate.units import angular_from_mhz

UM = 1.0e-6


def test_c6_anchor_reproduces_anchor_exactly():
    b = angular_from_mhz(52.0)
    model = fit_single_anchor("c6", b, 20.0 * UM)
    assert pair_shift(model, 20.0 * UM) == pytest.approx(b, rel=1e-15)


def test_c6_doubling_radius_divides_by_64():
    model = fit_single_anchor("c6", angular_from_mhz(52.0), 20.0 * UM)
    assert pair_shift(model, 40.0 * UM) == pytest.approx(
        angular_from_mhz(52.0 / 64.0), rel=1e-12
    )


def test_c6_halving_radius_multiplies_by_64():
    model = fit_single_anchor("c6", angular_from_mhz(52.0), 20.0 * UM)
    assert pair_shift(model, 10.0 * UM) == pytest.approx(
        angular_from_mhz(52.0 * 64.0), rel=1e-12
    )


def test_c3_identity_case():
    model = InteractionModel(c3=1.0)
    assert pair_shift(model, 1.0) == 1.0
    assert fit_single_anchor("c3", 1.0, 1.0).c3 == pytest.approx(1.0)


def test_crossover_selects_law_by_radius():
    # c3/r^3 and c6/r^6 agree at r = 2: c3 = 8, c6 = 64
    model = InteractionModel(c3=8.0, c6=64.0, crossover_radius=2.0)
    assert pair_shift(model, 1.0) == pytest.approx(8.0)
    assert pair_shift(model, 4.0) == pytest.approx(64.0 / 4096.0)


def test_crossover_discontinuity_rejected():
    with pytest.raises(InvalidModelError):
        InteractionModel(c3=8.0, c6=100.0, crossover_radius=2.0)


def test_empty_model_rejected():
    with pytest.raises(InvalidModelError):
        InteractionModel()


def test_nonpositive_radius_rejected():
    model = InteractionModel(c6=1.0)
    with pytest.raises(ValueError):
        pair_shift(model, 0.0)


@given(
    law=st.sampled_from(["c3", "c6"]),
    b=st.floats(min_value=1e3, max_value=1e12),
    r=st.floats(min_value=1e-7, max_value=1e-4),
    factor=st.floats(min_value=1.01, max_value=20.0),
)
def test_pair_shift_strictly_decreasing(law, b, r, factor):
    model = fit_single_anchor(law, b, r)
    assert pair_shift(model, r) > pair_shift(model, factor * r)


def test_dmin_power_law_by_hand():
    # c6/d^6 = 1.5 * gap with c6 = 3, gap = 1 solves to d = 2^(1/6)
    model = fit_single_anchor("c6", 3.0, 1.0)
    level = RydbergLevel(n=100, tau=1.0, gap=1.0, label="toy")
    d = dmin_resonance_rule(model, level, factor=1.5)
    assert d == pytest.approx(2.0 ** (1.0 / 6.0), rel=1e-9)


def test_dmin_anchor_radius_recovered():
    b = angular_from_mhz(52.0)
    model = fit_single_anchor("c6", b, 20.0 * UM)
    level = RydbergLevel(n=150, tau=820e-6, gap=b / 1.5, label="anchor")
    assert dmin_resonance_rule(model, level, factor=1.5) == pytest.approx(
        20.0 * UM, rel=1e-9
    )


def test_dmin_out_of_range_when_gap_unreachable():
    model = fit_single_anchor("c6", 1.0, 1.0)
    level = RydbergLevel(n=50, tau=1.0, gap=1e60, label="huge gap")
    with pytest.raises(OutOfRangeError):
        dmin_resonance_rule(model, level, factor=1.5)


@given(
    b=st.floats(min_value=1e4, max_value=1e11),
    r=st.floats(min_value=1e-7, max_value=1e-4),
    ratio=st.floats(min_value=1e-3, max_value=1e3),
)
def test_dmin_residual_below_1e9(b, r, ratio):
    model = fit_single_anchor("c6", b, r)
    gap = b * ratio
    level = RydbergLevel(n=80, tau=1.0, gap=gap, label="prop")
    d = dmin_resonance_rule(model, level, factor=1.5)
    assert abs(pair_shift(model, d) - 1.5 * gap) / (1.5 * gap) < 1e-9


def test_rydberg_level_validation():
    with pytest.raises(ValueError):
        RydbergLevel(n=0, tau=1.0, gap=1.0, label="bad n")
    with pytest.raises(ValueError):
        RydbergLevel(n=10, tau=-1.0, gap=1.0, label="bad tau")
    with pytest.raises(ValueError):
        RydbergLevel(n=10, tau=1.0, gap=0.0, label="bad gap")


def test_gate_params_validation():
    with pytest.raises(ValueError):
        GateParams(k=0, omega10=1.0)
    with pytest.raises(ValueError):
        GateParams(k=1, omega10=-1.0)
    with pytest.raises(ValueError):
        GateParams(k=1, omega10=1.0, omega=0.0)
    p = GateParams(k=3, omega10=1.0, omega=2.0)
    assert (p.k, p.omega) == (3, 2.0)


def test_unknown_law_rejected():
    with pytest.raises(ValueError):
        fit_single_anchor("c9", 1.0, 1.0)
