"""Square-lattice layout and pair-set tests.

Frozen layouts below were derived by brute-force enumeration of lattice
shells sorted by (radius, angle); they pin the deterministic site order.
"""

import math
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from rydgate import build_layout, pair_sets

UM = 1.0e-6


def test_k4_is_the_four_nearest_neighbors_in_angle_order():
    geom = build_layout(UM, 4)
    assert geom.control_sites == ((1, 0), (0, 1), (-1, 0), (0, -1))
    assert geom.target_site == (0, 0)


def test_k8_adds_the_diagonals():
    geom = build_layout(UM, 8)
    assert geom.control_sites[:4] == ((1, 0), (0, 1), (-1, 0), (0, -1))
    assert set(geom.control_sites[4:]) == {(1, 1), (-1, 1), (-1, -1), (1, -1)}


def test_k1_single_site_at_distance_d():
    geom = build_layout(2.0 * UM, 1)
    ps = pair_sets(geom)
    assert ps.control_target == (2.0 * UM,)
    assert ps.control_control_ordered == ()
    assert ps.control_control_all == ()


def test_k35_shell_census():
    # complete shells through squared radius 9, then 7 of the 8 sites at
    # squared radius 10; the angle rule drops (3, -1), the largest angle
    geom = build_layout(UM, 35)
    shells = Counter(x * x + y * y for (x, y) in geom.control_sites)
    assert dict(shells) == {1: 4, 2: 4, 4: 4, 5: 8, 8: 4, 9: 4, 10: 7}
    assert (3, -1) not in geom.control_sites
    assert max(math.hypot(x, y) for (x, y) in geom.control_sites) == pytest.approx(
        math.sqrt(10.0)
    )


def test_k4_pair_separations_by_hand():
    ps = pair_sets(build_layout(UM, 4))
    assert [r / UM for r in ps.control_target] == pytest.approx([1.0] * 4)
    multiset = Counter(round(r / UM, 9) for r in ps.control_control_all)
    assert multiset == {round(math.sqrt(2.0), 9): 4, 2.0: 2}


def test_k2_has_exactly_one_control_pair():
    ps = pair_sets(build_layout(UM, 2))
    assert len(ps.control_control_ordered) == 1
    assert len(ps.control_control_all) == 1


@given(k=st.integers(min_value=1, max_value=40))
def test_pair_counts(k):
    ps = pair_sets(build_layout(UM, k))
    assert len(ps.control_target) == k
    assert len(ps.control_control_all) == k * (k - 1) // 2
    assert len(ps.control_control_ordered) == k * (k - 1) // 2


@given(k=st.integers(min_value=1, max_value=40))
def test_layout_deterministic(k):
    assert build_layout(UM, k) == build_layout(UM, k)


@given(k=st.integers(min_value=2, max_value=40), d_um=st.floats(min_value=0.1, max_value=50.0))
def test_every_separation_is_sqrt_integer_multiple_of_d(k, d_um):
    d = d_um * UM
    ps = pair_sets(build_layout(d, k))
    for r in list(ps.control_target) + list(ps.control_control_all):
        m = (r / d) ** 2
        assert m >= 1.0 - 1e-9
        assert abs(m - round(m)) < 1e-6


def test_minimum_separation_is_d():
    ps = pair_sets(build_layout(3.0 * UM, 20))
    smallest = min(list(ps.control_target) + list(ps.control_control_all))
    assert smallest == pytest.approx(3.0 * UM)


def test_ordered_pairs_use_excitation_order():
    ps = pair_sets(build_layout(UM, 5))
    for i, j, sep in ps.control_control_ordered:
        assert i < j
        assert sep > 0.0


def test_invalid_inputs_rejected():
    with pytest.raises(ValueError):
        build_layout(0.0, 4)
    with pytest.raises(ValueError):
        build_layout(UM, 0)
