"""Closed-form periodic shuttle: spec values, recurrence, degenerate cases."""

import math

import pytest

from deltaforge.bounce.periodic import (
    DegenerateGap,
    construct_periodic_scene,
    measure_shuttle_half_period,
    periodic_spec,
    recurrence_error,
)
from deltaforge.bounce.physics import Simulator
from deltaforge.bounce.scene import SimConfig


class TestClosedForm:
    def test_reference_numbers(self):
        # Direct evaluation: n=4, R_o=200, R_i=100, v=100, k=1.
        spec = periodic_spec(4, 200.0, 100.0, 100.0, 1)
        delta = 100.0 * math.cos(math.pi / 4)
        assert spec.delta == pytest.approx(delta)
        assert spec.t_fly == pytest.approx(0.70711, abs=1e-5)
        assert spec.omega == pytest.approx(2.22144, abs=1e-5)
        assert spec.t_bounce == pytest.approx(1.41421, abs=1e-5)
        assert spec.t_orient == pytest.approx(2.82843, abs=1e-5)

    def test_identity_omega_times_tfly(self):
        for n, k in [(4, 1), (6, 1), (8, -1), (5, 2)]:
            spec = periodic_spec(n, 240.0, 110.0, 160.0, k)
            assert spec.omega * spec.t_fly == pytest.approx(k * 2 * math.pi / n, rel=1e-12)

    def test_k_zero_static(self):
        spec = periodic_spec(4, 200.0, 100.0, 100.0, 0)
        assert spec.omega == 0.0
        assert math.isinf(spec.t_orient)

    def test_bad_parameters(self):
        with pytest.raises(ValueError):
            periodic_spec(4, 100.0, 200.0, 100.0, 1)  # R_i > R_o
        with pytest.raises(ValueError):
            periodic_spec(2, 200.0, 100.0, 100.0, 1)


class TestConstruction:
    def test_recurrence_within_one_unit(self):
        scene, spec = construct_periodic_scene(4, 200.0, 100.0, 100.0, 1, seed=3)
        assert recurrence_error(scene, spec.t_orient) <= 1.0

    def test_k_zero_shuttle_period_is_t_bounce(self):
        scene, spec = construct_periodic_scene(4, 200.0, 100.0, 100.0, 0, seed=1)
        assert scene.containers[0].angular.base == 0.0
        assert recurrence_error(scene, spec.t_bounce) <= 1.0

    def test_measured_half_period_matches_t_fly(self):
        scene, spec = construct_periodic_scene(6, 240.0, 110.0, 150.0, 1, seed=7)
        half = measure_shuttle_half_period(scene, 3.0 * spec.t_orient)
        assert half == pytest.approx(spec.t_fly, rel=0.01)

    def test_alternating_outer_inner_impacts(self):
        scene, spec = construct_periodic_scene(4, 200.0, 100.0, 100.0, 1, seed=5)
        sim = Simulator(scene, SimConfig.truth())
        sim.run_until(2.2 * spec.t_orient)
        times = [e.t for e in sim.events if e.kind == "wall"]
        assert len(times) >= 7
        gaps = [b - a for a, b in zip(times, times[1:])]
        for gap in gaps:
            assert gap == pytest.approx(spec.t_fly, rel=0.01)

    def test_degenerate_gap(self):
        with pytest.raises(DegenerateGap):
            construct_periodic_scene(4, 120.0, 100.0, 100.0, 1, ball_radius=10.0)

    def test_metadata_carries_spec(self):
        scene, spec = construct_periodic_scene(8, 260.0, 120.0, 180.0, -1, seed=2)
        assert scene.metadata["periodic"]["t_orient"] == pytest.approx(spec.t_orient)
        roles = [c.role for c in scene.containers]
        assert roles == ["outer", "inner"]
