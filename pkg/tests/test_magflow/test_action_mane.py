from typing import NamedTuple

import numpy as np
import pytest

from magflow.action_mane import (
    ActionReport,
    action_report,
    action_sign,
    circle_orbit,
    circle_orbit_action_closed_form,
    circle_orbit_energy,
    contact_type_report,
    free_time_action,
    lagrangian_action,
    mane_value,
)
from magflow.errors import PreconditionError
from magflow.integrator.base import Trajectory
from tests.test_magflow.conftest import SPEC_14, SPEC_124, UNIT_SPHERE_2, reeb_state


class OrbitCase(NamedTuple):
    omega: float
    s_free: float
    sign: int


ORBIT_CASES = (
    OrbitCase(omega=0.25, s_free=-2.0 * np.pi, sign=-1),
    OrbitCase(omega=0.5, s_free=0.0, sign=0),
    OrbitCase(omega=1.0, s_free=4.0 * np.pi, sign=1),
)


class TestCircleOrbit:
    def test_geometry(self):
        traj = circle_orbit(SPEC_14, 2, 0.25, samples=65)
        assert len(traj) == 65
        assert traj.span == pytest.approx(8.0 * np.pi)
        np.testing.assert_allclose(np.abs(traj.qs[:, 1]), 2.0, rtol=1e-14)
        np.testing.assert_allclose(traj.qs[-1], traj.qs[0], atol=1e-12)
        np.testing.assert_allclose(traj.diagnostic("f_residual"), 0.0, atol=1e-14)

    def test_energy(self):
        traj = circle_orbit(SPEC_14, 2, 0.25)
        assert circle_orbit_energy(SPEC_14, 2, 0.25) == pytest.approx(0.125)
        np.testing.assert_allclose(traj.diagnostic("energy"), 0.125, rtol=1e-13)

    @pytest.mark.parametrize("j", (0, 3, -1))
    def test_invalid_axis(self, j):
        with pytest.raises(IndexError):
            circle_orbit(SPEC_14, j, 1.0)

    def test_zero_omega(self):
        with pytest.raises(PreconditionError):
            circle_orbit(SPEC_14, 1, 0.0)

    def test_too_few_samples(self):
        with pytest.raises(PreconditionError):
            circle_orbit(SPEC_14, 1, 1.0, samples=15)


class TestActions:
    def test_lagrangian_action(self):
        traj = circle_orbit(SPEC_14, 2, 0.25)
        assert lagrangian_action(traj) == pytest.approx(-3.0 * np.pi, abs=1e-10)

    @pytest.mark.parametrize("case", ORBIT_CASES, ids=[f"omega={c.omega}" for c in ORBIT_CASES])
    def test_free_time_action(self, case: OrbitCase):
        kappa = circle_orbit_energy(SPEC_14, 2, case.omega)
        s_free = free_time_action(circle_orbit(SPEC_14, 2, case.omega), kappa)
        assert s_free == pytest.approx(case.s_free, abs=1e-9)
        assert action_sign(s_free) == case.sign

    @pytest.mark.parametrize("omega", (0.1, 0.25, 0.5, 0.75, 1.0, -0.5))
    @pytest.mark.parametrize("j", (1, 2, 3))
    def test_quadrature_matches_closed_form(self, j, omega):
        kappa = circle_orbit_energy(SPEC_124, j, omega)
        s_free = free_time_action(circle_orbit(SPEC_124, j, omega), kappa)
        assert abs(s_free - circle_orbit_action_closed_form(SPEC_124, j, omega)) <= 1e-8

    def test_even_sample_count(self):
        kappa = circle_orbit_energy(SPEC_14, 2, 1.0)
        s_free = free_time_action(circle_orbit(SPEC_14, 2, 1.0, samples=64), kappa)
        assert s_free == pytest.approx(4.0 * np.pi, abs=1e-9)

    def test_action_report(self):
        report = action_report(circle_orbit(SPEC_14, 2, 0.25), 0.125)
        assert report.period == pytest.approx(8.0 * np.pi)
        assert report.S_free == pytest.approx(report.S_L + 0.125 * report.period)
        assert report.samples == 2049

    def test_report_consistency_check(self):
        with pytest.raises(ValueError):
            ActionReport(kappa=1.0, period=2.0, S_L=0.0, S_free=1.0, samples=3)
        with pytest.raises(ValueError):
            ActionReport(kappa=1.0, period=0.0, S_L=0.0, S_free=0.0, samples=3)

    def test_too_few_samples(self):
        st = reeb_state()
        traj = Trajectory(np.array([0.0, 1.0]), (st, st))
        with pytest.raises(PreconditionError):
            lagrangian_action(traj)

    def test_action_sign(self):
        assert action_sign(1e-9) == 0
        assert action_sign(-1e-3) == -1
        assert action_sign(2.0) == 1


class TestMane:
    def test_values(self):
        assert mane_value(SPEC_124) == pytest.approx(0.5)
        assert mane_value(UNIT_SPHERE_2) == pytest.approx(0.125)

    @pytest.mark.parametrize(
        "kappa, sign, claim", ((0.125, -1, True), (0.5, 0, True), (2.0, 1, False)), ids=["below", "at", "above"]
    )
    def test_contact_type_report(self, kappa, sign, claim):
        report = contact_type_report(SPEC_14, kappa)
        assert report.sign == sign
        assert report.claim is claim
        assert report.omega == pytest.approx(np.sqrt(kappa / 2.0))

    @pytest.mark.parametrize("kappa", (0.0, -1.0))
    def test_invalid_energy(self, kappa):
        with pytest.raises(PreconditionError):
            contact_type_report(SPEC_14, kappa)
