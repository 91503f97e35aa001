import numpy as np
import pytest

from magflow.integrator.base import IntegratorConfig
from magflow.integrator.rk4 import integrate
from magflow.integrator.systems import (
    SURFACE_DIAGNOSTICS,
    ellipsoid_diagnostic_names,
    ellipsoid_system,
    sphere_system,
    surface_system,
)
from magflow.invariants.drift import drift_report
from magflow.surfaces.custom import quartic_surface
from magflow.surfaces.ellipsoid import ellipsoid_rhs, ellipsoid_surface
from magflow.surfaces.potential import PhaseInvariantPotential
from magflow.surfaces.magnetic import geodesic_rhs
from magflow.surfaces.base import PhaseState
from tests.test_magflow.conftest import SPEC_124, random_ellipsoid_state, reeb_state


class TestSystems:
    def test_ellipsoid_rhs_is_ellipsoid_form(self, rng):
        sys = ellipsoid_system(SPEC_124)
        st = random_ellipsoid_state(SPEC_124, rng)
        np.testing.assert_allclose(sys.rhs(st.q, st.v), ellipsoid_rhs(SPEC_124, st), rtol=1e-15)

    def test_potential_switches_to_level_set_form(self, rng):
        potential = PhaseInvariantPotential.quadratic([1.0, 0.5, 2.0])
        sys = ellipsoid_system(SPEC_124, potential)
        st = random_ellipsoid_state(SPEC_124, rng)
        expected = geodesic_rhs(ellipsoid_surface(SPEC_124), st, potential)
        np.testing.assert_allclose(sys.rhs(st.q, st.v), expected, rtol=1e-15)
        assert sys.diagnose(st)["energy"] == pytest.approx(0.5 * st.speed**2 + potential.value(st.q))

    def test_diagnostic_names(self):
        assert ellipsoid_diagnostic_names(2) == ("energy", "C", "F_1", "F_2", "f_residual", "alpha_v")
        assert surface_system(quartic_surface()).diagnostic_names == SURFACE_DIAGNOSTICS

    def test_sphere_system(self):
        sys = sphere_system(2, radius=2.0)
        assert sys.constraint.f(np.array([2.0, 0.0], dtype=complex)) == pytest.approx(1.0)
        row = sys.diagnose(reeb_state(2, r=2.0))
        assert row["f_residual"] == pytest.approx(0.0)
        assert row["alpha_v"] == pytest.approx(1.0)

    def test_potential_run_conserves_energy_and_momenta(self, rng):
        potential = PhaseInvariantPotential.quadratic([1.0, 0.5, 2.0])
        st0 = random_ellipsoid_state(SPEC_124, rng)
        traj = integrate(ellipsoid_system(SPEC_124, potential), st0, IntegratorConfig(step=1e-3, t_end=5.0))
        for name in ("energy", "C", "F_1", "F_2", "F_3"):
            assert drift_report(traj, name).max_drift <= 1e-7

    def test_quartic_run_conserves_energy(self, rng):
        s = quartic_surface()
        x = np.array([0.8, 0.0], dtype=complex)
        x[1] = (1.0 - 0.64) ** 0.25
        v = np.array([0.0, 0.0], dtype=complex)
        v[0] = 1j
        st0 = PhaseState(x, v)
        traj = integrate(surface_system(s), st0, IntegratorConfig(step=1e-3, t_end=5.0))
        assert drift_report(traj, "energy").max_drift <= 1e-7
        assert np.max(np.abs(traj.diagnostic("f_residual"))) <= 1e-12
