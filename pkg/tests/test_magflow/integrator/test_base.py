import numpy as np
import pandas as pd
import pytest

from magflow.errors import DimensionError
from magflow.integrator.base import IntegratorConfig, Trajectory, diagnostics_frame, read_trajectory_csv
from magflow.integrator.rk4 import integrate
from magflow.integrator.systems import ellipsoid_system
from magflow.revolution import RevolutionSurface, RevState, revolution_system
from magflow.surfaces.base import PhaseState
from tests.test_magflow.conftest import SPEC_124, random_ellipsoid_state, reeb_state


class TestTrajectory:
    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            Trajectory(np.array([0.0, 1.0]), (reeb_state(),))

    def test_non_uniform_times(self):
        with pytest.raises(ValueError, match="uniformly"):
            Trajectory(np.array([0.0, 1.0, 3.0]), (reeb_state(),) * 3)

    def test_longer_final_interval(self):
        with pytest.raises(ValueError, match="uniformly"):
            Trajectory(np.array([0.0, 1.0, 2.0, 2.5 + 1.0]), (reeb_state(),) * 4)

    def test_shorter_final_interval(self):
        traj = Trajectory(np.array([0.0, 0.3, 0.6, 0.9, 1.0]), (reeb_state(),) * 5)
        assert traj.dt == pytest.approx(0.3)
        assert traj.regular_count == 4
        assert len(traj.regular()) == 4
        assert traj.regular().times[-1] == pytest.approx(0.9)

    def test_regular_without_tail_is_identity(self):
        traj = Trajectory(np.array([0.0, 0.5, 1.0]), (reeb_state(),) * 3)
        assert traj.regular() is traj

    def test_decreasing_times(self):
        with pytest.raises(ValueError, match="increasing"):
            Trajectory(np.array([1.0, 0.0]), (reeb_state(),) * 2)

    def test_missing_diagnostic(self):
        traj = Trajectory(np.array([0.0]), (reeb_state(),))
        with pytest.raises(KeyError, match="not recorded"):
            traj.diagnostic("energy")

    def test_frame_layout(self, rng):
        st0 = random_ellipsoid_state(SPEC_124, rng)
        traj = integrate(ellipsoid_system(SPEC_124), st0, IntegratorConfig(step=1e-2, t_end=0.1))
        frame = traj.to_frame()
        expected = (
            ["t"]
            + [f"q_{k}" for k in range(6)]
            + [f"v_{k}" for k in range(6)]
            + ["energy", "C", "F_1", "F_2", "F_3", "f_residual", "alpha_v"]
        )
        assert list(frame.columns) == expected
        np.testing.assert_array_equal(frame.loc[0, [f"q_{k}" for k in range(6)]].to_numpy(), st0.real_q())


class TestCsvRoundTrip:
    def test_complex_state(self, rng, tmp_path):
        st0 = random_ellipsoid_state(SPEC_124, rng)
        sys = ellipsoid_system(SPEC_124)
        traj = integrate(sys, st0, IntegratorConfig(step=1e-2, t_end=1.0))
        path = tmp_path / "traj.csv"
        traj.write_csv(path)

        back = read_trajectory_csv(path, n_real=6)
        np.testing.assert_array_equal(back.times, traj.times)
        np.testing.assert_array_equal(back.qs, traj.qs)
        np.testing.assert_array_equal(back.vs, traj.vs)
        rediagnosed = diagnostics_frame([sys.diagnose(st) for st in back.states], sys.diagnostic_names)
        for name in sys.diagnostic_names:
            assert np.max(np.abs(rediagnosed[name].to_numpy() - back.diagnostic(name))) <= 1e-12

    def test_real_state(self, tmp_path):
        sys = revolution_system(RevolutionSurface.torus_profile())
        st0 = RevState(0.0, 0.0, 0.3, 1.0).to_phase_state()
        traj = integrate(sys, st0, IntegratorConfig(method="rk4", step=1e-2, t_end=0.5))
        path = tmp_path / "rev.csv"
        traj.write_csv(path)
        back = read_trajectory_csv(path, n_real=2, complex_state=False)
        np.testing.assert_array_equal(back.qs, traj.qs)
        np.testing.assert_array_equal(back.diagnostic("F"), traj.diagnostic("F"))

    def test_missing_columns(self, tmp_path):
        path = tmp_path / "bad.csv"
        pd.DataFrame({"t": [0.0], "q_0": [1.0]}).to_csv(path, index=False)
        with pytest.raises(KeyError, match="lacks column"):
            read_trajectory_csv(path, n_real=2)


class TestSecondOrderSystem:
    def test_diagnose_orders_names(self):
        sys = ellipsoid_system(SPEC_124)
        st = PhaseState(np.array([1.0, 0, 0], dtype=complex), np.array([0, 1.0, 0], dtype=complex))
        assert list(sys.diagnose(st)) == list(sys.diagnostic_names)
        assert sys.n_real == 6
