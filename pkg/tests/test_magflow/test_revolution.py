import numpy as np
import pytest

from magflow.errors import DomainError
from magflow.integrator.base import IntegratorConfig
from magflow.integrator.rk4 import integrate
from magflow.invariants.drift import drift_report
from magflow.revolution import (
    REVOLUTION_DIAGNOSTICS,
    RevState,
    RevolutionSurface,
    clairaut_F,
    revolution_energy,
    revolution_rhs,
    revolution_system,
    rotate_theta,
)

TORUS = RevolutionSurface.torus_profile()
TORUS_RIEMANNIAN = RevolutionSurface.torus_profile(magnetic=False)
CYLINDER = RevolutionSurface(
    f=lambda r: 1.0, df=lambda r: 0.0, a=lambda r: r, da=lambda r: 1.0, name="cylinder"
)
TORUS_START = RevState(r=0.0, theta=0.0, dr=0.3, dtheta=1.0)


def tabulated_torus(nodes: int = 61) -> RevolutionSurface:
    r = np.linspace(-3.0, 3.0, nodes)
    return RevolutionSurface.from_table(r, 2.0 + np.cos(r), -np.sin(r), np.sin(r), np.cos(r))


class TestRevolutionSurface:
    def test_names(self):
        assert TORUS.name == "torus"
        assert TORUS_RIEMANNIAN.name == "torus(a=0)"
        assert TORUS_RIEMANNIAN.a(1.3) == 0.0

    @pytest.mark.parametrize("domain", ((1.0, 1.0), (2.0, -2.0)))
    def test_invalid_domain(self, domain):
        with pytest.raises(ValueError):
            RevolutionSurface(f=np.cos, df=np.sin, a=np.sin, da=np.cos, r_domain=domain)

    def test_invalid_f_min(self):
        with pytest.raises(ValueError):
            RevolutionSurface(f=np.cos, df=np.sin, a=np.sin, da=np.cos, f_min=0.0)

    def test_ensure_in_domain(self):
        assert TORUS.ensure_in_domain(0.0) == pytest.approx(3.0)
        bounded = RevolutionSurface(
            f=np.cos, df=lambda r: -np.sin(r), a=np.sin, da=np.cos, r_domain=(-2.0, 2.0)
        )
        with pytest.raises(DomainError, match="left the domain"):
            bounded.ensure_in_domain(2.0)
        with pytest.raises(DomainError, match="f_min"):
            bounded.ensure_in_domain(1.9)

    @pytest.mark.parametrize("r", (-1.0, 0.3, 2.5))
    def test_derivative_errors(self, r):
        assert max(TORUS.derivative_errors(r)) <= 1e-9


class TestFromTable:
    def test_interpolates_torus(self):
        table = tabulated_torus()
        assert table.name == "tabulated"
        assert table.r_domain == (-3.0, 3.0)
        for r in (-2.71, 0.05, 1.234):
            assert table.f(r) == pytest.approx(2.0 + np.cos(r), abs=1e-6)
            assert table.a(r) == pytest.approx(np.sin(r), abs=1e-6)
            assert max(table.derivative_errors(r)) <= 1e-5

    def test_outside_nodes(self):
        with pytest.raises(DomainError):
            revolution_rhs(tabulated_torus(), RevState(3.5, 0.0, 0.0, 1.0))

    def test_unordered_nodes(self):
        with pytest.raises(ValueError, match="strictly increasing"):
            RevolutionSurface.from_table([0.0, 2.0, 1.0], [1.0] * 3, [0.0] * 3, [0.0] * 3, [0.0] * 3)

    def test_ragged_columns(self):
        with pytest.raises(ValueError, match="equal length"):
            RevolutionSurface.from_table([0.0, 1.0], [1.0, 1.0], [0.0], [0.0, 0.0], [0.0, 0.0])


class TestEquations:
    def test_torus_rhs(self):
        ddr, ddtheta = revolution_rhs(TORUS, RevState(0.0, 0.0, 0.0, 1.0))
        assert ddr == pytest.approx(-1.0)
        assert ddtheta == pytest.approx(0.0)

    def test_cylinder_rhs(self):
        assert revolution_rhs(CYLINDER, RevState(0.0, 0.0, 1.0, 0.0)) == pytest.approx((0.0, 1.0))
        assert revolution_rhs(CYLINDER, RevState(0.0, 0.0, 0.0, 1.0)) == pytest.approx((-1.0, 0.0))

    def test_integrals(self):
        st = RevState(0.0, 0.0, 0.0, 1.0)
        assert clairaut_F(TORUS, st) == pytest.approx(9.0)
        assert revolution_energy(TORUS, st) == pytest.approx(4.5)

    def test_rotation_invariance(self):
        st = RevState(0.4, 0.1, -0.2, 0.7)
        rotated = rotate_theta(st, 1.3)
        assert rotated.theta == pytest.approx(1.4)
        assert revolution_rhs(TORUS, rotated) == revolution_rhs(TORUS, st)
        assert clairaut_F(TORUS, rotated) == clairaut_F(TORUS, st)

    def test_phase_state_conversion(self):
        st = RevState(0.4, 0.1, -0.2, 0.7)
        phase = st.to_phase_state()
        assert not np.iscomplexobj(phase.q)
        assert RevState.from_phase_state(phase) == st


class TestRevolutionSystem:
    def test_system(self):
        sys = revolution_system(TORUS)
        assert sys.name == "torus"
        assert sys.diagnostic_names == REVOLUTION_DIAGNOSTICS
        assert sys.diagnose(RevState(0.0, 0.0, 0.0, 1.0).to_phase_state()) == {
            "energy": pytest.approx(4.5),
            "F": pytest.approx(9.0),
        }

    def test_cylinder_orbit_closes(self):
        cfg = IntegratorConfig(method="rk4", step=2.0 * np.pi / 6000, t_end=2.0 * np.pi, sample_every=10)
        traj = integrate(revolution_system(CYLINDER), RevState(0.0, 0.0, 1.0, 0.0).to_phase_state(), cfg)
        np.testing.assert_allclose(traj.states[-1].q, [0.0, 0.0], atol=1e-3)

    @pytest.mark.slow
    @pytest.mark.parametrize("surface", (TORUS, TORUS_RIEMANNIAN), ids=["magnetic", "riemannian"])
    def test_conservation(self, surface):
        cfg = IntegratorConfig(method="rk4", step=1e-3, t_end=100.0, sample_every=100)
        traj = integrate(revolution_system(surface), TORUS_START.to_phase_state(), cfg)
        for name in REVOLUTION_DIAGNOSTICS:
            assert drift_report(traj, name).max_drift <= 1e-7, name

    def test_riemannian_clairaut(self):
        cfg = IntegratorConfig(method="rk4", step=1e-3, t_end=5.0, sample_every=50)
        traj = integrate(revolution_system(TORUS_RIEMANNIAN), TORUS_START.to_phase_state(), cfg)
        momenta = [(2.0 + np.cos(st.q[0])) ** 2 * st.v[1] for st in traj.states]
        assert max(abs(m - 9.0) for m in momenta) <= 1e-9
