import json
from pathlib import Path
from typing import Any, NamedTuple

import numpy as np
import pytest

from magflow.config.run_config import TOP_LEVEL_KEYS, RunConfig, Tolerances
from magflow.errors import ConfigError

CONFIG_DIR = Path(__file__).parents[3] / "configs"

SPHERE_REEB: dict[str, Any] = {
    "system": {"type": "sphere", "radius": 1.0},
    "initial": {"q": [1.0, 0.0, 0.0, 0.0], "v": [0.0, 0.5, 0.0, 0.0]},
    "integrator": {"method": "rk4_projected", "step": 0.01, "t_end": 1.0, "sample_every": 10},
}


def with_changes(**changes: Any) -> dict[str, Any]:
    data = json.loads(json.dumps(SPHERE_REEB))
    data.update(changes)
    return data


class InvalidConfig(NamedTuple):
    data: dict[str, Any]
    field: str


INVALID_CONFIGS = {
    "unknown-top-level": InvalidConfig(with_changes(plot=True), "plot"),
    "missing-system": InvalidConfig({"initial": SPHERE_REEB["initial"]}, "<root>.system"),
    "odd-initial": InvalidConfig(
        with_changes(initial={"q": [1.0, 0.0, 0.0], "v": [0.0, 0.5, 0.0]}), "initial.q"
    ),
    "missing-velocity": InvalidConfig(with_changes(initial={"q": [1.0, 0.0, 0.0, 0.0]}), "initial.v"),
    "bad-method": InvalidConfig(with_changes(integrator={"method": "euler"}), "integrator.method"),
    "zero-step": InvalidConfig(with_changes(integrator={"step": 0.0}), "integrator.step"),
    "step-exceeds-span": InvalidConfig(with_changes(integrator={"step": 2.0, "t_end": 1.0}), "integrator.step"),
    "negative-span": InvalidConfig(with_changes(integrator={"t_end": -1.0}), "integrator.t_end"),
    "fractional-span": InvalidConfig(with_changes(integrator={"step": 0.3, "t_end": 1.0}), "integrator.t_end"),
    "zero-sampling": InvalidConfig(with_changes(integrator={"sample_every": 0}), "integrator.sample_every"),
    "bad-projection-tol": InvalidConfig(
        with_changes(integrator={"projection_tol": 0.0}), "integrator.projection_tol"
    ),
    "bad-output": InvalidConfig(with_changes(output={"path": ""}), "output.path"),
    "unknown-diagnostic": InvalidConfig(with_changes(diagnostics=["energy", "psi"]), "diagnostics"),
    "negative-seed": InvalidConfig(with_changes(seed=-1), "seed"),
    "sweep-without-count": InvalidConfig(with_changes(sweep={}), "sweep.count"),
    "unknown-tolerance": InvalidConfig(with_changes(tolerances={"speed": 1e-3}), "tolerances.speed"),
    "zero-tolerance": InvalidConfig(with_changes(tolerances={"drift": 0.0}), "tolerances.drift"),
}


class TestRunConfig:
    def test_sphere_reeb(self):
        cfg = RunConfig.from_dict(SPHERE_REEB)
        assert cfg.system.ellipsoid.n == 2
        np.testing.assert_array_equal(cfg.initial.q, [1.0, 0.0])
        np.testing.assert_array_equal(cfg.initial.v, [0.5j, 0.0])
        assert cfg.integrator.step == 0.01
        assert cfg.integrator.n_steps == 100
        assert cfg.output_path is None
        assert cfg.diagnostics is None
        assert (cfg.seed, cfg.sweep_count) == (0, 0)
        assert cfg.tolerances == Tolerances()

    def test_optional_sections(self):
        cfg = RunConfig.from_dict(
            with_changes(
                output={"path": "out.csv"},
                diagnostics=["energy", "C"],
                seed=9,
                sweep={"count": 4},
                tolerances={"drift": 1e-6},
            )
        )
        assert cfg.output_path == Path("out.csv")
        assert cfg.diagnostics == ("energy", "C")
        assert (cfg.seed, cfg.sweep_count) == (9, 4)
        assert cfg.tolerances.drift == 1e-6
        assert cfg.tolerances.identity == Tolerances().identity

    def test_integrator_defaults(self):
        data = with_changes()
        del data["integrator"]
        assert RunConfig.from_dict(data).integrator.method == "rk4_projected"

    def test_require_initial(self):
        cfg = RunConfig.from_dict({"system": {"type": "ellipsoid", "a": [1, 2, 4]}})
        assert cfg.initial is None
        with pytest.raises(ConfigError) as excinfo:
            cfg.require_initial()
        assert excinfo.value.field == "initial"

    @pytest.mark.parametrize("case", INVALID_CONFIGS.values(), ids=INVALID_CONFIGS.keys())
    def test_invalid(self, case: InvalidConfig):
        with pytest.raises(ConfigError) as excinfo:
            RunConfig.from_dict(case.data)
        assert excinfo.value.field == case.field

    def test_not_an_object(self):
        with pytest.raises(ConfigError):
            RunConfig.from_dict([SPHERE_REEB])

    def test_top_level_keys(self):
        assert set(SPHERE_REEB) <= set(TOP_LEVEL_KEYS)


class TestFromFile:
    def test_roundtrip(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps(SPHERE_REEB), encoding="utf-8")
        assert RunConfig.from_file(path).integrator.t_end == 1.0

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read"):
            RunConfig.from_file(tmp_path / "absent.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{", encoding="utf-8")
        with pytest.raises(ConfigError, match="invalid JSON"):
            RunConfig.from_file(path)

    @pytest.mark.parametrize(
        "name",
        (
            "sphere_reeb.json",
            "sphere_horizontal.json",
            "ellipsoid_124.json",
            "ellipsoid_potential.json",
            "quartic.json",
            "revolution_torus.json",
            "negative/no_projection_huge_step.json",
            "negative/projection_diverges.json",
        ),
    )
    def test_shipped_configs(self, name):
        RunConfig.from_file(CONFIG_DIR / name)

    def test_shipped_bad_axes(self):
        with pytest.raises(ConfigError) as excinfo:
            RunConfig.from_file(CONFIG_DIR / "negative" / "bad_axes.json")
        assert excinfo.value.field == "system.a"
