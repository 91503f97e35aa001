"""Run configurations: system sections, integrator settings and verify tolerances."""
from magflow.config.base import SystemConfig
from magflow.config.run_config import RunConfig, Tolerances
from magflow.config.systems import (
    SYSTEM_CONFIGS,
    CustomSystemConfig,
    EllipsoidSystemConfig,
    RevolutionSystemConfig,
    SphereSystemConfig,
    parse_system,
)

__all__ = [
    "SYSTEM_CONFIGS",
    "CustomSystemConfig",
    "EllipsoidSystemConfig",
    "RevolutionSystemConfig",
    "RunConfig",
    "SphereSystemConfig",
    "SystemConfig",
    "Tolerances",
    "parse_system",
]
