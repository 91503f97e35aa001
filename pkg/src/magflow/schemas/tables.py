"""Define schemas (column name -> data type mappings) for the concrete tables here."""
from __future__ import annotations

from typing import Sequence

import numpy as np
import pandas as pd

from magflow.schemas.base import Schema, SchemaEntry


class SchemaTime(Schema):
    T: SchemaEntry = SchemaEntry("t", np.float64, docstring="Sample time.")


def trajectory_schema(n_real: int, diagnostics: Sequence[str]) -> Schema:
    """
    Schema of a trajectory CSV: t, q_0..q_{n_real-1}, v_0..v_{n_real-1}, then one column per diagnostic.

    :param n_real: number of real position coordinates (2n for hypersurfaces in C^n).
    :param diagnostics: diagnostic names in output order.
    """
    entries: dict[str, SchemaEntry] = {}
    for prefix, desc in (("q", "Position"), ("v", "Velocity")):
        for k in range(n_real):
            entries[f"{prefix.upper()}_{k}"] = SchemaEntry(
                f"{prefix}_{k}", np.float64, docstring=f"{desc} coordinate {k} (interleaved re/im for C^n)."
            )
    for name in diagnostics:
        entries[f"DIAG_{name}"] = SchemaEntry(name, np.float64, docstring=f"Diagnostic {name!r} per sample.")
    return SchemaTime(entries)


class SchemaDriftTable(Schema):
    """Rows of the verify report."""

    QUANTITY: SchemaEntry = SchemaEntry("quantity", str, docstring="Name of the checked quantity.")
    INITIAL: SchemaEntry = SchemaEntry("initial", np.float64, docstring="Value at t = 0.")
    MAX_DRIFT: SchemaEntry = SchemaEntry(
        "max_drift", np.float64, docstring="max |Q(t) - Q(0)| (or max |Q| for residual-type rows)."
    )
    T_AT_MAX: SchemaEntry = SchemaEntry("t_at_max", np.float64, docstring="Time at which max_drift occurs.")
    PASS: SchemaEntry = SchemaEntry("pass", bool, docstring="max_drift within tolerance.")


class SchemaOrbitTable(Schema):
    """Rows of the orbits (free-time action) table."""

    AXIS: SchemaEntry = SchemaEntry(
        "axis", str, docstring="1-based coordinate axis of the circle orbit, or 'mane' for the trailer row."
    )
    OMEGA: SchemaEntry = SchemaEntry("omega", np.float64, docstring="Angular frequency of the orbit.")
    KAPPA: SchemaEntry = SchemaEntry("kappa", np.float64, docstring="Energy 1/2 omega^2 a_j of the orbit.")
    S_L: SchemaEntry = SchemaEntry("S_L", np.float64, docstring="Fixed-period action by quadrature.")
    S_FREE: SchemaEntry = SchemaEntry("S_free", np.float64, docstring="Free-time action S_L + kappa T.")
    CLOSED_FORM: SchemaEntry = SchemaEntry(
        "closed_form", np.float64, docstring="Closed form 2 pi a_j (omega^2 - omega/2) / |omega|."
    )
    ABS_ERR: SchemaEntry = SchemaEntry("abs_err", np.float64, docstring="|S_free - closed_form|.")
    SIGN: SchemaEntry = SchemaEntry(
        "sign", pd.Int64Dtype(), docstring="Sign of S_free (0 within 1e-8); empty on the trailer row."
    )


class SchemaOracleTable(Schema):
    """Rows of the integrator-versus-closed-form comparison."""

    STEP: SchemaEntry = SchemaEntry("h", np.float64, docstring="Integrator step.")
    SUP_ERROR: SchemaEntry = SchemaEntry("sup_error", np.float64, docstring="Sup-norm state error.")
    T_AT_MAX: SchemaEntry = SchemaEntry("t_at_max", np.float64, docstring="Time of the largest error.")
    RATIO: SchemaEntry = SchemaEntry(
        "ratio", np.float64, docstring="Previous row's sup_error over this one (empty on the first row)."
    )
