import numpy as np
import pytest

from magflow.errors import DimensionError, NumericalFailure
from magflow.geometry.checks import (
    ensure_array_dimension,
    ensure_finite,
    ensure_is_array,
    ensure_positive,
    ensure_same_length,
    ensure_square_matrix,
)


class TestChecks:
    @pytest.mark.parametrize("arr", ([1, 2], (1, 2), "NotNdarray", 1), ids=["list", "tuple", "str", "int"])
    def test_ensure_is_array(self, arr):
        with pytest.raises(TypeError):
            ensure_is_array(arr)

    def test_ensure_array_dimension(self):
        ensure_array_dimension(np.zeros((2, 2)), 2)
        with pytest.raises(DimensionError, match="extra info"):
            ensure_array_dimension(np.zeros(3), 2, errmsg="extra info")

    def test_ensure_same_length(self):
        ensure_same_length(np.zeros(2), np.ones(2))
        with pytest.raises(DimensionError):
            ensure_same_length(np.zeros(2), np.ones(3), what="positions")

    @pytest.mark.parametrize("shape", ((2, 3), (3, 3), (2,)), ids=["non-square", "wrong size", "1D"])
    def test_ensure_square_matrix_rejects(self, shape):
        with pytest.raises(DimensionError):
            ensure_square_matrix(np.zeros(shape), 2)

    def test_ensure_finite(self):
        ensure_finite(np.ones(3), np.zeros(2))
        with pytest.raises(NumericalFailure):
            ensure_finite(np.ones(2), np.array([np.inf]))

    @pytest.mark.parametrize("value", (0.0, -1.0, np.inf, np.nan))
    def test_ensure_positive(self, value):
        with pytest.raises(ValueError):
            ensure_positive(value, "step")
        ensure_positive(1e-300, "step")
