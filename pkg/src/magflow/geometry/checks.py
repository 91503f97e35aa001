"""Contains (validation) checks for vectors, matrices and tolerances."""

from __future__ import annotations

import numpy as np
from numpy import ndarray

from magflow.errors import DimensionError, NumericalFailure


def ensure_is_array(arr: ndarray) -> None:
    """
    Checks if arr is an instance of numpy.ndarray.

    :raises TypeError: If arr is not an instance of np.ndarray
    """
    if not isinstance(arr, ndarray):
        raise TypeError(f"Expected an instance of {ndarray.__qualname__}, got type {type(arr)} instead.")


def ensure_array_dimension(arr: ndarray, dim: int, errmsg: str = "") -> None:
    """Ensures an array is of a particular dimension (number of axes).

    :param arr: numpy array to check.
    :param dim: number of dimensions to enforce.
    :param errmsg: (optional) information to add to error if dimension is invalid (default = "").

    :raises DimensionError: if array is not of the desired dimension.
    """
    if arr.ndim != dim:
        full_err = f"Array must be of dimension {dim}; got array of dimension {arr.ndim}"
        if errmsg:
            full_err += f", {errmsg}"
        raise DimensionError(full_err + ".")


def ensure_same_length(*arrays: ndarray, what: str = "vectors") -> None:
    """
    Checks that all passed 1D arrays have the same length.

    :raises DimensionError: on a length mismatch.
    """
    if len({len(arr) for arr in arrays}) > 1:
        raise DimensionError(f"Dimension mismatch between {what}: lengths {[len(arr) for arr in arrays]}.")


def ensure_square_matrix(mat: ndarray, size: int) -> None:
    """
    Checks that mat is a size x size matrix.

    :raises DimensionError: if the matrix is not square or of the wrong size.
    """
    if mat.ndim != 2 or mat.shape != (size, size):
        raise DimensionError(f"Expected a {size}x{size} matrix, got shape {mat.shape!r}.")


def ensure_finite(*arrays: ndarray, what: str = "value") -> None:
    """
    :raises NumericalFailure: if any entry is NaN or infinite.
    """
    for arr in arrays:
        if not np.all(np.isfinite(arr)):
            raise NumericalFailure(f"Non-finite {what} encountered.")


def ensure_positive(value: float, name: str) -> None:
    """
    :raises ValueError: if value is not a finite number > 0.
    """
    if not (np.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be a finite number > 0, got {value!r}.")
