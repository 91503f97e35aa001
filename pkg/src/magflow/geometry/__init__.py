"""Complex/real linear-algebra conventions shared by every other module."""
from magflow.geometry.complex_geometry import (
    ComplexVector,
    alpha,
    as_complex,
    herm_inner,
    jmul,
    real_inner,
)

__all__ = ["ComplexVector", "alpha", "as_complex", "herm_inner", "jmul", "real_inner"]
