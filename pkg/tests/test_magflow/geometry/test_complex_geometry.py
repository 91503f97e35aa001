from typing import NamedTuple

import numpy as np
import pytest

from magflow.errors import DimensionError, NumericalFailure
from magflow.geometry.complex_geometry import ComplexVector, alpha, herm_inner, jmul, real_inner
from tests.test_magflow.conftest import basis, random_complex

E1, E2 = basis(2, 1), basis(2, 2)


class InnerParams(NamedTuple):
    z: np.ndarray
    w: np.ndarray
    expected: complex


class TestComplexVector:
    def test_real_view_is_interleaved(self):
        vec = ComplexVector(np.array([1 + 2j, 3 - 4j]))
        np.testing.assert_array_equal(vec.real_view, [1.0, 2.0, 3.0, -4.0])

    def test_from_real_round_trip_is_bitwise(self, rng):
        reals = rng.normal(size=6)
        vec = ComplexVector.from_real(reals)
        assert vec.n == 3
        np.testing.assert_array_equal(vec.real_view, reals)

    @pytest.mark.parametrize("reals", ([], [1.0, 2.0, 3.0]), ids=["empty", "odd length"])
    def test_from_real_rejects_bad_lengths(self, reals):
        with pytest.raises(DimensionError):
            ComplexVector.from_real(reals)

    def test_rejects_non_finite(self):
        with pytest.raises(NumericalFailure):
            ComplexVector(np.array([1.0, np.nan]))

    def test_entries_are_read_only(self):
        vec = ComplexVector(np.array([1.0, 2.0]))
        with pytest.raises(ValueError):
            vec.entries[0] = 5.0

    def test_basis(self):
        np.testing.assert_array_equal(ComplexVector.basis(3, 2).entries, [0, 1, 0])
        with pytest.raises(IndexError):
            ComplexVector.basis(3, 4)


class TestHermInner:
    @pytest.mark.parametrize(
        "z, w, expected",
        (
            InnerParams(E1, E1, 1.0),
            InnerParams(1j * E1, E1, -1j),
            InnerParams(E1, E2, 0.0),
        ),
        ids=["unit vector", "first slot conjugated", "orthogonal"],
    )
    def test_examples(self, z, w, expected):
        assert herm_inner(z, w) == pytest.approx(expected, abs=1e-15)

    def test_z_iz(self, rng):
        for _ in range(20):
            z = random_complex(rng, 4)
            value = herm_inner(z, 1j * z)
            assert value.imag == pytest.approx(np.linalg.norm(z) ** 2, rel=1e-14)
            assert abs(value.real) <= 1e-12

    def test_convention_lock(self, rng):
        for _ in range(20):
            z, v = random_complex(rng, 3), random_complex(rng, 3)
            assert herm_inner(1j * z, v).real == pytest.approx(herm_inner(z, v).imag, abs=1e-13)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            herm_inner(np.ones(2), np.ones(3))


class TestRealInner:
    def test_v_iv_orthogonal(self, rng):
        assert real_inner(E1, 1j * E1) == 0.0
        v = random_complex(rng, 3)
        assert abs(real_inner(jmul(v), v)) <= 1e-14

    def test_symmetric_and_positive(self, rng):
        v, w = random_complex(rng, 3), random_complex(rng, 3)
        assert real_inner(v, w) == pytest.approx(real_inner(w, v), rel=1e-14)
        assert real_inner(v, v) == pytest.approx(np.linalg.norm(v) ** 2, rel=1e-14)

    def test_jmul_isometry(self, rng):
        for _ in range(20):
            v, w = random_complex(rng, 3), random_complex(rng, 3)
            assert real_inner(jmul(v), jmul(w)) == pytest.approx(real_inner(v, w), rel=1e-12, abs=1e-14)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            real_inner(np.ones(2), np.ones(1))


class TestJmul:
    def test_e1(self):
        np.testing.assert_array_equal(jmul(E1), 1j * E1)

    def test_squares_to_negation(self, rng):
        v = random_complex(rng, 5)
        np.testing.assert_allclose(jmul(jmul(v)), -v, rtol=0, atol=1e-15)

    def test_accepts_complex_vector(self):
        np.testing.assert_array_equal(jmul(ComplexVector(E2)), 1j * E2)


class TestAlpha:
    @pytest.mark.parametrize(
        "z, v, expected",
        (
            InnerParams(E1, 1j * E1, 0.5),
            InnerParams(E1, E2, 0.0),
            InnerParams(E1, 0.5j * E1, 0.25),
        ),
        ids=["(z, iz)", "orthogonal coordinates", "(e1, i e1 / 2)"],
    )
    def test_examples(self, z, v, expected):
        assert alpha(z, v) == pytest.approx(expected, abs=1e-15)

    def test_two_code_paths_agree(self, rng):
        for _ in range(50):
            z, v = random_complex(rng, 3), random_complex(rng, 3)
            expected = 0.5 * real_inner(jmul(z), v)
            assert alpha(z, v) == pytest.approx(expected, rel=1e-14, abs=1e-15)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            alpha(np.ones(2), np.ones(3))
