import numpy as np
import pytest

from framescale import (
    apply_scaling,
    frame_from_synthesis,
    frame_operator,
    frame_potential,
    is_dual,
    is_tight,
    make_frame,
)
from framescale.errors import (
    DimensionMismatchError,
    NonFiniteError,
    NotSpanningError,
    ZeroVectorError,
)
from conftest import angles_frame, random_unit_frame


class TestConstruction:
    def test_synthesis_columns_are_vectors(self):
        F = make_frame([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
        assert F.n == 2 and F.m == 3
        assert np.array_equal(F.synthesis, [[1.0, 0.0, 1.0], [0.0, 1.0, 1.0]])
        vs = F.vectors()
        assert np.array_equal(vs[2], [1.0, 1.0])

    def test_rejects_too_few_vectors(self):
        with pytest.raises(NotSpanningError):
            make_frame([[1.0, 0.0]])

    def test_rejects_zero_vector(self):
        with pytest.raises(ZeroVectorError):
            make_frame([[1.0, 0.0], [0.0, 0.0], [0.0, 1.0]])

    def test_rejects_non_spanning(self):
        with pytest.raises(NotSpanningError):
            make_frame([[1.0, 1.0], [2.0, 2.0], [3.0, 3.0]])

    def test_rejects_nonfinite(self):
        with pytest.raises(NonFiniteError):
            make_frame([[1.0, 0.0], [0.0, np.inf]])

    def test_synthesis_is_readonly(self):
        F = make_frame([[1.0, 0.0], [0.0, 1.0]])
        with pytest.raises(ValueError):
            F.synthesis[0, 0] = 5.0


class TestFrameOperator:
    def test_operator_is_sum_of_outer_products(self, rng):
        F = random_unit_frame(rng, 3, 6)
        S = sum(np.outer(x, x) for x in F.vectors())
        op = frame_operator(F)
        assert np.allclose(op.S, S, atol=1e-12)

    def test_bounds_are_extreme_eigenvalues(self, rng):
        F = random_unit_frame(rng, 3, 5)
        w = np.linalg.eigvalsh(F.synthesis @ F.synthesis.T)
        op = frame_operator(F)
        assert op.lower_bound == pytest.approx(w[0], abs=1e-10)
        assert op.upper_bound == pytest.approx(w[-1], abs=1e-10)

    def test_bound_inequality_for_all_vectors(self, rng):
        F = random_unit_frame(rng, 2, 4)
        op = frame_operator(F)
        for _ in range(20):
            x = rng.standard_normal(2)
            total = sum(float(x @ v) ** 2 for v in F.vectors())
            nx = float(x @ x)
            assert op.lower_bound * nx - 1e-9 <= total <= op.upper_bound * nx + 1e-9


class TestFramePotential:
    def test_double_sum_oracle(self, rng):
        F = random_unit_frame(rng, 3, 5)
        vs = F.vectors()
        expected = sum(float(x @ y) ** 2 for x in vs for y in vs)
        assert frame_potential(F) == pytest.approx(expected, rel=1e-12)

    def test_orthonormal_basis(self):
        F = make_frame(np.eye(4))
        assert frame_potential(F) == pytest.approx(4.0)


class TestTightness:
    def test_orthonormal_basis_is_parseval(self):
        t = is_tight(make_frame(np.eye(3)))
        assert t.tight and t.bound == pytest.approx(1.0)

    def test_three_equiangular_vectors(self):
        F = angles_frame(0.0, 2 * np.pi / 3, 4 * np.pi / 3)
        t = is_tight(F)
        assert t.tight
        assert t.bound == pytest.approx(1.5, abs=1e-12)

    def test_generic_frame_not_tight(self):
        assert not is_tight(make_frame([[2.0, 1.0], [1.0, 2.0], [1.0, 1.0]])).tight

    def test_tolerance_knob(self):
        X = np.eye(2) * np.array([1.0, 1.0 + 1e-6])
        F = frame_from_synthesis(X)
        assert not is_tight(F, tol=1e-8).tight
        assert is_tight(F, tol=1e-4).tight


class TestScalingAndDuality:
    def test_apply_scaling_scales_columns(self):
        F = make_frame([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
        sf = apply_scaling(F, [1.0, 2.0, 0.0])
        assert np.array_equal(sf.synthesis, [[1.0, 0.0, 0.0], [0.0, 2.0, 0.0]])
        assert sf.base is F

    def test_scaling_wrong_length(self):
        F = make_frame(np.eye(2))
        with pytest.raises(DimensionMismatchError):
            apply_scaling(F, [1.0])

    def test_scaling_negative_weight(self):
        F = make_frame(np.eye(2))
        with pytest.raises(ValueError):
            apply_scaling(F, [1.0, -1.0])

    def test_scaling_destroys_spanning(self):
        F = make_frame([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
        with pytest.raises(NotSpanningError):
            apply_scaling(F, [1.0, 0.0, 0.0])

    def test_is_dual_identity(self):
        F = make_frame(np.eye(3))
        assert is_dual(F, F)

    def test_is_dual_reconstruction(self, rng):
        F = random_unit_frame(rng, 2, 4)
        S = F.synthesis @ F.synthesis.T
        G = frame_from_synthesis(np.linalg.solve(S, F.synthesis))
        assert is_dual(F, G)
        # reconstruction formula holds for arbitrary vectors
        for _ in range(5):
            x = rng.standard_normal(2)
            rec = sum(float(x @ g) * f
                      for f, g in zip(F.vectors(), G.vectors()))
            assert np.allclose(rec, x, atol=1e-10)

    def test_is_dual_shape_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            is_dual(make_frame(np.eye(2)), make_frame(np.eye(3)))
