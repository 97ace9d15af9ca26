import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from spdgig import spd
from spdgig.errors import DimMismatch, IllConditioned, NotPositiveDefinite, SymmetryLoss


def spd_matrices(max_dim=5):
    def build(draw_result):
        r, entries = draw_result
        g = np.array(entries[: r * r]).reshape(r, r)
        return g @ g.T + np.eye(r)

    return st.integers(1, max_dim).flatmap(
        lambda r: st.tuples(
            st.just(r),
            st.lists(
                st.floats(-3, 3, allow_nan=False, allow_infinity=False),
                min_size=r * r,
                max_size=r * r,
            ),
        )
    ).map(build)


class TestCholeskyAndInverse:
    def test_cholesky_reconstructs(self, spd_pair):
        x, _ = spd_pair(4)
        ell = spd.cholesky_factor(x)
        assert np.allclose(ell @ ell.T, x)
        assert np.all(np.diag(ell) > 0)

    def test_cholesky_rejects_indefinite(self):
        with pytest.raises(NotPositiveDefinite):
            spd.cholesky_factor(np.array([[1.0, 2.0], [2.0, 1.0]]))

    def test_inverse_roundtrip(self, spd_pair):
        x, _ = spd_pair(3)
        assert np.allclose(spd.spd_inverse(x) @ x, np.eye(3), atol=1e-10)

    def test_inverse_guards_condition(self):
        bad = np.diag([1.0, 1e-12])
        with pytest.raises(IllConditioned):
            spd.spd_inverse(bad)

    def test_sqrt_squares_back(self, spd_pair):
        x, _ = spd_pair(4)
        root = spd.spd_sqrt(x)
        assert np.allclose(root @ root, x)
        assert spd.is_spd(root)

    def test_logdet_matches_slogdet(self, spd_pair):
        x, _ = spd_pair(4)
        assert spd.logdet(x) == pytest.approx(np.linalg.slogdet(x)[1], rel=1e-12)


class TestPredicates:
    def test_is_spd_on_identity(self):
        assert spd.is_spd(np.eye(3))

    def test_is_spd_total_on_garbage(self):
        assert not spd.is_spd(np.array([[np.nan, 0.0], [0.0, 1.0]]))
        assert not spd.is_spd(np.array([[1.0, 0.0]]))
        assert not spd.is_spd(-np.eye(2))

    def test_condition_number_of_diag(self):
        assert spd.condition_number(np.diag([4.0, 1.0])) == pytest.approx(4.0)

    def test_check_same_dim(self):
        with pytest.raises(DimMismatch):
            spd.check_same_dim(np.eye(2), np.eye(3))


class TestVectorization:
    @settings(max_examples=100, deadline=None)
    @given(spd_matrices())
    def test_roundtrip(self, m):
        r = m.shape[0]
        assert np.allclose(spd.devectorize(spd.vectorize(m), r), m)

    @settings(max_examples=100, deadline=None)
    @given(spd_matrices(), spd_matrices())
    def test_isometry(self, x, y):
        if x.shape != y.shape:
            return
        lhs = float(np.dot(spd.vectorize(x), spd.vectorize(y)))
        assert lhs == pytest.approx(spd.trace_inner(x, y), rel=1e-10, abs=1e-10)

    def test_length(self):
        assert spd.vectorize(np.eye(4)).shape == (spd.sym_dim(4),)
        assert spd.sym_dim(4) == 10


class TestSymmetrizeChecked:
    def test_accepts_roundoff(self):
        m = np.array([[1.0, 0.5 + 1e-14], [0.5, 2.0]])
        out = spd.symmetrize_checked(m)
        assert np.allclose(out, out.T)

    def test_rejects_gross_asymmetry(self):
        with pytest.raises(SymmetryLoss):
            spd.symmetrize_checked(np.array([[1.0, 1.0], [0.0, 1.0]]))


class TestAlgebra:
    def test_quad_rep_definition(self, spd_pair):
        x, y = spd_pair(3)
        assert np.allclose(spd.quad_rep(x, y), x @ y @ x)

    def test_quad_rep_preserves_cone(self, spd_pair):
        x, y = spd_pair(3)
        assert spd.is_spd(spd.quad_rep(x, y))

    def test_rel_residual_zero_on_equal(self, spd_pair):
        x, _ = spd_pair(2)
        assert spd.rel_residual(x, x.copy()) == 0.0
