import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spdgig import spd
from spdgig.distributions import make_rng, random_spd
from spdgig.errors import DomainError
from spdgig.maps import (
    MapParams,
    cone_candidate,
    derivative_identities_check,
    gig1_map,
    gig1_map_affine,
    h3b,
    phi,
    phi_jacobian_fd,
    psi,
    psi_affine,
    psi_jacobian_check,
    scaling_law_residual,
)

pos = st.floats(0.05, 20.0, allow_nan=False, allow_infinity=False)
param = st.floats(0.0, 5.0, allow_nan=False, allow_infinity=False)


def spd_input(r, seed):
    rng = make_rng(seed)
    return random_spd(r, rng), random_spd(r, rng)


class TestScalarMaps:
    def test_h3b_worked_example(self):
        u, v = h3b(MapParams(2.0, 1.0), 1.0, 1.0)
        assert u == pytest.approx(2.0 / 3.0)
        assert v == pytest.approx(3.0 / 2.0)

    def test_gig1_worked_example(self):
        u, v = gig1_map(MapParams(1.0, 0.0), 1.0, 2.0)
        assert u == pytest.approx(1.0 / 3.0)
        assert v == pytest.approx(2.0 / 3.0)

    @settings(max_examples=200, deadline=None)
    @given(pos, pos, param, param)
    def test_h3b_involution(self, x, y, a, b):
        p = MapParams(a, b)
        u, v = h3b(p, x, y)
        x2, y2 = h3b(p, u, v)
        assert x2 == pytest.approx(x, rel=1e-9)
        assert y2 == pytest.approx(y, rel=1e-9)

    @settings(max_examples=200, deadline=None)
    @given(pos, pos, param, param)
    def test_h3b_preserves_product(self, x, y, a, b):
        u, v = h3b(MapParams(a, b), x, y)
        assert u * v == pytest.approx(x * y, rel=1e-9)

    @settings(max_examples=100, deadline=None)
    @given(pos, pos, st.floats(0.05, 5.0), param)
    def test_gig1_affine_forms_agree(self, x, y, a, b):
        p = MapParams(a, b)
        assert gig1_map(p, x, y) == pytest.approx(gig1_map_affine(p, x, y), rel=1e-9)

    def test_gig1_affine_requires_positive_alpha(self):
        with pytest.raises(DomainError):
            gig1_map_affine(MapParams(0.0, 1.0), 1.0, 1.0)

    @settings(max_examples=100, deadline=None)
    @given(pos, pos, param, param)
    def test_phi_reduces_to_h3b_at_dim_one(self, x, y, a, b):
        p = MapParams(a, b)
        if a == b == 0.0:
            return
        u, v = phi(p, np.array([[x]]), np.array([[y]]))
        us, vs = h3b(p, x, y)
        assert u[0, 0] == pytest.approx(us, rel=1e-9)
        assert v[0, 0] == pytest.approx(vs, rel=1e-9)


class TestMatrixMaps:
    @pytest.mark.parametrize("r", [1, 2, 3, 5])
    def test_phi_involution(self, r):
        x, y = spd_input(r, 200 + r)
        p = MapParams(2.0, 0.5)
        x2, y2 = phi(p, *phi(p, x, y))
        assert spd.rel_residual(x2, x) < 1e-10
        assert spd.rel_residual(y2, y) < 1e-10

    @pytest.mark.parametrize("r", [1, 2, 3, 5])
    def test_psi_involution(self, r):
        x, y = spd_input(r, 300 + r)
        p = MapParams(1.0, 3.0)
        x2, y2 = psi(p, *psi(p, x, y))
        assert spd.rel_residual(x2, x) < 1e-10
        assert spd.rel_residual(y2, y) < 1e-10

    def test_phi_outputs_stay_in_cone(self):
        x, y = spd_input(3, 7)
        u, v = phi(MapParams(1.0, 2.0), x, y)
        assert spd.is_spd(u) and spd.is_spd(v)

    def test_swap_at_equal_parameters(self):
        x, y = spd_input(3, 8)
        u, v = phi(MapParams(1.5, 1.5), x, y)
        assert spd.rel_residual(u, y) < 1e-12
        assert spd.rel_residual(v, x) < 1e-12

    def test_psi_is_phi_conjugated_by_partial_inversion(self):
        # psi = theta o phi o theta with theta(x, y) = (x, y^{-1})
        x, y = spd_input(3, 9)
        p = MapParams(2.0, 0.7)
        u1, v1 = psi(p, x, y)
        uu, vv = phi(p, x, spd.spd_inverse(y))
        assert spd.rel_residual(u1, uu) < 1e-10
        assert spd.rel_residual(v1, spd.spd_inverse(vv)) < 1e-10

    def test_psi_affine_matches_psi(self):
        x, y = spd_input(2, 10)
        p = MapParams(1.2, 0.4)
        u1, v1 = psi(p, x, y)
        u2, v2 = psi_affine(p, x, y)
        assert spd.rel_residual(u1, u2) < 1e-12
        assert spd.rel_residual(v1, v2) < 1e-12

    def test_psi_rejects_both_parameters_zero(self):
        x, y = spd_input(2, 11)
        with pytest.raises(DomainError):
            psi(MapParams(0.0, 0.0), x, y)

    def test_phi_degenerates_to_swap_at_zero_parameters(self):
        x, y = spd_input(2, 11)
        u, v = phi(MapParams(0.0, 0.0), x, y)
        assert spd.rel_residual(u, y) < 1e-14
        assert spd.rel_residual(v, x) < 1e-14

    @settings(max_examples=50, deadline=None)
    @given(st.floats(0.2, 4.0), st.integers(0, 10_000))
    def test_scaling_law(self, c, seed):
        x, y = spd_input(2, seed)
        assert scaling_law_residual(MapParams(1.0, 2.0), x, y, c) < 1e-9

    def test_cone_candidate_matches_phi(self):
        for r in (1, 2, 3):
            x, y = spd_input(r, 400 + r)
            p = MapParams(0.8, 2.5)
            u1, v1 = cone_candidate(p, x, y)
            u2, v2 = phi(p, x, y)
            assert spd.rel_residual(u1, u2) < 1e-9
            assert spd.rel_residual(v1, v2) < 1e-9


class TestJacobians:
    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_phi_volume_preserving(self, r):
        x, y = spd_input(r, 500 + r)
        assert abs(phi_jacobian_fd(MapParams(2.0, 0.5), x, y) - 1.0) < 1e-4

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_psi_determinant_formula(self, r):
        x, y = spd_input(r, 600 + r)
        fd, expected = psi_jacobian_check(MapParams(2.0, 0.5), x, y)
        assert abs(fd - expected) / abs(expected) < 1e-4


class TestDerivativeIdentities:
    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_all_identities(self, r, sym_direction):
        x, y = spd_input(r, 700 + r)
        h = sym_direction(r)
        res = derivative_identities_check(MapParams(2.0, 0.5), x, y, h)
        for name, value in res.items():
            tol = 1e-5 if name.startswith("d_") else 1e-11
            assert value < tol, f"{name}: {value}"

    def test_beta_zero_reduction(self, sym_direction):
        res = derivative_identities_check(MapParams(1.0, 0.0), *spd_input(2, 12), sym_direction(2))
        assert "d_vinv_dx" not in res  # needs beta > 0
        for name, value in res.items():
            tol = 1e-5 if name.startswith("d_") else 1e-11
            assert value < tol, f"{name}: {value}"

    def test_linear_identity_exact_form(self):
        # beta v^{-1} + u^{-1} = alpha x + y holds at machine precision
        x, y = spd_input(3, 13)
        res = derivative_identities_check(MapParams(1.7, 0.9), x, y, np.eye(3))
        assert res["linear_identity"] < 1e-13
