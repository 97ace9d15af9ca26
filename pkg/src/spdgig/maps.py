"""The deterministic maps on (0, inf)^2 and on the SPD cone.

* ``h3b``          -- scalar map (u, v) = (y(1+bxy)/(1+axy), x(1+axy)/(1+bxy))
* ``gig1_map``     -- the reciprocal-substitution presentation of the same map
* ``phi``          -- matrix extension u = y(I+axy)^(-1)(I+bxy), v symmetric in roles
* ``psi``          -- the affine-in-inverses form u = (ax+y)^(-1)(bx+y)y^(-1)
* ``cone_candidate`` -- quadratic-representation form for general symmetric cones

plus finite-difference Jacobian checkers and the closed-form derivative
identities used in the characterization argument.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import spd
from .errors import DomainError

FD_STEP_REL = 1e-5


@dataclass(frozen=True)
class MapParams:
    """Nonnegative parameter pair (alpha, beta); alpha == beta gives the swap."""

    alpha: float
    beta: float

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0:
            raise DomainError("map parameters must be nonnegative")

    @property
    def is_swap(self) -> bool:
        return self.alpha == self.beta


# ---------------------------------------------------------------------------
# scalar maps
# ---------------------------------------------------------------------------


def h3b(p: MapParams, x, y):
    """Scalar product-preserving map; u*v == x*y."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(x <= 0) or np.any(y <= 0):
        raise DomainError("inputs must be positive")
    xy = x * y
    u = y * (1.0 + p.beta * xy) / (1.0 + p.alpha * xy)
    v = x * (1.0 + p.alpha * xy) / (1.0 + p.beta * xy)
    return u, v


def gig1_map(p: MapParams, x, y):
    """Scalar map in the form u = (bx+y)/(y(ax+y)), v = (bx+y)/(x(ax+y))."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(x <= 0) or np.any(y <= 0):
        raise DomainError("inputs must be positive")
    num = p.beta * x + y
    den = p.alpha * x + y
    return num / (y * den), num / (x * den)


def gig1_map_affine(p: MapParams, x, y):
    """Cross-check presentation of :func:`gig1_map`; needs alpha > 0."""
    if p.alpha <= 0:
        raise DomainError("affine presentation divides by alpha")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    ratio = p.beta / p.alpha
    core = 1.0 / (p.alpha * x + y)
    u = ratio / y + (1.0 - ratio) * core
    v = 1.0 / x + (p.beta - p.alpha) * core
    return u, v


# ---------------------------------------------------------------------------
# matrix maps
# ---------------------------------------------------------------------------


def phi(p: MapParams, x, y, sym_tol: float = 1e-8):
    """(u, v) = (y(I+axy)^(-1)(I+bxy), x(I+byx)^(-1)(I+ayx)); an involution."""
    x = spd.as_matrix(x)
    y = spd.as_matrix(y)
    spd.check_same_dim(x, y)
    eye = np.eye(x.shape[0])
    xy = x @ y
    yx = y @ x
    u_raw = y @ np.linalg.solve(eye + p.alpha * xy, eye + p.beta * xy)
    v_raw = x @ np.linalg.solve(eye + p.beta * yx, eye + p.alpha * yx)
    return spd.symmetrize_checked(u_raw, sym_tol), spd.symmetrize_checked(v_raw, sym_tol)


def psi(p: MapParams, x, y, sym_tol: float = 1e-8):
    """(u, v) = ((ax+y)^(-1)(bx+y)y^(-1), (ax+y)^(-1)(bx+y)x^(-1)); an involution."""
    if p.alpha == 0 and p.beta == 0:
        raise DomainError("psi requires alpha and beta not both zero")
    x = spd.as_matrix(x)
    y = spd.as_matrix(y)
    spd.check_same_dim(x, y)
    core = np.linalg.solve(p.alpha * x + y, p.beta * x + y)
    u_raw = core @ spd.spd_inverse(y)
    v_raw = core @ spd.spd_inverse(x)
    return spd.symmetrize_checked(u_raw, sym_tol), spd.symmetrize_checked(v_raw, sym_tol)


def psi_affine(p: MapParams, x, y):
    """Cross-check presentation of :func:`psi`; needs alpha > 0."""
    if p.alpha <= 0:
        raise DomainError("affine presentation divides by alpha")
    x = spd.as_matrix(x)
    y = spd.as_matrix(y)
    ratio = p.beta / p.alpha
    core = spd.spd_inverse(p.alpha * x + y)
    u = ratio * spd.spd_inverse(y) + (1.0 - ratio) * core
    v = spd.spd_inverse(x) + (p.beta - p.alpha) * core
    return u, v


def cone_candidate(p: MapParams, x, y):
    """Symmetric-cone form built from quadratic representations and square
    roots, with the unit read as the identity matrix.  On the SPD cone it
    must agree with :func:`phi` componentwise."""
    x = spd.as_matrix(x)
    y = spd.as_matrix(y)
    spd.check_same_dim(x, y)
    eye = np.eye(x.shape[0])

    def half(base, other, first_param, second_param):
        root = spd.spd_sqrt(base)
        inner = spd.quad_rep(root, other)
        boost = spd.spd_sqrt(eye + second_param * inner)
        mid = spd.quad_rep(boost, spd.spd_inverse(eye + first_param * inner))
        return spd.quad_rep(root, mid)

    u = half(y, x, p.alpha, p.beta)
    v = half(x, y, p.beta, p.alpha)
    return u, v


# ---------------------------------------------------------------------------
# finite-difference machinery
# ---------------------------------------------------------------------------


def _pair_to_coords(x, y):
    return np.concatenate([spd.vectorize(x), spd.vectorize(y)])


def _coords_to_pair(coords, r):
    k = spd.sym_dim(r)
    return spd.devectorize(coords[:k], r), spd.devectorize(coords[k:], r)


def pair_map_jacobian_fd(func, x, y, h_step: float = None) -> np.ndarray:
    """Central-difference Jacobian of a pair map in isometric coordinates."""
    x = spd.as_matrix(x)
    r = x.shape[0]
    base = _pair_to_coords(x, y)
    if h_step is None:
        h_step = FD_STEP_REL * max(1.0, float(np.linalg.norm(base)))
    dim = base.size
    jac = np.empty((dim, dim))
    for k in range(dim):
        bump = np.zeros(dim)
        bump[k] = h_step
        xp, yp = _coords_to_pair(base + bump, r)
        xm, ym = _coords_to_pair(base - bump, r)
        up, vp = func(xp, yp)
        um, vm = func(xm, ym)
        jac[:, k] = (_pair_to_coords(up, vp) - _pair_to_coords(um, vm)) / (2.0 * h_step)
    return jac


def phi_jacobian_fd(p: MapParams, x, y, h_step: float = None) -> float:
    """|det| of the finite-difference Jacobian of phi; expected 1."""
    jac = pair_map_jacobian_fd(lambda a, b: phi(p, a, b), x, y, h_step)
    return abs(float(np.linalg.det(jac)))


def psi_jacobian_check(p: MapParams, x, y, h_step: float = None):
    """(fd_value, closed_form) for |det D psi| = (det v / det y)^(r+1)."""
    x = spd.as_matrix(x)
    r = x.shape[0]
    jac = pair_map_jacobian_fd(lambda a, b: psi(p, a, b), x, y, h_step)
    fd_value = abs(float(np.linalg.det(jac)))
    _, v = psi(p, x, y)
    closed = float(np.exp((r + 1) * (spd.logdet(v) - spd.logdet(y))))
    return fd_value, closed


# ---------------------------------------------------------------------------
# derivative identities
# ---------------------------------------------------------------------------


def _u_inv(p: MapParams, x, y):
    # u^(-1) = y (bx+y)^(-1) (ax+y)
    z = spd.spd_inverse(p.beta * x + y)
    return y @ z @ (p.alpha * x + y)


def _v_inv(p: MapParams, x, y):
    # v^(-1) = x (bx+y)^(-1) (ax+y)
    z = spd.spd_inverse(p.beta * x + y)
    return x @ z @ (p.alpha * x + y)


def _fd_directional(func, base, direction, h_step):
    return (func(base + h_step * direction) - func(base - h_step * direction)) / (2.0 * h_step)


def derivative_identities_check(p: MapParams, x, y, h, h_step: float = None) -> dict:
    """Closed-form directional derivatives against central finite differences.

    Returns one relative residual per identity.  The identities that divide
    by beta are reported only when beta > 0.  Also includes the algebraic
    residuals for the two resolvent representations of u^(-1) and v^(-1)
    and for the linear identity beta v^(-1) + u^(-1) = alpha x + y.
    """
    x = spd.as_matrix(x)
    y = spd.as_matrix(y)
    h = spd.as_matrix(h)
    a, b = p.alpha, p.beta
    if h_step is None:
        scale = max(np.linalg.norm(x), np.linalg.norm(y), 1.0)
        h_step = FD_STEP_REL * scale / max(np.linalg.norm(h), 1e-30) if np.any(h) else FD_STEP_REL
    z = spd.spd_inverse(b * x + y)
    diff = a - b
    res = {}

    def fd_residual(fd, closed):
        # directional derivatives are linear in h with O(1) coefficients, so
        # |h| is the right floor when the closed form vanishes identically
        denom = max(np.linalg.norm(closed), np.linalg.norm(h), 1e-300)
        return float(np.linalg.norm(fd - closed) / denom)

    if not np.any(h):
        zero = np.zeros_like(x)
        names = ["d_uinv_dx", "d_vinv_dy", "d_uinv_dy", "d_zy_dy", "d_yz_dy"]
        if b > 0:
            names.append("d_vinv_dx")
        res.update({name: 0.0 for name in names})
    else:
        closed = diff * (y @ z @ h @ z @ y)
        fd = _fd_directional(lambda t: _u_inv(p, t, y), x, h, h_step)
        res["d_uinv_dx"] = fd_residual(fd, closed)

        closed = -diff * (x @ z @ h @ z @ x)
        fd = _fd_directional(lambda t: _v_inv(p, x, t), y, h, h_step)
        res["d_vinv_dy"] = fd_residual(fd, closed)

        closed = h + b * diff * (x @ z @ h @ z @ x)
        fd = _fd_directional(lambda t: _u_inv(p, x, t), y, h, h_step)
        res["d_uinv_dy"] = fd_residual(fd, closed)

        if b > 0:
            closed = (a / b) * h - (diff / b) * (y @ z @ h @ z @ y)
            fd = _fd_directional(lambda t: _v_inv(p, t, y), x, h, h_step)
            res["d_vinv_dx"] = fd_residual(fd, closed)

        closed = b * (z @ h @ z @ x)
        fd = _fd_directional(lambda t: spd.spd_inverse(b * x + t) @ t, y, h, h_step)
        res["d_zy_dy"] = fd_residual(fd, closed)

        closed = b * (x @ z @ h @ z)
        fd = _fd_directional(lambda t: t @ spd.spd_inverse(b * x + t), y, h, h_step)
        res["d_yz_dy"] = fd_residual(fd, closed)

    u_inv = _u_inv(p, x, y)
    v_inv = _v_inv(p, x, y)
    if b > 0:
        res["resolvent_uinv"] = spd.rel_residual(u_inv, (a / b) * y - (diff / b) * (y @ z @ y))
    res["resolvent_vinv"] = spd.rel_residual(v_inv, x + diff * (x @ z @ x))
    res["linear_identity"] = spd.rel_residual(b * v_inv + u_inv, a * x + y)
    return res


def scaling_law_residual(p: MapParams, x, y, c: float) -> float:
    """phi^(a,b)(cx, cy) = c * phi^(c^2 a, c^2 b)(x, y); returns the residual."""
    if c <= 0:
        raise DomainError("scaling constant must be positive")
    u1, v1 = phi(p, c * np.asarray(x, dtype=float), c * np.asarray(y, dtype=float))
    scaled = MapParams(alpha=c * c * p.alpha, beta=c * c * p.beta)
    u2, v2 = phi(scaled, x, y)
    return max(spd.rel_residual(u1, c * u2), spd.rel_residual(v1, c * v2))


# ---------------------------------------------------------------------------
# verification campaign
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MapCampaignConfig:
    """Sweep sizes and tolerances for the map verification suite."""

    alpha: float = 2.0
    beta: float = 0.5
    involution_dims: tuple = (1, 2, 3, 5, 10)
    involution_trials: int = 1000
    jacobian_dims: tuple = (1, 2, 3)
    jacobian_trials: int = 50
    derivative_dims: tuple = (1, 2, 3)
    derivative_trials: int = 50
    cone_dims: tuple = (1, 2, 3)
    cone_trials: int = 200
    seed: int = 20240904
    kappa_max: float = 1e4
    involution_tolerance: float = 1e-10
    jacobian_tolerance: float = 1e-4
    fd_tolerance: float = 1e-5
    algebraic_tolerance: float = 1e-11
    cone_tolerance: float = 1e-9

    def restricted(self, dim: int) -> "MapCampaignConfig":
        """Same suite with every sweep run at a single dimension."""
        from dataclasses import replace

        d = (dim,)
        return replace(
            self,
            involution_dims=d,
            jacobian_dims=d,
            derivative_dims=d,
            cone_dims=d,
        )


def _wishart_pair(r: int, rng, kappa_max: float):
    """Pair of Wishart draws, resampled until both are kappa-admissible."""
    from .distributions import WishartParams, wishart_sample

    wp = WishartParams(r, float(r), np.eye(r) / 2.0)
    while True:
        x = wishart_sample(wp, rng)
        y = wishart_sample(wp, rng)
        if max(spd.condition_number(x), spd.condition_number(y)) <= kappa_max:
            return x, y


def _pair_residual(left: tuple, right: tuple) -> float:
    return max(spd.rel_residual(left[0], right[0]), spd.rel_residual(left[1], right[1]))


def maps_campaign(config: MapCampaignConfig = MapCampaignConfig()) -> "VerificationReport":
    """Involution, Jacobian, derivative, and cone-form sweeps in one report.

    Each sweep draws its pairs from pre-assigned RNG streams so reruns with
    the same seed reproduce every residual exactly.
    """
    import time

    from .distributions import make_rng
    from .reports import CheckResult, VerificationReport

    start = time.monotonic()
    cfg = config
    p = MapParams(cfg.alpha, cfg.beta)
    results = []

    inv_max = {"phi": 0.0, "psi": 0.0}
    for d_index, r in enumerate(cfg.involution_dims):
        rng = make_rng(cfg.seed, stream_id=d_index)
        for _ in range(cfg.involution_trials):
            x, y = _wishart_pair(r, rng, cfg.kappa_max)
            inv_max["phi"] = max(inv_max["phi"], _pair_residual(phi(p, *phi(p, x, y)), (x, y)))
            inv_max["psi"] = max(inv_max["psi"], _pair_residual(psi(p, *psi(p, x, y)), (x, y)))
    for name, value in inv_max.items():
        results.append(
            CheckResult(
                f"involution_{name}", value, cfg.involution_tolerance, value <= cfg.involution_tolerance
            )
        )

    jac_phi_max = 0.0
    jac_psi_max = 0.0
    for d_index, r in enumerate(cfg.jacobian_dims):
        rng = make_rng(cfg.seed, stream_id=100 + d_index)
        for _ in range(cfg.jacobian_trials):
            x, y = _wishart_pair(r, rng, cfg.kappa_max)
            jac_phi_max = max(jac_phi_max, abs(phi_jacobian_fd(p, x, y) - 1.0))
            fd, expected = psi_jacobian_check(p, x, y)
            jac_psi_max = max(jac_psi_max, abs(fd - expected) / abs(expected))
    results.append(
        CheckResult("jacobian_phi_unit", jac_phi_max, cfg.jacobian_tolerance, jac_phi_max <= cfg.jacobian_tolerance)
    )
    results.append(
        CheckResult(
            "jacobian_psi_determinant", jac_psi_max, cfg.jacobian_tolerance, jac_psi_max <= cfg.jacobian_tolerance
        )
    )

    fd_max = 0.0
    alg_max = 0.0
    for d_index, r in enumerate(cfg.derivative_dims):
        rng = make_rng(cfg.seed, stream_id=200 + d_index)
        for _ in range(cfg.derivative_trials):
            x, y = _wishart_pair(r, rng, cfg.kappa_max)
            h = rng.standard_normal((r, r))
            h = (h + h.T) / 2.0
            checks = derivative_identities_check(p, x, y, h)
            for key, value in checks.items():
                if key.startswith("d_"):
                    fd_max = max(fd_max, value)
                else:
                    alg_max = max(alg_max, value)
    results.append(CheckResult("derivative_fd", fd_max, cfg.fd_tolerance, fd_max <= cfg.fd_tolerance))
    results.append(
        CheckResult("derivative_algebraic", alg_max, cfg.algebraic_tolerance, alg_max <= cfg.algebraic_tolerance)
    )

    cone_max = 0.0
    for d_index, r in enumerate(cfg.cone_dims):
        rng = make_rng(cfg.seed, stream_id=300 + d_index)
        for _ in range(cfg.cone_trials):
            x, y = _wishart_pair(r, rng, cfg.kappa_max)
            cone_max = max(cone_max, _pair_residual(cone_candidate(p, x, y), phi(p, x, y)))
    results.append(CheckResult("cone_candidate_agreement", cone_max, cfg.cone_tolerance, cone_max <= cfg.cone_tolerance))

    return VerificationReport(
        command="verify-maps",
        config={
            "alpha": cfg.alpha,
            "beta": cfg.beta,
            "involution_dims": list(cfg.involution_dims),
            "involution_trials": cfg.involution_trials,
            "jacobian_dims": list(cfg.jacobian_dims),
            "jacobian_trials": cfg.jacobian_trials,
            "derivative_dims": list(cfg.derivative_dims),
            "derivative_trials": cfg.derivative_trials,
            "cone_dims": list(cfg.cone_dims),
            "cone_trials": cfg.cone_trials,
            "kappa_max": cfg.kappa_max,
        },
        results=results,
        seed=cfg.seed,
        wallclock=time.monotonic() - start,
    )
