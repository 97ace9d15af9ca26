"""GIG, Gamma, Wishart and matrix-GIG laws: densities and samplers.

Only unnormalized log-densities are exposed; every verification downstream
works with constancy-of-difference arguments, so normalizing constants
(matrix Bessel integrals) are never needed.

The scalar GIG sampler is ratio-of-uniforms with a mode shift.  The matrix
GIG sampler is a random-walk Metropolis chain in log-Cholesky coordinates,
which chart the SPD cone globally and have a closed-form volume correction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.integrate
from scipy.optimize import brentq, minimize_scalar

from . import spd
from .errors import DimMismatch, DomainError, InvalidLambda


def make_rng(seed: int, stream_id: int = 0) -> np.random.Generator:
    """Deterministic generator; distinct stream ids give independent streams."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(stream_id,)))


# ---------------------------------------------------------------------------
# scalar laws
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GigParams:
    """GIG(lambda, alpha, beta): density ~ x^(lambda-1) exp(-alpha x - beta/x)."""

    lam: float
    alpha: float
    beta: float

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0:
            raise DomainError("GIG coefficients must be nonnegative")


@dataclass(frozen=True)
class GammaParams:
    """Gamma(shape, rate): density ~ x^(shape-1) exp(-rate x)."""

    shape: float
    rate: float

    def __post_init__(self):
        if self.shape <= 0 or self.rate <= 0:
            raise DomainError("Gamma shape and rate must be positive")


def gig_logpdf_unnorm(p: GigParams, x):
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("GIG density evaluated at nonpositive point")
    out = (p.lam - 1.0) * np.log(x) - p.alpha * x - p.beta / x
    return float(out) if out.ndim == 0 else out


def gamma_logpdf_unnorm(p: GammaParams, x):
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("Gamma density evaluated at nonpositive point")
    out = (p.shape - 1.0) * np.log(x) - p.rate * x
    return float(out) if out.ndim == 0 else out


def gamma_sample(p: GammaParams, rng: np.random.Generator, size=None):
    return rng.gamma(shape=p.shape, scale=1.0 / p.rate, size=size)


def gig_mode(p: GigParams) -> float:
    lm1 = p.lam - 1.0
    return (lm1 + math.sqrt(lm1 * lm1 + 4.0 * p.alpha * p.beta)) / (2.0 * p.alpha)


class _GigEnvelope:
    """Ratio-of-uniforms acceptance region for a mode-shifted GIG density."""

    def __init__(self, p: GigParams):
        if p.alpha <= 0 or p.beta <= 0:
            raise DomainError("ratio-of-uniforms sampler needs alpha > 0 and beta > 0")
        self.p = p
        self.mode = gig_mode(p)
        lo, hi = self._support_window()
        self.v_plus = 1.01 * self._extreme(self.mode, hi, sign=1.0)
        self.v_minus = -1.01 * self._extreme(lo, self.mode, sign=-1.0)

    def log_rel_density(self, x):
        """log f(x) - log f(mode); <= 0 everywhere, vectorized."""
        p, m = self.p, self.mode
        return (p.lam - 1.0) * np.log(x / m) - p.alpha * (x - m) - p.beta * (1.0 / x - 1.0 / m)

    def _support_window(self, drop: float = 60.0):
        m = self.mode
        hi = 2.0 * m
        while self.log_rel_density(hi) > -drop:
            hi *= 2.0
        hi = brentq(lambda x: self.log_rel_density(x) + drop, hi / 2.0, hi)
        lo = m / 2.0
        while self.log_rel_density(lo) > -drop:
            lo /= 2.0
        lo = brentq(lambda x: self.log_rel_density(x) + drop, lo, 2.0 * lo)
        return lo, hi

    def _extreme(self, lo: float, hi: float, sign: float) -> float:
        res = minimize_scalar(
            lambda x: -sign * (x - self.mode) * math.exp(0.5 * self.log_rel_density(x)),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-12 * max(1.0, hi)},
        )
        return max(-res.fun, 0.0)


def gig_sample(p: GigParams, rng: np.random.Generator, size=None):
    """Exact GIG draws via ratio of uniforms with mode shift."""
    env = _GigEnvelope(p)
    n = 1 if size is None else int(np.prod(size))
    out = np.empty(n)
    filled = 0
    while filled < n:
        block = max(2 * (n - filled), 256)
        u = rng.uniform(size=block)
        v = rng.uniform(env.v_minus, env.v_plus, size=block)
        good = u > 0.0
        x = np.full(block, -1.0)
        x[good] = env.mode + v[good] / u[good]
        good &= x > 0.0
        accept = np.zeros(block, dtype=bool)
        accept[good] = 2.0 * np.log(u[good]) <= env.log_rel_density(x[good])
        picked = x[accept]
        take = min(picked.size, n - filled)
        out[filled : filled + take] = picked[:take]
        filled += take
    if size is None:
        return float(out[0])
    return out.reshape(size)


def gig_numeric_cdf(p: GigParams, n_grid: int = 8000):
    """Quadrature CDF oracle for the normalized GIG law.

    Independent of the sampler: builds a log-spaced grid over the effective
    support and integrates the unnormalized density with the trapezoid rule.
    Returns a vectorized callable.
    """
    env = _GigEnvelope(p)
    lo, hi = env._support_window(drop=46.0)
    grid = np.exp(np.linspace(math.log(lo), math.log(hi), n_grid))
    dens = np.exp(env.log_rel_density(grid))
    cum = np.concatenate([[0.0], np.cumsum(0.5 * (dens[1:] + dens[:-1]) * np.diff(grid))])
    cum /= cum[-1]

    def cdf(x):
        return np.interp(np.asarray(x, dtype=float), grid, cum, left=0.0, right=1.0)

    return cdf


def gig_numeric_moment(p: GigParams, power: float = 1.0, n_grid: int = 8000) -> float:
    """Quadrature moment E[X^power] of the normalized GIG law."""
    env = _GigEnvelope(p)
    lo, hi = env._support_window(drop=60.0)
    grid = np.exp(np.linspace(math.log(lo), math.log(hi), n_grid))
    dens = np.exp(env.log_rel_density(grid))
    z = scipy.integrate.trapezoid(dens, grid)
    return float(scipy.integrate.trapezoid(grid**power * dens, grid) / z)


# ---------------------------------------------------------------------------
# Wishart
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WishartParams:
    """W(lambda, c): density ~ (det x)^(lambda-(r+1)/2) exp(-<c, x>).

    Admissible shapes are the half-integers 0, 1/2, ..., (r-1)/2 together
    with the open ray ((r-1)/2, inf); below the ray the law lives on the
    closure of the cone and has no density.
    """

    dim: int
    lam: float
    scale: np.ndarray = field(default=None)  # c; identity when omitted

    def __post_init__(self):
        c = np.eye(self.dim) if self.scale is None else spd.as_matrix(self.scale)
        if c.shape[0] != self.dim:
            raise DimMismatch("scale dimension does not match dim")
        spd.cholesky_factor(c)
        object.__setattr__(self, "scale", c)
        r = self.dim
        on_ray = self.lam > (r - 1) / 2.0
        half_int = abs(2.0 * self.lam - round(2.0 * self.lam)) < 1e-12 and 0 <= self.lam <= (r - 1) / 2.0
        if not (on_ray or half_int):
            raise InvalidLambda(f"lambda={self.lam} not admissible for dim {r}")

    @property
    def has_density(self) -> bool:
        return self.lam > (self.dim - 1) / 2.0


def wishart_logpdf_unnorm(p: WishartParams, x) -> float:
    if not p.has_density:
        raise InvalidLambda("singular Wishart has no density")
    x = spd.as_matrix(x)
    return (p.lam - (p.dim + 1) / 2.0) * spd.logdet(x) - spd.trace_inner(p.scale, x)


def wishart_sample(p: WishartParams, rng: np.random.Generator, size=None):
    """Draws with the exponent convention <c, x>: standard Wishart with
    degrees of freedom n = 2 lambda and Sigma = (2c)^(-1), via Bartlett."""
    r = p.dim
    n_df = 2.0 * p.lam
    sigma = spd.spd_inverse(2.0 * p.scale)
    l_sigma = spd.cholesky_factor(sigma)
    count = 1 if size is None else int(size)
    out = np.empty((count, r, r))
    for k in range(count):
        if p.has_density:
            a = np.zeros((r, r))
            rows, cols = np.tril_indices(r, k=-1)
            a[rows, cols] = rng.standard_normal(rows.size)
            for i in range(r):
                a[i, i] = math.sqrt(rng.gamma(shape=(n_df - i) / 2.0, scale=2.0))
            root = l_sigma @ a
        else:
            g = rng.standard_normal((r, int(round(n_df)))) if n_df > 0 else np.zeros((r, 1))
            root = l_sigma @ g
        w = root @ root.T
        out[k] = 0.5 * (w + w.T)
    return out[0] if size is None else out


def random_spd(
    r: int,
    rng: np.random.Generator,
    kappa_max: float = 1e4,
    lam: float = None,
) -> np.ndarray:
    """Wishart-generated SPD test point with a condition-number filter."""
    params = WishartParams(dim=r, lam=float(r if lam is None else lam))
    while True:
        x = wishart_sample(params, rng)
        if r == 1 and x[0, 0] < 1.0 / kappa_max:
            continue
        if spd.condition_number(x) <= kappa_max:
            return x


# ---------------------------------------------------------------------------
# matrix GIG
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MgigParams:
    """MGIG(lambda, a, b): density ~ (det x)^(lambda-(r+1)/2) exp(-<a,x>-<b,x^-1>)."""

    dim: int
    lam: float
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = spd.as_matrix(self.a)
        b = spd.as_matrix(self.b)
        if a.shape[0] != self.dim or b.shape[0] != self.dim:
            raise DimMismatch("parameter dimensions do not match dim")
        spd.cholesky_factor(a)
        spd.cholesky_factor(b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


def mgig_logpdf_unnorm(p: MgigParams, x) -> float:
    x = spd.as_matrix(x)
    if x.shape[0] != p.dim:
        raise DimMismatch("point dimension does not match params")
    return mgig_logpdf_terms(p.lam, p.a, p.b, x)


def mgig_logpdf_terms(lam: float, a, b, x) -> float:
    """Raw MGIG log-density formula, with a and b allowed on the closure.

    Needed by transport checks at parameter edges such as beta = 0, where
    one coefficient matrix degenerates to zero but the pointwise identity
    is still algebraic.
    """
    x = spd.as_matrix(x)
    a = spd.as_matrix(a)
    b = spd.as_matrix(b)
    r = x.shape[0]
    return (
        (lam - (r + 1) / 2.0) * spd.logdet(x)
        - spd.trace_inner(a, x)
        - spd.trace_inner(b, spd.spd_inverse(x))
    )


def invert_law(p: MgigParams) -> MgigParams:
    """Law of the matrix inverse: MGIG(lambda, a, b) maps to MGIG(-lambda, b, a)."""
    return MgigParams(dim=p.dim, lam=-p.lam, a=p.b, b=p.a)


@dataclass(frozen=True)
class ChainConfig:
    """Random-walk Metropolis settings for the matrix GIG sampler."""

    burn_in: int = 2000
    thin: int = 5
    step_scale: float = 0.3
    target_accept: float = 0.3
    adapt: bool = True

    def __post_init__(self):
        if self.burn_in < 0 or self.thin < 1:
            raise DomainError("burn_in must be >= 0 and thin >= 1")
        if not 0.0 < self.target_accept < 1.0:
            raise DomainError("target_accept must lie in (0, 1)")


@dataclass
class MhSamples:
    """Post-burn-in, thinned draws plus chain diagnostics."""

    draws: np.ndarray  # (n, r, r)
    accept_rate: float
    step_scale: float
    ess_per_draw: float
    flags: list

    @property
    def converged(self) -> bool:
        return "non_convergence" not in self.flags


def _theta_to_cholesky(theta: np.ndarray, r: int) -> np.ndarray:
    lower = np.zeros((r, r))
    i, j = np.tril_indices(r)
    lower[i, j] = theta
    diag = np.exp(np.clip(np.diag(lower), -300, 300))
    lower[np.diag_indices(r)] = diag
    return lower


def _log_target_theta(theta: np.ndarray, p: MgigParams) -> float:
    """Unnormalized target in log-Cholesky coordinates, volume term included.

    For x = L L^T the Lebesgue volume is prod_i L_ii^(r+1-i) dL (1-indexed),
    and the log-diagonal transform contributes one more power of L_ii.
    """
    r = p.dim
    lower = _theta_to_cholesky(theta, r)
    x = lower @ lower.T
    log_diag = np.log(np.diag(lower))
    volume = float(np.sum((r + 2 - np.arange(1, r + 1)) * log_diag))
    x_inv_root = np.linalg.inv(lower)
    x_inv = x_inv_root.T @ x_inv_root
    logdet_x = 2.0 * float(np.sum(log_diag))
    lp = (
        (p.lam - (r + 1) / 2.0) * logdet_x
        - float(np.sum(p.a * x))
        - float(np.sum(p.b * x_inv))
    )
    return lp + volume


def _ess_per_draw(series: np.ndarray) -> float:
    n = series.size
    if n < 10:
        return 1.0
    x = series - series.mean()
    var = float(np.dot(x, x)) / n
    if var == 0.0:
        return 1.0
    rho_sum = 0.0
    for k in range(1, min(n // 2, 500)):
        rho = float(np.dot(x[:-k], x[k:])) / ((n - k) * var)
        if rho < 0.0:
            break
        rho_sum += rho
    return 1.0 / (1.0 + 2.0 * rho_sum)


def mgig_mh_sample(
    p: MgigParams,
    cfg: ChainConfig,
    n: int,
    rng: np.random.Generator,
    x0: np.ndarray = None,
) -> MhSamples:
    """Metropolis chain targeting the MGIG law, in log-Cholesky coordinates."""
    if n < 1:
        raise DomainError("n must be >= 1")
    r = p.dim
    k = spd.sym_dim(r)
    if x0 is None:
        theta = np.zeros(k)  # identity start
    else:
        lower = spd.cholesky_factor(x0)
        i, j = np.tril_indices(r)
        work = lower.copy()
        work[np.diag_indices(r)] = np.log(np.diag(lower))
        theta = work[i, j]
    step = cfg.step_scale
    log_cur = _log_target_theta(theta, p)
    draws = np.empty((n, r, r))
    logdet_trace = np.empty(n)
    stored = 0
    accepted_post = 0
    proposed_post = 0
    block_acc = 0
    block_size = 100
    total = cfg.burn_in + n * cfg.thin
    for it in range(total):
        proposal = theta + step * rng.standard_normal(k)
        log_prop = _log_target_theta(proposal, p)
        if math.log(rng.uniform()) < log_prop - log_cur:
            theta = proposal
            log_cur = log_prop
            block_acc += 1
            if it >= cfg.burn_in:
                accepted_post += 1
        if it >= cfg.burn_in:
            proposed_post += 1
        in_burn = it < cfg.burn_in
        if cfg.adapt and in_burn and (it + 1) % block_size == 0:
            rate = block_acc / block_size
            step *= math.exp((rate - cfg.target_accept) * 0.5)
            block_acc = 0
        elif (it + 1) % block_size == 0:
            block_acc = 0
        if it >= cfg.burn_in and (it - cfg.burn_in + 1) % cfg.thin == 0:
            lower = _theta_to_cholesky(theta, r)
            x = lower @ lower.T
            draws[stored] = 0.5 * (x + x.T)
            logdet_trace[stored] = 2.0 * float(np.sum(np.log(np.diag(lower))))
            stored += 1
    accept_rate = accepted_post / max(proposed_post, 1)
    ess = _ess_per_draw(logdet_trace)
    flags = []
    if not 0.05 <= accept_rate <= 0.9 or ess < 0.01:
        flags.append("non_convergence")
    return MhSamples(
        draws=draws,
        accept_rate=accept_rate,
        step_scale=step,
        ess_per_draw=ess,
        flags=flags,
    )
