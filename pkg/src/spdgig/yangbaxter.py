"""Lifts of the pair map to triples and the parametric Yang-Baxter check.

F12, F13, F23 apply the pair map to two slots of an SPD triple and leave
the third untouched.  ``yb_residual`` measures how far
F12 o F13 o F23 is from F23 o F13 o F12, which must vanish for all
parameter choices.  ``appendix_trace`` replays the step-by-step chain used
in the algebraic proof and cross-checks its closed-form intermediates.

The intermediate products in the trace (A, B, C, s and friends) are
genuinely non-symmetric; they stay ordinary square arrays inside this
module even though the chain endpoints live on the cone.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import spd
from .distributions import make_rng, random_spd
from .maps import MapParams, phi
from .reports import CheckResult, VerificationReport


@dataclass(frozen=True)
class YbParams:
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        if min(self.alpha, self.beta, self.gamma) < 0:
            raise ValueError("Yang-Baxter parameters must be nonnegative")


def apply_f12(alpha: float, beta: float, triple):
    x, y, z = triple
    u, v = phi(MapParams(alpha, beta), x, y)
    return u, v, z


def apply_f13(alpha: float, gamma: float, triple):
    x, y, z = triple
    u, v = phi(MapParams(alpha, gamma), x, z)
    return u, y, v


def apply_f23(beta: float, gamma: float, triple):
    x, y, z = triple
    u, v = phi(MapParams(beta, gamma), y, z)
    return x, u, v


def _lhs_chain(p: YbParams, triple):
    """F12 o F13 o F23 with all intermediates."""
    t1 = apply_f23(p.beta, p.gamma, triple)
    t2 = apply_f13(p.alpha, p.gamma, t1)
    t3 = apply_f12(p.alpha, p.beta, t2)
    return [t1, t2, t3]


def _rhs_chain(p: YbParams, triple):
    """F23 o F13 o F12 with all intermediates."""
    t1 = apply_f12(p.alpha, p.beta, triple)
    t2 = apply_f13(p.alpha, p.gamma, t1)
    t3 = apply_f23(p.beta, p.gamma, t2)
    return [t1, t2, t3]


def _triple_residual(left, right) -> float:
    return max(spd.rel_residual(a, b) for a, b in zip(left, right))


def yb_residual(p: YbParams, x, y, z) -> float:
    """Max relative slot difference between the two composition orders."""
    lhs = _lhs_chain(p, (x, y, z))[-1]
    rhs = _rhs_chain(p, (x, y, z))[-1]
    return _triple_residual(lhs, rhs)


def yb_residual_mutated(p: YbParams, x, y, z) -> float:
    """Negative control: the F12 factor on one side uses (beta, alpha)."""
    lhs = apply_f12(p.beta, p.alpha, apply_f13(p.alpha, p.gamma, apply_f23(p.beta, p.gamma, (x, y, z))))
    rhs = _rhs_chain(p, (x, y, z))[-1]
    return _triple_residual(lhs, rhs)


@dataclass
class AppendixTrace:
    """Both composition chains with componentwise and auxiliary residuals."""

    lhs_chain: list
    rhs_chain: list
    slot_residuals: tuple  # (x3 vs X3, y3 vs Y3, z3 vs Z3)
    x3_closed_form_residual: float
    commutation_residuals: tuple  # s(I+ts)=(I+st)s and the inverse variant
    swap_identity_residuals: tuple  # the two star-swap relations behind y3=Y3

    @property
    def max_slot_residual(self) -> float:
        return max(self.slot_residuals)


def appendix_trace(p: YbParams, x, y, z) -> AppendixTrace:
    x = spd.as_matrix(x)
    y = spd.as_matrix(y)
    z = spd.as_matrix(z)
    lhs = _lhs_chain(p, (x, y, z))
    rhs = _rhs_chain(p, (x, y, z))
    slot_res = tuple(spd.rel_residual(a, b) for a, b in zip(lhs[-1], rhs[-1]))

    eye = np.eye(x.shape[0])
    zy = z @ y
    yz = y @ z
    yx = y @ x

    # closed form for the first output slot of the left chain:
    # x3 = z [A* + alpha yx B*]^(-1) [C* + yx (alpha + beta gamma yz)]
    a_star = eye + p.alpha * yz
    b_star = eye + p.beta * yz
    c_star = eye + p.gamma * yz
    x3_closed = z @ np.linalg.solve(
        a_star + p.alpha * yx @ b_star,
        c_star + yx @ (p.alpha * eye + p.beta * p.gamma * yz),
    )
    x3_res = spd.rel_residual(x3_closed, lhs[-1][0])

    # elementary commutation identities with s, t SPD
    comm1 = spd.rel_residual(y @ (eye + zy), (eye + yz) @ y)
    comm2 = spd.rel_residual(
        y @ np.linalg.inv(eye + zy), np.linalg.inv(eye + yz) @ y
    )

    # the two star-swap relations: with u = yx, v = yz, s = u + v + beta uv
    # and s* the same word with uv reversed,
    #   v s_a - s_a u = s*_a v - u s*_a   and   (I + beta v) s_a s_g = s*_g s*_a (I + beta v)
    u_w, v_w = yx, yz
    s_w = u_w + v_w + p.beta * (u_w @ v_w)
    s_sw = u_w + v_w + p.beta * (v_w @ u_w)
    s_a = np.linalg.inv(eye + p.alpha * s_w)
    s_g = np.linalg.inv(eye + p.gamma * s_w)
    s_a_sw = np.linalg.inv(eye + p.alpha * s_sw)
    s_g_sw = np.linalg.inv(eye + p.gamma * s_sw)
    swap1 = spd.rel_residual(v_w @ s_a - s_a @ u_w, s_a_sw @ v_w - u_w @ s_a_sw)
    boost = eye + p.beta * v_w
    swap2 = spd.rel_residual(boost @ s_a @ s_g, s_g_sw @ s_a_sw @ boost)

    return AppendixTrace(
        lhs_chain=lhs,
        rhs_chain=rhs,
        slot_residuals=slot_res,
        x3_closed_form_residual=x3_res,
        commutation_residuals=(comm1, comm2),
        swap_identity_residuals=(swap1, swap2),
    )


@dataclass(frozen=True)
class YbCampaignConfig:
    dims: tuple = (1, 2, 3, 5)
    trials: int = 500
    param_grid: tuple = (
        (2.0, 1.0, 0.5),
        (1.0, 0.0, 2.0),
        (1.0, 1.0, 1.0),
        (0.3, 0.3, 5.0),
        (1.0, 0.0, 0.0),
    )
    seed: int = 20240901
    kappa_max: float = 1e4
    tolerance: float = 1e-9
    equal_params_tolerance: float = 1e-12
    mutation_threshold: float = 1e-2


def yb_campaign(config: YbCampaignConfig = YbCampaignConfig()) -> VerificationReport:
    """Random-triple sweep of the Yang-Baxter identity over a parameter grid.

    Each (dim, trial) cell owns a pre-assigned RNG stream, so aggregation is
    deterministic regardless of evaluation order.
    """
    start = time.monotonic()
    results = []
    residuals = []
    mutation_max = 0.0
    for d_index, r in enumerate(config.dims):
        cell_max = {grid: 0.0 for grid in config.param_grid}
        for trial in range(config.trials):
            rng = make_rng(config.seed, stream_id=d_index * config.trials + trial)
            x = random_spd(r, rng, config.kappa_max)
            y = random_spd(r, rng, config.kappa_max)
            z = random_spd(r, rng, config.kappa_max)
            for grid in config.param_grid:
                p = YbParams(*grid)
                res = yb_residual(p, x, y, z)
                cell_max[grid] = max(cell_max[grid], res)
                residuals.append(res)
            if trial < 20:  # negative control is cheap to saturate
                mutated = yb_residual_mutated(YbParams(*config.param_grid[0]), x, y, z)
                mutation_max = max(mutation_max, mutated)
        for grid, value in cell_max.items():
            equal = grid[0] == grid[1] == grid[2]
            tol = config.equal_params_tolerance if equal else config.tolerance
            results.append(
                CheckResult(
                    name=f"yb_residual[r={r},params={grid}]",
                    value=value,
                    threshold=tol,
                    passed=value <= tol,
                )
            )
    residuals = np.asarray(residuals)
    results.append(
        CheckResult(
            name="yb_mutation_control",
            value=mutation_max,
            threshold=config.mutation_threshold,
            passed=mutation_max > config.mutation_threshold,
            info={"direction": "must exceed threshold"},
        )
    )
    return VerificationReport(
        command="verify-yb",
        config={
            "dims": list(config.dims),
            "trials": config.trials,
            "param_grid": [list(g) for g in config.param_grid],
            "kappa_max": config.kappa_max,
            "tolerance": config.tolerance,
        },
        results=results,
        seed=config.seed,
        wallclock=time.monotonic() - start,
        extra={
            "max_residual": float(residuals.max()),
            "mean_residual": float(residuals.mean()),
        },
    )


def appendix_campaign(
    dims=(1, 2, 3),
    trials_per_dim: int = 67,
    param_grid=((2.0, 1.0, 0.5), (1.0, 0.0, 2.0)),
    seed: int = 20240902,
    kappa_max: float = 1e4,
    tolerance: float = 1e-10,
) -> VerificationReport:
    """Replay of the proof chain on random triples."""
    start = time.monotonic()
    slot_max = 0.0
    x3_max = 0.0
    comm_max = 0.0
    swap_max = 0.0
    for d_index, r in enumerate(dims):
        for trial in range(trials_per_dim):
            rng = make_rng(seed, stream_id=d_index * trials_per_dim + trial)
            x = random_spd(r, rng, kappa_max)
            y = random_spd(r, rng, kappa_max)
            z = random_spd(r, rng, kappa_max)
            for grid in param_grid:
                trace = appendix_trace(YbParams(*grid), x, y, z)
                slot_max = max(slot_max, trace.max_slot_residual)
                x3_max = max(x3_max, trace.x3_closed_form_residual)
                comm_max = max(comm_max, *trace.commutation_residuals)
                swap_max = max(swap_max, *trace.swap_identity_residuals)
    results = [
        CheckResult("appendix_slot_residual", slot_max, tolerance, slot_max <= tolerance),
        CheckResult("appendix_x3_closed_form", x3_max, tolerance, x3_max <= tolerance),
        CheckResult("appendix_commutation", comm_max, tolerance, comm_max <= tolerance),
        CheckResult("appendix_swap_identities", swap_max, tolerance, swap_max <= tolerance),
    ]
    return VerificationReport(
        command="verify-appendix",
        config={
            "dims": list(dims),
            "trials_per_dim": trials_per_dim,
            "param_grid": [list(g) for g in param_grid],
            "tolerance": tolerance,
        },
        results=results,
        seed=seed,
        wallclock=time.monotonic() - start,
    )
