"""Command-line entry point for the verification campaigns and samplers.

Every command resolves its configuration (flags, the ``SPDGIG_SEED``
environment variable, defaults) into the report it writes, runs one
campaign, and exits 0 only when every check passed.  Reports are JSON with
a versioned schema; sample dumps are CSV with LF line endings and full
``repr`` precision so reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .distributions import (
    ChainConfig,
    GigParams,
    MgigParams,
    WishartParams,
    gig_sample,
    make_rng,
    mgig_mh_sample,
    wishart_sample,
)
from .errors import ConfigError, SpdGigError
from .maps import MapCampaignConfig, maps_campaign
from .reports import write_matrix_batch_csv
from .stats import McConfig, TransportConfig, direc_campaign, my_property_campaign, transport_campaign
from .yangbaxter import YbCampaignConfig, appendix_campaign, yb_campaign

DEFAULT_SEED = 20240900
SEED_ENV_VAR = "SPDGIG_SEED"


def parse_matrix(spec: str, dim: int) -> np.ndarray:
    """Resolve a matrix argument: ``identity``, ``diag:v1,v2,...``,
    ``scaled:c``, or a path to a CSV file holding a dim x dim matrix."""
    if spec == "identity":
        return np.eye(dim)
    if spec.startswith("diag:"):
        values = [float(v) for v in spec[len("diag:") :].split(",") if v]
        if len(values) != dim:
            raise ConfigError(f"diag shorthand needs {dim} entries, got {len(values)}")
        return np.diag(values)
    if spec.startswith("scaled:"):
        return float(spec[len("scaled:") :]) * np.eye(dim)
    path = Path(spec)
    if not path.exists():
        raise ConfigError(f"matrix file not found: {spec}")
    m = np.loadtxt(path, delimiter=",", ndmin=2)
    if m.shape != (dim, dim):
        raise ConfigError(f"matrix file {spec} has shape {m.shape}, expected {(dim, dim)}")
    return m


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ConfigError(f"{SEED_ENV_VAR} must be an integer, got {env!r}") from exc
    return DEFAULT_SEED


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None, help="RNG seed (default: fixed constant)")
    parser.add_argument("--threads", type=int, default=1, help="worker cap; results do not depend on it")
    parser.add_argument("--out", type=str, default=None, help="report or CSV output path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spdgig", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-yb", help="Yang-Baxter residual sweep")
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--tolerance", type=float, default=None)
    _add_common(p)

    p = sub.add_parser("verify-maps", help="involution, Jacobian, derivative, and cone-form sweeps")
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--beta", type=float, default=0.5)
    p.add_argument("--trials", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("verify-appendix", help="proof-chain replay on random triples")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--tolerance", type=float, default=None)
    _add_common(p)

    p = sub.add_parser("verify-transport", help="density transport constancy sweep")
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--trials", type=int, default=None, help="pairs per dimension")
    p.add_argument("--tolerance", type=float, default=None)
    _add_common(p)

    p = sub.add_parser("sample", help="draw from one of the samplers and dump CSV")
    p.add_argument("family", choices=["gig", "mgig", "wishart"])
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--alpha", type=float, default=None, help="gig: coefficient of x")
    p.add_argument("--beta", type=float, default=None, help="gig: coefficient of 1/x")
    p.add_argument("--a", type=str, default="identity", help="matrix shorthand or CSV path")
    p.add_argument("--b", type=str, default="identity", help="matrix shorthand or CSV path")
    p.add_argument("--n", type=int, default=1000)
    _add_common(p)

    p = sub.add_parser("test-direc", help="Monte Carlo independence-preservation campaign")
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--beta", type=float, default=0.5)
    p.add_argument("--lambda", dest="lam", type=float, default=0.7)
    p.add_argument("--a", type=float, default=1.2, help="scale of a = (this) * identity")
    p.add_argument("--b", type=float, default=0.8, help="scale of b = (this) * identity")
    p.add_argument("--n", type=int, default=20000)
    p.add_argument("--B", dest="n_perms", type=int, default=999)
    p.add_argument("--mutation", action="store_true", help="run the negative control instead")
    _add_common(p)

    p = sub.add_parser("test-my", help="Monte Carlo campaign for the classical scalar property")
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--gamma1", type=float, default=1.0)
    p.add_argument("--gamma2", type=float, default=1.3)
    p.add_argument("--a", type=float, default=1.2)
    p.add_argument("--b", type=float, default=0.8)
    p.add_argument("--n", type=int, default=20000)
    p.add_argument("--B", dest="n_perms", type=int, default=999)
    p.add_argument("--mutation", action="store_true", help="run the negative control instead")
    _add_common(p)

    return parser


def _run_verify_yb(args):
    cfg = YbCampaignConfig(seed=_resolve_seed(args))
    if args.dim is not None:
        cfg = replace(cfg, dims=(args.dim,))
    if None not in (args.alpha, args.beta, args.gamma):
        cfg = replace(cfg, param_grid=((args.alpha, args.beta, args.gamma),))
    if args.trials is not None:
        cfg = replace(cfg, trials=args.trials)
    if args.tolerance is not None:
        cfg = replace(cfg, tolerance=args.tolerance)
    return yb_campaign(cfg)


def _run_verify_maps(args):
    cfg = MapCampaignConfig(alpha=args.alpha, beta=args.beta, seed=_resolve_seed(args))
    if args.trials is not None:
        cfg = replace(
            cfg,
            involution_trials=args.trials,
            jacobian_trials=max(1, args.trials // 20),
            derivative_trials=max(1, args.trials // 20),
            cone_trials=max(1, args.trials // 5),
        )
    if args.dim is not None:
        cfg = cfg.restricted(args.dim)
    return maps_campaign(cfg)


def _run_verify_appendix(args):
    kwargs = {"seed": _resolve_seed(args)}
    if args.trials is not None:
        kwargs["trials_per_dim"] = args.trials
    if args.tolerance is not None:
        kwargs["tolerance"] = args.tolerance
    return appendix_campaign(**kwargs)


def _run_verify_transport(args):
    cfg = TransportConfig(seed=_resolve_seed(args))
    if args.dim is not None:
        cfg = replace(cfg, dims=(args.dim,))
    if args.trials is not None:
        cfg = replace(cfg, pairs=args.trials)
    if args.tolerance is not None:
        cfg = replace(cfg, tolerance=args.tolerance)
    return transport_campaign(cfg)


def _run_sample(args) -> int:
    seed = _resolve_seed(args)
    rng = make_rng(seed)
    out = args.out or f"{args.family}_samples.csv"
    if args.family == "gig":
        if args.alpha is None or args.beta is None:
            raise ConfigError("gig sampling needs --alpha and --beta")
        draws = gig_sample(GigParams(args.lam, args.alpha, args.beta), rng, size=args.n)
        draws = draws.reshape(args.n, 1, 1)
    elif args.family == "wishart":
        c = parse_matrix(args.a, args.dim)
        draws = wishart_sample(WishartParams(args.dim, args.lam, c), rng, size=args.n)
    else:
        a = parse_matrix(args.a, args.dim)
        b = parse_matrix(args.b, args.dim)
        chain = mgig_mh_sample(MgigParams(args.dim, args.lam, a, b), ChainConfig(), args.n, rng)
        if not chain.converged:
            print(f"warning: chain flags: {chain.flags}", file=sys.stderr)
        draws = chain.draws
    write_matrix_batch_csv(out, draws)
    print(f"wrote {args.n} draws to {out}")
    return 0


_RUNNERS = {
    "verify-yb": _run_verify_yb,
    "verify-maps": _run_verify_maps,
    "verify-appendix": _run_verify_appendix,
    "verify-transport": _run_verify_transport,
}


def _run_mc(args, campaign, default_cfg: McConfig):
    cfg = replace(
        default_cfg,
        dim=args.dim,
        lam=args.lam,
        a=args.a,
        b=args.b,
        n_samples=args.n,
        n_perms=args.n_perms,
        seed=_resolve_seed(args),
        mutation=args.mutation,
    )
    if hasattr(args, "alpha"):
        cfg = replace(cfg, alpha=args.alpha, beta=args.beta)
    if hasattr(args, "gamma1"):
        cfg = replace(cfg, gamma1=args.gamma1, gamma2=args.gamma2)
    return campaign(cfg)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return 2
    try:
        if args.command == "sample":
            return _run_sample(args)
        if args.command == "test-direc":
            report = _run_mc(args, direc_campaign, McConfig())
        elif args.command == "test-my":
            report = _run_mc(args, my_property_campaign, McConfig(lam=1.0, alpha=1.0, beta=0.0))
        else:
            report = _RUNNERS[args.command](args)
    except SpdGigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = args.out or f"{args.command}_report.json"
    report.write_json(out)
    for check in report.results:
        marker = "PASS" if check.passed else "FAIL"
        print(f"{marker} {check.name}: {check.value:.6g} (threshold {check.threshold:g})")
    print(f"report written to {out}")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
