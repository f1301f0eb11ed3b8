"""Command-line surface: check, norm, converge, scaling, oracle.

Exit codes are a stable contract: 0 success, 1 domain or validation failure,
2 parse or IO failure.  The converge subcommand writes its CSV atomically
(temp file plus rename) with the fixed header
``beta,tr_in,tr_out,ratio,target,rel_error`` and full round-trip precision.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import tempfile

import numpy as np

from . import fock
from .channels import (
    divergence_exponent,
    norm_pp,
    ratio_sequence,
    scaling_exponent,
    validate_channel,
)
from .config import load_config
from .errors import ConfigError, GaussNormError, NotCPError, UncertaintyViolatedError
from .states import GibbsFamily, char_function, gibbs_state, power_char_function, tr_rho_p, validate_state
from .symplectic import check_psd_hermitian, standard_form, PSD_SLACK

CSV_HEADER = "beta,tr_in,tr_out,ratio,target,rel_error"

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _parse_p(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity"):
        return math.inf
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(f"cannot parse exponent {text!r}")
    if not value >= 1.0:
        raise ConfigError(f"exponent must be >= 1, got {value}")
    return value


def cmd_check(args) -> int:
    spec, sweep = load_config(args.config)
    space = spec.space()
    name = spec.name or args.config
    n = space.dim
    K = np.array(spec.K).reshape(n, n)
    mu = np.array(spec.mu).reshape(n, n)
    d_form = space.delta - K.T @ space.delta @ K
    status = EXIT_OK
    for sign, label in ((+1.0, "+"), (-1.0, "-")):
        h = mu + sign * 0.5j * d_form
        ok, lam_min = check_psd_hermitian(h, tol=PSD_SLACK * np.linalg.norm(h))
        print(f"{name}: CP branch {label}: lambda_min = {_fmt(lam_min)} -> {'ok' if ok else 'VIOLATED'}")
        if not ok:
            status = EXIT_INVALID
    if status == EXIT_OK:
        spec.to_channel()
        print(f"{name}: channel valid")
    if sweep is not None:
        sweep.family(space)  # raises on a bad epsilon
        print(f"{name}: sweep valid (p={sweep.p}, {sweep.points} points)")
    return status


def cmd_norm(args) -> int:
    spec, _ = load_config(args.config)
    channel = spec.to_channel()
    p = _parse_p(args.p)
    value = norm_pp(channel, p)
    print(f"det_K = {_fmt(channel.det_K())}")
    print(f"norm_pp(p={args.p}) = {_fmt(value)}")
    return EXIT_OK


def _sweep_params(args, sweep):
    beta_start = args.beta_start if args.beta_start is not None else (sweep.beta_start if sweep else 1e-1)
    beta_stop = args.beta_stop if args.beta_stop is not None else (sweep.beta_stop if sweep else 1e-5)
    points = args.points if args.points is not None else (sweep.points if sweep else 17)
    if not (beta_start > beta_stop > 0.0) or points < 3:
        raise ConfigError("need beta_start > beta_stop > 0 and points >= 3")
    return np.geomspace(beta_start, beta_stop, points)


def cmd_converge(args) -> int:
    spec, sweep = load_config(args.config)
    channel = spec.to_channel()
    space = spec.space()
    p = _parse_p(args.p) if args.p is not None else (sweep.p if sweep else 2.0)
    if math.isinf(p):
        raise ConfigError("converge requires finite p")
    betas = _sweep_params(args, sweep)
    family = sweep.family(space) if sweep is not None else GibbsFamily(space, np.eye(space.dim))
    report = ratio_sequence(channel, family, p, betas)
    lines = [CSV_HEADER]
    for beta, ratio, rel in zip(report.betas, report.ratios, report.relative_errors):
        rho = gibbs_state(family, beta)
        tr_in = tr_rho_p(rho, p)
        tr_out = ratio * tr_in
        lines.append(",".join(_fmt(v) for v in (beta, tr_in, tr_out, ratio, report.target, rel)))
    out_path = args.out or (sweep.output_path if sweep else "report.csv")
    _atomic_write(out_path, "\n".join(lines) + "\n")
    print(f"wrote {len(report.betas)} rows to {out_path} (target {_fmt(report.target)}, "
          f"final rel_error {_fmt(report.relative_errors[-1])})")
    return EXIT_OK


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".gaussnorm-", suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError as exc:
        raise ConfigError(f"cannot write report {path}: {exc}") from exc


def cmd_scaling(args) -> int:
    spec, sweep = load_config(args.config)
    space = spec.space()
    p = _parse_p(args.p) if args.p is not None else (sweep.p if sweep else 2.0)
    if math.isinf(p):
        raise ConfigError("scaling requires finite p")
    betas = _sweep_params(args, sweep)
    family = sweep.family(space) if sweep is not None else GibbsFamily(space, np.eye(space.dim))
    fit = scaling_exponent(family, p, betas)
    print(f"scaling p={p}: fitted = {_fmt(fit.slope)} expected = {_fmt(fit.expected)} "
          f"residual = {_fmt(fit.residual)}")
    q = args.q if args.q is not None else (sweep.q if sweep else None)
    if q is not None:
        channel = spec.to_channel()
        dfit = divergence_exponent(channel, family, float(q), p, betas)
        print(f"divergence q={float(q)} p={p}: fitted = {_fmt(dfit.slope)} "
              f"expected = {_fmt(dfit.expected)} verdict = {dfit.verdict}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    tau, N, p = args.tau, args.N, args.p
    n_max = args.n_max if args.n_max is not None else fock.default_n_max(N)
    space = standard_form(1)
    d = N + 0.5
    state = validate_state([0.0, 0.0], d * np.eye(2), space)
    channel = validate_channel(
        math.sqrt(tau) * np.eye(2), np.zeros(2), ((1.0 - tau) / 2.0) * np.eye(2), space
    )

    rows = []

    def add(label, closed, oracle):
        diff = abs(closed - oracle)
        rows.append((label, closed, oracle, diff, diff <= 1e-8))

    add("tr_rho_p", tr_rho_p(state, p),
        fock.doubling_check(lambda n: fock.tr_power_fock(fock.thermal_state_fock(N, n), p), n_max))

    d_out = tau * d + (1.0 - tau) / 2.0
    out_state = validate_state([0.0, 0.0], d_out * np.eye(2), space)

    def kraus_tr_power(n):
        rho = fock.thermal_state_fock(N, n)
        out = fock.apply_kraus(fock.attenuator_kraus(tau, n), rho)
        return fock.tr_power_fock(out, p)

    add("tr_rho_p after channel", tr_rho_p(out_state, p),
        fock.doubling_check(kraus_tr_power, n_max))

    def kraus_cov(n):
        rho = fock.thermal_state_fock(N, n)
        out = fock.apply_kraus(fock.attenuator_kraus(tau, n), rho)
        _, cov = fock.covariance_from_fock(out)
        return cov

    oracle_cov = fock.doubling_check(kraus_cov, n_max)
    add("output symplectic eigenvalue", d_out, math.sqrt(np.linalg.det(oracle_cov)))

    closed_cov = channel.K.T @ state.cov @ channel.K + channel.mu
    add("output covariance entries", 0.0, float(np.max(np.abs(oracle_cov - closed_cov))))

    z = (1.0, 0.0)
    add("char function at z=(1,0)", char_function(state, z),
        fock.doubling_check(
            lambda n: fock.char_function_fock(fock.thermal_state_fock(N, n), z, n), n_max
        ))
    add("power char function at z=(1,0)", power_char_function(state, p, z),
        fock.doubling_check(
            lambda n: fock.char_function_fock(
                fock.matrix_power_fock(fock.thermal_state_fock(N, n), p), z, n
            ),
            n_max,
        ))

    all_pass = True

    def show(v):
        return f"{v.real:.10g}{v.imag:+.3g}j" if isinstance(v, complex) else f"{v:.12g}"

    print(f"{'quantity':34s} {'closed form':>22s} {'oracle':>22s} {'abs diff':>12s} pass")
    for label, closed, oracle, diff, ok in rows:
        all_pass &= ok
        print(f"{label:34s} {show(closed):>22s} {show(oracle):>22s} {diff:12.3e} {'yes' if ok else 'NO'}")
    return EXIT_OK if all_pass else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaussnorm",
        description="Gaussian-channel Schatten norms: validity checks, norm formula, "
                    "convergence sweeps, scaling fits, and Fock-oracle certification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="validate channel (and sweep) specs in a config file")
    p_check.add_argument("config")
    p_check.set_defaults(func=cmd_check)

    p_norm = sub.add_parser("norm", help="print |det K|^(1/p - 1)")
    p_norm.add_argument("config")
    p_norm.add_argument("--p", default="2", help="exponent in [1, inf]; accepts 'inf'")
    p_norm.set_defaults(func=cmd_norm)

    p_conv = sub.add_parser("converge", help="beta sweep of Tr Phi[rho]^p / Tr rho^p, CSV output")
    p_conv.add_argument("config")
    p_conv.add_argument("--p", default=None)
    p_conv.add_argument("--beta-start", type=float, default=None)
    p_conv.add_argument("--beta-stop", type=float, default=None)
    p_conv.add_argument("--points", type=int, default=None)
    p_conv.add_argument("--out", default=None)
    p_conv.set_defaults(func=cmd_converge)

    p_scal = sub.add_parser("scaling", help="fit ||rho_beta||_p scaling exponents")
    p_scal.add_argument("config")
    p_scal.add_argument("--p", default=None)
    p_scal.add_argument("--q", type=float, default=None)
    p_scal.add_argument("--beta-start", type=float, default=None)
    p_scal.add_argument("--beta-stop", type=float, default=None)
    p_scal.add_argument("--points", type=int, default=None)
    p_scal.set_defaults(func=cmd_scaling)

    p_orac = sub.add_parser("oracle", help="closed form vs truncated Fock oracle, pass/fail table")
    p_orac.add_argument("--tau", type=float, default=0.5)
    p_orac.add_argument("--N", type=float, default=1.0)
    p_orac.add_argument("--p", type=float, default=2.0)
    p_orac.add_argument("--n-max", dest="n_max", type=int, default=None)
    p_orac.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (UncertaintyViolatedError, NotCPError) as exc:
        lam = getattr(exc, "lambda_min", None)
        if lam is not None:
            print(f"error: {exc} (lambda_min = {_fmt(lam)})", file=sys.stderr)
        else:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except GaussNormError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except np.linalg.LinAlgError as exc:
        print(f"error: linear algebra failure: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
