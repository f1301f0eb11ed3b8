#!/usr/bin/env python3
"""Convergence experiment: Tr Phi[rho_beta]^p / Tr rho_beta^p for the attenuator.

Sweeps a geometric beta grid for a single-mode attenuation channel and a
Gibbs family with identity Hamiltonian matrix, printing the per-beta ratios
against the target |det K|^(1-p) and optionally writing the CSV report.
"""

import argparse
import math

import numpy as np

from gaussnorm import GibbsFamily, ratio_sequence, standard_form, validate_channel


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tau", type=float, default=0.5, help="transmissivity in (0, 1]")
    parser.add_argument("--p", type=float, default=2.0)
    parser.add_argument("--beta-start", type=float, default=1e-1)
    parser.add_argument("--beta-stop", type=float, default=1e-5)
    parser.add_argument("--points", type=int, default=17)
    parser.add_argument("--out", default=None, help="optional CSV path")
    args = parser.parse_args()

    space = standard_form(1)
    channel = validate_channel(
        math.sqrt(args.tau) * np.eye(2),
        np.zeros(2),
        ((1.0 - args.tau) / 2.0) * np.eye(2),
        space,
    )
    family = GibbsFamily(space, np.eye(2))
    betas = np.geomspace(args.beta_start, args.beta_stop, args.points)
    report = ratio_sequence(channel, family, args.p, betas)

    print(f"attenuator tau={args.tau}, p={args.p}, target |det K|^(1-p) = {report.target:.12g}")
    print(f"{'beta':>12s} {'ratio':>20s} {'rel_error':>12s}")
    for beta, ratio, rel in zip(report.betas, report.ratios, report.relative_errors):
        print(f"{beta:12.4e} {ratio:20.15f} {rel:12.4e}")
    if report.fitted_exponents is not None:
        si, so = report.fitted_exponents
        print(f"log-log slopes of Tr rho^p: input {si:.6f}, output {so:.6f}")

    if args.out:
        lines = ["beta,tr_in,tr_out,ratio,target,rel_error"]
        from gaussnorm import gibbs_state, tr_rho_p

        for beta, ratio, rel in zip(report.betas, report.ratios, report.relative_errors):
            tr_in = tr_rho_p(gibbs_state(family, beta), args.p)
            lines.append(",".join(
                f"{v:.17g}" for v in (beta, tr_in, ratio * tr_in, ratio, report.target, rel)
            ))
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
        print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
