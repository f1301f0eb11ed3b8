#!/usr/bin/env python3
"""Scaling experiment: fitted exponents of ||rho_beta||_p and the q < p blow-up.

For a grid of (s, p) pairs this fits the exponent of ||rho_beta||_p ~
beta^(s (p-1)/p), then demonstrates the unbounded q < p ratio through the
divergence fit for a chosen channel.
"""

import argparse
import math

import numpy as np

from gaussnorm import (
    GibbsFamily,
    divergence_exponent,
    scaling_exponent,
    standard_form,
    validate_channel,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tau", type=float, default=0.5)
    parser.add_argument("--q", type=float, default=1.0)
    parser.add_argument("--p", type=float, default=2.0)
    parser.add_argument("--beta-start", type=float, default=1e-1)
    parser.add_argument("--beta-stop", type=float, default=1e-5)
    parser.add_argument("--points", type=int, default=17)
    args = parser.parse_args()

    betas = np.geomspace(args.beta_start, args.beta_stop, args.points)

    print(f"{'s':>3s} {'p':>5s} {'fitted':>10s} {'expected':>10s} {'residual':>10s}")
    for s in (1, 2, 3):
        for p in (1.5, 2.0, 3.0):
            family = GibbsFamily(standard_form(s), np.eye(2 * s))
            fit = scaling_exponent(family, p, betas)
            print(f"{s:3d} {p:5.2f} {fit.slope:10.6f} {fit.expected:10.6f} {fit.residual:10.2e}")

    space = standard_form(1)
    channel = validate_channel(
        math.sqrt(args.tau) * np.eye(2),
        np.zeros(2),
        ((1.0 - args.tau) / 2.0) * np.eye(2),
        space,
    )
    family = GibbsFamily(space, np.eye(2))
    dfit = divergence_exponent(channel, family, args.q, args.p, betas)
    print(f"\nattenuator tau={args.tau}: ||Phi[rho]||_{args.q} / ||rho||_{args.p} "
          f"slope {dfit.slope:.6f} (expected {dfit.expected:.6f}) -> {dfit.verdict}")


if __name__ == "__main__":
    main()
