#!/usr/bin/env python3
"""Self-convergence study for the Fock-space oracle.

Shows how the worst moment deviation from the analytic layer shrinks as
the integrator step is halved and as the truncation dimension grows, for
one scenario. Useful when picking dim/dt for a new parameter regime.
"""
import argparse
import math
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from sqbath import PhotonAddedThermal, ReservoirParams, evolved_state_moments
from sqbath import fock_oracle


def worst_dev(state, res, t, dim, dt):
    rho = fock_oracle.integrate(fock_oracle.prepare(state, dim), res, t, dt)
    got = fock_oracle.moments_from_rho(rho)
    ref = evolved_state_moments(state, res, t)
    return max(
        abs(got[(j, k)] - ref[(j, k)]) for j in range(5) for k in range(5 - j)
    )


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--gt", type=float, default=1.0, help="scaled time to probe")
    ap.add_argument("--nbar", type=float, default=1.0)
    ap.add_argument("--N", type=float, default=2.0)
    ap.add_argument("--M", type=float, default=1.0)
    args = ap.parse_args()

    state = PhotonAddedThermal(args.nbar)
    res = ReservoirParams(args.N, args.M)
    t = args.gt / res.gamma

    print("== step-size sweep (dim 64) ==")
    print(f"{'dt':>10} {'worst |dm|':>12} {'seconds':>8}")
    for dt in (2e-3, 1e-3, 5e-4, 2.5e-4):
        t0 = time.perf_counter()
        try:
            dev = worst_dev(state, res, t, 64, dt)
        except Exception as exc:  # the drift monitor may reject coarse steps
            print(f"{dt:>10.0e} {type(exc).__name__}: {exc}")
            continue
        print(f"{dt:>10.0e} {dev:>12.3e} {time.perf_counter() - t0:>8.2f}")

    print("\n== dimension sweep (dt 1e-3) ==")
    print(f"{'dim':>10} {'worst |dm|':>12} {'seconds':>8}")
    for dim in (24, 32, 48, 64):
        t0 = time.perf_counter()
        try:
            dev = worst_dev(state, res, t, dim, 1e-3)
        except Exception as exc:  # truncation rejections land here
            print(f"{dim:>10} {type(exc).__name__}")
            continue
        print(f"{dim:>10} {dev:>12.3e} {time.perf_counter() - t0:>8.2f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
