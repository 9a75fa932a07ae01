#!/usr/bin/env python3
"""Run the four reference scenarios end to end.

Writes per-scenario CSV time series plus the two SVG charts into an
output directory and prints the transition times next to their closed
forms.  This is the quickest way to see the whole pipeline work.
"""
import argparse
import math
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from sqbath import (
    PhotonAddedCoherent,
    PhotonAddedThermal,
    ReservoirParams,
    SqueezedCoherent,
    Thermal,
    closed_form_transition_time,
    transition_time,
)
from sqbath.cli import RunConfig, TimeGrid, cmd_evolve
from sqbath.plotting import write_figures

SCENARIOS = [
    ("thermal_to_nonclassical", Thermal(1.0), ReservoirParams(1.0, -math.sqrt(2.0))),
    ("squeezed_to_classical", SqueezedCoherent(1.0, 1.0), ReservoirParams(2.0, 1.0)),
    ("photon_added_coherent", PhotonAddedCoherent(1.0), ReservoirParams(2.0, 1.0)),
    ("photon_added_thermal", PhotonAddedThermal(1.0), ReservoirParams(2.0, 1.0)),
]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="reference_out", help="output directory")
    ap.add_argument("--stop", type=float, default=2.0, help="grid end in scaled time")
    ap.add_argument("--step", type=float, default=0.01, help="grid step in scaled time")
    args = ap.parse_args()

    os.makedirs(args.outdir, exist_ok=True)

    print(f"{'scenario':<28} {'crossing':>14} {'closed form':>14} {'|delta|':>10}")
    for name, state, res in SCENARIOS:
        cfg = RunConfig(
            state=state,
            reservoir=res,
            time_grid=TimeGrid(0.0, args.stop, args.step),
        )
        path = os.path.join(args.outdir, f"{name}.csv")
        with open(path, "w", encoding="utf-8", newline="") as fh:
            cmd_evolve(cfg, fh)

        t_num = transition_time(state, res)
        t_closed = closed_form_transition_time(state, res)
        gt_num = res.gamma * t_num
        gt_closed = res.gamma * t_closed
        print(
            f"{name:<28} {gt_num:>14.10f} {gt_closed:>14.10f} "
            f"{abs(gt_num - gt_closed):>10.2e}"
        )

    for path in write_figures(args.outdir):
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
