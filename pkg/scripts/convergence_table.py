"""Print m, S_m, m|S_m - S|, toric delta_m and m|delta_m - delta| for one divisor.

    python3 scripts/convergence_table.py inputs/p112_antiK.json --v 1,0 --m-max 40
"""

import argparse

from toric_thresholds.cli import load_checked
from toric_thresholds.invariants import S_of, Sm_of
from toric_thresholds.io import decimal12, parse_rational
from toric_thresholds.thresholds import delta, toric_delta_m


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("input")
    p.add_argument("--v", required=True, help="valuation, comma-separated rationals")
    p.add_argument("--m-max", type=int, default=30)
    p.add_argument("--step", type=int, default=5)
    args = p.parse_args(argv)

    D = load_checked(args.input).divisor.require_ample()
    v = tuple(parse_rational(x) for x in args.v.split(","))
    S, d = S_of(D, v), delta(D).value
    print(f"S = {S}   delta = {d}")
    print(f"{'m':>4} {'S_m':>16} {'m|S_m-S|':>16} {'delta_m':>16} {'m|delta_m-delta|':>18}")
    for m in range(1, args.m_max + 1, args.step):
        sm, dm = Sm_of(D, v, m), toric_delta_m(D, m)
        print(f"{m:>4} {decimal12(sm):>16} {decimal12(m * abs(sm - S)):>16} "
              f"{decimal12(dm):>16} {decimal12(m * abs(dm - d)):>18}")


if __name__ == "__main__":
    main()
