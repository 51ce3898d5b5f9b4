"""Survey random toric Q-Fano fans: semistability, delta(-K), alpha(-K) and the volume-bound slack.

    python3 scripts/fano_survey.py --count 20 --rank 2 --seed 1
"""

import argparse
import random

from toric_thresholds.io import decimal12
from toric_thresholds.kstability import kstability_report
from toric_thresholds.samples import random_fano_fan


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--symmetric-every", type=int, default=4,
                   help="every k-th fan is built from a centrally symmetric normal set")
    args = p.parse_args(argv)

    rng = random.Random(args.seed)
    print(f"{'#':>3} {'rays':>5} {'semistable':>10} {'delta':>12} {'alpha':>12} {'min bound slack':>16}")
    semi = 0
    for i in range(args.count):
        sym = args.symmetric_every > 0 and i % args.symmetric_every == 0
        fan = random_fano_fan(rng, args.rank, symmetric=sym, nrays=3 if sym else 6)
        rep = kstability_report(fan)
        semi += rep.k_semistable
        slack = min(ch.rhs - ch.lhs for ch in rep.theorem_d_checks)
        print(f"{i:>3} {fan.n_rays:>5} {str(rep.k_semistable):>10} {str(rep.delta):>12} "
              f"{str(rep.alpha):>12} {decimal12(slack):>16}")
    print(f"{semi}/{args.count} K-semistable")


if __name__ == "__main__":
    main()
