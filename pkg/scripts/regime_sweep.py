"""Compare the three decision rules on random information systems.

    python3 scripts/regime_sweep.py --systems 500 --agents 20 --issues 6 --seed 1

For each random system the reference loss function classifies every agent
under the quasi-order, score and closeness rules.  The script reports how
often the quasi-order rule leaves agents unclassified, how often the two
total rules agree, and the mean time per system.
"""

import argparse
import math
import random
import time
from collections import Counter

from pfconflict import PFIS, PFN, Region, Rule, classify
from pfconflict.reference import reference_loss
from pfconflict.risk import expected_loss_matrix


def random_pfn(rng: random.Random) -> PFN:
    r = math.sqrt(rng.random())
    theta = rng.uniform(0.0, math.pi / 2)
    return PFN(min(r * math.cos(theta), 1.0), min(r * math.sin(theta), 1.0))


def random_system(rng: random.Random, n: int, m: int) -> PFIS:
    return PFIS(
        tuple(f"x{i + 1}" for i in range(n)),
        tuple(f"c{j + 1}" for j in range(m)),
        tuple(tuple(random_pfn(rng) for _ in range(m)) for _ in range(n)),
    )


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--systems", type=int, default=200)
    ap.add_argument("--agents", type=int, default=20)
    ap.add_argument("--issues", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    loss = reference_loss()
    regions = {rule: Counter() for rule in Rule}
    agree = total = 0
    elapsed = 0.0
    for _ in range(args.systems):
        s = random_system(rng, args.agents, args.issues)
        t0 = time.perf_counter()
        rows = expected_loss_matrix(s, loss)
        labels = {rule: [classify(r, rule).region for r in rows] for rule in Rule}
        elapsed += time.perf_counter() - t0
        for rule, regs in labels.items():
            regions[rule].update(regs)
        agree += sum(a is b for a, b in zip(labels[Rule.SCORE], labels[Rule.CLOSENESS]))
        total += len(rows)

    print(f"{args.systems} systems x {args.agents} agents x {args.issues} issues, seed {args.seed}")
    for rule in Rule:
        shares = ", ".join(f"{reg.value} {regions[rule][reg] / total:.3f}" for reg in Region)
        print(f"  {rule.value:9s} {shares}")
    print(f"  score/closeness agreement: {agree / total:.3f}")
    print(f"  mean time per system: {elapsed / args.systems * 1e3:.3f} ms")


if __name__ == "__main__":
    main()
