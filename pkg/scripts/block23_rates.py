"""Acceptance rates of the block (2,3) sampler and the order of what it produces."""

import argparse
from collections import Counter

from dp4brauer.brauer import brauer_group
from dp4brauer.generator import GenSpec, sample_block23


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--bound", type=int, default=6)
    args = ap.parse_args()
    orders, attempts = Counter(), []
    for seed in range(args.count):
        g = sample_block23(GenSpec("block23", args.bound, seed))
        attempts.append(g.provenance["attempts"])
        orders[brauer_group(g.pencil).order] += 1
    print("mean attempts:", sum(attempts) / len(attempts))
    print("orders:", dict(orders))


if __name__ == "__main__":
    main()
