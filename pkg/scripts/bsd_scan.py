"""BM scan and fibre diagnostics for the Birch--Swinnerton-Dyer surface."""

import argparse
from fractions import Fraction

from dp4brauer.brauer import brauer_group
from dp4brauer.fixtures import bsd_pencil
from dp4brauer.localarith import REAL, Place, bm_scan, fiber_local_solvability


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=12)
    ap.add_argument("--height", type=int, default=5)
    args = ap.parse_args()
    p = bsd_pencil()
    rep = brauer_group(p)
    fib = rep.fibrations[0]
    print("order:", rep.order, "generator:", rep.generators[0].pretty())
    print("fibration:", fib.pretty())
    scan = bm_scan(p, rep, sample_budget=args.samples)
    print("verdict:", scan.verdict, "combinations:", scan.combinations)
    for v, t in scan.tables[0].items():
        print(f"  {v}: {sorted(t.observed)} ({t.note})")
    ts = sorted({Fraction(a, b) for a in range(-args.height, args.height + 1) for b in range(1, args.height + 1)})
    for t in ts:
        bad = []
        for v in [REAL] + [Place(q) for q in (2, 3, 5, 7)]:
            try:
                r = fiber_local_solvability(p, fib, t, v)
            except ValueError:
                bad = ["singular"]
                break
            if r.status is False:
                bad.append(str(v))
        print(f"t = {t}: insolvable at {bad or 'none found'}")


if __name__ == "__main__":
    main()
