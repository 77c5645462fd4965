"""Analyze the worked example: degeneracy data, generator, fibration and a BM scan."""

import argparse
import json

from dp4brauer.brauer import brauer_group, report_to_json
from dp4brauer.fixtures import EXAMPLE_POINT, example_pencil
from dp4brauer.localarith import bm_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--no-hint", action="store_true", help="let the pipeline choose its own rational point")
    ap.add_argument("--samples", type=int, default=20)
    args = ap.parse_args()
    p = example_pencil()
    rep = brauer_group(p, hints=[] if args.no_hint else [EXAMPLE_POINT])
    out = report_to_json(rep)
    print("char form:", out["char_form_hessian_factored"])
    print("order:", rep.order)
    for g in rep.generators:
        print("generator:", g.pretty())
    for f in rep.fibrations:
        print("fibration:", f.pretty(), "|", f.note)
    scan = bm_scan(p, rep, sample_budget=args.samples)
    print(json.dumps(scan.to_json(), indent=2, ensure_ascii=False))


if __name__ == "__main__":
    main()
