"""Command line: analyze, scan, evaluate, fibers, generate."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .brauer import BrauerReport, brauer_group, fiber_scan, report_to_json
from .fixtures import NAMED
from .generator import GenSpec, generate
from .localarith import Place, bm_scan, evaluate_rational, fiber_bad_places, fiber_local_solvability
from .localarith.evaluation import INCONCLUSIVE, Indeterminate
from .pencil import MalformedInput, Pencil, SingularSurface

EXIT_OK = 0
EXIT_MALFORMED = 2
EXIT_SINGULAR = 3
EXIT_EXHAUSTED = 4
EXIT_INCONCLUSIVE = 5

DEFAULT_FIBER_TS = "0,1,-1,2,1/2"


@dataclass(frozen=True)
class AnalysisRequest:
    pencil: Pencil
    height_bound: int = 50
    prime_bound: int = 200
    precision: int = 6
    emit: str = "json"
    seed: int = 0

    def __post_init__(self):
        if min(self.height_bound, self.prime_bound, self.precision) < 1:
            raise MalformedInput("bounds must be positive")
        if self.emit not in ("json", "text"):
            raise MalformedInput("emit must be json or text")


class Exhausted(RuntimeError):
    pass


def load_pencil(src: str) -> Pencil:
    """A path, '-' for stdin, or '@example' / '@bsd'."""
    if src.startswith("@"):
        name = src[1:]
        if name not in NAMED:
            raise MalformedInput(f"unknown fixture {src!r}; known: {', '.join('@' + k for k in NAMED)}")
        return NAMED[name]()
    try:
        text = sys.stdin.read() if src == "-" else open(src, encoding="utf-8").read()
    except OSError as exc:
        raise MalformedInput(str(exc)) from exc
    return Pencil.from_json(text)


def parse_vector(s: str) -> list[Fraction]:
    try:
        v = [Fraction(c.strip()) for c in s.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"bad point {s!r}") from exc
    if len(v) != 5:
        raise MalformedInput("a point needs five coordinates")
    return v


def parse_ts(s: str) -> list[Fraction | None]:
    out = []
    for c in s.split(","):
        c = c.strip()
        try:
            out.append(None if c in ("inf", "∞") else Fraction(c))
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"bad fiber parameter {c!r}") from exc
    return out


def _analyze(req: AnalysisRequest, hints=()) -> BrauerReport:
    return brauer_group(req.pencil, height_bound=req.height_bound, hints=hints)


def analyze(req: AnalysisRequest, hints=()) -> dict:
    rep = _analyze(req, hints)
    out = report_to_json(rep)
    if rep.order > 1 and not rep.generators:
        raise Exhausted(json.dumps(out))
    return out


def scan(req: AnalysisRequest, samples: int = 20, places: int = 12, hints=()) -> tuple[dict, bool]:
    rep = _analyze(req, hints)
    res = bm_scan(req.pencil, rep, place_budget=places, sample_budget=samples, precision=req.precision,
                  seed=req.seed, prime_bound=req.prime_bound)
    return res.to_json(), res.verdict == INCONCLUSIVE


def evaluate_point(req: AnalysisRequest, point: list[Fraction], place: Place, hints=()) -> dict:
    if not req.pencil.contains(point):
        raise MalformedInput("the point does not lie on X")
    rep = _analyze(req, list(hints) + [point])
    vals = []
    for g in rep.generators:
        try:
            vals.append(str(evaluate_rational(g, point, place)))
        except Indeterminate:
            vals.append(None)
    return {"place": str(place), "point": [str(c) for c in point], "order": rep.order,
            "generators": [g.pretty() for g in rep.generators], "invariants": vals}


def fibers(req: AnalysisRequest, ts: list, hints=(), node_budget: int = 50_000) -> dict:
    rep = _analyze(req, hints)
    if not rep.fibrations:
        raise Exhausted("no vertical fibration available for this surface")
    fib = rep.fibrations[0]
    rows = []
    for diag in fiber_scan(req.pencil, fib, ts):
        row = diag.to_json()
        if diag.smooth:
            checks = []
            for v in fiber_bad_places(req.pencil, fib, diag.t):
                if not v.is_real and v.p > req.prime_bound:
                    continue
                checks.append(fiber_local_solvability(req.pencil, fib, diag.t, v, req.precision + 2,
                                                      node_budget).to_json())
            row["local_solvability"] = checks
            row["insolvable_at"] = [c["place"] for c in checks if c["solvable"] is False]
        rows.append(row)
    return {"fibration": fib.to_json(), "display": fib.pretty(), "fibers": rows}


def to_text(obj, prefix: str = "") -> str:
    """Flat key: value lines carrying the same content as the JSON output."""
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            key = f"{prefix}.{k}" if prefix else str(k)
            if isinstance(v, (dict, list)) and v:
                lines.append(to_text(v, key))
            else:
                lines.append(f"{key}: {json.dumps(v, ensure_ascii=False)}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            key = f"{prefix}[{i}]"
            if isinstance(v, (dict, list)) and v:
                lines.append(to_text(v, key))
            else:
                lines.append(f"{key}: {json.dumps(v, ensure_ascii=False)}")
    else:
        lines.append(f"{prefix}: {json.dumps(obj, ensure_ascii=False)}")
    return "\n".join(lines)


def emit(obj, how: str) -> str:
    if how == "text":
        return to_text(obj)
    return json.dumps(obj, indent=2, ensure_ascii=False)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dp4brauer", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, scan_opts=False):
        p.add_argument("pencil", help="pencil JSON file, '-' for stdin, or @example / @bsd")
        p.add_argument("--emit", choices=["json", "text"], default="json")
        p.add_argument("--height-bound", type=int, default=50)
        p.add_argument("--prime-bound", type=int, default=200)
        p.add_argument("--precision", type=int, default=6)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--hint", action="append", default=[], help="a known rational point of X, x0,...,x4")

    common(sub.add_parser("analyze", help="Brauer group modulo constants with generators"))
    p = sub.add_parser("scan", help="sampled Brauer-Manin scan")
    common(p)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--places", type=int, default=12)
    p = sub.add_parser("evaluate", help="local invariants at a rational point of X")
    common(p)
    p.add_argument("--point", required=True)
    p.add_argument("--place", required=True, help="a prime or 'inf'")
    p = sub.add_parser("fibers", help="local solvability of fibres of the vertical fibration")
    common(p)
    p.add_argument("--t", default=DEFAULT_FIBER_TS, help="comma separated parameters, 'inf' allowed")
    p = sub.add_parser("generate", help="seeded test surfaces")
    p.add_argument("--kind", choices=["block23", "bsd_type", "planted_point", "random"], default="random")
    p.add_argument("--bound", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--target-order", type=int, choices=[1, 2, 4], default=None)
    p.add_argument("--emit", choices=["json", "text"], default="json")
    return ap


def run(args) -> tuple[object, int]:
    if args.cmd == "generate":
        out = []
        for k in range(args.count):
            spec = GenSpec(args.kind, args.bound, args.seed + k, args.target_order)
            try:
                out.append(generate(spec).to_json_obj())
            except LookupError as exc:
                return {"error": str(exc), "generated": out}, EXIT_EXHAUSTED
        return (out[0] if args.count == 1 else out), EXIT_OK
    req = AnalysisRequest(load_pencil(args.pencil), args.height_bound, args.prime_bound, args.precision,
                          args.emit, args.seed)
    hints = [parse_vector(h) for h in args.hint]
    if args.cmd == "analyze":
        return analyze(req, hints), EXIT_OK
    if args.cmd == "scan":
        obj, inconclusive = scan(req, args.samples, args.places, hints)
        return obj, EXIT_INCONCLUSIVE if inconclusive else EXIT_OK
    if args.cmd == "evaluate":
        return evaluate_point(req, parse_vector(args.point), Place.parse(args.place), hints), EXIT_OK
    return fibers(req, parse_ts(args.t), hints), EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        obj, code = run(args)
    except MalformedInput as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except SingularSurface as exc:
        print(f"singular surface: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except Exhausted as exc:
        print(f"search exhausted: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    print(emit(obj, args.emit))
    return code


if __name__ == "__main__":
    sys.exit(main())
