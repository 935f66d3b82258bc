"""``had`` command-line front end.

Exit status: 0 when the outcome is the hoped-for one (MATCH, counts hold,
binomial search result as ``--expect``ed), 1 on DEFECT / EMPTY / mismatch,
2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from . import __version__
from .binomial import Found, binomial_containment
from .catalogue import VarietySpec, catalogue_names, catalogue_text, load_spec
from .counts import i4_parameter_counts
from .errors import EmptyProduct, HadamardError
from .exactmath import random_prime
from .hadamard import (
    DimensionReport,
    TwistConfig,
    TWIST_MODES,
    hadamard_param_product,
    hadamard_power,
    multi_dim,
    twist_experiment,
)
from .oracle import in_window, point_count_dim
from .randomness import label, stream
from .report import make_report, write
from .variety import draw_point

log = logging.getLogger("hadamard_dims")


def _prime_bits(text: str) -> int:
    bits = int(text)
    if not 3 <= bits <= 62:
        raise argparse.ArgumentTypeError("must lie in [3, 62]")
    return bits


def _global_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--prime-bits", type=_prime_bits, default=62)
    common.add_argument("--trials", type=int, default=8)
    common.add_argument("--json", metavar="PATH", default=None, help="write a JSON report here")
    common.add_argument("--q", type=int, default=101, help="small prime for point counts")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("-v", "--verbose", action="store_true")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    parser = argparse.ArgumentParser(prog="had", description="Dimensions of Hadamard products over prime fields")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    cmd = sub.add_parser("dim", parents=[common], help="dimension of X * Y")
    cmd.add_argument("varieties", nargs=2, metavar="VARIETY")

    cmd = sub.add_parser("multi", parents=[common], help="dimension of X_1 * ... * X_k")
    cmd.add_argument("varieties", nargs="+", metavar="VARIETY")

    cmd = sub.add_parser("twist", parents=[common], help="twisted products g_1(X_1) * ... * X_k")
    cmd.add_argument("varieties", nargs="+", metavar="VARIETY")
    cmd.add_argument("--mode", choices=TWIST_MODES, default="fix_last")

    cmd = sub.add_parser("power", parents=[common], help="Hadamard power Y^k")
    cmd.add_argument("variety", metavar="VARIETY")
    cmd.add_argument("--k", type=int, default=2)

    cmd = sub.add_parser("binomial", parents=[common], help="search binomial hypersurfaces containing Y")
    cmd.add_argument("variety", metavar="VARIETY")
    cmd.add_argument("--max-degree", type=int, default=3)
    cmd.add_argument("--samples", type=int, default=None)
    cmd.add_argument("--expect", choices=("found", "none"), default="found")

    cmd = sub.add_parser("counts", parents=[common], help="parameter counts for surfaces X * Y in P^3")
    cmd.add_argument("--d", type=int, nargs="+", default=[4])

    cmd = sub.add_parser("sample", parents=[common], help="random points of a variety")
    cmd.add_argument("variety", metavar="VARIETY")
    cmd.add_argument("--count", type=int, default=4)

    cmd = sub.add_parser("oracle", parents=[common], help="point count of a parametrized product over F_q")
    cmd.add_argument("varieties", nargs="+", metavar="VARIETY")

    cmd = sub.add_parser("catalogue", parents=[common], help="list or show shipped varieties")
    cmd.add_argument("name", nargs="?")
    return parser


def _inputs(refs: Sequence[str]) -> tuple[list[VarietySpec], list[dict]]:
    specs = [load_spec(r) for r in refs]
    meta = [{"ref": r, "name": s.name, "text": s.to_text()} for r, s in zip(refs, specs)]
    return specs, meta


def _dimension_table(r: DimensionReport) -> list[str]:
    lines = [
        f"{'product':<40} {'n':>3} {'dims':>10} {'expected':>9} {'observed':>9}  verdict",
        f"{' * '.join(r.names):<40} {r.n:>3} {','.join(map(str, r.dims)):>10} "
        f"{r.expected:>9} {r.observed:>9}  {r.verdict}",
    ]
    if r.note:
        lines.append(f"note: {r.note}")
    if len(r.primes) > 1:
        lines.append(f"re-checked under {len(r.primes)} primes")
    return lines


def _dimension(args, p: int) -> tuple[str, dict, list[dict], list[str]]:
    specs, _ = _inputs(args.varieties if hasattr(args, "varieties") else [args.variety])
    built = [s.build(p) for s in specs]
    try:
        if args.command == "power":
            r = hadamard_power(built[0], args.k, args.trials, args.seed, threads=args.threads)
        else:
            r = multi_dim(built, args.trials, args.seed, threads=args.threads)
    except EmptyProduct as exc:
        r = exc.report
    d = r.to_dict()
    trials = d.pop("trials")
    return r.verdict, d, trials, _dimension_table(r)


def _twist(args, p: int):
    specs, _ = _inputs(args.varieties)

    cfg = TwistConfig(args.mode, args.trials, args.seed)
    result = twist_experiment([s.build(p) for s in specs], cfg)
    trials, rows = [], [f"{'twist':>5} {'expected':>9} {'observed':>9}  verdict"]
    for t, r in enumerate(result.reports):
        rows.append(f"{t:>5} {r.expected:>9} {r.observed:>9}  {r.verdict}")
        for rec in r.trials:
            trials.append({**rec.to_dict(), "twist": t})
    rows.append(f"{args.mode}: {result.summary}")
    verdicts = [r.verdict for r in result.reports]
    if all(v == "MATCH" for v in verdicts):
        verdict = "MATCH"
    elif all(v == "EMPTY" for v in verdicts):
        verdict = "EMPTY"
    else:
        worst = max(r.defect for r in result.reports if r.verdict != "EMPTY")
        verdict = "MATCH" if worst == 0 else f"DEFECT({worst})"
    res = {
        "mode": args.mode,
        "successes": result.successes,
        "twists": len(result.reports),
        "per_twist": [{"expected": r.expected, "observed": r.observed, "verdict": r.verdict} for r in result.reports],
    }
    return verdict, res, trials, rows


def _binomial(args, p: int):
    (spec,), _ = _inputs([args.variety])
    X = spec.build(p)
    out = binomial_containment(X, args.max_degree, args.samples, args.seed)
    if isinstance(out, Found):
        w = out.witness
        res = {"found": True, "a": list(w.a), "b": list(w.b), "lambda": w.lam, "form": w.form(), "samples": out.samples}
        verdict, line = "FOUND", f"Found {w.form()}"
    else:
        res = {"found": False, "max_degree": out.degree, "samples": out.samples}
        verdict, line = "NOT_FOUND", f"NotFoundUpTo({out.degree})"
    return verdict, res, [], [f"{spec.name}: {line}"]


def _sample(args, p: int):
    (spec,), _ = _inputs([args.variety])
    X = spec.build(p)
    rng = stream(args.seed, label("cli_sample"))
    pts = [draw_point(X, rng)[0] for _ in range(args.count)]
    return "OK", {"points": [list(pt.coords) for pt in pts]}, [], [str(pt) for pt in pts]


def _oracle(args):
    specs, _ = _inputs(args.varieties)
    built = [s.build(args.q) for s in specs]
    X = built[0]
    for Y in built[1:]:
        X = hadamard_param_product(X, Y, args.seed)
    count, dim = point_count_dim(X, args.q)
    ok = dim >= 0 and in_window(count, args.q, dim)
    res = {"q": args.q, "count": count, "dim_estimate": dim, "in_window": ok}
    rows = [f"{'product':<40} {'q':>5} {'count':>10} {'dim':>4}", f"{X.name:<40} {args.q:>5} {count:>10} {dim:>4}"]
    return ("EMPTY" if count == 0 else "OK"), res, [], rows


def _catalogue(args):
    if args.name:
        text = catalogue_text(args.name)
        return "OK", {"name": args.name, "text": text}, [], [text.rstrip("\n")]
    rows, entries = [], []
    for name in catalogue_names():
        spec = load_spec("catalogue:" + name)
        entries.append({"name": name, "kind": spec.kind, "n": spec.n})
        rows.append(f"{name:<24} {spec.kind:<9} P^{spec.n}")
    return "OK", {"entries": entries}, [], rows


_EXIT = {"MATCH": 0, "HOLDS": 0, "OK": 0, "FAILS": 1, "EMPTY": 1}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        p = random_prime(args.prime_bits, args.seed)
        refs = getattr(args, "varieties", None) or ([args.variety] if getattr(args, "variety", None) else [])
        _, inputs = _inputs(refs)
        if args.command in ("dim", "multi", "power"):
            verdict, res, trials, rows = _dimension(args, p)
        elif args.command == "twist":
            verdict, res, trials, rows = _twist(args, p)
        elif args.command == "binomial":
            verdict, res, trials, rows = _binomial(args, p)
        elif args.command == "counts":
            reports = [i4_parameter_counts(d) for d in args.d]
            verdict = "HOLDS" if all(r.holds for r in reports) else "FAILS"
            res, trials = {"counts": [r.to_dict() for r in reports]}, []
            rows = [r.summary for r in reports]
        elif args.command == "sample":
            verdict, res, trials, rows = _sample(args, p)
        elif args.command == "oracle":
            verdict, res, trials, rows = _oracle(args)
        else:
            verdict, res, trials, rows = _catalogue(args)
    except (HadamardError, ValueError) as exc:
        print(f"had: error: {exc}", file=sys.stderr)
        return 2
    for row in rows:
        print(row)
    if args.json:
        write(make_report(args.command, args.seed, p, args.prime_bits, inputs, verdict, res, trials), args.json)
    if args.command == "binomial":
        return 0 if (verdict == "FOUND") == (args.expect == "found") else 1
    return _EXIT.get(verdict, 1)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
