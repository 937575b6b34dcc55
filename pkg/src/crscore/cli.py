"""Command-line front end.

Exit status is 0 on success, 1 on a domain or validation failure, and 2 on
I/O or parse failure. Reports go to stdout as JSON with ``"inf"`` standing in
for infinity; identical inputs give byte-identical reports.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__, formats
from .core import TimeGrid, joint_pmf
from .errors import CRScoreError, FormatError
from .propriety import check_propriety, dirichlet_candidates, expected_score, kl_divergence
from .score import mean_score, observation_scores
from .sim import aalen_johansen, simulate

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_IO = 2


def _emit(doc: dict):
    sys.stdout.write(formats.format_report(doc))


def _error_text(exc: BaseException) -> str:
    return f"{type(exc).__name__}: {exc}"


def cmd_validate(args) -> int:
    records = []
    status = EXIT_OK
    for path in args.paths:
        record = {"path": path, "kind": None, "valid": False, "error": None}
        try:
            kind = formats.file_kind(path)
            record["kind"] = kind
            if kind == "distribution":
                formats.read_distribution(path)
            elif kind == "censoring":
                formats.read_censoring(path)
            else:
                raw = formats.read_observations(path)
                if args.t_max is not None and args.causes is not None:
                    raw.bind(TimeGrid(args.t_max), args.causes)
            record["valid"] = True
        except (OSError, FormatError) as exc:
            record["error"] = _error_text(exc)
            status = EXIT_IO
        except CRScoreError as exc:
            record["error"] = _error_text(exc)
            status = max(status, EXIT_DOMAIN)
        if record["error"]:
            print(f"{path}: {record['error']}", file=sys.stderr)
        records.append(record)
    _emit({"command": "validate", "files": records, "valid": status == EXIT_OK})
    return status


def cmd_score(args) -> int:
    model = formats.read_distribution(args.model)
    data = formats.read_observations(args.data).bind(model.grid, model.num_causes)
    doc = {
        "command": "score",
        "model": model.name,
        "n": len(data),
        "clamp": args.clamp,
        "mean_score": mean_score(data, model, clamp=args.clamp),
    }
    if args.per_observation:
        doc["per_observation"] = observation_scores(data, model, clamp=args.clamp).tolist()
    _emit(doc)
    return EXIT_OK


def _truth_censoring_model(args):
    truth = formats.read_distribution(args.truth)
    cens = formats.read_censoring(args.censoring)
    model = formats.read_distribution(args.model)
    return truth, cens, model


def cmd_expected_score(args) -> int:
    truth, cens, model = _truth_censoring_model(args)
    _emit({"command": "expected-score", "truth": truth.name, "model": model.name,
           "expected_score": expected_score(truth, cens, model)})
    return EXIT_OK


def cmd_kl(args) -> int:
    truth, cens, model = _truth_censoring_model(args)
    _emit({"command": "kl", "truth": truth.name, "model": model.name,
           "kl": kl_divergence(joint_pmf(truth, cens), joint_pmf(model, cens))})
    return EXIT_OK


def cmd_propriety(args) -> int:
    truth = formats.read_distribution(args.truth)
    cens = formats.read_censoring(args.censoring)
    candidates = []
    for path in args.candidates or []:
        dist = formats.read_distribution(path)
        candidates.append(dist if dist.name is not None else dist.with_name(Path(path).stem))
    if args.random:
        candidates.extend(dirichlet_candidates(truth, args.random, args.seed))
    if not candidates:
        raise CRScoreError("no candidates: pass --candidates FILE... and/or --random N")
    report = check_propriety(truth, cens, candidates)
    _emit({
        "command": "propriety",
        "truth": truth.name,
        "candidates": [
            {"name": r.name, "score_gap": r.score_gap, "kl": r.kl,
             "identity_residual": r.identity_residual, "pi_equal": r.pi_equal, "ok": r.ok}
            for r in report
        ],
        "verdict": report.verdict,
    })
    return EXIT_OK if report.verdict else EXIT_DOMAIN


def cmd_simulate(args) -> int:
    truth = formats.read_distribution(args.truth)
    cens = formats.read_censoring(args.censoring)
    data = simulate(truth, cens, args.n, args.seed)
    formats.write_observations(args.out, data, wide=args.wide)
    if args.out != "-":
        _emit({"command": "simulate", "n": len(data), "seed": args.seed})
    return EXIT_OK


def cmd_estimate(args) -> int:
    data = formats.read_observations(args.data).bind(TimeGrid(args.t_max), args.causes)
    formats.write_distribution(args.out, aalen_johansen(data, name=args.name))
    if args.out != "-":
        _emit({"command": "estimate", "n": len(data)})
    return EXIT_OK


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must lie in [0, 2**64)")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crscore",
        description="Score discrete-time competing-risks forecasts against censored data.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check distribution, censoring and observation files")
    p.add_argument("paths", nargs="+")
    p.add_argument("--t-max", type=_positive_int, help="grid to check observation files against")
    p.add_argument("--causes", type=_positive_int, help="cause count to check observation files against")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("score", help="mean log score of a model on observed data")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--per-observation", action="store_true")
    p.add_argument("--clamp", type=float, metavar="EPS",
                   help="floor forecast probabilities at EPS (gives up propriety)")
    p.set_defaults(func=cmd_score)

    for name, func, helptext in (
        ("expected-score", cmd_expected_score, "exact expected score of a model under truth and censoring"),
        ("kl", cmd_kl, "KL divergence between the observable outcome distributions"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--truth", required=True)
        p.add_argument("--censoring", required=True)
        p.add_argument("--model", required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("propriety", help="check that no candidate beats the truth")
    p.add_argument("--truth", required=True)
    p.add_argument("--censoring", required=True)
    p.add_argument("--candidates", nargs="+", metavar="FILE")
    p.add_argument("--random", type=_positive_int, metavar="N", help="add N random perturbations of the truth")
    p.add_argument("--seed", type=_seed, default=0)
    p.set_defaults(func=cmd_propriety)

    p = sub.add_parser("simulate", help="draw censored observations from truth and censoring")
    p.add_argument("--truth", required=True)
    p.add_argument("--censoring", required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--out", required=True, help="output CSV, or - for stdout")
    p.add_argument("--wide", action="store_true", help="write y,delta_1,...,delta_M columns")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("estimate", help="Aalen-Johansen estimate from observed data")
    p.add_argument("--data", required=True)
    p.add_argument("--t-max", type=_positive_int, required=True)
    p.add_argument("--causes", type=_positive_int, required=True)
    p.add_argument("--out", required=True, help="output JSON, or - for stdout")
    p.add_argument("--name")
    p.set_defaults(func=cmd_estimate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, FormatError) as exc:
        print(f"crscore {args.command}: {_error_text(exc)}", file=sys.stderr)
        return EXIT_IO
    except CRScoreError as exc:
        print(f"crscore {args.command}: {_error_text(exc)}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
