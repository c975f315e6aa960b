"""Command-line front end.

Lists may be given inline as JSON literals ("[2, 1, 0]") or as paths to
JSON files ({"values": [...]}) or CSV files (one value per line).
Matrices, measures and step functions travel as JSON files in the
schemas used throughout the package.  Exit status: 0 for success or a
true verdict, 1 for a false verdict, 2 for malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .eigenlists import EigenList, check_majorization, normalize_list, reduce_to_equality
from .errors import MajorantError
from .horn import (
    HermitianMatrix,
    horn_construct,
    matrix_from_jsonable,
    matrix_to_jsonable,
)
from .measures import (
    CompactMeasure,
    StepFunction,
    from_matrix,
    majorize_measure,
    moment,
    quantile_transport,
    tail_integral,
)
from .pinching import align_step_functions, pinch_experiment
from .serialize import dumps
from .trace_class import (
    contraction_diagonal,
    projection_with_diagonal,
    realize_finite_rank,
)

MAX_MOMENT = 6
SEED_ENV = "MAJORANT_SEED"


def _load_list(source: str) -> EigenList:
    """Inline JSON list, JSON file, or CSV file (one value per line)."""
    text = source.strip()
    if text.startswith("["):
        return EigenList(np.asarray(json.loads(text), dtype=float))
    path = Path(source)
    if path.suffix.lower() == ".csv":
        values = [float(line) for line in path.read_text().splitlines() if line.strip()]
        return EigenList(np.asarray(values, dtype=float))
    data = json.loads(path.read_text())
    if isinstance(data, list):
        return EigenList(np.asarray(data, dtype=float))
    return EigenList.from_jsonable(data)


def _load_matrix(source: str) -> HermitianMatrix:
    return HermitianMatrix(matrix_from_jsonable(json.loads(Path(source).read_text())))


def _load_measure(source: str) -> CompactMeasure:
    """Measure JSON, or a matrix JSON whose spectral distribution is taken."""
    data = json.loads(Path(source).read_text())
    if isinstance(data, dict) and "entries" in data:
        return from_matrix(HermitianMatrix(matrix_from_jsonable(data)))
    return CompactMeasure.from_jsonable(data)


def _load_step(source: str) -> StepFunction:
    return StepFunction.from_jsonable(json.loads(Path(source).read_text()))


def _emit(payload: dict, out: str | None) -> None:
    text = dumps(payload)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _seed(args: argparse.Namespace) -> int:
    env = os.environ.get(SEED_ENV)
    seed = int(env) if env is not None else int(args.seed)
    if not 0 <= seed < 2**64:
        raise MajorantError("seed must fit in an unsigned 64-bit integer")
    return seed


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="majorant",
        description="Constructions and checks for spectra, diagonals and spectral distributions.",
    )
    parser.add_argument("--version", action="version", version=f"majorant {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("majorize", help="prefix-sum comparison of two lists")
    s.add_argument("--p", required=True, help="compared list (inline JSON or file)")
    s.add_argument("--lambda", dest="lam", required=True, help="dominating list")
    s.add_argument("--mode", choices=["equality", "dominance"], default="equality")
    s.add_argument("--tol", type=float, default=1e-10)

    s = sub.add_parser("reduce", help="lower a dominating list to equal totals")
    s.add_argument("--p", required=True)
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("-o", "--output")

    s = sub.add_parser("construct", help="matrix with prescribed spectrum and diagonal")
    s.add_argument("--lambda", dest="lam", required=True, help="spectrum list")
    s.add_argument("--p", required=True, help="diagonal list")
    s.add_argument("--truncate", type=int, help="zero-pad both lists to this size")
    s.add_argument("-o", "--output")

    s = sub.add_parser("contraction", help="contraction L with diag(L*AL) prescribed")
    s.add_argument("--matrix", required=True, help="positive semidefinite matrix JSON file")
    s.add_argument("--p", required=True, help="target diagonal list")
    s.add_argument("-o", "--output")

    s = sub.add_parser("projection", help="projection with prescribed diagonal")
    s.add_argument("--p", required=True, help="diagonal list, entries in [0, 1]")
    s.add_argument("--rank", type=int, required=True)
    s.add_argument("--truncate", type=int, required=True, help="matrix size N")
    s.add_argument("-o", "--output")

    s = sub.add_parser("measure", help="spectral distribution, moments and tails")
    s.add_argument("source", help="matrix JSON file or measure JSON file")
    s.add_argument("-o", "--output")

    s = sub.add_parser("majorize-measure", help="spread-order comparison of two measures")
    s.add_argument("--m", required=True, help="candidate dominated measure (file)")
    s.add_argument("--n", required=True, help="candidate dominating measure (file)")
    s.add_argument(
        "--method",
        choices=["all", "hinge", "survivor", "convex_family"],
        default="all",
    )

    s = sub.add_parser("transport", help="step-function model of a measure")
    s.add_argument("--measure", required=True, help="measure JSON file")
    s.add_argument("--cells", type=int, required=True)
    s.add_argument("-o", "--output")

    s = sub.add_parser("pinch-experiment", help="randomized compression-inequality sweep")
    s.add_argument("--n", type=int, default=20)
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0, help=f"overridden by ${SEED_ENV} when set")

    s = sub.add_parser("align", help="cell alignment of two step functions")
    s.add_argument("--f", required=True, help="step function JSON file")
    s.add_argument("--g", required=True, help="step function JSON file")
    s.add_argument("--eps", type=float, required=True)

    return parser


def _run(args: argparse.Namespace) -> int:
    if args.command == "majorize":
        report = check_majorization(_load_list(args.p), _load_list(args.lam), args.mode, args.tol)
        payload = {"mode": args.mode, "tol": args.tol, **report.to_jsonable()}
        print(dumps(payload))
        return 0 if report.holds else 1

    if args.command == "reduce":
        mu = reduce_to_equality(_load_list(args.p), _load_list(args.lam))
        _emit(mu.to_jsonable(), args.output)
        return 0

    if args.command == "construct":
        lam, p = _load_list(args.lam), _load_list(args.p)
        if args.truncate is not None:
            matrix = realize_finite_rank(lam, p, args.truncate)
        else:
            matrix = horn_construct(lam, p)
        _emit(matrix.to_jsonable(), args.output)
        return 0

    if args.command == "contraction":
        L = contraction_diagonal(_load_matrix(args.matrix), _load_list(args.p))
        _emit(matrix_to_jsonable(L), args.output)
        return 0

    if args.command == "projection":
        matrix = projection_with_diagonal(_load_list(args.p), args.rank, args.truncate)
        _emit(matrix.to_jsonable(), args.output)
        return 0

    if args.command == "measure":
        m = _load_measure(args.source)
        thresholds = [float(t) for t in m.breakpoints()]
        payload = {
            "measure": m.to_jsonable(),
            "moments": [moment(m, k) for k in range(MAX_MOMENT + 1)],
            "tails": [
                {
                    "t": t,
                    "survivor": tail_integral(m, t, "survivor"),
                    "hinge": tail_integral(m, t, "hinge"),
                }
                for t in thresholds
            ],
        }
        _emit(payload, args.output)
        return 0

    if args.command == "majorize-measure":
        m, n = _load_measure(args.m), _load_measure(args.n)
        methods = (
            ["hinge", "survivor", "convex_family"] if args.method == "all" else [args.method]
        )
        verdicts = {name: majorize_measure(m, n, name) for name in methods}
        majorized = all(verdicts.values())
        print(dumps({"methods": verdicts, "majorized": majorized}))
        return 0 if majorized else 1

    if args.command == "transport":
        step = quantile_transport(_load_measure(args.measure), args.cells)
        _emit(step.to_jsonable(), args.output)
        return 0

    if args.command == "pinch-experiment":
        report = pinch_experiment(args.n, args.trials, _seed(args))
        print(dumps(report))
        return 0 if report["holds"] else 1

    if args.command == "align":
        perm, achieved = align_step_functions(_load_step(args.f), _load_step(args.g), args.eps)
        print(dumps({"permutation": list(perm), "achieved": achieved, "bound": 2.0 * args.eps}))
        return 0

    raise AssertionError(f"unhandled command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except MajorantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (json.JSONDecodeError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
