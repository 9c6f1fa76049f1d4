#!/usr/bin/env python3
"""
Run separation and dimension experiments on 1D self-similar sets.

Each run writes one CSV plus a <name>.manifest.json next to it.

Usage:
    python scripts/run_experiment.py wsd --symmetric 1/4 --b 1/256 --points 0,1
    python scripts/run_experiment.py scan --common-base 1/5,2,1 --b-list 1/5,1/25,1/125
    python scripts/run_experiment.py henderson --asymmetric 0.2,0.3 --common-base 1/5,2,1
    python scripts/run_experiment.py dim-compare --symmetric 1/4

Exit codes:
    0 pass or complete, 1 a verdict failed, 2 usage error,
    3 undetermined class equality, 4 enumeration budget exceeded

Environment Variables:
    FRACSEP_THREADS: Optional. Worker processes for multi-scale scans (default: 1).
    FRACSEP_BUDGET_WORDS: Optional. Word budget when --budget-words is not given.
"""
import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from attractor_geom import DEFAULT_MERGE_DEPTH, cover
from cantor import (
    BlockCoeffMatrix,
    CoeffVector,
    common_base,
    make_asymmetric,
    make_symmetric,
    rewrite_sign_uniform,
    rewrite_two_level,
)
from dimension import (
    DEFAULT_BOX_DEPTH,
    DEFAULT_BOX_STEPS,
    DEFAULT_SLACK,
    DiffBoundParams,
    assouad_estimate,
    box_counts,
    compare_box_assouad,
    default_centers,
    default_scale_pairs,
    diff_bound_check,
    fit_exponent,
    similarity_dimension,
)
from errors import BudgetExceededError, FracsepError, UsageError
from ifs_core import EXACT, FLOAT, IFS1D, Scalar, Similarity1D, make_ifs, parse_rational, to_scalar
from separation import (
    CHECKERS,
    COMPLETE,
    FAIL,
    PASS,
    UNDETERMINED,
    TestPoints,
    normalize_checker,
    run_checker,
    scan_scales,
)
from write_results import (
    FIT_HEADER,
    INTERVAL_HEADER,
    REPORT_HEADER,
    REWRITE_HEADER,
    fit_rows,
    format_cell,
    interval_rows,
    report_row,
    summary_rows,
    write_csv,
    write_manifest,
)

VERSION = "0.1.0"

COMMANDS = (
    "cover", "wsp", "wsd", "wsd-hausdorff", "scan", "dim-sim", "dim-box",
    "dim-assouad", "dim-compare", "diff-bound", "rewrite", "henderson",
)
SINGLE_SCALE = ("cover", "wsp", "wsd", "wsd-hausdorff")
NEEDS_IFS = (
    "cover", "wsp", "wsd", "wsd-hausdorff", "scan", "dim-sim", "dim-box", "dim-assouad",
    "dim-compare", "diff-bound",
)
IFS_FLAGS = ("symmetric", "asymmetric", "common_base", "maps")
HENDERSON_FLAGS = ("asymmetric", "common_base")

DEFAULT_RESULTS_DIR = Path(__file__).parent.parent / "results"

# headline contrast: irrational log-ratio pair vs the common-base family
HENDERSON_IRRATIONAL = "0.2,0.3"
HENDERSON_RATIONAL = "1/5,2,1"
HENDERSON_IRRATIONAL_SCALES = ("1/10", "1/100", "1/1000", "1/10000")
HENDERSON_RATIONAL_DEPTH = 6

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_UNDETERMINED = 3
EXIT_BUDGET = 4


def get_thread_cap() -> int:
    """Worker cap from FRACSEP_THREADS; anything unparsable means inline."""
    raw = os.environ.get("FRACSEP_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


class SpecParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class ExperimentSpec:
    command: str
    ifs_flag: Optional[str] = None
    ifs_value: Optional[str] = None
    ifs_flags: Tuple[Tuple[str, str], ...] = ()
    b: Optional[str] = None
    b_list: Tuple[str, ...] = ()
    eps_list: Tuple[str, ...] = ()
    points: Tuple[str, ...] = ()
    checker: str = "wsd"
    method: str = "ratio"
    depth: int = 0
    threshold: Optional[str] = None
    budget_words: Optional[int] = None
    budget_merge_depth: int = DEFAULT_MERGE_DEPTH
    mode: str = EXACT
    seed: int = 0
    slack: float = DEFAULT_SLACK
    relaxed: bool = False
    coeffs: Optional[str] = None
    matrix: Optional[str] = None
    base: Optional[str] = None
    out: Path = field(default=DEFAULT_RESULTS_DIR / "run.csv")

    def echo(self) -> Dict[str, Any]:
        data = asdict(self)
        data["out"] = str(self.out)
        data["ifs_flags"] = dict(self.ifs_flags)
        data["b_list"] = list(self.b_list)
        data["eps_list"] = list(self.eps_list)
        data["points"] = list(self.points)
        return data


def _split(text: Optional[str], flag: str, sep: str = ",") -> Tuple[str, ...]:
    """Split a flag value into stripped, nonempty parts."""
    if text is None:
        return ()
    parts = tuple(p.strip() for p in text.split(sep) if p.strip())
    if not parts:
        raise UsageError(f"--{flag}: empty list")
    return parts


def _rational(text: str, flag: str) -> Fraction:
    """parse_rational with errors named after the flag."""
    try:
        return parse_rational(text)
    except FracsepError as exc:
        raise UsageError(f"--{flag}: {exc}")


def build_parser() -> SpecParser:
    """The argparse parser for every subcommand."""
    parser = SpecParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("command", choices=COMMANDS)
    ifs = parser.add_argument_group("attractor")
    ifs.add_argument("--symmetric", metavar="LAMBDA", help="middle-lambda Cantor set")
    ifs.add_argument("--asymmetric", metavar="C1,C2", help="two-map Cantor set with ratios c1, c2")
    ifs.add_argument("--common-base", metavar="C,P1,P2", help="ratios c^p1, c^p2")
    ifs.add_argument("--maps", metavar="C,Q;C,Q", help="explicit maps x -> c*x + q (c < 0 reverses)")
    parser.add_argument("--relaxed", action="store_true", help="accept c^p1 < 1/4 with c^p2 < 1/3")
    parser.add_argument("--b", help="scale in (0,1)")
    parser.add_argument("--b-list", help="strictly decreasing scales")
    parser.add_argument("--eps-list", help="ball radii for dim-box")
    parser.add_argument("--points", help="test points in K (default: hull endpoints)")
    parser.add_argument("--checker", default="wsd", help=f"scan checker: {', '.join(CHECKERS)}")
    parser.add_argument("--method", default="ratio", choices=("ratio", "slope"), help="Assouad fit")
    parser.add_argument("--depth", type=int, default=0, help="cover refinement depth")
    parser.add_argument("--threshold", help="verdict threshold for eps*")
    parser.add_argument("--budget-words", type=int, help="max words per scale cut")
    parser.add_argument("--budget-merge-depth", type=int, default=DEFAULT_MERGE_DEPTH)
    parser.add_argument("--mode", default=EXACT, choices=(EXACT, FLOAT))
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--slack", type=float, default=DEFAULT_SLACK)
    parser.add_argument("--coeffs", help='coefficient vector, e.g. "[1,-2,0]"')
    parser.add_argument("--matrix", help='block matrix, e.g. "[[1,0],[-1,2]]"')
    parser.add_argument("--base", help="lambda for --coeffs")
    parser.add_argument("--out", help="output CSV path")
    return parser


def parse_spec(argv: Optional[Sequence[str]] = None) -> ExperimentSpec:
    """Parse and validate command-line arguments into an ExperimentSpec."""
    args = build_parser().parse_args(argv)
    command = args.command

    given = [name for name in IFS_FLAGS if getattr(args, name) is not None]
    if command == "henderson":
        if any(name not in HENDERSON_FLAGS for name in given):
            raise UsageError("henderson takes only --asymmetric and --common-base")
    elif len(given) > 1:
        raise UsageError("choose one of --symmetric, --asymmetric, --common-base, --maps")
    if command in NEEDS_IFS and not given:
        raise UsageError(f"{command} needs one of --symmetric, --asymmetric, --common-base, --maps")
    if command in SINGLE_SCALE and args.b is None:
        raise UsageError(f"{command} needs --b")
    if command == "scan" and args.b_list is None:
        raise UsageError("scan needs --b-list")
    if args.depth < 0:
        raise UsageError("--depth must be >= 0")
    if args.budget_words is not None and args.budget_words <= 0:
        raise UsageError("--budget-words must be positive")
    if command == "rewrite":
        if (args.coeffs is None) == (args.matrix is None):
            raise UsageError("rewrite needs exactly one of --coeffs, --matrix")
        if args.coeffs is not None and args.base is None:
            raise UsageError("--coeffs needs --base")
        if args.matrix is not None and args.common_base is None:
            raise UsageError("--matrix needs --common-base")

    spec = ExperimentSpec(
        command=command,
        ifs_flag=given[0] if len(given) == 1 else None,
        ifs_value=getattr(args, given[0]) if len(given) == 1 else None,
        ifs_flags=tuple((name, getattr(args, name)) for name in given),
        b=args.b,
        b_list=_split(args.b_list, "b-list"),
        eps_list=_split(args.eps_list, "eps-list"),
        points=_split(args.points, "points"),
        checker=args.checker,
        method=args.method,
        depth=args.depth,
        threshold=args.threshold,
        budget_words=args.budget_words,
        budget_merge_depth=args.budget_merge_depth,
        mode=args.mode,
        seed=args.seed,
        slack=args.slack,
        relaxed=args.relaxed,
        coeffs=args.coeffs,
        matrix=args.matrix,
        base=args.base,
        out=Path(args.out) if args.out else DEFAULT_RESULTS_DIR / f"{command}.csv",
    )

    # surface domain problems as usage errors naming the flag
    for value, flag in [(spec.b, "b"), (spec.threshold, "threshold"), (spec.base, "base")]:
        if value is not None:
            _rational(value, flag)
    for values, flag in [(spec.b_list, "b-list"), (spec.eps_list, "eps-list"), (spec.points, "points")]:
        for value in values:
            _rational(value, flag)
    if spec.b is not None and not 0 < _rational(spec.b, "b") < 1:
        raise UsageError("--b: scale must lie in (0,1)")
    if command == "scan":
        try:
            normalize_checker(spec.checker)
        except FracsepError as exc:
            raise UsageError(f"--checker: {exc}")
    if command == "henderson":
        henderson_series(spec)
    elif spec.ifs_flag is not None and command != "rewrite":
        build_ifs(spec)
    return spec


def _ifs_from_flag(flag: str, value: str, mode: str, relaxed: bool) -> IFS1D:
    """Build the IFS named by one attractor flag."""
    option = "--" + flag.replace("_", "-")
    try:
        if flag == "symmetric":
            return make_symmetric(_rational(value, flag), mode)
        if flag == "asymmetric":
            c1, c2 = (_rational(v, flag) for v in _split(value, flag))
            return make_asymmetric(c1, c2, mode)
        if flag == "common_base":
            params = _common_base(value, relaxed)
            return make_asymmetric(params.c1, params.c2, mode)
        maps = []
        for item in _split(value, flag, sep=";"):
            c, q = (_rational(v, flag) for v in _split(item, flag))
            if c == 0:
                raise UsageError(f"{option}: zero ratio")
            maps.append(Similarity1D(abs(c), 1 if c > 0 else -1, q))
        return make_ifs(maps, mode)
    except UsageError:
        raise
    except (FracsepError, ValueError) as exc:
        raise UsageError(f"{option}: {exc}")


def _common_base(value: str, relaxed: bool):
    """Parse "c,p1,p2" into checked common-base parameters."""
    parts = _split(value, "common-base")
    if len(parts) != 3:
        raise UsageError("--common-base: expected c,p1,p2")
    try:
        p1, p2 = int(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError("--common-base: exponents must be integers")
    try:
        return common_base(_rational(parts[0], "common-base"), p1, p2, relaxed=relaxed)
    except FracsepError as exc:
        raise UsageError(f"--common-base: {exc}")


def build_ifs(spec: ExperimentSpec) -> IFS1D:
    """The IFS named by the single attractor flag of the ExperimentSpec."""
    return _ifs_from_flag(spec.ifs_flag, spec.ifs_value, spec.mode, spec.relaxed)


def henderson_series(spec: ExperimentSpec) -> List[Tuple[str, IFS1D, List[Scalar]]]:
    """(name, ifs, scales) for both contrast series; --asymmetric/--common-base override the defaults."""
    given = dict(spec.ifs_flags)
    params = _common_base(given.get("common_base", HENDERSON_RATIONAL), spec.relaxed)
    irrational = _ifs_from_flag("asymmetric", given.get("asymmetric", HENDERSON_IRRATIONAL), FLOAT, False)
    rational = make_asymmetric(params.c1, params.c2, EXACT)
    return [
        ("irrational", irrational, _scales(HENDERSON_IRRATIONAL_SCALES)),
        ("rational", rational, [params.base ** k for k in range(1, HENDERSON_RATIONAL_DEPTH + 1)]),
    ]


def _scales(values: Sequence[str]) -> List[Fraction]:
    return [parse_rational(v) for v in values]


def _threshold(spec: ExperimentSpec) -> Optional[Fraction]:
    return parse_rational(spec.threshold) if spec.threshold is not None else None


def _points(spec: ExperimentSpec, ifs: IFS1D, b: Fraction) -> Optional[TestPoints]:
    """User test points, each required to lie in the cover one level below b."""
    if not spec.points:
        return None
    points = [to_scalar(p, ifs.mode) for p in _scales(spec.points)]
    near = cover(ifs, b * ifs.cmin, budget=spec.budget_words)
    outside = [p for p in points if not near.contains_point(p)]
    if outside:
        raise UsageError(f"--points: {', '.join(format_cell(p) for p in outside)} not in the attractor")
    return TestPoints(tuple(points))


@dataclass
class Outcome:
    header: List[str]
    rows: List[List[str]]
    verdicts: List[str] = field(default_factory=list)
    words: int = 0
    budget_error: Optional[str] = None


def _run_cover(spec: ExperimentSpec, ifs: IFS1D) -> Outcome:
    """Intervals of the scale-b cover."""
    x = cover(ifs, parse_rational(spec.b), budget=spec.budget_words)
    print(f"   ✓ {len(x)} intervals")
    return Outcome(INTERVAL_HEADER, interval_rows(x), [COMPLETE])


def _run_single(spec: ExperimentSpec, ifs: IFS1D) -> Outcome:
    """One checker at one scale."""
    b = parse_rational(spec.b)
    report = run_checker(
        spec.command, ifs, b, pts=_points(spec, ifs, b), depth=spec.depth,
        threshold=_threshold(spec), budget=spec.budget_words, merge_depth=spec.budget_merge_depth,
    )
    print(f"   ✓ {report.word_count} words, {report.class_count} classes, eps* = {format_cell(report.eps_star)}")
    return Outcome(REPORT_HEADER, [report_row(report)], [report.verdict], report.word_count)


def _run_scan(spec: ExperimentSpec, ifs: IFS1D) -> Outcome:
    """One checker over every scale of --b-list."""
    scales = _scales(spec.b_list)
    result = scan_scales(
        ifs, scales, checker=spec.checker, pts=_points(spec, ifs, min(scales)), depth=spec.depth,
        threshold=_threshold(spec), budget=spec.budget_words, merge_depth=spec.budget_merge_depth,
        max_workers=get_thread_cap(),
    )
    for report in result.reports:
        print(f"   ✓ b={format_cell(report.b)}: eps* = {format_cell(report.eps_star)} ({report.verdict})")
    return Outcome(
        REPORT_HEADER,
        [report_row(r) for r in result.reports],
        [r.verdict for r in result.reports],
        max((r.word_count for r in result.reports), default=0),
        result.budget_error,
    )


def _run_dim_sim(spec: ExperimentSpec, ifs: IFS1D) -> Outcome:
    """Similarity dimension as a one-row fit."""
    d = similarity_dimension(ifs)
    print(f"   ✓ D = {format_cell(d)}")
    return Outcome(FIT_HEADER, [["similarity", "", "", "", format_cell(d), format_cell(0.0)]], [COMPLETE])


def _run_dim_box(spec: ExperimentSpec, ifs: IFS1D) -> Outcome:
    """Box fit; defaults to the cover at cmax^12 and radii cmax^4 .. cmax^10."""
    b = parse_rational(spec.b) if spec.b else ifs.cmax ** DEFAULT_BOX_DEPTH
    eps_list = _scales(spec.eps_list) if spec.eps_list else [ifs.cmax ** j for j in DEFAULT_BOX_STEPS]
    x = cover(ifs, b, budget=spec.budget_words)
    fit = fit_exponent(box_counts(x, eps_list))
    print(f"   ✓ box exponent {fit.exponent:.6f} (residual {fit.residual:.2e})")
    return Outcome(FIT_HEADER, fit_rows(fit), [COMPLETE], len(x))


def _run_dim_assouad(spec: ExperimentSpec, ifs: IFS1D) -> Outcome:
    """Localized sup-count exponent at the default centers and scale pairs."""
    fit = assouad_estimate(
        ifs, default_centers(ifs, seed=spec.seed), default_scale_pairs(ifs),
        method=spec.method, budget=spec.budget_words,
    )
    print(f"   ✓ {fit.kind} exponent {fit.exponent:.6f}")
    return Outcome(FIT_HEADER, fit_rows(fit), [COMPLETE])


def _run_diff_bound(spec: ExperimentSpec, ifs: IFS1D) -> Outcome:
    """Fits for K and K-K, then the bound, slack, WSD floor and similarity dimension."""
    params = DiffBoundParams(seed=spec.seed, slack=spec.slack, budget=spec.budget_words)
    report = diff_bound_check(ifs, params)
    print(f"   ✓ K: {report.set_fit.exponent:.4f}  K-K: {report.diff_fit.exponent:.4f}  bound: {report.bound:.4f}")
    rows = fit_rows(report.set_fit, "K") + fit_rows(report.diff_fit, "K-K") + summary_rows([
        ("bound", report.bound),
        ("slack", report.slack),
        ("wsd_floor", report.wsd_floor),
        ("similarity_dimension", report.similarity_dimension),
    ])
    return Outcome(FIT_HEADER, rows, [report.verdict])


def _run_dim_compare(spec: ExperimentSpec, ifs: IFS1D) -> Outcome:
    """Box and Assouad fits, then gap, slack and cut-map separation."""
    report = compare_box_assouad(ifs, slack=spec.slack, method=spec.method, seed=spec.seed, budget=spec.budget_words)
    print(f"   ✓ box {report.box_fit.exponent:.4f}  assouad {report.assouad_fit.exponent:.4f}  gap {report.gap:.2e}")
    rows = fit_rows(report.box_fit) + fit_rows(report.assouad_fit) + summary_rows([
        ("gap", report.gap),
        ("slack", report.slack),
        ("wsp_gap", report.wsp_gap),
    ])
    return Outcome(FIT_HEADER, rows, [report.verdict])


def _run_rewrite(spec: ExperimentSpec) -> Outcome:
    """Rewrite --coeffs in base --base, or --matrix over the --common-base blocks."""
    try:
        if spec.coeffs is not None:
            coeffs = tuple(Fraction(a) for a in json.loads(spec.coeffs))
            original = CoeffVector(coeffs, parse_rational(spec.base))
            result = rewrite_sign_uniform(original)
            rows = [
                [str(i), format_cell(a), format_cell(r), format_cell(i in result.borrowed)]
                for i, (a, r) in enumerate(zip(original.coeffs, result.coeffs))
            ]
        else:
            params = _common_base(spec.ifs_value, spec.relaxed)
            matrix = tuple(tuple(Fraction(a) for a in row) for row in json.loads(spec.matrix))
            original = BlockCoeffMatrix(matrix, params.base, params.p1, params.p2)
            result = rewrite_two_level(original, relaxed=spec.relaxed)
            rows = []
            for i, (row, new_row) in enumerate(zip(original.rows, result.rows)):
                for j, (a, r) in enumerate(zip(row, new_row)):
                    rows.append([f"{i}.{j}", format_cell(a), format_cell(r), format_cell((i, j) in result.inner_borrowed)])
    except (ValueError, TypeError) as exc:
        raise UsageError(f"--coeffs/--matrix: {exc}")
    if original.value != result.value:
        return Outcome(REWRITE_HEADER, rows, [FAIL])
    print(f"   ✓ value {format_cell(result.value)} preserved")
    return Outcome(REWRITE_HEADER, rows, [PASS])


def _run_henderson(spec: ExperimentSpec) -> Outcome:
    """Scan both series; rows scanned before a budget error are kept."""
    header = ["series"] + REPORT_HEADER
    rows: List[List[str]] = []
    lows = []
    words = 0
    for name, ifs, scales in henderson_series(spec):
        print(f"🔍 Scanning {name} series...")
        result = scan_scales(ifs, scales, budget=spec.budget_words, max_workers=get_thread_cap())
        rows += [[name] + report_row(r) for r in result.reports]
        words = max([words] + [r.word_count for r in result.reports])
        if result.budget_error:
            return Outcome(header, rows, [r[-1] for r in rows], words, result.budget_error)
        lows.append(result.min_eps())

    low_irrational, low_rational = lows
    contrast = low_irrational is not None and low_rational is not None and low_irrational < low_rational
    rows.append(["comparison", "", "", "", format_cell(low_irrational), "", format_cell(low_rational),
                 "contrast" if contrast else "no-contrast"])
    print(f"   ✓ min eps*: irrational {format_cell(low_irrational)} vs rational {format_cell(low_rational)}")
    return Outcome(header, rows, [PASS if contrast else FAIL], words)


RUNNERS = {
    "cover": _run_cover,
    "wsp": _run_single,
    "wsd": _run_single,
    "wsd-hausdorff": _run_single,
    "scan": _run_scan,
    "dim-sim": _run_dim_sim,
    "dim-box": _run_dim_box,
    "dim-assouad": _run_dim_assouad,
    "dim-compare": _run_dim_compare,
    "diff-bound": _run_diff_bound,
}


def exit_code_for(verdicts: Sequence[str], budget_error: Optional[str] = None) -> int:
    """Budget beats fail beats undetermined."""
    if budget_error:
        return EXIT_BUDGET
    if FAIL in verdicts:
        return EXIT_FAIL
    if UNDETERMINED in verdicts:
        return EXIT_UNDETERMINED
    return EXIT_OK


def diagnostic(code: int, kind: str, detail: str) -> None:
    """The one-line stderr error record."""
    detail = detail.replace('"', "'")
    print(f'error code={code} kind={kind} detail="{detail}"', file=sys.stderr)


def run(spec: ExperimentSpec) -> int:
    """Execute a validated spec, write CSV + manifest, return the exit code."""
    start = time.perf_counter()
    flags = " ".join(f"{name}={value}" for name, value in spec.ifs_flags)
    print(f"🔍 {spec.command}: {flags or 'defaults'}")

    if spec.command == "rewrite":
        outcome = _run_rewrite(spec)
    elif spec.command == "henderson":
        outcome = _run_henderson(spec)
    else:
        ifs = build_ifs(spec)
        outcome = RUNNERS[spec.command](spec, ifs)

    code = exit_code_for(outcome.verdicts, outcome.budget_error)
    if outcome.budget_error:
        diagnostic(code, BudgetExceededError.kind, outcome.budget_error)

    print(f"💾 Writing {spec.out}")
    write_csv(spec.out, outcome.header, outcome.rows)
    verdict_counts: Dict[str, int] = {}
    for verdict in outcome.verdicts:
        verdict_counts[verdict] = verdict_counts.get(verdict, 0) + 1
    write_manifest(
        spec.out,
        spec.echo(),
        VERSION,
        time.perf_counter() - start,
        {"budget_words": spec.budget_words, "max_words": outcome.words, "error": outcome.budget_error},
        verdict_counts,
        code,
    )
    print("✅ Done!" if code == EXIT_OK else f"⚠️  Finished with exit code {code}")
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse, run, and map every error to its exit code."""
    try:
        spec = parse_spec(argv)
    except FracsepError as exc:
        diagnostic(EXIT_USAGE, exc.kind, str(exc))
        return EXIT_USAGE
    try:
        return run(spec)
    except FracsepError as exc:
        diagnostic(exc.exit_code, exc.kind, str(exc))
        return exc.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
