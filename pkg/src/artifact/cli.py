"""Command line interface and JSON run reports.

Exit codes: 0 success, 1 error (bad parameters included), 2 expectation
mismatch from ``verify`` or ``replay``.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import __version__, engine, linalg
from .engine import JobSpec, Mode, PowerComparison, Verdict
from .series import IntSeries, conjectured_series

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MISMATCH = 2


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 is reserved for mismatches here.
    def error(self, message: str):
        raise CliError(message)


# ---------------------------------------------------------------------------
# reports


def _header(command: str) -> dict:
    return {"schema_version": SCHEMA_VERSION, "tool_version": __version__, "command": command}


def verdict_report(command: str, v: Verdict, timings: bool = True, elapsed_ms: float = 0.0) -> dict:
    out = _header(command)
    out.update(
        spec=v.spec.to_dict(),
        trials=[t.to_dict(timings) for t in v.trials],
        stop_reasons=[t.stop_reason.value for t in v.trials],
        computed=v.computed.to_json(),
        conjectured=v.conjectured.to_json(),
        delta=v.delta.to_json(),
        attained=v.attained,
        verdict="attained" if v.attained else "not attained",
        field_note=v.field_note,
    )
    if timings:
        out["elapsed_ms"] = round(elapsed_ms, 3)
    return out


def comparison_report(c: PowerComparison, trials: int, max_degree: int, timings: bool = True,
                      elapsed_ms: float = 0.0) -> dict:
    out = _header("compare")
    out.update(
        spec={
            "n": c.n,
            "r": c.r,
            "d": c.d,
            "mode": Mode.LINEAR_POWERS.value,
            "primes": list(c.primes),
            "seed": c.seed,
            "trials": trials,
            "max_degree": max_degree,
        },
        runs=[r.to_dict(timings) for r in c.runs],
        candidate=c.candidate.to_json(),
        conjectured=c.conjectured.to_json(),
        delta=c.delta.to_json(),
        consensus=c.consensus,
        field_note="conjectural: minimum over random F_p specializations, not a char-0 proof",
    )
    if timings:
        out["elapsed_ms"] = round(elapsed_ms, 3)
    return out


def dumps(report) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"


def spec_from_report(report: dict) -> JobSpec:
    """JobSpec echoed by a compute/verify/sweep report; unknown keys ignored."""
    if report.get("schema_version") != SCHEMA_VERSION:
        raise CliError(f"unsupported schema_version {report.get('schema_version')!r}")
    return JobSpec.from_dict(report["spec"])


# ---------------------------------------------------------------------------
# text rendering


def _spec_line(spec: JobSpec) -> str:
    return (f"n={spec.n} r={spec.r} d={spec.d} mode={spec.mode} prime={spec.prime} "
            f"seed={spec.seed} trials={spec.trials} max_degree={spec.cap}")


def render_verdict(v: Verdict, timings: bool = True) -> str:
    lines = [_spec_line(v.spec)]
    for t in v.trials:
        tail = f" ({t.elapsed_ms / 1000:.2f}s)" if timings else ""
        lines.append(f"trial {t.trial}: {t.series}  [{t.stop_reason}]{tail}")
    lines += [
        f"series: {v.computed}",
        f"conjectured: {v.conjectured}",
        f"delta: {v.delta}",
        f"verdict: {'attained' if v.attained else 'not attained'} ({v.field_note})",
    ]
    return "\n".join(lines) + "\n"


def render_comparison(c: PowerComparison) -> str:
    lines = [f"n={c.n} r={c.r} d={c.d} mode=linear-powers primes={','.join(map(str, c.primes))} seed={c.seed}"]
    for run in c.runs:
        lines.append(f"prime {run.prime} trial {run.trial}: {run.series}")
    lines += [
        f"Q candidate: {c.candidate}",
        f"F: {c.conjectured}",
        f"delta: {c.delta}",
        f"consensus: {'true' if c.consensus else 'false'}",
    ]
    return "\n".join(lines) + "\n"


def render_sweep(verdicts: Sequence[Verdict]) -> str:
    lines = [f"{'r':>4}  {'verdict':<13} delta"]
    for v in verdicts:
        lines.append(f"{v.spec.r:>4}  {'attained' if v.attained else 'not attained':<13} {v.delta}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands


def _spec_from_args(args, r: Optional[int] = None) -> JobSpec:
    return JobSpec(
        n=args.n,
        r=args.r if r is None else r,
        d=args.d,
        mode=Mode(args.mode),
        prime=args.prime,
        seed=args.seed,
        max_degree=args.max_degree,
        trials=args.trials,
    )


def _emit(args, text: str, report) -> None:
    sys.stdout.write(dumps(report) if args.format == "json" else text)
    if getattr(args, "out", None):
        Path(args.out).write_text(dumps(report), encoding="utf-8")


def cmd_conjecture(args) -> int:
    n, r, d = args.n, args.r, args.d
    capped = r < n
    if capped and args.max_degree is None:
        raise CliError(f"r={r} < n={n}: the conjectured series is infinite, pass --max-degree")
    s = conjectured_series(n, r, d, args.max_degree)
    report = _header("conjecture")
    report.update(n=n, r=r, d=d, series=s.to_json(), truncated_at_cap=capped,
                  max_degree=args.max_degree if capped else None)
    text = f"{s}{' (truncated at cap)' if capped else ''}\n"
    _emit(args, text, report)
    return EXIT_OK


def _run_verdict(args, command: str) -> tuple[Verdict, dict]:
    spec = _spec_from_args(args)
    start = time.perf_counter()
    v = engine.verify_conjecture(spec, jobs=args.jobs)
    elapsed = (time.perf_counter() - start) * 1000.0
    timings = not args.omit_timings
    report = verdict_report(command, v, timings, elapsed)
    _emit(args, render_verdict(v, timings), report)
    return v, report


def cmd_compute(args) -> int:
    _run_verdict(args, "compute")
    return EXIT_OK


def cmd_verify(args) -> int:
    v, _ = _run_verdict(args, "verify")
    if args.expect_attained and not v.attained:
        return EXIT_MISMATCH
    if args.expect_not_attained and v.attained:
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_compare(args) -> int:
    primes = args.primes or [args.prime]
    start = time.perf_counter()
    c = engine.compare_powers(args.n, args.r, args.d, args.trials, primes, args.seed,
                              args.jobs, args.max_degree)
    elapsed = (time.perf_counter() - start) * 1000.0
    cap = args.max_degree if args.max_degree is not None else args.n * (args.d - 1) + 1
    report = comparison_report(c, args.trials, cap, not args.omit_timings, elapsed)
    _emit(args, render_comparison(c), report)
    return EXIT_OK


def cmd_sweep(args) -> int:
    verdicts = engine.sweep(args.n, args.d, args.r_from, args.r_to, Mode(args.mode), args.trials,
                            args.prime, args.seed, args.jobs, args.max_degree)
    timings = not args.omit_timings
    reports = [verdict_report("sweep", v, timings, sum(t.elapsed_ms for t in v.trials))
               for v in verdicts]
    _emit(args, render_sweep(verdicts), reports)
    return EXIT_OK


def cmd_replay(args) -> int:
    data = json.loads(Path(args.report).read_text(encoding="utf-8"))
    reports = data if isinstance(data, list) else [data]
    ok = True
    for rep in reports:
        spec = spec_from_report(rep)
        for t in rep["trials"]:
            res = engine.hilbert_series(spec, t["trial"])
            same = res.series == IntSeries.from_json(t["series"])
            ok &= same
            print(f"r={spec.r} trial {t['trial']}: {res.series} [{'match' if same else 'MISMATCH'}]")
    return EXIT_OK if ok else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# parser


def _prime(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")


def _prime_list(text: str) -> list[int]:
    return [_prime(t) for t in text.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="generic-hilbert", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, with_r: bool = True, with_mode: bool = True):
        p.add_argument("-n", type=int, required=True, help="number of variables")
        if with_r:
            p.add_argument("-r", type=int, required=True, help="number of generators")
        p.add_argument("-d", type=int, required=True, help="generator degree")
        if with_mode:
            p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.PURE_PLUS_GENERIC.value)
        p.add_argument("--prime", type=_prime, default=linalg.DEFAULT_PRIME)
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--trials", type=int, default=1)
        p.add_argument("--max-degree", type=int, default=None)
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("--out", metavar="PATH", help="also write the JSON report here")
        p.add_argument("--jobs", type=int, default=1, help="worker processes for trials")
        p.add_argument("--omit-timings", action="store_true",
                       help="leave elapsed times out so reports are byte-reproducible")

    p = sub.add_parser("conjecture", help="print F_{n,r,d}")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("compute", help="compute the Hilbert series of one job")
    common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="check whether some trial attains F_{n,r,d}")
    common(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--expect-attained", action="store_true")
    g.add_argument("--expect-not-attained", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare", help="estimate Q_{n,r,d} - F_{n,r,d} from linear powers")
    common(p, with_mode=False)
    p.add_argument("--primes", type=_prime_list, default=None,
                   help="comma separated primes (default: --prime)")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("sweep", help="one verdict per r in a range")
    common(p, with_r=False)
    p.add_argument("--r-from", type=int, required=True)
    p.add_argument("--r-to", type=int, required=True)
    p.set_defaults(func=cmd_sweep, mode=Mode.LINEAR_POWERS.value)

    p = sub.add_parser("replay", help="re-run the specs echoed in a JSON report")
    p.add_argument("report", metavar="PATH")
    p.set_defaults(func=cmd_replay)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (CliError, ValueError, TypeError, OverflowError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
