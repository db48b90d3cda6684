"""Command-line front end.

Exit codes: 0 on success, 1 when ``verify`` finds a margin below ``-tol``,
2 on input errors (bad JSON, malformed points, invalid options).
"""
import argparse
import csv
import io
import json
import math
import sys

from .atiyah import Configuration, analyze
from .errors import AtiyahError, ConfigurationFormatError
from .experiments import CSV_COLUMNS, KINDS, SUITES, SamplerSpec, minimize_absD, sample, verify_batch
from .gram4 import pd_certificate

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def fmt_float(x):
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


def dumps(obj):
    """JSON with every float written to 17 significant digits."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if hasattr(obj, "item"):  # numpy scalar
        return dumps(obj.item())
    if hasattr(obj, "tolist"):
        return dumps(obj.tolist())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _parse_config(obj, where=""):
    try:
        return Configuration.from_json(obj)
    except ConfigurationFormatError as exc:
        raise InputError(f"{where}{exc}") from exc


def load_configuration(path):
    text = _read_text(path)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    return _parse_config(obj)


def load_configurations(path):
    """A single object, a JSON array of objects, or JSON lines."""
    text = _read_text(path)
    try:
        obj = json.loads(text)
        items = obj if isinstance(obj, list) else [obj]
    except json.JSONDecodeError:
        items = []
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            try:
                items.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise InputError(f"line {lineno}: invalid JSON: {exc.msg}") from exc
    if not items:
        raise InputError("no configurations in input")
    return [_parse_config(o, f"configuration {k}: ") for k, o in enumerate(items)]


def _positive(kind):
    def parse(text):
        v = kind(text)
        if v <= 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text}")
        return v

    return parse


def build_parser():
    p = argparse.ArgumentParser(prog="atiyah-config", description="Atiyah configuration problem checks.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="D, det H, min eigenvalue and margins for one configuration")
    a.add_argument("--input", required=True, help="configuration JSON file, or - for stdin")

    v = sub.add_parser("verify", help="run identity suites and conjecture margins over a batch")
    v.add_argument("--input", help="configurations (object, array or JSON lines); sampled if omitted")
    v.add_argument("--n", type=int, default=4)
    v.add_argument("--count", type=_positive(int), default=1000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--kind", choices=KINDS, default="uniform-box")
    v.add_argument("--jitter", type=_positive(float), default=1e-4)
    v.add_argument("--suite", choices=SUITES, default="all")
    v.add_argument("--tol", type=float, default=1e-9)
    v.add_argument("--format", choices=("json", "csv"), default="json")
    v.add_argument("--summary-only", action="store_true", help="print only the summary record")

    s = sub.add_parser("sample", help="emit sampled configurations as JSON lines")
    s.add_argument("--n", type=int, default=4)
    s.add_argument("--count", type=_positive(int), default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--kind", choices=KINDS, default="uniform-box")
    s.add_argument("--jitter", type=_positive(float), default=1e-4)

    c = sub.add_parser("certify4", help="positive-definiteness certificate for four points")
    c.add_argument("--input", required=True)
    c.add_argument("--tol", type=float, default=None)

    m = sub.add_parser("minimize", help="Nelder-Mead search for small |D|")
    m.add_argument("--n", type=int, default=3)
    m.add_argument("--restarts", type=_positive(int), default=4)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--max-evals", type=_positive(int), default=100_000)
    return p


def _cmd_analyze(args, out):
    c = load_configuration(args.input)
    out.write(dumps(analyze(c).to_dict()) + "\n")
    return EXIT_OK


def _csv_rows(records):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        if "error" in r:
            continue
        w.writerow([r["n"] if col == "n" else fmt_float(float(r[col])) for col in CSV_COLUMNS])
    return buf.getvalue()


def _cmd_verify(args, out):
    if args.input is not None:
        configs = load_configurations(args.input)
    else:
        configs = sample(SamplerSpec(args.kind, args.n, args.count, args.seed, args.jitter))
    result = verify_batch(configs, suite=args.suite, tol=args.tol)
    if args.format == "csv":
        out.write(_csv_rows(result.records))
    else:
        if not args.summary_only:
            for r in result.records:
                out.write(dumps(r) + "\n")
        out.write(dumps({"summary": result.summary}) + "\n")
    s = result.summary
    bad = any(m < -args.tol for m in (s["min_conj1_margin"], s["min_conj2_margin"]) if not math.isnan(m))
    return EXIT_VIOLATION if bad else EXIT_OK


def _cmd_sample(args, out):
    for c in sample(SamplerSpec(args.kind, args.n, args.count, args.seed, args.jitter)):
        out.write(dumps(c.to_json()) + "\n")
    return EXIT_OK


def _cmd_certify4(args, out):
    c = load_configuration(args.input)
    if c.n != 4:
        raise InputError(f"certify4 needs exactly 4 points, got {c.n}")
    out.write(dumps(pd_certificate(c, args.tol).to_dict()) + "\n")
    return EXIT_OK


def _cmd_minimize(args, out):
    r = minimize_absD(args.n, restarts=args.restarts, seed=args.seed, max_evals=args.max_evals)
    out.write(
        dumps(
            {
                "n": args.n,
                "bestAbsD": r.bestAbsD,
                "bestConfig": r.bestConfig.to_json()["points"],
                "iterations": r.iterations,
                "evaluations": r.evaluations,
                "restarts": r.restarts,
                "converged": r.converged,
            }
        )
        + "\n"
    )
    return EXIT_OK


COMMANDS = {
    "analyze": _cmd_analyze,
    "verify": _cmd_verify,
    "sample": _cmd_sample,
    "certify4": _cmd_certify4,
    "minimize": _cmd_minimize,
}


def run(argv=None, out=None, err=None):
    """Parse ``argv`` and execute; returns the process exit code."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse usage errors
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return COMMANDS[args.command](args, out)
    except (InputError, AtiyahError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
