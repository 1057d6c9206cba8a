"""Command-line front end.

Exit codes: 0 contains / success, 1 does not contain / disagreement,
2 undecided or unsupported, 3 work budget exceeded, 64 malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import platform
import sys
import time
from dataclasses import asdict, dataclass, fields
from fractions import Fraction

import numpy as np

from . import __version__, closedform
from .algebra import parse_field
from .divisors import nef_threshold
from .fatpoints import FatPointScheme, GenericityError, make_config
from .oracle import BudgetExceeded, alpha_bruteforce, check_budget, contains_bruteforce, crossvalidate, default_budget, fat_ideal

EXIT_YES, EXIT_NO, EXIT_UNDECIDED, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3, 64

log = logging.getLogger("resurgence")


class ConfigError(ValueError):
    pass


@dataclass
class JobConfig:
    kind: str = "conic"
    n: int | None = None
    multiplicities: str | None = None
    seed: int = 0
    params: str | None = None
    points: str | None = None
    field: str = "p:2147483647"
    m_max: int = 4
    r_max: int = 4
    format: str = "json"
    budget: int | None = None

    def validate(self):
        if self.kind not in ("conic", "general", "explicit"):
            raise ConfigError(f"kind must be conic, general or explicit, not {self.kind!r}")
        if self.format not in ("json", "csv", "text"):
            raise ConfigError(f"format must be json, csv or text, not {self.format!r}")
        try:
            parse_field(self.field)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if self.kind == "explicit":
            if not self.points:
                raise ConfigError("explicit kind needs points")
            self.n = len(_parse_points(self.points))
        elif self.params is not None:
            count = len(_parse_list(self.params, Fraction))
            if self.n is not None and self.n != count:
                raise ConfigError("n does not match params")
            self.n = count
        if self.n is None or self.n < 1:
            raise ConfigError("n must be a positive integer")
        if self.m_max < 0 or self.r_max < 0:
            raise ConfigError("grid bounds must be >= 0")
        if self.multiplicities is not None:
            mults = self.mults()
            if len(mults) != self.n or any(v < 0 for v in mults):
                raise ConfigError("multiplicities must be n nonnegative integers")
        return self

    def mults(self) -> tuple[int, ...]:
        if self.multiplicities is None:
            return (1,) * self.n
        return tuple(_parse_list(self.multiplicities, int))

    def resolved(self) -> dict:
        out = asdict(self)
        out["multiplicities"] = list(self.mults())
        out["budget"] = self.budget if self.budget is not None else default_budget()
        out["versions"] = {"resurgence": __version__, "python": platform.python_version(), "numpy": np.__version__}
        return out


_INT_KEYS = {"n", "seed", "m_max", "r_max", "budget"}


def _parse_list(text: str, cast):
    try:
        return [cast(v) for v in text.replace(",", " ").split()]
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"cannot parse list {text!r}") from None


def _parse_points(text: str):
    pts = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if chunk:
            p = _parse_list(chunk, Fraction)
            if len(p) != 3:
                raise ConfigError(f"point {chunk!r} needs three coordinates")
            pts.append(p)
    return pts


def parse_config_text(text: str) -> dict:
    """Flat key=value lines; '#' starts a comment; unknown keys are errors."""
    known = {f.name for f in fields(JobConfig)}
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in known:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in _INT_KEYS:
            try:
                out[key] = int(value)
            except ValueError:
                raise ConfigError(f"line {lineno}: {key} must be an integer") from None
        else:
            out[key] = value
    return out


def build_job(args) -> JobConfig:
    values = {}
    if args.config:
        try:
            with open(args.config) as fh:
                values.update(parse_config_text(fh.read()))
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
    for f in fields(JobConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            values[f.name] = v
    return JobConfig(**values).validate()


def build_scheme(job: JobConfig, check_m: int = 1) -> FatPointScheme:
    F = parse_field(job.field)
    if job.kind == "conic":
        params = _parse_list(job.params, Fraction) if job.params else None
        cfg = make_config("conic", job.n, field=F, params=params)
    elif job.kind == "general":
        cfg = make_config("generic", job.n, field=F, seed=job.seed, check_m=check_m)
    else:
        cfg = make_config("explicit", field=F, points=_parse_points(job.points))
    return FatPointScheme(cfg, job.mults())


def _frac(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _emit(job: JobConfig, payload: dict, show_timing: bool, start: float):
    payload = {"config": job.resolved(), **payload}
    if show_timing:
        payload["timing"] = {"seconds": round(time.perf_counter() - start, 3)}
    if job.format == "text":
        for k, v in payload.items():
            print(f"{k}: {json.dumps(v, sort_keys=True)}")
    else:
        print(json.dumps(payload, indent=2, sort_keys=True))


def _predictor_supported(job: JobConfig) -> str | None:
    if job.kind == "explicit":
        return "explicit configurations have no closed-form criterion"
    if any(v != 1 for v in job.mults()):
        return "closed-form containment criteria cover reduced schemes (all multiplicities 1)"
    if job.kind == "general" and job.n > closedform.GENERAL_MAX_N:
        return f"general points supported for n <= {closedform.GENERAL_MAX_N}"
    return None


def _verdict_code(contains) -> int:
    return EXIT_UNDECIDED if contains is None else (EXIT_YES if contains else EXIT_NO)


# ---------------------------------------------------------------------------
# subcommands


def cmd_predict(job: JobConfig, args, start) -> int:
    query = {"op": "predict", "m": args.m, "r": args.r}
    why = _predictor_supported(job)
    if why:
        _emit(job, {"query": query, "verdict": {"contains": None, "method": "unsupported", "reason": why}, "certificate": None}, args.timing, start)
        return EXIT_UNDECIDED
    v = closedform.contains(job.kind, job.n, args.m, args.r)
    d = v.to_dict()
    cert = d.pop("certificate")
    cert["sufficiency"] = closedform.sufficiency_bounds(args.m, args.r)
    _emit(job, {"query": query, "verdict": d, "certificate": cert}, args.timing, start)
    return _verdict_code(v.contains)


def cmd_verify(job: JobConfig, args, start) -> int:
    query = {"op": "verify", "m": args.m, "r": args.r}
    # budget first: the genericity battery itself grows with m
    check_budget(build_scheme(job), args.m, args.r, job.budget)
    Z = build_scheme(job, check_m=max(args.m, args.r))
    rep = contains_bruteforce(Z, args.m, args.r, budget=job.budget)
    d = rep.to_dict()
    seconds = d.pop("seconds")
    cert = {"witness": d.pop("witness"), "witness_degree": d.pop("witness_degree"), **d.pop("details")}
    if args.timing:
        cert["oracle_seconds"] = seconds
    _emit(job, {"query": query, "report": d, "certificate": cert}, args.timing, start)
    return _verdict_code(rep.result)


def _summary(job: JobConfig) -> dict:
    if _predictor_supported(job):
        return {}
    kind, n = job.kind, job.n
    g = closedform.gamma_value(kind, n)
    return {
        "rho": _frac(closedform.resurgence(kind, n)),
        "gamma": _frac(g),
        "alpha_formula": f"ceil({_frac(g)}*m)",
        "source": closedform.value_source(kind, n),
    }


def _csv_cell(v):
    # match the JSON spelling of booleans and null
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return v


def cmd_table(job: JobConfig, args, start) -> int:
    rows = []
    supported = _predictor_supported(job) is None
    if args.with_oracle and job.m_max and job.r_max:
        if any(v != 1 for v in job.mults()) or job.kind == "explicit":
            raise ConfigError("table --with-oracle needs a conic or general reduced configuration")
        F = parse_field(job.field)
        rows = crossvalidate(
            "generic" if job.kind == "general" else "conic",
            job.n,
            job.m_max,
            job.r_max,
            field=F,
            seed=job.seed,
            budget=job.budget,
            jobs=args.jobs,
        )
    else:
        for m in range(1, job.m_max + 1):
            for r in range(1, job.r_max + 1):
                v = closedform.contains(job.kind, job.n, m, r) if supported else closedform.Verdict(None, "unsupported")
                rows.append({"m": m, "r": r, "predicted": v.contains, "method": v.method})
    summary = _summary(job)
    cols = ["m", "r", "predicted", "method"] + (["oracle", "agree"] if args.with_oracle else [])
    if job.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        w.writerows({k: _csv_cell(v) for k, v in row.items()} for row in rows)
        sys.stdout.write(buf.getvalue())
        if summary:
            print("# " + " ".join(f"{k}={v}" for k, v in summary.items()), file=sys.stderr)
    else:
        records = [{k: row.get(k) for k in cols} | ({"witness": row.get("witness")} if args.with_oracle else {}) for row in rows]
        _emit(job, {"query": {"op": "table", "m_max": job.m_max, "r_max": job.r_max, "with_oracle": args.with_oracle}, "rows": records, "summary": summary}, args.timing, start)
    if args.with_oracle and not all(row["agree"] for row in rows):
        return EXIT_NO
    return EXIT_YES


def cmd_invariants(job: JobConfig, args, start) -> int:
    Z = build_scheme(job, check_m=args.m_bound)
    I = fat_ideal(Z)
    alpha, reg, omega = I.alpha(), I.reg_points(), I.omega()
    report = {
        "alpha": alpha,
        "reg": reg,
        "omega": omega,
        "alpha_symbolic": {str(m): alpha_bruteforce(Z, m) for m in range(1, args.m_bound + 1)},
    }
    supported = _predictor_supported(job) is None
    if supported:
        g = closedform.gamma_value(job.kind, job.n)
        lo, hi = closedform.rho_bounds(alpha, g, reg)
        report.update(
            gamma=_frac(g),
            rho=_frac(closedform.resurgence(job.kind, job.n)),
            rho_bounds=[_frac(lo), _frac(hi)],
            alpha_symbolic_formula={str(m): closedform.alpha_symbolic(job.kind, job.n, m) for m in range(1, args.m_bound + 1)},
            source=closedform.value_source(job.kind, job.n),
        )
    context = None
    if job.kind == "conic" and job.n >= 5:
        context = "conic"
    elif job.kind == "general" and (job.n <= 8 or (job.n == 9 and Z.is_uniform)):
        context = "general"
    if context:
        thr = nef_threshold(Z.multiplicities, context)
        report["nef_threshold"] = thr
        if context == "conic":
            report["nef_threshold_vs_omega"] = {"nef_threshold": thr, "omega": omega, "match": thr == omega}
    _emit(job, {"query": {"op": "invariants", "m_bound": args.m_bound}, "report": report}, args.timing, start)
    return EXIT_YES


def cmd_equal_powers(job: JobConfig, args, start) -> int:
    """Does I^(r) = I^r hold (equivalently I^(r) in I^r) for r <= r_max?"""
    for r in range(1, job.r_max + 1):
        check_budget(build_scheme(job), r, r, job.budget)
    Z = build_scheme(job, check_m=job.r_max)
    rows = []
    for r in range(1, job.r_max + 1):
        rep = contains_bruteforce(Z, r, r, budget=job.budget)
        rows.append({"r": r, "equal": rep.result, "witness": None if rep.witness is None else str(rep.witness)})
    payload = {"query": {"op": "equal-powers", "r_max": job.r_max}, "rows": rows}
    if _predictor_supported(job) is None:
        payload["rho"] = _frac(closedform.resurgence(job.kind, job.n))
    _emit(job, payload, args.timing, start)
    return EXIT_YES


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="key=value configuration file")
    p.add_argument("--kind", choices=["conic", "general", "explicit"])
    p.add_argument("--n", type=int)
    p.add_argument("--multiplicities", help="comma-separated multiplicities (default all 1)")
    p.add_argument("--seed", type=int)
    p.add_argument("--params", help="conic parameters t_i, comma-separated")
    p.add_argument("--points", help="explicit points 'x,y,z; x,y,z; ...'")
    p.add_argument("--field", help="'rational' or 'p:<prime>' (default p:2147483647)")
    p.add_argument("--format", choices=["json", "csv", "text"])
    p.add_argument("--budget", type=int, help="work budget for the oracle (default from RESURGENCE_BUDGET)")
    p.add_argument("--no-timing", dest="timing", action="store_false", help="omit timing so reruns are byte-identical")
    p.add_argument("-v", "--verbose", action="store_true")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="resurgence", description="Containment of symbolic and ordinary powers of plane fat-point ideals.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("predict", help="closed-form verdict")
    _common(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True)

    p = sub.add_parser("verify", help="brute-force verdict with witness")
    _common(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--r", type=int, required=True)

    p = sub.add_parser("table", help="containment table over a grid")
    _common(p)
    p.add_argument("--m-max", dest="m_max", type=int)
    p.add_argument("--r-max", dest="r_max", type=int)
    p.add_argument("--with-oracle", action="store_true")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("invariants", help="alpha, omega, reg, gamma, rho bounds, nef threshold")
    _common(p)
    p.add_argument("--m-bound", type=int, default=3)

    p = sub.add_parser("equal-powers", help="test I^(r) = I^r for r <= r-max")
    _common(p)
    p.add_argument("--r-max", dest="r_max", type=int)
    return parser


COMMANDS = {
    "predict": cmd_predict,
    "verify": cmd_verify,
    "table": cmd_table,
    "invariants": cmd_invariants,
    "equal-powers": cmd_equal_powers,
}


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    start = time.perf_counter()
    for name in ("m", "r"):
        if getattr(args, name, 1) is not None and getattr(args, name, 1) < 1:
            print(f"resurgence: error: --{name} must be >= 1", file=sys.stderr)
            return EXIT_USAGE
    try:
        job = build_job(args)
        return COMMANDS[args.command](job, args, start)
    except ConfigError as exc:
        print(f"resurgence: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"resurgence: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except GenericityError as exc:
        print(f"resurgence: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except closedform.Unsupported as exc:
        print(f"resurgence: unsupported: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED


if __name__ == "__main__":
    sys.exit(main())
