"""Command-line entry point.

Exit codes: 0 success, 1 invalid input, 2 numerical failure, 3 failed
verification.  Every output carries a metadata block with the parameters,
tolerances, seed and artifact version; nothing time-dependent is written,
so identical arguments give byte-identical output.
"""

from __future__ import annotations

import argparse
import io
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import ARTIFACT_VERSION
from . import exponents, functional, oracle, radialnorm
from .errors import ConvergenceError, DomainError, FunctionalOverflowError, VerificationError

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_VERIFY = 0, 1, 2, 3

COMMANDS = ("alpha-star", "gamma", "seminorm", "moser-scan", "sweep", "verify", "probe")

DEFAULTS = {
    "N": 2,
    "s": 0.5,
    "tol": 1e-9,
    "format": "json",
    "out": None,
    "seed": 0,
    "method": "auto",
    "profile": None,
    "eps": "1e-1,1e-2,1e-3,1e-4,1e-5",
    "factors": "0.9,1.0,1.1",
    "suite": "all",
    "samples": 1_000_000,
    "alpha_factor": 0.5,
    "dof": 8,
    "max_iters": 20,
}
_CONVERTERS = {"N": int, "s": float, "tol": float, "seed": int, "samples": int,
               "alpha_factor": float, "dof": int, "max_iters": int}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; here that code means numeric failure
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


@dataclass
class RunConfig:
    command: str
    params: exponents.FractionalParams
    tolerances: dict
    output_format: str = "json"
    output_path: str | None = None
    seed: int = 0
    options: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# parsing


def _shared(parser: argparse.ArgumentParser):
    parser.add_argument("--N", type=int, default=None, help="dimension N >= 1")
    parser.add_argument("--s", type=float, default=None, help="order s in (0, 1); p = N/s")
    parser.add_argument("--tol", type=float, default=None, help="relative tolerance")
    parser.add_argument("--format", choices=("json", "csv"), default=None)
    parser.add_argument("--out", default=None, help="output file (default stdout)")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--config", default=None, help="flat key=value defaults file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fracmt", description="Fractional Moser-Trudinger numerics")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("alpha-star", help="blow-up exponent alpha*_{s,N}")
    _shared(p)
    p.add_argument("--method", choices=("auto", "direct", "hurwitz", "small_n"), default=None)

    p = sub.add_parser("gamma", help="concentration constant gamma_{s,N}")
    _shared(p)
    p.add_argument("--method", choices=("auto", "direct", "hurwitz", "small_n"), default=None)

    p = sub.add_parser("seminorm", help="[u]^p of a profile read from JSON")
    _shared(p)
    p.add_argument("--profile", default=None, required=False)

    p = sub.add_parser("moser-scan", help="I_1..I_4 of the Moser family over eps")
    _shared(p)
    p.add_argument("--eps", default=None, help="comma-separated eps values")

    p = sub.add_parser("sweep", help="functional on normalized Moser profiles")
    _shared(p)
    p.add_argument("--factors", default=None, help="comma-separated multiples of alpha*")
    p.add_argument("--eps", default=None, help="comma-separated, strictly decreasing")

    p = sub.add_parser("verify", help="independent verification suites")
    _shared(p)
    p.add_argument("--suite", choices=("specfun", "lemmas", "reduction", "all"), default=None)
    p.add_argument("--samples", type=int, default=None, help="Monte Carlo samples per case")

    p = sub.add_parser("probe", help="coordinate-ascent probe of the supremum")
    _shared(p)
    p.add_argument("--alpha-factor", dest="alpha_factor", type=float, default=None)
    p.add_argument("--dof", type=int, default=None)
    p.add_argument("--max-iters", dest="max_iters", type=int, default=None)
    return parser


def read_config(path: str) -> dict:
    """Parse a flat ``key = value`` file; '#' starts a comment."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DomainError(f"cannot read config {path!r}: {exc.strerror}") from None
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"{path}:{lineno}: expected key=value")
        key, value = (x.strip() for x in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in DEFAULTS:
            raise DomainError(f"{path}:{lineno}: unknown config key {key!r}")
        conv = _CONVERTERS.get(key)
        try:
            out[key] = conv(value) if conv else value
        except ValueError:
            raise DomainError(f"{path}:{lineno}: bad value for {key!r}: {value!r}") from None
    return out


def _float_list(text: str, name: str) -> list[float]:
    try:
        vals = [float(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise DomainError(f"--{name} expects comma-separated numbers, got {text!r}") from None
    if not vals:
        raise DomainError(f"--{name} must not be empty")
    return vals


def resolve(ns: argparse.Namespace) -> RunConfig:
    config = read_config(ns.config) if ns.config else {}
    merged = {}
    for key, default in DEFAULTS.items():
        flag = getattr(ns, key, None)
        merged[key] = flag if flag is not None else config.get(key, default)
    params = exponents.FractionalParams(merged["N"], merged["s"])
    tol = float(merged["tol"])
    if not 0.0 < tol < 1e-2:
        raise DomainError(f"--tol must lie in (0, 1e-2), got {tol!r}")
    if merged["format"] not in ("json", "csv"):
        raise DomainError(f"format must be json or csv, got {merged['format']!r}")
    return RunConfig(ns.command, params, {"tol": tol}, merged["format"], merged["out"],
                     int(merged["seed"]), merged)


# ---------------------------------------------------------------------------
# serialization


def _num(x) -> str:
    if x is None:
        return "null"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if not math.isfinite(x):
        return "null"
    return format(float(x), ".17g")


def to_json(obj, indent: int = 0) -> str:
    """JSON text with every float printed to 17 significant digits."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}{_json_str(str(k))}: {to_json(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(_num(v) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + to_json(v, indent + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, str):
        return _json_str(obj)
    return _num(obj)


def _json_str(s: str) -> str:
    import json

    return json.dumps(s)


def to_csv(rows: list[dict], columns: Sequence[str], metadata: dict) -> str:
    buf = io.StringIO()
    for key, value in metadata.items():
        if isinstance(value, dict):
            value = ";".join(f"{k}={_cell(v)}" for k, v in value.items())
        buf.write(f"# {key}: {_cell(value)}\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(_cell(row.get(c)) for c in columns) + "\n")
    return buf.getvalue()


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return _num(v) if math.isfinite(v) else ("inf" if v > 0 else "nan")
    return str(v)


def metadata(cfg: RunConfig, extra: dict | None = None) -> dict:
    meta = {"command": cfg.command, "params": cfg.params.as_dict(),
            "tolerances": dict(cfg.tolerances), "seed": cfg.seed,
            "artifact_version": ARTIFACT_VERSION}
    if extra:
        meta.update(extra)
    return meta


# ---------------------------------------------------------------------------
# commands


def _cmd_constant(cfg: RunConfig):
    method = cfg.options["method"]
    const = exponents.gamma_constant(cfg.params, method)
    a_star = cfg.params.dim * const.gamma_value ** (cfg.params.s / (cfg.params.dim - cfg.params.s))
    row = {"N": cfg.params.dim, "s": cfg.params.s, "p": cfg.params.p,
           "gamma": const.gamma_value, "alpha_star": a_star,
           "method": const.series.method, "series_value": const.series.value,
           "terms_used": const.series.terms_used, "tail_bound": const.series.tail_bound,
           "rel_error": const.rel_error}
    if cfg.command == "alpha-star":
        cols = ["N", "s", "p", "alpha_star", "gamma", "method", "rel_error"]
    else:
        cols = ["N", "s", "p", "gamma", "method", "series_value", "terms_used",
                "tail_bound", "rel_error"]
    return [{c: row[c] for c in cols}], cols, {"method": method}, EXIT_OK


def _cmd_seminorm(cfg: RunConfig):
    path = cfg.options["profile"]
    if not path:
        raise DomainError("seminorm needs --profile <file>")
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DomainError(f"cannot read profile {path!r}: {exc.strerror}") from None
    prof = radialnorm.RadialProfile.from_json(text)
    res = radialnorm.seminorm_radial(prof, cfg.params, cfg.tolerances["tol"])
    row = {"value_p": res.value_p, "seminorm": res.value_p ** (1.0 / cfg.params.p),
           "error_estimate": res.error_estimate, "panels_used": res.panels_used}
    return [row], list(row), {"profile": prof.to_dict()}, EXIT_OK


MOSER_COLUMNS = ["eps", "i1", "i2", "i3", "i4", "total", "gamma_limit"]
SWEEP_COLUMNS = ["factor", "alpha", "eps", "seminorm_p", "functional_value", "regime"]


def _cmd_moser_scan(cfg: RunConfig):
    eps_list = _float_list(cfg.options["eps"], "eps")
    g = exponents.gamma_constant(cfg.params).gamma_value
    rows = []
    for eps in eps_list:
        dec = radialnorm.moser_decomposition(eps, cfg.params, cfg.tolerances["tol"])
        row = dec.as_dict()
        row["gamma_limit"] = g
        rows.append(row)
    c = exponents.sphere_area(cfg.params.dim) ** 2
    extra = {"seminorm_p_equals": "total * (N w_N)^2", "normalization_constant": c}
    return rows, MOSER_COLUMNS, extra, EXIT_OK


def _cmd_sweep(cfg: RunConfig):
    factors = _float_list(cfg.options["factors"], "factors")
    eps_list = _float_list(cfg.options["eps"], "eps")
    cells = functional.blowup_sweep(cfg.params, factors, eps_list, cfg.tolerances["tol"])
    rows = [c.as_dict() for c in cells]
    extra = {"alpha_star": exponents.alpha_star(cfg.params),
             "decision_rules": functional.DECISION_RULES}
    return rows, SWEEP_COLUMNS, extra, EXIT_OK


def _cmd_verify(cfg: RunConfig):
    suite = cfg.options["suite"]
    records = []
    if suite in ("specfun", "all"):
        records += oracle.specfun_suite()
    if suite in ("lemmas", "all"):
        records += oracle.lemma_suite()
    if suite in ("reduction", "all"):
        records += oracle.reduction_suite(int(cfg.options["samples"]), cfg.seed)
    rows = [r.as_dict() for r in records]
    failed = sum(r.status != "pass" for r in records)
    code = EXIT_VERIFY if failed else EXIT_OK
    extra = {"suite": suite, "checks": len(records), "failed": failed}
    return rows, ["check_name", "status", "discrepancy", "tolerance"], extra, code


def _cmd_probe(cfg: RunConfig):
    factor = float(cfg.options["alpha_factor"])
    a_star = exponents.alpha_star(cfg.params)
    state = functional.supremum_probe(cfg.params, factor * a_star, int(cfg.options["dof"]),
                                      int(cfg.options["max_iters"]), cfg.seed,
                                      tol=cfg.tolerances["tol"])
    if cfg.output_format == "csv":
        rows = [{"iteration": i, "value": v} for i, v in enumerate(state.trace)]
        cols = ["iteration", "value"]
    else:
        rows = [state.as_dict()]
        cols = list(rows[0])
    extra = {"alpha_factor": factor, "alpha_star": a_star, "alpha": factor * a_star}
    return rows, cols, extra, EXIT_OK


_HANDLERS = {
    "alpha-star": _cmd_constant,
    "gamma": _cmd_constant,
    "seminorm": _cmd_seminorm,
    "moser-scan": _cmd_moser_scan,
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
    "probe": _cmd_probe,
}


def render(cfg: RunConfig, rows, columns, extra) -> str:
    meta = metadata(cfg, extra)
    if cfg.output_format == "csv":
        return to_csv(rows, columns, meta)
    body = rows[0] if cfg.command in ("alpha-star", "gamma", "seminorm", "probe") else rows
    return to_json({"command": cfg.command, "result": body, "metadata": meta}) + "\n"


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    """Execute one subcommand and return its exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(list(argv) if argv is not None else None)
    except UsageError as exc:
        print(str(exc), file=stderr)
        return EXIT_INPUT
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_INPUT
    if ns.command is None:
        print(parser.format_usage() + "fracmt: error: a subcommand is required", file=stderr)
        return EXIT_INPUT
    try:
        cfg = resolve(ns)
        rows, columns, extra, code = _HANDLERS[cfg.command](cfg)
        text = render(cfg, rows, columns, extra)
    except DomainError as exc:
        print(f"fracmt: error: {exc}", file=stderr)
        return EXIT_INPUT
    except VerificationError as exc:
        print(f"fracmt: verification failed: {exc}", file=stderr)
        return EXIT_VERIFY
    except (ConvergenceError, FunctionalOverflowError, OverflowError, ArithmeticError) as exc:
        print(f"fracmt: numerical failure: {exc}", file=stderr)
        return EXIT_NUMERIC
    if cfg.output_path:
        Path(cfg.output_path).write_text(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
