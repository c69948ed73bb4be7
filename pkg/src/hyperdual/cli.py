"""Command-line front end.

Subcommands::

    hyperdual stress INPUT      stress report per deformation gradient
    hyperdual verify            seeded property suites
    hyperdual invert INPUT      ln B from sigma/rho via the convex conjugate
    hyperdual dexp-table        quadrature convergence table

Exit codes: 0 success, 1 numerical or verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .constants import DEFAULT_QUADRATURE_NODES, DEFAULT_TOLERANCES, Tolerances
from .duality import absolute_cauchy, verify_theorem
from .errors import HyperdualError, InvalidInputError
from .fenchel import conjugate
from .kinematics import DefGrad
from .materials import ISOTROPIC_LAWS, LAWS, MaterialLaw, make_law
from .quadrature import TABLE_SIZES
from .tensor import as_mat3, as_sym, sym6
from .verification import dexp_convergence_table, is_monotone_to_floor, run_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class JobConfig:
    law: str | None
    params: dict = field(default_factory=dict)
    tolerances: Tolerances = DEFAULT_TOLERANCES
    nodes: int = DEFAULT_QUADRATURE_NODES
    seed: int = 42
    samples: int = 200
    fmt: str = "json"

    def laws(self) -> list[MaterialLaw]:
        names = ISOTROPIC_LAWS if self.law is None else (self.law,)
        return [make_law(name, self.params) for name in names]

    def single_law(self, default: str = "svk") -> MaterialLaw:
        return make_law(self.law or default, self.params)


def config_from_args(args) -> JobConfig:
    params = {"lambda": args.lam, "mu": args.mu, "kappa": args.kappa, "rho0": args.rho0}
    tol = DEFAULT_TOLERANCES
    if args.tol_exact is not None:
        tol = replace(tol, exact=args.tol_exact)
    if args.tol_fd is not None:
        tol = replace(tol, fd=args.tol_fd)
    cfg = JobConfig(
        law=args.law,
        params={k: v for k, v in params.items() if v is not None},
        tolerances=tol,
        nodes=args.nodes,
        seed=args.seed,
        samples=args.samples,
        fmt=args.format,
    )
    if cfg.samples < 1:
        raise UsageError("--samples must be at least 1")
    if cfg.nodes < 1:
        raise UsageError("--nodes must be at least 1")
    try:
        cfg.laws()
    except InvalidInputError as exc:
        raise UsageError(str(exc)) from None
    return cfg


def fmt_float(x) -> str:
    return format(float(x), ".17g")


def _finite_or_none(obj):
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _finite_or_none(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite_or_none(v) for v in obj]
    return obj


def dump_json(obj) -> str:
    # float repr is the shortest string that round-trips exactly; non-finite values become null
    return json.dumps(_finite_or_none(obj), indent=2, allow_nan=False) + "\n"


def dump_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt_float(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def load_records(path: str, key: str) -> list:
    try:
        with open(path) if path != "-" else sys.stdin as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    if not isinstance(data, list):
        raise UsageError(f"{path}: top level must be an array of records")
    out = []
    for i, rec in enumerate(data):
        if not isinstance(rec, dict) or key not in rec:
            raise UsageError(f"record {i}: expected an object with key {key!r}")
        value = rec[key]
        if not (isinstance(value, list) and len(value) == 3
                and all(isinstance(row, list) and len(row) == 3 for row in value)):
            n = sum(len(r) if isinstance(r, list) else 1 for r in value) if isinstance(value, list) else 1
            raise UsageError(f"record {i}: {key!r} must be a 3x3 nested array (got {n} entries)")
        try:
            M = as_mat3(value)
            if key == "T":
                M = as_sym(M)
        except (InvalidInputError, TypeError, ValueError) as exc:
            raise UsageError(f"record {i}: {exc}") from None
        out.append(M)
    return out


def write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_stress(args, cfg: JobConfig) -> int:
    law = cfg.single_law()
    records = load_records(args.input, "F")
    out, ok = [], True
    for i, F in enumerate(records):
        try:
            F = DefGrad(F, det_floor=cfg.tolerances.det_floor)
            report = verify_theorem(law, F, cfg.tolerances)
            rec = {"index": i, **report.to_json_dict(), "sigma": absolute_cauchy(law, F).tolist()}
            ok &= report.passed
        except HyperdualError as exc:
            rec = {"index": i, "error": f"{type(exc).__name__}: {exc}", "pass": False}
            ok = False
        out.append(rec)
    if cfg.fmt == "csv":
        header = ["index", "pass", "error"] + [f"sigma_{c}" for c in ("xx", "yy", "zz", "xy", "xz", "yz")]
        rows = []
        for rec in out:
            s = list(sym6(rec["sigma"])) if "sigma" in rec else [""] * 6
            rows.append([rec["index"], rec["pass"], rec.get("error", "")] + [float(v) if v != "" else v for v in s])
        text = dump_csv(header, rows)
    else:
        text = dump_json({"law": law.name, "params": _params_dict(law), "records": out})
    write_output(text, args.output)
    return EXIT_OK if ok else EXIT_FAIL


def _params_dict(law: MaterialLaw) -> dict:
    p = law.params
    return {"lambda": p.lam, "mu": p.mu, "rho0": p.rho0, "kappa": p.kappa}


def cmd_verify(args, cfg: JobConfig) -> int:
    start = time.perf_counter()
    results = run_all(cfg.laws(), cfg.samples, cfg.seed, cfg.tolerances, cfg.nodes)
    ok = all(r.ok for r in results)
    if cfg.fmt == "csv":
        text = dump_csv(
            ["suite", "law", "samples", "passed", "max_residual", "tolerance", "pass"],
            [[r.suite, r.law or "", r.samples, r.passed, r.max_residual, r.tolerance, r.ok] for r in results],
        )
    else:
        text = dump_json({
            "seed": cfg.seed,
            "samples": cfg.samples,
            "laws": [law.name for law in cfg.laws()],
            "nodes": cfg.nodes,
            "suites": [r.to_json_dict() for r in results],
            "pass": ok,
        })
    write_output(text, args.output)
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"{status} {r.suite:<24} {r.law or '-':<20} {r.passed}/{r.samples} max={r.max_residual:.3e} tol={r.tolerance:.1e}",
              file=sys.stderr)
    print(f"runtime {time.perf_counter() - start:.2f} s", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_invert(args, cfg: JobConfig) -> int:
    law = cfg.single_law()
    records = load_records(args.input, "T")
    out, ok = [], True
    for i, T in enumerate(records):
        try:
            res = conjugate(law, T)
            rec = {
                "index": i,
                "lnB": res.argmax.tolist(),
                "value": res.value,
                "iterations": res.iterations,
                "converged": res.converged,
                "gradient_norm_final": res.gradient_norm_final,
            }
            ok &= res.converged
        except HyperdualError as exc:
            rec = {"index": i, "error": f"{type(exc).__name__}: {exc}", "converged": False}
            ok = False
        out.append(rec)
    if cfg.fmt == "csv":
        header = ["index", "converged", "error"] + [f"lnB_{c}" for c in ("xx", "yy", "zz", "xy", "xz", "yz")]
        rows = []
        for rec in out:
            h = [float(v) for v in sym6(rec["lnB"])] if "lnB" in rec else [""] * 6
            rows.append([rec["index"], rec["converged"], rec.get("error", "")] + h)
        text = dump_csv(header, rows)
    else:
        text = dump_json({"law": law.name, "params": _params_dict(law), "records": out})
    write_output(text, args.output)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_dexp_table(args, cfg: JobConfig) -> int:
    rows = dexp_convergence_table(cfg.samples, cfg.seed, TABLE_SIZES)
    random_errors = [r["max_rel_error"] for r in rows if r["set"] == "random"]
    zero_errors = [r["max_rel_error"] for r in rows if r["set"] == "zero"]
    monotone = is_monotone_to_floor(random_errors)
    ok = monotone and max(zero_errors) <= 1e-15 and all(math.isfinite(e) for e in random_errors)
    if cfg.fmt == "csv":
        text = dump_csv(["set", "nodes", "max_rel_error"], [[r["set"], r["nodes"], r["max_rel_error"]] for r in rows])
    else:
        text = dump_json({"seed": cfg.seed, "samples": cfg.samples, "rows": rows, "monotone": monotone, "pass": ok})
    write_output(text, args.output)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--law", choices=sorted(LAWS), default=None,
                        help="material law (verify: default all isotropic laws; others: svk)")
    common.add_argument("--lambda", dest="lam", type=float, default=None)
    common.add_argument("--mu", type=float, default=None)
    common.add_argument("--kappa", type=float, default=None, help="bulk modulus; replaces --lambda")
    common.add_argument("--rho0", type=float, default=None)
    common.add_argument("--nodes", type=int, default=DEFAULT_QUADRATURE_NODES)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--samples", type=int, default=200)
    common.add_argument("--tol-exact", type=float, default=None)
    common.add_argument("--tol-fd", type=float, default=None)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", "-o", default=None, help="output file (default stdout)")

    parser = argparse.ArgumentParser(prog="hyperdual", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("stress", parents=[common], help="stress reports for deformation gradients")
    p.add_argument("input", help='JSON array of {"F": 3x3} records ("-" for stdin)')
    p.set_defaults(func=cmd_stress)
    p = sub.add_parser("verify", parents=[common], help="run the seeded property suites")
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("invert", parents=[common], help="recover ln B from sigma/rho")
    p.add_argument("input", help='JSON array of {"T": symmetric 3x3} records ("-" for stdin)')
    p.set_defaults(func=cmd_invert)
    p = sub.add_parser("dexp-table", parents=[common], help="quadrature convergence table")
    p.set_defaults(func=cmd_dexp_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        with np.errstate(all="ignore"):
            return args.func(args, cfg)
    except UsageError as exc:
        print(f"hyperdual {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
