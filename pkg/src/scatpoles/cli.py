"""Command-line front end.

Summaries go out as JSON (sorted keys, no timestamps) and point clouds as
CSV with header ``l,twice_nu,re,im,multiplicity[,family]``.  Exit status is
0 on success, 2 for an invalid configuration and 3 for a numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path


from . import __version__
from .asymconst import QuadratureError, constant_report
from .counting import CountingFunction, count_N, regularized_M, theorem2_gap, weyl_ball_count
from .olvermap import eye_boundary
from .specfun import HalfIntOrder
from .sphere import (RootCountError, multiplicity_m, olver_approx_resonances, sphere_table,
                     total_multiplicity)
from .transparent import WindingError, resonances, transparent_table

log = logging.getLogger("scatpoles")

SUBCOMMANDS = ("constant", "sphere-count", "transparent-count", "approx-resonances",
               "counting-compare", "eye-boundary")
CSV_HEADER = ["l", "twice_nu", "re", "im", "multiplicity"]
EXIT_INVALID = 2
EXIT_NUMERICAL = 3


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    subcommand: str
    n: int = 3
    radius: float = 1.0
    c: float | None = None
    rmax: float | None = None
    tol: float = 1e-8
    out: str | None = None
    format: str = "json"
    emit_zeros: str | None = None
    lmin: int = 1
    lmax: int = 29
    samples: int = 401
    csv_in: list = field(default_factory=list)
    r: list = field(default_factory=list)
    R: float = 1.01

    def validate(self) -> None:
        if self.subcommand not in SUBCOMMANDS:
            raise ConfigError(f"unknown subcommand {self.subcommand}")
        if self.n < 3 or self.n % 2 == 0:
            raise ConfigError("--n must be an odd integer >= 3")
        if not self.radius > 0:
            raise ConfigError("--radius must be positive")
        if not 1e-12 <= self.tol <= 1e-3:
            raise ConfigError("--tol must lie in [1e-12, 1e-3]")
        if self.format not in ("csv", "json"):
            raise ConfigError("--format must be csv or json")
        if self.subcommand == "transparent-count":
            if self.c is None or not self.c > 0 or self.c == 1:
                raise ConfigError("--c must be positive and different from 1")
        if self.subcommand in ("sphere-count", "transparent-count"):
            if self.rmax is None or not self.rmax > 0:
                raise ConfigError("--rmax must be positive")
        if self.subcommand == "approx-resonances" and not 0 <= self.lmin <= self.lmax:
            raise ConfigError("need 0 <= --lmin <= --lmax")
        if self.subcommand == "eye-boundary" and self.samples < 2:
            raise ConfigError("--samples must be >= 2")
        if self.subcommand == "counting-compare":
            if not self.csv_in:
                raise ConfigError("counting-compare needs at least one --csv")
            if not self.r or min(self.r) <= 0:
                raise ConfigError("--r values must be positive")
            if not self.R > self.radius:
                raise ConfigError("--R must exceed --radius")


def _record_rows(records, with_family: bool):
    rows = []
    for rec in records:
        row = [rec.l, rec.nu.twice_nu, repr(float(rec.lam.real)), repr(float(rec.lam.imag)),
               rec.multiplicity]
        if with_family:
            row.append(rec.family)
        rows.append(row)
    rows.sort(key=lambda r: (r[0], float(r[2]), float(r[3])))
    return rows


def _write_csv(path, header, rows) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    _emit(path, buf.getvalue())


def _emit(path, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _report(cfg: RunConfig, payload: dict, achieved: dict) -> str:
    doc = dict(payload)
    doc["config"] = {k: v for k, v in asdict(cfg).items()}
    doc["version"] = __version__
    doc["tolerances"] = {"requested": cfg.tol, **achieved}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _cmd_constant(cfg: RunConfig) -> str:
    rep = constant_report(cfg.n)
    achieved = {"two_route_relative": rep.identity_residuals["two_route_relative"]}
    return _report(cfg, rep.as_dict(), achieved)


def _cmd_sphere(cfg: RunConfig) -> str:
    recs = sphere_table(cfg.n, cfg.radius, cfg.rmax)
    inside = [r for r in recs if abs(r.lam) < cfg.rmax]
    if cfg.emit_zeros:
        _write_csv(cfg.emit_zeros, CSV_HEADER, _record_rows(recs, False))
    payload = {
        "total": total_multiplicity(inside),
        "distinct_zeros": len(inside),
        "l_max": max((r.l for r in inside), default=None),
        "normalized": total_multiplicity(inside) / (cfg.rmax * cfg.radius) ** cfg.n,
    }
    return _report(cfg, payload, {"root_relative_step": 1e-14})


def _cmd_transparent(cfg: RunConfig) -> str:
    recs = transparent_table(cfg.n, cfg.c, cfg.radius, cfg.rmax)
    inside = [r for r in recs if abs(r.lam) < cfg.rmax]
    if cfg.emit_zeros:
        _write_csv(cfg.emit_zeros, CSV_HEADER + ["family"], _record_rows(resonances(recs), True))
    fam: dict[str, int] = {}
    for r in inside:
        fam[r.family] = fam.get(r.family, 0) + r.multiplicity
    total = total_multiplicity(inside)
    payload = {
        "total": total,
        "family_counts": dict(sorted(fam.items())),
        "normalized": total / (cfg.rmax * cfg.radius) ** cfg.n,
    }
    return _report(cfg, payload, {"newton_relative_residual": 1e-10})


def _cmd_approx(cfg: RunConfig):
    rows = []
    for l in range(cfg.lmin, cfg.lmax + 1):
        nu = HalfIntOrder.from_ln(l, cfg.n)
        if nu.m == 0:
            continue
        mult = multiplicity_m(l, cfg.n)
        for z in olver_approx_resonances(nu) / cfg.radius:
            rows.append([l, nu.twice_nu, repr(float(z.real)), repr(float(z.imag)), mult,
                         "sphere_olver"])
    return CSV_HEADER + ["family"], rows


def _read_records_csv(path):
    mods, mults = [], []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            mods.append(abs(complex(float(row["re"]), float(row["im"]))))
            mults.append(int(row["multiplicity"]))
    return mods, mults


def _cmd_compare(cfg: RunConfig) -> str:
    mods, mults = [], []
    for path in cfg.csv_in:
        a, b = _read_records_csv(path)
        mods += a
        mults += b
    cf = CountingFunction.from_pairs(mods, mults, cfg.n)
    rows = []
    for r in sorted(cfg.r):
        lhs, rhs = theorem2_gap(cf, cfg.n, cfg.radius, cfg.R, r)
        rows.append({"r": r, "N": count_N(cf, r), "M": regularized_M(cf, r),
                     "weyl": weyl_ball_count(cfg.n, cfg.R, r), "lhs": lhs, "rhs": rhs})
    return _report(cfg, {"rows": rows}, {})


def run(cfg: RunConfig) -> int:
    try:
        cfg.validate()
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    log.info("running %s", cfg.subcommand)
    try:
        if cfg.subcommand == "constant":
            _emit(cfg.out, _cmd_constant(cfg))
        elif cfg.subcommand == "sphere-count":
            _emit(cfg.out, _cmd_sphere(cfg))
        elif cfg.subcommand == "transparent-count":
            _emit(cfg.out, _cmd_transparent(cfg))
        elif cfg.subcommand == "approx-resonances":
            header, rows = _cmd_approx(cfg)
            if cfg.format == "json":
                doc = [dict(zip(header, r)) for r in rows]
                _emit(cfg.out, _report(cfg, {"resonances": doc}, {}))
            else:
                _write_csv(cfg.out, header, rows)
        elif cfg.subcommand == "counting-compare":
            _emit(cfg.out, _cmd_compare(cfg))
        elif cfg.subcommand == "eye-boundary":
            eb = eye_boundary(cfg.samples)
            rows = [[repr(float(t)), repr(float(z.real)), repr(float(z.imag))]
                    for t, z in zip(eb.t, eb.z)]
            _write_csv(cfg.out, ["t", "re", "im"], rows)
    except (RootCountError, WindingError, QuadratureError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="scatpoles", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def common(sp, fmt="json"):
        sp.add_argument("--n", type=int, default=3, help="odd dimension (default 3)")
        sp.add_argument("--tol", type=float, default=1e-8)
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default=fmt)

    sp = sub.add_parser("constant", help="tau_n and A by two routes")
    common(sp)

    sp = sub.add_parser("sphere-count", help="count Dirichlet sphere poles")
    common(sp)
    sp.add_argument("--radius", type=float, default=1.0)
    sp.add_argument("--rmax", type=float, required=True)
    sp.add_argument("--emit-zeros", default=None, metavar="CSV")

    sp = sub.add_parser("transparent-count", help="count transparent-ball poles")
    common(sp)
    sp.add_argument("--c", type=float, required=True, help="interior wave speed")
    sp.add_argument("--radius", type=float, default=1.0)
    sp.add_argument("--rmax", type=float, required=True)
    sp.add_argument("--emit-zeros", default=None, metavar="CSV")

    sp = sub.add_parser("approx-resonances", help="leading-order sphere poles from the Olver map")
    common(sp, fmt="csv")
    sp.add_argument("--radius", type=float, default=1.0)
    sp.add_argument("--lmin", type=int, default=1)
    sp.add_argument("--lmax", type=int, default=29)

    sp = sub.add_parser("counting-compare", help="N, M and the reference count from CSV tables")
    common(sp)
    sp.add_argument("--csv", dest="csv_in", action="append", default=[], required=True)
    sp.add_argument("--radius", type=float, default=1.0)
    sp.add_argument("--R", type=float, default=1.01)
    sp.add_argument("--r", type=float, action="append", default=[], required=True)

    sp = sub.add_parser("eye-boundary", help="samples of the upper boundary of K")
    common(sp, fmt="csv")
    sp.add_argument("--samples", type=int, default=401)
    return p


def main(argv=None) -> int:
    args = vars(build_parser().parse_args(argv))
    logging.basicConfig(level=logging.INFO if args.pop("verbose") else logging.WARNING)
    cfg = RunConfig(**args)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
