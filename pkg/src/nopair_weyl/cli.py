"""Command-line front end: ``nopair-weyl <command> [options]``.

Exit status is 0 on success, 1 on a numerical or verification failure and 2
on a usage error.
"""
from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from . import __version__
from .bounds import compute_constants, energy_lower_bound_check, lieb_yau_suite, random_sequences
from .coulomb_matrix import DEFAULT_NMAX, build_block, verify_lemma_pre, verify_lemma2
from .export import render
from .oracle_quadrature import verify_oracle
from .report import VerificationReport, combine
from .spectral import NumericalError, assemble, lowest_eigenvalues, scan
from .special_fns import gautschi_check, gautschi_grid
from .trial import FitError, default_cutoffs, fit_component_slopes, fit_log_slope, trial_energies

logger = logging.getLogger("nopair_weyl")

SUITES = ("lemma-pre", "lemma2", "gautschi", "lieb-yau", "oracle", "all")


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--seed", type=int, default=0)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="nopair-weyl", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("zc", parents=[common], help="critical coupling and bound constants")

    p = sub.add_parser("elements", parents=[common], help="dump the matrices of one sector")
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--nmax", type=int, default=8)

    p = sub.add_parser("spectrum", parents=[common], help="lowest eigenvalues of one truncated block")
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--Z", type=float, required=True)
    p.add_argument("--nmax", type=int, default=DEFAULT_NMAX)
    p.add_argument("--k", type=int, default=1)

    p = sub.add_parser("scan", parents=[common], help="lowest eigenvalues over an (m, Z, n_max) grid")
    p.add_argument("--m", type=int, nargs="+", default=[0])
    p.add_argument("--Z", type=float, nargs="+")
    p.add_argument("--Z-min", type=float, dest="Z_min")
    p.add_argument("--Z-max", type=float, dest="Z_max")
    p.add_argument("--Z-steps", type=int, dest="Z_steps")
    p.add_argument("--nmax", type=int, nargs="+", default=[DEFAULT_NMAX])
    p.add_argument("--k", type=int, default=1)

    p = sub.add_parser("verify", parents=[common], help="run an inequality suite")
    p.add_argument("suite_pos", nargs="?", choices=SUITES, metavar="SUITE")
    p.add_argument("--suite", choices=SUITES)
    p.add_argument("--nmax", type=int, help="truncation (suite-specific default)")

    p = sub.add_parser("trial", parents=[common], help="trial-sequence energies and log-slope fit")
    p.add_argument("--Z", type=float, required=True)
    p.add_argument("--Nmax", type=int, default=20_000)
    return parser


def _z_values(args) -> list[float]:
    if args.Z is not None:
        zs = list(args.Z)
    elif None not in (args.Z_min, args.Z_max, args.Z_steps):
        if args.Z_steps < 1:
            raise UsageError("--Z-steps must be at least 1")
        zs = np.linspace(args.Z_min, args.Z_max, args.Z_steps).tolist()
    else:
        raise UsageError("scan needs --Z or all of --Z-min/--Z-max/--Z-steps")
    if any(not (z >= 0 and np.isfinite(z)) for z in zs):
        raise UsageError("Z values must be finite and non-negative")
    return zs


def _cmd_zc(args):
    c = compute_constants()
    return [{"C0": c.C0, "C1": c.C1, "Zc": c.Zc}], {}


def _cmd_elements(args):
    b = build_block(args.m, args.nmax)
    rows = []
    for n in range(b.size):
        for n2 in range(b.size):
            rows.append({"m": b.m, "n": n, "n2": n2,
                         "t": float(b.kinetic[n]) if n == n2 else 0.0,
                         "v0": float(b.v0[n, n2]), "v1": float(b.v1[n, n2])})
    return rows, {}


def _cmd_spectrum(args):
    if args.Z < 0:
        raise UsageError("--Z must be non-negative")
    vals = lowest_eigenvalues(assemble(args.m, args.Z, args.nmax), args.k)
    return [{"m": args.m, "Z": args.Z, "n_max": args.nmax, "index": i, "eigenvalue": float(v)}
            for i, v in enumerate(vals)], {}


def _cmd_scan(args):
    zs = _z_values(args)
    errors = []
    recs = scan(zs, args.m, args.nmax, args.k, errors=errors)
    rows = []
    for r in recs:
        row = {"m": r.m, "Z": r.Z, "n_max": r.n_max}
        row.update({f"eig_{i}": v for i, v in enumerate(r.lowest_k_eigenvalues)})
        rows.append(row)
    meta = {"failed_cells": [{"m": m, "Z": z, "n_max": n, "error": str(e)} for (m, z, n), e in errors]}
    if errors:
        meta["status"] = "partial"
    return rows, meta


def _run_suite(name: str, nmax, seed: int) -> VerificationReport:
    if name == "lemma-pre":
        return verify_lemma_pre(range(-20, 21), nmax or 40)
    if name == "lemma2":
        return verify_lemma2(range(-20, 21), nmax or 40)
    if name == "gautschi":
        x, s = gautschi_grid()
        return gautschi_check(x, s)
    if name == "lieb-yau":
        consts = compute_constants()
        base = lieb_yau_suite(n_max=nmax or 4096, seed=seed)
        seqs = random_sequences(200, 255, seed + 1)
        energy = [energy_lower_bound_check(z, seqs) for z in (0.0, consts.Zc / 2, consts.Zc)]
        return combine("lieb-yau", [base] + energy, seed=seed)
    if name == "oracle":
        return verify_oracle(range(-5, 6), nmax or 20)
    raise UsageError(f"unknown suite {name!r}")


def _cmd_verify(args):
    suite = args.suite or args.suite_pos
    if suite is None:
        raise UsageError("verify needs a suite name")
    names = SUITES[:-1] if suite == "all" else (suite,)
    reports = [_run_suite(n, args.nmax, args.seed) for n in names]
    rows = []
    for rep in reports:
        rows.append({"suite": rep.name, "status": rep.status, "n_checks": rep.n_checks,
                     "n_failed": rep.n_failed, "n_inconclusive": rep.n_inconclusive,
                     "worst_margin": rep.worst_margin, "worst_case": rep.worst_case})
        for line in rep.details.get("parts", []):
            logger.info("  %s", line)
        logger.info(rep.summary())
    failed = any(not r.passed for r in reports)
    return rows, {"failed": failed}


def _cmd_trial(args):
    if args.Z < 0:
        raise UsageError("--Z must be non-negative")
    cuts = default_cutoffs(args.Nmax)
    records = [trial_energies(n) for n in cuts]
    slope = fit_log_slope(records, args.Z)
    comps = fit_component_slopes(records)
    consts = compute_constants()
    rows = [{"N": r.N, "kinetic": r.kinetic, "v0_energy": r.v0_energy, "v1_energy": r.v1_energy,
             "total": r.total(args.Z), "fitted_slope": slope} for r in records]
    meta = {"fitted_slope": slope, "expected_slope": 2.0 * (1.0 - args.Z / consts.Zc),
            "component_slopes": comps,
            "corrected_slope": fit_log_slope(records, args.Z, correction=0.25)}
    logger.info("fitted slope %.6f (asymptotic 2(1 - Z/Zc) = %.6f)", slope, meta["expected_slope"])
    return rows, meta


COMMANDS = {
    "zc": _cmd_zc,
    "elements": _cmd_elements,
    "spectrum": _cmd_spectrum,
    "scan": _cmd_scan,
    "verify": _cmd_verify,
    "trial": _cmd_trial,
}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = {k: v for k, v in sorted(vars(args).items()) if k != "out"}
    try:
        rows, meta = COMMANDS[args.command](args)
    except (UsageError, FitError) as exc:
        parser.error(str(exc))
    except (ValueError, NumericalError, MemoryError, np.linalg.LinAlgError) as exc:
        print(f"nopair-weyl {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    failed = bool(meta.pop("failed", False))
    meta = {"version": __version__, "seed": args.seed, "config": config, **meta}
    text = render(rows, meta, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 1 if failed or meta.get("status") == "partial" else 0


def main(argv=None) -> None:
    logging.basicConfig(level=logging.INFO, format="%(message)s", stream=sys.stderr)
    sys.exit(run(argv))
