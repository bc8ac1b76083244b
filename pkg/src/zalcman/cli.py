"""Command-line front end.

Subcommands::

    verify   closed-form bound + extremal sharpness + random soundness + search
    search   brute-force maxima (exit 1 only if a maximum beats a proved bound)
    probe    empirical maxima over a lambda grid, open ranges included
    table    closed-form bounds only

Exit codes: 0 success, 1 invariant violation, 2 usage error.
Precedence: command-line flags > ``--config`` JSON file > defaults.
"""
from __future__ import annotations

import argparse
import itertools
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .classes import (ClassSpec, CoefficientClass, ConvexHullOfConvex, NoshiroWarschawski,
                      h_membership, profile_from_name, random_h_coefficients, s_factor)
from .errors import ValidationError
from .functionals import (R2_DIVIDED, R2_READINGS, FunctionalSpec, bound_for, extremal_series,
                          h_tie_lambda, r_threshold, zalcman)
from .measures import moments_batch, sample_atoms
from .report import base_row, render, report_row
from .search import SOUNDNESS_TOL, SearchConfig, brute_force_max, h_search, probe_open_range
from .series import PowerSeries, default_order

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

SHARPNESS_TOL = 1e-12
SEARCH_GAP_TOL = 1e-3

DEFAULTS = {
    "class": "coc", "profile": None, "beta": 0.0, "nu": 0.0, "table": None,
    "lambda": None, "n": [2], "m": None, "pairs": None,
    "atoms": None, "grid": 720, "restarts": 20, "seed": 0, "tol": 1e-10,
    "samples": 2000, "r2_reading": R2_DIVIDED, "format": "table", "out": None,
}


class UsageError(Exception):
    pass


@dataclass
class RunManifest:
    command: str
    cls: ClassSpec
    lambdas: list[str]
    pairs: list[tuple[int, int]]
    config: SearchConfig
    fmt: str = "table"
    out: str | None = None
    samples: int = 2000
    r2_reading: str = R2_DIVIDED
    cells: list[FunctionalSpec] = field(default_factory=list)

    @property
    def profile_label(self) -> str:
        return self.cls.profile.label if isinstance(self.cls, CoefficientClass) else ""


def _int_list(value) -> list[int]:
    if isinstance(value, int):
        return [value]
    if isinstance(value, list):
        return [int(v) for v in value]
    return [int(v) for v in str(value).split(",") if v.strip()]


def _str_list(value) -> list[str]:
    if isinstance(value, list):
        return [str(v) for v in value]
    if isinstance(value, (int, float)):
        return [repr(value)]
    return [v.strip() for v in str(value).split(",") if v.strip()]


def _pairs(value) -> list[tuple[int, int]]:
    if isinstance(value, list):
        return [(int(a), int(b)) for a, b in value]
    out = []
    for tok in str(value).split(","):
        a, _, b = tok.strip().partition(":")
        out.append((int(a), int(b)))
    return out


def _class_spec(opts: dict) -> ClassSpec:
    name = str(opts["class"]).lower()
    if name in ("coc", "co(c)"):
        return ConvexHullOfConvex()
    if name in ("r", "nw-class", "noshiro"):
        return NoshiroWarschawski(float(opts["beta"]))
    if name == "h":
        if not opts["profile"]:
            raise UsageError("--class H needs --profile")
        table = opts["table"]
        if isinstance(table, str):
            table = json.loads(table)
        return CoefficientClass(profile_from_name(opts["profile"], float(opts["beta"]),
                                                  float(opts["nu"]), table))
    raise UsageError(f"unknown class {opts['class']!r}; choose coc, R or H")


def _resolve_lambda(token: str, cls: ClassSpec, n: int, m: int) -> float:
    """Numbers pass through; ``tie`` and ``threshold`` name class-specific values."""
    if token == "tie":
        if not isinstance(cls, CoefficientClass):
            raise UsageError("lambda token 'tie' needs --class H")
        return h_tie_lambda(cls.profile, n)
    if token == "threshold":
        if not isinstance(cls, NoshiroWarschawski):
            raise UsageError("lambda token 'threshold' needs --class R")
        return r_threshold(cls.beta, n, m)
    if token.startswith("2*"):
        return 2.0 * _resolve_lambda(token[2:], cls, n, m)
    value = float(token)
    if not (value > 0 and math.isfinite(value)):
        raise UsageError(f"lambda must be positive, got {token}")
    return value


def build_manifest(command: str, opts: dict) -> RunManifest:
    try:
        cls = _class_spec(opts)
        if opts["lambda"] is None:
            raise UsageError("--lambda is required")
        lambdas = _str_list(opts["lambda"])
        if not lambdas:
            raise UsageError("empty lambda grid")
        if opts["pairs"] is not None:
            pairs = _pairs(opts["pairs"])
        else:
            ns = _int_list(opts["n"])
            ms = ns if opts["m"] is None else _int_list(opts["m"])
            pairs = list(zip(ns, ns)) if opts["m"] is None else list(itertools.product(ns, ms))
        if isinstance(cls, CoefficientClass):
            pairs = [(n, n) for n in dict.fromkeys(n for n, _ in pairs)]
        if not pairs:
            raise UsageError("empty (n, m) grid")
        if opts["r2_reading"] not in R2_READINGS:
            raise UsageError(f"--r2-reading must be one of {R2_READINGS}")
        cfg = SearchConfig(atom_count=None if opts["atoms"] is None else int(opts["atoms"]),
                           angle_grid=int(opts["grid"]), restarts=int(opts["restarts"]),
                           seed=int(opts["seed"]), tolerance=float(opts["tol"]))
        cells = [FunctionalSpec(_resolve_lambda(tok, cls, n, m), n, m)
                 for n, m in pairs for tok in lambdas]
        if opts["format"] not in ("json", "csv", "table"):
            raise UsageError(f"unknown format {opts['format']!r}")
        samples = int(opts["samples"])
        if samples < 0:
            raise UsageError("--samples must be nonnegative")
    except (ValidationError, ValueError, TypeError, KeyError) as exc:
        raise UsageError(str(exc)) from exc
    return RunManifest(command, cls, lambdas, pairs, cfg, opts["format"], opts["out"],
                       samples, opts["r2_reading"], cells)


def _sampled_max(cls: ClassSpec, spec: FunctionalSpec, samples: int, K: int, seed: int) -> float:
    """Largest ``|functional|`` over random members (independent of the search code)."""
    if samples == 0:
        return 0.0
    rng = np.random.default_rng([seed, 0x5EED])
    if isinstance(cls, CoefficientClass):
        N = default_order(spec.n, spec.m)
        a = random_h_coefficients(cls.profile, N, samples, rng, must_include=(spec.n, spec.top))
        vals = np.abs(spec.lam * a[:, spec.n - 1] * a[:, spec.m - 1] - a[:, spec.top - 1])
        return float(vals.max())
    angles, weights = sample_atoms(rng, K, samples)
    coef = {k: s_factor(cls, k) * moments_batch(angles, weights, k - 1) / 2
            for k in {spec.n, spec.m, spec.top}}
    return float(np.abs(spec.lam * coef[spec.n] * coef[spec.m] - coef[spec.top]).max())


def _expected_h_regime(cls: CoefficientClass, spec: FunctionalSpec) -> str:
    tie = h_tie_lambda(cls.profile, spec.n)
    if abs(spec.lam - tie) <= 1e-12 * tie:
        return "H:tie"
    return "H:top-coefficient" if spec.lam < tie else "H:squared-coefficient"


def cmd_verify(man: RunManifest) -> tuple[int, list[dict]]:
    rows, failed = [], False
    for spec in man.cells:
        cls = man.cls
        bound = bound_for(cls, spec, man.r2_reading)
        row = base_row(cls.label, man.profile_label, spec, bound)
        problems = []
        if not bound.applicable:
            row["note"] = "open range: not verified"
            rows.append(row)
            continue
        N = default_order(spec.n, spec.m)
        extremal_values = [abs(zalcman(s, spec)) for s in extremal_series(cls, spec, N, man.r2_reading)]
        if not extremal_values or any(abs(v - bound.value) > SHARPNESS_TOL * max(1.0, bound.value)
                                      for v in extremal_values):
            problems.append("extremal does not attain bound")
        K = man.config.atoms_for(spec)
        sampled = _sampled_max(cls, spec, man.samples, K, man.config.seed)
        if sampled > bound.value + SOUNDNESS_TOL:
            problems.append(f"random member exceeds bound: {sampled!r}")
        if isinstance(cls, CoefficientClass):
            rep = h_search(cls.profile, spec.lam, spec.n, seed=man.config.seed)
            if rep.bound.regime != _expected_h_regime(cls, spec):
                problems.append(f"branch label {rep.bound.regime} mismatches case split")
            if rep.note:
                problems.append(rep.note)
            for s in extremal_series(cls, spec, N):
                if not h_membership(s, cls.profile)[0]:
                    problems.append("extremal outside class")
        else:
            rep = brute_force_max(cls, spec, man.config, man.r2_reading)
        row = report_row(rep)
        row["sampled_max"] = sampled
        row["extremal_values"] = extremal_values
        if not rep.sound:
            problems.append("search exceeds bound")
        if rep.gap > SEARCH_GAP_TOL:
            problems.append(f"search gap {rep.gap!r} above {SEARCH_GAP_TOL}")
        row["note"] = "; ".join(problems) if problems else "verified"
        failed |= bool(problems)
        rows.append(row)
    return (EXIT_VIOLATION if failed else EXIT_OK), rows


def cmd_search(man: RunManifest) -> tuple[int, list[dict]]:
    rows, failed = [], False
    for spec in man.cells:
        if isinstance(man.cls, CoefficientClass):
            rep = h_search(man.cls.profile, spec.lam, spec.n, seed=man.config.seed)
        else:
            rep = brute_force_max(man.cls, spec, man.config, man.r2_reading)
        failed |= not rep.sound
        rows.append(report_row(rep))
    return (EXIT_VIOLATION if failed else EXIT_OK), rows


def cmd_probe(man: RunManifest) -> tuple[int, list[dict]]:
    rows = []
    for n, m in man.pairs:
        lams = [spec.lam for spec in man.cells if (spec.n, spec.m) == (n, m)]
        for rep in probe_open_range(man.cls, lams, (n, m), man.config, man.r2_reading):
            rows.append(report_row(rep))
    return EXIT_OK, rows


def cmd_table(man: RunManifest) -> tuple[int, list[dict]]:
    rows = []
    for spec in man.cells:
        row = base_row(man.cls.label, man.profile_label, spec, bound_for(man.cls, spec, man.r2_reading))
        row["note"] = "" if row["applicable"] else "open range"
        rows.append(row)
    return EXIT_OK, rows


COMMANDS = {"verify": cmd_verify, "search": cmd_search, "probe": cmd_probe, "table": cmd_table}


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zalcman", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        # defaults are None so the config file can fill gaps
        p.add_argument("--class", dest="class")
        p.add_argument("--profile", help="starlike, convex, ust, ucv, nw, spiral, hurwitz, custom")
        p.add_argument("--beta", type=float)
        p.add_argument("--nu", type=float)
        p.add_argument("--table", help="custom profile as a JSON array r(2), r(3), ...")
        p.add_argument("--lambda", dest="lambda",
                       help="comma list; tokens 'tie' (H), 'threshold' (R) and '2*<token>' allowed")
        p.add_argument("--n")
        p.add_argument("--m")
        p.add_argument("--pairs", help="explicit (n, m) cells, e.g. 2:2,2:3")
        p.add_argument("--atoms", type=int)
        p.add_argument("--grid", type=int)
        p.add_argument("--restarts", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--tol", type=float)
        p.add_argument("--samples", type=int, help="random members for soundness checks")
        p.add_argument("--r2-reading", dest="r2_reading", choices=R2_READINGS)
        p.add_argument("--format", choices=("json", "csv", "table"))
        p.add_argument("--out")
        p.add_argument("--config")
    return parser


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    unknown = set(data) - set(DEFAULTS)
    if unknown:
        raise UsageError(f"unknown config keys {sorted(unknown)}")
    return data


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "config") and v is not None}
    try:
        opts = {**DEFAULTS, **_load_config(args.config), **flags}
        man = build_manifest(args.command, opts)
        code, rows = COMMANDS[args.command](man)
    except UsageError as exc:
        print(f"zalcman {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    status = "ok" if code == EXIT_OK else "violation"
    text = render(man.fmt, args.command, rows, status)
    if man.out:
        Path(man.out).write_text(text)
        if man.fmt != "table":
            print(render("table", args.command, rows, status), end="")
    else:
        print(text, end="")
    return code


if __name__ == "__main__":
    sys.exit(main())
