"""Command-line interface.

    bidiff densities -m 4 --format latex
    bidiff charges -m 10 --format json -o charges.json
    bidiff flux -m 3
    bidiff verify -m 12
    bidiff calculus-check --seed 7

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import List, Optional

from . import jetio
from .checks import calculus_suite
from .conserve import (
    VerificationError,
    charge_integrand,
    conservation_check,
    load_catalog,
    match_reference,
    parity_check,
    weight_check,
)
from .densities import flux, rho
from .randgen import DEFAULT_SEED

COMMANDS = ("densities", "charges", "flux", "verify", "calculus-check")
_LABEL = {"densities": ("rho", "\\rho", "density"), "charges": ("Q", "Q", "charge"), "flux": ("flux", "F", "flux")}


@dataclass
class CliConfig:
    command: str
    max_order: int = 10
    format: str = "text"
    output_path: Optional[str] = None
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.max_order < 0:
            raise ValueError("max_order must be non-negative")
        if self.format not in ("text", "latex", "json"):
            raise ValueError(f"unknown format {self.format!r}")


def _emit_series(cfg: CliConfig) -> str:
    name, latex_name, kind = _LABEL[cfg.command]
    if cfg.command == "charges":
        orders = [m for m in range(cfg.max_order + 1) if m % 2 == 0]
        fn = charge_integrand
    else:
        orders = list(range(cfg.max_order + 1))
        fn = rho if cfg.command == "densities" else flux
    polys = [(m, fn(m)) for m in orders]
    if cfg.format == "json":
        doc = {"kind": kind, "entries": [{"m": m, "poly": jetio.to_json(p)} for m, p in polys]}
        return json.dumps(doc, indent=1, sort_keys=True) + "\n"
    if cfg.format == "latex":
        return "".join(f"{latex_name}^{{({m})}} = {jetio.format_poly(p, 'latex')}\n" for m, p in polys)
    return "".join(f"{name}[{m}] = {jetio.format_poly(p)}\n" for m, p in polys)


def _run_check(rows, name, m, fn):
    try:
        fn()
        rows.append((name, m, True, ""))
    except VerificationError as exc:
        rows.append((name, m, False, str(exc)))


def _verify(cfg: CliConfig):
    rows = []
    catalog = load_catalog()
    for m in range(cfg.max_order + 1):
        _run_check(rows, "conservation", m, lambda: conservation_check(m))
        if m in catalog.densities:
            _run_check(rows, "match-density", m, lambda: match_reference(m, "density"))
        if m in catalog.charges:
            _run_check(rows, "match-charge", m, lambda: match_reference(m, "charge"))
        if m % 2:
            _run_check(rows, "odd-vanishing", m, lambda: parity_check(m))
        _run_check(rows, "weight", m, lambda: weight_check(m))
    return rows


def _table(rows, fmt: str) -> str:
    if fmt == "json":
        doc = {"checks": [{"check": n, "m": m, "passed": ok, "detail": d} for n, m, ok, d in rows]}
        return json.dumps(doc, indent=1, sort_keys=True) + "\n"
    out = []
    for name, m, ok, _ in rows:
        label = name if m is None else f"{name}[{m}]"
        out.append(f"{'PASS' if ok else 'FAIL'}  {label}")
    return "\n".join(out) + "\n"


def run(cfg: CliConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    if cfg.command in _LABEL:
        text, status = _emit_series(cfg), 0
    else:
        if cfg.command == "verify":
            rows = _verify(cfg)
        else:
            rows = [(n, None, ok, d) for n, ok, d in calculus_suite(seed=cfg.seed)]
        for name, m, ok, detail in rows:
            if not ok:
                print(f"FAIL {name}{'' if m is None else f'[{m}]'}: {detail}", file=stderr)
        text = _table(rows, cfg.format)
        status = 0 if all(r[2] for r in rows) else 1
    if cfg.output_path:
        with open(cfg.output_path, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bidiff", description="KdV conserved densities from a bi-differential calculus")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("-m", "--max-order", type=int, default=10)
        p.add_argument("--format", choices=("text", "latex", "json"), default="text")
        p.add_argument("-o", "--output")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_order < 0:
        parser.error("--max-order must be non-negative")
    cfg = CliConfig(args.command, args.max_order, args.format, args.output, args.seed)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
