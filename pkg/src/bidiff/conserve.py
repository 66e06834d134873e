"""Certificates for conservation laws and comparison with tabulated densities."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Dict, List

from .densities import flux, rho
from .jetio import from_json
from .jetpoly import DiffPoly, dt, dx, euler_operator, normal_form_mod_dx, substitute_kdv, weight


class VerificationError(AssertionError):
    def __init__(self, message: str, residual: DiffPoly | None = None):
        super().__init__(message if residual is None else f"{message}: residual {residual}")
        self.residual = residual


@dataclass(frozen=True)
class ReferenceCatalog:
    densities: Dict[int, DiffPoly]
    charges: Dict[int, DiffPoly]
    quotes: Dict[tuple, str] = field(default_factory=dict)

    @classmethod
    def from_entries(cls, entries: List[dict]) -> "ReferenceCatalog":
        dens, charges, quotes = {}, {}, {}
        for e in entries:
            target = dens if e["kind"] == "density" else charges
            if e["kind"] not in ("density", "charge"):
                raise ValueError(f"unknown catalog kind {e['kind']!r}")
            target[e["m"]] = from_json(e["poly"])
            quotes[(e["kind"], e["m"])] = e.get("source_quote", "")
        return cls(dens, charges, quotes)


@lru_cache(maxsize=None)
def load_catalog() -> ReferenceCatalog:
    text = resources.files("bidiff").joinpath("data/reference_catalog.json").read_text()
    return ReferenceCatalog.from_entries(json.loads(text))


@dataclass
class Report:
    name: str
    m: int
    passed: bool
    residual: DiffPoly = field(default_factory=DiffPoly)
    detail: str = ""


def conservation_check(m: int) -> Report:
    """Certify ``D_t rho(m) + D_x flux(m) = 0`` on shell, and that ``D_t rho(m)`` lies in Im D_x."""
    rate = substitute_kdv(dt(rho(m)))
    residual = rate + dx(flux(m))
    if residual:
        raise VerificationError(f"conservation law fails at m={m}", residual)
    variational = euler_operator(rate, "u")
    if variational:
        raise VerificationError(f"time derivative of rho({m}) is not a total derivative", variational)
    return Report("conservation", m, True, detail="flux identity and Euler certificate")


def charge_integrand(m: int) -> DiffPoly:
    """Density of ``rho(m)`` modulo total x-derivatives."""
    return normal_form_mod_dx(rho(m))[0]


def match_reference(m: int, kind: str = "density") -> Report:
    """Compare ``rho(m)`` (exactly) or its charge (modulo Im D_x) with the catalog."""
    cat = load_catalog()
    if kind == "density":
        if m not in cat.densities:
            raise KeyError(f"no tabulated density for m={m}")
        diff = rho(m) - cat.densities[m]
    elif kind == "charge":
        if m not in cat.charges:
            raise KeyError(f"no tabulated charge for m={m}")
        diff = euler_operator(charge_integrand(m) - cat.charges[m], "u")
    else:
        raise ValueError(f"unknown kind {kind!r}")
    if diff:
        raise VerificationError(f"{kind} mismatch at m={m}", diff)
    return Report(f"match-{kind}", m, True)


def parity_check(m: int) -> Report:
    if m % 2 == 0:
        raise ValueError("parity check applies to odd orders")
    e = euler_operator(rho(m), "u")
    if e:
        raise VerificationError(f"odd density rho({m}) is not a total derivative", e)
    return Report("odd-vanishing", m, True)


def weight_check(m: int) -> Report:
    bad = [k for k, _ in rho(m).items() if weight(k) != m + 2]
    if bad:
        raise VerificationError(f"rho({m}) has monomials of wrong weight", DiffPoly({k: 1 for k in bad}))
    return Report("weight", m, True)
