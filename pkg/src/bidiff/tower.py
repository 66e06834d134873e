"""Iterative construction of a chain of closed elements from two graded maps.

Given maps ``D`` and ``Dcal`` with ``D^2 = Dcal^2 = 0`` and
``Dcal D = g D Dcal``, and a start ``chi0`` with ``Dcal chi0 = 0``, the chain

    J(m) = D chi(m-1),    Dcal chi(m) = J(m)

produces Dcal-closed ``J(m)``.  Solving ``Dcal chi = J`` is delegated to a
caller-supplied solver which may fail (return ``None``).

Elements only need ``-``, multiplication by the scalar ``g`` and truthiness
(falsy means zero).  An optional ``reduce`` callable maps elements to normal
forms before any zero test, e.g. to impose field equations.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, List, Optional

from .jetpoly import DiffPoly, JetVar, normal_form_mod_dx
from .opcalc import POTENTIAL_RULE, GradedForm, Operator, d_map, delta_map, form_mul


class TowerError(RuntimeError):
    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class GradedMapPair:
    D: Callable[[Any], Any]
    Dcal: Callable[[Any], Any]
    g: int = -1
    reduce: Callable[[Any], Any] = lambda w: w

    def is_zero(self, w) -> bool:
        return not self.reduce(w)

    def probe(self, w) -> None:
        """Check the three compatibility relations on ``w``; raise on violation."""
        Dw = self.D(w)
        Dcw = self.Dcal(w)
        checks = [
            ("D D", self.D(Dw)),
            ("Dcal Dcal", self.Dcal(Dcw)),
            ("Dcal D - g D Dcal", self.Dcal(Dw) - self.g * self.D(Dcw)),
        ]
        for name, value in checks:
            if not self.is_zero(value):
                raise TowerError(f"map-pair relation {name} = 0 fails on probed element", self.reduce(value))


@dataclass
class TowerState:
    chis: List[Any]
    js: List[Any]
    s: int = 1
    failed_at: Optional[int] = None
    failure: str = ""

    @property
    def complete(self) -> bool:
        return self.failed_at is None


def tower_iterate(maps: GradedMapPair, solver, chi0, M: int, s: int = 1) -> TowerState:
    """Run ``M`` steps of the chain, certifying every invariant as it goes."""
    if not maps.is_zero(maps.Dcal(chi0)):
        raise TowerError("Dcal chi0 != 0", maps.reduce(maps.Dcal(chi0)))
    maps.probe(chi0)
    state = TowerState(chis=[chi0], js=[], s=s)
    for m in range(1, M + 1):
        J = maps.D(state.chis[-1])
        if not maps.is_zero(maps.Dcal(J)):
            raise TowerError(f"J({m}) is not Dcal-closed", maps.reduce(maps.Dcal(J)))
        state.js.append(J)
        chi = solver(J)
        if chi is None:
            state.failed_at = m
            state.failure = f"no Dcal-primitive found for J({m})"
            return state
        if not maps.is_zero(maps.Dcal(chi) - J):
            raise TowerError(f"solver returned chi({m}) with Dcal chi != J", maps.reduce(maps.Dcal(chi) - J))
        maps.probe(chi)
        state.chis.append(chi)
    return state


# ---------------------------------------------------------------------------
# the KdV instance: D = d + delta v, Dcal = delta

def on_shell(w: GradedForm) -> GradedForm:
    """Impose the potential KdV equation via the rewrite of v_tx."""
    return w.map_coeffs(POTENTIAL_RULE.apply)


def kdv_maps() -> GradedMapPair:
    A = delta_map(GradedForm.scalar(DiffPoly.var(JetVar.jet("v"))))

    def D(w: GradedForm) -> GradedForm:
        if w.degree >= 2:
            return GradedForm.zero(2)
        return d_map(w) + form_mul(A, w)

    def Dcal(w: GradedForm) -> GradedForm:
        return delta_map(w)

    return GradedMapPair(D=D, Dcal=Dcal, g=-1, reduce=on_shell)


def local_delta_solver(J: GradedForm) -> Optional[GradedForm]:
    """Find ``chi`` with ``delta chi = J`` using local x-antiderivatives only.

    The xi-component of ``delta chi`` is ``sum chi_{n,x} d_x^n``, so every
    xi-coefficient of ``J`` must be a total x-derivative.  Returns None when an
    antiderivative is nonlocal or the tau-component is not matched.
    """
    if J.degree != 1:
        return None
    coeffs = {}
    for n, b in J.c_xi.coeffs.items():
        if any(v.t_order for v in b.variables() if not v.is_coordinate):
            return None
        try:
            rest, anti = normal_form_mod_dx(b)
        except ValueError:
            return None
        if rest:
            return None
        coeffs[n] = anti
    chi = GradedForm.scalar(Operator(coeffs))
    if on_shell(delta_map(chi) - J):
        return None
    return chi
