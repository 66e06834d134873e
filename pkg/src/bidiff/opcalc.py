"""Differential operators ``sum f_n d_x^n`` and the graded algebra over them.

Forms have degree 0, 1 or 2.  Degree 1 forms are ``a tau + b xi``, degree 2
forms are ``c tau xi``; ``tau`` and ``xi`` commute with operators and
anticommute with each other.  The two differentials are

    d f     = [d_t + 4 d_x^3, f] tau - 6 [d_x^2, f] xi
    delta f = -1/2 [d_x^2, f] tau + [d_x, f] xi

extended to 1-forms by ``d(a tau + b xi) = (d a) tau + (d b) xi``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, Mapping, Tuple

from . import jetio
from .jetpoly import (
    DEPENDENT,
    DiffPoly,
    EvolutionRule,
    JetVar,
    dt,
    dx,
    u_jet,
)


class Operator:
    """Immutable element of the operator algebra: a map ``n -> coefficient of d_x^n``."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, DiffPoly] | None = None):
        clean = {}
        for n, c in (coeffs or {}).items():
            if n < 0:
                raise ValueError("negative power of d_x")
            if not isinstance(c, DiffPoly):
                c = DiffPoly.const(c)
            if c:
                clean[n] = c
        self._coeffs = clean

    @classmethod
    def scalar(cls, f) -> "Operator":
        return cls({0: f})

    @classmethod
    def dx_power(cls, n: int = 1) -> "Operator":
        return cls({n: DiffPoly.const(1)})

    @property
    def coeffs(self) -> Dict[int, DiffPoly]:
        return dict(self._coeffs)

    def coeff(self, n: int) -> DiffPoly:
        return self._coeffs.get(n, DiffPoly())

    def order(self) -> int:
        return max(self._coeffs, default=-1)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Operator):
            other = _as_operator(other)
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def __add__(self, other) -> "Operator":
        other = _as_operator(other)
        out = dict(self._coeffs)
        for n, c in other._coeffs.items():
            out[n] = out[n] + c if n in out else c
        return Operator(out)

    __radd__ = __add__

    def __neg__(self) -> "Operator":
        return Operator({n: -c for n, c in self._coeffs.items()})

    def __sub__(self, other) -> "Operator":
        return self + (-_as_operator(other))

    def __rsub__(self, other) -> "Operator":
        return _as_operator(other) - self

    def scale(self, c) -> "Operator":
        return Operator({n: p.scale(c) for n, p in self._coeffs.items()})

    def __mul__(self, other) -> "Operator":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return op_mul(self, _as_operator(other))

    def __rmul__(self, other) -> "Operator":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return op_mul(_as_operator(other), self)

    def map_coeffs(self, fn) -> "Operator":
        return Operator({n: fn(c) for n, c in self._coeffs.items()})

    def __repr__(self) -> str:
        return f"Operator({format_operator(self)!r})"

    __str__ = lambda self: format_operator(self)  # noqa: E731


def _as_operator(x) -> Operator:
    if isinstance(x, Operator):
        return x
    if isinstance(x, (DiffPoly, int, Fraction)):
        return Operator.scalar(x)
    raise TypeError(f"cannot use {type(x).__name__} as an operator")


def op_mul(a: Operator, b: Operator) -> Operator:
    """Product in the operator algebra via ``d_x^n f = sum_k C(n,k) (D_x^k f) d_x^(n-k)``."""
    out: Dict[int, DiffPoly] = {}
    top = a.order()
    for m, bm in b._coeffs.items():
        derivs = [bm]
        for _ in range(top):
            derivs.append(dx(derivs[-1]))
        for n, an in a._coeffs.items():
            for k in range(n + 1):
                if not derivs[k]:
                    continue
                term = an * derivs[k]
                if k and comb(n, k) != 1:
                    term = term.scale(comb(n, k))
                p = n - k + m
                out[p] = out[p] + term if p in out else term
    return Operator(out)


def commutator(a: Operator, b: Operator) -> Operator:
    return op_mul(a, b) - op_mul(b, a)


def t_commutator(a: Operator) -> Operator:
    """``[d_t, a]``: differentiate every coefficient with respect to t."""
    return a.map_coeffs(dt)


# ---------------------------------------------------------------------------
# graded forms

class DegreeError(ValueError):
    pass


@dataclass(frozen=True)
class GradedForm:
    degree: int
    c0: Operator = field(default_factory=Operator)
    c_tau: Operator = field(default_factory=Operator)
    c_xi: Operator = field(default_factory=Operator)
    c_tauxi: Operator = field(default_factory=Operator)

    def __post_init__(self):
        if self.degree not in (0, 1, 2):
            raise DegreeError(f"degree {self.degree} is outside 0..2")
        for name in ("c0", "c_tau", "c_xi", "c_tauxi"):
            object.__setattr__(self, name, _as_operator(getattr(self, name)))
        populated = {0: ("c0",), 1: ("c_tau", "c_xi"), 2: ("c_tauxi",)}[self.degree]
        for name in ("c0", "c_tau", "c_xi", "c_tauxi"):
            if name not in populated and getattr(self, name):
                raise DegreeError(f"component {name} set on a degree-{self.degree} form")

    @classmethod
    def zero(cls, degree: int) -> "GradedForm":
        return cls(degree)

    @classmethod
    def scalar(cls, a) -> "GradedForm":
        return cls(0, c0=_as_operator(a))

    @classmethod
    def one_form(cls, tau=0, xi=0) -> "GradedForm":
        return cls(1, c_tau=_as_operator(tau), c_xi=_as_operator(xi))

    @classmethod
    def two_form(cls, tauxi) -> "GradedForm":
        return cls(2, c_tauxi=_as_operator(tauxi))

    def components(self) -> Tuple[Operator, ...]:
        if self.degree == 0:
            return (self.c0,)
        if self.degree == 1:
            return (self.c_tau, self.c_xi)
        return (self.c_tauxi,)

    def _rebuild(self, comps) -> "GradedForm":
        names = {0: ("c0",), 1: ("c_tau", "c_xi"), 2: ("c_tauxi",)}[self.degree]
        return GradedForm(self.degree, **dict(zip(names, comps)))

    def map_coeffs(self, fn) -> "GradedForm":
        """Apply ``fn`` to every DiffPoly coefficient of every component."""
        return self._rebuild([c.map_coeffs(fn) for c in self.components()])

    def __bool__(self) -> bool:
        return any(self.components())

    def _check_same(self, other: "GradedForm"):
        if not isinstance(other, GradedForm):
            raise TypeError("can only combine graded forms")
        if other.degree != self.degree:
            raise DegreeError(f"cannot add forms of degree {self.degree} and {other.degree}")

    def __add__(self, other) -> "GradedForm":
        self._check_same(other)
        return self._rebuild([a + b for a, b in zip(self.components(), other.components())])

    def __neg__(self) -> "GradedForm":
        return self._rebuild([-a for a in self.components()])

    def __sub__(self, other) -> "GradedForm":
        return self + (-other)

    def __mul__(self, other) -> "GradedForm":
        if isinstance(other, (int, Fraction)):
            return self._rebuild([a.scale(other) for a in self.components()])
        return form_mul(self, other)

    def __rmul__(self, other) -> "GradedForm":
        if isinstance(other, (int, Fraction)):
            return self._rebuild([a.scale(other) for a in self.components()])
        return NotImplemented

    def __str__(self) -> str:
        return format_form(self)


def form_mul(w: GradedForm, w2: GradedForm) -> GradedForm:
    """Graded product; tau and xi commute with operators, tau xi = -xi tau."""
    r, s = w.degree, w2.degree
    if r + s > 2:
        raise DegreeError(f"product of degree {r} and {s} exceeds top degree 2")
    if r == 0:
        return w2._rebuild([op_mul(w.c0, c) for c in w2.components()])
    if s == 0:
        return w._rebuild([op_mul(c, w2.c0) for c in w.components()])
    # (a tau + b xi)(c tau + e xi) = (a e - b c) tau xi
    return GradedForm.two_form(op_mul(w.c_tau, w2.c_xi) - op_mul(w.c_xi, w2.c_tau))


TAU = GradedForm.one_form(tau=1)
XI = GradedForm.one_form(xi=1)
UNIT = GradedForm.scalar(1)

_DX = Operator.dx_power(1)
_DX2 = Operator.dx_power(2)
_DX3 = Operator.dx_power(3)


def _d0(f: Operator) -> Tuple[Operator, Operator]:
    tau = t_commutator(f) + commutator(_DX3, f).scale(4)
    xi = commutator(_DX2, f).scale(-6)
    return tau, xi


def _delta0(f: Operator) -> Tuple[Operator, Operator]:
    return commutator(_DX2, f).scale(Fraction(-1, 2)), commutator(_DX, f)


def _extend(first_order, w: GradedForm) -> GradedForm:
    if w.degree == 0:
        tau, xi = first_order(w.c0)
        return GradedForm.one_form(tau, xi)
    if w.degree == 1:
        # (D a) tau + (D b) xi, with D a = A tau + B xi: (B xi) tau = -B tau xi
        _, a_xi = first_order(w.c_tau)
        b_tau, _ = first_order(w.c_xi)
        return GradedForm.two_form(b_tau - a_xi)
    # top degree: the image is identically zero
    return GradedForm.zero(2)


def d_map(w: GradedForm) -> GradedForm:
    """The differential built from ``d_t + 4 d_x^3`` and ``-6 d_x^2``."""
    return _extend(_d0, w)


def delta_map(w: GradedForm) -> GradedForm:
    """The differential built from ``-1/2 d_x^2`` and ``d_x``."""
    return _extend(_delta0, w)


def gauge_curvature(A: GradedForm) -> Tuple[GradedForm, GradedForm]:
    """Return ``(dA + AA, delta A)`` for a connection 1-form ``A``."""
    if A.degree != 1:
        raise DegreeError("connection must be a 1-form")
    return d_map(A) + form_mul(A, A), delta_map(A)


# ---------------------------------------------------------------------------
# KdV from flatness

V = u_jet(symbol="v")

# F = 0 with A = delta v is solved for the mixed jet v_tx.
POTENTIAL_RULE = EvolutionRule("v", 1, 1, u_jet(1, symbol="v") * u_jet(2, symbol="v") - u_jet(4, symbol="v"))


class ConsistencyError(RuntimeError):
    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual


def potential_to_u(P: DiffPoly) -> DiffPoly:
    """Substitute ``v_{t^a x^(b+1)} -> -u_{t^a x^b}``."""

    def rule(var: JetVar):
        if var.kind == DEPENDENT and var.symbol == "v":
            if var.x_order == 0:
                raise ConsistencyError(f"{var.name()} has no expression in terms of u")
            return -u_jet(var.x_order - 1, var.t_order)
        return None

    return P.substitute(rule)


def kdv_residual_from_potential() -> DiffPoly:
    """Extract the scalar flatness condition of ``A = delta v`` and certify it.

    Returns ``R = v_tx + v_xxxx - v_x v_xx``.  Raises :class:`ConsistencyError`
    if some coefficient of the curvature does not vanish modulo ``R`` and its
    prolongations, or if ``R`` does not map to ``-(u_t + u_xxx + u u_x)``.
    """
    A = delta_map(GradedForm.scalar(V))
    F, deltaA = gauge_curvature(A)
    if deltaA:
        raise ConsistencyError("delta A does not vanish", deltaA)
    curvature = F.c_tauxi
    R = curvature.coeff(0)
    lead = JetVar.jet("v", 1, 1)
    c = R.coefficient(((lead, 1),))
    if not c:
        raise ConsistencyError("curvature has no v_tx term to solve for", curvature)
    R = R.scale(1 / c)
    if POTENTIAL_RULE.apply(R):
        raise ConsistencyError("extracted residual is not generated by the rewrite rule", R)
    for n, coeff in curvature.coeffs.items():
        rest = POTENTIAL_RULE.apply(coeff)
        if rest:
            raise ConsistencyError(f"d_x^{n} coefficient of F survives the rewrite", rest)
    kdv = u_jet(0, 1) + u_jet(3) + u_jet(0) * u_jet(1)
    mapped = potential_to_u(R)
    if mapped != -kdv:
        raise ConsistencyError("residual does not map to the KdV equation", mapped + kdv)
    return R


# ---------------------------------------------------------------------------
# serialisation

def _dx_text(n: int) -> str:
    return "" if n == 0 else ("dx" if n == 1 else f"dx^{n}")


def format_operator(a: Operator, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(operator_to_json(a), sort_keys=True)
    if not a:
        return "0"
    parts = []
    for n in sorted(a._coeffs):
        c = jetio.format_poly(a._coeffs[n], fmt)
        if fmt == "latex":
            d = "" if n == 0 else ("\\partial_x" if n == 1 else f"\\partial_x^{{{n}}}")
            if n == 0:
                parts.append(c)
            elif c in ("1", "-1"):
                parts.append(c[:-1] + d)
            else:
                parts.append(f"\\left({c}\\right) {d}")
        else:
            d = _dx_text(n)
            if n == 0:
                parts.append(c)
            elif c in ("1", "-1"):
                parts.append(c[:-1] + d)
            else:
                parts.append(f"({c})*{d}")
    return " + ".join(parts)


def format_form(w: GradedForm, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(form_to_json(w), sort_keys=True)
    basis = {"text": ("tau", "xi", "tau*xi"), "latex": ("\\tau", "\\xi", "\\tau \\xi")}[fmt]
    if w.degree == 0:
        return format_operator(w.c0, fmt)
    if w.degree == 1:
        pairs = [(w.c_tau, basis[0]), (w.c_xi, basis[1])]
    else:
        pairs = [(w.c_tauxi, basis[2])]
    parts = [f"[{format_operator(c, fmt)}] {b}" if fmt == "latex" else f"[{format_operator(c, fmt)}]*{b}"
             for c, b in pairs if c]
    return " + ".join(parts) or "0"


def operator_to_json(a: Operator) -> dict:
    return {"ops": [{"dx": n, "coeff": jetio.to_json(a._coeffs[n])} for n in sorted(a._coeffs)]}


def operator_from_json(obj) -> Operator:
    return Operator({e["dx"]: jetio.from_json(e["coeff"]) for e in obj["ops"]})


def form_to_json(w: GradedForm) -> dict:
    out = {"degree": w.degree}
    if w.degree == 0:
        out.update(operator_to_json(w.c0))
    elif w.degree == 1:
        out["tau"] = operator_to_json(w.c_tau)
        out["xi"] = operator_to_json(w.c_xi)
    else:
        out["tauxi"] = operator_to_json(w.c_tauxi)
    return out


def form_from_json(obj) -> GradedForm:
    r = obj["degree"]
    if r == 0:
        return GradedForm.scalar(operator_from_json(obj))
    if r == 1:
        return GradedForm.one_form(operator_from_json(obj["tau"]), operator_from_json(obj["xi"]))
    if r == 2:
        return GradedForm.two_form(operator_from_json(obj["tauxi"]))
    raise DegreeError(f"degree {r} is outside 0..2")
