"""Exact differential polynomials on the jet space over coordinates (t, x).

A :class:`DiffPoly` is a sparse sum of monomials in jet variables with
:class:`fractions.Fraction` coefficients.  Jet variables are either dependent
jets ``d_t^a d_x^b w`` or the explicit coordinates ``t`` and ``x``.

Everything here is immutable; every operation returns a new object.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, NamedTuple, Tuple

COORDINATE = "coordinate"
DEPENDENT = "dependent"


class JetVar(NamedTuple):
    """One jet symbol.

    Field order gives the canonical total order: coordinates sort before
    dependents (``"coordinate" < "dependent"``), then by symbol name, then by
    ``(t_order, x_order)``.
    """

    kind: str
    symbol: str
    t_order: int = 0
    x_order: int = 0

    @classmethod
    def jet(cls, symbol: str, t_order: int = 0, x_order: int = 0) -> "JetVar":
        if symbol in ("t", "x"):
            raise ValueError(f"{symbol!r} is reserved for the coordinate")
        if t_order < 0 or x_order < 0:
            raise ValueError("jet orders must be non-negative")
        return cls(DEPENDENT, symbol, t_order, x_order)

    @classmethod
    def coord(cls, symbol: str) -> "JetVar":
        if symbol not in ("t", "x"):
            raise ValueError(f"unknown coordinate {symbol!r}")
        return cls(COORDINATE, symbol, 0, 0)

    @property
    def is_coordinate(self) -> bool:
        return self.kind == COORDINATE

    def name(self) -> str:
        if self.is_coordinate or (self.t_order == 0 and self.x_order == 0):
            return self.symbol
        return f"{self.symbol}_{'t' * self.t_order}{'x' * self.x_order}"

    def __repr__(self) -> str:
        return self.name()


# A monomial key is a tuple of (JetVar, exponent) pairs sorted by JetVar.
Key = Tuple[Tuple[JetVar, int], ...]


class Monomial(NamedTuple):
    factors: Key
    coefficient: Fraction

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.factors)


def _order_key(key: Key):
    return (sum(e for _, e in key), key)


def _merge(a: Key, b: Key) -> Key:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("floating-point coefficients are not allowed")
    return Fraction(c)


class DiffPoly:
    """Immutable sparse differential polynomial with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Dict[Key, Fraction] | None = None):
        # Callers hand over ownership of ``terms``; zero entries are dropped.
        self._terms = {k: c for k, c in (terms or {}).items() if c}
        self._hash = None

    # -- construction -----------------------------------------------------
    @classmethod
    def _raw(cls, terms: Dict[Key, Fraction]) -> "DiffPoly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "DiffPoly":
        c = _as_fraction(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def var(cls, v: JetVar, power: int = 1) -> "DiffPoly":
        if power < 0:
            raise ValueError("negative powers are not polynomial")
        return cls._raw({((v, power),) if power else (): Fraction(1)})

    @classmethod
    def from_monomials(cls, monomials: Iterable[Tuple[Iterable[Tuple[JetVar, int]], object]]) -> "DiffPoly":
        acc: Dict[Key, Fraction] = {}
        for factors, c in monomials:
            d: Dict[JetVar, int] = {}
            for v, e in factors:
                if e < 0:
                    raise ValueError("negative exponent")
                if e:
                    d[v] = d.get(v, 0) + e
            k = tuple(sorted(d.items()))
            acc[k] = acc.get(k, Fraction(0)) + _as_fraction(c)
        return cls(acc)

    # -- inspection -------------------------------------------------------
    def terms(self) -> list[Monomial]:
        """Monomials in canonical (degree, then lexicographic) order."""
        return [Monomial(k, self._terms[k]) for k in sorted(self._terms, key=_order_key)]

    def items(self):
        return self._terms.items()

    def coefficient(self, factors: Key) -> Fraction:
        return self._terms.get(tuple(factors), Fraction(0))

    def variables(self) -> set[JetVar]:
        return {v for k in self._terms for v, _ in k}

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.terms())

    def __eq__(self, other) -> bool:
        if isinstance(other, DiffPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == DiffPoly.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        from .jetio import format_poly

        return f"DiffPoly({format_poly(self)!r})"

    def __str__(self) -> str:
        from .jetio import format_poly

        return format_poly(self)

    # -- ring operations --------------------------------------------------
    @staticmethod
    def _coerce(other) -> "DiffPoly":
        if isinstance(other, DiffPoly):
            return other
        if isinstance(other, JetVar):
            return DiffPoly.var(other)
        return DiffPoly.const(other)

    def __add__(self, other) -> "DiffPoly":
        other = self._coerce(other)
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for k, c in small.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return DiffPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "DiffPoly":
        return DiffPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "DiffPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "DiffPoly":
        return self._coerce(other) + (-self)

    def scale(self, c) -> "DiffPoly":
        c = _as_fraction(c)
        if not c:
            return DiffPoly()
        return DiffPoly._raw({k: v * c for k, v in self._terms.items()})

    def __mul__(self, other) -> "DiffPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        out: Dict[Key, Fraction] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = _merge(k1, k2)
                out[k] = out.get(k, 0) + c1 * c2
        return DiffPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "DiffPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = DiffPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- substitution -----------------------------------------------------
    def substitute(self, rule: Callable[[JetVar], "DiffPoly | None"]) -> "DiffPoly":
        """Replace every jet ``v`` for which ``rule(v)`` is not None."""
        cache: Dict[JetVar, DiffPoly | None] = {}
        out = DiffPoly()
        untouched: Dict[Key, Fraction] = {}
        for k, c in self._terms.items():
            keep = []
            repl = []
            for v, e in k:
                if v not in cache:
                    cache[v] = rule(v)
                r = cache[v]
                if r is None:
                    keep.append((v, e))
                else:
                    repl.append((r, e))
            if not repl:
                untouched[k] = c
                continue
            term = DiffPoly._raw({tuple(keep): c})
            for r, e in repl:
                term = term * (r ** e)
            out = out + term
        return out + DiffPoly(untouched)


def u_jet(x_order: int = 0, t_order: int = 0, symbol: str = "u") -> DiffPoly:
    """Shorthand for the polynomial consisting of a single jet."""
    return DiffPoly.var(JetVar.jet(symbol, t_order, x_order))


X = DiffPoly.var(JetVar.coord("x"))
T = DiffPoly.var(JetVar.coord("t"))
ONE = DiffPoly.const(1)
ZERO = DiffPoly()


def ring_ops(P: DiffPoly, Q: DiffPoly | None = None, op: str = "add", factor=None) -> DiffPoly:
    """Functional form of the ring operations (``add``, ``mul``, ``neg``, ``scale``)."""
    if op == "add":
        return P + Q
    if op == "mul":
        return P * Q
    if op == "neg":
        return -P
    if op == "scale":
        return P.scale(factor)
    raise ValueError(f"unknown ring operation {op!r}")


# ---------------------------------------------------------------------------
# total derivatives

def _d_var(v: JetVar, var: str) -> Key | None:
    """Derivative of a single jet variable, as a monomial key (None means 0)."""
    if v.kind == COORDINATE:
        return () if v.symbol == var else None
    if var == "x":
        return ((JetVar(DEPENDENT, v.symbol, v.t_order, v.x_order + 1), 1),)
    return ((JetVar(DEPENDENT, v.symbol, v.t_order + 1, v.x_order), 1),)


def total_derivative(P: DiffPoly, var: str = "x") -> DiffPoly:
    """Total derivative ``D_x`` or ``D_t`` (chain rule over all jets)."""
    if var not in ("x", "t"):
        raise ValueError(f"total derivative with respect to {var!r}")
    out: Dict[Key, Fraction] = {}
    for k, c in P.items():
        for i, (v, e) in enumerate(k):
            dv = _d_var(v, var)
            if dv is None:
                continue
            rest = k[:i] + ((v, e - 1),) + k[i + 1:] if e > 1 else k[:i] + k[i + 1:]
            nk = _merge(rest, dv)
            out[nk] = out.get(nk, 0) + c * e
    return DiffPoly(out)


def dx(P: DiffPoly, n: int = 1) -> DiffPoly:
    for _ in range(n):
        P = total_derivative(P, "x")
    return P


def dt(P: DiffPoly, n: int = 1) -> DiffPoly:
    for _ in range(n):
        P = total_derivative(P, "t")
    return P


def partial(P: DiffPoly, v: JetVar) -> DiffPoly:
    """Partial derivative with respect to one jet variable."""
    out: Dict[Key, Fraction] = {}
    for k, c in P.items():
        for i, (w, e) in enumerate(k):
            if w != v:
                continue
            nk = k[:i] + ((w, e - 1),) + k[i + 1:] if e > 1 else k[:i] + k[i + 1:]
            out[nk] = out.get(nk, 0) + c * e
    return DiffPoly(out)


# ---------------------------------------------------------------------------
# evolution-equation rewriting

class EvolutionRule:
    """Rewrite rule ``w_{t^a x^b} -> rhs`` together with all its prolongations.

    Any jet ``w_{t^A x^B}`` with ``A >= a`` and ``B >= b`` is replaced by the
    corresponding mixed total derivative of ``rhs``, reduced recursively.  The
    right-hand side must not contain jets the rule matches.
    """

    def __init__(self, symbol: str, t_order: int, x_order: int, rhs: DiffPoly):
        self.symbol = symbol
        self.lead = (t_order, x_order)
        for v in rhs.variables():
            if self.matches(v):
                raise ValueError(f"rhs contains the rewritten jet {v.name()}")
        self.rhs = rhs
        self._memo: Dict[Tuple[int, int], DiffPoly] = {}
        self._lock = threading.Lock()

    def matches(self, v: JetVar) -> bool:
        return (
            v.kind == DEPENDENT
            and v.symbol == self.symbol
            and v.t_order >= self.lead[0]
            and v.x_order >= self.lead[1]
        )

    def _reduce_jet(self, a: int, b: int) -> DiffPoly:
        hit = self._memo.get((a, b))
        if hit is not None:
            return hit
        ta, xa = self.lead
        if (a, b) == (ta, xa):
            raw = self.rhs
        elif a > ta:
            # smallest t-order first: peel one t-derivative
            raw = dt(self._reduce_jet(a - 1, b))
        else:
            raw = dx(self._reduce_jet(a, b - 1))
        result = self.apply(raw)
        with self._lock:
            self._memo.setdefault((a, b), result)
        return result

    def _rule(self, v: JetVar):
        if self.matches(v):
            return self._reduce_jet(v.t_order, v.x_order)
        return None

    def apply(self, P: DiffPoly) -> DiffPoly:
        if not any(self.matches(v) for v in P.variables()):
            return P
        return P.substitute(self._rule)


KDV_RULE = EvolutionRule("u", 1, 0, -u_jet(3) - u_jet(0) * u_jet(1))


def substitute_kdv(P: DiffPoly) -> DiffPoly:
    """Eliminate every t-derivative of ``u`` using ``u_t = -u_xxx - u u_x``."""
    for v in P.variables():
        if v.kind == DEPENDENT and v.t_order and v.symbol != "u":
            raise ValueError(f"cannot eliminate t-derivatives of {v.symbol!r} with the KdV rule")
    return KDV_RULE.apply(P)


# ---------------------------------------------------------------------------
# variational calculus

class ExplicitCoordinateError(ValueError):
    """Raised when explicit ``x`` appears where the kernel of D_x is characterised."""


def _require_x_free(P: DiffPoly) -> None:
    if JetVar.coord("x") in P.variables():
        raise ExplicitCoordinateError("polynomial depends explicitly on the coordinate x")


def euler_operator(P: DiffPoly, w: str = "u") -> DiffPoly:
    """Variational derivative ``sum_k (-D_x)^k dP/dw_{x^k}``."""
    _require_x_free(P)
    orders = []
    for v in P.variables():
        if v.kind == DEPENDENT and v.symbol == w:
            if v.t_order:
                raise ValueError(f"t-jet {v.name()} present; substitute the evolution first")
            orders.append(v.x_order)
    result = DiffPoly()
    for k in sorted(set(orders)):
        term = partial(P, JetVar.jet(w, 0, k))
        term = dx(term, k)
        result = result + (term if k % 2 == 0 else -term)
    return result


def normal_form_mod_dx(P: DiffPoly) -> Tuple[DiffPoly, DiffPoly]:
    """Split ``P = Q + D_x R`` by greedy integration by parts.

    While some monomial has its top jet ``w_{x^n}`` (n >= 1) linearly, pick the
    one with the largest ``n`` and write ``c W w_{x^{n-1}}^k w_{x^n}`` as
    ``D_x(c W w_{x^{n-1}}^{k+1}/(k+1)) - c D_x(W) w_{x^{n-1}}^{k+1}/(k+1)``.
    Every new term has a strictly lower top order, so the loop terminates.
    Only polynomials in a single dependent variable are supported.
    """
    _require_x_free(P)
    symbols = set()
    for v in P.variables():
        if v.kind == DEPENDENT:
            if v.t_order:
                raise ValueError(f"t-jet {v.name()} present")
            symbols.add(v.symbol)
    if len(symbols) > 1:
        raise ValueError("normal form is defined for a single dependent variable")

    work = dict(P.items())
    R: Dict[Key, Fraction] = {}

    def reducible(k: Key):
        # top jet is last among dependents (sorted by x_order within one symbol)
        if not k:
            return None
        v, e = k[-1]
        if v.kind != DEPENDENT or v.x_order == 0 or e != 1:
            return None
        return v.x_order

    while True:
        best, best_n = None, 0
        for k in work:
            n = reducible(k)
            if n is not None and (n > best_n or (n == best_n and _order_key(k) < _order_key(best))):
                best, best_n = k, n
        if best is None:
            break
        c = work.pop(best)
        top = best[-1][0]
        lower = JetVar(DEPENDENT, top.symbol, 0, top.x_order - 1)
        rest = dict(best[:-1])
        kpow = rest.pop(lower, 0)
        W = DiffPoly._raw({tuple(sorted(rest.items())): Fraction(1)})
        anti = c / (kpow + 1)
        lifted = W * DiffPoly.var(lower, kpow + 1)
        for lk, lc in lifted.items():
            R[lk] = R.get(lk, 0) + lc * anti
        correction = (dx(W) * DiffPoly.var(lower, kpow + 1)).scale(-anti)
        for ck, cc in correction.items():
            s = work.get(ck, 0) + cc
            if s:
                work[ck] = s
            else:
                work.pop(ck, None)
    return DiffPoly(work), DiffPoly(R)


def weight(k: Key, base: int = 2) -> int:
    """Scaling weight of a monomial with ``weight(w_{x^k}) = k + base``."""
    return sum(e * (v.x_order + base + 3 * v.t_order) for v, e in k if v.kind == DEPENDENT)
