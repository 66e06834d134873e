from fractions import Fraction

import pytest
from hypothesis import given, settings

from bidiff.jetio import parse
from bidiff.jetpoly import (
    X,
    DiffPoly,
    ExplicitCoordinateError,
    JetVar,
    dt,
    dx,
    euler_operator,
    normal_form_mod_dx,
    ring_ops,
    substitute_kdv,
    total_derivative,
)
from conftest import polys
import oracle


def P(s):
    return parse(s)


def test_rational_coefficients_are_normalised():
    p = DiffPoly.from_monomials([([], Fraction(6, 4))])
    (term,) = p.terms()
    assert term.coefficient == Fraction(3, 2)
    assert DiffPoly.const(0).is_zero()


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        DiffPoly.const(0.5)


@pytest.mark.parametrize(
    "op, a, b, factor, expected",
    [
        ("add", "u", "-u", None, "0"),
        ("mul", "u_x", "u_x", None, "u_x^2"),
        ("scale", "u_xx + (1/6)*u^2", None, 6, "6*u_xx + u^2"),
        ("neg", "u - u_x", None, None, "u_x - u"),
    ],
)
def test_ring_ops(op, a, b, factor, expected):
    out = ring_ops(P(a), P(b) if b else None, op, factor)
    assert out == P(expected)


def test_jetvar_order():
    xv = JetVar.coord("x")
    u, ux, ut, v = (JetVar.jet("u"), JetVar.jet("u", 0, 1), JetVar.jet("u", 1, 0), JetVar.jet("v"))
    assert sorted([v, ut, ux, u, xv]) == [xv, u, ux, ut, v]


def test_coordinate_symbols_are_reserved():
    with pytest.raises(ValueError):
        JetVar.jet("x")


@pytest.mark.parametrize(
    "src, var, expected",
    [
        ("u^2", "x", "2*u*u_x"),
        ("u_xx + (1/6)*u^2", "x", "u_xxx + (1/3)*u*u_x"),
        ("x*u", "x", "u + x*u_x"),
        ("t*u", "t", "u + t*u_t"),
        ("x*u", "t", "x*u_t"),
    ],
)
def test_total_derivative_examples(src, var, expected):
    assert total_derivative(P(src), var) == P(expected)


@settings(max_examples=25)
@given(polys(symbols=("u", "v"), max_t=2, max_x=4))
def test_total_derivative_matches_sympy(p):
    assert dx(p) == oracle.from_sympy(oracle.sp.diff(oracle.to_sympy(p), oracle.x))
    assert dt(p) == oracle.from_sympy(oracle.sp.diff(oracle.to_sympy(p), oracle.t))


@given(polys(max_t=2, max_x=4), polys(max_t=2, max_x=4))
def test_leibniz(p, q):
    for var in ("x", "t"):
        D = lambda r: total_derivative(r, var)  # noqa: E731
        assert D(p * q) == D(p) * q + p * D(q)


@given(polys(symbols=("u", "v"), max_t=2, max_x=4))
def test_total_derivatives_commute(p):
    assert dx(dt(p)) == dt(dx(p))


@given(polys(max_t=1), polys(max_t=1))
def test_canonical_order_independent_of_operand_order(p, q):
    a, b = p + q, q + p
    assert a == b
    assert a.terms() == b.terms()
    assert str(p * q) == str(q * p)


@pytest.mark.parametrize(
    "src, expected",
    [
        ("u_t", "-u_xxx - u*u_x"),
        ("u_tx", "-u_xxxx - u_x^2 - u*u_xx"),
        ("u_xx", "u_xx"),
    ],
)
def test_substitute_kdv_examples(src, expected):
    assert substitute_kdv(P(src)) == P(expected)


def test_substitute_kdv_second_t_derivative():
    # u_tt = D_t(-u_xxx - u u_x) with u_t eliminated again
    K = P("-u_xxx - u*u_x")
    expected = -dx(K, 3) - (K * P("u_x") + P("u") * dx(K))
    assert substitute_kdv(P("u_tt")) == expected


@given(polys(max_t=2, max_x=3, max_terms=3, max_degree=2, max_power=1))
def test_substitute_kdv_idempotent_and_t_free(p):
    s = substitute_kdv(p)
    assert all(v.t_order == 0 for v in s.variables())
    assert substitute_kdv(s) == s


def test_substitute_kdv_rejects_other_t_jets():
    with pytest.raises(ValueError):
        substitute_kdv(P("v_t"))


@pytest.mark.parametrize(
    "src, expected",
    [
        ("u^3", "3*u^2"),
        ("u*u_x^2", "-u_x^2 - 2*u*u_xx"),
    ],
)
def test_euler_examples(src, expected):
    assert euler_operator(P(src), "u") == P(expected)


def test_euler_of_total_derivative_example():
    assert euler_operator(dx(P("u*u_xx")), "u").is_zero()


@settings(max_examples=20)
@given(polys(max_x=4, max_terms=4))
def test_euler_matches_sympy(p):
    assert euler_operator(p) == oracle.euler(p)


@given(polys(max_x=4))
def test_euler_annihilates_total_derivatives(p):
    assert euler_operator(dx(p), "u").is_zero()


def test_euler_rejects_explicit_x():
    with pytest.raises(ExplicitCoordinateError):
        euler_operator(X * P("u"))
    with pytest.raises(ExplicitCoordinateError):
        normal_form_mod_dx(X * P("u"))


@pytest.mark.parametrize(
    "src, q, r",
    [
        ("u*u_x", "0", "(1/2)*u^2"),
        ("-u_xxx - (2/3)*u*u_x", "0", "-u_xx - (1/3)*u^2"),
        ("u_x^2*u_xx", "0", "(1/3)*u_x^3"),
        ("u*u_xx", "-u_x^2", "u*u_x"),
    ],
)
def test_normal_form_examples(src, q, r):
    Q, R = normal_form_mod_dx(P(src))
    assert Q == P(q)
    assert R == P(r)


def test_normal_form_of_rho4():
    from bidiff.densities import rho

    Q, R = normal_form_mod_dx(rho(4))
    assert euler_operator(Q - P("(1/18)*u^3 - (1/6)*u_x^2")).is_zero()
    assert rho(4) == Q + dx(R)


@given(polys(max_x=5, max_terms=6))
def test_normal_form_soundness(p):
    Q, R = normal_form_mod_dx(p)
    assert (p - Q - dx(R)).is_zero()
    assert euler_operator(p - Q).is_zero()
    # no monomial of Q has a linear top-order jet of order >= 1
    for k, _ in Q.items():
        if k:
            v, e = k[-1]
            assert v.x_order == 0 or e > 1


@given(polys(max_x=4))
def test_normal_form_kills_exact(p):
    Q, _ = normal_form_mod_dx(dx(p))
    assert Q.is_zero()
