import pytest

from bidiff.conserve import (
    VerificationError,
    charge_integrand,
    conservation_check,
    load_catalog,
    match_reference,
    parity_check,
    weight_check,
)
from bidiff.jetio import parse
from bidiff.jetpoly import euler_operator, normal_form_mod_dx


@pytest.mark.parametrize("m", [0, 2, 10])
def test_conservation_check_passes(m):
    report = conservation_check(m)
    assert report.passed and report.m == m


def test_conservation_check_reports_residual(monkeypatch):
    import bidiff.conserve as c

    monkeypatch.setattr(c, "flux", lambda m: parse("u^2"))
    with pytest.raises(VerificationError) as exc:
        c.conservation_check(0)
    assert not exc.value.residual.is_zero()


@pytest.mark.parametrize("m, text", [(0, "u"), (1, "0"), (2, "(1/6)*u^2")])
def test_charge_integrand(m, text):
    assert charge_integrand(m) == parse(text)


@pytest.mark.parametrize("m", range(1, 14, 2))
def test_odd_charges_vanish(m):
    assert charge_integrand(m).is_zero()


def test_catalog_shape():
    cat = load_catalog()
    assert sorted(cat.densities) == list(range(11))
    assert sorted(cat.charges) == [0, 2, 4, 6, 8, 10]
    assert "7 \\over 1296" in cat.quotes[("charge", 10)]


@pytest.mark.parametrize("m", range(11))
def test_match_density(m):
    assert match_reference(m, "density").passed


@pytest.mark.parametrize("m", [0, 2, 4, 6, 8, 10])
def test_match_charge(m):
    assert match_reference(m, "charge").passed


def test_charge_eight_against_literal():
    lit = parse("(7/648)*(u^5 - 30*u^2*u_x^2 + 36*u*u_xx^2 - (108/7)*u_xxx^2)")
    assert euler_operator(charge_integrand(8) - lit).is_zero()


def test_mismatch_raises_with_difference(monkeypatch):
    import bidiff.conserve as c

    monkeypatch.setattr(c, "rho", lambda m: parse("u^2"))
    with pytest.raises(VerificationError) as exc:
        c.match_reference(0, "density")
    assert exc.value.residual == parse("u^2 - u")


def test_match_out_of_range():
    with pytest.raises(KeyError):
        match_reference(11, "density")
    with pytest.raises(KeyError):
        match_reference(3, "charge")


def test_charge_has_no_reducible_monomials():
    for m in range(0, 13, 2):
        Q = charge_integrand(m)
        assert normal_form_mod_dx(Q)[0] == Q


def test_parity_and_weight_checks():
    assert parity_check(7).passed
    assert weight_check(9).passed
    with pytest.raises(ValueError):
        parity_check(4)
