"""Regenerate src/bidiff/data/reference_catalog.json.

Each entry is transcribed by hand from the published formulas: ``plain`` is
the part outside total derivatives, ``bracket`` the expression under the
outer ``[...]_x``.  Inner derivatives such as ``(u^2)_x`` are written with
``dx`` explicitly.  Nothing here is computed from the recursion.
"""
import json
import sys
from fractions import Fraction as Fr
from pathlib import Path

from bidiff.jetio import parse as P, to_json
from bidiff.jetpoly import DiffPoly, dx

Z = DiffPoly()

DENSITIES = {
    0: (P("u"), Z, r"\varphi^{(0)}_x = u"),
    1: (P("-u_x"), Z, r"\varphi^{(1)}_x = - u_x"),
    2: (P("u_xx + (1/6)*u^2"), Z, r"\varphi^{(2)}_x = u_{xx} + {1 \over 6} \, u^2"),
    3: (Z, -P("u_xx + (1/3)*u^2"), r"\varphi^{(3)}_x = - ( u_{xx} + {1 \over 3} \, u^2 )_x"),
    4: (
        P("(1/6)*((1/3)*u^3 - u_x^2)"),
        P("u_xxx") + dx(P("u^2")).scale(Fr(1, 2)),
        r"{1 \over 6} \, [ {1 \over 3} \, u^3 - (u_x)^2 ] + [ u_{xxx} + {1 \over 2} \, (u^2)_x ]_x",
    ),
    5: (
        Z,
        -P("(4/27)*u^3 + (5/6)*u_x^2 + (4/3)*u*u_xx + u_xxxx"),
        r"- [ {4 \over 27} \, u^3 + {5 \over 6} \, (u_x)^2 + {4 \over 3} \, u \,u_{xx} + u_{xxxx} ]_x",
    ),
    6: (
        P("(5/216)*(u^4 - 12*u*u_x^2 + (36/5)*u_xx^2)"),
        P("u_xxxxx + (5/3)*u*u_xxx + (5/6)*u^2*u_x + 3*u_x*u_xx"),
        r"{5 \over 216} \, [ u^4 - 12 \, u \, (u_x)^2 + {36 \over 5} \, (u_{xx})^2 ] + [ u_{xxxxx} + {5 \over 3} \, u \, u_{xxx} + {5 \over 6} \, u^2 \, u_x + 3 \, u_x \, u_{xx} ]_x",
    ),
    7: (
        Z,
        -P("(2/27)*u^4 + (4/3)*u^2*u_xx + (5/3)*u*u_x^2 + (14/3)*u_x*u_xxx + 2*u*u_xxxx"
           " + (10/3)*u_xx^2 + u_xxxxxx"),
        r"- [ {2 \over 27} \, u^4 + {4 \over 3} \, u^2 \, u_{xx} + {5 \over 3} \, u \, (u_x)^2 + {14 \over 3} \, u_x \, u_{xxx} + 2 \, u \, u_{xxxx} + {10 \over 3} \, (u_{xx})^2 + u_{xxxxxx} ]_x",
    ),
    8: (
        P("(7/648)*(u^5 - 30*u^2*u_x^2 + 36*u*u_xx^2 - (108/7)*u_xxx^2)"),
        P("u_xxxxxxx + (7/3)*u*u_xxxxx + (20/3)*u_x*u_xxxx + (35/3)*u_xx*u_xxx"
          " + (35/18)*u^2*u_xxx + (95/54)*u_x^3")
        + dx(P("u^4")).scale(Fr(35, 216))
        + (dx(P("u^2")) * P("u_xx")).scale(Fr(7, 2)),
        r"{7 \over 648} \, [ u^5 - 30 \, u^2 (u_x)^2 + 36 \, u \, (u_{xx})^2 - {108 \over 7} \, (u_{xxx})^2 ] + [ u_{xxxxxxx} + {7 \over 3} \, u \, u_{xxxxx} + {20 \over 3} \, u_x \, u_{xxxx} + {35 \over 3} \,  u_{xx} \, u_{xxx} + {35 \over 18} \, u^2 \, u_{xxx} + {95 \over 54} \, (u_x)^3 + {35 \over 216} \, (u^4)_x + {7 \over 2} \, (u^2)_x u_{xx} ]_x",
    ),
    9: (
        Z,
        -P("(16/405)*u^5 + (20/9)*u^2*u_x^2 + (32/27)*u^3*u_xx + (113/9)*u_x^2*u_xx"
           " + (80/9)*u*u_xx^2 + (112/9)*u*u_x*u_xxx + (8/3)*u^2*u_xxxx + (23/2)*u_xxx^2"
           " + (56/3)*u_xx*u_xxxx + 9*u_x*u_xxxxx + (8/3)*u*u_xxxxxx + u_xxxxxxxx"),
        r"- [ {16 \over 405} \, u^5 + {20 \over 9} \, u^2 \, (u_x)^2 + {32 \over 27} \, u^3 \,  u_{xx} + {113 \over 9} \, (u_x)^2 \, u_{xx} + {80 \over 9} \, u \, (u_{xx})^2 + {112 \over 9} \, u \, u_x \, u_{xxx} + {8 \over 3} \, u^2 \, u_{xxxx} + {23 \over 2} \, (u_{xxx})^2 + {56 \over 3} \,  u_{xx} \, u_{xxxx} + 9 \, u_x \, u_{xxxxx} + {8 \over 3} \, u \, u_{xxxxxx} + u_{xxxxxxxx} ]_x",
    ),
    10: (
        P("(7/1296)*(u^6 - 60*u^3*u_x^2 + 108*u^2*u_xx^2 - 30*u_x^4 - (648/7)*u*u_xxx^2"
          " + (720/7)*u_xx^3 + (216/7)*u_xxxx^2)"),
        P("u_xxxxxxxxx + (35/72)*u^4*u_x + (35/18)*u^3*u_xxx + (21/2)*u^2*u_x*u_xx"
          " + (95/18)*u*u_x^3 + (7/2)*u^2*u_xxxxx + 20*u*u_x*u_xxxx + (455/18)*u_x^2*u_xxx"
          " + 35*u*u_xx*u_xxx + (69/2)*u_x*u_xx^2 + 3*u*u_xxxxxxx + (35/3)*u_x*u_xxxxxx"
          " + 28*u_xx*u_xxxxx + (125/3)*u_xxx*u_xxxx"),
        r"{7 \over 1296} \, [ u^6 - 60 \, u^3 \, (u_x)^2 + 108 \, u^2 \, (u_{xx})^2 -30 \, (u_x)^4 - {648 \over 7} \, u \, (u_{xxx})^2 + {720 \over 7} \, (u_{xx})^3 + {216 \over 7} \, (u_{xxxx})^2 ] + [ u_{xxxxxxxxx} + {35 \over 72} \, u^4 \, u_x + {35 \over 18} \, u^3 \, u_{xxx} + {21 \over 2} \, u^2 \, u_x \, u_{xx} + {95 \over 18} \, u \, (u_x)^3 + {7 \over 2} \, u^2 \, u_{xxxxx} + 20 \, u \, u_x \, u_{xxxx} + {455 \over 18} \, (u_x)^2 \,  u_{xxx} + 35 \, u \, u_{xx} \, u_{xxx} + {69 \over 2} \, u_x \, (u_{xx})^2 + 3 \, u \, u_{xxxxxxx} + {35 \over 3} \, u_x \, u_{xxxxxx} + 28 \, u_{xx} \, u_{xxxxx} + {125 \over 3} \, u_{xxx} \, u_{xxxx} ]_x",
    ),
}

CHARGES = {
    0: (P("u"), r"Q^{(0)} = \int_{\cal I} u \, dx"),
    2: (P("(1/6)*u^2"), r"Q^{(2)} = {1 \over 6} \, \int_{\cal I} u^2 \, dx"),
    4: (P("(1/6)*((1/3)*u^3 - u_x^2)"), r"Q^{(4)} = {1 \over 6} \, \int_{\cal I} [{1 \over 3} \, u^3 - (u_x)^2 ] \, dx"),
    6: (
        P("(5/216)*(u^4 - 12*u*u_x^2 + (36/5)*u_xx^2)"),
        r"Q^{(6)} = {5 \over 216} \, \int_{\cal I} [ u^4 - 12 \, u \, (u_x)^2 + {36 \over 5} \, (u_{xx})^2 ] \, dx",
    ),
    8: (
        P("(7/648)*(u^5 - 30*u^2*u_x^2 + 36*u*u_xx^2 - (108/7)*u_xxx^2)"),
        r"Q^{(8)} = {7 \over 648} \, \int_{\cal I} [ u^5 - 30 \, u^2 \, (u_x)^2 + 36 \, u \, (u_{xx})^2 - {108 \over 7} \, (u_{xxx})^2 ] \, dx",
    ),
    10: (
        P("(7/1296)*(u^6 - 60*u^3*u_x^2 + 108*u^2*u_xx^2 - 30*u_x^4 - (648/7)*u*u_xxx^2"
          " + (720/7)*u_xx^3 + (216/7)*u_xxxx^2)"),
        r"Q^{(10)} = {7 \over 1296} \, \int_{\cal I} [ u^6 - 60 \, u^3 \, (u_x)^2 + 108 \, u^2 \, (u_{xx})^2 -30 \, (u_x)^4 - {648 \over 7} \, u \, (u_{xxx})^2 + {720 \over 7} \, (u_{xx})^3 + {216 \over 7} \, (u_{xxxx})^2 ]  \, dx",
    ),
}


def build():
    entries = []
    for m, (plain, bracket, quote) in DENSITIES.items():
        entries.append({"m": m, "kind": "density", "poly": to_json(plain + dx(bracket)), "source_quote": quote})
    for m, (poly, quote) in CHARGES.items():
        entries.append({"m": m, "kind": "charge", "poly": to_json(poly), "source_quote": quote})
    return entries


if __name__ == "__main__":
    out = Path(__file__).resolve().parents[1] / "src" / "bidiff" / "data" / "reference_catalog.json"
    if len(sys.argv) > 1:
        out = Path(sys.argv[1])
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(build(), indent=1) + "\n")
    print(f"wrote {out}")
