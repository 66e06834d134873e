"""Local conserved densities of KdV from the Riccati recursion.

With ``phi = sum (6 lam)^m phi(m)`` and ``rho(m) = phi(m)_x`` the Riccati
equation ``phi_x = u - 6 lam phi_xx + 6 lam^2 phi_x^2`` gives

    rho(0) = u,  rho(1) = -u_x,
    rho(m) = -D_x rho(m-1) + 1/6 sum_{k=0}^{m-2} rho(k) rho(m-2-k).

The conservation law ``phi_xt = -(phi_xxx - 3 lam phi_x phi_xx + lam^2 phi_x^3
+ u phi_x / 2)_x`` read off at order ``(6 lam)^m`` fixes the flux.  Since
``lam = (6 lam)/6``, the cubic and quadratic terms pick up 1/2 and 1/36.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from typing import List

from .jetpoly import DiffPoly, dx, u_jet

U = u_jet(0)

_lock = threading.Lock()
_rhos: List[DiffPoly] = [U, -u_jet(1)]
_drhos: dict = {}


def rho(m: int) -> DiffPoly:
    """The m-th conserved density ``phi(m)_x`` (memoised)."""
    if m < 0:
        raise ValueError("order must be non-negative")
    if m < len(_rhos):
        return _rhos[m]
    with _lock:
        while len(_rhos) <= m:
            n = len(_rhos)
            acc = DiffPoly()
            for k in range((n - 1) // 2 + 1):
                j = n - 2 - k
                if j < k:
                    break
                prod = _rhos[k] * _rhos[j]
                acc = acc + (prod if j == k else prod.scale(2))
            _rhos.append(-dx(_rhos[n - 1]) + acc.scale(Fraction(1, 6)))
    return _rhos[m]


def clear_cache() -> None:
    """Drop memoised densities beyond the base cases."""
    with _lock:
        del _rhos[2:]
        _drhos.clear()


def rho_uncached(m: int) -> DiffPoly:
    """Recompute ``rho(m)`` from scratch, bypassing the memo table."""
    seq = [U, -u_jet(1)]
    for n in range(2, m + 1):
        acc = DiffPoly()
        for k in range(n - 1):
            acc = acc + seq[k] * seq[n - 2 - k]
        seq.append(-dx(seq[n - 1]) + acc.scale(Fraction(1, 6)))
    return seq[m]


def _drho(m: int) -> DiffPoly:
    hit = _drhos.get(m)
    if hit is None:
        hit = _drhos.setdefault(m, dx(rho(m)))
    return hit


def flux(m: int) -> DiffPoly:
    """Flux ``F(m)`` with ``D_t rho(m) + D_x F(m) = 0`` on KdV solutions."""
    if m < 0:
        raise ValueError("order must be non-negative")
    result = dx(_drho(m)) + (U * rho(m)).scale(Fraction(1, 2))
    quad = DiffPoly()
    for j in range(m):
        quad = quad + rho(j) * _drho(m - 1 - j)
    result = result - quad.scale(Fraction(1, 2))
    if m >= 2:
        cubic = DiffPoly()
        for j in range(m - 1):
            for k in range(m - 1 - j):
                cubic = cubic + rho(j) * rho(k) * rho(m - 2 - j - k)
        result = result + cubic.scale(Fraction(1, 36))
    return result


def gardner_residual(M: int) -> List[DiffPoly]:
    """Coefficients of ``(6 lam)^m``, m <= M, in ``phi_x - u + 6 lam phi_xx - 6 lam^2 phi_x^2``.

    Built as truncated series products, independently of the recursion in
    :func:`rho`; every entry is zero when the densities are right.
    """
    series = [rho(m) for m in range(M + 1)]
    # phi_x^2 as a Cauchy product
    square = [DiffPoly() for _ in range(M + 1)]
    for i, a in enumerate(series):
        for j in range(M + 1 - i):
            square[i + j] = square[i + j] + a * series[j]
    out = []
    for m in range(M + 1):
        r = series[m]
        if m == 0:
            r = r - U
        if m >= 1:
            # 6 lam = (6 lam)^1
            r = r + dx(series[m - 1])
        if m >= 2:
            # 6 lam^2 = (6 lam)^2 / 6
            r = r - square[m - 2].scale(Fraction(1, 6))
        out.append(r)
    return out
