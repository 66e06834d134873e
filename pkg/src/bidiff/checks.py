"""Randomised identity suite for the bi-differential calculus."""
from __future__ import annotations

import random
from typing import List, Tuple

from .jetpoly import X, u_jet
from .opcalc import (
    TAU,
    ConsistencyError,
    GradedForm,
    d_map,
    delta_map,
    form_mul,
    gauge_curvature,
    kdv_residual_from_potential,
)
from .randgen import DEFAULT_SEED, random_form
from .tower import on_shell

Result = Tuple[str, bool, str]


def _leibniz(D, w, w2) -> GradedForm:
    sign = -1 if w.degree % 2 else 1
    return D(form_mul(w, w2)) - (form_mul(D(w), w2) + form_mul(w, D(w2)) * sign)


def calculus_suite(seed: int = DEFAULT_SEED, samples: int = 100) -> List[Result]:
    """Check d^2 = delta^2 = 0, anticommutation, graded Leibniz, the x/delta x
    commutation rule and the flatness derivation of KdV on ``samples`` random
    forms per identity."""
    rng = random.Random(seed)
    counts = {k: 0 for k in ("d^2 = 0", "delta^2 = 0", "d delta + delta d = 0", "Leibniz d", "Leibniz delta")}
    failures = {k: "" for k in counts}
    for i in range(samples):
        w = random_form(rng, i % 2)
        for name, value in (
            ("d^2 = 0", d_map(d_map(w))),
            ("delta^2 = 0", delta_map(delta_map(w))),
        ):
            if value and not failures[name]:
                failures[name] = f"sample {i}: {value}"
            counts[name] += 1
        w0 = random_form(rng, 0)
        ac = d_map(delta_map(w0)) + delta_map(d_map(w0))
        if ac and not failures["d delta + delta d = 0"]:
            failures["d delta + delta d = 0"] = f"sample {i}: {ac}"
        counts["d delta + delta d = 0"] += 1
        r, s = [(0, 0), (0, 1), (1, 0)][i % 3]
        a, b = random_form(rng, r), random_form(rng, s)
        for name, D in (("Leibniz d", d_map), ("Leibniz delta", delta_map)):
            value = _leibniz(D, a, b)
            if value and not failures[name]:
                failures[name] = f"sample {i}: {value}"
            counts[name] += 1
    results: List[Result] = [(k, not failures[k], failures[k] or f"{counts[k]} random samples") for k in counts]

    x = GradedForm.scalar(X)
    remark = form_mul(x, delta_map(x)) - form_mul(delta_map(x), x) - TAU
    results.append(("x delta x = (delta x) x + tau", not remark, str(remark) if remark else "exact"))

    A = delta_map(GradedForm.scalar(u_jet(symbol="v")))
    F, dA = gauge_curvature(A)
    results.append(("delta A = 0 for A = delta v", not dA, str(dA) if dA else "exact"))
    results.append(("F = 0 on shell", not on_shell(F), "rewrite of v_tx"))
    try:
        R = kdv_residual_from_potential()
        results.append(("flatness gives KdV", True, f"R = {R}"))
    except ConsistencyError as exc:
        results.append(("flatness gives KdV", False, str(exc)))
    return results
