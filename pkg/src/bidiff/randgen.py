"""Seeded random jet polynomials, operators and forms for identity checks."""
from __future__ import annotations

import random
from fractions import Fraction

from .jetpoly import DiffPoly, JetVar
from .opcalc import GradedForm, Operator

DEFAULT_SEED = 20251015


def random_poly(rng: random.Random, max_terms=4, max_order=3, max_t=1, symbols=("u",), max_degree=2) -> DiffPoly:
    monos = []
    for _ in range(rng.randint(1, max_terms)):
        factors = []
        for _ in range(rng.randint(0, max_degree)):
            v = JetVar.jet(rng.choice(symbols), rng.randint(0, max_t), rng.randint(0, max_order))
            factors.append((v, 1))
        monos.append((factors, Fraction(rng.randint(-5, 5), rng.randint(1, 4))))
    return DiffPoly.from_monomials(monos)


def random_operator(rng: random.Random, max_power=3, **kw) -> Operator:
    return Operator({n: random_poly(rng, **kw) for n in range(max_power + 1) if rng.random() < 0.6})


def random_form(rng: random.Random, degree: int, **kw) -> GradedForm:
    if degree == 0:
        return GradedForm.scalar(random_operator(rng, **kw))
    if degree == 1:
        return GradedForm.one_form(random_operator(rng, **kw), random_operator(rng, **kw))
    return GradedForm.two_form(random_operator(rng, **kw))
