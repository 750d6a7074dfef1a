"""Seeded random ring elements for randomized verification runs."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .scalar import Scalar
from .superpoly import SuperPolynomial, VarTable
from .supermatrix import SuperMatrix

__all__ = ["random_scalar", "random_polynomial", "random_even_conjugator"]


def random_scalar(rng: random.Random, nonzero: bool = False, span: int = 4) -> Scalar:
    while True:
        re = Fraction(rng.randint(-span, span), rng.randint(1, 3))
        im = Fraction(rng.randint(-span, span), rng.randint(1, 3)) if rng.random() < 0.5 else 0
        c = Scalar(re, im)
        if c or not nonzero:
            return c


def random_polynomial(
    rng: random.Random,
    ring: VarTable,
    degree: int = 2,
    terms: int = 3,
    parity: int | None = None,
    even_names=None,
    odd_names=None,
) -> SuperPolynomial:
    """Sum of ``terms`` random monomials of total size at most ``degree``.

    Exponents are non-negative; ``parity`` restricts the number of odd
    factors to even (0) or odd (1).
    """
    even_names = list(even_names if even_names is not None else (n for n, _ in ring.even_vars))
    odd_names = list(odd_names if odd_names is not None else ring.odd_vars)
    acc = ring.zero()
    for _ in range(terms):
        choices = [
            k
            for k in range(0, min(degree, len(odd_names)) + 1)
            if parity is None or k % 2 == parity
        ]
        if not choices:
            continue
        k = rng.choice(choices)
        odd = rng.choice(list(combinations(odd_names, k)))
        exps = {}
        for _ in range(rng.randint(0, degree - k)):
            if even_names:
                name = rng.choice(even_names)
                exps[name] = exps.get(name, 0) + 1
        acc = acc + ring.monomial(exps, odd) * random_scalar(rng, nonzero=True)
    return acc


def random_even_conjugator(
    rng: random.Random, ring: VarTable, even_names=(), odd_names=()
) -> SuperMatrix:
    """Even invertible ``[[c1, p1], [p2, c2]]`` with nonzero constants on the
    diagonal and odd off-diagonal entries built from ``odd_names``."""
    c1 = ring.const(random_scalar(rng, nonzero=True))
    c2 = ring.const(random_scalar(rng, nonzero=True))
    if odd_names:
        p1 = random_polynomial(rng, ring, 2, 2, 1, even_names, odd_names)
        p2 = random_polynomial(rng, ring, 2, 2, 1, even_names, odd_names)
    else:
        p1 = p2 = ring.zero()
    return SuperMatrix(ring, [[c1, p1], [p2, c2]], (1, 1), (1, 1))
