"""Independent reference computations used by the tests.

``WordAlgebra`` multiplies elements written as sums of
``coefficient * even-exponents * word`` where a word is a sequence of odd
letters.  Products concatenate words and then bubble-sort them, flipping the
sign on every adjacent swap; a repeated letter squares to the value given in
``squares`` (0 for ordinary odd variables, -1 for theta).  Coefficients are
sympy numbers.  Nothing here shares code with the package.
"""

from __future__ import annotations

import sympy


def to_sympy(c):
    return sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(
        c.im.numerator, c.im.denominator
    )


class WordAlgebra:
    def __init__(self, n_even, letters, squares=None):
        self.n_even = n_even
        self.letters = list(letters)
        self.rank = {a: k for k, a in enumerate(self.letters)}
        self.squares = {a: 0 for a in self.letters}
        self.squares.update(squares or {})

    def normalize_word(self, word):
        """Return (sign, sorted word) or (0, None)."""
        w = list(word)
        sign = 1
        changed = True
        while changed:
            changed = False
            k = 0
            while k < len(w) - 1:
                a, b = w[k], w[k + 1]
                if a == b:
                    sq = self.squares[a]
                    if sq == 0:
                        return 0, None
                    sign *= sq
                    del w[k : k + 2]
                    changed = True
                    continue
                if self.rank[a] > self.rank[b]:
                    w[k], w[k + 1] = b, a
                    sign = -sign
                    changed = True
                k += 1
        return sign, tuple(w)

    def mul(self, x: dict, y: dict) -> dict:
        out = {}
        for (e1, w1), c1 in x.items():
            for (e2, w2), c2 in y.items():
                sign, w = self.normalize_word(w1 + w2)
                if not sign:
                    continue
                key = (tuple(a + b for a, b in zip(e1, e2)), w)
                out[key] = sympy.expand(out.get(key, 0) + sign * c1 * c2)
        return {k: v for k, v in out.items() if v != 0}

    def add(self, x: dict, y: dict, scale=1) -> dict:
        out = dict(x)
        for k, v in y.items():
            out[k] = sympy.expand(out.get(k, 0) + scale * v)
        return {k: v for k, v in out.items() if v != 0}


def from_poly(p, prefix=()):
    """Word-algebra form of a SuperPolynomial, optionally left-multiplied by
    the letters in ``prefix``."""
    out = {}
    for (e, o), c in p.terms.items():
        word = tuple(prefix) + tuple(p.ring.odd_vars[k] for k in o)
        out[(tuple(e), word)] = to_sympy(c)
    return out


def from_delement(x):
    """``r0 + theta*r1`` as a word-algebra element."""
    alg = {}
    for (e, w), c in from_poly(x.r0).items():
        alg[(e, w)] = c
    for (e, w), c in from_poly(x.r1, prefix=("theta",)).items():
        alg[(e, w)] = alg.get((e, w), 0) + c
    return alg


def d_algebra(ring):
    return WordAlgebra(ring.n_even, ["theta"] + list(ring.odd_vars), {"theta": -1})


def poly_algebra(ring):
    return WordAlgebra(ring.n_even, list(ring.odd_vars))
