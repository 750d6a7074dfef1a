from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
from conftest import even_units, polynomials
from hypothesis import given
from hypothesis import strategies as st
from oracles import d_algebra, from_delement

from supergeo.dskew import (
    DElement,
    Side,
    azumaya_check,
    dinvert,
    dmul,
    homomorphism_failures,
    psi_matrix,
)
from supergeo.errors import NotAUnit, NotHomogeneous
from supergeo.scalar import Scalar
from supergeo.superpoly import Parity, VarTable
from supergeo.supermatrix import SuperMatrix, matmul

R = VarTable([("z0", True), ("z1", False)], ["zeta0", "zeta1", "zeta2"])
ONE, THETA = DElement.one(R), DElement.theta(R)


def mat(rows):
    return SuperMatrix(R, rows, (1, 1), (1, 1))


def delements(parity=None):
    if parity is None:
        return st.tuples(polynomials(R), polynomials(R)).map(lambda p: DElement(*p))
    # even: (even, odd); odd: (odd, even)
    return st.tuples(polynomials(R, parity=parity), polynomials(R, parity=1 - parity)).map(
        lambda p: DElement(*p)
    )


def test_theta_squares_to_minus_one():
    assert dmul(THETA, THETA) == -ONE


def test_theta_squares_to_plus_one_in_opposite_algebra():
    # x .o y = (-1)^{|x||y|} y x gives theta .o theta = -(theta theta) = +1
    assert dmul(THETA, THETA, Side.OPPOSITE) == ONE


def test_group_law_from_multiplication():
    ring = VarTable([("a", True), ("b", True)], ["alpha", "beta"])
    a, b, al, be = ring.vars("a", "b", "alpha", "beta")
    prod = dmul(DElement(a, al), DElement(b, be))
    assert prod == DElement(a * b + al * be, a * be + b * al)


def test_dinvert_closed_form():
    ring = VarTable([("t", True)], ["tau"])
    t, tau = ring.vars("t", "tau")
    assert dinvert(DElement(t, tau)) == DElement(t**-1, -(t**-2) * tau)
    assert dinvert(DElement.one(ring)) == DElement.one(ring)
    assert dinvert(DElement.theta(ring)) == -DElement.theta(ring)


def test_dinvert_rejects_non_units():
    with pytest.raises(NotAUnit):
        dinvert(DElement(R.var("z1"), R.zero()))


def test_psi_images():
    assert psi_matrix(ONE, ONE) == mat([[1, 0], [0, 1]])
    assert psi_matrix(THETA, ONE) == mat([[0, -1], [1, 0]])
    assert psi_matrix(ONE, THETA) == mat([[0, 1], [1, 0]])
    assert psi_matrix(THETA, THETA) == mat([[-1, 0], [0, 1]])
    assert matmul(psi_matrix(THETA, ONE), psi_matrix(THETA, ONE)) == mat([[-1, 0], [0, -1]])


def test_psi_needs_homogeneous_arguments():
    with pytest.raises(NotHomogeneous):
        psi_matrix(ONE + THETA, ONE)


def test_psi_is_multiplicative_on_all_basis_pairs():
    assert homomorphism_failures(R) == []


def test_azumaya_coefficients_over_constants():
    rep = azumaya_check()
    half = Scalar(Fraction(1, 2))
    # labels: 1(x)1, theta(x)1, 1(x)theta, theta(x)theta
    assert rep.coefficients["E11"] == [half, 0, 0, -half]
    assert rep.coefficients["E22"] == [half, 0, 0, half]
    assert rep.coefficients["E12"] == [0, -half, half, 0]
    assert rep.coefficients["E21"] == [0, half, half, 0]
    assert rep.ok


def test_azumaya_coefficients_are_stable_under_base_change():
    ring = VarTable(["z0"], ["zeta0"])
    assert azumaya_check(ring).coefficients == azumaya_check().coefficients
    assert azumaya_check(ring).ok


def test_azumaya_matches_sympy_solve():
    import sympy

    rep = azumaya_check()
    cols = [[int(m[i // 2, i % 2].constant_term().re) for i in range(4)] for m in rep.images]
    A = sympy.Matrix(cols).T
    for k, name in enumerate(["E11", "E12", "E21", "E22"]):
        target = sympy.zeros(4, 1)
        target[k] = 1
        sol = A.LUsolve(target)
        got = [sympy.Rational(c.re.numerator, c.re.denominator) for c in rep.coefficients[name]]
        assert list(sol) == got


@given(delements(), delements(), delements())
def test_associativity(x, y, z):
    assert dmul(dmul(x, y), z) == dmul(x, dmul(y, z))
    assert dmul(dmul(x, y, Side.OPPOSITE), z, Side.OPPOSITE) == dmul(
        x, dmul(y, z, Side.OPPOSITE), Side.OPPOSITE
    )


@given(delements(), delements())
def test_multiplication_matches_word_oracle(x, y):
    alg = d_algebra(R)
    assert from_delement(dmul(x, y)) == alg.mul(from_delement(x), from_delement(y))


@given(polynomials(R))
def test_theta_commutation_rule(r):
    # theta r = r.bar theta
    rr = DElement.scalar(r)
    assert dmul(THETA, rr) == dmul(DElement.scalar(r.grade_involution()), THETA)


@given(delements(), delements())
def test_opposite_twice_is_plain(x, y):
    def opp_opp(a, b):
        # (A^o)^o product: a .oo b = (-1)^{|a||b|} b .o a, on homogeneous parts
        total = DElement(R.zero(), R.zero())
        for pa, a_part in enumerate(a.components()):
            for pb, b_part in enumerate(b.components()):
                term = dmul(b_part, a_part, Side.OPPOSITE)
                total = total + (-term if pa and pb else term)
        return total

    assert opp_opp(x, y) == dmul(x, y)


@given(even_units(R), polynomials(R, parity=1))
def test_dinvert_two_sided(t, tau):
    x = DElement(t, tau)
    inv = dinvert(x)
    assert dmul(x, inv) == ONE
    assert dmul(inv, x) == ONE


@given(even_units(R), polynomials(R, parity=0))
def test_dinvert_odd_units(u, e):
    # u theta + nilpotent odd correction is still invertible
    nil = type(e)(R, {m: c for m, c in e.terms.items() if m.odd})
    x = DElement(R.var("zeta0") * R.var("z1"), u + nil)
    assert x.parity() is Parity.ODD
    inv = dinvert(x)
    assert dmul(x, inv) == ONE and dmul(inv, x) == ONE


@pytest.mark.parametrize("a, b, c, d", list(product([ONE, THETA], repeat=4)))
def test_tensor_product_sign(a, b, c, d):
    sign = -1 if (b is THETA and c is THETA) else 1
    lhs = matmul(psi_matrix(a, b), psi_matrix(c, d))
    rhs = psi_matrix(dmul(a, c), dmul(b, d, Side.OPPOSITE))
    assert lhs == (rhs if sign > 0 else -rhs)
