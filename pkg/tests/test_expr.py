from __future__ import annotations

import pytest
from conftest import polynomials
from hypothesis import given

from supergeo.errors import ExprSyntaxError, NegativePowerOfNonUnit, UnknownVariable
from supergeo.expr import BinOp, Neg, Num, Pow, Var, parse, parse_expr
from supergeo.piproj import CellContext, generator_pair
from supergeo.scalar import I, Scalar
from supergeo.superpoly import VarTable, render

CELL = CellContext(2, 0).ring


def test_odd_reordering_sign():
    assert render(parse("zeta1*zeta0", CELL)) == "-zeta0*zeta1"


def test_generator_formula_parses_to_w():
    w, _ = generator_pair(CELL, 0, 1)
    assert parse("z1*z0^-1 - zeta0*zeta1*z0^-2", CELL) == w


def test_negative_power_of_non_unit():
    with pytest.raises(NegativePowerOfNonUnit):
        parse("z1^-1", CELL)


def test_unknown_variable():
    with pytest.raises(UnknownVariable):
        parse("z7", CELL)


@pytest.mark.parametrize(
    "src, pos",
    [("z0 +", 4), ("(z0", 3), ("z0 ^ x", 5), ("2 $ 3", 2), ("z0 z1", 3), ("", 0)],
)
def test_syntax_errors_report_position(src, pos):
    with pytest.raises(ExprSyntaxError) as info:
        parse(src, CELL)
    assert info.value.position == pos
    assert info.value.expected


def test_whitespace_insensitive():
    assert parse(" z0 *zeta1 -  3/2 * i ", CELL) == parse("z0*zeta1-3/2*i", CELL)


def test_ast_shape():
    assert parse_expr("-x^2*3") == BinOp("*", Neg(Pow(Var("x"), 2)), Num(3))


def test_imaginary_unit_and_rationals():
    p = parse("(1/2 - i)^2", VarTable())
    assert p.constant_term() == (Scalar(1, 0) / 2 - I) ** 2


@given(polynomials(ring=CELL))
def test_round_trip_on_cell_ring(p):
    assert parse(render(p), CELL) == p
