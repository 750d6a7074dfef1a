from __future__ import annotations

from conftest import even_units, polynomials
from hypothesis import given

from supergeo.dskew import dinvert, dmul
from supergeo.g11m import (
    GroupElement,
    action_substitution,
    embed_sl11,
    generic_point,
    ginv,
    gmul,
    to_dstar,
)
from supergeo.superpoly import VarTable, substitute
from supergeo.supermatrix import SuperMatrix, berezinian, matmul

G = VarTable([("t1", True), ("t2", True), ("t3", True)], ["tau1", "tau2", "tau3"])
g, h, k = (generic_point(G, f"t{j}", f"tau{j}") for j in (1, 2, 3))
E = GroupElement.identity(G)


def test_group_law_formula():
    a, al, b, be = G.vars("t1", "tau1", "t2", "tau2")
    assert gmul(g, h) == GroupElement(a * b + al * be, a * be + b * al)


def test_group_axioms_at_generic_points():
    assert gmul(gmul(g, h), k) == gmul(g, gmul(h, k))
    assert gmul(g, E) == g and gmul(E, g) == g
    assert gmul(g, ginv(g)) == E and gmul(ginv(g), g) == E
    assert ginv(ginv(g)) == g
    assert ginv(E) == E


def test_group_is_not_commutative():
    assert gmul(g, h) != gmul(h, g)


def test_inverse_closed_form():
    t, tau = G.vars("t1", "tau1")
    assert ginv(g) == GroupElement(t**-1, -(t**-2) * tau)


def test_sl11_embedding():
    t, tau = G.vars("t1", "tau1")
    assert embed_sl11(g) == SuperMatrix(G, [[t, tau], [tau, t]], (1, 1), (1, 1))
    assert embed_sl11(gmul(g, h)) == matmul(embed_sl11(g), embed_sl11(h))
    assert berezinian(embed_sl11(g)) == G.one()
    assert berezinian(embed_sl11(gmul(gmul(g, h), k))) == G.one()


def test_dstar_isomorphism():
    assert to_dstar(gmul(g, h)) == dmul(to_dstar(g), to_dstar(h))
    assert to_dstar(ginv(g)) == dinvert(to_dstar(g))
    assert to_dstar(E) == dmul(to_dstar(E), to_dstar(E))


A = VarTable(
    [("z0", False), ("z1", False), ("t1", True), ("t2", True)],
    ["zeta0", "zeta1", "tau1", "tau2"],
)


def test_action_formula():
    ga = generic_point(A, "t1", "tau1")
    t, tau, z0, q0 = A.vars("t1", "tau1", "z0", "zeta0")
    sub = action_substitution(ga, 1)
    assert sub["z0"] == t**-1 * z0 - t**-2 * tau * q0
    assert sub["zeta0"] == t**-1 * q0 - t**-2 * tau * z0


def test_identity_acts_trivially():
    sub = action_substitution(GroupElement.identity(A), 1)
    assert all(v == A.var(name) for name, v in sub.items())


def test_right_action_composition_order():
    ga, ha = (generic_point(A, f"t{j}", f"tau{j}") for j in (1, 2))
    sg, sh = action_substitution(ga, 1), action_substitution(ha, 1)
    shg = action_substitution(gmul(ha, ga), 1)
    sgh = action_substitution(gmul(ga, ha), 1)
    for name in sg:
        x = A.var(name)
        twice = substitute(substitute(x, sg), sh)
        assert twice == substitute(x, shg)
        assert twice != substitute(x, sgh)


R = VarTable([("z0", True), ("z1", False)], ["zeta0", "zeta1", "zeta2"])


@given(even_units(R), polynomials(R, parity=1), even_units(R), polynomials(R, parity=1))
def test_homomorphisms_on_random_points(a, al, b, be):
    x, y = GroupElement(a, al), GroupElement(b, be)
    assert embed_sl11(gmul(x, y)) == matmul(embed_sl11(x), embed_sl11(y))
    assert to_dstar(gmul(x, y)) == dmul(to_dstar(x), to_dstar(y))
    assert berezinian(embed_sl11(x)) == R.one()
    assert gmul(x, ginv(x)) == GroupElement.identity(R)
