from __future__ import annotations

from itertools import combinations

import pytest
import sympy
from conftest import scalars
from hypothesis import given
from hypothesis import strategies as st
from oracles import to_sympy

import supergeo.piproj as piproj
from supergeo.errors import LemmaViolation, NotInvariant
from supergeo.expr import parse
from supergeo.g11m import action_substitution, generic_point
from supergeo.piproj import (
    CellContext,
    bundle_maps,
    cocycle_identities,
    d_quotient,
    decompose,
    expand,
    generator_pair,
    generators,
    head_terms,
    invariance_defect,
    invariant_functions,
    is_invariant,
    opi_basis,
    quotient_failures,
)
from supergeo.dskew import DElement
from supergeo.superpoly import VarTable, substitute


def test_generator_formulas():
    ctx = CellContext(1, 0)
    gens = generators(ctx)
    assert gens.w[1] == parse("z1*z0^-1 - zeta0*zeta1*z0^-2", ctx.ring)
    assert gens.eta[1] == parse("zeta1*z0^-1 - z1*zeta0*z0^-2", ctx.ring)


def test_rank_one_has_no_generators():
    gens = generators(CellContext(0, 0))
    assert gens.w == {} and gens.eta == {}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_every_generator_is_invariant(n):
    for i in range(n + 1):
        ctx = CellContext(n, i)
        gens = generators(ctx)
        for j in ctx.others:
            assert is_invariant(ctx, gens.w[j])
            assert is_invariant(ctx, gens.eta[j])


def test_ratio_is_not_invariant():
    ctx = CellContext(1, 0)
    s = parse("z1*z0^-1", ctx.ring)
    # worked out by hand from z -> t^-1 z - t^-2 tau zeta
    expected = parse("t^-1*tau*(zeta0*z1*z0^-2 - zeta1*z0^-1)", ctx.ring)
    assert invariance_defect(ctx, s) == expected
    assert not is_invariant(ctx, s)


def test_constants_are_invariant():
    ctx = CellContext(2, 1)
    assert is_invariant(ctx, ctx.ring.const(7))


def test_decompose_generator():
    ctx = CellContext(2, 0)
    w, _ = generator_pair(ctx.ring, 0, 1)
    assert decompose(ctx, w) == ctx.cell_ring.var("y1")


def test_decompose_rejects_non_invariants():
    ctx = CellContext(1, 0)
    with pytest.raises(NotInvariant) as info:
        decompose(ctx, parse("z1*z0^-1", ctx.ring))
    assert info.value.defect


def test_expand_products():
    ctx = CellContext(2, 0)
    C = ctx.cell_ring
    w1, e1 = generator_pair(ctx.ring, 0, 1)
    w2, e2 = generator_pair(ctx.ring, 0, 2)
    assert expand(ctx, C.var("y1")) == w1
    assert expand(ctx, C.var("tau1") * C.var("tau2")) == e1 * e2
    P = C.var("y1") * C.var("tau2")
    assert decompose(ctx, expand(ctx, P)) == P


def test_lemma_violation_is_reported(monkeypatch):
    ctx = CellContext(1, 0)
    w, _ = generator_pair(ctx.ring, 0, 1)
    monkeypatch.setattr(piproj, "head_terms", lambda c, s: ctx.ring.zero())
    with pytest.raises(LemmaViolation) as info:
        decompose(ctx, w)
    assert info.value.remainder == w


@st.composite
def cell_polynomials(draw, max_n=3, degree=3):
    n = draw(st.integers(1, max_n))
    i = draw(st.integers(0, n))
    ctx = CellContext(n, i)
    C = ctx.cell_ring
    evens = [f"y{j}" for j in ctx.others]
    odds = [f"tau{j}" for j in ctx.others]
    P = C.zero()
    for _ in range(draw(st.integers(0, 4))):
        k = draw(st.integers(0, min(degree, len(odds))))
        odd = draw(st.sampled_from(list(combinations(odds, k))))
        exps = {}
        for _ in range(draw(st.integers(0, degree - k))):
            name = draw(st.sampled_from(evens))
            exps[name] = exps.get(name, 0) + 1
        P = P + C.monomial(exps, odd) * draw(scalars(nonzero=True))
    return ctx, P


@given(cell_polynomials())
def test_decompose_inverts_expand(data):
    ctx, P = data
    s = expand(ctx, P)
    assert is_invariant(ctx, s)
    assert decompose(ctx, s) == P
    assert expand(ctx, decompose(ctx, s)) == s


@given(cell_polynomials())
def test_head_terms_determine_the_section(data):
    ctx, P = data
    s = expand(ctx, P)
    # the head terms alone map back to P, and the rest is what expand adds
    assert piproj._head_to_cell(ctx, head_terms(ctx, s)) == P
    assert s - expand(ctx, piproj._head_to_cell(ctx, head_terms(ctx, s))) == ctx.ring.zero()


def test_base_constants_pass_through():
    ctx = CellContext(2, 1, extra_even=["c"], extra_odd=["kappa"])
    C = ctx.cell_ring
    P = C.var("c") * C.var("y0") + C.var("kappa") * C.var("tau2") + C.var("kappa")
    s = expand(ctx, P)
    assert is_invariant(ctx, s)
    assert decompose(ctx, s) == P


@pytest.mark.parametrize("n", [0, 1, 2])
def test_bundle_maps(n):
    for i in range(n + 1):
        rep = bundle_maps(n, i)
        assert rep.ok, rep.failures


def test_bundle_maps_formulas():
    rep = bundle_maps(1, 0)
    B = rep.psi["z0"].ring
    U = rep.phi["t"].ring
    assert rep.psi["z1"] == parse("t*y1 + tau*tau1", B)
    assert rep.psi["zeta1"] == parse("t*tau1 + tau*y1", B)
    assert rep.psi["z0"] == B.var("t") and rep.psi["zeta0"] == B.var("tau")
    assert rep.phi["t"] == U.var("z0") and rep.phi["tau"] == U.var("zeta0")
    assert (rep.phi["y1"], rep.phi["tau1"]) == generator_pair(U, 0, 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_opi_relations(n):
    for i in range(n + 1):
        assert opi_basis(n, i).ok
        assert quotient_failures(n, i) == []


def test_d_quotient_examples():
    ring = VarTable([("z0", True), ("z1", False)], ["zeta0", "zeta1"])
    s0 = DElement(ring.var("z0"), ring.var("zeta0"))
    s1 = DElement(ring.var("z1"), ring.var("zeta1"))
    assert d_quotient(s0, s1) == generator_pair(ring, 0, 1)
    assert d_quotient(s0, s0) == (ring.one(), ring.zero())


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cocycle_identities(n):
    rep = cocycle_identities(n)
    assert rep.ok, rep.failures
    assert rep.checked[3] == (n + 1) ** 3


def test_global_sections():
    assert [str(b) for b in invariant_functions(1, 3)] == ["1"]
    assert [str(b) for b in invariant_functions(0, 3, laurent=True)] == ["1"]
    assert [str(b) for b in invariant_functions(2, 0)] == ["1"]


@pytest.mark.parametrize("n, bound, laurent", [(1, 2, False), (0, 2, True), (1, 1, True)])
def test_global_sections_match_sympy_nullspace(n, bound, laurent):
    inverted = set(range(n + 1)) if laurent else set()
    ring = VarTable(
        [(f"z{j}", j in inverted) for j in range(n + 1)] + [("t", True)],
        [f"zeta{j}" for j in range(n + 1)] + ["tau"],
    )
    act = action_substitution(generic_point(ring), n)
    monos = piproj._monomials(ring, n, bound, laurent)
    defects = [substitute(m, act) - m for m in monos]
    keys = sorted({k for d in defects for k in d.terms}, key=repr)
    M = sympy.Matrix([[to_sympy(d.terms[k]) if k in d.terms else 0 for d in defects] for k in keys])
    null = M.nullspace() if keys else [sympy.eye(len(monos))[:, 0]]
    ours = invariant_functions(n, bound, laurent)
    assert len(null) == len(ours)
    assert [str(b) for b in ours] == ["1"]
