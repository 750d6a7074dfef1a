"""Affine cells of Pi-projective space and their invariant functions.

On the cell ``U_i`` (where ``z_i`` is inverted) the functions

    w_i^j   = z_j/z_i - zeta_i zeta_j / z_i^2
    eta_i^j = zeta_j/z_i - z_j zeta_i / z_i^2

are invariant under the right action of G_m^{1|1}, and every invariant
function is a unique polynomial in them.  The polynomial is recovered from
its *head terms*: the terms free of ``zeta_i`` (and hence of positive powers
of ``z_i``).  A term ``c z^J zeta^K z_i^-d`` corresponds to ``c y^J tau^K``
in the abstract ring, and the remainder after subtracting the expansion must
vanish exactly.
"""

from __future__ import annotations

from itertools import combinations, product

from .dskew import DElement, dinvert, dmul
from .errors import ContextMismatch, LemmaViolation, NotInvariant
from .g11m import GroupElement, action_substitution, embed_sl11, generic_point, translate_pair
from .linalg import nullspace
from .superpoly import SuperPolynomial, VarTable, substitute
from .supermatrix import berezinian

__all__ = [
    "CellContext",
    "InvariantGenerators",
    "generators",
    "is_invariant",
    "invariance_defect",
    "decompose",
    "expand",
    "head_terms",
    "bundle_maps",
    "BundleReport",
    "opi_basis",
    "OPiReport",
    "d_quotient",
    "quotient_failures",
    "generator_pair",
    "cocycle_identities",
    "CocycleReport",
    "invariant_functions",
]


def _z(j):
    return f"z{j}"


def _zeta(j):
    return f"zeta{j}"


class CellContext:
    """Coordinate ring of the cell ``z_i != 0`` in rank ``(n+1)|(n+1)``.

    Even variables ``z_0..z_n`` then ``t``; odd ``zeta_0..zeta_n`` then
    ``tau``.  ``t`` and ``tau`` are reserved for a generic group point.
    ``inverted`` lists extra indices whose ``z`` is also inverted, and
    ``extra_even`` / ``extra_odd`` adjoin constants from the base ring.
    """

    def __init__(self, n: int, i: int = 0, inverted=(), extra_even=(), extra_odd=()):
        if n < 0 or not 0 <= i <= n:
            raise ValueError(f"need 0 <= i <= n, got n={n}, i={i}")
        self.n = n
        self.i = i
        self.inverted = frozenset(inverted) | {i}
        self.extra_even = tuple(extra_even)
        self.extra_odd = tuple(extra_odd)
        even = [(_z(j), j in self.inverted) for j in range(n + 1)]
        even += [(name, False) for name in self.extra_even]
        even.append(("t", True))
        odd = [_zeta(j) for j in range(n + 1)] + list(self.extra_odd) + ["tau"]
        self.ring = VarTable(even, odd)
        yeven = [(f"y{j}", False) for j in self.others] + [(e, False) for e in self.extra_even]
        yodd = [f"tau{j}" for j in self.others] + list(self.extra_odd)
        self.cell_ring = VarTable(yeven, yodd)

    @property
    def others(self):
        return [j for j in range(self.n + 1) if j != self.i]

    def z(self, j) -> SuperPolynomial:
        return self.ring.var(_z(j))

    def zeta(self, j) -> SuperPolynomial:
        return self.ring.var(_zeta(j))

    def __repr__(self):
        return f"CellContext(n={self.n}, i={self.i})"


def generator_pair(ring: VarTable, i: int, j: int):
    """``(w_i^j, eta_i^j)`` in a ring where ``z_i`` is inverted."""
    zi, zj = ring.var(_z(i)), ring.var(_z(j))
    qi, qj = ring.var(_zeta(i)), ring.var(_zeta(j))
    zi_inv = zi**-1
    zi_inv2 = zi_inv * zi_inv
    return zj * zi_inv - qi * qj * zi_inv2, qj * zi_inv - zj * qi * zi_inv2


class InvariantGenerators:
    __slots__ = ("w", "eta")

    def __init__(self, w: dict, eta: dict):
        self.w = w
        self.eta = eta


def generators(ctx: CellContext) -> InvariantGenerators:
    w, eta = {}, {}
    for j in ctx.others:
        w[j], eta[j] = generator_pair(ctx.ring, ctx.i, j)
    for j in ctx.others:
        for g in (w[j], eta[j]):
            d = invariance_defect(ctx, g)
            if d:
                raise NotInvariant(f"generator {g} is not invariant", d)
    return InvariantGenerators(w, eta)


def _check_ring(ctx: CellContext, s: SuperPolynomial):
    if s.ring != ctx.ring:
        raise ContextMismatch(f"expected an element of {ctx.ring!r}")
    if s.involves("t") or s.involves("tau"):
        raise ContextMismatch("input may not involve the reserved variables t, tau")


def invariance_defect(ctx: CellContext, s: SuperPolynomial) -> SuperPolynomial:
    """``a*(s) - p2*(s)`` at the generic point; zero iff ``s`` is invariant."""
    _check_ring(ctx, s)
    g = generic_point(ctx.ring)
    return substitute(s, action_substitution(g, ctx.n)) - s


def is_invariant(ctx: CellContext, s: SuperPolynomial) -> bool:
    return not invariance_defect(ctx, s)


def head_terms(ctx: CellContext, s: SuperPolynomial) -> SuperPolynomial:
    """Sum of the terms of ``s`` that do not involve ``zeta_i``."""
    qi = ctx.ring.odd_index(_zeta(ctx.i))
    return SuperPolynomial(ctx.ring, {m: c for m, c in s.terms.items() if qi not in m.odd})


def _head_to_cell(ctx: CellContext, head: SuperPolynomial) -> SuperPolynomial:
    target = ctx.cell_ring
    mapping = {
        _z(ctx.i): target.one(),
        _zeta(ctx.i): target.zero(),
        "t": target.one(),
        "tau": target.zero(),
    }
    for j in ctx.others:
        mapping[_z(j)] = target.var(f"y{j}")
        mapping[_zeta(j)] = target.var(f"tau{j}")
    return substitute(head, mapping, target)


def expand(ctx: CellContext, P: SuperPolynomial) -> SuperPolynomial:
    """Evaluate ``P(y, tau)`` at ``y_j = w_i^j``, ``tau_j = eta_i^j``."""
    if P.ring != ctx.cell_ring:
        raise ContextMismatch(f"expected an element of {ctx.cell_ring!r}")
    mapping = {}
    for j in ctx.others:
        mapping[f"y{j}"], mapping[f"tau{j}"] = generator_pair(ctx.ring, ctx.i, j)
    return substitute(P, mapping, ctx.ring)


def decompose(ctx: CellContext, s: SuperPolynomial) -> SuperPolynomial:
    """The unique ``P`` with ``expand(ctx, P) == s`` for invariant ``s``."""
    defect = invariance_defect(ctx, s)
    if defect:
        raise NotInvariant(f"{s} is not invariant", defect)
    P = _head_to_cell(ctx, head_terms(ctx, s))
    remainder = s - expand(ctx, P)
    if remainder:
        raise LemmaViolation(f"head-term subtraction left {remainder}", remainder)
    return P


# ----- principal bundle ----------------------------------------------------


class BundleReport:
    """Outcome of the trivialization checks; ``failures`` lists
    ``(check, generator, difference)`` triples."""

    def __init__(self, n, i, phi, psi, failures):
        self.n = n
        self.i = i
        self.phi = phi
        self.psi = psi
        self.failures = failures

    @property
    def ok(self) -> bool:
        return not self.failures


def bundle_maps(n: int, i: int, group=("s", "sigma")) -> BundleReport:
    """Pullbacks of ``Phi: U_i -> D* x C`` and its inverse ``Psi``.

    ``Phi*`` sends ``t -> z_i``, ``tau -> zeta_i``, ``y_j -> w_i^j``,
    ``tau_j -> eta_i^j``; ``Psi*`` sends ``z_j -> t y_j + tau tau_j``,
    ``zeta_j -> t tau_j + tau y_j``, ``z_i -> t``, ``zeta_i -> tau``.
    Both composites are checked to be the identity on generators, and
    ``Phi`` is checked to be equivariant for a generic group point.
    """
    others = [j for j in range(n + 1) if j != i]
    gs, gsigma = group
    U = VarTable(
        [(_z(j), j == i) for j in range(n + 1)] + [(gs, True)],
        [_zeta(j) for j in range(n + 1)] + [gsigma],
    )
    B = VarTable(
        [("t", True)] + [(f"y{j}", False) for j in others] + [(gs, True)],
        ["tau"] + [f"tau{j}" for j in others] + [gsigma],
    )
    phi = {"t": U.var(_z(i)), "tau": U.var(_zeta(i))}
    for j in others:
        phi[f"y{j}"], phi[f"tau{j}"] = generator_pair(U, i, j)
    t, tau = B.var("t"), B.var("tau")
    psi = {_z(i): t, _zeta(i): tau}
    for j in others:
        y, tj = B.var(f"y{j}"), B.var(f"tau{j}")
        psi[_z(j)] = t * y + tau * tj
        psi[_zeta(j)] = t * tj + tau * y

    failures = []
    for name in U.names:
        if name in (gs, gsigma):
            continue
        x = U.var(name)
        back = substitute(substitute(x, psi, B), phi, U)
        if back != x:
            failures.append(("Phi*Psi*", name, back - x))
    for name in B.names:
        if name in (gs, gsigma):
            continue
        x = B.var(name)
        back = substitute(substitute(x, phi, U), psi, B)
        if back != x:
            failures.append(("Psi*Phi*", name, back - x))

    gU = generic_point(U, gs, gsigma)
    act_U = action_substitution(gU, n)
    gB = generic_point(B, gs, gsigma)
    act_B = {}
    act_B["t"], act_B["tau"] = translate_pair(gB, t, tau)
    for name in B.names:
        if name in (gs, gsigma):
            continue
        lhs = substitute(phi[name], act_U, U)
        rhs = substitute(substitute(B.var(name), act_B, B), phi, U)
        if lhs != rhs:
            failures.append(("equivariance", name, lhs - rhs))
    return BundleReport(n, i, phi, psi, failures)


# ----- O_Pi(1) -------------------------------------------------------------


def _ring_inverting(n: int, inverted, extra_even=(), extra_odd=()) -> VarTable:
    even = [(_z(j), j in inverted) for j in range(n + 1)] + [(e, inv) for e, inv in extra_even]
    odd = [_zeta(j) for j in range(n + 1)] + list(extra_odd)
    return VarTable(even, odd)


def basis_sections(ring: VarTable, n: int):
    s, sigma = {}, {}
    for j in range(n + 1):
        z, q = ring.var(_z(j)), ring.var(_zeta(j))
        s[j] = DElement(z, q)
        sigma[j] = DElement(q, z)
    return s, sigma


class OPiReport:
    def __init__(self, n, i, s, sigma, failures):
        self.n = n
        self.i = i
        self.s = s
        self.sigma = sigma
        self.failures = failures

    @property
    def ok(self) -> bool:
        return not self.failures


def opi_basis(n: int, i: int) -> OPiReport:
    """Sections ``s_j = z_j + theta zeta_j``, ``sigma_j = zeta_j + theta z_j``.

    Checks ``s_j = s_i w + sigma_i eta`` and ``sigma_j = s_i eta + sigma_i w``
    with right coefficients, and that on ``z_i z_j != 0`` the transition
    matrix ``[[w, eta], [eta, w]]`` comes from G_m^{1|1} with Berezinian 1.
    """
    ring = _ring_inverting(n, {i})
    s, sigma = basis_sections(ring, n)
    failures = []
    for j in range(n + 1):
        w, eta = generator_pair(ring, i, j)
        W, E = DElement.scalar(w), DElement.scalar(eta)
        if dmul(s[i], W) + dmul(sigma[i], E) != s[j]:
            failures.append(("s", j))
        if dmul(s[i], E) + dmul(sigma[i], W) != sigma[j]:
            failures.append(("sigma", j))
        local = _ring_inverting(n, {i, j})
        wl, el = generator_pair(local, i, j)
        if berezinian(embed_sl11(GroupElement(wl, el))) != local.one():
            failures.append(("berezinian", j))
    return OPiReport(n, i, s, sigma, failures)


def d_quotient(si: DElement, sj: DElement):
    """Components of ``si^-1 sj``."""
    q = dmul(dinvert(si), sj)
    return q.r0, q.r1


def quotient_failures(n: int, i: int) -> list:
    """Indices ``j`` where ``d_quotient`` disagrees with ``(w_i^j, eta_i^j)``
    or changes when both sections are premultiplied by ``b + theta beta``."""
    ring = _ring_inverting(n, {i}, extra_even=[("b", True)], extra_odd=["beta"])
    s, _ = basis_sections(ring, n)
    u = DElement(ring.var("b"), ring.var("beta"))
    failures = []
    for j in range(n + 1):
        expected = generator_pair(ring, i, j)
        if d_quotient(s[i], s[j]) != expected:
            failures.append(("quotient", j))
        if d_quotient(dmul(u, s[i]), dmul(u, s[j])) != expected:
            failures.append(("basis-change", j))
    return failures


class CocycleReport:
    def __init__(self, n, checked, failures):
        self.n = n
        self.checked = checked
        self.failures = failures

    @property
    def ok(self) -> bool:
        return not self.failures


def cocycle_identities(n: int) -> CocycleReport:
    """The four transition identities over every ordered triple ``(i, j, k)``.

    (1) ``w_j^i = (w_i^j)^-1``; (2) ``eta_j^i = -eta_i^j (w_i^j)^-2``;
    (3) ``w_j^k = w_i^k w_j^i - eta_i^k eta_j^i``;
    (4) ``eta_j^k = w_j^i eta_i^k + eta_j^i w_i^k``.
    Each triple is evaluated where ``z_i`` and ``z_j`` are inverted.
    """
    checked = {1: 0, 2: 0, 3: 0, 4: 0}
    failures = []
    rings = {}
    for i, j, k in product(range(n + 1), repeat=3):
        key = frozenset((i, j))
        ring = rings.get(key)
        if ring is None:
            ring = rings[key] = _ring_inverting(n, key)
        w_ij, e_ij = generator_pair(ring, i, j)
        w_ji, e_ji = generator_pair(ring, j, i)
        w_ik, e_ik = generator_pair(ring, i, k)
        w_jk, e_jk = generator_pair(ring, j, k)
        if k == 0:
            w_inv = w_ij**-1
            checked[1] += 1
            if w_ji != w_inv:
                failures.append((1, (i, j), w_ji - w_inv))
            checked[2] += 1
            rhs = -(e_ij * w_inv * w_inv)
            if e_ji != rhs:
                failures.append((2, (i, j), e_ji - rhs))
        checked[3] += 1
        rhs = w_ik * w_ji - e_ik * e_ji
        if w_jk != rhs:
            failures.append((3, (i, j, k), w_jk - rhs))
        checked[4] += 1
        rhs = w_ji * e_ik + e_ji * w_ik
        if e_jk != rhs:
            failures.append((4, (i, j, k), e_jk - rhs))
    return CocycleReport(n, checked, failures)


# ----- global sections -----------------------------------------------------


def _monomials(ring: VarTable, n: int, bound: int, laurent: bool):
    lo = -bound if laurent else 0
    odd_names = [_zeta(j) for j in range(n + 1)]
    out = []
    for k in range(0, min(bound, n + 1) + 1):
        for odd in combinations(odd_names, k):
            budget = bound - k
            for exps in product(range(lo, bound + 1), repeat=n + 1):
                if sum(abs(e) for e in exps) > budget:
                    continue
                out.append(ring.monomial({_z(j): e for j, e in enumerate(exps)}, odd))
    return out


def invariant_functions(n: int, degree_bound: int, laurent: bool = False) -> list:
    """Basis of the invariant span of monomials of size at most ``degree_bound``.

    Size is ``sum |e_j| + #odd``; Laurent mode inverts every ``z_j`` and
    allows negative exponents.  The invariance condition is linear in the
    coefficients and is solved exactly.
    """
    if degree_bound < 0:
        raise ValueError("degree_bound must be non-negative")
    inverted = set(range(n + 1)) if laurent else set()
    ring = VarTable(
        [(_z(j), j in inverted) for j in range(n + 1)] + [("t", True)],
        [_zeta(j) for j in range(n + 1)] + ["tau"],
    )
    act = action_substitution(generic_point(ring), n)
    monos = _monomials(ring, n, degree_bound, laurent)
    defects = [substitute(m, act) - m for m in monos]
    keys = sorted({k for d in defects for k in d.terms}, key=repr)
    rows = [[d.terms.get(k, 0) for d in defects] for k in keys]
    basis = []
    for vec in nullspace(rows, len(monos)):
        f = ring.zero()
        for c, m in zip(vec, monos):
            if c:
                f = f + m * c
        basis.append(f)
    return basis
