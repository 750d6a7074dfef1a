"""T-points ``(t, tau)`` of the supergroup G_m^{1|1} and its right action.

The group law is ``(a, alpha)(a', alpha') = (aa' + alpha alpha', a alpha' + a' alpha)``,
which is the multiplication of ``a + theta*alpha`` in D_R restricted to even
units.  The group acts on the right on ``(z_j, zeta_j)`` by
``v.g = g^-1 v``, i.e. ``z -> t'z + tau'zeta``, ``zeta -> t'zeta + tau'z`` with
``(t', tau') = g^-1``.
"""

from __future__ import annotations

from .dskew import DElement
from .errors import ContextMismatch, ParityMismatch
from .superpoly import SuperPolynomial, VarTable, invert_unit
from .supermatrix import SuperMatrix

__all__ = [
    "GroupElement",
    "gmul",
    "ginv",
    "embed_sl11",
    "to_dstar",
    "translate_pair",
    "action_substitution",
    "generic_point",
]


class GroupElement:
    __slots__ = ("t", "tau")

    def __init__(self, t: SuperPolynomial, tau: SuperPolynomial):
        if t.ring != tau.ring:
            raise ContextMismatch("t and tau live in different rings")
        if not t.is_even():
            raise ParityMismatch("t must be even")
        if not tau.is_odd():
            raise ParityMismatch("tau must be odd")
        invert_unit(t)
        self.t = t
        self.tau = tau

    @classmethod
    def identity(cls, ring: VarTable) -> GroupElement:
        return cls(ring.one(), ring.zero())

    @property
    def ring(self) -> VarTable:
        return self.t.ring

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.t == other.t and self.tau == other.tau

    def __hash__(self):
        return hash((self.t, self.tau))

    def __mul__(self, other):
        return gmul(self, other)

    def __repr__(self):
        return f"GroupElement({self.t}, {self.tau})"


def generic_point(ring: VarTable, t: str = "t", tau: str = "tau") -> GroupElement:
    return GroupElement(ring.var(t), ring.var(tau))


def gmul(g: GroupElement, h: GroupElement) -> GroupElement:
    if g.ring != h.ring:
        raise ContextMismatch("group elements from different rings")
    return GroupElement(g.t * h.t + g.tau * h.tau, g.t * h.tau + h.t * g.tau)


def ginv(g: GroupElement) -> GroupElement:
    t_inv = invert_unit(g.t)
    return GroupElement(t_inv, -(t_inv * t_inv * g.tau))


def embed_sl11(g: GroupElement) -> SuperMatrix:
    return SuperMatrix(g.ring, [[g.t, g.tau], [g.tau, g.t]], (1, 1), (1, 1))


def to_dstar(g: GroupElement) -> DElement:
    return DElement(g.t, g.tau)


def translate_pair(g: GroupElement, even: SuperPolynomial, odd: SuperPolynomial):
    """Coordinates of ``(even, odd).g``."""
    h = ginv(g)
    return h.t * even + h.tau * odd, h.t * odd + h.tau * even


def action_substitution(g: GroupElement, n: int, even="z{}", odd="zeta{}") -> dict:
    """Pullback along the right action on ``(z_0..z_n, zeta_0..zeta_n)``."""
    ring = g.ring
    mapping = {}
    for j in range(n + 1):
        zn, qn = even.format(j), odd.format(j)
        if zn not in ring or qn not in ring:
            raise ContextMismatch(f"{zn}/{qn} not declared in {ring!r}")
        mapping[zn], mapping[qn] = translate_pair(g, ring.var(zn), ring.var(qn))
    return mapping
