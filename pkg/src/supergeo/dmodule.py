"""Free rank 1|1 modules with an odd endomorphism.

A left D-module structure on M is an odd phi with phi^2 = -1 (theta acts by
phi); a right D-module structure is an odd phi with phi^2 = +1.  For the
right case the dictionary is ``phi(s) = (-1)^{|s|} s.theta`` and conversely
``s.(a + theta*alpha) = s a + (-1)^{|s|} phi(s) alpha``.
"""

from __future__ import annotations

from enum import Enum

from .dskew import DElement, dmul
from .errors import NotAUnit, NotRightD, NotUnitEntry, ShapeMismatch
from .superpoly import SuperPolynomial, VarTable, invert_unit
from .supermatrix import SuperMatrix, inverse, matmul

__all__ = [
    "Chirality",
    "PhiModule",
    "CanonicalBasisCert",
    "check_structure",
    "canonicalize",
    "phi_from_theta_action",
    "right_action",
    "phi_from_right_action",
    "swap_matrix",
]


class Chirality(Enum):
    LEFT_D = "left"
    RIGHT_D = "right"


def swap_matrix(ring: VarTable) -> SuperMatrix:
    return SuperMatrix(ring, [[0, 1], [1, 0]], (1, 1), (1, 1))


class PhiModule:
    """``R^{1|1}`` with basis ``{e | f}`` and odd endomorphism ``phi``."""

    __slots__ = ("phi", "chirality")

    def __init__(self, phi: SuperMatrix, chirality: Chirality = Chirality.RIGHT_D):
        if phi.rows_shape != (1, 1) or phi.cols_shape != (1, 1):
            raise ShapeMismatch("phi must be a (1|1) x (1|1) matrix")
        self.phi = phi
        self.chirality = chirality

    @property
    def ring(self) -> VarTable:
        return self.phi.ring

    def __repr__(self):
        return f"PhiModule({self.phi!r}, {self.chirality.name})"


def check_structure(m: PhiModule) -> bool:
    """True iff phi is odd and squares to +I (right) or -I (left)."""
    if not m.phi.is_odd():
        return False
    ident = SuperMatrix.identity(m.ring)
    target = ident if m.chirality is Chirality.RIGHT_D else -ident
    return matmul(m.phi, m.phi) == target


class CanonicalBasisCert:
    """Change of basis ``B`` with ``B phi B^-1 = [[0,1],[1,0]]``.

    The new basis vectors are the columns of ``B^-1`` (in old coordinates).
    """

    __slots__ = ("B", "B_inv", "conjugated", "verified")

    def __init__(self, B, B_inv, conjugated, verified):
        self.B = B
        self.B_inv = B_inv
        self.conjugated = conjugated
        self.verified = verified

    def basis(self):
        return self.B_inv.column(0), self.B_inv.column(1)


def canonicalize(m: PhiModule) -> CanonicalBasisCert:
    """Bring a right structure ``[[alpha, a], [a^-1, -alpha]]`` to the swap matrix."""
    if m.chirality is not Chirality.RIGHT_D or not check_structure(m):
        raise NotRightD("canonicalize needs an odd phi with phi^2 = 1")
    ring = m.ring
    alpha = m.phi[0, 0]
    a = m.phi[0, 1]
    try:
        a_inv = invert_unit(a)
    except NotAUnit as exc:
        raise NotUnitEntry(f"(1,2) entry {a} is not a unit") from exc
    B = SuperMatrix(ring, [[a_inv, -alpha], [ring.zero(), ring.one()]], (1, 1), (1, 1))
    B_inv = inverse(B)
    conjugated = matmul(matmul(B, m.phi), B_inv)
    return CanonicalBasisCert(B, B_inv, conjugated, conjugated == swap_matrix(ring))


def phi_from_theta_action(chirality: Chirality, ring: VarTable = None) -> SuperMatrix:
    """Matrix of the theta action on D itself in the basis ``{1 | theta}``.

    RIGHT_D uses ``phi(s) = (-1)^{|s|} s theta``; LEFT_D uses ``s -> theta s``.
    """
    if ring is None:
        ring = VarTable()
    theta = DElement.theta(ring)
    basis = [(DElement.one(ring), 0), (theta, 1)]
    cols = []
    for s, ps in basis:
        if chirality is Chirality.RIGHT_D:
            img = dmul(s, theta)
            if ps:
                img = -img
        else:
            img = dmul(theta, s)
        cols.append((img.r0, img.r1))
    return SuperMatrix(ring, [[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]], (1, 1), (1, 1))


def _vector_split(vec, ring):
    """Homogeneous parts of a vector of R^{1|1} in right coordinates."""
    c0, c1 = vec
    even = (c0.even_part(), c1.odd_part())
    odd = (c0.odd_part(), c1.even_part())
    return even, odd


def right_action(m: PhiModule, vec, d: DElement):
    """``s.(a + theta*alpha) = s a + (-1)^{|s|} phi(s) alpha`` extended additively."""
    ring = m.ring
    out = (ring.zero(), ring.zero())
    for parity, part in enumerate(_vector_split(vec, ring)):
        sa = (part[0] * d.r0, part[1] * d.r0)
        ph = m.phi.apply(part)
        term = (ph[0] * d.r1, ph[1] * d.r1)
        if parity:
            term = (-term[0], -term[1])
        out = (out[0] + sa[0] + term[0], out[1] + sa[1] + term[1])
    return out


def phi_from_right_action(m: PhiModule) -> SuperMatrix:
    """Recover phi via ``phi(s) = (-1)^{|s|} s.theta`` on the basis."""
    ring = m.ring
    theta = DElement.theta(ring)
    cols = []
    for k, vec in enumerate(((ring.one(), ring.zero()), (ring.zero(), ring.one()))):
        img = right_action(m, vec, theta)
        if k:
            img = (-img[0], -img[1])
        cols.append(img)
    return SuperMatrix(ring, [[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]], (1, 1), (1, 1))


def right_d_matrix(ring: VarTable, a: SuperPolynomial, alpha: SuperPolynomial) -> SuperMatrix:
    """The general right structure ``[[alpha, a], [a^-1, -alpha]]``."""
    return SuperMatrix(ring, [[alpha, a], [invert_unit(a), -alpha]], (1, 1), (1, 1))
