"""The rank 1|1 superalgebra D_R = R[theta] with theta odd and theta^2 = -1.

An element ``r0 + theta*r1`` is stored as the pair ``(r0, r1)``.  Moving
theta past a coefficient costs the grade involution ``r -> r.bar`` (even part
minus odd part), which gives

    (a + theta*alpha)(b + theta*beta)
        = (a*b - alpha.bar*beta) + theta*(a.bar*beta + alpha*b).

The module also builds the map ``D (x) D^op -> End_R(D)`` sending ``a (x) b``
to ``x -> (-1)^{|b||x|} a x b`` and checks that its images span all 2x2
matrices over R.
"""

from __future__ import annotations

from enum import Enum
from itertools import product

from .errors import ContextMismatch, NotAUnit, NotHomogeneous, NotInvertible
from .scalar import Scalar
from .superpoly import Parity, SuperPolynomial, VarTable, invert_unit
from .supermatrix import SuperMatrix, inverse, matmul

__all__ = [
    "Side",
    "DElement",
    "dmul",
    "dinvert",
    "psi_matrix",
    "psi_mul_sign",
    "azumaya_check",
    "AzumayaReport",
]


class Side(Enum):
    PLAIN = "plain"
    OPPOSITE = "opposite"


class DElement:
    """``r0 + theta*r1`` with coefficients in a common ring."""

    __slots__ = ("r0", "r1")

    def __init__(self, r0: SuperPolynomial, r1: SuperPolynomial):
        if r0.ring != r1.ring:
            raise ContextMismatch("DElement parts live in different rings")
        self.r0 = r0
        self.r1 = r1

    @classmethod
    def one(cls, ring: VarTable) -> DElement:
        return cls(ring.one(), ring.zero())

    @classmethod
    def theta(cls, ring: VarTable) -> DElement:
        return cls(ring.zero(), ring.one())

    @classmethod
    def scalar(cls, r: SuperPolynomial) -> DElement:
        return cls(r, r.ring.zero())

    @property
    def ring(self) -> VarTable:
        return self.r0.ring

    def parity(self) -> Parity:
        """EVEN iff r0 even and r1 odd; ODD iff r0 odd and r1 even."""
        if not self.r1:
            return self.r0.parity() if self.r0 else Parity.EVEN
        p1 = self.r1.parity()
        if p1 is Parity.MIXED:
            return Parity.MIXED
        p = Parity.of(p1.value + 1)
        if self.r0 and self.r0.parity() is not p:
            return Parity.MIXED
        return p

    def components(self):
        """Split into (even, odd) homogeneous parts."""
        even = DElement(self.r0.even_part(), self.r1.odd_part())
        odd = DElement(self.r0.odd_part(), self.r1.even_part())
        return even, odd

    def grade_involution(self) -> DElement:
        # theta is odd, so its coefficient picks up the opposite sign
        return DElement(self.r0.grade_involution(), -self.r1.grade_involution())

    def __add__(self, other):
        return DElement(self.r0 + other.r0, self.r1 + other.r1)

    def __sub__(self, other):
        return DElement(self.r0 - other.r0, self.r1 - other.r1)

    def __neg__(self):
        return DElement(-self.r0, -self.r1)

    def __mul__(self, other):
        return dmul(self, other)

    def __eq__(self, other):
        if not isinstance(other, DElement):
            return NotImplemented
        return self.r0 == other.r0 and self.r1 == other.r1

    def __hash__(self):
        return hash((self.r0, self.r1))

    def __bool__(self):
        return bool(self.r0) or bool(self.r1)

    def __str__(self):
        return f"({self.r0}) + theta*({self.r1})"

    def __repr__(self):
        return f"DElement({self.r0}, {self.r1})"


def _plain_mul(x: DElement, y: DElement) -> DElement:
    a, alpha = x.r0, x.r1
    b, beta = y.r0, y.r1
    abar = a.grade_involution()
    alphabar = alpha.grade_involution()
    return DElement(a * b - alphabar * beta, abar * beta + alpha * b)


def dmul(x: DElement, y: DElement, side: Side = Side.PLAIN) -> DElement:
    """Product in D_R, or in its opposite algebra when ``side`` is OPPOSITE.

    The opposite product ``x .o y = (-1)^{|x||y|} y x`` is extended
    bilinearly from homogeneous components, so mixed inputs are allowed.
    """
    if x.ring != y.ring:
        raise ContextMismatch("DElements from different rings")
    if side is Side.PLAIN:
        return _plain_mul(x, y)
    xe, xo = x.components()
    ye, yo = y.components()
    result = _plain_mul(ye, xe) + _plain_mul(yo, xe) + _plain_mul(ye, xo)
    return result - _plain_mul(yo, xo)


def dinvert(x: DElement) -> DElement:
    """Two-sided inverse in D_R.

    For an even ``t + theta*tau`` this is ``t^-1 - theta*t^-2*tau``.  Other
    units (for example theta itself) are inverted by solving the 2x2 system
    for left multiplication by ``x``.
    """
    ring = x.ring
    if x.parity() is Parity.EVEN:
        try:
            t_inv = invert_unit(x.r0)
        except NotAUnit:
            t_inv = None
        if t_inv is not None:
            return DElement(t_inv, -(t_inv * t_inv * x.r1))
    # column j of L is x * basis_j with basis (1, theta)
    left = SuperMatrix(
        ring,
        [[x.r0, -x.r1.grade_involution()], [x.r1, x.r0.grade_involution()]],
    )
    try:
        left_inv = inverse(left)
    except NotInvertible as exc:
        raise NotAUnit(f"{x!r} is not a unit of D_R") from exc
    c0, c1 = left_inv.apply((ring.one(), ring.zero()))
    y = DElement(c0, c1)
    one = DElement.one(ring)
    if _plain_mul(x, y) != one or _plain_mul(y, x) != one:
        raise NotAUnit(f"{x!r} has no two-sided inverse")
    return y


def _homogeneous_bit(x: DElement, what: str) -> int:
    p = x.parity()
    if p is Parity.MIXED:
        raise NotHomogeneous(f"{what} must be homogeneous")
    return p.value


def psi_matrix(a: DElement, b: DElement) -> SuperMatrix:
    """Matrix of ``x -> (-1)^{|b||x|} a x b`` in the basis ``{1 | theta}``."""
    ring = a.ring
    pb = _homogeneous_bit(b, "b")
    _homogeneous_bit(a, "a")
    columns = []
    for basis, px in ((DElement.one(ring), 0), (DElement.theta(ring), 1)):
        image = _plain_mul(_plain_mul(a, basis), b)
        if pb and px:
            image = -image
        columns.append((image.r0, image.r1))
    return SuperMatrix(
        ring,
        [[columns[0][0], columns[1][0]], [columns[0][1], columns[1][1]]],
        (1, 1),
        (1, 1),
    )


def psi_mul_sign(b: DElement, c: DElement) -> int:
    """Koszul sign of ``(a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd``."""
    return -1 if _homogeneous_bit(b, "b") and _homogeneous_bit(c, "c") else 1


def _basis_pairs(ring: VarTable):
    one, theta = DElement.one(ring), DElement.theta(ring)
    return [
        ("1(x)1", one, one),
        ("theta(x)1", theta, one),
        ("1(x)theta", one, theta),
        ("theta(x)theta", theta, theta),
    ]


class AzumayaReport:
    """Coefficients expressing each elementary matrix in the psi images.

    ``coefficients[name]`` lists four scalars, one per psi image in the
    order of ``labels``.
    """

    def __init__(self, ring, labels, images, coefficients, homomorphism_failures):
        self.ring = ring
        self.labels = labels
        self.images = images
        self.coefficients = coefficients
        self.homomorphism_failures = homomorphism_failures

    @property
    def ok(self) -> bool:
        return not self.homomorphism_failures and all(
            self.reconstruct(name) == target for name, target in _elementary(self.ring)
        )

    def reconstruct(self, name) -> SuperMatrix:
        acc = SuperMatrix.zeros(self.ring, (1, 1), (1, 1))
        for c, m in zip(self.coefficients[name], self.images):
            acc = acc + m.map_entries(lambda x, c=c: x * c)
        return acc


def _elementary(ring: VarTable):
    out = []
    for i, j in product(range(2), repeat=2):
        entries = [[ring.zero(), ring.zero()], [ring.zero(), ring.zero()]]
        entries[i][j] = ring.one()
        out.append((f"E{i + 1}{j + 1}", SuperMatrix(ring, entries, (1, 1), (1, 1))))
    return out


def homomorphism_failures(ring: VarTable) -> list:
    """Basis pairs on which psi fails to be multiplicative.

    Uses ``(a (x) b)(c (x) d) = (-1)^{|b||c|} (ac (x) b .o d)``.
    """
    failures = []
    pairs = _basis_pairs(ring)
    for (n1, a, b), (n2, c, d) in product(pairs, repeat=2):
        lhs = matmul(psi_matrix(a, b), psi_matrix(c, d))
        rhs = psi_matrix(dmul(a, c), dmul(b, d, Side.OPPOSITE))
        if psi_mul_sign(b, c) < 0:
            rhs = -rhs
        if lhs != rhs:
            failures.append((n1, n2))
    return failures


def azumaya_check(ring: VarTable = None) -> AzumayaReport:
    """Solve for the elementary matrices as combinations of psi images.

    The 4x4 system has columns the flattened images; it is inverted by
    unit-pivot elimination, which succeeds because 2 is a unit.
    """
    if ring is None:
        ring = VarTable()
    pairs = _basis_pairs(ring)
    images = [psi_matrix(a, b) for _, a, b in pairs]
    labels = [name for name, _, _ in pairs]
    system = SuperMatrix(ring, [[m[i // 2, i % 2] for m in images] for i in range(4)])
    system_inv = inverse(system)
    coefficients = {}
    for name, target in _elementary(ring):
        flat = [target[i // 2, i % 2] for i in range(4)]
        coeffs = system_inv.apply(flat)
        coefficients[name] = [_as_scalar(c) for c in coeffs]
    return AzumayaReport(ring, labels, images, coefficients, homomorphism_failures(ring))


def _as_scalar(p: SuperPolynomial) -> Scalar:
    if not p.is_constant():
        raise NotInvertible("expected constant coefficients")
    return p.constant_term()
