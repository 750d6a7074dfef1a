"""Products of rank 1|1 modules with odd square-(+-1) endomorphisms.

For a left module ``(M, L)`` and a right module ``(N, P)`` the tensor
product ``M (x) N`` has basis ``{e(x)e', f(x)f' | e(x)f', f(x)e'}``.  Theta
acts on the left by ``L (x) 1`` and on the right by
``(m (x) n).theta = (-1)^{|n|} m (x) P(n)``.  The supercommutant is cut out
by ``theta.w = (-1)^{|w|} w.theta``, which on homogeneous pure tensors reads

    L(m) (x) n = (-1)^{|m|} m (x) P(n),

a linear system solved here by unit-pivot elimination.

Given two right structures ``phi``, ``phi'`` (both squaring to 1) and the
fixed square root ``i`` of -1, the plain product uses ``L = i phi``,
``P = phi'`` and the opposite product uses ``L = phi``, ``P = i phi'``.  The
two products are the ``+i`` and ``-i`` eigenspaces of ``phi (x) phi'``.
"""

from __future__ import annotations

from .dmodule import Chirality, PhiModule, canonicalize, check_structure
from .dskew import Side
from .errors import StructureMismatch
from .scalar import I, Scalar
from .superpoly import Parity, SuperPolynomial, VarTable
from .supermatrix import SuperMatrix, kernel_basis, matmul, solve_in_span

__all__ = [
    "TENSOR_BASIS",
    "BimoduleTensor",
    "CommutantBasis",
    "supercommutant",
    "boxtimes",
    "eigenspace_compose",
    "tensor_vectors",
    "spans_equal",
    "commutant_kernel",
    "morita_rank",
    "composition_failures",
]

# (index in M, index in N); index 0 is the even basis vector, 1 the odd one
TENSOR_BASIS = ((0, 0), (1, 1), (0, 1), (1, 0))
TENSOR_SHAPE = (2, 2)


def _signed(x: SuperPolynomial, odd: int) -> SuperPolynomial:
    return x.grade_involution() if odd else x


def left_tensor_matrix(L: SuperMatrix) -> SuperMatrix:
    """Matrix of ``L (x) 1`` on the tensor basis."""
    ring = L.ring
    pos = {b: k for k, b in enumerate(TENSOR_BASIS)}
    rows = [[ring.zero()] * 4 for _ in range(4)]
    for col, (x, y) in enumerate(TENSOR_BASIS):
        for x2 in range(2):
            rows[pos[(x2, y)]][col] = _signed(L[x2, x], y)
    return SuperMatrix(ring, rows, TENSOR_SHAPE, TENSOR_SHAPE)


def right_tensor_matrix(P: SuperMatrix) -> SuperMatrix:
    """Matrix of ``1 (x) P`` with the Koszul sign ``(-1)^{|m|}``."""
    ring = P.ring
    pos = {b: k for k, b in enumerate(TENSOR_BASIS)}
    rows = [[ring.zero()] * 4 for _ in range(4)]
    for col, (x, y) in enumerate(TENSOR_BASIS):
        for y2 in range(2):
            entry = P[y2, y]
            rows[pos[(x, y2)]][col] = -entry if x else entry
    return SuperMatrix(ring, rows, TENSOR_SHAPE, TENSOR_SHAPE)


def tensor_vectors(m, n) -> tuple:
    """Coordinates of ``m (x) n`` for homogeneous ``m`` in M and ``n`` in N."""
    out = []
    for x, y in TENSOR_BASIS:
        a, c = m[x], n[y]
        out.append(_signed(a, y) * c)
    return tuple(out)


def commutant_kernel(L: SuperMatrix, right_theta: SuperMatrix):
    """Kernel of ``w -> theta.w - (-1)^{|w|} w.theta``.

    ``right_theta`` is the matrix of ``b -> b.theta`` on basis vectors.
    Returns ``[(vector, parity), ...]``.
    """
    ring = L.ring
    shape = L.cols_shape
    n = L.ncols
    twisted = [
        [right_theta[r, c] * (-1 if c >= shape[0] else 1) for c in range(n)] for r in range(n)
    ]
    K = L - SuperMatrix(ring, twisted, L.rows_shape, L.cols_shape)
    return kernel_basis(K)


class BimoduleTensor:
    """``M (x) N`` for a left structure ``left_phi`` and right ``right_phi``.

    ``side`` selects the algebra: PLAIN needs ``left_phi^2 = -1`` and
    ``right_phi^2 = 1``; OPPOSITE needs the reverse.
    """

    def __init__(self, left_phi: SuperMatrix, right_phi: SuperMatrix, side: Side = Side.PLAIN):
        if left_phi.ring != right_phi.ring:
            raise StructureMismatch("structures over different rings")
        self.left_phi = left_phi
        self.right_phi = right_phi
        self.side = side
        left_law = Chirality.LEFT_D if side is Side.PLAIN else Chirality.RIGHT_D
        right_law = Chirality.RIGHT_D if side is Side.PLAIN else Chirality.LEFT_D
        if not check_structure(PhiModule(left_phi, left_law)):
            raise StructureMismatch("left structure does not satisfy its square law")
        if not check_structure(PhiModule(right_phi, right_law)):
            raise StructureMismatch("right structure does not satisfy its square law")

    @property
    def ring(self) -> VarTable:
        return self.left_phi.ring

    def left_matrix(self) -> SuperMatrix:
        return left_tensor_matrix(self.left_phi)

    def right_theta_matrix(self) -> SuperMatrix:
        # (m (x) n).theta = (-1)^{|n|} m (x) P(n), without the Koszul sign of 1 (x) P
        ring = self.ring
        pos = {b: k for k, b in enumerate(TENSOR_BASIS)}
        rows = [[ring.zero()] * 4 for _ in range(4)]
        for col, (x, y) in enumerate(TENSOR_BASIS):
            for y2 in range(2):
                entry = self.right_phi[y2, y]
                rows[pos[(x, y2)]][col] = -entry if y else entry
        return SuperMatrix(ring, rows, TENSOR_SHAPE, TENSOR_SHAPE)

    def closed_form(self):
        """``u, v`` built from canonical bases of both factors."""
        plain = self.side is Side.PLAIN
        # a structure squaring to -1 becomes one squaring to 1 after scaling by -i
        left_right_d = self.left_phi.scale(-I if plain else 1)
        e, f = canonicalize(PhiModule(left_right_d, Chirality.RIGHT_D)).basis()
        if plain:
            f = tuple(x * I for x in f)
        right_right_d = self.right_phi.scale(1 if plain else -I)
        e2, f2 = canonicalize(PhiModule(right_right_d, Chirality.RIGHT_D)).basis()
        if not plain:
            f2 = tuple(x * I for x in f2)
        ee, ff = tensor_vectors(e, e2), tensor_vectors(f, f2)
        ef, fe = tensor_vectors(e, f2), tensor_vectors(f, e2)
        sign = -1 if plain else 1
        u = tuple(a + b * sign for a, b in zip(ee, ff))
        v = tuple(a - b for a, b in zip(ef, fe))
        return u, v


class CommutantBasis:
    """Homogeneous basis of a supercommutant, with parity bookkeeping."""

    def __init__(self, ring, vectors, closed_form=None):
        self.ring = ring
        self.vectors = vectors
        self.closed_form = closed_form

    @property
    def rank(self):
        even = sum(1 for _, p in self.vectors if p is Parity.EVEN)
        odd = sum(1 for _, p in self.vectors if p is Parity.ODD)
        return even, odd

    @property
    def homogeneous(self) -> bool:
        return all(p is not Parity.MIXED for _, p in self.vectors)

    def span(self):
        return [v for v, _ in self.vectors]

    def matches_closed_form(self) -> bool:
        if self.closed_form is None:
            return False
        return spans_equal(self.span(), list(self.closed_form), self.ring)


def spans_equal(A, B, ring: VarTable) -> bool:
    if len(A) != len(B):
        return False
    return all(solve_in_span(B, a, ring) is not None for a in A) and all(
        solve_in_span(A, b, ring) is not None for b in B
    )


def supercommutant(T: BimoduleTensor) -> CommutantBasis:
    vectors = commutant_kernel(T.left_matrix(), T.right_theta_matrix())
    return CommutantBasis(T.ring, vectors, T.closed_form())


def _boxtimes(S: PhiModule, S2: PhiModule, side: Side, root: Scalar) -> CommutantBasis:
    for m in (S, S2):
        if m.chirality is not Chirality.RIGHT_D or not check_structure(m):
            raise StructureMismatch("boxtimes needs right structures with phi^2 = 1")
    if side is Side.PLAIN:
        T = BimoduleTensor(S.phi.scale(root), S2.phi, Side.PLAIN)
    else:
        T = BimoduleTensor(S.phi, S2.phi.scale(root), Side.OPPOSITE)
    return supercommutant(T)


def boxtimes(S: PhiModule, S2: PhiModule, variant: Side = Side.PLAIN) -> CommutantBasis:
    """The plain or opposite product of two right structures."""
    return _boxtimes(S, S2, variant, I)


class EigenspaceReport:
    def __init__(self, operator, square_ok, plus, minus):
        self.operator = operator
        self.square_ok = square_ok
        self.plus = plus
        self.minus = minus


def tensor_operator(S: PhiModule, S2: PhiModule) -> SuperMatrix:
    """``(phi (x) phi')(s (x) s') = (-1)^{|s|} phi(s) (x) phi'(s')``."""
    return matmul(left_tensor_matrix(S.phi), right_tensor_matrix(S2.phi))


def eigenspace_compose(S: PhiModule, S2: PhiModule) -> EigenspaceReport:
    for m in (S, S2):
        if m.chirality is not Chirality.RIGHT_D or not check_structure(m):
            raise StructureMismatch("eigenspace_compose needs right structures")
    op = tensor_operator(S, S2)
    ring = op.ring
    ident = SuperMatrix.identity(ring, TENSOR_SHAPE)
    square_ok = matmul(op, op) == -ident
    if not square_ok:
        raise StructureMismatch("phi (x) phi' does not square to -1")
    plus = kernel_basis(op - ident.scale(I))
    minus = kernel_basis(op + ident.scale(I))
    return EigenspaceReport(op, square_ok, CommutantBasis(ring, plus), CommutantBasis(ring, minus))


def morita_rank(p: int, q: int, ring: VarTable = None):
    """Rank of ``(D (x) V)^D`` for ``V`` of rank ``p|q``.

    Basis of ``D (x) V``: even ``1(x)v`` (v even), ``theta(x)v`` (v odd);
    odd ``theta(x)v`` (v even), ``1(x)v`` (v odd).  Theta acts on the left
    factor from the left, and ``(d (x) v).theta = (-1)^{|v|} (d theta) (x) v``.
    """
    if ring is None:
        ring = VarTable()
    # basis entries: (d, v_parity, v_index) with d = 0 for 1 and 1 for theta
    even = [(0, 0, k) for k in range(p)] + [(1, 1, k) for k in range(q)]
    odd = [(1, 0, k) for k in range(p)] + [(0, 1, k) for k in range(q)]
    basis = even + odd
    pos = {b: k for k, b in enumerate(basis)}
    n = len(basis)
    L = [[0] * n for _ in range(n)]
    R = [[0] * n for _ in range(n)]
    for col, (d, pv, k) in enumerate(basis):
        # theta * 1 = theta, theta * theta = -1; 1 * theta = theta, theta * theta = -1
        target = (1 - d, pv, k)
        sign = 1 if d == 0 else -1
        L[pos[target]][col] = sign
        R[pos[target]][col] = sign * (-1 if pv else 1)
    shape = (len(even), len(odd))
    Lm = SuperMatrix(ring, L, shape, shape)
    Rm = SuperMatrix(ring, R, shape, shape)
    vectors = commutant_kernel(Lm, Rm)
    result = CommutantBasis(ring, vectors)
    return result.rank


def composition_failures(S: PhiModule, S2: PhiModule) -> list:
    """Every way the product constructions disagree for one input pair."""
    ring = S.ring
    failures = []
    plain = boxtimes(S, S2, Side.PLAIN)
    opposite = boxtimes(S, S2, Side.OPPOSITE)
    for name, basis in (("plain", plain), ("opposite", opposite)):
        if basis.rank != (1, 1):
            failures.append(f"{name} product has rank {basis.rank}")
        elif not basis.matches_closed_form():
            failures.append(f"{name} product differs from the closed form")
    eig = eigenspace_compose(S, S2)
    if not spans_equal(eig.plus.span(), plain.span(), ring):
        failures.append("+i eigenspace differs from the plain product")
    if not spans_equal(eig.minus.span(), opposite.span(), ring):
        failures.append("-i eigenspace differs from the opposite product")
    both = plain.span() + opposite.span()
    if len(kernel_basis(SuperMatrix(ring, [list(r) for r in zip(*both)], TENSOR_SHAPE, (4, 0)))):
        failures.append("plain and opposite products are not complementary")
    return failures
