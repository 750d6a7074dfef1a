"""Supercommutative Laurent polynomials over Q(i).

A ring is described by a :class:`VarTable`: an ordered list of even
variables (each optionally flagged invertible, which allows negative
exponents) and an ordered list of odd variables.  Odd variables anticommute
and square to zero; a monomial stores its odd variables as an increasing
tuple of indices, and any reordering during multiplication is paid for with
the Koszul sign.

Every :class:`SuperPolynomial` is kept in canonical form: a dict from
monomials to nonzero :class:`~supergeo.scalar.Scalar` coefficients.  Two
polynomials are equal exactly when their rings and term dicts agree.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple

from .errors import ContextMismatch, NotAUnit, ParityMismatch, UnknownVariable
from .scalar import Scalar

__all__ = [
    "Parity",
    "VarTable",
    "SuperMonomial",
    "SuperPolynomial",
    "add",
    "mul",
    "invert_unit",
    "substitute",
    "parity_of",
]


class Parity(Enum):
    EVEN = 0
    ODD = 1
    MIXED = 2

    def __add__(self, other):
        if not isinstance(other, Parity):
            return NotImplemented
        if Parity.MIXED in (self, other):
            raise ParityMismatch("mixed elements have no parity")
        return Parity((self.value + other.value) % 2)

    @classmethod
    def of(cls, bit: int) -> Parity:
        return cls.ODD if bit % 2 else cls.EVEN


class SuperMonomial(NamedTuple):
    even: tuple  # exponent per even variable
    odd: tuple  # strictly increasing indices into VarTable.odd_vars

    @property
    def parity(self) -> Parity:
        return Parity.of(len(self.odd))


class VarTable:
    """Ordered variable declarations for one ring context.

    Instances are immutable and compare by value, so two independently built
    tables with the same declarations describe the same ring.
    """

    __slots__ = ("even_vars", "odd_vars", "_even_index", "_odd_index", "_key")

    def __init__(self, even_vars: Iterable = (), odd_vars: Iterable = ()):
        ev = []
        for item in even_vars:
            if isinstance(item, str):
                ev.append((item, False))
            else:
                name, inv = item
                ev.append((str(name), bool(inv)))
        od = tuple(str(name) for name in odd_vars)
        names = [name for name, _ in ev] + list(od)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not name or name == "i":
                raise ValueError(f"invalid variable name {name!r}")
        self.even_vars = tuple(ev)
        self.odd_vars = od
        self._even_index = {name: k for k, (name, _) in enumerate(ev)}
        self._odd_index = {name: k for k, name in enumerate(od)}
        self._key = (self.even_vars, self.odd_vars)

    @classmethod
    def build(cls, even=(), odd=(), invertible=()) -> VarTable:
        inv = set(invertible)
        unknown = inv - set(even)
        if unknown:
            raise ValueError(f"invertible flags on unknown even variables {sorted(unknown)}")
        return cls([(name, name in inv) for name in even], odd)

    def extend(self, even=(), odd=(), invertible=()) -> VarTable:
        inv = set(invertible)
        return VarTable(
            list(self.even_vars) + [(name, name in inv) for name in even],
            list(self.odd_vars) + list(odd),
        )

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, VarTable):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        ev = ", ".join(f"{n}{'^±1' if inv else ''}" for n, inv in self.even_vars)
        return f"VarTable([{ev}] | [{', '.join(self.odd_vars)}])"

    @property
    def n_even(self) -> int:
        return len(self.even_vars)

    @property
    def n_odd(self) -> int:
        return len(self.odd_vars)

    @property
    def names(self) -> tuple:
        return tuple(n for n, _ in self.even_vars) + self.odd_vars

    def __contains__(self, name) -> bool:
        return name in self._even_index or name in self._odd_index

    def is_odd_var(self, name: str) -> bool:
        if name in self._odd_index:
            return True
        if name in self._even_index:
            return False
        raise UnknownVariable(name)

    def is_invertible(self, name: str) -> bool:
        if name in self._even_index:
            return self.even_vars[self._even_index[name]][1]
        if name in self._odd_index:
            return False
        raise UnknownVariable(name)

    def even_index(self, name: str) -> int:
        return self._even_index[name]

    def odd_index(self, name: str) -> int:
        return self._odd_index[name]

    def unit_monomial(self) -> SuperMonomial:
        return SuperMonomial((0,) * self.n_even, ())

    def zero(self) -> SuperPolynomial:
        return SuperPolynomial(self, {})

    def one(self) -> SuperPolynomial:
        return self.const(1)

    def const(self, c) -> SuperPolynomial:
        c = Scalar.coerce(c)
        if not c:
            return self.zero()
        return SuperPolynomial(self, {self.unit_monomial(): c})

    def var(self, name: str) -> SuperPolynomial:
        if name in self._even_index:
            exps = [0] * self.n_even
            exps[self._even_index[name]] = 1
            return SuperPolynomial(self, {SuperMonomial(tuple(exps), ()): Scalar(1)})
        if name in self._odd_index:
            mon = SuperMonomial((0,) * self.n_even, (self._odd_index[name],))
            return SuperPolynomial(self, {mon: Scalar(1)})
        raise UnknownVariable(f"{name!r} is not declared in {self!r}")

    def vars(self, *names: str):
        return tuple(self.var(n) for n in names)

    def monomial(self, even_exponents: Mapping = None, odd=()) -> SuperPolynomial:
        """Build the monomial with the given exponents and the odd variables
        multiplied in the order listed (so the result may carry a sign)."""
        p = self.one()
        for name, e in (even_exponents or {}).items():
            p = p * self.var(name) ** e
        for name in odd:
            p = p * self.var(name)
        return p


@lru_cache(maxsize=65536)
def _odd_merge(a: tuple, b: tuple):
    """Multiply two increasing odd index tuples.

    Returns ``(sign, merged)`` or ``(0, None)`` when an odd variable repeats.
    """
    if not a:
        return 1, b
    if not b:
        return 1, a
    sb = set(b)
    if any(x in sb for x in a):
        return 0, None
    inversions = 0
    for x in a:
        for y in b:
            if x > y:
                inversions += 1
    return (-1 if inversions & 1 else 1), tuple(sorted(a + b))


def _canonical_key(mon: SuperMonomial):
    return (sum(mon.even), mon.even, len(mon.odd), mon.odd)


class SuperPolynomial:
    """Finite sum of coefficient * even-Laurent-monomial * odd-monomial."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: VarTable, terms: dict):
        # terms must already be pruned of zero coefficients
        self.ring = ring
        self.terms = terms
        self._hash = None

    @classmethod
    def from_terms(cls, ring: VarTable, terms) -> SuperPolynomial:
        """Build from (monomial, coefficient) pairs, validating exponents."""
        out: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mon, c in items:
            mon = SuperMonomial(tuple(mon[0]), tuple(mon[1]))
            if len(mon.even) != ring.n_even:
                raise ValueError("exponent vector has the wrong length")
            for (name, inv), e in zip(ring.even_vars, mon.even):
                if e < 0 and not inv:
                    raise NotAUnit(f"negative exponent on non-invertible variable {name}")
            if list(mon.odd) != sorted(set(mon.odd)) or any(
                k < 0 or k >= ring.n_odd for k in mon.odd
            ):
                raise ValueError(f"odd part {mon.odd} is not a canonical subset")
            c = Scalar.coerce(c)
            prev = out.get(mon)
            c = c if prev is None else prev + c
            if c:
                out[mon] = c
            else:
                out.pop(mon, None)
        return cls(ring, out)

    # ----- basic queries -------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _canonical_key(kv[0]), reverse=True)

    def parity(self) -> Parity:
        return parity_of(self)

    def is_even(self) -> bool:
        return all(not (len(m.odd) & 1) for m in self.terms)

    def is_odd(self) -> bool:
        return all(len(m.odd) & 1 for m in self.terms)

    def even_part(self) -> SuperPolynomial:
        return SuperPolynomial(
            self.ring, {m: c for m, c in self.terms.items() if not len(m.odd) & 1}
        )

    def odd_part(self) -> SuperPolynomial:
        return SuperPolynomial(self.ring, {m: c for m, c in self.terms.items() if len(m.odd) & 1})

    def grade_involution(self) -> SuperPolynomial:
        """Even part minus odd part, i.e. the sign picked up when an odd
        symbol is moved across this element."""
        return SuperPolynomial(
            self.ring, {m: (-c if len(m.odd) & 1 else c) for m, c in self.terms.items()}
        )

    def is_constant(self) -> bool:
        unit = self.ring.unit_monomial()
        return all(m == unit for m in self.terms)

    def constant_term(self) -> Scalar:
        return self.terms.get(self.ring.unit_monomial(), Scalar(0))

    def coefficient(self, mon: SuperMonomial) -> Scalar:
        return self.terms.get(mon, Scalar(0))

    def involves(self, name: str) -> bool:
        if self.ring.is_odd_var(name):
            k = self.ring.odd_index(name)
            return any(k in m.odd for m in self.terms)
        k = self.ring.even_index(name)
        return any(m.even[k] != 0 for m in self.terms)

    def variables(self) -> set:
        return {name for name in self.ring.names if self.involves(name)}

    # ----- arithmetic ----------------------------------------------------

    def _coerce(self, other) -> SuperPolynomial:
        if isinstance(other, SuperPolynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ContextMismatch(f"{self.ring!r} vs {other.ring!r}")
            return other
        try:
            return self.ring.const(other)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            prev = out.get(m)
            if prev is None:
                out[m] = c
            else:
                s = prev + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return SuperPolynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return SuperPolynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            c = Scalar.coerce(other)
            if not c:
                return self.ring.zero()
            return SuperPolynomial(self.ring, {m: v * c for m, v in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for (e1, o1), c1 in self.terms.items():
            for (e2, o2), c2 in other.terms.items():
                if o1 and o2:
                    sign, odd = _odd_merge(o1, o2)
                    if not sign:
                        continue
                else:
                    sign, odd = 1, (o1 or o2)
                mon = SuperMonomial(tuple(x + y for x, y in zip(e1, e2)), odd)
                c = c1 * c2
                if sign < 0:
                    c = -c
                prev = out.get(mon)
                if prev is None:
                    out[mon] = c
                else:
                    s = prev + c
                    if s:
                        out[mon] = s
                    else:
                        del out[mon]
        return SuperPolynomial(self.ring, out)

    def __rmul__(self, other):
        # scalars are even and central
        return self.__mul__(other)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return invert_unit(self) ** (-k)
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, SuperPolynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, Scalar)):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def lift(self, ring: VarTable) -> SuperPolynomial:
        """Re-express this element in a ring that declares (at least) the
        same variable names.  Odd variables may change relative order, in
        which case the Koszul sign is applied."""
        if ring == self.ring:
            return self
        emap = []
        for name, inv in self.ring.even_vars:
            if name not in ring or ring.is_odd_var(name):
                raise ContextMismatch(f"even variable {name} missing from {ring!r}")
            emap.append(ring.even_index(name))
        omap = []
        for name in self.ring.odd_vars:
            if name not in ring or not ring.is_odd_var(name):
                raise ContextMismatch(f"odd variable {name} missing from {ring!r}")
            omap.append(ring.odd_index(name))
        terms = []
        for (e, o), c in self.terms.items():
            exps = [0] * ring.n_even
            for k, x in enumerate(e):
                exps[emap[k]] = x
            idx = [omap[k] for k in o]
            inversions = sum(
                1 for a in range(len(idx)) for b in range(a + 1, len(idx)) if idx[a] > idx[b]
            )
            terms.append(((tuple(exps), tuple(sorted(idx))), -c if inversions & 1 else c))
        return SuperPolynomial.from_terms(ring, terms)

    def to_str(self) -> str:
        return render(self)

    __str__ = to_str

    def __repr__(self):
        return f"SuperPolynomial({render(self)})"


# ----- module-level operations ------------------------------------------


def add(p: SuperPolynomial, q: SuperPolynomial) -> SuperPolynomial:
    if p.ring != q.ring:
        raise ContextMismatch(f"{p.ring!r} vs {q.ring!r}")
    return p + q


def mul(p: SuperPolynomial, q: SuperPolynomial) -> SuperPolynomial:
    if p.ring != q.ring:
        raise ContextMismatch(f"{p.ring!r} vs {q.ring!r}")
    return p * q


def parity_of(p: SuperPolynomial) -> Parity:
    bits = {len(m.odd) & 1 for m in p.terms}
    if len(bits) > 1:
        return Parity.MIXED
    if bits == {1}:
        return Parity.ODD
    return Parity.EVEN


def invert_unit(p: SuperPolynomial) -> SuperPolynomial:
    """Inverse of ``c * m * (1 + nu)`` with ``m`` a monomial in invertible
    even variables and ``nu`` nilpotent.

    The inverse is ``m^-1 c^-1 (1 - nu + nu^2 - ...)``; the series stops
    because every term of ``nu`` carries an odd variable.
    """
    ring = p.ring
    body = [(m, c) for m, c in p.terms.items() if not m.odd]
    if len(body) != 1:
        raise NotAUnit(f"{render(p)} is not a unit")
    mon, c = body[0]
    for (name, inv), e in zip(ring.even_vars, mon.even):
        if e and not inv:
            raise NotAUnit(f"{render(p)} is not a unit: {name} is not inverted")
    u_inv = SuperPolynomial(ring, {SuperMonomial(tuple(-e for e in mon.even), ()): c.inverse()})
    rest = SuperPolynomial(ring, {m: v for m, v in p.terms.items() if m.odd})
    if not rest:
        return u_inv
    neg_nu = -(u_inv * rest)
    series = ring.one()
    power = ring.one()
    for _ in range(ring.n_odd + 1):
        power = power * neg_nu
        if not power:
            break
        series = series + power
    return series * u_inv


def substitute(
    p: SuperPolynomial,
    mapping: Mapping[str, SuperPolynomial],
    target: VarTable | None = None,
) -> SuperPolynomial:
    """Apply the ring homomorphism determined by ``mapping``.

    Variables absent from ``mapping`` are sent to the variable of the same
    name in ``target`` (which defaults to the ring of ``p``).  Negative
    powers are evaluated through :func:`invert_unit` of the image.
    """
    source = p.ring
    target = source if target is None else target
    for name in mapping:
        if name not in source:
            raise UnknownVariable(f"substitution for undeclared variable {name!r}")

    def image(name):
        img = mapping.get(name)
        if img is None:
            if name not in target:
                raise ContextMismatch(f"{name} has no image in {target!r}")
            img = target.var(name)
        elif not isinstance(img, SuperPolynomial):
            img = target.const(img)
        if img.ring != target:
            raise ContextMismatch(f"image of {name} lives in {img.ring!r}, expected {target!r}")
        return img

    even_imgs = []
    for name, inv in source.even_vars:
        img = image(name)
        if not img.is_even():
            raise ParityMismatch(f"image of even variable {name} is not even")
        if inv:
            invert_unit(img)  # raises NotAUnit for non-units
        even_imgs.append(img)
    odd_imgs = []
    for name in source.odd_vars:
        img = image(name)
        if not img.is_odd():
            raise ParityMismatch(f"image of odd variable {name} is not odd")
        odd_imgs.append(img)

    powers: dict = {}

    def power(k, e):
        key = (k, e)
        val = powers.get(key)
        if val is None:
            if e < 0:
                val = invert_unit(even_imgs[k]) ** (-e)
            else:
                val = even_imgs[k] ** e
            powers[key] = val
        return val

    odd_cache: dict = {(): target.one()}

    def odd_product(idx):
        val = odd_cache.get(idx)
        if val is None:
            val = odd_product(idx[:-1]) * odd_imgs[idx[-1]]
            odd_cache[idx] = val
        return val

    result = target.zero()
    for (e, o), c in p.terms.items():
        term = target.const(c)
        for k, x in enumerate(e):
            if x:
                term = term * power(k, x)
        if o:
            term = term * odd_product(o)
        result = result + term
    return result


# ----- rendering ---------------------------------------------------------


def _monomial_str(ring: VarTable, mon: SuperMonomial) -> str:
    parts = []
    for (name, _), e in zip(ring.even_vars, mon.even):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    parts.extend(ring.odd_vars[k] for k in mon.odd)
    return "*".join(parts)


def render(p: SuperPolynomial) -> str:
    """Canonical text form, accepted back by :func:`supergeo.expr.parse`."""
    if not p.terms:
        return "0"
    pieces = []
    for mon, c in p.sorted_terms():
        negative = (c.re < 0 and not c.im) or (c.im < 0 and not c.re)
        mag = -c if negative else c
        mono = _monomial_str(p.ring, mon)
        if mag == 1:
            body = mono or "1"
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)
