"""
Exact sparse multivariate polynomials over the rationals

Variables are x1..xl (the coordinates), t (integration / summation variable)
and z (coning variable), ordered x1 < x2 < ... < xl < t < z. Terms are kept
in a dict keyed by exponent tuples in ambient order; coefficients are ints
or reduced Fractions and never zero.
"""

from __future__ import annotations

import heapq
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from operator import add
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from derivations.errors import (
    AmbientMismatchError,
    InvalidDivisorError,
    InvalidInputError,
    NotDivisibleError,
    ShapeError,
)

logger = logging.getLogger(__name__)

Rational = Fraction
Coefficient = Union[int, Fraction]
Exponents = Tuple[int, ...]

# total_degree of the zero polynomial
DEGREE_OF_ZERO = float('-inf')


def rational(value) -> Coefficient:
    """Canonical coefficient: an int when integral, otherwise a reduced Fraction"""
    if isinstance(value, bool):
        raise InvalidInputError(f"Not a rational coefficient: {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        try:
            return rational(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError):
            raise InvalidInputError(f"Not a rational coefficient: {value!r}")
    raise InvalidInputError(f"Not a rational coefficient: {value!r}")


def _norm(c: Coefficient) -> Coefficient:
    if c.__class__ is Fraction and c.denominator == 1:
        return c.numerator
    return c


def format_rational(c: Coefficient) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


class VarKind(Enum):
    X = 'x'
    T = 't'
    Z = 'z'


@dataclass(frozen=True)
class VarId:
    kind: VarKind
    index: int = 0

    def __post_init__(self):
        if self.kind is VarKind.X and self.index < 1:
            raise InvalidInputError(f"x variables are indexed from 1, got {self.index}")
        if self.kind is not VarKind.X and self.index != 0:
            raise InvalidInputError(f"{self.kind.value} carries no index")

    @property
    def name(self) -> str:
        return f"x{self.index}" if self.kind is VarKind.X else self.kind.value

    @classmethod
    def parse(cls, name: str) -> VarId:
        if name == 't':
            return T
        if name == 'z':
            return Z
        if name.startswith('x') and name[1:].isdigit():
            return cls(VarKind.X, int(name[1:]))
        raise InvalidInputError(f"Unknown variable name: {name!r}")

    def __str__(self):
        return self.name


def x(i: int) -> VarId:
    return VarId(VarKind.X, i)


T = VarId(VarKind.T)
Z = VarId(VarKind.Z)


@dataclass(frozen=True)
class Ambient:
    """The variable list x1..x{dim}, then t and z when present"""
    dim: int
    has_t: bool = False
    has_z: bool = False

    def __post_init__(self):
        if self.dim < 0:
            raise InvalidInputError(f"Negative ambient dimension: {self.dim}")

    @cached_property
    def vars(self) -> Tuple[VarId, ...]:
        out = [x(i) for i in range(1, self.dim + 1)]
        if self.has_t:
            out.append(T)
        if self.has_z:
            out.append(Z)
        return tuple(out)

    @cached_property
    def coordinates(self) -> Tuple[VarId, ...]:
        """Coordinates a vector field differentiates along (t is a parameter, not a coordinate)"""
        return tuple(v for v in self.vars if v.kind is not VarKind.T)

    def __contains__(self, v: VarId) -> bool:
        if v.kind is VarKind.X:
            return v.index <= self.dim
        return self.has_t if v.kind is VarKind.T else self.has_z

    def index(self, v: VarId) -> int:
        if v not in self:
            raise AmbientMismatchError(f"Variable {v} is not in ambient {self.names()}")
        if v.kind is VarKind.X:
            return v.index - 1
        if v.kind is VarKind.T:
            return self.dim
        return self.dim + (1 if self.has_t else 0)

    def names(self) -> List[str]:
        return [v.name for v in self.vars]

    def union(self, other: Ambient) -> Ambient:
        if self == other:
            return self
        if self.dim and other.dim and self.dim != other.dim:
            raise AmbientMismatchError(f"Ambient dimensions differ: {self.dim} vs {other.dim}")
        return Ambient(max(self.dim, other.dim), self.has_t or other.has_t, self.has_z or other.has_z)

    def with_t(self, flag: bool = True) -> Ambient:
        return Ambient(self.dim, flag, self.has_z)

    def with_z(self, flag: bool = True) -> Ambient:
        return Ambient(self.dim, self.has_t, flag)

    @classmethod
    def from_names(cls, names: Sequence[str]) -> Ambient:
        parsed = [VarId.parse(n) for n in names]
        xs = [v for v in parsed if v.kind is VarKind.X]
        ambient = cls(len(xs), T in parsed, Z in parsed)
        if list(ambient.vars) != parsed:
            raise InvalidInputError(f"Variables must be x1..xl then t, z in order, got {list(names)}")
        return ambient


def _order_key(exps: Exponents):
    # graded lex, z > t > xl > ... > x1
    return sum(exps), exps[::-1]


def _heap_key(exps: Exponents):
    return -sum(exps), tuple(-e for e in reversed(exps))


class Poly:
    """Sparse polynomial with rational coefficients over an Ambient"""

    __slots__ = ('ambient', 'terms')

    def __init__(self, ambient: Ambient, terms: Optional[Mapping[Sequence[int], object]] = None):
        n = len(ambient.vars)
        clean: Dict[Exponents, Coefficient] = {}
        for exps, c in (terms or {}).items():
            if any(isinstance(e, bool) or not isinstance(e, int) for e in exps):
                raise InvalidInputError(f"Exponents must be integers, got {list(exps)}")
            exps = tuple(exps)
            if len(exps) != n:
                raise InvalidInputError(f"Exponent vector {exps} does not match ambient {ambient.names()}")
            if any(e < 0 for e in exps):
                raise InvalidInputError(f"Negative exponent in {exps}")
            c = rational(c)
            total = clean.get(exps, 0) + c
            if total:
                clean[exps] = _norm(total)
            else:
                clean.pop(exps, None)
        self.ambient = ambient
        self.terms = clean

    @classmethod
    def _raw(cls, ambient: Ambient, terms: Dict[Exponents, Coefficient]) -> Poly:
        p = cls.__new__(cls)
        p.ambient = ambient
        p.terms = terms
        return p

    # constructors

    @classmethod
    def zero(cls, ambient: Ambient) -> Poly:
        return cls._raw(ambient, {})

    @classmethod
    def constant(cls, ambient: Ambient, c) -> Poly:
        c = rational(c)
        return cls._raw(ambient, {(0,) * len(ambient.vars): c} if c else {})

    @classmethod
    def one(cls, ambient: Ambient) -> Poly:
        return cls.constant(ambient, 1)

    @classmethod
    def var(cls, ambient: Ambient, v: VarId) -> Poly:
        exps = [0] * len(ambient.vars)
        exps[ambient.index(v)] = 1
        return cls._raw(ambient, {tuple(exps): 1})

    @classmethod
    def monomial(cls, ambient: Ambient, powers: Mapping[VarId, int], c=1) -> Poly:
        exps = [0] * len(ambient.vars)
        for v, e in powers.items():
            exps[ambient.index(v)] += e
        return cls(ambient, {tuple(exps): c})

    # ambient handling

    def _terms_in(self, ambient: Ambient) -> Dict[Exponents, Coefficient]:
        if ambient == self.ambient:
            return self.terms
        if self.ambient.dim and ambient.dim and self.ambient.dim != ambient.dim:
            raise AmbientMismatchError(f"Ambient dimensions differ: {self.ambient.dim} vs {ambient.dim}")
        positions = []
        for pos, v in enumerate(self.ambient.vars):
            if v in ambient:
                positions.append(ambient.index(v))
            elif any(e[pos] for e in self.terms):
                raise AmbientMismatchError(f"Variable {v} occurs but is not in ambient {ambient.names()}")
            else:
                positions.append(None)
        n = len(ambient.vars)
        out: Dict[Exponents, Coefficient] = {}
        for exps, c in self.terms.items():
            e = [0] * n
            for pos, k in zip(positions, exps):
                if pos is not None:
                    e[pos] = k
            out[tuple(e)] = c
        return out

    def to_ambient(self, ambient: Ambient) -> Poly:
        """Re-express over another ambient; dropped variables must not occur"""
        if ambient == self.ambient:
            return self
        return Poly._raw(ambient, self._terms_in(ambient))

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly.constant(self.ambient, other)
        return NotImplemented

    def _align(self, other: Poly):
        ambient = self.ambient.union(other.ambient)
        return ambient, self._terms_in(ambient), other._terms_in(ambient)

    # arithmetic

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        ambient, a, b = self._align(other)
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _norm(s)
            else:
                out.pop(e, None)
        return Poly._raw(ambient, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw(self.ambient, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> Poly:
        c = rational(c)
        if not c:
            return Poly.zero(self.ambient)
        return Poly._raw(self.ambient, {e: _norm(v * c) for e, v in self.terms.items()})

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        ambient, a, b = self._align(other)
        out: Dict[Exponents, Coefficient] = {}
        get = out.get
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(map(add, e1, e2))
                out[e] = get(e, 0) + c1 * c2
        return Poly._raw(ambient, {e: _norm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                raise ZeroDivisionError("Polynomial division by zero scalar")
            return self.scale(Fraction(1) / other)
        return NotImplemented

    def __pow__(self, n: int) -> Poly:
        if not isinstance(n, int) or n < 0:
            raise InvalidInputError(f"Polynomial powers must be nonnegative integers, got {n!r}")
        result = Poly.one(self.ambient)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = Poly.constant(self.ambient, other)
        if not isinstance(other, Poly):
            return NotImplemented
        try:
            _, a, b = self._align(other)
        except AmbientMismatchError:
            return False
        return a == b

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.terms)

    # inspection

    def total_degree(self):
        if not self.terms:
            return DEGREE_OF_ZERO
        return max(sum(e) for e in self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Coefficient:
        if not self.is_constant():
            raise InvalidInputError(f"Not a constant polynomial: {self.to_text()}")
        return next(iter(self.terms.values()), 0)

    def uses(self, v: VarId) -> bool:
        if v not in self.ambient:
            return False
        pos = self.ambient.index(v)
        return any(e[pos] for e in self.terms)

    def degree_in(self, v: VarId) -> int:
        if not self.uses(v):
            return 0 if self.terms else DEGREE_OF_ZERO
        pos = self.ambient.index(v)
        return max(e[pos] for e in self.terms)

    def by_power(self, v: VarId) -> Dict[int, Poly]:
        """Split into {n: c_n} with self = sum c_n * v^n and every c_n free of v"""
        pos = self.ambient.index(v)
        groups: Dict[int, Dict[Exponents, Coefficient]] = {}
        for e, c in self.terms.items():
            groups.setdefault(e[pos], {})[e[:pos] + (0,) + e[pos + 1:]] = c
        return {n: Poly._raw(self.ambient, g) for n, g in groups.items()}

    def coefficient(self, v: VarId, n: int) -> Poly:
        return self.by_power(v).get(n, Poly.zero(self.ambient))

    def shift(self, v: VarId, n: int) -> Poly:
        """Multiply by v^n"""
        pos = self.ambient.index(v)
        return Poly._raw(self.ambient, {e[:pos] + (e[pos] + n,) + e[pos + 1:]: c for e, c in self.terms.items()})

    def sorted_terms(self) -> List[Tuple[Exponents, Coefficient]]:
        """Terms in descending graded-lex order"""
        return sorted(self.terms.items(), key=lambda item: _order_key(item[0]), reverse=True)

    def leading_term(self) -> Tuple[Exponents, Coefficient]:
        if not self.terms:
            raise InvalidInputError("Zero polynomial has no leading term")
        e = max(self.terms, key=_order_key)
        return e, self.terms[e]

    def denominator_lcm(self) -> int:
        return math.lcm(*(Fraction(c).denominator for c in self.terms.values())) if self.terms else 1

    def evaluate(self, point: Mapping[VarId, object]) -> Coefficient:
        """Exact value at a point; every occurring variable must be assigned"""
        values = []
        for pos, v in enumerate(self.ambient.vars):
            if v in point:
                values.append(rational(point[v]))
            elif any(e[pos] for e in self.terms):
                raise InvalidInputError(f"No value given for {v}")
            else:
                values.append(0)
        total = 0
        for e, c in self.terms.items():
            term = c
            for val, k in zip(values, e):
                if k:
                    term = term * val ** k
            total += term
        return _norm(total) if isinstance(total, Fraction) else total

    # serialization

    def to_dict(self) -> dict:
        return {
            'vars': self.ambient.names(),
            'terms': [{'c': format_rational(c), 'e': list(e)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> Poly:
        try:
            ambient = Ambient.from_names(data['vars'])
            terms = {}
            for term in data['terms']:
                e = tuple(term['e'])
                if e in terms:
                    raise InvalidInputError(f"Repeated exponent vector {list(e)}")
                terms[e] = rational(term['c'])
        except (KeyError, TypeError) as e:
            raise InvalidInputError(f"Malformed polynomial document: {e}")
        return cls(ambient, terms)

    def to_text(self) -> str:
        if not self.terms:
            return '0'
        names = self.ambient.names()
        parts = []
        for e, c in self.sorted_terms():
            monomial = '*'.join(
                name if k == 1 else f"{name}^{k}" for name, k in zip(names, e) if k
            )
            magnitude = abs(Fraction(c))
            if not monomial:
                body = str(magnitude)
            elif magnitude == 1:
                body = monomial
            else:
                body = f"{magnitude}*{monomial}"
            sign = '-' if c < 0 else '+'
            if parts:
                parts.append(f" {sign} {body}")
            else:
                parts.append(f"-{body}" if c < 0 else body)
        return ''.join(parts)

    def __repr__(self):
        return f"Poly('{self.to_text()}')"


def _constant_in(ambient: Ambient, value) -> Poly:
    if isinstance(value, Poly):
        return value
    return Poly.constant(ambient, value)


def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def substitute(p: Poly, v: VarId, q) -> Poly:
    """Replace every occurrence of v in p by q"""
    q = _constant_in(p.ambient, q)
    if v not in p.ambient:
        raise AmbientMismatchError(f"Variable {v} is not in ambient {p.ambient.names()}")
    ambient = p.ambient.union(q.ambient)
    source = p.to_ambient(ambient)
    q = q.to_ambient(ambient)
    groups = source.by_power(v)
    if not groups:
        return Poly.zero(ambient)
    if len(q.terms) <= 1:
        # monomial (or zero) replacement: shift exponents directly
        if not q.terms:
            return groups.get(0, Poly.zero(ambient))
        (qe, qc), = q.terms.items()
        out: Dict[Exponents, Coefficient] = {}
        for n, c in groups.items():
            factor = qc ** n
            for e, coeff in c.terms.items():
                ne = tuple(a + n * b for a, b in zip(e, qe)) if n else e
                out[ne] = out.get(ne, 0) + coeff * factor
        return Poly._raw(ambient, {e: _norm(c) for e, c in out.items() if c})
    top = max(groups)
    result = groups[top]
    for n in range(top - 1, -1, -1):
        result = result * q
        if n in groups:
            result = result + groups[n]
    return result


def partial_derivative(p: Poly, v: VarId) -> Poly:
    if v.kind is VarKind.X and p.ambient.dim and v.index > p.ambient.dim:
        raise AmbientMismatchError(f"Variable {v} is not in ambient {p.ambient.names()}")
    if v not in p.ambient:
        return Poly.zero(p.ambient)
    pos = p.ambient.index(v)
    out = {}
    for e, c in p.terms.items():
        k = e[pos]
        if k:
            out[e[:pos] + (k - 1,) + e[pos + 1:]] = c * k
    return Poly._raw(p.ambient, out)


@dataclass(frozen=True)
class DivisionResult:
    """Outcome of dividing by a linear form; the remainder is the non-divisibility witness"""
    quotient: Optional[Poly]
    remainder: Poly

    @property
    def divisible(self) -> bool:
        return not self.remainder


def _linear_pivot(L: Poly) -> Tuple[VarId, Coefficient, Poly]:
    if L.total_degree() != 1:
        raise InvalidDivisorError(f"Divisor must be a linear form, got {L.to_text()}")
    for v in L.ambient.vars:
        if v.kind is VarKind.T:
            continue
        a = L.coefficient(v, 1)
        if a:
            a = a.constant_value()
            return v, a, L - Poly.var(L.ambient, v).scale(a)
    raise InvalidDivisorError(f"Divisor has no x or z variable: {L.to_text()}")


def exact_div_linear(p: Poly, L: Poly) -> DivisionResult:
    """
    Divide p by the linear form L along its lowest-index x (or z) variable.

    Returns the quotient when the remainder vanishes; otherwise quotient is
    None and the remainder (p restricted to L = 0) is the witness.
    """
    ambient = p.ambient.union(L.ambient)
    p = p.to_ambient(ambient)
    v, a, rest = _linear_pivot(L.to_ambient(ambient))
    groups = p.by_power(v)
    if not groups:
        return DivisionResult(Poly.zero(ambient), Poly.zero(ambient))
    inverse = Fraction(1) / a
    top = max(groups)
    zero = Poly.zero(ambient)
    quotient = zero
    carry = groups[top]
    for n in range(top, 0, -1):
        b = carry.scale(inverse)
        quotient = quotient + b.shift(v, n - 1)
        carry = groups.get(n - 1, zero) - rest * b
    if carry:
        return DivisionResult(None, carry)
    return DivisionResult(quotient, carry)


def divide_by_power(p: Poly, L: Poly, m: int) -> DivisionResult:
    """Divide by L m times; stops at the first non-exact stage with its remainder"""
    if m < 0:
        raise InvalidInputError(f"Power must be nonnegative, got {m}")
    _linear_pivot(L)
    result = DivisionResult(p, Poly.zero(p.ambient))
    for _ in range(m):
        result = exact_div_linear(result.quotient, L)
        if not result.divisible:
            break
    return result


def divisible_by_power(p: Poly, L: Poly, m: int) -> bool:
    return divide_by_power(p, L, m).divisible


def exact_div(p: Poly, d: Poly) -> Poly:
    """
    Exact quotient p / d by leading-term division in graded-lex order.

    Raises NotDivisibleError as soon as a leading term of the running
    remainder is not divisible by the leading term of d.
    """
    if not d:
        raise InvalidDivisorError("Division by the zero polynomial")
    ambient = p.ambient.union(d.ambient)
    divisor = d._terms_in(ambient)
    if len(divisor) == 1:
        (lead_e, lead_c), = divisor.items()
    else:
        lead_e = max(divisor, key=_order_key)
        lead_c = divisor[lead_e]
    remainder = dict(p._terms_in(ambient))
    heap = [(_heap_key(e), e) for e in remainder]
    heapq.heapify(heap)
    quotient: Dict[Exponents, Coefficient] = {}
    while remainder:
        _, e = heapq.heappop(heap)
        if e not in remainder:
            continue
        if any(a < b for a, b in zip(e, lead_e)):
            raise NotDivisibleError(f"{d.to_text()} does not divide {p.to_text()}")
        shift = tuple(a - b for a, b in zip(e, lead_e))
        coeff = Fraction(remainder[e]) / lead_c
        quotient[shift] = _norm(coeff)
        for de, dc in divisor.items():
            ne = tuple(map(add, shift, de))
            value = remainder.get(ne, 0) - coeff * dc
            if value:
                if ne not in remainder:
                    heapq.heappush(heap, (_heap_key(ne), ne))
                remainder[ne] = _norm(value)
            else:
                remainder.pop(ne, None)
    return Poly._raw(ambient, quotient)


def total_degree(p: Poly):
    return p.total_degree()


def homogeneous_part(p: Poly, d: int) -> Poly:
    if d < 0:
        raise InvalidInputError(f"Degree must be nonnegative, got {d}")
    return Poly._raw(p.ambient, {e: c for e, c in p.terms.items() if sum(e) == d})


def homogenize_poly(p: Poly, d: int) -> Poly:
    """z^d * p(x/z): every term padded with z up to degree d"""
    if p.uses(Z):
        raise InvalidInputError(f"Polynomial already involves z: {p.to_text()}")
    if p and p.total_degree() > d:
        raise InvalidInputError(f"Cannot homogenize degree {p.total_degree()} to degree {d}")
    ambient = p.ambient.with_z()
    lifted = p.to_ambient(ambient)
    pos = ambient.index(Z)
    return Poly._raw(
        ambient,
        {e[:pos] + (d - sum(e),) + e[pos + 1:]: c for e, c in lifted.terms.items()},
    )


def _square_entries(matrix: Sequence[Sequence[object]]) -> Tuple[Ambient, List[List[Poly]]]:
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise ShapeError(f"Determinant needs a nonempty square matrix, got {n} rows")
    ambient = None
    for row in matrix:
        for entry in row:
            if isinstance(entry, Poly):
                ambient = entry.ambient if ambient is None else ambient.union(entry.ambient)
    if ambient is None:
        ambient = Ambient(0)
    return ambient, [[_constant_in(ambient, entry).to_ambient(ambient) for entry in row] for row in matrix]


def _laplace(rows: List[List[Poly]], ambient: Ambient) -> Poly:
    n = len(rows)
    memo: Dict[Tuple[int, ...], Poly] = {}

    def minor(cols: Tuple[int, ...]) -> Poly:
        r = n - len(cols)
        if len(cols) == 1:
            return rows[r][cols[0]]
        if cols in memo:
            return memo[cols]
        total = Poly.zero(ambient)
        for idx, c in enumerate(cols):
            entry = rows[r][c]
            if not entry:
                continue
            sub = minor(cols[:idx] + cols[idx + 1:])
            if not sub:
                continue
            term = entry * sub
            total = total + term if idx % 2 == 0 else total - term
        memo[cols] = total
        return total

    return minor(tuple(range(n)))


def _bareiss(rows: List[List[Poly]], ambient: Ambient) -> Poly:
    m = [list(row) for row in rows]
    n = len(m)
    sign = 1
    previous = None
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Poly.zero(ambient)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                value = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = exact_div(value, previous) if previous is not None else value
        previous = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def determinant(matrix: Sequence[Sequence[object]]) -> Poly:
    """
    Exact determinant of a square polynomial matrix.

    Rows are first scaled to integer coefficients. Sizes up to 4 use cofactor
    expansion with memoized minors; larger ones use Bareiss fraction-free
    elimination with exact pivot division.
    """
    ambient, rows = _square_entries(matrix)
    scale = 1
    scaled = []
    for row in rows:
        den = math.lcm(*(entry.denominator_lcm() for entry in row))
        scale *= den
        scaled.append([entry.scale(den) if den != 1 else entry for entry in row])
    if len(scaled) <= 4:
        det = _laplace(scaled, ambient)
    else:
        det = _bareiss(scaled, ambient)
    return det.scale(Fraction(1, scale)) if scale != 1 else det


def adjugate(matrix: Sequence[Sequence[object]]) -> List[List[Poly]]:
    """Classical adjoint: adj[b][a] = (-1)^(a+b) * det(matrix without row a, column b)"""
    ambient, rows = _square_entries(matrix)
    n = len(rows)
    if n == 1:
        return [[Poly.one(ambient)]]
    adj = [[Poly.zero(ambient)] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            minor = [[rows[i][j] for j in range(n) if j != b] for i in range(n) if i != a]
            cofactor = determinant(minor)
            adj[b][a] = cofactor if (a + b) % 2 == 0 else -cofactor
    return adj


def matmul(left: Sequence[Sequence[Poly]], right: Sequence[Sequence[Poly]]) -> List[List[Poly]]:
    inner = len(right)
    if any(len(row) != inner for row in left):
        raise ShapeError("Inner matrix dimensions do not agree")
    cols = len(right[0]) if right else 0
    out = []
    for row in left:
        out_row = []
        for j in range(cols):
            total = row[0] * right[0][j]
            for k in range(1, inner):
                total = total + row[k] * right[k][j]
            out_row.append(total)
        out.append(out_row)
    return out
