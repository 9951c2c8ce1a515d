"""
Hyperplane (multi)arrangements of type A, polynomial vector fields, and the
membership test for D(A, m)
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple

from derivations.errors import (
    AmbientMismatchError,
    InvalidDimensionError,
    InvalidInputError,
    InvalidParameterError,
)
from derivations.poly_core import (
    Ambient,
    DEGREE_OF_ZERO,
    Poly,
    VarId,
    VarKind,
    Z,
    divide_by_power,
    partial_derivative,
    substitute,
    x,
)
from derivations.workers import ordered_map

logger = logging.getLogger(__name__)


def normalize_form(form: Poly) -> Poly:
    """
    Scale a (possibly affine) linear form to coprime integer coefficients
    with the first nonzero variable coefficient positive.
    """
    if form.total_degree() != 1:
        raise InvalidInputError(f"Hyperplane form must have degree 1, got {form.to_text()}")
    scaled = form.scale(form.denominator_lcm())
    content = math.gcd(*(int(c) for c in scaled.terms.values()))
    scaled = scaled.scale(Fraction(1, content))
    for v in scaled.ambient.vars:
        c = scaled.coefficient(v, 1)
        if c:
            return -scaled if c.constant_value() < 0 else scaled
    return scaled


def form_key(form: Poly, ambient: Ambient) -> Tuple:
    return tuple(normalize_form(form).to_ambient(ambient).sorted_terms())


@dataclass(frozen=True, eq=False)
class Hyperplane:
    form: Poly
    multiplicity: int = 1

    def __post_init__(self):
        if self.multiplicity < 1:
            raise InvalidParameterError(f"Multiplicity must be >= 1, got {self.multiplicity}")
        object.__setattr__(self, 'form', normalize_form(self.form))

    def __eq__(self, other):
        if not isinstance(other, Hyperplane):
            return NotImplemented
        return self.multiplicity == other.multiplicity and self.form == other.form

    def is_central(self) -> bool:
        return not self.form.terms.get((0,) * len(self.form.ambient.vars))

    def to_dict(self) -> dict:
        return {'form': self.form.to_dict(), 'mult': self.multiplicity}

    @classmethod
    def from_dict(cls, data: Mapping) -> Hyperplane:
        try:
            return cls(Poly.from_dict(data['form']), int(data['mult']))
        except (KeyError, TypeError) as e:
            raise InvalidInputError(f"Malformed hyperplane document: {e}")

    def __repr__(self):
        return f"Hyperplane({self.form.to_text()}, mult={self.multiplicity})"


class Arrangement:
    """A finite list of hyperplanes with multiplicities over an ambient"""

    def __init__(self, ambient: Ambient, hyperplanes: Iterable[Hyperplane], label: str = ''):
        if ambient.has_t:
            raise InvalidInputError("Arrangements live on x1..xl (and z), not on t")
        self.ambient = ambient
        self.label = label
        self.hyperplanes: Tuple[Hyperplane, ...] = tuple(
            Hyperplane(h.form.to_ambient(ambient), h.multiplicity) for h in hyperplanes
        )
        seen = set()
        for h in self.hyperplanes:
            key = form_key(h.form, ambient)
            if key in seen:
                raise InvalidInputError(f"Repeated hyperplane {h.form.to_text()} in {label}")
            seen.add(key)

    @property
    def coordinates(self) -> Tuple[VarId, ...]:
        return self.ambient.coordinates

    def is_central(self) -> bool:
        return all(h.is_central() for h in self.hyperplanes)

    def total_multiplicity(self) -> int:
        return sum(h.multiplicity for h in self.hyperplanes)

    def multiplicities(self) -> Dict[Tuple, int]:
        return {form_key(h.form, self.ambient): h.multiplicity for h in self.hyperplanes}

    def defining_polynomial(self) -> Poly:
        return defining_polynomial(self)

    def with_multiplicities(self, fn: Callable[[Hyperplane], int], label: Optional[str] = None) -> Arrangement:
        return Arrangement(
            self.ambient,
            [Hyperplane(h.form, fn(h)) for h in self.hyperplanes],
            label if label is not None else self.label,
        )

    def __eq__(self, other):
        if not isinstance(other, Arrangement):
            return NotImplemented
        return self.ambient == other.ambient and self.multiplicities() == other.multiplicities()

    __hash__ = None

    def __len__(self):
        return len(self.hyperplanes)

    def to_dict(self) -> dict:
        return {
            'label': self.label,
            'vars': self.ambient.names(),
            'hyperplanes': [h.to_dict() for h in self.hyperplanes],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> Arrangement:
        try:
            ambient = Ambient.from_names(data['vars'])
            hyperplanes = [Hyperplane.from_dict(h) for h in data['hyperplanes']]
            return cls(ambient, hyperplanes, data.get('label', ''))
        except (KeyError, TypeError) as e:
            raise InvalidInputError(f"Malformed arrangement document: {e}")

    def __repr__(self):
        return f"Arrangement({self.label!r}, {len(self.hyperplanes)} hyperplanes)"


def _check_dimension(l: int) -> None:
    if l < 2:
        raise InvalidDimensionError(f"Ambient dimension must be >= 2, got {l}")


def _root_forms(l: int, ambient: Ambient, shifts: Iterable[int], coned: bool) -> List[Poly]:
    shifts = list(shifts)
    unit = Poly.var(ambient, Z) if coned else Poly.one(ambient)
    forms = []
    for i in range(1, l + 1):
        for j in range(i + 1, l + 1):
            root = Poly.var(ambient, x(i)) - Poly.var(ambient, x(j))
            for k in shifts:
                forms.append(root - unit.scale(k) if k else root)
    return forms


def braid(l: int, mult: int = 1) -> Arrangement:
    """x_i - x_j for i < j, each with the given multiplicity"""
    _check_dimension(l)
    if mult < 1:
        raise InvalidParameterError(f"Multiplicity must be >= 1, got {mult}")
    ambient = Ambient(l)
    forms = _root_forms(l, ambient, [0], coned=False)
    return Arrangement(ambient, [Hyperplane(f, mult) for f in forms], f"braid(l={l},m={mult})")


def catalan(l: int, m: int) -> Arrangement:
    """Affine Catalan arrangement x_i - x_j = k, -m <= k <= m"""
    _check_dimension(l)
    if m < 0:
        raise InvalidParameterError(f"Catalan parameter must be >= 0, got {m}")
    ambient = Ambient(l)
    forms = _root_forms(l, ambient, range(-m, m + 1), coned=False)
    return Arrangement(ambient, [Hyperplane(f) for f in forms], f"Cat(l={l},m={m})")


def shi(l: int, m: int) -> Arrangement:
    """Affine Shi arrangement x_i - x_j = k, 1 - m <= k <= m"""
    _check_dimension(l)
    if m < 1:
        raise InvalidParameterError(f"Shi parameter must be >= 1, got {m}")
    ambient = Ambient(l)
    forms = _root_forms(l, ambient, range(1 - m, m + 1), coned=False)
    return Arrangement(ambient, [Hyperplane(f) for f in forms], f"Shi(l={l},m={m})")


def cone(A: Arrangement, label: Optional[str] = None) -> Arrangement:
    """Homogenize every form with z and add the hyperplane z = 0"""
    if A.ambient.has_z:
        raise InvalidInputError(f"{A.label} is already coned")
    ambient = A.ambient.with_z()
    z = Poly.var(ambient, Z)
    hyperplanes = []
    for h in A.hyperplanes:
        form = h.form.to_ambient(ambient)
        constant = form.terms.get((0,) * len(ambient.vars), 0)
        hyperplanes.append(Hyperplane(form - constant + z.scale(constant), h.multiplicity))
    hyperplanes.append(Hyperplane(z))
    return Arrangement(ambient, hyperplanes, label if label is not None else f"c{A.label}")


def catalan_cone(l: int, m: int) -> Arrangement:
    return cone(catalan(l, m))


def shi_cone(l: int, m: int) -> Arrangement:
    return cone(shi(l, m))


def ziegler_multirestriction(A: Arrangement) -> Arrangement:
    """
    Restriction of a coned arrangement to z = 0 as a multiarrangement: each
    non-z hyperplane contributes its multiplicity to its z-free part.
    """
    if not A.ambient.has_z:
        raise InvalidInputError(f"{A.label} has no cone coordinate")
    target = A.ambient.with_z(False)
    counts: Dict[Tuple, int] = {}
    forms: Dict[Tuple, Poly] = {}
    found_z = False
    for h in A.hyperplanes:
        restricted = substitute(h.form, Z, 0).to_ambient(target)
        if not restricted:
            found_z = True
            continue
        if not restricted.is_constant():
            key = form_key(restricted, target)
            forms.setdefault(key, normalize_form(restricted))
            counts[key] = counts.get(key, 0) + h.multiplicity
    if not found_z:
        raise InvalidInputError(f"{A.label} does not contain the hyperplane z = 0")
    return Arrangement(target, [Hyperplane(forms[k], counts[k]) for k in forms], f"{A.label}|z=0")


def defining_polynomial(A: Arrangement) -> Poly:
    result = Poly.one(A.ambient)
    for h in A.hyperplanes:
        result = result * h.form ** h.multiplicity
    return result


class DerivationField:
    """Polynomial vector field sum_v coeffs[v] * d/dv over the coordinates of an ambient"""

    def __init__(self, ambient: Ambient, coeffs: Optional[Mapping[VarId, object]] = None):
        if ambient.has_t:
            ambient = ambient.with_t(False)
        self.ambient = ambient
        clean: Dict[VarId, Poly] = {}
        for v, c in (coeffs or {}).items():
            if v not in ambient.coordinates:
                raise InvalidInputError(f"{v} is not a coordinate of {ambient.names()}")
            c = c.to_ambient(ambient) if isinstance(c, Poly) else Poly.constant(ambient, c)
            if c:
                clean[v] = c
        self.coeffs = clean

    @property
    def coordinates(self) -> Tuple[VarId, ...]:
        return self.ambient.coordinates

    def coeff(self, v: VarId) -> Poly:
        return self.coeffs.get(v, Poly.zero(self.ambient))

    def coefficient_list(self) -> List[Poly]:
        return [self.coeff(v) for v in self.coordinates]

    def map(self, fn: Callable[[Poly], Poly], ambient: Optional[Ambient] = None) -> DerivationField:
        return DerivationField(ambient or self.ambient, {v: fn(c) for v, c in self.coeffs.items()})

    def _align(self, other: DerivationField) -> Ambient:
        ambient = self.ambient.union(other.ambient)
        if ambient.has_t:
            ambient = ambient.with_t(False)
        return ambient

    def __add__(self, other: DerivationField) -> DerivationField:
        if not isinstance(other, DerivationField):
            return NotImplemented
        ambient = self._align(other)
        coords = set(self.coeffs) | set(other.coeffs)
        return DerivationField(ambient, {v: self.coeff(v) + other.coeff(v) for v in coords})

    def __neg__(self) -> DerivationField:
        return self.map(lambda c: -c)

    def __sub__(self, other: DerivationField) -> DerivationField:
        if not isinstance(other, DerivationField):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar) -> DerivationField:
        if isinstance(scalar, Poly):
            ambient = self.ambient.union(scalar.ambient)
            return DerivationField(ambient, {v: c * scalar for v, c in self.coeffs.items()})
        if isinstance(scalar, (int, Fraction)) and not isinstance(scalar, bool):
            return self.map(lambda c: c.scale(scalar))
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, DerivationField):
            return NotImplemented
        try:
            self._align(other)
        except AmbientMismatchError:
            return False
        coords = set(self.coeffs) | set(other.coeffs)
        return all(self.coeff(v) == other.coeff(v) for v in coords)

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def apply(self, p: Poly) -> Poly:
        return field_apply(self, p)

    def degree(self):
        return max((c.total_degree() for c in self.coeffs.values()), default=DEGREE_OF_ZERO)

    def homogeneous_degree(self) -> Optional[int]:
        """Common degree of the coefficients when they are all homogeneous of one degree"""
        degrees = set()
        for c in self.coeffs.values():
            degrees.update(sum(e) for e in c.terms)
        return degrees.pop() if len(degrees) == 1 else None

    def to_dict(self) -> dict:
        return {
            'coords': [v.name for v in self.coordinates],
            'coeffs': [c.to_dict() for c in self.coefficient_list()],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> DerivationField:
        try:
            coords = [VarId.parse(name) for name in data['coords']]
            coeffs = [Poly.from_dict(c) for c in data['coeffs']]
        except (KeyError, TypeError) as e:
            raise InvalidInputError(f"Malformed field document: {e}")
        if len(coords) != len(coeffs):
            raise InvalidInputError("Field document has different numbers of coords and coeffs")
        dim = sum(1 for v in coords if v.kind is VarKind.X)
        ambient = Ambient(dim, has_z=Z in coords)
        if list(ambient.coordinates) != coords:
            raise InvalidInputError(f"Coordinates must be x1..xl then z, got {data['coords']}")
        return cls(ambient, dict(zip(coords, coeffs)))

    def to_text(self) -> str:
        parts = [f"({c.to_text()})*d/d{v.name}" for v, c in
                 ((v, self.coeffs[v]) for v in self.coordinates if v in self.coeffs)]
        return ' + '.join(parts) if parts else '0'

    def __repr__(self):
        return f"DerivationField({self.to_text()})"


def field_apply(delta: DerivationField, p: Poly) -> Poly:
    """delta(p) = sum_v coeffs[v] * dp/dv"""
    ambient = delta.ambient.union(p.ambient)
    result = Poly.zero(ambient)
    for v, c in delta.coeffs.items():
        result = result + c * partial_derivative(p.to_ambient(ambient), v)
    return result


@dataclass(frozen=True)
class MembershipResult:
    """Outcome of member(); on failure names the first failing hyperplane and the remainder"""
    member: bool
    hyperplane: Optional[Hyperplane] = None
    remainder: Optional[Poly] = None

    def __bool__(self) -> bool:
        return self.member

    def witness(self):
        if self.member:
            return None
        return {'hyperplane': self.hyperplane.to_dict(), 'remainder': self.remainder.to_dict()}


def member(delta: DerivationField, A: Arrangement) -> MembershipResult:
    """delta is in D(A, m) iff delta(alpha_H) is divisible by alpha_H^m(H) for every H"""
    delta.ambient.union(A.ambient)

    def check(h: Hyperplane):
        return divide_by_power(field_apply(delta, h.form), h.form, h.multiplicity)

    for h, result in zip(A.hyperplanes, ordered_map(check, A.hyperplanes)):
        if not result.divisible:
            logger.debug(f"Field fails on {h.form.to_text()} in {A.label}")
            return MembershipResult(False, h, result.remainder)
    return MembershipResult(True)
