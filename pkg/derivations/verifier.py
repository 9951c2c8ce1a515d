"""
Certification of bases and identities: Saito's criterion, exponents, the
restriction to z = 0, and the primitive-derivation identities.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from typing import Any, List, Optional, Sequence, Tuple

from derivations.arrangement import (
    Arrangement,
    DerivationField,
    braid,
    catalan_cone,
    field_apply,
    member,
    shi_cone,
    ziegler_multirestriction,
)
from derivations.basis_builder import (
    BasisKind,
    build_basis,
    eta,
    expected_exponents,
    g_poly,
    restrict_z0,
    sigma,
    tau,
    zeta,
)
from derivations.errors import (
    InvalidDimensionError,
    InvalidInputError,
    InvalidParameterError,
    NotDivisibleError,
    ShapeError,
)
from derivations.poly_core import (
    Ambient,
    Coefficient,
    Poly,
    T,
    adjugate,
    determinant,
    divide_by_power,
    exact_div,
    format_rational,
    matmul,
    partial_derivative,
    substitute,
    x,
)
from derivations.workers import ordered_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: Any = None

    def to_dict(self) -> dict:
        return {'name': self.name, 'pass': self.passed, 'witness': self.witness}


@dataclass
class VerificationReport:
    subject: str
    checks: List[Check] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(check.passed for check in self.checks)

    def add(self, name: str, passed: bool, witness: Any = None) -> VerificationReport:
        self.checks.append(Check(name, bool(passed), witness))
        return self

    def extend(self, other: VerificationReport, prefix: str = '') -> VerificationReport:
        for check in other.checks:
            self.checks.append(Check(f"{prefix}{check.name}", check.passed, check.witness))
        return self

    def failures(self) -> List[Check]:
        return [check for check in self.checks if not check.passed]

    def to_dict(self) -> dict:
        return {
            'subject': self.subject,
            'checks': [check.to_dict() for check in self.checks],
            'overall': self.overall,
        }

    def to_text(self) -> str:
        lines = [f"report {self.subject}"]
        for check in self.checks:
            line = f"  {'PASS' if check.passed else 'FAIL'} {check.name}"
            if check.witness is not None:
                line += f": {json.dumps(check.witness)}"
            lines.append(line)
        lines.append(f"overall: {'PASS' if self.overall else 'FAIL'}")
        return '\n'.join(lines)

    def __bool__(self) -> bool:
        return self.overall


def _poly_witness(p: Optional[Poly]):
    return None if p is None else p.to_dict()


def field_matrix(A: Arrangement, fields: Sequence[DerivationField]) -> List[List[Poly]]:
    """Rows are fields, columns the coordinates of A in ambient order"""
    if len(fields) != len(A.coordinates):
        raise ShapeError(f"Need {len(A.coordinates)} fields for {A.label}, got {len(fields)}")
    return [[f.coeff(v).to_ambient(A.ambient) for v in A.coordinates] for f in fields]


def saito_constant(det: Poly, A: Arrangement) -> Tuple[Optional[Coefficient], Optional[dict]]:
    """
    Divide det by every form^mult; returns (c, None) when the quotient is a
    nonzero constant c, otherwise (None, witness).
    """
    quotient = det
    for h in A.hyperplanes:
        result = divide_by_power(quotient, h.form, h.multiplicity)
        if not result.divisible:
            return None, {'hyperplane': h.to_dict(), 'remainder': result.remainder.to_dict()}
        quotient = result.quotient
    if not quotient or not quotient.is_constant():
        return None, {'quotient': quotient.to_dict()}
    return quotient.constant_value(), None


def saito_check(A: Arrangement, fields: Sequence[DerivationField]) -> VerificationReport:
    """
    The fields form a basis of D(A) iff each lies in D(A) and the
    determinant of their coefficient matrix is a nonzero constant multiple
    of the defining polynomial.
    """
    matrix = field_matrix(A, fields)
    report = VerificationReport(A.label)
    for i, f in enumerate(fields):
        result = member(f, A)
        report.add(f"member[{i}]", result.member, result.witness())

    degrees = [f.homogeneous_degree() for f in fields]
    if A.is_central() and all(d is not None for d in degrees):
        report.add('degree_sum', sum(degrees) == A.total_multiplicity(),
                   {'degrees': degrees, 'multiplicity': A.total_multiplicity()})

    det = determinant(matrix)
    c, failure = saito_constant(det, A)
    if c is None:
        report.add('determinant', False, dict(failure, det=det.to_dict()))
    else:
        report.add('determinant', True, {'c': format_rational(c), 'det': det.to_dict()})
    logger.info(f"Saito check on {A.label}: {'pass' if report.overall else 'fail'}")
    return report


def exponent_check(fields: Sequence[DerivationField], expected: Sequence[int]) -> VerificationReport:
    degrees = []
    for i, f in enumerate(fields):
        d = f.homogeneous_degree()
        if d is None:
            raise InvalidInputError(f"Field {i} does not have homogeneous coefficients of one degree")
        degrees.append(d)
    report = VerificationReport('exponents')
    report.add('multiset', sorted(degrees) == sorted(expected),
               {'degrees': degrees, 'expected': list(expected)})
    return report


def target_arrangement(kind, l: int, m: int) -> Arrangement:
    """The arrangement the basis of the given kind is a basis for"""
    kind = BasisKind(kind)
    if kind is BasisKind.CAT:
        return catalan_cone(l, m)
    if kind is BasisKind.SHI:
        return shi_cone(l, m)
    if kind is BasisKind.BRAID_ODD:
        if m < 0:
            raise InvalidParameterError(f"m must be >= 0, got {m}")
        return braid(l, 2 * m + 1)
    if m < 1:
        raise InvalidParameterError(f"m must be >= 1, got {m}")
    return braid(l, 2 * m)


def ziegler_restriction_check(l: int, m: int, kind, basis: Optional[Sequence[DerivationField]] = None) -> VerificationReport:
    """
    (a) the non-Euler basis fields lie in the cone arrangement;
    (b) their restrictions to z = 0 pass Saito's criterion for the braid
    multiarrangement obtained by restricting the cone.
    """
    kind = BasisKind(kind)
    if not kind.coned:
        raise InvalidParameterError(f"Restriction check applies to cat and shi, not {kind.value}")
    cone = target_arrangement(kind, l, m)
    if basis is None:
        basis = build_basis(kind, l, m)
    report = VerificationReport(f"ziegler {cone.label}")
    for i, f in enumerate(basis[1:], start=1):
        result = member(f, cone)
        report.add(f"member[{i}]", result.member, result.witness())

    restriction = ziegler_multirestriction(cone)
    target = braid(l, 2 * m + 1 if kind is BasisKind.CAT else 2 * m)
    report.add('multirestriction', restriction == target,
               {'restriction': restriction.to_dict(), 'expected': target.label})
    restricted = [restrict_z0(f) for f in basis[1:]]
    report.extend(saito_check(target, restricted), prefix='restricted.')
    return report


@dataclass(frozen=True)
class JacobianData:
    """
    M[a][b] = dP_a/dx_b for the coefficients P_a of t^(l-a) in g(t),
    Q = det M and adj with M * adj = Q * I.
    """
    l: int
    M: Tuple[Tuple[Poly, ...], ...]
    Q: Poly
    adjugate: Tuple[Tuple[Poly, ...], ...]

    def identity_holds(self) -> bool:
        product = matmul(self.M, self.adjugate)
        return all(
            product[a][b] == (self.Q if a == b else 0)
            for a in range(self.l) for b in range(self.l)
        )

    def lift(self, j: int) -> DerivationField:
        """Q * d/dP_j = sum_b adj[b][j] d/dx_b"""
        if not 1 <= j <= self.l:
            raise InvalidParameterError(f"j must be in [1, {self.l}], got {j}")
        return DerivationField(Ambient(self.l), {x(b + 1): self.adjugate[b][j - 1] for b in range(self.l)})

    def to_dict(self) -> dict:
        return {
            'M': [[p.to_dict() for p in row] for row in self.M],
            'Q': self.Q.to_dict(),
            'adjugate': [[p.to_dict() for p in row] for row in self.adjugate],
            'convention': 'M[a][b] = dP_a/dx_b, inverse[b][j] = adj[b][j] / Q',
        }


def jacobian_data(l: int) -> JacobianData:
    if l < 2:
        raise InvalidDimensionError(f"Ambient dimension must be >= 2, got {l}")
    ambient = Ambient(l)
    g = g_poly(l)
    P = [g.coefficient(T, l - a).to_ambient(ambient) for a in range(1, l + 1)]
    M = [[partial_derivative(p, x(b)) for b in range(1, l + 1)] for p in P]
    data = JacobianData(
        l,
        tuple(tuple(row) for row in M),
        determinant(M),
        tuple(tuple(row) for row in adjugate(M)),
    )
    if not data.identity_holds():
        raise ShapeError(f"Adjugate identity failed for l={l}")
    return data


def _check_identity_params(l: int, m: int) -> None:
    if l < 2:
        raise InvalidDimensionError(f"Ambient dimension must be >= 2, got {l}")
    if m < 1:
        raise InvalidParameterError(f"m must be >= 1, got {m}")


def _compare_fields(report: VerificationReport, name: str, lhs: DerivationField, rhs: DerivationField) -> None:
    for v in lhs.coordinates:
        difference = lhs.coeff(v) - rhs.coeff(v)
        if difference:
            report.add(name, False, {'coordinate': v.name, 'difference': difference.to_dict()})
            return
    report.add(name, True)


def bibun_check(l: int, m: int, k: int, j: int, jacobian: Optional[JacobianData] = None) -> VerificationReport:
    """Q * (d/dP_j applied to eta_k^m) == Q * m * eta_{k+l-j}^(m-1), coefficient-wise"""
    _check_identity_params(l, m)
    if k < 0:
        raise InvalidParameterError(f"k must be >= 0, got {k}")
    jacobian = jacobian or jacobian_data(l)
    lift = jacobian.lift(j)
    lhs = eta(l, m, k).map(lift.apply)
    rhs = eta(l, m - 1, k + l - j) * (jacobian.Q * m)
    report = VerificationReport(f"bibun(l={l},m={m},k={k},j={j})")
    _compare_fields(report, 'lifted_derivative', lhs, rhs)
    return report


def iterated_primitive_check(l: int, m: int, k: int, jacobian: Optional[JacobianData] = None) -> VerificationReport:
    """Applying d/dP_l m times to eta_k^m gives m! * eta_k^0"""
    _check_identity_params(l, m)
    if k < 0:
        raise InvalidParameterError(f"k must be >= 0, got {k}")
    jacobian = jacobian or jacobian_data(l)
    lift = jacobian.lift(l)
    report = VerificationReport(f"iterated(l={l},m={m},k={k})")
    current = eta(l, m, k)
    for step in range(1, m + 1):
        try:
            current = current.map(lambda c: exact_div(lift.apply(c), jacobian.Q))
        except NotDivisibleError as e:
            report.add(f"step[{step}]", False, str(e))
            return report
    _compare_fields(report, 'factorial', current, eta(l, 0, k) * math.factorial(m))
    return report


def differentiate2_check(l: int, m: int, k: int) -> VerificationReport:
    """d/dx_k applied coefficient-wise to eta_0^m equals -m * sigma_k^m"""
    _check_identity_params(l, m)
    if not 1 <= k <= l:
        raise InvalidParameterError(f"k must be in [1, {l}], got {k}")
    lhs = eta(l, m, 0).map(lambda c: partial_derivative(c, x(k)))
    report = VerificationReport(f"differentiate2(l={l},m={m},k={k})")
    _compare_fields(report, 'coordinate_derivative', lhs, sigma(l, m, k) * (-m))
    return report


def simple_root_derivative_check(l: int, m: int, i: int) -> VerificationReport:
    """(d/dx_i - d/dx_{i+1}) applied to eta_0^m equals -m * (sigma_i^m - sigma_{i+1}^m)"""
    _check_identity_params(l, m)
    if not 1 <= i <= l - 1:
        raise InvalidParameterError(f"i must be in [1, {l - 1}], got {i}")
    lhs = eta(l, m, 0).map(lambda c: partial_derivative(c, x(i)) - partial_derivative(c, x(i + 1)))
    rhs = (sigma(l, m, i) - sigma(l, m, i + 1)) * (-m)
    report = VerificationReport(f"simple_root(l={l},m={m},i={i})")
    _compare_fields(report, 'root_derivative', lhs, rhs)
    return report


def _offset_vanishing(report: VerificationReport, name: str, delta: DerivationField, offsets) -> None:
    l = delta.ambient.dim
    for u in range(1, l + 1):
        for v in range(u + 1, l + 1):
            root = Poly.var(delta.ambient, x(u)) - Poly.var(delta.ambient, x(v))
            value = field_apply(delta, root)
            for p in offsets:
                restricted = substitute(value, x(u), Poly.var(delta.ambient, x(v)) + p)
                report.add(f"{name}.x{u}-x{v}={p}", not restricted, _poly_witness(restricted or None))


def vanishing_sum_check(l: int, m: int, kind) -> VerificationReport:
    """
    The raw discrete fields vanish on the affine hyperplanes after applying
    them to the root: zeta_k^m(x_u - x_v) at x_u = x_v + p for 0 < |p| <= m,
    and (tau_k^m - tau_{k+1}^m)(x_u - x_v) at x_u = x_v + p for 1 - m <= p <= m, p != 0.
    """
    kind = BasisKind(kind)
    if l < 2:
        raise InvalidDimensionError(f"Ambient dimension must be >= 2, got {l}")
    report = VerificationReport(f"vanishing {kind.value}(l={l},m={m})")
    if kind is BasisKind.CAT:
        if m < 0:
            raise InvalidParameterError(f"m must be >= 0, got {m}")
        offsets = [p for p in range(-m, m + 1) if p]
        for k in range(l - 1):
            _offset_vanishing(report, f"zeta_{k}", zeta(l, m, k), offsets)
    elif kind is BasisKind.SHI:
        if m < 1:
            raise InvalidParameterError(f"m must be >= 1, got {m}")
        offsets = [p for p in range(1 - m, m + 1) if p]
        taus = [tau(l, m, k) for k in range(1, l + 1)]
        for k in range(1, l):
            _offset_vanishing(report, f"tau_{k}-tau_{k + 1}", taus[k - 1] - taus[k], offsets)
    else:
        raise InvalidParameterError(f"Vanishing laws apply to cat and shi, not {kind.value}")
    return report


def run_suite(kind, l: int, m: int) -> VerificationReport:
    """Saito + exponents, plus the restriction check for the coned kinds"""
    kind = BasisKind(kind)
    A = target_arrangement(kind, l, m)
    basis = build_basis(kind, l, m)
    tasks = [
        ('saito.', lambda: saito_check(A, basis)),
        ('exponents.', lambda: exponent_check(basis, expected_exponents(kind, l, m))),
    ]
    if kind.coned:
        tasks.append(('ziegler.', lambda: ziegler_restriction_check(l, m, kind, basis)))
    report = VerificationReport(f"{kind.value}(l={l},m={m})")
    for (prefix, _), sub in zip(tasks, ordered_map(lambda task: task[1](), tasks)):
        report.extend(sub, prefix)
    logger.info(f"Suite {report.subject}: {'pass' if report.overall else 'fail'}")
    return report


def run_identities(l: int, m: int) -> VerificationReport:
    """Every primitive-derivation identity for one (l, m)"""
    _check_identity_params(l, m)
    jacobian = jacobian_data(l)
    report = VerificationReport(f"identities(l={l},m={m})")
    report.add('jacobian.adjugate', jacobian.identity_holds(), {'Q': jacobian.Q.to_dict()})
    for k in range(l - 1):
        for j in range(1, l + 1):
            report.extend(bibun_check(l, m, k, j, jacobian), f"bibun[k={k},j={j}].")
        report.extend(iterated_primitive_check(l, m, k, jacobian), f"iterated[k={k}].")
    for k in range(1, l + 1):
        report.extend(differentiate2_check(l, m, k), f"differentiate2[k={k}].")
    for i in range(1, l):
        report.extend(simple_root_derivative_check(l, m, i), f"simple_root[i={i}].")
    return report
