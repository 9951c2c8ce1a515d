"""
Vector fields built from the polynomial g(t) = (t - x1)...(t - xl): the
integral families (eta, sigma), their discrete counterparts (zeta, tau),
theta_0, the Euler field, homogenization, restriction to z = 0 and the
packaged bases.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, List

from derivations.arrangement import DerivationField
from derivations.discrete_calc import antiderivative, falling_power, indefinite_sum
from derivations.errors import InvalidDimensionError, InvalidInputError, InvalidParameterError
from derivations.poly_core import (
    Ambient,
    Poly,
    T,
    Z,
    homogenize_poly,
    substitute,
    x,
)
from derivations.workers import ordered_map

logger = logging.getLogger(__name__)


class FieldFamily(Enum):
    ETA = 'eta'
    SIGMA = 'sigma'
    ZETA = 'zeta'
    TAU = 'tau'


class BasisKind(Enum):
    CAT = 'cat'
    SHI = 'shi'
    BRAID_ODD = 'braid-odd'
    BRAID_EVEN = 'braid-even'

    @property
    def coned(self) -> bool:
        return self in (BasisKind.CAT, BasisKind.SHI)


def _check_dimension(l: int, minimum: int = 2) -> None:
    if l < minimum:
        raise InvalidDimensionError(f"Ambient dimension must be >= {minimum}, got {l}")


def _check_range(name: str, value: int, low: int, high: float = float('inf')) -> None:
    if value < low or value > high:
        bound = f">= {low}" if high == float('inf') else f"in [{low}, {high}]"
        raise InvalidParameterError(f"{name} must be {bound}, got {value}")


def _t_ambient(l: int) -> Ambient:
    return Ambient(l, has_t=True)


def _linear(l: int, i: int, offset: int = 0) -> Poly:
    """t - x_i + offset"""
    ambient = _t_ambient(l)
    return Poly.var(ambient, T) - Poly.var(ambient, x(i)) + offset


def g_poly(l: int) -> Poly:
    _check_dimension(l, minimum=1)
    result = Poly.one(_t_ambient(l))
    for p in range(1, l + 1):
        result = result * _linear(l, p)
    return result


def g_k_poly(l: int, k: int) -> Poly:
    """g(t) / (t - x_k)"""
    _check_dimension(l, minimum=1)
    _check_range('k', k, 1, l)
    result = Poly.one(_t_ambient(l))
    for p in range(1, l + 1):
        if p != k:
            result = result * _linear(l, p)
    return result


def g_km_poly(l: int, m: int, k: int) -> Poly:
    """
    falling_power(g, t, m - 1) * prod_{i<k} (t - x_i + 1) * prod_{i>k} (t - x_i - m + 1)
    """
    _check_dimension(l, minimum=1)
    _check_range('m', m, 1)
    _check_range('k', k, 0, l)
    result = falling_power(g_poly(l), T, m - 1)
    for i in range(1, k):
        result = result * _linear(l, i, 1)
    for i in range(k + 1, l + 1):
        result = result * _linear(l, i, 1 - m)
    return result


def theta_0(l: int, coned: bool = False) -> DerivationField:
    """d/dx1 + ... + d/dxl"""
    _check_dimension(l)
    ambient = Ambient(l, has_z=coned)
    return DerivationField(ambient, {x(i): 1 for i in range(1, l + 1)})


def theta_E(l: int) -> DerivationField:
    """Euler field z d/dz + sum x_i d/dx_i on the coned ambient"""
    _check_dimension(l)
    ambient = Ambient(l, has_z=True)
    return DerivationField(ambient, {v: Poly.var(ambient, v) for v in ambient.coordinates})


def _field_from_primitive(l: int, F: Poly) -> DerivationField:
    """
    Coefficients f_i = sum_j (F(x_j) - F(x_i)) = sum_j F(x_j) - l * F(x_i)

    F is an antiderivative or antidifference in t; the diagonal j = i terms
    cancel inside the closed form.
    """
    ambient = Ambient(l)
    values = [
        substitute(F, T, Poly.var(F.ambient, x(p))).to_ambient(ambient)
        for p in range(1, l + 1)
    ]
    total = Poly.zero(ambient)
    for value in values:
        total = total + value
    return DerivationField(ambient, {x(i): total - values[i - 1].scale(l) for i in range(1, l + 1)})


def _t_power(l: int, k: int) -> Poly:
    return Poly.monomial(_t_ambient(l), {T: k})


def eta(l: int, m: int, k: int) -> DerivationField:
    """i-th coefficient: sum_j integral_{x_i}^{x_j} t^k g(t)^m dt"""
    _check_dimension(l)
    _check_range('m', m, 0)
    _check_range('k', k, 0)
    logger.debug(f"Building eta(l={l}, m={m}, k={k})")
    return _field_from_primitive(l, antiderivative(_t_power(l, k) * g_poly(l) ** m, T))


def sigma(l: int, m: int, k: int) -> DerivationField:
    """i-th coefficient: sum_j integral_{x_i}^{x_j} g(t)^(m-1) g_k(t) dt"""
    _check_dimension(l)
    _check_range('m', m, 1)
    _check_range('k', k, 1, l)
    logger.debug(f"Building sigma(l={l}, m={m}, k={k})")
    return _field_from_primitive(l, antiderivative(g_poly(l) ** (m - 1) * g_k_poly(l, k), T))


def zeta(l: int, m: int, k: int) -> DerivationField:
    """i-th coefficient: sum_j of t^k g(t)^(falling m) over t from x_i to x_j"""
    _check_dimension(l)
    _check_range('m', m, 0)
    _check_range('k', k, 0)
    logger.debug(f"Building zeta(l={l}, m={m}, k={k})")
    integrand = _t_power(l, k) * falling_power(g_poly(l), T, m)
    return _field_from_primitive(l, indefinite_sum(integrand, T))


def tau(l: int, m: int, k: int) -> DerivationField:
    """i-th coefficient: sum_j of g_k^(m)(t) over t from x_i to x_j"""
    _check_dimension(l)
    _check_range('m', m, 1)
    _check_range('k', k, 0, l)
    logger.debug(f"Building tau(l={l}, m={m}, k={k})")
    return _field_from_primitive(l, indefinite_sum(g_km_poly(l, m, k), T))


def homogenize(delta: DerivationField) -> DerivationField:
    """
    z^d * f_i(x / z) for every coefficient, d the largest coefficient degree.
    The zero field homogenizes with d = 0.
    """
    if delta.ambient.has_z and delta.coeffs.get(Z):
        raise InvalidInputError("Cannot homogenize a field with a z coefficient")
    d = max((c.total_degree() for c in delta.coeffs.values()), default=0)
    ambient = delta.ambient.with_z()
    return DerivationField(ambient, {v: homogenize_poly(c, d) for v, c in delta.coeffs.items()})


def restrict_z0(delta: DerivationField) -> DerivationField:
    """Set z = 0 in every coefficient and drop the z coordinate"""
    if not delta.ambient.has_z:
        raise InvalidInputError("Field does not live on a coned ambient")
    target = delta.ambient.with_z(False)
    return DerivationField(target, {
        v: substitute(c, Z, 0).to_ambient(target)
        for v, c in delta.coeffs.items() if v != Z
    })


@dataclass(frozen=True)
class FieldFamilySpec:
    family: FieldFamily
    l: int
    m: int
    k: int

    def build(self) -> DerivationField:
        builders = {
            FieldFamily.ETA: eta,
            FieldFamily.SIGMA: sigma,
            FieldFamily.ZETA: zeta,
            FieldFamily.TAU: tau,
        }
        return builders[self.family](self.l, self.m, self.k)


def _build_all(builder: Callable[[int], DerivationField], ks) -> List[DerivationField]:
    return ordered_map(builder, list(ks))


def catalan_basis(l: int, m: int) -> List[DerivationField]:
    """(theta_E, theta_0, homogenized zeta_0^m, ..., zeta_{l-2}^m) on the coned ambient"""
    _check_dimension(l)
    _check_range('m', m, 0)
    zetas = _build_all(lambda k: homogenize(zeta(l, m, k)), range(l - 1))
    return [theta_E(l), theta_0(l, coned=True)] + zetas


def shi_basis(l: int, m: int) -> List[DerivationField]:
    """(theta_E, theta_0, homogenized tau_k^m - tau_{k+1}^m for k = 1..l-1)"""
    _check_dimension(l)
    _check_range('m', m, 1)
    taus = _build_all(lambda k: tau(l, m, k), range(1, l + 1))
    differences = [homogenize(taus[k] - taus[k + 1]) for k in range(l - 1)]
    return [theta_E(l), theta_0(l, coned=True)] + differences


def braid_odd_basis(l: int, m: int) -> List[DerivationField]:
    """(theta_0, eta_0^m, ..., eta_{l-2}^m), a basis of D(B_l, 2m + 1)"""
    _check_dimension(l)
    _check_range('m', m, 0)
    return [theta_0(l)] + _build_all(lambda k: eta(l, m, k), range(l - 1))


def braid_even_basis(l: int, m: int) -> List[DerivationField]:
    """(theta_0, sigma_1^m - sigma_2^m, ..., sigma_{l-1}^m - sigma_l^m), a basis of D(B_l, 2m)"""
    _check_dimension(l)
    _check_range('m', m, 1)
    sigmas = _build_all(lambda k: sigma(l, m, k), range(1, l + 1))
    return [theta_0(l)] + [sigmas[k] - sigmas[k + 1] for k in range(l - 1)]


def build_basis(kind, l: int, m: int) -> List[DerivationField]:
    kind = BasisKind(kind)
    builders = {
        BasisKind.CAT: catalan_basis,
        BasisKind.SHI: shi_basis,
        BasisKind.BRAID_ODD: braid_odd_basis,
        BasisKind.BRAID_EVEN: braid_even_basis,
    }
    logger.info(f"Building {kind.value} basis for l={l}, m={m}")
    return builders[kind](l, m)


def expected_exponents(kind, l: int, m: int) -> List[int]:
    """Degrees of the basis fields, in basis order"""
    kind = BasisKind(kind)
    _check_dimension(l)
    _check_range('m', m, 1 if kind in (BasisKind.SHI, BasisKind.BRAID_EVEN) else 0)
    if kind is BasisKind.CAT:
        return [1, 0] + [m * l + 1 + k for k in range(l - 1)]
    if kind is BasisKind.SHI:
        return [1, 0] + [m * l] * (l - 1)
    if kind is BasisKind.BRAID_ODD:
        return [0] + [m * l + 1 + k for k in range(l - 1)]
    return [0] + [m * l] * (l - 1)
