"""
Tests for the field families, homogenization and the packaged bases
"""

from fractions import Fraction

import pytest

from derivations.arrangement import (
    DerivationField,
    braid,
    catalan,
    field_apply,
    member,
    shi,
    shi_cone,
)
from derivations.basis_builder import (
    BasisKind,
    FieldFamily,
    FieldFamilySpec,
    braid_even_basis,
    braid_odd_basis,
    build_basis,
    catalan_basis,
    eta,
    expected_exponents,
    g_k_poly,
    g_km_poly,
    g_poly,
    homogenize,
    restrict_z0,
    shi_basis,
    sigma,
    tau,
    theta_0,
    theta_E,
    zeta,
)
from derivations.errors import InvalidDimensionError, InvalidInputError, InvalidParameterError
from derivations.poly_core import Ambient, Poly, T, VarKind, Z, substitute, x

A2 = Ambient(2)
C2 = Ambient(2, has_z=True)


def xs(ambient):
    return [Poly.var(ambient, v) for v in ambient.vars if v.kind is VarKind.X]


def along_root(coefficient, ambient=A2):
    """coefficient * (d/dx1 - d/dx2)"""
    return DerivationField(ambient, {x(1): coefficient, x(2): -coefficient})


def swap_x1_x2(p: Poly) -> Poly:
    lifted = p.to_ambient(p.ambient.with_z())
    z = Poly.var(lifted.ambient, Z)
    x1, x2 = Poly.var(lifted.ambient, x(1)), Poly.var(lifted.ambient, x(2))
    swapped = substitute(substitute(substitute(lifted, x(1), z), x(2), x1), Z, x2)
    return swapped.to_ambient(p.ambient)


def test_g_polynomials():
    A = Ambient(3, has_t=True)
    t = Poly.var(A, T)
    x1, x2, x3 = (Poly.var(A, x(i)) for i in (1, 2, 3))
    assert g_poly(3) == (t - x1) * (t - x2) * (t - x3)
    assert g_k_poly(3, 2) == (t - x1) * (t - x3)
    for k, xk in enumerate((x1, x2, x3), start=1):
        assert (t - xk) * g_k_poly(3, k) == g_poly(3)
    B = Ambient(2, has_t=True)
    t, y1, y2 = Poly.var(B, T), Poly.var(B, x(1)), Poly.var(B, x(2))
    assert g_poly(2) == t ** 2 - (y1 + y2) * t + y1 * y2
    assert g_k_poly(2, 1) == t - y2


def test_g_km_polynomials():
    B = Ambient(2, has_t=True)
    t, y1, y2 = Poly.var(B, T), Poly.var(B, x(1)), Poly.var(B, x(2))
    assert g_km_poly(2, 1, 1) == t - y2
    assert g_km_poly(2, 1, 2) == t - y1 + 1
    assert g_km_poly(2, 1, 0) == (t - y1) * (t - y2)
    for l, m, k in [(2, 2, 1), (3, 1, 1), (3, 2, 2), (3, 2, 3)]:
        assert g_km_poly(l, m, k).total_degree() == m * l - 1
    # k = 0 keeps all l shifted factors
    assert g_km_poly(3, 2, 0).total_degree() == 6


def test_index_errors():
    with pytest.raises(InvalidParameterError):
        g_k_poly(3, 4)
    with pytest.raises(InvalidParameterError):
        g_km_poly(2, 0, 1)
    with pytest.raises(InvalidParameterError):
        sigma(2, 1, 3)
    with pytest.raises(InvalidParameterError):
        tau(2, 0, 1)
    with pytest.raises(InvalidParameterError):
        eta(2, -1, 0)
    with pytest.raises(InvalidDimensionError):
        zeta(1, 1, 0)


def test_theta_fields():
    x1, x2 = xs(C2)
    z = Poly.var(C2, Z)
    assert theta_0(2).coefficient_list() == [1, 1]
    assert theta_0(2, coned=True).coeff(Z) == 0
    euler = theta_E(2)
    assert euler.coeff(Z) == z
    assert euler.coeff(x(1)) == x1
    for p, d in [(x1 - x2 + z, 1), (x1 * z - x2 ** 2, 2)]:
        assert field_apply(euler, p) == d * p


def test_eta_closed_form():
    x1, x2 = xs(A2)
    assert eta(2, 1, 0) == along_root((x1 - x2) ** 3 / 6)


def test_eta_with_constant_integrand():
    A3 = Ambient(3)
    ys = xs(A3)
    expected = DerivationField(A3, {
        x(i): sum((ys[j] - ys[i - 1] for j in range(3)), Poly.zero(A3)) for i in (1, 2, 3)
    })
    assert eta(3, 0, 0) == expected


def test_sigma_difference_closed_form():
    x1, x2 = xs(A2)
    assert sigma(2, 1, 1) - sigma(2, 1, 2) == along_root(-(x1 - x2) ** 2)
    assert member(sigma(2, 1, 1) - sigma(2, 1, 2), braid(2, 2))


def test_zeta_closed_form():
    x1, x2 = xs(A2)
    u = x2 - x1
    assert zeta(2, 1, 0) == along_root((u - u ** 3) / 6)


def test_tau_difference_closed_form():
    x1, x2 = xs(A2)
    w = x1 - x2
    assert tau(2, 1, 1) - tau(2, 1, 2) == along_root(-(w - 1) * w)


@pytest.mark.parametrize('l,m,k', [(2, 1, 0), (2, 2, 1), (3, 1, 0), (3, 1, 1), (3, 2, 0)])
def test_degree_law(l, m, k):
    degree = k + m * l + 1
    assert eta(l, m, k).homogeneous_degree() == degree
    assert zeta(l, m, k).degree() == degree


@pytest.mark.parametrize('l,m,k', [(2, 1, 1), (3, 1, 2), (3, 2, 3)])
def test_sigma_and_tau_degrees(l, m, k):
    assert sigma(l, m, k).homogeneous_degree() == m * l
    assert tau(l, m, k).degree() == m * l


@pytest.mark.parametrize('field', [eta(3, 1, 1), zeta(3, 1, 0), zeta(3, 2, 1)])
def test_families_are_symmetric(field):
    """Swapping x1 and x2 exchanges the first two coefficients and fixes the third"""
    assert swap_x1_x2(field.coeff(x(1))) == field.coeff(x(2))
    assert swap_x1_x2(field.coeff(x(3))) == field.coeff(x(3))


def test_homogenize():
    x1, x2 = xs(C2)
    z = Poly.var(C2, Z)
    u = x2 - x1
    assert homogenize(zeta(2, 1, 0)).coeff(x(1)) == (u * z ** 2 - u ** 3) / 6
    assert homogenize(eta(2, 1, 0)) == eta(2, 1, 0)
    assert homogenize(DerivationField(A2)) == DerivationField(C2)
    with pytest.raises(InvalidInputError):
        homogenize(theta_E(2))


def test_homogenized_tau_difference():
    x1, x2 = xs(C2)
    z = Poly.var(C2, Z)
    delta = homogenize(tau(2, 1, 1) - tau(2, 1, 2))
    assert field_apply(delta, x1 - x2) == -2 * (x1 - x2) * (x1 - x2 - z)
    assert member(delta, shi_cone(2, 1))


def test_restrict_z0():
    A3 = Ambient(3)
    euler = restrict_z0(theta_E(3))
    assert euler == DerivationField(A3, {v: Poly.var(A3, v) for v in A3.coordinates})
    assert euler.ambient == A3
    with pytest.raises(InvalidInputError):
        restrict_z0(eta(2, 1, 0))


@pytest.mark.parametrize('l,m', [(2, 1), (3, 1), (3, 2)])
def test_restricted_tau_differences_are_sigma_differences(l, m):
    for i in range(1, l):
        restricted = restrict_z0(homogenize(tau(l, m, i) - tau(l, m, i + 1)))
        assert restricted == sigma(l, m, i) - sigma(l, m, i + 1)


@pytest.mark.parametrize('l,m', [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_individual_tau_fields_lie_in_shi(l, m):
    for k in range(l + 1):
        delta = tau(l, m, k)
        assert member(delta, shi(l, m))
        assert member(homogenize(delta), shi_cone(l, m))


@pytest.mark.parametrize('l,m', [(2, 1), (3, 1), (3, 2)])
def test_raw_zeta_fields_lie_in_catalan(l, m):
    for k in range(l - 1):
        assert member(zeta(l, m, k), catalan(l, m))


def test_eta_in_odd_braid_multiarrangement():
    for k in (0, 1):
        assert member(eta(3, 1, k), braid(3, 3))


def test_basis_shapes_and_degrees():
    degrees = [f.homogeneous_degree() for f in catalan_basis(2, 1)]
    assert degrees == [1, 0, 3]
    assert [f.homogeneous_degree() for f in catalan_basis(3, 1)] == [1, 0, 4, 5]
    assert [f.homogeneous_degree() for f in shi_basis(3, 1)] == [1, 0, 3, 3]
    assert len(braid_odd_basis(4, 1)) == 4
    assert len(braid_even_basis(4, 1)) == 4


def test_small_bases_closed_forms():
    x1, x2 = xs(C2)
    z = Poly.var(C2, Z)
    w = x1 - x2
    assert shi_basis(2, 1) == [theta_E(2), theta_0(2, coned=True), along_root(-w * (w - z), C2)]
    y1, y2 = xs(A2)
    assert braid_odd_basis(2, 1) == [theta_0(2), along_root((y1 - y2) ** 3 / 6)]
    assert braid_even_basis(2, 1) == [theta_0(2), along_root(-(y1 - y2) ** 2)]


def test_build_basis_dispatch():
    assert build_basis('braid-odd', 2, 1) == braid_odd_basis(2, 1)
    assert build_basis(BasisKind.SHI, 2, 1) == shi_basis(2, 1)
    with pytest.raises(InvalidParameterError):
        build_basis('shi', 2, 0)
    with pytest.raises(ValueError):
        build_basis('bogus', 2, 1)


def test_expected_exponents():
    assert expected_exponents('cat', 3, 1) == [1, 0, 4, 5]
    assert expected_exponents('shi', 3, 2) == [1, 0, 6, 6]
    assert expected_exponents('braid-odd', 2, 1) == [0, 3]
    assert expected_exponents('braid-even', 3, 1) == [0, 3, 3]


def test_field_family_spec():
    spec = FieldFamilySpec(FieldFamily.TAU, 3, 1, 0)
    assert spec.build() == tau(3, 1, 0)
    assert FieldFamilySpec(FieldFamily.ZETA, 2, 0, 0).build() == zeta(2, 0, 0)


def test_zeta_with_m_zero_uses_empty_falling_power():
    """With g to the falling power 0 equal to 1 the sum of 1 over [x_i, x_j) is x_j - x_i"""
    assert zeta(3, 0, 0) == eta(3, 0, 0)
    y1, y2 = xs(A2)
    assert zeta(2, 0, 1).coeff(x(1)) == eta(2, 0, 1).coeff(x(1)) + Fraction(1, 2) * (y1 - y2)
