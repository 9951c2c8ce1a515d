"""
Tests for arrangement builders, vector fields and the membership test
"""

import pytest

from derivations.arrangement import (
    Arrangement,
    DerivationField,
    Hyperplane,
    braid,
    catalan,
    catalan_cone,
    cone,
    defining_polynomial,
    field_apply,
    member,
    shi,
    shi_cone,
    ziegler_multirestriction,
)
from derivations.basis_builder import theta_0
from derivations.errors import InvalidDimensionError, InvalidInputError, InvalidParameterError
from derivations.poly_core import Ambient, Poly, Z, x

A2 = Ambient(2)
C2 = Ambient(2, has_z=True)


def var(ambient, i):
    return Poly.var(ambient, x(i))


def test_braid_builder():
    A = braid(2, 3)
    assert len(A) == 1
    assert A.hyperplanes[0].multiplicity == 3
    assert defining_polynomial(A) == (var(A2, 1) - var(A2, 2)) ** 3
    assert len(braid(4, 2)) == 6
    assert all(h.multiplicity == 2 for h in braid(4, 2).hyperplanes)


def test_braid_defining_polynomial():
    A3 = Ambient(3)
    x1, x2, x3 = (var(A3, i) for i in (1, 2, 3))
    assert braid(3, 1).defining_polynomial() == (x1 - x2) * (x1 - x3) * (x2 - x3)


def test_catalan_cone_enumeration():
    x1, x2, z = var(C2, 1), var(C2, 2), Poly.var(C2, Z)
    forms = [h.form for h in catalan_cone(2, 1).hyperplanes]
    assert forms == [x1 - x2 + z, x1 - x2, x1 - x2 - z, z]
    assert defining_polynomial(catalan_cone(2, 1)) == z * (x1 - x2 + z) * (x1 - x2) * (x1 - x2 - z)


def test_shi_cone_enumeration():
    x1, x2, z = var(C2, 1), var(C2, 2), Poly.var(C2, Z)
    assert [h.form for h in shi_cone(2, 1).hyperplanes] == [x1 - x2, x1 - x2 - z, z]


@pytest.mark.parametrize('l,m', [(2, 0), (2, 1), (3, 1), (3, 2), (4, 1)])
def test_hyperplane_counts(l, m):
    pairs = l * (l - 1) // 2
    assert len(catalan_cone(l, m)) == (2 * m + 1) * pairs + 1
    assert len(catalan(l, m)) == (2 * m + 1) * pairs
    if m >= 1:
        assert len(shi_cone(l, m)) == 2 * m * pairs + 1
        assert len(shi(l, m)) == 2 * m * pairs
    assert defining_polynomial(catalan_cone(l, m)).total_degree() == catalan_cone(l, m).total_multiplicity()


def test_catalan_with_m_zero_is_cone_over_braid():
    assert ziegler_multirestriction(catalan_cone(3, 0)) == braid(3, 1)
    assert len(catalan_cone(3, 0)) == 4


def test_builder_errors():
    with pytest.raises(InvalidDimensionError):
        braid(1, 1)
    with pytest.raises(InvalidDimensionError):
        catalan_cone(1, 1)
    with pytest.raises(InvalidParameterError):
        shi_cone(2, 0)
    with pytest.raises(InvalidParameterError):
        braid(3, 0)
    with pytest.raises(InvalidParameterError):
        Hyperplane(var(A2, 1), 0)


def test_hyperplane_normalization():
    h = Hyperplane(var(A2, 2).scale(-2) + var(A2, 1).scale(2))
    assert h.form == var(A2, 1) - var(A2, 2)
    h = Hyperplane(var(A2, 2).scale(-3) + 6)
    assert h.form == var(A2, 2) - 2
    assert not h.is_central()


def test_repeated_hyperplanes_rejected():
    with pytest.raises(InvalidInputError):
        Arrangement(A2, [Hyperplane(var(A2, 1) - var(A2, 2)), Hyperplane(var(A2, 2) - var(A2, 1))])


def test_cone_of_affine_arrangement():
    A = Arrangement(A2, [Hyperplane(var(A2, 1) - 2), Hyperplane(var(A2, 1) + var(A2, 2) + 3)], 'toy')
    coned = cone(A)
    z = Poly.var(C2, Z)
    assert [h.form for h in coned.hyperplanes] == [var(C2, 1) - 2 * z, var(C2, 1) + var(C2, 2) + 3 * z, z]
    assert coned.label == 'ctoy'
    assert coned.is_central()
    with pytest.raises(InvalidInputError):
        cone(coned)


@pytest.mark.parametrize('l,m', [(2, 1), (3, 1), (3, 2)])
def test_ziegler_multirestriction(l, m):
    assert ziegler_multirestriction(catalan_cone(l, m)) == braid(l, 2 * m + 1)
    assert ziegler_multirestriction(shi_cone(l, m)) == braid(l, 2 * m)
    with pytest.raises(InvalidInputError):
        ziegler_multirestriction(braid(l, m))


def test_field_apply():
    x1, x2 = var(A2, 1), var(A2, 2)
    assert field_apply(theta_0(2), x1 - x2) == 0
    assert field_apply(theta_0(2), x1) == 1
    euler = DerivationField(C2, {x(1): var(C2, 1), x(2): var(C2, 2), Z: Poly.var(C2, Z)})
    assert field_apply(euler, Poly.var(C2, Z)) == Poly.var(C2, Z)
    assert field_apply(DerivationField(A2, {x(1): x1}), x1 ** 2) == 2 * x1 ** 2


def test_field_arithmetic_and_equality():
    x1, x2 = var(A2, 1), var(A2, 2)
    d1 = DerivationField(A2, {x(1): x1, x(2): 0})
    d2 = DerivationField(A2, {x(2): x2})
    assert set((d1 + d2).coeffs) == {x(1), x(2)}
    assert d1 - d1 == DerivationField(A2)
    assert not (d1 - d1)
    assert (d1 * x2).coeff(x(1)) == x1 * x2
    assert 3 * d1 == d1 + d1 + d1
    assert d1 + d2 == d2 + d1
    assert DerivationField(C2, {x(1): x1}) == d1
    with pytest.raises(InvalidInputError):
        DerivationField(A2, {Z: 1})


def test_field_dict_round_trip():
    field = DerivationField(C2, {x(1): var(C2, 1) ** 2 / 3, Z: Poly.var(C2, Z)})
    doc = field.to_dict()
    assert doc['coords'] == ['x1', 'x2', 'z']
    assert DerivationField.from_dict(doc) == field


def test_arrangement_dict_round_trip():
    A = shi_cone(3, 1)
    doc = A.to_dict()
    assert doc['label'] == 'cShi(l=3,m=1)'
    assert doc['vars'] == ['x1', 'x2', 'x3', 'z']
    assert Arrangement.from_dict(doc) == A


def test_member_of_braid():
    for l in (2, 3, 4):
        for m in (1, 2, 5):
            assert member(theta_0(l), braid(l, m))


def test_member_failure_witness():
    d1 = DerivationField(A2, {x(1): 1})
    result = member(d1, braid(2, 1))
    assert not result
    assert result.hyperplane.form == var(A2, 1) - var(A2, 2)
    assert result.remainder == 1
    assert result.witness()['remainder'] == {'vars': ['x1', 'x2'], 'terms': [{'c': '1/1', 'e': [0, 0]}]}


def test_member_reports_first_failure_in_order():
    d1 = DerivationField(C2, {x(1): 1})
    result = member(d1, catalan_cone(2, 1))
    assert result.hyperplane.form == var(C2, 1) - var(C2, 2) + Poly.var(C2, Z)


def test_membership_is_a_module_and_monotone():
    x1, x2 = var(A2, 1), var(A2, 2)
    delta = DerivationField(A2, {x(1): (x1 - x2) ** 3, x(2): 0})
    assert member(delta, braid(2, 2))
    assert member(delta, braid(2, 1))
    assert member(delta * (x1 + 7), braid(2, 2))
    assert member(delta + theta_0(2), braid(2, 2))
    assert not member(delta, braid(2, 4))
