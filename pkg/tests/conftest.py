"""
Shared fixtures: hypothesis profile and a sympy bridge used as an
independent oracle
"""

from fractions import Fraction

import pytest
import sympy
from hypothesis import settings

from derivations.poly_core import Poly

settings.register_profile('derivations', deadline=None, max_examples=60)
settings.load_profile('derivations')


def poly_to_sympy(p: Poly):
    symbols = sympy.symbols(p.ambient.names()) if p.ambient.vars else ()
    expr = sympy.Integer(0)
    for exps, c in p.terms.items():
        c = Fraction(c)
        term = sympy.Rational(c.numerator, c.denominator)
        for symbol, e in zip(symbols, exps):
            term *= symbol ** e
        expr += term
    return expr


@pytest.fixture(scope='session')
def to_sympy():
    return poly_to_sympy
