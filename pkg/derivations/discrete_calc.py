"""
Discrete calculus in one variable: difference operator, Bernoulli
polynomials, indefinite/definite summation, falling powers, and the
continuous antiderivative used for the integral formulas.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import List, Optional, Tuple

from derivations.errors import AmbientMismatchError, InvalidBoundError, InvalidParameterError
from derivations.poly_core import Ambient, Poly, T, VarId, VarKind, substitute

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def bernoulli_coefficients(n: int) -> Tuple[Fraction, ...]:
    """
    Coefficients of B_n, constant term first.

    Solves sum_{k=0}^{n} C(n+1, k) B_k(x) = (n+1) x^n for B_n, seeded with B_0 = 1.
    """
    if n < 0:
        raise InvalidParameterError(f"Bernoulli index must be >= 0, got {n}")
    if n == 0:
        return (Fraction(1),)
    acc = [Fraction(0)] * (n + 1)
    for k in range(n):
        weight = comb(n + 1, k)
        for i, c in enumerate(bernoulli_coefficients(k)):
            acc[i] += weight * c
    out = [-c / (n + 1) for c in acc]
    out[n] = Fraction(1)
    return tuple(out)


def _univariate(coeffs, v: VarId, ambient: Ambient) -> Poly:
    pos = ambient.index(v)
    width = len(ambient.vars)
    terms = {}
    for i, c in enumerate(coeffs):
        if c:
            exps = [0] * width
            exps[pos] = i
            terms[tuple(exps)] = c
    return Poly(ambient, terms)


def bernoulli(n: int, wrt: VarId = T, ambient: Optional[Ambient] = None) -> Poly:
    """The Bernoulli polynomial B_n in the variable wrt (monic, degree n)"""
    if ambient is None:
        if wrt.kind is VarKind.X:
            ambient = Ambient(wrt.index)
        else:
            ambient = Ambient(0, has_t=wrt.kind is VarKind.T, has_z=wrt.kind is VarKind.Z)
    return _univariate(bernoulli_coefficients(n), wrt, ambient)


@dataclass(frozen=True)
class BernoulliTable:
    entries: Tuple[Poly, ...]

    @classmethod
    def build(cls, N: int) -> BernoulliTable:
        if N < 0:
            raise InvalidParameterError(f"Table size must be >= 0, got {N}")
        logger.debug(f"Building Bernoulli table up to B_{N}")
        return cls(tuple(bernoulli(n) for n in range(N + 1)))

    def __getitem__(self, n: int) -> Poly:
        return self.entries[n]

    def __len__(self) -> int:
        return len(self.entries)

    def to_list(self) -> List[dict]:
        return [p.to_dict() for p in self.entries]


def including(p: Poly, wrt: VarId) -> Poly:
    """Re-express p over an ambient that contains wrt"""
    if wrt in p.ambient:
        return p
    if wrt.kind is VarKind.T:
        return p.to_ambient(p.ambient.with_t())
    if wrt.kind is VarKind.Z:
        return p.to_ambient(p.ambient.with_z())
    if p.ambient.dim == 0:
        return p.to_ambient(Ambient(wrt.index, p.ambient.has_t, p.ambient.has_z))
    raise AmbientMismatchError(f"Variable {wrt} is not in ambient {p.ambient.names()}")


def _shifted(p: Poly, wrt: VarId, offset: int) -> Poly:
    p = including(p, wrt)
    return substitute(p, wrt, Poly.var(p.ambient, wrt) + offset)


def difference(p: Poly, wrt: VarId = T) -> Poly:
    """Forward difference: p(wrt + 1) - p(wrt)"""
    p = including(p, wrt)
    return _shifted(p, wrt, 1) - p


def indefinite_sum(p: Poly, wrt: VarId = T) -> Poly:
    """
    Antidifference normalized by the Bernoulli convention:
    each wrt^n is sent to B_{n+1}(wrt) / (n + 1), other variables ride along.
    """
    p = including(p, wrt)
    ambient = p.ambient
    result = Poly.zero(ambient)
    for n, c in sorted(p.by_power(wrt).items()):
        antidiff = _univariate(bernoulli_coefficients(n + 1), wrt, ambient).scale(Fraction(1, n + 1))
        result = result + c * antidiff
    return result


def antiderivative(p: Poly, wrt: VarId = T) -> Poly:
    """Integral with zero constant: wrt^n is sent to wrt^(n+1) / (n + 1)"""
    p = including(p, wrt)
    result = Poly.zero(p.ambient)
    for n, c in p.by_power(wrt).items():
        result = result + c.shift(wrt, n + 1).scale(Fraction(1, n + 1))
    return result


def _check_bounds(wrt: VarId, a, b, ambient: Ambient) -> Tuple[Poly, Poly]:
    bounds = []
    for bound in (a, b):
        if not isinstance(bound, Poly):
            bound = Poly.constant(ambient, bound)
        if bound.uses(wrt):
            raise InvalidBoundError(f"Bound {bound.to_text()} depends on {wrt}")
        bounds.append(bound)
    return bounds[0], bounds[1]


def evaluate_between(F: Poly, wrt: VarId, a, b) -> Poly:
    """F(b) - F(a) for an antidifference or antiderivative F"""
    a, b = _check_bounds(wrt, a, b, F.ambient)
    return substitute(F, wrt, b) - substitute(F, wrt, a)


def definite_sum(p: Poly, wrt: VarId, a, b) -> Poly:
    """Discrete integral from a to b; for b - a = n > 0 it is p(a) + ... + p(b - 1)"""
    _check_bounds(wrt, a, b, p.ambient)
    return evaluate_between(indefinite_sum(p, wrt), wrt, a, b)


def definite_integral(p: Poly, wrt: VarId, a, b) -> Poly:
    _check_bounds(wrt, a, b, p.ambient)
    return evaluate_between(antiderivative(p, wrt), wrt, a, b)


def falling_power(p: Poly, wrt: VarId, n: int) -> Poly:
    """p(wrt) p(wrt - 1) ... p(wrt - n + 1); the empty product 1 when n = 0"""
    if n < 0:
        raise InvalidParameterError(f"Falling power order must be >= 0, got {n}")
    p = including(p, wrt)
    result = Poly.one(p.ambient)
    for i in range(n):
        result = result * (_shifted(p, wrt, -i) if i else p)
    return result
