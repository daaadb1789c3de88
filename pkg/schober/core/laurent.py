"""Integer Laurent polynomials in one character t, and reduction into windows."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Tuple

from sympy import ImmutableMatrix
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from schober.config.config import Config
from schober.errors import BadModulusError, DimensionMismatchError, ExponentOverflowError

logger = logging.getLogger(__name__)

EXPONENT_MAX = Config.MAX_LAURENT_EXPONENT
EXPONENT_MIN = -EXPONENT_MAX - 1

Window = Tuple[int, int]


def _check_exponent(e: int) -> int:
    if e < EXPONENT_MIN or e > EXPONENT_MAX:
        raise ExponentOverflowError(f'Exponent {e} is outside the signed 64-bit range', exponent=e)
    return e


def _trim(terms: Mapping[int, int]) -> dict:
    return {int(k): int(v) for k, v in terms.items() if v != 0}


@dataclass(frozen=True)
class LaurentPoly:
    """Finite sum of c_e t^e with integer coefficients; zero terms are never stored"""
    terms: Tuple[Tuple[int, int], ...] = field(default=())

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, int]) -> 'LaurentPoly':
        trimmed = _trim(coeffs)
        for e in trimmed:
            _check_exponent(e)
        return cls(tuple(sorted(trimmed.items())))

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> 'LaurentPoly':
        return cls.from_dict({e: c})

    @classmethod
    def from_vector(cls, lo: int, coeffs: Sequence[int]) -> 'LaurentPoly':
        return cls.from_dict({lo + k: int(c) for k, c in enumerate(coeffs)})

    def as_dict(self) -> dict:
        return dict(self.terms)

    def coefficient(self, e: int) -> int:
        return self.as_dict().get(e, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def valuation(self) -> int:
        if not self.terms:
            raise ValueError('Zero polynomial has no valuation')
        return self.terms[0][0]

    def degree(self) -> int:
        if not self.terms:
            raise ValueError('Zero polynomial has no degree')
        return self.terms[-1][0]

    def span(self) -> int:
        """Degree minus valuation."""
        return self.degree() - self.valuation()

    def leading(self) -> int:
        return self.terms[-1][1]

    def trailing(self) -> int:
        return self.terms[0][1]

    def coefficient_vector(self, lo: int, hi: int) -> list[int]:
        d = self.as_dict()
        return [d.get(e, 0) for e in range(lo, hi + 1)]

    def shift(self, k: int) -> 'LaurentPoly':
        """Multiply by t^k."""
        return LaurentPoly.from_dict({_check_exponent(e + k): c for e, c in self.terms})

    def substitute_inverse(self) -> 'LaurentPoly':
        """t -> t^{-1}."""
        return LaurentPoly.from_dict({-e: c for e, c in self.terms})

    def __add__(self, other: 'LaurentPoly') -> 'LaurentPoly':
        d = self.as_dict()
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return LaurentPoly.from_dict(d)

    def __neg__(self) -> 'LaurentPoly':
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: 'LaurentPoly') -> 'LaurentPoly':
        return self + (-other)

    def __mul__(self, other) -> 'LaurentPoly':
        if isinstance(other, int):
            return LaurentPoly.from_dict({e: c * other for e, c in self.terms})
        out: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = _check_exponent(e1 + e2)
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly.from_dict(out)

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.terms:
            return '0'
        parts = []
        for e, c in reversed(self.terms):
            mono = '' if e == 0 else ('t' if e == 1 else f't^{e}')
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f'-{mono}')
            else:
                parts.append(f'{c}{mono}')
        return ' + '.join(parts).replace('+ -', '- ')


def product_of(factors: Iterable[LaurentPoly]) -> LaurentPoly:
    result = LaurentPoly.monomial(0)
    for f in factors:
        result = result * f
    return result


def one_minus_t_power(k: int) -> LaurentPoly:
    """1 - t^k."""
    return LaurentPoly.from_dict({0: 1}) - LaurentPoly.monomial(k)


def window_of(lo: int, modulus: LaurentPoly) -> Window:
    """The reduction window starting at ``lo`` for ``modulus``."""
    return lo, lo + modulus.span() - 1


def _check_modulus(modulus: LaurentPoly, window: Window) -> None:
    if modulus.is_zero():
        raise BadModulusError('Zero modulus')
    if abs(modulus.leading()) != 1 or abs(modulus.trailing()) != 1:
        raise BadModulusError(
            f'Modulus {modulus} needs leading and trailing coefficients in {{1, -1}}',
            leading=modulus.leading(), trailing=modulus.trailing())
    lo, hi = window
    if hi - lo + 1 != modulus.span():
        raise DimensionMismatchError(
            f'Window [{lo}, {hi}] has {hi - lo + 1} exponents, modulus span is {modulus.span()}')
    _check_exponent(lo)
    _check_exponent(hi)


@lru_cache(maxsize=64)
def _step_matrices(modulus: LaurentPoly, window: Window) -> Tuple[DomainMatrix, DomainMatrix]:
    """Multiplication by t and by t^-1 on the window basis t^lo .. t^hi."""
    lo, hi = window
    d = hi - lo + 1
    c = modulus.coefficient_vector(modulus.valuation(), modulus.degree())
    lead, trail = modulus.leading(), modulus.trailing()
    up = [[ZZ(0)] * d for _ in range(d)]
    down = [[ZZ(0)] * d for _ in range(d)]
    for j in range(d - 1):
        up[j + 1][j] = ZZ(1)
        down[j][j + 1] = ZZ(1)
    # t^(hi+1) and t^(lo-1) written back into the window through the modulus
    for i in range(d):
        up[i][d - 1] = ZZ(-lead * c[i])
        down[i][0] = ZZ(-trail * c[i + 1])
    return DomainMatrix(up, (d, d), ZZ), DomainMatrix(down, (d, d), ZZ)


def laurent_reduce(p: LaurentPoly, modulus: LaurentPoly, window: Window) -> LaurentPoly:
    """Representative of p modulo (modulus) supported in the inclusive window [lo, hi].

    The leading and trailing coefficients of the modulus must be units. A term
    t^e outside the window is the first basis vector moved by the |e - lo|-th
    power of the step matrix, so the cost is logarithmic in the exponent.
    """
    _check_modulus(modulus, window)
    lo, hi = window
    if modulus.span() == 0:
        # A unit modulus generates the whole ring
        return LaurentPoly()
    d = hi - lo + 1
    up, down = _step_matrices(modulus, window)
    vector = [0] * d
    for e, c in p.terms:
        if lo <= e <= hi:
            vector[e - lo] += c
            continue
        power = up ** (e - lo) if e > hi else down ** (lo - e)
        for i, row in enumerate(power.to_list()):
            vector[i] += c * int(row[0])
    return LaurentPoly.from_vector(lo, vector)


def reduction_matrix(modulus: LaurentPoly, source: Window, target: Window) -> ImmutableMatrix:
    """Columns are the reductions of t^e, e in ``source``, as coefficient vectors on ``target``."""
    lo, hi = target
    cols = [laurent_reduce(LaurentPoly.monomial(e), modulus, target).coefficient_vector(lo, hi)
            for e in range(source[0], source[1] + 1)]
    if not cols or hi < lo:
        return ImmutableMatrix.zeros(max(hi - lo + 1, 0), len(cols))
    return ImmutableMatrix([[col[i] for col in cols] for i in range(hi - lo + 1)])
