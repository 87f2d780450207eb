import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral, Rational
from typing import Iterable, Sequence, Tuple, Union

import numpy as np

from gainrank.exceptions import QuaternionDivisionException, NonUnitGainException
from gainrank.utils.consts import Tower, GainSet, UNIT_TOLERANCE

Scalar = Union[Fraction, float]

logger = logging.getLogger(__name__)


def _coerce(values: Sequence) -> Tuple[Scalar, ...]:
    # one float coefficient puts the whole quaternion in the float tower
    if any(isinstance(v, (float, np.floating)) for v in values):
        return tuple(float(v) for v in values)
    if not all(isinstance(v, Rational) for v in values):
        raise TypeError(f'unsupported quaternion coefficients: {values}')
    return tuple(Fraction(int(v)) if isinstance(v, Integral) else Fraction(v) for v in values)


@dataclass(frozen=True)
class Quaternion:
    """
    q = x0 + x1 i + x2 j + x3 k

    coefficients are either all Fraction (exact tower) or all float (float tower).
    """
    x0: Scalar = Fraction(0)
    x1: Scalar = Fraction(0)
    x2: Scalar = Fraction(0)
    x3: Scalar = Fraction(0)

    def __post_init__(self):
        for name, value in zip(('x0', 'x1', 'x2', 'x3'), _coerce(self.coefficients)):
            object.__setattr__(self, name, value)

    @classmethod
    def exact(cls, x0=0, x1=0, x2=0, x3=0) -> 'Quaternion':
        return cls(Fraction(x0), Fraction(x1), Fraction(x2), Fraction(x3))

    @classmethod
    def approx(cls, x0=0.0, x1=0.0, x2=0.0, x3=0.0) -> 'Quaternion':
        return cls(float(x0), float(x1), float(x2), float(x3))

    @property
    def coefficients(self) -> Tuple[Scalar, Scalar, Scalar, Scalar]:
        return self.x0, self.x1, self.x2, self.x3

    @property
    def tower(self) -> Tower:
        return Tower.FLOAT if isinstance(self.x0, float) else Tower.EXACT

    @property
    def re(self) -> Scalar:
        return self.x0

    def conj(self) -> 'Quaternion':
        return Quaternion(self.x0, -self.x1, -self.x2, -self.x3)

    def norm_sq(self) -> Scalar:
        return self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3

    def inverse(self) -> 'Quaternion':
        n = self.norm_sq()
        if n == 0:
            raise QuaternionDivisionException('zero quaternion has no inverse')
        return Quaternion(self.x0 / n, -self.x1 / n, -self.x2 / n, -self.x3 / n)

    def is_zero(self, tol: float = 0.0) -> bool:
        if self.tower == Tower.EXACT or tol == 0.0:
            return self.x0 == 0 and self.x1 == 0 and self.x2 == 0 and self.x3 == 0
        return self.norm_sq() < tol * tol

    def is_close(self, other: 'Quaternion', tol: float = 0.0) -> bool:
        return (self - other).is_zero(tol)

    def is_unit(self, tol: float = UNIT_TOLERANCE) -> bool:
        if self.tower == Tower.EXACT:
            return self.norm_sq() == 1
        return abs(1.0 - math.sqrt(self.norm_sq())) < tol

    def normalized(self) -> 'Quaternion':
        norm = math.sqrt(float(self.norm_sq()))
        if norm == 0:
            raise QuaternionDivisionException('cannot normalize the zero quaternion')
        return Quaternion.approx(*(float(c) / norm for c in self.coefficients))

    def to_float(self) -> 'Quaternion':
        return Quaternion.approx(*self.coefficients)

    def to_exact(self) -> 'Quaternion':
        return Quaternion.exact(*(Fraction(c) for c in self.coefficients))

    def __neg__(self) -> 'Quaternion':
        return Quaternion(-self.x0, -self.x1, -self.x2, -self.x3)

    def __add__(self, other) -> 'Quaternion':
        other = as_quaternion(other)
        return Quaternion(self.x0 + other.x0, self.x1 + other.x1, self.x2 + other.x2, self.x3 + other.x3)

    __radd__ = __add__

    def __sub__(self, other) -> 'Quaternion':
        return self + (-as_quaternion(other))

    def __rsub__(self, other) -> 'Quaternion':
        return as_quaternion(other) - self

    def __mul__(self, other) -> 'Quaternion':
        if not isinstance(other, Quaternion):
            return Quaternion(self.x0 * other, self.x1 * other, self.x2 * other, self.x3 * other)
        a0, a1, a2, a3 = self.coefficients
        b0, b1, b2, b3 = other.coefficients
        return Quaternion(a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
                          a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
                          a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
                          a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0)

    def __rmul__(self, other) -> 'Quaternion':
        # real scalars commute
        return self * other

    def __truediv__(self, other) -> 'Quaternion':
        if isinstance(other, Quaternion):
            return self * other.inverse()
        if other == 0:
            raise QuaternionDivisionException('division of a quaternion by zero')
        return Quaternion(self.x0 / other, self.x1 / other, self.x2 / other, self.x3 / other)

    def __str__(self):
        return format_quaternion(self)


def as_quaternion(value) -> Quaternion:
    if isinstance(value, Quaternion):
        return value
    return Quaternion(value, 0 * value, 0 * value, 0 * value)


ZERO = Quaternion.exact(0)
ONE = Quaternion.exact(1)
I = Quaternion.exact(0, 1)
J = Quaternion.exact(0, 0, 1)
K = Quaternion.exact(0, 0, 0, 1)

LIPSCHITZ_UNITS = (ONE, -ONE, I, -I, J, -J, K, -K)


def mul(a: Quaternion, b: Quaternion) -> Quaternion:
    return a * b


def conj(q: Quaternion) -> Quaternion:
    return q.conj()


def re(q: Quaternion) -> Scalar:
    return q.re


def norm_sq(q: Quaternion) -> Scalar:
    return q.norm_sq()


def inverse(q: Quaternion) -> Quaternion:
    return q.inverse()


def is_unit(q: Quaternion, tol: float = UNIT_TOLERANCE) -> bool:
    return q.is_unit(tol)


def product(values: Iterable[Quaternion], start: Quaternion = ONE) -> Quaternion:
    """
    ordered left-to-right product
    """
    result = start
    for value in values:
        result = result * value
    return result


def ensure_unit(q: Quaternion, normalize: bool = False) -> Quaternion:
    """
    validates a gain value.
    :param q:
    :param normalize: float tower only - rescale a non-unit value instead of failing
    :return: the gain
    """
    if q.is_unit():
        return q
    if normalize and q.tower == Tower.FLOAT:
        logger.warning(f'normalizing non-unit gain {q}')
        return q.normalized()
    raise NonUnitGainException(f'gain {q} is not a unit quaternion (|q|^2 = {q.norm_sq()})')


def parse_rational(token: str) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f'invalid rational token {token!r}') from e


def format_rational(value: Scalar) -> str:
    if isinstance(value, float):
        return repr(value)
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


def parse_quaternion(tokens: Sequence[str], tower: Tower = Tower.EXACT) -> Quaternion:
    if len(tokens) != 4:
        raise ValueError(f'a quaternion needs 4 coefficients, got {len(tokens)}')
    q = Quaternion.exact(*(parse_rational(t) for t in tokens))
    return q if tower == Tower.EXACT else q.to_float()


def format_quaternion(q: Quaternion) -> str:
    return ' '.join(format_rational(c) for c in q.coefficients)


def random_lipschitz(rng: np.random.Generator) -> Quaternion:
    return LIPSCHITZ_UNITS[int(rng.integers(len(LIPSCHITZ_UNITS)))]


def random_uniform_unit(rng: np.random.Generator) -> Quaternion:
    """
    uniform on the unit 3-sphere: four standard normals, normalized
    """
    while True:
        v = rng.standard_normal(4)
        norm = float(np.linalg.norm(v))
        if norm > 0:
            return Quaternion.approx(*(v / norm))


def random_gain(rng: np.random.Generator, gain_set: GainSet) -> Quaternion:
    if gain_set == GainSet.LIPSCHITZ:
        return random_lipschitz(rng)
    return random_uniform_unit(rng)
