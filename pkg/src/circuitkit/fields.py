"""Scalar arithmetic for the three supported field modes.

Every matrix/point container in this package carries a ``field`` tag:

* ``"rational"``          -- exact ``fractions.Fraction`` entries,
* ``"gaussian_rational"`` -- exact a+bi with rational a, b,
* ``"complex_float"``     -- 64-bit ``complex`` entries plus a tolerance.

Arithmetic never crosses modes; mixing is a construction-time error.
"""

from __future__ import annotations

from fractions import Fraction

RATIONAL = "rational"
GAUSSIAN = "gaussian_rational"
COMPLEX_FLOAT = "complex_float"

FIELD_MODES = (RATIONAL, GAUSSIAN, COMPLEX_FLOAT)

EXACT_MODES = (RATIONAL, GAUSSIAN)


class FieldModeError(ValueError):
    """Raised on unknown field modes or mode mixing."""


class GaussianRational:
    """Exact Gaussian rational a + b*i, with Fraction real/imaginary parts.

    Immutable; supports mixed arithmetic with int and Fraction.  Division is
    exact (multiply by conjugate over the squared modulus).
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.abs_sq()
        if n == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def abs_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __complex__(self):
        return complex(float(self.re), float(self.im))


I_GAUSS = GaussianRational(0, 1)


def coerce_scalar(x, field):
    """Coerce ``x`` into the scalar type of ``field``.

    Accepts int/Fraction in exact modes, int/float/complex in float mode,
    tuples (re, im) for the complex-valued modes, and strings like "p/q".
    """
    if field == RATIONAL:
        if isinstance(x, (int, str)):
            return Fraction(x)
        if isinstance(x, Fraction):
            return x
        raise FieldModeError(f"cannot coerce {x!r} into a rational entry")
    if field == GAUSSIAN:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, str, Fraction)):
            return GaussianRational(Fraction(x))
        if isinstance(x, (tuple, list)) and len(x) == 2:
            return GaussianRational(Fraction(x[0]), Fraction(x[1]))
        raise FieldModeError(f"cannot coerce {x!r} into a gaussian rational entry")
    if field == COMPLEX_FLOAT:
        if isinstance(x, (int, float, complex)):
            return complex(x)
        if isinstance(x, Fraction):
            return complex(float(x), 0.0)
        if isinstance(x, GaussianRational):
            return complex(x)
        if isinstance(x, (tuple, list)) and len(x) == 2:
            return complex(float(x[0]), float(x[1]))
        raise FieldModeError(f"cannot coerce {x!r} into a complex float entry")
    raise FieldModeError(f"unknown field mode {field!r}")


def zero(field):
    return coerce_scalar(0, field)


def one(field):
    return coerce_scalar(1, field)


def conj(x, field):
    if field == RATIONAL:
        return x
    return x.conjugate()


def abs_sq(x, field):
    """Squared modulus; exact Fraction in exact modes, float otherwise."""
    if field == RATIONAL:
        return x * x
    if field == GAUSSIAN:
        return x.abs_sq()
    return x.real * x.real + x.imag * x.imag


def scalar_to_float(x, field):
    if field == COMPLEX_FLOAT:
        return x
    if field == RATIONAL:
        return float(x)
    return complex(x)


def scalar_to_json(x, field):
    if field == RATIONAL:
        return str(x)
    if field == GAUSSIAN:
        return [str(x.re), str(x.im)]
    return [x.real, x.imag]


def scalar_from_json(v, field):
    if field == RATIONAL:
        if isinstance(v, (str, int)):
            return Fraction(v)
        raise FieldModeError(f"rational entries are strings like 'p/q', got {v!r}")
    if field == GAUSSIAN:
        if isinstance(v, (str, int)):
            return GaussianRational(Fraction(v))
        if isinstance(v, (list, tuple)) and len(v) == 2:
            return GaussianRational(Fraction(v[0]), Fraction(v[1]))
        raise FieldModeError(f"gaussian entries are ['p/q','r/s'] pairs, got {v!r}")
    if field == COMPLEX_FLOAT:
        if isinstance(v, (int, float)):
            return complex(v)
        if isinstance(v, (list, tuple)) and len(v) == 2:
            return complex(float(v[0]), float(v[1]))
        raise FieldModeError(f"complex entries are [re, im] pairs, got {v!r}")
    raise FieldModeError(f"unknown field mode {field!r}")
