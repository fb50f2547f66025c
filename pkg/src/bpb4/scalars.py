"""Scalar backend helpers.

Two backends coexist: exact rationals (``fractions.Fraction``, the default)
and IEEE doubles.  Values carry their backend; integers are coerced to
``Fraction`` so exactness is never lost by accident.  Mixed exact/float
expressions degrade to float, and every tolerance-sensitive check asks
``tol_of`` which backend it is running on.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

Scalar = Union[Fraction, float]

#: Additive tolerance used by all float-backend membership and unit checks.
FLOAT_TOL = 1e-9


def coerce(value) -> Scalar:
    """Normalize a raw number: ints become Fractions, floats stay floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return value
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"not a scalar: {value!r}")


def is_exact(*values) -> bool:
    return all(isinstance(v, (int, Fraction)) for v in values)


def tol_of(*values) -> Scalar:
    """Zero for exact inputs, FLOAT_TOL as soon as any float is involved."""
    return Fraction(0) if is_exact(*values) else FLOAT_TOL


def parse_scalar(text, backend: str = "rational") -> Scalar:
    """Parse a JSON-level number: "p/q" strings, ints, or floats."""
    if backend not in ("rational", "float"):
        raise ValueError(f"unknown backend {backend!r}")
    if isinstance(text, str):
        value = Fraction(text)
    elif isinstance(text, (int, Fraction)):
        value = Fraction(text)
    elif isinstance(text, float):
        # A float literal in a rational-backend file is taken at face value.
        value = Fraction(text).limit_denominator(10**12) if backend == "rational" else text
    else:
        raise TypeError(f"not a scalar literal: {text!r}")
    return float(value) if backend == "float" else coerce(value)


def scalar_to_json(value: Scalar):
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return f"{value}/1"
    return float(value)


def parse_scalars(values: Iterable, backend: str = "rational") -> tuple:
    return tuple(parse_scalar(v, backend) for v in values)
