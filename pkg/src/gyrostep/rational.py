"""Exact rational parsing and formatting."""

from __future__ import annotations

from decimal import Decimal, InvalidOperation
from fractions import Fraction

from .errors import SchemaError


def as_rational(value) -> Fraction:
    """Convert ints, Fractions, Decimals and strings ("p/q" or a finite
    decimal such as "0.125") to a Fraction. Floats are refused."""
    if isinstance(value, bool):
        raise SchemaError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise SchemaError(f"not a finite decimal: {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        s = value.strip()
        try:
            if "/" in s:
                return Fraction(s)
            return Fraction(Decimal(s)) if Decimal(s).is_finite() else _bad(value)
        except (ValueError, ZeroDivisionError, InvalidOperation):
            raise SchemaError(f"cannot parse rational {value!r}") from None
    raise SchemaError(f"not a rational: {value!r} (pass a string like '1/3' or '0.25')")


def _bad(value):
    raise SchemaError(f"cannot parse rational {value!r}")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
