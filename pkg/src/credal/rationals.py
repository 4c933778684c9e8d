"""Small helpers for exact rational arithmetic.

Everything in this package is computed with :class:`fractions.Fraction`.
Floats are rejected at the boundaries: a float that survived into the
pipeline would silently poison every downstream equality test.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["rat", "rat_seq", "rat_matrix"]


def rat(value) -> Fraction:
    """Coerce ``value`` (Fraction, int or string like ``"2/3"``) to Fraction.

    Floats are refused on purpose; pass a string or Fraction instead.
    """
    if isinstance(value, float):
        raise TypeError("refusing float %r; use Fraction or a 'p/q' string" % (value,))
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def rat_seq(values) -> tuple[Fraction, ...]:
    return tuple(rat(v) for v in values)


def rat_matrix(rows) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(rat_seq(row) for row in rows)
