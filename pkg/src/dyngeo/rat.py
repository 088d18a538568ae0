"""Exact rational scalars and integer-homogeneous helpers.

Public values are `fractions.Fraction` (canonical reduced form, positive
denominator, exact comparisons).  Hot paths never touch Fraction: planes
and points are normalized once into integer homogeneous tuples and all
predicates run on plain ints.

Wire format for rationals is a string: optional sign, decimal integer,
optional "/" and positive decimal denominator ("-7/3", "42").
"""

from fractions import Fraction
from math import gcd

Rat = Fraction

_RAT_CACHE_LIMIT = 1 << 62


def rat(value) -> Fraction:
    """Coerce ints, strings, and Fractions to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rat_str(value) -> str:
    """Canonical wire form: 'n' or 'n/d' with d > 0."""
    f = rat(value)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def homog2(x: Fraction, y: Fraction):
    """(x, y) as (X, Y, W) with a common positive integer denominator."""
    w = (x.denominator * y.denominator) // gcd(x.denominator, y.denominator)
    return (x.numerator * (w // x.denominator),
            y.numerator * (w // y.denominator), w)


def homog3(x: Fraction, y: Fraction, z: Fraction):
    """(x, y, z) as (X, Y, Z, W), W > 0."""
    dxy = (x.denominator * y.denominator) // gcd(x.denominator, y.denominator)
    w = (dxy * z.denominator) // gcd(dxy, z.denominator)
    return (x.numerator * (w // x.denominator),
            y.numerator * (w // y.denominator),
            z.numerator * (w // z.denominator), w)


def homog_reduce(t):
    """Divide a homogeneous tuple through by the gcd, keep last entry > 0."""
    g = 0
    for v in t:
        g = gcd(g, v)
    if g == 0:
        return t
    if t[-1] < 0:
        g = -g
    return tuple(v // g for v in t)


def frac3(t):
    """Integer homogeneous (X, Y, Z, W) back to a Fraction triple."""
    x, y, z, w = t
    return (Fraction(x, w), Fraction(y, w), Fraction(z, w))
