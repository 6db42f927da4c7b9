"""Exact rational scalars and their deterministic text renderings.

Every certified quantity in this package is a ``fractions.Fraction`` (always
in lowest terms, positive denominator).  This module adds the small amount of
plumbing the reports need: parsing user-supplied rationals, and rendering a
rational as an exact decimal string without ever touching floating point.
"""

from __future__ import annotations

from fractions import Fraction

Q = Fraction


class RationalParseError(ValueError):
    pass


def parse_rational(text: str) -> Fraction:
    """Parse "p/q", decimal ("0.25") or scientific ("1e-7") notation exactly."""
    s = text.strip()
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        pass
    # Fraction() already accepts decimals and "p/q"; only aEb forms remain.
    try:
        if "e" in s.lower():
            mant, _, exp = s.lower().partition("e")
            return Fraction(mant if mant else "1") * Fraction(10) ** int(exp)
    except (ValueError, ZeroDivisionError):
        pass
    raise RationalParseError(f"cannot parse rational from {text!r}")


def ratio_str(q: Fraction) -> str:
    """Canonical "p/q" rendering ("p" when the denominator is 1)."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def decimal_str(q: Fraction, digits: int = 12) -> str:
    """Exact decimal rendering of ``q`` truncated toward zero after ``digits``.

    Truncation (not rounding) keeps the string a faithful prefix of the exact
    decimal expansion; a trailing "…" marks inexactness.
    """
    q = Fraction(q)
    sign = "-" if q < 0 else ""
    q = abs(q)
    whole, rem = divmod(q.numerator, q.denominator)
    if rem == 0:
        return f"{sign}{whole}"
    scaled = rem * 10**digits
    frac_digits, tail = divmod(scaled, q.denominator)
    s = f"{sign}{whole}.{frac_digits:0{digits}d}"
    return s if tail == 0 else s + "…"


def decimal_fixed(q: Fraction, digits: int) -> str:
    """Decimal rendering rounded half away from zero to exactly ``digits``
    places, computed in integer arithmetic.  Used for coordinate emission,
    where a fixed width matters more than marking inexactness."""
    q = Fraction(q)
    sign = "-" if q < 0 else ""
    q = abs(q)
    scaled = q * 10**digits
    n, d = scaled.numerator, scaled.denominator
    r = (2 * n + d) // (2 * d)
    if r == 0:
        sign = ""
    whole, frac = divmod(r, 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def simplest_in(a: Fraction, b: Fraction) -> Fraction:
    """The smallest-denominator rational in the closed interval [a, b]
    (Stern-Brocot descent).  Used to pick legible exact witnesses."""
    a, b = Fraction(a), Fraction(b)
    if a > b:
        raise ValueError("empty interval")
    if a <= 0 <= b:
        return Fraction(0)
    if b < 0:
        return -simplest_in(-b, -a)
    ca = -((-a.numerator) // a.denominator)  # ceil(a)
    if ca <= b:
        return Fraction(ca)
    q = a.numerator // a.denominator
    return q + 1 / simplest_in(1 / (b - q), 1 / (a - q))


def rounds_to(q: Fraction, printed: str) -> bool:
    """Whether ``printed`` (a decimal literal) is ``q`` correctly rounded
    (half away from zero) to the number of decimal places ``printed`` shows.
    """
    printed = printed.strip()
    if "." not in printed:
        places = 0
    else:
        places = len(printed.split(".")[1])
    target = Fraction(printed)
    scale = Fraction(10) ** places
    scaled = q * scale
    n, d = scaled.numerator, scaled.denominator
    # round half away from zero, exactly
    if n >= 0:
        rounded = (2 * n + d) // (2 * d)
    else:
        rounded = -((-2 * n + d) // (2 * d))
    return Fraction(rounded) / scale == target
