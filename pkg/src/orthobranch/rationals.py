"""Exact rational parsing/formatting helpers.

Values are stdlib `fractions.Fraction` throughout the package (reduced form,
arbitrary precision).  The wire format is "p/q", or just "p" when q = 1.
"""
from __future__ import annotations

from fractions import Fraction


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" into a Fraction. Raises ValueError on junk."""
    return Fraction(text.strip())


def rat_str(q) -> str:
    """Format a rational as "p/q", or "p" when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_weight(text: str):
    """Parse a comma-separated weight string like "9/2,5/2" into a tuple of Fractions."""
    text = text.strip()
    if not text:
        return ()
    return tuple(parse_rational(part) for part in text.split(","))


def weight_str(coords) -> str:
    return ",".join(rat_str(c) for c in coords)
