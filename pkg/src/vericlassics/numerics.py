"""Integer division by repeated subtraction and exact exponentiation."""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .contracts import check_assert, check_invariant, check_post, check_pre, current, operation

Rational = Fraction
RationalLike = Union[Fraction, int, str]

__all__ = ["Rational", "div", "power_naive", "power_dc"]


@operation("numerics.div")
def div(n: int, d: int, *, fast: bool = False) -> tuple[int, int]:
    """Quotient and remainder of ``n // d`` for a natural ``n`` and positive ``d``.

    The default path is the textbook subtraction loop; ``fast=True`` uses
    :func:`divmod` and is held to the same postcondition.
    """
    check_pre("d>0", lambda: d > 0)
    check_pre("n>=0", lambda: n >= 0)
    if d <= 0:
        raise ZeroDivisionError("divisor must be positive")
    if fast:
        q, r = divmod(n, d)
    else:
        q, r = 0, n
        while r >= d:
            check_invariant("q*d+r==n", lambda: q * d + r == n)
            q += 1
            r -= d
    check_post("q*d+r==n && r<d", lambda: q * d + r == n and 0 <= r < d)
    return q, r


@operation("numerics.power_naive")
def power_naive(x: RationalLike, n: int) -> Fraction:
    """Product of ``n`` copies of ``x`` (``x**0 == 1``), computed one factor at a time."""
    x = Fraction(x)
    check_pre("n>=0", lambda: n >= 0)
    p = Fraction(1)
    for _ in range(n):
        p *= x
    return p


@operation("numerics.power_dc")
def power_dc(x: RationalLike, n: int) -> Fraction:
    """``x**n`` by repeated squaring; recursion depth is ``O(log n)``."""
    x = Fraction(x)
    check_pre("n>=0", lambda: n >= 0)
    if n == 0:
        p = Fraction(1)
    elif n == 1:
        p = x
    else:
        half = n // 2
        if current().active:
            # product-of-powers instance the squaring step depends on
            check_assert(
                "productOfPowers",
                lambda: power_naive(x, half) * power_naive(x, half) == power_naive(x, 2 * half),
            )
        temp = power_dc(x, half)
        p = temp * temp if n % 2 == 0 else temp * temp * x
    check_post("p==power(x,n)", lambda: p == power_naive(x, n))
    return p
