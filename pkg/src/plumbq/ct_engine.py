"""Constant terms of the single-variable vertex factors.

A vertex of degree ``d`` carries the factor ``(w - 1/w)**(2 - d)``.  All
constant terms are taken in the Laurent expansion around ``w = 0``.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial


class DepthTooSmall(ValueError):
    pass


def sgn(x) -> int:
    return (x > 0) - (x < 0)


def pochhammer(x, n: int) -> Fraction:
    """Rising factorial ``x (x+1) ... (x+n-1)``."""
    out = Fraction(1)
    x = Fraction(x)
    for i in range(n):
        out *= x + i
    return out


def ct_leaf(m: int) -> int:
    """CT of ``(w - 1/w) w^m``."""
    return (m == -1) - (m == 1)


def ct_pole1(m: int) -> int:
    """CT of ``w^m / (w - 1/w)``."""
    return -1 if m <= -1 and m % 2 else 0


def ct_sym(m: int, ell: int) -> int:
    """CT of ``(w^m - w^-m) / (w^ell (w - 1/w))``."""
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    if abs(m) >= ell + 1 and (m - ell - 1) % 2 == 0:
        return sgn(m)
    return 0


def pochhammer_reduce(m: int, ell: int) -> tuple[Fraction, int]:
    """Trade ``w^m / (w - 1/w)^ell`` for a multiple of ``w^m' / (w - 1/w)``.

    Valid for residues at any point, in particular for constant terms at 0.
    """
    if ell < 1:
        raise ValueError("ell must be positive")
    coeff = pochhammer(Fraction(m - ell, 2) + 1, ell - 1) / factorial(ell - 1)
    return coeff, m - ell + 1


def ct_vertex(m: int, d: int) -> Fraction:
    """CT of ``(w - 1/w)^(2-d) w^m`` for a vertex of degree ``d``."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if d == 0:
        return Fraction({-2: 1, 0: -2, 2: 1}.get(m, 0))
    if d == 1:
        return Fraction(ct_leaf(m))
    if d == 2:
        return Fraction(m == 0)
    coeff, m1 = pochhammer_reduce(m, d - 2)
    return coeff * ct_pole1(m1) if coeff else Fraction(0)


def vertex_support(d: int) -> tuple[int, ...] | None:
    """Exponents with nonzero ``ct_vertex`` for ``d <= 2``; ``None`` if unbounded."""
    return {0: (-2, 0, 2), 1: (-1, 1), 2: (0,)}.get(d)


def center_weight(m: int, legs: int) -> Fraction:
    """Antisymmetrised center contribution for a star with ``legs >= 3`` legs.

    Equals ``ct_vertex(m, legs) + (-1)**legs * ct_vertex(-m, legs)``, written
    in closed form as a Pochhammer weight times ``sgn(m)``; nonzero only for
    ``m = legs (mod 2)``.
    """
    if legs < 3:
        raise ValueError("a star center needs at least three legs")
    if (m - legs) % 2:
        return Fraction(0)
    k = legs - 3
    return pochhammer(Fraction(m - legs + 4, 2), k) / factorial(k) * sgn(m)


def weight_polynomial(legs: int) -> list[Fraction]:
    """Coefficients (ascending powers of m) of ``((m-legs+4)/2)_(legs-3) / (legs-3)!``."""
    k = legs - 3
    poly = [Fraction(1)]
    for i in range(k):
        # multiply by (m - legs + 4)/2 + i = m/2 + (i - (legs-4)/2)
        c0 = Fraction(2 * i - legs + 4, 2)
        new = [Fraction(0)] * (len(poly) + 1)
        for p, a in enumerate(poly):
            new[p] += a * c0
            new[p + 1] += a / 2
        poly = new
    f = factorial(k)
    return [a / f for a in poly]


def expansion_oracle(m: int, ell: int, depth: int) -> Fraction:
    """CT of ``w^m (w - 1/w)^(-ell)`` read off a literally expanded product.

    Around zero ``(w - 1/w)^(-1) = -w (1 + w^2 + w^4 + ...)``; the geometric
    series is truncated after ``depth`` terms and multiplied out ``ell`` times.
    """
    if ell < 1:
        raise ValueError("ell must be positive")
    need = -(m + ell)  # exponent of w^2j needed from the product
    if need < 0 or need % 2:
        return Fraction(0)
    if need // 2 > depth:
        raise DepthTooSmall(f"depth {depth} too small for m={m}, ell={ell}")
    # coefficients of powers of w^2 in (sum_{j<=depth} w^2j)^ell
    series = [1] * (depth + 1)
    prod = [1] + [0] * depth
    for _ in range(ell):
        prod = [sum(prod[i] * series[k - i] for i in range(k + 1)) for k in range(depth + 1)]
    return Fraction((-1) ** ell * prod[need // 2])
