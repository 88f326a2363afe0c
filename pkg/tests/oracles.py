"""Independent reference series, written directly from the closed forms."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from plumbq.corpus import star
from plumbq.exact_linalg import determinant
from plumbq.graph_core import is_positive_definite, linking_matrix
from plumbq.qseries import QSeries


def sgn(x) -> int:
    return (x > 0) - (x < 0)


def residue_sum(residues, modulus, denom, order, shift=0, weight=1):
    """``weight * sum_{m = r (mod modulus)} sgn(m) q^(shift + (m^2 - 1)/denom)``.

    Residues are counted with multiplicity.
    """
    order = Fraction(order)
    mmax = math.isqrt(int((order - shift) * denom) + 1) + 2
    out: dict[Fraction, Fraction] = {}
    for r in residues:
        for m in range(-mmax, mmax + 1):
            if (m - r) % modulus:
                continue
            e = Fraction(shift) + Fraction(m * m - 1, denom)
            if e <= order:
                out[e] = out.get(e, Fraction(0)) + weight * sgn(m)
    return QSeries(out, order)


def closed_form(residues, modulus, qpow, order):
    """``-q^qpow sum_{residues} sgn(m) q^((m^2-1)/modulus) + 2 q^qpow``."""
    s = residue_sum(residues, modulus, modulus, order, shift=qpow, weight=-1)
    return s + QSeries({Fraction(qpow): Fraction(2)}, order)


def d_series(n: int, order):
    """Closed form for D_{n+2}; the residue list for even n keeps multiplicity."""
    res = [1] if n % 2 else [1, n - 1]
    s = residue_sum(res, 2 * n, 2 * n, order, shift=Fraction(-n, 2), weight=-2)
    return s + QSeries({Fraction(-n, 2): Fraction(2)}, order)


def random_pd_stars(seed: int, legs=(3, 4), framings=(2, 5), leg_len=(1, 2)):
    """Positive definite stars drawn from a seeded generator."""
    rng = random.Random(seed)
    while True:
        n_legs = rng.choice(legs)
        g = star(rng.randint(*framings),
                 [[rng.randint(*framings) for _ in range(rng.randint(*leg_len))]
                  for _ in range(n_legs)])
        if is_positive_definite(linking_matrix(g)):
            yield g


def random_unimodular_stars(seed: int, count: int, max_tries: int = 500_000):
    """Distinct unimodular positive definite stars (center framing 1..4)."""
    rng = random.Random(seed)
    seen, out = set(), []
    for _ in range(max_tries):
        n_legs = rng.choice((3, 3, 4))
        center = rng.randint(1, 4)
        legs = [tuple(rng.randint(2, 7) for _ in range(rng.randint(1, 3))) for _ in range(n_legs)]
        key = (center, tuple(sorted(legs)))
        if key in seen:
            continue
        g = star(center, legs)
        m = linking_matrix(g)
        if determinant(m) == 1 and is_positive_definite(m):
            seen.add(key)
            out.append(g)
            if len(out) == count:
                break
    return out
