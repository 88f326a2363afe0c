"""Z(q) and Zhat_a(q) of plumbing graphs.

Two independent routes are provided:

* brute force: a direct truncated evaluation of the constant term of the
  theta function against the vertex factors, valid for any tree;
* star pipeline: the closed-form decomposition of Z(q) for star graphs into
  false and partial theta functions, with asymptotics at q -> 1.
"""

from __future__ import annotations

import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, gcd
from typing import Sequence

from . import ct_engine, exact_linalg
from .exact_linalg import merge_parity_congruence
from .falsetheta import (AsymptoticExpansion, FalseThetaCombination, FalseThetaTerm,
                         canonical_index, combination_asymptotic,
                         f_reduce_rational)
from .graph_core import (PlumbingGraph, StarShape, degrees_and_delta, linking_matrix,
                         require_star)
from .qseries import QSeries, sgn, sgn_star


class NotPositiveDefinite(ValueError):
    pass


class ShiftParityMismatch(ValueError):
    pass


class HypothesisFailed(ValueError):
    pass


class ShiftSymmetryWarning(UserWarning):
    """The shift ``a`` is not equivalent to ``-a``; the principal value
    integral is then not known to equal the constant term computed here."""


def _checked_matrix(g: PlumbingGraph) -> list[list[int]]:
    m = linking_matrix(g)
    if not exact_linalg.is_positive_definite(m):
        raise NotPositiveDefinite("linking matrix is not positive definite")
    return m


def z_prefactor(m) -> Fraction:
    return Fraction(-3 * len(m) + sum(m[i][i] for i in range(len(m))), 2)


def _threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("PLUMB_THREADS", "1") or 1)
    return max(1, threads)


# -- brute force ----------------------------------------------------------------

def _constrained_sum(m, degrees, form, bound, member, threads) -> dict[Fraction, Fraction]:
    """Sum ``q^(v^T form v) * prod_j ct_vertex(v_j, deg_j)`` over admissible v.

    Vertices of degree <= 2 have a finite CT support, so their coordinates are
    looped over explicitly; the remaining coordinates are enumerated inside the
    ellipsoid ``v^T form v <= bound``.  ``member`` decides whether v belongs to
    the summation lattice.
    """
    n = len(m)
    fixed = [j for j in range(n) if degrees[j] <= 2]
    free = [j for j in range(n) if degrees[j] > 2]
    supports = [ct_engine.vertex_support(degrees[j]) for j in fixed]
    kff = [[form[i][j] for j in free] for i in free]
    kff_inv = exact_linalg.rational_inverse(kff) if free else []

    def one(choice):
        acc: dict[Fraction, Fraction] = {}
        w0 = Fraction(1)
        for j, v in zip(fixed, choice):
            w0 *= ct_engine.ct_vertex(v, degrees[j])
        if not w0:
            return acc
        f = [0] * n
        for j, v in zip(fixed, choice):
            f[j] = v
        kxf = [sum(form[i][j] * f[j] for j in fixed) for i in free]
        center = [-sum(kff_inv[r][s] * kxf[s] for s in range(len(free))) for r in range(len(free))]
        const = (sum(f[i] * form[i][j] * f[j] for i in fixed for j in fixed)
                 - sum(center[r] * kff[r][s] * center[s]
                       for r in range(len(free)) for s in range(len(free))))
        for y in exact_linalg.enumerate_ellipsoid(kff, bound - const, center):
            v = list(f)
            w = w0
            for j, yj in zip(free, y):
                v[j] = yj
                w *= ct_engine.ct_vertex(yj, degrees[j])
                if not w:
                    break
            if not w or not member(v):
                continue
            e = exact_linalg.quadratic_form(form, v)
            acc[e] = acc.get(e, Fraction(0)) + w
        return acc

    choices = list(product(*supports))
    workers = _threads(threads)
    if workers > 1 and len(choices) > 1:
        with ThreadPoolExecutor(workers) as ex:
            parts = list(ex.map(one, choices))
    else:
        parts = [one(c) for c in choices]
    total: dict[Fraction, Fraction] = {}
    for part in parts:  # deterministic merge in choice order
        for e, c in part.items():
            total[e] = total.get(e, Fraction(0)) + c
    return total


def _lattice_sum(m, degrees, bound, monomial, exponent, center=None):
    """Reference evaluation by enumerating the full lattice Z^N."""
    acc: dict[Fraction, Fraction] = {}
    for x in exact_linalg.enumerate_ellipsoid(m, bound, center):
        ell = monomial(x)
        w = Fraction(1)
        for v, d in zip(ell, degrees):
            w *= ct_engine.ct_vertex(v, d)
            if not w:
                break
        if w:
            e = exponent(x)
            acc[e] = acc.get(e, Fraction(0)) + w
    return acc


def z_bruteforce(g: PlumbingGraph, order, *, method: str = "constrained",
                 threads: int | None = None) -> QSeries:
    """Truncated Z(q) of an arbitrary plumbing tree.

    ``method="lattice"`` sums over all of Z^N (slow; a cross-check for small
    cases), the default only visits lattice vectors whose vertex constant
    terms can be nonzero.
    """
    m = _checked_matrix(g)
    order = Fraction(order)
    deg, _ = degrees_and_delta(g)
    pref = z_prefactor(m)
    bound = order - pref
    minv = exact_linalg.inverse(m)
    if method == "constrained":
        cg = exact_linalg.coset_group(m)
        form = [[x / 2 for x in row] for row in minv]
        raw = _constrained_sum(m, deg, form, bound, cg.__contains__, threads)
    elif method == "lattice":
        raw = _lattice_sum(m, deg, 2 * bound,
                           lambda x: exact_linalg.matvec(m, x),
                           lambda x: exact_linalg.quadratic_form(m, x) / 2)
    else:
        raise ValueError(f"unknown method {method!r}")
    return QSeries({pref + e: c for e, c in raw.items()}, order)


def zhat_prefactor(m) -> Fraction:
    return z_prefactor(m) / 2


def shift_is_symmetric(m, a: Sequence[int]) -> bool:
    """``-a`` lies in ``2 M Z^N + a`` exactly when ``a`` lies in ``M Z^N``."""
    return exact_linalg.in_lattice_image(m, a)


def check_shift(g: PlumbingGraph, a: Sequence[int]) -> None:
    _, delta = degrees_and_delta(g)
    if len(a) != g.n:
        raise ShiftParityMismatch(f"shift has {len(a)} entries, graph has {g.n} vertices")
    bad = [j + 1 for j, (x, d) in enumerate(zip(a, delta)) if (x - d) % 2]
    if bad:
        raise ShiftParityMismatch(f"shift parity differs from vertex degrees at {bad}")


def zhat_bruteforce(g: PlumbingGraph, a: Sequence[int] | None = None, order=0, *,
                    method: str = "constrained", threads: int | None = None) -> QSeries:
    """Truncated Zhat_a(q); ``a`` defaults to the degree-parity vector."""
    m = _checked_matrix(g)
    deg, delta = degrees_and_delta(g)
    a = list(delta if a is None else a)
    check_shift(g, a)
    if not shift_is_symmetric(m, a):
        warnings.warn(ShiftSymmetryWarning(
            f"shift {tuple(a)} is not equivalent to its negative; "
            "result is the constant term around w = 0"), stacklevel=2)
    order = Fraction(order)
    pref = zhat_prefactor(m)
    bound = order - pref
    minv = exact_linalg.inverse(m)
    if method == "constrained":
        cg = exact_linalg.coset_group(m)
        d2 = 2 * cg.modulus

        def member(ell):
            diff = [x - y for x, y in zip(ell, a)]
            return all(sum(c * v for c, v in zip(row, diff)) % d2 == 0 for row in cg.adj)

        form = [[x / 4 for x in row] for row in minv]
        raw = _constrained_sum(m, deg, form, bound, member, threads)
    elif method == "lattice":
        # 1/4 l^T M^-1 l with l = 2Mx + a  equals  (x-c)^T M (x-c) with c = -M^-1 a / 2
        c = [-v / 2 for v in exact_linalg.matvec(minv, a)]
        offset = exact_linalg.quadratic_form(minv, a) / 4 - exact_linalg.quadratic_form(m, c)

        def ell(x):
            return [2 * v + s for v, s in zip(exact_linalg.matvec(m, x), a)]

        raw = _lattice_sum(m, deg, bound - offset, ell,
                           lambda x: exact_linalg.quadratic_form(minv, ell(x)) / 4, center=c)
    else:
        raise ValueError(f"unknown method {method!r}")
    return QSeries({pref + e: c for e, c in raw.items()}, order)


# -- 3-star data (explicit four-term formula) -----------------------------------------

@dataclass(frozen=True)
class ThreeStarData:
    A: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, Fraction, Fraction, Fraction]
    c: tuple[Fraction, Fraction, Fraction, Fraction]
    d: tuple[Fraction, Fraction, Fraction, Fraction]


def three_star_data(A) -> ThreeStarData:
    A = tuple(tuple(Fraction(x) for x in row) for row in A)
    if len(A) != 4 or any(len(r) != 4 for r in A):
        raise ValueError("A must be 4x4")
    if any(A[i][j] != A[j][i] for i in range(4) for j in range(4)):
        raise ValueError("A must be symmetric")
    a44 = A[3][3]
    if a44 <= 0:
        raise ValueError("a44 must be positive")
    a14, a24, a34 = A[0][3], A[1][3], A[2][3]
    a12, a13, a23 = A[0][1], A[0][2], A[1][2]
    half = (A[0][0] + A[1][1] + A[2][2]) / 2
    b = (a14 + a24 + a34, a14 - a24 - a34, -a14 - a24 + a34, -a14 + a24 - a34)
    c = (half + a12 + a13 + a23, half - a12 - a13 + a23,
         half + a12 - a13 - a23, half - a12 + a13 - a23)
    d = tuple(cj - bj * bj / (2 * a44) for bj, cj in zip(b, c))
    return ThreeStarData(A, b, c, d)


def check_3star_hypothesis(A) -> bool:
    """``A m`` integral for all ``m`` with leaf entries +-1 and odd last entry."""
    A = [[Fraction(x) for x in row] for row in A]
    for eps in product((1, -1), repeat=3):
        for m4 in (1, 3):
            v = list(eps) + [m4]
            if any(x.denominator != 1 for x in exact_linalg.matvec(A, v)):
                return False
    return True


def decompose_3star(A) -> FalseThetaCombination:
    """``Z_A(q) = sum_j q^(d_j) F_{a44 - b_j, a44}(2 a44 tau)``."""
    if not check_3star_hypothesis(A):
        raise HypothesisFailed("A (+-1, +-1, +-1, odd) is not always integral")
    data = three_star_data(A)
    a44 = data.A[3][3]
    terms = []
    for bj, dj in zip(data.b, data.d):
        j, p = f_reduce_rational(a44 - bj, a44)
        terms.append(FalseThetaTerm(1, dj, "F", j, p, 2 * a44).canonical())
    return FalseThetaCombination(tuple(terms))


def asymptotic_3star(A) -> AsymptoticExpansion:
    """``Z_A(exp(-2 pi t)) ~ c_1 pi t`` with vanishing constant term."""
    if not check_3star_hypothesis(A):
        raise HypothesisFailed("A (+-1, +-1, +-1, odd) is not always integral")
    A = [[Fraction(x) for x in row] for row in A]
    a44 = A[3][3]
    inner = a44 * (A[0][1] * A[2][3] + A[0][2] * A[1][3] + A[0][3] * A[1][2]) \
        - 2 * A[0][3] * A[1][3] * A[2][3]
    return AsymptoticExpansion((Fraction(0), -8 * inner / a44 ** 2))


def three_star_minor(g: PlumbingGraph) -> list[list[Fraction]]:
    """``adj(M)/det(M)`` restricted to (leaves in canonical order, center)."""
    star = require_star(g)
    if star.leg_count != 3:
        raise ValueError("three_star_minor needs exactly three legs")
    m = linking_matrix(g)
    minv = exact_linalg.inverse(m)
    idx = [v - 1 for v in star.permutation()[:4]]
    return [[minv[i][j] for j in idx] for i in idx]


def omega_reduction_check(m, star: StarShape) -> bool:
    """Whether the congruences on the four star coordinates already imply all others."""
    cg = exact_linalg.coset_group(m)
    d = cg.modulus
    idx = [v - 1 for v in star.permutation()[:star.leg_count + 1]]
    n = len(m)
    for eps in product((1, -1), repeat=star.leg_count):
        for g in range(d):
            v = [0] * n
            for i, e in zip(idx, list(eps) + [g]):
                v[i] = e
            full = v in cg
            restricted = all(sum(cg.adj[i][j] * v[j] for j in range(n)) % d == 0 for i in idx)
            if full != restricted:
                return False
    return True


# -- general star pipeline ---------------------------------------------------------

def _poly_shift(coeffs: list[Fraction], s: Fraction) -> list[Fraction]:
    """Coefficients of ``P(v + s)`` given those of ``P``."""
    n = len(coeffs)
    out = [Fraction(0)] * n
    for i, c in enumerate(coeffs):
        for k in range(i + 1):
            out[k] += c * comb(i, k) * s ** (i - k)
    return out


def _representative_signs(legs: int):
    """One sign vector from each pair {eps, -eps}."""
    for eps in product((1, -1), repeat=legs):
        prod_ = 1
        for e in eps:
            prod_ *= e
        if legs % 2 == 1:
            if prod_ == -1:
                yield eps
        elif eps[0] == 1:
            yield eps


def _class_terms(kappa, a, b, c0, rc, weight, pref):
    """Decompose ``kappa * sum_{m in rc} sgn(m) W(m) q^(a m^2/2 + b m + c0)``."""
    P = rc.modulus
    t0 = rc.rep if rc.rep > 0 else P
    x = (t0 + b / a) / P
    lam = a * P * P / 2
    rho = pref + c0 - b * b / (2 * a)
    wv = _poly_shift(weight, -b / a)  # W as a polynomial in v = m + b/a
    terms = []
    for i, wi in enumerate(wv):
        if not wi:
            continue
        s = i // 2
        coeff = kappa * wi * Fraction(2, 1) ** s / a ** s
        if i % 2 == 0:
            terms.append(FalseThetaTerm(coeff, rho, "F", *canonical_index(x), lam, s))
        else:
            terms.append(FalseThetaTerm(coeff * P, rho, "G", *canonical_index(x), lam, s))
    # finite correction where the sign conventions of the template disagree
    corr: dict[Fraction, Fraction] = {}
    reach = abs(b / a) + 2 * P + abs(t0)
    kmin = -int(reach / P) - 2
    kmax = int(reach / P) + 2
    for k in range(kmin, kmax + 1):
        m = P * k + t0
        v = m + b / a
        even = sum((wv[i] * v ** i for i in range(0, len(wv), 2)), Fraction(0))
        odd = sum((wv[i] * v ** i for i in range(1, len(wv), 2)), Fraction(0))
        true = sgn(m) * (even + odd)
        template = sgn_star(k) * even + sgn(v) * odd
        diff = kappa * (true - template)
        if diff:
            e = pref + a * m * m / 2 + b * m + c0
            corr[e] = corr.get(e, Fraction(0)) + diff
    return terms, corr




def reduce_star(g: PlumbingGraph) -> FalseThetaCombination:
    """Closed-form decomposition of Z(q) for a star graph."""
    star = require_star(g)
    m = _checked_matrix(g)
    n_legs = star.leg_count
    cg = exact_linalg.coset_group(m)
    D = cg.modulus
    minv = exact_linalg.inverse(m)
    pref = z_prefactor(m)
    perm = star.permutation()
    leaves = [v - 1 for v in perm[:n_legs]]
    c = perm[n_legs] - 1
    weight = ct_engine.weight_polynomial(n_legs)
    # period of the center coordinate inside S
    col_gcd = D
    for row in cg.adj:
        col_gcd = gcd(col_gcd, row[c])
    period = D // col_gcd
    a = minv[c][c]
    terms: list[FalseThetaTerm] = []
    corr: dict[Fraction, Fraction] = {}
    for eps in _representative_signs(n_legs):
        base = [0] * len(m)
        for i, e in zip(leaves, eps):
            base[i] = e
        allowed = []
        for gres in range(period):
            v = list(base)
            v[c] = gres
            if v in cg:
                allowed.append(gres)
        if not allowed:
            continue
        assert len(allowed) == 1, "center residues form a single coset"
        rc = merge_parity_congruence(allowed[0], period, parity=n_legs % 2)
        if rc is None:
            continue
        b = sum(Fraction(e) * minv[c][i] for i, e in zip(leaves, eps))
        c0 = sum(Fraction(ei * ej) * minv[i][j] for i, ei in zip(leaves, eps)
                 for j, ej in zip(leaves, eps)) / 2
        kappa = (-1) ** n_legs
        for e in eps:
            kappa *= e
        ts, cs = _class_terms(Fraction(kappa), a, b, c0, rc, weight, pref)
        terms.extend(ts)
        for e, v in cs.items():
            corr[e] = corr.get(e, Fraction(0)) + v
    return FalseThetaCombination(tuple(terms), corr).simplify()


def star_asymptotics(g: PlumbingGraph, R: int = 3) -> AsymptoticExpansion:
    return combination_asymptotic(reduce_star(g), R)
