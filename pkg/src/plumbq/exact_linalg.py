"""Exact integer/rational linear algebra for linking matrices.

Everything here works on plain nested lists of ``int`` or ``Fraction``;
no floating point is involved anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

Matrix = Sequence[Sequence[int]]


class SingularMatrix(ValueError):
    pass


def determinant(m: Matrix) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in m]
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * piv - a[i][k] * a[k][j]) // prev
        prev = piv
    return sign * a[n - 1][n - 1]


def leading_minors(m: Matrix) -> list[int]:
    return [determinant([row[:k] for row in m[:k]]) for k in range(1, len(m) + 1)]


def is_positive_definite(m: Matrix) -> bool:
    """Sylvester's criterion with exact minors (``m`` assumed symmetric)."""
    return all(d > 0 for d in leading_minors(m))


def adjugate(m: Matrix) -> list[list[int]]:
    """Classical adjoint, so that ``m @ adjugate(m) == det(m) * I``."""
    n = len(m)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [m[r][c] for c in range(n) if c != i] for r in range(n) if r != j
            ]
            adj[i][j] = (-1) ** (i + j) * determinant(minor)
    return adj


def inverse(m: Matrix) -> list[list[Fraction]]:
    d = determinant(m)
    if d == 0:
        raise SingularMatrix("matrix is singular")
    return [[Fraction(x, d) for x in row] for row in adjugate(m)]


def matmul(a, b):
    return [
        [sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def quadratic_form(a, v) -> Fraction:
    """Return ``v^T a v``."""
    return sum((x * y for x, y in zip(v, matvec(a, v))), Fraction(0))


# -- coset structure of M Z^N -------------------------------------------------

@dataclass(frozen=True)
class CosetGroup:
    """The subgroup S of (Z/D)^N with x in S iff adj(M) x = 0 mod D.

    An integer vector lies in M Z^N exactly when its reduction mod D lies
    in S.
    """

    modulus: int
    adj: tuple[tuple[int, ...], ...]
    generators: tuple[tuple[int, ...], ...]

    def __contains__(self, x: Sequence[int]) -> bool:
        d = self.modulus
        return all(sum(a * v for a, v in zip(row, x)) % d == 0 for row in self.adj)

    def elements(self) -> set[tuple[int, ...]]:
        """All elements of S (the closure of the generators)."""
        d = self.modulus
        n = len(self.adj)
        seen = {tuple([0] * n)}
        frontier = list(seen)
        while frontier:
            nxt = []
            for s in frontier:
                for g in self.generators:
                    t = tuple((a + b) % d for a, b in zip(s, g))
                    if t not in seen:
                        seen.add(t)
                        nxt.append(t)
            frontier = nxt
        return seen


def coset_group(m: Matrix) -> CosetGroup:
    d = determinant(m)
    if d == 0:
        raise SingularMatrix("linking matrix is singular")
    d = abs(d)
    adj = adjugate(m)
    # adj(M) x = 0 mod D  <=>  x = M v mod D, so the columns of M generate S.
    n = len(m)
    gens = {tuple(m[r][c] % d for r in range(n)) for c in range(n)} if d > 1 else set()
    gens.discard(tuple([0] * n))
    return CosetGroup(d, tuple(map(tuple, adj)), tuple(sorted(gens)))


def in_lattice_image(m: Matrix, x: Sequence[int]) -> bool:
    """True iff ``x`` lies in ``m Z^N``."""
    return all(v.denominator == 1 for v in matvec(inverse(m), x))


# -- congruences ---------------------------------------------------------------

@dataclass(frozen=True)
class ResidueClass:
    rep: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1 or not 0 <= self.rep < self.modulus:
            raise ValueError(f"bad residue class {self.rep} mod {self.modulus}")

    def __contains__(self, m: int) -> bool:
        return (m - self.rep) % self.modulus == 0


def merge_parity_congruence(g: int, d: int, parity: int = 1) -> ResidueClass | None:
    """Solve ``m = g (mod d)`` together with ``m = parity (mod 2)``.

    Returns ``None`` when the system has no solution.
    """
    if d < 1:
        raise ValueError("modulus must be positive")
    g %= d
    parity %= 2
    if d % 2:
        t = g if g % 2 == parity else g + d
        return ResidueClass(t % (2 * d), 2 * d)
    if g % 2 != parity:
        return None
    return ResidueClass(g, d)


# -- lattice point enumeration -------------------------------------------------

def ldl(a) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Exact ``a = L diag(d) L^T`` with unit lower-triangular ``L``."""
    n = len(a)
    L = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    D = [Fraction(0)] * n
    for j in range(n):
        D[j] = Fraction(a[j][j]) - sum(L[j][k] ** 2 * D[k] for k in range(j))
        if D[j] <= 0:
            raise ValueError("matrix is not positive definite")
        for i in range(j + 1, n):
            L[i][j] = (Fraction(a[i][j]) - sum(L[i][k] * L[j][k] * D[k] for k in range(j))) / D[j]
    return L, D


def _floor_sqrt(r: Fraction) -> int:
    return math.isqrt(math.floor(r))


def enumerate_ellipsoid(a, bound, center=None) -> Iterator[tuple[int, ...]]:
    """Yield every integer x with ``(x-c)^T a (x-c) <= bound``, lexicographically.

    ``a`` is a positive definite rational matrix.  The search is a
    Fincke-Pohst recursion on an exact LDL^T factorisation, so no lattice
    point can be lost to rounding.
    """
    n = len(a)
    bound = Fraction(bound)
    c = [Fraction(0)] * n if center is None else [Fraction(v) for v in center]
    if bound < 0:
        return
    if n == 0:
        yield ()
        return
    # Reverse the coordinates so that x_1 is the outermost loop.
    rev = [[a[n - 1 - i][n - 1 - j] for j in range(n)] for i in range(n)]
    L, D = ldl(rev)
    # In reversed coordinates y (y_i = x_{n-1-i}) the form is
    #   sum_i D_i (z_i + sum_{k>i} L[k][i] z_k)^2  with z = y - c_rev.
    crev = c[::-1]
    z = [Fraction(0)] * n
    y = [0] * n

    def rec(i: int, remaining: Fraction):
        shift = sum((L[k][i] * z[k] for k in range(i + 1, n)), Fraction(0))
        # need D_i (y_i - crev_i + shift)^2 <= remaining
        mid = crev[i] - shift
        r = remaining / D[i]
        s = _floor_sqrt(r)
        lo = math.floor(mid) - s - 1
        hi = math.ceil(mid) + s + 1
        for v in range(lo, hi + 1):
            t = v - mid
            used = D[i] * t * t
            if used > remaining:
                continue
            y[i] = v
            z[i] = v - crev[i]
            if i == 0:
                yield tuple(y[::-1])
            else:
                yield from rec(i - 1, remaining - used)

    yield from rec(n - 1, bound)


def enumerate_form(m: Matrix, bound) -> Iterator[tuple[int, ...]]:
    """Integer vectors x with ``x^T m x / 2 <= bound``, in lexicographic order."""
    return enumerate_ellipsoid(m, 2 * Fraction(bound))


def box_search(m: Matrix, bound, radius: int) -> list[tuple[int, ...]]:
    """Naive reference enumeration over the cube ``|x_i| <= radius``."""
    b = 2 * Fraction(bound)
    n = len(m)
    rows = [tuple(r) for r in m]
    return [x for x in product(range(-radius, radius + 1), repeat=n)
            if sum(xi * sum(a * y for a, y in zip(r, x)) for xi, r in zip(x, rows)) <= b]


def box_radius(m: Matrix, bound) -> int:
    """Cube radius guaranteed to contain ``{x : x^T m x / 2 <= bound}``.

    Uses ``x_i^2 <= (m^{-1})_{ii} * x^T m x`` (Cauchy-Schwarz in the m-inner
    product), evaluated exactly.
    """
    inv = inverse(m)
    b = 2 * Fraction(bound)
    return max(_floor_sqrt(inv[i][i] * b) + 1 for i in range(len(m)))


def rational_inverse(a) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over the rationals."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]
