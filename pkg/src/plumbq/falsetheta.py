"""False theta functions F_{j,p} and partial thetas G_{j,p}.

    F_{j,p}(tau) = sum_m sgn*(m) q^((m + j/2p)^2)
    G_{j,p}(tau) = sum_m |m + j/2p| q^((m + j/2p)^2)

Terms carry a rational q-shift, an argument scale ``tau -> scale*tau`` and a
power of the Euler operator ``D = q d/dq`` acting on the theta factor only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb, factorial, gcd
from typing import Iterable, Mapping

from .qseries import QSeries, _fmt_frac, sgn_star


# -- indices --------------------------------------------------------------------

def f_reduce_rational(j, p) -> tuple[int, int]:
    """``F_{r/s, h/k} = F_{rk, hs}``."""
    j, p = Fraction(j), Fraction(p)
    if p <= 0:
        raise ValueError("p must be positive")
    return j.numerator * p.denominator, p.numerator * j.denominator


def canonical_index(x) -> tuple[int, int]:
    """Smallest ``p >= 1`` with integer ``j`` such that ``j/(2p) == x``."""
    x = Fraction(x)
    v = x.denominator
    p = v // 2 if v % 2 == 0 else v
    return int(x * 2 * p), p


def ord2(k: int) -> int:
    k = abs(k)
    if k == 0:
        raise ValueError("ord2(0) is undefined")
    return (k & -k).bit_length() - 1


# -- terms ----------------------------------------------------------------------

@dataclass(frozen=True)
class FalseThetaTerm:
    """``coefficient * q^qshift * D^derivative_order [X_{j,p}(scale * tau)]``."""

    coefficient: Fraction
    qshift: Fraction
    kind: str  # "F" or "G"
    j: int
    p: int
    scale: Fraction
    derivative_order: int = 0

    def __post_init__(self):
        if self.kind not in ("F", "G"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.p < 1:
            raise ValueError("p must be positive")
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))
        object.__setattr__(self, "qshift", Fraction(self.qshift))
        object.__setattr__(self, "scale", Fraction(self.scale))

    @property
    def offset(self) -> Fraction:
        """``j / 2p``."""
        return Fraction(self.j, 2 * self.p)

    def key(self):
        return (self.kind, self.offset, self.scale, self.qshift, self.derivative_order)

    def canonical(self) -> "FalseThetaTerm":
        j, p = canonical_index(self.offset)
        return replace(self, j=j, p=p)

    def __str__(self) -> str:
        return format_term(self)


@dataclass(frozen=True)
class FalseThetaCombination:
    """Sum of false/partial theta terms plus a finite correction polynomial."""

    terms: tuple[FalseThetaTerm, ...] = ()
    correction: Mapping[Fraction, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        corr = {Fraction(e): Fraction(c) for e, c in self.correction.items() if c}
        object.__setattr__(self, "correction", dict(sorted(corr.items())))
        object.__setattr__(self, "terms", tuple(self.terms))

    def simplify(self) -> "FalseThetaCombination":
        """Canonicalise indices, merge like terms and drop zero coefficients."""
        acc: dict = {}
        order = []
        for t in self.terms:
            t = t.canonical()
            k = t.key()
            if k not in acc:
                acc[k] = t
                order.append(k)
            else:
                acc[k] = replace(acc[k], coefficient=acc[k].coefficient + t.coefficient)
        terms = [acc[k] for k in order if acc[k].coefficient]
        terms.sort(key=lambda t: (t.kind, t.derivative_order, t.qshift, t.scale, t.offset))
        return FalseThetaCombination(tuple(terms), self.correction)

    def __add__(self, other: "FalseThetaCombination") -> "FalseThetaCombination":
        corr = dict(self.correction)
        for e, c in other.correction.items():
            corr[e] = corr.get(e, Fraction(0)) + c
        return FalseThetaCombination(self.terms + other.terms, corr)

    def shifted(self, qpower) -> "FalseThetaCombination":
        qpower = Fraction(qpower)
        return FalseThetaCombination(
            tuple(replace(t, qshift=t.qshift + qpower) for t in self.terms),
            {e + qpower: c for e, c in self.correction.items()})

    def has_g_terms(self) -> bool:
        return any(t.kind == "G" and t.coefficient for t in self.terms)

    def __str__(self) -> str:
        return format_combination(self)

    def to_json(self) -> dict:
        return {
            "terms": [
                {
                    "coefficient": _js(t.coefficient),
                    "qshift": _js(t.qshift),
                    "derivative_order": t.derivative_order,
                    "kind": t.kind,
                    "j": t.j,
                    "p": t.p,
                    "scale": _js(t.scale),
                    "quantum_set": quantum_set_description(t),
                }
                for t in self.terms
            ],
            "correction": [{"exponent": _js(e), "coefficient": _js(c)}
                           for e, c in self.correction.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FalseThetaCombination":
        terms = tuple(
            FalseThetaTerm(Fraction(t["coefficient"]), Fraction(t["qshift"]), t["kind"],
                           int(t["j"]), int(t["p"]), Fraction(t["scale"]),
                           int(t["derivative_order"]))
            for t in data["terms"])
        corr = {Fraction(c["exponent"]): Fraction(c["coefficient"]) for c in data["correction"]}
        return cls(terms, corr)


def _js(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def format_term(t: FalseThetaTerm, with_sign: bool = False) -> str:
    parts = []
    if t.coefficient != 1:
        parts.append(_fmt_frac(t.coefficient))
    if t.qshift:
        parts.append(f"q^({_fmt_frac(t.qshift)})")
    d = f"D^{t.derivative_order} " if t.derivative_order else ""
    parts.append(f"{d}{t.kind}[{t.j},{t.p}]({_fmt_frac(t.scale)}τ)")
    return " * ".join(parts)


def format_combination(c: FalseThetaCombination) -> str:
    pieces = [format_term(t) for t in c.terms]
    pieces += [f"{_fmt_frac(v)} * q^({_fmt_frac(e)})" for e, v in c.correction.items()]
    return " + ".join(pieces) if pieces else "0"


# -- expansions -----------------------------------------------------------------

def _window(x: Fraction, limit: Fraction) -> range:
    """Integers m with ``(m + x)^2 <= limit`` are inside the returned range."""
    if limit < 0:
        return range(0)
    s = math.isqrt(math.floor(limit)) + 1
    return range(math.floor(-x) - s, math.ceil(-x) + s + 1)


def _theta_pairs(kind: str, x: Fraction, limit: Fraction):
    """``(exponent, coefficient)`` of X with exponent ``(m+x)^2 <= limit``."""
    for m in _window(x, limit):
        e = (m + x) ** 2
        if e > limit:
            continue
        c = Fraction(sgn_star(m)) if kind == "F" else abs(m + x)
        if c:
            yield e, c


def f_expand(j, p, order) -> QSeries:
    x = Fraction(j) / (2 * Fraction(p))
    order = Fraction(order)
    return QSeries.from_pairs(_theta_pairs("F", x, order), order)


def g_expand(j, p, order) -> QSeries:
    x = Fraction(j) / (2 * Fraction(p))
    order = Fraction(order)
    return QSeries.from_pairs(_theta_pairs("G", x, order), order)


def expand_term(t: FalseThetaTerm, order) -> QSeries:
    order = Fraction(order)
    limit = (order - t.qshift) / t.scale
    pairs = []
    for e, c in _theta_pairs(t.kind, t.offset, limit):
        inner = t.scale * e
        pairs.append((t.qshift + inner, t.coefficient * c * inner ** t.derivative_order))
    return QSeries.from_pairs(pairs, order)


def expand(c: FalseThetaCombination, order) -> QSeries:
    order = Fraction(order)
    acc: dict[Fraction, Fraction] = {}
    for t in c.terms:
        for e, v in expand_term(t, order).items():
            acc[e] = acc.get(e, Fraction(0)) + v
    for e, v in c.correction.items():
        if e <= order:
            acc[e] = acc.get(e, Fraction(0)) + v
    return QSeries(acc, order)


def sgn_sum_to_f(a, b) -> FalseThetaTerm:
    """``sum_{m odd} sgn(m) q^(a m^2/2 - b m) = q^(-b^2/2a) F_{a-b,a}(2a tau)``."""
    a, b = Fraction(a), Fraction(b)
    if a <= 0:
        raise ValueError("a must be positive")
    j, p = f_reduce_rational(a - b, a)
    return FalseThetaTerm(1, -b * b / (2 * a), "F", j, p, 2 * a).canonical()


# -- Bernoulli polynomials and asymptotics ----------------------------------------

def bernoulli_numbers(n: int) -> list[Fraction]:
    """``B_0 .. B_n`` with the convention ``B_1 = -1/2``."""
    b = [Fraction(0)] * (n + 1)
    b[0] = Fraction(1)
    for k in range(1, n + 1):
        b[k] = -sum(comb(k + 1, i) * b[i] for i in range(k)) / (k + 1)
    return b


def bernoulli_polynomial(n: int) -> list[Fraction]:
    """Ascending coefficients of ``B_n(x)``."""
    b = bernoulli_numbers(n)
    return [comb(n, k) * b[n - k] for k in range(n + 1)]


def poly_eval(coeffs: Iterable[Fraction], x) -> Fraction:
    out = Fraction(0)
    for c in reversed(list(coeffs)):
        out = out * x + c
    return out


@dataclass(frozen=True)
class AsymptoticExpansion:
    """``sum_r coeffs[r] * pi^r * t^r`` as ``t -> 0+`` (``q = exp(-2 pi t)``).

    ``divergent`` marks a radial limit that does not exist; coefficients are
    then empty.
    """

    coeffs: tuple[Fraction, ...] = ()
    divergent: bool = False

    def __add__(self, other: "AsymptoticExpansion") -> "AsymptoticExpansion":
        if self.divergent or other.divergent:
            return AsymptoticExpansion((), True)
        n = min(len(self.coeffs), len(other.coeffs))
        return AsymptoticExpansion(tuple(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])))

    def __mul__(self, other: "AsymptoticExpansion") -> "AsymptoticExpansion":
        if self.divergent or other.divergent:
            return AsymptoticExpansion((), True)
        n = min(len(self.coeffs), len(other.coeffs))
        return AsymptoticExpansion(tuple(
            sum((self.coeffs[i] * other.coeffs[r - i] for i in range(r + 1)), Fraction(0))
            for r in range(n)))

    def scaled(self, factor) -> "AsymptoticExpansion":
        return AsymptoticExpansion(tuple(Fraction(factor) * c for c in self.coeffs), self.divergent)

    def euler_derivative(self) -> "AsymptoticExpansion":
        """Apply ``q d/dq = -(1/2pi) d/dt``; one coefficient is lost."""
        c = self.coeffs
        return AsymptoticExpansion(tuple(-(r + 1) * c[r + 1] / 2 for r in range(len(c) - 1)))

    def value(self, t: float) -> float:
        return sum(float(c) * (math.pi * t) ** r for r, c in enumerate(self.coeffs))

    def __str__(self) -> str:
        if self.divergent:
            return "divergent"
        parts = []
        for r, c in enumerate(self.coeffs):
            if r == 0:
                parts.append(_fmt_frac(c))
            else:
                cs = _fmt_frac(c)
                cs = f"({cs})" if c < 0 or c.denominator != 1 else cs
                pw = "π t" if r == 1 else f"π^{r} t^{r}"
                parts.append(f"{cs}{pw}")
        return " + ".join(parts + ["..."])

    def to_json(self):
        if self.divergent:
            return "divergent"
        return [_js(c) for c in self.coeffs]


def f_asymptotic(j, p, R: int) -> AsymptoticExpansion:
    """Expansion of ``F_{j,p}(it)``: ``c_r = -2 B_{2r+1}(j/2p)/(2r+1) * (-2)^r / r!``."""
    x = Fraction(j) / (2 * Fraction(p))
    out = []
    for r in range(R):
        br = poly_eval(bernoulli_polynomial(2 * r + 1), x)
        out.append(-2 * br / (2 * r + 1) * Fraction((-2) ** r, factorial(r)))
    return AsymptoticExpansion(tuple(out))


def exp_asymptotic(e, R: int) -> AsymptoticExpansion:
    """``q^e = exp(-2 pi e t)``."""
    e = Fraction(e)
    return AsymptoticExpansion(tuple((-2 * e) ** r / factorial(r) for r in range(R)))


def term_asymptotic(t: FalseThetaTerm, R: int) -> AsymptoticExpansion:
    if t.kind == "G":
        return AsymptoticExpansion((), True)
    k = t.derivative_order
    base = f_asymptotic(t.j, t.p, R + k)
    base = AsymptoticExpansion(tuple(c * t.scale ** r for r, c in enumerate(base.coeffs)))
    for _ in range(k):
        base = base.euler_derivative()
    return (base * exp_asymptotic(t.qshift, R)).scaled(t.coefficient)


def combination_asymptotic(c: FalseThetaCombination, R: int) -> AsymptoticExpansion:
    """Termwise expansion; any surviving G-term makes the radial limit diverge."""
    c = c.simplify()
    if c.has_g_terms():
        return AsymptoticExpansion((), True)
    total = AsymptoticExpansion(tuple(Fraction(0) for _ in range(R)))
    for t in c.terms:
        total = total + term_asymptotic(t, R)
    for e, v in c.correction.items():
        total = total + exp_asymptotic(e, R).scaled(v)
    return total


# -- quantum sets -----------------------------------------------------------------

def _base_member(p: int, j: int, h: int, k: int) -> bool:
    if j % p:
        return k % p == 0 and ord2(k) == ord2(p)
    if j % (2 * p) == p % (2 * p):
        return ord2(k) > ord2(p) + 1
    return ord2(k) == ord2(p) + 1


def quantum_set_member(p: int, j: int, h: int, k: int, scale=None) -> bool:
    """Membership of ``h/k`` in the quantum set of ``tau -> G_{j,p}(scale*tau)``.

    ``scale`` defaults to ``p``, where the set is the one attached to the
    weight 3/2 partial theta; other scales rescale that set by ``p/scale``.
    """
    if k < 1 or gcd(h, k) != 1:
        raise ValueError("need k >= 1 and gcd(h, k) == 1")
    scale = Fraction(p) if scale is None else Fraction(scale)
    x = Fraction(h, k) * scale / p
    return _base_member(p, j, x.numerator, x.denominator)


def quantum_set_description(t: FalseThetaTerm) -> str:
    if t.kind == "F":
        return "Q (weight 1/2)"
    p, j = t.p, t.j
    if j % p:
        base = f"{{h/k : {p} | k, ord2(k) = {ord2(p)}}}"
    elif j % (2 * p) == p % (2 * p):
        base = f"{{h/k : ord2(k) > {ord2(p) + 1}}}"
    else:
        base = f"{{h/k : ord2(k) = {ord2(p) + 1}}}"
    factor = Fraction(p) / t.scale
    return f"({_fmt_frac(factor)}) * {base} (weight 3/2)"


# -- numerical radial evaluation --------------------------------------------------

def eval_radial(c: FalseThetaCombination, t: float, tail_eps: float = 1e-15) -> float:
    """Float value of the combination at ``q = exp(-2 pi t)``."""
    if t <= 0:
        raise ValueError("t must be positive")
    total = 0.0
    for term in c.terms:
        lam = float(term.scale)
        x = float(term.offset)
        w = math.ceil(math.sqrt(math.log(1 / tail_eps) / (2 * math.pi * t * lam))) + 2
        w += 2 * term.derivative_order + 2
        s = 0.0
        for m in range(math.floor(-x) - w, math.ceil(-x) + w + 1):
            v = m + x
            e = lam * v * v
            coeff = float(sgn_star(m)) if term.kind == "F" else abs(v)
            s += coeff * e ** term.derivative_order * math.exp(-2 * math.pi * t * e)
        total += float(term.coefficient) * math.exp(-2 * math.pi * t * float(term.qshift)) * s
    for e, v in c.correction.items():
        total += float(v) * math.exp(-2 * math.pi * t * float(e))
    return total
