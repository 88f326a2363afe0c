"""Sparse truncated q-series with rational exponents and coefficients."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping


class InsufficientOrder(ValueError):
    pass


def sgn(x) -> int:
    return (x > 0) - (x < 0)


def sgn_star(x) -> int:
    """Sign function with ``sgn_star(0) == 1``."""
    return 1 if x >= 0 else -1


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact exponents/coefficients")
    return Fraction(x)


@dataclass(frozen=True)
class QSeries:
    """``sum c_e q^e`` known exactly for all exponents ``e <= order``.

    Terms above ``order`` are unknown, never implicitly zero.
    """

    terms: Mapping[Fraction, Fraction] = field(default_factory=dict)
    order: Fraction = Fraction(0)

    def __post_init__(self):
        order = _frac(self.order)
        clean = {}
        for e, c in self.terms.items():
            e, c = _frac(e), _frac(c)
            if c and e <= order:
                clean[e] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items())))
        object.__setattr__(self, "order", order)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple], order) -> "QSeries":
        acc: dict[Fraction, Fraction] = {}
        for e, c in pairs:
            e = _frac(e)
            acc[e] = acc.get(e, Fraction(0)) + _frac(c)
        return cls(acc, order)

    @classmethod
    def zero(cls, order) -> "QSeries":
        return cls({}, order)

    def __add__(self, other: "QSeries") -> "QSeries":
        return series_add(self, other)

    def __neg__(self) -> "QSeries":
        return series_shift_scale(self, 0, -1)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return series_add(self, -other)

    def __getitem__(self, e) -> Fraction:
        e = _frac(e)
        if e > self.order:
            raise InsufficientOrder(f"exponent {e} above truncation order {self.order}")
        return self.terms.get(e, Fraction(0))

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def truncate(self, order) -> "QSeries":
        order = _frac(order)
        if order > self.order:
            raise InsufficientOrder(f"cannot raise order {self.order} to {order}")
        return QSeries(self.terms, order)

    def common_denominator(self) -> int:
        from math import lcm
        return lcm(1, *(e.denominator for e in self.terms))

    def __str__(self) -> str:
        return format_series(self)

    def to_json(self) -> dict:
        return {
            "terms": [{"exponent": _fstr(e), "coefficient": _fstr(c)} for e, c in self.terms.items()],
            "order": _fstr(self.order),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "QSeries":
        return cls({Fraction(t["exponent"]): Fraction(t["coefficient"]) for t in data["terms"]},
                   Fraction(data["order"]))


def _fstr(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def series_add(a: QSeries, b: QSeries) -> QSeries:
    order = min(a.order, b.order)
    acc = dict(a.terms)
    for e, c in b.terms.items():
        acc[e] = acc.get(e, Fraction(0)) + c
    return QSeries(acc, order)


def series_sum(items: Iterable[QSeries], order) -> QSeries:
    acc: dict[Fraction, Fraction] = {}
    order = _frac(order)
    for s in items:
        order = min(order, s.order)
        for e, c in s.terms.items():
            acc[e] = acc.get(e, Fraction(0)) + c
    return QSeries(acc, order)


def series_shift_scale(a: QSeries, qpower=0, factor=1, exponent_scale=1) -> QSeries:
    """Map each term ``c q^e`` to ``factor * c * q^(qpower + exponent_scale*e)``."""
    qpower, factor, lam = _frac(qpower), _frac(factor), _frac(exponent_scale)
    if lam <= 0:
        raise ValueError("exponent_scale must be positive")
    if factor == 0:
        return QSeries({}, qpower + lam * a.order)
    return QSeries({qpower + lam * e: factor * c for e, c in a.terms.items()},
                   qpower + lam * a.order)


def series_equal_to_order(a: QSeries, b: QSeries, order) -> bool:
    return first_difference(a, b, order) is None


def first_difference(a: QSeries, b: QSeries, order) -> Fraction | None:
    """Smallest exponent ``<= order`` at which ``a`` and ``b`` differ, if any."""
    order = _frac(order)
    if order > min(a.order, b.order):
        raise InsufficientOrder(
            f"comparison order {order} exceeds known orders {a.order}, {b.order}")
    exps = sorted({e for e in a.terms if e <= order} | {e for e in b.terms if e <= order})
    for e in exps:
        if a.terms.get(e, 0) != b.terms.get(e, 0):
            return e
    return None


def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_series(s: QSeries) -> str:
    if not s.terms:
        return f"O(q^({_fmt_frac(s.order)}))"
    parts = [f"{_fmt_frac(c)} * q^({_fmt_frac(e)})" for e, c in s.terms.items()]
    return " + ".join(parts) + f" + O(q^({_fmt_frac(s.order)}))"


def format_lines(s: QSeries) -> list[str]:
    """One ``c * q^(p/q)`` line per term, sorted by exponent."""
    return [f"{_fmt_frac(c)} * q^({_fmt_frac(e)})" for e, c in s.terms.items()]
