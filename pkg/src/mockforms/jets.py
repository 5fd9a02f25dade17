"""Truncated Laurent series in w = 2*pi*i*z with QSeries coefficients.

A :class:`WJet` holds the coefficients of w^lo, ..., w^hi.  Everything below
``lo`` is exactly zero, everything above ``hi`` is unknown.  Because
D_z = (1/2 pi i) d/dz = d/dw, "apply D_z and set z = 0" is just the
coefficient of w^1.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .errors import ConsistencyError, NotInvertibleError, WindowUnderflowError
from .gaussian import ZERO, GaussianRational
from .numeric import ComplexVal
from .qseries import DEFAULT_DENOM, QSeries, qs_eval, qs_inv, qs_mul

_EXACT_ZERO = QSeries.zero()


def _as_qseries(x) -> QSeries:
    if isinstance(x, QSeries):
        return x
    return QSeries.constant(x)


class WJet:
    __slots__ = ("lo", "coeffs")

    def __init__(self, lo: int, coeffs):
        coeffs = tuple(_as_qseries(c) for c in coeffs)
        # a pole term whose coefficient vanishes (to its truncation) is dropped
        while lo < 0 and coeffs and coeffs[0].is_zero():
            coeffs = coeffs[1:]
            lo += 1
        self.lo = lo
        self.coeffs = coeffs

    @property
    def hi(self) -> int:
        return self.lo + len(self.coeffs) - 1

    @classmethod
    def constant(cls, c, hi: int = 0) -> WJet:
        c = _as_qseries(c)
        return cls(0, (c,) + (_EXACT_ZERO,) * hi)

    @classmethod
    def w_power(cls, k: int, hi: int | None = None) -> WJet:
        hi = k if hi is None else hi
        return cls(k, (QSeries.one(),) + (_EXACT_ZERO,) * (hi - k))

    def coeff(self, k: int) -> QSeries:
        return jet_coeff(self, k)

    def pole_part(self) -> list[tuple[int, QSeries]]:
        return [(self.lo + i, c) for i, c in enumerate(self.coeffs) if self.lo + i < 0 and not c.is_zero()]

    def is_holomorphic(self) -> bool:
        return not self.pole_part()

    def require_holomorphic(self, what: str = "jet") -> WJet:
        poles = self.pole_part()
        if poles:
            k, c = poles[0]
            raise ConsistencyError(f"{what}: w^{k} coefficient does not cancel: {c!r}")
        return self

    # -- arithmetic ------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, WJet):
            if self.hi < 0:
                raise WindowUnderflowError("adding a constant to a jet not known at w^0", deficit=-self.hi)
            other = WJet.constant(other, self.hi)
        lo = min(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        return WJet(lo, [self._get(k) + other._get(k) for k in range(lo, hi + 1)])

    __radd__ = __add__

    def __neg__(self):
        return WJet(self.lo, [-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, WJet):
            return self + (-_as_qseries(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, WJet):
            return jet_mul(self, other)
        if isinstance(other, QSeries):
            return WJet(self.lo, [qs_mul(c, other) for c in self.coeffs])
        return WJet(self.lo, [c.scale(other) for c in self.coeffs])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 1:
            return NotImplemented
        result = self
        for _ in range(n - 1):
            result = jet_mul(result, self)
        return result

    def inverse(self) -> WJet:
        return jet_inv(self)

    def _get(self, k: int) -> QSeries:
        if k < self.lo:
            return _EXACT_ZERO
        return self.coeffs[k - self.lo]

    # -- reshaping ---------------------------------------------------------------
    def scale_w(self, a) -> WJet:
        """Substitute w -> a*w."""
        a = Fraction(a)
        return WJet(self.lo, [c.scale(a ** (self.lo + i)) for i, c in enumerate(self.coeffs)])

    def truncate_w(self, hi: int) -> WJet:
        if hi >= self.hi:
            return self
        return WJet(self.lo, self.coeffs[: max(hi - self.lo + 1, 0)])

    def truncate_q(self, order) -> WJet:
        return WJet(self.lo, [c.truncate(order) for c in self.coeffs])

    def shift_q(self, exponent) -> WJet:
        return WJet(self.lo, [c.shift(exponent) for c in self.coeffs])

    def agrees_with(self, other: WJet, order=None) -> bool:
        lo = min(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        return all(self._get(k).agrees_with(other._get(k), order) for k in range(lo, hi + 1))

    def first_difference(self, other: WJet, order=None):
        """(w-power, q-index, denom) of the first disagreement, or None."""
        lo = min(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        for k in range(lo, hi + 1):
            d = self._get(k).first_difference(other._get(k), order)
            if d is not None:
                return (k,) + d
        return None

    def evaluate(self, w: complex, tau) -> ComplexVal:
        """Sum of the retained terms at numeric (w, tau); the w-tail is not bounded."""
        total = ComplexVal(0j)
        for i, c in enumerate(self.coeffs):
            total = total + qs_eval(c, tau) * (w ** (self.lo + i))
        return total

    def __repr__(self):
        return f"WJet(lo={self.lo}, hi={self.hi})"


def jet_coeff(a: WJet, k: int) -> QSeries:
    """Exact QSeries coefficient of w^k (zero below the window)."""
    if k > a.hi:
        raise WindowUnderflowError(
            f"w^{k} requested but the jet is only known up to w^{a.hi} (short by {k - a.hi})",
            deficit=k - a.hi,
        )
    return a._get(k)


def jet_mul(a: WJet, b: WJet) -> WJet:
    lo = a.lo + b.lo
    hi = min(a.hi + b.lo, b.hi + a.lo)
    out = []
    for k in range(lo, hi + 1):
        acc = None
        for i in range(a.lo, k - b.lo + 1):
            x = a.coeffs[i - a.lo]
            y = b.coeffs[k - i - b.lo]
            if (x.is_exact() and x.is_zero()) or (y.is_exact() and y.is_zero()):
                continue
            t = qs_mul(x, y)
            acc = t if acc is None else acc + t
        out.append(_EXACT_ZERO if acc is None else acc)
    return WJet(lo, out)


def jet_inv(a: WJet) -> WJet:
    """Laurent inverse; the lowest nonzero coefficient must be an invertible QSeries."""
    coeffs = list(a.coeffs)
    lo = a.lo
    while coeffs and coeffs[0].is_zero():
        coeffs.pop(0)
        lo += 1
    if not coeffs:
        raise NotInvertibleError("jet has no nonzero coefficient in its window")
    b0 = qs_inv(coeffs[0])
    n_terms = len(coeffs)
    b = [b0]
    for n in range(1, n_terms):
        acc = None
        for j in range(1, n + 1):
            x = coeffs[j]
            if x.is_exact() and x.is_zero():
                continue
            t = qs_mul(x, b[n - j])
            acc = t if acc is None else acc + t
        b.append(_EXACT_ZERO if acc is None else -qs_mul(acc, b0))
    return WJet(-lo, b)


def jet_exp(a: WJet) -> WJet:
    """exp of a jet without constant or pole part (lo >= 1 after tightening)."""
    if a.lo < 1:
        for k in range(a.lo, min(1, a.hi + 1)):
            if not a._get(k).is_zero():
                raise ValueError("jet_exp needs a jet vanishing at w = 0")
    hi = a.hi
    x = [a._get(k) if k >= 1 else _EXACT_ZERO for k in range(0, hi + 1)]
    e = [QSeries.one()]
    for n in range(1, hi + 1):
        acc = None
        for j in range(1, n + 1):
            if x[j].is_exact() and x[j].is_zero():
                continue
            t = qs_mul(x[j], e[n - j]).scale(j)
            acc = t if acc is None else acc + t
        e.append(_EXACT_ZERO if acc is None else acc.scale(Fraction(1, n)))
    return WJet(0, e)


def jet_exp_linear(c, terms: int) -> WJet:
    """exp(c*w) = sum_{k < terms} c^k w^k / k!, exactly."""
    if terms < 1:
        raise ValueError("terms must be >= 1")
    c = Fraction(c)
    return WJet(0, [QSeries.constant(c ** k / factorial(k)) for k in range(terms)])


def pole_factor(a, hi: int) -> WJet:
    """1/(1 - exp(a*w)) as a Laurent jet up to w^hi."""
    if a == 0:
        raise ValueError("1/(1 - exp(0)) is not defined")
    one_minus = WJet.constant(1, hi + 2) - jet_exp_linear(a, hi + 3)
    return jet_inv(one_minus).truncate_w(hi)


class ExpSum:
    """Accumulator for sums of coeff * q^(k/denom) * exp(c*w) with c rational.

    Converted to a holomorphic w-jet by expanding each exponential.
    """

    def __init__(self, denom: int = DEFAULT_DENOM):
        self.denom = denom
        self._terms: dict[Fraction, dict[int, GaussianRational]] = {}

    def add(self, c, k: int, coeff) -> None:
        c = Fraction(c)
        bucket = self._terms.setdefault(c, {})
        coeff = GaussianRational.coerce(coeff)
        bucket[k] = bucket.get(k, ZERO) + coeff

    def __len__(self):
        return sum(len(b) for b in self._terms.values())

    def to_jet(self, hi: int, trunc: int | None) -> WJet:
        accs: list[dict[int, GaussianRational]] = [{} for _ in range(hi + 1)]
        for c, bucket in self._terms.items():
            items = [(k, v) for k, v in bucket.items() if v and (trunc is None or k < trunc)]
            factor = Fraction(1)
            for j in range(hi + 1):
                if j:
                    factor = factor * c / j
                if not factor:
                    break
                acc = accs[j]
                for k, v in items:
                    acc[k] = acc.get(k, ZERO) + v * factor
        return WJet(0, [QSeries(acc, trunc, self.denom) for acc in accs])
