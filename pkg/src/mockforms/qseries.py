"""Truncated q-series with fractional exponents and Q(i) coefficients.

A :class:`QSeries` represents ``sum_k c_k q^(k/denom)`` where only exponents
``k < trunc`` are known.  ``trunc=None`` marks an exact (finite) series.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping

import numpy as np

from .errors import DenominatorError, DivergentTailError, NotInvertibleError
from .gaussian import ONE, ZERO, GaussianRational
from .numeric import EPS, ComplexVal, check_upper_half_plane

DEFAULT_DENOM = 48
MAX_DENOM = 48 * 1000

_coerce = GaussianRational.coerce


def _min_trunc(*truncs):
    known = [t for t in truncs if t is not None]
    return min(known) if known else None


def _check_denom(denom: int) -> int:
    if not isinstance(denom, int) or denom < 1:
        raise DenominatorError(f"denominator must be a positive integer, got {denom!r}")
    if denom > MAX_DENOM:
        raise DenominatorError(
            f"denominator {denom} exceeds the maximum {MAX_DENOM}", required=denom
        )
    return denom


class QSeries:
    """Immutable truncated q-series.  See module docstring."""

    __slots__ = ("denom", "trunc", "_coeffs", "_keys", "_numeric")

    def __init__(self, coeffs: Mapping[int, object] | None = None, trunc: int | None = None,
                 denom: int = DEFAULT_DENOM):
        _check_denom(denom)
        if trunc is not None and not isinstance(trunc, int):
            raise TypeError("trunc must be an int or None")
        clean = {}
        if coeffs:
            for k, c in coeffs.items():
                if trunc is not None and k >= trunc:
                    continue
                c = _coerce(c)
                if c:
                    clean[int(k)] = c
        self._init(clean, trunc, denom)

    def _init(self, clean, trunc, denom):
        self.denom = denom
        self.trunc = trunc
        self._coeffs = clean
        self._keys = None
        self._numeric = None

    @classmethod
    def _raw(cls, clean: dict, trunc, denom) -> QSeries:
        """Construct from an already-clean dict (no zeros, keys below trunc)."""
        obj = object.__new__(cls)
        obj._init(clean, trunc, denom)
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, trunc=None, denom=DEFAULT_DENOM) -> QSeries:
        return cls._raw({}, trunc, denom)

    @classmethod
    def one(cls, denom=DEFAULT_DENOM) -> QSeries:
        return cls._raw({0: ONE}, None, denom)

    @classmethod
    def constant(cls, c, trunc=None, denom=DEFAULT_DENOM) -> QSeries:
        return cls({0: c}, trunc, denom)

    @classmethod
    def monomial(cls, exponent, coeff=1, trunc=None, denom=DEFAULT_DENOM) -> QSeries:
        """``coeff * q^exponent``; ``exponent`` must be a multiple of 1/denom."""
        k = exponent_index(exponent, denom)
        return cls({k: coeff}, trunc, denom)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[object, object]], order, denom=DEFAULT_DENOM) -> QSeries:
        """Sum ``coeff * q^exponent`` over ``terms``, truncated at q-order ``order``."""
        trunc = None if order is None else exponent_index(order, denom)
        acc: dict[int, GaussianRational] = {}
        for exponent, c in terms:
            k = exponent_index(exponent, denom)
            if trunc is not None and k >= trunc:
                continue
            acc[k] = acc.get(k, ZERO) + _coerce(c)
        return cls(acc, trunc, denom)

    # -- basic accessors ---------------------------------------------------
    @property
    def coeffs(self) -> dict[int, GaussianRational]:
        return dict(self._coeffs)

    def keys(self) -> list[int]:
        if self._keys is None:
            self._keys = sorted(self._coeffs)
        return self._keys

    def items(self):
        c = self._coeffs
        return [(k, c[k]) for k in self.keys()]

    def __len__(self):
        return len(self._coeffs)

    def __getitem__(self, k: int) -> GaussianRational:
        if self.trunc is not None and k >= self.trunc:
            raise IndexError(f"coefficient at index {k} lies beyond truncation {self.trunc}")
        return self._coeffs.get(k, ZERO)

    def coefficient(self, exponent) -> GaussianRational:
        return self[exponent_index(exponent, self.denom)]

    @property
    def order(self) -> Fraction | None:
        """First unknown q-exponent (None for exact series)."""
        return None if self.trunc is None else Fraction(self.trunc, self.denom)

    def is_zero(self) -> bool:
        """No nonzero coefficient below the truncation."""
        return not self._coeffs

    def is_exact(self) -> bool:
        return self.trunc is None

    def valuation(self) -> int | None:
        """Lowest stored index; for an empty series the truncation (None if exactly 0)."""
        if self._coeffs:
            return self.keys()[0]
        return self.trunc

    def leading(self) -> GaussianRational:
        if not self._coeffs:
            return ZERO
        return self._coeffs[self.keys()[0]]

    def is_real(self) -> bool:
        return all(not c.im for c in self._coeffs.values())

    def is_imaginary(self) -> bool:
        return all(not c.re for c in self._coeffs.values())

    # -- structural operations ---------------------------------------------
    def with_denom(self, denom: int) -> QSeries:
        _check_denom(denom)
        if denom == self.denom:
            return self
        if denom % self.denom:
            raise DenominatorError(
                f"cannot rewrite denominator {self.denom} as {denom}", required=math.lcm(denom, self.denom)
            )
        f = denom // self.denom
        trunc = None if self.trunc is None else self.trunc * f
        return QSeries._raw({k * f: c for k, c in self._coeffs.items()}, trunc, denom)

    def truncate(self, order) -> QSeries:
        """Forget everything at q-exponents >= order (never extends the known range)."""
        t = exponent_index(order, self.denom)
        if self.trunc is not None and self.trunc <= t:
            return self
        return QSeries._raw({k: c for k, c in self._coeffs.items() if k < t}, t, self.denom)

    def shift(self, exponent) -> QSeries:
        """Multiply by q^exponent exactly."""
        s = exponent_index(exponent, self.denom)
        if s == 0:
            return self
        trunc = None if self.trunc is None else self.trunc + s
        return QSeries._raw({k + s: c for k, c in self._coeffs.items()}, trunc, self.denom)

    def map_coefficients(self, fn) -> QSeries:
        return QSeries({k: fn(c) for k, c in self._coeffs.items()}, self.trunc, self.denom)

    def conjugate(self) -> QSeries:
        return QSeries._raw({k: c.conjugate() for k, c in self._coeffs.items()}, self.trunc, self.denom)

    # -- ring operations ----------------------------------------------------
    def _align(self, other: QSeries):
        if other.denom == self.denom:
            return self, other
        d = math.lcm(self.denom, other.denom)
        if d > MAX_DENOM:
            raise DenominatorError(f"common denominator {d} exceeds {MAX_DENOM}", required=d)
        return self.with_denom(d), other.with_denom(d)

    def __add__(self, other):
        if not isinstance(other, QSeries):
            try:
                other = QSeries.constant(other, denom=self.denom)
            except TypeError:
                return NotImplemented
        a, b = self._align(other)
        trunc = _min_trunc(a.trunc, b.trunc)
        acc = {k: c for k, c in a._coeffs.items() if trunc is None or k < trunc}
        for k, c in b._coeffs.items():
            if trunc is not None and k >= trunc:
                continue
            s = acc.get(k)
            if s is None:
                acc[k] = c
            else:
                s = s + c
                if s:
                    acc[k] = s
                else:
                    del acc[k]
        return QSeries._raw(acc, trunc, a.denom)

    __radd__ = __add__

    def __neg__(self):
        return QSeries._raw({k: -c for k, c in self._coeffs.items()}, self.trunc, self.denom)

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            try:
                other = QSeries.constant(other, denom=self.denom)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> QSeries:
        c = _coerce(c)
        if not c:
            return QSeries._raw({}, self.trunc, self.denom)
        if c == ONE:
            return self
        return QSeries._raw({k: v * c for k, v in self._coeffs.items()}, self.trunc, self.denom)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return qs_mul(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return qs_inv(self) ** (-n)
        result = QSeries.one(self.denom)
        base = self
        while n:
            if n & 1:
                result = qs_mul(result, base)
            n >>= 1
            if n:
                base = qs_mul(base, base)
        return result

    def inverse(self, order=None) -> QSeries:
        return qs_inv(self, order)

    # -- comparison ----------------------------------------------------------
    def first_difference(self, other: QSeries, order=None):
        """First index (in the common denominator) where the two series differ,
        comparing below min(order, truncations).  Returns (index, denom) or None."""
        a, b = self._align(other)
        limit = _min_trunc(a.trunc, b.trunc,
                           None if order is None else exponent_index(order, a.denom))
        for k in sorted(set(a._coeffs) | set(b._coeffs)):
            if limit is not None and k >= limit:
                break
            if a._coeffs.get(k, ZERO) != b._coeffs.get(k, ZERO):
                return k, a.denom
        return None

    def agrees_with(self, other: QSeries, order=None) -> bool:
        return self.first_difference(other, order) is None

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = self._align(other)
        return a.trunc == b.trunc and a._coeffs == b._coeffs

    __hash__ = None

    def __repr__(self):
        terms = self.items()[:6]
        body = " + ".join(f"({c})q^{Fraction(k, self.denom)}" for k, c in terms)
        if len(self) > 6:
            body += " + ..."
        tail = "" if self.trunc is None else f" + O(q^{self.order})"
        return f"QSeries({body or '0'}{tail})"

    # -- numerics -------------------------------------------------------------
    def _numeric_arrays(self):
        if self._numeric is None:
            items = self.items()
            ks = np.array([k for k, _ in items], dtype=float) / self.denom
            cs = np.array([complex(c) for _, c in items], dtype=complex)
            self._numeric = (ks, cs)
        return self._numeric

    def evaluate(self, tau) -> ComplexVal:
        return qs_eval(self, tau)

    # -- text format ------------------------------------------------------------
    def to_text(self) -> str:
        return dumps(self)

    @staticmethod
    def from_text(text: str) -> QSeries:
        return loads(text)


def exponent_index(exponent, denom: int) -> int:
    """Integer k with exponent == k/denom; raises if not representable."""
    if isinstance(exponent, int):
        return exponent * denom
    x = Fraction(exponent) * denom
    if x.denominator != 1:
        required = math.lcm(denom, Fraction(exponent).denominator)
        raise DenominatorError(
            f"exponent {exponent} is not a multiple of 1/{denom}; needs denominator {required}",
            required=required,
        )
    return int(x)


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    """Exact truncated Cauchy product.

    Known below min(trunc_a + val_b, trunc_b + val_a); an exactly-zero factor
    gives an exact zero.
    """
    a, b = a._align(b)
    if (a.trunc is None and not a._coeffs) or (b.trunc is None and not b._coeffs):
        return QSeries._raw({}, None, a.denom)
    va, vb = a.valuation(), b.valuation()
    trunc = _min_trunc(None if a.trunc is None else a.trunc + vb,
                       None if b.trunc is None else b.trunc + va)
    if not a._coeffs or not b._coeffs:
        return QSeries._raw({}, trunc, a.denom)
    if len(a) > len(b):
        a, b = b, a
    acc = _convolve(a, b, trunc)
    return QSeries._raw(acc, trunc, a.denom)


def _split(s: QSeries):
    re, im = [], []
    for k, c in s.items():
        if c.re:
            re.append((k, c.re))
        if c.im:
            im.append((k, c.im))
    return re, im


def _conv_real(xs, ys, trunc, acc, sign):
    # xs, ys sorted by exponent; ys scanned until the truncation is reached
    if not xs or not ys:
        return
    for kx, cx in xs:
        if trunc is not None:
            bound = trunc - kx
            for ky, cy in ys:
                if ky >= bound:
                    break
                k = kx + ky
                acc[k] = acc.get(k, 0) + sign * cx * cy
        else:
            for ky, cy in ys:
                k = kx + ky
                acc[k] = acc.get(k, 0) + sign * cx * cy


def _convolve(a: QSeries, b: QSeries, trunc):
    ar, ai = _split(a)
    br, bi = _split(b)
    re: dict[int, Fraction] = {}
    im: dict[int, Fraction] = {}
    _conv_real(ar, br, trunc, re, 1)
    _conv_real(ai, bi, trunc, re, -1)
    _conv_real(ar, bi, trunc, im, 1)
    _conv_real(ai, br, trunc, im, 1)
    return _merge(re, im)


def _merge(re: dict, im: dict) -> dict[int, GaussianRational]:
    out = {}
    for k in set(re) | set(im):
        r = re.get(k, 0)
        i = im.get(k, 0)
        if r or i:
            out[k] = GaussianRational._make(Fraction(r) if type(r) is not Fraction else r,
                                            Fraction(i) if type(i) is not Fraction else i)
    return out


def qs_inv(a: QSeries, order=None) -> QSeries:
    """Multiplicative inverse.

    For a = c q^v (1 + ...) known below trunc T the inverse is known below
    T - 2v.  Exact non-monomial inputs need an explicit ``order``.
    """
    if not a._coeffs:
        raise NotInvertibleError("zero series (or series with no known nonzero coefficient) is not invertible")
    keys = a.keys()
    v = keys[0]
    c0 = a._coeffs[v]
    inv0 = c0.inverse()
    if len(keys) == 1:
        trunc = None if a.trunc is None else a.trunc - 2 * v
        out = QSeries._raw({-v: inv0}, trunc, a.denom)
        return out if order is None else out.truncate(order)
    if a.trunc is None:
        if order is None:
            raise ValueError("inverse of an exact non-monomial series needs an explicit order")
        trunc = exponent_index(order, a.denom)
    else:
        trunc = a.trunc - 2 * v
        if order is not None:
            trunc = min(trunc, exponent_index(order, a.denom))
    rel_limit = trunc + v  # relative exponents of the inverse below this are needed
    rel = [(k - v, c) for k, c in a.items()[1:] if k - v < rel_limit]
    step = reduce(math.gcd, (k for k, _ in rel), 0) or 1
    b: dict[int, GaussianRational] = {0: inv0}
    n = step
    while n < rel_limit:
        s = ZERO
        for j, aj in rel:
            if j > n:
                break
            bj = b.get(n - j)
            if bj is not None:
                s = s + aj * bj
        if s:
            t = -(s * inv0)
            if t:
                b[n] = t
        n += step
    return QSeries._raw({k - v: c for k, c in b.items()}, trunc, a.denom)


def qs_eval(a: QSeries, tau) -> ComplexVal:
    """Evaluate at q = exp(2 pi i tau) with a tail bound for the unknown part.

    The tail bound assumes coefficients are dominated by A (x + 2)^p with x the
    exponent above the valuation; p is one more than the growth exponent fitted
    to the stored coefficients and A is twice the fitted constant.  The sum of
    that majorant over all exponents >= trunc (step 1/denom) is bounded by a
    geometric series, which must converge.
    """
    tau = check_upper_half_plane(tau)
    ks, cs = a._numeric_arrays()
    if len(ks):
        terms = cs * np.exp(2j * np.pi * tau * ks)
        value = complex(terms.sum())
        # exp(0) and a single term are exact; otherwise each exponential and addition rounds
        inexact = float(np.abs(terms[ks != 0]).sum())
        summed = float(np.abs(terms).sum()) if len(ks) > 1 else 0.0
        rounding = 4 * EPS * (inexact + summed) * max(1, math.log2(len(ks)))
    else:
        value, rounding = 0j, 0.0
    if a.trunc is None:
        return ComplexVal(value, rounding)
    return ComplexVal(value, rounding + tail_bound(a, tau.imag))


def tail_bound(a: QSeries, v: float) -> float:
    d = a.denom
    r = math.exp(-2 * math.pi * v)
    X = a.trunc / d
    if a._coeffs:
        x0 = a.keys()[0] / d
        mags = [(k / d - x0, abs(complex(c))) for k, c in a.items()]
    else:
        x0 = X
        mags = []
    p_fit = 0.0
    for x, m in mags:
        if x >= 1 and m > 1:
            p_fit = max(p_fit, math.log(m) / math.log(x + 2))
    p = math.ceil(p_fit) + 1
    A = 2 * max([1.0] + [m / (x + 2) ** p for x, m in mags])
    xr = X - x0
    rho = r ** (1 / d) * (1 + 1 / (d * (xr + 2))) ** p
    if rho >= 1:
        raise DivergentTailError(
            f"tail majorant diverges at Im(tau) = {v:g} for truncation q^{a.order} "
            f"(ratio {rho:.6f}); use a longer series or a point higher in H"
        )
    log_first = math.log(A) + X * math.log(r) + p * math.log(xr + 2)
    return math.exp(log_first) / (1 - rho)


# -- text format ---------------------------------------------------------------

def _fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def dumps(a: QSeries) -> str:
    trunc = "inf" if a.trunc is None else str(a.trunc)
    lines = [f"denom={a.denom} trunc={trunc}"]
    for k, c in a.items():
        lines.append(f"{k} {_fmt(c.re)} {_fmt(c.im)}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> QSeries:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty QSeries text")
    header = dict(part.split("=", 1) for part in lines[0].split())
    try:
        denom = int(header["denom"])
        trunc = None if header["trunc"] == "inf" else int(header["trunc"])
    except (KeyError, ValueError) as exc:
        raise ValueError(f"bad QSeries header {lines[0]!r}") from exc
    coeffs = {}
    last = None
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'k re im', got {ln!r}")
        k = int(parts[0])
        if last is not None and k <= last:
            raise ValueError(f"line {lineno}: exponents must be strictly increasing")
        last = k
        coeffs[k] = GaussianRational(Fraction(parts[1]), Fraction(parts[2]))
    return QSeries(coeffs, trunc, denom)


def q_power(exponent, denom=DEFAULT_DENOM) -> QSeries:
    return QSeries.monomial(exponent, 1, None, denom)


__all__ = [
    "QSeries", "qs_mul", "qs_inv", "qs_eval", "dumps", "loads", "q_power",
    "exponent_index", "DEFAULT_DENOM", "MAX_DENOM",
]
