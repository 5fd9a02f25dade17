"""Double-precision values carrying an explicit error bound, plus small helpers
shared by the numeric evaluators (lattice distance, principal powers)."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError, SingularInputError

EPS = 2.0 ** -52
POLE_THRESHOLD = 1e-9


@dataclass(frozen=True)
class ComplexVal:
    """A complex double together with a bound on its absolute error.

    Arithmetic propagates the bounds to first order plus the cross term, and
    adds a rounding contribution of a few ulps of the result.
    """

    value: complex
    err: float = 0.0

    def __post_init__(self):
        if not self.err >= 0.0:
            raise ValueError(f"error bound must be nonnegative, got {self.err}")

    @staticmethod
    def of(x) -> ComplexVal:
        if isinstance(x, ComplexVal):
            return x
        return ComplexVal(complex(x), 0.0)

    def _round(self, v: complex, err: float) -> ComplexVal:
        return ComplexVal(v, err + 4 * EPS * abs(v))

    def __add__(self, other):
        o = ComplexVal.of(other)
        return self._round(self.value + o.value, self.err + o.err)

    __radd__ = __add__

    def __neg__(self):
        return ComplexVal(-self.value, self.err)

    def __sub__(self, other):
        o = ComplexVal.of(other)
        return self._round(self.value - o.value, self.err + o.err)

    def __rsub__(self, other):
        return ComplexVal.of(other) - self

    def __mul__(self, other):
        o = ComplexVal.of(other)
        err = abs(self.value) * o.err + abs(o.value) * self.err + self.err * o.err
        return self._round(self.value * o.value, err)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = ComplexVal.of(other)
        denom = abs(o.value) - o.err
        if denom <= 0:
            raise SingularInputError("division by a value indistinguishable from zero")
        v = self.value / o.value
        err = (self.err + abs(v) * o.err) / denom
        return self._round(v, err)

    def __rtruediv__(self, other):
        return ComplexVal.of(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = ComplexVal(1.0)
        for _ in range(n):
            result = result * self
        return result

    def conjugate(self) -> ComplexVal:
        return ComplexVal(self.value.conjugate(), self.err)

    def __abs__(self):
        return abs(self.value)

    def __complex__(self):
        return self.value


def check_upper_half_plane(tau: complex):
    tau = complex(tau)
    if not tau.imag > 0:
        raise DomainError(f"Im(tau) must be positive, got tau = {tau}")
    return tau


def lattice_distance(z: complex, tau: complex) -> float:
    """Distance from z to the nearest point of Z*tau + Z."""
    alpha = z.imag / tau.imag
    k0 = round(alpha)
    best = math.inf
    for k in (k0 - 1, k0, k0 + 1):
        w = z - k * tau
        m = round(w.real)
        for mm in (m - 1, m, m + 1):
            best = min(best, abs(w - mm))
    return best


def check_off_lattice(z: complex, tau: complex, what: str = "z") -> None:
    d = lattice_distance(z, tau)
    if d < POLE_THRESHOLD:
        raise SingularInputError(
            f"{what} = {z} lies within {d:.3g} of the lattice Z*tau + Z (tau = {tau})"
        )


def sqrt_minus_i_tau(tau: complex) -> complex:
    """Principal branch of sqrt(-i*tau); -i*tau lies in the right half-plane."""
    return cmath.sqrt(-1j * tau)


def minus_i_tau_power(tau: complex, k: float) -> complex:
    """(-i*tau)**k on the principal branch."""
    return cmath.exp(k * cmath.log(-1j * tau))


def e(x: complex) -> complex:
    """exp(2*pi*i*x)."""
    return cmath.exp(2j * math.pi * x)
