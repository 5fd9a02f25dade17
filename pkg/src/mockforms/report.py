"""Check specifications, identity reports and the three generic comparators
(exact series equality, transformation laws, shadow images)."""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import MockFormsError
from .numeric import ComplexVal
from .qseries import QSeries

MODES = ("exact", "numeric", "shadow", "transform")


@dataclass(frozen=True)
class CheckSpec:
    name: str
    mode: str
    order: int = 0
    samples: tuple = ()
    tol: float = 0.0
    seed: int = 0
    # False when the samples are the check's fixed defaults rather than seeded draws
    sampled: bool = True

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown check mode {self.mode!r}")

    def params(self) -> dict:
        out = {"order": self.order, "tol": self.tol, "seed": self.seed, "samples": len(self.samples)}
        if self.mode == "exact":
            return {"order": self.order}
        return out

    def repro(self) -> str:
        if self.mode == "exact":
            return f"mockforms verify {self.name} --order {self.order}"
        if not self.sampled:
            return f"mockforms verify {self.name} --tol {self.tol:g}"
        return (f"mockforms verify {self.name} --samples {len(self.samples)} "
                f"--seed {self.seed} --tol {self.tol:g}")


@dataclass
class IdentityReport:
    spec: CheckSpec
    status: str  # pass | fail | error
    detail: dict = field(default_factory=dict)
    runtime_ms: float | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_record(self) -> dict:
        detail = dict(self.detail)
        if self.status != "pass":
            detail.setdefault("repro", self.spec.repro())
        return {
            "name": self.spec.name,
            "mode": self.spec.mode,
            "status": self.status,
            "detail": detail,
            "params": self.spec.params(),
            "runtime_ms": self.runtime_ms,
        }


def _fmt_coeff(c) -> str:
    return str(c)


def timed(fn: Callable[[], IdentityReport]) -> IdentityReport:
    t0 = time.perf_counter()
    rep = fn()
    rep.runtime_ms = round((time.perf_counter() - t0) * 1000.0, 3)
    return rep


# -- exact ---------------------------------------------------------------------

def check_qseries_equal(lhs: QSeries, rhs: QSeries, order, spec: CheckSpec | None = None,
                        name: str = "qseries_equal") -> IdentityReport:
    """Coefficientwise comparison below min(order, both truncations)."""
    spec = spec or CheckSpec(name, "exact", order=int(order) if order is not None else 0)
    lt, rt = lhs.order, rhs.order
    limits = [x for x in (None if order is None else Fraction(order), lt, rt) if x is not None]
    limit = min(limits) if limits else None
    diff = lhs.first_difference(rhs, limit)
    detail = {"compared_below": None if limit is None else str(limit)}
    if order is not None and limit is not None and limit < Fraction(order):
        detail["warning"] = f"operands only known below q^{limit}"
    if diff is None:
        return IdentityReport(spec, "pass", detail)
    k, denom = diff
    a, b = lhs._align(rhs)
    detail.update({
        "first_mismatch_exponent": str(Fraction(k, denom)),
        "lhs": _fmt_coeff(a[k]),
        "rhs": _fmt_coeff(b[k]),
    })
    return IdentityReport(spec, "fail", detail)


# -- numeric -------------------------------------------------------------------

def rel_error(lhs: ComplexVal, rhs: ComplexVal) -> tuple[float, float]:
    """(|lhs - rhs|, combined error bound), both scaled by max(1, |lhs|, |rhs|)."""
    scale = max(1.0, abs(lhs.value), abs(rhs.value))
    return abs(lhs.value - rhs.value) / scale, (lhs.err + rhs.err) / scale


def compare_samples(spec: CheckSpec, pairs: Sequence[tuple[object, ComplexVal, ComplexVal]],
                    tol: float | None = None) -> IdentityReport:
    """Pass iff every scaled difference and every scaled error bound is <= tol."""
    tol = spec.tol if tol is None else tol
    worst, worst_bound, argmax = -1.0, 0.0, None
    for sample, lhs, rhs in pairs:
        d, b = rel_error(lhs, rhs)
        if d > worst:
            worst, argmax = d, sample
        worst_bound = max(worst_bound, b)
    detail = {
        "max_error": worst,
        "max_error_bound": worst_bound,
        "argmax": _sample_repr(argmax),
        "n_samples": len(pairs),
        "tol": tol,
    }
    if not pairs:
        return IdentityReport(spec, "pass", detail)
    ok = worst <= tol and worst_bound <= tol
    if worst <= tol and worst_bound > tol:
        detail["note"] = "truncation bound exceeds tolerance"
    return IdentityReport(spec, "pass" if ok else "fail", detail)


def _sample_repr(sample):
    if sample is None:
        return None
    if isinstance(sample, (tuple, list)):
        return [_sample_repr(s) for s in sample]
    if isinstance(sample, complex):
        return [sample.real, sample.imag]
    return sample


@dataclass(frozen=True)
class TransformLaw:
    """f(*mapped(tau, zs)) == factor(tau, zs) * f(tau, *zs)."""

    name: str
    mapped: Callable
    factor: Callable


def check_transform(f: Callable, law: TransformLaw, spec: CheckSpec) -> IdentityReport:
    pairs = []
    try:
        for sample in spec.samples:
            tau, zs = sample[0], tuple(sample[1:])
            tau2, zs2 = law.mapped(tau, zs)
            lhs = ComplexVal.of(f(tau2, *zs2))
            rhs = ComplexVal.of(f(tau, *zs)) * law.factor(tau, zs)
            pairs.append((sample, lhs, rhs))
    except MockFormsError as exc:
        return IdentityReport(spec, "error", {"error": f"{type(exc).__name__}: {exc}", "law": law.name})
    rep = compare_samples(spec, pairs)
    rep.detail["law"] = law.name
    return rep


def check_shadow(f: Callable, weight, expected, spec: CheckSpec, h: float = 1e-3,
                 normaliser: Callable | None = None) -> IdentityReport:
    """Compare xi_weight(f) with ``expected`` (callable tau -> value) on the samples.

    ``expected == "measure"`` fits |xi f| / normaliser ~ C * v^p over the
    samples and reports (p, C); pass iff the fitted law reproduces every sample
    to ``spec.tol`` relative.
    """
    from .appell import xi_numeric

    taus = [complex(s[0] if isinstance(s, (tuple, list)) else s) for s in spec.samples]
    try:
        images = [xi_numeric(f, weight, tau, h) for tau in taus]
    except MockFormsError as exc:
        return IdentityReport(spec, "error", {"error": f"{type(exc).__name__}: {exc}"})
    if expected != "measure":
        pairs = []
        for tau, img in zip(taus, images):
            ref = ComplexVal.of(expected(tau))
            pairs.append((tau, img, ref))
        worst, argmax = -1.0, None
        for tau, img, ref in pairs:
            d = abs(img.value - ref.value) / (abs(ref.value) or 1.0)
            if d > worst:
                worst, argmax = d, tau
        detail = {"max_rel_error": worst, "argmax": _sample_repr(argmax), "n_samples": len(pairs),
                  "tol": spec.tol, "h": h}
        return IdentityReport(spec, "pass" if worst <= spec.tol else "fail", detail)
    return _measure_shadow(spec, taus, images, normaliser, h)


def _measure_shadow(spec, taus, images, normaliser, h):
    ratios = [img.value / complex(ComplexVal.of(normaliser(tau)).value) for tau, img in zip(taus, images)]
    vs = np.array([tau.imag for tau in taus])
    mags = np.array([abs(r) for r in ratios])
    detail = {"n_samples": len(taus), "h": h, "tol": spec.tol}
    if len(taus) < 2 or np.ptp(vs) == 0:
        return IdentityReport(spec, "error", dict(detail, error="need samples at >= 2 distinct Im(tau)"))
    slope, intercept = np.polyfit(np.log(vs), np.log(mags), 1)
    # the exponent is reported as fitted, then snapped to the nearest half-integer
    p = round(2 * slope) / 2
    consts = [r / tau.imag ** p for r, tau in zip(ratios, taus)]
    c_mean = complex(np.mean(consts))
    spread = max(abs(c - c_mean) for c in consts) / abs(c_mean)
    detail.update({
        "fitted_power": float(slope),
        "power": p,
        "constant": [c_mean.real, c_mean.imag],
        "constant_spread": float(spread),
    })
    return IdentityReport(spec, "pass" if spread <= spec.tol else "fail", detail)


def with_status(rep: IdentityReport, status: str, **extra) -> IdentityReport:
    return replace(rep, status=status, detail=dict(rep.detail, **extra))


__all__ = [
    "CheckSpec", "IdentityReport", "TransformLaw", "check_qseries_equal", "check_transform",
    "check_shadow", "compare_samples", "rel_error", "timed",
]
