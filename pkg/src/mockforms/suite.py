"""Run the registered checks from a JSON config and write one JSON report.

Config keys (all optional)::

    {
      "checks": ["c_y_eta_cubed", ...],   # default: every registered check
      "order": 60,           # exact checks: override the default order; 0 skips them
      "samples": 20,         # sampled checks: draw this many points instead of the default
      "seed": 0,
      "tol": 1e-8,           # override every numeric tolerance
      "overrides": {"<check>": {"order": 40, "samples": 5, "seed": 3, "tol": 1e-6}},
      "record_timing": false,
      "jobs": 1
    }

Reports are byte-identical for identical configs unless ``record_timing`` is set.
"""

from __future__ import annotations

import json
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .checks import REGISTRY, make_spec, run_spec
from .errors import ConfigError
from .report import CheckSpec, IdentityReport

TOP_KEYS = {"checks", "order", "samples", "seed", "tol", "overrides", "record_timing", "jobs"}
OVERRIDE_KEYS = {"order", "samples", "seed", "tol"}

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


@dataclass
class SuiteConfig:
    checks: list[str] = field(default_factory=lambda: list(REGISTRY))
    order: int | None = None
    samples: int | None = None
    seed: int = 0
    tol: float | None = None
    overrides: dict = field(default_factory=dict)
    record_timing: bool = False
    jobs: int = 1


def _line_of(text: str, token: str) -> int:
    m = re.search(re.escape(json.dumps(token)), text)
    return text.count("\n", 0, m.start()) + 1 if m else 1


def _fail(text: str, token: str, message: str):
    raise ConfigError(f"line {_line_of(text, token)}: {message}")


def _int(text, key, value, minimum=0):
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        _fail(text, key, f"{key!r} must be an integer >= {minimum}, got {value!r}")
    return value


def _tol(text, key, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or value < 0:
        _fail(text, key, f"{key!r} must be a nonnegative number, got {value!r}")
    return float(value)


def parse_config(text: str) -> SuiteConfig:
    try:
        raw = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        raise ConfigError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("line 1: the config must be a JSON object")
    cfg = SuiteConfig()
    for key, value in raw.items():
        if key not in TOP_KEYS:
            _fail(text, key, f"unknown key {key!r}")
        if key == "checks":
            if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
                _fail(text, key, "'checks' must be a list of check names")
            for name in value:
                if name not in REGISTRY:
                    _fail(text, name, f"unknown check {name!r}")
            if len(set(value)) != len(value):
                _fail(text, key, "'checks' lists a check twice")
            cfg.checks = list(value)
        elif key in ("order", "samples", "seed"):
            setattr(cfg, key, _int(text, key, value, 1 if key == "samples" else 0))
        elif key == "jobs":
            cfg.jobs = _int(text, key, value, 1)
        elif key == "tol":
            cfg.tol = _tol(text, key, value)
        elif key == "record_timing":
            if not isinstance(value, bool):
                _fail(text, key, "'record_timing' must be true or false")
            cfg.record_timing = value
        elif key == "overrides":
            if not isinstance(value, dict):
                _fail(text, key, "'overrides' must be an object")
            for name, ov in value.items():
                if name not in REGISTRY:
                    _fail(text, name, f"unknown check {name!r}")
                if not isinstance(ov, dict):
                    _fail(text, name, f"override for {name!r} must be an object")
                for k, v in ov.items():
                    if k not in OVERRIDE_KEYS:
                        _fail(text, k, f"unknown override key {k!r}")
                    ov[k] = _tol(text, k, v) if k == "tol" else _int(text, k, v, 1 if k == "samples" else 0)
            cfg.overrides = value
    return cfg


def build_specs(cfg: SuiteConfig) -> list[CheckSpec]:
    """Specs in config order.  Exact checks whose order resolves to 0 are skipped."""
    specs = []
    for name in cfg.checks:
        check = REGISTRY[name]
        ov = cfg.overrides.get(name, {})
        if check.mode == "exact":
            order = ov.get("order", cfg.order if cfg.order is not None else check.order)
            if order == 0:
                continue
            specs.append(make_spec(name, order=order))
        else:
            n = ov.get("samples", cfg.samples)
            if n is not None and check.region is None:
                n = None  # fixed-sample checks ignore a global sample count
            specs.append(make_spec(name, n_samples=n, seed=ov.get("seed", cfg.seed),
                                   tol=ov.get("tol", cfg.tol)))
    return specs


def run_specs(specs: list[CheckSpec], jobs: int = 1) -> list[IdentityReport]:
    if jobs <= 1 or len(specs) <= 1:
        return [run_spec(s) for s in specs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map preserves input order, so the merge is deterministic
        return list(pool.map(run_spec, specs))


def render(reports: list[IdentityReport], record_timing: bool = False) -> str:
    records = []
    for rep in reports:
        rec = rep.to_record()
        if not record_timing:
            rec["runtime_ms"] = None
        records.append(rec)
    return json.dumps(records, indent=2, sort_keys=True) + "\n"


def run_suite(config_text: str = "", out_path: str | None = None) -> tuple[int, list[IdentityReport]]:
    """Returns (exit code, reports).  Config errors raise ConfigError."""
    cfg = parse_config(config_text)
    reports = run_specs(build_specs(cfg), cfg.jobs)
    if out_path is not None:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(render(reports, cfg.record_timing))
    code = EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL
    return code, reports


__all__ = ["SuiteConfig", "parse_config", "build_specs", "run_specs", "render", "run_suite",
           "EXIT_PASS", "EXIT_FAIL", "EXIT_CONFIG"]
