"""Run configuration: flat key=value files, overrides, and summary records.

The config grammar is one `key = value` pair per line; blank lines and
`#` comments are ignored.  Values are in the model's user-facing units
(MHz, gauss, us).  alpha and beta accept Python complex literals.  Unknown
keys are rejected.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import os
from dataclasses import dataclass, field, fields

from .lindblad import IntegratorConfig
from .srmodel import ModelParams

__all__ = ["ConfigError", "RunConfig", "parse_config_text", "load_run_config",
           "config_hash", "SummaryRecord", "atomic_write_text"]

TOOL_VERSION = "spincool 0.1.0"


class ConfigError(ValueError):
    """Malformed or unknown configuration input."""


_MODEL_KEYS = tuple(f.name for f in fields(ModelParams) if f.name != "xi")

_RUN_KEYS = ("alpha", "beta", "t_final", "samples", "rel_tol", "abs_tol",
             "max_step", "method", "jobs")


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved inputs of one simulation run."""

    params: ModelParams = field(default_factory=ModelParams)
    alpha: complex = 1.0 + 0.0j
    beta: complex = 1.0 + 0.0j
    t_final: float = 20.0
    samples: int = 401
    rel_tol: float = 1e-8
    abs_tol: float = 1e-10
    max_step: float = float("inf")
    method: str = "expm"
    jobs: int = 1

    def integrator(self) -> IntegratorConfig:
        return IntegratorConfig(rel_tol=self.rel_tol, abs_tol=self.abs_tol,
                                max_step=self.max_step, method=self.method)

    def to_flat_dict(self) -> dict[str, str]:
        out = {k: repr(getattr(self.params, k)) for k in _MODEL_KEYS}
        for k in _RUN_KEYS:
            out[k] = repr(getattr(self, k)) if k not in ("method",) else getattr(self, k)
        return out


def _parse_value(key: str, raw: str):
    raw = raw.strip()
    try:
        if key in ("alpha", "beta"):
            return complex(raw)
        if key in ("samples", "jobs"):
            return int(raw)
        if key == "method":
            return raw
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {raw!r}") from exc


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """Parse flat key=value text into a {key: parsed value} dict."""
    out: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{source}:{lineno}: expected key = value, got {line!r}")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in _MODEL_KEYS and key not in _RUN_KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if key in out:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        out[key] = _parse_value(key, raw)
    return out


def load_run_config(path: str | None = None,
                    overrides: list[str] | None = None) -> RunConfig:
    """Build a RunConfig from an optional file plus repeatable key=value overrides."""
    values: dict = {}
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                values.update(parse_config_text(fh.read(), source=path))
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for item in overrides or []:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        values.update(parse_config_text(item, source="--set"))

    model_kwargs = {k: v for k, v in values.items() if k in _MODEL_KEYS}
    run_kwargs = {k: v for k, v in values.items() if k in _RUN_KEYS}
    try:
        params = ModelParams(**model_kwargs)
        return RunConfig(params=params, **run_kwargs)
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc


def config_hash(cfg: RunConfig) -> str:
    """Stable hash of the fully resolved configuration."""
    canon = "\n".join(f"{k}={v}" for k, v in sorted(cfg.to_flat_dict().items()))
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


@dataclass
class SummaryRecord:
    """Self-contained result record: echoes its input so runs are repeatable."""

    config: dict[str, str]
    config_sha: str
    fidelity: float
    final_populations: dict[str, float]
    dressed_overlaps: tuple[float, float] | None
    nu_mhz: float | None
    imbalance_mhz: float | None
    wall_clock_s: float
    tool_version: str = TOOL_VERSION

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), indent=2, sort_keys=True) + "\n"


def atomic_write_text(path: str, text: str) -> None:
    """Write via a temp file and rename, so failures leave no partial output."""
    directory = os.path.dirname(path) or "."
    os.makedirs(directory, exist_ok=True)
    tmp = f"{path}.tmp.{os.getpid()}"
    try:
        with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)
