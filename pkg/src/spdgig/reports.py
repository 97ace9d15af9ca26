"""Structured verification reports and batch export helpers.

Reports serialize to a versioned JSON schema; the wallclock/timestamp
fields are isolated so that reruns with the same seed compare equal on
every numerical field.
"""

from __future__ import annotations

import json
import platform
import time
from dataclasses import dataclass, field

import numpy as np

from . import spd

SCHEMA_VERSION = 1


@dataclass
class CheckResult:
    name: str
    value: float
    threshold: float
    passed: bool
    info: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "value": float(self.value),
            "threshold": float(self.threshold),
            "pass": bool(self.passed),
        }
        if self.info:
            out["info"] = self.info
        return out


@dataclass
class VerificationReport:
    command: str
    config: dict
    results: list
    seed: int
    wallclock: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self, include_timing: bool = True) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "config": self.config,
            "results": [r.to_dict() for r in self.results],
            "seed": self.seed,
            "pass": self.passed,
            "versions": {
                "python": platform.python_version(),
                "numpy": np.__version__,
            },
        }
        if self.extra:
            out["extra"] = self.extra
        if include_timing:
            out["timing"] = {"wallclock_s": self.wallclock, "written_at": time.time()}
        return out

    def write_json(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")


def comparable_fields(report_dict: dict) -> dict:
    """Report content with the isolated timing fields stripped."""
    out = dict(report_dict)
    out.pop("timing", None)
    return out


def write_matrix_batch_csv(path, draws: np.ndarray) -> None:
    """One vectorized matrix per line, lower triangle row-major with
    sqrt(2)-scaled off-diagonal coordinates, LF line endings."""
    draws = np.asarray(draws, dtype=float)
    if draws.ndim == 1:
        rows = draws[:, None]
        r = 1
    elif draws.ndim == 2:  # already vectorized
        rows = draws
        r = int((np.sqrt(8 * draws.shape[1] + 1) - 1) / 2)
    else:
        r = draws.shape[1]
        rows = np.stack([spd.vectorize(m) for m in draws])
    i, j = np.tril_indices(r)
    header = ",".join(f"m{a}{b}" for a, b in zip(i, j))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")


def write_manifest_json(path, manifest: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True, default=_json_default)
        fh.write("\n")


def _json_default(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj)!r}")
