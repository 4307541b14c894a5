"""The IdentityReport record and its JSON form."""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = ["IdentityReport", "CheckReport", "ReportStatus", "to_jsonable", "dumps", "REL_EPS"]

REL_EPS = 1e-14


class ReportStatus(str, enum.Enum):
    PASSED = "passed"
    FAILED = "failed"
    INCONCLUSIVE = "inconclusive"


@dataclass
class IdentityReport:
    """Both sides of a checked identity with their discrepancy.

    ``lhs`` is the physical-side value and ``correction`` any term added to
    it (an ``I`` or ``J`` term) before comparison, so the relative error is
    ``|lhs + correction - rhs| / max(|rhs|, 1e-14)``.
    """

    name: str
    lhs: float
    rhs: float
    tolerance: float
    correction: float = 0.0
    params: dict = field(default_factory=dict)
    excised_mass: float = 0.0
    inconclusive: bool = False
    diagnostics: dict = field(default_factory=dict)

    @property
    def lhs_total(self) -> float:
        return self.lhs + self.correction

    @property
    def abs_err(self) -> float:
        return abs(self.lhs_total - self.rhs)

    @property
    def rel_err(self) -> float:
        return self.abs_err / max(abs(self.rhs), REL_EPS)

    @property
    def passed(self) -> bool:
        return (not self.inconclusive) and bool(self.rel_err <= self.tolerance)

    @property
    def status(self) -> ReportStatus:
        if self.inconclusive:
            return ReportStatus.INCONCLUSIVE
        return ReportStatus.PASSED if self.passed else ReportStatus.FAILED

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "correction": self.correction,
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "tolerance": self.tolerance,
            "params": self.params,
            "passed": self.passed,
            "status": self.status.value,
            "excised_mass": self.excised_mass,
            "diagnostics": self.diagnostics,
        }

    def summary_row(self) -> str:
        return (f"{self.name:<34s} lhs={self.lhs_total: .10e} rhs={self.rhs: .10e} "
                f"rel_err={self.rel_err:.3e} tol={self.tolerance:.1e} {self.status.value}")


@dataclass
class CheckReport:
    """A check measured by one error metric rather than two sides.

    ``passed`` defaults to ``metric <= tolerance``; ``conditions`` holds extra
    named boolean requirements that must all hold as well.
    """

    name: str
    metric: float
    tolerance: float
    params: dict = field(default_factory=dict)
    conditions: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.metric <= self.tolerance) and all(bool(v) for v in self.conditions.values())

    @property
    def status(self) -> ReportStatus:
        return ReportStatus.PASSED if self.passed else ReportStatus.FAILED

    def as_dict(self) -> dict:
        return {"name": self.name, "metric": self.metric, "tolerance": self.tolerance,
                "params": self.params, "conditions": self.conditions, "passed": self.passed,
                "status": self.status.value, "diagnostics": self.diagnostics}

    def summary_row(self) -> str:
        return f"{self.name:<34s} metric={self.metric:.3e} tol={self.tolerance:.1e} {self.status.value}"


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def to_jsonable(obj):
    """Convert numpy scalars, arrays, enums and complex numbers to JSON types."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    return obj


def _encode(o, indent, level):
    pad = "" if indent is None else "\n" + " " * (indent * (level + 1))
    end = "" if indent is None else "\n" + " " * (indent * level)
    sep = ","
    if isinstance(o, dict):
        if not o:
            yield "{}"
            return
        parts = []
        for k, v in o.items():
            parts.append(json.dumps(k) + ": " + "".join(_encode(v, indent, level + 1)))
        yield "{" + pad + (sep + pad).join(parts) + end + "}"
    elif isinstance(o, list):
        if not o:
            yield "[]"
            return
        parts = ["".join(_encode(v, indent, level + 1)) for v in o]
        yield "[" + pad + (sep + pad).join(parts) + end + "]"
    elif isinstance(o, float):
        yield _fmt_float(o)
    else:
        yield json.dumps(o)


def dumps(obj, indent: int | None = 2) -> str:
    """JSON text with floats written to 17 significant digits."""
    data = to_jsonable(obj.as_dict() if isinstance(obj, (IdentityReport, CheckReport)) else obj)
    return "".join(_encode(data, indent, 0))
