"""Violation records shared by every checker."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Any

__all__ = ["Violation", "max_terms"]


def max_terms() -> int:
    """Cap on tensor terms printed in residuals (env COLORQUANT_MAX_TERMS)."""
    try:
        return int(os.environ.get("COLORQUANT_MAX_TERMS", "20"))
    except ValueError:
        return 20


@dataclass(frozen=True)
class Violation:
    """One failed check.  ``residual`` is whatever witnesses the failure."""

    check: str
    location: tuple = ()
    residual: Any = None
    note: str = ""

    def to_json(self) -> dict:
        out: dict[str, Any] = {"check": self.check, "location": [str(x) for x in self.location]}
        res = self.residual
        if res is not None:
            if hasattr(res, "to_json"):
                payload = res.to_json()
                terms = payload.get("terms", payload) if isinstance(payload, dict) else payload
                if isinstance(terms, list):
                    cap = max_terms()
                    out["residual"] = terms[:cap]
                    out["residual_terms"] = len(terms)
                else:
                    out["residual"] = payload
            else:
                out["residual"] = str(res)
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class Report:
    """Named collection of violations; empty means every check passed."""

    name: str
    violations: list[Violation] = field(default_factory=list)

    def __bool__(self) -> bool:
        return not self.violations
