"""Structured verification records: one identity check per record."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, asdict
from typing import Any


def _enc(x: Any) -> Any:
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, dict):
        return {k: _enc(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_enc(v) for v in x]
    return x


@dataclass
class VerificationReport:
    suite: str
    case_id: str
    inputs: dict
    lhs: complex
    rhs: complex
    tolerance: float
    tail_budget: float = 0.0
    status: str = "pass"
    wall_time: float = 0.0

    @property
    def abs_err(self) -> float:
        return abs(self.lhs - self.rhs)

    @property
    def rel_err(self) -> float:
        scale = max(abs(self.lhs), abs(self.rhs))
        return self.abs_err / scale if scale > 0 else 0.0

    def to_line(self) -> str:
        rec = {
            "suite": self.suite,
            "case_id": self.case_id,
            "inputs": _enc(self.inputs),
            "lhs": _enc(self.lhs),
            "rhs": _enc(self.rhs),
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "tolerance": self.tolerance,
            "tail_budget": self.tail_budget,
            "status": self.status,
            "wall_time": self.wall_time,
        }
        return json.dumps(rec, sort_keys=True)


def make_report(suite: str, case_id: str, inputs: dict, lhs: complex, rhs: complex,
                tolerance: float, tail_budget: float = 0.0, relative: bool = True,
                wall_time: float = 0.0) -> VerificationReport:
    """Build a report; pass iff |lhs - rhs| <= tolerance*scale + tail_budget."""
    lhs = complex(lhs)
    rhs = complex(rhs)
    scale = max(abs(lhs), abs(rhs)) if relative else 1.0
    ok = abs(lhs - rhs) <= tolerance * max(scale, 1e-300) + tail_budget
    return VerificationReport(
        suite=suite, case_id=case_id, inputs=inputs, lhs=lhs, rhs=rhs,
        tolerance=tolerance, tail_budget=tail_budget,
        status="pass" if ok else "fail", wall_time=wall_time,
    )


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
