"""Verification reports, law evaluation and witness replay."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

from .exact_linalg import Matrix

PASS, FAIL, UNSUPPORTED = "pass", "fail", "unsupported"

# a law is a thunk returning (lhs, rhs); column j of each is the value on input basis vector j
Law = Callable[[], tuple]


def scalar_json(x):
    return str(x) if not isinstance(x, int) else x


def matrix_json(m: Matrix) -> dict:
    return {"rows": m.rows, "cols": m.cols,
            "entries": [[scalar_json(x) for x in row] for row in m.tolist()]}


def jsonable(x):
    """Recursively convert matrices, fractions, tuples and bools into plain JSON data."""
    if isinstance(x, Matrix):
        return matrix_json(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if x is None or isinstance(x, (bool, str, int, float)):
        return x
    return str(x)


@dataclass
class Check:
    name: str
    verdict: str
    witness: dict | None = None
    notes: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict == PASS

    def to_json(self) -> dict:
        d = {"name": self.name, "verdict": self.verdict}
        if self.witness is not None:
            d["witness"] = jsonable(self.witness)
        if self.notes:
            d["notes"] = self.notes
        return d


@dataclass
class Report:
    command: str
    checks: list = field(default_factory=list)
    timing: float = 0.0
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.verdict != FAIL for c in self.checks)

    @property
    def verdict(self) -> str:
        return PASS if self.ok else FAIL

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: "Report", prefix: str = ""):
        for c in other.checks:
            w = c.witness
            if prefix and isinstance(w, dict) and "law" in w:
                w = {**w, "law": prefix + w["law"]}
            self.checks.append(Check(prefix + c.name, c.verdict, w, c.notes))
        return self

    def passed(self, name: str, notes: str = "") -> Check:
        return self.add(Check(name, PASS, None, notes))

    def failed(self, name: str, witness: dict, notes: str = "") -> Check:
        return self.add(Check(name, FAIL, witness, notes))

    def flag(self, name: str, cond: bool, witness: dict | None = None, notes: str = "") -> Check:
        if cond:
            return self.passed(name, notes)
        return self.failed(name, witness or {"reason": "condition false"}, notes)

    def unsupported(self, name: str, notes: str) -> Check:
        return self.add(Check(name, UNSUPPORTED, None, notes))

    def law(self, name: str, law: Law, notes: str = "") -> Check:
        return self.add(evaluate_law(name, law, notes))

    def first_failure(self) -> Check | None:
        for c in self.checks:
            if c.verdict == FAIL:
                return c
        return None

    def get(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self, timing: bool = True) -> dict:
        d = {"command": self.command, "verdict": self.verdict,
             "checks": [c.to_json() for c in self.checks]}
        if self.data:
            d["data"] = jsonable(self.data)
        if timing:
            d["timing"] = round(self.timing, 6)
        return d

    def dumps(self, timing: bool = True) -> str:
        return json.dumps(self.to_json(timing), indent=2, sort_keys=False)


def first_difference(lhs: Matrix, rhs: Matrix):
    if lhs.shape != rhs.shape:
        return -1
    le, re_ = lhs.entries(), rhs.entries()
    n = lhs.cols
    bad = [k % n for k, (a, b) in enumerate(zip(le, re_)) if a != b]
    return min(bad) if bad else None


def evaluate_law(name: str, law: Law, notes: str = "") -> Check:
    lhs, rhs = law()
    j = first_difference(lhs, rhs)
    if j is None:
        return Check(name, PASS, None, notes)
    if j < 0:
        w = {"law": name, "reason": "shape mismatch",
             "lhs_shape": list(lhs.shape), "rhs_shape": list(rhs.shape)}
    else:
        w = {"law": name, "input": j,
             "lhs": [scalar_json(x) for x in lhs.column(j).entries()],
             "rhs": [scalar_json(x) for x in rhs.column(j).entries()]}
    return Check(name, FAIL, w, notes)


def replay(laws: dict, witness: dict) -> bool:
    """Re-evaluate a single law at the witnessed input; True iff the failure reproduces."""
    name = witness["law"]
    lhs, rhs = laws[name]()
    if "input" not in witness:
        return lhs.shape != rhs.shape
    j = witness["input"]
    if j >= lhs.cols:
        return False
    l = [scalar_json(x) for x in lhs.column(j).entries()]
    r = [scalar_json(x) for x in rhs.column(j).entries()]
    return l != r and l == witness["lhs"] and r == witness["rhs"]


def run_laws(command: str, laws: dict) -> Report:
    rep = Report(command)
    for name, law in laws.items():
        rep.law(name, law)
    return rep
