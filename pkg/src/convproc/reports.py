"""Certificates and run reports, rendered as JSON or plain text.

A certificate is a list of clauses; each clause names the statement it checks,
whether it held, and whatever witness objects explain the outcome.  Clauses
of kind ``precondition`` failing means the check was not applicable, which is
reported separately from a genuine failure.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction

PASS, FAIL, NOT_APPLICABLE = "pass", "fail", "precondition-failed"


def to_plain(obj):
    """Convert fractions, tuples and geometry objects to JSON-ready values."""
    from .geometry import NNCPolyhedron, NNCSet, textio
    if isinstance(obj, Fraction):
        return str(obj.numerator) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, (NNCPolyhedron, NNCSet)):
        if obj.is_empty():
            return "empty"
        return textio.dumps(obj, generators=False).rstrip("\n").split("\n")
    if hasattr(obj, "to_plain"):
        return obj.to_plain()
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    return str(obj)


@dataclass
class Clause:
    name: str
    statement: str
    passed: bool
    kind: str = "check"  # check | precondition | info
    witness: dict = field(default_factory=dict)

    def to_plain(self):
        return {
            "name": self.name,
            "statement": self.statement,
            "kind": self.kind,
            "passed": self.passed,
            "witness": to_plain(self.witness),
        }


@dataclass
class Certificate:
    title: str
    clauses: list = field(default_factory=list)

    def add(self, name, statement, passed, kind="check", **witness):
        self.clauses.append(Clause(name, statement, bool(passed), kind, witness))
        return bool(passed)

    def clause(self, name):
        for c in self.clauses:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def status(self):
        if any(c.kind == "precondition" and not c.passed for c in self.clauses):
            return NOT_APPLICABLE
        if any(c.kind == "check" and not c.passed for c in self.clauses):
            return FAIL
        return PASS

    @property
    def passed(self):
        return self.status == PASS

    def to_plain(self):
        return {"title": self.title, "status": self.status,
                "clauses": [c.to_plain() for c in self.clauses]}


@dataclass
class RunReport:
    instance: str
    command: str
    inputs: dict = field(default_factory=dict)
    certificates: list = field(default_factory=list)
    results: dict = field(default_factory=dict)
    timing: float = None

    @property
    def status(self):
        states = [c.status for c in self.certificates]
        if NOT_APPLICABLE in states:
            return NOT_APPLICABLE
        if FAIL in states:
            return FAIL
        return PASS

    def exit_code(self):
        return {PASS: 0, FAIL: 1, NOT_APPLICABLE: 2}[self.status]

    def to_plain(self):
        out = {
            "instance": self.instance,
            "command": self.command,
            "inputs": to_plain(self.inputs),
            "status": self.status,
            "results": to_plain(self.results),
            "certificates": [c.to_plain() for c in self.certificates],
        }
        if self.timing is not None:
            out["timing_seconds"] = round(self.timing, 3)
        return out

    def to_json(self):
        return json.dumps(self.to_plain(), indent=2, sort_keys=True) + "\n"

    def to_text(self):
        d = self.to_plain()
        lines = [f"command: {d['command']}", f"instance: {d['instance']}"]
        for k in sorted(d["inputs"]):
            lines.append(f"input {k}: {_inline(d['inputs'][k])}")
        for k in sorted(d["results"]):
            v = d["results"][k]
            if isinstance(v, list) and v and all(isinstance(x, str) for x in v):
                lines.append(f"{k}:")
                lines.extend("  " + x for x in v)
            elif isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
                lines.append(f"{k}:")
                for row in v:
                    lines.append("  - " + ", ".join(f"{rk} = {_inline(row[rk])}" for rk in sorted(row)))
            else:
                lines.append(f"{k}: {_inline(v)}")
        for cert in d["certificates"]:
            lines.append(f"certificate: {cert['title']} [{cert['status']}]")
            for c in cert["clauses"]:
                mark = "ok " if c["passed"] else "NO "
                lines.append(f"  {mark}{c['name']} ({c['kind']}): {c['statement']}")
                for wk in sorted(c["witness"]):
                    lines.append(f"      {wk} = {_inline(c['witness'][wk])}")
        if "timing_seconds" in d:
            lines.append(f"timing: {d['timing_seconds']}s")
        lines.append(f"status: {d['status']}")
        return "\n".join(lines) + "\n"


def _inline(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list) and all(isinstance(x, str) for x in v) and any("\n" in x or " " in x for x in v):
        return " | ".join(v)
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return str(v)
