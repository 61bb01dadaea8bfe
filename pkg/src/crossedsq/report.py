"""Pass/fail tables with witnesses, shared by all checkers."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    checked: int = 0
    failures: int = 0
    witness: tuple | None = None
    note: str = ""

    def as_dict(self):
        d = {"passed": self.passed, "checked": self.checked, "failures": self.failures}
        if self.witness is not None:
            d["witness"] = [str(w) if not isinstance(w, (int, str)) else w for w in self.witness]
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class Report:
    """Ordered collection of named checks."""

    title: str
    checks: dict = field(default_factory=dict)
    mode: str = "exhaustive"

    def add(self, name, failures, checked, witness=None, note=""):
        prev = self.checks.get(name)
        if prev is not None:
            prev.checked += checked
            prev.failures += failures
            prev.passed = prev.failures == 0
            if prev.witness is None:
                prev.witness = witness
            return prev
        c = Check(name, failures == 0, checked, failures, witness, note)
        self.checks[name] = c
        return c

    def record(self, name, mask, witness_fn, note=""):
        """Add from a boolean array of failures; ``witness_fn(i)`` names failure i."""
        import numpy as np

        bad = np.flatnonzero(mask)
        wit = witness_fn(int(bad[0])) if bad.size else None
        return self.add(name, int(bad.size), int(np.size(mask)), wit, note)

    @property
    def ok(self):
        return all(c.passed for c in self.checks.values())

    def failed(self):
        return [n for n, c in self.checks.items() if not c.passed]

    def __getitem__(self, name):
        return self.checks[name]

    def __contains__(self, name):
        return name in self.checks

    def as_dict(self):
        return {"title": self.title, "mode": self.mode, "ok": self.ok,
                "checks": {n: c.as_dict() for n, c in self.checks.items()}}

    def lines(self):
        out = [f"{self.title} ({self.mode}): {'PASS' if self.ok else 'FAIL'}"]
        for n, c in self.checks.items():
            tag = "ok  " if c.passed else "FAIL"
            extra = "" if c.passed else f"  witness={c.witness}"
            out.append(f"  {tag} {n} [{c.failures}/{c.checked}]{extra}")
        return out

    def __str__(self):
        return "\n".join(self.lines())
