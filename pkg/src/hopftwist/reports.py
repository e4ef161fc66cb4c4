"""Verification reports with a deterministic text transcript."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Item:
    label: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    suite: str
    order: int | None = None
    seed: int | None = None
    corpus: str = ""
    items: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, label, passed, detail=""):
        self.items.append(Item(label, bool(passed), detail))
        return bool(passed)

    def check_equal(self, label, lhs, rhs):
        """Record whether lhs == rhs; on failure keep the difference as witness."""
        diff = lhs - rhs
        ok = diff.is_zero()
        detail = "" if ok else f"difference: {_fmt(diff)}"
        return self.add(label, ok, detail)

    def check_zero(self, label, value):
        ok = value.is_zero()
        return self.add(label, ok, "" if ok else f"residual: {_fmt(value)}")

    def extend(self, other: "Report", prefix=""):
        for it in other.items:
            self.items.append(Item(prefix + it.label, it.passed, it.detail))

    @property
    def passed(self):
        return all(it.passed for it in self.items)

    def __bool__(self):
        return self.passed

    @property
    def failures(self):
        return [it for it in self.items if not it.passed]

    @property
    def counterexample(self):
        f = self.failures
        return f[0] if f else None

    def to_text(self):
        lines = [f"suite: {self.suite}"]
        if self.order is not None:
            lines.append(f"order: {self.order}")
        if self.seed is not None:
            lines.append(f"seed: {self.seed}")
        if self.corpus:
            lines.append(f"corpus: {self.corpus}")
        lines.extend(f"note: {n}" for n in self.notes)
        for k, it in enumerate(self.items, 1):
            status = "PASS" if it.passed else "FAIL"
            line = f"[{k:03d}] {status} {it.label}"
            if it.detail:
                line += f" -- {it.detail}"
            lines.append(line)
        n_ok = sum(it.passed for it in self.items)
        lines.append(f"result: {'PASS' if self.passed else 'FAIL'} ({n_ok}/{len(self.items)})")
        ce = self.counterexample
        if ce is not None:
            lines.append(f"first counterexample: {ce.label}" + (f" -- {ce.detail}" if ce.detail else ""))
        return "\n".join(lines) + "\n"

    def __str__(self):
        return self.to_text()


def _fmt(x):
    from .frontend.printer import print_canonical

    return print_canonical(x)
