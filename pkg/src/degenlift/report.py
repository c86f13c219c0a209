"""Reports: one internal value, rendered as machine text or for people.

Machine format, line oriented and stable::

    [section]
    key = value
    key.sub = value

Sections and keys keep insertion order, values are strings (rationals as p/q,
polynomials in canonical normalized form), and nothing depends on dict
ordering or floating point.
"""

from __future__ import annotations

import hashlib
import platform
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__

__all__ = ["Report", "fmt", "spec_hash"]


def fmt(value):
    """Exact text for report values."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(fmt(v) for v in value) + "]"
    if value is None:
        return "none"
    return str(value)


def spec_hash(text):
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass
class Report:
    command: str
    argv: list = field(default_factory=list)
    source_hash: str = ""
    sections: list = field(default_factory=list)  # [(name, [(key, value)])]
    ok: bool = True
    obstructed: bool = False

    def section(self, name):
        entries = []
        self.sections.append((name, entries))
        return _Section(entries)

    def provenance(self):
        import sympy

        return [
            ("spec_hash", self.source_hash or "none"),
            ("command", " ".join(["degenlift"] + list(self.argv))),
            ("degenlift_version", __version__),
            ("python_version", platform.python_version()),
            ("sympy_version", sympy.__version__),
        ]

    def all_sections(self):
        head = [("report", [("command", self.command), ("status", self.status)])]
        return head + self.sections + [("provenance", self.provenance())]

    @property
    def status(self):
        if not self.ok:
            return "failed"
        return "obstructed" if self.obstructed else "ok"

    def render_machine(self):
        out = []
        for name, entries in self.all_sections():
            out.append(f"[{name}]")
            for key, value in entries:
                out.append(f"{key} = {fmt(value)}")
            out.append("")
        return "\n".join(out)

    def render_text(self):
        out = []
        for name, entries in self.all_sections():
            out.append(name)
            width = max((len(k) for k, _ in entries), default=0)
            for key, value in entries:
                out.append(f"  {key.ljust(width)} : {fmt(value)}")
            out.append("")
        return "\n".join(out)

    def render(self, fmt_name="text"):
        return self.render_machine() if fmt_name == "machine" else self.render_text()

    def get(self, section, key):
        for name, entries in self.sections:
            if name == section:
                for k, v in entries:
                    if k == key:
                        return v
        raise KeyError(f"{section}.{key}")


class _Section:
    def __init__(self, entries):
        self.entries = entries

    def add(self, key, value):
        self.entries.append((key, value))
        return self
