"""Plain-text formats for groups and trellis sections.

Group block::

    group order=3
    0 1 2
    1 2 0
    2 0 1

Section file::

    section
    name: example          (optional)
    states: group order=2
    0 1
    1 0
    branches: group order=4
    ...
    left: 0 0 1 1
    right: 0 1 0 1

or a single builder line, ``builder shift_register p=2 m=2`` or
``builder complete group=S3`` (a shorthand or an inline group block).
``#`` starts a comment; blank lines are ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

from .errors import ParseError
from .groups import FiniteGroup, group_from_spec, group_from_table
from .trellis import TrellisSection, complete_section, section_from_parts, shift_register_section


@dataclass(frozen=True)
class SectionDocument:
    path: str | None
    section: TrellisSection
    provenance: str  # file | shift_register | complete | search hit


class _Lines:
    def __init__(self, text: str):
        self.items = []
        for n, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                self.items.append((n, line))
        self.pos = 0

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else (None, None)

    def take(self, what: str):
        if self.pos >= len(self.items):
            last = self.items[-1][0] if self.items else 1
            raise ParseError(f"unexpected end of input, expected {what}", line=last)
        item = self.items[self.pos]
        self.pos += 1
        return item

    def done(self) -> bool:
        return self.pos >= len(self.items)


def _ints(text: str, line: int, what: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split()]
    except ValueError:
        raise ParseError(f"{what}: expected whitespace-separated integers", line=line) from None


_GROUP_HEADER = re.compile(r"^group\s+order\s*=\s*(\d+)$")


def _parse_group_block(lines: _Lines, header: str, header_line: int, name: str = "") -> FiniteGroup:
    m = _GROUP_HEADER.match(header.strip())
    if not m:
        raise ParseError(f"expected 'group order=<n>', got {header.strip()!r}", line=header_line)
    n = int(m.group(1))
    if n < 1:
        raise ParseError("group order must be positive", line=header_line)
    rows = []
    for r in range(n):
        ln, text = lines.take(f"table row {r}")
        row = _ints(text, ln, f"table row {r}")
        if len(row) != n:
            raise ParseError(f"table row {r} has {len(row)} entries, expected {n}", line=ln)
        if any(not 0 <= v < n for v in row):
            raise ParseError(f"table row {r} has an entry outside 0..{n - 1}", line=ln)
        rows.append(row)
    return group_from_table(rows, n, name=name)


def parse_group(text: str) -> FiniteGroup:
    lines = _Lines(text)
    ln, header = lines.take("group header")
    g = _parse_group_block(lines, header, ln)
    if not lines.done():
        raise ParseError("trailing content after group table", line=lines.peek()[0])
    return g


def _inline_group(lines: _Lines, rest: str, ln: int, name: str = "") -> FiniteGroup:
    """Group given after a 'key:' or 'key=' marker, either on the same line or the next."""
    rest = rest.strip()
    if not rest:
        ln, rest = lines.take("group header")
    if _GROUP_HEADER.match(rest):
        return _parse_group_block(lines, rest, ln, name)
    try:
        return group_from_spec(rest)
    except ValueError:
        raise ParseError(f"cannot read group {rest!r}", line=ln) from None


def _parse_builder(lines: _Lines, text: str, ln: int) -> tuple[TrellisSection, str]:
    parts = text.split(None, 2)
    if len(parts) < 2:
        raise ParseError("builder needs a kind", line=ln)
    kind = parts[1]
    rest = parts[2] if len(parts) > 2 else ""
    if kind == "shift_register":
        kv = dict(re.findall(r"(\w+)\s*=\s*(\d+)", rest))
        if "p" not in kv or "m" not in kv:
            raise ParseError("shift_register needs p=<p> m=<m>", line=ln)
        return shift_register_section(int(kv["p"]), int(kv["m"])), "shift_register"
    if kind == "complete":
        m = re.match(r"^group\s*=\s*(.*)$", rest.strip())
        if not m:
            raise ParseError("complete needs group=<group>", line=ln)
        S = _inline_group(lines, m.group(1), ln)
        return complete_section(S), "complete"
    raise ParseError(f"unknown builder {kind!r}", line=ln)


def parse_section(text: str) -> tuple[TrellisSection, str]:
    lines = _Lines(text)
    ln, first = lines.take("'section' or 'builder'")
    if first.startswith("builder"):
        sec, prov = _parse_builder(lines, first, ln)
        if not lines.done():
            raise ParseError("trailing content after builder", line=lines.peek()[0])
        return sec, prov
    if first != "section":
        raise ParseError(f"expected 'section' or 'builder', got {first!r}", line=ln)
    name = ""
    S = B = left = right = None
    provenance = "file"
    while not lines.done():
        ln, text = lines.take("section field")
        key, sep, rest = text.partition(":")
        key = key.strip()
        if not sep:
            raise ParseError(f"expected 'key: value', got {text!r}", line=ln)
        if key == "name":
            name = rest.strip()
        elif key == "provenance":
            provenance = rest.strip()
        elif key == "states":
            S = _inline_group(lines, rest, ln)
        elif key == "branches":
            B = _inline_group(lines, rest, ln)
        elif key in ("left", "right"):
            vals = _ints(rest, ln, key)
            if B is not None and len(vals) != B.order:
                raise ParseError(f"{key} has {len(vals)} entries, expected {B.order}", line=ln)
            if key == "left":
                left = vals
            else:
                right = vals
        else:
            raise ParseError(f"unknown field {key!r}", line=ln)
    missing = [k for k, v in (("states", S), ("branches", B), ("left", left), ("right", right)) if v is None]
    if missing:
        raise ParseError(f"missing field(s): {', '.join(missing)}", line=ln)
    return section_from_parts(B, S, left, right, name=name), provenance


def load_section(path: str | Path) -> SectionDocument:
    path = Path(path)
    sec, prov = parse_section(path.read_text())
    if not sec.name:
        sec = replace(sec, name=path.stem)
    return SectionDocument(str(path), sec, prov)


def bundled_names() -> list[str]:
    root = resources.files("gtrellis") / "data"
    return sorted(p.name[: -len(".sec")] for p in root.iterdir() if p.name.endswith(".sec"))


def load_bundled(name: str) -> SectionDocument:
    root = resources.files("gtrellis") / "data"
    res = root / f"{name}.sec"
    if not res.is_file():
        raise ParseError(f"no bundled section {name!r}; available: {', '.join(bundled_names())}")
    sec, prov = parse_section(res.read_text())
    if not sec.name:
        sec = replace(sec, name=name)
    return SectionDocument(f"bundled:{name}", sec, prov)


def dump_group(G: FiniteGroup) -> str:
    rows = [" ".join(str(v) for v in row) for row in G.table]
    return "\n".join([f"group order={G.order}", *rows]) + "\n"


def dump_section(section: TrellisSection, provenance: str | None = None) -> str:
    """Canonical explicit form (builders are expanded)."""
    out = ["section"]
    if section.name:
        out.append(f"name: {section.name}")
    if provenance and provenance != "file":
        out.append(f"provenance: {provenance}")
    out.append("states: " + dump_group(section.S).rstrip("\n"))
    out.append("branches: " + dump_group(section.B).rstrip("\n"))
    out.append("left: " + " ".join(map(str, section.left)))
    out.append("right: " + " ".join(map(str, section.right)))
    return "\n".join(out) + "\n"


def parse_indices(text: str) -> list[tuple[int, int]]:
    """Whitespace-separated decimal indices with their line numbers."""
    out = []
    for n, raw in enumerate(text.splitlines(), start=1):
        for tok in raw.split("#", 1)[0].split():
            try:
                out.append((int(tok), n))
            except ValueError:
                raise ParseError(f"not an integer: {tok!r}", line=n) from None
    return out
