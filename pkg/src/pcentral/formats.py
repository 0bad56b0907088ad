"""Plain-text group files.

``pgt 1`` (group table)::

    pgt 1
    order 4
    name C4          <- optional
    table
    0 1 2 3
    1 2 3 0
    ...

``fpc 1`` (free p-central scheme)::

    fpc 1
    p 2
    r 2
    n 1
"""

from __future__ import annotations

from pathlib import Path
from typing import Union

import numpy as np

from .cayley import CayleyGroup
from .errors import FormatError, GroupTableError
from .freepcentral import FpcScheme


def dump_table(G: CayleyGroup) -> str:
    lines = ["pgt 1", f"order {G.order}"]
    if G.name:
        lines.append(f"name {G.name}")
    lines.append("table")
    lines.extend(" ".join(map(str, row)) for row in G.table.tolist())
    return "\n".join(lines) + "\n"


def _lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip()]


def parse_table(text: str) -> CayleyGroup:
    lines = _lines(text)
    if not lines or lines[0] != "pgt 1":
        raise FormatError("missing 'pgt 1' header")
    try:
        key, val = lines[1].split(None, 1)
        if key != "order":
            raise ValueError
        n = int(val)
    except (IndexError, ValueError):
        raise FormatError("expected 'order N' on line 2") from None
    pos = 2
    name = ""
    if pos < len(lines) and lines[pos].startswith("name"):
        name = lines[pos][4:].strip()
        pos += 1
    if pos >= len(lines) or lines[pos] != "table":
        raise FormatError("expected 'table'")
    rows = lines[pos + 1 :]
    if len(rows) != n:
        raise FormatError(f"expected {n} table rows, found {len(rows)}")
    try:
        table = np.array([[int(x) for x in row.split()] for row in rows], dtype=np.int64)
    except ValueError:
        raise FormatError("non-integer table entry") from None
    if table.shape != (n, n):
        raise FormatError(f"table rows must each have {n} entries")
    try:
        return CayleyGroup(table, name=name)
    except GroupTableError as exc:
        raise FormatError(f"not a group table: {exc}") from exc


def dump_scheme(s: FpcScheme) -> str:
    return f"fpc 1\np {s.p}\nr {s.r}\nn {s.n}\n"


def parse_scheme(text: str) -> FpcScheme:
    lines = _lines(text)
    if not lines or lines[0] != "fpc 1":
        raise FormatError("missing 'fpc 1' header")
    fields = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2 or parts[0] not in ("p", "r", "n") or parts[0] in fields:
            raise FormatError(f"bad scheme line {ln!r}")
        try:
            fields[parts[0]] = int(parts[1])
        except ValueError:
            raise FormatError(f"bad scheme line {ln!r}") from None
    if set(fields) != {"p", "r", "n"}:
        raise FormatError("scheme needs p, r and n")
    try:
        return FpcScheme(fields["p"], fields["r"], fields["n"])
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def read_group_file(path: Union[str, Path]) -> Union[CayleyGroup, FpcScheme]:
    """Parse either format, dispatching on the header line."""
    text = Path(path).read_text()
    head = text.lstrip().split("\n", 1)[0].strip()
    if head == "pgt 1":
        return parse_table(text)
    if head == "fpc 1":
        return parse_scheme(text)
    raise FormatError(f"{path}: unknown header {head!r}")
