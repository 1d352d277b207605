"""Exhaustive enumeration and tabulation of flat knot classes.

Diagrams with n arrows are generated as all chord pairings times all
direction assignments, streamed through a self-canonical filter so each
rotation/relabel class appears exactly once.  Classification reduces
every diagram, keeps the irreducible ones (crossing number exactly n),
and groups them into FR3 orbits; one record per orbit.  Classes are
oriented flat knot classes: no mirror or reversal quotient is applied,
and the file header says so.
"""
from __future__ import annotations

import os
import re
import tempfile
from dataclasses import dataclass
from typing import Iterator

from .compose import is_composite
from .diagram import GaussDiagram, canonical_sort_key, canonical_word, parse, serialize
from .invariants import u_polynomial
from .reduce import OrbitLimits, _full_orbit, _reduce_word, DEFAULT_LIMITS

HEADER_PREFIX = "flatcat v1"


class FormatVersionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class CatalogRecord:
    class_id: int
    code: str
    cr: int
    u_text: str
    verdict: str  # T, P, or C
    orbit_size: int


def _pairings(points: tuple[int, ...]) -> Iterator[list[tuple[int, int]]]:
    if not points:
        yield []
        return
    first = points[0]
    for i in range(1, len(points)):
        rest = points[1:i] + points[i + 1 :]
        for sub in _pairings(rest):
            yield [(first, points[i])] + sub


def enumerate_diagrams(n: int) -> Iterator[GaussDiagram]:
    """Every diagram with exactly n arrows, once per rotation/relabel
    class (those whose word equals its own canonical form)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        yield GaussDiagram(())
        return
    size = 2 * n
    for pairing in _pairings(tuple(range(size))):
        # pairs come out ordered by first endpoint, matching
        # first-appearance labels
        for bits in range(1 << n):
            word = [0] * size
            for label, (p, q) in enumerate(pairing, start=1):
                if bits >> (label - 1) & 1:
                    word[p], word[q] = -label, label
                else:
                    word[p], word[q] = label, -label
            wt = tuple(word)
            if canonical_word(wt) == wt:
                yield GaussDiagram(wt)


def classify(n: int, limits: OrbitLimits | None = None) -> list[CatalogRecord]:
    """Reduce every n-arrow diagram, keep the irreducible ones, and emit
    one record per FR3 orbit."""
    max_nodes = (limits or DEFAULT_LIMITS).max_nodes
    classes: dict[tuple[int, ...], frozenset] = {}
    for d in enumerate_diagrams(n):
        min_word, cr = _reduce_word(d.word, max_nodes)
        if cr != n:
            continue
        orbit = _full_orbit(min_word, max_nodes)
        classes.setdefault(min(orbit, key=canonical_sort_key), orbit)
    records = []
    for class_id, key in enumerate(sorted(classes, key=canonical_sort_key), start=1):
        rep = GaussDiagram(key)
        verdict = is_composite(rep, limits).verdict[0].upper()
        records.append(
            CatalogRecord(
                class_id,
                serialize(rep),
                n,
                str(u_polynomial(rep)),
                verdict,
                len(classes[key]),
            )
        )
    return records


_RECORD_RE = re.compile(
    r"^class=(\d+) code=(.+?) cr=(\d+) u=(\S+) verdict=([TPC]) orbit=(\d+)$"
)


@dataclass(frozen=True)
class Catalog:
    n: int
    quotient: str
    records: tuple[CatalogRecord, ...]


def record_line(r: CatalogRecord) -> str:
    return (
        f"class={r.class_id} code={r.code} cr={r.cr} "
        f"u={r.u_text} verdict={r.verdict} orbit={r.orbit_size}"
    )


def write_catalog(records, path: str, n: int) -> None:
    """Atomic write: temp file in the same directory, then rename."""
    lines = [f"{HEADER_PREFIX} n={n} quotient=oriented"]
    lines.extend(record_line(r) for r in records)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".flatcat-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_catalog(path: str) -> Catalog:
    with open(path, encoding="utf-8") as fh:
        lines = [line.rstrip("\n") for line in fh if line.strip()]
    if not lines:
        raise FormatVersionMismatch("empty catalog file")
    header = lines[0]
    m = re.match(rf"^{re.escape(HEADER_PREFIX)} n=(\d+) quotient=(\S+)$", header)
    if not m:
        raise FormatVersionMismatch(f"bad catalog header {header!r}")
    n, quotient = int(m.group(1)), m.group(2)
    records = []
    for line in lines[1:]:
        rm = _RECORD_RE.match(line)
        if not rm:
            raise FormatVersionMismatch(f"bad catalog record {line!r}")
        parse(rm.group(2))  # validate the code
        records.append(
            CatalogRecord(
                int(rm.group(1)),
                rm.group(2),
                int(rm.group(3)),
                rm.group(4),
                rm.group(5),
                int(rm.group(6)),
            )
        )
    return Catalog(n, quotient, tuple(records))
