"""Gauss diagrams for flat virtual knots.

A diagram is a cyclic word of 2n endpoints on a counterclockwise circle.
Each of the n arrows owns exactly two endpoints: a tail (the arrow's
origin) and a head (its target).  The word is stored as a tuple of signed
integers: ``+k`` is the tail of arrow ``k``, ``-k`` its head.  Arrow
labels must be contiguous ``1..n``; nothing about virtual crossings is
recorded.

Gap indexing: gap ``g`` sits immediately before endpoint ``g``; the empty
diagram has the single gap 0.
"""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass


TAIL = 1
HEAD = -1


class GaussCodeError(ValueError):
    """Base class for Gauss-code parsing and validation failures."""


class MalformedToken(GaussCodeError):
    pass


class LabelCountMismatch(GaussCodeError):
    pass


class NonContiguousLabels(GaussCodeError):
    pass


_TOKEN = re.compile(r"^[+-][0-9]+$")


def _validate_word(word: tuple[int, ...]) -> None:
    if len(word) % 2:
        raise LabelCountMismatch("word length must be even")
    n = len(word) // 2
    tails = set()
    heads = set()
    for t in word:
        if t > 0:
            if t in tails:
                raise LabelCountMismatch(f"tail of arrow {t} appears twice")
            tails.add(t)
        elif t < 0:
            if -t in heads:
                raise LabelCountMismatch(f"head of arrow {-t} appears twice")
            heads.add(-t)
        else:
            raise MalformedToken("arrow label 0 is not allowed")
    if tails != heads:
        missing = tails.symmetric_difference(heads)
        raise LabelCountMismatch(f"arrows without both endpoints: {sorted(missing)}")
    if tails and (min(tails) != 1 or max(tails) != n):
        raise NonContiguousLabels(f"labels must be 1..{n}, got {sorted(tails)}")


@dataclass(frozen=True)
class GaussDiagram:
    """Immutable Gauss diagram; ``word[i]`` is the endpoint at position i."""

    word: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.word, tuple):
            object.__setattr__(self, "word", tuple(self.word))
        _validate_word(self.word)

    @property
    def n(self) -> int:
        return len(self.word) // 2

    @property
    def size(self) -> int:
        return len(self.word)

    def arrow_endpoints(self, arrow: int) -> tuple[int, int]:
        """Positions (tail, head) of the given arrow."""
        return self.word.index(arrow), self.word.index(-arrow)

    def __str__(self) -> str:
        return serialize(self)


EMPTY = GaussDiagram(())


@dataclass(frozen=True)
class BasedDiagram:
    """A diagram together with a basepoint gap (a long flat knot diagram)."""

    diagram: GaussDiagram
    base: int = 0

    def __post_init__(self):
        if not 0 <= self.base < max(self.diagram.size, 1):
            raise ValueError(f"base gap {self.base} out of range")


@dataclass(frozen=True)
class Split:
    """Two gaps whose arcs are each closed under the arrow pairing.

    ``gap_a <= gap_b``; side_sizes counts arrows on the arc [gap_a, gap_b)
    and on the complementary arc.  A degenerate split has gap_a == gap_b
    and an empty first side.
    """

    gap_a: int
    gap_b: int
    side_sizes: tuple[int, int]


def parse(text: str) -> GaussDiagram:
    """Parse a Gauss code: whitespace-separated ``+k``/``-k`` tokens, or "0"."""
    tokens = text.split()
    if not tokens:
        raise MalformedToken("empty Gauss code")
    if tokens == ["0"]:
        return EMPTY
    word = []
    for tok in tokens:
        if not _TOKEN.match(tok):
            raise MalformedToken(f"bad token {tok!r}")
        k = int(tok[1:])
        if k == 0:
            raise MalformedToken(f"bad token {tok!r}: labels start at 1")
        word.append(k if tok[0] == "+" else -k)
    return GaussDiagram(tuple(word))


def parse_based(text: str) -> BasedDiagram:
    """Parse a based Gauss code; a trailing ``base=<g>`` marks the basepoint gap."""
    tokens = text.split()
    base = 0
    if tokens and tokens[-1].startswith("base="):
        try:
            base = int(tokens[-1][5:])
        except ValueError:
            raise MalformedToken(f"bad basepoint {tokens[-1]!r}") from None
        tokens = tokens[:-1]
    diagram = parse(" ".join(tokens))
    return BasedDiagram(diagram, base)


def serialize(d: GaussDiagram, canonical: bool = False) -> str:
    """Render a diagram as a Gauss code; the empty diagram is "0"."""
    word = canonical_word(d.word) if canonical else d.word
    if not word:
        return "0"
    return " ".join(f"+{t}" if t > 0 else f"-{-t}" for t in word)


@functools.lru_cache(maxsize=1 << 17)
def _canonical(word: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    """Canonical rotation of a word: relabel each rotation by first
    appearance, encode tail < head, and keep the lexicographic minimum.
    Returns (canonical word, smallest rotation offset achieving it)."""
    length = len(word)
    if length == 0:
        return (), 0
    doubled = word + word
    best = None
    best_r = 0
    for r in range(length):
        relab: dict[int, int] = {}
        enc = []
        for i in range(length):
            t = doubled[r + i]
            a = t if t > 0 else -t
            lab = relab.get(a)
            if lab is None:
                lab = len(relab) + 1
                relab[a] = lab
            enc.append(2 * lab if t > 0 else 2 * lab + 1)
        enc_t = tuple(enc)
        if best is None or enc_t < best:
            best = enc_t
            best_r = r
    canon = tuple(e // 2 if e % 2 == 0 else -(e // 2) for e in best)
    return canon, best_r


def canonical_word(word: tuple[int, ...]) -> tuple[int, ...]:
    return _canonical(tuple(word))[0]


def canonical_rotation(word: tuple[int, ...]) -> int:
    """Smallest rotation offset r with relabel(rotate(word, r)) canonical."""
    return _canonical(tuple(word))[1]


def canonical_form(d: GaussDiagram) -> str:
    """Canonical code text: equal for two diagrams iff they differ only by
    rotation of the cyclic word and relabeling of arrows."""
    return serialize(GaussDiagram(canonical_word(d.word)))


def canonical_sort_key(word: tuple[int, ...]) -> tuple[int, ...]:
    """Total order on canonical words (label-major, tail before head)."""
    return tuple(2 * t if t > 0 else 2 * (-t) + 1 for t in word)


def rebase(d: GaussDiagram, g: int) -> GaussDiagram:
    """Rotate the word so endpoint g becomes index 0; labels untouched."""
    if d.size == 0:
        if g != 0:
            raise ValueError("empty diagram has only gap 0")
        return d
    if not 0 <= g < d.size:
        raise ValueError(f"gap {g} out of range")
    return GaussDiagram(d.word[g:] + d.word[:g])


def find_splits(d: GaussDiagram, include_degenerate: bool = False) -> list[Split]:
    """All gap pairs whose two arcs are closed under the arrow pairing.

    By default only nontrivial splits (each side holding at least one
    arrow) are returned; with include_degenerate the same-gap pairs
    (g, g), whose first side is empty, are included as well.
    """
    size = d.size
    splits = []
    if include_degenerate:
        for g in range(max(size, 1)):
            splits.append(Split(g, g, (0, d.n)))
    if size == 0:
        return splits
    word = d.word
    for ga in range(size):
        open_count = 0
        inside: set[int] = set()
        # widen the arc [ga, gb) one endpoint at a time, tracking arrows
        # with exactly one endpoint inside
        for off in range(size - 1):
            a = abs(word[(ga + off) % size])
            if a in inside:
                open_count -= 1
            else:
                inside.add(a)
                open_count += 1
            gb = (ga + off + 1) % size
            if open_count == 0 and ga < gb:
                arrows_inside = (off + 1) // 2
                splits.append(Split(ga, gb, (arrows_inside, d.n - arrows_inside)))
    splits.sort(key=lambda s: (s.gap_a, s.gap_b))
    return splits
