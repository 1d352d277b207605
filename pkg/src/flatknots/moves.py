"""Flat Reidemeister moves on Gauss diagrams.

Move legality is computed, not transcribed, from the planar convention
that an arrow points from the first-visited endpoint to the second iff
the ordered pair of strand tangents at the crossing is a positively
oriented basis.  Two coordinate models supply the legal local patterns:

* bigon (FR2): two strands crossing twice.  Working the determinant rule
  through every direction/side combination shows the removable pattern is
  two disjoint cyclically-adjacent endpoint pairs, each pair holding one
  endpoint of each arrow with one tail and one head.  Both the nested
  (x y y x) and interleaved (x y x y) arrangements occur.
* triangle (FR3): three straight strands A: y=0, B: y=x, C: y=-x+1 with
  crossings r=A^B, q=A^C, p=B^C.  Direction signs use the tangents
  sA*(1,0), sB*(1,1), sC*(-1,1).  Sliding A across p reverses the visit
  order of the two crossings on every strand and keeps every arrow
  direction, since tangents are unchanged.  build_fr3_catalog enumerates
  all sign/cyclic-order/side combinations and deduplicates.

Increasing moves are defined strictly as inverses of removals.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .diagram import HEAD, TAIL, GaussDiagram

FR1_REMOVE = "fr1-remove"
FR1_INSERT = "fr1-insert"
FR2_REMOVE = "fr2-remove"
FR2_INSERT = "fr2-insert"
FR3 = "fr3"

KIND_DELTA = {
    FR1_REMOVE: -1,
    FR1_INSERT: +1,
    FR2_REMOVE: -2,
    FR2_INSERT: +2,
    FR3: 0,
}

_KIND_RANK = {FR1_REMOVE: 0, FR2_REMOVE: 1, FR3: 2, FR1_INSERT: 3, FR2_INSERT: 4}

FR2_VARIANTS = ("Nth", "Nht", "Ith", "Iht")


class SiteMismatch(ValueError):
    """The move's pattern is not present at the stated indices."""


@dataclass(frozen=True)
class Move:
    """One flat Reidemeister move application site.

    positions refer to the pre-move diagram: endpoint indices for
    removals and FR3, gap indices for inserts.  variant pins the pattern:
    FR1 direction ("th"/"ht"), FR2 arrangement+roles of the first block
    ("N"/"I" + "th"/"ht"), or an FR3 catalog entry id.
    """

    kind: str
    variant: str | int
    positions: tuple[int, ...]

    @property
    def delta(self) -> int:
        return KIND_DELTA[self.kind]

    def sort_key(self):
        base = min(self.positions) if self.positions else 0
        return (base, _KIND_RANK[self.kind], str(self.variant), self.positions)

    def to_record(self) -> dict:
        return {"kind": self.kind, "variant": self.variant, "positions": list(self.positions)}

    @classmethod
    def from_record(cls, rec: dict) -> "Move":
        kind = rec["kind"]
        if kind not in KIND_DELTA:
            raise ValueError(f"unknown move kind {kind!r}")
        return cls(kind, rec["variant"], tuple(int(p) for p in rec["positions"]))

    def __str__(self) -> str:
        pos = ",".join(str(p) for p in self.positions)
        return f"{self.kind} {self.variant} [{pos}]"


def _relabel(word: list[int]) -> tuple[int, ...]:
    relab: dict[int, int] = {}
    out = []
    for t in word:
        a = t if t > 0 else -t
        lab = relab.get(a)
        if lab is None:
            lab = len(relab) + 1
            relab[a] = lab
        out.append(lab if t > 0 else -lab)
    return tuple(out)


# ---------------------------------------------------------------------------
# FR1
# ---------------------------------------------------------------------------

def enumerate_fr1_decreasing(d: GaussDiagram) -> list[Move]:
    """One move per arrow whose endpoints are cyclically consecutive."""
    word, size = d.word, d.size
    moves = []
    for arrow in range(1, d.n + 1):
        t, h = word.index(arrow), word.index(-arrow)
        starts = [i for i, j in ((t, h), (h, t)) if (i + 1) % size == j]
        if starts:
            i = min(starts)
            variant = "th" if word[i] > 0 else "ht"
            moves.append(Move(FR1_REMOVE, variant, (i, (i + 1) % size)))
    moves.sort(key=Move.sort_key)
    return moves


def enumerate_fr1_increasing(d: GaussDiagram) -> list[Move]:
    gaps = max(d.size, 1)
    return [Move(FR1_INSERT, v, (g,)) for g in range(gaps) for v in ("th", "ht")]


# ---------------------------------------------------------------------------
# FR2
# ---------------------------------------------------------------------------

def _fr2_block_move(word: tuple[int, ...], size: int, a0: int) -> Move | None:
    """Legal FR2 removal whose first block starts at a0, if any."""
    a1 = (a0 + 1) % size
    ta, tb = word[a0], word[a1]
    if abs(ta) == abs(tb):
        return None
    if (ta > 0) == (tb > 0):
        return None  # the block must mix one tail and one head
    ox = word.index(-ta)
    oy = word.index(-tb)
    if (ox + 1) % size == oy:
        b0, b1 = ox, oy
        arrangement = "I"  # second block repeats the (x, y) arrow order
    elif (oy + 1) % size == ox:
        b0, b1 = oy, ox
        arrangement = "N"
    else:
        return None
    roles = ("t" if ta > 0 else "h") + ("t" if tb > 0 else "h")
    return Move(FR2_REMOVE, arrangement + roles, (a0, a1, b0, b1))


def enumerate_fr2_decreasing(d: GaussDiagram) -> list[Move]:
    """One move per arrow pair forming two disjoint adjacent mixed blocks."""
    word, size = d.word, d.size
    moves = []
    seen: set[frozenset[int]] = set()
    for a0 in range(size):
        m = _fr2_block_move(word, size, a0)
        if m is None:
            continue
        key = frozenset(abs(word[p]) for p in m.positions)
        if key in seen:
            continue
        seen.add(key)
        # normalize: the recorded first block is the one holding the
        # lowest endpoint index
        lowest = min(m.positions)
        if lowest not in m.positions[:2]:
            m = _fr2_block_move(word, size, m.positions[2])
        moves.append(m)
    moves.sort(key=Move.sort_key)
    return moves


def enumerate_fr2_increasing(d: GaussDiagram) -> list[Move]:
    gaps = max(d.size, 1)
    return [
        Move(FR2_INSERT, v, (ga, gb))
        for ga in range(gaps)
        for gb in range(ga, gaps)
        for v in FR2_VARIANTS
    ]


def _fr2_blocks(variant: str, x: int, y: int) -> tuple[list[int], list[int]]:
    """Endpoint tokens of the two inserted blocks for fresh arrows x, y."""
    arrangement, r0, r1 = variant[0], variant[1], variant[2]
    block_a = [x if r0 == "t" else -x, y if r1 == "t" else -y]
    if arrangement == "N":
        block_b = [-block_a[1], -block_a[0]]
    else:
        block_b = [-block_a[0], -block_a[1]]
    return block_a, block_b


def _swap_ab_variant(variant: str) -> str:
    """Variant as seen when the two blocks exchange the 'first block' role."""
    if variant[0] == "N":
        return variant
    flip = {"t": "h", "h": "t"}
    return "I" + flip[variant[1]] + flip[variant[2]]


def enumerate_decreasing(d: GaussDiagram) -> list[Move]:
    """Decreasing FR1 and FR2 sites in deterministic tie-break order."""
    out = enumerate_fr1_decreasing(d) + enumerate_fr2_decreasing(d)
    out.sort(key=Move.sort_key)
    return out


def enumerate_increasing(d: GaussDiagram) -> list[Move]:
    out = enumerate_fr1_increasing(d) + enumerate_fr2_increasing(d)
    out.sort(key=Move.sort_key)
    return out


# ---------------------------------------------------------------------------
# FR3 catalog
# ---------------------------------------------------------------------------

Block = tuple[tuple[int, int], tuple[int, int]]  # ((arrow, role), (arrow, role))
Pattern = tuple[Block, Block, Block]


def canonical_pattern(blocks) -> Pattern:
    """Canonical form of a cyclic triple of two-endpoint blocks: minimum
    over the 3 rotations after relabeling arrows by first appearance."""
    best = None
    for rot in range(3):
        seq = blocks[rot:] + blocks[:rot]
        relab: dict[int, int] = {}
        enc = []
        for block in seq:
            eb = []
            for sym, role in block:
                lab = relab.get(sym)
                if lab is None:
                    lab = len(relab) + 1
                    relab[sym] = lab
                eb.append((lab, 0 if role == TAIL else 1))
            enc.append(tuple(eb))
        enc_t = tuple(enc)
        if best is None or enc_t < best:
            best = enc_t
    return tuple(
        tuple((sym, TAIL if bit == 0 else HEAD) for sym, bit in block) for block in best
    )


def _swap_blocks(pattern: Pattern) -> Pattern:
    return tuple((block[1], block[0]) for block in pattern)


@dataclass(frozen=True)
class FR3CatalogEntry:
    """A legal FR3 configuration: matching the before pattern permits
    swapping the two endpoints inside each block."""

    id: int
    before: Pattern
    after: Pattern
    inverse_id: int


def _triangle_patterns():
    """(before, after) block patterns from the three-line coordinate model."""
    for sa, sb, sc in itertools.product((1, -1), repeat=3):
        role_a_r = TAIL if sa * sb > 0 else HEAD  # det(tA, tB) sign
        role_a_q = TAIL if sa * sc > 0 else HEAD  # det(tA, tC) sign
        role_b_p = TAIL if sb * sc > 0 else HEAD  # det(tB, tC) sign
        blocks_before = {
            "A": [("r", role_a_r), ("q", role_a_q)] if sa > 0 else [("q", role_a_q), ("r", role_a_r)],
            "B": [("r", -role_a_r), ("p", role_b_p)] if sb > 0 else [("p", role_b_p), ("r", -role_a_r)],
            "C": [("q", -role_a_q), ("p", -role_b_p)] if sc > 0 else [("p", -role_b_p), ("q", -role_a_q)],
        }
        blocks_after = {s: list(reversed(b)) for s, b in blocks_before.items()}
        for order in (("A", "B", "C"), ("A", "C", "B")):
            bw = tuple(tuple(blocks_before[s]) for s in order)
            aw = tuple(tuple(blocks_after[s]) for s in order)
            yield bw, aw
            yield aw, bw


@functools.lru_cache(maxsize=1)
def build_fr3_catalog() -> tuple[FR3CatalogEntry, ...]:
    """Deduplicated FR3 catalog generated from the triangle model."""
    befores: dict[Pattern, Pattern] = {}
    for bw, aw in _triangle_patterns():
        cb = canonical_pattern(bw)
        ca_expected = canonical_pattern(_swap_blocks(cb))
        if canonical_pattern(aw) != ca_expected:
            raise AssertionError("triangle model: after is not the blockwise swap")
        befores.setdefault(cb, _swap_blocks(cb))
    ordered = sorted(befores)
    index = {cb: i for i, cb in enumerate(ordered)}
    entries = []
    for i, cb in enumerate(ordered):
        after = befores[cb]
        inv = index[canonical_pattern(after)]
        entries.append(FR3CatalogEntry(i, cb, after, inv))
    for e in entries:
        if entries[e.inverse_id].inverse_id != e.id:
            raise AssertionError("FR3 catalog inverse pairing is not an involution")
    return tuple(entries)


@functools.lru_cache(maxsize=1)
def _fr3_before_index() -> dict[Pattern, FR3CatalogEntry]:
    return {e.before: e for e in build_fr3_catalog()}


def _fr3_blocks_at(word, size, starts):
    blocks = []
    for s in starts:
        p0, p1 = s, (s + 1) % size
        blocks.append((
            (abs(word[p0]), TAIL if word[p0] > 0 else HEAD),
            (abs(word[p1]), TAIL if word[p1] > 0 else HEAD),
        ))
    return tuple(blocks)


def _fr3_structural(blocks) -> bool:
    arrow_pairs = []
    for block in blocks:
        pair = frozenset(sym for sym, _ in block)
        if len(pair) != 2:
            return False
        arrow_pairs.append(pair)
    if len(set(arrow_pairs)) != 3:
        return False
    return len(frozenset.union(*arrow_pairs)) == 3


def enumerate_fr3(d: GaussDiagram) -> list[Move]:
    """All FR3 sites: three disjoint adjacent blocks, each holding two of
    the three arrows, arrow pairs covered once, pattern in the catalog."""
    size = d.size
    if d.n < 3:
        return []
    word = d.word
    index = _fr3_before_index()
    moves = []
    for starts in itertools.combinations(range(size), 3):
        positions = []
        for s in starts:
            positions.extend((s, (s + 1) % size))
        if len(set(positions)) != 6:
            continue
        blocks = _fr3_blocks_at(word, size, starts)
        if not _fr3_structural(blocks):
            continue
        entry = index.get(canonical_pattern(blocks))
        if entry is not None:
            moves.append(Move(FR3, entry.id, tuple(positions)))
    moves.sort(key=Move.sort_key)
    return moves


# ---------------------------------------------------------------------------
# apply / inverse
# ---------------------------------------------------------------------------

def _check_gap(g: int, size: int):
    if not 0 <= g < max(size, 1):
        raise SiteMismatch(f"gap {g} out of range for {size} endpoints")


def _insert_blocks(word, inserts: list[tuple[int, list[int]]]) -> list[int]:
    """Insert blocks at gaps; for equal gaps, earlier-listed blocks come first."""
    out: list[int] = []
    for i in range(max(len(word), 1)):
        for g, block in inserts:
            if g == i:
                out.extend(block)
        if i < len(word):
            out.append(word[i])
    return out


def apply(d: GaussDiagram, m: Move) -> GaussDiagram:
    """Apply a move; labels are renormalized by first appearance."""
    word, size = d.word, d.size
    kind = m.kind

    if kind == FR1_REMOVE:
        if len(m.positions) != 2:
            raise SiteMismatch("fr1-remove takes two endpoint positions")
        i, j = m.positions
        if size < 2 or not (0 <= i < size) or j != (i + 1) % size:
            raise SiteMismatch("positions are not cyclically consecutive")
        if abs(word[i]) != abs(word[j]):
            raise SiteMismatch("endpoints belong to different arrows")
        if m.variant != ("th" if word[i] > 0 else "ht"):
            raise SiteMismatch("arrow direction does not match the variant")
        keep = [t for p, t in enumerate(word) if p not in (i, j)]
        return GaussDiagram(_relabel(keep))

    if kind == FR1_INSERT:
        if m.variant not in ("th", "ht"):
            raise SiteMismatch(f"unknown fr1 variant {m.variant!r}")
        (g,) = m.positions
        _check_gap(g, size)
        fresh = d.n + 1
        block = [fresh, -fresh] if m.variant == "th" else [-fresh, fresh]
        return GaussDiagram(_relabel(_insert_blocks(word, [(g, block)])))

    if kind == FR2_REMOVE:
        if m.variant not in FR2_VARIANTS:
            raise SiteMismatch(f"unknown fr2 variant {m.variant!r}")
        if len(m.positions) != 4 or len(set(m.positions)) != 4:
            raise SiteMismatch("fr2-remove takes four distinct positions")
        a0, a1, b0, b1 = m.positions
        if size < 4 or a1 != (a0 + 1) % size or b1 != (b0 + 1) % size:
            raise SiteMismatch("blocks are not cyclically consecutive")
        probe = _fr2_block_move(word, size, a0)
        if probe is None or probe.positions != m.positions or probe.variant != m.variant:
            raise SiteMismatch("no matching bigon at the stated positions")
        keep = [t for p, t in enumerate(word) if p not in m.positions]
        return GaussDiagram(_relabel(keep))

    if kind == FR2_INSERT:
        if m.variant not in FR2_VARIANTS:
            raise SiteMismatch(f"unknown fr2 variant {m.variant!r}")
        ga, gb = m.positions
        _check_gap(ga, size)
        _check_gap(gb, size)
        x, y = d.n + 1, d.n + 2
        block_a, block_b = _fr2_blocks(m.variant, x, y)
        return GaussDiagram(_relabel(_insert_blocks(word, [(ga, block_a), (gb, block_b)])))

    if kind == FR3:
        if len(m.positions) != 6 or len(set(m.positions)) != 6:
            raise SiteMismatch("fr3 takes six distinct positions")
        starts = m.positions[0::2]
        for s, p1 in zip(starts, m.positions[1::2]):
            if p1 != (s + 1) % size:
                raise SiteMismatch("blocks are not cyclically consecutive")
        blocks = _fr3_blocks_at(word, size, starts)
        if not _fr3_structural(blocks):
            raise SiteMismatch("blocks do not cover three arrows pairwise")
        catalog = build_fr3_catalog()
        if not isinstance(m.variant, int) or not 0 <= m.variant < len(catalog):
            raise SiteMismatch(f"unknown fr3 catalog entry {m.variant!r}")
        if canonical_pattern(blocks) != catalog[m.variant].before:
            raise SiteMismatch("blocks do not match the catalog entry")
        out = list(word)
        for s in starts:
            p1 = (s + 1) % size
            out[s], out[p1] = out[p1], out[s]
        return GaussDiagram(_relabel(out))

    raise SiteMismatch(f"unknown move kind {kind!r}")


def _kept_below(position: int, removed: tuple[int, ...]) -> int:
    return position - sum(1 for r in removed if r < position)


def _vacated_gap(pair: tuple[int, int], removed: tuple[int, ...], pre_size: int) -> int:
    new_size = pre_size - len(removed)
    if new_size == 0:
        return 0
    start = 1 if pair[1] == 0 and pair[0] != 0 else pair[0]  # wrapped pair
    return _kept_below(start, removed) % new_size


def inverse(m: Move, pre_size: int) -> Move:
    """Move undoing m; pre_size is the endpoint count of m's pre-move
    diagram.  Positions refer to the literal post-move word of apply."""
    if m.kind == FR1_INSERT:
        g = m.positions[0]
        return Move(FR1_REMOVE, m.variant, (g, g + 1))

    if m.kind == FR1_REMOVE:
        gap = _vacated_gap((m.positions[0], m.positions[1]), m.positions, pre_size)
        return Move(FR1_INSERT, m.variant, (gap,))

    if m.kind == FR2_INSERT:
        ga, gb = m.positions
        if ga <= gb:
            return Move(FR2_REMOVE, m.variant, (ga, ga + 1, gb + 2, gb + 3))
        return Move(FR2_REMOVE, _swap_ab_variant(m.variant), (gb, gb + 1, ga + 2, ga + 3))

    if m.kind == FR2_REMOVE:
        a0, a1, b0, b1 = m.positions
        gap_a = _vacated_gap((a0, a1), m.positions, pre_size)
        gap_b = _vacated_gap((b0, b1), m.positions, pre_size)
        if gap_a != gap_b:
            return Move(FR2_INSERT, m.variant, (gap_a, gap_b))
        # the two blocks collapsed into one gap: the reconstruction lists
        # first whichever block led the removed run
        removed = set(m.positions)
        run_starts = [p for p in m.positions if (p - 1) % pre_size not in removed]
        if run_starts:
            lead = run_starts[0]
        else:  # the whole word was removed
            wrapped = [p0 for p0, p1 in ((a0, a1), (b0, b1)) if p1 < p0]
            lead = wrapped[0] if wrapped else 0
        variant = m.variant if lead in (a0, a1) else _swap_ab_variant(m.variant)
        return Move(FR2_INSERT, variant, (gap_a, gap_b))

    if m.kind == FR3:
        entry = build_fr3_catalog()[m.variant]
        return Move(FR3, entry.inverse_id, m.positions)

    raise ValueError(f"unknown move kind {m.kind!r}")
