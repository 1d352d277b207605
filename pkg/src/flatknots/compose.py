"""Connected sums, permutant sets, primality, and super-additivity checks.

A connected sum splices two based diagrams at their basepoint gaps; the
permutant set collects the sums over every basepoint choice.  A minimal
diagram with a nontrivial split certifies a composite knot: were the
knot equivalent to one of the two sides, its crossing number would drop
below the minimal diagram's, which is impossible.  Conversely composite
knots always show a split on minimal diagrams, so primality is decided
by reducing and inspecting splits.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .diagram import (
    BasedDiagram,
    GaussDiagram,
    Split,
    canonical_form,
    canonical_sort_key,
    canonical_word,
    find_splits,
    parse,
    rebase,
    serialize,
)
from .reduce import (
    OrbitLimits,
    crossing_number,
    is_minimal,
    minimal_class_code,
    _reduce_word,
    DEFAULT_LIMITS,
)

VERDICT_TRIVIAL = "trivial"
VERDICT_PRIME = "prime"
VERDICT_COMPOSITE = "composite"


def connected_sum(b1: BasedDiagram, b2: BasedDiagram) -> GaussDiagram:
    """Splice the second diagram into the first at the basepoint gaps.

    Both words are read counterclockwise, so orientations match by
    construction; crossing counts add."""
    w1 = rebase(b1.diagram, b1.base).word
    w2 = rebase(b2.diagram, b2.base).word
    n1 = b1.diagram.n
    shifted = tuple(t + n1 if t > 0 else t - n1 for t in w2)
    return GaussDiagram(w1 + shifted)


def closure(b: BasedDiagram) -> GaussDiagram:
    """Forget the basepoint of a long diagram."""
    return b.diagram


@dataclass(frozen=True)
class PermutantSet:
    """All connected sums of two diagrams over every basepoint pair,
    deduplicated by canonical code."""

    input_codes: tuple[str, str]
    members: tuple[str, ...]
    sources: dict[str, tuple[tuple[int, int], ...]]


def permutant_set(d1: GaussDiagram, d2: GaussDiagram) -> PermutantSet:
    sources: dict[str, list[tuple[int, int]]] = {}
    for g1 in range(max(d1.size, 1)):
        for g2 in range(max(d2.size, 1)):
            code = canonical_form(connected_sum(BasedDiagram(d1, g1), BasedDiagram(d2, g2)))
            sources.setdefault(code, []).append((g1, g2))
    members = tuple(
        sorted(sources, key=lambda c: canonical_sort_key(parse(c).word))
    )
    return PermutantSet(
        (serialize(d1), serialize(d2)),
        members,
        {c: tuple(pairs) for c, pairs in sources.items()},
    )


@dataclass(frozen=True)
class CompositenessVerdict:
    verdict: str
    minimal: GaussDiagram
    witness: Split | None
    justification: str


def is_composite(d: GaussDiagram, limits: OrbitLimits | None = None) -> CompositenessVerdict:
    """Classify as trivial, prime, or composite by reducing and looking
    for a nontrivial split of the minimal diagram."""
    max_nodes = (limits or DEFAULT_LIMITS).max_nodes
    min_word, cr = _reduce_word(d.word, max_nodes)
    minimal = GaussDiagram(min_word)
    if cr == 0:
        return CompositenessVerdict(
            VERDICT_TRIVIAL, minimal, None, "reduces to the empty diagram"
        )
    splits = find_splits(minimal)
    if splits:
        w = splits[0]
        return CompositenessVerdict(
            VERDICT_COMPOSITE,
            minimal,
            w,
            f"minimal diagram splits into sides of {w.side_sizes[0]} and "
            f"{w.side_sizes[1]} arrows; equivalence to either side would "
            "contradict minimality",
        )
    return CompositenessVerdict(
        VERDICT_PRIME,
        minimal,
        None,
        "no split on a minimal diagram; composite knots always split there",
    )


@dataclass(frozen=True)
class MemberRow:
    code: str
    cr: int
    class_id: int
    minimal: bool


@dataclass(frozen=True)
class SuperadditivityReport:
    input_codes: tuple[str, str]
    cr1: int
    cr2: int
    inputs_minimal: bool
    exhaustive: bool
    rows: tuple[MemberRow, ...]
    distinct_classes: int
    inequality_violations: tuple[str, ...]
    equality_violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.inequality_violations and not self.equality_violations


def verify_superadditivity(
    d1: GaussDiagram,
    d2: GaussDiagram,
    limits: OrbitLimits | None = None,
    seed: int = 0,
    sample_size: int = 256,
) -> SuperadditivityReport:
    """Check cr(member) >= cr(d1) + cr(d2) over the permutant set, and
    exact equality when both inputs are minimal diagrams.

    Basepoint pairs are enumerated exhaustively when there are at most
    256 of them, otherwise a seeded uniform sample of sample_size pairs
    is used."""
    c1 = crossing_number(d1, limits)
    c2 = crossing_number(d2, limits)
    inputs_minimal = is_minimal(d1, limits) and is_minimal(d2, limits)

    g1s = range(max(d1.size, 1))
    g2s = range(max(d2.size, 1))
    all_pairs = [(g1, g2) for g1 in g1s for g2 in g2s]
    exhaustive = len(all_pairs) <= 256
    if not exhaustive:
        rng = random.Random(seed)
        all_pairs = sorted(rng.sample(all_pairs, min(sample_size, len(all_pairs))))

    member_words: dict[tuple[int, ...], None] = {}
    for g1, g2 in all_pairs:
        s = connected_sum(BasedDiagram(d1, g1), BasedDiagram(d2, g2))
        member_words.setdefault(canonical_word(s.word), None)

    class_codes: dict[str, int] = {}
    prelim = []
    for w in sorted(member_words, key=canonical_sort_key):
        member = GaussDiagram(w)
        cr = crossing_number(member, limits)
        cls = minimal_class_code(member, limits)
        prelim.append((serialize(member), cr, cls, is_minimal(member, limits)))
        class_codes.setdefault(cls, 0)
    for i, cls in enumerate(
        sorted(class_codes, key=lambda c: canonical_sort_key(parse(c).word)), start=1
    ):
        class_codes[cls] = i

    rows = tuple(
        MemberRow(code, cr, class_codes[cls], minimal)
        for code, cr, cls, minimal in prelim
    )
    floor = c1 + c2
    ineq = tuple(r.code for r in rows if r.cr < floor)
    eq = tuple(r.code for r in rows if inputs_minimal and r.cr != floor)
    return SuperadditivityReport(
        (serialize(d1), serialize(d2)),
        c1,
        c2,
        inputs_minimal,
        exhaustive,
        rows,
        len(class_codes),
        ineq,
        eq,
    )
