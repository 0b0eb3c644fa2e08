"""Cross-section calculus on a compressing disk.

A compressing disk D meets the n parallel copies of the summand surface in
n concentric circles (level 1 innermost) and meets the splitting surface
in arcs and closed curves.  Near each point where an arc hits the disk
boundary, the arc crosses all n circles in a *stack*; after the
cut-and-paste sum, a strand travelling clockwise through a positive stack
climbs one level and through a negative stack drops one level.  The whole
intersection picture is therefore governed by the cyclic word of stack
parities, and this module traces it by prefix sums.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, InconsistentLabelingError

PARITY_CHARS = ("+", "-")


def _check_balanced(word):
    plus = word.count("+")
    minus = word.count("-")
    if plus + minus != len(word):
        raise DomainError(
            "parity word may contain only '+' and '-', got {!r}".format(word))
    if plus != minus:
        raise DomainError(
            "unbalanced parity word {!r}: every arc of the intersection "
            "contributes one ascending and one descending stack, so the "
            "number of '+' stacks must equal the number of '-' "
            "stacks".format(word))


@dataclass(frozen=True)
class DiskPattern:
    """The combinatorial intersection data on the disk.

    ``word`` is the cyclic sequence of stack parities read clockwise
    around the disk boundary; ``copies`` is the number of parallel copies
    of the summand.  ``inner_closed`` counts closed-curve components of
    the splitting surface's intersection with the disk, and
    ``crossing_components`` the total number of components of that
    intersection (arcs plus closed curves); the latter bounds the closed
    curves of the sum that are neither arcs nor traced level curves.
    """

    word: str
    copies: int
    inner_closed: int = 0
    crossing_components: int | None = None

    def __post_init__(self):
        _check_balanced(self.word)
        if self.copies < 0:
            raise DomainError("copies must be nonnegative")
        if self.inner_closed < 0:
            raise DomainError("inner_closed must be nonnegative")
        if self.crossing_components is None:
            object.__setattr__(self, "crossing_components",
                               len(self.word) // 2 + self.inner_closed)
        if self.inner_closed > self.crossing_components:
            raise DomainError(
                "inner_closed exceeds the number of intersection components")
        if self.crossing_components < len(self.word) // 2 + self.inner_closed:
            raise DomainError(
                "the intersection has at least one component per boundary "
                "arc plus the closed curves")

    @property
    def boundary_count(self):
        """Number of intersections with the disk boundary (always even)."""
        return len(self.word)


@dataclass(frozen=True)
class TraceReport:
    """What the sum looks like on the disk.

    ``gamma_levels`` is the contiguous interval of levels whose traced
    curve closes up without meeting any vertical arc; ``excursion`` is the
    pair (max prefix sum, min prefix sum) of the parity word.
    """

    arc_count: int
    gamma_levels: range
    excursion: tuple
    annuli: tuple
    extra_closed_bound: int
    copies: int

    @property
    def gamma_count(self):
        return len(self.gamma_levels)


def prefix_sums(word):
    """Signed prefix sums of a parity word, starting from 0."""
    sums = [0]
    for ch in word:
        sums.append(sums[-1] + (1 if ch == "+" else -1))
    return sums


def trace(dp):
    """Trace every level's strand once around the disk.

    Starting on the level-i circle and walking clockwise, the strand sits
    at level i + p after the stacks with prefix sum p.  It closes up after
    one loop (the word is balanced) and is a simple closed curve exactly
    when every intermediate level stays inside [1, copies]; climbing past
    the top level exits through the disk boundary and dropping below
    level 1 enters the innermost region, either of which hands the strand
    to a vertical arc.  The surviving levels form the interval
    [1 - min_prefix, copies - max_prefix], so at least copies - h survive
    (the excursion of a balanced word of length h is at most h).
    """
    _check_balanced(dp.word)
    sums = prefix_sums(dp.word)
    high = max(sums)
    low = min(sums)
    lo_level = 1 - low
    hi_level = dp.copies - high
    gamma_levels = range(lo_level, max(hi_level + 1, lo_level))
    annuli_pairs = tuple(
        (i, i + 1) for i in gamma_levels if i + 1 in gamma_levels)
    return TraceReport(
        arc_count=len(dp.word) // 2,
        gamma_levels=gamma_levels,
        excursion=(high, low),
        annuli=annuli_pairs,
        extra_closed_bound=dp.crossing_components,
        copies=dp.copies,
    )


def stack_word_from_arcs(arcs):
    """Assemble the cyclic parity word from labelled arc endpoints.

    Each arc must carry exactly two endpoints on the disk boundary, given
    as (position, kind) pairs with kind 'ascend' or 'descend'; the two
    ends of one arc always induce stacks of opposite parity, and input
    violating that is rejected.  Positions order the stacks around the
    boundary.
    """
    ends = []
    for k, arc in enumerate(arcs):
        if len(arc) != 2:
            raise InconsistentLabelingError(
                "arc {} must have exactly two boundary endpoints".format(k))
        (pos_a, kind_a), (pos_b, kind_b) = arc
        for kind in (kind_a, kind_b):
            if kind not in ("ascend", "descend"):
                raise InconsistentLabelingError(
                    "unknown endpoint kind {!r}".format(kind))
        if kind_a == kind_b:
            raise InconsistentLabelingError(
                "arc {} has two {}ing endpoints; the two ends of an arc "
                "induce stacks of opposite parity".format(k, kind_a))
        ends.append((pos_a, kind_a))
        ends.append((pos_b, kind_b))
    positions = [p for p, _ in ends]
    if len(set(positions)) != len(positions):
        raise InconsistentLabelingError("duplicate endpoint positions")
    ends.sort()
    return "".join("+" if kind == "ascend" else "-" for _, kind in ends)


def annuli(report):
    """Adjacent level pairs whose traced curves cobound an annulus."""
    levels = report.gamma_levels
    return tuple((i, i + 1) for i in levels if i + 1 in levels)
