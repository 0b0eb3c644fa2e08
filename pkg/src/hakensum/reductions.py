"""Rewrites that simplify an iterated sum before analysing it.

Three cleanups are implemented: removing intersection curves that are
inessential on the summand (each removal absorbs one parallel copy into
the other surface), cancelling opposite-parity curves in the torus case,
and the packing/slicing procedure that isotopes a sum out of a ball a
bounded number of steps at a time.  Each rewrite preserves the invariants
that the resolution engine can observe, and the torus case exposes the
residue periodicity that caps the number of isotopy classes.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import (DisconnectionError, DomainError, GuardViolationError,
                     InsufficientCopiesError, MalformedComplexError,
                     UndefinedPeriodError)
from .surfaces import Patch, PatchComplex, SeamCurve, euler_of_sum, resolve

PARITIES = ("+", "-")


@dataclass(frozen=True)
class Curve:
    """One intersection curve of the splitting surface with the summand."""

    id: str
    essential_on_k: bool = True
    parity: str | None = None

    def __post_init__(self):
        if self.parity is not None and self.parity not in PARITIES:
            raise DomainError("parity must be '+', '-' or None")


@dataclass(frozen=True)
class IntersectionInventory:
    """The list of intersection curves together with the copy count.

    Parities are present on every curve (torus mode) or on none.
    """

    curves: tuple
    copies: int

    def __post_init__(self):
        ids = [c.id for c in self.curves]
        if len(set(ids)) != len(ids):
            raise DomainError("duplicate curve id")
        with_parity = [c for c in self.curves if c.parity is not None]
        if with_parity and len(with_parity) != len(self.curves):
            raise DomainError(
                "parity must be present on every curve or on none")
        if self.copies < 0:
            raise DomainError("copies must be nonnegative")

    @property
    def torus_mode(self):
        return bool(self.curves) and self.curves[0].parity is not None

    def inessential(self):
        return tuple(c for c in self.curves if not c.essential_on_k)


def _analyse_trivial_seam(pc, seam_id):
    """Locate the innermost disk at a trivial seam and lay out the levels
    the absorbed copy would occupy.

    Returns (disk patch id, neighbour patch id, level span).  Raises when
    the seam does not carry a unique innermost disk, when the copy graph
    over the interleaving seams drifts around a cycle, or when the disk's
    neighbour is not at the extreme level matching the seam's own
    attachment; such complexes do not model an innermost trivial curve.
    """
    seam0 = pc.seam(seam_id)
    if seam0.level_shift == 0:
        raise MalformedComplexError(
            "seam {}: a trivial seam must interleave the copies "
            "(level_shift +1 or -1)".format(seam_id))
    (fa0, ga0), (fb0, gb0) = seam0.chosen_pairs()
    g_by_id = {p.id: p for p in pc.g_patches}

    def is_innermost_disk(pid):
        if g_by_id[pid].euler != 1:
            return False
        for s in pc.seams:
            count = list(s.quadrants[1::2]).count(pid)
            if s.id == seam_id:
                if count != 1:
                    return False
            elif count:
                return False
        return True

    if is_innermost_disk(ga0) and not is_innermost_disk(gb0):
        disk, neighbour = ga0, gb0
    elif is_innermost_disk(gb0) and not is_innermost_disk(ga0):
        disk, neighbour = gb0, ga0
    else:
        raise MalformedComplexError(
            "seam {} does not carry a unique innermost disk patch".format(
                seam_id))

    # The F side attaches to the first chosen G-side at the top level and
    # to the second at the bottom (reversed for shift -1); the absorbed
    # neighbour copy must sit at whichever extreme its attachment uses.
    neighbour_at_top = (neighbour == ga0) == (seam0.level_shift == 1)

    # Level potential of the absorbed copy over the interleaving seams.
    adj = {p.id: [] for p in pc.g_patches}
    for s in pc.seams:
        if s.id == seam_id or s.level_shift == 0:
            continue
        (_, ga), (_, gb) = s.chosen_pairs()
        adj[ga].append((gb, s.level_shift))
        adj[gb].append((ga, -s.level_shift))
    potential = {}
    span = 0
    for start in adj:
        if start in potential or start == disk:
            continue
        potential[start] = 0
        component = [start]
        stack = [start]
        while stack:
            v = stack.pop()
            for w, sh in adj[v]:
                if w not in potential:
                    potential[w] = potential[v] + sh
                    component.append(w)
                    stack.append(w)
                elif potential[w] != potential[v] + sh:
                    raise MalformedComplexError(
                        "seam {}: the copy graph drifts around a cycle, "
                        "so no single copy can be absorbed".format(seam_id))
        values = [potential[v] for v in component]
        span = max(span, max(values) - min(values))
        if neighbour in component:
            extreme = max(values) if neighbour_at_top else min(values)
            if potential[neighbour] != extreme:
                raise MalformedComplexError(
                    "seam {}: the disk's neighbour patch is not at the "
                    "extreme level of the absorbed copy".format(seam_id))
    return disk, neighbour, span


def absorption_level_span(pc, seam_id):
    """How many levels, minus one, the copy absorbed at this trivial seam
    occupies.  Absorbing while ``copies`` parallel copies are present is
    faithful only when copies >= max(2, span + 1): the absorbed copy must
    fit inside the band.
    """
    return _analyse_trivial_seam(pc, seam_id)[2]


def absorb_trivial_seam(pc, seam_id, copies=None):
    """Remove one trivial seam, absorbing one copy of G into the F side.

    The named seam must carry an innermost disk: one of its G-sides is a
    disk patch (euler 1) meeting no other seam.  The removal isotopy
    pushes the stack of disks to one extreme level and the remaining
    material of the lowest (or highest) copy to the other; combinatorially
    the seam disappears, the disk patch merges into its neighbour, and one
    copy of every G patch joins the F side.  See _analyse_trivial_seam for
    the structural conditions.  When ``copies`` is given, the band is also
    checked to be wide enough to hold the absorbed copy's level span.
    """
    disk, neighbour, span = _analyse_trivial_seam(pc, seam_id)
    if copies is not None and copies < max(2, span + 1):
        raise InsufficientCopiesError(
            "absorbing at seam {} needs at least {} copies (the absorbed "
            "copy spans {} levels), only {} present".format(
                seam_id, max(2, span + 1), span + 1, copies))
    seam0 = pc.seam(seam_id)
    (fa0, ga0), (fb0, gb0) = seam0.chosen_pairs()

    class _UF:
        def __init__(self):
            self.parent = {}

        def add(self, x):
            self.parent.setdefault(x, x)

        def find(self, x):
            while self.parent[x] != x:
                self.parent[x] = self.parent[self.parent[x]]
                x = self.parent[x]
            return x

        def union(self, a, b):
            self.add(a)
            self.add(b)
            ra, rb = self.find(a), self.find(b)
            if ra != rb:
                self.parent[rb] = ra

    uf = _UF()
    for p in pc.f_patches:
        uf.add(("F", p.id))
    for p in pc.g_patches:
        uf.add(("C", p.id))
    uf.union(("F", fa0), ("C", ga0))
    uf.union(("F", fb0), ("C", gb0))
    for s in pc.seams:
        if s.id == seam_id:
            continue
        (fa, ga), (fb, gb) = s.chosen_pairs()
        if s.level_shift == 0:
            # Copies at a non-interleaving seam attach straight to F.
            uf.union(("F", fa), ("C", ga))
            uf.union(("F", fb), ("C", gb))
        else:
            uf.union(("C", ga), ("C", gb))

    euler = {}
    oriented = {}
    for p in pc.f_patches:
        euler[("F", p.id)] = p.euler
        oriented[("F", p.id)] = p.oriented
    for p in pc.g_patches:
        euler[("C", p.id)] = p.euler
        oriented[("C", p.id)] = p.oriented

    groups = {}
    for node in list(uf.parent):
        groups.setdefault(uf.find(node), []).append(node)
    rep_name = {}
    new_f = []
    for _, members in sorted(groups.items()):
        members.sort()
        name = "+".join("{}.{}".format(kind, pid) for kind, pid in members)
        flags = {oriented[m] for m in members}
        if flags == {True}:
            ori = True
        elif False in flags:
            ori = False
        else:
            ori = None
        new_f.append(Patch(id=name, euler=sum(euler[m] for m in members),
                           oriented=ori))
        for m in members:
            rep_name[m] = name

    new_g = []
    for p in pc.g_patches:
        if p.id == disk:
            continue
        if p.id == neighbour:
            new_g.append(replace(p, euler=p.euler + 1, seams=None))
        else:
            new_g.append(replace(p, seams=None))

    new_seams = []
    for s in pc.seams:
        if s.id == seam_id:
            continue
        f1, g1, f2, g2 = s.quadrants
        new_seams.append(SeamCurve(
            id=s.id,
            quadrants=(rep_name[("F", f1)],
                       neighbour if g1 == disk else g1,
                       rep_name[("F", f2)],
                       neighbour if g2 == disk else g2),
            epsilon=s.epsilon,
            level_shift=s.level_shift))
    return PatchComplex(new_f, new_g, new_seams)


@dataclass(frozen=True)
class RemovalOutcome:
    """Result of removing the inessential curves."""

    inventory: IntersectionInventory
    removed: int
    complex: PatchComplex | None
    profile_before: tuple | None
    profile_after: tuple | None


def remove_trivial(inv, pc=None):
    """Drop the curves inessential on the summand, absorbing m copies.

    With m inessential curves and n copies, the sum with n copies is
    carried to the cleaned sum with n - m copies, so n > m is required.
    When a patch complex is attached, each inessential curve id must name
    a trivial seam of the complex; the seams are absorbed one by one
    (each absorption also needs the band of remaining copies to hold the
    absorbed copy's level span) and the resolution profile (component
    count and euler multiset) is checked to survive the substitution.
    """
    trivial = inv.inessential()
    m = len(trivial)
    if m == 0:
        return RemovalOutcome(inventory=inv, removed=0, complex=pc,
                              profile_before=None, profile_after=None)
    if inv.copies <= m:
        raise InsufficientCopiesError(
            "cannot absorb {} copies out of {}".format(m, inv.copies))
    cleaned = IntersectionInventory(
        curves=tuple(c for c in inv.curves if c.essential_on_k),
        copies=inv.copies - m)

    new_pc = None
    before = after = None
    if pc is not None:
        new_pc = pc
        for step, curve in enumerate(trivial):
            new_pc = absorb_trivial_seam(new_pc, curve.id,
                                         copies=inv.copies - step)
        resolved_before = resolve(pc, inv.copies)
        resolved_after = resolve(new_pc, cleaned.copies)
        before = (resolved_before.component_count,
                  resolved_before.euler_multiset())
        after = (resolved_after.component_count,
                 resolved_after.euler_multiset())
        if before != after:
            raise MalformedComplexError(
                "absorbing {} trivial seams changed the resolution "
                "profile: {} != {}".format(m, before, after))
        expected = euler_of_sum(pc.euler_f, pc.euler_g, inv.copies)
        if resolved_after.total_euler != expected:
            raise MalformedComplexError("euler law violated by absorption")
    return RemovalOutcome(inventory=cleaned, removed=m, complex=new_pc,
                          profile_before=before, profile_after=after)


@dataclass(frozen=True)
class ParityOutcome:
    """Result of cancelling opposite-parity curve pairs."""

    inventory: IntersectionInventory
    net: int
    cancelled_pairs: int


def reduce_parities(inv):
    """Cancel negative curves against positives in the torus case.

    Adjacent opposite-parity curves cancel in pairs (each cancellation
    absorbs one copy), leaving net = (#positive - #negative) curves, all
    positive, after (total - net)/2 cancellations.  Equal counts are
    rejected: the sum would disconnect for large copy counts.  The
    convention that positives outnumber negatives is required, matching
    the reduction's standing assumption.
    """
    if not inv.torus_mode:
        raise DomainError("parity reduction applies only in torus mode")
    if any(not c.essential_on_k for c in inv.curves):
        raise DomainError("remove inessential curves before reducing "
                          "parities")
    positive = sum(1 for c in inv.curves if c.parity == "+")
    negative = len(inv.curves) - positive
    if positive == negative:
        raise DisconnectionError(
            "equal numbers of positive and negative curves: the sum "
            "disconnects for large copy counts")
    if positive < negative:
        raise DomainError(
            "expected more positive than negative curves; relabel the "
            "parities to meet the convention")
    net = positive - negative
    cancelled = negative
    if cancelled and inv.copies <= cancelled:
        raise InsufficientCopiesError(
            "cancelling {} pairs needs more than {} copies".format(
                cancelled, inv.copies))

    curves = list(inv.curves)
    # Cancel cyclically adjacent opposite pairs, first such pair each
    # round; the surviving multiset does not depend on the order.
    changed = True
    while changed:
        changed = False
        k = len(curves)
        for i in range(k):
            j = (i + 1) % k
            if k >= 2 and curves[i].parity != curves[j].parity:
                for idx in sorted((i, j), reverse=True):
                    del curves[idx]
                changed = True
                break
    if len(curves) != net or any(c.parity != "+" for c in curves):
        raise AssertionError("parity cancellation lost count")
    return ParityOutcome(
        inventory=IntersectionInventory(
            curves=tuple(curves), copies=inv.copies - cancelled),
        net=net,
        cancelled_pairs=cancelled)


@dataclass(frozen=True)
class PeriodicityReport:
    """Residue classes of copy counts giving isotopic sums."""

    period: int
    classes: tuple
    euler_constant: int | None

    @property
    def class_count(self):
        return len(self.classes)


def torus_periodicity(period, copy_range, euler_splitting=None):
    """Partition copy counts by residue: adding ``period`` copies of the
    torus gives an isotopic surface, so a sweep meets at most ``period``
    isotopy classes.  A torus contributes nothing to Euler characteristic,
    so the sum's euler is constant across the sweep; the constant is
    checked exactly when ``euler_splitting`` is supplied.
    """
    if period <= 0:
        raise UndefinedPeriodError(
            "periodicity needs a positive number of intersection curves")
    by_residue = {}
    for n in copy_range:
        by_residue.setdefault(n % period, []).append(n)
    classes = tuple(tuple(sorted(v))
                    for v in sorted(by_residue.values(), key=min))
    constant = None
    if euler_splitting is not None:
        for n in copy_range:
            if euler_of_sum(euler_splitting, 0, n) != euler_splitting:
                raise AssertionError("torus euler additivity violated")
        constant = euler_splitting
    return PeriodicityReport(period=period, classes=classes,
                             euler_constant=constant)


@dataclass(frozen=True)
class Pack:
    """Move one outside component into a can.

    ``can`` and ``disk_side`` record which can received the material and
    which of the two sub-disks bounded the pushed ball; neither affects
    the abstract state, which only counts outside components.
    """

    can: int = 0
    disk_side: str = "outer"


@dataclass(frozen=True)
class Slice:
    """Split one can in two along a level disk.

    ``partition`` is the set of curve ids kept on the first half; it must
    be a proper nonempty subset of the can's curves.
    """

    can: int
    partition: frozenset


@dataclass(frozen=True)
class CanState:
    """A stack of cans, each holding at least one boundary curve."""

    cans: tuple
    outside_components: int
    history: tuple = ()

    def __post_init__(self):
        seen = set()
        for can in self.cans:
            if not can:
                raise DomainError("every can must hold at least one curve")
            if can & seen:
                raise DomainError("curve ids must be globally unique")
            seen |= can
        if self.outside_components < 0:
            raise DomainError("outside_components must be nonnegative")

    @property
    def total_curves(self):
        return sum(len(c) for c in self.cans)

    def measure(self):
        """Lexicographic termination measure (outside, curves - cans)."""
        return (self.outside_components, self.total_curves - len(self.cans))


def tuna_can_step(state, move):
    """Apply one packing or slicing move, checking its guard.

    Packing needs an outside component to push in; slicing needs a can
    with at least two curves.  The lexicographic measure strictly drops
    on every applied move.
    """
    if isinstance(move, Pack):
        if state.outside_components <= 0:
            raise GuardViolationError("no outside component left to pack")
        if not 0 <= move.can < len(state.cans):
            raise GuardViolationError("pack names a missing can")
        new = CanState(cans=state.cans,
                       outside_components=state.outside_components - 1,
                       history=state.history + (move,))
    elif isinstance(move, Slice):
        if not 0 <= move.can < len(state.cans):
            raise GuardViolationError("slice names a missing can")
        can = state.cans[move.can]
        part = frozenset(move.partition)
        if not part or not part < can:
            raise GuardViolationError(
                "slice partition must be a proper nonempty subset of the "
                "can's curves")
        rest = can - part
        cans = (state.cans[:move.can] + (part, rest)
                + state.cans[move.can + 1:])
        new = CanState(cans=cans,
                       outside_components=state.outside_components,
                       history=state.history + (move,))
    else:
        raise GuardViolationError("unknown move {!r}".format(move))
    if not new.measure() < state.measure():
        raise AssertionError("termination measure failed to decrease")
    return new


def applicable_moves(state):
    """All applicable moves, deterministically ordered.

    Packing is reported once (its parameters do not change the abstract
    state); slices enumerate every proper split of every can, keeping the
    can's smallest curve id on the first half to avoid mirror duplicates.
    """
    moves = []
    if state.outside_components > 0:
        moves.append(Pack())
    for idx, can in enumerate(state.cans):
        if len(can) < 2:
            continue
        members = sorted(can)
        anchor, rest = members[0], members[1:]
        for bits in range(2 ** len(rest) - 1):
            part = frozenset(
                [anchor] + [c for k, c in enumerate(rest) if bits >> k & 1])
            moves.append(Slice(can=idx, partition=part))
    return moves


@dataclass(frozen=True)
class RunTrace:
    """A maximal run of the packing/slicing procedure."""

    initial: CanState
    final: CanState
    moves: tuple
    slice_count: int
    pack_count: int
    slice_bound: int
    pack_bound: int

    @property
    def within_bound(self):
        return (self.slice_count <= self.slice_bound
                and self.pack_count <= self.pack_bound)


def tuna_can_run(state, strategy=None):
    """Run the procedure to exhaustion under a move-picking strategy.

    The default strategy takes the first applicable move.  Every run
    halts: slices are bounded by curves minus the initial can count and
    packs by the initial outside components (the stated step bound counts
    the two kinds separately).
    """
    if strategy is None:
        strategy = lambda st, moves: moves[0]
    slice_bound = state.total_curves - len(state.cans)
    pack_bound = state.outside_components
    initial = state
    moves_taken = []
    while True:
        moves = applicable_moves(state)
        if not moves:
            break
        move = strategy(state, moves)
        state = tuna_can_step(state, move)
        moves_taken.append(move)
        if len(moves_taken) > slice_bound + pack_bound:
            raise AssertionError("run exceeded its termination bound")
    slices = sum(1 for m in moves_taken if isinstance(m, Slice))
    packs = len(moves_taken) - slices
    if state.outside_components != 0 or any(
            len(c) != 1 for c in state.cans):
        raise AssertionError("maximal run left an applicable move")
    return RunTrace(initial=initial, final=state, moves=tuple(moves_taken),
                    slice_count=slices, pack_count=packs,
                    slice_bound=slice_bound, pack_bound=pack_bound)
