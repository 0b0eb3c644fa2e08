"""Independent oracles used to cross-check the library.

Everything here recomputes results from first principles, by explicit
instantiation and brute-force enumeration, sharing no code with the
library paths it checks.
"""

from collections import deque


def _components(nodes, edges):
    adj = {v: [] for v in nodes}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = set()
    comps = []
    for v in adj:
        if v in seen:
            continue
        comp = set()
        queue = deque([v])
        while queue:
            u = queue.popleft()
            if u in comp:
                continue
            comp.add(u)
            queue.extend(w for w in adj[u] if w not in comp)
        seen |= comp
        comps.append(comp)
    return comps


def brute_force_components(pc, copies):
    """Instantiate every (patch, level) node and every seam edge.

    Returns (component count, sorted euler multiset).
    """
    nodes = [("F", p.id) for p in pc.f_patches]
    if copies > 0:
        nodes += [("G", p.id, lv) for p in pc.g_patches
                  for lv in range(1, copies + 1)]
    edges = []
    for seam in pc.seams:
        f1, g1, f2, g2 = seam.quadrants
        if seam.epsilon == "+":
            fa, ga, fb, gb = f1, g1, f2, g2
        else:
            fa, ga, fb, gb = f2, g1, f1, g2
        if copies == 0:
            edges.append((("F", fa), ("F", fb)))
            continue
        if seam.level_shift == 0:
            for lv in range(1, copies + 1):
                edges.append((("F", fa), ("G", ga, lv)))
                edges.append((("F", fb), ("G", gb, lv)))
            continue
        if seam.level_shift == 1:
            top_a, bottom_b = copies, 1
            step = 1
        else:
            top_a, bottom_b = 1, copies
            step = -1
        edges.append((("F", fa), ("G", ga, top_a)))
        edges.append((("F", fb), ("G", gb, bottom_b)))
        for lv in range(1, copies + 1):
            if 1 <= lv + step <= copies:
                edges.append((("G", ga, lv), ("G", gb, lv + step)))
    euler = {p.id: p.euler for p in pc.f_patches + pc.g_patches}
    comps = _components(nodes, edges)
    multiset = sorted(sum(euler[m[1]] for m in comp) for comp in comps)
    return len(comps), tuple(multiset)


def splice_components(word, copies):
    """Explicitly splice the level circles at every stack.

    Builds the n level circles, cuts each into sectors between
    consecutive stacks, reconnects the loose ends the way the stacks
    prescribe (ascending through '+', descending through '-'), pairs the
    inner vertical pieces through the middle region (each intersection
    arc dives into the middle at one stack and comes back out at
    another; the pairing affects nothing that is reported), and
    enumerates the resulting 1-manifold.

    Returns (gamma_levels set, arc count, extra closed curve count).
    """
    h = len(word)
    n = copies
    if h == 0:
        return set(range(1, n + 1)), 0, 0
    if n == 0:
        return set(), h // 2, 0

    nodes = []
    for i in range(1, n + 1):
        for j in range(1, h + 1):
            nodes.append(("a", i, j))
    for j in range(1, h + 1):
        nodes.append(("ext", j))
        nodes.append(("int", j))

    edges = []
    for j in range(1, h + 1):
        prev = j - 1 if j > 1 else h
        if word[j - 1] == "+":
            for i in range(1, n):
                edges.append((("a", i, prev), ("a", i + 1, j)))
            edges.append((("ext", j), ("a", n, prev)))
            edges.append((("int", j), ("a", 1, j)))
        else:
            for i in range(2, n + 1):
                edges.append((("a", i, prev), ("a", i - 1, j)))
            edges.append((("int", j), ("a", 1, prev)))
            edges.append((("ext", j), ("a", n, j)))
    # middle region: pair the inner pieces in stack order
    for j in range(1, h + 1, 2):
        edges.append((("int", j), ("int", j + 1)))

    comps = _components(nodes, edges)
    gammas = set()
    arcs = 0
    extra_closed = 0
    for comp in comps:
        exts = sum(1 for v in comp if v[0] == "ext")
        ints = sum(1 for v in comp if v[0] == "int")
        if exts:
            assert exts == 2, "an arc has exactly two boundary ends"
            arcs += 1
        elif ints:
            extra_closed += 1
        else:
            for v in comp:
                if v[0] == "a" and v[2] == h:
                    gammas.add(v[1])
    return gammas, arcs, extra_closed


def walk_dual_curve(cert):
    """Step-by-step check of a dual-curve certificate.

    Returns True when both lift paths chain correctly from the base
    level to base + period, all recorded levels lie in the band, and the
    closed curve passes through the base level exactly once.
    """
    base, top = cert.level, cert.level + cert.period
    for levels, crossings, shift_value in (
            (cert.prime_levels, cert.prime_crossings, cert.prime_shift),
            (cert.dblprime_levels, cert.dblprime_crossings,
             cert.dblprime_shift)):
        visited = []
        position = base
        for start in levels:
            if start != position:
                return False
            if not 1 <= start <= cert.copies:
                return False
            for c in crossings:
                position = position + c
            if position != start + shift_value:
                return False
            visited.append(start)
        if position != top or not 1 <= top <= cert.copies:
            return False
        if any(v == base for v in visited[1:]):
            return False
    return True


def check_zero_side(cert):
    """The Euler count that forbids the complementary disk."""
    return cert.side_euler + 1 > cert.sum_euler


def euler_rank_genus(pieces):
    """Genus of a glued union of pieces: 1 - (sum of piece eulers)."""
    return 1 - sum(p.euler for p in pieces)


def residue_classes(period, ns):
    """Partition a copy-count range by residue."""
    classes = {}
    for n in ns:
        classes.setdefault(n % period, []).append(n)
    return sorted((sorted(v) for v in classes.values()), key=min)
