"""Recognition of annulus-type mutation-class quivers and their reduction.

A recognized quiver has exactly one induced non-oriented cycle; every
cycle arrow may carry an attached oriented 3-cycle whose apex roots a
type-A branch.  The quadruple (r1, r2, s1, s2) counts free arrows and
3-cycles on the two orientation sides and classifies these quivers up to
the equivalences implemented in this package.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import (
    AssertionFailure,
    InvalidParameters,
    NonTermination,
    NotInClass,
)
from .quiver import Arrow, Quiver, is_isomorphic, mutate

CYCLE_CENSUS_FACTOR = 10


@dataclass(frozen=True)
class Parameters:
    r1: int
    r2: int
    s1: int
    s2: int

    def __post_init__(self):
        for v in (self.r1, self.r2, self.s1, self.s2):
            if v < 0:
                raise InvalidParameters("parameters must be non-negative")

    @property
    def r(self):
        return self.r1 + self.r2

    @property
    def s(self):
        return self.s1 + self.s2

    @property
    def r_bar(self):
        return self.r1 + 2 * self.r2

    @property
    def s_bar(self):
        return self.s1 + 2 * self.s2

    @property
    def vertex_count(self):
        return self.r1 + self.s1 + 2 * (self.r2 + self.s2)

    def canonical(self):
        a = (self.r1, self.r2, self.s1, self.s2)
        b = (self.s1, self.s2, self.r1, self.r2)
        return self if a <= b else Parameters(*b)

    def to_doc(self):
        return {
            "r1": self.r1, "r2": self.r2, "s1": self.s1, "s2": self.s2,
            "r_bar": self.r_bar, "s_bar": self.s_bar,
        }


@dataclass(frozen=True)
class CycleEdge:
    arrow_id: str
    forward: bool


@dataclass(frozen=True)
class TildeADecomposition:
    """The non-oriented cycle plus its attached 3-cycles and branches.

    ``cycle`` lists the cycle vertices in the deterministic traversal
    (lexicographically least vertex first, moving toward its smaller
    neighbour); ``cycle_arrows[i]`` describes the edge from cycle[i] to
    cycle[i+1].  ``branches`` only holds apexes whose type-A component has
    at least two vertices; a bare apex is recorded in ``attached`` alone.
    """

    cycle: tuple[str, ...]
    cycle_arrows: tuple[CycleEdge, ...]
    attached: dict
    branches: dict

    def component_of(self, arrow_id):
        """All branch vertices hanging on the given cycle arrow (apex included)."""
        if arrow_id in self.branches:
            return tuple(self.branches[arrow_id].vertices)
        return (self.attached[arrow_id],)


# -- underlying-graph cycle census ----------------------------------------


def _underlying_adjacency(q):
    adj = {v: set() for v in q.vertices}
    for a in q.arrows:
        adj[a.source].add(a.target)
        adj[a.target].add(a.source)
    return adj


def _chordless_cycles(vertices, adj, cap):
    """Chordless cycles (length >= 3) of a simple graph, as vertex tuples.

    Grows induced paths whose start is the least vertex of the cycle; a
    path closes when its tip meets a neighbour of the start.  Raises
    NotInClass when more than ``cap`` cycles are found.
    """
    order = {v: i for i, v in enumerate(vertices)}
    cycles = []
    for u in vertices:
        starts = sorted((v for v in adj[u] if order[v] > order[u]), key=lambda x: order[x])
        for v in starts:
            stack = [(u, v)]
            while stack:
                path = stack.pop()
                tip = path[-1]
                interior = path[1:-1]
                for w in sorted(adj[tip], key=lambda x: order[x]):
                    if w == u or order[w] < order[u] or w in path:
                        continue
                    if any(w in adj[p] for p in interior):
                        continue
                    if w in adj[u]:
                        if order[path[1]] < order[w]:
                            cycles.append(path + (w,))
                            if len(cycles) > cap:
                                raise NotInClass(
                                    "BadCycleIncidence",
                                    "chordless cycle census exceeded cap",
                                )
                    else:
                        stack.append(path + (w,))
    return cycles


def _cycle_is_oriented(q, cyc):
    n = len(cyc)
    fwd = all(q.arrows_between(cyc[i], cyc[(i + 1) % n]) for i in range(n))
    bwd = all(q.arrows_between(cyc[(i + 1) % n], cyc[i]) for i in range(n))
    return fwd or bwd


def _connected(vertices, adj):
    if not vertices:
        return False
    seen = {vertices[0]}
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(vertices)


# -- type-A recognition ----------------------------------------------------


def recognize_type_a(q):
    """True iff the quiver looks like a member of a linear-type mutation
    class: connected, no parallel arrows, every induced cycle an oriented
    3-cycle, and the 3- and 4-arrow vertex conditions hold."""
    if not q.vertices:
        return False
    adj = _underlying_adjacency(q)
    if not _connected(q.vertices, adj):
        return False
    pair_counts = {}
    for a in q.arrows:
        key = frozenset((a.source, a.target))
        pair_counts[key] = pair_counts.get(key, 0) + 1
    if any(c > 1 for c in pair_counts.values()):
        return False
    try:
        cycles = _chordless_cycles(q.vertices, adj, CYCLE_CENSUS_FACTOR * len(q.vertices) + 10)
    except NotInClass:
        return False
    for cyc in cycles:
        if len(cyc) != 3 or not _cycle_is_oriented(q, cyc):
            return False
    triangles = q.directed_triangles()
    arrow_of = {a.id: a for a in q.arrows}
    in_triangle = set()
    for tri in triangles:
        in_triangle.update(tri)
    for v in q.vertices:
        incident = [a for a in q.arrows if v in (a.source, a.target)]
        if len(incident) > 4:
            return False
        tris_here = [t for t in triangles
                     if any(v in (arrow_of[aid].source, arrow_of[aid].target) for aid in t)]
        if len(incident) == 4:
            if len(tris_here) != 2:
                return False
            covered = set()
            for t in tris_here:
                covered.update(aid for aid in t if aid in {a.id for a in incident})
            if len(covered) != 4:
                return False
        elif len(incident) == 3:
            if len(tris_here) != 1:
                return False
            tri_ids = set(tris_here[0])
            outside = [a for a in incident if a.id not in tri_ids]
            if len(outside) != 1 or outside[0].id in in_triangle:
                return False
    return True


# -- decomposition ----------------------------------------------------------


def decompose(q):
    """Split a quiver into non-oriented cycle, attached 3-cycles and branches.

    Raises NotInClass with one of the documented reasons when the quiver is
    not in the recognized class.
    """
    n = len(q.vertices)
    adj = _underlying_adjacency(q)

    pair_arrows = {}
    for a in q.arrows:
        pair_arrows.setdefault(frozenset((a.source, a.target)), []).append(a)
    two_cycles = []
    for key, arrows in sorted(pair_arrows.items(), key=lambda kv: sorted(kv[0])):
        if len(arrows) > 2:
            raise NotInClass("MultipleNonOrientedCycles", "more than two parallel arrows")
        if len(arrows) == 2:
            two_cycles.append(tuple(sorted(key)))

    long_cycles = _chordless_cycles(q.vertices, adj, CYCLE_CENSUS_FACTOR * n + 10)
    non_oriented = [c for c in long_cycles if not _cycle_is_oriented(q, c)]
    non_oriented.extend(two_cycles)

    if not non_oriented:
        raise NotInClass("NoNonOrientedCycle", "no induced non-oriented cycle")
    if len(non_oriented) > 1:
        raise NotInClass("MultipleNonOrientedCycles",
                         f"found {len(non_oriented)} non-oriented induced cycles")

    raw = non_oriented[0]
    # deterministic traversal: least label first, toward its lesser neighbour
    L = len(raw)
    start = min(raw)
    si = raw.index(start)
    if L == 2:
        cyc = (start, raw[1 - si])
    else:
        left, right = raw[(si - 1) % L], raw[(si + 1) % L]
        step = 1 if right < left else -1
        cyc = tuple(raw[(si + step * i) % L] for i in range(L))

    # cycle edges with their arrows and orientation flags
    edges = []
    if L == 2:
        pair = sorted(pair_arrows[frozenset(cyc)], key=lambda a: a.id)
        edges.append(CycleEdge(pair[0].id, pair[0].source == cyc[0]))
        edges.append(CycleEdge(pair[1].id, pair[1].source == cyc[1]))
        arrow_of_edge = {pair[0].id: pair[0], pair[1].id: pair[1]}
    else:
        arrow_of_edge = {}
        for i in range(L):
            x, y = cyc[i], cyc[(i + 1) % L]
            between = q.arrows_between(x, y) + q.arrows_between(y, x)
            if len(between) != 1:
                raise NotInClass("BadCycleIncidence",
                                 f"cycle edge {x!r}-{y!r} carries {len(between)} arrows")
            a = between[0]
            edges.append(CycleEdge(a.id, a.source == x))
            arrow_of_edge[a.id] = a

    cycle_set = set(cyc)
    cycle_arrow_ids = set(arrow_of_edge)

    for a in q.arrows:
        if a.source in cycle_set and a.target in cycle_set and a.id not in cycle_arrow_ids:
            raise NotInClass("BadCycleIncidence",
                             f"chord arrow {a.id!r} between cycle vertices")

    legs = {}
    for a in q.arrows:
        if a.id in cycle_arrow_ids:
            continue
        src_on, tgt_on = a.source in cycle_set, a.target in cycle_set
        if src_on != tgt_on:
            z = a.target if src_on else a.source
            legs.setdefault(z, []).append(a)

    attached = {}
    for z in sorted(legs):
        la = legs[z]
        into = [a for a in la if a.target == z]
        outof = [a for a in la if a.source == z]
        if len(la) != 2 or len(into) != 1 or len(outof) != 1:
            raise NotInClass("BadCycleIncidence",
                             f"vertex {z!r} touches the cycle with a bad arrow pattern")
        y, x = into[0].source, outof[0].target
        candidates = sorted(
            aid for aid, a in arrow_of_edge.items()
            if a.source == x and a.target == y and aid not in attached
        )
        if not candidates:
            raise NotInClass("BadCycleIncidence",
                             f"vertex {z!r} completes no oriented 3-cycle over a cycle arrow")
        attached[candidates[0]] = z

    # components of the complement, one per apex
    off = [v for v in q.vertices if v not in cycle_set]
    comp_of = {}
    components = []
    for v in off:
        if v in comp_of:
            continue
        comp = {v}
        queue = deque([v])
        while queue:
            w = queue.popleft()
            for u in adj[w]:
                if u not in cycle_set and u not in comp:
                    comp.add(u)
                    queue.append(u)
        for u in comp:
            comp_of[u] = len(components)
        components.append(comp)

    apexes = set(attached.values())
    branches = {}
    for comp in components:
        hits = sorted(apexes & comp)
        if len(hits) != 1:
            raise NotInClass("BadCycleIncidence",
                             f"off-cycle component {sorted(comp)} contains {len(hits)} apexes")
    for aid, z in attached.items():
        comp = components[comp_of[z]]
        bq = q.induced(comp)
        if not recognize_type_a(bq):
            raise NotInClass("BranchNotTypeA",
                             f"branch at apex {z!r} fails the type-A conditions")
        z_arrows = [a for a in bq.arrows if z in (a.source, a.target)]
        if len(z_arrows) > 2:
            raise NotInClass("BadApexDegree",
                             f"apex {z!r} has {len(z_arrows)} arrows in its branch")
        if len(z_arrows) == 2:
            ids = {a.id for a in z_arrows}
            if not any(ids <= set(t) for t in bq.directed_triangles()):
                raise NotInClass("BadApexDegree",
                                 f"apex {z!r} has two branch arrows not on a 3-cycle")
        if len(comp) >= 2:
            branches[aid] = bq

    return TildeADecomposition(cyc, tuple(edges), attached, branches)


# -- parameters --------------------------------------------------------------


def _edge_contributions(q, dec):
    """Per cycle edge: (forward flag, free-arrow count, 3-cycle count)."""
    out = []
    for edge in dec.cycle_arrows:
        if edge.arrow_id in dec.attached:
            comp = dec.component_of(edge.arrow_id)
            bq = q.induced(comp)
            tris = bq.directed_triangles()
            in_tri = set()
            for t in tris:
                in_tri.update(t)
            free = sum(1 for a in bq.arrows if a.id not in in_tri)
            out.append((edge.forward, free, 1 + len(tris)))
        else:
            out.append((edge.forward, 1, 0))
    return out


def compute_parameters(q, dec=None):
    """Canonical (r1, r2, s1, s2) of a recognized quiver."""
    if dec is None:
        dec = decompose(q)
    r1 = r2 = s1 = s2 = 0
    for forward, free, tri in _edge_contributions(q, dec):
        if forward:
            r1, r2 = r1 + free, r2 + tri
        else:
            s1, s2 = s1 + free, s2 + tri
    return Parameters(r1, r2, s1, s2).canonical()


# -- normal form --------------------------------------------------------------


def build_normal_form(p):
    """Deterministic normal-form quiver for the given parameters.

    Cycle vertices c_0..c_{r+s-1} with the r forward arrows first and c_0 a
    source; the last r2 forward and first s2 backward arrows carry apexes.
    """
    if isinstance(p, tuple):
        p = Parameters(*p)
    if p.r < 1 or p.s < 1:
        raise InvalidParameters("each orientation side needs at least one arrow")
    L = p.r + p.s
    width = max(2, len(str(L)))

    def nm(prefix, i):
        return f"{prefix}{i:0{width}d}"

    cyc = [nm("c", i) for i in range(L)]
    vertices = list(cyc)
    arrows = []
    for i in range(1, p.r + 1):
        arrows.append(Arrow(nm("a", i), cyc[i - 1], cyc[i]))
    for j in range(1, p.s + 1):
        arrows.append(Arrow(nm("b", j), cyc[(p.r + j) % L], cyc[p.r + j - 1]))
    for i in range(p.r1 + 1, p.r + 1):
        u = nm("u", i)
        vertices.append(u)
        arrows.append(Arrow(nm("p", i), cyc[i], u))
        arrows.append(Arrow(nm("q", i), u, cyc[i - 1]))
    for j in range(1, p.s2 + 1):
        w = nm("w", j)
        vertices.append(w)
        arrows.append(Arrow(nm("t", j), cyc[p.r + j - 1], w))
        arrows.append(Arrow(nm("v", j), w, cyc[(p.r + j) % L]))
    return Quiver(vertices, arrows)


def build_cycle(r_bar, s_bar):
    """Non-oriented cycle with r_bar forward and s_bar backward arrows."""
    return build_normal_form(Parameters(r_bar, 0, s_bar, 0))


# -- reduction to normal form --------------------------------------------------


@dataclass(frozen=True)
class MutationStep:
    vertex: str
    tag: str
    parameters: Parameters


@dataclass(frozen=True)
class MutationTrace:
    steps: tuple[MutationStep, ...]

    def to_doc(self):
        return {"steps": [{"vertex": s.vertex, "tag": s.tag} for s in self.steps]}


def _find_s1(q, dec):
    """A branch 3-cycle one free arrow away from its stack, or None."""
    for edge in dec.cycle_arrows:
        aid = edge.arrow_id
        if aid not in dec.branches:
            continue
        z = dec.attached[aid]
        bq = dec.branches[aid]
        tris = bq.directed_triangles()
        if not tris:
            continue
        arrow_of = {a.id: a for a in bq.arrows}
        badj = _underlying_adjacency(bq)
        parent, depth = {z: None}, {z: 0}
        queue = deque([z])
        while queue:
            v = queue.popleft()
            for w in sorted(badj[v]):
                if w not in depth:
                    depth[w] = depth[v] + 1
                    parent[w] = v
                    queue.append(w)
        tri_edges = set()
        for t in tris:
            for aid2 in t:
                a = arrow_of[aid2]
                tri_edges.add(frozenset((a.source, a.target)))
        candidates = []
        for t in tris:
            tv = set()
            for aid2 in t:
                tv.update((arrow_of[aid2].source, arrow_of[aid2].target))
            d = min(tv, key=lambda v: (depth[v], v))
            if d == z:
                continue
            if frozenset((d, parent[d])) in tri_edges:
                continue
            candidates.append((depth[d], d))
        if candidates:
            return min(candidates)[1]
    return None


def _find_apex_with_branch_arrows(q, dec, count):
    for edge in dec.cycle_arrows:
        aid = edge.arrow_id
        if aid not in dec.attached:
            continue
        z = dec.attached[aid]
        comp = dec.component_of(aid)
        bq = q.induced(comp) if len(comp) > 1 else None
        deg = 0 if bq is None else sum(1 for a in bq.arrows if z in (a.source, a.target))
        if deg == count:
            return z
    return None


def _edge_word(q, dec):
    """Per cycle edge: (forward, apex label or None)."""
    return [(e.forward, dec.attached.get(e.arrow_id)) for e in dec.cycle_arrows]


def reduce_to_normal_form(q):
    """Mutation sequence carrying q to its normal form.

    Returns (trace, quiver); the result is isomorphic to
    build_normal_form(compute_parameters(q)), all intermediate quivers stay
    in class with unchanged parameters and arrow count.
    """
    dec = decompose(q)
    target_params = compute_parameters(q, dec)
    arrow_count = len(q.arrows)
    budget = 10 * len(q.vertices) ** 2
    steps = []
    cur = q

    def apply(vertex, tag):
        nonlocal cur
        if len(steps) >= budget:
            raise NonTermination(f"reduction exceeded {budget} mutations")
        cur = mutate(cur, vertex)
        d = decompose(cur)
        p = compute_parameters(cur, d)
        if p != target_params or len(cur.arrows) != arrow_count:
            raise AssertionFailure(
                f"reduction step at {vertex!r} changed parameters or arrow count",
                counterexample=cur,
            )
        steps.append(MutationStep(vertex, tag, p))
        return d

    # gather branch 3-cycles, absorb them, then absorb free branch arrows
    while True:
        v = _find_s1(cur, dec)
        if v is None:
            break
        dec = apply(v, "S1")
    while True:
        v = _find_apex_with_branch_arrows(cur, dec, 2)
        if v is None:
            break
        dec = apply(v, "S2")
    while True:
        v = _find_apex_with_branch_arrows(cur, dec, 1)
        if v is None:
            break
        dec = apply(v, "S3")
    if any(len(dec.component_of(a)) > 1 for a in dec.attached):
        raise AssertionFailure("branches not empty after absorption", counterexample=cur)

    # sort the cycle's orientation word into the normal-form arrangement
    cyc = list(dec.cycle)
    L = len(cyc)
    word = _edge_word(cur, dec)
    r1 = sum(1 for f, z in word if f and z is None)
    r2 = sum(1 for f, z in word if f and z is not None)
    s1 = sum(1 for f, z in word if not f and z is None)
    s2 = sum(1 for f, z in word if not f and z is not None)
    shape = [(True, False)] * r1 + [(True, True)] * r2 \
        + [(False, True)] * s2 + [(False, False)] * s1

    def matches(rot):
        return sum(
            1 for i in range(L)
            if (word[i][0], word[i][1] is not None) == shape[(i + rot) % L]
        )

    rot = max(range(L), key=lambda r: (matches(r), -r))
    target = [shape[(i + rot) % L] for i in range(L)]

    def swap_adjacent(i):
        # edges i and i+1 share the vertex cyc[i+1]
        a, b = word[i], word[i + 1]
        v = cyc[i + 1]
        if (a[0], a[1] is not None) == (b[0], b[1] is not None):
            pass
        elif a[0] != b[0]:
            apply(v, "S5")
        else:
            z = a[1] if a[1] is not None else b[1]
            apply(v, "S4")
            apply(z, "S5")
            apply(v, "S3")
        word[i], word[i + 1] = b, a

    for pos in range(L):
        if (word[pos][0], word[pos][1] is not None) == target[pos]:
            continue
        idx = next(
            i for i in range(pos + 1, L)
            if (word[i][0], word[i][1] is not None) == target[pos]
        )
        for j in range(idx, pos, -1):
            swap_adjacent(j - 1)

    normal = build_normal_form(target_params)
    if not is_isomorphic(cur, normal):
        raise AssertionFailure("reduction result is not the normal form",
                               counterexample=cur)
    return MutationTrace(tuple(steps)), cur


def to_cycle_form(q):
    """Mutate to normal form, then pop every apex into the cycle."""
    _, nf = reduce_to_normal_form(q)
    dec = decompose(nf)
    out = nf
    for z in sorted(dec.attached.values()):
        out = mutate(out, z)
    check = decompose(out)
    if check.attached or len(check.cycle) != len(q.vertices):
        raise AssertionFailure("cycle form still carries 3-cycles", counterexample=out)
    return out


def mutation_equivalent(q1, q2):
    """Same vertex count and same unordered pair of side totals."""
    p1 = compute_parameters(q1)
    p2 = compute_parameters(q2)
    return (len(q1.vertices) == len(q2.vertices)
            and {p1.r_bar, p1.s_bar} == {p2.r_bar, p2.s_bar})
