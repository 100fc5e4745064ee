"""Thread pairing invariant for gentle algebras.

Arrows get signs sigma/epsilon; maximal relation-free paths (permitted
threads) and maximal relation chains (forbidden threads) pair up through a
walk that consumes each arrow once forwards and once backwards; the
resulting multiset of (n, m) pairs is a derived-equivalence invariant.
"""

from __future__ import annotations

import random
from collections import Counter, deque
from dataclasses import dataclass

from .errors import ConflictingConstraints, InfiniteDimensional, InvariantViolation, PairingFailure
from .gentle import cluster_tilted
from .structure import compute_parameters


@dataclass(frozen=True)
class SignAssignment:
    sigma: dict
    epsilon: dict


@dataclass(frozen=True)
class Thread:
    kind: str                   # "permitted" | "forbidden"
    arrows: tuple[str, ...]     # empty for a trivial thread
    anchor: str | None          # vertex of a trivial thread
    start: str
    end: str
    sigma: int
    epsilon: int

    @property
    def trivial(self):
        return not self.arrows

    @property
    def length(self):
        return len(self.arrows)


def _neighbour_maps(a):
    q = a.quiver
    per_source, per_target = {}, {}
    for ar in q.arrows:
        per_source.setdefault(ar.source, []).append(ar)
        per_target.setdefault(ar.target, []).append(ar)
    return per_source, per_target


def _successor_maps(a):
    """Unique nonzero and zero continuations per arrow; gentleness gives
    at most one of each."""
    per_source, _ = _neighbour_maps(a)
    nz_next, z_next = {}, {}
    for ar in a.quiver.arrows:
        nz = [b.id for b in per_source.get(ar.target, []) if (ar.id, b.id) not in a.relations]
        zz = [b.id for b in per_source.get(ar.target, []) if (ar.id, b.id) in a.relations]
        if len(nz) > 1 or len(zz) > 1:
            raise InvariantViolation(f"arrow {ar.id!r} has ambiguous continuations; not gentle")
        if nz:
            nz_next[ar.id] = nz[0]
        if zz:
            z_next[ar.id] = zz[0]
    return nz_next, z_next


def assign_signs(a, rng=None):
    """Propagate the sign constraints, fixing free components to +1.

    Constraints: same-source arrows get opposite sigma, same-target arrows
    opposite epsilon; for a composable pair the later arrow's sigma is minus
    the earlier arrow's epsilon when the pair is nonzero and equal to it
    when the pair is a relation.  Pass an rng to randomize free choices.
    """
    per_source, per_target = _neighbour_maps(a)
    constraints = []  # (var1, var2, parity): sign(var1) == parity * sign(var2)
    for arrows in per_source.values():
        for i in range(len(arrows)):
            for j in range(i + 1, len(arrows)):
                constraints.append((("s", arrows[i].id), ("s", arrows[j].id), -1))
    for arrows in per_target.values():
        for i in range(len(arrows)):
            for j in range(i + 1, len(arrows)):
                constraints.append((("e", arrows[i].id), ("e", arrows[j].id), -1))
    for first in a.quiver.arrows:
        for second in per_source.get(first.target, []):
            parity = 1 if (first.id, second.id) in a.relations else -1
            constraints.append((("s", second.id), ("e", first.id), parity))

    graph = {}
    for v1, v2, parity in constraints:
        graph.setdefault(v1, []).append((v2, parity))
        graph.setdefault(v2, []).append((v1, parity))

    value = {}
    for ar in sorted(a.quiver.arrows, key=lambda x: x.id):
        for var in (("s", ar.id), ("e", ar.id)):
            if var in value:
                continue
            value[var] = 1 if rng is None else rng.choice([1, -1])
            queue = deque([var])
            while queue:
                v = queue.popleft()
                for w, parity in graph.get(v, []):
                    want = parity * value[v]
                    if w in value:
                        if value[w] != want:
                            raise ConflictingConstraints(
                                f"sign conflict between {v} and {w}")
                    else:
                        value[w] = want
                        queue.append(w)

    sigma = {ar.id: value[("s", ar.id)] for ar in a.quiver.arrows}
    epsilon = {ar.id: value[("e", ar.id)] for ar in a.quiver.arrows}
    return SignAssignment(sigma, epsilon)


def full_relation_cycles(a):
    """Directed cycles all of whose consecutive pairs are relations, each
    reported once, rotated to start at the least arrow id."""
    _, z_next = _successor_maps(a)
    cycles = []
    seen = set()
    for start in sorted(z_next):
        if start in seen:
            continue
        path = []
        pos = {}
        cur = start
        while cur is not None and cur not in seen and cur not in pos:
            pos[cur] = len(path)
            path.append(cur)
            cur = z_next.get(cur)
        if cur is not None and cur in pos:
            cyc = path[pos[cur]:]
            k = cyc.index(min(cyc))
            cycles.append(tuple(cyc[k:] + cyc[:k]))
        seen.update(path)
    return cycles


def threads(a, signs):
    """All permitted and forbidden threads with their extended signs.

    Rotational relation cycles are not threads; their arrows are consumed
    by the (0, m) pairs instead.
    """
    q = a.quiver
    arrow_of = {ar.id: ar for ar in q.arrows}
    per_source, per_target = _neighbour_maps(a)
    nz_next, z_next = _successor_maps(a)
    nz_prev = {v: k for k, v in nz_next.items()}
    z_prev = {v: k for k, v in z_next.items()}
    if len(nz_prev) != len(nz_next) or len(z_prev) != len(z_next):
        raise InvariantViolation("ambiguous predecessors; not gentle")

    cycle_arrows = set()
    for cyc in full_relation_cycles(a):
        cycle_arrows.update(cyc)

    out = []

    def chain_thread(kind, first, nxt):
        ids = [first]
        while ids[-1] in nxt:
            ids.append(nxt[ids[-1]])
        head, tail = arrow_of[ids[0]], arrow_of[ids[-1]]
        out.append(Thread(kind, tuple(ids), None, head.source, tail.target,
                          signs.sigma[ids[0]], signs.epsilon[ids[-1]]))

    covered = set()
    for ar in sorted(arrow_of):
        if ar not in nz_prev:
            chain_thread("permitted", ar, nz_next)
            covered.update(out[-1].arrows)
    if covered != set(arrow_of):
        raise InfiniteDimensional("relation-free directed cycle; threads undefined")

    for ar in sorted(arrow_of):
        if ar in cycle_arrows:
            continue
        if ar not in z_prev or z_prev[ar] in cycle_arrows:
            chain_thread("forbidden", ar, z_next)

    for v in q.vertices:
        ins = per_target.get(v, [])
        outs = per_source.get(v, [])
        if len(ins) > 1 or len(outs) > 1:
            continue
        beta = ins[0] if ins else None
        gamma = outs[0] if outs else None
        through_zero = (beta is not None and gamma is not None
                        and (beta.id, gamma.id) in a.relations)
        if beta is not None and gamma is not None:
            make_h, make_p = not through_zero, through_zero
        else:
            make_h = make_p = True
        if make_h:
            if gamma is not None:
                sig = -signs.sigma[gamma.id]
            elif beta is not None:
                sig = signs.epsilon[beta.id]
            else:
                sig = 1
            out.append(Thread("permitted", (), v, v, v, sig, -sig))
        if make_p:
            if beta is not None:
                val = -signs.epsilon[beta.id]
                out.append(Thread("forbidden", (), v, v, v, val, val))
            elif gamma is not None:
                val = -signs.sigma[gamma.id]
                out.append(Thread("forbidden", (), v, v, v, val, val))
            else:
                out.append(Thread("forbidden", (), v, v, v, -1, 1))
    return out


@dataclass(frozen=True)
class AGInvariant:
    """Sorted multiset of (n, m) pairs with their multiplicities."""

    entries: tuple[tuple[int, int, int], ...]

    @classmethod
    def from_counter(cls, counter):
        return cls(tuple((n, m, c) for (n, m), c in sorted(counter.items())))

    def to_doc(self):
        return {"pairs": [{"n": n, "m": m, "count": c} for n, m, c in self.entries]}

    def as_counter(self):
        return Counter({(n, m): c for n, m, c in self.entries})


def phi(a, signs=None):
    """Run the pairing walk and collect the invariant.

    Every arrow must be used exactly once by permitted threads and once by
    forbidden threads or relation cycles; a violation raises PairingFailure.
    """
    if signs is None:
        signs = assign_signs(a)
    ths = threads(a, signs)
    cycles = full_relation_cycles(a)
    permitted = [t for t in ths if t.kind == "permitted"]
    forbidden = [t for t in ths if t.kind == "forbidden"]

    def key(t):
        return (t.start, t.arrows, t.anchor or "")

    permitted.sort(key=key)
    forbidden.sort(key=key)

    def find_forbidden(end, eps):
        hits = [t for t in forbidden if t.end == end and t.epsilon == eps]
        if len(hits) != 1:
            raise PairingFailure(
                f"{len(hits)} forbidden threads end at {end!r} with sign {eps}")
        return hits[0]

    def find_permitted(start, sig):
        hits = [t for t in permitted if t.start == start and t.sigma == sig]
        if len(hits) != 1:
            raise PairingFailure(
                f"{len(hits)} permitted threads start at {start!r} with sign {sig}")
        return hits[0]

    consumed = set()
    used_forbidden = set()
    pairs = Counter()
    for h0 in permitted:
        if id(h0) in consumed:
            continue
        h = h0
        n = m = 0
        while True:
            consumed.add(id(h))
            n += 1
            pi = find_forbidden(h.end, -h.epsilon)
            if id(pi) in used_forbidden:
                raise PairingFailure("forbidden thread visited twice")
            used_forbidden.add(id(pi))
            m += pi.length
            nxt = find_permitted(pi.start, -pi.sigma)
            if nxt is h0:
                break
            if id(nxt) in consumed:
                raise PairingFailure("walk re-entered a consumed permitted thread")
            h = nxt
        pairs[(n, m)] += 1
    for cyc in cycles:
        pairs[(0, len(cyc))] += 1

    if len(used_forbidden) != len(forbidden):
        raise PairingFailure("walks ended with unconsumed forbidden threads")
    all_ids = sorted(ar.id for ar in a.quiver.arrows)
    forward = sorted(aid for t in permitted for aid in t.arrows)
    backward = sorted(
        [aid for t in forbidden for aid in t.arrows]
        + [aid for cyc in cycles for aid in cyc])
    if forward != all_ids or backward != all_ids:
        raise PairingFailure("arrow conservation failed")
    return AGInvariant.from_counter(pairs)


@dataclass(frozen=True)
class DecisionRecord:
    derived_equivalent: bool
    params_a: object
    params_b: object
    phi_a: AGInvariant
    phi_b: AGInvariant
    consistent: bool

    def to_doc(self):
        return {
            "derived_equivalent": self.derived_equivalent,
            "params_a": self.params_a.to_doc(),
            "params_b": self.params_b.to_doc(),
            "phi_a": self.phi_a.to_doc(),
            "phi_b": self.phi_b.to_doc(),
            "consistent": self.consistent,
        }


def derived_equivalent(q1, q2):
    """Parameter equality decides; the invariant multisets cross-check it."""
    pa = compute_parameters(q1)
    pb = compute_parameters(q2)
    fa = phi(cluster_tilted(q1))
    fb = phi(cluster_tilted(q2))
    same_params = pa == pb and len(q1.vertices) == len(q2.vertices)
    consistent = same_params == (fa == fb)
    return DecisionRecord(same_params, pa, pb, fa, fb, consistent)


def random_sign_assignments(a, count, seed=0):
    """Valid assignments with randomized free choices, for invariance tests."""
    out = []
    for i in range(count):
        rng = random.Random(seed * 1000003 + i)
        out.append(assign_signs(a, rng))
    return out
