"""Gentle algebras presented by a quiver with length-2 zero relations.

A relation is an ordered pair of arrow ids (a, b): the two-step walk that
follows arrow a and then arrow b is declared zero.  Cartan matrices count
the surviving directed paths; entry C[i][j] is the number of nonzero paths
from vertex i to vertex j, the trivial path included.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InfiniteDimensional, InvariantViolation
from .structure import decompose

PATH_DEPTH_FACTOR = 2


@dataclass(frozen=True)
class GentleAlgebra:
    quiver: object
    relations: frozenset

    def __init__(self, quiver, relations):
        relations = frozenset(tuple(r) for r in relations)
        arrow_of = {a.id: a for a in quiver.arrows}
        for first, second in relations:
            if first not in arrow_of or second not in arrow_of:
                raise InvariantViolation(f"relation ({first!r}, {second!r}) names unknown arrows")
            if arrow_of[first].target != arrow_of[second].source:
                raise InvariantViolation(f"relation ({first!r}, {second!r}) is not composable")
        object.__setattr__(self, "quiver", quiver)
        object.__setattr__(self, "relations", relations)

    def arrow(self, aid):
        return self.quiver.arrow_by_id(aid)

    def relations_doc(self):
        return {"relations": sorted([a, b] for a, b in self.relations)}


@dataclass(frozen=True)
class Violation:
    condition: str
    witnesses: tuple
    message: str


def cluster_tilted(q):
    """The algebra of a recognized quiver: full relations on every oriented
    3-cycle.  Over a double arrow only the triangle through the designated
    parallel arrow (the apex assignment of the decomposition) counts."""
    dec = decompose(q)
    arrow_of = {a.id: a for a in q.arrows}
    doubled = set()
    per_pair = {}
    for a in q.arrows:
        per_pair.setdefault((a.source, a.target), []).append(a.id)
    for ids in per_pair.values():
        if len(ids) > 1:
            doubled.update(ids)
    relations = set()
    for tri in q.directed_triangles():
        genuine = True
        for k in range(3):
            aid = tri[k]
            if aid in doubled:
                apex = arrow_of[tri[(k + 1) % 3]].target
                if dec.attached.get(aid) != apex:
                    genuine = False
        if genuine:
            for k in range(3):
                relations.add((tri[k], tri[(k + 1) % 3]))
    algebra = GentleAlgebra(q, relations)
    problems = validate_gentle(algebra)
    if problems:
        raise InvariantViolation(f"cluster-tilted relations are not gentle: {problems[0].message}")
    return algebra


def validate_gentle(a):
    """Empty list iff the presentation satisfies the four gentleness rules."""
    q = a.quiver
    out = []
    per_source = {}
    per_target = {}
    for ar in q.arrows:
        per_source.setdefault(ar.source, []).append(ar)
        per_target.setdefault(ar.target, []).append(ar)
    for v in q.vertices:
        outs = per_source.get(v, [])
        ins = per_target.get(v, [])
        if len(outs) > 2:
            out.append(Violation("at-most-two-out", tuple(x.id for x in outs),
                                 f"vertex {v!r} starts {len(outs)} arrows"))
        if len(ins) > 2:
            out.append(Violation("at-most-two-in", tuple(x.id for x in ins),
                                 f"vertex {v!r} ends {len(ins)} arrows"))
    for ar in q.arrows:
        nz_next = [b.id for b in per_source.get(ar.target, [])
                   if (ar.id, b.id) not in a.relations]
        z_next = [b.id for b in per_source.get(ar.target, [])
                  if (ar.id, b.id) in a.relations]
        nz_prev = [b.id for b in per_target.get(ar.source, [])
                   if (b.id, ar.id) not in a.relations]
        z_prev = [b.id for b in per_target.get(ar.source, [])
                  if (b.id, ar.id) in a.relations]
        if len(nz_next) > 1:
            out.append(Violation("unique-nonzero-continuation", (ar.id, *nz_next),
                                 f"arrow {ar.id!r} has several nonzero continuations"))
        if len(nz_prev) > 1:
            out.append(Violation("unique-nonzero-predecessor", (ar.id, *nz_prev),
                                 f"arrow {ar.id!r} has several nonzero predecessors"))
        if len(z_next) > 1:
            out.append(Violation("unique-zero-continuation", (ar.id, *z_next),
                                 f"arrow {ar.id!r} has several zero continuations"))
        if len(z_prev) > 1:
            out.append(Violation("unique-zero-predecessor", (ar.id, *z_prev),
                                 f"arrow {ar.id!r} has several zero predecessors"))
    return out


@dataclass(frozen=True)
class CartanMatrix:
    order: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]

    def entry(self, i, j):
        """Nonzero-path count from vertex i to vertex j (labels)."""
        return self.matrix[self.order.index(i)][self.order.index(j)]

    def to_doc(self):
        return {"order": list(self.order), "matrix": [list(r) for r in self.matrix]}

    def permuted(self, mapping):
        """Reindex rows/columns through a vertex bijection old -> new."""
        new_order = tuple(mapping[v] for v in self.order)
        pos = {v: i for i, v in enumerate(sorted(new_order))}
        n = len(new_order)
        m = [[0] * n for _ in range(n)]
        for i, vi in enumerate(new_order):
            for j, vj in enumerate(new_order):
                m[pos[vi]][pos[vj]] = self.matrix[i][j]
        return CartanMatrix(tuple(sorted(new_order)), tuple(tuple(r) for r in m))


def cartan(a):
    """Path-count matrix of the algebra; infinite-dimensional input raises."""
    q = a.quiver
    order = tuple(q.vertices)
    idx = {v: i for i, v in enumerate(order)}
    per_source = {}
    for ar in q.arrows:
        per_source.setdefault(ar.source, []).append(ar)
    cap = PATH_DEPTH_FACTOR * len(order)
    n = len(order)
    m = [[0] * n for _ in range(n)]
    for v in order:
        stack = [(v, None, 0)]
        while stack:
            at, last, depth = stack.pop()
            if depth > cap:
                raise InfiniteDimensional(
                    f"nonzero path of length {depth} found; relation-free cycle")
            m[idx[v]][idx[at]] += 1
            for ar in per_source.get(at, []):
                if last is not None and (last, ar.id) in a.relations:
                    continue
                stack.append((ar.target, ar.id, depth + 1))
    return CartanMatrix(order, tuple(tuple(r) for r in m))


@dataclass(frozen=True)
class TwoTermComplexSpec:
    """Two-term tilting data: the summand at ``pivot`` becomes the complex
    P_pivot -> direct sum of P_source(a) over the arrows a ending at pivot,
    in degrees -1 and 0; every other summand stays in degree 0."""

    pivot: str


def bb_cartan(a, spec):
    """Alternating-sum matrix of the two-term complex built at spec.pivot.

    Entry (i, j) sums (-1)**(r-s) times the path counts between the degree-r
    part of the j-th summand and the degree-s part of the i-th summand.
    """
    q = a.quiver
    if not q.has_vertex(spec.pivot):
        raise InvariantViolation(f"pivot {spec.pivot!r} is not a vertex")
    incoming = [ar for ar in q.arrows if ar.target == spec.pivot]
    if not incoming:
        raise InvariantViolation(f"pivot {spec.pivot!r} has no incoming arrow")
    base = cartan(a)
    idx = {v: i for i, v in enumerate(base.order)}

    def summand(v):
        if v != spec.pivot:
            return ((0, (v,)),)
        return ((-1, (v,)), (0, tuple(ar.source for ar in incoming)))

    n = len(base.order)
    m = [[0] * n for _ in range(n)]
    for i, vi in enumerate(base.order):
        for j, vj in enumerate(base.order):
            total = 0
            for r, parts_j in summand(vj):
                for s, parts_i in summand(vi):
                    sign = 1 if (r - s) % 2 == 0 else -1
                    for pb in parts_i:
                        for pa in parts_j:
                            total += sign * base.matrix[idx[pb]][idx[pa]]
            m[i][j] = total
    return CartanMatrix(base.order, tuple(tuple(r) for r in m))
