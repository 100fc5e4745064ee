"""Finite quivers without loops or oriented 2-cycles.

Vertices are opaque string labels, arrows carry stable string ids.  All
values are immutable; every operation returns a fresh quiver, so values can
be shared freely across threads.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass

from .errors import InvariantViolation, ParseError, SizeLimit, UnknownVertex

CANONICAL_VERTEX_CAP = 64


@dataclass(frozen=True, order=True)
class Arrow:
    id: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    """A directed multigraph with named vertices and arrows.

    Invariants enforced at construction: no loops, no oriented 2-cycles
    (parallel arrows in the same direction are fine), unique vertex labels,
    unique arrow ids, every arrow endpoint declared.  Arrows are stored
    sorted by (source, target, id) so equal documents compare equal.
    """

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __init__(self, vertices, arrows):
        vertices = tuple(vertices)
        arrows = tuple(sorted(arrows, key=lambda a: (a.source, a.target, a.id)))
        vset = set(vertices)
        if len(vset) != len(vertices):
            raise InvariantViolation("duplicate vertex labels")
        ids = set()
        directed = set()
        for a in arrows:
            if a.id in ids:
                raise InvariantViolation(f"duplicate arrow id {a.id!r}")
            ids.add(a.id)
            if a.source == a.target:
                raise InvariantViolation(f"loop at vertex {a.source!r} (arrow {a.id!r})")
            if a.source not in vset or a.target not in vset:
                raise InvariantViolation(f"arrow {a.id!r} uses undeclared vertex")
            directed.add((a.source, a.target))
        for s, t in directed:
            if (t, s) in directed:
                raise InvariantViolation(f"oriented 2-cycle between {s!r} and {t!r}")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "arrows", arrows)

    # -- basic queries -------------------------------------------------

    def has_vertex(self, v):
        return v in self.vertices

    def arrows_from(self, v):
        return [a for a in self.arrows if a.source == v]

    def arrows_to(self, v):
        return [a for a in self.arrows if a.target == v]

    def arrows_between(self, s, t):
        """Arrows s -> t, sorted by id."""
        return [a for a in self.arrows if a.source == s and a.target == t]

    def arrow_by_id(self, aid):
        for a in self.arrows:
            if a.id == aid:
                return a
        raise KeyError(aid)

    def neighbors(self, v):
        """Underlying-graph neighbours of v."""
        out = set()
        for a in self.arrows:
            if a.source == v:
                out.add(a.target)
            elif a.target == v:
                out.add(a.source)
        return out

    def induced(self, keep):
        """Full subquiver on the given vertex set (original vertex order)."""
        keep = set(keep)
        return Quiver(
            [v for v in self.vertices if v in keep],
            [a for a in self.arrows if a.source in keep and a.target in keep],
        )

    def relabel(self, mapping):
        return Quiver(
            [mapping[v] for v in self.vertices],
            [Arrow(a.id, mapping[a.source], mapping[a.target]) for a in self.arrows],
        )

    def directed_triangles(self):
        """All oriented 3-cycles as arrow-id triples, rotated to start at the
        lexicographically least id, deduplicated."""
        by_source = defaultdict(list)
        for a in self.arrows:
            by_source[a.source].append(a)
        seen = set()
        out = []
        for a in self.arrows:
            for b in by_source[a.target]:
                if b.target == a.source or b.target == a.target:
                    continue
                for c in by_source[b.target]:
                    if c.target != a.source:
                        continue
                    ids = (a.id, b.id, c.id)
                    k = min(range(3), key=lambda i: ids[i])
                    key = ids[k:] + ids[:k]
                    if key not in seen:
                        seen.add(key)
                        out.append(key)
        return out


# -- exchange matrices --------------------------------------------------


@dataclass(frozen=True)
class ExchangeMatrix:
    """Skew-symmetric integer matrix view of a quiver.

    Entry b[i][j] counts arrows i -> j minus arrows j -> i; because loops
    and 2-cycles are excluded this encoding is lossless.
    """

    labels: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.labels)
        if len(self.rows) != n or any(len(r) != n for r in self.rows):
            raise InvariantViolation("exchange matrix must be square over labels")
        for i in range(n):
            if self.rows[i][i] != 0:
                raise InvariantViolation("exchange matrix has nonzero diagonal")
            for j in range(n):
                if self.rows[i][j] != -self.rows[j][i]:
                    raise InvariantViolation("exchange matrix not skew-symmetric")

    @classmethod
    def from_quiver(cls, q):
        idx = {v: i for i, v in enumerate(q.vertices)}
        n = len(q.vertices)
        b = [[0] * n for _ in range(n)]
        for a in q.arrows:
            b[idx[a.source]][idx[a.target]] += 1
            b[idx[a.target]][idx[a.source]] -= 1
        return cls(tuple(q.vertices), tuple(tuple(r) for r in b))

    def to_quiver(self):
        arrows = []
        n = len(self.labels)
        for i in range(n):
            for j in range(n):
                for k in range(max(self.rows[i][j], 0)):
                    arrows.append(Arrow(f"a{i}_{j}_{k}", self.labels[i], self.labels[j]))
        return Quiver(self.labels, arrows)

    def mutate(self, k):
        if k not in self.labels:
            raise UnknownVertex(k)
        ki = self.labels.index(k)
        n = len(self.labels)
        b = self.rows
        new = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i == ki or j == ki:
                    new[i][j] = -b[i][j]
                elif b[i][ki] * b[ki][j] > 0:
                    sign = 1 if b[i][ki] > 0 else -1
                    new[i][j] = b[i][j] + sign * b[i][ki] * b[ki][j]
                else:
                    new[i][j] = b[i][j]
        return ExchangeMatrix(self.labels, tuple(tuple(r) for r in new))


def renormalize(q):
    """Round-trip through the exchange matrix, synthesizing arrow ids.

    Two quivers related by arrow renaming only become equal after this.
    """
    return ExchangeMatrix.from_quiver(q).to_quiver()


# -- mutation -----------------------------------------------------------


def mutate(q, k):
    """Mutate the quiver at vertex k.

    Arrows incident to k are reversed and keep their id with a trailing
    apostrophe; a path i -> k -> j contributes composite arrows i -> j,
    cancelling against existing arrows j -> i.  Existing arrows survive
    cancellation in increasing id order; composites get fresh ids "c{n}".
    """
    if not q.has_vertex(k):
        raise UnknownVertex(k)
    ins = [a for a in q.arrows if a.target == k]
    outs = [a for a in q.arrows if a.source == k]
    r = Counter(a.source for a in ins)
    s = Counter(a.target for a in outs)
    vidx = {v: i for i, v in enumerate(q.vertices)}

    pairs = sorted(
        ((i, j) for i in r for j in s if i != j),
        key=lambda p: (vidx[p[0]], vidx[p[1]]),
    )
    removed = set()
    composites = []
    for i, j in pairs:
        ji = q.arrows_between(j, i)
        ij = q.arrows_between(i, j)
        t = len(ji) - len(ij)
        t_new = t - r[i] * s[j]
        # t_new > 0 means arrows j -> i remain, negative means arrows i -> j
        if t_new >= 0:
            keep_ji, keep_ij = t_new, 0
        else:
            keep_ji, keep_ij = 0, -t_new
        for a in ji[keep_ji:]:
            removed.add(a.id)
        composites.append((i, j, keep_ij - len(ij)))

    result = [a for a in q.arrows
              if a.source != k and a.target != k and a.id not in removed]
    used_ids = {a.id for a in result}

    for a in ins + outs:
        rid = a.id + "'"
        while rid in used_ids:
            rid += "'"
        used_ids.add(rid)
        result.append(Arrow(rid, a.target, a.source))

    counter = 1
    for i, j, extra in composites:
        for _ in range(extra):
            while f"c{counter}" in used_ids:
                counter += 1
            cid = f"c{counter}"
            used_ids.add(cid)
            result.append(Arrow(cid, i, j))

    return Quiver(q.vertices, result)


# -- canonical form and isomorphism --------------------------------------


def _refine(colors, out_adj, in_adj, n):
    while True:
        sig = []
        for v in range(n):
            outs = sorted((colors[j], m) for j, m in out_adj[v])
            ins = sorted((colors[i], m) for i, m in in_adj[v])
            sig.append((colors[v], tuple(outs), tuple(ins)))
        ranking = {sv: c for c, sv in enumerate(sorted(set(sig)))}
        new = [ranking[sv] for sv in sig]
        if new == colors:
            return colors
        colors = new


def canonical_form(q, max_vertices=CANONICAL_VERTEX_CAP):
    """Deterministic byte string equal for exactly the isomorphic quivers.

    Colour refinement on the directed multigraph followed by backtracking
    over the first non-singleton cell; vertices here have at most four
    incident arrows so the search tree stays tiny.
    """
    n = len(q.vertices)
    if n > max_vertices:
        raise SizeLimit(f"{n} vertices exceeds canonicalizer cap {max_vertices}")
    idx = {v: i for i, v in enumerate(q.vertices)}
    mult = Counter((idx[a.source], idx[a.target]) for a in q.arrows)
    out_adj = [[] for _ in range(n)]
    in_adj = [[] for _ in range(n)]
    for (i, j), m in mult.items():
        out_adj[i].append((j, m))
        in_adj[j].append((i, m))

    best = None

    def certificate(colors):
        order = sorted(range(n), key=lambda v: colors[v])
        pos = {v: p for p, v in enumerate(order)}
        edges = sorted((pos[i], pos[j], m) for (i, j), m in mult.items())
        return tuple(edges)

    def search(colors):
        nonlocal best
        cells = defaultdict(list)
        for v, c in enumerate(colors):
            cells[c].append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            cand = certificate(colors)
            if best is None or cand < best:
                best = cand
            return
        for v in target:
            base = [(colors[u], 0 if u == v else 1) for u in range(n)]
            ranking = {bv: c for c, bv in enumerate(sorted(set(base)))}
            search(_refine([ranking[bv] for bv in base], out_adj, in_adj, n))

    search(_refine([0] * n, out_adj, in_adj, n))
    payload = (n, best if best is not None else ())
    return repr(payload).encode("ascii")


def is_isomorphic(q1, q2, max_vertices=CANONICAL_VERTEX_CAP):
    if len(q1.vertices) != len(q2.vertices) or len(q1.arrows) != len(q2.arrows):
        return False
    return canonical_form(q1, max_vertices) == canonical_form(q2, max_vertices)


# -- serialization --------------------------------------------------------


def write_quiver(q):
    """Canonical UTF-8 JSON bytes; arrows sorted by (from, to, id)."""
    doc = {
        "vertices": list(q.vertices),
        "arrows": [
            {"id": a.id, "from": a.source, "to": a.target}
            for a in sorted(q.arrows, key=lambda a: (a.source, a.target, a.id))
        ],
    }
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=False).encode("utf-8")


def quiver_to_doc(q):
    return json.loads(write_quiver(q))


def read_quiver(data):
    """Parse quiver JSON, rejecting malformed documents with diagnostics."""
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    return quiver_from_doc(doc)


def quiver_from_doc(doc):
    if not isinstance(doc, dict):
        raise ParseError("top-level value must be an object")
    extra = set(doc) - {"vertices", "arrows"}
    if extra:
        raise ParseError(f"unexpected keys: {sorted(extra)}")
    if "vertices" not in doc or "arrows" not in doc:
        raise ParseError("document needs 'vertices' and 'arrows' keys")
    verts = doc["vertices"]
    if not isinstance(verts, list) or not all(isinstance(v, str) for v in verts):
        raise ParseError("'vertices' must be a list of strings")
    raw = doc["arrows"]
    if not isinstance(raw, list):
        raise ParseError("'arrows' must be a list")
    arrows = []
    for i, item in enumerate(raw):
        if not isinstance(item, dict):
            raise ParseError(f"arrows[{i}] must be an object")
        if set(item) != {"id", "from", "to"}:
            raise ParseError(f"arrows[{i}] must have exactly keys id/from/to")
        if not all(isinstance(item[k], str) for k in ("id", "from", "to")):
            raise ParseError(f"arrows[{i}] fields must be strings")
        arrows.append(Arrow(item["id"], item["from"], item["to"]))
    return Quiver(verts, arrows)
