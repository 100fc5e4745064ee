"""Exhaustive mutation-orbit enumeration, used as the desk-scale oracle.

Breadth-first search over mutation at every vertex, deduplicated by
canonical form; the resulting censuses validate closure, the equality of
mutation classes with side-total strata, and the stratification of each
class by the pairing invariant.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

from .ag import phi
from .errors import AssertionFailure, CapExceeded, NotInClass
from .gentle import cluster_tilted
from .quiver import canonical_form, mutate, write_quiver
from .structure import Parameters, build_cycle, build_normal_form, compute_parameters

DEFAULT_CAP = 10 ** 6


@dataclass(frozen=True)
class ClassCensus:
    seed: object
    members: dict          # canonical form -> representative quiver
    parameters: dict       # canonical form -> Parameters or None

    @property
    def size(self):
        return len(self.members)

    def partition_by_parameters(self):
        out = {}
        for key, p in self.parameters.items():
            out.setdefault(p, []).append(key)
        return out

    def partition_by_rs(self):
        out = {}
        for key, p in self.parameters.items():
            rs = None if p is None else tuple(sorted((p.r_bar, p.s_bar)))
            out.setdefault(rs, []).append(key)
        return out

    def to_doc(self):
        by_params = Counter()
        by_rs = Counter()
        for p in self.parameters.values():
            if p is None:
                continue
            by_params[(p.r1, p.r2, p.s1, p.s2)] += 1
            by_rs[tuple(sorted((p.r_bar, p.s_bar)))] += 1
        return {
            "size": self.size,
            "by_parameters": [
                {"params": {"r1": k[0], "r2": k[1], "s1": k[2], "s2": k[3],
                            "r_bar": k[0] + 2 * k[1], "s_bar": k[2] + 2 * k[3]},
                 "count": c}
                for k, c in sorted(by_params.items())
            ],
            "by_rs": [
                {"r_bar": k[0], "s_bar": k[1], "count": c}
                for k, c in sorted(by_rs.items())
            ],
        }


def enumerate_class(seed, cap=DEFAULT_CAP):
    """Complete mutation class of the seed, up to isomorphism."""
    start_key = canonical_form(seed)
    members = {start_key: seed}
    frontier = deque([seed])
    while frontier:
        q = frontier.popleft()
        for v in q.vertices:
            nxt = mutate(q, v)
            key = canonical_form(nxt)
            if key in members:
                continue
            if len(members) >= cap:
                raise CapExceeded(f"mutation class exceeded cap {cap}")
            members[key] = nxt
            frontier.append(nxt)
    parameters = {}
    for key, q in members.items():
        try:
            parameters[key] = compute_parameters(q)
        except NotInClass:
            parameters[key] = None
    return ClassCensus(seed, members, parameters)


def cycle_strata(n_plus_1):
    """One (r_bar, s_bar) per unordered stratum of the given cycle length."""
    return [(r, n_plus_1 - r) for r in range(1, n_plus_1 // 2 + 1)]


def verify_theorems(n_plus_1, cap=DEFAULT_CAP, check_phi=True):
    """Enumerate every stratum of the given size and check the classification.

    Asserts: every reached quiver is recognized with the parameter identity,
    censuses of distinct strata are disjoint and carry their stratum's side
    totals, and within each census the pairing-invariant partition equals
    the parameter partition.  Returns a per-stratum report dict.
    """

    def fail(message, quiver):
        raise AssertionFailure(
            message + "; counterexample quiver: " + write_quiver(quiver).decode(),
            counterexample=quiver,
        )

    censuses = {}
    for r_bar, s_bar in cycle_strata(n_plus_1):
        census = enumerate_class(build_cycle(r_bar, s_bar), cap)
        censuses[(r_bar, s_bar)] = census
        for key, q in census.members.items():
            p = census.parameters[key]
            if p is None:
                fail(f"stratum {(r_bar, s_bar)} contains an unrecognized quiver", q)
            if p.vertex_count != len(q.vertices) or len(q.vertices) != n_plus_1:
                fail("parameter identity r1+s1+2(r2+s2) = n+1 fails", q)
            if tuple(sorted((p.r_bar, p.s_bar))) != (r_bar, s_bar):
                fail(f"member of stratum {(r_bar, s_bar)} has side totals "
                     f"{(p.r_bar, p.s_bar)}", q)

    keys = list(censuses)
    for i in range(len(keys)):
        for j in range(i + 1, len(keys)):
            overlap = set(censuses[keys[i]].members) & set(censuses[keys[j]].members)
            if overlap:
                fail(f"strata {keys[i]} and {keys[j]} overlap",
                     censuses[keys[i]].members[next(iter(overlap))])

    # converse direction: every normal form of the right size is reached by
    # the breadth-first search of its stratum
    for r1 in range(n_plus_1 + 1):
        for r2 in range(n_plus_1 // 2 + 1):
            for s1 in range(n_plus_1 + 1):
                for s2 in range(n_plus_1 // 2 + 1):
                    p = Parameters(r1, r2, s1, s2)
                    if p.r < 1 or p.s < 1 or p.vertex_count != n_plus_1:
                        continue
                    if p.canonical() != p:
                        continue
                    nf = build_normal_form(p)
                    stratum = tuple(sorted((p.r_bar, p.s_bar)))
                    if canonical_form(nf) not in censuses[stratum].members:
                        fail(f"normal form {p} missing from stratum {stratum}", nf)

    report = {}
    for stratum, census in censuses.items():
        phi_by_param = {}
        if check_phi:
            for key, q in census.members.items():
                inv = phi(cluster_tilted(q))
                p = census.parameters[key]
                want = Counter()
                want[(p.r, p.r1)] += 1
                want[(p.s, p.s1)] += 1
                if p.r2 + p.s2:
                    want[(0, 3)] += p.r2 + p.s2
                if inv.as_counter() != want:
                    fail(f"invariant of a member with parameters {p} misses its closed form", q)
                if p in phi_by_param:
                    if phi_by_param[p] != inv:
                        fail(f"members with parameters {p} have different invariants", q)
                else:
                    phi_by_param[p] = inv
            values = list(phi_by_param.values())
            if len(values) != len(set(values)):
                first = next(iter(census.members.values()))
                fail("distinct parameters share one invariant", first)
        report[stratum] = {
            "size": census.size,
            "parameter_count": len(census.partition_by_parameters()),
        }
    return report
