"""Admissible directed graphs and their wheel classification.

Vertices are labeled: aerial (first type) vertices are 1..n, ground
(second type) vertices are n+1..n+m.  Edges start at aerial vertices
only, never repeat, and never form loops; a graph with n aerial and m
ground vertices at defect eps carries exactly 2n + m - 2 - eps edges.
Graphs are labeled objects: no isomorphism quotient is taken anywhere.

The canonical edge order (used for rows of the angle-form matrix and
everywhere a sign depends on edge order) is lexicographic: first by
source label, then by target label.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .series import _as_fraction


@dataclass(frozen=True)
class AdmissibleGraph:
    n: int
    m: int
    edges: tuple
    epsilon: int = 0

    def __post_init__(self):
        edges = tuple(sorted((int(s), int(t)) for s, t in self.edges))
        object.__setattr__(self, "edges", edges)
        v = self.n + self.m
        if self.n < 0 or self.m < 0:
            raise ValueError("negative vertex counts")
        expected = 2 * self.n + self.m - 2 - self.epsilon
        if len(edges) != expected:
            raise ValueError("edge count %d, admissibility needs %d"
                             % (len(edges), expected))
        seen = set()
        for s, t in edges:
            if not 1 <= s <= self.n:
                raise ValueError("edge source %d is not aerial" % s)
            if not 1 <= t <= v:
                raise ValueError("edge target %d out of range" % t)
            if s == t:
                raise ValueError("loop at vertex %d" % s)
            if (s, t) in seen:
                raise ValueError("double edge %r" % ((s, t),))
            seen.add((s, t))

    # -- combinatorial queries ---------------------------------------

    def is_ground(self, v):
        return v > self.n

    def out_edges(self, v):
        """Outgoing edges of v in the fixed (target-sorted) order."""
        return [e for e in self.edges if e[0] == v]

    def in_edges(self, v):
        return [e for e in self.edges if e[1] == v]

    def out_degree(self, v):
        return sum(1 for e in self.edges if e[0] == v)

    def in_degree(self, v):
        return sum(1 for e in self.edges if e[1] == v)

    def edge_index(self, edge):
        return self.edges.index(tuple(edge))

    def to_json(self):
        return {"n": self.n, "m": self.m, "epsilon": self.epsilon,
                "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["n"], obj["m"],
                   tuple(tuple(e) for e in obj["edges"]),
                   obj.get("epsilon", 0))

    def canonical_hash(self):
        blob = json.dumps(self.to_json(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()


def enumerate_graphs(n, m, epsilon=0):
    """All labeled admissible graphs with the given vertex counts.

    Deterministic lexicographic order on the sorted edge tuples.
    """
    e_total = 2 * n + m - 2 - epsilon
    if e_total < 0:
        return []
    if n == 0:
        return [AdmissibleGraph(0, m, (), epsilon)] if e_total == 0 else []
    targets = {}
    for v in range(1, n + 1):
        targets[v] = [u for u in range(1, n + m + 1) if u != v]
    out = []

    def rec(v, remaining, acc):
        if v > n:
            if remaining == 0:
                out.append(AdmissibleGraph(n, m, tuple(acc), epsilon))
            return
        pool = targets[v]
        slots_left = sum(len(targets[u]) for u in range(v + 1, n + 1))
        for k in range(min(len(pool), remaining) + 1):
            if remaining - k > slots_left:
                continue
            for combo in combinations(pool, k):
                rec(v + 1, remaining - k,
                    acc + [(v, t) for t in combo])

    rec(1, e_total, [])
    return out


# ---------------------------------------------------------------------
# weight-vanishing patterns
# ---------------------------------------------------------------------

def vanishing_tag(graph):
    """Detect local patterns that force the weight integral to vanish.

    Returns None, or one of:
      "isolated": an aerial vertex touching no edge at all (the angle
          form cannot saturate its two moduli, so the top form is
          degenerate),
      "pendant": an aerial vertex touching exactly one edge,
      "transit": an aerial vertex with exactly one incoming and one
          outgoing edge and nothing else (the integral over that vertex
          of the two angle forms cancels by the reflection argument).

    The patterns only apply when the two moduli of the vertex survive
    gauge fixing, i.e. when 2(n-1) + m >= 2; with fewer moduli the
    group absorbs the vertex and no conclusion is drawn.
    """
    if 2 * (graph.n - 1) + graph.m < 2:
        return None
    for v in range(1, graph.n + 1):
        din = graph.in_degree(v)
        dout = graph.out_degree(v)
        if din + dout == 0:
            return "isolated"
        if din + dout == 1:
            return "pendant"
        if din == 1 and dout == 1:
            return "transit"
    return None


# ---------------------------------------------------------------------
# wheel families
# ---------------------------------------------------------------------

@dataclass(frozen=True)
class WheelFamily:
    """Cycle-type class of surviving graphs for j cycle vertices.

    partition: multiset of cycle lengths (each >= 2) summing to j;
    multiplicity: number of labeled graphs with this cycle type.
    """
    partition: tuple
    multiplicity: int
    j: int
    center_degree: int
    m: int


def _partitions_min2(j):
    """Partitions of j into parts >= 2, weakly decreasing tuples."""
    if j == 0:
        return [()]
    out = []

    def rec(rest, maxpart, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        for part in range(min(rest, maxpart), 1, -1):
            if rest - part == 1:
                continue  # a leftover 1 can never be completed
            rec(rest - part, part, acc + [part])

    rec(j, j, [])
    return out


def cycle_type_multiplicity(partition):
    """Number of permutations of j letters with the given cycle type."""
    j = sum(partition)
    counts = {}
    for part in partition:
        counts[part] = counts.get(part, 0) + 1
    mult = Fraction(_fact(j))
    for size, cnt in counts.items():
        mult /= _fact(cnt) * size ** cnt
    assert mult.denominator == 1
    return int(mult)


def _fact(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def classify_wheels(j, center_degree):
    """Wheel families for j cycle vertices around a center of degree p.

    Requires m = p - j + 1 >= 0 ground vertices.  Parts of size one are
    excluded (they would need a loop).  j = 0 gives the trivial family.
    """
    m = center_degree - j + 1
    if m < 0:
        raise ValueError("no ground vertices left: j > p + 1")
    fams = []
    for part in sorted(_partitions_min2(j)):
        fams.append(WheelFamily(part, cycle_type_multiplicity(part),
                                j, center_degree, m))
    return fams


def wheel_graph(partition, center_degree, reverse_cycles=False):
    """A labeled representative graph for a wheel family.

    Cycle vertices are 1..j in consecutive blocks per part, the center
    is j+1 and points at every cycle vertex and every ground vertex.
    Forward orientation sends each block vertex to its successor.
    """
    j = sum(partition)
    m = center_degree - j + 1
    if m < 0:
        raise ValueError("j > p + 1")
    edges = []
    start = 1
    for part in partition:
        block = list(range(start, start + part))
        ring = block[::-1] if reverse_cycles else block
        for a, b in zip(ring, ring[1:] + ring[:1]):
            edges.append((a, b))
        start += part
    center = j + 1
    for v in range(1, j + 1):
        edges.append((center, v))
    for g in range(j + 2, j + 2 + m):
        edges.append((center, g))
    return AdmissibleGraph(j + 1, m, tuple(edges))


def gamma0(m):
    """The one-aerial-vertex graph pointing at all m ground vertices."""
    edges = tuple((1, 1 + k) for k in range(1, m + 1))
    return AdmissibleGraph(1, m, edges)


def opposite_wheel(k, reverse_cycle=False):
    """The k-wheel: a k-cycle of rim vertices, each fed by the center.

    No ground vertices: the center's k spokes all point at the rim, so
    the graph has k+1 aerial vertices and 2k edges.
    """
    return wheel_graph((k,), k - 1, reverse_cycles=reverse_cycle)


def graphs_with_profile(n, m, out_degrees, epsilon=0):
    """Enumerate and filter by exact out-degree per aerial vertex."""
    out = []
    for g in enumerate_graphs(n, m, epsilon):
        if all(g.out_degree(v) == out_degrees[v - 1] for v in range(1, n + 1)):
            out.append(g)
    return out


def cycle_type_of_wheelish(graph, j):
    """Cycle type of the permutation formed by the out-edges of 1..j.

    Returns None unless every one of the first j vertices has a single
    outgoing edge landing in 1..j and these edges form a fixed-point
    free permutation of 1..j.
    """
    succ = {}
    for v in range(1, j + 1):
        out = graph.out_edges(v)
        if len(out) != 1:
            return None
        t = out[0][1]
        if not 1 <= t <= j or t == v:
            return None
        succ[v] = t
    if sorted(succ.values()) != list(range(1, j + 1)):
        return None
    seen = set()
    parts = []
    for v in range(1, j + 1):
        if v in seen:
            continue
        length = 0
        u = v
        while u not in seen:
            seen.add(u)
            u = succ[u]
            length += 1
        parts.append(length)
    return tuple(sorted(parts, reverse=True))
