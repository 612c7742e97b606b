"""Immutable loopless multigraphs with stable positional edge identities.

An edge's identity is its position in the edge sequence, so parallel edges
are distinct objects and derived graphs can record exactly where each of
their edges came from.  Loops are rejected at construction; contraction
drops them silently.  All surgeries are pure functions returning new graphs,
and each surgery has a record builder so a trace can be replayed bit for bit
(edge order included) from the source graph.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from .errors import (
    DegreeMismatch,
    DisconnectedPart,
    LoopRejected,
    NeighborClash,
    NotAPath,
    RecipeTooLarge,
    VertexIdOutOfRange,
)


@dataclass(frozen=True)
class Multigraph:
    """A labeled multigraph on vertices 0..vertex_count-1.

    Invariants: no loops, dense vertex ids, edge ids equal to positions in
    ``edges``.  Endpoint pairs are canonicalized to (min, max) but the
    sequence order, and hence edge identity, is preserved.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    labels: Mapping[int, str] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        n = self.vertex_count
        canon = []
        for u, v in self.edges:
            if u == v:
                raise LoopRejected(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise VertexIdOutOfRange(f"edge ({u},{v}) outside 0..{n - 1}")
            canon.append((u, v) if u <= v else (v, u))
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def _incidence(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for eid, (u, v) in enumerate(self.edges):
            inc[u].append(eid)
            inc[v].append(eid)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self._incidence)

    @cached_property
    def is_cubic(self) -> bool:
        return all(d == 3 for d in self.degrees)

    def incident(self, v: int) -> tuple[int, ...]:
        """Edge ids at v, in increasing id order."""
        return self._incidence[v]

    def degree(self, v: int) -> int:
        return len(self._incidence[v])

    def endpoints(self, eid: int) -> tuple[int, int]:
        return self.edges[eid]

    def other_end(self, eid: int, v: int) -> int:
        u, w = self.edges[eid]
        if v == u:
            return w
        if v == w:
            return u
        raise ValueError(f"vertex {v} is not an endpoint of edge {eid}")

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted({self.other_end(e, v) for e in self._incidence[v]}))

    def multiplicity(self, u: int, v: int) -> int:
        pair = (u, v) if u <= v else (v, u)
        return sum(1 for e in self.edges if e == pair)

    def simple_pairs(self) -> tuple[tuple[int, int], ...]:
        """Distinct endpoint pairs, sorted (the underlying simple graph)."""
        return tuple(sorted(set(self.edges)))

    def is_connected(self) -> bool:
        if self.vertex_count <= 1:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for e in self._incidence[v]:
                w = self.other_end(e, v)
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertex_count

    def relabel(self, perm: Sequence[int]) -> "Multigraph":
        """Apply a vertex permutation (perm[old] = new), preserving edge order."""
        if sorted(perm) != list(range(self.vertex_count)):
            raise VertexIdOutOfRange("perm is not a permutation of the vertex ids")
        edges = tuple((perm[u], perm[v]) for u, v in self.edges)
        labels = None
        if self.labels is not None:
            labels = {perm[v]: s for v, s in self.labels.items()}
        return Multigraph(self.vertex_count, edges, labels)

    def __repr__(self):  # keep failure dumps readable
        return f"Multigraph(n={self.vertex_count}, m={self.edge_count}, edges={list(self.edges)})"


def from_edge_list(vertex_count: int, pairs: Sequence[tuple[int, int]]) -> Multigraph:
    """Build a multigraph from endpoint pairs; edge ids follow input order."""
    return Multigraph(vertex_count, tuple(tuple(p) for p in pairs))


def handshake_ok(g: Multigraph) -> bool:
    return sum(g.degrees) == 2 * g.edge_count


def connected_subset(g: Multigraph, part: frozenset[int] | set[int]) -> bool:
    """Does ``part`` induce a connected subgraph (singletons count)?"""
    part = set(part)
    if not part:
        return False
    start = min(part)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for e in g.incident(v):
            w = g.other_end(e, v)
            if w in part and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == part


def induced_subgraph(
    g: Multigraph, vertices: Sequence[int] | frozenset[int]
) -> tuple[Multigraph, dict[int, int], tuple[int, ...]]:
    """Induced subgraph with dense relabeling.

    Returns (subgraph, old->new vertex map, kept edge ids in original order).
    """
    keep = sorted(set(vertices))
    vmap = {v: i for i, v in enumerate(keep)}
    edges = []
    eids = []
    for eid, (u, v) in enumerate(g.edges):
        if u in vmap and v in vmap:
            edges.append((vmap[u], vmap[v]))
            eids.append(eid)
    return Multigraph(len(keep), tuple(edges)), vmap, tuple(eids)


# ---------------------------------------------------------------------------
# degree excess


@dataclass(frozen=True)
class DegreeExcess:
    """Multiset of vertex degrees different from three."""

    counts: tuple[tuple[int, int], ...]  # (degree, multiplicity), sorted

    @property
    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    def __bool__(self):
        return bool(self.counts)


def degree_excess(g: Multigraph) -> DegreeExcess:
    c = Counter(d for d in g.degrees if d != 3)
    return DegreeExcess(tuple(sorted(c.items())))


# ---------------------------------------------------------------------------
# isomorphism (brute force with pruning; desk scale only)


def _invariants(g: Multigraph):
    mult = Counter(g.edges)
    sig = []
    for v in range(g.vertex_count):
        nbr = sorted(
            (g.degree(g.other_end(e, v)), mult[g.edges[e]]) for e in g.incident(v)
        )
        sig.append((g.degree(v), tuple(nbr)))
    return tuple(sig)


def find_isomorphism(g: Multigraph, h: Multigraph) -> list[int] | None:
    """A vertex bijection g->h preserving edge multiplicities, or None.

    Exhaustive backtracking with degree/neighborhood pruning; intended for
    small graphs (the recognizers cap their inputs well below n=20).
    """
    n = g.vertex_count
    if n != h.vertex_count or g.edge_count != h.edge_count:
        return None
    gsig, hsig = _invariants(g), _invariants(h)
    if sorted(gsig) != sorted(hsig):
        return None
    cand = [[w for w in range(n) if hsig[w] == gsig[v]] for v in range(n)]
    # most-constrained-first, then favor vertices adjacent to placed ones
    order = sorted(range(n), key=lambda v: (len(cand[v]), v))
    placed: list[int] = []
    gmult = Counter(g.edges)
    hmult = Counter(h.edges)
    mapping: dict[int, int] = {}
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for w in cand[v]:
            if used[w]:
                continue
            ok = True
            for u in placed:
                a, b = (u, v) if u <= v else (v, u)
                c, d = sorted((mapping[u], w))
                if gmult.get((a, b), 0) != hmult.get((c, d), 0):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used[w] = True
                placed.append(v)
                if extend(i + 1):
                    return True
                placed.pop()
                used[w] = False
                del mapping[v]
        return False

    if extend(0):
        return [mapping[v] for v in range(n)]
    return None


def is_isomorphic(g: Multigraph, h: Multigraph, exact_limit: int = 14) -> bool:
    """Isomorphism by permutation search up to ``exact_limit`` vertices.

    Larger graphs fall back to labeled equality (same vertex count and the
    same sorted edge multiset), which is all the desk-scale checks need.
    """
    if g.vertex_count != h.vertex_count or g.edge_count != h.edge_count:
        return False
    if sorted(g.edges) == sorted(h.edges):
        return True
    if g.vertex_count > exact_limit:
        return False
    return find_isomorphism(g, h) is not None


# ---------------------------------------------------------------------------
# surgeries and traces


@dataclass(frozen=True)
class SurgeryRecord:
    """One replayable operation.

    vertex_map maps input vertex -> output vertex (None if removed);
    edge_map maps output edge -> input edge (None for newly created edges).
    """

    op: str  # contract | glue | triangle | split_off
    args: tuple
    vertex_map: tuple
    edge_map: tuple


@dataclass(frozen=True)
class SurgeryTrace:
    """A sequence of surgery records, optionally with expansion clusters.

    ``clusters`` names, for each expanded source vertex, the vertex set of
    the final graph that replaced it (used by expansion round trips).
    """

    records: tuple[SurgeryRecord, ...]
    clusters: tuple[tuple[int, tuple[int, ...]], ...] = ()

    def replay(self, source: Multigraph) -> Multigraph:
        g = source
        for rec in self.records:
            g = _apply_record(g, rec)
        return g

    def edge_source(self, eid: int) -> int | None:
        """Map an edge of the derived graph back to the source, if it survives."""
        cur: int | None = eid
        for rec in reversed(self.records):
            if cur is None:
                return None
            cur = rec.edge_map[cur]
        return cur


def _apply_record(g: Multigraph, rec: SurgeryRecord) -> Multigraph:
    if rec.op == "contract":
        return contract_record(g, frozenset(rec.args[0]))[0]
    if rec.op == "glue":
        u, h, v, pairing = rec.args
        return glue_record(g, u, h, v, pairing)[0]
    if rec.op == "triangle":
        return triangle_record(g, rec.args[0])[0]
    if rec.op == "split_off":
        return split_off_record(g, rec.args)[0]
    raise ValueError(f"unknown surgery record op {rec.op!r}")


def contract_record(g: Multigraph, part) -> tuple[Multigraph, SurgeryRecord]:
    part = frozenset(part)
    if not part or not part <= set(range(g.vertex_count)):
        raise VertexIdOutOfRange("part must be a nonempty set of vertex ids")
    if not connected_subset(g, part):
        raise DisconnectedPart(f"part {sorted(part)} does not induce a connected subgraph")
    merged_slot = min(part)
    survivors = sorted(set(range(g.vertex_count)) - part | {merged_slot})
    new_id = {v: i for i, v in enumerate(survivors)}
    vmap = tuple(
        new_id[merged_slot] if v in part else new_id[v] for v in range(g.vertex_count)
    )
    edges = []
    emap = []
    for eid, (u, v) in enumerate(g.edges):
        mu, mv = vmap[u], vmap[v]
        if mu == mv:
            continue  # arising loop: dropped
        edges.append((mu, mv))
        emap.append(eid)
    out = Multigraph(len(survivors), tuple(edges))
    rec = SurgeryRecord("contract", (tuple(sorted(part)),), vmap, tuple(emap))
    return out, rec


def contract(g: Multigraph, part) -> tuple[Multigraph, SurgeryTrace]:
    """Contract a connected vertex set to one vertex, dropping arising loops.

    Parallel edges to the outside survive with traceable ids; the merged
    vertex takes the slot of the smallest id in ``part``.
    """
    out, rec = contract_record(g, part)
    return out, SurgeryTrace((rec,))


def glue_record(
    g: Multigraph,
    u: int,
    h: Multigraph,
    v: int,
    pairing: Sequence[tuple[int, int]],
) -> tuple[Multigraph, SurgeryRecord]:
    if not (g.is_cubic and h.is_cubic):
        raise DegreeMismatch("gluing requires two cubic graphs")
    pairing = tuple((int(a), int(b)) for a, b in pairing)
    if sorted(a for a, _ in pairing) != sorted(g.incident(u)):
        raise DegreeMismatch("pairing does not cover the edges at u exactly once")
    if sorted(b for _, b in pairing) != sorted(h.incident(v)):
        raise DegreeMismatch("pairing does not cover the edges at v exactly once")

    def g_new(x):
        return x - (1 if x > u else 0)

    off = g.vertex_count - 1

    def h_new(x):
        return off + x - (1 if x > v else 0)

    edges = []
    emap: list[int | None] = []
    for eid, (a, b) in enumerate(g.edges):
        if u in (a, b):
            continue
        edges.append((g_new(a), g_new(b)))
        emap.append(eid)
    for eid, (a, b) in enumerate(h.edges):
        if v in (a, b):
            continue
        edges.append((h_new(a), h_new(b)))
        emap.append(None)
    # fused edges, ordered by the g-side edge id; each inherits its g-side id
    for eg, eh in sorted(pairing):
        a = g.other_end(eg, u)
        b = h.other_end(eh, v)
        edges.append((g_new(a), h_new(b)))
        emap.append(eg)
    vmap = tuple(
        None if x == u else g_new(x) for x in range(g.vertex_count)
    )
    out = Multigraph(g.vertex_count + h.vertex_count - 2, tuple(edges))
    rec = SurgeryRecord("glue", (u, h, v, pairing), vmap, tuple(emap))
    return out, rec


def glue(
    g: Multigraph, u: int, h: Multigraph, v: int, pairing: Sequence[tuple[int, int]]
) -> Multigraph:
    """Fuse two cubic graphs through u and v along a pairing of their edges.

    Each pair (e, f) becomes one edge joining the far endpoints of e and f.
    ``h`` is always treated as a disjoint copy, so no loops can arise even
    when the same graph object is passed twice.
    """
    return glue_record(g, u, h, v, pairing)[0]


def triangle_record(g: Multigraph, v: int) -> tuple[Multigraph, SurgeryRecord]:
    if g.degree(v) != 3:
        raise DegreeMismatch(f"vertex {v} has degree {g.degree(v)}, need 3")
    n = g.vertex_count
    slots = (v, n, n + 1)  # v keeps its slot; two triangle vertices appended
    attach = {eid: slots[i] for i, eid in enumerate(g.incident(v))}
    edges = []
    emap: list[int | None] = []
    for eid, (a, b) in enumerate(g.edges):
        if eid in attach:
            t = attach[eid]
            w = g.other_end(eid, v)
            edges.append((t, w))
        else:
            edges.append((a, b))
        emap.append(eid)
    for pair in ((slots[0], slots[1]), (slots[1], slots[2]), (slots[0], slots[2])):
        edges.append(pair)
        emap.append(None)
    out = Multigraph(n + 2, tuple(edges), g.labels)
    rec = SurgeryRecord("triangle", (v,), tuple(range(n)), tuple(emap))
    return out, rec


def replace_vertex_with_triangle(g: Multigraph, v: int) -> Multigraph:
    """Replace a degree-3 vertex by a triangle, one former edge per corner."""
    return triangle_record(g, v)[0]


def split_off_record(g: Multigraph, path) -> tuple[Multigraph, SurgeryRecord]:
    v1, v2, v3, v4 = path
    if len({v1, v2, v3, v4}) != 4:
        raise NotAPath(f"path vertices must be distinct, got {path}")
    if not g.is_cubic:
        raise DegreeMismatch("splitting off is defined on cubic graphs")

    def edge_between(a, b):
        for e in g.incident(a):
            if g.other_end(e, a) == b:
                return e
        raise NotAPath(f"no edge between {a} and {b}")

    e12 = edge_between(v1, v2)
    e23 = edge_between(v2, v3)
    e34 = edge_between(v3, v4)
    (third2,) = set(g.incident(v2)) - {e12, e23}
    (third3,) = set(g.incident(v3)) - {e23, e34}
    w1 = g.other_end(third2, v2)
    w4 = g.other_end(third3, v3)
    if w1 in (v1, v2, v3, v4) or w4 in (v1, v2, v3, v4):
        raise NeighborClash(
            f"third neighbors {w1},{w4} collide with the path {path}"
        )
    if w1 == w4:
        raise NeighborClash(f"third neighbors coincide at {w1}; new edge would be a loop")

    removed = {v2, v3}
    survivors = [x for x in range(g.vertex_count) if x not in removed]
    new_id = {x: i for i, x in enumerate(survivors)}
    edges = []
    emap: list[int | None] = []
    for eid, (a, b) in enumerate(g.edges):
        if a in removed or b in removed:
            continue
        edges.append((new_id[a], new_id[b]))
        emap.append(eid)
    edges.append((new_id[v1], new_id[v4]))
    emap.append(None)
    edges.append((new_id[w1], new_id[w4]))
    emap.append(None)
    vmap = tuple(None if x in removed else new_id[x] for x in range(g.vertex_count))
    out = Multigraph(g.vertex_count - 2, tuple(edges))
    rec = SurgeryRecord("split_off", (v1, v2, v3, v4), vmap, tuple(emap))
    return out, rec


def split_off(g: Multigraph, path) -> Multigraph:
    """Split off a 3-edge path: drop its interior, rejoin the loose ends.

    The last two edges of the result are the new edges v1v4 and v1'v4'.
    """
    return split_off_record(g, tuple(path))[0]


def b_expand(
    g: Multigraph,
    assignment: Mapping[int, Multigraph],
    b: int | None = None,
) -> tuple[Multigraph, SurgeryTrace]:
    """Glue a cubic attachment graph into each assigned vertex of g.

    ``assignment`` maps vertex ids of g to the cubic graphs to glue in
    (gluing happens through vertex 0 of each attachment, edges paired in id
    order).  With attachments of at most b+1 vertices the result has at most
    b times as many vertices as g.  The trace's clusters name the vertex
    sets of the result that contract back onto the expanded vertices.
    """
    if not g.is_cubic:
        raise DegreeMismatch("expansion is defined on cubic graphs")
    if b is not None:
        for v, k in assignment.items():
            if k.vertex_count > b + 1:
                raise RecipeTooLarge(
                    f"attachment at {v} has {k.vertex_count} vertices, cap is {b + 1}"
                )
    records: list[SurgeryRecord] = []
    cur = g
    # positions of the original vertices and of earlier clusters, updated
    # through each glue's vertex map
    pos: dict[int, int | None] = {v: v for v in range(g.vertex_count)}
    clusters: dict[int, list[int]] = {}
    for v in sorted(assignment):
        k = assignment[v]
        at = pos[v]
        assert at is not None
        pairing = tuple(zip(cur.incident(at), k.incident(0)))
        cur2, rec = glue_record(cur, at, k, 0, pairing)
        # remap everything we are tracking, then record the new cluster
        for src, p in pos.items():
            pos[src] = None if p is None else rec.vertex_map[p]
        for src, ids in clusters.items():
            clusters[src] = [rec.vertex_map[p] for p in ids]
        first_new = cur.vertex_count - 1
        clusters[v] = list(range(first_new, first_new + k.vertex_count - 1))
        records.append(rec)
        cur = cur2
    trace = SurgeryTrace(
        tuple(records),
        tuple((v, tuple(ids)) for v, ids in sorted(clusters.items())),
    )
    return cur, trace
