"""Edge cuts, cyclic edge-connectivity, and the 4-cut surgeries.

Cut enumeration is deliberate brute force over the 2^(n-1) bipartitions
that keep vertex 0 on side A, vectorized with numpy so the n=20..24 range
stays at desk scale.  Correctness beats asymptotics here: these sweeps are
the oracles everything else is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    ChainViolation,
    DegreeMismatch,
    MinDegreeViolated,
    NotCyclically4EC,
    SharedEndpoint,
    TooLarge,
)
from .multigraph import Multigraph, connected_subset, contract, induced_subgraph

CUT_CAP = 24
ALMOST_CAP = 20


@dataclass(frozen=True)
class EdgeCut:
    """One side of a vertex bipartition plus its crossing edges."""

    side_a: frozenset[int]
    crossing_edges: frozenset[int]
    size: int
    cyclic: bool

    def flipped(self, g: Multigraph) -> "EdgeCut":
        other = frozenset(range(g.vertex_count)) - self.side_a
        return EdgeCut(other, self.crossing_edges, self.size, self.cyclic)


@dataclass(frozen=True)
class CyclicConnectivity:
    """Minimum cyclic edge-cut size; value None means no cyclic cut exists."""

    value: int | None

    @property
    def is_unbounded(self) -> bool:
        return self.value is None

    def at_least(self, k: int) -> bool:
        return self.value is None or self.value >= k

    def __repr__(self):
        return "CyclicConnectivity(Unbounded)" if self.value is None else (
            f"CyclicConnectivity({self.value})"
        )


def bridges(g: Multigraph) -> frozenset[int]:
    """Edge ids whose removal disconnects the graph (parallel pairs never qualify)."""
    n = g.vertex_count
    disc = [-1] * n
    low = [0] * n
    out: set[int] = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        stack: list[tuple[int, int, int]] = [(root, -1, 0)]  # vertex, entry edge, ptr
        while stack:
            v, pe, i = stack.pop()
            if i == 0:
                disc[v] = low[v] = timer
                timer += 1
            inc = g.incident(v)
            advanced = False
            while i < len(inc):
                e = inc[i]
                i += 1
                if e == pe:
                    continue
                w = g.other_end(e, v)
                if disc[w] == -1:
                    stack.append((v, pe, i))
                    stack.append((w, e, 0))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if advanced:
                continue
            if pe != -1:
                u = g.other_end(pe, v)
                low[u] = min(low[u], low[v])
                if low[v] > disc[u]:
                    out.add(pe)
    return frozenset(out)


def side_has_cycle(g: Multigraph, side) -> bool:
    """Does the subgraph induced by ``side`` contain a cycle?

    A pair of parallel edges is a 2-cycle, so union-find does it exactly.
    """
    side = set(side)
    parent = {v: v for v in side}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        if u in side and v in side:
            ru, rv = find(u), find(v)
            if ru == rv:
                return True
            parent[ru] = rv
    return False


@lru_cache(maxsize=16)
def _crossing_counts(g: Multigraph) -> np.ndarray:
    """Crossing sizes for every bipartition with vertex 0 on side A.

    Index = bitmask over vertices 1..n-1 naming the rest of side A.
    """
    n = g.vertex_count
    masks = np.arange(1 << (n - 1), dtype=np.uint32 if n - 1 <= 32 else np.uint64)
    counts = np.zeros(len(masks), dtype=np.uint8)

    def bit(x):
        if x == 0:
            return np.ones(len(masks), dtype=np.uint8)  # vertex 0 is always on side A
        return ((masks >> np.uint32(x - 1)) & 1).astype(np.uint8)

    for u, v in g.edges:
        counts += bit(u) ^ bit(v)
    return counts


def _mask_to_side(mask: int, n: int) -> frozenset[int]:
    side = {0}
    for i in range(n - 1):
        if (mask >> i) & 1:
            side.add(i + 1)
    return frozenset(side)


def build_cut(g: Multigraph, side) -> EdgeCut:
    """The cut determined by one side of a bipartition, cyclicity included."""
    side = frozenset(side)
    crossing = frozenset(
        e for e, (u, v) in enumerate(g.edges) if (u in side) != (v in side)
    )
    other = frozenset(range(g.vertex_count)) - side
    cyclic = side_has_cycle(g, side) and side_has_cycle(g, other)
    return EdgeCut(side, crossing, len(crossing), cyclic)


def enumerate_cuts(g: Multigraph, max_size: int, cyclic_only: bool) -> list[EdgeCut]:
    """All bipartitions with crossing size <= max_size, side A holding vertex 0.

    Ordered by ascending side-A bitmask (deterministic); flagged cyclic when
    both sides contain a cycle, and filtered to those when requested.
    """
    n = g.vertex_count
    if n > CUT_CAP:
        raise TooLarge(f"cut enumeration capped at {CUT_CAP} vertices")
    if n < 2:
        return []
    counts = _crossing_counts(g)
    full = (1 << (n - 1)) - 1
    out = []
    for mask in np.nonzero(counts <= max_size)[0]:
        mask = int(mask)
        if mask == full:
            continue  # empty side B
        cut = build_cut(g, _mask_to_side(mask, n))
        if cyclic_only and not cut.cyclic:
            continue
        out.append(cut)
    return out


@lru_cache(maxsize=256)
def cyclic_edge_connectivity(g: Multigraph) -> CyclicConnectivity:
    """Minimum size of a cyclic edge-cut, found by exhaustive sweep."""
    n = g.vertex_count
    if n > CUT_CAP:
        raise TooLarge(f"cut enumeration capped at {CUT_CAP} vertices")
    if n < 2:
        return CyclicConnectivity(None)
    counts = _crossing_counts(g)
    full = (1 << (n - 1)) - 1
    for c in range(int(counts.max()) + 1):
        for mask in np.nonzero(counts == c)[0]:
            mask = int(mask)
            if mask == full:
                continue
            side = _mask_to_side(mask, n)
            other = frozenset(range(n)) - side
            if side_has_cycle(g, side) and side_has_cycle(g, other):
                return CyclicConnectivity(c)
    return CyclicConnectivity(None)


@lru_cache(maxsize=128)
def cyclic_cuts_up_to(g: Multigraph, max_size: int) -> tuple[EdgeCut, ...]:
    """Cached cyclic cuts of size <= max_size (deterministic order)."""
    return tuple(enumerate_cuts(g, max_size, cyclic_only=True))


def is_cyclically_k_edge_connected(g: Multigraph, k: int) -> bool:
    return cyclic_edge_connectivity(g).at_least(k)


def observation_cyc_check(g: Multigraph, cut: EdgeCut) -> bool:
    """Hypothesis test for the size-(k-1) observation on min-degree-3 graphs.

    Returns True iff both sides have at least size-1 vertices; in that case
    the cut must be cyclic, which is asserted against an independent cycle
    check on both sides.
    """
    if any(d < 3 for d in g.degrees):
        raise MinDegreeViolated("observation needs minimum degree 3")
    k = cut.size
    other = frozenset(range(g.vertex_count)) - cut.side_a
    hyp = len(cut.side_a) >= k - 1 and len(other) >= k - 1
    if hyp:
        if not (side_has_cycle(g, cut.side_a) and side_has_cycle(g, other)):
            raise AssertionError(f"cut {sorted(cut.side_a)} should be cyclic but is not")
    return hyp


def ordered_4cut_chain(g: Multigraph, e: int) -> list[EdgeCut]:
    """The cyclic 4-cuts through e, sides (holding e's first endpoint) nested.

    On a cyclically 4-edge-connected graph those sides form a chain under
    inclusion; a ChainViolation indicates a precondition violation or a bug.
    """
    if not cyclic_edge_connectivity(g).at_least(4):
        raise NotCyclically4EC("chain ordering needs cyclic 4-edge-connectivity")
    anchor = g.endpoints(e)[0]
    cuts = []
    for cut in cyclic_cuts_up_to(g, 4):
        if cut.size != 4 or e not in cut.crossing_edges:
            continue
        if anchor not in cut.side_a:
            cut = cut.flipped(g)
        cuts.append(cut)
    cuts.sort(key=lambda c: (len(c.side_a), tuple(sorted(c.side_a))))
    for a, b in zip(cuts, cuts[1:]):
        if not a.side_a <= b.side_a:
            raise ChainViolation(
                f"sides {sorted(a.side_a)} and {sorted(b.side_a)} are incomparable"
            )
    return cuts


def cut_surgery_pair(
    g: Multigraph,
    cut: EdgeCut,
    pairing: tuple[tuple[int, int], tuple[int, int]],
    side: str = "A",
) -> tuple[Multigraph, Multigraph]:
    """The two 4-cut closures of one side: add two edges, or a subdivided link.

    ``pairing`` partitions the four cut edges into two pairs (by edge id).
    With m' edges induced on the chosen side, the paired graph appends its
    two new edges at positions m' and m'+1 (pair order as given); the
    subdivided graph appends, in order, the four attachment edges for
    pairing[0][0], pairing[0][1], pairing[1][0], pairing[1][1] and then the
    middle edge joining the two new vertices (ids s = side size and s+1).
    """
    if cut.size != 4:
        raise SharedEndpoint("surgery needs a cut with exactly 4 crossing edges")
    chosen = cut.side_a if side == "A" else frozenset(range(g.vertex_count)) - cut.side_a
    flat = [e for pair in pairing for e in pair]
    if sorted(flat) != sorted(cut.crossing_edges):
        raise SharedEndpoint("pairing must partition the four cut edges")
    anchors = {}
    for e in flat:
        u, v = g.endpoints(e)
        anchors[e] = u if u in chosen else v
    if len(set(anchors.values())) != 4:
        raise SharedEndpoint("two cut edges meet the chosen side at one vertex")
    sub, vmap, _ = induced_subgraph(g, chosen)
    (a, b), (c, d) = pairing
    paired = Multigraph(
        sub.vertex_count,
        sub.edges
        + ((vmap[anchors[a]], vmap[anchors[b]]), (vmap[anchors[c]], vmap[anchors[d]])),
    )
    s = sub.vertex_count
    subdivided = Multigraph(
        s + 2,
        sub.edges
        + (
            (vmap[anchors[a]], s),
            (vmap[anchors[b]], s),
            (vmap[anchors[c]], s + 1),
            (vmap[anchors[d]], s + 1),
            (s, s + 1),
        ),
    )
    return paired, subdivided


def minimal_cyclic3_sides(g: Multigraph) -> list[frozenset[int]]:
    """Inclusion-minimal sides over all cyclic 3-edge-cuts, deterministic order."""
    sides: set[frozenset[int]] = set()
    allv = frozenset(range(g.vertex_count))
    for cut in cyclic_cuts_up_to(g, 3):
        if cut.size != 3:
            continue
        sides.add(cut.side_a)
        sides.add(allv - cut.side_a)
    minimal = [s for s in sides if not any(t < s for t in sides)]
    return sorted(minimal, key=lambda s: (len(s), tuple(sorted(s))))


def is_k_almost_cyclically_4ec(
    g: Multigraph, k: int
) -> tuple[bool, tuple[tuple[int, ...], ...]]:
    """Can contracting cyclic-3-cut sides lose <= k vertices and reach c4ec?

    The search backtracks over inclusion-minimal cyclic-3-cut sides of the
    current graph; each witness entry is a side in the coordinates of the
    graph it was contracted in (the first entry uses g's own vertex ids).
    """
    if g.vertex_count > ALMOST_CAP:
        raise TooLarge(f"search capped at {ALMOST_CAP} vertices")
    if not g.is_cubic:
        raise DegreeMismatch("the reduction is defined on cubic graphs")

    def search(h: Multigraph, budget: int, acc):
        if cyclic_edge_connectivity(h).at_least(4):
            return acc
        if budget < 2:
            return None
        for s in minimal_cyclic3_sides(h):
            loss = len(s) - 1
            if loss > budget or not connected_subset(h, s):
                continue
            h2, _ = contract(h, s)
            res = search(h2, budget - loss, acc + (tuple(sorted(s)),))
            if res is not None:
                return res
        return None

    witness = search(g, k, ())
    return (witness is not None), (witness if witness is not None else ())
