"""The lemma catalog: each claim becomes a named check producing reports.

Every quantitative bound is compared exactly.  Rational bounds use
Fractions; bounds of the form 2^(p/q) are decided by integer
cross-powering (is measured^q >= 2^p), never by floating point.  A check
whose hypothesis an instance fails is Skipped with a reason, so sweeps can
never pass silently by checking nothing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable

from . import decomposition as dc
from . import families as fam
from .connectivity import (
    EdgeCut,
    bridges,
    build_cut,
    cut_surgery_pair,
    cyclic_cuts_up_to,
    cyclic_edge_connectivity,
    enumerate_cuts,
    is_k_almost_cyclically_4ec,
    ordered_4cut_chain,
)
from .errors import ChainViolation, CubicpmError, TooLarge
from .formats import write_edge_list
from .matchings import (
    CountQuery,
    containment_counts,
    count_matchings,
    is_bipartite,
    kotzig_bridge,
    special_pair,
)
from .multigraph import (
    Multigraph,
    find_isomorphism,
    induced_subgraph,
    split_off,
)


class LemmaId(Enum):
    TH_HALF = "TH_HALF"
    THM_BIP = "THM_BIP"
    THM_KLEE = "THM_KLEE"
    THM_EF = "THM_EF"
    LM_DOUBLE = "LM_DOUBLE"
    LM_TRIPLE = "LM_TRIPLE"
    LM_SPECIAL = "LM_SPECIAL"
    LM_BRIDGE = "LM_BRIDGE"
    LM_3CONN = "LM_3CONN"
    LM_SEMIBLOCK = "LM_SEMIBLOCK"
    THM_BB = "THM_BB"
    LM_BB_CUBIC = "LM_BB_CUBIC"
    LM_BB_BIP = "LM_BB_BIP"
    LM_BB_3E = "LM_BB_3E"
    LM_BB_3EF = "LM_BB_3EF"
    LM_SPLITOFF = "LM_SPLITOFF"
    LM_SPLIT5_SAME = "LM_SPLIT5_SAME"
    LM_SPLIT5_DIFF = "LM_SPLIT5_DIFF"
    LM_SPLIT4A = "LM_SPLIT4A"
    LM_SPLIT4B = "LM_SPLIT4B"
    LM_ORDERED = "LM_ORDERED"
    LM_LADDER = "LM_LADDER"
    LM_TWISTED_NUM = "LM_TWISTED_NUM"
    LM_TWISTED_BIP = "LM_TWISTED_BIP"
    LM_TWISTED_NONBIP = "LM_TWISTED_NONBIP"
    LM_TWISTED_BIS = "LM_TWISTED_BIS"
    LM_TWISTED_STRUC = "LM_TWISTED_STRUC"


KLEE_DENOMINATOR = 655978752  # exponent denominator from the planar cubic bound


@dataclass(frozen=True)
class Bound:
    """A rational value p/q, or the power 2^(p/q)."""

    kind: str  # "rational" | "pow2"
    num: int
    den: int

    @staticmethod
    def rational(x) -> "Bound":
        f = Fraction(x)
        return Bound("rational", f.numerator, f.denominator)

    @staticmethod
    def pow2(exponent) -> "Bound":
        f = Fraction(exponent)
        return Bound("pow2", f.numerator, f.denominator)

    def holds_lower(self, measured) -> bool:
        """measured >= bound, decided exactly."""
        if self.kind == "rational":
            return Fraction(measured) >= Fraction(self.num, self.den)
        p, q = self.num, self.den
        m = int(measured)
        if m <= 0:
            return False
        if p <= 0:
            return True  # 2^(p/q) <= 1 <= m
        if m == 1:
            return False  # p > 0 here
        bl = m.bit_length()  # 2^(bl-1) <= m < 2^bl
        if q * (bl - 1) >= p:
            return True
        if q * bl <= p:
            return False
        return m**q >= (1 << p)

    def holds_upper(self, measured) -> bool:
        assert self.kind == "rational", "upper bounds are rational here"
        return Fraction(measured) <= Fraction(self.num, self.den)

    def to_json(self) -> dict:
        if self.kind == "rational":
            return {"num": self.num, "den": self.den, "log2_num": None, "log2_den": None}
        return {"num": None, "den": None, "log2_num": self.num, "log2_den": self.den}

    def __str__(self):
        if self.kind == "rational":
            return f"{self.num}/{self.den}" if self.den != 1 else str(self.num)
        return f"2^({self.num}/{self.den})"


@dataclass(frozen=True)
class LemmaReport:
    lemma: LemmaId
    instance: str
    params: dict | None
    hypothesis_met: bool
    bound: Bound | None
    measured: int | Fraction | None
    direction: str = ">="
    verdict: str = "Pass"  # Pass | Fail | Skipped
    reason: str | None = None
    note: str | None = None

    def to_json(self) -> dict:
        meas = self.measured
        if isinstance(meas, Fraction):
            meas = [meas.numerator, meas.denominator]
        return {
            "lemma": self.lemma.value,
            "instance": self.instance,
            "params": self.params,
            "hypothesis_met": self.hypothesis_met,
            "bound": self.bound.to_json() if self.bound else None,
            "measured": meas,
            "direction": self.direction,
            "verdict": self.verdict,
            "reason": self.reason,
            "note": self.note,
        }


class LemmaFailure(CubicpmError):
    """Raised by fail-fast sweeps; carries the report and the instance dump."""

    def __init__(self, report: LemmaReport, graph: Multigraph):
        self.report = report
        self.graph = graph
        super().__init__(
            f"{report.lemma.value} failed on {report.instance} "
            f"(params={report.params}, measured={report.measured}, "
            f"bound={report.bound}, direction={report.direction})\n"
            f"instance dump:\n{write_edge_list(graph)}"
        )


@dataclass(frozen=True)
class Instance:
    """A corpus entry: a name, a graph, and hypothesis hints for the checks."""

    name: str
    graph: Multigraph
    hints: tuple[tuple[str, bool], ...] = ()

    def hint(self, key: str) -> bool:
        return dict(self.hints).get(key, False)


def _skip(lemma, inst, params, reason) -> LemmaReport:
    return LemmaReport(
        lemma, inst.name, params, hypothesis_met=False, bound=None, measured=None,
        verdict="Skipped", reason=reason,
    )


def _judge(lemma, inst, params, bound, measured, direction=">=", note=None) -> LemmaReport:
    ok = bound.holds_lower(measured) if direction == ">=" else bound.holds_upper(measured)
    return LemmaReport(
        lemma, inst.name, params, hypothesis_met=True, bound=bound,
        measured=measured, direction=direction,
        verdict="Pass" if ok else "Fail", note=note,
    )


def _fail(lemma, inst, params, bound, measured, direction=">=", note=None) -> LemmaReport:
    return LemmaReport(
        lemma, inst.name, params, hypothesis_met=True, bound=bound,
        measured=measured, direction=direction, verdict="Fail", note=note,
    )


# ---------------------------------------------------------------------------
# shared hypothesis predicates


def _is_bridgeless_cubic(g: Multigraph) -> bool:
    return g.is_cubic and g.is_connected() and not bridges(g)


def _is_3ec(g: Multigraph) -> bool:
    if g.vertex_count < 2:
        return False
    return not enumerate_cuts(g, 2, cyclic_only=False)


def _cyclic3_edge_union(g: Multigraph) -> frozenset[int]:
    out: set[int] = set()
    for cut in cyclic_cuts_up_to(g, 3):
        if cut.size == 3:
            out |= cut.crossing_edges
    return frozenset(out)


def _avoid_count(g: Multigraph, e: int) -> int:
    return count_matchings(g, CountQuery(forbidden=frozenset({e})))


def _delete_edges(g: Multigraph, drop: set[int]) -> Multigraph:
    return Multigraph(
        g.vertex_count,
        tuple(p for i, p in enumerate(g.edges) if i not in drop),
    )


def _twisted_hypothesis(inst: Instance) -> tuple[bool, str | None]:
    """(is a twisted net, skip reason).  Corpus hints bypass the recognizer."""
    if inst.hint("known_twisted"):
        return True, None
    g = inst.graph
    if g.vertex_count > fam.TWISTED_CAP:
        return False, f"recognizer capped at {fam.TWISTED_CAP} vertices"
    try:
        ok = fam.recognize_twisted_net(g) is not None
    except CubicpmError:
        return False, "recognizer rejected the instance"
    return ok, None if ok else "not a twisted net"


def _is_c4(g: Multigraph) -> bool:
    return (
        g.vertex_count == 4
        and g.edge_count == 4
        and all(d == 2 for d in g.degrees)
        and len(set(g.edges)) == 4
        and g.is_connected()
    )


def _corner_pair_counts(g: Multigraph) -> dict[tuple[int, int], int]:
    cs = fam.corners(g)
    out = {}
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            out[(cs[i], cs[j])] = count_matchings(
                g, CountQuery(missed_vertices=frozenset({cs[i], cs[j]}))
            )
    return out


def _cut_side_params(g: Multigraph) -> list[dict]:
    """One params dict per (cyclic 4-cut, side), sides given by vertex list."""
    out = []
    for cut in cyclic_cuts_up_to(g, 4):
        if cut.size != 4:
            continue
        for side in ("A", "B"):
            vs = cut.side_a if side == "A" else frozenset(range(g.vertex_count)) - cut.side_a
            out.append({"side": sorted(vs)})
    return out


def _anchors_on_side(g: Multigraph, cut: EdgeCut) -> list[int] | None:
    """Endpoints of the four cut edges on side A, in cut-edge id order."""
    anchors = []
    for e in sorted(cut.crossing_edges):
        u, v = g.endpoints(e)
        anchors.append(u if u in cut.side_a else v)
    return anchors if len(set(anchors)) == 4 else None


def _surgery_graphs(g: Multigraph, cut: EdgeCut):
    """Subdivided and paired closures for pairings (1i), i in {2,3,4}.

    Returns ({i: subdivided}, {i: paired}, attach edge id range start).
    """
    es = sorted(cut.crossing_edges)
    sub = {}
    paired = {}
    others = {2: (2, 3), 3: (1, 3), 4: (1, 2)}  # indices of the complement pair
    for i in (2, 3, 4):
        j, k = others[i]
        pairing = ((es[0], es[i - 1]), (es[j], es[k]))
        p, s = cut_surgery_pair(g, cut, pairing, side="A")
        paired[i] = p
        sub[i] = s
    return sub, paired


def _attach_edge_ids(g: Multigraph, cut: EdgeCut, subdivided: Multigraph) -> list[int]:
    """Ids of the four attachment edges in a subdivided closure."""
    m_inner = subdivided.edge_count - 5
    return [m_inner, m_inner + 1, m_inner + 2, m_inner + 3]


def _c4ec(g: Multigraph) -> bool:
    return cyclic_edge_connectivity(g).at_least(4)


def _edge_in_cyclic3(g: Multigraph, eids: Iterable[int]) -> bool:
    bad = _cyclic3_edge_union(g)
    return any(e in bad for e in eids)


def _is_solid_side(g: Multigraph, side: frozenset[int]) -> bool:
    """No 2-edge-cut of the induced side with two or more vertices per part."""
    sub, _, _ = induced_subgraph(g, side)
    if sub.vertex_count < 4:
        return False
    for cut in enumerate_cuts(sub, 2, cyclic_only=False):
        if cut.size != 2:
            continue
        if len(cut.side_a) >= 2 and sub.vertex_count - len(cut.side_a) >= 2:
            return False
    return True


# ---------------------------------------------------------------------------
# per-lemma admissible parameters


def params_for(lemma: LemmaId, inst: Instance) -> list[dict | None]:
    g = inst.graph
    if lemma in (LemmaId.THM_BIP,):
        return [{"edge": e} for e in range(g.edge_count)]
    if lemma is LemmaId.LM_3CONN or lemma is LemmaId.LM_BB_3E or lemma is LemmaId.LM_BB_3EF:
        if not (g.is_cubic and g.vertex_count <= 24 and _is_3ec(g)):
            return [None]
        bad = _cyclic3_edge_union(g)
        ps = [{"edge": e} for e in range(g.edge_count) if e not in bad]
        return ps or [None]
    if lemma is LemmaId.LM_SPECIAL:
        return [
            {"e": e, "f": f}
            for e in range(g.edge_count)
            for f in range(e + 1, g.edge_count)
        ]
    if lemma is LemmaId.LM_SPLITOFF:
        ps = []
        for eid, (v2, v3) in enumerate(g.edges):
            for e1 in g.incident(v2):
                v1 = g.other_end(e1, v2)
                if v1 in (v2, v3):
                    continue
                for e4 in g.incident(v3):
                    v4 = g.other_end(e4, v3)
                    if v4 in (v1, v2, v3):
                        continue
                    ps.append({"path": [v1, v2, v3, v4]})
        return ps or [None]
    if lemma is LemmaId.LM_SPLIT5_SAME:
        ps = []
        for v2 in range(g.vertex_count):
            nbrs = g.neighbors(v2)
            for v1 in nbrs:
                for v3 in nbrs:
                    if v3 != v1:
                        ps.append({"triple": [v1, v2, v3]})
        return ps or [None]
    if lemma is LemmaId.LM_SPLIT5_DIFF:
        ps = []
        for v2 in range(g.vertex_count):
            for v1 in g.neighbors(v2):
                rest = [x for x in g.neighbors(v2) if x != v1]
                if len(rest) != 2:
                    continue
                v3, v3p = sorted(rest)
                for v4 in g.neighbors(v3):
                    if v4 == v2:
                        continue
                    for v4p in g.neighbors(v3p):
                        if v4p == v2:
                            continue
                        ps.append({"v1": v1, "v2": v2, "v4": v4, "v4p": v4p})
        return ps or [None]
    if lemma in (LemmaId.LM_SPLIT4A, LemmaId.LM_SPLIT4B, LemmaId.LM_LADDER):
        return _cut_side_params(g) or [None]
    if lemma is LemmaId.LM_ORDERED:
        if g.vertex_count > 24:
            return [None]
        in4 = set()
        for cut in cyclic_cuts_up_to(g, 4):
            if cut.size == 4:
                in4 |= cut.crossing_edges
        return [{"edge": e} for e in sorted(in4)] or [None]
    if lemma is LemmaId.LM_TWISTED_STRUC:
        if g.vertex_count > 24:
            return [None]
        in4 = set()
        for cut in cyclic_cuts_up_to(g, 4):
            if cut.size == 4:
                in4 |= cut.crossing_edges
        return [{"edge": e} for e in range(g.edge_count) if e not in in4] or [None]
    return [None]


# ---------------------------------------------------------------------------
# the checks


def _check_th_half(inst, params):
    g = inst.graph
    if not _is_bridgeless_cubic(g):
        return _skip(LemmaId.TH_HALF, inst, params, "not cubic bridgeless")
    return _judge(
        LemmaId.TH_HALF, inst, params,
        Bound.rational(Fraction(g.vertex_count, 2)), count_matchings(g),
    )


def _check_thm_bip(inst, params):
    g = inst.graph
    if not (_is_bridgeless_cubic(g) and is_bipartite(g)):
        return _skip(LemmaId.THM_BIP, inst, params, "not cubic bridgeless bipartite")
    e = params["edge"]
    half = g.vertex_count // 2
    return _judge(
        LemmaId.THM_BIP, inst, params,
        Bound.rational(Fraction(4**half, 3**half)), _avoid_count(g, e),
    )


def _check_thm_klee(inst, params):
    g = inst.graph
    if g.vertex_count > fam.KLEE_CAP:
        return _skip(LemmaId.THM_KLEE, inst, params, "recognizer size cap")
    if not (g.is_cubic and fam.is_klee(g)):
        return _skip(LemmaId.THM_KLEE, inst, params, "not a Klee graph")
    return _judge(
        LemmaId.THM_KLEE, inst, params,
        Bound.pow2(Fraction(g.vertex_count, KLEE_DENOMINATOR)), count_matchings(g),
        note=f"exponent denominator {KLEE_DENOMINATOR} per the Chudnovsky-Seymour planar bound",
    )


def _check_thm_ef(inst, params):
    g = inst.graph
    if not _is_bridgeless_cubic(g):
        return _skip(LemmaId.THM_EF, inst, params, "not cubic bridgeless")
    worst = None
    arg = None
    for e in range(g.edge_count):
        for f in range(e + 1, g.edge_count):
            c = count_matchings(g, CountQuery(forbidden=frozenset({e, f})))
            if worst is None or c < worst:
                worst, arg = c, (e, f)
    if worst is None:  # single-edge graphs have no pair
        return _skip(LemmaId.THM_EF, inst, params, "fewer than two edges")
    return _judge(
        LemmaId.THM_EF, inst, {"worst_pair": list(arg)}, Bound.rational(1), worst,
    )


def _check_lm_double(inst, params):
    g = inst.graph
    if not (g.is_cubic and _is_3ec(g)):
        return _skip(LemmaId.LM_DOUBLE, inst, params, "not cyclically 3-edge-connected cubic")
    if g.vertex_count > fam.KLEE_CAP:
        return _skip(LemmaId.LM_DOUBLE, inst, params, "Klee recognizer size cap")
    if fam.is_klee(g):
        return _skip(LemmaId.LM_DOUBLE, inst, params, "Klee graphs are exempt")
    return _judge(
        LemmaId.LM_DOUBLE, inst, params, Bound.rational(2), min(containment_counts(g)),
    )


def _check_lm_triple(inst, params):
    g = inst.graph
    if not (g.is_cubic and is_bipartite(g) and g.vertex_count >= 8 and _c4ec(g)):
        return _skip(
            LemmaId.LM_TRIPLE, inst, params,
            "needs a cyclically 4-edge-connected bipartite cubic graph on >= 8 vertices",
        )
    return _judge(
        LemmaId.LM_TRIPLE, inst, params, Bound.rational(3), min(containment_counts(g)),
    )


def _check_lm_special(inst, params):
    g = inst.graph
    if not (g.is_cubic and _c4ec(g)):
        return _skip(LemmaId.LM_SPECIAL, inst, params, "not cyclically 4-edge-connected cubic")
    e, f = params["e"], params["f"]
    try:
        r1 = special_pair(g, e, f)
        r2 = special_pair(g, f, e)
    except AssertionError as exc:
        return _fail(LemmaId.LM_SPECIAL, inst, params, Bound.rational(1), 0, note=str(exc))
    return _judge(
        LemmaId.LM_SPECIAL, inst, params, Bound.rational(1), 1,
        note=f"{r1.verdict}/{r2.verdict}",
    )


def _check_lm_bridge(inst, params):
    g = inst.graph
    if g.vertex_count > 20:
        return _skip(LemmaId.LM_BRIDGE, inst, params, "enumeration size cap")
    if count_matchings(g) != 1:
        return _skip(LemmaId.LM_BRIDGE, inst, params, "perfect matching is not unique")
    try:
        e = kotzig_bridge(g)
    except AssertionError as exc:
        return _fail(LemmaId.LM_BRIDGE, inst, params, Bound.rational(1), 0, note=str(exc))
    ok = e in bridges(g) and count_matchings(
        g, CountQuery(required=frozenset({e}))
    ) == 1
    return _judge(
        LemmaId.LM_BRIDGE, inst, params, Bound.rational(1), int(ok), note=f"bridge={e}",
    )


def _check_lm_3conn(inst, params):
    g = inst.graph
    if params is None or not (g.is_cubic and _is_3ec(g)):
        return _skip(LemmaId.LM_3CONN, inst, params, "needs a 3-edge-connected cubic graph with an admissible edge")
    e = params["edge"]
    return _judge(
        LemmaId.LM_3CONN, inst, params,
        Bound.rational(Fraction(g.vertex_count, 8)), _avoid_count(g, e),
    )


def _check_lm_semiblock(inst, params):
    g = inst.graph
    if not _is_bridgeless_cubic(g):
        return _skip(LemmaId.LM_SEMIBLOCK, inst, params, "not cubic bridgeless")
    _, s = fam.semiblocks(g)
    worst = min(_avoid_count(g, e) for e in range(g.edge_count))
    return _judge(
        LemmaId.LM_SEMIBLOCK, inst, params, Bound.rational(s + 1), worst,
        note=f"s={s}",
    )


def _decomposable(g: Multigraph) -> str | None:
    if g.vertex_count > dc.TIGHT_CAP:
        return "decomposition size cap"
    try:
        if not dc.is_matching_covered(g):
            return "not matching-covered"
    except TooLarge:
        return "decomposition size cap"
    return None


def _check_thm_bb(inst, params):
    g = inst.graph
    why = _decomposable(g)
    if why:
        return _skip(LemmaId.THM_BB, inst, params, why)
    b = dc.brick_count(g)
    bound = g.edge_count - g.vertex_count + 1 - b
    return _judge(
        LemmaId.THM_BB, inst, params, Bound.rational(bound), count_matchings(g),
        note=f"b={b}",
    )


def _check_lm_bb_cubic(inst, params):
    g = inst.graph
    if not _is_bridgeless_cubic(g):
        return _skip(LemmaId.LM_BB_CUBIC, inst, params, "not cubic bridgeless")
    why = _decomposable(g)
    if why:
        return _skip(LemmaId.LM_BB_CUBIC, inst, params, why)
    return _judge(
        LemmaId.LM_BB_CUBIC, inst, params,
        Bound.rational(Fraction(g.vertex_count, 4)), dc.brick_count(g), direction="<=",
    )


def _check_lm_bb_bip(inst, params):
    g = inst.graph
    if not is_bipartite(g):
        return _skip(LemmaId.LM_BB_BIP, inst, params, "not bipartite")
    why = _decomposable(g)
    if why:
        return _skip(LemmaId.LM_BB_BIP, inst, params, why)
    return _judge(
        LemmaId.LM_BB_BIP, inst, params, Bound.rational(0), dc.brick_count(g),
        direction="<=",
    )


def _check_lm_bb_3e(inst, params):
    g = inst.graph
    if params is None or not (g.is_cubic and _is_3ec(g)):
        return _skip(LemmaId.LM_BB_3E, inst, params, "needs 3-edge-connected cubic with admissible edge")
    e = params["edge"]
    ge = _delete_edges(g, {e})
    why = _decomposable(ge)
    if why:
        return _skip(LemmaId.LM_BB_3E, inst, params, f"graph minus edge: {why}")
    return _judge(
        LemmaId.LM_BB_3E, inst, params,
        Bound.rational(Fraction(3 * g.vertex_count, 8) - 2), dc.brick_count(ge),
        direction="<=",
    )


def _check_lm_bb_3ef(inst, params):
    g = inst.graph
    if params is None or not (g.is_cubic and _is_3ec(g)):
        return _skip(LemmaId.LM_BB_3EF, inst, params, "needs 3-edge-connected cubic with admissible edge")
    e = params["edge"]
    ge = _delete_edges(g, {e})
    if g.vertex_count > dc.TIGHT_CAP:
        return _skip(LemmaId.LM_BB_3EF, inst, params, "decomposition size cap")
    if dc.is_matching_covered(ge):
        return _skip(LemmaId.LM_BB_3EF, inst, params, "graph minus edge is matching-covered")
    bound = Bound.rational(Fraction(g.vertex_count, 4) - 1)
    for f in range(g.edge_count):
        if f == e:
            continue
        gef = _delete_edges(g, {e, f})
        if dc.is_matching_covered(gef):
            return _judge(
                LemmaId.LM_BB_3EF, inst, {**params, "companion": f}, bound,
                dc.brick_count(gef), direction="<=",
            )
    return _fail(
        LemmaId.LM_BB_3EF, inst, params, bound, g.edge_count,
        direction="<=", note="no companion edge makes the graph matching-covered",
    )


def _check_lm_splitoff(inst, params):
    g = inst.graph
    if params is None or not g.is_cubic:
        return _skip(LemmaId.LM_SPLITOFF, inst, params, "not cubic or no admissible path")
    cec = cyclic_edge_connectivity(g)
    if cec.is_unbounded:
        return _skip(LemmaId.LM_SPLITOFF, inst, params, "no cyclic structure")
    ell = min(cec.value, (g.vertex_count - 2) // 2)
    if ell < 3:
        return _skip(LemmaId.LM_SPLITOFF, inst, params, f"effective connectivity {ell} below 3")
    try:
        h = split_off(g, tuple(params["path"]))
    except CubicpmError as exc:
        return _skip(LemmaId.LM_SPLITOFF, inst, params, f"degenerate path: {exc}")
    new_edges = {h.edge_count - 2, h.edge_count - 1}
    ok = True
    worst = None
    for cut in cyclic_cuts_up_to(h, ell - 1):
        if cut.size < ell - 2 or (cut.crossing_edges & new_edges):
            ok = False
            worst = sorted(cut.side_a)
            break
    return _judge(
        LemmaId.LM_SPLITOFF, inst, {**params, "ell": ell}, Bound.rational(1), int(ok),
        note=None if ok else f"violating side {worst}",
    )


def _split5_common(lemma, inst, params, paths):
    g = inst.graph
    if not (g.is_cubic and g.vertex_count >= 12 and cyclic_edge_connectivity(g).at_least(5)):
        return _skip(lemma, inst, params, "needs cyclically 5-edge-connected cubic, >= 12 vertices")
    results = []
    for path in paths:
        try:
            h = split_off(g, path)
        except CubicpmError as exc:
            return _skip(lemma, inst, params, f"degenerate path: {exc}")
        ok, _ = is_k_almost_cyclically_4ec(h, 4)
        results.append(ok)
    return _judge(lemma, inst, params, Bound.rational(1), int(any(results)))


def _check_lm_split5_same(inst, params):
    g = inst.graph
    if params is None:
        return _skip(LemmaId.LM_SPLIT5_SAME, inst, params, "no admissible path")
    v1, v2, v3 = params["triple"]
    tails = [w for w in g.neighbors(v3) if w != v2]
    if len(tails) != 2:
        return _skip(LemmaId.LM_SPLIT5_SAME, inst, params, "tail neighbors not distinct")
    return _split5_common(
        LemmaId.LM_SPLIT5_SAME, inst, params,
        [(v1, v2, v3, tails[0]), (v1, v2, v3, tails[1])],
    )


def _check_lm_split5_diff(inst, params):
    g = inst.graph
    if params is None:
        return _skip(LemmaId.LM_SPLIT5_DIFF, inst, params, "no admissible path")
    v1, v2 = params["v1"], params["v2"]
    rest = sorted(x for x in g.neighbors(v2) if x != v1)
    if len(rest) != 2:
        return _skip(LemmaId.LM_SPLIT5_DIFF, inst, params, "branch neighbors not distinct")
    v3, v3p = rest
    return _split5_common(
        LemmaId.LM_SPLIT5_DIFF, inst, params,
        [(v1, v2, v3, params["v4"]), (v1, v2, v3p, params["v4p"])],
    )


def _side_cut(inst, params):
    g = inst.graph
    side = frozenset(params["side"])
    cut = build_cut(g, side)
    return cut


def _check_lm_split4a(inst, params):
    g = inst.graph
    if params is None or not (g.is_cubic and _c4ec(g)):
        return _skip(LemmaId.LM_SPLIT4A, inst, params, "needs cyclically 4-edge-connected cubic with a cyclic 4-cut")
    cut = _side_cut(inst, params)
    if not (cut.size == 4 and cut.cyclic):
        return _skip(LemmaId.LM_SPLIT4A, inst, params, "side does not define a cyclic 4-cut")
    if _anchors_on_side(g, cut) is None:
        return _skip(LemmaId.LM_SPLIT4A, inst, params, "two cut edges share a side vertex")
    sub, _ = _surgery_graphs(g, cut)
    attach_bad = False
    not_3ec = False
    for s in sub.values():
        if not _is_3ec(s):
            not_3ec = True
        if _edge_in_cyclic3(s, _attach_edge_ids(g, cut, s)):
            attach_bad = True
    side_graph, _, _ = induced_subgraph(g, cut.side_a)
    c4_side = _is_c4(side_graph)
    enough_c4ec = True
    if not c4_side:
        enough_c4ec = sum(1 for s in sub.values() if _c4ec(s)) >= 2
    ok = not not_3ec and not attach_bad and enough_c4ec
    return _judge(
        LemmaId.LM_SPLIT4A, inst, params, Bound.rational(1), int(ok),
        note="4-cycle side, connectivity clause only" if c4_side else None,
    )


def _check_lm_split4b(inst, params):
    g = inst.graph
    if params is None or not (g.is_cubic and _c4ec(g)):
        return _skip(LemmaId.LM_SPLIT4B, inst, params, "needs cyclically 4-edge-connected cubic with a cyclic 4-cut")
    cut = _side_cut(inst, params)
    if not (cut.size == 4 and cut.cyclic):
        return _skip(LemmaId.LM_SPLIT4B, inst, params, "side does not define a cyclic 4-cut")
    if _anchors_on_side(g, cut) is None:
        return _skip(LemmaId.LM_SPLIT4B, inst, params, "two cut edges share a side vertex")
    side_graph, _, _ = induced_subgraph(g, cut.side_a)
    if _is_c4(side_graph):
        return _skip(LemmaId.LM_SPLIT4B, inst, params, "side is a 4-cycle")
    if side_graph.vertex_count == 6 and find_isomorphism(
        side_graph, fam.named("exceptional6")
    ):
        return _skip(LemmaId.LM_SPLIT4B, inst, params, "side is the exceptional 6-vertex graph")
    sub, paired = _surgery_graphs(g, cut)
    s = {i: _c4ec(sub[i]) for i in (2, 3, 4)}
    p = {i: _c4ec(paired[i]) for i in (2, 3, 4)}
    first = all(s.values())
    second = any(
        s[i] and p[i] and any(s[j] for j in (2, 3, 4) if j != i) for i in (2, 3, 4)
    )
    return _judge(
        LemmaId.LM_SPLIT4B, inst, params, Bound.rational(1), int(first or second),
        note=f"subdivided={s}, paired={p}",
    )


def _check_lm_ordered(inst, params):
    g = inst.graph
    if params is None or not (g.is_cubic and _c4ec(g)):
        return _skip(LemmaId.LM_ORDERED, inst, params, "needs cyclically 4-edge-connected cubic with the edge in a cyclic 4-cut")
    try:
        chain = ordered_4cut_chain(g, params["edge"])
    except ChainViolation as exc:
        return _fail(LemmaId.LM_ORDERED, inst, params, Bound.rational(1), 0, note=str(exc))
    return _judge(
        LemmaId.LM_ORDERED, inst, params, Bound.rational(1), 1,
        note=f"chain length {len(chain)}",
    )


def check_lm_ladder(g: Multigraph, cut: EdgeCut, side: str = "A",
                    instance: str = "adhoc") -> LemmaReport:
    """The zero/one/ladder trichotomy for near-perfect counts on a 4-cut side."""
    inst = Instance(instance, g)
    params = {"side": sorted(cut.side_a if side == "A" else
                             frozenset(range(g.vertex_count)) - cut.side_a)}
    return _check_lm_ladder(inst, params)


def _check_lm_ladder(inst, params):
    g = inst.graph
    if params is None or not (g.is_cubic and _c4ec(g)):
        return _skip(LemmaId.LM_LADDER, inst, params, "needs cyclically 4-edge-connected cubic with a cyclic 4-cut")
    cut = _side_cut(inst, params)
    if not (cut.size == 4 and cut.cyclic):
        return _skip(LemmaId.LM_LADDER, inst, params, "side does not define a cyclic 4-cut")
    anchors = _anchors_on_side(g, cut)
    if anchors is None:
        return _skip(LemmaId.LM_LADDER, inst, params, "two cut edges share a side vertex")
    sub, vmap, _ = induced_subgraph(g, cut.side_a)
    va = {i + 1: vmap[anchors[i]] for i in range(4)}  # cut-edge label -> side vertex

    def near(i, j):
        return count_matchings(
            sub, CountQuery(missed_vertices=frozenset({va[i], va[j]}))
        )

    counts = {(2, 3): near(2, 3), (2, 4): near(2, 4), (3, 4): near(3, 4)}
    zeros = [pair for pair, c in counts.items() if c == 0]
    if not zeros:
        return _judge(
            LemmaId.LM_LADDER, inst, params, Bound.rational(1), 1,
            note=f"all positive {counts}",
        )
    recognized = fam.recognize_ladder(sub)
    for z in zeros:
        others = [pair for pair in counts if pair != z]
        if all(counts[o] >= 2 for o in others):
            continue
        ok_branch = False
        for o in others:
            if counts[o] != 1:
                continue
            shared = set(z) & set(o)
            if len(shared) != 1:
                continue
            (s_lbl,) = shared
            (zj,) = set(z) - shared
            (ok_lbl,) = set(o) - shared
            want = {
                frozenset({va[1], va[s_lbl]}),
                frozenset({va[zj], va[ok_lbl]}),
            }
            if recognized is None:
                continue
            got = {
                frozenset(sub.endpoints(recognized[0])),
                frozenset(sub.endpoints(recognized[1])),
            }
            if got == want:
                ok_branch = True
                break
        if not ok_branch:
            return _judge(
                LemmaId.LM_LADDER, inst, params, Bound.rational(1), 0,
                note=f"counts {counts}, ladder ends {recognized}",
            )
    return _judge(
        LemmaId.LM_LADDER, inst, params, Bound.rational(1), 1,
        note=f"zero case verified {counts}",
    )


def _check_lm_twisted_num(inst, params):
    g = inst.graph
    ok, why = _twisted_hypothesis(inst)
    if not ok:
        return _skip(LemmaId.LM_TWISTED_NUM, inst, params, why or "not a twisted net")
    n = g.vertex_count
    return _judge(
        LemmaId.LM_TWISTED_NUM, inst, params,
        Bound.pow2(Fraction(n + 12, 18)), count_matchings(g),
    )


def _check_lm_twisted_bip(inst, params):
    g = inst.graph
    ok, why = _twisted_hypothesis(inst)
    if not ok:
        return _skip(LemmaId.LM_TWISTED_BIP, inst, params, why or "not a twisted net")
    if not is_bipartite(g):
        return _skip(LemmaId.LM_TWISTED_BIP, inst, params, "not bipartite")
    n = g.vertex_count
    cs = fam.corners(g)
    color = _coloring(g)
    us = [c for c in cs if color[c] == 0]
    vs = [c for c in cs if color[c] == 1]
    bound = Bound.pow2(Fraction(n - 4, 18))
    if len(us) != 2 or len(vs) != 2:
        return _fail(LemmaId.LM_TWISTED_BIP, inst, params, bound, 0,
                     note="corners not split two per color class")
    if count_matchings(g, CountQuery(missed_vertices=frozenset(cs))) < 1:
        return _fail(LemmaId.LM_TWISTED_BIP, inst, params, bound, 0,
                     note="no matching avoiding all four corners")
    cross = {
        (u, v): count_matchings(g, CountQuery(missed_vertices=frozenset({u, v})))
        for u in us
        for v in vs
    }
    if any(c < 1 for c in cross.values()):
        return _fail(LemmaId.LM_TWISTED_BIP, inst, params, bound, 0,
                     note=f"a cross-class corner pair has no matching: {cross}")
    return _judge(LemmaId.LM_TWISTED_BIP, inst, params, bound, max(cross.values()))


def _check_lm_twisted_nonbip(inst, params):
    g = inst.graph
    ok, why = _twisted_hypothesis(inst)
    if not ok:
        return _skip(LemmaId.LM_TWISTED_NONBIP, inst, params, why or "not a twisted net")
    if is_bipartite(g):
        return _skip(LemmaId.LM_TWISTED_NONBIP, inst, params, "bipartite")
    n = g.vertex_count
    prod = 1
    for c in _corner_pair_counts(g).values():
        prod *= c
    return _judge(
        LemmaId.LM_TWISTED_NONBIP, inst, params,
        Bound.pow2(Fraction(n + 8, 18)), prod,
    )


def _check_lm_twisted_bis(inst, params):
    g = inst.graph
    ok, why = _twisted_hypothesis(inst)
    if not ok:
        return _skip(LemmaId.LM_TWISTED_BIS, inst, params, why or "not a twisted net")
    n = g.vertex_count
    best = max(_corner_pair_counts(g).values())
    return _judge(
        LemmaId.LM_TWISTED_BIS, inst, params, Bound.pow2(Fraction(n - 4, 108)), best,
    )


def _check_lm_twisted_struc(inst, params):
    g = inst.graph
    if params is None or not (g.is_cubic and _c4ec(g)):
        return _skip(LemmaId.LM_TWISTED_STRUC, inst, params, "needs cyclically 4-edge-connected cubic with an admissible edge")
    e = params["edge"]
    a, b = g.endpoints(e)
    sides = []
    for cut in cyclic_cuts_up_to(g, 4):
        if cut.size != 4:
            continue
        if a in cut.side_a and b in cut.side_a:
            sides.append(frozenset(range(g.vertex_count)) - cut.side_a)
        elif a not in cut.side_a and b not in cut.side_a:
            sides.append(cut.side_a)
        # e crossing is impossible: the edge is outside every cyclic 4-cut
    for s in sides:
        if _is_solid_side(g, s):
            return _skip(LemmaId.LM_TWISTED_STRUC, inst, params, "an opposite side is solid")
        if len(s) > fam.TWISTED_CAP:
            return _skip(LemmaId.LM_TWISTED_STRUC, inst, params, "opposite side exceeds recognizer cap")
    bad = []
    for s in sides:
        sub, _, _ = induced_subgraph(g, s)
        if fam.recognize_twisted_net(sub) is None:
            bad.append(sorted(s))
    return _judge(
        LemmaId.LM_TWISTED_STRUC, inst, params, Bound.rational(1), int(not bad),
        note=f"{len(sides)} sides checked" if not bad else f"unrecognized sides {bad}",
    )


def _coloring(g: Multigraph) -> list[int]:
    color = [-1] * g.vertex_count
    for s in range(g.vertex_count):
        if color[s] != -1:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for e in g.incident(v):
                w = g.other_end(e, v)
                if color[w] == -1:
                    color[w] = color[v] ^ 1
                    stack.append(w)
    return color


_CHECKS: dict[LemmaId, Callable] = {
    LemmaId.TH_HALF: _check_th_half,
    LemmaId.THM_BIP: _check_thm_bip,
    LemmaId.THM_KLEE: _check_thm_klee,
    LemmaId.THM_EF: _check_thm_ef,
    LemmaId.LM_DOUBLE: _check_lm_double,
    LemmaId.LM_TRIPLE: _check_lm_triple,
    LemmaId.LM_SPECIAL: _check_lm_special,
    LemmaId.LM_BRIDGE: _check_lm_bridge,
    LemmaId.LM_3CONN: _check_lm_3conn,
    LemmaId.LM_SEMIBLOCK: _check_lm_semiblock,
    LemmaId.THM_BB: _check_thm_bb,
    LemmaId.LM_BB_CUBIC: _check_lm_bb_cubic,
    LemmaId.LM_BB_BIP: _check_lm_bb_bip,
    LemmaId.LM_BB_3E: _check_lm_bb_3e,
    LemmaId.LM_BB_3EF: _check_lm_bb_3ef,
    LemmaId.LM_SPLITOFF: _check_lm_splitoff,
    LemmaId.LM_SPLIT5_SAME: _check_lm_split5_same,
    LemmaId.LM_SPLIT5_DIFF: _check_lm_split5_diff,
    LemmaId.LM_SPLIT4A: _check_lm_split4a,
    LemmaId.LM_SPLIT4B: _check_lm_split4b,
    LemmaId.LM_ORDERED: _check_lm_ordered,
    LemmaId.LM_LADDER: _check_lm_ladder,
    LemmaId.LM_TWISTED_NUM: _check_lm_twisted_num,
    LemmaId.LM_TWISTED_BIP: _check_lm_twisted_bip,
    LemmaId.LM_TWISTED_NONBIP: _check_lm_twisted_nonbip,
    LemmaId.LM_TWISTED_BIS: _check_lm_twisted_bis,
    LemmaId.LM_TWISTED_STRUC: _check_lm_twisted_struc,
}


def check(
    lemma: LemmaId,
    g: Multigraph,
    params: dict | None = None,
    instance: str = "adhoc",
    hints: tuple[tuple[str, bool], ...] = (),
) -> LemmaReport:
    """Run one lemma check; with no params, aggregate over all admissible ones.

    Aggregation returns the worst report: any Fail wins, otherwise the
    tightest margin; if nothing is admissible the result is Skipped.
    """
    inst = Instance(instance, g, hints)
    if params is not None:
        return _CHECKS[lemma](inst, params)
    reports = [_CHECKS[lemma](inst, p) for p in params_for(lemma, inst)]
    return _aggregate(lemma, inst, reports)


def _aggregate(lemma, inst, reports: list[LemmaReport]) -> LemmaReport:
    fails = [r for r in reports if r.verdict == "Fail"]
    if fails:
        return fails[0]
    passes = [r for r in reports if r.verdict == "Pass"]
    if passes:
        def margin(r):
            if r.bound is None or r.measured is None:
                return Fraction(0)
            if r.bound.kind == "rational":
                diff = Fraction(r.measured) - Fraction(r.bound.num, r.bound.den)
                return diff if r.direction == ">=" else -diff
            return Fraction(int(r.measured))
        return min(passes, key=margin)
    return reports[0]


def sweep(
    lemmas: Iterable[LemmaId],
    instances: Iterable[Instance],
    fail_fast: bool = True,
) -> list[LemmaReport]:
    """One report per (lemma, instance, admissible parameter choice).

    Deterministic order: lemmas as given, instances as given, parameters in
    enumeration order.  With ``fail_fast`` a Fail raises LemmaFailure with a
    full instance dump.
    """
    instances = list(instances)
    out: list[LemmaReport] = []
    for lemma in lemmas:
        for inst in instances:
            for p in params_for(lemma, inst):
                rep = _CHECKS[lemma](inst, p)
                out.append(rep)
                if rep.verdict == "Fail" and fail_fast:
                    raise LemmaFailure(rep, inst.graph)
    return out


def summarize_csv(reports: list[LemmaReport]) -> str:
    """Per-lemma pass/fail/skip tallies as CSV."""
    rows = ["lemma,total,pass,fail,skipped"]
    by: dict[str, list[LemmaReport]] = {}
    for r in reports:
        by.setdefault(r.lemma.value, []).append(r)
    for lemma in sorted(by):
        rs = by[lemma]
        rows.append(
            f"{lemma},{len(rs)},{sum(r.verdict == 'Pass' for r in rs)},"
            f"{sum(r.verdict == 'Fail' for r in rs)},"
            f"{sum(r.verdict == 'Skipped' for r in rs)}"
        )
    return "\n".join(rows) + "\n"


# ---------------------------------------------------------------------------
# corpus builders


def named_instances(names: Iterable[str] = fam.NAMED) -> list[Instance]:
    return [Instance(name, fam.named(name)) for name in names]


def random_instances(count: int, n_lo: int, n_hi: int, seed: int) -> list[Instance]:
    """Seeded pairing-model corpus; sizes cycle through the even values."""
    sizes = [n for n in range(n_lo, n_hi + 1) if n % 2 == 0 and n >= 4]
    if not sizes:
        raise ValueError(f"no even sizes in {n_lo}..{n_hi}")
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = sizes[i % len(sizes)]
        sub = rng.getrandbits(32)
        g = fam.random_cubic_bridgeless(sub, n)
        out.append(Instance(f"random(seed={seed},i={i},n={n},sub={sub})", g))
    return out


def twisted_instances(
    count: int, seed: int, n_lo: int = 4, n_hi: int = 26
) -> list[Instance]:
    """Random twisted-net corpus with a bipartite / non-bipartite mix."""
    sizes = [n for n in range(n_lo, n_hi + 1) if n % 2 == 0]
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = sizes[i % len(sizes)]
        want = None
        if n >= 6:
            roll = i % 4
            want = True if roll == 1 else False if roll == 2 else None
        sub = rng.getrandbits(32)
        g, _recipe = fam.random_twisted_net(sub, n, want)
        out.append(
            Instance(
                f"twisted(seed={seed},i={i},n={n},sub={sub})", g,
                hints=(("known_twisted", True),),
            )
        )
    return out
