import json
from fractions import Fraction

import pytest

from conftest import ladder_host, pendant_triangle_chain
from cubicpm import check, check_lm_ladder, named
from cubicpm.connectivity import build_cut
from cubicpm.families import BASE_4CYCLE
from cubicpm.multigraph import from_edge_list
from cubicpm.verifier import (
    Bound,
    Instance,
    LemmaFailure,
    LemmaId,
    named_instances,
    params_for,
    random_instances,
    summarize_csv,
    sweep,
    twisted_instances,
)


# --- exact bound arithmetic -----------------------------------------------------


def test_rational_bounds():
    b = Bound.rational(Fraction(5, 2))
    assert b.holds_lower(3) and not b.holds_lower(2)
    assert b.holds_upper(2) and not b.holds_upper(3)
    assert b.holds_lower(Fraction(5, 2))


def test_pow2_bounds_basic():
    b = Bound.pow2(Fraction(8, 9))  # 2^(8/9) ~ 1.85
    assert b.holds_lower(2) and not b.holds_lower(1) and not b.holds_lower(0)
    assert Bound.pow2(Fraction(-1, 2)).holds_lower(1)
    assert Bound.pow2(Fraction(0, 1)).holds_lower(1)


def test_pow2_bounds_boundary_exact():
    # 3^12 = 531441 vs 2^19 = 524288 and 2^20 = 1048576
    assert Bound.pow2(Fraction(19, 12)).holds_lower(3)
    assert not Bound.pow2(Fraction(20, 12)).holds_lower(3)
    # an exactly-tight power
    assert Bound.pow2(Fraction(3, 1)).holds_lower(8)
    assert not Bound.pow2(Fraction(3, 1)).holds_lower(7)


def test_pow2_huge_denominator_fast_path():
    # the planar-bound exponent: any count >= 2 passes instantly
    b = Bound.pow2(Fraction(30, 655978752))
    assert b.holds_lower(2)
    assert not b.holds_lower(1)


def test_bound_json_shape():
    assert Bound.rational(Fraction(3, 2)).to_json() == {
        "num": 3, "den": 2, "log2_num": None, "log2_den": None,
    }
    assert Bound.pow2(Fraction(5, 18)).to_json() == {
        "num": None, "den": None, "log2_num": 5, "log2_den": 18,
    }


# --- individual checks against hand values -----------------------------------------


def test_th_half_petersen(named_graphs):
    r = check(LemmaId.TH_HALF, named_graphs["petersen"], instance="petersen")
    assert r.verdict == "Pass" and r.measured == 6
    assert (r.bound.num, r.bound.den) == (5, 1)


def test_thm_bip_k33_edge0(named_graphs):
    r = check(LemmaId.THM_BIP, named_graphs["k33"], params={"edge": 0}, instance="k33")
    assert r.verdict == "Pass" and r.measured == 4
    assert (r.bound.num, r.bound.den) == (64, 27)


def test_lm_twisted_num_c4():
    r = check(LemmaId.LM_TWISTED_NUM, BASE_4CYCLE, instance="C4")
    assert r.verdict == "Pass" and r.measured == 2
    assert (r.bound.num, r.bound.den) == (8, 9)  # 2^(16/18) reduced
    # the exact comparison: 2^9 = 512 >= 2^8 = 256
    assert 2**9 >= 2 ** (4 // 2 + 6)


def test_twisted_bounds_are_tight_on_the_exceptional_graph(named_graphs):
    g = named_graphs["exceptional6"]
    r = check(LemmaId.LM_TWISTED_NUM, g, instance="exc6")
    assert r.verdict == "Pass" and r.measured == 2 and (r.bound.num, r.bound.den) == (1, 1)
    r = check(LemmaId.LM_TWISTED_NONBIP, g, instance="exc6")
    assert r.verdict == "Pass" and r.measured == 2


def test_thm_klee_records_constant_provenance(named_graphs):
    r = check(LemmaId.THM_KLEE, named_graphs["prism"], instance="prism")
    assert r.verdict == "Pass"
    assert "655978752" in r.note
    assert Fraction(r.bound.num, r.bound.den) == Fraction(6, 655978752)


def test_skip_reports_carry_reasons(named_graphs):
    r = check(LemmaId.LM_TRIPLE, named_graphs["petersen"], instance="petersen")
    assert r.verdict == "Skipped" and r.hypothesis_met is False and r.reason
    r = check(LemmaId.LM_SPLIT5_SAME, named_graphs["petersen"], instance="petersen")
    assert r.verdict == "Skipped"  # ten vertices is below the hypothesis floor
    r = check(LemmaId.LM_BRIDGE, named_graphs["k4"], instance="k4")
    assert r.verdict == "Skipped" and "unique" in r.reason


def test_lm_bridge_pass():
    g = pendant_triangle_chain()
    r = check(LemmaId.LM_BRIDGE, g, instance="chain")
    assert r.verdict == "Pass" and "bridge=" in r.note


def test_lm_bb_3ef_finds_companion(named_graphs):
    r = check(LemmaId.LM_BB_3EF, named_graphs["prism"], params={"edge": 0}, instance="prism")
    assert r.verdict == "Pass"
    assert r.params["companion"] == 3  # first edge making the rest matching-covered
    assert r.direction == "<="


def test_lm_bb_3e_on_cube(named_graphs):
    r = check(LemmaId.LM_BB_3E, named_graphs["cube"], params={"edge": 0}, instance="cube")
    assert r.verdict == "Pass" and r.direction == "<="
    assert Fraction(r.bound.num, r.bound.den) == Fraction(3 * 8, 8) - 2


def test_lm_split4b_on_ladder_host():
    g = ladder_host(3)
    reports = sweep([LemmaId.LM_SPLIT4B], [Instance("ladder_host3", g)], fail_fast=True)
    assert any(r.verdict == "Pass" for r in reports)


def test_lm_ladder_branch_fires_on_ladder_host():
    g = ladder_host(3)
    n = g.vertex_count
    cut = build_cut(g, frozenset(range(6)))  # the grid side
    r = check_lm_ladder(g, cut, side="A", instance="ladder_host3")
    assert r.verdict == "Pass"
    assert "zero case verified" in r.note


def test_lm_ladder_all_positive_branch(named_graphs):
    g = ladder_host(4)
    cut = build_cut(g, frozenset(range(8, 12)))  # the closing 4-cycle side
    r = check_lm_ladder(g, cut, side="A", instance="ladder_host4")
    assert r.verdict in ("Pass", "Skipped")


def test_lm_twisted_struc_on_ladder_host():
    g = ladder_host(3)
    reports = sweep([LemmaId.LM_TWISTED_STRUC], [Instance("ladder_host3", g)], fail_fast=True)
    passed = [r for r in reports if r.verdict == "Pass"]
    assert passed
    assert any("sides checked" in (r.note or "") and not r.note.startswith("0") for r in passed)


def test_lm_ordered_skips_without_4cuts(named_graphs):
    r = check(LemmaId.LM_ORDERED, named_graphs["petersen"], instance="petersen")
    assert r.verdict == "Skipped"


# --- sweeps -------------------------------------------------------------------------


def test_sweep_is_deterministic():
    lemmas = [LemmaId.TH_HALF, LemmaId.THM_EF]
    insts = random_instances(8, 4, 10, seed=7)
    a = [r.to_json() for r in sweep(lemmas, insts, fail_fast=True)]
    b = [r.to_json() for r in sweep(lemmas, random_instances(8, 4, 10, seed=7), fail_fast=True)]
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_sweep_example_random_corpus():
    reports = sweep(
        [LemmaId.TH_HALF, LemmaId.THM_EF],
        random_instances(20, 4, 14, seed=1),
        fail_fast=True,
    )
    assert all(r.verdict == "Pass" for r in reports)


def test_sweep_lm_special_on_cube_covers_all_pairs(named_graphs):
    reports = sweep([LemmaId.LM_SPECIAL], named_instances(["cube"]), fail_fast=True)
    assert len(reports) == 66
    assert all(r.verdict == "Pass" for r in reports)


def test_fail_fast_raises_with_instance_dump():
    # a ten-cycle is not a twisted net; the hint forces the hypothesis so the
    # bound genuinely fails (2 matchings against 2^(22/18))
    c10 = from_edge_list(10, [(i, (i + 1) % 10) for i in range(10)])
    inst = Instance("c10", c10, hints=(("known_twisted", True),))
    with pytest.raises(LemmaFailure) as exc:
        sweep([LemmaId.LM_TWISTED_NUM], [inst], fail_fast=True)
    msg = str(exc.value)
    assert "LM_TWISTED_NUM" in msg and "10 10" in msg  # edge-list dump included
    assert exc.value.report.verdict == "Fail"
    reports = sweep([LemmaId.LM_TWISTED_NUM], [inst], fail_fast=False)
    assert [r.verdict for r in reports] == ["Fail"]


def test_csv_summary():
    reports = sweep([LemmaId.TH_HALF], named_instances(["petersen", "k4"]), fail_fast=True)
    csv = summarize_csv(reports)
    assert csv.splitlines()[0] == "lemma,total,pass,fail,skipped"
    assert "TH_HALF,2,2,0,0" in csv


def test_every_lemma_id_has_a_check(named_graphs):
    g = named_graphs["petersen"]
    for lemma in LemmaId:
        inst = Instance("petersen", g)
        ps = params_for(lemma, inst)
        assert ps, f"{lemma} produced no parameter slots at all"
        rep = check(lemma, g, instance="petersen")
        assert rep.verdict in ("Pass", "Fail", "Skipped")


def test_twisted_instances_are_hinted():
    insts = twisted_instances(6, seed=3, n_lo=4, n_hi=12)
    assert all(i.hint("known_twisted") for i in insts)
    reports = sweep([LemmaId.LM_TWISTED_NUM, LemmaId.LM_TWISTED_BIS], insts, fail_fast=True)
    assert all(r.verdict == "Pass" for r in reports)
