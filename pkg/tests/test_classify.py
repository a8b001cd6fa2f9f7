import json

import pytest

from hultman.bruhat import bruhat_graph, bruhat_leq, directed_distances_to
from hultman.classify import (
    ALL_CONDITIONS,
    CONDITION_NAMES,
    REFERENCE_WITNESS_ROWS,
    classify,
    find_minimal_non_hultman,
    verify_equivalence,
    witness_table,
)
from hultman.groups import context, parse_element
from hultman.patterns import condition5_patterns

B2 = context("B", 2)
B3 = context("B", 3)


def test_condition_names_cover_the_theorem():
    assert [CONDITION_NAMES[i] for i in ALL_CONDITIONS] == [
        "chambers",
        "distance",
        "pseudo_inclusions",
        "relaxed_hull",
        "bp_avoidance",
    ]


def test_classify_hultman_element():
    report = classify(parse_element("362514", B3))
    assert report.conditions == {name: True for name in report.conditions}
    assert report.consistent and report.is_hultman


def test_classify_non_hultman_element():
    report = classify(parse_element("426153", B3))
    assert set(report.conditions.values()) == {False}
    assert report.consistent and report.is_hultman is False
    assert report.c == 18 and report.s == 20
    u, ld, lt = report.distance_witness
    assert str(u) == "132546" and (ld, lt) == (4, 2)
    assert report.violations and report.matched_pattern is not None
    assert str(report.matched_pattern[0]) == "426153"


def test_classify_identity():
    report = classify(B3.identity)
    assert all(v is True for v in report.conditions.values())


def test_classify_subset_of_conditions():
    report = classify(parse_element("4231", context("A", 4)), (1, 3))
    assert set(report.conditions) == {"chambers", "pseudo_inclusions"}
    assert report.c == 18 and report.s == 20


def test_classify_type_a_uses_plain_inclusions_and_hull():
    report = classify(parse_element("3412", context("A", 4)))
    assert all(v is True for v in report.conditions.values())


def test_classify_json_schema():
    report = classify(parse_element("426153", B3))
    doc = report.to_json_dict()
    assert doc["element"] == "426153"
    assert doc["family"] == "B" and doc["rank"] == 3
    assert set(doc["conditions"]) == set(CONDITION_NAMES.values())
    assert doc["witnesses"] == [{"u": "132546", "lD": 4, "lT": 2}]
    assert {"p": 3, "q": 2, "r": 1} in doc["violations"]
    assert doc["matched_pattern"]["pattern"] == "426153"
    json.dumps(doc)  # must be serializable


def test_verify_rank_one_groups():
    for fam in ("A", "B"):
        summary = verify_equivalence(context(fam, 1))
        assert summary.ok
        assert summary.hultman_count == summary.total


def test_verify_b2():
    summary = verify_equivalence(B2)
    assert summary.ok
    assert summary.total == 8 and summary.hultman_count == 8


def test_verify_b3_counts():
    summary = verify_equivalence(B3)
    assert summary.ok
    assert summary.total == 48
    # exactly the ten listed B_3 patterns fail
    assert summary.hultman_count == 38


def test_verify_with_sampled_hull():
    summary = verify_equivalence(B3, hull_samples=200, seed=3)
    assert summary.ok
    # sampling is one-sided: hull results for Hultman elements stay open
    assert summary.hull_inconclusive > 0


def test_verify_json_roundtrip():
    summary = verify_equivalence(B2, keep_reports=True)
    doc = summary.to_json_dict()
    assert doc["total"] == 8 and len(doc["elements"]) == 8
    json.dumps(doc)


def test_minimal_patterns_type_a_only():
    found = find_minimal_non_hultman(max_a=6, max_b=2)
    assert [(v.ctx.family, v.ctx.rank, str(v)) for v in found] == [
        ("A", 4, "4231"),
        ("A", 5, "35142"),
        ("A", 5, "42513"),
        ("A", 6, "351624"),
    ]


def test_minimal_patterns_b3_only():
    found = find_minimal_non_hultman(max_a=3, max_b=3)
    got = {str(v) for v in found}
    assert got == {
        "563412", "653421", "645231", "635241", "624351",
        "642531", "536142", "426153", "462513", "623451",
    }


def test_reference_rows_shape():
    assert len(REFERENCE_WITNESS_ROWS) == 45
    patterns = {(f, r, w) for f, r, w, *_ in REFERENCE_WITNESS_ROWS}
    listed = {
        (v.ctx.family, v.ctx.rank, str(v)) for v in condition5_patterns()
    }
    assert patterns == listed  # every pattern has at least one row


def test_witness_rows_for_b3_pattern():
    w = parse_element("426153", B3)
    g = bruhat_graph(B3)
    dist = directed_distances_to(g, g.index[w.window])
    from hultman.bruhat import undirected_distance

    witnesses = {
        str(u): (int(dist[i]), undirected_distance(u, w))
        for i, u in enumerate(g.elements)
        if u != w and bruhat_leq(u, w) and dist[i] != undirected_distance(u, w)
    }
    assert witnesses == {"132546": (4, 2)}


def test_witness_table_confirms_non_hultman_everywhere():
    reports = witness_table()
    assert len(reports) == 31
    assert all(rep.non_hultman_confirmed for rep in reports)


def test_witness_table_row_classification():
    reports = witness_table()
    mismatched = {
        (c.family, c.rank, c.w, c.u)
        for rep in reports
        for c in rep.row_comparisons
        if not c.matches
    }
    # the three known-bad reference rows, and nothing else
    assert mismatched == {
        ("A", 4, "4231", "2143"),
        ("A", 6, "351624", "423156"),
        ("A", 6, "351624", "126543"),
    }
    matched = sum(
        1 for rep in reports for c in rep.row_comparisons if c.matches
    )
    assert matched == 42


def test_witness_table_corrected_s4_row():
    reports = witness_table()
    rep = next(r for r in reports if str(r.pattern) == "4231")
    # 2143 is not a witness: both distances are 3
    (comp,) = rep.row_comparisons
    assert not comp.parity_consistent and not comp.is_witness
    assert comp.recomputed == (3, 3)
    # the complete witness set is {1324} with distances (4, 2)
    assert [(str(u), ld, lt) for u, ld, lt in rep.witnesses] == [("1324", 4, 2)]
    assert [(str(u), ld, lt) for u, ld, lt in rep.extra_witnesses] == [
        ("1324", 4, 2)
    ]


def test_witness_table_corrected_s6_rows():
    reports = witness_table()
    rep = next(r for r in reports if str(r.pattern) == "351624")
    assert [(str(u), ld, lt) for u, ld, lt in rep.witnesses] == [
        ("124356", 6, 4)
    ]
    by_u = {c.u: c for c in rep.row_comparisons}
    # neither listed u lies below w at all
    assert by_u["423156"].recomputed is None
    assert by_u["126543"].recomputed is None
    assert by_u["423156"].parity_consistent  # wrong in a non-parity way
    assert not by_u["126543"].parity_consistent
