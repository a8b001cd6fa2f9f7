import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hultman.bruhat import bruhat_leq, rank_grid, window_leq, window_rank
from hultman.diagrams import (
    CoessBox,
    basic_element,
    basic_element_bruteforce,
    coessential_set,
    count_reduced_words,
    coxeter_coessential,
    diagram,
    has_unique_reduced_word,
    hull_bounds,
    hull_equiv_check,
    hull_windows,
    HullBudgetExceeded,
    identity_rank,
    in_hull,
    is_defined_by_inclusions,
    is_defined_by_pseudo_inclusions,
    reduced_coessential,
    reduced_coessential_closed_form,
    satisfies_relaxed_right_hull,
    satisfies_right_hull,
)
from hultman.groups import (
    Element,
    compose,
    context,
    coxeter_length,
    inversion_count,
    parse_element,
)

A4 = context("A", 4)
A5 = context("A", 5)
A9 = context("A", 9)
B2 = context("B", 2)
B3 = context("B", 3)


def boxes(w):
    return [(b.p, b.q, b.r) for b in coessential_set(w)]


@given(st.permutations(list(range(1, 7))))
@settings(max_examples=60)
def test_diagram_size_complements_inversions(perm):
    w = Element(tuple(perm), context("A", 6))
    assert len(diagram(w)) == 15 - inversion_count(w.window)


@given(st.permutations(list(range(1, 7))))
@settings(max_examples=60)
def test_coessential_boxes_are_northeast_corners(perm):
    w = Element(tuple(perm), context("A", 6))
    d = diagram(w)
    corners = {
        (p, q) for (p, q) in d if (p - 1, q) not in d and (p, q + 1) not in d
    }
    assert {(b.p, b.q) for b in coessential_set(w)} == corners


def test_coessential_examples():
    w = parse_element("819372564", A9)
    assert boxes(w) == [(2, 2, 1), (4, 4, 2), (4, 6, 3), (6, 7, 3), (9, 2, 0)]
    # the identity's diagram is the full sub-diagonal staircase, so its
    # coessential boxes are (q+1, q) with rank 0
    assert boxes(A9.identity) == [(q + 1, q, 0) for q in range(1, 9)]
    assert boxes(parse_element("362514", B3)) == [(4, 1, 0), (4, 3, 1), (4, 5, 2)]


def test_coessential_determines_interval_minimally():
    # Fulton's lemma: E(w) determines [id, w], and no proper subset does
    ctx = A5
    for w in ctx.elements:
        full = boxes(Element(w.window, ctx))
        for drop in range(len(full)):
            subset = full[:drop] + full[drop + 1 :]
            agrees = all(
                all(window_rank(u.window, p, q) <= r for p, q, r in subset)
                == bruhat_leq(u, w)
                for u in ctx.elements
            )
            assert not agrees, (str(w), full[drop])


def test_defined_by_inclusions_examples():
    assert is_defined_by_inclusions(A4.identity)
    assert not is_defined_by_inclusions(parse_element("819372564", A9))
    assert not is_defined_by_inclusions(parse_element("362514", B3))


def test_pseudo_inclusions_examples():
    assert is_defined_by_pseudo_inclusions(B3.identity)
    assert is_defined_by_pseudo_inclusions(parse_element("362514", B3))
    assert not is_defined_by_pseudo_inclusions(parse_element("426153", B3))
    with pytest.raises(ValueError):
        is_defined_by_pseudo_inclusions(A4.identity)


def test_ne_edge_box_lemma():
    # r_w(p,q) = q-p+1 iff w(k) >= p for all k > q iff {1..p-1} is hit by q
    for w in A5.elements:
        grid = rank_grid(w)
        for p in range(1, 6):
            for q in range(1, 6):
                a = grid[p - 1][q - 1] == q - p + 1
                b = all(w.window[k] >= p for k in range(q, 5))
                c = set(range(1, p)) <= set(w.window[:q])
                assert a == b == c


def test_hull_bounds_and_membership():
    w = parse_element("819372564", A9)
    u = parse_element("168523479", A9)
    assert in_hull(w, w)
    assert in_hull(u, w)
    assert not bruhat_leq(u, w)  # in the hull but not below: hull fails


def test_identity_hull_is_forced():
    bounds = hull_bounds(A5.identity)
    assert bounds.lo == bounds.hi == (1, 2, 3, 4, 5)
    assert list(hull_windows(bounds)) == [(1, 2, 3, 4, 5)]


@given(st.sampled_from(list(B3.elements)), st.sampled_from(list(B3.elements)))
@settings(max_examples=100)
def test_below_implies_in_hull(u, w):
    if bruhat_leq(u, w):
        assert in_hull(u, w)


def test_right_hull_examples():
    assert satisfies_right_hull(A5.identity)
    assert not satisfies_right_hull(parse_element("819372564", A9))
    assert not satisfies_right_hull(parse_element("4231", A4))
    assert satisfies_right_hull(parse_element("3412", A4))


def test_right_hull_matches_pattern_theorem_on_s5():
    # Sjostrand: right hull holds iff 4231, 35142, 42513 are avoided
    from hultman.patterns import classical_contains

    pats = [parse_element("4231", A4), parse_element("35142", A5),
            parse_element("42513", A5)]
    for w in A5.elements:
        avoids = all(classical_contains(w, v) is None for v in pats)
        assert satisfies_right_hull(w) == avoids


def test_relaxed_right_hull_examples():
    assert satisfies_relaxed_right_hull(B3.identity)
    assert satisfies_relaxed_right_hull(parse_element("362514", B3))
    assert not satisfies_relaxed_right_hull(parse_element("426153", B3))


def test_hull_budget_raises():
    w0 = context("B", 3).longest_element
    with pytest.raises(HullBudgetExceeded):
        satisfies_right_hull(w0, node_budget=10)


def test_hull_equiv_check():
    # the hull is exactly the identity-bound coessential conditions
    for w in A4.elements:
        assert hull_equiv_check(w)
    assert hull_equiv_check(parse_element("819372564", A9), sample=300)


def test_hull_equiv_matches_inclusion_equivalence_on_s5():
    # right hull condition iff defined by inclusions
    for w in A5.elements:
        assert satisfies_right_hull(w) == is_defined_by_inclusions(w)


def test_basic_element_b3_values():
    assert str(basic_element(3, 2, 1, B3)) == "351624"
    assert str(basic_element(5, 4, 1, B3)) == "351624"
    assert str(basic_element(5, 2, 0, B3)) == "153426"
    assert str(basic_element(3, 4, 2, B3)) == "153426"
    assert str(basic_element(4, 3, 1, B3)) == "145236"


def test_basic_element_infeasible():
    with pytest.raises(ValueError):
        basic_element(2, 1, 3, A4)


@pytest.mark.parametrize("ctx", [A4, A5])
def test_basic_element_minimality_type_a(ctx):
    seen = set()
    for w in ctx.elements:
        for b in coessential_set(w):
            seen.add((b.p, b.q, b.r))
    for p, q, r in sorted(seen):
        assert basic_element(p, q, r, ctx) == basic_element_bruteforce(p, q, r, ctx)


@pytest.mark.parametrize("ctx", [B2, B3])
def test_basic_element_minimality_type_b(ctx):
    seen = set()
    for w in ctx.elements:
        for b in coessential_set(w):
            seen.add((b.p, b.q, b.r))
    for p, q, r in sorted(seen):
        assert basic_element(p, q, r, ctx) == basic_element_bruteforce(p, q, r, ctx)


def test_basic_element_b2_boundary_case():
    # the minimal u in B_2 with r_u(3,2) = 2, checked against brute force
    assert basic_element(3, 2, 1, B2) == basic_element_bruteforce(3, 2, 1, B2)


def test_reduced_coessential_examples():
    w = parse_element("426153", B3)
    assert [(b.p, b.q) for b in reduced_coessential(w)] == [(3, 4), (5, 2)]
    # no staircase pair of the identity is removable: dropping the pair at
    # columns q, 2n-q re-admits the generator (q q+1)(2n-q 2n+1-q)
    assert reduced_coessential(B3.identity) == coessential_set(B3.identity)


def _minimal_symmetric_subsets_bruteforce(w):
    """All symmetric subsets of E(w) whose conditions cut out [id, w] in B_n,
    returned as the minimal ones under inclusion."""
    n = w.ctx.rank
    all_boxes = {(b.p, b.q): b.r for b in coessential_set(w)}
    orbits = []
    seen = set()
    for pq in sorted(all_boxes):
        if pq not in seen:
            orbit = {pq, (2 * n + 2 - pq[0], 2 * n - pq[1])}
            seen |= orbit
            orbits.append(tuple(sorted(orbit)))
    below = {v.window for v in w.ctx.elements if window_leq(v.window, w.window)}
    valid_sets = []
    for k in range(len(orbits) + 1):
        for combo in itertools.combinations(orbits, k):
            active = {pq for orbit in combo for pq in orbit}
            tests = [(p, q, all_boxes[(p, q)]) for p, q in active]
            ok = all(
                all(window_rank(v.window, p, q) <= r for p, q, r in tests)
                == (v.window in below)
                for v in w.ctx.elements
            )
            if ok:
                valid_sets.append(active)
    minimal = [
        s for s in valid_sets if not any(t < s for t in valid_sets)
    ]
    return minimal


@pytest.mark.parametrize("text", ["362514", "426153", "546132", "563412", "123456"])
def test_reduced_coessential_is_unique_minimal(text):
    w = parse_element(text, B3)
    minimal = _minimal_symmetric_subsets_bruteforce(w)
    assert len(minimal) == 1
    assert {(b.p, b.q) for b in reduced_coessential(w)} == minimal[0]


@pytest.mark.parametrize("ctx", [B2, B3])
def test_coessential_sets_are_centrally_symmetric(ctx):
    n = ctx.rank
    for w in ctx.elements:
        for getter in (coessential_set, reduced_coessential):
            pqs = {(b.p, b.q) for b in getter(w)}
            assert pqs == {(2 * n + 2 - p, 2 * n - q) for p, q in pqs}


@pytest.mark.parametrize("ctx", [B2, B3])
def test_closed_form_with_corrected_domain_matches_oracle(ctx):
    for w in ctx.elements:
        corrected = reduced_coessential_closed_form(
            w, offset="p-n-1", strict_domain=False
        )
        assert corrected == reduced_coessential(w)


def test_literal_closed_form_misses_the_worked_example():
    # with the strict p,q < n domain the (3,2)/(5,4) pair survives, so the
    # literal reading disagrees with the minimality oracle
    w = parse_element("426153", B3)
    literal = reduced_coessential_closed_form(w, offset="p-n-1", strict_domain=True)
    assert literal != reduced_coessential(w)


def test_other_published_offsets_disagree_somewhere_on_b3():
    oracle_differs = {"n-p+1": False, "p-q-1": False}
    for w in B3.elements:
        target = reduced_coessential(w)
        for offset in oracle_differs:
            got = reduced_coessential_closed_form(w, offset=offset, strict_domain=False)
            if got != target:
                oracle_differs[offset] = True
    assert oracle_differs["n-p+1"]
    assert oracle_differs["p-q-1"]


def test_reduced_word_counts():
    for s in B3.generators:
        assert count_reduced_words(s) == 1
    assert count_reduced_words(parse_element("153426", B3)) == 1
    assert count_reduced_words(parse_element("351624", B3)) == 2
    assert has_unique_reduced_word(parse_element("153426", B3))
    assert not has_unique_reduced_word(parse_element("351624", B3))


def test_reduced_word_counts_against_word_enumeration():
    # count all generator sequences of minimal length multiplying to w
    def enumerate_words(w):
        length = coxeter_length(w)
        ctx = w.ctx
        count = 0
        stack = [(ctx.identity, 0)]
        while stack:
            el, used = stack.pop()
            if used == length:
                count += el == w
                continue
            for s in ctx.generators:
                nxt = compose(el, s)
                if coxeter_length(nxt) == used + 1:
                    stack.append((nxt, used + 1))
        return count

    for w in B2.elements:
        assert count_reduced_words(w) == enumerate_words(w)
    for text in ["153426", "351624", "145236"]:
        w = parse_element(text, B3)
        assert count_reduced_words(w) == enumerate_words(w)


def test_coxeter_coessential_examples():
    assert coxeter_coessential(B3.longest_element) == ()
    assert set(coxeter_coessential(B3.identity)) == set(B3.generators)
    assert [str(v) for v in coxeter_coessential(parse_element("426153", B3))] == [
        "153426"
    ]


def test_coxeter_coessential_elements_are_minimal_nonbelow():
    for w in B2.elements:
        ess = coxeter_coessential(w)
        for v in ess:
            assert not bruhat_leq(v, w)
            below_v = [
                u
                for u in B2.elements
                if u != v and bruhat_leq(u, v) and not bruhat_leq(u, w)
            ]
            assert not below_v


def test_anderson_parameterization_on_b3():
    # E'(w) boxes and their basic elements recover the minimal non-below set
    for w in B3.elements:
        expected = {
            basic_element(b.p, b.q, b.r, B3) for b in reduced_coessential(w)
        }
        assert set(coxeter_coessential(w)) == expected


def test_inclusion_equivalence_via_unique_words_type_a():
    # defined by inclusions iff every minimal non-below element has a
    # unique reduced expression
    for w in A5.elements:
        unique = all(has_unique_reduced_word(v) for v in coxeter_coessential(w))
        assert unique == is_defined_by_inclusions(w)


def test_pseudo_inclusion_equivalence_via_unique_words_type_b():
    # the criterion runs over all of E(w), not E'(w)
    for w in B3.elements:
        unique = all(
            has_unique_reduced_word(basic_element(b.p, b.q, b.r, B3))
            for b in coessential_set(w)
        )
        assert unique == is_defined_by_pseudo_inclusions(w)


def test_identity_rank_helper():
    assert identity_rank(4, 4) == 1
    assert identity_rank(9, 2) == 0
    assert CoessBox(2, 2, 1).r == 1
