"""Acceptance suite: one test per criterion, one printed PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as the
criteria complete.  Everything here is exact: integer distances, integer
costs, rational case algebra; there are no tolerances to tune.
"""

from __future__ import annotations

import json
import random
from contextlib import contextmanager
from itertools import combinations
from math import comb

import networkx as nx

from conftest import pair, shared_from_tokens
from oracles import (
    bfs_distance,
    direct_cost_gap,
    has_clique,
    random_contraction_descendant,
    random_duplication,
    random_token_string,
)
from tdkit import (
    CesInstance,
    Graph,
    ReductionParams,
    TokenString,
    build_witness,
    ces_cost,
    ces_decide,
    ces_solve_exact,
    ces_to_td,
    clique_to_ces,
    clique_to_ces_gap,
    decide_td,
    kernelize,
    replay_witness,
    td_distance,
    verify_contraction_sequence,
)
from tdkit.cli import main as cli_main
from tdkit.reductions import closed_form_schedule_length
from tdkit.search import STATUS_FOUND, STATUS_INFEASIBLE


@contextmanager
def criterion(number: int, title: str):
    try:
        yield
    except BaseException:
        print(f"criterion {number} ({title}): FAIL")
        raise
    print(f"criterion {number} ({title}): PASS")


def test_criterion_1_two_step_reproduction():
    with criterion(1, "two-contraction example with verified witness"):
        s, t = pair("a c g", "a c g g a c g")
        res = td_distance(s, t, len(t) - len(s))
        assert res.status == STATUS_FOUND and res.distance == 2
        steps = [w.step for w in res.witness]
        check = verify_contraction_sequence(t, steps, s)
        assert check.ok and check.length == 2


def test_criterion_2_doubling_law_exhaustive():
    with criterion(2, "doubling a length-l all-distinct string costs exactly l"):
        # distances are invariant under renaming symbols, so one string per
        # length covers every all-distinct string of that length
        for length in range(1, 7):
            base = tuple(range(length))
            doubled = tuple(x for tok in base for x in (tok, tok))
            s, t = shared_from_tokens(base, doubled, alphabet_size=length)
            assert td_distance(s, t, length + 1).distance == length


def test_criterion_3_search_matches_bfs_oracle():
    with criterion(3, "500 random instances agree with the BFS oracle"):
        rng = random.Random(20240817)
        for _ in range(500):
            t_tokens = random_token_string(rng, 10, 3)
            if rng.random() < 0.5:
                s_tokens = random_contraction_descendant(rng, t_tokens, rng.randint(0, 4))
            else:
                s_tokens = random_token_string(rng, len(t_tokens), 3)
            s, t = shared_from_tokens(s_tokens, t_tokens, alphabet_size=3)
            expected = bfs_distance(s_tokens, t_tokens)
            res = td_distance(s, t, max(len(t) - len(s), 0))
            if expected is None:
                assert res.status == STATUS_INFEASIBLE
            else:
                assert res.status == STATUS_FOUND and res.distance == expected
                assert replay_witness(t, res.witness) == s


def test_criterion_4_kernel_bounds_and_equivalence():
    with criterion(4, "kernel sizes bounded and verdicts preserved on 200 instances"):
        rng = random.Random(31337)
        for _ in range(200):
            size = rng.randint(1, 6)
            base = tuple(range(size))
            cur = base
            dups = rng.randint(0, 3)
            for _ in range(dups):
                cur = random_duplication(rng, cur)
            s, t = shared_from_tokens(base, cur, alphabet_size=6)
            kern = kernelize(s, t)
            assert len(kern.s_prime) <= 2 * dups + 1
            assert len(kern.t_prime) <= (2 * dups + 1) << dups
            for k in range(5):
                assert (
                    decide_td(s, t, k).reached
                    == decide_td(kern.s_prime, kern.t_prime, k).reached
                )


def test_criterion_5_clique_reduction_equivalence_exhaustive():
    with criterion(5, "k-clique iff subgraph cost at most r, all graphs n <= 6"):
        graphs = [g for g in nx.graph_atlas_g() if 1 <= g.number_of_nodes() <= 6]
        assert len(graphs) == 208  # every graph on <= 6 vertices, up to isomorphism
        for nxg in graphs:
            n = nxg.number_of_nodes()
            edges = tuple(tuple(sorted(e)) for e in nxg.edges())
            g = Graph(n, edges)
            for k in range(2, n + 1, 2):
                out = clique_to_ces(g, k)
                assert has_clique(n, edges, k) == ces_decide(out.instance, out.r)


def test_criterion_6_case_algebra_exact():
    with criterion(6, "case algebra matches the cost formula, strict in cases 1 and 3"):
        for k in (2, 4, 6, 8):
            for h in range(1, comb(k, 2) + 1):
                gap = clique_to_ces_gap(k, 0, h, 1)
                assert gap == direct_cost_gap(k, k, h) and gap > 0
            for l in range(1, 5):
                for h in range(comb(k + l, 2) + 1):
                    gap = clique_to_ces_gap(k, l, h, 2)
                    assert gap == direct_cost_gap(k, k + l, h)
                    if k // 2 - l >= 0:
                        assert gap > 0
                    else:
                        # emptying the subset's edges drives the cost back to c*m
                        fallback = clique_to_ces_gap(k, l, comb(k + l, 2), 2)
                        assert fallback == (k // 2) * comb(k, 2) > 0
                for h in range(comb(k - l, 2) + 1) if l < k else []:
                    gap = clique_to_ces_gap(k, l, h, 3)
                    assert gap == direct_cost_gap(k, k - l, h) and gap > 0


def test_criterion_7_generated_block_distances():
    with criterion(7, "anchor and position blocks sit at their advertised distances"):
        single = Graph(2, ((0, 1),))
        for d in (2, 3):
            for c in (1, 2):
                red = ces_to_td(single, c, 0, ReductionParams(d, 1))
                n = 2
                atoms = {(a.kind, a.doubled): a for a in red.layout}
                for kind, expected in (
                    ("b0", d * c + 2 * d - 2),
                    ("b1", d * n + 2 * d - 1),
                    ("x", d),
                ):
                    plain = TokenString(red.table, atoms[(kind, False)].tokens)
                    doubled = TokenString(red.table, atoms[(kind, True)].tokens)
                    assert td_distance(plain, doubled, expected).distance == expected
                    if expected <= 9:  # BFS cross-check on the smallest blocks
                        assert bfs_distance(plain.tokens, doubled.tokens) == expected


def test_criterion_8_forward_witnesses():
    with criterion(8, "witness schedules replay, match the phase sum, and fit the budget"):
        graphs = [Graph(2, ((0, 1),))]
        pool3 = list(combinations(range(3), 2))
        for m in (1, 2, 3):
            graphs.extend(Graph(3, edges) for edges in combinations(pool3, m))
        for g in graphs:
            n, m = g.n, g.m
            for c in (2, 3):  # keeps the fixed cleanup tail under the 4cdn slack
                r = ces_solve_exact(CesInstance(g, c)).cost
                for d in (2, 3):
                    for p in (m, 2 * m):
                        red = ces_to_td(g, c, r, ReductionParams(d, p))
                        for size in range(n + 1):
                            for w in combinations(range(n), size):
                                schedule = build_witness(red, g, w)
                                check = verify_contraction_sequence(
                                    red.target, schedule, red.source
                                )
                                assert check.ok
                                expected = closed_form_schedule_length(
                                    n, m, c, red.params, len(w), g.edges_inside(w)
                                )
                                assert check.length == expected == schedule.phases.total
                                if ces_cost(CesInstance(g, c), w) <= r:
                                    assert schedule.phases.total <= red.budget


def test_criterion_9_small_scale_reductions_are_labeled(tmp_path, capsys):
    with criterion(9, "desk-scale reductions carry the forward-witness-only label"):
        red = ces_to_td(Graph(2, ((0, 1),)), 1, 0, ReductionParams(2, 1))
        assert red.fidelity == "forward-witness-only"
        graph_file = tmp_path / "g.txt"
        graph_file.write_text("2 1\n0 1\n")
        prefix = tmp_path / "red"
        code = cli_main(
            ["--json", "reduce", "ces-to-td", "--graph", str(graph_file), "--c", "1",
             "--r", "0", "--d", "2", "--p", "1", "--out-prefix", str(prefix)]
        )
        capsys.readouterr()
        assert code == 0
        manifest = json.loads((tmp_path / "red.manifest.json").read_text())
        assert manifest["fidelity"] == "forward-witness-only"
