import random

from crownkernel import (
    compute_values,
    decide_dual_index_coding,
    decide_dual_minrank,
    decide_storage_capacity,
)
from crownkernel.exact import (
    build_confusion_graph,
    independence_number,
    index_coding_length,
    minrank,
)

from conftest import all_labeled_graphs, complete, empty, random_graph, star


class TestDecide:
    def test_star6_examples(self):
        g = star(6)
        assert decide_storage_capacity(g, 1).answer
        assert not decide_storage_capacity(g, 2).answer
        assert decide_dual_index_coding(g, 1).answer  # Ind = 5 <= 6 - 1
        assert not decide_dual_index_coding(g, 2).answer
        assert decide_dual_minrank(g, 1).answer
        assert not decide_dual_minrank(g, 2).answer

    def test_k4_examples(self):
        g = complete(4)
        assert decide_storage_capacity(g, 3).answer  # alpha = 8 = 2**3
        assert not decide_storage_capacity(g, 4).answer
        assert decide_dual_index_coding(g, 3).answer  # Ind = 1 <= 4 - 3
        assert decide_dual_minrank(g, 3).answer
        assert not decide_dual_minrank(g, 4).answer

    def test_k_zero_always_yes(self):
        for g in (empty(3), complete(3)):
            assert decide_storage_capacity(g, 0).answer
            assert decide_dual_index_coding(g, 0).answer
            assert decide_dual_minrank(g, 0).answer

    def test_report_bookkeeping(self):
        report = decide_storage_capacity(star(6), 2)
        assert report.kernel_n == report.trace.kernel_n
        assert report.kernel_k == report.trace.kernel_k
        assert "kernelize_s" in report.timings and "solve_s" in report.timings

    def test_short_circuit_sets_yes(self):
        g = complete(40)  # matching of size 13 >= any small k
        report = decide_storage_capacity(g, 3)
        assert report.answer and report.trace.short_circuit
        assert report.confusion_size is None

    def test_monotone_in_k(self, rng):
        for _ in range(20):
            g = random_graph(rng, rng.randint(0, 7), 0.3)
            for decide in (
                decide_storage_capacity,
                decide_dual_index_coding,
                decide_dual_minrank,
            ):
                answers = [decide(g, k).answer for k in range(g.n + 2)]
                # once NO, stays NO
                assert all(a or not b for a, b in zip(answers, answers[1:]))

    def test_pipeline_matches_direct_n4(self):
        for g in all_labeled_graphs(4):
            alpha = independence_number(build_confusion_graph(g, 2).graph)
            ind = index_coding_length(g, 2)
            mr = minrank(g, 2)
            for k in range(g.n + 1):
                assert decide_storage_capacity(g, k).answer == (alpha >= 2**k)
                assert decide_dual_index_coding(g, k).answer == (ind <= g.n - k)
                assert decide_dual_minrank(g, k).answer == (mr <= g.n - k)


class TestComputeValues:
    def test_star6(self):
        report = compute_values(star(6))
        assert (report.alpha, report.index_coding_length, report.minrank) == (2, 5, 5)

    def test_k4(self):
        report = compute_values(complete(4))
        assert (report.alpha, report.index_coding_length, report.minrank) == (8, 1, 1)

    def test_empty4(self):
        report = compute_values(empty(4))
        assert (report.alpha, report.index_coding_length, report.minrank) == (1, 4, 4)
        assert report.residual_n == 0  # all vertices removed as isolated

    def test_matches_direct_small(self, rng):
        for _ in range(25):
            g = random_graph(rng, rng.randint(0, 6), rng.choice([0.15, 0.5]))
            report = compute_values(g)
            assert report.alpha == independence_number(
                build_confusion_graph(g, 2).graph
            )
            assert report.index_coding_length == index_coding_length(g, 2)
            assert report.minrank == minrank(g, 2)

    def test_duality_invariants(self, rng):
        for _ in range(25):
            g = random_graph(rng, rng.randint(0, 7), 0.3)
            r = compute_values(g)
            assert r.alpha * 2**r.index_coding_length >= 2**g.n
            assert r.index_coding_length <= r.minrank <= g.n

    def test_value_trace_is_liftable(self):
        report = compute_values(star(6))
        assert report.trace.kernel_k == 0 and not report.trace.short_circuit
