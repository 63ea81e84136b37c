import random

import pytest

from crownkernel import (
    CAPACITY,
    CrownDecomposition,
    Graph,
    INDEX_CODING,
    K0,
    MINRANK,
    apply_crown_rule,
    apply_isolated_rule,
    kernelize,
    lift_value,
    replay_trace,
    verify_trace,
)
from crownkernel.exact import (
    build_confusion_graph,
    independence_number,
    index_coding_length,
    minrank,
    storage_capacity_alpha,
)
from crownkernel.generators import gen_crown_planted
from crownkernel.kernel import CrownReduction, IsolatedRemoval

from conftest import all_labeled_graphs, complete, empty, random_graph, star


class TestIsolatedRule:
    def test_edgeless(self):
        g2, removed = apply_isolated_rule(empty(4))
        assert g2 == K0 and removed == {0, 1, 2, 3}

    def test_k2_plus_isolated(self):
        g2, removed = apply_isolated_rule(Graph.from_edges(3, [(0, 1)]))
        assert g2.n == 2 and g2.m == 1 and removed == {2}

    def test_no_isolated(self):
        g = complete(5)
        g2, removed = apply_isolated_rule(g)
        assert g2 == g and removed == set()


class TestCrownRule:
    def test_small_star_empty_body(self):
        g = star(3)
        dec = CrownDecomposition(
            crown=frozenset({1, 2}), head=frozenset({0}), body=frozenset(),
            witness=((0, 1),),
        )
        g2, k2 = apply_crown_rule(g, dec, 2)
        assert g2 == K0 and k2 == 1

    def test_star5_with_body(self):
        g = star(5)
        dec = CrownDecomposition(
            crown=frozenset({2, 3, 4}), head=frozenset({0}), body=frozenset({1}),
            witness=((0, 2),),
        )
        g2, k2 = apply_crown_rule(g, dec, 2)
        assert g2.n == 1 and g2.m == 0 and k2 == 1

    def test_k_equals_head_size(self):
        g = star(3)
        dec = CrownDecomposition(
            crown=frozenset({1, 2}), head=frozenset({0}), body=frozenset(),
            witness=((0, 1),),
        )
        assert apply_crown_rule(g, dec, 1)[1] == 0

    def test_invalid_crown_rejected(self):
        g = star(4)
        dec = CrownDecomposition(
            crown=frozenset({0}), head=frozenset({1}), body=frozenset({2, 3}),
            witness=((1, 0),),
        )
        with pytest.raises(ValueError):
            apply_crown_rule(g, dec, 2)


class TestKernelize:
    def test_k_zero_returns_sentinel(self):
        kernel, kk, trace = kernelize(complete(5), 0)
        assert kernel == K0 and kk == 0
        assert trace.steps == () and not trace.short_circuit

    def test_negative_k_same_as_zero(self):
        kernel, kk, trace = kernelize(complete(5), -3)
        assert kernel == K0 and kk == 0 and trace.steps == ()

    def test_star6_trace(self):
        kernel, kk, trace = kernelize(star(6), 2)
        assert kernel == K0 and kk == 1
        kinds = [step.kind for step in trace.steps]
        assert kinds == ["crown", "isolated"]
        crown_step = trace.steps[0]
        assert len(crown_step.head) == 1 and len(crown_step.crown) == 4
        assert trace.capacity_offset == 1 and trace.dual_offset == 5

    def test_k2_matching_short_circuit(self):
        kernel, kk, trace = kernelize(Graph.from_edges(2, [(0, 1)]), 1)
        assert kernel == K0 and kk == 0 and trace.short_circuit

    def test_kernel_bound_random(self):
        rng = random.Random(4)
        for _ in range(150):
            g = random_graph(rng, rng.randint(0, 30), rng.choice([0.05, 0.15, 0.4]))
            k = rng.randint(0, 8)
            kernel, kk, trace = kernelize(g, k)
            assert trace.kernel_n == kernel.n
            assert trace.kernel_k == kk <= max(k, 0)
            assert kernel.n <= max(3 * kk - 3, 0)
            if trace.short_circuit:
                assert kernel.n == 0 and kk == 0

    def test_replay_reproduces_kernel(self):
        rng = random.Random(5)
        for _ in range(100):
            g = random_graph(rng, rng.randint(0, 25), rng.choice([0.1, 0.3]))
            k = rng.randint(1, 6)
            kernel, _, trace = kernelize(g, k)
            if not trace.short_circuit:
                assert replay_trace(g, trace) == kernel
            assert verify_trace(g, trace) is None

    def test_decision_preservation_small(self):
        # kernel equivalence against direct confusion-graph solving, n <= 4
        for g in all_labeled_graphs(4):
            alpha = independence_number(build_confusion_graph(g, 2).graph)
            ind = index_coding_length(g, 2)
            mr = minrank(g, 2)
            for k in range(5):
                kernel, kk, trace = kernelize(g, k)
                sc_direct = alpha >= 2**k
                if trace.short_circuit:
                    assert sc_direct
                    assert ind <= g.n - k
                    assert mr <= g.n - k
                else:
                    alpha_kernel = independence_number(
                        build_confusion_graph(kernel, 2).graph
                    )
                    assert sc_direct == (alpha_kernel >= 2**kk)
                    assert (ind <= g.n - k) == (
                        index_coding_length(kernel, 2) <= kernel.n - kk
                    )
                    assert (mr <= g.n - k) == (minrank(kernel, 2) <= kernel.n - kk)


class TestLiftValue:
    def _star6_value_trace(self):
        from crownkernel.pipeline import _value_mode_reduce

        residual, trace = _value_mode_reduce(star(6), 2)
        return residual, trace

    def test_star6_dual_lift(self):
        residual, trace = self._star6_value_trace()
        ind_kernel = index_coding_length(residual, 2)
        assert lift_value(trace, ind_kernel, INDEX_CODING) == 5
        mr_kernel = minrank(residual, 2)
        assert lift_value(trace, mr_kernel, MINRANK) == 5

    def test_star6_capacity_lift(self):
        residual, trace = self._star6_value_trace()
        alpha_kernel = storage_capacity_alpha(residual, 2)
        assert lift_value(trace, alpha_kernel, CAPACITY) == 2  # Capa = 1 = log2(2)

    def test_empty_trace_is_identity(self):
        _, _, trace = kernelize(complete(4), 3, q=2)
        if not trace.short_circuit:
            assert lift_value(trace, 7, INDEX_CODING) == 7

    def test_short_circuit_refused(self):
        _, _, trace = kernelize(Graph.from_edges(2, [(0, 1)]), 1, q=2)
        assert trace.short_circuit
        with pytest.raises(ValueError):
            lift_value(trace, 1, CAPACITY)


class TestRuleEqualities:
    def test_isolated_rule_lemma_small(self):
        # per removed vertex: alpha unchanged, chi doubles, minrank increments
        from crownkernel.exact import chromatic_number

        for base in all_labeled_graphs(3):
            g = Graph(base.n + 1, base.adj + (0,))
            g2, removed = apply_isolated_rule(g)
            assert removed  # vertex 3 is always isolated here
            conf_g = build_confusion_graph(g, 2).graph
            conf_g2 = build_confusion_graph(g2, 2).graph
            assert independence_number(conf_g) == independence_number(conf_g2)
            assert chromatic_number(conf_g) == 2 ** len(removed) * chromatic_number(
                conf_g2
            )
            assert minrank(g, 2) == minrank(g2, 2) + len(removed)

    def test_crown_rule_lemma_planted(self):
        rng = random.Random(11)
        for _ in range(15):
            c, h = rng.randint(1, 3), 1
            r = rng.randint(0, 6 - c - h)
            g, dec = gen_crown_planted(c, max(h, 1), r, rng)
            body_graph, k2 = apply_crown_rule(g, dec, 3)
            assert k2 == 3 - len(dec.head)
            assert storage_capacity_alpha(g, 2) == storage_capacity_alpha(
                body_graph, 2
            ) * 2 ** len(dec.head)
            assert index_coding_length(g, 2) == index_coding_length(body_graph, 2) + c
            assert minrank(g, 2) == minrank(body_graph, 2) + c


def test_verify_trace_detects_tampering():
    g = star(6)
    _, _, trace = kernelize(g, 2)
    import dataclasses

    bad = dataclasses.replace(trace, kernel_n=trace.kernel_n + 1)
    assert verify_trace(g, bad) is not None
    bad_offsets = dataclasses.replace(trace, dual_offset=trace.dual_offset + 1)
    assert verify_trace(g, bad_offsets) is not None
