import random
from dataclasses import replace
from fractions import Fraction

import pytest

from conftest import random_connected_graph
from rgcost.certificate import (
    AmalgamDescriptor,
    AmalgamNode,
    AmenableLeaf,
    Certificate,
    CitedFactLeaf,
    FiniteLeaf,
    GenerationNode,
    InfiniteCenterLeaf,
    NormalSubgroupNode,
    builtin_certificate,
    certificate_from_json,
    certificate_to_json,
    check_certificate,
    decompose_artin,
    edge_center_word,
    lickorish_sequence,
    rg_artin,
)
from rgcost.groupexpr import ArtinGraph, evaluate
from rgcost.lgraph import GraphError, components, parse_graph


class TestEdgeCenterWord:
    @pytest.mark.parametrize("label,exponent", [(2, 1), (3, 3), (4, 2), (5, 5), (6, 3)])
    def test_values(self, label, exponent):
        assert edge_center_word(label) == exponent

    def test_rejects_small_labels(self):
        with pytest.raises(ValueError):
            edge_center_word(1)


class TestDecompose:
    def test_single_vertex(self):
        g = parse_graph("vertex a\n")
        node = decompose_artin(g)
        assert isinstance(node, AmenableLeaf)
        assert node.cost == 1

    def test_single_edge(self):
        g = parse_graph("vertex a\nvertex b\nedge a b 5\n")
        node = decompose_artin(g)
        assert isinstance(node, InfiniteCenterLeaf)
        assert node.exponent == 5
        assert node.cost == 1

    def test_path_splits_at_cut_vertex(self):
        g = parse_graph("vertex a\nvertex b\nvertex c\nedge a b 3\nedge b c 3\n")
        node = decompose_artin(g)
        assert isinstance(node, AmalgamNode)
        assert node.amalgam.kind == "vertex" and node.amalgam.vertex == "b"
        assert isinstance(node.left, InfiniteCenterLeaf)
        assert isinstance(node.right, InfiniteCenterLeaf)
        assert node.cost == 1

    def test_cycle_uses_generation(self):
        g = parse_graph(
            "vertex a\nvertex b\nvertex c\nedge a b 2\nedge b c 2\nedge a c 2\n"
        )
        node = decompose_artin(g)
        assert isinstance(node, GenerationNode)
        assert node.witness_vertex == "b"  # smallest-index neighbour of a
        assert set(node.left.vertices) == {"a", "b"}
        assert set(node.right.vertices) == {"b", "c"}

    def test_rejects_disconnected(self):
        g = parse_graph("vertex a\nvertex b\n")
        with pytest.raises(GraphError):
            decompose_artin(g)

    def test_round_trip_random(self):
        rng = random.Random(47)
        done = 0
        while done < 60:
            g = random_connected_graph(rng, n_min=1, n_max=12)
            if len(components(g)) != 1:
                continue
            node = decompose_artin(g)
            report = check_certificate(node, g)
            assert report.valid, report.violations
            assert not report.assumptions
            assert node.cost == 1
            done += 1

    def test_determinism(self):
        rng = random.Random(53)
        for _ in range(20):
            g = random_connected_graph(rng, n_min=2, n_max=10)
            cert1 = Certificate(root=decompose_artin(g), target="t", graph=g)
            cert2 = Certificate(root=decompose_artin(g), target="t", graph=g)
            assert certificate_to_json(cert1) == certificate_to_json(cert2)

    def test_generation_vertex_bookkeeping(self):
        rng = random.Random(59)

        def walk(node):
            if isinstance(node, GenerationNode):
                wa, wb = set(node.left.vertices), set(node.right.vertices)
                assert wa | wb == set(node.vertices)
                assert len(wa & wb) == 1
                walk(node.left)
                walk(node.right)
            elif isinstance(node, AmalgamNode):
                walk(node.left)
                walk(node.right)

        for _ in range(40):
            g = random_connected_graph(rng, n_min=3, n_max=10)
            walk(decompose_artin(g))


class TestRgArtin:
    def test_connected_path(self):
        g = parse_graph("vertex a\nvertex b\nvertex c\nedge a b 3\nedge b c 3\n")
        price, cert = rg_artin(g)
        assert price.cost == 1 and price.rank_gradient == 0
        assert check_certificate(cert).valid

    def test_two_isolated_vertices_is_f2(self):
        g = parse_graph("vertex a\nvertex b\n")
        price, cert = rg_artin(g)
        assert price.rank_gradient == 1
        assert check_certificate(cert).valid

    def test_three_components(self):
        g = parse_graph("vertex a\nvertex b\nvertex c\n")
        price, _ = rg_artin(g)
        assert price.rank_gradient == 2
        assert price.cost == 3

    def test_matches_groupexpr(self):
        rng = random.Random(61)
        for _ in range(30):
            g = random_connected_graph(rng, n_min=1, n_max=9)
            price, _ = rg_artin(g)
            assert price.rank_gradient == 0
            assert price.rank_gradient == evaluate(ArtinGraph(g)).rank_gradient

    def test_certificate_carries_caveat(self):
        g = parse_graph("vertex a\n")
        _, cert = rg_artin(g)
        assert cert.caveat and "finite-index" in cert.caveat


class TestChecker:
    def test_tampered_cost_is_violation(self):
        g = parse_graph("vertex a\nvertex b\nvertex c\nedge a b 3\nedge b c 3\n")
        node = decompose_artin(g)
        bad = replace(node, cost=Fraction(2))
        report = check_certificate(bad, g)
        assert not report.valid
        assert any("claimed cost" in v for v in report.violations)

    def test_disjoint_generation_children(self):
        left = InfiniteCenterLeaf(endpoints=("a", "b"), label=2, exponent=1, cost=Fraction(1))
        right = InfiniteCenterLeaf(endpoints=("c", "d"), label=2, exponent=1, cost=Fraction(1))
        node = GenerationNode(left=left, right=right, witness="none",
                              cost=Fraction(1), vertices=("a", "b", "c", "d"))
        report = check_certificate(node)
        assert any("empty intersection" in v for v in report.violations)

    def test_amalgam_arithmetic_with_order_two_subgroup(self):
        node = AmalgamNode(
            left=AmenableLeaf(name="A", reason="declared", cost=Fraction(1)),
            right=AmenableLeaf(name="B", reason="declared", cost=Fraction(1)),
            amalgam=AmalgamDescriptor(kind="finite", order=2, name="C"),
            cost=Fraction(3, 2),
        )
        assert check_certificate(node).valid

    def test_wrong_center_exponent(self):
        leaf = InfiniteCenterLeaf(endpoints=("a", "b"), label=4, exponent=4, cost=Fraction(1))
        report = check_certificate(leaf)
        assert any("exponent" in v for v in report.violations)

    def test_finite_leaf_cost(self):
        assert check_certificate(FiniteLeaf(order=6, cost=Fraction(5, 6))).valid
        assert not check_certificate(FiniteLeaf(order=6, cost=Fraction(1, 2))).valid

    def test_normal_subgroup_node(self):
        ok = NormalSubgroupNode(
            ambient="G", subgroup="C", hypothesis="infinite-centre",
            reason="centre contains an infinite-order element", cost=Fraction(1))
        assert check_certificate(ok).valid
        bad = replace(ok, hypothesis="because")
        assert not check_certificate(bad).valid

    def test_checker_recomputes_from_children(self):
        # consistent-looking parent over a tampered child must be caught
        g = parse_graph("vertex a\nvertex b\nvertex c\nedge a b 3\nedge b c 3\n")
        node = decompose_artin(g)
        bad_child = replace(node.left, cost=Fraction(2))
        bad = replace(node, left=bad_child, cost=Fraction(2))  # 2 + 1 - 1 = 2: "consistent"
        report = check_certificate(bad, g)
        assert not report.valid


class TestBuiltins:
    def test_sl2z(self):
        cert = builtin_certificate("SL2Z")
        report = check_certificate(cert)
        assert report.valid
        assert len(report.assumptions) == 0
        assert cert.root.cost == Fraction(13, 12)
        assert cert.root.cost - 1 == Fraction(1, 12)

    def test_lickorish_sequence_length(self):
        assert lickorish_sequence(2) == ("m1", "a1", "c1", "a2", "m2")
        assert lickorish_sequence(3) == (
            "m1", "a1", "c1", "a2", "m2", "a2", "c2", "a3", "m3")

    @pytest.mark.parametrize("genus,count", [(2, 4), (3, 7), (4, 10)])
    def test_mcg_assumption_counts(self, genus, count):
        cert = builtin_certificate("MCG", genus)
        report = check_certificate(cert)
        assert report.valid, report.violations
        assert len(report.assumptions) == count == 3 * genus - 2
        assert cert.root.cost == 1

    @pytest.mark.parametrize("n,count", [(2, 1), (3, 3), (4, 4)])
    def test_autfn_assumption_counts(self, n, count):
        cert = builtin_certificate("AutFn", n)
        report = check_certificate(cert)
        assert report.valid, report.violations
        assert len(report.assumptions) == count
        assert cert.root.cost == 1

    @pytest.mark.parametrize("n,count", [(3, 3), (4, 2)])
    def test_outfn_assumption_counts(self, n, count):
        cert = builtin_certificate("OutFn", n)
        report = check_certificate(cert)
        assert report.valid, report.violations
        assert len(report.assumptions) == count

    def test_outfn3_mentions_alpha_intersection(self):
        report = check_certificate(builtin_certificate("OutFn", 3))
        assert any("Xbar n Zbar >= <alphabar> is infinite" in a for a in report.assumptions)

    def test_bn_mod_center(self):
        cert = builtin_certificate("BnModCenter", 4)
        report = check_certificate(cert)
        assert report.valid
        assert len(report.assumptions) == 2
        assert cert.root.cost == 1

    def test_autf2_alias(self):
        cert = builtin_certificate("AutF2")
        assert check_certificate(cert).valid

    @pytest.mark.parametrize("name,param", [
        ("MCG", 1), ("AutFn", 1), ("OutFn", 2), ("BnModCenter", 3), ("nope", None),
        ("MCG", None),
    ])
    def test_out_of_range(self, name, param):
        with pytest.raises(ValueError):
            builtin_certificate(name, param)


class TestJson:
    def test_round_trip_artin(self):
        g = parse_graph("vertex a\nvertex b\nvertex c\nedge a b 4\nedge b c 6\n")
        _, cert = rg_artin(g)
        text = certificate_to_json(cert)
        back = certificate_from_json(text)
        assert certificate_to_json(back) == text
        assert check_certificate(back).valid

    def test_round_trip_builtins(self):
        for name, param in [("SL2Z", None), ("MCG", 3), ("AutFn", 3),
                            ("OutFn", 3), ("BnModCenter", 4)]:
            cert = builtin_certificate(name, param)
            text = certificate_to_json(cert)
            back = certificate_from_json(text)
            assert certificate_to_json(back) == text
            r1, r2 = check_certificate(cert), check_certificate(back)
            assert r1.valid == r2.valid
            assert r1.assumptions == r2.assumptions

    def test_external_cost_strings_are_fractions(self):
        cert = builtin_certificate("SL2Z")
        assert '"claimed_cost": "13/12"' in certificate_to_json(cert)

    def test_rejects_unknown_format(self):
        with pytest.raises(ValueError):
            certificate_from_json('{"format": "other", "root": {}}')

    def test_rejects_unknown_node_kind(self):
        bad = ('{"format": "rgcost-certificate/1", "target": "", "claimed_cost": "1", '
               '"citations": [], "caveat": null, "graph": null, '
               '"root": {"kind": "mystery", "cost": "1"}}')
        with pytest.raises(ValueError):
            certificate_from_json(bad)
