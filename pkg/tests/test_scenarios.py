import random

import pytest

from hakensum import (AnnulusGluing, GluedPiece, GluingGraph, ScenarioError,
                      TwistVerdict, casson_gordon_scenario,
                      casson_twist_rule, doubled_handlebody_scenario,
                      gluing_graph_from_dict, handlebody_certificate)
from hakensum.schema import load_builtin

from generators import random_provable_graph
from oracles import euler_rank_genus


def genus_check(report):
    for check in report.checks:
        if check.name == "genus":
            return check
    raise AssertionError("no genus check in report")


class TestCassonGordon:
    def test_five_boxes_three_twists(self):
        _, report = casson_gordon_scenario(5, 3)
        assert report.passed
        assert genus_check(report).actual == 10

    def test_five_boxes_no_twists(self):
        _, report = casson_gordon_scenario(5, 0)
        assert report.passed
        assert genus_check(report).actual == 4

    def test_seven_boxes_two_twists(self):
        scenario, report = casson_gordon_scenario(7, 2)
        assert report.passed
        assert genus_check(report).actual == 10
        assert scenario.patch_complex is None
        assert any("euler bookkeeping only" in note for note in report.notes)

    def test_genus_law_full_sweep(self):
        for twists in range(0, 21):
            _, report = casson_gordon_scenario(5, twists)
            assert report.passed
            assert genus_check(report).actual == 2 * twists + 4

    def test_even_box_count_rejected(self):
        with pytest.raises(ScenarioError):
            casson_gordon_scenario(6, 1)

    def test_small_box_count_rejected(self):
        with pytest.raises(ScenarioError):
            casson_gordon_scenario(3, 1)


class TestDoubledHandlebody:
    def test_two_copies(self):
        _, report = doubled_handlebody_scenario(2)
        assert report.passed
        assert genus_check(report).actual == 7

    def test_zero_copies_recovers_the_splitting(self):
        _, report = doubled_handlebody_scenario(0)
        assert report.passed
        assert genus_check(report).actual == 3

    def test_four_copies(self):
        _, report = doubled_handlebody_scenario(4)
        assert report.passed
        assert genus_check(report).actual == 11

    def test_odd_copies_rejected(self):
        with pytest.raises(ScenarioError):
            doubled_handlebody_scenario(3)

    def test_even_sweep(self):
        for copies in range(0, 21, 2):
            _, report = doubled_handlebody_scenario(copies)
            assert report.passed
            assert genus_check(report).actual == 2 * copies + 3


def paper_style_graph(copies):
    """The three-piece decomposition of the doubled example's inner half."""
    return GluingGraph(
        pieces=(
            GluedPiece(id="inner", kind="handlebody", genus=2),
            GluedPiece(id="collar", kind="product",
                       base_euler=2 - 2 * copies),
            GluedPiece(id="outer", kind="handlebody", genus=4),
        ),
        gluings=(
            AnnulusGluing(id="upper", pieces=("inner", "collar"),
                          incompressible=True),
            AnnulusGluing(id="lower", pieces=("collar", "outer"),
                          primitive_in="outer"),
        ))


class TestHandlebodyCertificate:
    def test_three_piece_graph(self):
        for copies in (2, 4, 10):
            proof = handlebody_certificate(paper_style_graph(copies))
            assert proof.succeeded
            assert proof.genus == 2 * copies + 3
            rules = [s.rule for s in proof.steps]
            assert "primitivity-across-product" in rules
            assert rules.count("merge-primitive-annulus") == 2

    def test_shipped_graph(self):
        graph = gluing_graph_from_dict(
            load_builtin("doubled-handlebody").gluing_graph)
        proof = handlebody_certificate(graph)
        assert proof.succeeded
        assert proof.genus == 7

    def test_single_piece(self):
        graph = GluingGraph(
            pieces=(GluedPiece(id="v", kind="handlebody", genus=3),),
            gluings=())
        proof = handlebody_certificate(graph)
        assert proof.succeeded and proof.genus == 3

    def test_genus_always_one_minus_euler_sum(self, seed):
        rng = random.Random(seed + 51)
        for _ in range(200):
            graph = random_provable_graph(rng)
            proof = handlebody_certificate(graph)
            assert proof.succeeded
            assert proof.genus == euler_rank_genus(graph.pieces)

    def test_two_piece_random(self, seed):
        rng = random.Random(seed + 52)
        for _ in range(100):
            g1 = rng.randint(0, 5)
            g2 = rng.randint(0, 5)
            pieces = (GluedPiece(id="a", kind="handlebody", genus=g1),
                      GluedPiece(id="b", kind="handlebody", genus=g2))
            graph = GluingGraph(
                pieces=pieces,
                gluings=(AnnulusGluing(id="e", pieces=("a", "b"),
                                       primitive_in=rng.choice(("a", "b"))),))
            proof = handlebody_certificate(graph)
            assert proof.genus == g1 + g2 - 1
            assert proof.genus == euler_rank_genus(pieces)

    def test_no_primitive_annulus_fails(self):
        graph = GluingGraph(
            pieces=(GluedPiece(id="a", kind="handlebody", genus=1),
                    GluedPiece(id="b", kind="handlebody", genus=1)),
            gluings=(AnnulusGluing(id="e", pieces=("a", "b"),
                                   incompressible=True),))
        outcome = handlebody_certificate(graph)
        assert not outcome.succeeded
        assert outcome.cluster_count == 2

    def test_disconnected_rejected(self):
        with pytest.raises(ScenarioError):
            GluingGraph(
                pieces=(GluedPiece(id="a", kind="handlebody", genus=1),
                        GluedPiece(id="b", kind="handlebody", genus=1)),
                gluings=())

    def test_confluence_on_the_three_piece_graph(self, seed):
        rng = random.Random(seed + 54)
        base = paper_style_graph(4)
        for _ in range(10):
            pieces = list(base.pieces)
            gluings = list(base.gluings)
            rng.shuffle(pieces)
            rng.shuffle(gluings)
            proof = handlebody_certificate(
                GluingGraph(pieces=tuple(pieces), gluings=tuple(gluings)))
            assert proof.succeeded and proof.genus == 11

    def test_confluence_under_input_reordering(self, seed):
        rng = random.Random(seed + 53)
        for _ in range(50):
            graph = random_provable_graph(rng)
            pieces = list(graph.pieces)
            gluings = list(graph.gluings)
            rng.shuffle(pieces)
            rng.shuffle(gluings)
            relabeled = GluingGraph(pieces=tuple(pieces),
                                    gluings=tuple(gluings))
            a = handlebody_certificate(graph)
            b = handlebody_certificate(relabeled)
            assert a.succeeded == b.succeeded
            assert a.genus == b.genus

    def test_annulus_must_join_two_distinct_pieces(self):
        with pytest.raises(ScenarioError):
            AnnulusGluing(id="e", pieces=("a", "a"))


class TestTwistRule:
    def test_all_hypotheses_hold(self):
        verdict = casson_twist_rule(True, 5, True)
        assert verdict is TwistVerdict.STRONGLY_IRREDUCIBLE

    def test_four_twists_inconclusive(self):
        assert casson_twist_rule(True, 4, True) is TwistVerdict.INCONCLUSIVE

    def test_irreducible_double_inconclusive(self):
        assert casson_twist_rule(False, 7, True) is TwistVerdict.INCONCLUSIVE

    def test_not_disk_busting_inconclusive(self):
        assert casson_twist_rule(True, 9, False) is TwistVerdict.INCONCLUSIVE
