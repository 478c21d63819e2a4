"""Metric Lie algebra graph evaluations and the flip census polynomial."""

import pytest

from ribbonpoly.algebra import HalfLaurent
from ribbonpoly.fixtures import BOUQUET2_INT, K4, K33_STD, LOOP1, THETA_P, THETA_T
from ribbonpoly.generate import POINT, cubic_maps, exhaustive_connected_maps, random_maps
from ribbonpoly.invariants import s_poly_at
from ribbonpoly.penrose import (
    cellular_embedding_poly,
    ihx_check,
    parity_signs,
    penrose_number_checks,
    planarity_by_flips,
    so_as_sl_check,
    theta_sl_value,
    w_sl_brauer,
    w_sl_extended,
    w_sl_relation_suite,
    w_so,
    w_so_relation_suite,
)


def npoly(data):
    return HalfLaurent.from_dict("N", {2 * k: v for k, v in data.items()})


def xpoly(data):
    return HalfLaurent.from_dict("x", {2 * k: v for k, v in data.items()})


class TestOrthogonalAnchors:
    def test_point(self):
        assert w_so(POINT) == npoly({1: 1})

    def test_loop(self):
        assert w_so(LOOP1) == npoly({2: 1, 1: -1})

    def test_theta(self):
        # N(N-1)(N-2) for the planar rotation; a vertex flip negates the
        # value through the odd-degree sign law.
        expected = npoly({3: 1, 2: -3, 1: 2})
        assert w_so(THETA_P) == expected
        assert w_so(THETA_T) == expected.scale(-1)

    def test_subdivision_doubles(self):
        for m in [LOOP1, THETA_P]:
            assert w_so(m.subdivide(0)) == w_so(m).scale(2)

    def test_relations(self):
        for m in [THETA_P, BOUQUET2_INT, K4]:
            for e in range(min(2, m.edge_count)):
                suite = w_so_relation_suite(m, e)
                assert all(bool(v) for v in suite.values()), (m, e, suite)


class TestSpecialLinearAnchors:
    def test_theta_values(self):
        assert theta_sl_value(1) == npoly({4: 2, 2: -10, 0: 8})
        assert theta_sl_value(-1) == npoly({4: 2, 2: -2})

    def test_theta_matches_engine(self):
        # Equal sign patterns give the two named values; mixed signs kill it.
        assert w_sl_extended(THETA_P, (1, 1)) == theta_sl_value(1)
        assert w_sl_extended(THETA_P, (-1, -1)) == theta_sl_value(-1)
        assert w_sl_extended(THETA_P, (1, -1)).is_zero()

    def test_at_two_parity_signs(self):
        for m in [LOOP1, THETA_P, THETA_T, BOUQUET2_INT]:
            value = w_sl_extended(m, parity_signs(m)).evaluate(2)
            assert value == (2**m.vertex_count) * s_poly_at(m, 4)

    def test_at_two_other_signs_vanish(self):
        # Flip one sign away from parity: the N = 2 value dies.
        signs = list(parity_signs(THETA_P))
        signs[0] = -signs[0]
        assert w_sl_extended(THETA_P, tuple(signs)).evaluate(2) == 0

    def test_extended_equals_brauer(self):
        for m in exhaustive_connected_maps(3):
            assert w_sl_extended(m) == w_sl_brauer(m), m

    def test_relations(self):
        for e in range(3):
            suite = w_sl_relation_suite(THETA_P, e)
            assert all(bool(v) for v in suite.values()), (e, suite)

    def test_so_as_sl(self):
        for m in [LOOP1, THETA_P, BOUQUET2_INT]:
            report = so_as_sl_check(m)
            assert all(bool(v) for v in report.values()), (m, report)


class TestCellularEmbedding:
    def test_theta(self):
        assert cellular_embedding_poly(THETA_P) == xpoly({0: 2, 1: -2})
        assert cellular_embedding_poly(THETA_T) == xpoly({1: 2, 0: -2})

    def test_at_one_vanishes(self):
        for m in cubic_maps(4):
            assert cellular_embedding_poly(m).evaluate(1) == 0

    def test_flip_changes_at_most_sign(self):
        poly = cellular_embedding_poly(K4)
        flipped = cellular_embedding_poly(K4.vertex_flip(0))
        assert flipped == poly or flipped == poly.scale(-1)

    def test_non_cubic_rejected(self):
        with pytest.raises(ValueError):
            cellular_embedding_poly(LOOP1)


class TestPlanarity:
    def test_k33_has_no_witness(self):
        report = planarity_by_flips(K33_STD)
        assert not report["planar_somehow"]
        assert report["witness"] is None

    def test_k4_witness(self):
        report = planarity_by_flips(K4)
        assert report["planar_somehow"]
        assert report["witness"] == frozenset()

    def test_loop_trivial_witness(self):
        report = planarity_by_flips(LOOP1)
        assert report["planar_somehow"] and report["witness"] == frozenset()

    def test_degree_coherence(self):
        for m in [K4, K33_STD, THETA_P]:
            report = planarity_by_flips(m)
            assert report["degree_coherent"] is True


class TestNumberChecks:
    def test_theta(self):
        report = penrose_number_checks(THETA_P)
        assert all(bool(v) for v in report.values()), report

    def test_ihx(self):
        report = ihx_check()
        assert all(bool(v) for v in report.values()), report
