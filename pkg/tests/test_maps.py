"""Combinatorial map structure, surgeries, and canonical forms."""

import pytest

from ribbonpoly.generate import dipole, random_maps
from ribbonpoly.maps import CombMap, InvalidMapError, diagnose

LOOP1 = CombMap(((0, 1),), ((0, 1),))
BOUQUET2_INT = CombMap(((0, 2, 1, 3),), ((0, 1), (2, 3)))
BRIDGE = CombMap(((0,), (1,)), ((0, 1),))
THETA_P = dipole(3) if dipole(3).genus() == 0 else dipole(3).vertex_flip(1)
THETA_T = THETA_P.vertex_flip(1)


def oracle_face_count(m: CombMap) -> int:
    """Independent orbit count of h -> sigma(alpha(h)) for twist-free maps.

    Built straight from the raw vertex and edge tuples so it shares nothing
    with the CombMap traversal code.
    """
    assert not m.edge_twists
    succ = {}
    for cycle in m.vertices:
        for i, h in enumerate(cycle):
            succ[h] = cycle[(i + 1) % len(cycle)]
    mate = {}
    for a, b in m.edges:
        mate[a] = b
        mate[b] = a
    seen = set()
    faces = 0
    for start in succ:
        if start in seen:
            continue
        faces += 1
        h = start
        while h not in seen:
            seen.add(h)
            h = succ[mate[h]]
    return faces + sum(1 for cycle in m.vertices if not cycle)


class TestStructure:
    def test_loop1(self):
        data = LOOP1.euler_data()
        assert (data.vertices, data.edges, data.faces, data.genus) == (1, 1, 2, 0)

    def test_bouquet2_interlaced(self):
        data = BOUQUET2_INT.euler_data()
        assert (data.faces, data.genus) == (1, 1)
        assert BOUQUET2_INT.interlaced(0, 1)

    def test_face_oracle_agreement(self):
        family = [LOOP1, BOUQUET2_INT, BRIDGE, THETA_P, THETA_T]
        family += random_maps(seed=7, count=25, max_edges=8)
        for m in family:
            assert m.face_count == oracle_face_count(m), m

    def test_theta_pair_genera(self):
        assert THETA_P.genus() == 0
        assert THETA_T.genus() == 1

    def test_component_count(self):
        two = LOOP1.disjoint_union(BRIDGE)
        assert two.component_count == 2
        assert two.euler_data().first_betti == 1


class TestCanonicalization:
    def test_relabeled_cycle_rotation(self):
        a = CombMap(((1, 0),), ((0, 1),))
        assert a == LOOP1

    def test_vertex_order(self):
        a = CombMap(((1,), (0,)), ((0, 1),))
        assert a == BRIDGE

    def test_isomorphic_with_different_labels(self):
        relabeled = CombMap(((3, 1, 2, 0),), ((3, 2), (1, 0)))
        assert relabeled.isomorphic(BOUQUET2_INT)

    def test_signature_separates(self):
        plain = CombMap(((0, 1, 2, 3),), ((0, 1), (2, 3)))
        assert plain.signature != BOUQUET2_INT.signature
        assert plain.genus() == 0

    def test_diagnose_messages(self):
        assert diagnose(((0, 1), (1,)), ((0, 1),))[0] == "half-edge 1 appears at vertices 0 and 1"
        with pytest.raises(InvalidMapError):
            CombMap(((0, 3),), ((0, 3),))
        with pytest.raises(InvalidMapError):
            CombMap(((0, 1),), ((0, 0),))


class TestSurgery:
    def test_delete_edge(self):
        assert BOUQUET2_INT.delete_edge(1).isomorphic(LOOP1)
        # Deleting the loop of LOOP1 leaves an isolated vertex.
        assert LOOP1.delete_edge(0).vertex_count == 1
        assert LOOP1.delete_edge(0).edge_count == 0

    def test_subdivide(self):
        divided = LOOP1.subdivide(0)
        assert (divided.vertex_count, divided.edge_count) == (2, 2)
        assert divided.genus() == 0

    def test_vertex_flip_involution(self):
        assert THETA_T.vertex_flip(1) == THETA_P
        for m in random_maps(seed=9, count=10, max_edges=6):
            assert m.vertex_flip(0).vertex_flip(0) == m

    def test_partial_dual_involution(self):
        for m in [LOOP1, BOUQUET2_INT, THETA_P, THETA_T]:
            for e in range(m.edge_count):
                assert m.partial_dual(e).partial_dual(e).isomorphic(m)

    def test_partial_dual_swaps_loop_and_coloop(self):
        assert LOOP1.partial_dual(0).isomorphic(BRIDGE)
        assert BOUQUET2_INT.is_coloop(0) and BOUQUET2_INT.is_coloop(1)
        assert not LOOP1.is_coloop(0)

    def test_geometric_dual(self):
        dual = LOOP1.geometric_dual()
        assert dual.edge_count == 1 and dual.genus() == 0
        assert THETA_P.geometric_dual().geometric_dual().isomorphic(THETA_P)

    def test_contract_loop_splits_vertex(self):
        contracted = LOOP1.contract(0)
        assert contracted.vertex_count == 2 and contracted.edge_count == 0

    def test_contract_ordinary_edge(self):
        contracted = BRIDGE.contract(0)
        assert contracted.vertex_count == 1 and contracted.edge_count == 0

    def test_edge_classification(self):
        assert LOOP1.is_loop(0) and not LOOP1.is_bridge(0)
        assert BRIDGE.is_bridge(0)
        assert THETA_P.is_coloop(0) is False


class TestTwists:
    def test_toggle_twist_changes_faces(self):
        twisted = LOOP1.toggle_twist(0)
        assert twisted.edge_twists == frozenset({0})
        assert twisted.face_count != LOOP1.face_count

    def test_double_toggle_restores(self):
        assert LOOP1.toggle_twist(0).toggle_twist(0) == LOOP1

    def test_twist_survives_canonicalization(self):
        m = CombMap(((0, 1, 2), (3, 4, 5)), ((0, 3), (1, 4), (2, 5)), None, frozenset({2}))
        assert m.edge_twists == frozenset({2})


class TestRotationVariants:
    def test_flip_census_size(self):
        variants = list(THETA_P.rotation_variants())
        assert len(variants) == 4
        genera = sorted(v.genus() for _, v in variants)
        assert genera == [0, 0, 1, 1]
