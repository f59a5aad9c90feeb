import math

import numpy as np
import pytest

from helpers import brute_force_greedy_net, random_hulls
from neumannlab.errors import PreconditionError
from neumannlab.geometry import ConvexPolygon, SubsetRegion, set_distance
from neumannlab.partition import (family_separation,
                                  farthest_point_sequence, greedy_maximal_net,
                                  net_ball_family, voronoi_partition)

UNIT_SQUARE = ConvexPolygon([(0, 0), (1, 0), (1, 1), (0, 1)])


class TestGreedyMaximalNet:
    def test_large_r_single_center(self):
        net = greedy_maximal_net(UNIT_SQUARE, 2.0, (0, 0))
        assert len(net) == 1

    def test_unit_square_r1_hits_corners(self):
        net = greedy_maximal_net(UNIT_SQUARE, 1.0, (0, 0))
        oracle = brute_force_greedy_net(UNIT_SQUARE, 1.0, (0, 0), 201)
        assert len(net) == len(oracle) == 4
        assert sorted(map(tuple, net.centers)) == sorted(oracle)
        assert sorted(map(tuple, net.centers)) == [
            (0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]

    def test_rectangle_size_matches_oracle_at_two_resolutions(self):
        rect = ConvexPolygon.rectangle(3.0, 1.0)
        net = greedy_maximal_net(rect, 1.5, (0, 0))
        for resolution in (151, 201):
            oracle = brute_force_greedy_net(rect, 1.5, (0, 0), resolution)
            assert len(net) == len(oracle)

    def test_r_nonpositive_rejected(self):
        with pytest.raises(PreconditionError):
            greedy_maximal_net(UNIT_SQUARE, 0.0, (0, 0))

    def test_start_outside_rejected(self):
        with pytest.raises(PreconditionError):
            greedy_maximal_net(UNIT_SQUARE, 0.5, (3, 3))

    @pytest.mark.parametrize("r", [0.3, 0.45, 0.8])
    def test_net_is_r_separated_exactly_and_covers(self, r):
        net = greedy_maximal_net(UNIT_SQUARE, r, (0.25, 0.25))
        assert net.min_pairwise_distance() >= r
        assert net.covering_radius < r

    def test_removing_any_center_breaks_covering(self):
        net = greedy_maximal_net(UNIT_SQUARE, 0.6, (0, 0))
        d = net.pairwise_distances()
        np.fill_diagonal(d, np.inf)
        for i in range(len(net)):
            # the removed center's location is farther than the covering
            # radius from every remaining center
            assert d[i].min() >= net.separation > net.covering_radius

    def test_deterministic(self):
        a = greedy_maximal_net(UNIT_SQUARE, 0.4, (0.5, 0.5))
        b = greedy_maximal_net(UNIT_SQUARE, 0.4, (0.5, 0.5))
        np.testing.assert_array_equal(a.centers, b.centers)

    def test_json_round_trip_fields(self):
        net = greedy_maximal_net(UNIT_SQUARE, 0.9, (0, 0))
        doc = net.to_json()
        assert set(doc) == {"centers", "r", "covering_radius"}


class TestVoronoiPartition:
    def test_two_mirror_cells(self):
        part = voronoi_partition(UNIT_SQUARE, [(0.25, 0.5), (0.75, 0.5)])
        assert [c.area for c in part.cells] == pytest.approx([0.5, 0.5])

    def test_single_center_whole_polygon(self):
        part = voronoi_partition(UNIT_SQUARE, [(0.3, 0.7)])
        assert part.cells[0].area == pytest.approx(UNIT_SQUARE.area)

    def test_duplicate_centers_rejected(self):
        with pytest.raises(PreconditionError):
            voronoi_partition(UNIT_SQUARE, [(0.5, 0.5), (0.5, 0.5)])

    def test_center_outside_rejected(self):
        with pytest.raises(PreconditionError):
            voronoi_partition(UNIT_SQUARE, [(0.5, 0.5), (1.5, 0.5)])

    def test_membership_matches_nearest_center(self):
        rng = np.random.default_rng(12)
        centers = rng.random((10, 2)) * 0.9 + 0.05
        part = voronoi_partition(UNIT_SQUARE, centers)
        pts = rng.random((100_000, 2))
        d = np.linalg.norm(pts[:, None, :] - centers[None, :, :], axis=-1)
        nearest = d.argmin(axis=1)
        two_smallest = np.sort(d, axis=1)[:, :2]
        clear = (two_smallest[:, 1] - two_smallest[:, 0]) > 1e-9
        agree = sum(part.cells[n].contains(p)
                    for p, n in zip(pts[clear], nearest[clear]))
        assert agree / clear.sum() >= 0.9999

    @pytest.mark.parametrize("seed", range(4))
    def test_cells_cover_and_contain_centers(self, seed):
        (hull,) = random_hulls(1, seed=800 + seed, points=14)
        rng = np.random.default_rng(seed)
        lo, hi = hull.bounding_box
        centers = []
        while len(centers) < 5:
            p = lo + (hi - lo) * rng.random(2)
            if hull.contains(p, tol=-1e-6):
                centers.append(p)
        part = voronoi_partition(hull, np.array(centers))
        total = sum(c.area for c in part.cells)
        assert abs(total - hull.area) <= 1e-9 * hull.area

    def test_cell_diameter_bounded_by_twice_covering_radius(self):
        for r in (0.35, 0.6, 1.0):
            net = greedy_maximal_net(UNIT_SQUARE, r, (0, 0))
            part = voronoi_partition(UNIT_SQUARE, net.centers)
            for cell in part.cells:
                assert cell.diameter <= 2 * net.covering_radius + 1e-9

    def test_json_serialization(self):
        part = voronoi_partition(UNIT_SQUARE, [(0.25, 0.5), (0.75, 0.5)])
        doc = part.to_json()
        assert set(doc) == {"centers", "cells"}
        assert len(doc["cells"]) == 2
        assert all(len(v) == 2 for cell in doc["cells"] for v in cell)


class TestFamilySeparation:
    def test_corner_squares(self):
        a = SubsetRegion.from_polygon(UNIT_SQUARE,
                                      ConvexPolygon.rectangle(0.25, 0.25))
        b = SubsetRegion.from_polygon(
            UNIT_SQUARE,
            ConvexPolygon.rectangle(0.25, 0.25, origin=(0.75, 0.75)))
        assert family_separation([a, b]) == pytest.approx(math.sqrt(0.5))

    def test_overlapping_members_give_zero(self):
        a = SubsetRegion.from_polygon(UNIT_SQUARE,
                                      ConvexPolygon.rectangle(0.5, 0.5))
        b = SubsetRegion.from_polygon(
            UNIT_SQUARE, ConvexPolygon.rectangle(0.5, 0.5, origin=(0.25, 0.25)))
        assert family_separation([a, b]) == 0.0

    def test_single_member_rejected(self):
        a = SubsetRegion.from_polygon(UNIT_SQUARE,
                                      ConvexPolygon.rectangle(0.2, 0.2))
        with pytest.raises(PreconditionError):
            family_separation([a])

    @pytest.mark.parametrize("count", [3, 5])
    def test_net_balls_from_separated_centers(self, count):
        # balls of radius R around 3R-separated centers stay R apart
        family = net_ball_family(UNIT_SQUARE, count)
        radius = family[0].radius
        sep = family_separation(family)
        brute = min(set_distance(family[i], family[j])
                    for i in range(count) for j in range(i + 1, count))
        assert sep == brute
        assert sep >= radius - 1e-9


class TestFarthestPointSequence:
    def test_first_center_is_near_centroid(self):
        centers, _ = farthest_point_sequence(UNIT_SQUARE, 3)
        assert np.linalg.norm(centers[0] - [0.5, 0.5]) < 0.01

    def test_count_and_determinism(self):
        a, _ = farthest_point_sequence(UNIT_SQUARE, 6)
        b, _ = farthest_point_sequence(UNIT_SQUARE, 6)
        assert len(a) == 6
        np.testing.assert_array_equal(a, b)
