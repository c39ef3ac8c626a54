"""Tests for fqwave.points."""

import numpy as np
import pytest

from fqwave.errors import DimensionMismatchError
from fqwave.points import Point, PointSet, all_coords, indices_of


class TestPoint:
    """Tests for Point arithmetic and indexing."""

    def test_index_is_lexicographic(self):
        assert Point((0, 0), 3).index == 0
        assert Point((0, 2), 3).index == 2
        assert Point((1, 0), 3).index == 3
        assert Point.from_index(23, 5, 2) == Point((4, 3), 5)

    def test_reduces_coordinates(self):
        assert Point((-1, 8), 7).coords == (6, 1)

    def test_arithmetic(self):
        a, b = Point((1, 2), 3), Point((2, 2), 3)
        assert a + b == Point((0, 1), 3)
        assert a - b == Point((2, 0), 3)
        assert -a == Point((2, 1), 3)
        assert a.scale(2) == Point((2, 1), 3)
        assert a.dot(b) == 0

    def test_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            Point((1, 2), 3) + Point((1, 2), 5)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            Point((), 3)


class TestPointSet:
    """Tests for PointSet construction and set algebra."""

    def test_all_coords_order(self):
        coords = all_coords(3, 2)
        assert coords.shape == (9, 2)
        assert np.array_equal(indices_of(coords, 3), np.arange(9))

    def test_from_points_deduplicates(self):
        points = PointSet.from_points(3, 2, [(1, 1), (1, 1), Point((0, 2), 3)])
        assert len(points) == 2
        assert Point((1, 1), 3) in points
        assert (0, 2) in points
        assert (2, 2) not in points

    def test_star_and_complement(self):
        full = PointSet.full(3, 2)
        assert len(full.star()) == 8
        assert not full.star().contains_origin()
        assert full.star().complement() == PointSet.singleton(Point.origin(3, 2))

    def test_algebra(self):
        a = PointSet.from_indices(5, 1, [0, 1, 2])
        b = PointSet.from_indices(5, 1, [2, 3])
        assert (a | b) == PointSet.from_indices(5, 1, [0, 1, 2, 3])
        assert (a & b) == PointSet.from_indices(5, 1, [2])
        assert (a - b) == PointSet.from_indices(5, 1, [0, 1])
        assert not a.isdisjoint(b)

    def test_translate_wraps(self):
        shifted = PointSet.from_indices(5, 1, [3, 4]).translate(Point((2,), 5))
        assert shifted == PointSet.from_indices(5, 1, [0, 1])

    def test_product_and_project(self):
        e = PointSet.from_points(3, 2, [(0, 0), (1, 0), (2, 2)])
        lifted = e.product(PointSet.full(3, 1))
        assert lifted.d == 3
        assert len(lifted) == 9
        assert lifted.project([0, 1]) == e
        assert lifted.project([2]) == PointSet.full(3, 1)

    def test_first_and_empty(self):
        assert PointSet.empty(3, 2).first() is None
        assert not PointSet.empty(3, 2)
        assert PointSet.from_indices(3, 2, [5, 7]).first() == Point((1, 2), 3)

    def test_hash_and_equality(self):
        a = PointSet.from_indices(3, 2, [1, 4])
        b = PointSet.from_points(3, 2, [(0, 1), (1, 1)])
        assert a == b
        assert len({a, b}) == 1

    def test_mask_is_read_only(self):
        with pytest.raises(ValueError):
            PointSet.full(3, 1).mask[0] = False

    def test_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            PointSet.full(3, 2) | PointSet.full(3, 1)
