"""Tests for fqwave.tiling constructions and certificates."""

from itertools import combinations, product

import pytest

from fqwave.errors import (
    CardinalityError,
    DimensionMismatchError,
    EmptySetError,
    ModulusClassError,
    NotAGraphError,
    OriginInSetError,
    PreconditionError,
    SearchBudgetExceededError,
)
from fqwave.geometry import circle, lifted_rotation_group, rotation_group
from fqwave.points import Point, PointSet
from fqwave.tiling import (
    canonical_spectrum,
    circle_intersections,
    construct_half_line_set,
    construct_sector_set,
    construct_wavelet_frame_set,
    find_translational_partner,
    is_graph,
    lift_wavelet_set,
    sign_automorphisms,
    spectrum_search,
    tiling_partner,
    verify_multiplicative_tiling,
    verify_q1mod4_obstruction,
    verify_spectral_pair,
    verify_translational_tiling,
)

THREE_MOD_FOUR = (3, 7, 11, 19, 23)


def _coords(points):
    return sorted(tuple(int(c) for c in row) for row in points.coords())


def _graph(q, f):
    return PointSet.from_points(q, 2, [(x, f[x]) for x in range(q)])


class TestSectorSet:
    """Tests for construct_sector_set()."""

    def test_q3(self):
        assert _coords(construct_sector_set(3)) == [(0, 1), (1, 1)]

    def test_size(self):
        assert len(construct_sector_set(7)) == 6

    @pytest.mark.parametrize("q", [3, 7, 11])
    def test_tiles_by_rotations(self, q):
        cert = verify_multiplicative_tiling(construct_sector_set(q), rotation_group(q))
        assert cert.valid
        assert cert.witness is None
        assert cert.multiplicity_histogram == {1: q * q - 1}

    def test_rejects_one_mod_four(self):
        with pytest.raises(ModulusClassError):
            construct_sector_set(5)


class TestWaveletFrameSet:
    """Tests for construct_wavelet_frame_set()."""

    def test_q3(self):
        assert _coords(construct_wavelet_frame_set(3)) == [(0, 0), (1, 0), (2, 2)]

    def test_q7(self):
        expected = [(0, 0), (1, 0), (2, 0), (3, 0), (4, 1), (5, 3), (6, 5)]
        assert _coords(construct_wavelet_frame_set(7)) == expected

    def test_q3_d3_is_product(self):
        lifted = construct_wavelet_frame_set(3, 3)
        assert len(lifted) == 9
        assert lifted == construct_wavelet_frame_set(3).product(PointSet.full(3, 1))

    def test_rejects_one_mod_four(self):
        with pytest.raises(ModulusClassError):
            construct_wavelet_frame_set(13)

    def test_rejects_small_d(self):
        with pytest.raises(PreconditionError):
            construct_wavelet_frame_set(7, 1)

    @pytest.mark.parametrize("q", THREE_MOD_FOUR)
    def test_one_point_per_circle(self, q):
        counts = circle_intersections(construct_wavelet_frame_set(q))
        assert counts == {r: 1 for r in range(q)}

    @pytest.mark.parametrize("q", THREE_MOD_FOUR)
    def test_all_three_certificates(self, q):
        """Translational, multiplicative and spectral certificates hold together."""
        e = construct_wavelet_frame_set(q)
        partner = tiling_partner(q)
        translational = verify_translational_tiling(e, partner)
        assert translational.valid
        assert len(e) * len(partner) == q * q

        assert verify_multiplicative_tiling(e.star(), rotation_group(q)).valid

        pair = verify_spectral_pair(e, canonical_spectrum(e))
        assert pair.valid
        assert pair.gram_residual <= 1e-9 * len(e)

    @pytest.mark.parametrize("q", THREE_MOD_FOUR)
    def test_lift_to_d3(self, q):
        """The lifted set tiles and is spectral; the fixed axis is over-covered."""
        e = construct_wavelet_frame_set(q, 3)
        assert verify_translational_tiling(e, tiling_partner(q, 3)).valid
        assert verify_spectral_pair(e, canonical_spectrum(e)).valid

        cert = verify_multiplicative_tiling(e.star(), lifted_rotation_group(q, 3))
        assert not cert.valid
        assert not cert.disjoint
        assert cert.witness.coords[:2] == (0, 0)
        assert cert.multiplicity_histogram[q + 1] == q - 1


class TestMultiplicativeTiling:
    """Tests for verify_multiplicative_tiling()."""

    def test_unit_circle_is_not_a_tile(self):
        cert = verify_multiplicative_tiling(circle(3, 1).points, rotation_group(3))
        assert not cert.valid
        assert not cert.covered
        assert not cert.disjoint
        assert cert.multiplicity_histogram == {0: 4, 4: 4}
        assert cert.witness == Point((0, 1), 3)

    def test_origin_rejected(self):
        with pytest.raises(OriginInSetError):
            verify_multiplicative_tiling(construct_wavelet_frame_set(3), rotation_group(3))

    def test_summary(self):
        cert = verify_multiplicative_tiling(circle(3, 1).points, rotation_group(3))
        assert "INVALID" in cert.summary()
        assert "valid" in verify_multiplicative_tiling(construct_sector_set(3), rotation_group(3)).summary()

    @pytest.mark.parametrize("q", [3, 7, 11])
    def test_half_line_under_signs(self, q):
        half = construct_half_line_set(q)
        assert len(half) == (q - 1) // 2
        assert verify_multiplicative_tiling(half, sign_automorphisms(q)).valid

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            verify_multiplicative_tiling(construct_half_line_set(3), rotation_group(3))


class TestTranslationalTiling:
    """Tests for verify_translational_tiling()."""

    def test_full_space_by_origin(self):
        full = PointSet.full(3, 2)
        assert verify_translational_tiling(full, PointSet.singleton(Point.origin(3, 2))).valid

    def test_overlap_reported(self):
        e = PointSet.from_points(3, 2, [(0, 0), (1, 0)])
        cert = verify_translational_tiling(e, PointSet.full(3, 2))
        assert not cert.valid
        assert cert.covered
        assert cert.multiplicity_histogram == {2: 9}
        assert cert.witness == Point((0, 0), 3)

    def test_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            verify_translational_tiling(PointSet.full(3, 2), PointSet.full(3, 1))

    def test_tiles_of_f3_squared(self):
        """Every translational tile of F_3² has size 1, 3 or 9; the size-3 ones are graphs."""
        sizes = {}
        for size in range(1, 10):
            for subset in combinations(range(9), size):
                e = PointSet.from_indices(3, 2, subset)
                partner = find_translational_partner(e)
                if partner is None:
                    continue
                assert verify_translational_tiling(e, partner).valid
                sizes[size] = sizes.get(size, 0) + 1
                if size == 3:
                    assert is_graph(e) is not None
        assert sizes == {1: 9, 3: 84, 9: 1}

    def test_partner_of_wavelet_set(self):
        e = construct_wavelet_frame_set(7)
        partner = find_translational_partner(e)
        assert len(partner) == 7
        assert verify_translational_tiling(e, partner).valid

    def test_partner_empty_set(self):
        with pytest.raises(EmptySetError):
            find_translational_partner(PointSet.empty(3, 2))


class TestLift:
    """Tests for lift_wavelet_set() and tiling_partner()."""

    def test_two_copies(self):
        base = construct_wavelet_frame_set(3)
        lifted = lift_wavelet_set(base, 4, copies=2)
        assert len(lifted) == 9
        assert verify_translational_tiling(lifted, tiling_partner(3, 4, copies=2)).valid
        assert verify_spectral_pair(lifted, canonical_spectrum(lifted)).valid

    def test_single_copy_matches_construction(self):
        assert lift_wavelet_set(construct_wavelet_frame_set(7), 3) == construct_wavelet_frame_set(7, 3)

    def test_too_many_copies(self):
        with pytest.raises(PreconditionError):
            lift_wavelet_set(construct_wavelet_frame_set(3), 3, copies=2)
        with pytest.raises(PreconditionError):
            tiling_partner(3, 3, copies=2)


class TestGraphs:
    """Tests for is_graph() and canonical_spectrum()."""

    def test_wavelet_set_over_standard_basis(self):
        graph = is_graph(construct_wavelet_frame_set(7))
        assert graph.e1 == Point((1, 0), 7)
        assert graph.e2 == Point((0, 1), 7)
        assert graph.table == (0, 0, 0, 0, 1, 3, 5)

    def test_column_over_swapped_basis(self):
        column = PointSet.from_points(5, 2, [(0, y) for y in range(5)])
        graph = is_graph(column)
        assert graph.e1 == Point((0, 1), 5)
        assert graph.e2 == Point((1, 0), 5)
        assert _coords(canonical_spectrum(column)) == [(0, y) for y in range(5)]

    def test_wrong_cardinality(self):
        with pytest.raises(CardinalityError):
            is_graph(circle(3, 1).points)

    def test_rejects_other_dimensions(self):
        with pytest.raises(DimensionMismatchError):
            is_graph(construct_half_line_set(7))

    def test_canonical_spectrum_examples(self):
        assert _coords(canonical_spectrum(construct_wavelet_frame_set(3))) == [(0, 0), (1, 0), (2, 0)]
        assert canonical_spectrum(construct_wavelet_frame_set(7)) == PointSet.from_points(
            7, 2, [(x, 0) for x in range(7)]
        )
        single = PointSet.singleton(Point((2, 1), 7))
        assert canonical_spectrum(single) == PointSet.singleton(Point.origin(7, 2))

    def test_canonical_spectrum_rejects_non_graph(self):
        with pytest.raises(NotAGraphError):
            canonical_spectrum(PointSet.from_points(3, 2, [(0, 0), (1, 0)]))
        with pytest.raises(NotAGraphError):
            canonical_spectrum(PointSet.from_indices(5, 1, [1, 2]))

    def test_all_graphs_q3(self):
        """The 27 graphs over F_3 are spectral by both routes."""
        for f in product(range(3), repeat=3):
            e = _graph(3, f)
            assert verify_spectral_pair(e, canonical_spectrum(e)).valid
            found = spectrum_search(e)
            assert found is not None
            assert found.contains_origin()
            assert verify_spectral_pair(e, found).valid


class TestSpectralPair:
    """Tests for verify_spectral_pair()."""

    def test_wavelet_set_residual(self):
        e = construct_wavelet_frame_set(3)
        assert verify_spectral_pair(e, canonical_spectrum(e)).gram_residual < 1e-12

    def test_cardinality_mismatch(self):
        e = construct_wavelet_frame_set(3)
        short = PointSet.from_points(3, 2, [(0, 0), (1, 0)])
        pair = verify_spectral_pair(e, short)
        assert not pair.valid
        assert "cardinality" in pair.reason

    def test_full_space(self):
        full = PointSet.full(3, 2)
        assert verify_spectral_pair(full, full).valid

    def test_empty(self):
        pair = verify_spectral_pair(PointSet.empty(3, 1), PointSet.full(3, 1))
        assert not pair.valid


class TestSpectrumSearch:
    """Tests for spectrum_search()."""

    def test_two_points_in_f5_have_no_spectrum(self):
        assert spectrum_search(PointSet.from_indices(5, 1, [1, 2])) is None

    def test_horizontal_line(self):
        e = PointSet.from_points(3, 2, [(x, 0) for x in range(3)])
        found = spectrum_search(e)
        assert len(found) == 3
        assert verify_spectral_pair(e, found).valid

    def test_singleton(self):
        e = PointSet.singleton(Point((1, 2), 3))
        assert spectrum_search(e) == PointSet.singleton(Point.origin(3, 2))

    def test_wavelet_set_q7(self):
        e = construct_wavelet_frame_set(7)
        assert verify_spectral_pair(e, spectrum_search(e)).valid

    def test_limit(self):
        with pytest.raises(SearchBudgetExceededError):
            spectrum_search(construct_wavelet_frame_set(3, 3), limit=4)

    def test_empty(self):
        with pytest.raises(EmptySetError):
            spectrum_search(PointSet.empty(3, 2))


class TestQ1Mod4Obstruction:
    """Tests for verify_q1mod4_obstruction()."""

    @pytest.mark.parametrize("q", [5, 13])
    def test_uncovered_count(self, q):
        report = verify_q1mod4_obstruction(q)
        assert report.zero_circle_size == 2 * q - 1
        assert report.uncovered == 2 * q - 2
        assert report.uncovered_on_zero_circle == 2 * q - 2
        assert report.zero_circle_hits == 0
        assert report.confirmed

    def test_rejects_three_mod_four(self):
        with pytest.raises(ModulusClassError):
            verify_q1mod4_obstruction(3)
