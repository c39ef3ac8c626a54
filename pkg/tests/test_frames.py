"""Tests for fqwave.frames systems, bounds, certificates and demos."""

from fractions import Fraction

import numpy as np
import pytest

from fqwave.errors import (
    DimensionMismatchError,
    EmptySetError,
    PreconditionError,
    SearchBudgetExceededError,
)
from fqwave.fourier import GridFunction, TransformConvention, dft, random_generator
from fqwave.frames import (
    build_system,
    certify_converse,
    certify_pf_theorem,
    combine_systems,
    demo_duplicate_system,
    demo_no_full_space_parseval,
    dilation_pool,
    frame_bounds,
    frame_operator,
    jacobi_eigenvalues,
    mother_wavelet,
    rayleigh_check,
    search_orthogonal_origin,
    system_fourier_rows,
)
from fqwave.geometry import Automorphism, lifted_rotation_group, rotation_group
from fqwave.points import PointSet
from fqwave.tiling import canonical_spectrum, construct_wavelet_frame_set


def _planar_system(q):
    points = construct_wavelet_frame_set(q)
    mother = mother_wavelet(points)
    return points, build_system(mother, rotation_group(q), canonical_spectrum(points))


def _punctured(q, d=2):
    return PointSet.full(q, d).star()


class TestMotherWavelet:
    """Tests for mother_wavelet()."""

    def test_norm_q3(self):
        psi = mother_wavelet(construct_wavelet_frame_set(3))
        assert abs(psi.norm() ** 2 - 2 / 3) < 1e-12

    def test_fourier_support_is_punctured_set(self):
        points = construct_wavelet_frame_set(7)
        assert dft(mother_wavelet(points)).support() == points.star()

    def test_paper_convention_scales(self):
        points = construct_wavelet_frame_set(3)
        unitary = mother_wavelet(points)
        paper = mother_wavelet(points, TransformConvention.PAPER)
        assert paper.allclose(unitary * 3.0, 1e-12)

    def test_empty_set(self):
        with pytest.raises(EmptySetError):
            mother_wavelet(PointSet.empty(3, 2))


class TestSystems:
    """Tests for build_system(), combine_systems() and system_fourier_rows()."""

    @pytest.mark.parametrize("q,count", [(3, 12), (7, 56)])
    def test_vector_count(self, q, count):
        _, system = _planar_system(q)
        assert len(system) == count
        assert system.labels[0][0] == 0
        assert system.labels[-1][0] == q

    def test_analytic_rows_match_materialized(self):
        points, system = _planar_system(7)
        rows = system_fourier_rows(dft(system.mother), system.dilations, system.translations)
        assert np.max(np.abs(rows - system.fourier_matrix)) < 1e-10

    @pytest.mark.parametrize("q", [3, 7])
    def test_vectors_share_mother_norm(self, q):
        _, system = _planar_system(q)
        expected = system.mother.norm()
        assert max(abs(v.norm() - expected) for v in system.vectors) < 1e-12

    def test_combine_keeps_both_copies(self):
        _, system = _planar_system(3)
        doubled = combine_systems(system, system)
        assert len(doubled) == 24
        assert len(doubled.dilations) == 8
        assert doubled.labels[12][0] == 4

    def test_combine_requires_shared_mother(self):
        _, system = _planar_system(3)
        other = build_system(system.mother * 2.0, system.dilations, system.translations)
        with pytest.raises(PreconditionError):
            combine_systems(system, other)
        with pytest.raises(PreconditionError):
            combine_systems()

    def test_dimension_mismatch(self):
        points = construct_wavelet_frame_set(3)
        with pytest.raises(DimensionMismatchError):
            build_system(mother_wavelet(points), rotation_group(7), canonical_spectrum(points))


class TestJacobi:
    """Tests for jacobi_eigenvalues()."""

    def test_matches_lapack(self):
        rng = random_generator(11)
        raw = rng.standard_normal((20, 20)) + 1j * rng.standard_normal((20, 20))
        hermitian = raw + raw.conj().T
        jacobi = jacobi_eigenvalues(hermitian)
        lapack = jacobi_eigenvalues(hermitian, method="lapack")
        assert np.allclose(jacobi, lapack, atol=1e-9)

    def test_diagonal_sorted(self):
        values = jacobi_eigenvalues(np.diag([3.0, -1.0, 2.0]))
        assert np.allclose(values, [-1.0, 2.0, 3.0])

    def test_two_by_two(self):
        values = jacobi_eigenvalues(np.array([[2.0, 1j], [-1j, 2.0]]))
        assert np.allclose(values, [1.0, 3.0], atol=1e-12)

    def test_frame_operator_agrees(self):
        _, system = _planar_system(7)
        dropped = build_system(system.mother, system.dilations[1:], system.translations)
        operator = frame_operator(dropped, _punctured(7))
        assert np.allclose(
            jacobi_eigenvalues(operator), jacobi_eigenvalues(operator, method="lapack"), atol=1e-9
        )

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            jacobi_eigenvalues(np.zeros((2, 3)))
        with pytest.raises(ValueError):
            jacobi_eigenvalues(np.eye(2), method="qr")


class TestFrameBounds:
    """Tests for frame_bounds() and rayleigh_check()."""

    @pytest.mark.parametrize("q", [3, 7, 11])
    def test_parseval_on_punctured_space(self, q):
        """Both bounds equal 1 by the eigensolver and by sampling."""
        _, system = _planar_system(q)
        region = _punctured(q)
        report = frame_bounds(system, region)
        assert abs(report.lower - 1) <= 1e-9
        assert abs(report.upper - 1) <= 1e-9
        assert report.parseval
        assert report.tight
        assert report.vectors == q * (q + 1)
        assert report.dim == q * q - 1
        assert report.rank == q * q - 1
        assert report.redundancy == Fraction(q, q - 1)

        sampled = rayleigh_check(system, region, samples=100, seed=42)
        assert sampled.samples == 100
        assert sampled.parseval()
        assert sampled.within(report.lower, report.upper)

    def test_lapack_path(self):
        _, system = _planar_system(7)
        report = frame_bounds(system, _punctured(7), method="lapack")
        assert report.parseval

    def test_redundancy_q7(self):
        _, system = _planar_system(7)
        assert frame_bounds(system, _punctured(7)).redundancy == Fraction(7, 6)

    def test_not_orthogonal(self):
        _, system = _planar_system(3)
        assert not frame_bounds(system, _punctured(3)).orthogonal

    def test_missing_rotation_leaves_gap(self):
        _, system = _planar_system(7)
        dropped = build_system(system.mother, system.dilations[:-1], system.translations)
        report = frame_bounds(dropped, _punctured(7))
        assert report.lower < 1e-9
        assert not report.parseval
        assert report.rank < report.dim

    def test_rayleigh_inside_bounds_of_non_tight_system(self):
        """Dropping R⁶ and R⁷ at q=7 leaves a non-tight system whose quotients stay in [A, B]."""
        _, system = _planar_system(7)
        partial = build_system(system.mother, system.dilations[:-2], system.translations)
        region = _punctured(7)
        report = frame_bounds(partial, region)
        assert not report.tight
        sampled = rayleigh_check(partial, region, samples=200, seed=42)
        assert sampled.samples == 200
        assert sampled.within(report.lower, report.upper)
        assert not sampled.parseval()
        assert sampled.min_ratio < sampled.max_ratio

    @pytest.mark.parametrize("dropped", [0, 2])
    def test_scaling_mother_scales_bounds(self, dropped):
        _, system = _planar_system(7)
        dilations = system.dilations[: len(system.dilations) - dropped]
        base = build_system(system.mother, dilations, system.translations)
        c = 1.5 + 0.5j
        scaled = build_system(system.mother * c, dilations, system.translations)
        region = _punctured(7)
        before, after = frame_bounds(base, region), frame_bounds(scaled, region)
        assert after.lower == pytest.approx(abs(c) ** 2 * before.lower, rel=1e-9, abs=1e-9)
        assert after.upper == pytest.approx(abs(c) ** 2 * before.upper, rel=1e-9, abs=1e-9)
        assert after.upper == pytest.approx(2.5, rel=1e-9)

    def test_lifted_set_is_not_parseval(self):
        points = construct_wavelet_frame_set(3, 3)
        system = build_system(
            mother_wavelet(points), lifted_rotation_group(3, 3), canonical_spectrum(points)
        )
        report = frame_bounds(system, _punctured(3, 3))
        assert not report.parseval
        assert report.upper > 1 + 1e-6

    def test_rayleigh_is_seeded(self):
        _, system = _planar_system(3)
        first = rayleigh_check(system, _punctured(3), samples=10, seed=5)
        second = rayleigh_check(system, _punctured(3), samples=10, seed=5)
        assert first == second


class TestPFTheorem:
    """Tests for certify_pf_theorem()."""

    @pytest.mark.parametrize("q", [3, 7, 11])
    def test_parts_tight_with_bound_card_e(self, q):
        points = construct_wavelet_frame_set(q)
        report = certify_pf_theorem(points, canonical_spectrum(points), rotation_group(q))
        assert report.bound == q
        for part in (report.part1, report.part3, *report.part2):
            assert part.certified
            assert abs(part.lower - q) <= 1e-9 * q
            assert abs(part.upper - q) <= 1e-9 * q
        assert len(report.part2) == q + 1
        assert report.part4 is None
        assert "0 ∈ E" in report.part4_skipped
        assert report.certified

    def test_orthonormal_clause_without_origin(self):
        """E = {1} in F_3 under x ↦ ±x has no origin and yields a basis of L²(Y)."""
        points = PointSet.from_indices(3, 1, [1])
        dilations = [Automorphism.identity(3, 1), Automorphism.diagonal(3, [2])]
        report = certify_pf_theorem(points, PointSet.from_indices(3, 1, [0]), dilations)
        assert report.part4 is not None
        assert report.part4.certified
        assert report.part4_skipped is None

    def test_requires_spectral_pair(self):
        points = construct_wavelet_frame_set(3)
        bad = PointSet.from_points(3, 2, [(0, 0), (0, 1), (1, 1)])
        with pytest.raises(PreconditionError):
            certify_pf_theorem(points, bad, rotation_group(3))

    def test_requires_tiling(self):
        points = construct_wavelet_frame_set(7)
        with pytest.raises(PreconditionError):
            certify_pf_theorem(points, canonical_spectrum(points), rotation_group(7)[:-1])


class TestConverse:
    """Tests for certify_converse()."""

    @pytest.mark.parametrize("q", [3, 7])
    def test_parseval_system_covers_disjointly(self, q):
        points, system = _planar_system(q)
        report = certify_converse(system, points, rotation_group(q))
        assert report.coverage
        assert report.disjoint
        assert report.multiplicity_histogram == {1: q * q - 1}
        assert report.tight_frame_spectral_pair
        assert abs(report.spectral_bound - q) <= 1e-9 * q
        assert not report.orthogonal
        assert report.orthogonal_clause is None

    def test_orthogonal_basis_with_origin_in_spectrum(self):
        """E = {1} in F_3 under x ↦ ±x with L = {0} gives an orthonormal basis of L²(Y)."""
        points = PointSet.from_indices(3, 1, [1])
        dilations = [Automorphism.identity(3, 1), Automorphism.diagonal(3, [2])]
        system = build_system(mother_wavelet(points), dilations, PointSet.from_indices(3, 1, [0]))
        report = certify_converse(system, points, dilations)
        assert report.orthogonal
        assert report.orthogonal_clause is True
        assert report.coverage
        assert report.disjoint
        assert report.multiplicity_histogram == {1: 2}

    def test_rejects_non_parseval(self):
        points, system = _planar_system(3)
        dropped = build_system(system.mother, system.dilations[:-1], system.translations)
        with pytest.raises(PreconditionError):
            certify_converse(dropped, points, system.dilations[:-1])


class TestDemos:
    """Tests for the falsification and counterexample demos."""

    def test_no_parseval_exhaustive_q3_d1(self):
        report = demo_no_full_space_parseval(3, 1)
        assert report.exhaustive_sets == 6
        assert report.configurations == 6 * 3 * 7
        assert report.min_residual > 1e-6
        assert not report.tight_found
        assert not report.parseval_found
        assert report.min_residual == pytest.approx(2 / 3)
        assert report.control_orthonormal
        assert report.confirmed

    def test_no_parseval_random_q3_d2(self):
        report = demo_no_full_space_parseval(3, 2, trials=1000, seed=42)
        assert report.trials == 1000
        assert report.exhaustive_sets == 510
        assert report.generator == "PCG64"
        assert report.min_residual > 1e-6
        assert report.confirmed

    def test_no_parseval_reproducible(self):
        first = demo_no_full_space_parseval(3, 2, trials=50, seed=9)
        second = demo_no_full_space_parseval(3, 2, trials=50, seed=9)
        assert first == second

    def test_duplicate_doubles_bound(self):
        report = demo_duplicate_system(3)
        assert abs(report.base_lower - 1) <= 1e-9
        assert abs(report.doubled_lower - 2) <= 1e-9
        assert abs(report.doubled_upper - 2) <= 1e-9
        assert abs(report.trace_ratio - 2) <= 1e-9
        assert report.claimed_bound == pytest.approx(0.5)
        assert not report.claimed_reproduced
        assert report.converse_coverage
        assert not report.converse_disjoint

    def test_orthogonal_origin_q3(self):
        report = search_orthogonal_origin(3)
        assert report.configurations == 2 * 3 * 7
        assert report.orthogonal_with_origin > 0
        assert report.first_example["set"] == [0, 1]
        assert report.hypotheses_with_origin == 0
        assert report.answer_forced

    def test_orthogonal_origin_budget(self):
        with pytest.raises(SearchBudgetExceededError):
            search_orthogonal_origin(3, budget=10)

    def test_dilation_pool_is_unique(self):
        pool = dilation_pool(3, 2)
        assert len(pool) == len(set(pool)) == 6
        assert len(dilation_pool(3, 1)) == 2


class TestGridFunctionIntegration:
    """Frame vectors live in the point domain."""

    def test_system_matrix_rows(self):
        _, system = _planar_system(3)
        assert system.matrix.shape == (12, 9)
        assert isinstance(system.vectors[0], GridFunction)
