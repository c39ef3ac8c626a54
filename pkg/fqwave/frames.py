"""Wavelet systems {δ_a τ_l ψ}, frame bounds, and the frame-theoretic certificates.

All analysis happens in the Fourier domain under the unitary convention, so a
Parseval frame has both bounds equal to 1 and inner products agree with the
point domain.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from fqwave.errors import (
    DimensionMismatchError,
    EmptySetError,
    PreconditionError,
    SearchBudgetExceededError,
)
from fqwave.ff_core import as_modulus
from fqwave.fourier import (
    ConventionLike,
    GridFunction,
    TransformConvention,
    dft,
    dilate,
    idft,
    random_generator,
    random_in_paley_wiener,
    roots_of_unity,
    translate,
)
from fqwave.geometry import Automorphism, lifted_rotation_group, rotation_group
from fqwave.points import Point, PointSet, all_coords
from fqwave.tiling import (
    canonical_spectrum,
    construct_wavelet_frame_set,
    verify_multiplicative_tiling,
    verify_spectral_pair,
)

# Tolerance ladder
IDENTITY_TOL = 1e-12
CERTIFICATE_TOL = 1e-9
RAYLEIGH_TOL = 1e-8
FALSIFICATION_MARGIN = 1e-6

# Eigensolver configuration
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 50

# Demo configuration
DEFAULT_SEED = 42
EXHAUSTIVE_POINTS = 9
EXHAUSTIVE_SUBSET_LIMIT = 4096
ORTHOGONAL_SEARCH_BUDGET = 20_000
GENERATOR_NAME = "PCG64"


@dataclass(frozen=True, eq=False)
class WaveletSystem:
    """Vectors δ_a τ_l ψ labelled by (index into ``dilations``, l).

    A freshly built system is row-major over dilations × translations.
    """

    mother: GridFunction
    dilations: Tuple[Automorphism, ...]
    translations: PointSet
    vectors: Tuple[GridFunction, ...]
    labels: Tuple[Tuple[int, Point], ...]

    def __len__(self) -> int:
        return len(self.vectors)

    @property
    def q(self) -> int:
        return self.mother.q

    @property
    def d(self) -> int:
        return self.mother.d

    @cached_property
    def matrix(self) -> np.ndarray:
        """Point-domain vectors as rows, shape (#vectors, q^d)."""
        if not self.vectors:
            return np.zeros((0, self.q**self.d), dtype=np.complex128)
        return np.stack([v.values for v in self.vectors])

    @cached_property
    def fourier_matrix(self) -> np.ndarray:
        """Rows ŵ_k under the unitary transform."""
        if not self.vectors:
            return np.zeros((0, self.q**self.d), dtype=np.complex128)
        return np.stack([dft(v).values for v in self.vectors])


@dataclass(frozen=True)
class FrameReport:
    lower: float
    upper: float
    tightness_residual: float
    parseval: bool
    orthogonal: bool
    dim: int
    vectors: int
    rank: int
    convention: str = TransformConvention.UNITARY.value
    seed: Optional[int] = None

    @property
    def redundancy(self) -> Optional[Fraction]:
        if self.dim == 0:
            return None
        return Fraction(self.vectors, self.dim)

    @property
    def tight(self) -> bool:
        return self.upper - self.lower <= CERTIFICATE_TOL * max(1.0, self.upper)


@dataclass(frozen=True)
class RayleighReport:
    samples: int
    min_ratio: float
    max_ratio: float
    seed: int

    def within(self, lower: float, upper: float, slack: float = RAYLEIGH_TOL) -> bool:
        return lower - slack <= self.min_ratio and self.max_ratio <= upper + slack

    def parseval(self, tol: float = RAYLEIGH_TOL) -> bool:
        return abs(self.min_ratio - 1.0) <= tol and abs(self.max_ratio - 1.0) <= tol


@dataclass(frozen=True)
class TightFamily:
    """Measured bounds of a family against its expected tight bound."""

    lower: float
    upper: float
    target: float
    certified: bool


@dataclass(frozen=True)
class PFReport:
    bound: float
    part1: TightFamily
    part2: Tuple[TightFamily, ...]
    part3: TightFamily
    part4: Optional[TightFamily]
    part4_skipped: Optional[str] = None

    @property
    def certified(self) -> bool:
        parts = [self.part1, self.part3, *self.part2]
        if self.part4 is not None:
            parts.append(self.part4)
        return all(p.certified for p in parts)


@dataclass(frozen=True)
class ConverseReport:
    coverage: bool
    disjoint: bool
    multiplicity_histogram: Dict[int, int]
    orthogonal: bool
    orthogonal_clause: Optional[bool]
    tight_frame_spectral_pair: Optional[bool] = None
    spectral_bound: Optional[float] = None


@dataclass(frozen=True)
class NoParsevalReport:
    q: int
    d: int
    configurations: int
    exhaustive_sets: int
    trials: int
    seed: int
    generator: str
    min_residual: float
    tight_found: bool
    parseval_found: bool
    origin_free_cases: int
    origin_free_zero_direction: int
    control_orthonormal: bool
    margin: float = FALSIFICATION_MARGIN

    @property
    def confirmed(self) -> bool:
        return (
            not self.tight_found
            and self.min_residual > self.margin
            and self.control_orthonormal
            and self.origin_free_zero_direction == self.origin_free_cases
        )


@dataclass(frozen=True)
class DuplicationReport:
    q: int
    base_lower: float
    base_upper: float
    doubled_lower: float
    doubled_upper: float
    trace_ratio: float
    claimed_bound: float
    claimed_reproduced: bool
    converse_coverage: bool
    converse_disjoint: bool


@dataclass(frozen=True)
class OrthogonalOriginReport:
    q: int
    configurations: int
    orthogonal_with_origin: int
    hypotheses_with_origin: int
    first_example: Optional[Dict[str, List]] = field(default=None)

    @property
    def answer_forced(self) -> bool:
        """True when no configuration meets every hypothesis with 0 ∈ E."""
        return self.hypotheses_with_origin == 0


# =============================================================================
# Systems
# =============================================================================


def mother_wavelet(
    points: PointSet, conv: ConventionLike = TransformConvention.UNITARY
) -> GridFunction:
    """ψ = (#E)^(−1/2) · idft(1_{E*}).

    Only the unitary convention yields a Parseval system; ``paper`` scales ψ
    by q^(d/2) and the frame bounds by q^d.
    """
    if not points:
        raise EmptySetError("mother wavelet needs a nonempty set")
    spectrum = GridFunction.indicator(points.star())
    return idft(spectrum, conv) * (len(points) ** -0.5)


def _check_dilations(q: int, d: int, dilations: Sequence[Automorphism]) -> None:
    for a in dilations:
        if (a.q, a.d) != (q, d):
            raise DimensionMismatchError((q, d), (a.q, a.d))


def build_system(
    mother: GridFunction, dilations: Sequence[Automorphism], translations: PointSet
) -> WaveletSystem:
    if (translations.q, translations.d) != mother.shape:
        raise DimensionMismatchError(mother.shape, (translations.q, translations.d))
    _check_dilations(mother.q, mother.d, dilations)
    shifts = translations.points()
    vectors, labels = [], []
    for i, a in enumerate(dilations):
        for t in shifts:
            vectors.append(dilate(translate(mother, t), a))
            labels.append((i, t))
    return WaveletSystem(mother, tuple(dilations), translations, tuple(vectors), tuple(labels))


def combine_systems(*systems: WaveletSystem) -> WaveletSystem:
    """Union of systems sharing a mother wavelet (W ∪ W keeps both copies)."""
    if not systems:
        raise PreconditionError("nothing to combine")
    first = systems[0]
    dilations: List[Automorphism] = []
    translations = PointSet.empty(first.q, first.d)
    vectors: List[GridFunction] = []
    labels: List[Tuple[int, Point]] = []
    for system in systems:
        if system.mother.shape != first.mother.shape:
            raise DimensionMismatchError(first.mother.shape, system.mother.shape)
        if not system.mother.allclose(first.mother):
            raise PreconditionError("combined systems must share the mother wavelet")
        offset = len(dilations)
        dilations.extend(system.dilations)
        translations = translations | system.translations
        vectors.extend(system.vectors)
        labels.extend((offset + i, t) for i, t in system.labels)
    return WaveletSystem(first.mother, tuple(dilations), translations, tuple(vectors), tuple(labels))


def system_fourier_rows(
    mother_hat: GridFunction, dilations: Sequence[Automorphism], translations: PointSet
) -> np.ndarray:
    """ŵ_(a,l)(m) = conj(χ_{a⁻¹l}(m)) · ψ̂(a* m), computed without materializing.

    Row order matches :func:`build_system`.
    """
    q, d = mother_hat.q, mother_hat.d
    _check_dilations(q, d, dilations)
    roots = roots_of_unity(q)
    grid = all_coords(q, d)
    shifts = translations.coords()
    blocks = []
    for a in dilations:
        window = mother_hat.values[a.inverse_transpose().permutation]
        moved = a.inverse().apply_coords(shifts)
        phases = np.mod(moved @ grid.T, q)
        blocks.append(roots[phases].conj() * window[None, :])
    if not blocks:
        return np.zeros((0, q**d), dtype=np.complex128)
    return np.concatenate(blocks, axis=0)


# =============================================================================
# Frame operator and bounds
# =============================================================================


def _operator(rows: np.ndarray) -> np.ndarray:
    """S = Σ_k r_k r_k^H for rows r_k."""
    return rows.T @ rows.conj()


def frame_operator(system: WaveletSystem, region: PointSet) -> np.ndarray:
    """S[u, v] = Σ_k ŵ_k(u) conj(ŵ_k(v)) for u, v ∈ F (in index order)."""
    if (region.q, region.d) != system.mother.shape:
        raise DimensionMismatchError(system.mother.shape, (region.q, region.d))
    return _operator(system.fourier_matrix[:, region.indices()])


def jacobi_eigenvalues(
    matrix: np.ndarray,
    tol: float = JACOBI_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
    method: str = "jacobi",
) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix.

    ``method="jacobi"`` runs cyclic complex Jacobi sweeps until the
    off-diagonal Frobenius norm drops below tol·max(1, |trace|/n);
    ``method="lapack"`` defers to numpy for cross-checks.
    """
    a = np.array(matrix, dtype=np.complex128)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if n == 0:
        return np.zeros(0)
    if method == "lapack":
        return np.linalg.eigvalsh(a)
    if method != "jacobi":
        raise ValueError(f"unknown eigensolver: {method!r}")

    a = (a + a.conj().T) / 2
    threshold = tol * max(1.0, abs(np.trace(a).real) / n)
    negligible = threshold * 1e-6
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.abs(a) ** 2) - np.sum(np.abs(np.diag(a)) ** 2))
        if off <= threshold:
            break
        for p in range(n - 1):
            for r in range(p + 1, n):
                apr = a[p, r]
                g = abs(apr)
                if g <= negligible:
                    continue
                phase = apr / g
                alpha, beta = a[p, p].real, a[r, r].real
                tau = (beta - alpha) / (2 * g)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1 + tau * tau))
                c = 1 / np.sqrt(1 + t * t)
                s = t * c

                col_p, col_r = a[:, p].copy(), a[:, r].copy()
                a[:, p] = c * col_p - s * np.conj(phase) * col_r
                a[:, r] = s * col_p + c * np.conj(phase) * col_r
                row_p, row_r = a[p, :].copy(), a[r, :].copy()
                a[p, :] = c * row_p - s * phase * row_r
                a[r, :] = s * row_p + c * phase * row_r

                a[p, r] = a[r, p] = 0
                a[p, p] = alpha - t * g
                a[r, r] = beta + t * g
    return np.sort(np.diag(a).real)


def _tightness_residual(operator: np.ndarray) -> float:
    n = operator.shape[0]
    if n == 0:
        return 0.0
    scalar = np.trace(operator).real / n
    return float(np.max(np.abs(operator - scalar * np.eye(n))))


def _is_orthogonal(rows: np.ndarray, tol: float) -> bool:
    """Nonzero rows, pairwise orthogonal up to tol relative to the largest norm."""
    if rows.shape[0] == 0:
        return True
    gram = rows.conj() @ rows.T
    diag = np.abs(np.diag(gram))
    scale = max(float(diag.max()), 1.0)
    if np.any(diag <= tol * scale):
        return False
    off = gram - np.diag(np.diag(gram))
    return bool(np.max(np.abs(off)) <= tol * scale)


def frame_bounds(
    system: WaveletSystem,
    region: PointSet,
    tol: float = CERTIFICATE_TOL,
    method: str = "jacobi",
    seed: Optional[int] = None,
) -> FrameReport:
    """Extreme eigenvalues of the frame operator on PW_F."""
    operator = frame_operator(system, region)
    dim = len(region)
    eigenvalues = jacobi_eigenvalues(operator, method=method)
    if dim:
        lower = max(float(eigenvalues[0]), 0.0)
        upper = max(float(eigenvalues[-1]), lower)
    else:
        lower = upper = 0.0
    scale = max(1.0, upper)
    return FrameReport(
        lower=lower,
        upper=upper,
        tightness_residual=_tightness_residual(operator),
        parseval=bool(dim) and abs(lower - 1) <= tol and abs(upper - 1) <= tol,
        orthogonal=_is_orthogonal(system.fourier_matrix[:, region.indices()], tol),
        dim=dim,
        vectors=len(system),
        rank=int(np.count_nonzero(eigenvalues > tol * scale)),
        seed=seed,
    )


def rayleigh_check(
    system: WaveletSystem,
    region: PointSet,
    samples: int = 100,
    seed: int = DEFAULT_SEED,
) -> RayleighReport:
    """Σ_k |⟨f, w_k⟩|² / ‖f‖² over random f ∈ PW_F, in the point domain."""
    rng = random_generator(seed)
    ratios = []
    for f in random_in_paley_wiener(region, rng, samples):
        norm2 = f.norm() ** 2
        if norm2 == 0:
            continue
        coefficients = system.matrix.conj() @ f.values
        ratios.append(float(np.sum(np.abs(coefficients) ** 2)) / norm2)
    if not ratios:
        return RayleighReport(0, 0.0, 0.0, seed)
    return RayleighReport(len(ratios), min(ratios), max(ratios), seed)


# =============================================================================
# Certificates
# =============================================================================


def _family_bounds(rows: np.ndarray, target: float, tol: float) -> TightFamily:
    eigenvalues = jacobi_eigenvalues(_operator(rows))
    if eigenvalues.size == 0:
        return TightFamily(0.0, 0.0, target, False)
    lower, upper = float(eigenvalues[0]), float(eigenvalues[-1])
    slack = tol * max(1.0, target)
    return TightFamily(
        lower, upper, target, abs(lower - target) <= slack and abs(upper - target) <= slack
    )


def _character_rows(frequencies: np.ndarray, support: np.ndarray, q: int) -> np.ndarray:
    """rows[l, x] = χ_l(x) for the given frequency and point coordinates."""
    return roots_of_unity(q)[np.mod(frequencies @ support.T, q)]


def certify_pf_theorem(
    points: PointSet,
    spectrum: PointSet,
    dilations: Sequence[Automorphism],
    tol: float = CERTIFICATE_TOL,
) -> PFReport:
    """Certify the four clauses for a spectral pair whose E* tiles Y.

    (1) {χ_l 1_{E*}} is tight on L²(E*) with bound #E.
    (2) {χ_{a* l} 1_{a(E*)}} is tight on L²(a(E*)) with the same bound, each a.
    (3) The union over a is tight on L²(Y) with bound #E.
    (4) If 0 ∉ E, (#E)^(−1/2) times that union is an orthonormal basis of L²(Y).
    """
    pair = verify_spectral_pair(points, spectrum, tol)
    if not pair.valid:
        raise PreconditionError(f"(E, L) is not a spectral pair: {pair.reason}")
    tiling = verify_multiplicative_tiling(points.star(), dilations)
    if not tiling.valid:
        raise PreconditionError(f"E* does not tile Y under the dilations: {tiling.summary()}")

    q, d = points.q, points.d
    bound = float(len(points))
    star = points.star().coords()
    freqs = spectrum.coords()

    part1 = _family_bounds(_character_rows(freqs, star, q), bound, tol)

    part2 = []
    blocks = []
    for a in dilations:
        moved_support = a.apply_coords(star)
        moved_freqs = a.inverse_transpose().apply_coords(freqs)
        rows = _character_rows(moved_freqs, moved_support, q)
        part2.append(_family_bounds(rows, bound, tol))
        block = np.zeros((len(freqs), q**d), dtype=np.complex128)
        block[:, a.permutation[points.star().indices()]] = rows
        blocks.append(block[:, 1:])
    union = np.concatenate(blocks, axis=0)
    part3 = _family_bounds(union, bound, tol)

    part4 = None
    skipped = None
    if points.contains_origin():
        skipped = "0 ∈ E: the orthonormal-basis clause requires 0 ∉ E"
    else:
        normalized = union / np.sqrt(bound)
        gram = normalized.conj() @ normalized.T
        residual = float(np.max(np.abs(gram - np.eye(gram.shape[0]))))
        square = normalized.shape[0] == normalized.shape[1]
        part4 = TightFamily(1.0, 1.0, 1.0, square and residual <= tol)
    return PFReport(bound, part1, tuple(part2), part3, part4, skipped)


def certify_converse(
    system: WaveletSystem,
    points: PointSet,
    dilations: Sequence[Automorphism],
    tol: float = CERTIFICATE_TOL,
) -> ConverseReport:
    """From a Parseval system on PW_Y, check Y = ⋃ aᵗ(E*) and its consequences."""
    q, d = points.q, points.d
    punctured = PointSet.full(q, d).star()
    report = frame_bounds(system, punctured, tol)
    if not report.parseval:
        raise PreconditionError(
            f"system is not Parseval on PW_Y (bounds {report.lower:.6g}, {report.upper:.6g})"
        )
    counts = np.zeros(q**d, dtype=np.int64)
    members = points.star().indices()
    for a in dilations:
        np.add.at(counts, a.transpose().permutation[members], 1)
    target = counts[1:]
    values, freq = np.unique(target, return_counts=True)
    histogram = {int(v): int(c) for v, c in zip(values, freq)}
    coverage = bool(np.all(target >= 1))
    disjoint = bool(np.all(target <= 1))

    pair_ok, pair_bound = None, None
    if disjoint:
        rows = _character_rows(system.translations.coords(), points.star().coords(), q)
        eigenvalues = jacobi_eigenvalues(_operator(rows))
        if eigenvalues.size:
            lower, upper = float(eigenvalues[0]), float(eigenvalues[-1])
            pair_ok = lower > tol and upper - lower <= tol * max(1.0, upper)
            pair_bound = upper

    clause = None
    if report.orthogonal and system.translations.contains_origin():
        clause = disjoint
    return ConverseReport(
        coverage=coverage,
        disjoint=disjoint,
        multiplicity_histogram=histogram,
        orthogonal=report.orthogonal,
        orthogonal_clause=clause,
        tight_frame_spectral_pair=pair_ok,
        spectral_bound=pair_bound,
    )


# =============================================================================
# Demos
# =============================================================================


def dilation_pool(q: int, d: int) -> List[Automorphism]:
    """Rotations (lifted when d > 2, q ≡ 3 mod 4) together with all diagonal maps."""
    modulus = as_modulus(q)
    pool: List[Automorphism] = []
    if d >= 2 and modulus.is_three_mod_four:
        pool.extend(lifted_rotation_group(modulus, d))
    for diag in itertools.product(range(1, q), repeat=d):
        pool.append(Automorphism.diagonal(q, diag))
    unique: List[Automorphism] = []
    seen = set()
    for a in pool:
        if a not in seen:
            seen.add(a)
            unique.append(a)
    return unique


def _nonempty_subsets(items: Sequence) -> List[Tuple]:
    return [
        combo
        for size in range(1, len(items) + 1)
        for combo in itertools.combinations(items, size)
    ]


def _random_mask(rng: np.random.Generator, n: int, proper: bool) -> np.ndarray:
    while True:
        mask = rng.random(n) < 0.5
        if mask.any() and (not proper or not mask.all()):
            return mask


def demo_no_full_space_parseval(
    q: int,
    d: int = 1,
    trials: int = 0,
    seed: int = DEFAULT_SEED,
    margin: float = FALSIFICATION_MARGIN,
) -> NoParsevalReport:
    """Search for a tight system on the full L²(F_q^d) with ψ = idft(1_E).

    When q^d ≤ 9 every nonempty proper E is tried; A and Λ range over all
    nonempty subsets when that grid is small, otherwise the full pool and Λ
    = F_q^d are used per set. ``trials`` random configurations follow.
    """
    as_modulus(q)
    n = q**d
    pool = dilation_pool(q, d)
    grid_points = PointSet.full(q, d)
    stats = {"count": 0, "min": np.inf, "tight": False, "parseval": False, "free": 0, "zero": 0}

    def run(mask: np.ndarray, dilations: Sequence[Automorphism], translations: PointSet) -> None:
        mother_hat = GridFunction(q, d, mask.astype(np.float64))
        rows = system_fourier_rows(mother_hat, dilations, translations)
        operator = _operator(rows)
        residual = _tightness_residual(operator)
        stats["count"] += 1
        stats["min"] = min(stats["min"], residual)
        if residual <= margin:
            stats["tight"] = True
            if abs(np.trace(operator).real / n - 1) <= margin:
                stats["parseval"] = True
        if not mask[0]:
            stats["free"] += 1
            if abs(operator[0, 0]) <= margin:
                stats["zero"] += 1

    exhaustive_sets = 0
    if n <= EXHAUSTIVE_POINTS:
        full_grid = 2 ** len(pool) * 2**n <= EXHAUSTIVE_SUBSET_LIMIT
        dilation_choices = _nonempty_subsets(pool) if full_grid else [tuple(pool)]
        translation_choices = (
            [PointSet.from_indices(q, d, c) for c in _nonempty_subsets(range(n))]
            if full_grid
            else [grid_points]
        )
        for bits in itertools.product([False, True], repeat=n):
            mask = np.array(bits)
            if not mask.any() or mask.all():
                continue
            exhaustive_sets += 1
            for dilations in dilation_choices:
                for translations in translation_choices:
                    run(mask, dilations, translations)

    rng = random_generator(seed)
    for _ in range(trials):
        mask = _random_mask(rng, n, proper=True)
        chosen = _random_mask(rng, len(pool), proper=False)
        dilations = [a for a, keep in zip(pool, chosen) if keep]
        translations = PointSet(q, d, _random_mask(rng, n, proper=False))
        run(mask, dilations, translations)

    control = system_fourier_rows(
        GridFunction(q, d, np.full(n, n**-0.5)), [Automorphism.identity(q, d)], grid_points
    )
    control_gram = control.conj() @ control.T
    control_ok = bool(np.max(np.abs(control_gram - np.eye(n))) <= CERTIFICATE_TOL)

    return NoParsevalReport(
        q=q,
        d=d,
        configurations=stats["count"],
        exhaustive_sets=exhaustive_sets,
        trials=trials,
        seed=seed,
        generator=GENERATOR_NAME,
        min_residual=float(stats["min"]),
        tight_found=stats["tight"],
        parseval_found=stats["parseval"],
        origin_free_cases=stats["free"],
        origin_free_zero_direction=stats["zero"],
        control_orthonormal=control_ok,
        margin=margin,
    )


def demo_duplicate_system(q: int, tol: float = CERTIFICATE_TOL) -> DuplicationReport:
    """Measure W ∪ W for the planar construction and run the converse on it."""
    points = construct_wavelet_frame_set(q, 2)
    dilations = rotation_group(q)
    spectrum = canonical_spectrum(points)
    punctured = PointSet.full(q, 2).star()
    mother = mother_wavelet(points)

    single = build_system(mother, dilations, spectrum)
    doubled = combine_systems(single, single)
    base = frame_bounds(single, punctured, tol)
    twice = frame_bounds(doubled, punctured, tol)
    trace_ratio = float(
        np.trace(frame_operator(doubled, punctured)).real
        / np.trace(frame_operator(single, punctured)).real
    )

    halved = build_system(mother * (2**-0.5), dilations, spectrum)
    converse = certify_converse(
        combine_systems(halved, halved), points, list(dilations) * 2, tol
    )
    claimed = base.lower / 2
    return DuplicationReport(
        q=q,
        base_lower=base.lower,
        base_upper=base.upper,
        doubled_lower=twice.lower,
        doubled_upper=twice.upper,
        trace_ratio=trace_ratio,
        claimed_bound=claimed,
        claimed_reproduced=abs(twice.lower - claimed) <= tol and abs(twice.upper - claimed) <= tol,
        converse_coverage=converse.coverage,
        converse_disjoint=converse.disjoint,
    )


def search_orthogonal_origin(
    q: int,
    budget: int = ORTHOGONAL_SEARCH_BUDGET,
    tol: float = CERTIFICATE_TOL,
) -> OrthogonalOriginReport:
    """Scan E ∋ 0 in F_q for orthogonal systems {δ_a τ_l ψ}, ψ̂ = (#E)^(−1/2) 1_{E*}.

    Counts the orthogonal configurations, and separately those that also meet
    the spectral-pair and multiplicative-tiling hypotheses.
    """
    as_modulus(q)
    pool = dilation_pool(q, 1)
    sets = [
        (0,) + rest
        for size in range(1, q - 1)
        for rest in itertools.combinations(range(1, q), size)
    ]
    dilation_choices = _nonempty_subsets(pool)
    translation_choices = [PointSet.from_indices(q, 1, c) for c in _nonempty_subsets(range(q))]
    total = len(sets) * len(dilation_choices) * len(translation_choices)
    if total > budget:
        raise SearchBudgetExceededError(budget, f"{total} configurations for q={q}")

    orthogonal = 0
    with_hypotheses = 0
    first = None
    for members in sets:
        points = PointSet.from_indices(q, 1, members)
        mother_hat = GridFunction.indicator(points.star()) * (len(points) ** -0.5)
        for dilations in dilation_choices:
            tiles = verify_multiplicative_tiling(points.star(), dilations).valid
            for translations in translation_choices:
                rows = system_fourier_rows(mother_hat, dilations, translations)
                if not _is_orthogonal(rows, tol):
                    continue
                orthogonal += 1
                if first is None:
                    first = {
                        "set": [int(i) for i in members],
                        "dilations": [int(a.entries[0, 0]) for a in dilations],
                        "translations": [int(i) for i in translations.indices()],
                    }
                if tiles and verify_spectral_pair(points, translations, tol).valid:
                    with_hypotheses += 1
    return OrthogonalOriginReport(q, total, orthogonal, with_hypotheses, first)
