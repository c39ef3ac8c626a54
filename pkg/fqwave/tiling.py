"""Multiplicative and translational tilings, spectral pairs, and the constructions.

Verification functions never raise for an object that fails the property;
they return a certificate carrying a witness. Exceptions are reserved for
inputs that violate an operation's precondition.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from fqwave.errors import (
    CardinalityError,
    DimensionMismatchError,
    EmptySetError,
    NotAGraphError,
    OriginInSetError,
    PreconditionError,
    SearchBudgetExceededError,
)
from fqwave.ff_core import PrimeModulus, as_modulus, find_k
from fqwave.fourier import roots_of_unity
from fqwave.geometry import Automorphism, circle, orthogonal_group_2d
from fqwave.points import Point, PointSet, all_coords, indices_of

__all__ = [
    "GraphDecomposition",
    "ObstructionReport",
    "PointSet",
    "SpectralPair",
    "TilingCertificate",
    "canonical_spectrum",
    "circle_intersections",
    "construct_half_line_set",
    "construct_sector_set",
    "construct_wavelet_frame_set",
    "find_translational_partner",
    "is_graph",
    "lift_wavelet_set",
    "sign_automorphisms",
    "spectrum_search",
    "tiling_partner",
    "verify_multiplicative_tiling",
    "verify_q1mod4_obstruction",
    "verify_spectral_pair",
    "verify_translational_tiling",
]

# Configuration
SPECTRAL_TOL = 1e-9
SPECTRUM_SEARCH_LIMIT = 12
SPECTRUM_SEARCH_BUDGET = 200_000
PARTNER_SEARCH_BUDGET = 200_000

MULTIPLICATIVE = "multiplicative"
TRANSLATIONAL = "translational"


@dataclass(frozen=True)
class TilingCertificate:
    """Outcome of a multiplicity count over the tiling target.

    ``witness`` is the lexicographically first target point whose
    multiplicity differs from 1; ``multiplicity_histogram`` maps a
    multiplicity to the number of target points having it.
    """

    kind: str
    covered: bool
    disjoint: bool
    witness: Optional[Point]
    multiplicity_histogram: Dict[int, int] = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return self.covered and self.disjoint

    def summary(self) -> str:
        if self.valid:
            return f"{self.kind} tiling: valid"
        problem = "uncovered" if not self.covered else "overlapping"
        return f"{self.kind} tiling: INVALID ({problem}, witness {self.witness})"


@dataclass(frozen=True)
class SpectralPair:
    set: PointSet
    spectrum: PointSet
    gram_residual: float
    valid: bool
    reason: Optional[str] = None


@dataclass(frozen=True)
class GraphDecomposition:
    """E = {s·e1 + f(s)·e2 : s ∈ F_q}; ``table[s]`` is f(s)."""

    e1: Point
    e2: Point
    table: Tuple[int, ...]
    dual: Tuple[Point, Point]


@dataclass(frozen=True)
class ObstructionReport:
    q: int
    zero_circle_size: int
    uncovered: int
    uncovered_on_zero_circle: int
    zero_circle_hits: int
    rotations: int

    @property
    def confirmed(self) -> bool:
        return (
            self.zero_circle_size == 2 * self.q - 1
            and self.uncovered_on_zero_circle == 2 * self.q - 2
            and self.zero_circle_hits == 0
        )


# =============================================================================
# Certificates
# =============================================================================


def _histogram(counts: np.ndarray) -> Dict[int, int]:
    values, freq = np.unique(counts, return_counts=True)
    return {int(v): int(c) for v, c in zip(values, freq)}


def _certificate(kind: str, counts: np.ndarray, offset: int, q: int, d: int) -> TilingCertificate:
    bad = np.flatnonzero(counts != 1)
    witness = Point.from_index(int(bad[0]) + offset, q, d) if bad.size else None
    return TilingCertificate(
        kind=kind,
        covered=bool(np.all(counts >= 1)),
        disjoint=bool(np.all(counts <= 1)),
        witness=witness,
        multiplicity_histogram=_histogram(counts),
    )


def verify_multiplicative_tiling(
    points: PointSet, automorphisms: Sequence[Automorphism]
) -> TilingCertificate:
    """Count how often each point of Y = F_q^d \\ {0} lies in ⋃ α(E)."""
    if points.contains_origin():
        raise OriginInSetError()
    counts = np.zeros(points.q**points.d, dtype=np.int64)
    members = points.indices()
    for a in automorphisms:
        if (a.q, a.d) != (points.q, points.d):
            raise DimensionMismatchError((points.q, points.d), (a.q, a.d))
        np.add.at(counts, a.permutation[members], 1)
    return _certificate(MULTIPLICATIVE, counts[1:], 1, points.q, points.d)


def verify_translational_tiling(points: PointSet, translations: PointSet) -> TilingCertificate:
    """Count how often each point of F_q^d lies in ⋃ (E + λ)."""
    if (points.q, points.d) != (translations.q, translations.d):
        raise DimensionMismatchError((points.q, points.d), (translations.q, translations.d))
    q = points.q
    counts = np.zeros(q**points.d, dtype=np.int64)
    coords = points.coords()
    for shift in translations.coords():
        np.add.at(counts, indices_of(coords + shift, q), 1)
    return _certificate(TRANSLATIONAL, counts, 0, q, points.d)


def verify_spectral_pair(
    points: PointSet, spectrum: PointSet, tol: float = SPECTRAL_TOL
) -> SpectralPair:
    """Check G[l, l'] = Σ_{x∈E} χ_l(x) conj(χ_{l'}(x)) against #E·I."""
    if (points.q, points.d) != (spectrum.q, spectrum.d):
        raise DimensionMismatchError((points.q, points.d), (spectrum.q, spectrum.d))
    n, m = len(points), len(spectrum)
    if n == 0 or m == 0:
        return SpectralPair(points, spectrum, float("inf"), False, "empty set or spectrum")
    roots = roots_of_unity(points.q)
    chars = roots[np.mod(spectrum.coords() @ points.coords().T, points.q)]
    gram = chars @ chars.conj().T
    residual = float(np.max(np.abs(gram - n * np.eye(m))))
    if n != m:
        return SpectralPair(
            points, spectrum, residual, False, f"cardinality mismatch: #E={n}, #L={m}"
        )
    if residual > tol * n:
        return SpectralPair(
            points, spectrum, residual, False, f"Gram residual {residual:.3e} exceeds {tol * n:.3e}"
        )
    return SpectralPair(points, spectrum, residual, True)


# =============================================================================
# Constructions
# =============================================================================


def construct_sector_set(q) -> PointSet:
    """Lexicographically smallest point of every circle S_r, r ≠ 0."""
    modulus = as_modulus(q)
    modulus.require_class(3, "rotational tiling of F_q² needs q ≡ 3 (mod 4)")
    return _one_point_per_circle(modulus)


def _one_point_per_circle(modulus: PrimeModulus) -> PointSet:
    picks = [circle(modulus, r).points.first() for r in range(1, modulus.q)]
    return PointSet.from_points(modulus.q, 2, [p for p in picks if p is not None])


def construct_wavelet_frame_set(q, d: int = 2) -> PointSet:
    """E = {(0,0)} ∪ {(x,0) : 0 < x ≤ (q−1)/2} ∪ {(x,kx) : (q+1)/2 ≤ x ≤ q−1}.

    For d > 2 the set is lifted to E × F_q^(d−2).
    """
    modulus = as_modulus(q)
    modulus.require_class(
        3,
        "no rotational wavelet set exists for q ≡ 1 (mod 4) (the zero circle has 2q−1 points)",
    )
    if d < 2:
        raise PreconditionError(f"wavelet frame set needs d ≥ 2, got d={d}")
    p = modulus.q
    k = find_k(modulus).value
    rows = [(x, 0) for x in range((p + 1) // 2)]
    rows += [(x, k * x) for x in range((p + 1) // 2, p)]
    base = PointSet.from_points(p, 2, rows)
    if d == 2:
        return base
    return base.product(PointSet.full(p, d - 2))


def lift_wavelet_set(base: PointSet, d: int, copies: int = 1) -> PointSet:
    """E × ... × E × F_q^(d − 2·copies) for a planar set E."""
    if base.d != 2:
        raise DimensionMismatchError((base.q, 2), (base.q, base.d))
    if copies < 1 or 2 * copies > d:
        raise PreconditionError(f"cannot place {copies} planar copies in dimension {d}")
    lifted = base
    for _ in range(copies - 1):
        lifted = lifted.product(base)
    if d > 2 * copies:
        lifted = lifted.product(PointSet.full(base.q, d - 2 * copies))
    return lifted


def tiling_partner(q, d: int = 2, copies: int = 1) -> PointSet:
    """{t·e_2 : t ∈ F_q} per planar copy; translational partner of the lifted set."""
    p = as_modulus(q).q
    if copies < 1 or 2 * copies > d:
        raise PreconditionError(f"cannot place {copies} planar copies in dimension {d}")
    column = PointSet.from_points(p, 2, [(0, t) for t in range(p)])
    partner = column
    for _ in range(copies - 1):
        partner = partner.product(column)
    if d > 2 * copies:
        partner = partner.product(PointSet.singleton(Point.origin(p, d - 2 * copies)))
    return partner


def construct_half_line_set(q) -> PointSet:
    """{1, ..., (q−1)/2} ⊂ F_q; tiles F_q \\ {0} under x ↦ ±x."""
    p = as_modulus(q).q
    return PointSet.from_indices(p, 1, range(1, (p - 1) // 2 + 1))


def sign_automorphisms(q, d: int = 1) -> List[Automorphism]:
    """[I, −I] on F_q^d."""
    p = as_modulus(q).q
    return [Automorphism.identity(p, d), Automorphism.diagonal(p, [-1] * d)]


def circle_intersections(points: PointSet) -> Dict[int, int]:
    """#(E ∩ S_r) for every radius r, measured on the first two coordinates."""
    planar = points if points.d == 2 else points.project([0, 1])
    radii = np.mod(np.sum(planar.coords() ** 2, axis=1), planar.q)
    counts = np.bincount(radii, minlength=planar.q)
    return {r: int(c) for r, c in enumerate(counts)}


# =============================================================================
# Graphs and spectra
# =============================================================================


def _graph_directions(q: int) -> List[Tuple[Tuple[int, int], Tuple[int, int]]]:
    """Basis pairs (e1, e2) in scan order: fiber direction e2 first by slope."""
    pairs = [((1, 0), (0, 1))]
    pairs += [((0, 1), (1, s)) for s in range(q)]
    return pairs


def is_graph(points: PointSet) -> Optional[GraphDecomposition]:
    """First basis (e1, e2) over which E = {s·e1 + f(s)·e2}, or None."""
    if points.d != 2:
        raise DimensionMismatchError((points.q, 2), (points.q, points.d))
    q = points.q
    if len(points) != q:
        raise CardinalityError(q, len(points), "graph candidate")
    coords = points.coords()
    for e1, e2 in _graph_directions(q):
        basis = Automorphism.from_rows(q, [[e1[0], e2[0]], [e1[1], e2[1]]])
        dual = basis.inverse()
        s_t = dual.apply_coords(coords)
        if len(np.unique(s_t[:, 0])) != q:
            continue
        table = [0] * q
        for s, t in s_t:
            table[int(s)] = int(t)
        rows = dual.to_list()
        return GraphDecomposition(
            e1=Point(e1, q),
            e2=Point(e2, q),
            table=tuple(table),
            dual=(Point(tuple(rows[0]), q), Point(tuple(rows[1]), q)),
        )
    return None


def canonical_spectrum(points: PointSet) -> PointSet:
    """L = {l·e1* : l ∈ F_q} for a graph; products of graphs and full factors.

    Singletons get {0} and the whole space gets itself.
    """
    q, d = points.q, points.d
    if len(points) == 1:
        return PointSet.singleton(Point.origin(q, d))
    if len(points) == q**d:
        return PointSet.full(q, d)
    if d == 2:
        try:
            graph = is_graph(points)
        except CardinalityError as e:
            raise NotAGraphError(f"set of {len(points)} points is not a graph: {e}") from e
        if graph is None:
            raise NotAGraphError("set is not a graph over any basis of F_q²")
        dual = np.array(graph.dual[0].coords, dtype=np.int64)
        return PointSet.from_coords(q, 2, np.outer(np.arange(q), dual))
    if d < 2:
        raise NotAGraphError(f"no canonical spectrum for a {len(points)}-point subset of F_q")
    head = points.project([0, 1])
    tail = points.project(list(range(2, d)))
    if head.product(tail) != points:
        raise NotAGraphError("set is not a product of a planar graph and a tail factor")
    return canonical_spectrum(head).product(canonical_spectrum(tail))


def _character_sums(points: PointSet) -> np.ndarray:
    """Σ_{x∈E} χ_m(x) for every m in index order."""
    phases = np.mod(all_coords(points.q, points.d) @ points.coords().T, points.q)
    return roots_of_unity(points.q)[phases].sum(axis=1)


def spectrum_search(
    points: PointSet,
    limit: int = SPECTRUM_SEARCH_LIMIT,
    budget: int = SPECTRUM_SEARCH_BUDGET,
) -> Optional[PointSet]:
    """Lexicographically first spectrum of E containing 0, or None.

    L is a spectrum iff every difference l − l' lies in the zero set of the
    character sum of E; this is a clique search in that orthogonality graph.
    """
    n = len(points)
    if n == 0:
        raise EmptySetError("spectrum search needs a nonempty set")
    if n > limit:
        raise SearchBudgetExceededError(limit, f"#E={n} exceeds the search limit")
    q, d = points.q, points.d
    if n == 1:
        return PointSet.singleton(Point.origin(q, d))

    zero = np.abs(_character_sums(points)) <= SPECTRAL_TOL * n
    zero[0] = False
    candidates = np.flatnonzero(zero)
    cand_coords = all_coords(q, d)[candidates]
    diffs = indices_of(
        (cand_coords[:, None, :] - cand_coords[None, :, :]).reshape(-1, d), q
    ).reshape(len(candidates), len(candidates))
    adjacent = zero[diffs]

    nodes = 0

    def extend(chosen: List[int], pool: np.ndarray) -> Optional[List[int]]:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceededError(budget, f"clique search for #E={n}")
        if len(chosen) == n - 1:
            return chosen
        if len(chosen) + len(pool) < n - 1:
            return None
        for pos, c in enumerate(pool):
            found = extend(chosen + [int(c)], pool[pos + 1 :][adjacent[c, pool[pos + 1 :]]])
            if found is not None:
                return found
        return None

    found = extend([], np.arange(len(candidates)))
    if found is None:
        return None
    return PointSet.from_indices(q, d, [0] + [int(candidates[c]) for c in found])


def find_translational_partner(
    points: PointSet, budget: int = PARTNER_SEARCH_BUDGET
) -> Optional[PointSet]:
    """Exact-cover search for Λ with E ⊕ Λ = F_q^d, or None."""
    q, d = points.q, points.d
    total = q**d
    n = len(points)
    if n == 0:
        raise EmptySetError("tiling partner search needs a nonempty set")
    if total % n:
        return None
    coords = points.coords()
    all_pts = all_coords(q, d)
    # shapes[λ] = indices of E + λ
    shapes = np.stack([indices_of(coords + all_pts[i], q) for i in range(total)])
    covered = np.zeros(total, dtype=bool)
    chosen: List[int] = []
    nodes = 0

    def solve() -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceededError(budget, "translational partner search")
        free = np.flatnonzero(~covered)
        if free.size == 0:
            return True
        target = all_pts[free[0]]
        # λ = target − e for each e ∈ E puts target inside E + λ
        for lam in sorted(set(int(i) for i in indices_of(target - coords, q))):
            cells = shapes[lam]
            if covered[cells].any():
                continue
            covered[cells] = True
            chosen.append(lam)
            if solve():
                return True
            chosen.pop()
            covered[cells] = False
        return False

    if not solve():
        return None
    return PointSet.from_indices(q, d, chosen)


# =============================================================================
# q ≡ 1 (mod 4)
# =============================================================================


def verify_q1mod4_obstruction(q) -> ObstructionReport:
    """Show that norm-preserving orbits of a one-point-per-circle set miss S_0 \\ {0}.

    ``zero_circle_hits`` counts pairs (α, p) with p off the zero circle and
    α(p) on it, over every point p, so the conclusion holds for any choice of
    representatives and not just the lexicographic one.
    """
    modulus = as_modulus(q)
    modulus.require_class(1, "the zero-circle obstruction concerns q ≡ 1 (mod 4)")
    p = modulus.q
    zero_circle = circle(modulus, 0).points
    representatives = _one_point_per_circle(modulus)
    maps = orthogonal_group_2d(modulus)

    covered = np.zeros(p * p, dtype=bool)
    off_zero = zero_circle.complement().indices()
    hits = 0
    for a in maps:
        covered[a.permutation[representatives.indices()]] = True
        hits += int(np.count_nonzero(zero_circle.mask[a.permutation[off_zero]]))
    covered[0] = True  # the origin is not part of Y
    uncovered = PointSet(p, 2, ~covered)
    return ObstructionReport(
        q=p,
        zero_circle_size=len(zero_circle),
        uncovered=len(uncovered),
        uncovered_on_zero_circle=len(uncovered & zero_circle),
        zero_circle_hits=hits,
        rotations=len(maps),
    )
