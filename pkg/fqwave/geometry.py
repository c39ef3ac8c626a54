"""Circles S_r, automorphisms of F_q^d and the rotation group of F_q².

Identifying (x, y) with x + yi in GF(q²), the unit circle S_1 is a cyclic
subgroup of order q + 1 when q ≡ 3 (mod 4), and multiplication by a generator
acts on F_q² as the matrix [[a, −b], [b, a]].
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from fqwave.errors import (
    DimensionMismatchError,
    PreconditionError,
    SingularMatrixError,
)
from fqwave.ff_core import (
    FieldElement,
    GaussianInt,
    PrimeModulus,
    as_modulus,
    element_order,
    sqrt_mod,
)
from fqwave.points import Point, PointSet, all_coords, indices_of

__all__ = [
    "Automorphism",
    "Circle",
    "Point",
    "block_lift",
    "circle",
    "circles",
    "find_rotation_generator",
    "lifted_rotation_group",
    "orbit",
    "orthogonal_group_2d",
    "radius",
    "rotation_group",
    "rotation_matrix",
]


def _gauss_jordan(matrix: np.ndarray, q: int) -> Tuple[int, Optional[np.ndarray]]:
    """Determinant and inverse of a square integer matrix over F_q."""
    n = matrix.shape[0]
    work = [[int(v) % q for v in row] + [int(i == j) for j in range(n)] for i, row in enumerate(matrix)]
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            return 0, None
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        pv = work[col][col]
        det = det * pv % q
        inv_pv = pow(pv, -1, q)
        work[col] = [v * inv_pv % q for v in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                factor = work[r][col]
                work[r] = [(a - factor * b) % q for a, b in zip(work[r], work[col])]
    inverse = np.array([row[n:] for row in work], dtype=np.int64)
    return det % q, inverse


@dataclass(frozen=True, eq=False)
class Automorphism:
    """An invertible d×d matrix over F_q acting on column vectors."""

    entries: np.ndarray
    q: int

    def __post_init__(self):
        entries = np.mod(np.array(self.entries, dtype=np.int64), self.q)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise PreconditionError(f"automorphism needs a square matrix, got shape {entries.shape}")
        det, inverse = _gauss_jordan(entries, self.q)
        if inverse is None:
            raise SingularMatrixError(self.q, det)
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_det", det)
        object.__setattr__(self, "_inverse", inverse)

    @classmethod
    def from_rows(cls, q: int, rows: Sequence[Sequence[int]]) -> "Automorphism":
        return cls(np.array(rows, dtype=np.int64), q)

    @classmethod
    def identity(cls, q: int, d: int) -> "Automorphism":
        return cls(np.eye(d, dtype=np.int64), q)

    @classmethod
    def diagonal(cls, q: int, diag: Sequence[int]) -> "Automorphism":
        return cls(np.diag(np.array(diag, dtype=np.int64)), q)

    @property
    def d(self) -> int:
        return self.entries.shape[0]

    @property
    def determinant(self) -> int:
        return self._det

    def transpose(self) -> "Automorphism":
        return Automorphism(self.entries.T, self.q)

    def inverse(self) -> "Automorphism":
        return Automorphism(self._inverse, self.q)

    def inverse_transpose(self) -> "Automorphism":
        """a* = (aᵗ)⁻¹ = (a⁻¹)ᵗ."""
        return Automorphism(self._inverse.T, self.q)

    def compose(self, other: "Automorphism") -> "Automorphism":
        """Matrix product self·other (apply ``other`` first)."""
        if other.q != self.q or other.d != self.d:
            raise DimensionMismatchError((self.q, self.d), (other.q, other.d))
        return Automorphism(self.entries @ other.entries, self.q)

    def power(self, n: int) -> "Automorphism":
        if n < 0:
            return self.inverse().power(-n)
        result = Automorphism.identity(self.q, self.d)
        base = self
        while n:
            if n & 1:
                result = result.compose(base)
            base = base.compose(base)
            n >>= 1
        return result

    def apply(self, point: Point) -> Point:
        if point.q != self.q or point.d != self.d:
            raise DimensionMismatchError((self.q, self.d), (point.q, point.d))
        image = self.entries @ np.array(point.coords, dtype=np.int64)
        return Point(tuple(int(v) for v in image), self.q)

    def apply_coords(self, coords: np.ndarray) -> np.ndarray:
        """Apply to each row of an (n, d) coordinate array."""
        return np.mod(np.asarray(coords, dtype=np.int64) @ self.entries.T, self.q)

    def apply_set(self, points: PointSet) -> PointSet:
        if points.q != self.q or points.d != self.d:
            raise DimensionMismatchError((self.q, self.d), (points.q, points.d))
        return PointSet.from_indices(self.q, self.d, self.permutation[points.indices()])

    @cached_property
    def permutation(self) -> np.ndarray:
        """perm[i] = index of a·x_i over all points x_i of F_q^d."""
        perm = indices_of(self.apply_coords(all_coords(self.q, self.d)), self.q)
        perm.setflags(write=False)
        return perm

    def __matmul__(self, other: Union["Automorphism", Point]):
        if isinstance(other, Automorphism):
            return self.compose(other)
        if isinstance(other, Point):
            return self.apply(other)
        return NotImplemented

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.entries, np.eye(self.d, dtype=np.int64)))

    def to_list(self) -> List[List[int]]:
        return [[int(v) for v in row] for row in self.entries]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.q == other.q and bool(np.array_equal(self.entries, other.entries))

    def __hash__(self) -> int:
        return hash((self.q, self.entries.shape, self.entries.tobytes()))

    def __repr__(self) -> str:
        return f"Automorphism(q={self.q}, {self.to_list()})"


@dataclass(frozen=True)
class Circle:
    """S_r = {(x, y) : x² + y² = r} in F_q²."""

    radius: FieldElement
    points: PointSet = field(repr=False)

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, point) -> bool:
        return point in self.points

    @property
    def sorted_points(self) -> List[Point]:
        return self.points.points()


def radius(point: Point) -> FieldElement:
    """Σ x_i² mod q (x² + y² for points of F_q²)."""
    return FieldElement(sum(c * c for c in point.coords), PrimeModulus(point.q))


def circle(q: Union[int, PrimeModulus], r: Union[int, FieldElement]) -> Circle:
    """Enumerate S_r by scanning x and solving y² = r − x²."""
    modulus = as_modulus(q)
    r_elem = r if isinstance(r, FieldElement) else FieldElement(r, modulus)
    p = modulus.q
    rows = []
    for x in range(p):
        y = sqrt_mod(FieldElement(r_elem.value - x * x, modulus))
        if y is None:
            continue
        rows.append((x, y.value))
        rows.append((x, -y.value % p))
    return Circle(r_elem, PointSet.from_coords(p, 2, np.array(rows, dtype=np.int64).reshape(-1, 2)))


def circles(q: Union[int, PrimeModulus]) -> Dict[int, Circle]:
    modulus = as_modulus(q)
    return {r: circle(modulus, r) for r in range(modulus.q)}


def find_rotation_generator(q: Union[int, PrimeModulus]) -> GaussianInt:
    """First element of S_1 (lexicographic scan) of full order q + 1."""
    modulus = as_modulus(q)
    modulus.require_class(3, "S_1 is cyclic of order q + 1 only for q ≡ 3 (mod 4)")
    for a, b in circle(modulus, 1).points.coords():
        g = GaussianInt.of(modulus, int(a), int(b))
        if element_order(g) == modulus.q + 1:
            return g
    raise PreconditionError(f"no generator of S_1 for q={modulus.q}")  # unreachable


def rotation_matrix(g: GaussianInt) -> Automorphism:
    """[[a, −b], [b, a]] for g = a + bi on the unit circle."""
    if g.norm().value != 1:
        raise PreconditionError(f"{g!r} is not on the unit circle (a² + b² = {g.norm().value})")
    a, b = g.re.value, g.im.value
    return Automorphism.from_rows(g.q, [[a, -b], [b, a]])


def rotation_group(q: Union[int, PrimeModulus]) -> List[Automorphism]:
    """[I, R, R², ..., R^q] for R the rotation of a generator of S_1."""
    modulus = as_modulus(q)
    rotation = rotation_matrix(find_rotation_generator(modulus))
    group = [Automorphism.identity(modulus.q, 2)]
    for _ in range(modulus.q):
        group.append(rotation.compose(group[-1]))
    return group


def block_lift(a: Automorphism, d: int) -> Automorphism:
    """diag(a, I_{d−2}) for a 2×2 automorphism."""
    if a.d != 2:
        raise DimensionMismatchError((a.q, 2), (a.q, a.d))
    if d <= 2:
        raise PreconditionError(f"block lift needs d > 2, got d={d}")
    lifted = np.eye(d, dtype=np.int64)
    lifted[:2, :2] = a.entries
    return Automorphism(lifted, a.q)


def lifted_rotation_group(q: Union[int, PrimeModulus], d: int) -> List[Automorphism]:
    """The rotation group acting on the first two coordinates of F_q^d."""
    group = rotation_group(q)
    if d == 2:
        return group
    return [block_lift(a, d) for a in group]


def orbit(a_set: Iterable[Automorphism], p: Point) -> PointSet:
    """{α(p) : α ∈ a_set}."""
    indices = []
    for a in a_set:
        if a.q != p.q or a.d != p.d:
            raise DimensionMismatchError((a.q, a.d), (p.q, p.d))
        indices.append(int(a.permutation[p.index]))
    return PointSet.from_indices(p.q, p.d, indices)


def orthogonal_group_2d(q: Union[int, PrimeModulus]) -> List[Automorphism]:
    """Every linear map of F_q² preserving x² + y², for any odd prime q.

    These are [[a, −b], [b, a]] and [[a, b], [b, −a]] with a² + b² = 1.
    """
    modulus = as_modulus(q)
    maps = []
    for a, b in circle(modulus, 1).points.coords():
        a, b = int(a), int(b)
        maps.append(Automorphism.from_rows(modulus.q, [[a, -b], [b, a]]))
        maps.append(Automorphism.from_rows(modulus.q, [[a, b], [b, -a]]))
    return maps
