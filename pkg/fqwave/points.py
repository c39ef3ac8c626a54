"""Points of F_q^d and finite point sets stored as membership bitsets.

Every module shares one linearization: the point (x_0, ..., x_{d-1}) has index
sum(x_i * q**(d-1-i)). Index order is therefore lexicographic order.
"""

from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from fqwave.errors import DimensionMismatchError


@dataclass(frozen=True)
class Point:
    """A vector of F_q^d with coordinates reduced into [0, q)."""

    coords: Tuple[int, ...]
    q: int

    def __post_init__(self):
        if not self.coords:
            raise ValueError("a point needs at least one coordinate")
        object.__setattr__(self, "coords", tuple(int(c) % self.q for c in self.coords))

    @classmethod
    def origin(cls, q: int, d: int) -> "Point":
        return cls((0,) * d, q)

    @classmethod
    def from_index(cls, index: int, q: int, d: int) -> "Point":
        coords = []
        for _ in range(d):
            index, digit = divmod(index, q)
            coords.append(digit)
        return cls(tuple(reversed(coords)), q)

    @property
    def d(self) -> int:
        return len(self.coords)

    @property
    def index(self) -> int:
        value = 0
        for c in self.coords:
            value = value * self.q + c
        return value

    def is_origin(self) -> bool:
        return not any(self.coords)

    def _check(self, other: "Point") -> None:
        if self.q != other.q or self.d != other.d:
            raise DimensionMismatchError((self.q, self.d), (other.q, other.d))

    def __add__(self, other: "Point") -> "Point":
        self._check(other)
        return Point(tuple(a + b for a, b in zip(self.coords, other.coords)), self.q)

    def __sub__(self, other: "Point") -> "Point":
        self._check(other)
        return Point(tuple(a - b for a, b in zip(self.coords, other.coords)), self.q)

    def __neg__(self) -> "Point":
        return Point(tuple(-c for c in self.coords), self.q)

    def scale(self, c: int) -> "Point":
        return Point(tuple(c * x for x in self.coords), self.q)

    def dot(self, other: "Point") -> int:
        """Return m·ξ reduced mod q."""
        self._check(other)
        return sum(a * b for a, b in zip(self.coords, other.coords)) % self.q

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> int:
        return self.coords[i]

    def __lt__(self, other: "Point") -> bool:
        return self.coords < other.coords

    def __repr__(self) -> str:
        return f"Point{self.coords}"


PointLike = Union[Point, Sequence[int]]


def all_coords(q: int, d: int) -> np.ndarray:
    """Coordinates of every point of F_q^d in index order, shape (q**d, d)."""
    grids = np.indices((q,) * d).reshape(d, -1)
    return grids.T.astype(np.int64)


def indices_of(coords: np.ndarray, q: int) -> np.ndarray:
    """Linearize an (n, d) coordinate array (entries are reduced first)."""
    coords = np.mod(np.asarray(coords, dtype=np.int64), q)
    d = coords.shape[1]
    weights = q ** np.arange(d - 1, -1, -1, dtype=np.int64)
    return coords @ weights


class PointSet:
    """A subset of F_q^d stored as a boolean mask over linearized indices.

    Instances are immutable; set operations return new sets.
    """

    __slots__ = ("q", "d", "_mask", "_size")

    def __init__(self, q: int, d: int, mask: np.ndarray):
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (q**d,):
            raise ValueError(f"mask must have shape ({q ** d},), got {mask.shape}")
        mask = mask.copy()
        mask.setflags(write=False)
        self.q = q
        self.d = d
        self._mask = mask
        self._size = int(np.count_nonzero(mask))

    # -- constructors ---------------------------------------------------------

    @classmethod
    def empty(cls, q: int, d: int) -> "PointSet":
        return cls(q, d, np.zeros(q**d, dtype=bool))

    @classmethod
    def full(cls, q: int, d: int) -> "PointSet":
        return cls(q, d, np.ones(q**d, dtype=bool))

    @classmethod
    def from_indices(cls, q: int, d: int, indices: Iterable[int]) -> "PointSet":
        mask = np.zeros(q**d, dtype=bool)
        idx = np.fromiter((int(i) for i in indices), dtype=np.int64)
        mask[idx] = True
        return cls(q, d, mask)

    @classmethod
    def from_coords(cls, q: int, d: int, coords: np.ndarray) -> "PointSet":
        coords = np.asarray(coords, dtype=np.int64).reshape(-1, d)
        mask = np.zeros(q**d, dtype=bool)
        if len(coords):
            mask[indices_of(coords, q)] = True
        return cls(q, d, mask)

    @classmethod
    def from_points(cls, q: int, d: int, points: Iterable[PointLike]) -> "PointSet":
        rows = []
        for p in points:
            coords = p.coords if isinstance(p, Point) else tuple(p)
            if len(coords) != d:
                raise DimensionMismatchError((q, d), (q, len(coords)))
            rows.append(coords)
        return cls.from_coords(q, d, np.array(rows, dtype=np.int64).reshape(-1, d))

    @classmethod
    def singleton(cls, point: Point) -> "PointSet":
        return cls.from_indices(point.q, point.d, [point.index])

    # -- queries --------------------------------------------------------------

    @property
    def mask(self) -> np.ndarray:
        return self._mask

    @property
    def size(self) -> int:
        return self._size

    def __len__(self) -> int:
        return self._size

    def __bool__(self) -> bool:
        return self._size > 0

    def __contains__(self, point: PointLike) -> bool:
        if not isinstance(point, Point):
            point = Point(tuple(point), self.q)
        if point.q != self.q or point.d != self.d:
            return False
        return bool(self._mask[point.index])

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self._mask)

    def coords(self) -> np.ndarray:
        """Member coordinates, shape (n, d), lexicographically sorted."""
        return all_coords(self.q, self.d)[self._mask]

    def points(self) -> List[Point]:
        return [Point(tuple(int(c) for c in row), self.q) for row in self.coords()]

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points())

    def first(self) -> Optional[Point]:
        idx = self.indices()
        if len(idx) == 0:
            return None
        return Point.from_index(int(idx[0]), self.q, self.d)

    def indicator(self) -> np.ndarray:
        return self._mask.astype(np.float64)

    def contains_origin(self) -> bool:
        return bool(self._mask[0])

    # -- set algebra ----------------------------------------------------------

    def _check(self, other: "PointSet") -> None:
        if self.q != other.q or self.d != other.d:
            raise DimensionMismatchError((self.q, self.d), (other.q, other.d))

    def star(self) -> "PointSet":
        """E* = E with the origin removed."""
        mask = self._mask.copy()
        mask[0] = False
        return PointSet(self.q, self.d, mask)

    def complement(self) -> "PointSet":
        return PointSet(self.q, self.d, ~self._mask)

    def union(self, other: "PointSet") -> "PointSet":
        self._check(other)
        return PointSet(self.q, self.d, self._mask | other._mask)

    def intersection(self, other: "PointSet") -> "PointSet":
        self._check(other)
        return PointSet(self.q, self.d, self._mask & other._mask)

    def difference(self, other: "PointSet") -> "PointSet":
        self._check(other)
        return PointSet(self.q, self.d, self._mask & ~other._mask)

    __or__ = union
    __and__ = intersection
    __sub__ = difference

    def isdisjoint(self, other: "PointSet") -> bool:
        self._check(other)
        return not np.any(self._mask & other._mask)

    def translate(self, t: Point) -> "PointSet":
        if t.q != self.q or t.d != self.d:
            raise DimensionMismatchError((self.q, self.d), (t.q, t.d))
        return PointSet.from_coords(self.q, self.d, self.coords() + np.array(t.coords))

    def product(self, other: "PointSet") -> "PointSet":
        """Cartesian product self × other as a subset of F_q^(d1+d2)."""
        if self.q != other.q:
            raise DimensionMismatchError((self.q, self.d), (other.q, other.d))
        mask = np.outer(self._mask, other._mask).reshape(-1)
        return PointSet(self.q, self.d + other.d, mask)

    def project(self, axes: Sequence[int]) -> "PointSet":
        """Image under the coordinate projection onto ``axes``."""
        coords = self.coords()[:, list(axes)]
        return PointSet.from_coords(self.q, len(axes), coords)

    # -- dunder ---------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return (
            self.q == other.q
            and self.d == other.d
            and bool(np.array_equal(self._mask, other._mask))
        )

    def __hash__(self) -> int:
        return hash((self.q, self.d, self._mask.tobytes()))

    def __repr__(self) -> str:
        shown = [p.coords for p in self.points()[:8]]
        more = ", ..." if self._size > 8 else ""
        return f"PointSet(q={self.q}, d={self.d}, size={self._size}, {shown}{more})"
