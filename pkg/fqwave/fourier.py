"""Characters, the Fourier transform on F_q^d, and the dilation/translation operators.

Conventions:

    f̂(ξ) = c_fwd · Σ_m f(m) · conj(χ_m(ξ))      χ_m(ξ) = exp(2πi (m·ξ mod q) / q)
    f(x) = c_inv · Σ_ξ f̂(ξ) · χ_ξ(x)

``unitary`` uses c_fwd = c_inv = q^(−d/2). ``paper`` uses c_fwd = q^(−d) and
c_inv = 1; it is kept for comparison only, frame certificates always use the
unitary convention.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from fqwave.errors import DimensionMismatchError
from fqwave.geometry import Automorphism
from fqwave.points import Point, PointSet, all_coords

# Tolerances
IDENTITY_TOL = 1e-12
SUPPORT_TOL = 1e-9


class TransformConvention(str, Enum):
    UNITARY = "unitary"
    PAPER = "paper"

    def scales(self, q: int, d: int) -> Tuple[float, float]:
        """(forward, inverse) normalization factors."""
        if self is TransformConvention.UNITARY:
            c = float(q) ** (-d / 2)
            return c, c
        return float(q) ** (-d), 1.0


ConventionLike = Union[TransformConvention, str]


def as_convention(conv: ConventionLike) -> TransformConvention:
    return conv if isinstance(conv, TransformConvention) else TransformConvention(conv)


@lru_cache(maxsize=None)
def roots_of_unity(q: int) -> np.ndarray:
    """Table of exp(2πi j/q) for j = 0..q−1; every character value indexes it."""
    table = np.exp(2j * np.pi * np.arange(q) / q)
    table.setflags(write=False)
    return table


@dataclass(frozen=True, eq=False)
class GridFunction:
    """A complex-valued function on F_q^d in canonical index order."""

    q: int
    d: int
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.complex128).reshape(-1)
        if values.shape != (self.q**self.d,):
            raise ValueError(
                f"expected {self.q ** self.d} values for q={self.q}, d={self.d}, got {values.size}"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, q: int, d: int) -> "GridFunction":
        return cls(q, d, np.zeros(q**d, dtype=np.complex128))

    @classmethod
    def constant(cls, q: int, d: int, c: complex = 1.0) -> "GridFunction":
        return cls(q, d, np.full(q**d, c, dtype=np.complex128))

    @classmethod
    def indicator(cls, points: PointSet) -> "GridFunction":
        return cls(points.q, points.d, points.indicator())

    @classmethod
    def delta(cls, point: Point) -> "GridFunction":
        return cls.indicator(PointSet.singleton(point))

    @classmethod
    def random(cls, q: int, d: int, rng: np.random.Generator) -> "GridFunction":
        n = q**d
        return cls(q, d, rng.standard_normal(n) + 1j * rng.standard_normal(n))

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.q, self.d)

    def grid(self) -> np.ndarray:
        """Values reshaped to a d-dimensional (q, ..., q) array."""
        return self.values.reshape((self.q,) * self.d)

    def at(self, point: Point) -> complex:
        self._check(point.q, point.d)
        return complex(self.values[point.index])

    def _check(self, q: int, d: int) -> None:
        if (q, d) != (self.q, self.d):
            raise DimensionMismatchError((self.q, self.d), (q, d))

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))

    def inner(self, other: "GridFunction") -> complex:
        """⟨f, g⟩ = Σ f(x) conj(g(x))."""
        self._check(other.q, other.d)
        return complex(np.vdot(other.values, self.values))

    def pointwise(self, other: "GridFunction") -> "GridFunction":
        self._check(other.q, other.d)
        return GridFunction(self.q, self.d, self.values * other.values)

    def max_abs_diff(self, other: "GridFunction") -> float:
        self._check(other.q, other.d)
        return float(np.max(np.abs(self.values - other.values)))

    def allclose(self, other: "GridFunction", tol: float = IDENTITY_TOL) -> bool:
        return self.max_abs_diff(other) <= tol

    def support(self, tol: float = SUPPORT_TOL) -> PointSet:
        return PointSet(self.q, self.d, np.abs(self.values) > tol)

    def __add__(self, other: "GridFunction") -> "GridFunction":
        self._check(other.q, other.d)
        return GridFunction(self.q, self.d, self.values + other.values)

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        self._check(other.q, other.d)
        return GridFunction(self.q, self.d, self.values - other.values)

    def __neg__(self) -> "GridFunction":
        return GridFunction(self.q, self.d, -self.values)

    def __mul__(self, c: complex) -> "GridFunction":
        if isinstance(c, GridFunction):
            return NotImplemented
        return GridFunction(self.q, self.d, self.values * c)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"GridFunction(q={self.q}, d={self.d}, norm={self.norm():.6g})"


# =============================================================================
# Characters and transform kernels
# =============================================================================


def character(m: Point, x: Point) -> complex:
    """χ_m(x) = exp(2πi (m·x mod q)/q)."""
    if (m.q, m.d) != (x.q, x.d):
        raise DimensionMismatchError((m.q, m.d), (x.q, x.d))
    return complex(roots_of_unity(m.q)[m.dot(x)])


def character_function(m: Point) -> GridFunction:
    """χ_m as a grid function."""
    phases = np.mod(all_coords(m.q, m.d) @ np.array(m.coords, dtype=np.int64), m.q)
    return GridFunction(m.q, m.d, roots_of_unity(m.q)[phases])


def dft_matrix(q: int, d: int = 1) -> np.ndarray:
    """Unscaled forward kernel K[ξ, m] = conj(χ_m(ξ)), shape (q^d, q^d)."""
    coords = all_coords(q, d)
    phases = np.mod(-(coords @ coords.T), q)
    return roots_of_unity(q)[phases]


def _transform(f: GridFunction, inverse: bool, conv: ConventionLike, method: str) -> GridFunction:
    forward_scale, inverse_scale = as_convention(conv).scales(f.q, f.d)
    scale = inverse_scale if inverse else forward_scale
    if method == "naive":
        kernel = dft_matrix(f.q, f.d)
        if inverse:
            kernel = kernel.conj()
        out = kernel @ f.values
    elif method == "factored":
        kernel = dft_matrix(f.q, 1)
        if inverse:
            kernel = kernel.conj()
        grid = f.grid()
        for axis in range(f.d):
            grid = np.moveaxis(np.tensordot(kernel, grid, axes=([1], [axis])), 0, axis)
        out = grid.reshape(-1)
    else:
        raise ValueError(f"unknown transform method: {method!r}")
    return GridFunction(f.q, f.d, scale * out)


def dft(
    f: GridFunction,
    conv: ConventionLike = TransformConvention.UNITARY,
    method: str = "factored",
) -> GridFunction:
    """Forward transform; ``method`` is "factored" (one axis at a time) or "naive"."""
    return _transform(f, False, conv, method)


def idft(
    g: GridFunction,
    conv: ConventionLike = TransformConvention.UNITARY,
    method: str = "factored",
) -> GridFunction:
    """Inverse of :func:`dft` under the same convention."""
    return _transform(g, True, conv, method)


# =============================================================================
# Operators
# =============================================================================


def translate(f: GridFunction, t: Point) -> GridFunction:
    """(τ_t f)(x) = f(x − t)."""
    f._check(t.q, t.d)
    shifted = np.roll(f.grid(), shift=tuple(t.coords), axis=tuple(range(f.d)))
    return GridFunction(f.q, f.d, shifted)


def dilate(f: GridFunction, a: Automorphism) -> GridFunction:
    """(δ_a f)(x) = f(a·x)."""
    f._check(a.q, a.d)
    return GridFunction(f.q, f.d, f.values[a.permutation])


def paley_wiener_project(
    f: GridFunction,
    region: PointSet,
    conv: ConventionLike = TransformConvention.UNITARY,
) -> GridFunction:
    """Orthogonal projection onto PW_F = {f : supp f̂ ⊆ F}."""
    f._check(region.q, region.d)
    spectrum = dft(f, conv)
    return idft(GridFunction(f.q, f.d, spectrum.values * region.indicator()), conv)


def projector_matrix(region: PointSet) -> np.ndarray:
    """Matrix of the projection onto PW_F in the point basis; its trace is #F."""
    q, d = region.q, region.d
    unitary = dft_matrix(q, d) * float(q) ** (-d / 2)
    return unitary.conj().T @ (region.indicator()[:, None] * unitary)


def in_paley_wiener(
    f: GridFunction, region: PointSet, tol: float = SUPPORT_TOL
) -> bool:
    spectrum = dft(f)
    outside = spectrum.values[~region.mask]
    return bool(outside.size == 0 or np.max(np.abs(outside)) <= tol * max(1.0, f.norm()))


def random_in_paley_wiener(
    region: PointSet, rng: np.random.Generator, count: int = 1
) -> Sequence[GridFunction]:
    """Random functions with Fourier support in ``region``."""
    out = []
    for _ in range(count):
        f = GridFunction.random(region.q, region.d, rng)
        out.append(paley_wiener_project(f, region))
    return out


def identity_residuals(
    f: GridFunction, a: Automorphism, t: Point
) -> Tuple[float, float, float]:
    """Max entrywise error of the translation, dilation and combined identities.

    dft(τ_t f)(m)       = conj(χ_t(m)) · f̂(m)
    dft(δ_a f)(m)       = f̂(a* m)
    dft(δ_a τ_t f)(m)   = conj(χ_{a⁻¹t}(m)) · f̂(a* m)
    """
    f_hat = dft(f)
    a_star = a.inverse_transpose().permutation
    t_char = character_function(t).values.conj()
    shifted = a.inverse().apply(t)
    shifted_char = character_function(shifted).values.conj()

    translation = np.max(np.abs(dft(translate(f, t)).values - t_char * f_hat.values))
    dilation = np.max(np.abs(dft(dilate(f, a)).values - f_hat.values[a_star]))
    combined = np.max(
        np.abs(dft(dilate(translate(f, t), a)).values - shifted_char * f_hat.values[a_star])
    )
    return float(translation), float(dilation), float(combined)


def random_generator(seed: Optional[int]) -> np.random.Generator:
    """Seeded PCG64 generator; the bit generator name is recorded in reports."""
    return np.random.Generator(np.random.PCG64(seed))
