"""Exact arithmetic in F_q and GF(q²) = F_q[i], plus quadratic-residue tools.

GF(q²) is realised as F_q[i] with i² = −1, which is a field exactly when
q ≡ 3 (mod 4). All values are immutable.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Union

from fqwave.errors import (
    InvalidModulusError,
    ModulusClassError,
    ModulusMismatchError,
    PreconditionError,
)
from fqwave.points import PointSet

# q² must stay well inside a machine word.
MAX_MODULUS = 2**20


def is_prime(n: int) -> bool:
    """Deterministic primality test by trial division (n ≤ 2**20 in practice)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> Dict[int, int]:
    """Prime factorization of a positive integer by trial division."""
    factors: Dict[int, int] = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            factors[f] = factors.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


@dataclass(frozen=True)
class PrimeModulus:
    """An odd prime q with q ≤ MAX_MODULUS."""

    q: int

    def __post_init__(self):
        if not isinstance(self.q, int) or isinstance(self.q, bool):
            raise InvalidModulusError(self.q, "modulus must be an integer")
        if self.q == 2:
            raise InvalidModulusError(self.q, "q must be odd")
        if self.q > MAX_MODULUS:
            raise InvalidModulusError(self.q, f"q must not exceed {MAX_MODULUS}")
        if not is_prime(self.q):
            raise InvalidModulusError(self.q, "q must be prime")

    @property
    def residue_class(self) -> int:
        """q mod 4 (either 1 or 3)."""
        return self.q % 4

    @property
    def is_three_mod_four(self) -> bool:
        return self.q % 4 == 3

    def require_class(self, required: int, detail: str = "") -> None:
        if self.q % 4 != required:
            raise ModulusClassError(self.q, required, detail)

    def element(self, value: int) -> "FieldElement":
        return FieldElement(value, self)

    def elements(self) -> Iterator["FieldElement"]:
        for v in range(self.q):
            yield FieldElement(v, self)

    def __int__(self) -> int:
        return self.q

    def __repr__(self) -> str:
        return f"PrimeModulus({self.q})"


def as_modulus(q: Union[int, PrimeModulus]) -> PrimeModulus:
    return q if isinstance(q, PrimeModulus) else PrimeModulus(q)


Scalar = Union["FieldElement", int]


@dataclass(frozen=True)
class FieldElement:
    """A residue mod q, always stored reduced into [0, q)."""

    value: int
    modulus: PrimeModulus

    def __post_init__(self):
        object.__setattr__(self, "value", int(self.value) % self.modulus.q)

    @property
    def q(self) -> int:
        return self.modulus.q

    def _coerce(self, other: Scalar) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.modulus.q != self.modulus.q:
                raise ModulusMismatchError(self.q, other.q)
            return other
        if isinstance(other, int):
            return FieldElement(other, self.modulus)
        return NotImplemented

    def __add__(self, other: Scalar) -> "FieldElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.value + other.value, self.modulus)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "FieldElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.value - other.value, self.modulus)

    def __rsub__(self, other: int) -> "FieldElement":
        return FieldElement(other - self.value, self.modulus)

    def __mul__(self, other: Scalar) -> "FieldElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.value * other.value, self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> "FieldElement":
        return FieldElement(-self.value, self.modulus)

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.q}")
        return FieldElement(pow(self.value, -1, self.q), self.modulus)

    def __truediv__(self, other: Scalar) -> "FieldElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, exponent: int) -> "FieldElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return FieldElement(pow(self.value, exponent, self.q), self.modulus)

    def is_zero(self) -> bool:
        return self.value == 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.value == other.value and self.q == other.q
        if isinstance(other, int):
            return self.value == other % self.q
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.q))

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} (mod {self.q})"


@dataclass(frozen=True)
class GaussianInt:
    """re + im·i in GF(q²) = F_q[i]; only defined for q ≡ 3 (mod 4)."""

    re: FieldElement
    im: FieldElement

    def __post_init__(self):
        if self.re.q != self.im.q:
            raise ModulusMismatchError(self.re.q, self.im.q)
        if self.re.q % 4 != 3:
            raise ModulusClassError(
                self.re.q, 3, "−1 is a square, F_q[i] is not a field"
            )

    @classmethod
    def of(cls, q: Union[int, PrimeModulus], re: int, im: int = 0) -> "GaussianInt":
        modulus = as_modulus(q)
        return cls(FieldElement(re, modulus), FieldElement(im, modulus))

    @property
    def modulus(self) -> PrimeModulus:
        return self.re.modulus

    @property
    def q(self) -> int:
        return self.re.q

    def _check(self, other: "GaussianInt") -> None:
        if self.q != other.q:
            raise ModulusMismatchError(self.q, other.q)

    def __add__(self, other: "GaussianInt") -> "GaussianInt":
        self._check(other)
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianInt") -> "GaussianInt":
        self._check(other)
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianInt":
        return GaussianInt(-self.re, -self.im)

    def __mul__(self, other: "GaussianInt") -> "GaussianInt":
        return gf2_mul(self, other)

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)

    def norm(self) -> FieldElement:
        """re² + im², the radius of the corresponding point of F_q²."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianInt":
        n = self.norm()
        if n.is_zero():
            raise ZeroDivisionError("0 has no inverse in GF(q²)")
        n_inv = n.inverse()
        return GaussianInt(self.re * n_inv, -self.im * n_inv)

    def __pow__(self, exponent: int) -> "GaussianInt":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = GaussianInt.of(self.modulus, 1, 0)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def is_one(self) -> bool:
        return self.re.value == 1 and self.im.is_zero()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GaussianInt):
            return NotImplemented
        return self.q == other.q and self.re.value == other.re.value and self.im.value == other.im.value

    def __hash__(self) -> int:
        return hash((self.re.value, self.im.value, self.q))

    def __repr__(self) -> str:
        return f"{self.re.value}+{self.im.value}i (mod {self.q})"


# -- quadratic residues -------------------------------------------------------


def legendre_symbol(a: FieldElement) -> int:
    """Legendre symbol (a/q) by Euler's criterion: 0, +1 or −1."""
    if a.is_zero():
        return 0
    ls = pow(a.value, (a.q - 1) // 2, a.q)
    return -1 if ls == a.q - 1 else 1


def quadratic_residues(q: Union[int, PrimeModulus]) -> PointSet:
    """{x² : 1 ≤ x ≤ (q−1)/2} as a subset of F_q (d = 1)."""
    modulus = as_modulus(q)
    p = modulus.q
    return PointSet.from_indices(p, 1, {x * x % p for x in range(1, (p - 1) // 2 + 1)})


def quadratic_nonresidues(q: Union[int, PrimeModulus]) -> PointSet:
    modulus = as_modulus(q)
    residues = quadratic_residues(modulus)
    return residues.complement().star()


def find_k(q: Union[int, PrimeModulus]) -> FieldElement:
    """Smallest 0 < k ≤ (q−1)/2 with 1 + k² a quadratic non-residue.

    For q = 7 this returns 2 (1 + 1² = 2 = 3² is a residue mod 7).
    """
    modulus = as_modulus(q)
    modulus.require_class(3, "1 + k² non-residue search is only guaranteed for q ≡ 3 (mod 4)")
    for k in range(1, (modulus.q - 1) // 2 + 1):
        if legendre_symbol(FieldElement(1 + k * k, modulus)) == -1:
            return FieldElement(k, modulus)
    # unreachable for primes q ≡ 3 (mod 4)
    raise PreconditionError(f"no k with 1 + k² a non-residue mod {modulus.q}")


def qnr_representation(q: Union[int, PrimeModulus], k: Scalar) -> PointSet:
    """{(1+k²)x² : (q+1)/2 ≤ x ≤ q−1}; equals the set of non-residues."""
    modulus = as_modulus(q)
    k_elem = k if isinstance(k, FieldElement) else FieldElement(k, modulus)
    c = 1 + k_elem * k_elem
    if legendre_symbol(c) != -1:
        raise PreconditionError(f"1 + k² = {c.value} is not a non-residue mod {modulus.q}")
    p = modulus.q
    return PointSet.from_indices(
        p, 1, {c.value * x * x % p for x in range((p + 1) // 2, p)}
    )


def sqrt_mod(r: Scalar, q: Union[int, PrimeModulus, None] = None) -> Optional[FieldElement]:
    """A square root of r mod q, or None when r is a non-residue.

    Uses r^((q+1)/4) when q ≡ 3 (mod 4) and Tonelli–Shanks otherwise.
    """
    if isinstance(r, FieldElement):
        modulus = r.modulus
        a = r.value
    else:
        modulus = as_modulus(q)
        a = r % modulus.q
    p = modulus.q
    if a == 0:
        return FieldElement(0, modulus)
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return FieldElement(pow(a, (p + 1) // 4, p), modulus)

    # Tonelli–Shanks: p − 1 = s_odd · 2^e
    s_odd, e = p - 1, 0
    while s_odd % 2 == 0:
        s_odd //= 2
        e += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    c = pow(z, s_odd, p)
    x = pow(a, (s_odd + 1) // 2, p)
    t = pow(a, s_odd, p)
    m = e
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        x = x * b % p
        t = t * b * b % p
        c = b * b % p
        m = i
    return FieldElement(x, modulus)


# -- GF(q²) --------------------------------------------------------------------


def gf2_mul(u: GaussianInt, v: GaussianInt) -> GaussianInt:
    """(a+bi)(c+di) = (ac−bd) + (ad+bc)i."""
    if u.q != v.q:
        raise ModulusMismatchError(u.q, v.q)
    a, b = u.re, u.im
    c, d = v.re, v.im
    return GaussianInt(a * c - b * d, a * d + b * c)


@lru_cache(maxsize=None)
def _group_order_factors(q: int) -> Dict[int, int]:
    factors = factorize(q - 1)
    for p, e in factorize(q + 1).items():
        factors[p] = factors.get(p, 0) + e
    return factors


def element_order(u: GaussianInt) -> int:
    """Multiplicative order of a nonzero element of GF(q²)."""
    if u.is_zero():
        raise PreconditionError("0 has no multiplicative order")
    order = u.q * u.q - 1
    for p in _group_order_factors(u.q):
        while order % p == 0 and (u ** (order // p)).is_one():
            order //= p
    return order


def primitive_element(q: Union[int, PrimeModulus]) -> GaussianInt:
    """First generator of GF(q²)^× in lexicographic (re, im) order."""
    modulus = as_modulus(q)
    modulus.require_class(3)
    full = modulus.q * modulus.q - 1
    for re in range(modulus.q):
        for im in range(modulus.q):
            if re == 0 and im == 0:
                continue
            u = GaussianInt.of(modulus, re, im)
            if element_order(u) == full:
                return u
    raise PreconditionError(f"GF({modulus.q}²) has no generator")  # unreachable


def primes_three_mod_four(limit: int) -> List[int]:
    """All primes q ≡ 3 (mod 4) with q < limit."""
    sieve = bytearray([1]) * limit
    sieve[0:2] = b"\x00\x00"
    for n in range(2, int(limit**0.5) + 1):
        if sieve[n]:
            sieve[n * n :: n] = bytearray(len(range(n * n, limit, n)))
    return [n for n in range(3, limit) if sieve[n] and n % 4 == 3]
