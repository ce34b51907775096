"""Prime fields and the moment-curve line families in ``F_q^3``.

For a nonzero ``lam`` the family ``lines_for(q, lam)`` contains every affine
line whose direction is ``(1, lam*a, lam*a^2)`` for some nonzero ``a``. Any
three such directions are linearly independent, which is what keeps the
graphs built on these lines free of cross-line cliques.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    for d in range(3, isqrt(q) + 1, 2):
        if q % d == 0:
            return False
    return True


def least_admissible_prime(k: int, r: int) -> int:
    """Smallest prime ``q >= k^2 r``; Bertrand guarantees ``q <= 2 k^2 r``."""
    if k < 3 or r < 3:
        raise ValueError("need k >= 3 and r >= 3")
    lo = k * k * r
    q = lo
    while not is_prime(q):
        q += 1
    assert q <= 2 * lo, "Bertrand's postulate violated"
    return q


@dataclass(frozen=True)
class PrimeField:
    q: int

    def __post_init__(self):
        if not is_prime(self.q):
            raise ValueError(f"{self.q} is not prime")

    def inv(self, a: int) -> int:
        a %= self.q
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.q - 2, self.q)

    def nonzero(self) -> range:
        return range(1, self.q)


@dataclass(frozen=True, order=True)
class FieldPoint:
    x: int
    y: int
    z: int
    q: int

    @classmethod
    def of(cls, q: int, x: int, y: int, z: int) -> FieldPoint:
        return cls(x % q, y % q, z % q, q)

    @property
    def index(self) -> int:
        return (self.x * self.q + self.y) * self.q + self.z

    @classmethod
    def from_index(cls, q: int, i: int) -> FieldPoint:
        if not 0 <= i < q ** 3:
            raise ValueError(f"index {i} outside [0, {q ** 3})")
        return cls(i // (q * q), i // q % q, i % q, q)

    def __sub__(self, other: FieldPoint) -> tuple[int, int, int]:
        q = self.q
        return ((self.x - other.x) % q, (self.y - other.y) % q, (self.z - other.z) % q)


@dataclass(frozen=True)
class Slope:
    q: int
    lam: int
    alpha: int

    def __post_init__(self):
        if self.lam % self.q == 0 or self.alpha % self.q == 0:
            raise ValueError("moment-curve slopes need nonzero lam and alpha")

    @property
    def vector(self) -> tuple[int, int, int]:
        q, lam, a = self.q, self.lam, self.alpha
        return (1, lam * a % q, lam * a * a % q)


@dataclass(frozen=True)
class AffineLine:
    """The line ``{beta * slope + base}``; ``base`` is its unique point with ``x = 0``."""

    slope: Slope
    base: FieldPoint

    def __post_init__(self):
        if self.base.x != 0:
            raise ValueError("canonical base point must have x = 0")

    def points(self) -> list[FieldPoint]:
        q = self.slope.q
        _, sy, sz = self.slope.vector
        return [FieldPoint.of(q, b, self.base.y + b * sy, self.base.z + b * sz) for b in range(q)]

    def index(self) -> int:
        """Position of this line in ``lines_for(q, lam)``."""
        q = self.slope.q
        return ((self.slope.alpha - 1) * q + self.base.y) * q + self.base.z

    def serialize(self) -> tuple[int, int, int, int]:
        return (self.slope.lam, self.slope.alpha, self.base.y, self.base.z)


def moment_curve(q: int, lam: int) -> list[Slope]:
    if lam % q == 0:
        raise ValueError("lam must be nonzero")
    return [Slope(q, lam % q, a) for a in range(1, q)]


def _det3(m: list[tuple[int, int, int]], q: int) -> int:
    (a, b, c), (d, e, f), (g, h, i) = m
    return (a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)) % q


def slope_triple_independent(s1: Slope, s2: Slope, s3: Slope) -> tuple[bool, int]:
    """Check three slopes of one moment curve are linearly independent.

    The determinant is computed by cofactor expansion and by the Vandermonde
    closed form ``lam^2 (a3-a1)(a3-a2)(a2-a1)``; both must agree and be nonzero.
    """
    q, lam = s1.q, s1.lam
    if not (s2.q == s3.q == q and s2.lam == s3.lam == lam):
        raise ValueError("slopes must come from the same field and the same moment curve")
    a1, a2, a3 = s1.alpha, s2.alpha, s3.alpha
    if len({a1, a2, a3}) != 3:
        raise ValueError("slopes must have pairwise distinct alpha")
    cofactor = _det3([s1.vector, s2.vector, s3.vector], q)
    closed = lam * lam * (a3 - a1) * (a3 - a2) * (a2 - a1) % q
    if cofactor != closed:
        raise AssertionError(f"determinant mismatch: {cofactor} != {closed}")
    return cofactor != 0, cofactor


def lines_for(q: int, lam: int) -> list[AffineLine]:
    """All ``q^2 (q-1)`` lines with slopes on the ``lam``-moment curve, in index order."""
    out = []
    for s in moment_curve(q, lam):
        for y in range(q):
            for z in range(q):
                out.append(AffineLine(s, FieldPoint(0, y, z, q)))
    return out


def line_point_array(q: int, lam: int) -> np.ndarray:
    """Point indices of every line of ``lines_for(q, lam)``; shape ``(q^2 (q-1), q)``.

    Row ``i`` lists the line with index ``i`` by increasing ``beta``.
    """
    lam %= q
    if lam == 0:
        raise ValueError("lam must be nonzero")
    a = np.arange(1, q, dtype=np.int64)[:, None, None, None]
    y0 = np.arange(q, dtype=np.int64)[None, :, None, None]
    z0 = np.arange(q, dtype=np.int64)[None, None, :, None]
    b = np.arange(q, dtype=np.int64)[None, None, None, :]
    y = (y0 + b * (lam * a % q)) % q
    z = (z0 + b * (lam * a * a % q)) % q
    idx = (b * q + y) * q + z
    return idx.reshape((q - 1) * q * q, q)


def lines_through_point(q: int, lam: int, v: int) -> np.ndarray:
    """Indices of the ``q - 1`` lines of the family that contain point ``v``."""
    x, y, z = v // (q * q), v // q % q, v % q
    a = np.arange(1, q, dtype=np.int64)
    by = (y - x * (lam * a % q)) % q
    bz = (z - x * (lam * a * a % q)) % q
    return ((a - 1) * q + by) * q + bz


def line_of_pair(q: int, lam: int, u: int, v: int) -> int | None:
    """Index of the family line through points ``u != v``, or None if there is none."""
    pu, pv = FieldPoint.from_index(q, u), FieldPoint.from_index(q, v)
    dx, dy, dz = pv - pu
    if dx == 0:
        return None
    inv = pow(dx, q - 2, q)
    sy, sz = dy * inv % q, dz * inv % q
    lam %= q
    alpha = sy * pow(lam, q - 2, q) % q
    if alpha == 0 or lam * alpha * alpha % q != sz:
        return None
    by = (pu.y - pu.x * sy) % q
    bz = (pu.z - pu.x * sz) % q
    return ((alpha - 1) * q + by) * q + bz
