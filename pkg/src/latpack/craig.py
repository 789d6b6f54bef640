"""Generalized Craig lattices.

A lattice A(n, m, l) lives in Z^(n+1) as the coefficient vectors of integer
polynomials f with f(1) = 0 whose derivatives at 1 up to order m-1 vanish
mod l.  Its basis is spanned by (x-1)^n .. (x-1)^m together with
l*(x-1)^(m-1) .. l*(x-1); its squared volume is l^(2(m-1)) * (n+1), and for
prime l every nonzero vector has squared norm at least 2m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CapacityError, ParameterError
from .exactnum import (
    BigRationalSqrt,
    IntMatrix,
    gram_det,
    is_prime,
    log2_of,
    next_prime,
    solve_left,
)

__all__ = [
    "CraigParams",
    "IntegerLattice",
    "LogDensity",
    "craig_basis",
    "membership",
    "center_density_lb",
    "choose_params",
    "density_floor",
    "verify_section",
    "write_basis",
    "read_basis",
]

SECTION_RANK_CAP = 64


@dataclass(frozen=True)
class CraigParams:
    """The triple (n, m, l): rank n in ambient n+1, derivative order m, modulus l."""

    n: int
    m: int
    l: int

    def __post_init__(self):
        if self.n < 2:
            raise ParameterError(f"n must be >= 2, got {self.n}")
        if self.m < 1:
            raise ParameterError(f"m must be >= 1, got {self.m}")
        if 2 * self.m > self.n + 1:
            raise ParameterError(f"m={self.m} exceeds (n+1)/2 for n={self.n}")
        if self.l < self.n + 1:
            raise ParameterError(f"l must be >= n+1, got l={self.l} n={self.n}")

    @property
    def strict_regime(self) -> bool:
        """m < n/2: the regime in which the 2m norm bound is stated."""
        return 2 * self.m < self.n

    @property
    def parity_regime(self) -> bool:
        """m <= (n+1)/2 but not m < n/2: accepted, flagged (density formula identical)."""
        return not self.strict_regime

    def norm_guarantee(self) -> int:
        """Guaranteed minimum squared norm 2m; requires prime l."""
        if not is_prime(self.l):
            raise ParameterError("norm bound requires a prime modulus l")
        return 2 * self.m


class IntegerLattice:
    """Exact integer lattice: rank r basis rows in ambient dimension N."""

    def __init__(self, ambient_dim: int, rank: int, basis: IntMatrix):
        if basis.rows != rank or basis.cols != ambient_dim:
            raise ParameterError("basis shape does not match declared rank/ambient")
        if rank > ambient_dim:
            raise ParameterError("rank exceeds ambient dimension")
        self.ambient_dim = ambient_dim
        self.rank = rank
        self.basis = basis
        self._vol_sq: int | None = None

    @property
    def vol_sq(self) -> int:
        """Gram determinant det(B B^T), computed once and cached."""
        if self._vol_sq is None:
            d = gram_det(self.basis)
            if d == 0:
                raise ParameterError("degenerate basis: rows are dependent")
            self._vol_sq = d
        return self._vol_sq

    def __repr__(self) -> str:
        return f"IntegerLattice(rank={self.rank}, ambient={self.ambient_dim})"


class LogDensity:
    """Center-density lower bound held exactly as delta^2 (a positive rational)."""

    __slots__ = ("delta_sq", "rendered", "provenance")

    def __init__(self, delta_sq: BigRationalSqrt, provenance: str = "plain", digits: int = 4):
        self.delta_sq = delta_sq
        self.rendered = log2_of(delta_sq, digits)
        self.provenance = provenance

    def log2(self, digits: int = 4) -> str:
        return log2_of(self.delta_sq, digits)

    def log2_fraction(self, frac_bits: int = 192):
        return self.delta_sq.log2_fraction(frac_bits)

    def __repr__(self) -> str:
        return f"LogDensity(2^{self.rendered}, {self.provenance})"


def _binomial_row(j: int, width: int) -> list[int]:
    """Coefficient vector of (x-1)^j, length ``width``."""
    row = [0] * width
    c = 1
    for i in range(j + 1):
        row[i] = c if (j - i) % 2 == 0 else -c
        c = c * (j - i) // (i + 1)
    return row


def craig_basis(p: CraigParams) -> IntegerLattice:
    """Basis of A(n, m, l) in Z^(n+1).

    For m >= 2 the rows are (x-1)^n, ..., (x-1)^m followed by the scaled rows
    l*(x-1)^(m-1), ..., l*(x-1), in descending degree.  For m = 1 the lattice
    does not depend on l and the integral base (x-1)*x^j, j = 0..n-1, is used.
    """
    n, m, l = p.n, p.m, p.l
    width = n + 1
    if m == 1:
        rows = []
        for j in range(n):
            row = [0] * width
            row[j] = -1
            row[j + 1] = 1
            rows.append(row)
    else:
        rows = [_binomial_row(j, width) for j in range(n, m - 1, -1)]
        for j in range(m - 1, 0, -1):
            rows.append([l * a for a in _binomial_row(j, width)])
    return IntegerLattice(width, n, IntMatrix(rows))


def _derivative_at_one(coeffs, order: int) -> int:
    """f^(order)(1) for f = sum coeffs[j] x^j, exact."""
    total = 0
    for j, a in enumerate(coeffs):
        if a == 0 or j < order:
            continue
        ff = 1
        for t in range(order):
            ff *= j - t
        total += a * ff
    return total


def membership(p: CraigParams, f) -> bool:
    """Polynomial membership test: f(1) = 0 and f^(i)(1) = 0 mod l for i < m."""
    if len(f) != p.n + 1:
        raise ParameterError(f"vector must have length n+1 = {p.n + 1}")
    if not is_prime(p.l):
        raise ParameterError("membership criterion requires a prime modulus l")
    if sum(f) != 0:
        return False
    for i in range(1, p.m):
        if _derivative_at_one(f, i) % p.l != 0:
            return False
    return True


def center_density_lb(p: CraigParams, k: int, provenance: str | None = None) -> LogDensity:
    """delta^2 = 2^(2k-n) * m^n / (l^(2(m-1)) * (n+1)), exact.

    k = 0 is the bare lattice (norm >= 2m); k > 0 assumes a supporting
    [n+1, k, >= 8m] code, which the caller is responsible for checking.
    """
    if k < 0:
        raise ParameterError("k must be nonnegative")
    n, m, l = p.n, p.m, p.l
    num = p.m**n
    den = l ** (2 * (m - 1)) * (n + 1)
    e = 2 * k - n
    if e >= 0:
        num *= 1 << e
    else:
        den *= 1 << (-e)
    if provenance is None:
        provenance = "plain" if k == 0 else "lifted"
    return LogDensity(BigRationalSqrt(num, den), provenance)


def choose_params(n: int) -> CraigParams:
    """m nearest to n / (2 ln n) (half up), l the first prime >= n+1."""
    if n < 2:
        raise ParameterError("n must be >= 2")
    m = math.floor(n / (2.0 * math.log(n)) + 0.5)
    hi = max(1, -(-n // 2) - 1)  # ceil(n/2) - 1
    m = min(max(1, m), hi)
    return CraigParams(n, m, next_prime(n + 1))


def density_floor(n: int) -> LogDensity:
    """Density bound m^(n/2) / (2^(m-1+n/2) n^(m-1) (n+1)^(1/2)) at the chosen m."""
    p = choose_params(n)
    m = p.m
    num = m**n
    den = (1 << (2 * (m - 1) + n)) * n ** (2 * (m - 1)) * (n + 1)
    return LogDensity(BigRationalSqrt(num, den), "formula-only")


def verify_section(p: CraigParams, rank_cap: int = SECTION_RANK_CAP) -> bool:
    """Check that A(n, m, l) is the section of A(l-1, m, l) on the first n+1 coords.

    Every basis vector, zero-padded to length l, must solve integrally in the
    big lattice, and the volume formulas must stand in the ratio l : n+1.
    """
    if not is_prime(p.l):
        raise ParameterError("verify_section requires a prime l")
    if p.l - 1 < p.n:
        raise ParameterError("need l-1 >= n")
    if p.l - 1 > rank_cap:
        raise CapacityError(f"section check capped at rank {rank_cap}, got {p.l - 1}")
    small = craig_basis(p)
    big_params = CraigParams(p.l - 1, p.m, p.l)
    big = craig_basis(big_params)
    pad = p.l - 1 - p.n
    for row in small.basis.m:
        padded = row + [0] * pad
        if solve_left(big.basis, padded) is None:
            return False
    lhs = small.vol_sq * p.l
    rhs = big.vol_sq * (p.n + 1)
    return lhs == rhs


def write_basis(lattice: IntegerLattice, fh) -> None:
    """Text format: first line "N r", then r rows of N integers."""
    fh.write(f"{lattice.ambient_dim} {lattice.rank}\n")
    for row in lattice.basis.m:
        fh.write(" ".join(str(x) for x in row) + "\n")


def read_basis(fh) -> IntegerLattice:
    header = fh.readline().split()
    if len(header) != 2:
        raise ParameterError("basis file must start with 'N r'")
    ambient, rank = int(header[0]), int(header[1])
    rows = []
    for i in range(rank):
        parts = fh.readline().split()
        if len(parts) != ambient:
            raise ParameterError(f"basis row {i + 1} must have {ambient} entries")
        rows.append([int(x) for x in parts])
    return IntegerLattice(ambient, rank, IntMatrix(rows))
