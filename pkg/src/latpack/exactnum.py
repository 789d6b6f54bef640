"""Exact arithmetic kernel.

Arbitrary-precision binomial sums, deterministic primality, integer-matrix
Hermite normal form, fraction-free Gram determinants, and base-2 logarithms
of rationals rendered to a requested number of decimal digits.  Everything
here is pure integer/rational arithmetic; no floating point enters any
certified path.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import ParameterError, RankError

__all__ = [
    "IntMatrix",
    "BigRationalSqrt",
    "binom_sum",
    "is_prime",
    "next_prime",
    "hnf",
    "hnf_basis",
    "solve_left",
    "gram_det",
    "bareiss_det",
    "log2_of",
    "log2_fraction",
    "div_round_half_even",
]


class IntMatrix:
    """Dense integer matrix, row-major, arbitrary-precision entries."""

    __slots__ = ("rows", "cols", "m")

    def __init__(self, rows_data):
        data = [list(r) for r in rows_data]
        if not data or not data[0]:
            raise ParameterError("matrix must have at least one row and one column")
        width = len(data[0])
        for r in data:
            if len(r) != width:
                raise ParameterError("ragged rows in matrix")
            for x in r:
                if not isinstance(x, int):
                    raise ParameterError("matrix entries must be integers")
        self.rows = len(data)
        self.cols = width
        self.m = data

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, i: int):
        return self.m[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.m == other.m

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}x{self.cols})"

    def copy(self) -> "IntMatrix":
        return IntMatrix(self.m)

    def transpose(self) -> "IntMatrix":
        return IntMatrix([[self.m[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def matmul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ParameterError("dimension mismatch in matrix product")
        ot = other.transpose().m
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in ot] for row in self.m]
        )

    def stack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ParameterError("column mismatch in stack")
        return IntMatrix(self.m + other.m)


def binom_sum(n: int, r: int) -> int:
    """Sum of binomial coefficients C(n,0..r), exact."""
    if n < 0 or r < 0:
        raise ParameterError("binom_sum arguments must be nonnegative")
    if r > n:
        raise ParameterError(f"binom_sum requires r <= n, got r={r} n={n}")
    total = 0
    c = 1
    for i in range(r + 1):
        total += c
        c = c * (n - i) // (i + 1)
    return total


# Witnesses proving primality for every n < 3_317_044_064_679_887_385_961_981
# (Sorenson & Webster).  All moduli used in this package are far smaller.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67)


def is_prime(n: int) -> bool:
    """Deterministic primality test."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < _MR_LIMIT:
        d = n - 1
        s = 0
        while d % 2 == 0:
            d //= 2
            s += 1
        for a in _MR_WITNESSES:
            x = pow(a, d, n)
            if x == 1 or x == n - 1:
                continue
            for _ in range(s - 1):
                x = x * x % n
                if x == n - 1:
                    break
            else:
                return False
        return True
    # Inputs this large never occur here; fall back to trial division.
    f = 71
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def next_prime(x: int) -> int:
    """Smallest prime p with p >= x."""
    if x < 2:
        raise ParameterError("next_prime requires x >= 2")
    if x == 2:
        return 2
    c = x if x % 2 == 1 else x + 1
    while not is_prime(c):
        c += 2
    return c


def _hnf_inplace(mat, trans):
    """Row-style HNF on ``mat`` (list of lists), mirroring ops into ``trans``.

    Pivots positive, entries above each pivot reduced into [0, pivot).
    Returns the list of pivot column indices.
    """
    nrows = len(mat)
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        # Clear column c below row r by gcd elimination.
        while True:
            nz = [i for i in range(r, nrows) if mat[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(mat[i][c]), i))
            if i0 != r:
                mat[r], mat[i0] = mat[i0], mat[r]
                trans[r], trans[i0] = trans[i0], trans[r]
            done = True
            for i in range(r + 1, nrows):
                if mat[i][c] != 0:
                    q = mat[i][c] // mat[r][c]
                    if q:
                        mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
                        trans[i] = [a - q * b for a, b in zip(trans[i], trans[r])]
                    if mat[i][c] != 0:
                        done = False
            if done:
                break
        if mat[r][c] == 0:
            continue
        if mat[r][c] < 0:
            mat[r] = [-a for a in mat[r]]
            trans[r] = [-a for a in trans[r]]
        for i in range(r):
            q = mat[i][c] // mat[r][c]
            if q:
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
                trans[i] = [a - q * b for a, b in zip(trans[i], trans[r])]
        pivots.append(c)
        r += 1
    return pivots


def hnf(M: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Hermite normal form of a full-row-rank matrix.

    Returns (H, U) with U unimodular and U*M = H.  Raises RankError when the
    rows are dependent; use hnf_basis for generating sets.
    """
    mat = [list(r) for r in M.m]
    trans = [[1 if i == j else 0 for j in range(M.rows)] for i in range(M.rows)]
    pivots = _hnf_inplace(mat, trans)
    if len(pivots) != M.rows:
        raise RankError(f"matrix has rank {len(pivots)} < {M.rows} rows")
    return IntMatrix(mat), IntMatrix(trans)


def hnf_basis(M: IntMatrix) -> IntMatrix:
    """Canonical basis (nonzero HNF rows) of the lattice generated by the rows of M."""
    mat = [list(r) for r in M.m]
    trans = [[1 if i == j else 0 for j in range(M.rows)] for i in range(M.rows)]
    pivots = _hnf_inplace(mat, trans)
    if not pivots:
        raise RankError("matrix generates the zero lattice")
    return IntMatrix(mat[: len(pivots)])


def solve_left(B: IntMatrix, v) -> list[int] | None:
    """Integer solution x of x*B = v, or None when v is outside the row lattice."""
    if len(v) != B.cols:
        raise ParameterError("vector length does not match matrix columns")
    H, U = hnf(B)
    pivots = []
    for i in range(H.rows):
        j = next((c for c in range(H.cols) if H[i][c] != 0), None)
        pivots.append(j)
    y = [0] * H.rows
    residual = list(v)
    for i, pc in enumerate(pivots):
        q, r = divmod(residual[pc], H[i][pc])
        if r != 0:
            return None
        y[i] = q
        if q:
            residual = [a - q * b for a, b in zip(residual, H[i])]
    if any(residual):
        return None
    return [sum(y[i] * U[i][j] for i in range(H.rows)) for j in range(U.cols)]


def bareiss_det(G) -> int:
    """Exact determinant of a square integer matrix (fraction-free elimination)."""
    a = [list(r) for r in G]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ParameterError("bareiss_det requires a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def gram_det(B: IntMatrix) -> int:
    """det(B * B^T), exact; 0 when the rows are dependent (degenerate)."""
    bt = B.transpose().m
    gram = [[sum(x * y for x, y in zip(B.m[i], row)) for row in B.m] for i in range(B.rows)]
    return bareiss_det(gram)


def _log2_fixed(num: int, den: int, frac_bits: int) -> int:
    """Integer T with T / 2^frac_bits = log2(num/den) up to ~2^-(frac_bits-1)."""
    if num <= 0 or den <= 0:
        raise ParameterError("log2 requires a positive rational")
    e = num.bit_length() - den.bit_length()
    work = frac_bits + 64
    if e >= 0:
        mant = (num << work) // (den << e)
    else:
        mant = (num << (work - e)) // den
    if mant < (1 << work):
        mant <<= 1
        e -= 1
    frac = 0
    top = 1 << (work + 1)
    for _ in range(frac_bits):
        mant = (mant * mant) >> work
        frac <<= 1
        if mant >= top:
            mant >>= 1
            frac |= 1
    return (e << frac_bits) + frac


def div_round_half_even(a: int, b: int) -> int:
    """Round a/b (b > 0) to the nearest integer, ties to even."""
    if b <= 0:
        raise ParameterError("denominator must be positive")
    q, r = divmod(a, b)
    twice = 2 * r
    if twice > b or (twice == b and q % 2 == 1):
        q += 1
    return q


def _format_scaled(scaled: int, digits: int) -> str:
    sign = "-" if scaled < 0 else ""
    mag = abs(scaled)
    if digits == 0:
        return f"{sign}{mag}"
    unit = 10**digits
    return f"{sign}{mag // unit}.{mag % unit:0{digits}d}"


class BigRationalSqrt:
    """A positive value stored exactly as the square of a rational.

    Holds delta^2 = num/den in lowest terms; every center density in this
    package is the square root of a rational, so the exact object is the
    square and rendering happens in log2 space.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int = 1):
        if num <= 0 or den <= 0:
            raise ParameterError("BigRationalSqrt requires positive numerator and denominator")
        g = math.gcd(num, den)
        self.num = num // g
        self.den = den // g

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def times(self, num: int, den: int = 1) -> "BigRationalSqrt":
        return BigRationalSqrt(self.num * num, self.den * den)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BigRationalSqrt)
            and self.num == other.num
            and self.den == other.den
        )

    def __lt__(self, other: "BigRationalSqrt") -> bool:
        return self.num * other.den < other.num * self.den

    def __repr__(self) -> str:
        return f"BigRationalSqrt({self.num}/{self.den})"

    def log2(self, digits: int = 4) -> str:
        return log2_of(self, digits)

    def log2_fraction(self, frac_bits: int = 192) -> Fraction:
        """(1/2)*log2(num/den) as an exact dyadic approximation."""
        t = _log2_fixed(self.num, self.den, frac_bits)
        return Fraction(t, 1 << (frac_bits + 1))


def log2_of(v: BigRationalSqrt, digits: int) -> str:
    """(1/2)*log2(v.num/v.den) to ``digits`` decimals, round half to even."""
    if digits < 1:
        raise ParameterError("digits must be >= 1")
    # Internal precision: at least 64 decimal digits worth of bits.
    frac_bits = max(256, math.ceil(3.322 * (digits + 24)))
    t = _log2_fixed(v.num, v.den, frac_bits)
    scaled = div_round_half_even(t * 10**digits, 1 << (frac_bits + 1))
    return _format_scaled(scaled, digits)


def log2_fraction(num: int, den: int = 1, frac_bits: int = 192) -> Fraction:
    """log2(num/den) as an exact dyadic approximation (no 1/2 factor)."""
    return Fraction(_log2_fixed(num, den, frac_bits), 1 << frac_bits)
