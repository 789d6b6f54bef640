"""Linear codes over GF(2), GF(4) and GF(8).

Field elements are encoded as bit-polynomials 0..q-1 with the moduli
x^2+x+1 and x^3+x+1.  Minimum distances come from full codeword
enumeration (capped), existence questions from exact Gilbert-Varshamov
integer comparisons, never the entropy approximation.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

from .errors import CapacityError, ParameterError, ParseError
from .exactnum import _log2_fixed, binom_sum

__all__ = [
    "CodeSpec",
    "LinearCode",
    "CodeTable",
    "gf_add",
    "gf_mul",
    "repetition",
    "extend_parity",
    "concatenate",
    "min_distance",
    "gv_exists",
    "gv_max_k",
    "lemma62_params",
    "load_code_table",
    "dual_hamming_7_3_4",
    "extended_hamming_8_4_4",
    "single_parity_3_2_2",
    "write_generator",
    "read_generator",
]

ENUMERATION_CAP = 1 << 26

CONSTRUCTED = "constructed"
TABLE_KNOWN = "table-known"
GV_EXISTS = "gv-exists"
HYPOTHETICAL = "hypothetical"
_STATUSES = (CONSTRUCTED, TABLE_KNOWN, GV_EXISTS, HYPOTHETICAL)

_MODULUS = {2: 0b10, 4: 0b111, 8: 0b1011}


def _clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _reduce(x: int, mod: int) -> int:
    mb = mod.bit_length()
    while x.bit_length() >= mb:
        x ^= mod << (x.bit_length() - mb)
    return x


def gf_add(a: int, b: int) -> int:
    return a ^ b


def gf_mul(q: int, a: int, b: int) -> int:
    if q not in _MODULUS:
        raise ParameterError(f"unsupported field size {q}")
    return _reduce(_clmul(a, b), _MODULUS[q])


def gf_rank(q: int, rows) -> int:
    """Rank of a matrix over GF(q) by Gaussian elimination."""
    work = [list(r) for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = next(e for e in range(1, q) if gf_mul(q, work[rank][c], e) == 1)
        work[rank] = [gf_mul(q, inv, x) for x in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][c]:
                f = work[i][c]
                work[i] = [gf_add(x, gf_mul(q, f, y)) for x, y in zip(work[i], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank


def gf_solve(q: int, rows, target):
    """Coefficients x with sum x_i * rows[i] = target over GF(q), or None."""
    nrows = len(rows)
    ncols = len(rows[0])
    aug = [list(r) + [0] * nrows for r in rows]
    for i in range(nrows):
        aug[i][ncols + i] = 1
    rank = 0
    pivcols = []
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if aug[i][c]), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        inv = next(e for e in range(1, q) if gf_mul(q, aug[rank][c], e) == 1)
        aug[rank] = [gf_mul(q, inv, x) for x in aug[rank]]
        for i in range(nrows):
            if i != rank and aug[i][c]:
                f = aug[i][c]
                aug[i] = [gf_add(x, gf_mul(q, f, y)) for x, y in zip(aug[i], aug[rank])]
        pivcols.append(c)
        rank += 1
    x = [0] * nrows
    residual = list(target)
    for i, c in enumerate(pivcols):
        f = residual[c]
        if f:
            for j in range(ncols):
                residual[j] = gf_add(residual[j], gf_mul(q, f, aug[i][j]))
            for j in range(nrows):
                x[j] = gf_add(x[j], gf_mul(q, f, aug[i][ncols + j]))
    if any(residual):
        return None
    return x


@dataclass(frozen=True)
class CodeSpec:
    """Parameter record [n, k, d] over GF(q) with a provenance status."""

    q: int
    n: int
    k: int
    d: int
    status: str = TABLE_KNOWN

    def __post_init__(self):
        if self.q not in (2, 4, 8):
            raise ParameterError(f"field size must be 2, 4 or 8, got {self.q}")
        if not (1 <= self.k <= self.n):
            raise ParameterError(f"need 1 <= k <= n, got k={self.k} n={self.n}")
        if not (1 <= self.d <= self.n):
            raise ParameterError(f"need 1 <= d <= n, got d={self.d} n={self.n}")
        if self.status not in _STATUSES:
            raise ParameterError(f"unknown status {self.status!r}")

    def __str__(self) -> str:
        sub = "" if self.q == 2 else f"_{self.q}"
        return f"[{self.n},{self.k},{self.d}]{sub}"


class LinearCode:
    """A CodeSpec together with a generator matrix of full rank over GF(q)."""

    def __init__(self, spec: CodeSpec, generator):
        gen = [list(r) for r in generator]
        if len(gen) != spec.k or any(len(r) != spec.n for r in gen):
            raise ParameterError("generator shape does not match spec")
        for row in gen:
            for x in row:
                if not (0 <= x < spec.q):
                    raise ParameterError("generator entries must lie in 0..q-1")
        if gf_rank(spec.q, gen) != spec.k:
            raise ParameterError("generator rows are dependent over GF(q)")
        self.spec = spec
        self.generator = gen

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def k(self) -> int:
        return self.spec.k

    def __repr__(self) -> str:
        return f"LinearCode({self.spec})"


def repetition(n: int, q: int = 2) -> LinearCode:
    """[n, 1, n] repetition code."""
    if n < 1:
        raise ParameterError("length must be >= 1")
    return LinearCode(CodeSpec(q, n, 1, n, CONSTRUCTED), [[1] * n])


def min_distance(c: LinearCode) -> int:
    """Exact minimum weight by full enumeration of the q^k codewords."""
    q, n, k = c.q, c.n, c.k
    if q**k > ENUMERATION_CAP:
        raise CapacityError(f"{q}^{k} codewords exceed the enumeration cap")
    if q == 2:
        masks = []
        for row in c.generator:
            m = 0
            for j, x in enumerate(row):
                if x:
                    m |= 1 << j
            masks.append(m)
        best = n + 1
        word = 0
        for i in range(1, 1 << k):  # Gray-code walk: one row XOR per codeword
            word ^= masks[(i & -i).bit_length() - 1]
            w = word.bit_count()
            if 0 < w < best:
                best = w
        return best
    best = n + 1

    def walk(i, current):
        nonlocal best
        if i == k:
            w = sum(1 for x in current if x)
            if 0 < w < best:
                best = w
            return
        row = c.generator[i]
        for e in range(q):
            if e == 0:
                walk(i + 1, current)
            else:
                walk(i + 1, [gf_add(x, gf_mul(q, e, y)) for x, y in zip(current, row)])

    walk(0, [0] * n)
    return best


def extend_parity(c: LinearCode) -> LinearCode:
    """Append an overall parity bit; weights become even, d rounds up to even."""
    if c.q != 2:
        raise ParameterError("parity extension applies to binary codes only")
    rows = [row + [sum(row) % 2] for row in c.generator]
    d = c.spec.d + (c.spec.d % 2)
    status = c.spec.status
    if 2**c.k <= ENUMERATION_CAP and status == CONSTRUCTED:
        out = LinearCode(CodeSpec(2, c.n + 1, c.k, d, CONSTRUCTED), rows)
        exact = min_distance(out)
        if exact != d:
            out = LinearCode(CodeSpec(2, c.n + 1, c.k, exact, CONSTRUCTED), rows)
        return out
    return LinearCode(CodeSpec(2, c.n + 1, c.k, d, status), rows)


def _symbol_bits(s: int, b: int) -> list[int]:
    return [(s >> t) & 1 for t in range(b)]


def concatenate(outer, inner: LinearCode):
    """Concatenated code: outer over GF(2^b) composed with a binary [n_i, b, d_i] inner.

    Returns a LinearCode when the outer generator is available, otherwise the
    parameter-level CodeSpec [N*n_i, K*b, >= D*d_i].
    """
    ospec = outer.spec if isinstance(outer, LinearCode) else outer
    b = ospec.q.bit_length() - 1
    if inner.q != 2:
        raise ParameterError("inner code must be binary")
    if inner.k != b:
        raise ParameterError(
            f"inner dimension {inner.k} must equal log2 of outer field size ({b})"
        )
    n_out = ospec.n * inner.n
    k_out = ospec.k * b
    d_out = ospec.d * inner.spec.d
    if not isinstance(outer, LinearCode):
        status = ospec.status if ospec.status != CONSTRUCTED else TABLE_KNOWN
        return CodeSpec(2, n_out, k_out, d_out, status)
    rows = []
    for g in outer.generator:
        for t in range(b):
            scaled = [gf_mul(ospec.q, s, 1 << t) for s in g]
            row = []
            for s in scaled:
                bits = _symbol_bits(s, b)
                word = [0] * inner.n
                for j, bit in enumerate(bits):
                    if bit:
                        word = [x ^ y for x, y in zip(word, inner.generator[j])]
                row.extend(word)
            rows.append(row)
    if 2**k_out <= ENUMERATION_CAP:
        code = LinearCode(CodeSpec(2, n_out, k_out, d_out, CONSTRUCTED), rows)
        exact = min_distance(code)
        if exact < d_out:
            raise ParameterError("concatenated distance fell below the product bound")
        return LinearCode(CodeSpec(2, n_out, k_out, exact, CONSTRUCTED), rows)
    return LinearCode(CodeSpec(2, n_out, k_out, d_out, TABLE_KNOWN), rows)


def gv_exists(n: int, k: int, d: int) -> bool:
    """Gilbert-Varshamov sufficient condition: V(n, d-1) < 2^(n-k+1), exact."""
    if not (1 <= k <= n) or not (1 <= d <= n):
        raise ParameterError("need 1 <= k <= n and 1 <= d <= n")
    return binom_sum(n, d - 1) < (1 << (n - k + 1))


def gv_max_k(n: int, d: int) -> int:
    """Largest k certified by the exact GV comparison; 0 if none."""
    if not (1 <= d <= n):
        raise ParameterError("need 1 <= d <= n")
    v = binom_sum(n, d - 1)
    k = n + 1 - v.bit_length()
    return min(max(k, 0), n)


_RATE_BITS = 160
_RATE_SCALED = 6 * _log2_fixed(3, 1, _RATE_BITS) - (8 << _RATE_BITS)  # 6*log2(3) - 8


def lemma62_params(t: int) -> CodeSpec:
    """GV-certified family [8t, floor((6 log2 3 - 8) t), 2t]."""
    if t < 1:
        raise ParameterError("t must be >= 1")
    k = (_RATE_SCALED * t) >> _RATE_BITS
    spec = CodeSpec(2, 8 * t, k, 2 * t, GV_EXISTS)
    if not gv_exists(spec.n, spec.k, spec.d):
        raise ParameterError(f"GV cross-check failed for t={t}")
    return spec


class CodeTable:
    """Best-known distances, upper bounds and hypothetical entries keyed by (q, n, k)."""

    def __init__(self):
        self.known: dict[tuple[int, int, int], int] = {}
        self.upper: dict[tuple[int, int, int], int] = {}
        self.hypothetical: dict[tuple[int, int, int], int] = {}

    def add(self, q: int, n: int, k: int, d: int, status: str) -> None:
        key = (q, n, k)
        if status in (TABLE_KNOWN, CONSTRUCTED, GV_EXISTS):
            if d > self.known.get(key, 0):
                self.known[key] = d
        elif status == HYPOTHETICAL:
            if d > self.hypothetical.get(key, 0):
                self.hypothetical[key] = d
        elif status == "upper":
            if d < self.upper.get(key, 1 << 62):
                self.upper[key] = d
        else:
            raise ParameterError(f"unknown status {status!r}")

    def best_known(self, q: int, n: int, k: int) -> int | None:
        return self.known.get((q, n, k))

    def upper_bound(self, q: int, n: int, k: int) -> int | None:
        return self.upper.get((q, n, k))

    def best_k_at_distance(self, q: int, n: int, d_min: int) -> int:
        """Largest known-constructible k at length n with distance >= d_min."""
        best = 0
        for (qq, nn, k), d in self.known.items():
            if qq == q and nn == n and d >= d_min and k > best:
                best = k
        if n >= d_min:
            best = max(best, 1)  # repetition code
        return best

    def specs(self):
        for (q, n, k), d in sorted(self.known.items()):
            yield CodeSpec(q, n, k, d, TABLE_KNOWN)


def load_code_table(path) -> CodeTable:
    """CSV with header q,n,k,d,status; status 'table' normalizes to table-known."""
    table = CodeTable()
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        for ln, row in enumerate(reader, start=1):
            if not row or row[0].startswith("#"):
                continue
            if ln == 1 and row[0].strip().lower() == "q":
                continue
            if len(row) != 5:
                raise ParseError(f"{path}: line {ln}: expected 5 fields, got {len(row)}")
            try:
                q, n, k, d = (int(x) for x in row[:4])
            except ValueError as exc:
                raise ParseError(f"{path}: line {ln}: {exc}") from None
            status = row[4].strip()
            if status == "table":
                status = TABLE_KNOWN
            try:
                table.add(q, n, k, d, status)
            except ParameterError as exc:
                raise ParseError(f"{path}: line {ln}: {exc}") from None
    return table


def builtin_code_table() -> CodeTable:
    from importlib.resources import files

    return load_code_table(files("latpack").joinpath("data/codes.csv"))


def dual_hamming_7_3_4() -> LinearCode:
    """The [7,3,4] simplex code (all nonzero columns of weight-3 space)."""
    gen = [
        [1, 0, 0, 1, 0, 1, 1],
        [0, 1, 0, 1, 1, 0, 1],
        [0, 0, 1, 0, 1, 1, 1],
    ]
    return LinearCode(CodeSpec(2, 7, 3, 4, CONSTRUCTED), gen)


def extended_hamming_8_4_4() -> LinearCode:
    gen = [
        [1, 1, 1, 1, 1, 1, 1, 1],
        [0, 1, 0, 1, 0, 1, 0, 1],
        [0, 0, 1, 1, 0, 0, 1, 1],
        [0, 0, 0, 0, 1, 1, 1, 1],
    ]
    return LinearCode(CodeSpec(2, 8, 4, 4, CONSTRUCTED), gen)


def single_parity_3_2_2() -> LinearCode:
    return LinearCode(CodeSpec(2, 3, 2, 2, CONSTRUCTED), [[1, 0, 1], [0, 1, 1]])


def write_generator(code: LinearCode, fh) -> None:
    """Text format: first line "q n k", then k rows of n symbols."""
    fh.write(f"{code.q} {code.n} {code.k}\n")
    for row in code.generator:
        fh.write(" ".join(str(x) for x in row) + "\n")


def read_generator(fh, d: int | None = None, status: str = CONSTRUCTED) -> LinearCode:
    header = fh.readline().split()
    if len(header) != 3:
        raise ParseError("generator file must start with 'q n k'")
    q, n, k = (int(x) for x in header)
    rows = []
    for i in range(k):
        parts = fh.readline().split()
        if len(parts) != n:
            raise ParseError(f"generator row {i + 1} must have {n} entries")
        rows.append([int(x) for x in parts])
    if d is None:
        probe = LinearCode(CodeSpec(q, n, k, 1, TABLE_KNOWN), rows)
        if q**k <= ENUMERATION_CAP:
            d = min_distance(probe)
            status = CONSTRUCTED
        else:
            raise CapacityError("distance not given and code too large to enumerate")
    return LinearCode(CodeSpec(q, n, k, d, status), rows)
