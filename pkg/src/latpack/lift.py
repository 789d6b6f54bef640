"""Code-to-lattice lifting and the derived construction pipelines.

The core move: reduce A(n, m, l) coordinatewise mod 2 (the image is the
even-weight [n+1, n, 2] code), pick a subcode V of dimension k with
distance >= 8m, and take the preimage.  The preimage is a lattice of index
2^(n-k) whose nonzero vectors have squared norm >= 8m, giving center
density 2^(k-n/2) m^(n/2) / (l^(m-1) (n+1)^(1/2)).  Everything downstream
(the 8x Craig improvement, the conditional tables, the GV pipelines, the
dimension sweeps) instantiates that formula with different code sources.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterError
from .exactnum import BigRationalSqrt, IntMatrix, hnf_basis, is_prime, next_prime
from .craig import (
    CraigParams,
    IntegerLattice,
    LogDensity,
    center_density_lb,
    choose_params,
    craig_basis,
    membership,
)
from . import codes
from .codes import (
    CodeSpec,
    CodeTable,
    LinearCode,
    concatenate,
    dual_hamming_7_3_4,
    extend_parity,
    gf_solve,
    gv_exists,
    gv_max_k,
    repetition,
)

__all__ = [
    "LiftResult",
    "ConditionalVerdict",
    "reduce_mod2",
    "lift_sublattice",
    "lift_with_length_n_code",
    "improve_craig_8x",
    "conditional_eval",
    "mw_beater_search",
    "pipeline_24n",
    "sweep_dimension",
    "mordell_weil_density",
    "construction_a_density",
]

AMBIENT_CAP = 512


@dataclass
class LiftResult:
    params: CraigParams
    code: CodeSpec
    density: LogDensity
    min_norm_guarantee: int
    lattice: IntegerLattice | None = None


@dataclass
class ConditionalVerdict:
    required: CodeSpec
    achieved_density: LogDensity
    target_density: object | None  # LogDensity or decimal string of the record to beat
    status: str  # realized | open | refuted-by-table


def reduce_mod2(p: CraigParams, v) -> list[int]:
    """Coordinatewise mod-2 image of a lattice vector."""
    if p.l % 2 == 0:
        raise ParameterError("mod-2 reduction requires odd l")
    if not membership(p, v):
        raise ParameterError("vector is not a member of the lattice")
    return [x % 2 for x in v]


def _lift_generator_rows(basis_rows, code_rows):
    """For each codeword c find a lattice vector congruent to c mod 2."""
    mod2 = [[x % 2 for x in row] for row in basis_rows]
    lifted = []
    for c in code_rows:
        x = gf_solve(2, mod2, [b % 2 for b in c])
        if x is None:
            raise ParameterError("codeword is outside the mod-2 image of the lattice")
        vec = [0] * len(c)
        for i, xi in enumerate(x):
            if xi:
                vec = [a + b for a, b in zip(vec, basis_rows[i])]
        lifted.append(vec)
    return lifted


def _preimage_lattice(p: CraigParams, code_rows) -> IntegerLattice:
    """Basis of {v in A : v mod 2 in span(code_rows)} via HNF of the stacked system."""
    base = craig_basis(p)
    lifted = _lift_generator_rows(base.basis.m, code_rows)
    doubled = [[2 * x for x in row] for row in base.basis.m]
    stacked = IntMatrix(lifted + doubled)
    h = hnf_basis(stacked)
    if h.rows != p.n:
        raise ParameterError("preimage lattice has unexpected rank")
    return IntegerLattice(p.n + 1, p.n, h)


def lift_sublattice(
    p: CraigParams, V: LinearCode, ambient_cap: int = AMBIENT_CAP
) -> LiftResult:
    """Lift an even-weight [n+1, k, >= 8m] subcode into A(n, m, l).

    The returned density is exact; the basis itself is constructed only when
    the ambient dimension fits under ``ambient_cap`` (the density formula
    does not need it).
    """
    if p.l % 2 == 0 or not is_prime(p.l):
        raise ParameterError("lifting requires an odd prime l")
    if V.q != 2:
        raise ParameterError("subcode must be binary")
    if V.n != p.n + 1:
        raise ParameterError(f"subcode length must be n+1 = {p.n + 1}")
    for row in V.generator:
        if sum(row) % 2 != 0:
            raise ParameterError("subcode is not inside the even-weight code")
    if V.spec.d < 8 * p.m:
        raise ParameterError(
            f"subcode distance {V.spec.d} is below the required 8m = {8 * p.m}"
        )
    density = center_density_lb(p, V.k, provenance="lifted")
    lattice = None
    if p.n + 1 <= ambient_cap:
        lattice = _preimage_lattice(p, V.generator)
    return LiftResult(p, V.spec, density, 8 * p.m, lattice)


def lift_with_length_n_code(
    p: CraigParams, c: LinearCode, ambient_cap: int = AMBIENT_CAP
) -> LiftResult:
    """Parity-extend a binary [n, k, >= 8m] code, then lift the extension."""
    if c.q != 2:
        raise ParameterError("code must be binary")
    if c.n != p.n:
        raise ParameterError(f"code length must be n = {p.n}")
    if c.spec.d < 8 * p.m:
        raise ParameterError(f"distance {c.spec.d} is below the required 8m = {8 * p.m}")
    ext = extend_parity(c)
    result = lift_sublattice(p, ext, ambient_cap)
    # Density depends only on k, which parity extension preserves.
    return LiftResult(p, c.spec, center_density_lb(p, c.k, "lifted"), 8 * p.m, result.lattice)


def _nearest_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def improve_craig_8x(p: int) -> LiftResult:
    """Eightfold density improvement of the best Craig lattice in dimension p-1.

    Concatenates the [floor(n/7), 1, floor(n/7)] repetition code over GF(8)
    with the binary [7, 3, 4] code, pads to length n, and lifts with k = 3;
    the density gain over the bare lattice is exactly 2^3.
    """
    if not is_prime(p):
        raise ParameterError("p must be prime")
    n = p - 1
    if n < 1222:
        raise ParameterError("regime requires p - 1 >= 1222 (inner distance may fall short)")
    m = _nearest_half_up(n / (2.0 * math.log(n + 1)))
    params = CraigParams(n, m, p)
    n7 = n // 7
    cc = concatenate(repetition(n7, 8), dual_hamming_7_3_4())
    if cc.spec.d < 8 * m:
        raise ParameterError("concatenated distance fell below 8m; dimension too small")
    padded_rows = [row + [0] * (n - cc.n) for row in cc.generator]
    code = LinearCode(CodeSpec(2, n, 3, cc.spec.d, codes.CONSTRUCTED), padded_rows)
    return lift_with_length_n_code(params, code)


def conditional_eval(
    p: CraigParams,
    required: CodeSpec,
    table: CodeTable | None = None,
    target=None,
) -> ConditionalVerdict:
    """Density a hypothetical code would achieve, with a table-backed verdict.

    realized: a known code (or the exact GV bound) supplies the parameters;
    open: consistent with the table's upper bound but not known to exist;
    refuted-by-table: the required distance exceeds the table's upper bound.
    """
    if required.n not in (p.n, p.n + 1):
        raise ParameterError("required code length must be n or n+1")
    if required.d < 8 * p.m:
        raise ParameterError(f"required distance {required.d} below 8m = {8 * p.m}")
    if table is None:
        table = codes.builtin_code_table()
    achieved = center_density_lb(p, required.k, provenance="formula-only")
    known = table.best_known(required.q, required.n, required.k)
    upper = table.upper_bound(required.q, required.n, required.k)
    if (known is not None and known >= required.d) or (
        required.q == 2 and gv_exists(required.n, required.k, required.d)
    ):
        status = "realized"
    elif upper is not None and upper < required.d:
        status = "refuted-by-table"
    else:
        status = "open"
    return ConditionalVerdict(required, achieved, target, status)


def mordell_weil_density(p: int) -> LogDensity:
    """Reference density ((p+1)/12)^(p-1) / p^((p-5)/6) for dimension 2p-2."""
    if not is_prime(p) or p % 6 != 5:
        raise ParameterError("requires a prime p with p = 5 mod 6")
    num = (p + 1) ** (2 * (p - 1))
    den = 12 ** (2 * (p - 1)) * p ** ((p - 5) // 3)
    return LogDensity(BigRationalSqrt(num, den), "formula-only")


def mw_beater_search(p: int) -> LiftResult:
    """GV-certified lattice in dimension 2p-2 denser than the reference density.

    m = floor((p-1)/16), l the next prime above 2p, and k the exact GV
    maximum for [2p-2, k, (p-1)/2] (always at least floor(0.3776 (p-1))).
    """
    if not is_prime(p) or p % 6 != 5:
        raise ParameterError("requires a prime p with p = 5 mod 6")
    if not (1667 <= p <= 2039):
        raise ParameterError("no improvement guarantee outside 1667 <= p <= 2039")
    n = 2 * p - 2
    m = (p - 1) // 16
    l = next_prime(2 * p + 1)
    d = (p - 1) // 2
    k = gv_max_k(n, d)
    k_floor = 3776 * (p - 1) // 10000
    if k < k_floor:
        raise ParameterError("exact GV scan fell below the guaranteed dimension")
    params = CraigParams(n, m, l)
    density = center_density_lb(params, k, "lifted")
    mw = mordell_weil_density(p)
    if not (mw.delta_sq < density.delta_sq):
        raise ParameterError(f"construction does not beat the reference density at p={p}")
    return LiftResult(params, CodeSpec(2, n, k, d, codes.GV_EXISTS), density, 8 * m)


def pipeline_24n(N: int) -> LiftResult:
    """Dimension N = 24t pipeline: m = floor(3t/4), k = floor(4.5312 t), d = 6t."""
    if N % 24 != 0:
        raise ParameterError("dimension must be a multiple of 24")
    if not (4104 <= N <= 8640):
        raise ParameterError("pipeline covers 4104 <= N <= 8640")
    t = N // 24
    m = (3 * t) // 4
    k = 45312 * t // 10000
    d = 6 * t
    if 8 * m > d:
        raise ParameterError("8m exceeds the code distance 6t")
    if not gv_exists(N, k, d):
        raise ParameterError(f"GV cross-check failed for N={N}")
    l = next_prime(N + 1)
    params = CraigParams(N, m, l)
    density = center_density_lb(params, k, "lifted")
    return LiftResult(params, CodeSpec(2, N, k, d, codes.GV_EXISTS), density, 8 * m)


def _candidate_ms(n: int, window: int) -> list[int]:
    """Sweep window: around n/(2 ln n), around n/32, plus m = 1."""
    hi = max(1, -(-n // 2) - 1)
    centers = {choose_params(n).m, max(1, round(n / 32))}
    cands = {1}
    for c in centers:
        for m in range(max(1, c - window), min(hi, c + window) + 1):
            cands.add(m)
    return sorted(cands)


def sweep_dimension(
    n: int, table: CodeTable | None = None, window: int = 3
) -> LiftResult:
    """Best density over a bounded window of m, with k from GV and the code table.

    Deterministic tie-break: higher density, then smaller m, then smaller l.
    """
    if n < 8:
        raise ParameterError("sweep requires n >= 8")
    if table is None:
        table = codes.builtin_code_table()
    l = next_prime(n + 1)
    best: LiftResult | None = None
    for m in _candidate_ms(n, window):
        need = 8 * m
        k = 0
        if need <= n:
            k = max(gv_max_k(n, need), table.best_k_at_distance(2, n, need))
        params = CraigParams(n, m, l)
        if k > 0:
            density = center_density_lb(params, k, "lifted")
            code = CodeSpec(2, n, k, need, codes.GV_EXISTS)
            guarantee = 8 * m
        else:
            density = center_density_lb(params, 0, "plain")
            code = None
            guarantee = 2 * m
        cand = LiftResult(params, code, density, guarantee)
        if best is None or best.density.delta_sq < cand.density.delta_sq:
            best = cand
    return best


def construction_a_density(c: CodeSpec) -> LogDensity:
    """Integer vectors congruent mod 2 to codewords: delta = min(sqrt(d), 2)^n / 2^(2n-k)."""
    if c.q != 2:
        raise ParameterError("construction applies to binary codes")
    num = min(c.d, 4) ** c.n
    den = 1 << (2 * (2 * c.n - c.k))
    return LogDensity(BigRationalSqrt(num, den), "formula-only")
