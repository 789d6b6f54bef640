from fractions import Fraction

import pytest

from latpack.errors import ParameterError
from latpack.exactnum import next_prime
from latpack.craig import CraigParams, center_density_lb, craig_basis
from latpack.codes import (
    CONSTRUCTED,
    CodeSpec,
    LinearCode,
    builtin_code_table,
    extend_parity,
    gv_max_k,
    repetition,
)
from latpack.lift import (
    _preimage_lattice,
    conditional_eval,
    construction_a_density,
    improve_craig_8x,
    lift_sublattice,
    lift_with_length_n_code,
    mordell_weil_density,
    mw_beater_search,
    pipeline_24n,
    reduce_mod2,
    sweep_dimension,
)
from latpack.svp import shortest_vector


def even_code(rows, n, d):
    return LinearCode(CodeSpec(2, n, len(rows), d, CONSTRUCTED), rows)


def full_even_weight_code(width):
    rows = []
    for i in range(width - 1):
        row = [0] * width
        row[i] = row[i + 1] = 1
        rows.append(row)
    return rows


def test_reduce_mod2():
    p = CraigParams(2, 1, 3)
    assert reduce_mod2(p, [-1, 1, 0]) == [1, 1, 0]
    assert reduce_mod2(p, [2, -4, 2]) == [0, 0, 0]
    with pytest.raises(ParameterError):
        reduce_mod2(p, [1, 0, 0])  # not a member


def test_reduced_basis_spans_even_weight_code():
    from latpack.codes import gf_rank

    p = CraigParams(6, 3, 7)
    rows = [[x % 2 for x in row] for row in craig_basis(p).basis.m]
    assert gf_rank(2, rows) == 6
    for row in rows:
        assert sum(row) % 2 == 0


def test_lift_distance_guard():
    p = CraigParams(7, 1, 11)
    full = even_code(full_even_weight_code(8), 8, 2)
    with pytest.raises(ParameterError, match="below the required"):
        lift_sublattice(p, full)


def test_lift_subcode_guard():
    p = CraigParams(7, 1, 11)
    odd = LinearCode(CodeSpec(2, 8, 1, 7, CONSTRUCTED), [[1] * 7 + [0]])
    with pytest.raises(ParameterError, match="even-weight"):
        lift_sublattice(p, odd)


def test_lift_rep8_full_chain():
    p = CraigParams(7, 1, 11)
    code = extend_parity(repetition(7, 2))  # [8, 1, 8]
    r = lift_sublattice(p, code)
    base = craig_basis(p)
    assert r.lattice.vol_sq == base.vol_sq << (2 * 6)
    assert r.min_norm_guarantee == 8
    norm, _ = shortest_vector(r.lattice)
    assert norm >= 8
    assert r.density.log2(4) == "-4.0000"  # frozen: delta = 1/16


def test_lift_of_full_image_is_identity():
    # the distance guard forbids this through the public op; the raw
    # preimage shows index 1 directly
    p = CraigParams(7, 1, 11)
    pre = _preimage_lattice(p, full_even_weight_code(8))
    assert pre.vol_sq == craig_basis(p).vol_sq


def test_lift_density_consistency_invariant():
    # density equals (sqrt(8m)/2)^n / sqrt(gram) whenever the basis exists
    p = CraigParams(11, 1, 13)
    rows = [[1] * 8 + [0] * 4, [0] * 4 + [1] * 8]
    code = even_code(rows, 12, 8)
    r = lift_sublattice(p, code)
    lhs = r.density.delta_sq.as_fraction()
    rhs = Fraction(8 * p.m, 4) ** p.n / r.lattice.vol_sq
    assert lhs == rhs


def test_lift_index_identity_m2():
    # length-16 repetition, parity-extended: d = 16 = 8m for m = 2
    p = CraigParams(16, 2, 17)
    r = lift_with_length_n_code(p, repetition(16, 2))
    base = craig_basis(p)
    assert r.lattice.vol_sq == base.vol_sq << (2 * 15)
    assert r.min_norm_guarantee == 16


def test_lift_with_length_n_code_density():
    p = CraigParams(52, 6, 53)
    r = lift_with_length_n_code(p, repetition(52, 2))
    assert r.density.log2(3) == "10.705"
    assert r.lattice is not None  # 53 <= ambient cap


def test_improve_craig_8x():
    r = improve_craig_8x(1399)
    bare = center_density_lb(r.params, 0)
    assert r.density.log2_fraction() - bare.log2_fraction() == 3
    assert r.code.k == 3
    assert r.lattice is None  # ambient beyond construction cap
    # frozen: best-m bare Craig density 2905.8967, +3
    assert r.density.log2(4) == "2908.8967"

    r = improve_craig_8x(1433)
    bare = center_density_lb(r.params, 0)
    assert r.density.log2_fraction() - bare.log2_fraction() == 3

    with pytest.raises(ParameterError):
        improve_craig_8x(1217)  # p - 1 < 1222
    with pytest.raises(ParameterError):
        improve_craig_8x(1398)  # not prime


def test_improve_craig_8x_distance_margin():
    # concatenated distance 4*floor(n/7) covers 8(m+1) at the regime edge
    n = 1222
    m = round(n / (2 * __import__("math").log(n + 1)))
    assert 4 * (n // 7) >= 8 * (m + 1)


def test_conditional_eval():
    table = builtin_code_table()
    p = CraigParams(128, 4, 131)
    v = conditional_eval(p, CodeSpec(2, 128, 59, 32, "hypothetical"), table)
    assert v.achieved_density.log2(4) == "98.3941"  # frozen oracle value
    assert v.status == "open"

    p = CraigParams(256, 12, 257)
    v = conditional_eval(p, CodeSpec(2, 256, 56, 96, "hypothetical"), table)
    assert v.achieved_density.log2(4) == "294.8105"
    assert v.status == "open"

    # a known code realizes the requirement
    p = CraigParams(68, 4, 71)
    v = conditional_eval(p, CodeSpec(2, 68, 8, 32, "hypothetical"), table)
    assert v.status == "realized"

    # beyond the recorded upper bound
    p = CraigParams(256, 12, 257)
    v = conditional_eval(p, CodeSpec(2, 256, 99, 96, "hypothetical"), table)
    assert v.status == "refuted-by-table"

    with pytest.raises(ParameterError):
        conditional_eval(CraigParams(128, 4, 131), CodeSpec(2, 128, 59, 31, "hypothetical"), table)


def test_mw_beater_search():
    r = mw_beater_search(1667)
    assert r.params.n == 3332
    assert r.params.m == 104
    assert r.params.l == 3343
    assert r.code.k == gv_max_k(3332, 833) == 636
    mw = mordell_weil_density(1667)
    assert mw.delta_sq < r.density.delta_sq
    # beats the published record value as well
    assert r.density.log2_fraction() > Fraction("8897.0184")

    r = mw_beater_search(2039)
    assert r.density.log2_fraction() > Fraction("11375.6625")

    with pytest.raises(ParameterError):
        mw_beater_search(1663)  # prime but = 1 mod 6
    with pytest.raises(ParameterError):
        mw_beater_search(2063)  # out of range


def test_mw_beater_modulus_gap():
    # the modulus prime sits close above 2p; record the observed gaps
    for p in (1667, 2039):
        l = next_prime(2 * p + 1)
        assert l - 2 * p <= 16


def test_pipeline_24n():
    r = pipeline_24n(4104)
    assert (r.code.n, r.code.k, r.code.d) == (4104, 774, 1026)
    assert (r.params.m, r.params.l) == (128, 4111)
    assert r.density.log2_fraction() > 11554  # published claim is a floor
    assert r.density.log2(4) == "11555.3287"  # frozen

    r = pipeline_24n(8208)
    assert r.density.log2_fraction() > Fraction("26808")  # beats the record column

    with pytest.raises(ParameterError):
        pipeline_24n(4105)
    with pytest.raises(ParameterError):
        pipeline_24n(4080)


def test_sweep_dimension():
    r = sweep_dimension(149)
    assert abs(r.density.log2_fraction() - Fraction("112.3048")) < 1
    r = sweep_dimension(193)
    assert abs(r.density.log2_fraction() - Fraction("173.5188")) < 1
    r = sweep_dimension(8)
    assert r.density.delta_sq.as_fraction() > 0
    assert r.min_norm_guarantee in (2 * r.params.m, 8 * r.params.m)
    with pytest.raises(ParameterError):
        sweep_dimension(7)


def test_sweep_deterministic():
    a = sweep_dimension(100)
    b = sweep_dimension(100)
    assert (a.params, a.density.rendered) == (b.params, b.density.rendered)


def test_mordell_weil_density():
    assert mordell_weil_density(11).delta_sq.as_fraction() == Fraction(1, 121)
    assert mordell_weil_density(53).log2(4) == "67.0127"
    assert mordell_weil_density(2063).log2(4) == "11536.3468"
    with pytest.raises(ParameterError):
        mordell_weil_density(13)  # 13 = 1 mod 6
    with pytest.raises(ParameterError):
        mordell_weil_density(15)  # not prime


def test_construction_a_density():
    assert construction_a_density(CodeSpec(2, 8, 4, 4, CONSTRUCTED)).delta_sq.as_fraction() \
        == Fraction(1, 256)
    assert construction_a_density(CodeSpec(2, 4, 1, 4, CONSTRUCTED)).delta_sq.as_fraction() \
        == Fraction(1, 64)
    for n in (3, 6, 10):
        d = construction_a_density(CodeSpec(2, n, n, 1, CONSTRUCTED))
        assert d.delta_sq.as_fraction() == Fraction(1, 4**n)  # delta = 2^-n
    with pytest.raises(ParameterError):
        construction_a_density(CodeSpec(4, 8, 4, 4, "table-known"))
