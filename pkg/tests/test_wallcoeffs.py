from fractions import Fraction
from math import comb, gcd

import pytest
from hypothesis import given, settings, strategies as st

from scatterkit.exact import B, C, G, PolyBCG, TruncSeries
from scatterkit.scatter import cluster_diagram, extract_rho, extract_tau, gps_diagram
from scatterkit.wallcoeffs import (CLOSED_FORMULAS, ConsistencyError, SlopeContext, VerifyConfig,
                                   applicable_formulas, central_series, check_c9_forms, chi_extract,
                                   closed_formula, export_csv, rebuild_from_chi, rho_from_tau, rho_k,
                                   tau_series, tau_series_expanded, tau_series_numeric_power,
                                   tau_split, tau_split_identity, tau_splits, triple_agreement,
                                   verify_conjectures, wall_function)

from oracles import c5_numeric, c6_numeric, c7_numeric


def rho_2_2j(b, c, j):
    """Hand count of tight gradings on the (2, 2j) wall."""
    cb = lambda k: comb(b, k)
    out = cb(j) ** 2 * comb(c, 2)
    for n in range(1, j + 1):
        out += 2 * cb(j + n) * cb(j - n) * comb(c, 2)
        out += (2 * n - 1) * cb(j + n) * cb(j - n) * c * c
    return out


@pytest.mark.parametrize("j", [1, 2, 3])
@pytest.mark.parametrize("b,c", [(1, 1), (2, 3), (3, 2), (4, 3), (5, 2)])
def test_rho_two_step_on_row_slopes(j, b, c):
    ctx = SlopeContext(1, j, b, c)
    expected = rho_2_2j(b, c, j)
    assert rho_k(ctx, 2) == expected
    if 2 + 2 * j <= 8:
        assert extract_rho(gps_diagram(c, b, 2 + 2 * j), 2, 2 * j) == expected


@pytest.mark.parametrize("j", [1, 2, 3])
def test_tau_two_one_on_row_slopes(j):
    split = tau_splits(SlopeContext(1, j), 2)[1]
    for b, c in [(2, 3), (3, 2), (4, 5), (5, 3)]:
        rho1 = c * comb(b, j)
        expected = Fraction(rho_2_2j(b, c, j), b * c) - Fraction(rho1 * rho1, 2 * b * c)
        assert split[1].evaluate(b, c, 0) == expected


@pytest.mark.parametrize("d,e", [(1, 1), (1, 2), (2, 1), (1, 3)])
def test_symbolic_pipeline_routes_agree(d, e):
    K = 3 if d + e <= 3 else 2
    ctx = SlopeContext(d, e)
    assert tau_series(ctx, K) == tau_series_expanded(d, e, K)
    assert tau_split_identity(ctx, K)
    for k, split in enumerate(tau_splits(ctx, K), 1):
        assert split.reassemble() == tau_series(ctx, K)[k - 1]
        assert rho_from_tau(split) == rho_k(ctx, k)


@pytest.mark.parametrize("d,e,b,c", [(1, 1, 2, 3), (1, 2, 3, 2), (2, 1, 2, 2), (1, 1, 4, 4)])
def test_numeric_power_route(d, e, b, c):
    ctx = SlopeContext(d, e, b, c)
    assert tau_series(ctx, 3) == tau_series_numeric_power(ctx, 3)


@pytest.mark.parametrize("b,c", [(1, 5), (2, 2), (2, 3), (3, 3)])
def test_triple_agreement(b, c):
    rows = triple_agreement(b, c, 10)
    assert rows and all(r["agree"] for r in rows)


def test_formula_applicability():
    assert applicable_formulas(1, 1) == ["C5", "C6", "C7", "C8"]
    assert applicable_formulas(3, 2) == ["C9", "C9alt"]
    assert applicable_formulas(2, 3) == ["C10"]
    with pytest.raises(ValueError):
        closed_formula("C7", 1, 2)
    with pytest.raises(ValueError):
        closed_formula("C99", 1, 1)


@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 5))
def test_row_column_diagonal_formulas(b, c, n):
    if n <= b:
        assert closed_formula("C5", 1, n, b, c) == c5_numeric(b, c, n)
    if n <= c:
        assert closed_formula("C6", n, 1, b, c) == c6_numeric(b, c, n)
    assert closed_formula("C7", n, n, b, c) == c7_numeric(b, c, n)


@pytest.mark.parametrize("i", range(1, 5))
def test_diagonal_forms_agree(i):
    assert closed_formula("C7", i, i) == closed_formula("C8", i, i)


def test_c9_forms():
    assert check_c9_forms(6)


def test_diagonal_at_unit_lattice():
    # the pentagon: only tau(1, 1) survives
    d = cluster_diagram(1, 1, 12)
    for k in range(1, 7):
        assert closed_formula("C7", k, k, 1, 1) == extract_tau(d, 1, 1, k, k) == (k == 1)


@pytest.mark.parametrize("b,c", [(1, 1), (2, 2), (3, 2), (2, 4), (3, 3), (2, 1)])
def test_central_series(b, c):
    g = gcd(b, c)
    F = central_series(b, c, g, 6)
    assert [F[i] for i in range(1, 7)] == [c7_numeric(b, c, i) for i in range(1, 7)]
    K = 10 // (b + c)
    if K:
        d = cluster_diagram(b, c, K * (b + c))
        assert [F[i] for i in range(1, K + 1)] == [extract_tau(d, b, c, i, i) for i in range(1, K + 1)]


def test_central_series_values():
    assert [central_series(2, 2, 2, 3)[i] for i in (1, 2, 3)] == [2, 3, 4]


@pytest.mark.parametrize("b,c", [(2, 3), (3, 2), (4, 4)])
def test_chi_central_slope(b, c):
    chis = chi_extract(SlopeContext(1, 1, b, c), 5)
    assert chis == [b * c, 0, 0, 0, 0]


@pytest.mark.parametrize("j,b,c", [(2, 2, 3), (2, 3, 3), (3, 3, 2)])
def test_chi_first_value_on_rows(j, b, c):
    assert chi_extract(SlopeContext(1, j, b, c), 3)[0] == c * comb(b, j)


def test_chi_can_be_negative():
    ctx = SlopeContext(2, 1, 1, 5)
    chis = chi_extract(ctx, 5)
    assert chis == [10, -5, 5, -10, 25]
    assert rebuild_from_chi(ctx.E, chis, 5) == wall_function(ctx, 5)


def test_chi_rejects_non_integer():
    with pytest.raises(ConsistencyError):
        chi_extract(SlopeContext(1, 1, 2, 2), 2, TruncSeries([1, Fraction(1, 2), 0], 2))


def test_tau_split_rejects_non_multiple_of_g():
    with pytest.raises(ConsistencyError):
        tau_split(B + G, 1)


def test_slope_context_validation():
    with pytest.raises(ValueError):
        SlopeContext(2, 2)
    with pytest.raises(ValueError):
        SlopeContext(1, 1, 2, None)
    with pytest.raises(ValueError):
        SlopeContext(1, 1).E
    assert SlopeContext(2, 3, 2, 2).g == 2


def test_verify_subset():
    rep = verify_conjectures(VerifyConfig(conjectures=("C13",), c13_jmax=2))
    assert rep.rows and rep.gated_ok
    assert {r.conjecture for r in rep.rows} == {"C13"}
    assert '"schema": 1' in rep.to_json()
    assert "C13" in rep.table()


def test_csv_export():
    text = export_csv([{"i": 1, "j": 2, "v": Fraction(3, 2)}], ["i", "j", "v"])
    assert text.splitlines() == ["i,j,v", "1,2,3/2"]
