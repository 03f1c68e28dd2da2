import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from helpers import square_zero_module, square_zero_ring
from ezdcone.algebra import from_monomial_quotient, quotient
from ezdcone.cone import EzdContext, mth_verify
from ezdcone.errors import PreconditionError
from ezdcone.modules import (
    cyclic,
    free,
    kills_m,
    regular,
    residue_field,
    restrict_scalars,
    submodule_mM,
    tensor_over,
)
from ezdcone.poincare import (
    check_final_formula,
    check_koszul_formula,
    check_n2_formula,
    check_poincare1,
    check_poincare2,
    excess_series,
    poincare,
    poincare_pair,
    rank_identity,
)
from ezdcone.series import (
    TruncatedSeries,
    div_unit,
    growth_diagnostics,
    leq,
    mul,
    rational_form,
)

t = sympy.symbols("t")


def sympy_series(expr, n):
    """Oracle: Taylor coefficients of a rational function."""
    s = sympy.series(expr, t, 0, n + 1).removeO()
    return [int(s.coeff(t, i)) for i in range(n + 1)]


def test_geometric():
    assert div_unit(TruncatedSeries.one(6), TruncatedSeries([1, -1], 6)).coeffs == (1,) * 7


def test_mul_difference_of_squares():
    assert mul(TruncatedSeries([1, 1], 4), TruncatedSeries([1, -1], 4)).coeffs == (1, 0, -1, 0, 0)


def test_leq_reflexive_and_strict():
    p = TruncatedSeries([1, 2, 3])
    assert leq(p, p)
    assert not leq(TruncatedSeries([1, 3, 3]), p)


def test_div_unit_rejects_nonunit():
    with pytest.raises(PreconditionError):
        div_unit(TruncatedSeries.one(3), TruncatedSeries([2, 1], 3))


def test_div_unit_against_sympy():
    p = div_unit(TruncatedSeries([1, -1, 1], 8), TruncatedSeries([1, -3, 2], 8))
    assert list(p.coeffs) == sympy_series((1 - t + t ** 2) / (1 - 3 * t + 2 * t ** 2), 8)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=9),
       st.lists(st.integers(-3, 3), min_size=0, max_size=4),
       st.sampled_from([1, -1]))
def test_mul_div_roundtrip(p, u_tail, u0):
    n = 8
    P = TruncatedSeries(p, n)
    u = TruncatedSeries([u0] + u_tail, n)
    assert div_unit(mul(P, u), u) == P


def test_rational_form_square():
    p = TruncatedSeries(range(1, 10))
    rf = rational_form(p)
    assert str(rf) == "1/(1-t)^2"


def test_growth_diagnostics():
    assert growth_diagnostics(TruncatedSeries([1] * 9)).cx_estimate == 1
    assert growth_diagnostics(TruncatedSeries([1] * 9)).curv_estimate == pytest.approx(1)
    assert growth_diagnostics(TruncatedSeries(range(1, 10))).cx_estimate == 2
    g = growth_diagnostics(TruncatedSeries([2 ** i for i in range(13)]))
    assert g.curv_estimate == pytest.approx(2)
    assert g.label == "diagnostic"
    with pytest.raises(PreconditionError):
        growth_diagnostics(TruncatedSeries([1, 1, 1]))


def test_poincare_oracles(ctx, Q, k):
    kR = residue_field(ctx.R)
    assert poincare(ctx.R, kR, kR, 8).coeffs == (1,) * 9
    assert list(poincare(Q, k, k, 8).coeffs) == sympy_series(1 / (1 - t) ** 2, 8)
    P = poincare(Q, k, free(Q, 2), 5)
    assert P.coeffs == (2, 0, 0, 0, 0, 0)


def test_poincare_pair_window(ctx, k):
    PQ, PR = poincare_pair(ctx, k, k)
    assert PQ.n == ctx.cap - 2
    assert PQ.coeffs == tuple(range(1, 8)) and PR.coeffs == (1,) * 7


@pytest.mark.parametrize("M", ["k", "R"])
def test_poincare_inequalities(ctx, k, Rmod, M):
    M = {"k": k, "R": Rmod}[M]
    PQ, PR = poincare_pair(ctx, M, k)
    assert check_poincare1(PQ, PR)
    v = check_poincare2(ctx, M, k)
    assert v and v.details["equality"] and v.details["mu_delta_zero"]


def test_poincare1_bound_against_sympy(ctx, k):
    PQ, PR = poincare_pair(ctx, k, k)
    v = check_poincare1(PQ, PR)
    assert v.details["rhs"] == sympy_series((1 - t + t ** 2) / (1 - t) ** 3, PQ.n)


def test_poincare2_strict_when_f_in_m2():
    B = from_monomial_quotient(["x"], ["x^4"])
    c = EzdContext(B, "x^2", "x^2", cap=7)
    kk = residue_field(B)
    rep = mth_verify(c, kk, kk)
    v = check_poincare2(c, kk, kk, report=rep)
    assert v.holds and not v.details["equality"] and not v.details["mu_delta_zero"]
    excess, ranks = rank_identity(rep)
    assert excess == ranks


def test_excess_series_is_zero_for_k_k(ctx, k):
    PQ, PR = poincare_pair(ctx, k, k)
    assert set(excess_series(PQ, PR).coeffs) == {0}


def test_n2_examples(ctx):
    R = ctx.R
    kR = residue_field(R)
    assert check_n2_formula(R, kR, kR, 8).details["P"] == [1] * 9
    assert check_n2_formula(R, kR, regular(R), 8).details["P"] == [1] + [0] * 8


def test_n2_not_applicable(Q, k):
    assert not check_n2_formula(Q, k, k, 4).applicable


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10_000))
def test_n2_random_square_zero(seed):
    rng = random.Random(seed)
    B = square_zero_ring()
    M, N = square_zero_module(B, rng), square_zero_module(B, rng)
    v = check_n2_formula(B, M, N, 4)
    if kills_m(tensor_over(M, N)):
        assert v.holds and v.details["tor_nu_zero"]
    else:
        assert not v.applicable


def test_koszul(ctx):
    R = ctx.R
    assert check_koszul_formula(R, residue_field(R), 8).details["P"] == [1] * 9
    assert check_koszul_formula(R, free(R, 3), 5).details["P"] == [3, 0, 0, 0, 0, 0]
    B = square_zero_ring()
    m, _ = submodule_mM(regular(B))
    v = check_koszul_formula(B, m, 6)
    assert v.details["P"] == sympy_series(2 / (1 - 2 * t), 6)


def test_koszul_outside_certificate(Q, k):
    v = check_koszul_formula(Q, k, 4)
    assert not v.applicable and "not decidable" in v.reason


def test_final_formula(ctx, k, Rmod):
    v = check_final_formula(ctx, k, k)
    assert v and v.details["P_Q"] == sympy_series(1 / (1 - t) ** 2, v.window)
    assert v.window >= 6
    w = check_final_formula(ctx, Rmod, k)
    assert w and w.details["P_Q"] == [1] * (w.window + 1)
    assert not check_final_formula(ctx, Rmod, Rmod).applicable


def test_final_formula_requires_short_ring():
    B = from_monomial_quotient(["x"], ["x^4"])
    c = EzdContext(B, "x^2", "x^2", cap=6)
    assert check_final_formula(c, residue_field(B), residue_field(B)).reason == "m^3 != 0"


def test_cyclic_quotient_P_R(ctx, Q):
    Ry = cyclic(quotient(Q, ["x", "y"]))
    PQ, PR = poincare_pair(ctx, Ry, restrict_scalars(regular(ctx.R), ctx.qR))
    assert PR.coeffs == (1,) + (0,) * PR.n
