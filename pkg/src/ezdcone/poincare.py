"""Poincare series of Tor and the coefficientwise comparisons between Q and R.

Series derived from a homology window stop two degrees below the resolution
cap, so every coefficient reported here is backed by valid homology.
"""

from dataclasses import dataclass, field

from .algebra import hilbert_series_ring
from .complexes import homology, tensor_with_module
from .cone import EzdContext, _tensor_map, mth_verify
from .errors import TheoremViolation
from .linalg import rank
from .modules import (
    annihilates,
    hilbert_series_module,
    kills_m,
    submodule_mM,
    tensor_over,
)
from .series import TruncatedSeries, div_unit, leq, mul
from .tate import minimal_resolution


@dataclass
class Verdict:
    """Outcome of a check; ``applicable`` is False when a hypothesis fails."""

    name: str
    applicable: bool
    holds: bool = False
    window: int = -1
    reason: str = ""
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.applicable and self.holds

    def as_dict(self):
        return {"name": self.name, "applicable": self.applicable, "holds": self.holds,
                "window": self.window, "reason": self.reason, "details": self.details}


def _na(name, reason):
    return Verdict(name, False, reason=reason)


def poincare(A, M, N, n):
    """P^A_{M,N} through degree n from a minimal resolution of M over A."""
    F = minimal_resolution(A, M, n + 1).complex
    C = tensor_with_module(F, N)
    return TruncatedSeries([homology(C, i).dim for i in range(n + 1)])


def poincare_pair(ctx, M, N, n=None, report=None):
    """(P^Q, P^R) through degree n from the semi-free resolution and its lifting."""
    n = ctx.cap - 2 if n is None else n
    report = report or mth_verify(ctx, M, N)
    if n > report.top:
        n = report.top
    return TruncatedSeries(report.betti_Q[: n + 1]), TruncatedSeries(report.betti_R[: n + 1])


def geometric(n):
    return div_unit(TruncatedSeries.one(n), TruncatedSeries([1, -1], n))


def poincare1_bound(PQ):
    """(1 - t + t^2) P^Q / (1 - t)."""
    n = PQ.n
    return div_unit(mul(TruncatedSeries([1, -1, 1], n), PQ), TruncatedSeries([1, -1], n))


def check_poincare1(PQ, PR):
    """P^R <= (1 - t + t^2) P^Q / (1 - t) coefficientwise."""
    rhs = poincare1_bound(PQ)
    ok = leq(PR, rhs)
    return Verdict("poincare1", True, ok, min(PQ.n, PR.n),
                   details={"lhs": list(PR.coeffs), "rhs": list(rhs.coeffs)})


def check_poincare2(ctx, M, N, n=None, report=None):
    """P^Q <= P^R / (1 - t); equality in the window iff all mu, delta vanish.

    The equality flag through degree K is compared with the vanishing of mu_j
    and delta_j for j <= K + 1.
    """
    report = report or mth_verify(ctx, M, N)
    n = report.top - 1 if n is None else min(n, report.top - 1)
    PQ, PR = poincare_pair(ctx, M, N, n, report)
    rhs = div_unit(PR, TruncatedSeries([1, -1], n))
    ok = leq(PQ, rhs)
    equal = PQ == rhs
    maps_zero = report.mu_delta_zero(n + 1)
    if equal != maps_zero:
        raise TheoremViolation(
            f"series equality ({equal}) disagrees with vanishing of mu and delta ({maps_zero})")
    if not ok:
        raise TheoremViolation("P^Q exceeds P^R / (1 - t)")
    return Verdict("poincare2", True, ok, n,
                   details={"equality": equal, "mu_delta_zero": maps_zero,
                            "lhs": list(PQ.coeffs), "rhs": list(rhs.coeffs)})


def excess_series(PQ, PR):
    """(1 + t) P^R - (1 - t^2) P^Q; its coefficients are ranks of mu and delta."""
    n = min(PQ.n, PR.n)
    return mul(TruncatedSeries([1, 1], n), PR) - mul(TruncatedSeries([1, 0, -1], n), PQ)


def hilbert_ratio(HM, HN, HA, n):
    """H_M(-t) H_N(-t) / H_A(-t) through degree n."""
    num = mul(TruncatedSeries(HM.coeffs, n).at_neg_t(), TruncatedSeries(HN.coeffs, n).at_neg_t())
    return div_unit(num, TruncatedSeries(HA.coeffs, n).at_neg_t())


def tor_nu_vanishes(F, N, n):
    """Tor_i(M, nu_N) = 0 for i <= n, for the inclusion nu_N: mN -> N."""
    mN, nu = submodule_mM(N)
    T = _tensor_map(F, mN, N, nu.matrix)
    return all(T.homology_map(i).is_zero() for i in range(n + 1))


def _square_zero(A):
    return A.mpower(2).dim == 0


def check_n2_formula(A, M, N, n):
    """Over A with m^2 = 0 and m(M (x) N) = 0: P^A = H_M(-t) H_N(-t) / H_A(-t)."""
    if not _square_zero(A):
        return _na("n2_formula", "m^2 != 0")
    if not kills_m(tensor_over(M, N)):
        return _na("n2_formula", "m (M (x) N) != 0")
    F = minimal_resolution(A, M, n + 1).complex
    C = tensor_with_module(F, N)
    P = TruncatedSeries([homology(C, i).dim for i in range(n + 1)])
    rhs = hilbert_ratio(hilbert_series_module(M), hilbert_series_module(N),
                        hilbert_series_ring(A), n)
    equal = P == rhs
    nu_zero = tor_nu_vanishes(F, N, n)
    if not (equal and nu_zero):
        raise TheoremViolation(f"square-zero formula fails: equal={equal}, Tor(M, nu)=0 {nu_zero}")
    return Verdict("n2_formula", True, True, n,
                   details={"P": list(P.coeffs), "formula": list(rhs.coeffs),
                            "tor_nu_zero": nu_zero})


def check_koszul_formula(A, M, n):
    """P^A_M = H_M(-t) / H_A(-t), decided only under the m^2 = 0 certificate."""
    if not _square_zero(A):
        return _na("koszul_formula", "not decidable here: no m^2 = 0 certificate")
    from .modules import residue_field

    P = poincare(A, M, residue_field(A), n)
    rhs = div_unit(TruncatedSeries(hilbert_series_module(M).coeffs, n).at_neg_t(),
                   TruncatedSeries(hilbert_series_ring(A).coeffs, n).at_neg_t())
    if P != rhs:
        raise TheoremViolation("Koszul formula fails over a square-zero ring")
    return Verdict("koszul_formula", True, True, n,
                   details={"P": list(P.coeffs), "formula": list(rhs.coeffs)})


def check_final_formula(ctx, M, N, n=None, report=None):
    """For short Q, m(M (x) N) = 0 and gN = 0: P^Q = H_M(-t) H_N(-t) / H_Q(-t)."""
    Q = ctx.Q
    M, N = ctx.as_Q_module(M), ctx.as_Q_module(N)
    if Q.mpower(3).dim:
        return _na("final_formula", "m^3 != 0")
    if not kills_m(tensor_over(M, N)):
        return _na("final_formula", "m (M (x) N) != 0")
    if not annihilates(ctx.g, N):
        return _na("final_formula", "g N != 0")
    if not annihilates(ctx.f, M):
        return _na("final_formula", "f M != 0")
    HQ, HR = hilbert_series_ring(Q), hilbert_series_ring(ctx.R)
    d = max(HQ.n, HR.n + 1)
    if TruncatedSeries(HQ.coeffs, d) != mul(TruncatedSeries([1, 1], d), TruncatedSeries(HR.coeffs, d)):
        raise TheoremViolation("H_Q != (1 + t) H_R")
    report = report or mth_verify(ctx, M, N)
    n = report.top - 1 if n is None else min(n, report.top - 1)
    PQ, _ = poincare_pair(ctx, M, N, n, report)
    rhs = hilbert_ratio(hilbert_series_module(M), hilbert_series_module(N), HQ, n)
    if PQ != rhs:
        raise TheoremViolation(f"P^Q = {list(PQ.coeffs)} differs from {list(rhs.coeffs)}")
    return Verdict("final_formula", True, True, n,
                   details={"P_Q": list(PQ.coeffs), "formula": list(rhs.coeffs)})


def rank_identity(report, n=None):
    """Coefficients of the excess series against rk mu_j + rk mu_{j+1} + rk delta_j + rk delta_{j+1}."""
    n = report.top - 1 if n is None else n
    PQ = TruncatedSeries(report.betti_Q[: n + 2])
    PR = TruncatedSeries(report.betti_R[: n + 2])
    c = excess_series(PQ, PR)

    def rk(maps, j):
        m = maps.get(j)
        return rank(m) if m is not None else 0

    ranks = [rk(report.mu, j) + rk(report.mu, j + 1) + rk(report.delta, j) + rk(report.delta, j + 1)
             for j in range(n + 1)]
    return list(c.coeffs[: n + 1]), ranks


__all__ = [
    "EzdContext",
    "Verdict",
    "poincare",
    "poincare_pair",
    "geometric",
    "check_poincare1",
    "check_poincare2",
    "excess_series",
    "hilbert_ratio",
    "check_n2_formula",
    "check_koszul_formula",
    "check_final_formula",
    "rank_identity",
]
