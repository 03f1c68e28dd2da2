"""The nine acceptance criteria over Q = Q[x,y]/(x^2, y^2), f = g = x.

Each test records one PASS/FAIL line through the ``criterion`` fixture.
"""

import json
import random
from pathlib import Path

import pytest

from helpers import square_zero_pairs
from ezdcone.algebra import (
    from_structure_constants,
    hilbert_series_ring,
    is_conca_generator,
    is_exact_pair,
    quotient,
)
from ezdcone.cli import main
from ezdcone.complexes import verify_complex
from ezdcone.cone import (
    EzdContext,
    build_cone,
    build_y2_ses,
    compute_tau,
    connec_check,
    mth_verify,
    omega_kernel_dims,
    tau_chain_defects,
    verify_naturality_and_independence,
)
from ezdcone.errors import HypothesisFailure, PreconditionError, ValidationError
from ezdcone.linalg import Subspace, kernel_basis, rank, subspace_eq
from ezdcone.modules import cyclic, descend, regular, residue_field, restrict_scalars
from ezdcone.poincare import (
    check_final_formula,
    check_n2_formula,
    check_poincare1,
    check_poincare2,
    poincare_pair,
)
from ezdcone.tate import (
    build_tate,
    check_L_stability,
    check_lifting_identity,
    check_module_leibniz,
    extract_lifting,
    minimal_resolution,
    resolution_report,
)

JOBS = Path(__file__).resolve().parent.parent / "jobs"


@pytest.fixture(scope="module")
def three(Q, ctx):
    return {"k": residue_field(Q), "R": cyclic(ctx.qR), "R/(y)": cyclic(quotient(Q, ["x", "y"]))}


def test_criterion_1_exact_pair_and_short_ring(Q, criterion):
    x = Q.elem("x")
    m = Q.maximal_ideal
    xm = Subspace(Q.dim, [Q.mul(x, v) for v in m.basis])
    checks = {
        "exact_pair": bool(is_exact_pair(Q, x, x)),
        "hilbert": hilbert_series_ring(Q).coeffs == (1, 2, 1),
        "xm_eq_m2": subspace_eq(xm, Q.mpower(2)),
        "x_not_in_m2": not Q.in_mpower(x, 2),
        "conca": is_conca_generator(Q, x),
    }
    candidates = [Q.basis_elem(i) for i in range(Q.dim)]
    rng = random.Random(0)
    for _ in range(50):
        # random element of m = span{x, y, xy}
        candidates.append(Q.elem([0] + [rng.randint(-3, 3) for _ in range(Q.dim - 1)]))
    mismatches = [f for f in candidates
                  if bool(is_exact_pair(Q, f, f)) != is_conca_generator(Q, f)]
    checks["ezhil_equivalence"] = not mismatches and len(candidates) == 54
    ok = all(checks.values())
    criterion(ok, json.dumps(checks, sort_keys=True) if not ok else "")
    assert ok, checks


def test_criterion_2_tate_axioms(Q, criterion):
    A = build_tate(Q, "x", "x", 10)
    report = A.verify()
    failures = {k: v for k, v in report.items() if v}
    ok = not failures and [A.complex().dims[n] for n in range(11)] == [1] * 11
    criterion(ok, str(failures) if failures else "")
    assert ok, failures


def test_criterion_3_semifree_and_tau(ctx, three, criterion):
    bad = []
    for name, M in three.items():
        U = ctx.resolution(M)
        if resolution_report(U):
            bad.append((name, "resolution"))
        if not check_module_leibniz(U):
            bad.append((name, "leibniz"))
        if not check_L_stability(U):
            bad.append((name, "L"))
        if check_lifting_identity(extract_lifting(U)):
            bad.append((name, "f tau = dV dV"))
        op = compute_tau(U, ctx.qS)
        defects = tau_chain_defects(op, 7)
        if sorted(defects) != list(range(2, 8)) or not all(defects.values()):
            bad.append((name, "tau chain map"))
    criterion(not bad, str(bad) if bad else "")
    assert not bad


def test_criterion_4_cone_machinery(ctx, three, criterion):
    bad = []
    Sreg = regular(ctx.S)
    for name, M in three.items():
        U = ctx.resolution(M)
        cw = build_cone(compute_tau(U, ctx.qS))
        if not verify_complex(cw.W):
            bad.append((name, "dW^2"))
        T = cw.tensor(Sreg)
        for n in range(7):
            z, g = T.zeta.at(n), T.gamma.at(n)
            if not (g @ z).is_zero() or rank(z) != z.ncols or rank(g) != g.nrows \
                    or rank(z) + rank(g) != z.nrows:
                bad.append((name, "cone sequence", n))
        y2, omega = build_y2_ses(U, cw, 6)
        expect = omega_kernel_dims(U, ctx.S.dim)
        for n in range(7):
            Y = y2.at(n).tensor(Sreg)
            Om = omega.at(n).tensor(Sreg)
            if kernel_basis(Om).dim != expect[n] or rank(Y) != expect[n]:
                bad.append((name, "ker omega", n))
            if not (Om @ Y).is_zero() or rank(Om) != Om.nrows:
                bad.append((name, "y2 sequence", n))
    criterion(not bad, str(bad) if bad else "")
    assert not bad


def test_criterion_5_main_theorem(ctx, three, k, criterion):
    bad = []
    for name in ("k", "R", "R/(y)"):
        rep = mth_verify(ctx, three[name], k)
        if rep.defects or rep.window < 6:
            bad.append((name, "defects", rep.defects))
        for seq in (rep.seq1, rep.seq2):
            for r in seq.exactness():
                if r["status"] == "exact":
                    continue
                if r["status"] == "defect" or r.get("degree", 0) <= 6:
                    bad.append((name, "node", r["node"], r["status"]))
        if not all(rep.psi_phi_ok[n] for n in range(7)):
            bad.append((name, "psi phi"))
    criterion(not bad, str(bad) if bad else "")
    assert not bad


def test_criterion_6_series(Q, criterion):
    c10 = EzdContext(Q, "x", "x", cap=10)
    kQ = residue_field(Q)
    Rm = restrict_scalars(regular(c10.R), c10.qR)
    rep = mth_verify(c10, kQ, kQ)
    PQ, PR = poincare_pair(c10, kQ, kQ, 8, rep)
    oracle_Q = minimal_resolution(Q, kQ, 9).betti()[:9]
    kR = descend(kQ, c10.qR)
    oracle_R = minimal_resolution(c10.R, kR, 9).betti()[:9]
    checks = {
        "P_Q": list(PQ.coeffs) == oracle_Q == list(range(1, 10)),
        "P_R": list(PR.coeffs) == oracle_R == [1] * 9,
        "poincare1": bool(check_poincare1(PQ, PR)),
    }
    v2 = check_poincare2(c10, kQ, kQ, report=rep)
    checks["poincare2"] = bool(v2)
    checks["equality"] = v2.details["equality"] and v2.details["mu_delta_zero"]
    checks["connec"] = connec_check(c10, kQ, kQ, rep)["mu_delta_zero"]
    for name, M in (("final_kk", kQ), ("final_Rk", Rm)):
        v = check_final_formula(c10, M, kQ, 6)
        checks[name] = bool(v) and v.window == 6
    ok = all(checks.values())
    criterion(ok, "" if ok else json.dumps(checks, sort_keys=True))
    assert ok, checks


def test_criterion_7_square_zero_regime(criterion):
    B, pairs = square_zero_pairs(20, seed=0)
    bad = []
    for i, (M, N) in enumerate(pairs):
        v = check_n2_formula(B, M, N, 6)
        if not (v.holds and v.details["tor_nu_zero"] and v.window == 6):
            bad.append(i)
    ok = not bad and len(pairs) == 20
    criterion(ok, f"failing pairs {bad}" if bad else "")
    assert ok


def test_criterion_8_lifting_independence(ctx, k, criterion):
    U0 = ctx.resolution(k, 8, 0)
    U1 = ctx.resolution(k, 8, 1)
    distinct = any(U0.gens[n] != U1.gens[n] for n in range(1, 9))
    nat = verify_naturality_and_independence(ctx, U0, U1, top=6)
    reps = [mth_verify(ctx, k, k, seed=s) for s in (0, 1)]
    checks = {
        "distinct": distinct,
        "naturality": all(all(v.values()) for v in nat.values()),
        "delta_is_tau": all(all(r.delta_is_tau.values()) for r in reps),
        "delta_ranks": [rank(reps[0].delta[n]) for n in range(1, 7)]
        == [rank(reps[1].delta[n]) for n in range(1, 7)],
    }
    ok = all(checks.values())
    criterion(ok, "" if ok else json.dumps(checks, sort_keys=True))
    assert ok, checks


def test_criterion_9_negative_controls(Q, capsys, criterion):
    checks = {}
    try:
        EzdContext(Q, "x*y", "x*y", cap=6)
        checks["nonexact_rejected"] = False
    except PreconditionError:
        checks["nonexact_rejected"] = True

    table = [[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
             [[0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0]],
             [[0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]],
             [[0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]]
    B = from_structure_constants(["1", "x", "y", "x2"], table)
    c = EzdContext(B, "x", "y", cap=6)
    try:
        mth_verify(c, residue_field(B), restrict_scalars(regular(c.R), c.qR))
        checks["gN_hypothesis"] = False
    except HypothesisFailure:
        checks["gN_hypothesis"] = True
    code = main(["verify", "--input", str(JOBS / "hypothesis.json"), "--format", "machine"])
    checks["gN_exit_1"] = code == 1

    table[3][3] = [0, 0, 0, 1]  # x2 * x2 = x2 breaks (x x) x2 = x (x x2)
    try:
        from_structure_constants(["1", "x", "y", "x2"], table)
        checks["corrupt_table"] = False
    except ValidationError as e:
        checks["corrupt_table"] = "triple (1, 1, 3)" in str(e)
    code = main(["check-ezd", "--input", str(JOBS / "corrupt.json")])
    out = capsys.readouterr().out
    checks["corrupt_cli"] = code == 3 and "triple (1, 2, 3)" in out
    ok = all(checks.values())
    criterion(ok, "" if ok else json.dumps(checks, sort_keys=True))
    assert ok, checks
