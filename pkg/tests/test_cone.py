import pytest

from ezdcone.algebra import from_monomial_quotient, from_structure_constants, quotient
from ezdcone.complexes import homology, verify_complex
from ezdcone.cone import (
    EzdContext,
    build_cone,
    build_omega,
    build_y2_ses,
    compute_tau,
    cone_block_probe,
    connec_check,
    mth_verify,
    omega_kernel_dims,
    s_ideal,
    tau_chain_defects,
    tor,
    vanish_verify,
    verify_naturality_and_independence,
    vh_verify,
)
from ezdcone.errors import HypothesisFailure, PreconditionError
from ezdcone.linalg import kernel_basis, rank, subspace_eq
from ezdcone.modules import (
    cyclic,
    direct_sum,
    regular,
    residue_field,
    restrict_scalars,
    tensor_over,
)
from ezdcone.poincare import rank_identity
from ezdcone.tate import minimal_resolution


@pytest.fixture(scope="module")
def Ry(Q):
    return cyclic(quotient(Q, ["x", "y"]))


@pytest.fixture(scope="module")
def Sq(ctx):
    return restrict_scalars(regular(ctx.S), ctx.qS)


def cone_of(ctx, M):
    U = ctx.resolution(M)
    op = compute_tau(U, ctx.qS)
    return U, op, build_cone(op)


def test_s_ideal_is_f_g(ctx):
    assert subspace_eq(s_ideal(ctx.Q, ctx.f).subspace, ctx.qS.ideal.subspace)
    assert ctx.S.dim == 2


def test_tau_zero_for_R(ctx, Rmod):
    _, op, _ = cone_of(ctx, Rmod)
    assert all(t.is_zero() for t in op.tau.values())


@pytest.mark.parametrize("name", ["k", "R", "Ry"])
def test_tau_chain_map(ctx, k, Rmod, Ry, name):
    M = {"k": k, "R": Rmod, "Ry": Ry}[name]
    _, op, _ = cone_of(ctx, M)
    defects = tau_chain_defects(op, 7)
    assert defects and all(defects.values())


def test_tau_for_k_vanishes_but_not_when_f_in_m2(ctx, k):
    # over the acceptance ring the lifting of y, y, y, ... squares to y^2 = 0
    _, op, _ = cone_of(ctx, k)
    assert all(op.tau[n].is_zero() for n in range(7))
    B = from_monomial_quotient(["x"], ["x^4"])
    c = EzdContext(B, "x^2", "x^2", cap=6)
    op = compute_tau(c.resolution(residue_field(B)), c.qS)
    assert any(not op.tau[n].is_zero() for n in range(1, 5))


def test_cone_squares_to_zero_and_blocks(ctx, k):
    _, op, cw = cone_of(ctx, k)
    assert verify_complex(cw.W)
    VS = op.VS
    for n in range(2, 8):
        b = cone_block_probe(cw, n)
        assert b["top_left"] == -VS.d(n - 1)
        assert b["top_right"] == -op.tau[n - 1]
        assert b["bottom_left"].is_zero()
        assert b["bottom_right"] == VS.d(n)


def test_cone_of_R_is_diagonal(ctx, Rmod):
    _, _, cw = cone_of(ctx, Rmod)
    for n in range(1, 8):
        assert cone_block_probe(cw, n)["top_right"].is_zero()


def test_omega_degree_zero_is_identity(ctx, k):
    U, _, cw = cone_of(ctx, k)
    omega = build_omega(U, cw)
    w0 = omega.at(0)
    assert w0.nrows == w0.ncols == U.rank_V(0)
    assert w0.tensor(regular(ctx.S)) == w0.tensor(regular(ctx.S)).identity(w0.nrows * ctx.S.dim)


@pytest.mark.parametrize("name", ["k", "Ry"])
def test_omega_kernel_dimension_count(ctx, k, Ry, name):
    M = {"k": k, "Ry": Ry}[name]
    U, _, cw = cone_of(ctx, M)
    omega = build_omega(U, cw)
    expect = omega_kernel_dims(U, ctx.S.dim)
    for n in range(7):
        Om = omega.at(n).tensor(regular(ctx.S))
        assert kernel_basis(Om).dim == expect[n]
    assert expect[0] == expect[1] == 0


def test_y2_sequence_exact(ctx, k):
    U, _, cw = cone_of(ctx, k)
    y2, omega = build_y2_ses(U, cw, 6)
    S = regular(ctx.S)
    for n in range(7):
        Y = y2.at(n).tensor(S)
        Om = omega.at(n).tensor(S)
        assert rank(Y) == Y.ncols
        assert (Om @ Y).is_zero()
        assert rank(Y) + rank(Om) == Om.ncols


def test_tor0_is_tensor_product(ctx, k, Rmod, Ry):
    for M in (k, Rmod, Ry):
        for N in (k, Rmod):
            assert tor("Q", M, N, 0, ctx)[0].dim == tensor_over(M, N).dim


def test_betti_k_k_against_minimal_resolution(ctx, Q, k):
    mine = [h.dim for h in tor("Q", k, k, 6, ctx)]
    F = minimal_resolution(Q, k, 7)
    assert mine == F.betti()[:7] == list(range(1, 8))


def test_betti_R_k(ctx, Rmod, k):
    assert [h.dim for h in tor("Q", Rmod, k, 6, ctx)] == [1] * 7


@pytest.mark.parametrize("pair", [("k", "k"), ("R", "k"), ("Ry", "k"), ("k", "R")])
def test_mth(ctx, k, Rmod, Ry, pair):
    mods = {"k": k, "R": Rmod, "Ry": Ry}
    rep = mth_verify(ctx, mods[pair[0]], mods[pair[1]])
    assert rep.ok
    assert rep.defects == []
    assert all(rep.psi_phi_ok.values()) and all(rep.delta_is_tau.values())
    assert rep.window == ctx.cap - 2


def test_mth_R_k_has_zero_delta(ctx, Rmod, k):
    rep = mth_verify(ctx, Rmod, k)
    assert all(d.is_zero() for d in rep.delta.values())
    assert rep.betti_R[:7] == [1, 0, 0, 0, 0, 0, 0]


def test_mth_hypothesis_gate(ctx, k):
    with pytest.raises(PreconditionError):
        mth_verify(ctx, regular(ctx.Q), k)


def test_gN_nonzero_is_hypothesis_failure():
    table = [[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
             [[0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0]],
             [[0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]],
             [[0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]]
    B = from_structure_constants(["1", "x", "y", "x2"], table)
    c = EzdContext(B, "x", "y", cap=6)
    k = residue_field(B)
    R = restrict_scalars(regular(c.R), c.qR)
    with pytest.raises(HypothesisFailure):
        mth_verify(c, k, R)
    assert mth_verify(c, k, k).ok


def test_nonexact_pair_rejected(Q):
    with pytest.raises(PreconditionError):
        EzdContext(Q, "x*y", "x*y", cap=6)


def test_naturality_distinct_seeds(ctx, k):
    U0 = ctx.resolution(k, 8, 0)
    U1 = ctx.resolution(k, 8, 1)
    assert any(U0.gens[n] != U1.gens[n] for n in range(1, 9))
    out = verify_naturality_and_independence(ctx, U0, U1)
    assert set(out) == {"k", "S"}
    assert all(all(v.values()) for v in out.values())


def test_naturality_same_resolution(ctx, Ry):
    U = ctx.resolution(Ry)
    out = verify_naturality_and_independence(ctx, U, U)
    assert all(all(v.values()) for v in out.values())


def test_delta_independent_of_seed_in_dimension(ctx, k):
    a = mth_verify(ctx, k, k, seed=0)
    b = mth_verify(ctx, k, k, seed=3)
    assert [rank(a.delta[n]) for n in a.delta] == [rank(b.delta[n]) for n in b.delta]


def test_connec(ctx, k):
    assert connec_check(ctx, k, k)["mu_delta_zero"]
    assert connec_check(ctx, k, direct_sum(k, k))["mu_delta_zero"]
    out = connec_check(ctx, k, restrict_scalars(regular(ctx.S), ctx.qS))
    assert out == {"applicable": False, "reason": "m N != 0"}


def test_vanish_with_k(ctx, k):
    out = vanish_verify(ctx, k, k)
    assert out["applicable"] and out["series_equal"] and out["tor_Q_nu_zero"]
    assert out["P_Q"] == list(range(1, out["window"] + 2))


def test_vanish_with_S(ctx, k, Rmod, Sq):
    # m^2 S = 0, and k (x) nu_S vanishes on Tor^R
    out = vanish_verify(ctx, k, Sq)
    assert out["applicable"] and out["series_equal"]
    assert out["P_Q"] == [1] * 7 and out["P_R"] == [1] + [0] * 6
    assert not vanish_verify(ctx, Rmod, Sq)["applicable"]


def test_vh_m1(ctx, k, Rmod):
    # Tor^R_i(k, R) = 0 for i >= 1
    rep = mth_verify(ctx, k, Rmod)
    out = vh_verify(ctx, k, Rmod, 1, rep.top, rep)
    assert out["applicable"] and out["m1_isomorphisms"] and out["four_term_exact"]
    assert all(out["isomorphisms"].values())


def test_vh_hypothesis_fails_for_k_k(ctx, k):
    assert not vh_verify(ctx, k, k, 1, 3)["applicable"]


def test_vh_window_guard(ctx, k, Rmod):
    with pytest.raises(PreconditionError):
        vh_verify(ctx, k, Rmod, 1, ctx.cap)


def test_f_in_m2_control_has_nonzero_delta():
    B = from_monomial_quotient(["x"], ["x^4"])
    c = EzdContext(B, "x^2", "x^2", cap=7)
    k = residue_field(B)
    rep = mth_verify(c, k, k)
    assert any(not d.is_zero() for d in rep.delta.values())
    assert not rep.mu_delta_zero()
    assert connec_check(c, k, k)["applicable"] is False
    excess, ranks = rank_identity(rep)
    assert excess == ranks


def test_lengths_bounds(ctx, k):
    rep = mth_verify(ctx, k, k)
    assert all(rep.lengths_ok.values())
    T = rep.extras["tensored"]
    assert rep.h_W == [homology(T.W, n).dim for n in range(rep.top + 1)]
