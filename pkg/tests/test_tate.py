import pytest

from ezdcone.algebra import from_monomial_quotient, principal_ideal, quotient
from ezdcone.errors import PreconditionError
from ezdcone.modules import cyclic, descend, regular, residue_field, submodule_mM
from ezdcone.tate import (
    TateAlgebra,
    build_semifree_resolution,
    build_tate,
    check_L_stability,
    check_lifting_identity,
    check_module_leibniz,
    extract_lifting,
    lifting_resolves,
    minimal_resolution,
    resolution_report,
)


@pytest.fixture(scope="module")
def A10(Q):
    return build_tate(Q, "x", "x", 10)


@pytest.fixture(scope="module")
def modules(Q, ctx):
    return {"k": residue_field(Q), "R": cyclic(ctx.qR),
            "Ry": cyclic(quotient(Q, ["x", "y"]))}


def test_tate_axioms_cap10(A10):
    assert A10.verify() == {"d_squared": [], "leibniz": [], "graded_commutative": [],
                            "associative": [], "divided_powers": [], "resolution": []}


def test_tate_ranks_all_one(A10):
    C = A10.complex()
    assert [C.dims[n] for n in range(11)] == [1] * 11


def test_divided_power_product():
    assert TateAlgebra.ycoef(2, 2) == 2
    assert TateAlgebra.ycoef(1, 1) == 0
    assert TateAlgebra.ycoef(2, 3) == 2
    assert TateAlgebra.ycoef(4, 2) == 3


def test_d_squared_on_y3_vanishes(Q, A10):
    assert not any(Q.mul(A10.dcoef(2), A10.dcoef(3)))


def test_build_tate_rejects_nonexact(Q):
    with pytest.raises(PreconditionError):
        build_tate(Q, "x*y", "x*y", 6)


def test_tate_axiom_checker_catches_bad_dcoef(Q):
    A = TateAlgebra(Q, "x", "y", 6)  # d(y) d(t) = xy, not zero
    assert A.check_d_squared()


def test_semifree_requires_headroom(Q, ctx):
    with pytest.raises(PreconditionError):
        build_semifree_resolution(Q, ctx.A, residue_field(Q), ctx.A.cap - 1)


def test_semifree_rejects_non_R_module(Q, ctx):
    with pytest.raises(PreconditionError):
        build_semifree_resolution(Q, ctx.A, regular(Q), 4)


@pytest.mark.parametrize("name", ["k", "R", "Ry"])
@pytest.mark.parametrize("seed", [0, 3])
def test_resolution_checks(ctx, modules, name, seed):
    U = ctx.resolution(modules[name], 8, seed)
    assert resolution_report(U) == []
    assert check_module_leibniz(U)
    assert check_L_stability(U)
    L = extract_lifting(U)
    assert check_lifting_identity(L) == []
    _, bad = lifting_resolves(L, ctx.qR)
    assert bad == []


def test_underlying_dimension(ctx, modules):
    U = ctx.resolution(modules["k"])
    for n in range(U.cap + 1):
        C = U.complex()
        assert C.dims[n] == sum(U.rank_V(n - i) for i in range(n + 1))
        assert C.dims[n] * ctx.Q.dim == U.d(n).realize().ncols


def test_M_equal_R_is_the_tate_algebra(ctx, modules):
    U = ctx.resolution(modules["R"])
    assert [U.rank_V(n) for n in range(U.cap + 1)] == [1] + [0] * U.cap
    assert all(U.d(n) == ctx.A.complex().d(n) for n in range(1, U.cap + 1))


def test_V_ranks_of_k_are_R_betti_numbers(ctx, modules):
    U = ctx.resolution(modules["k"])
    kR = descend(modules["k"], ctx.qR)
    oracle = minimal_resolution(ctx.R, kR, 8).betti()
    assert [U.rank_V(n) for n in range(9)] == oracle == [1] * 9


def test_dV_squared_lies_in_f(ctx, modules):
    fQ = principal_ideal(ctx.Q, ctx.f).subspace
    for name in modules:
        L = extract_lifting(ctx.resolution(modules[name]))
        for n in range(1, L.cap):
            assert (L.dV[n] @ L.dV[n + 1]).entries_in(fQ)


def test_L_stability_vacuous_in_low_degree(ctx, modules):
    U = build_semifree_resolution(ctx.Q, ctx.A, modules["k"], 1)
    assert check_L_stability(U)


def test_seeds_change_representatives(ctx, modules):
    U0 = ctx.resolution(modules["k"], 8, 0)
    U3 = ctx.resolution(modules["k"], 8, 3)
    assert any(U0.gens[n] != U3.gens[n] for n in range(1, 9))


def test_minimal_resolution_of_k_over_Q(Q):
    assert minimal_resolution(Q, residue_field(Q), 8).betti() == list(range(1, 10))


def test_minimal_resolution_over_short_square_zero_ring():
    B = from_monomial_quotient(["u", "v"], ["u^2", "u*v", "v^2"])
    assert minimal_resolution(B, residue_field(B), 5).betti() == [2 ** n for n in range(6)]
    m, _ = submodule_mM(regular(B))
    assert minimal_resolution(B, m, 3).betti() == [2, 4, 8, 16]
