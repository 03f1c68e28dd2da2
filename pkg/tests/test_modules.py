import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ezdcone.algebra import from_monomial_quotient, hilbert_series_ring, quotient
from ezdcone.errors import PreconditionError, ValidationError
from ezdcone.linalg import Mat, rank
from ezdcone.modules import (
    FDModule,
    annihilates,
    cyclic,
    descend,
    direct_sum,
    free,
    from_action_dict,
    hilbert_series_module,
    length,
    minimal_generators,
    projection_pi,
    regular,
    residue_field,
    restrict_scalars,
    submodule,
    submodule_mM,
    tensor_over,
)


@pytest.fixture(scope="module")
def Q():
    return from_monomial_quotient(["x", "y"], ["x^2", "y^2"])


@pytest.fixture(scope="module")
def qR(Q):
    return quotient(Q, ["x"])


def test_restrict_residue_field(Q, qR):
    kR = residue_field(qR.quotient)
    kQ = restrict_scalars(kR, qR)
    assert kQ.action == residue_field(Q).action


def test_restrict_regular(Q, qR):
    M = restrict_scalars(regular(qR.quotient), qR)
    assert M.dim == 2
    assert M.elem_action("x").is_zero()
    assert annihilates("x", M)


def test_tensor_examples(Q, qR):
    k = residue_field(Q)
    M = cyclic(qR)
    assert tensor_over(M, regular(Q)).dim == M.dim
    assert tensor_over(k, k).dim == 1
    assert tensor_over(M, M).dim == 2


def test_hilbert_series_modules(Q, qR):
    assert list(hilbert_series_module(residue_field(Q)).coeffs) == [1]
    assert hilbert_series_module(regular(Q)).coeffs == hilbert_series_ring(Q).coeffs
    assert list(hilbert_series_module(cyclic(qR)).coeffs) == [1, 1]


def test_bad_action_rejected(Q):
    acts = [Mat.identity(1), Mat.identity(1), Mat.zeros(1, 1), Mat.zeros(1, 1)]
    with pytest.raises(ValidationError):
        FDModule(Q, acts)


def test_descend_requires_annihilation(Q, qR):
    with pytest.raises(PreconditionError):
        descend(regular(Q), qR)
    assert descend(cyclic(qR), qR).dim == 2


def test_from_action_dict_variables(Q):
    M = from_action_dict(Q, 2, {"x": [], "y": [[0, 0], [1, 0]]})
    assert M.dim == 2 and M.elem_action("x*y").is_zero()
    with pytest.raises(ValidationError):
        from_action_dict(Q, 2, {"y": [[0, 0], [1, 0]]})


def random_module(Q, rng, n_sum=2):
    """Direct sums of cyclic modules Q/I for small monomial-generated I."""
    choices = [["x", "y"], ["x"], ["y"], ["x*y"], ["x+y"], ["x-y", "x*y"]]
    parts = [cyclic(quotient(Q, rng.choice(choices))) for _ in range(rng.randint(1, n_sum))]
    if rng.random() < 0.3:
        parts.append(regular(Q))
    return direct_sum(*parts)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_length_is_hilbert_total(seed):
    Q = from_monomial_quotient(["x", "y"], ["x^2", "y^2"])
    M = random_module(Q, random.Random(seed))
    assert length(M) == hilbert_series_module(M).total()


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_sesm_exact(seed):
    Q = from_monomial_quotient(["x", "y"], ["x^2", "y^2"])
    N = random_module(Q, random.Random(seed))
    mN, nu = submodule_mM(N)
    pi = projection_pi(N)
    assert (pi.matrix @ nu.matrix).is_zero()
    assert rank(nu.matrix) == mN.dim
    assert rank(pi.matrix) == pi.target.dim
    assert mN.dim + pi.target.dim == N.dim


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_nakayama(seed):
    Q = from_monomial_quotient(["x", "y"], ["x^2", "y^2"])
    M = random_module(Q, random.Random(seed))
    assert tensor_over(M, residue_field(Q)).dim == minimal_generators(M).dim


def test_submodule_closure(Q):
    M = free(Q, 1)
    sub, inc = submodule(M, [(Fraction(0), Fraction(1), Fraction(0), Fraction(0))])
    assert sub.dim == 2  # x and xy
    assert inc.shape == (4, 2)
