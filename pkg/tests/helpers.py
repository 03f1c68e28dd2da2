"""Random module generators shared by the property and acceptance tests."""

from ezdcone.algebra import from_monomial_quotient
from ezdcone.modules import from_action_dict, kills_m, tensor_over


def square_zero_ring():
    return from_monomial_quotient(["u", "v"], ["u^2", "u*v", "v^2"])


def square_zero_module(B, rng, max_top=2, max_socle=2):
    """k^a + k^b with u, v mapping the top part into the bottom part."""
    a = rng.randint(1, max_top)
    b = rng.randint(0, max_socle)
    dim = a + b

    def action():
        rows = [[0] * dim for _ in range(dim)]
        if rng.random() < 0.3:
            return rows
        for i in range(a, dim):
            for j in range(a):
                rows[i][j] = rng.randint(-2, 2)
        return rows

    return from_action_dict(B, dim, {"u": action(), "v": action()})


def square_zero_pairs(count, seed=0):
    """Deterministic (M, N) pairs over the square-zero ring with m(M (x) N) = 0."""
    import random

    B = square_zero_ring()
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        M = square_zero_module(B, rng)
        N = square_zero_module(B, rng)
        if kills_m(tensor_over(M, N)):
            out.append((M, N))
    return B, out
