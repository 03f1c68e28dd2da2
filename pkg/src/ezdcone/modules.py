"""Finite-dimensional modules over a :class:`LocalAlgebra`.

A module is a Q-vector space with one action matrix per algebra basis
element. Lengths are plain dimensions because the residue field is Q.
"""

from .errors import PreconditionError, ValidationError
from .linalg import (
    Mat,
    Subspace,
    image_basis,
    inverse,
    quotient_basis,
)
from .series import TruncatedSeries


class FDModule:
    """Module given by action matrices ``action[i] = rho(b_i)``."""

    def __init__(self, algebra, action, name=None, check=True):
        self.algebra = algebra
        self.action = tuple(action)
        if len(self.action) != algebra.dim:
            raise ValidationError(
                f"{len(self.action)} action matrices for an algebra of dimension {algebra.dim}"
            )
        self.dim = self.action[0].nrows if self.action else 0
        self.name = name
        if check:
            self._check()

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"FDModule{tag}(dim={self.dim})"

    def _check(self):
        Q, n = self.algebra, self.dim
        for i, a in enumerate(self.action):
            if a.shape != (n, n):
                raise ValidationError(f"action matrix {i} has shape {a.shape}, expected {(n, n)}")
        if self.action[0] != Mat.identity(n):
            raise ValidationError("the unit does not act as the identity")
        for i in range(1, Q.dim):
            for j in range(i, Q.dim):
                lhs = self.action[i] @ self.action[j]
                if lhs != self.action[j] @ self.action[i]:
                    raise ValidationError(f"actions of b_{i} and b_{j} do not commute")
                if lhs != self.act(Q.table[i][j]):
                    raise ValidationError(
                        f"action does not respect b_{i}*b_{j} ({Q.labels[i]}*{Q.labels[j]})"
                    )

    def act(self, a):
        """Matrix of the action of an algebra element."""
        out = Mat.zeros(self.dim, self.dim)
        for c, m in zip(a, self.action):
            if c:
                out = out + m.scale(c)
        return out

    def elem_action(self, expr):
        return self.act(self.algebra.elem(expr))

    @property
    def length(self):
        return self.dim


class ModMap:
    """A module homomorphism given by its matrix; linearity is checked."""

    def __init__(self, source, target, matrix, check=True):
        if source.algebra is not target.algebra:
            raise ValidationError("module map between modules over different algebras")
        if matrix.shape != (target.dim, source.dim):
            raise ValidationError(f"map matrix of shape {matrix.shape}")
        self.source, self.target, self.matrix = source, target, matrix
        if check:
            for i, (a, b) in enumerate(zip(source.action, target.action)):
                if matrix @ a != b @ matrix:
                    raise ValidationError(f"map does not commute with the action of b_{i}")

    def is_zero(self):
        return self.matrix.is_zero()


# constructions

def residue_field(Q):
    acts = [Mat.identity(1)] + [Mat.zeros(1, 1)] * (Q.dim - 1)
    return FDModule(Q, acts, "k", check=False)


def regular(Q):
    return FDModule(Q, [Q.lmat(i) for i in range(Q.dim)], "Q", check=False)


def free(Q, r):
    eye = Mat.identity(r)
    return FDModule(Q, [Mat.kron(eye, Q.lmat(i)) for i in range(Q.dim)], f"Q^{r}", check=False)


def cyclic(qd):
    """Q/I as a Q-module, from a QuotientData."""
    Q = qd.parent
    acts = [qd.projection @ Q.lmat(i) @ qd.section for i in range(Q.dim)]
    return FDModule(Q, acts, "Q/I")


def submodule(M, vectors):
    """Submodule generated by ``vectors``; returns (module, inclusion matrix)."""
    sub = Subspace(M.dim, vectors)
    while True:
        grown = Subspace(
            M.dim, list(sub.basis) + [a.apply(v) for a in M.action[1:] for v in sub.basis]
        )
        if grown.dim == sub.dim:
            break
        sub = grown
    inc = sub.matrix()
    acts = []
    for a in M.action:
        cols = [sub.coords(a.apply(v)) for v in sub.basis]
        acts.append(Mat.from_columns(cols, sub.dim))
    return FDModule(M.algebra, acts, check=False), inc


def _quotient_projection(n, sub):
    reps = quotient_basis(Subspace.full(n), sub).basis
    B = Mat.from_columns(list(reps) + list(sub.basis), n)
    inv = inverse(B)
    k = len(reps)
    return list(reps), inv.submatrix(range(k), range(n))


def quotient_by(M, sub):
    """M/sub for an invariant subspace; returns (module, projection matrix)."""
    if not isinstance(sub, Subspace):
        sub = Subspace(M.dim, sub)
    for i, a in enumerate(M.action):
        if not sub.image(a).issubset(sub):
            raise ValidationError(f"subspace is not stable under b_{i}")
    reps, proj = _quotient_projection(M.dim, sub)
    acts = [proj @ a @ Mat.from_columns(reps, M.dim) for a in M.action]
    return FDModule(M.algebra, acts, check=False), proj


def direct_sum(*mods):
    Q = mods[0].algebra
    acts = []
    for i in range(Q.dim):
        acts.append(Mat.block([[m.action[i] if r == c else None for c, m in enumerate(mods)]
                               for r in range(len(mods))],
                              [m.dim for m in mods], [m.dim for m in mods]))
    return FDModule(Q, acts, check=False)


def restrict_scalars(M, qd):
    """An R-module viewed over Q through Q -> R."""
    if M.algebra is not qd.quotient:
        raise ValidationError("module is not over the quotient algebra")
    Q = qd.parent
    acts = [M.act(qd.projection.column(i)) for i in range(Q.dim)]
    return FDModule(Q, acts, M.name, check=False)


def descend(M, qd):
    """A Q-module killed by the kernel of Q -> R, viewed over R."""
    if M.algebra is not qd.parent:
        raise ValidationError("module is not over the parent algebra")
    for v in qd.ideal.subspace.basis:
        if not M.act(v).is_zero():
            raise PreconditionError("module is not annihilated by the kernel of the quotient map")
    R = qd.quotient
    acts = [M.act(qd.section.column(j)) for j in range(R.dim)]
    return FDModule(R, acts, M.name, check=False)


def tensor_over(M, N):
    """M tensor_Q N as a quotient of the Q-space tensor product."""
    if M.algebra is not N.algebra:
        raise ValidationError("tensor product of modules over different algebras")
    n = M.dim * N.dim
    rel = []
    eyeM, eyeN = Mat.identity(M.dim), Mat.identity(N.dim)
    for a, b in zip(M.action[1:], N.action[1:]):
        rel.extend(image_basis(Mat.kron(a, eyeN) - Mat.kron(eyeM, b)).basis)
    sub = Subspace(n, rel)
    big = FDModule(M.algebra, [Mat.kron(a, eyeN) for a in M.action], check=False)
    out, _ = quotient_by(big, sub)
    return out


def m_subspace(M):
    return Subspace(M.dim, [v for a in M.action[1:] for v in image_basis(a).basis])


def minimal_generators(M):
    """Coset basis of M/mM."""
    return quotient_basis(Subspace.full(M.dim), m_subspace(M))


def submodule_mM(M):
    """(mM, inclusion nu as a ModMap)."""
    mM, inc = submodule(M, m_subspace(M).basis)
    return mM, ModMap(mM, M, inc, check=False)


def projection_pi(M):
    """The projection M -> M/mM as a ModMap."""
    bar, proj = quotient_by(M, m_subspace(M))
    return ModMap(M, bar, proj, check=False)


def length(M):
    return M.dim


def annihilates(f, M):
    return M.act(M.algebra.elem(f)).is_zero()


def mpower_subspace(M, k):
    sub = Subspace.full(M.dim)
    for _ in range(k):
        sub = Subspace(M.dim, [a.apply(v) for a in M.action[1:] for v in sub.basis])
    return sub


def hilbert_series_module(M):
    dims = [M.dim]
    sub = Subspace.full(M.dim)
    while sub.dim:
        sub = Subspace(M.dim, [a.apply(v) for a in M.action[1:] for v in sub.basis])
        dims.append(sub.dim)
    coeffs = [dims[k] - dims[k + 1] for k in range(len(dims) - 1)] or [0]
    return TruncatedSeries(coeffs)


def kills_m(M):
    return all(a.is_zero() for a in M.action[1:])


def from_action_dict(Q, dim, action):
    """Build from {label or variable: matrix rows}; missing basis elements are derived."""
    mats = {}
    for key, rows in action.items():
        m = Mat.from_rows(rows, dim) if rows else Mat.zeros(dim, dim)
        if m.shape != (dim, dim):
            raise ValidationError(f"action of {key!r} has shape {m.shape}")
        mats[key] = m
    acts = [Mat.identity(dim)]
    for i in range(1, Q.dim):
        lab = Q.labels[i]
        if lab in mats:
            acts.append(mats[lab])
        elif Q.exponents is not None:
            m = Mat.identity(dim)
            for v, e in zip(Q.variables, Q.exponents[i]):
                if e:
                    if v not in mats:
                        raise ValidationError(f"no action given for variable {v!r}")
                    for _ in range(e):
                        m = m @ mats[v]
            acts.append(m)
        else:
            raise ValidationError(f"no action given for basis element {lab!r}")
    if Q.exponents is not None:
        for v in mats:
            if v in Q.variables and v not in Q.labels:
                if not mats[v].is_zero():
                    raise ValidationError(f"variable {v!r} is zero in the ring but acts nontrivially")
    return FDModule(Q, acts)


__all__ = [
    "FDModule",
    "ModMap",
    "residue_field",
    "regular",
    "free",
    "cyclic",
    "submodule",
    "quotient_by",
    "direct_sum",
    "restrict_scalars",
    "descend",
    "tensor_over",
    "minimal_generators",
    "submodule_mM",
    "projection_pi",
    "length",
    "annihilates",
    "hilbert_series_module",
    "kills_m",
    "from_action_dict",
]
