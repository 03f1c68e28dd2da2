"""The Tate resolution of Q/(f) for an exact pair and semi-free resolutions over it.

The Tate algebra has one basis element y_i in each degree i with
``d(y_{2n+1}) = f y_{2n}`` and ``d(y_{2n}) = g y_{2n-1}``. A semi-free module
U over it has U_n = sum_i y_i V_{n-i}; its differential is determined by the
values d(e) on generators through the Leibniz rule.
"""

import random
from dataclasses import dataclass, field
from math import comb

from .algebra import annihilator, is_exact_pair, principal_ideal
from .complexes import Complex, homology, tensor_with_module
from .errors import PreconditionError, TheoremViolation
from .free import FreeMap, vector_to_column
from .linalg import Mat, Subspace, image_basis, kernel_basis, quotient_basis
from .modules import annihilates, minimal_generators, regular


def _sign(k):
    return -1 if k % 2 else 1


class TateAlgebra:
    """Q<y, t | dy = f, dt = g y> truncated at degree ``cap``."""

    def __init__(self, Q, f, g, cap):
        self.Q = Q
        self.f = Q.elem(f)
        self.g = Q.elem(g)
        self.cap = cap

    def dcoef(self, i):
        """d(y_i) = dcoef(i) * y_{i-1}."""
        if i == 0:
            return self.Q.zero()
        return self.f if i % 2 else self.g

    @staticmethod
    def ycoef(i, j):
        """y_i y_j = ycoef(i, j) y_{i+j}."""
        if i % 2 and j % 2:
            return 0
        return comb(i // 2 + j // 2, i // 2)

    def complex(self):
        Q = self.Q
        diffs = {n: FreeMap.scalar(Q, self.dcoef(n), 1) for n in range(1, self.cap + 1)}
        return Complex(0, self.cap, {n: 1 for n in range(self.cap + 1)}, diffs,
                       zero=lambda r, c: FreeMap.zeros(Q, r, c))

    # axiom checks; each returns a list of failures

    def check_d_squared(self):
        Q = self.Q
        return [i for i in range(2, self.cap + 1)
                if any(Q.mul(self.dcoef(i - 1), self.dcoef(i)))]

    def check_leibniz(self):
        Q, bad = self.Q, []
        for i in range(self.cap + 1):
            for j in range(self.cap + 1 - i):
                lhs = Q.scale(self.ycoef(i, j), self.dcoef(i + j))
                r1 = Q.scale(self.ycoef(i - 1, j), self.dcoef(i)) if i else Q.zero()
                r2 = Q.scale(_sign(i) * self.ycoef(i, j - 1), self.dcoef(j)) if j else Q.zero()
                if lhs != Q.add(r1, r2):
                    bad.append((i, j))
        return bad

    def check_graded_commutative(self):
        bad = []
        for i in range(self.cap + 1):
            for j in range(self.cap + 1 - i):
                if self.ycoef(i, j) != _sign(i * j) * self.ycoef(j, i):
                    bad.append((i, j))
            if i % 2 and 2 * i <= self.cap and self.ycoef(i, i):
                bad.append((i, i))
        return bad

    def check_associative(self):
        bad = []
        c = self.ycoef
        for i in range(self.cap + 1):
            for j in range(self.cap + 1 - i):
                for k in range(self.cap + 1 - i - j):
                    if c(i, j) * c(i + j, k) != c(j, k) * c(i, j + k):
                        bad.append((i, j, k))
        return bad

    def check_divided_powers(self):
        return [j for j in range(self.cap - 1)
                if self.ycoef(2, j) != 1 + j // 2]

    def check_resolution(self):
        """H_0 of A is Q/(f) and H_i = 0 for 0 < i < cap."""
        C = tensor_with_module(self.complex(), regular(self.Q))
        R_dim = self.Q.dim - principal_ideal(self.Q, self.f).dim
        bad = []
        if homology(C, 0).dim != R_dim:
            bad.append(0)
        bad.extend(n for n in range(1, self.cap) if homology(C, n).dim)
        return bad

    def verify(self):
        report = {
            "d_squared": self.check_d_squared(),
            "leibniz": self.check_leibniz(),
            "graded_commutative": self.check_graded_commutative(),
            "associative": self.check_associative(),
            "divided_powers": self.check_divided_powers(),
            "resolution": self.check_resolution(),
        }
        return report


def build_tate(Q, f, g, cap):
    if not is_exact_pair(Q, f, g):
        raise PreconditionError("(f, g) is not an exact pair of zero divisors")
    A = TateAlgebra(Q, f, g, cap)
    bad = {k: v for k, v in A.verify().items() if v}
    if bad:
        raise TheoremViolation(f"Tate algebra axioms fail: {bad}")
    return A


# semi-free resolutions

@dataclass
class SemiFreeRes:
    """A truncated semi-free resolution of M over the Tate algebra.

    ``gens[n]`` lists d(e) for the generators of degree n, each as a column
    of coefficient vectors over the basis of U_{n-1}.
    """

    A: TateAlgebra
    M: object
    cap: int
    augmentation: tuple
    gens: dict
    seed: int = 0
    _diffs: dict = field(default_factory=dict, repr=False)

    @property
    def Q(self):
        return self.A.Q

    def rank_V(self, n):
        return len(self.gens.get(n, ())) if n >= 0 else 0

    def basis(self, n):
        """Basis of U_n as (i, j) meaning y_i times the j-th generator of degree n-i."""
        return [(i, j) for i in range(n + 1) for j in range(self.rank_V(n - i))]

    def rank_U(self, n):
        return sum(self.rank_V(n - i) for i in range(n + 1))

    def offset(self, n, i):
        return sum(self.rank_V(n - k) for k in range(i))

    def block(self, n, i):
        """Positions of y_i V_{n-i} inside U_n."""
        o = self.offset(n, i)
        return range(o, o + self.rank_V(n - i))

    def d(self, n):
        """The differential U_n -> U_{n-1} as a free map."""
        if n not in self._diffs:
            self._diffs[n] = _leibniz_diff(self, n)
        return self._diffs[n]

    def complex(self, top=None):
        top = self.cap if top is None else top
        Q = self.Q
        return Complex(0, top, {n: self.rank_U(n) for n in range(top + 1)},
                       {n: self.d(n) for n in range(1, top + 1)},
                       zero=lambda r, c: FreeMap.zeros(Q, r, c))

    def component(self, n, i, j):
        """The (y_{i'}, generator) rows of d(e) for the j-th generator of degree n, split by i'."""
        col = self.gens[n][j]
        out = {}
        for ip in range(n):
            rows = self.block(n - 1, ip)
            out[ip] = [col[r] for r in rows]
        return out[i] if i is not None else out


def _leibniz_diff(U, n):
    Q, A = U.Q, U.A
    zero = Q.zero()
    if n <= 0:
        return FreeMap.zeros(Q, 0, U.rank_U(n))
    entries = {}
    for c, (i, j) in enumerate(U.basis(n)):
        deg = n - i
        # d(y_i) e
        if i >= 1:
            r = U.offset(n - 1, i - 1) + j
            entries[(r, c)] = A.dcoef(i)
        # (-1)^i y_i d(e)
        if deg >= 1:
            col = U.gens[deg][j]
            for ip in range(deg):
                coef = _sign(i) * A.ycoef(i, ip)
                if not coef:
                    continue
                src = U.offset(deg - 1, ip)
                dst = U.offset(n - 1, i + ip)
                for jj in range(U.rank_V(deg - 1 - ip)):
                    v = col[src + jj]
                    if any(v):
                        key = (dst + jj, c)
                        term = Q.scale(coef, v)
                        entries[key] = Q.add(entries.get(key, zero), term)
    return FreeMap.from_entries(Q, U.rank_U(n - 1), U.rank_U(n), entries)


def _m_span(Q, vecs, rank):
    """m times the Q-span of realized vectors in Q^rank."""
    acts = [Mat.kron(Mat.identity(rank), Q.lmat(a)) for a in range(1, Q.dim)]
    return Subspace(rank * Q.dim, [m.apply(v) for m in acts for v in vecs])


def _augmentation_matrix(Q, M, images):
    cols = []
    for m in images:
        for a in range(Q.dim):
            cols.append(M.action[a].apply(m))
    return Mat.from_columns(cols, M.dim)


def _perturb(reps, boundaries, rng):
    out = []
    n = len(reps)
    for k in range(n):
        v = list(reps[k])
        for l in range(k + 1, n):
            c = rng.randint(-2, 2)
            if c:
                v = [x + c * y for x, y in zip(v, reps[l])]
        for b in boundaries:
            c = rng.randint(-2, 2)
            if c:
                v = [x + c * y for x, y in zip(v, b)]
        out.append(tuple(v))
    return out


def build_semifree_resolution(Q, A, M, cap, seed=0):
    """Kill cycles degree by degree; new generators are minimal generators of homology."""
    if M.algebra is not Q:
        raise PreconditionError("module is not over the base algebra")
    if not annihilates(A.f, M):
        raise PreconditionError("f does not annihilate M")
    if cap < 1:
        raise PreconditionError("cap must be at least 1")
    if A.cap < cap + 2:
        raise PreconditionError(f"the Tate algebra needs degree cap >= {cap + 2}, has {A.cap}")
    rng = random.Random(seed)
    d = Q.dim
    gens0 = list(minimal_generators(M).basis)
    U = SemiFreeRes(A, M, cap, tuple(gens0), {0: [None] * len(gens0)}, seed)
    for t in range(1, cap + 1):
        r = U.rank_U(t - 1)
        if t == 1:
            Z = kernel_basis(_augmentation_matrix(Q, M, gens0))
        else:
            Z = kernel_basis(U.d(t - 1).realize())
        U.gens[t] = []
        U._diffs.pop(t, None)
        B = image_basis(U.d(t).realize()) if U.rank_U(t) else Subspace.zero(r * d)
        kill = B + _m_span(Q, Z.basis, r)
        reps = list(quotient_basis(Z, kill).basis)
        if seed and reps:
            reps = _perturb(reps, B.basis, rng)
        U.gens[t] = [vector_to_column(z, d) for z in reps]
        U._diffs.pop(t, None)
    return U


def resolution_report(U):
    """Failures of the resolution property through cap - 1."""
    C = tensor_with_module(U.complex(), regular(U.Q))
    bad = []
    if not all((U.d(n - 1) @ U.d(n)).is_zero() for n in range(2, U.cap + 1)):
        bad.append("d_squared")
    eps = _augmentation_matrix(U.Q, U.M, U.augmentation)
    if image_basis(eps).dim != U.M.dim:
        bad.append("augmentation_not_onto")
    if homology(C, 0).dim != U.M.dim:
        bad.append(0)
    bad.extend(n for n in range(1, U.cap) if homology(C, n).dim)
    return bad


def check_module_leibniz(U):
    """d(y_i e) = d(y_i) e + (-1)^i y_i d(e) against the stored differential, for all pairs."""
    # d is generated from this rule on basis elements; here it is tested on all of U_n
    for n in range(1, U.cap + 1):
        D = U.d(n)
        for i in range(1, n + 1):
            Y = ymul_map(U, i, n - i)
            Yd = ymul_map(U, i, n - i - 1) if n - i - 1 >= 0 else None
            lhs = D @ Y
            rhs = _dy_times(U, i, n - i)
            if n - i >= 1:
                rhs = rhs + (Yd @ U.d(n - i)).scale(_sign(i))
            if lhs != rhs:
                return False
    return True


def ymul_map(U, i, n):
    """Multiplication by y_i as a free map U_n -> U_{n+i}."""
    Q, A = U.Q, U.A
    entries = {}
    for c, (ip, j) in enumerate(U.basis(n)):
        coef = A.ycoef(i, ip)
        if coef:
            r = U.offset(n + i, i + ip) + j
            entries[(r, c)] = Q.scale(coef, Q.one())
    return FreeMap.from_entries(Q, U.rank_U(n + i), U.rank_U(n), entries)


def _dy_times(U, i, n):
    """The map u -> d(y_i) u from U_n to U_{n+i-1}."""
    Q, A = U.Q, U.A
    entries = {}
    for c, (ip, j) in enumerate(U.basis(n)):
        coef = A.ycoef(i - 1, ip)
        if coef:
            r = U.offset(n + i - 1, i - 1 + ip) + j
            entries[(r, c)] = Q.scale(coef, A.dcoef(i))
    return FreeMap.from_entries(Q, U.rank_U(n + i - 1), U.rank_U(n), entries)


def check_L_stability(U):
    """d(L_n) lies in ann(f) y V_{n-2} + L_{n-1} for every n <= cap."""
    annf = annihilator(U.Q, U.A.f).subspace
    for n in range(2, U.cap + 1):
        D = U.d(n)
        v_rows = list(U.block(n - 1, 0))
        y_rows = list(U.block(n - 1, 1))
        for i in range(2, n + 1):
            for c in U.block(n, i):
                for r in v_rows:
                    if any(D.entry(r, c)):
                        raise TheoremViolation(f"L-generator in degree {n} has a V-component")
                for r in y_rows:
                    v = D.entry(r, c)
                    if any(v) and not annf.contains(v):
                        raise TheoremViolation(
                            f"L-generator in degree {n} has a yV-component outside ann(f)"
                        )
    return True


# the lifted complex

@dataclass
class LiftedComplex:
    """V with dV (the V-part of d on generators) and tau~ (minus the yV-part)."""

    U: SemiFreeRes
    dV: dict
    tau_tilde: dict

    @property
    def Q(self):
        return self.U.Q

    @property
    def cap(self):
        return self.U.cap

    def rank(self, n):
        return self.U.rank_V(n)

    def complex(self):
        Q = self.Q
        return Complex(0, self.cap, {n: self.rank(n) for n in range(self.cap + 1)}, self.dV,
                       zero=lambda r, c: FreeMap.zeros(Q, r, c))


def extract_lifting(U):
    Q = U.Q
    dV, tt = {}, {}
    for n in range(1, U.cap + 1):
        cols_v, cols_y = [], []
        for col in U.gens[n]:
            cols_v.append([col[r] for r in U.block(n - 1, 0)])
            if n >= 2:
                cols_y.append([tuple(-x for x in col[r]) for r in U.block(n - 1, 1)])
        dV[n] = FreeMap.from_columns(Q, U.rank_V(n - 1), cols_v) if cols_v else \
            FreeMap.zeros(Q, U.rank_V(n - 1), 0)
        if n >= 2:
            # tau~_{n-1}: V_n -> V_{n-2}
            tt[n - 1] = FreeMap.from_columns(Q, U.rank_V(n - 2), cols_y) if cols_y else \
                FreeMap.zeros(Q, U.rank_V(n - 2), 0)
    return LiftedComplex(U, dV, tt)


def check_lifting_identity(L):
    """dV o dV = f tau~ in every degree; returns the failing degrees."""
    f = L.U.A.f
    bad = []
    for n in range(1, L.cap):
        lhs = L.dV[n] @ L.dV[n + 1]
        if lhs != L.tau_tilde[n].mul_elem(f):
            bad.append(n)
    return bad


def lifting_resolves(L, qR):
    """V tensor R is a resolution of M over R through cap - 1."""
    F = L.complex()
    R = qR.quotient
    diffs = {n: F.diffs[n].project(qR) for n in F.diffs}
    FR = Complex(0, F.hi, F.dims, diffs, zero=lambda r, c: FreeMap.zeros(R, r, c))
    C = tensor_with_module(FR, regular(R))
    bad = [n for n in range(2, F.hi + 1) if not (diffs[n - 1] @ diffs[n]).is_zero()]
    if homology(C, 0).dim != L.U.M.dim:
        bad.append(0)
    bad.extend(n for n in range(1, F.hi) if homology(C, n).dim)
    return FR, bad


# minimal resolutions over any algebra (independent oracle)

@dataclass
class MinimalResolution:
    complex: Complex
    augmentation: tuple

    def betti(self):
        return [self.complex.dims[n] for n in self.complex.degrees()]


def minimal_resolution(Q, M, cap):
    d = Q.dim
    gens = list(minimal_generators(M).basis)
    ranks = {0: len(gens)}
    diffs = {}
    Z = kernel_basis(_augmentation_matrix(Q, M, gens))
    for t in range(1, cap + 1):
        r = ranks[t - 1]
        reps = list(quotient_basis(Z, _m_span(Q, Z.basis, r)).basis)
        cols = [vector_to_column(z, d) for z in reps]
        diffs[t] = FreeMap.from_columns(Q, r, cols) if cols else FreeMap.zeros(Q, r, 0)
        ranks[t] = len(reps)
        if t < cap:
            Z = kernel_basis(diffs[t].realize()) if reps else Subspace.zero(0)
    C = Complex(0, cap, ranks, diffs, zero=lambda r, c: FreeMap.zeros(Q, r, c))
    return MinimalResolution(C, tuple(gens))


__all__ = [
    "TateAlgebra",
    "build_tate",
    "SemiFreeRes",
    "build_semifree_resolution",
    "resolution_report",
    "check_module_leibniz",
    "check_L_stability",
    "LiftedComplex",
    "extract_lifting",
    "check_lifting_identity",
    "lifting_resolves",
    "minimal_resolution",
    "MinimalResolution",
    "ymul_map",
]
