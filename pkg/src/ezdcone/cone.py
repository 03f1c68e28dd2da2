"""The Eisenbud operator of an exact zero divisor, its mapping cone and the two
long exact sequences relating Tor over Q and over R = Q/(f).

Notation: V is the lifted complex of a semi-free resolution U, S = Q/((f) +
ann f), W is the cone of tau: Sigma^{-1} V (x) S -> Sigma V (x) S, so that
W_n = (V_{n-1} + V_n) (x) S.
"""

from dataclasses import dataclass, field

from .algebra import annihilator, ideal, is_exact_pair, principal_ideal, quotient, AlgIdeal
from .complexes import (
    Complex,
    CxMap,
    cone,
    cone_inclusion,
    cone_projection,
    homology,
    les_from_ses,
    shift,
    ses_of_complexes_exact,
    tensor_with_module,
    verify_complex,
)
from .errors import HypothesisFailure, PreconditionError, TheoremViolation
from .free import FreeMap, vector_to_column
from .linalg import Mat, Subspace, kernel_basis, rank, solve, subspace_eq, unit_vector
from .modules import (
    annihilates,
    descend,
    kills_m,
    regular,
    restrict_scalars,
    submodule_mM,
)
from .tate import (
    _augmentation_matrix,
    build_semifree_resolution,
    build_tate,
    check_lifting_identity,
    extract_lifting,
    ymul_map,
)


def s_ideal(Q, f):
    """(f) + ann(f)."""
    f = Q.elem(f)
    return AlgIdeal(Q, principal_ideal(Q, f).subspace + annihilator(Q, f).subspace)


def _free_zero(alg):
    return lambda r, c: FreeMap.zeros(alg, r, c)


def project_complex(F, qd):
    diffs = {n: F.diffs[n].project(qd) for n in F.diffs}
    return Complex(F.lo, F.hi, F.dims, diffs, F.complete, _free_zero(qd.quotient))


# the operator

@dataclass
class EisenbudOp:
    lifting: object
    qS: object
    tau: dict
    VS: Complex

    @property
    def cap(self):
        return self.lifting.cap

    def cxmap(self):
        """tau as a degree-0 chain map Sigma^{-1} V(x)S -> Sigma V(x)S."""
        X, Y = shift(self.VS, -1), shift(self.VS, 1)
        return CxMap(X, Y, {m: t for m, t in self.tau.items() if m >= X.lo})


def compute_tau(U, qS=None):
    L = extract_lifting(U)
    bad = check_lifting_identity(L)
    if bad:
        raise TheoremViolation(f"dV o dV != f tau~ in degrees {bad}")
    Q = U.Q
    if qS is None:
        qS = quotient(Q, s_ideal(Q, U.A.f))
    S = qS.quotient
    VS = project_complex(L.complex(), qS)
    tau = {n: L.tau_tilde[n].project(qS) for n in L.tau_tilde}
    tau[0] = FreeMap.zeros(S, 0, U.rank_V(1))
    op = EisenbudOp(L, qS, tau, VS)
    for n in range(2, U.cap):
        lhs = VS.d(n - 1) @ tau[n]
        rhs = tau[n - 1] @ VS.d(n + 1)
        if lhs != rhs:
            raise TheoremViolation(f"tau is not a chain map in degree {n}")
    return op


def tau_chain_defects(op, top=None):
    top = op.cap - 1 if top is None else top
    out = {}
    for n in range(2, top + 1):
        d = op.VS.d(n - 1) @ op.tau[n] - op.tau[n - 1] @ op.VS.d(n + 1)
        out[n] = d.is_zero()
    return out


# the cone

@dataclass
class ConeW:
    op: EisenbudOp
    W: Complex
    X: Complex
    Y: Complex

    @property
    def S(self):
        return self.op.qS.quotient

    def tensor(self, NS):
        """Short exact sequence Sigma V(x)N -> W(x)N -> V(x)N for an S-module N."""
        XN = tensor_with_module(self.X, NS)
        YN = tensor_with_module(self.Y, NS)
        WN = tensor_with_module(self.W, NS)
        zeta = cone_inclusion(YN, WN)
        gamma = cone_projection(XN, WN)
        return TensoredCone(YN, WN, gamma.target, zeta, gamma, XN)


@dataclass
class TensoredCone:
    SigmaV: Complex
    W: Complex
    V: Complex
    zeta: CxMap
    gamma: CxMap
    X: Complex


def build_cone(op):
    f = op.cxmap()
    W = cone(f)
    if not verify_complex(W):
        raise TheoremViolation("the cone differential does not square to zero")
    return ConeW(op, W, f.source, f.target)


def cone_block_probe(cw, n):
    """d^W on basis probes as (first block, second block) matrices; mirrors [[-dV, -tau], [0, dV]]."""
    D = cw.W.d(n)
    r1 = cw.op.lifting.rank(n - 2) if n >= 2 else 0
    c1 = cw.op.lifting.rank(n - 1)
    return {
        "top_left": D.submatrix(range(r1), range(c1)),
        "top_right": D.submatrix(range(r1), range(c1, D.ncols)),
        "bottom_left": D.submatrix(range(r1, D.nrows), range(c1)),
        "bottom_right": D.submatrix(range(r1, D.nrows), range(c1, D.ncols)),
    }


# omega and the y2 sequence

def _unit_free(S, rows, cols, pairs):
    entries = {(r, c): unit_vector(S.dim, 0) for r, c in pairs}
    return FreeMap.from_entries(S, rows, cols, entries)


def omega_component(U, qS, n):
    """omega_n: U_n (x) S -> W_n, a + y x + l |-> (x, a)."""
    S = qS.quotient
    rv1 = U.rank_V(n - 1) if n >= 1 else 0
    pairs = [(k, c) for k, c in enumerate(U.block(n, 1))] if n >= 1 else []
    pairs += [(rv1 + k, c) for k, c in enumerate(U.block(n, 0))]
    return _unit_free(S, rv1 + U.rank_V(n), U.rank_U(n), pairs)


def projection_component(U, qd, n):
    """U_n -> V_n, the V-component."""
    return _unit_free(qd.quotient, U.rank_V(n), U.rank_U(n), list(enumerate(U.block(n, 0))))


def US_complex(U, qS):
    return project_complex(U.complex(), qS)


def build_omega(U, cw, US=None):
    qS = cw.op.qS
    S = qS.quotient
    US = US or US_complex(U, qS)
    top = min(U.cap, cw.W.hi)
    omega = CxMap(US, cw.W, {n: omega_component(U, qS, n) for n in range(top + 1)})
    if not omega.is_chain_map(top):
        raise TheoremViolation("omega is not a chain map")
    for n in range(top + 1):
        Om = omega.at(n).tensor(regular(S))
        if rank(Om) != Om.nrows:
            raise TheoremViolation(f"omega is not surjective in degree {n}")
        L_pos = [p * S.dim + a for i in range(2, n + 1) for p in U.block(n, i) for a in range(S.dim)]
        L_sub = Subspace(Om.ncols, [unit_vector(Om.ncols, p) for p in L_pos], True)
        if not subspace_eq(kernel_basis(Om), L_sub):
            raise TheoremViolation(f"ker omega differs from L (x) S in degree {n}")
    return omega


def omega_kernel_dims(U, S_dim):
    return {n: sum(U.rank_V(n - i) for i in range(2, n + 1)) * S_dim for n in range(U.cap + 1)}


def build_y2(U, qS, US=None):
    """Multiplication by y_2 as a chain map Sigma^2 U(x)S -> U(x)S."""
    US = US or US_complex(U, qS)
    src = shift(US, 2)
    comps = {n: ymul_map(U, 2, n - 2).project(qS) for n in range(2, U.cap + 1)}
    return CxMap(src, US, comps)


def build_y2_ses(U, cw, top=None):
    """Check 0 -> Sigma^2 U(x)S -> U(x)S -> W -> 0 degreewise; returns (y2, omega)."""
    qS = cw.op.qS
    S = qS.quotient
    US = US_complex(U, qS)
    omega = build_omega(U, cw, US)
    y2 = build_y2(U, qS, US)
    top = min(U.cap, cw.W.hi) if top is None else top
    if not y2.is_chain_map(top):
        raise TheoremViolation("multiplication by y_2 is not a chain map after tensoring with S")
    regS = regular(S)
    for n in range(top + 1):
        Y = y2.at(n).tensor(regS)
        Om = omega.at(n).tensor(regS)
        if rank(Y) != Y.ncols:
            raise TheoremViolation(f"y_2 is not injective in degree {n}")
        if not (Om @ Y).is_zero() or rank(Y) + rank(Om) != Om.ncols:
            raise TheoremViolation(f"y_2 sequence is not exact in the middle in degree {n}")
    return y2, omega


# Tor

def tor_Q(U, N):
    """Tor^Q(M, N) as the complex U (x)_Q N."""
    return tensor_with_module(U.complex(), N)


def tor_R(L, qR, NR):
    """Tor^R(M, N) as V (x) R (x)_R N."""
    return tensor_with_module(project_complex(L.complex(), qR), NR)


def tor(ring, M, N, top, ctx):
    """Homology spaces Tor_n^{ring}(M, N) for n <= top; ring is "Q" or "R"."""
    U = ctx.resolution(M, top + 1)
    if ring == "Q":
        C = tor_Q(U, N)
    elif ring == "R":
        C = tor_R(extract_lifting(U), ctx.qR, descend(N, ctx.qR))
    else:
        raise PreconditionError(f"unknown ring {ring!r}")
    return [homology(C, n) for n in range(top + 1)]


# context for a fixed (Q, f, g)

class EzdContext:
    """Shared data for an exact pair: R, S, the Tate algebra and cached resolutions."""

    def __init__(self, Q, f, g, cap=8, seed=0):
        self.Q = Q
        self.f = Q.elem(f)
        self.g = Q.elem(g)
        self.cap = cap
        self.seed = seed
        if cap < 2:
            raise PreconditionError("cap must be at least 2")
        self.pair = is_exact_pair(Q, self.f, self.g)
        if not self.pair:
            raise PreconditionError(f"(f, g) = ({Q.format(self.f)}, {Q.format(self.g)}) "
                                    "is not an exact pair of zero divisors")
        self.qR = quotient(Q, principal_ideal(Q, self.f))
        self.qS = quotient(Q, ideal(Q, [self.f, self.g]))
        if not subspace_eq(self.qS.ideal.subspace, s_ideal(Q, self.f).subspace):
            raise TheoremViolation("(f) + ann(f) differs from (f, g) for an exact pair")
        self.A = build_tate(Q, self.f, self.g, cap + 2)
        self._cache = {}

    @property
    def R(self):
        return self.qR.quotient

    @property
    def S(self):
        return self.qS.quotient

    def resolution(self, M, cap=None, seed=None):
        cap = self.cap if cap is None else cap
        seed = self.seed if seed is None else seed
        key = ("U", id(M), cap, seed)
        if key not in self._cache:
            self._cache[key] = (M, build_semifree_resolution(self.Q, self.A, M, cap, seed))
        return self._cache[key][1]

    def as_Q_module(self, M):
        """Accept modules over Q or over R."""
        if M.algebra is self.Q:
            return M
        if M.algebra is self.R:
            return restrict_scalars(M, self.qR)
        raise PreconditionError("module over an unrelated algebra")

    def check_hypotheses(self, M, N):
        if not annihilates(self.f, M):
            raise PreconditionError("M is not an R-module: f M != 0")
        if not annihilates(self.f, N):
            raise PreconditionError("N is not an R-module: f N != 0")
        if not annihilates(self.g, N):
            raise HypothesisFailure("g N != 0")


# the main theorem

@dataclass
class MthReport:
    window: int
    top: int
    seq1: object
    seq2: object
    delta: dict
    mu: dict
    phi: dict
    psi: dict
    betti_Q: list
    betti_R: list
    h_W: list
    psi_phi_ok: dict
    delta_is_tau: dict
    defects: list
    unverifiable: list
    lengths_ok: dict
    rank_identity_ok: dict
    extras: dict = field(default_factory=dict)

    @property
    def ok(self):
        return (not self.defects and all(self.psi_phi_ok.values())
                and all(self.delta_is_tau.values()) and all(self.lengths_ok.values())
                and all(self.rank_identity_ok.values()))

    def mu_delta_zero(self, upto=None):
        upto = self.top if upto is None else upto
        return all(m.is_zero() for n, m in self.mu.items() if n <= upto) and \
            all(d.is_zero() for n, d in self.delta.items() if n <= upto)


def mth_verify(ctx, M, N, seed=None):
    """Both long exact sequences, named maps and the comparison psi phi = H(pi)."""
    M, N = ctx.as_Q_module(M), ctx.as_Q_module(N)
    ctx.check_hypotheses(M, N)
    cap = ctx.cap
    top = cap - 1
    U = ctx.resolution(M, cap, seed)
    op = compute_tau(U, ctx.qS)
    cw = build_cone(op)
    y2, omega = build_y2_ses(U, cw)
    NS = descend(N, ctx.qS)

    # the cone sequence
    T = cw.tensor(NS)
    if not ses_of_complexes_exact(T.zeta, T.gamma, top):
        raise TheoremViolation("the cone sequence is not degreewise exact after tensoring")
    seq1 = les_from_ses(T.zeta, T.gamma, top, 0, ("SigmaV(x)N", "W(x)N", "V(x)N"))

    # the y2 sequence
    UN = tensor_with_module(US_complex(U, ctx.qS), NS)
    S2UN = shift(UN, 2)
    y2N = CxMap(S2UN, UN, {n: m.tensor(NS) for n, m in y2.comps.items()})
    omN = CxMap(UN, T.W, {n: m.tensor(NS) for n, m in omega.comps.items()})
    if not ses_of_complexes_exact(y2N, omN, top):
        raise TheoremViolation("the y_2 sequence is not degreewise exact after tensoring")
    seq2 = les_from_ses(y2N, omN, top, 0, ("Sigma2U(x)N", "U(x)N", "W(x)N"))
    window = min(seq1.verified_top, seq2.verified_top)

    delta = {n: seq1.by_degree[n][2] for n in range(1, top + 1)}
    psi = {n: seq1.by_degree[n][1] for n in range(0, top + 1)}
    phi = {n: seq2.by_degree[n][1] for n in range(0, top + 1)}
    mu = {n: seq2.by_degree[n][2] for n in range(1, top + 1)}

    # psi phi against the canonical projection U(x)N -> V(x)N
    pi = CxMap(UN, T.V, {n: projection_component(U, ctx.qS, n).tensor(NS)
                         for n in range(cap + 1)})
    if not pi.is_chain_map(cap):
        raise TheoremViolation("the canonical projection is not a chain map")
    psi_phi_ok = {n: psi[n] @ phi[n] == pi.homology_map(n) for n in range(top + 1)}

    # delta against the map induced by tau, V_n -> V_{n-2} = (Sigma V)_{n-1}
    tauN = CxMap(T.V, T.SigmaV, {n: op.tau[n - 1].tensor(NS) for n in range(1, cap + 1)
                                 if n - 1 in op.tau}, degree=-1)
    if not tauN.is_chain_map(cap):
        raise TheoremViolation("tau (x) N is not a chain map")
    delta_is_tau = {n: delta[n] == -tauN.homology_map(n) for n in range(1, top + 1)}

    bQ = [homology(UN, n).dim for n in range(top + 1)]
    bR = [homology(T.V, n).dim for n in range(top + 1)]
    hW = [homology(T.W, n).dim for n in range(top + 1)]

    defects, unverifiable = [], []
    for name, seq in (("cone", seq1), ("y2", seq2)):
        for r in seq.exactness():
            if r["status"] == "defect":
                defects.append((name, r["node"], r["defect"]))
            elif r["status"] != "exact":
                unverifiable.append((name, r["node"]))
    if defects:
        raise TheoremViolation(f"exactness defects: {defects}")

    def rk(maps, n):
        m = maps.get(n)
        return rank(m) if m is not None else 0

    lengths_ok, rank_ok = {}, {}
    for n in range(top + 1):
        upper = bQ[n] + (bQ[n - 3] if n >= 3 else 0)
        lower = bR[n] - (bR[n - 2] if n >= 2 else 0)
        lengths_ok[n] = lower <= hW[n] <= upper
        if n + 1 <= top:
            lhs = bR[n] + (bR[n - 1] if n >= 1 else 0) - bQ[n] + (bQ[n - 2] if n >= 2 else 0)
            rank_ok[n] = lhs == rk(mu, n) + rk(mu, n + 1) + rk(delta, n) + rk(delta, n + 1)
    report = MthReport(window, top, seq1, seq2, delta, mu, phi, psi, bQ, bR, hW,
                       psi_phi_ok, delta_is_tau, defects, unverifiable, lengths_ok, rank_ok)
    report.extras = {"U": U, "op": op, "cone": cw, "tensored": T, "UN": UN, "NS": NS}
    bad = [k for k, v in (("psi_phi", psi_phi_ok), ("delta_tau", delta_is_tau),
                          ("lengths", lengths_ok), ("rank_identity", rank_ok))
           if not all(v.values())]
    if bad:
        raise TheoremViolation(f"checks failed: {bad}")
    return report


# lifting independence

def comparison_map(L1, L2, qR):
    """A chain map V1(x)R -> V2(x)R over the identity of M, by deterministic solves."""
    U1, U2 = L1.U, L2.U
    R = qR.quotient
    M = U1.M
    d = R.dim
    F1 = project_complex(L1.complex(), qR)
    F2 = project_complex(L2.complex(), qR)
    MR = descend(M, qR)
    eps2 = _augmentation_matrix(R, MR, U2.augmentation)
    cols = []
    for m in U1.augmentation:
        x = solve(eps2, m)
        if x is None:
            raise TheoremViolation("augmentation of the second resolution is not onto")
        cols.append(vector_to_column(x, d))
    h = {0: FreeMap.from_columns(R, F2.dims[0], cols) if cols else
         FreeMap.zeros(R, F2.dims[0], 0)}
    for n in range(1, min(F1.hi, F2.hi) + 1):
        target = (h[n - 1] @ F1.d(n)).realize()
        D2 = F2.d(n).realize()
        cols = []
        for j in range(F1.dims[n]):
            b = target.column(j * d)
            x = solve(D2, b)
            if x is None:
                raise TheoremViolation(f"comparison lift fails in degree {n}")
            cols.append(vector_to_column(x, d))
        h[n] = FreeMap.from_columns(R, F2.dims[n], cols) if cols else \
            FreeMap.zeros(R, F2.dims[n], 0)
    return h


def verify_naturality_and_independence(ctx, U1, U2, modules=None, top=None):
    """H(tau2 h) = H(h tau1) after tensoring with each module (default: k and S).

    Returns {name: {n: bool}} and the conjugated delta comparison.
    """
    from .modules import residue_field

    op1, op2 = compute_tau(U1, ctx.qS), compute_tau(U2, ctx.qS)
    h = comparison_map(op1.lifting, op2.lifting, ctx.qR)
    top = (min(U1.cap, U2.cap) - 1) if top is None else top
    if modules is None:
        modules = {"k": residue_field(ctx.Q), "S": restrict_scalars(regular(ctx.S), ctx.qS)}
    out = {}
    for name, N in modules.items():
        NS = descend(N, ctx.qS)
        V1 = tensor_with_module(op1.VS, NS)
        V2 = tensor_with_module(op2.VS, NS)
        hS = {n: m.lift(ctx.qR).project(ctx.qS).tensor(NS) for n, m in h.items()}
        H = CxMap(V1, V2, hS)
        if not H.is_chain_map(top + 1):
            raise TheoremViolation("comparison map is not a chain map")
        t1 = CxMap(V1, V1, {n: op1.tau[n - 1].tensor(NS) for n in range(1, U1.cap + 1)}, -2)
        t2 = CxMap(V2, V2, {n: op2.tau[n - 1].tensor(NS) for n in range(1, U2.cap + 1)}, -2)
        res = {}
        for n in range(2, top + 1):
            a = t2.homology_map(n) @ H.homology_map(n)
            b = H.homology_map(n - 2) @ t1.homology_map(n)
            res[n] = a == b
        out[name] = res
    return out


# applications

def f_in_m2(ctx):
    return ctx.Q.in_mpower(ctx.f, 2)


def connec_check(ctx, M, N, report=None):
    """f not in m^2 and mN = 0 force mu = 0 = delta."""
    Nq = ctx.as_Q_module(N)
    if f_in_m2(ctx):
        return {"applicable": False, "reason": "f lies in m^2"}
    if not kills_m(Nq):
        return {"applicable": False, "reason": "m N != 0"}
    report = report or mth_verify(ctx, M, N)
    zero = report.mu_delta_zero()
    if not zero:
        raise TheoremViolation("mu or delta is nonzero although f is not in m^2 and mN = 0")
    return {"applicable": True, "mu_delta_zero": zero, "window": report.window}


def vanish_verify(ctx, M, N):
    """Tor^R(M, nu_N) = 0 implies Tor^Q(M, nu_N) = 0 and P^Q = P^R/(1-t) in the window."""
    from .series import TruncatedSeries, div_unit

    Mq, Nq = ctx.as_Q_module(M), ctx.as_Q_module(N)
    if f_in_m2(ctx):
        return {"applicable": False, "reason": "f lies in m^2"}
    from .modules import mpower_subspace

    if mpower_subspace(Nq, 2).dim:
        return {"applicable": False, "reason": "m^2 N != 0"}
    if not annihilates(ctx.g, Nq):
        return {"applicable": False, "reason": "g N != 0"}
    top = ctx.cap - 1
    window = top - 1
    U = ctx.resolution(Mq)
    L = extract_lifting(U)
    mN, nu = submodule_mM(Nq)
    VQ = L.complex()
    tor_R_nu = _tensor_map(VQ, mN, Nq, nu.matrix)
    if any(not tor_R_nu.homology_map(n).is_zero() for n in range(window + 1)):
        return {"applicable": False, "reason": "Tor^R(M, nu_N) != 0 in the window"}
    tor_Q_nu = _tensor_map(U.complex(), mN, Nq, nu.matrix)
    q_zero = all(tor_Q_nu.homology_map(n).is_zero() for n in range(window + 1))
    if not q_zero:
        raise TheoremViolation("Tor^Q(M, nu_N) != 0 although Tor^R(M, nu_N) = 0")
    PQ = TruncatedSeries([homology(tor_Q_nu.target, n).dim for n in range(window + 1)])
    PR = TruncatedSeries([homology(tor_R_nu.target, n).dim for n in range(window + 1)])
    eq = PQ == div_unit(PR, TruncatedSeries([1, -1], window))
    if not eq:
        raise TheoremViolation("P^Q != P^R / (1 - t) under the vanishing hypothesis")
    return {"applicable": True, "tor_Q_nu_zero": q_zero, "series_equal": eq,
            "window": window, "P_Q": list(PQ.coeffs), "P_R": list(PR.coeffs)}


def _tensor_map(F, A, B, phi):
    """F (x) phi for a module map phi: A -> B and a complex of free Q-modules F."""
    CA = tensor_with_module(F, A)
    CB = tensor_with_module(F, B)
    comps = {n: Mat.kron(Mat.identity(F.dims[n]), phi) for n in F.degrees()}
    return CxMap(CA, CB, comps)


def vh_verify(ctx, M, N, m, n, report=None):
    """Vanishing of Tor^R in [m, n] and the resulting periodicity of Tor^Q."""
    if n - m < 1 or m < 0:
        raise PreconditionError("need n - m >= 1 and m >= 0")
    report = report or mth_verify(ctx, M, N)
    if n > report.top:
        raise PreconditionError(f"n = {n} exceeds the verified window {report.top}")
    bR, bQ = report.betti_R, report.betti_Q
    if any(bR[i] for i in range(m, n + 1)):
        return {"applicable": False, "reason": f"Tor^R_i(M, N) != 0 for some {m} <= i <= {n}"}
    iso = {}
    seq2 = report.seq2
    for i in range(m, n - 1):
        chi = seq2.by_degree[i + 1][0]  # Tor^Q_{i-1} -> Tor^Q_{i+1}
        iso[i] = chi.nrows == chi.ncols and rank(chi) == chi.ncols
    four = None
    if m >= 1:
        chi = seq2.by_degree[m][0]
        phi = report.phi[m]
        zeta = report.seq1.by_degree[m][0]
        mu = report.mu[m]
        if rank(zeta) != zeta.ncols or zeta.nrows != zeta.ncols:
            raise TheoremViolation("Tor^R_{m-1} -> H_m(W (x) N) is not an isomorphism")
        from .linalg import inverse

        zi = inverse(zeta) if zeta.nrows else zeta
        maps = [chi, zi @ phi, mu @ zeta]
        dims = [chi.ncols, chi.nrows, zeta.ncols, mu.nrows]
        from .complexes import exactness_report, is_exact

        four = is_exact(exactness_report(maps, dims))
        if not four:
            raise TheoremViolation("the four-term sequence is not exact")
    m1 = None
    if m == 1:
        from .modules import tensor_over

        t = tensor_over(ctx.as_Q_module(M), ctx.as_Q_module(N)).dim
        m1 = all(bQ[i] == t for i in range(1, n))
        if not m1:
            raise TheoremViolation("Tor^Q_i(M, N) differs from M (x) N in the range")
    if not all(iso.values()):
        raise TheoremViolation(f"periodicity fails: {iso}")
    return {"applicable": True, "isomorphisms": iso, "four_term_exact": four,
            "m1_isomorphisms": m1}
