"""Finite-dimensional commutative local Q-algebras given by structure constants.

The basis is always adapted: ``b_0 = 1`` and ``b_1, ..., b_{d-1}`` span the
maximal ideal. Elements are tuples of Fractions of length ``d``.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import ParseError, PreconditionError, TheoremViolation, ValidationError
from .linalg import (
    Mat,
    Subspace,
    image_basis,
    kernel_basis,
    quotient_basis,
    solve,
    subspace_eq,
    unit_vector,
)
from .series import TruncatedSeries

ZERO = Fraction(0)
ONE = Fraction(1)


def _vec(v, d):
    v = tuple(Fraction(x) for x in v)
    if len(v) != d:
        raise ValidationError(f"structure-constant vector of length {len(v)}, expected {d}")
    return v


class LocalAlgebra:
    """A local Artinian Q-algebra with residue field Q.

    ``table[i][j]`` is the coefficient vector of ``b_i * b_j``.
    """

    def __init__(self, labels, table, variables=None, exponents=None, check=True):
        self.labels = tuple(labels)
        d = len(self.labels)
        self.dim = d
        self.table = tuple(tuple(_vec(table[i][j], d) for j in range(d)) for i in range(d))
        # monomial presentations remember exponents so modules can be given on variables
        self.variables = tuple(variables) if variables else None
        self.exponents = tuple(exponents) if exponents else None
        self._lmats = None
        self._mseq = None
        self.nilpotency_index = validate(self) if check else None

    def __repr__(self):
        return f"LocalAlgebra(dim={self.dim}, basis={list(self.labels)})"

    # elements

    def zero(self):
        return (ZERO,) * self.dim

    def one(self):
        return unit_vector(self.dim, 0)

    def basis_elem(self, i):
        return unit_vector(self.dim, i)

    def lmat(self, i):
        """Matrix of multiplication by ``b_i`` (columns are ``b_i b_j``)."""
        if self._lmats is None:
            self._lmats = tuple(
                Mat.from_columns(self.table[i], self.dim) for i in range(self.dim)
            )
        return self._lmats[i]

    def mult_matrix(self, a):
        out = Mat.zeros(self.dim, self.dim)
        for i, c in enumerate(a):
            if c:
                out = out + self.lmat(i).scale(c)
        return out

    def mul(self, a, b):
        out = [ZERO] * self.dim
        for i, x in enumerate(a):
            if not x:
                continue
            row = self.table[i]
            for j, y in enumerate(b):
                if not y:
                    continue
                xy = x * y
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] += xy * c
        return tuple(out)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def scale(self, c, a):
        c = Fraction(c)
        return tuple(c * x for x in a)

    def power(self, a, k):
        out = self.one()
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def elem(self, expr):
        """Parse ``"x + 3/2*x*y - y^2"`` into an element."""
        if isinstance(expr, (tuple, list)):
            return _vec(expr, self.dim)
        return parse_element(self, str(expr))

    def format(self, a):
        terms = []
        for c, lab in zip(a, self.labels):
            if c:
                if lab == "1":
                    terms.append(str(c))
                else:
                    terms.append(lab if c == 1 else f"{c}*{lab}")
        return " + ".join(terms) if terms else "0"

    # the maximal ideal filtration

    @property
    def maximal_ideal(self):
        return Subspace(self.dim, [unit_vector(self.dim, i) for i in range(1, self.dim)], True)

    @property
    def mseq(self):
        """[m, m^2, ..., 0]; always ends with the zero subspace."""
        if self._mseq is None:
            seq = [self.maximal_ideal]
            while seq[-1].dim and len(seq) <= self.dim + 1:
                seq.append(self.ideal_product(self.maximal_ideal, seq[-1]))
            self._mseq = tuple(seq)
        return self._mseq

    def mpower(self, k):
        if k == 0:
            return Subspace.full(self.dim)
        seq = self.mseq
        return seq[k - 1] if k - 1 < len(seq) else Subspace.zero(self.dim)

    def ideal_product(self, a, b):
        vecs = [self.mul(u, v) for u in a.basis for v in b.basis]
        return Subspace(self.dim, vecs)

    def in_mpower(self, a, k):
        return self.mpower(k).contains(a)


def validate(Q):
    """Check the algebra axioms; return the least N with m^N = 0."""
    d = Q.dim
    if d == 0:
        raise ValidationError("the zero ring is not local")
    T = Q.table
    e = [unit_vector(d, i) for i in range(d)]
    for j in range(d):
        if T[0][j] != e[j] or T[j][0] != e[j]:
            raise ValidationError(f"b_0 does not act as the unit on b_{j} ({Q.labels[j]})")
    for i in range(d):
        for j in range(i + 1, d):
            if T[i][j] != T[j][i]:
                raise ValidationError(
                    f"not commutative at ({i}, {j}): {Q.labels[i]}*{Q.labels[j]}"
                )
    for i, j, k in product(range(1, d), repeat=3):
        left = Q.mul(T[i][j], e[k])
        right = Q.mul(e[i], T[j][k])
        if left != right:
            raise ValidationError(
                f"not associative at triple ({i}, {j}, {k}): "
                f"({Q.labels[i]}*{Q.labels[j]})*{Q.labels[k]} != "
                f"{Q.labels[i]}*({Q.labels[j]}*{Q.labels[k]})"
            )
    for i in range(1, d):
        for j in range(1, d):
            if T[i][j][0]:
                raise ValidationError(
                    f"span of b_1..b_{d - 1} is not an ideal: {Q.labels[i]}*{Q.labels[j]} "
                    "has a unit component"
                )
    seq = Q.mseq
    if seq[-1].dim:
        raise ValidationError("maximal ideal is not nilpotent; the algebra is not local")
    return len(seq) if d > 1 else 1


# parsing

_TERM = re.compile(r"\s*([+-]?)\s*([^+-]+)")


def parse_element(Q, text):
    text = text.strip()
    if not text:
        raise ParseError("empty element expression")
    where = {lab: i for i, lab in enumerate(Q.labels)}
    if Q.variables:
        for v in Q.variables:
            where.setdefault(v, None)
    out = Q.zero()
    pos = 0
    # signs inside rationals are not allowed, so splitting on +/- is safe
    for m in _TERM.finditer(text):
        if m.start() != pos and text[pos : m.start()].strip():
            raise ParseError(f"cannot parse element {text!r}", pos)
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        term = Q.scale(sign, Q.one())
        for factor in m.group(2).split("*"):
            factor = factor.strip()
            if not factor:
                raise ParseError(f"empty factor in {text!r}", m.start(2))
            base, _, exp = factor.partition("^")
            base = base.strip()
            try:
                k = int(exp) if exp else 1
            except ValueError:
                raise ParseError(f"bad exponent in {factor!r}", m.start(2)) from None
            if re.fullmatch(r"\d+(/\d+)?", base):
                term = Q.scale(Fraction(base) ** k, term)
            elif base in Q.labels:
                term = Q.mul(term, Q.power(Q.basis_elem(Q.labels.index(base)), k))
            elif Q.variables and base in Q.variables:
                term = Q.mul(term, Q.power(_variable_elem(Q, base), k))
            else:
                raise ParseError(f"unknown symbol {base!r} in {text!r}", m.start(2))
        out = Q.add(out, term)
    if text[pos:].strip():
        raise ParseError(f"trailing input in {text!r}", pos)
    return out


def _variable_elem(Q, var):
    k = Q.variables.index(var)
    want = tuple(1 if i == k else 0 for i in range(len(Q.variables)))
    for i, ex in enumerate(Q.exponents):
        if ex == want:
            return Q.basis_elem(i)
    return Q.zero()  # the variable itself is in the relations


# ingestion

def _parse_monomial(text, variables):
    exps = [0] * len(variables)
    for factor in str(text).replace(" ", "").split("*"):
        base, _, exp = factor.partition("^")
        if base not in variables:
            raise ParseError(f"unknown variable {base!r} in relation {text!r}")
        if exp and not exp.isdigit():
            raise ParseError(f"relation {text!r} is not a monomial")
        exps[variables.index(base)] += int(exp) if exp else 1
    return tuple(exps)


def _monomial_label(ex, variables):
    parts = []
    for v, e in zip(variables, ex):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) if parts else "1"


def from_monomial_quotient(variables, relations):
    """Q[variables]/(monomial relations); basis = standard monomials by (degree, lex)."""
    variables = list(variables)
    rels = [r if isinstance(r, tuple) else _parse_monomial(r, variables) for r in relations]
    rels = [tuple(r) for r in rels]
    n = len(variables)
    for k in range(n):
        if not any(sum(r) == r[k] and r[k] > 0 for r in rels):
            raise ValidationError(
                f"not Artinian: variable {variables[k]!r} has no pure power among the relations"
            )
    if any(sum(r) == 0 for r in rels):
        raise ValidationError("the relations contain 1; the quotient is the zero ring")

    def standard(ex):
        return not any(all(a >= b for a, b in zip(ex, r)) for r in rels)

    found = {tuple([0] * n)}
    frontier = [tuple([0] * n)]
    while frontier:
        nxt = []
        for ex in frontier:
            for k in range(n):
                e2 = tuple(e + (i == k) for i, e in enumerate(ex))
                if e2 not in found and standard(e2):
                    found.add(e2)
                    nxt.append(e2)
        frontier = nxt
    basis = sorted(found, key=lambda ex: (sum(ex), tuple(-e for e in ex)))
    index = {ex: i for i, ex in enumerate(basis)}
    d = len(basis)
    table = []
    for a in basis:
        row = []
        for b in basis:
            ab = tuple(x + y for x, y in zip(a, b))
            row.append(unit_vector(d, index[ab]) if ab in index else (ZERO,) * d)
        table.append(row)
    labels = [_monomial_label(ex, variables) for ex in basis]
    return LocalAlgebra(labels, table, variables=variables, exponents=basis)


def from_structure_constants(labels, table):
    """Ingest an arbitrary basis; re-base so that b_0 = 1 and the rest span m."""
    d = len(labels)
    table = [[_vec(table[i][j], d) for j in range(d)] for i in range(d)]
    adapted = all(table[0][j] == unit_vector(d, j) for j in range(d)) and all(
        not table[i][j][0] for i in range(1, d) for j in range(1, d)
    )
    if adapted:
        return LocalAlgebra(labels, table)
    return _rebase(labels, table)


def _rebase(labels, table):
    d = len(labels)
    # unit u: sum_i u_i b_i b_j = b_j for all j
    rows, rhs = [], []
    for j in range(d):
        for k in range(d):
            rows.append([table[i][j][k] for i in range(d)])
            rhs.append(ONE if j == k else ZERO)
    u = solve(Mat.from_rows(rows, d), rhs)
    if u is None:
        raise ValidationError("structure constants admit no unit element")
    # residue character: chi(b_i) = trace(L_i)/d on a local algebra
    chi = [sum(table[i][j][j] for j in range(d)) / d for i in range(d)]
    m = kernel_basis(Mat.from_rows([chi], d))
    new = [u] + list(m.basis)
    P = Mat.from_columns(new, d)
    if len(new) != d or len(image_basis(P)) != d:
        raise ValidationError("cannot find an adapted basis; the algebra is not local")
    tmp = LocalAlgebra(labels, table, check=False)
    newtab = []
    for a in new:
        row = []
        for b in new:
            c = solve(P, tmp.mul(a, b))
            row.append(c)
        newtab.append(row)
    names = []
    for k, v in enumerate(new):
        hits = [i for i, x in enumerate(v) if x]
        if len(hits) == 1 and v[hits[0]] == 1:
            names.append(labels[hits[0]])
        else:
            names.append("1" if k == 0 else f"m{k}")
    return LocalAlgebra(names, newtab)


# ideals and quotients

@dataclass(frozen=True)
class AlgIdeal:
    algebra: LocalAlgebra = field(repr=False)
    subspace: Subspace

    @property
    def dim(self):
        return self.subspace.dim

    def contains(self, a):
        return self.subspace.contains(a)

    def __eq__(self, other):
        return isinstance(other, AlgIdeal) and subspace_eq(self.subspace, other.subspace)

    __hash__ = None

    def is_proper(self):
        return not self.subspace.contains(self.algebra.one())


def principal_ideal(Q, a):
    return AlgIdeal(Q, image_basis(Q.mult_matrix(a)))


def ideal(Q, gens):
    vecs = []
    for g in gens:
        vecs.extend(image_basis(Q.mult_matrix(Q.elem(g))).basis)
    return AlgIdeal(Q, Subspace(Q.dim, vecs))


def annihilator(Q, f):
    return AlgIdeal(Q, kernel_basis(Q.mult_matrix(Q.elem(f))))


@dataclass
class ExactPairCheck:
    """Result of :func:`is_exact_pair`; truthy iff the pair is exact."""

    result: bool
    f_nonzero: bool
    g_nonzero: bool
    ann_f_in_g: bool
    g_in_ann_f: bool
    ann_g_in_f: bool
    f_in_ann_g: bool

    def __bool__(self):
        return self.result

    def as_dict(self):
        return {k: v for k, v in self.__dict__.items()}


def is_exact_pair(Q, f, g):
    f, g = Q.elem(f), Q.elem(g)
    fz, gz = any(f), any(g)
    if not (fz and gz):
        return ExactPairCheck(False, fz, gz, False, False, False, False)
    af, ag = annihilator(Q, f).subspace, annihilator(Q, g).subspace
    pf, pg = principal_ideal(Q, f).subspace, principal_ideal(Q, g).subspace
    c = (af.issubset(pg), pg.issubset(af), ag.issubset(pf), pf.issubset(ag))
    return ExactPairCheck(all(c), fz, gz, *c)


@dataclass(frozen=True)
class QuotientData:
    """Q -> Q/I with coefficient-level projection and section matrices."""

    parent: LocalAlgebra = field(repr=False)
    quotient: LocalAlgebra
    projection: Mat
    section: Mat
    ideal: AlgIdeal = field(repr=False)

    def project(self, a):
        return self.projection.apply(a)

    def lift(self, a):
        return self.section.apply(a)


def quotient(Q, I):
    if isinstance(I, (list, tuple)) and I and not isinstance(I[0], Fraction):
        I = ideal(Q, I)
    if not I.is_proper():
        raise PreconditionError("cannot form the quotient by the unit ideal")
    reps = quotient_basis(Subspace.full(Q.dim), I.subspace).basis
    k = len(reps)
    B = Mat.from_columns(list(reps) + list(I.subspace.basis), Q.dim)
    # B is invertible; projection = first k rows of its inverse
    inv_cols = [solve(B, unit_vector(Q.dim, j)) for j in range(Q.dim)]
    proj = Mat.from_columns([c[:k] for c in inv_cols], k)
    sect = Mat.from_columns(reps, Q.dim)
    table = [[proj.apply(Q.mul(a, b)) for b in reps] for a in reps]
    labels = []
    for v in reps:
        hits = [i for i, x in enumerate(v) if x]
        labels.append(Q.labels[hits[0]] if len(hits) == 1 else f"[{Q.format(v)}]")
    variables = exps = None
    if Q.exponents is not None and all(l in Q.labels for l in labels):
        variables = Q.variables
        exps = [Q.exponents[Q.labels.index(l)] for l in labels]
    R = LocalAlgebra(labels, table, variables=variables, exponents=exps)
    return QuotientData(Q, R, proj, sect, I)


def compose_quotients(q1, q2):
    """Given Q -> R (q1) and Q -> S (q2) with ker q1 in ker q2, the map R -> S."""
    if not q1.ideal.subspace.issubset(q2.ideal.subspace):
        raise PreconditionError("kernel of the first map is not contained in the second")
    return q2.projection @ q1.section


# Hilbert series and short rings

def hilbert_series_ring(Q):
    dims = [Q.mpower(k).dim for k in range(len(Q.mseq) + 1)] + [0]
    coeffs = [dims[k] - dims[k + 1] for k in range(len(dims) - 1)]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return TruncatedSeries(coeffs)


def is_short(Q):
    return Q.mpower(3).dim == 0


def _fm(Q, f):
    return Subspace(Q.dim, [Q.mul(f, v) for v in Q.maximal_ideal.basis])


def is_conca_generator(Q, f):
    if not is_short(Q):
        raise PreconditionError("Conca generators are defined for short rings (m^3 = 0)")
    f = Q.elem(f)
    if any(Q.mul(f, f)):
        return False
    return subspace_eq(_fm(Q, f), Q.mpower(2))


def embedding_dim(Q):
    return Q.mpower(1).dim - Q.mpower(2).dim


def check_ezhil_part1(Q, f, g):
    """For an exact pair in a short ring: H_Q = 1 + et + (e-1)t^2, fm = gm = m^2, f,g not in m^2."""
    f, g = Q.elem(f), Q.elem(g)
    if not is_short(Q):
        raise PreconditionError("the ring is not short (m^3 != 0)")
    if not is_exact_pair(Q, f, g):
        raise PreconditionError("(f, g) is not an exact pair of zero divisors")
    e = embedding_dim(Q)
    H = hilbert_series_ring(Q)
    expect = TruncatedSeries([1, e, e - 1], 2)
    report = {
        "e": e,
        "hilbert": list(H.coeffs),
        "hilbert_ok": TruncatedSeries(H.coeffs, 2).coeffs == expect.coeffs and H.n <= 2,
        "fm_eq_m2": subspace_eq(_fm(Q, f), Q.mpower(2)),
        "gm_eq_m2": subspace_eq(_fm(Q, g), Q.mpower(2)),
        "f_not_in_m2": not Q.in_mpower(f, 2),
        "g_not_in_m2": not Q.in_mpower(g, 2),
    }
    bad = [k for k, v in report.items() if v is False]
    if bad:
        raise TheoremViolation(f"short-ring exact-pair conclusions failed: {bad}")
    return report


def check_ezhil_part2(Q, f):
    """With H_Q = 1 + et + (e-1)t^2: (f, f) exact iff f is a Conca generator."""
    if not is_short(Q):
        raise PreconditionError("the ring is not short (m^3 != 0)")
    e = embedding_dim(Q)
    H = hilbert_series_ring(Q)
    if H.n > 2 or TruncatedSeries(H.coeffs, 2).coeffs != TruncatedSeries([1, e, e - 1], 2).coeffs:
        raise PreconditionError(f"Hilbert series {list(H.coeffs)} is not 1 + et + (e-1)t^2")
    exact = bool(is_exact_pair(Q, f, f))
    conca = is_conca_generator(Q, f)
    if exact != conca:
        raise TheoremViolation(f"exact={exact} but conca={conca} for f = {Q.format(Q.elem(f))}")
    return exact
