"""Chain complexes, homology, shifts, mapping cones and long exact sequences.

A :class:`Complex` lives in degrees ``lo..hi``; it is zero below ``lo`` and
unknown above ``hi`` unless ``complete`` is set. Homology in degree n needs
the differentials d_n and d_{n+1}, so a truncated complex has valid homology
only through ``hi - 1``.
"""

import math
from dataclasses import dataclass, field

from .errors import PreconditionError, TheoremViolation, TruncationError
from .linalg import Mat, Subspace, image_basis, kernel_basis, quotient_basis, rank, solve


class Complex:
    """Spaces ``dims[n]`` and differentials ``diffs[n]: C_n -> C_{n-1}``.

    Differentials may be rational matrices or free maps; homology is only
    available for the former.
    """

    def __init__(self, lo, hi, dims, diffs, complete=False, zero=None):
        self.lo, self.hi = lo, hi
        self.dims = {n: dims[n] for n in range(lo, hi + 1)}
        self.diffs = dict(diffs)
        self.complete = complete
        self._zero = zero or Mat.zeros
        self._hcache = {}
        for n in range(lo + 1, hi + 1):
            d = self.diffs.get(n)
            if d is None:
                d = self.diffs[n] = self._zero(self.dims[n - 1], self.dims[n])
            if d.shape != (self.dims[n - 1], self.dims[n]):
                raise PreconditionError(
                    f"differential in degree {n} has shape {d.shape}, "
                    f"expected {(self.dims[n - 1], self.dims[n])}"
                )

    def __repr__(self):
        ds = [self.dims[n] for n in range(self.lo, self.hi + 1)]
        return f"Complex(lo={self.lo}, hi={self.hi}, dims={ds})"

    def dim(self, n):
        if n < self.lo:
            return 0
        if n > self.hi:
            if self.complete:
                return 0
            raise TruncationError(f"degree {n} is beyond the truncation at {self.hi}")
        return self.dims[n]

    def d(self, n):
        """The differential C_n -> C_{n-1}."""
        if self.lo < n <= self.hi:
            return self.diffs[n]
        return self._zero(self.dim(n - 1), self.dim(n))

    @property
    def top_valid(self):
        """Highest degree whose homology is determined."""
        return math.inf if self.complete else self.hi - 1

    def degrees(self):
        return range(self.lo, self.hi + 1)


def verify_complex(C):
    for n in range(C.lo + 2, C.hi + 1):
        if not (C.d(n - 1) @ C.d(n)).is_zero():
            return False
    return True


@dataclass
class HomologyClassSpace:
    degree: int
    cycles: Subspace
    boundaries: Subspace
    reps: tuple
    _span: Subspace = field(default=None, repr=False)

    @property
    def dim(self):
        return len(self.reps)

    def coords(self, z):
        """Coordinates of the class of the cycle ``z`` in the chosen representatives."""
        if self._span is None:
            self._span = Subspace(self.cycles.ambient_dim,
                                  list(self.reps) + list(self.boundaries.basis), True)
        c = self._span.coords(z)
        if c is None:
            raise PreconditionError(f"vector is not a cycle in degree {self.degree}")
        return c[: self.dim]


def homology(C, n):
    if n < C.lo or (C.complete and n > C.hi):
        return HomologyClassSpace(n, Subspace.zero(0), Subspace.zero(0), ())
    if n > C.top_valid:
        raise TruncationError(
            f"homology in degree {n} needs the differential beyond the truncation at {C.hi}"
        )
    if n in C._hcache:
        return C._hcache[n]
    Z = kernel_basis(C.d(n))
    B = image_basis(C.d(n + 1)) if n + 1 <= C.hi else Subspace.zero(C.dim(n))
    reps = quotient_basis(Z, B).basis
    H = HomologyClassSpace(n, Z, B, tuple(reps))
    C._hcache[n] = H
    return H


def betti(C, n):
    """dim H_n via ranks only."""
    if n > C.top_valid:
        raise TruncationError(f"degree {n} is beyond the valid window of {C}")
    return C.dim(n) - rank(C.d(n)) - (rank(C.d(n + 1)) if n + 1 <= C.hi else 0)


def _sign(k):
    return -1 if k % 2 else 1


def shift(C, i):
    """(Sigma^i C)_n = C_{n-i} with differential (-1)^i d."""
    s = _sign(i)
    dims = {n + i: C.dims[n] for n in C.degrees()}
    diffs = {n + i: C.diffs[n].scale(s) for n in C.diffs}
    return Complex(C.lo + i, C.hi + i, dims, diffs, C.complete, C._zero)


def restrict(C, hi):
    """Truncate a complex at a lower top degree."""
    hi = min(hi, C.hi)
    return Complex(C.lo, hi, C.dims, {n: C.diffs[n] for n in range(C.lo + 1, hi + 1)},
                   C.complete and hi == C.hi, C._zero)


class CxMap:
    """Components ``comps[n]: C_n -> D_{n+degree}``; missing components are zero."""

    def __init__(self, source, target, comps, degree=0):
        self.source, self.target = source, target
        self.degree = degree
        self.comps = dict(comps)

    def __repr__(self):
        return f"CxMap(degree={self.degree}, {self.source} -> {self.target})"

    @property
    def lo(self):
        return max(self.source.lo, self.target.lo - self.degree)

    @property
    def hi(self):
        return min(self.source.hi, self.target.hi - self.degree)

    def at(self, n):
        m = self.comps.get(n)
        if m is None:
            m = self.source._zero(self._tdim(n), self._sdim(n))
        return m

    def _sdim(self, n):
        return self.source.dim(n) if n <= self.source.hi else 0

    def _tdim(self, n):
        k = n + self.degree
        return self.target.dim(k) if k <= self.target.hi else 0

    def square_defect(self, n):
        """d_D f_n - (-1)^degree f_{n-1} d_C; zero for a chain map."""
        k = n + self.degree
        return self.target.d(k) @ self.at(n) - (self.at(n - 1) @ self.source.d(n)).scale(
            _sign(self.degree)
        )

    def is_chain_map(self, top=None):
        top = self.hi if top is None else min(top, self.hi)
        return all(self.square_defect(n).is_zero() for n in range(self.lo + 1, top + 1))

    def compose(self, other):
        """self after other."""
        comps = {}
        for n in other.comps:
            k = n + other.degree
            if k in self.comps:
                comps[n] = self.comps[k] @ other.comps[n]
        return CxMap(other.source, self.target, comps, self.degree + other.degree)

    def homology_map(self, n):
        """Matrix of H_n(source) -> H_{n+degree}(target) in the chosen representatives."""
        Hs = homology(self.source, n)
        Ht = homology(self.target, n + self.degree)
        cols = [Ht.coords(self.at(n).apply(z)) for z in Hs.reps]
        return Mat.from_columns(cols, Ht.dim)


def zero_map(source, target, degree=0):
    return CxMap(source, target, {}, degree)


def identity_map(C):
    return CxMap(C, C, {n: Mat.identity(C.dims[n]) for n in C.degrees()})


def cone(f):
    """cone(f)_n = Y_n + X_{n-1}, d(y, x) = (d_Y y - f x, -d_X x).

    ``f`` is a degree-0 chain map X -> Y; works for rational and free maps.
    """
    if f.degree != 0:
        raise PreconditionError("cone expects a degree-0 chain map")
    if not f.is_chain_map():
        raise PreconditionError("cone input is not a chain map")
    X, Y = f.source, f.target
    lo = min(Y.lo, X.lo + 1)
    complete = X.complete and Y.complete
    hi = max(Y.hi, X.hi + 1) if complete else min(Y.hi, X.hi + 1)
    block = _block_of(f, X, Y)

    def ydim(n):
        return Y.dim(n) if n >= Y.lo else 0

    def xdim(n):
        return X.dim(n) if n >= X.lo else 0

    dims = {n: ydim(n) + xdim(n - 1) for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo + 1, hi + 1):
        grid = [[Y.d(n) if ydim(n) and ydim(n - 1) else None,
                 -f.at(n - 1) if xdim(n - 1) and ydim(n - 1) else None],
                [None, -X.d(n - 1) if xdim(n - 1) and xdim(n - 2) else None]]
        rs, cs = [ydim(n - 1), xdim(n - 2)], [ydim(n), xdim(n - 1)]
        diffs[n] = _assemble(block, X._zero, grid, rs, cs)
    return Complex(lo, hi, dims, diffs, complete, zero=X._zero)


def _block_of(f, X, Y):
    for c in (f.comps.values(), X.diffs.values(), Y.diffs.values()):
        for m in c:
            return type(m).block
    return Mat.block


def _assemble(block, zero, grid, rs, cs):
    if sum(rs) == 0 or sum(cs) == 0 or all(b is None for r in grid for b in r):
        return zero(sum(rs), sum(cs))
    return block(grid, rs, cs)


def cone_inclusion(Y, C):
    """Y -> cone(f), inclusion of the first block."""
    comps = {}
    for n in C.degrees():
        if n >= Y.lo and n <= Y.hi:
            comps[n] = Mat.vstack([Mat.identity(Y.dims[n]),
                                   Mat.zeros(C.dims[n] - Y.dims[n], Y.dims[n])], Y.dims[n])
    return CxMap(Y, C, comps)


def cone_projection(X, C):
    """cone(f) -> Sigma X, projection onto the second block."""
    SX = shift(X, 1)
    comps = {}
    for n in C.degrees():
        if SX.lo <= n <= SX.hi:
            k = SX.dims[n]
            comps[n] = Mat.hstack([Mat.zeros(k, C.dims[n] - k), Mat.identity(k)], k)
    return CxMap(C, SX, comps)


# short and long exact sequences

def ses_of_complexes_exact(i, p, top=None):
    """0 -> A -i-> B -p-> C -> 0 degreewise exact and both maps chain maps."""
    top = min(i.hi, p.hi) if top is None else top
    if not (i.is_chain_map(top) and p.is_chain_map(top)):
        return False
    for n in range(max(i.lo, p.lo), top + 1):
        a, b = i.at(n), p.at(n)
        if not (b @ a).is_zero():
            return False
        if rank(a) != a.ncols or rank(b) != b.nrows:
            return False
        if a.ncols + b.nrows != b.ncols:
            return False
    return True


def connecting_map(i, p, n):
    """H_n(C) -> H_{n-1}(A) by lifting along p, applying d_B and pulling back along i."""
    A, B, C = i.source, i.target, p.target
    HC = homology(C, n)
    HA = homology(A, n - 1)
    pn = p.at(n)
    i_prev = i.at(n - 1)
    cols = []
    for z in HC.reps:
        b = _solve(pn, z)
        db = B.d(n).apply(b)
        a = _solve(i_prev, db)
        cols.append(HA.coords(a))
    return Mat.from_columns(cols, HA.dim)


def _solve(m, v):
    x = solve(m, v)
    if x is None:
        raise TheoremViolation("zigzag lift failed; the sequence is not exact")
    return x


@dataclass
class LongExactSequence:
    """Nodes ``[(label, degree, dim)]`` and ``maps[k]: node k -> node k+1``.

    Nodes run from high degree to low: H_n(A), H_n(B), H_n(C), H_{n-1}(A), ...
    ``verified_top`` is the highest degree whose nodes are interior to the window.
    """

    nodes: list
    maps: list
    verified_top: int
    by_degree: dict = field(default_factory=dict)

    def exactness(self):
        """Exactness at interior nodes; nodes above ``verified_top`` are marked unverifiable."""
        rep = exactness_report(self.maps, [n[2] for n in self.nodes])
        for r in rep:
            label, degree, _ = self.nodes[r["position"]]
            r["node"] = f"H_{degree}({label})"
            r["degree"] = degree
            r["status"] = "unverifiable at truncation" if degree > self.verified_top else (
                "exact" if r["im_in_ker"] and r["ker_in_im"] else "defect")
        return rep

    def verified_defects(self):
        return [r for r in self.exactness() if r["status"] == "defect"]


def les_from_ses(i, p, top, bottom=None, labels=("A", "B", "C")):
    """Long exact sequence from degree ``top`` down to ``bottom``.

    ``top`` must not exceed the valid homology window of all three complexes.
    """
    A, B, C = i.source, i.target, p.target
    valid = min(A.top_valid, B.top_valid, C.top_valid)
    if top > valid:
        raise TruncationError(f"degree {top} is outside the valid window ending at {valid}")
    bottom = min(A.lo, B.lo, C.lo) if bottom is None else bottom
    nodes, maps, by_degree = [], [], {}
    for n in range(top, bottom - 1, -1):
        for lab, X in zip(labels, (A, B, C)):
            nodes.append((lab, n, homology(X, n).dim))
        hi_, hp = i.homology_map(n), p.homology_map(n)
        maps.extend((hi_, hp))
        conn = None
        if n - 1 >= bottom:
            conn = connecting_map(i, p, n)
            maps.append(conn)
        by_degree[n] = (hi_, hp, conn)
    return LongExactSequence(nodes, maps, min(valid - 1, top), by_degree)


def exactness_report(maps, dims):
    """Per interior position k (between maps[k-1] and maps[k]): inclusion checks and defects."""
    out = []
    for k in range(1, len(maps)):
        f, g = maps[k - 1], maps[k]
        composite_zero = (g @ f).is_zero()
        rk_f = rank(f)
        ker_g = dims[k] - rank(g)
        out.append({
            "position": k,
            "im_in_ker": composite_zero,
            "ker_in_im": composite_zero and ker_g == rk_f,
            "defect": ker_g - rk_f if composite_zero else None,
        })
    return out


def is_exact(report):
    return all(r["im_in_ker"] and r["ker_in_im"] for r in report)


def euler_characteristic(C, lo, hi):
    return sum((-1) ** n * C.dim(n) for n in range(lo, hi + 1))


def tensor_with_module(F, N):
    """A complex of free maps tensored with a module; a rational complex."""
    dims = {n: F.dims[n] * N.dim for n in F.degrees()}
    diffs = {n: F.diffs[n].tensor(N) for n in F.diffs}
    return Complex(F.lo, F.hi, dims, diffs, F.complete)


def from_matrices(mats, lo=0, complete=True):
    """Complex from [d_{lo+1}, d_{lo+2}, ...]."""
    if not mats:
        raise PreconditionError("need at least one differential")
    dims = {lo: mats[0].nrows}
    diffs = {}
    for k, m in enumerate(mats):
        n = lo + 1 + k
        dims[n] = m.ncols
        diffs[n] = m
    return Complex(lo, lo + len(mats), dims, diffs, complete)
