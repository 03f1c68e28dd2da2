"""Exact dense linear algebra over Q.

Entries are :class:`fractions.Fraction`. Matrices keep sparse rows
internally but behave as dense values; nothing here uses floating point.
"""

from fractions import Fraction
from ._backend import BACKEND, matmul_rows, rref_rows

__all__ = [
    "BACKEND",
    "Fraction",
    "Mat",
    "Subspace",
    "StructuralError",
    "rref",
    "kernel_basis",
    "image_basis",
    "rank",
    "solve",
    "quotient_basis",
    "subspace_eq",
    "intersect",
    "span",
    "zero_vector",
    "unit_vector",
    "inverse",
]

ZERO = Fraction(0)
ONE = Fraction(1)


class StructuralError(ValueError):
    """Dimension mismatch or otherwise malformed linear-algebra input."""


def _q(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def zero_vector(n):
    return (ZERO,) * n


def unit_vector(n, i):
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


class Mat:
    """An immutable ``nrows x ncols`` matrix over Q."""

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, nrows, ncols, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = tuple({} for _ in range(nrows))
        else:
            rows = tuple(rows)
            if len(rows) != nrows:
                raise StructuralError(f"expected {nrows} rows, got {len(rows)}")
        self._rows = rows

    # construction

    @classmethod
    def from_rows(cls, rows, ncols=None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        out = []
        for r in rows:
            if len(r) != ncols:
                raise StructuralError(f"ragged row of length {len(r)}, expected {ncols}")
            out.append({j: q for j, q in ((j, _q(x)) for j, x in enumerate(r)) if q})
        return cls(len(rows), ncols, out)

    @classmethod
    def from_columns(cls, cols, nrows):
        rows = [{} for _ in range(nrows)]
        cols = list(cols)
        for j, c in enumerate(cols):
            if len(c) != nrows:
                raise StructuralError(f"column of length {len(c)}, expected {nrows}")
            for i, x in enumerate(c):
                if x:
                    rows[i][j] = _q(x)
        return cls(nrows, len(cols), rows)

    @classmethod
    def from_dict(cls, nrows, ncols, entries):
        rows = [{} for _ in range(nrows)]
        for (i, j), x in entries.items():
            if x:
                rows[i][j] = _q(x)
        return cls(nrows, ncols, rows)

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [{i: ONE} for i in range(n)])

    # access

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def sparse_rows(self):
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i].get(j, ZERO)

    def row(self, i):
        r = self._rows[i]
        return tuple(r.get(j, ZERO) for j in range(self.ncols))

    def column(self, j):
        return tuple(r.get(j, ZERO) for r in self._rows)

    def columns(self):
        t = self.T
        return [t.row(i) for i in range(t.nrows)]

    def tolist(self):
        return [list(self.row(i)) for i in range(self.nrows)]

    def nnz(self):
        return sum(len(r) for r in self._rows)

    def is_zero(self):
        return not any(self._rows)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    __hash__ = None

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.nrows))
        return f"Mat({self.nrows}x{self.ncols}: [{body}])"

    # arithmetic

    @property
    def T(self):
        rows = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self._rows):
            for j, x in r.items():
                rows[j][i] = x
        return Mat(self.ncols, self.nrows, rows)

    def __matmul__(self, other):
        if isinstance(other, Mat):
            if self.ncols != other.nrows:
                raise StructuralError(f"cannot multiply {self.shape} by {other.shape}")
            return Mat(self.nrows, other.ncols, matmul_rows(self._rows, other._rows, other.ncols))
        return self.apply(other)

    def apply(self, v):
        if len(v) != self.ncols:
            raise StructuralError(f"vector of length {len(v)} against {self.shape}")
        return tuple(sum((x * v[j] for j, x in r.items() if v[j]), ZERO) for r in self._rows)

    def _combine(self, other, sign):
        if self.shape != other.shape:
            raise StructuralError(f"shape mismatch {self.shape} vs {other.shape}")
        rows = []
        for a, b in zip(self._rows, other._rows):
            r = dict(a)
            for j, x in b.items():
                y = r.get(j, ZERO) + sign * x
                if y:
                    r[j] = y
                else:
                    r.pop(j, None)
            rows.append(r)
        return Mat(self.nrows, self.ncols, rows)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return Mat(self.nrows, self.ncols, [{j: -x for j, x in r.items()} for r in self._rows])

    def scale(self, c):
        c = _q(c)
        if not c:
            return Mat.zeros(self.nrows, self.ncols)
        return Mat(self.nrows, self.ncols, [{j: c * x for j, x in r.items()} for r in self._rows])

    def submatrix(self, rows, cols):
        cols = list(cols)
        where = {c: k for k, c in enumerate(cols)}
        out = []
        for i in rows:
            r = self._rows[i]
            out.append({where[j]: x for j, x in r.items() if j in where})
        return Mat(len(out), len(cols), out)

    @staticmethod
    def block(grid, row_sizes=None, col_sizes=None):
        """Assemble a block matrix; ``None`` blocks are zero."""
        nr, nc = len(grid), len(grid[0]) if grid else 0
        row_sizes = list(row_sizes) if row_sizes is not None else [None] * nr
        col_sizes = list(col_sizes) if col_sizes is not None else [None] * nc
        for bi, brow in enumerate(grid):
            for bj, blk in enumerate(brow):
                if blk is None:
                    continue
                for sizes, k, got in ((row_sizes, bi, blk.nrows), (col_sizes, bj, blk.ncols)):
                    if sizes[k] is None:
                        sizes[k] = got
                    elif sizes[k] != got:
                        raise StructuralError("inconsistent block sizes")
        if None in row_sizes or None in col_sizes:
            raise StructuralError("cannot infer block sizes")
        col_off = [sum(col_sizes[:k]) for k in range(nc)]
        rows = []
        for bi, brow in enumerate(grid):
            for i in range(row_sizes[bi]):
                r = {}
                for bj, blk in enumerate(brow):
                    if blk is not None:
                        off = col_off[bj]
                        for j, x in blk._rows[i].items():
                            r[off + j] = x
                rows.append(r)
        return Mat(sum(row_sizes), sum(col_sizes), rows)

    @staticmethod
    def hstack(mats, nrows=None):
        mats = list(mats)
        if not mats:
            return Mat(nrows or 0, 0)
        return Mat.block([mats])

    @staticmethod
    def vstack(mats, ncols=None):
        mats = list(mats)
        if not mats:
            return Mat(0, ncols or 0)
        return Mat.block([[m] for m in mats])

    @staticmethod
    def kron(a, b):
        rows = []
        for ra in a._rows:
            for i in range(b.nrows):
                rb = b._rows[i]
                r = {}
                if rb:
                    for ja, x in ra.items():
                        off = ja * b.ncols
                        for jb, y in rb.items():
                            r[off + jb] = x * y
                rows.append(r)
        return Mat(a.nrows * b.nrows, a.ncols * b.ncols, rows)


def rref(m):
    """Reduced row-echelon form (same shape, zero rows last) and pivot columns."""
    rows, pivots = rref_rows(m.sparse_rows, m.ncols)
    rows = list(rows) + [{} for _ in range(m.nrows - len(rows))]
    return Mat(m.nrows, m.ncols, rows), list(pivots)


def rank(m):
    return len(rref_rows(m.sparse_rows, m.ncols)[1])


class Subspace:
    """A subspace of Q^n given by a basis of linearly independent vectors."""

    __slots__ = ("ambient_dim", "basis", "_ech")

    def __init__(self, ambient_dim, basis=(), independent=False):
        self.ambient_dim = ambient_dim
        basis = [tuple(_q(x) for x in v) for v in basis]
        for v in basis:
            if len(v) != ambient_dim:
                raise StructuralError(f"vector of length {len(v)} in {ambient_dim}-space")
        if not independent and basis:
            cols = Mat.from_columns(basis, ambient_dim)
            basis = [basis[c] for c in rref_rows(cols.sparse_rows, cols.ncols)[1]]
        self.basis = tuple(basis)
        self._ech = None

    @classmethod
    def full(cls, n):
        return cls(n, [unit_vector(n, i) for i in range(n)], independent=True)

    @classmethod
    def zero(cls, n):
        return cls(n, (), independent=True)

    @property
    def dim(self):
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def _echelon(self):
        # rows [b_i | e_i] reduced; first k columns carry the echelon, the rest the transform
        if self._ech is None:
            n, k = self.ambient_dim, self.dim
            rows = []
            for i, v in enumerate(self.basis):
                r = {j: x for j, x in enumerate(v) if x}
                r[n + i] = ONE
                rows.append(r)
            red, piv = rref_rows(rows, n + k)
            ech = [{j: x for j, x in r.items() if j < n} for r in red]
            tr = [{j - n: x for j, x in r.items() if j >= n} for r in red]
            self._ech = (ech, piv, tr)
        return self._ech

    def reduce(self, v):
        """Residual of ``v`` after removing its component along the echelon rows."""
        ech, piv, _ = self._echelon()
        v = list(v)
        for r, p in zip(ech, piv):
            c = v[p]
            if c:
                for j, x in r.items():
                    v[j] -= c * x
        return tuple(v)

    def contains(self, v):
        if len(v) != self.ambient_dim:
            raise StructuralError("dimension mismatch")
        return not any(self.reduce(v))

    __contains__ = contains

    def coords(self, v):
        """Coefficients of ``v`` in ``self.basis``; ``None`` when v is outside."""
        ech, piv, tr = self._echelon()
        cs = [v[p] for p in piv]
        if any(self.reduce(v)):
            return None
        out = [ZERO] * self.dim
        for c, t in zip(cs, tr):
            if c:
                for i, x in t.items():
                    out[i] += c * x
        return tuple(out)

    def issubset(self, other):
        return all(other.contains(v) for v in self.basis)

    __le__ = issubset

    def __add__(self, other):
        if self.ambient_dim != other.ambient_dim:
            raise StructuralError("dimension mismatch")
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def matrix(self):
        """Basis vectors as the columns of a matrix."""
        return Mat.from_columns(self.basis, self.ambient_dim)

    def image(self, m):
        return Subspace(m.nrows, [m.apply(v) for v in self.basis])


def span(vectors, n):
    return Subspace(n, vectors)


def kernel_basis(m):
    """Null space basis ordered by free-column index."""
    red, piv = rref_rows(m.sparse_rows, m.ncols)
    pset = set(piv)
    basis = []
    for free in range(m.ncols):
        if free in pset:
            continue
        v = [ZERO] * m.ncols
        v[free] = ONE
        for r, p in zip(red, piv):
            x = r.get(free)
            if x:
                v[p] = -x
        basis.append(tuple(v))
    return Subspace(m.ncols, basis, independent=True)


def image_basis(m):
    """Column space, spanned by the pivot columns of ``m``."""
    piv = rref_rows(m.sparse_rows, m.ncols)[1]
    return Subspace(m.nrows, [m.column(c) for c in piv], independent=True)


def solve(m, b):
    """Some v with m v = b (free variables set to zero), or None."""
    if len(b) != m.nrows:
        raise StructuralError(f"right-hand side of length {len(b)} against {m.shape}")
    rows = [dict(r) for r in m.sparse_rows]
    for i, x in enumerate(b):
        x = _q(x)
        if x:
            rows[i][m.ncols] = x
    red, piv = rref_rows(rows, m.ncols + 1)
    if piv and piv[-1] == m.ncols:
        return None
    v = [ZERO] * m.ncols
    for r, p in zip(red, piv):
        v[p] = r.get(m.ncols, ZERO)
    return tuple(v)


def quotient_basis(ambient, sub):
    """Coset representatives of ambient/sub, chosen greedily from ambient.basis."""
    if ambient.ambient_dim != sub.ambient_dim:
        raise StructuralError("dimension mismatch")
    k = sub.dim
    cols = Mat.from_columns(list(sub.basis) + list(ambient.basis), ambient.ambient_dim)
    piv = rref_rows(cols.sparse_rows, cols.ncols)[1]
    picks = [ambient.basis[c - k] for c in piv if c >= k]
    return Subspace(ambient.ambient_dim, picks, independent=True)


def subspace_eq(a, b):
    if a.ambient_dim != b.ambient_dim:
        raise StructuralError("dimension mismatch")
    return a.dim == b.dim and a.issubset(b)


def intersect(a, b):
    if a.ambient_dim != b.ambient_dim:
        raise StructuralError("dimension mismatch")
    if not a.dim or not b.dim:
        return Subspace.zero(a.ambient_dim)
    cols = Mat.from_columns(list(a.basis) + [tuple(-x for x in v) for v in b.basis], a.ambient_dim)
    vecs = []
    for w in kernel_basis(cols).basis:
        v = [ZERO] * a.ambient_dim
        for c, u in zip(w[: a.dim], a.basis):
            if c:
                for j, x in enumerate(u):
                    v[j] += c * x
        vecs.append(tuple(v))
    return Subspace(a.ambient_dim, vecs)



def inverse(m):
    """Inverse of a square invertible matrix."""
    n = m.nrows
    if m.ncols != n:
        raise StructuralError(f"cannot invert a {m.shape} matrix")
    rows = []
    for i, r in enumerate(m.sparse_rows):
        r = dict(r)
        r[n + i] = ONE
        rows.append(r)
    red, piv = rref_rows(rows, 2 * n)
    if len(piv) < n or piv[n - 1] >= n:
        raise StructuralError("matrix is singular")
    return Mat(n, n, [{j - n: x for j, x in r.items() if j >= n} for r in red])
