"""Maps between finite-rank free modules over a local algebra.

A map Q^c -> Q^r is stored as ``sum_a b_a * C_a`` with rational r x c
matrices ``C_a``; tensoring with a module N gives ``sum_a C_a kron rho_N(b_a)``.
"""

from fractions import Fraction

from .errors import ValidationError
from .linalg import Mat, StructuralError


class FreeMap:
    __slots__ = ("algebra", "nrows", "ncols", "parts")

    def __init__(self, algebra, nrows, ncols, parts=None):
        self.algebra = algebra
        self.nrows = nrows
        self.ncols = ncols
        clean = {}
        for a, m in (parts or {}).items():
            if m.shape != (nrows, ncols):
                raise StructuralError(f"part {a} has shape {m.shape}, expected {(nrows, ncols)}")
            if not m.is_zero():
                clean[a] = m
        self.parts = clean

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __repr__(self):
        return f"FreeMap({self.nrows}x{self.ncols} over dim {self.algebra.dim})"

    # construction

    @classmethod
    def zeros(cls, algebra, nrows, ncols):
        return cls(algebra, nrows, ncols)

    @classmethod
    def identity(cls, algebra, n):
        return cls(algebra, n, n, {0: Mat.identity(n)})

    @classmethod
    def scalar(cls, algebra, elem, n):
        """Multiplication by an algebra element on Q^n."""
        return cls(algebra, n, n, {a: Mat.identity(n).scale(c) for a, c in enumerate(elem) if c})

    @classmethod
    def from_entries(cls, algebra, nrows, ncols, entries):
        """``entries`` maps (i, j) to a coefficient vector."""
        acc = {}
        for (i, j), v in entries.items():
            for a, c in enumerate(v):
                if c:
                    acc.setdefault(a, {})[(i, j)] = c
        return cls(algebra, nrows, ncols,
                   {a: Mat.from_dict(nrows, ncols, e) for a, e in acc.items()})

    @classmethod
    def from_columns(cls, algebra, nrows, columns):
        """Columns given as lists of coefficient vectors (one per row)."""
        entries = {}
        for j, col in enumerate(columns):
            for i, v in enumerate(col):
                if any(v):
                    entries[(i, j)] = v
        return cls.from_entries(algebra, nrows, len(columns), entries)

    # access

    def entry(self, i, j):
        v = [Fraction(0)] * self.algebra.dim
        for a, m in self.parts.items():
            v[a] = m[i, j]
        return tuple(v)

    def column(self, j):
        return [self.entry(i, j) for i in range(self.nrows)]

    def is_zero(self):
        return not self.parts

    def __eq__(self, other):
        if not isinstance(other, FreeMap):
            return NotImplemented
        return self.shape == other.shape and self.parts == other.parts

    __hash__ = None

    # arithmetic

    def _same(self, other):
        if other.algebra is not self.algebra or other.shape != self.shape:
            raise StructuralError(f"cannot combine {self} with {other}")

    def __add__(self, other):
        self._same(other)
        parts = dict(self.parts)
        for a, m in other.parts.items():
            parts[a] = parts[a] + m if a in parts else m
        return FreeMap(self.algebra, self.nrows, self.ncols, parts)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return FreeMap(self.algebra, self.nrows, self.ncols,
                       {a: -m for a, m in self.parts.items()})

    def scale(self, c):
        c = Fraction(c)
        return FreeMap(self.algebra, self.nrows, self.ncols,
                       {a: m.scale(c) for a, m in self.parts.items()} if c else {})

    def mul_elem(self, elem):
        """Entrywise product with an algebra element."""
        return FreeMap.scalar(self.algebra, elem, self.nrows) @ self

    def __matmul__(self, other):
        if not isinstance(other, FreeMap):
            return NotImplemented
        if self.ncols != other.nrows or self.algebra is not other.algebra:
            raise StructuralError(f"cannot compose {self} with {other}")
        T = self.algebra.table
        acc = {}
        for a, A in self.parts.items():
            for b, B in other.parts.items():
                prod = None
                for k, c in enumerate(T[a][b]):
                    if c:
                        if prod is None:
                            prod = A @ B
                        term = prod.scale(c)
                        acc[k] = acc[k] + term if k in acc else term
        return FreeMap(self.algebra, self.nrows, other.ncols, acc)

    def submatrix(self, rows, cols):
        rows, cols = list(rows), list(cols)
        return FreeMap(self.algebra, len(rows), len(cols),
                       {a: m.submatrix(rows, cols) for a, m in self.parts.items()})

    @staticmethod
    def block(grid, row_sizes=None, col_sizes=None):
        alg = next(b.algebra for r in grid for b in r if b is not None)
        keys = sorted({a for r in grid for b in r if b is not None for a in b.parts})
        rs = list(row_sizes) if row_sizes else [None] * len(grid)
        cs = list(col_sizes) if col_sizes else [None] * len(grid[0])
        for i, r in enumerate(grid):
            for j, b in enumerate(r):
                if b is not None:
                    rs[i] = b.nrows if rs[i] is None else rs[i]
                    cs[j] = b.ncols if cs[j] is None else cs[j]
        parts = {}
        for a in keys:
            sub = [[b.parts.get(a, Mat.zeros(*b.shape)) if b is not None else None for b in r]
                   for r in grid]
            parts[a] = Mat.block(sub, rs, cs)
        return FreeMap(alg, sum(rs), sum(cs), parts)

    # change of rings

    def tensor(self, N):
        """The Q-linear map Q^c tensor N -> Q^r tensor N as a rational matrix."""
        if N.algebra is not self.algebra:
            raise ValidationError("module and free map live over different algebras")
        out = Mat.zeros(self.nrows * N.dim, self.ncols * N.dim)
        for a, m in self.parts.items():
            out = out + Mat.kron(m, N.action[a])
        return out

    def realize(self):
        """Matrix of the map on the Q-vector spaces Q^c -> Q^r (index gen*d + basis)."""
        Q = self.algebra
        out = Mat.zeros(self.nrows * Q.dim, self.ncols * Q.dim)
        for a, m in self.parts.items():
            out = out + Mat.kron(m, Q.lmat(a))
        return out

    def project(self, qd):
        """Reduce entries along Q -> Q/I."""
        if qd.parent is not self.algebra:
            raise ValidationError("quotient map does not start at this algebra")
        P = qd.projection
        acc = {}
        for a, m in self.parts.items():
            for j, c in enumerate(P.column(a)):
                if c:
                    term = m.scale(c)
                    acc[j] = acc[j] + term if j in acc else term
        return FreeMap(qd.quotient, self.nrows, self.ncols, acc)

    def lift(self, qd):
        """Lift entries along the section of Q -> Q/I."""
        if qd.quotient is not self.algebra:
            raise ValidationError("quotient map does not end at this algebra")
        P = qd.section
        acc = {}
        for a, m in self.parts.items():
            for j, c in enumerate(P.column(a)):
                if c:
                    term = m.scale(c)
                    acc[j] = acc[j] + term if j in acc else term
        return FreeMap(qd.parent, self.nrows, self.ncols, acc)

    def entries_in(self, subspace):
        """True when every entry lies in the given subspace of the algebra."""
        for i in range(self.nrows):
            for j in range(self.ncols):
                v = self.entry(i, j)
                if any(v) and not subspace.contains(v):
                    return False
        return True


def vector_to_column(vec, d):
    """Split a realized vector (length r*d) into r coefficient vectors."""
    return [tuple(vec[g * d:(g + 1) * d]) for g in range(len(vec) // d)]


def column_to_vector(col):
    return tuple(x for v in col for x in v)
