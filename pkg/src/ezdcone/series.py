"""Truncated power series with exact coefficients.

A :class:`TruncatedSeries` stores a_0..a_n; every operation truncates to the
smaller of the operands' truncations.
"""

import math
import statistics
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


class TruncatedSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs, n=None):
        coeffs = [_norm(c) for c in coeffs]
        if n is not None:
            coeffs = (coeffs + [0] * (n + 1))[: n + 1]
        if not coeffs:
            raise ValueError("a series needs at least a constant term")
        self.coeffs = tuple(coeffs)

    @classmethod
    def poly(cls, coeffs, n):
        return cls(coeffs, n)

    @classmethod
    def one(cls, n):
        return cls([1], n)

    @property
    def n(self):
        return len(self.coeffs) - 1

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return f"TruncatedSeries({list(self.coeffs)}, n={self.n})"

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            m = min(self.n, other.n)
            return self.coeffs[: m + 1] == other.coeffs[: m + 1]
        return NotImplemented

    __hash__ = None

    def truncate(self, n):
        return TruncatedSeries(self.coeffs[: n + 1], min(n, self.n))

    def _pair(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries([other], self.n)
        m = min(self.n, other.n)
        return self.coeffs[: m + 1], other.coeffs[: m + 1], m

    def __add__(self, other):
        a, b, m = self._pair(other)
        return TruncatedSeries([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __sub__(self, other):
        a, b, m = self._pair(other)
        return TruncatedSeries([x - y for x, y in zip(a, b)])

    def __neg__(self):
        return TruncatedSeries([-x for x in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([other * x for x in self.coeffs])
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return div_unit(self, other)

    def at_neg_t(self):
        """p(-t)."""
        return TruncatedSeries([(-1) ** i * c for i, c in enumerate(self.coeffs)])

    def shift(self, k):
        """t^k p(t), same truncation."""
        return TruncatedSeries([0] * k + list(self.coeffs), self.n)

    def total(self):
        return sum(self.coeffs)


def mul(p, q):
    a, b, m = p._pair(q)
    out = [0] * (m + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(m + 1 - i):
                out[i + j] += x * b[j]
    return TruncatedSeries(out)


def div_unit(p, u):
    """p / u for u with constant term +1 or -1."""
    if not isinstance(u, TruncatedSeries):
        u = TruncatedSeries(list(u), p.n)
    if u[0] not in (1, -1):
        raise PreconditionError(f"constant term {u[0]} is not a unit in Z[[t]]")
    a, b, m = p._pair(u)
    out = []
    for k in range(m + 1):
        s = a[k] - sum(b[j] * out[k - j] for j in range(1, k + 1))
        out.append(s * b[0])
    return TruncatedSeries(out)


def leq(p, q):
    """Coefficientwise p <= q on the common truncation."""
    a, b, _ = p._pair(q)
    return all(x <= y for x, y in zip(a, b))


def t_poly(coeffs, n):
    return TruncatedSeries(coeffs, n)


# rational forms

def _fmt_poly(c):
    terms = []
    for i, x in enumerate(c):
        if not x:
            continue
        mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        mag = abs(x)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        sign = "-" if x < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def _poly_pow(c, k):
    out = [1]
    for _ in range(k):
        nxt = [0] * (len(out) + len(c) - 1)
        for i, x in enumerate(out):
            for j, y in enumerate(c):
                nxt[i + j] += x * y
        out = nxt
    return out


def default_denominators():
    dens = [("", [1])]
    for k in (1, 2, 3):
        dens.append(("(1-t)" + (f"^{k}" if k > 1 else ""), _poly_pow([1, -1], k)))
    for k in (1, 2):
        dens.append(("(1-2t)" + (f"^{k}" if k > 1 else ""), _poly_pow([1, -2], k)))
    dens.append(("(1-t)(1-2t)", [1, -3, 2]))
    dens.append(("(1+t)", [1, 1]))
    dens.append(("(1-t^2)", [1, 0, -1]))
    return dens


@dataclass(frozen=True)
class RationalForm:
    numerator: tuple
    denominator: tuple
    denominator_label: str

    def __str__(self):
        num = _fmt_poly(self.numerator)
        if not self.denominator_label:
            return num
        if len([x for x in self.numerator if x]) > 1:
            num = f"({num})"
        return f"{num}/{self.denominator_label}"


def rational_form(p, candidates=None, min_checked=3):
    """Match p against N(t)/D(t) for a candidate D, certified on the truncation.

    A match requires p*D to vanish in at least ``min_checked`` top degrees.
    """
    best = None
    for label, den in candidates or default_denominators():
        prod = mul(p, TruncatedSeries(den, p.n)).coeffs
        deg = max((i for i, x in enumerate(prod) if x), default=-1)
        if p.n - deg < min_checked:
            continue
        score = deg + len(den)
        if best is None or score < best[0]:
            best = (score, RationalForm(tuple(prod[: deg + 1]) or (0,), tuple(den), label))
    return best[1] if best else None


# growth diagnostics

@dataclass(frozen=True)
class GrowthDiagnostics:
    """Heuristic tail estimates; never a verdict."""

    cx_estimate: int
    cx_slope: float
    curv_estimate: float
    window: tuple
    label: str = "diagnostic"


def growth_diagnostics(p):
    if p.n < 6:
        raise PreconditionError("growth diagnostics need truncation >= 6")
    start = p.n + 1 - math.ceil(p.n / 2)
    idx = [i for i in range(max(start, 1), p.n + 1)]
    tail = [abs(p[i]) for i in idx]
    if not any(tail):
        return GrowthDiagnostics(0, 0.0, 0.0, (idx[0], idx[-1]))
    curv = max(float(a) ** (1.0 / i) for i, a in zip(idx, tail) if a)
    pts = [(math.log(i), math.log(a)) for i, a in zip(idx, tail) if a]
    if len(pts) >= 2:
        slope = statistics.linear_regression([x for x, _ in pts], [y for _, y in pts]).slope
    else:
        slope = 0.0
    return GrowthDiagnostics(round(slope) + 1, slope, curv, (idx[0], idx[-1]))
