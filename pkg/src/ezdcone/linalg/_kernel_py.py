"""Pure-Python fallback for the exact kernels.

Rows are sparse dicts ``{column: Fraction}`` with zeros omitted.
"""

from fractions import Fraction


def rref_rows(rows, ncols):
    """Gauss-Jordan over Q. Returns (nonzero reduced rows, pivot columns)."""
    work = [dict(r) for r in rows if r]
    pivots = []
    r = 0
    n = len(work)
    for c in range(ncols):
        if r == n:
            break
        p = r
        while p < n and c not in work[p]:
            p += 1
        if p == n:
            continue
        work[r], work[p] = work[p], work[r]
        prow = work[r]
        inv = 1 / prow[c]
        if inv != 1:
            for j in prow:
                prow[j] = prow[j] * inv
        items = list(prow.items())
        for i in range(n):
            if i == r:
                continue
            row = work[i]
            a = row.get(c)
            if a is None:
                continue
            for j, v in items:
                x = row.get(j, 0) - a * v
                if x:
                    row[j] = x
                else:
                    row.pop(j, None)
        pivots.append(c)
        r += 1
    return work[:r], pivots


def matmul_rows(a_rows, b_rows, ncols):
    """Sparse product; ``b_rows`` indexed by the inner dimension."""
    out = []
    for arow in a_rows:
        acc = {}
        for k, a in arow.items():
            brow = b_rows[k]
            for j, b in brow.items():
                acc[j] = acc.get(j, 0) + a * b
        out.append({j: Fraction(v) for j, v in acc.items() if v})
    return out
