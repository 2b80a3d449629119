"""Dense exact linear algebra over any field whose elements support + - * /.

Entries are Fractions or field elements from ``rittkit.exact``.  Only the
two things the rest of the package needs are provided: a reduced row
echelon form and a nullspace basis.
"""


def rref(rows):
    """Return (reduced rows, pivot columns).  ``rows`` is not modified."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = None
        for i in range(r, len(m)):
            if m[i][c]:
                p = i
                break
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows, ncols=None):
    """Basis of {x : rows . x = 0}."""
    if not rows:
        from fractions import Fraction
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    ncols = len(rows[0])
    red, piv = rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, p in enumerate(piv):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def solve(rows, rhs):
    """One solution of rows . x = rhs, or None when inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0])
    red, piv = rref(aug)
    if ncols in piv:
        return None
    x = [0] * ncols
    for i, p in enumerate(piv):
        x[p] = red[i][ncols]
    return x
