"""Small ring-generic matrix helpers shared by the optics and reduction layers.

Matrices are tuples of tuples.  Exact determinants use fraction-free Bareiss
elimination for integer matrices and division-based elimination when the
entries form a field (Fraction, QAlpha, prime/extension fields).
"""

from __future__ import annotations

from fractions import Fraction


def mat(rows):
    return tuple(tuple(r) for r in rows)


def identity(n, one=1, zero=0):
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def transpose(m):
    return tuple(zip(*m))


def mat_mul(a, b):
    n, k, k2, m = len(a), len(a[0]), len(b), len(b[0])
    if k != k2:
        raise ValueError("dimension mismatch")
    bt = tuple(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = row[0] * col[0]
            for t in range(1, k):
                acc = acc + row[t] * col[t]
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a, c):
    return tuple(tuple(x * c for x in row) for row in a)


def mat_eq(a, b) -> bool:
    if len(a) != len(b):
        return False
    return all(len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb))
               for ra, rb in zip(a, b))


def is_identity(m) -> bool:
    n = len(m)
    for i in range(n):
        for j in range(n):
            want = 1 if i == j else 0
            if not (m[i][j] == want):
                return False
    return True


def kron_i2(b):
    """Block-diagonal doubling diag(B, B)."""
    n = len(b)
    zero = b[0][0] - b[0][0] if n else 0
    out = []
    for i in range(n):
        out.append(tuple(b[i]) + tuple(zero for _ in range(n)))
    for i in range(n):
        out.append(tuple(zero for _ in range(n)) + tuple(b[i]))
    return tuple(out)


def det_bareiss_int(m) -> int:
    """Exact integer determinant by fraction-free elimination."""
    n = len(m)
    a = [list(map(int, row)) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if a[r][k]), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det_field(m):
    """Determinant over a field; entries need -,*,/ and truthiness."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    det = None
    sign = 1
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k]), None)
        if piv is None:
            return m[0][0] - m[0][0]  # ring zero
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        pivot = a[k][k]
        det = pivot if det is None else det * pivot
        for i in range(k + 1, n):
            if a[i][k]:
                factor = a[i][k] / pivot
                for j in range(k, n):
                    a[i][j] = a[i][j] - factor * a[k][j]
    return det * sign


def determinant(m):
    """Exact determinant; integer matrices go through Bareiss, fields through
    ordinary elimination (Fractions used for plain ints mixed with Fractions)."""
    n = len(m)
    if n == 0:
        return 1
    if all(isinstance(x, int) for row in m for x in row):
        return det_bareiss_int(m)
    if any(isinstance(x, (Fraction, float)) for row in m for x in row):
        a = tuple(tuple(Fraction(x) if isinstance(x, int) else x for x in row) for row in m)
        return det_field(a)
    return det_field(m)


def leading_principal_minors(m):
    """The n leading principal minors of an integer matrix, exactly."""
    return [det_bareiss_int([row[:k] for row in m[:k]]) for k in range(1, len(m) + 1)]
