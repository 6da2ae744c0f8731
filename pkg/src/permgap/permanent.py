"""Permanent kernels: ring-generic Ryser with Gray-code updates, a vectorized
float kernel, and the naive expansion used as the cross-check oracle.

Ryser's inclusion-exclusion,

    Per(A) = (-1)^n * sum over S subset of columns of
             (-1)^|S| * prod_i sum_{j in S} A[i][j],

needs only ring addition, negation and multiplication, so one implementation
serves Q(alpha), rationals, integers and the finite fields.  The Gray-code
walk changes one column per step, so maintaining the row sums costs n ring
additions per subset.
"""

from __future__ import annotations

from itertools import permutations

import numpy as np

EXACT_GUARD = 24
FLOAT_GUARD = 30


def permanent_naive(matrix):
    """Sum over all n! permutations; the independent oracle for the kernels."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    total = 0
    for perm in permutations(range(n)):
        prod = 1
        for i, j in enumerate(perm):
            prod = prod * matrix[i][j]
        total = total + prod
    return total


def permanent_ryser(matrix):
    """Exact permanent over any commutative ring (elements must support +,-,*)."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    if n > EXACT_GUARD:
        raise ValueError(f"exact permanent guard: n = {n} > {EXACT_GUARD}")
    rows = matrix
    sums = [0] * n
    total = 0
    prev_gray = 0
    for k in range(1, 1 << n):
        gray = k ^ (k >> 1)
        diff = gray ^ prev_gray
        j = diff.bit_length() - 1
        if gray & diff:
            for i in range(n):
                sums[i] = sums[i] + rows[i][j]
        else:
            for i in range(n):
                sums[i] = sums[i] - rows[i][j]
        prev_gray = gray
        prod = sums[0]
        for i in range(1, n):
            prod = prod * sums[i]
        if gray.bit_count() & 1:
            total = total - prod
        else:
            total = total + prod
    if n & 1:
        total = -total
    return total


def permanent_float(matrix) -> float:
    """Vectorized Ryser for float matrices; subsets are enumerated in blocks."""
    a = np.asarray(matrix, dtype=np.float64)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1.0
    if n > FLOAT_GUARD:
        raise ValueError(f"float permanent guard: n = {n} > {FLOAT_GUARD}")
    low = min(n, 16)
    high = n - low
    # row sums over every subset of the low columns, built by doubling
    lowsums = np.zeros((1 << low, n))
    lowpar = np.zeros(1 << low, dtype=np.int8)
    for b in range(low):
        half = 1 << b
        lowsums[half:2 * half] = lowsums[:half] + a[:, b]
        lowpar[half:2 * half] = lowpar[:half] ^ 1
    lowsigns = 1.0 - 2.0 * lowpar
    total = 0.0
    for hi in range(1 << high):
        base = np.zeros(n)
        bits = hi
        par = 0
        while bits:
            b = (bits & -bits).bit_length() - 1
            base = base + a[:, low + b]
            par ^= 1
            bits &= bits - 1
        prods = np.prod(lowsums + base, axis=1)
        sign = -1.0 if par else 1.0
        total += sign * float(np.dot(lowsigns, prods))
    return total * (-1.0 if n & 1 else 1.0)


def permanent(matrix, ring: str = "exact"):
    """Dispatch on the ring tag: 'exact' (default) or 'float'."""
    if ring == "float":
        return permanent_float(matrix)
    return permanent_ryser(matrix)
