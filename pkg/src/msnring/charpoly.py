"""Exact characteristic polynomials and integer root extraction.

Polynomials are lists of Python ints in ascending degree order, so
coeffs[i] multiplies x**i and the leading coefficient of a monic
polynomial is the final 1.  Everything here is exact: the reduction to
Hessenberg form runs over rationals and the final coefficients are
asserted to be integers.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def support_components(values) -> list[list[int]]:
    """Connected components of the off-diagonal nonzero pattern."""
    a = np.asarray(values)
    n = a.shape[0]
    mask = a != 0
    np.fill_diagonal(mask, False)
    seen = [False] * n
    comps: list[list[int]] = []
    for seed in range(n):
        if seen[seed]:
            continue
        comp = [seed]
        seen[seed] = True
        stack = [seed]
        while stack:
            u = stack.pop()
            for v in np.flatnonzero(mask[u]):
                v = int(v)
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


def gershgorin_bound(block: list[list[int]]) -> int:
    """Bound on the absolute value of any eigenvalue: max row sum."""
    if not block:
        return 0
    return max(sum(abs(v) for v in row) for row in block)


def _hessenberg(m: list[list[Fraction]]) -> None:
    """In-place similarity reduction to upper Hessenberg form."""
    n = len(m)
    for c in range(n - 2):
        pivot = None
        for r in range(c + 1, n):
            if m[r][c]:
                pivot = r
                break
        if pivot is None:
            continue
        if pivot != c + 1:
            m[c + 1], m[pivot] = m[pivot], m[c + 1]
            for row in m:
                row[c + 1], row[pivot] = row[pivot], row[c + 1]
        for r in range(c + 2, n):
            if m[r][c]:
                f = m[r][c] / m[c + 1][c]
                mr, mp = m[r], m[c + 1]
                for j in range(c, n):
                    mr[j] -= f * mp[j]
                for i in range(n):
                    m[i][c + 1] += f * m[i][r]


def charpoly_dense(block: list[list[int]]) -> list[int]:
    """Characteristic polynomial of a small integer matrix, exactly.

    Hessenberg reduction over rationals followed by the standard
    leading-minor recurrence; coefficients come out rational and are
    checked to be integers.
    """
    n = len(block)
    if n == 0:
        return [1]
    if n == 1:
        return [-block[0][0], 1]
    m = [[Fraction(v) for v in row] for row in block]
    _hessenberg(m)
    polys: list[list[Fraction]] = [[Fraction(1)]]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        cur = [Fraction(0)] * (len(prev) + 1)
        a = m[k - 1][k - 1]
        for idx, co in enumerate(prev):
            cur[idx + 1] += co
            if a:
                cur[idx] -= a * co
        beta = Fraction(1)
        for i in range(k - 1, 0, -1):
            beta *= m[i][i - 1]
            if not beta:
                break
            hik = m[i - 1][k - 1]
            if hik:
                f = hik * beta
                for idx, co in enumerate(polys[i - 1]):
                    cur[idx] -= f * co
        polys.append(cur)
    out: list[int] = []
    for co in polys[n]:
        if co.denominator != 1:
            raise ArithmeticError("characteristic polynomial coefficient is not an integer")
        out.append(int(co))
    return out


def poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def char_polynomial(values) -> list[int]:
    """Exact characteristic polynomial of an integer matrix.

    Works per connected block of the support pattern, reusing the result
    for repeated blocks, then multiplies the factors together.
    """
    a = np.asarray(values)
    n = a.shape[0]
    rows = a.tolist()
    cache: dict[tuple, list[int]] = {}
    poly = [1]
    for comp in support_components(a):
        block = [[int(rows[i][j]) for j in comp] for i in comp]
        key = tuple(tuple(r) for r in block)
        if key not in cache:
            cache[key] = charpoly_dense(block)
        poly = poly_mul(poly, cache[key])
    if len(poly) != n + 1 or poly[-1] != 1:
        raise ArithmeticError("characteristic polynomial has the wrong shape")
    trace = sum(int(rows[i][i]) for i in range(n))
    if n >= 1 and poly[n - 1] != -trace:
        raise ArithmeticError("characteristic polynomial fails the trace check")
    return poly


def divide_linear(coeffs: list[int], r: int) -> tuple[list[int], int]:
    """Divide by (x - r); returns (quotient, remainder)."""
    n = len(coeffs) - 1
    q = [0] * n
    acc = coeffs[n]
    for i in range(n - 1, -1, -1):
        q[i] = acc
        acc = coeffs[i] + r * acc
    return q, acc


def integer_roots(coeffs: list[int], bound: int) -> tuple[list[tuple[int, int]], int]:
    """All integer roots with multiplicity, plus the residual degree.

    Candidates are the divisors of the trailing nonzero coefficient, up
    to the given magnitude bound; multiplicity comes from repeated exact
    synthetic division.  The residual degree counts what is left after
    every integer root has been divided out.
    """
    work = list(coeffs)
    roots: dict[int, int] = {}
    k = 0
    while k < len(work) - 1 and work[k] == 0:
        k += 1
    if k:
        roots[0] = k
        work = work[k:]
    if len(work) > 1:
        c0 = work[0]
        limit = min(bound, abs(c0))
        for d in range(1, limit + 1):
            if c0 % d:
                continue
            for r in (d, -d):
                while len(work) > 1:
                    q, rem = divide_linear(work, r)
                    if rem != 0:
                        break
                    roots[r] = roots.get(r, 0) + 1
                    work = q
            if len(work) == 1:
                break
    return sorted(roots.items()), len(work) - 1
