"""Exact linear algebra over the rationals and small prime fields.

Matrices are lists of row lists; a p x 0 matrix is p empty rows and a 0 x q
matrix is the empty list, so rank and nullity take the column count
explicitly.  Polynomials over Q are tuples of Fractions, lowest degree first,
with no trailing zeros.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product


# -- rational matrices -------------------------------------------------------

def rref_q(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (new matrix, pivot columns)."""
    m = [list(map(Fraction, row)) for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank_q(rows: list[list[Fraction]]) -> int:
    return len(rref_q(rows)[1])


def nullity_q(rows: list[list[Fraction]], ncols: int) -> int:
    return ncols - rank_q(rows)


def mat_mul_q(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if k else 0
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def mat_inv_q(a: list[list[Fraction]]) -> list[list[Fraction]]:
    """Inverse of a square rational matrix by Gauss-Jordan on [a | I]."""
    n = len(a)
    aug = [list(map(Fraction, a[i])) + [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    red, pivots = rref_q(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def det_q(a: list[list[Fraction]]) -> Fraction:
    """Determinant over Q by elimination with row pivoting."""
    n = len(a)
    m = [list(map(Fraction, row)) for row in a]
    det = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            det = -det
        det *= m[c][c]
        inv = Fraction(1) / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


# -- prime field matrices ----------------------------------------------------

def rref_fp(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    m = [[x % p for x in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank_fp(rows: list[list[int]], p: int) -> int:
    return len(rref_fp(rows, p)[1])


def nullspace_fp(rows: list[list[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of the right kernel over F_p (one vector per free column)."""
    red, pivots = rref_fp(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-red[r][fc]) % p
        basis.append(v)
    return basis


def mat_mul_fp(a, b, p):
    n, k = len(a), len(b)
    m = len(b[0]) if k else 0
    return [[sum(a[i][t] * b[t][j] for t in range(k)) % p for j in range(m)] for i in range(n)]


def subspaces_fp(n: int, p: int):
    """Yield a basis (RREF rows) for every subspace of F_p^n, each exactly once.

    Subspaces of dimension d are in bijection with RREF matrices: choose the
    pivot columns, then fill the free positions (right of the own pivot and
    not a pivot column) with arbitrary field elements.
    """
    yield []
    for d in range(1, n + 1):
        for piv in combinations(range(n), d):
            free = [
                (i, j)
                for i in range(d)
                for j in range(piv[i] + 1, n)
                if j not in piv
            ]
            for vals in product(range(p), repeat=len(free)):
                m = [[0] * n for _ in range(d)]
                for i in range(d):
                    m[i][piv[i]] = 1
                for (i, j), v in zip(free, vals):
                    m[i][j] = v
                yield m


# -- univariate polynomials over Q -------------------------------------------

Poly = tuple[Fraction, ...]

P_ZERO: Poly = ()
P_ONE: Poly = (Fraction(1),)


def p_norm(coeffs) -> Poly:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(Fraction(x) for x in c)


def p_deg(f: Poly) -> int:
    return len(f) - 1


def p_add(f: Poly, g: Poly) -> Poly:
    n = max(len(f), len(g))
    return p_norm([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def p_neg(f: Poly) -> Poly:
    return tuple(-x for x in f)


def p_sub(f: Poly, g: Poly) -> Poly:
    return p_add(f, p_neg(g))


def p_mul(f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return P_ZERO
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return p_norm(out)


def p_divmod(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 0)
    r = list(f)
    while len(r) >= len(g) and any(x != 0 for x in r):
        if r[-1] == 0:
            r.pop()
            continue
        shift = len(r) - len(g)
        coeff = r[-1] / g[-1]
        q[shift] = coeff
        for i, b in enumerate(g):
            r[shift + i] -= coeff * b
        r.pop()
    return p_norm(q), p_norm(r)


def p_divexact(f: Poly, g: Poly) -> Poly:
    q, r = p_divmod(f, g)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def p_monic(f: Poly) -> Poly:
    if not f:
        return f
    lead = f[-1]
    return tuple(x / lead for x in f)


def p_gcd(f: Poly, g: Poly) -> Poly:
    while g:
        f, g = g, p_divmod(f, g)[1]
    return p_monic(f)


def p_eval(f: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * x + c
    return acc


def p_x_valuation(f: Poly) -> int:
    """Multiplicity of the root 0, i.e. the number of leading zero coefficients."""
    if not f:
        raise ValueError("zero polynomial has no x-adic valuation")
    v = 0
    while f[v] == 0:
        v += 1
    return v


def p_det_bareiss(rows: list[list[Poly]]) -> Poly:
    """Determinant of a square polynomial matrix, fraction-free over Q[x].

    Bareiss elimination keeps every intermediate entry a true polynomial (the
    divisions are exact in the domain), avoiding rational-function blowup.
    """
    n = len(rows)
    if n == 0:
        return P_ONE
    m = [[p_norm(e) for e in row] for row in rows]
    sign = 1
    prev = P_ONE
    for k in range(n - 1):
        if not m[k][k]:
            pr = next((i for i in range(k + 1, n) if m[i][k]), None)
            if pr is None:
                return P_ZERO
            m[k], m[pr] = m[pr], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = p_sub(p_mul(m[i][j], m[k][k]), p_mul(m[i][k], m[k][j]))
                m[i][j] = p_divexact(num, prev) if num else P_ZERO
            m[i][k] = P_ZERO
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return p_neg(det) if sign < 0 else det


def poly_minor_gcds(rows: list[list[Poly]]) -> list[Poly]:
    """For k = 1..min(p,q), the monic gcd of all k x k minors (zero poly if all vanish).

    Stops early once every minor of some size vanishes, since larger minors
    vanish as well.  Intended for desk-size pencils; the minor count grows
    binomially with the dimensions.
    """
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    out: list[Poly] = []
    for k in range(1, min(nr, nc) + 1):
        g: Poly = P_ZERO
        for rsel in combinations(range(nr), k):
            for csel in combinations(range(nc), k):
                sub = [[rows[i][j] for j in csel] for i in rsel]
                d = p_det_bareiss(sub)
                if d:
                    g = p_gcd(g, d) if g else p_monic(d)
                    if g == P_ONE:
                        break
            if g == P_ONE:
                break
        if not g:
            break
        out.append(g)
    return out
