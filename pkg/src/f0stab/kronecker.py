"""Representations of the 2-arrow Kronecker quiver over Q and small prime fields.

A representation is a pair of p x q matrices mapping the vertex-1 space into
the vertex-0 space (right-module orientation).  With this orientation
(U0, 0) is a subrepresentation for every U0, so the vertex-0 simple embeds
into everything with nonzero vertex-0 part; getting the orientation backwards
would swap the two stability chambers.

Semistability over a prime field is decided by exhaustive subspace
enumeration; decomposition over Q goes through the matrix pencil B - xA
(minimal indices for the two root families, elementary divisors for the
regular part).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .charge import ExactComplex, cross, in_H, format_charge
from .klattice import KClass
from .linalg import (
    P_ONE,
    Poly,
    mat_inv_q,
    mat_mul_q,
    nullity_q,
    nullspace_fp,
    p_deg,
    p_divexact,
    p_monic,
    p_mul,
    p_norm,
    p_x_valuation,
    poly_minor_gcds,
    rank_fp,
    subspaces_fp,
)

MAX_ENUM_DIM = 4
MAX_ENUM_FIELD = 7


class EnumerationBudgetError(ValueError):
    """Subspace enumeration refused: dimension or field size beyond the desk budget."""


@dataclass(frozen=True)
class KroneckerRep:
    """Pair of p x q matrices over Q (field='Q') or F_p (field=prime)."""

    field: object  # 'Q' or a prime int
    p: int
    q: int
    A: tuple
    B: tuple

    def __post_init__(self):
        for name, m in (("A", self.A), ("B", self.B)):
            if len(m) != self.p or any(len(row) != self.q for row in m):
                raise ValueError(f"matrix {name} is not {self.p}x{self.q}")
        if self.field != "Q" and not (isinstance(self.field, int) and self.field >= 2):
            raise ValueError(f"unsupported field {self.field!r}")

    @property
    def dim_vector(self) -> tuple[int, int]:
        return (self.p, self.q)

    def is_zero_rep(self) -> bool:
        return self.p == 0 and self.q == 0

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "field": self.field if self.field == "Q" else int(self.field),
            "A": [[str(x) for x in row] for row in self.A],
            "B": [[str(x) for x in row] for row in self.B],
        }


def rep_from_json(data: dict) -> KroneckerRep:
    field = data["field"]
    if field == "Q":
        conv = Fraction
    else:
        field = int(field)
        conv = lambda s: int(s) % field
    p, q = int(data["p"]), int(data["q"])
    A = tuple(tuple(conv(str(x)) for x in row) for row in data["A"])
    B = tuple(tuple(conv(str(x)) for x in row) for row in data["B"])
    return KroneckerRep(field, p, q, A, B)


def make_rep(field, A, B, p: int | None = None, q: int | None = None) -> KroneckerRep:
    """Build a representation, normalizing entries; dims are inferred when inferable.

    Zero-dimensional shapes are ambiguous from the nested lists alone, so
    constructors of degenerate representations pass p and q explicitly.
    """
    if p is None:
        p = len(A)
    if q is None:
        q = len(A[0]) if A else 0
    if field == "Q":
        A = tuple(tuple(Fraction(x) for x in row) for row in A)
        B = tuple(tuple(Fraction(x) for x in row) for row in B)
    else:
        A = tuple(tuple(int(x) % field for x in row) for row in A)
        B = tuple(tuple(int(x) % field for x in row) for row in B)
    return KroneckerRep(field, p, q, A, B)


def _zeros(r, c):
    return [[0] * c for _ in range(r)]


def _eye(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def indecomposable(p: int, q: int, lam=None, field="Q") -> KroneckerRep:
    """The indecomposable with dimension vector (p, q).

    Real roots (n, n+1) and (n+1, n) take no parameter.  Imaginary roots
    (m, m), m >= 1, take a projective-line point: a pair (a, b) not both zero,
    a plain rational (meaning [lam : 1]), or "inf" for [1 : 0].  The affine
    chart uses A = I and B = lam*I + (single nilpotent Jordan block); at
    infinity the roles of A and B swap.
    """
    if p == q:
        if p < 1:
            raise ValueError("the zero dimension vector has no indecomposable")
        if lam is None:
            raise ValueError("imaginary root (m, m) needs a projective-line point")
        m = p
        N = _zeros(m, m)
        for i in range(m - 1):
            N[i][i + 1] = 1
        point = _normalize_point(lam, field)
        if point == "inf":
            return make_rep(field, N, _eye(m))
        Bmat = [[point if i == j else N[i][j] for j in range(m)] for i in range(m)]
        return make_rep(field, _eye(m), Bmat)
    if lam is not None:
        raise ValueError("real roots take no projective-line point")
    if q == p + 1:
        n = p
        A = [[1 if i == j else 0 for j in range(q)] for i in range(n)]
        B = [[1 if j == i + 1 else 0 for j in range(q)] for i in range(n)]
        return make_rep(field, A, B, p=n, q=q)
    if p == q + 1:
        n = q
        A = [[1 if i == j else 0 for j in range(n)] for i in range(p)]
        B = [[1 if i == j + 1 else 0 for j in range(n)] for i in range(p)]
        return make_rep(field, A, B, p=p, q=n)
    raise ValueError(f"({p}, {q}) is not a root of the Kronecker quiver")


def _normalize_point(lam, field):
    """Reduce a projective-line point to an affine field element or 'inf'."""
    if lam == "inf":
        return "inf"
    if isinstance(lam, tuple):
        a, b = lam
        if a == b == 0:
            raise ValueError("(0, 0) is not a projective-line point")
        if b == 0 or (field != "Q" and int(b) % field == 0):
            if a == 0 or (field != "Q" and int(a) % field == 0):
                raise ValueError("point reduces to (0, 0) over this field")
            return "inf"
        lam = Fraction(a) / Fraction(b)
    lam = Fraction(lam)
    if field == "Q":
        return lam
    if lam.denominator % field == 0:
        return "inf"
    return lam.numerator * pow(lam.denominator, field - 2, field) % field


def simple(vertex: int, field="Q") -> KroneckerRep:
    """The simple at vertex 0 (class (1,0)) or vertex 1 (class (0,1))."""
    if vertex == 0:
        return make_rep(field, [[]], [[]], p=1, q=0)
    if vertex == 1:
        return make_rep(field, [], [], p=0, q=1)
    raise ValueError("vertex must be 0 or 1")


def direct_sum(m1: KroneckerRep, m2: KroneckerRep) -> KroneckerRep:
    if m1.field != m2.field:
        raise ValueError("summands live over different fields")

    def block(x, y):
        top = [list(row) + [0] * m2.q for row in x]
        bot = [[0] * m1.q + list(row) for row in y]
        return top + bot

    return make_rep(
        m1.field, block(m1.A, m2.A), block(m1.B, m2.B), p=m1.p + m2.p, q=m1.q + m2.q
    )


def change_basis(m: KroneckerRep, g0, g1) -> KroneckerRep:
    """Conjugate by invertible matrices g0 (vertex 0) and g1 (vertex 1)."""
    if m.field != "Q":
        raise ValueError("basis change implemented over Q only")
    g1_inv = mat_inv_q([list(r) for r in g1])
    A = mat_mul_q(mat_mul_q([list(r) for r in g0], [list(r) for r in m.A]), g1_inv)
    B = mat_mul_q(mat_mul_q([list(r) for r in g0], [list(r) for r in m.B]), g1_inv)
    return make_rep("Q", A, B, p=m.p, q=m.q)


def reduce_mod(m: KroneckerRep, prime: int) -> KroneckerRep:
    """Reduce a rational representation modulo a prime not dividing any denominator."""
    if m.field != "Q":
        raise ValueError("reduction starts from a rational representation")

    def red(x: Fraction) -> int:
        if x.denominator % prime == 0:
            raise ValueError(f"denominator of {x} is divisible by {prime}")
        return x.numerator * pow(x.denominator, prime - 2, prime) % prime

    A = [[red(x) for x in row] for row in m.A]
    B = [[red(x) for x in row] for row in m.B]
    return make_rep(prime, A, B, p=m.p, q=m.q)


# -- Hom spaces ---------------------------------------------------------------

def _hom_system(m: KroneckerRep, n: KroneckerRep) -> tuple[list[list], int]:
    """Linear system whose kernel is the intertwiner space (f0, f1)."""
    n_unknowns = n.p * m.p + n.q * m.q
    rows = []
    for mat_m, mat_n in ((m.A, n.A), (m.B, n.B)):
        for i in range(n.p):
            for j in range(m.q):
                row = [0] * n_unknowns
                # (f0 * mat_m)[i][j] = sum_k f0[i][k] mat_m[k][j]
                for k in range(m.p):
                    row[i * m.p + k] += mat_m[k][j]
                # (mat_n * f1)[i][j] = sum_k mat_n[i][k] f1[k][j]
                for k in range(n.q):
                    row[n.p * m.p + k * m.q + j] -= mat_n[i][k]
                rows.append(row)
    return rows, n_unknowns


def dim_hom(m: KroneckerRep, n: KroneckerRep) -> int:
    """Dimension of the intertwiner space {(f0, f1) : f0 A = A' f1, f0 B = B' f1}."""
    if m.field != n.field:
        raise ValueError("representations live over different fields")
    rows, n_unknowns = _hom_system(m, n)
    if m.field == "Q":
        return nullity_q([[Fraction(x) for x in r] for r in rows], n_unknowns)
    p = m.field
    return n_unknowns - rank_fp([[x % p for x in r] for r in rows], p)


def hom_basis_fp(m: KroneckerRep, n: KroneckerRep) -> list[tuple[list, list]]:
    """Basis of the intertwiner space over a prime field, as (f0, f1) matrix pairs."""
    if m.field == "Q" or m.field != n.field:
        raise ValueError("prime-field representations of a common field required")
    p = m.field
    rows, n_unknowns = _hom_system(m, n)
    out = []
    for v in nullspace_fp([[x % p for x in r] for r in rows], n_unknowns, p):
        f0 = [[v[i * m.p + j] for j in range(m.p)] for i in range(n.p)]
        f1 = [[v[n.p * m.p + i * m.q + j] for j in range(m.q)] for i in range(n.q)]
        out.append((f0, f1))
    return out


# -- semistability over a prime field -----------------------------------------

@dataclass(frozen=True)
class StabilityFunctionK2:
    """Charge values of the two simples, both in the semi-closed upper half plane."""

    zc0: ExactComplex
    zc1: ExactComplex

    def __post_init__(self):
        for z in (self.zc0, self.zc1):
            if not in_H(z):
                raise ValueError(f"{format_charge(z)} lies outside the half plane")

    def value(self, a: int, b: int) -> ExactComplex:
        return self.zc0.scale(a) + self.zc1.scale(b)


def subrep_classes(m: KroneckerRep) -> list[tuple[int, int]]:
    """All dimension vectors of subrepresentations, by exhaustive enumeration.

    A subrepresentation is a pair (U0, U1) with A(U1) + B(U1) <= U0, so for a
    fixed U1 the realizable vertex-0 dimensions are exactly those between
    dim(A(U1) + B(U1)) and p.  Enumerating row-echelon bases of U1 and padding
    the vertex-0 dimension therefore covers every subrepresentation class.
    """
    if m.field == "Q":
        raise ValueError("subspace enumeration runs over a prime field")
    p = m.field
    if m.q > MAX_ENUM_DIM or p > MAX_ENUM_FIELD:
        raise EnumerationBudgetError(
            f"enumeration over F_{p} with q={m.q} exceeds the budget "
            f"(q <= {MAX_ENUM_DIM}, field <= {MAX_ENUM_FIELD})"
        )
    classes = set()
    for basis in subspaces_fp(m.q, p):
        b = len(basis)
        images = []
        for v in basis:
            images.append([sum(m.A[i][j] * v[j] for j in range(m.q)) % p for i in range(m.p)])
            images.append([sum(m.B[i][j] * v[j] for j in range(m.q)) % p for i in range(m.p)])
        min_a = rank_fp(images, p) if images else 0
        for a in range(min_a, m.p + 1):
            classes.add((a, b))
    return sorted(classes)


def semistable_bruteforce(m: KroneckerRep, Z: StabilityFunctionK2):
    """Exact (semi)stability of a prime-field representation.

    Returns (semistable, stable, witness): witness is the first proper nonzero
    subrepresentation class of phase >= the total phase, None if stable.
    """
    if m.is_zero_rep():
        raise ValueError("the zero representation has no stability status")
    total = Z.value(m.p, m.q)
    semistable, stable, witness = True, True, None
    for a, b in subrep_classes(m):
        if (a, b) == (0, 0) or (a, b) == (m.p, m.q):
            continue
        c = cross(Z.value(a, b), total)
        if c < 0:  # phase strictly greater: destabilizing
            if witness is None or semistable:
                witness = (a, b)
            semistable = stable = False
        elif c == 0:
            stable = False
            if witness is None:
                witness = (a, b)
    if semistable and stable:
        witness = None
    return semistable, stable, witness


# -- pencil decomposition over Q ----------------------------------------------

@dataclass(frozen=True)
class PencilBlock:
    """One indecomposable summand, recorded by its pencil data.

    kind 'sub-root' with index n is the unique indecomposable of class
    (n, n+1); 'quotient-root' the one of class (n+1, n); 'regular' carries a
    projective-line point (exact rational, 'inf', or an irreducible monic
    minimal polynomial for a conjugate family) and a multiplicity.
    """

    kind: str
    index: int = 0
    point: object = None
    minpoly: Poly | None = None
    mult: int = 1

    @property
    def dim_vector(self) -> tuple[int, int]:
        if self.kind == "sub-root":
            return (self.index, self.index + 1)
        if self.kind == "quotient-root":
            return (self.index + 1, self.index)
        d = self.mult * (p_deg(self.minpoly) if self.minpoly else 1)
        return (d, d)

    def sort_key(self):
        if self.kind == "sub-root":
            return (0, self.index, 0, ())
        if self.kind == "quotient-root":
            return (1, self.index, 0, ())
        if self.minpoly is not None:
            tag = tuple((c.numerator, c.denominator) for c in self.minpoly)
            return (2, 2, self.mult, tag)
        if self.point == "inf":
            return (2, 1, self.mult, ())
        return (2, 0, self.mult, (self.point.numerator, self.point.denominator))

    def describe(self) -> str:
        if self.kind == "sub-root":
            return f"sub-root ({self.index},{self.index + 1})"
        if self.kind == "quotient-root":
            return f"quotient-root ({self.index + 1},{self.index})"
        if self.minpoly is not None:
            return f"regular minpoly {_poly_str(self.minpoly)} mult {self.mult}"
        pt = "inf" if self.point == "inf" else str(self.point)
        return f"regular lambda={pt} mult {self.mult}"


def _poly_str(f: Poly) -> str:
    terms = []
    for i, c in enumerate(f):
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        elif i == 1:
            terms.append(f"{c}*x" if c != 1 else "x")
        else:
            terms.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
    return " + ".join(terms) if terms else "0"


_FACTOR_CACHE: dict = {}


def _factor_monic(f: Poly) -> list[tuple[Poly, int]]:
    """Irreducible monic factors of a monic rational polynomial, with multiplicities."""
    if f in _FACTOR_CACHE:
        return _FACTOR_CACHE[f]
    import sympy  # deferred: only the pencil decomposition needs factorization

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(f))
    _, factors = sympy.factor_list(sympy.Poly(expr, x, domain="QQ"))
    out = []
    for poly, mult in factors:
        coeffs = [Fraction(c.p, c.q) for c in reversed(poly.all_coeffs())]
        out.append((p_monic(p_norm(coeffs)), int(mult)))
    _FACTOR_CACHE[f] = out
    return out


def _minimal_indices(A, B, p: int, q: int) -> list[int]:
    """Degrees of a minimal polynomial basis of ker(B - xA), with multiplicity.

    N_k, the dimension of the space of polynomial kernel vectors of degree at
    most k, satisfies N_k = sum over indices e of max(0, k - e + 1); the index
    multiset is recovered from second differences.  The block-Toeplitz system
    encodes B v_0 = 0, B v_j = A v_(j-1), A v_k = 0.
    """
    counts = []
    prev_n = 0
    prev_m = 0
    for k in range(q + 1):
        rows = []
        for blk in range(k + 2):
            for i in range(p):
                row = [Fraction(0)] * ((k + 1) * q)
                if blk <= k:  # B v_blk
                    for j in range(q):
                        row[blk * q + j] += B[i][j]
                if 1 <= blk <= k + 1:  # -A v_(blk-1)
                    for j in range(q):
                        row[(blk - 1) * q + j] -= A[i][j]
                rows.append(row)
        n_k = nullity_q(rows, (k + 1) * q)
        m_k = n_k - prev_n
        counts.append(m_k - prev_m)
        prev_n, prev_m = n_k, m_k
    indices = []
    for k, c in enumerate(counts):
        indices.extend([k] * c)
    return indices


def kronecker_canonical_form(m: KroneckerRep) -> list[PencilBlock]:
    """Complete block decomposition of a rational representation.

    Basis invariant by construction: minimal indices come from kernel
    dimensions of block-Toeplitz systems and the regular part from gcds of
    pencil minors (finite points from B - xA, the infinite point from the
    x-power part of A - xB).
    """
    if m.field != "Q":
        raise ValueError("canonical form implemented over Q")
    A = [[Fraction(x) for x in row] for row in m.A]
    B = [[Fraction(x) for x in row] for row in m.B]
    pencil = [[p_norm([B[i][j], -A[i][j]]) for j in range(m.q)] for i in range(m.p)]
    gcds = poly_minor_gcds(pencil)
    r = len(gcds)

    blocks: list[PencilBlock] = []
    for e in _minimal_indices(A, B, m.p, m.q):
        blocks.append(PencilBlock("sub-root", index=e))
    At = [[A[i][j] for i in range(m.p)] for j in range(m.q)]
    Bt = [[B[i][j] for i in range(m.p)] for j in range(m.q)]
    for e in _minimal_indices(At, Bt, m.q, m.p):
        blocks.append(PencilBlock("quotient-root", index=e))

    prev = P_ONE
    for k in range(r):
        s_k = p_divexact(gcds[k], prev)
        prev = gcds[k]
        for f, mult in _factor_monic(s_k):
            if p_deg(f) == 0:
                continue
            if p_deg(f) == 1:
                blocks.append(PencilBlock("regular", point=-f[0], mult=mult))
            else:
                blocks.append(PencilBlock("regular", minpoly=f, mult=mult))

    swapped = [[p_norm([A[i][j], -B[i][j]]) for j in range(m.q)] for i in range(m.p)]
    gcds_inf = poly_minor_gcds(swapped)
    prev = P_ONE
    for k in range(len(gcds_inf)):
        s_k = p_divexact(gcds_inf[k], prev)
        prev = gcds_inf[k]
        v = p_x_valuation(s_k)
        if v > 0:
            blocks.append(PencilBlock("regular", point="inf", mult=v))

    total = (sum(b.dim_vector[0] for b in blocks), sum(b.dim_vector[1] for b in blocks))
    if total != (m.p, m.q):
        raise AssertionError(f"block classes sum to {total}, expected {(m.p, m.q)}")
    return sorted(blocks, key=PencilBlock.sort_key)


def block_rep(b: PencilBlock, field="Q") -> KroneckerRep:
    """A representative representation of one pencil block."""
    if b.kind == "sub-root":
        return indecomposable(b.index, b.index + 1, field=field)
    if b.kind == "quotient-root":
        return indecomposable(b.index + 1, b.index, field=field)
    if b.minpoly is None:
        return indecomposable(b.mult, b.mult, b.point if b.point == "inf" else b.point, field=field)
    # conjugate family: multiplication by x on Q[x]/(f^mult), A = identity
    power = P_ONE
    for _ in range(b.mult):
        power = p_mul(power, b.minpoly)
    d = p_deg(power)
    Bmat = _zeros(d, d)
    for i in range(d - 1):
        Bmat[i + 1][i] = 1
    for i in range(d):
        Bmat[i][d - 1] = -power[i]
    rep = make_rep("Q", _eye(d), Bmat)
    if field == "Q":
        return rep
    return reduce_mod(rep, field)


# -- Harder-Narasimhan filtrations --------------------------------------------

@dataclass(frozen=True)
class HNFactor:
    cls: tuple[int, int]
    phase_witness: ExactComplex
    descriptor: str


def hn_filtration(m: KroneckerRep, Z: StabilityFunctionK2) -> list[HNFactor]:
    """Semistable factors with strictly decreasing phases, classes summing to (p, q).

    When the vertex-0 simple has the smaller phase, every indecomposable is
    semistable and the filtration groups the pencil blocks by the exact phase
    of their class.  When it has the larger phase, the filtration is the
    two-step 0 <= (V0, 0) <= M.  Equal phases make everything semistable.
    """
    if m.field != "Q":
        raise ValueError("filtration implemented over Q; use the brute-force oracle mod p")
    if m.is_zero_rep():
        raise ValueError("the zero representation has no filtration")
    c = cross(Z.zc0, Z.zc1)
    if c == 0:
        return [HNFactor((m.p, m.q), Z.value(m.p, m.q), "whole object (all phases equal)")]
    if c < 0:  # phase of C0 exceeds phase of C1
        out = []
        if m.p:
            out.append(HNFactor((m.p, 0), Z.value(m.p, 0), f"vertex-0 part C0^{m.p}"))
        if m.q:
            out.append(HNFactor((0, m.q), Z.value(0, m.q), f"vertex-1 quotient C1^{m.q}"))
        return out
    blocks = kronecker_canonical_form(m)
    groups: list[tuple[ExactComplex, list[PencilBlock]]] = []
    for b in blocks:
        val = Z.value(*b.dim_vector)
        for val0, members in groups:
            if cross(val, val0) == 0:
                members.append(b)
                break
        else:
            groups.append((val, [b]))
    groups.sort(key=lambda pair: _DecreasingPhase(pair[0]))
    out = []
    for val, members in groups:
        a = sum(b.dim_vector[0] for b in members)
        bq = sum(b.dim_vector[1] for b in members)
        out.append(HNFactor((a, bq), Z.value(a, bq), " + ".join(b.describe() for b in members)))
    return out


class _DecreasingPhase:
    """Sort key: larger phase compares smaller, decided by exact cross products."""

    def __init__(self, val):
        self.val = val

    def __lt__(self, other):
        return cross(self.val, other.val) < 0


# -- embeddings into the 4-vertex lattice --------------------------------------

EMBEDDINGS = ("I1", "I2", "II1", "II2")


def embed_class(pq: tuple[int, int], which: str) -> KClass:
    """Dimension vector of the image of a Kronecker class under the four embeddings."""
    p, q = pq
    if which == "I1":
        return KClass((p, q, 0, 0))
    if which == "I2":
        return KClass((0, 0, p, q))
    if which == "II1":
        return KClass((0, p, q, 0))
    if which == "II2":
        return KClass((q, 0, 0, p))
    raise ValueError(f"unknown embedding {which!r}")
