"""Rank-4 Grothendieck lattice of the local quadric quiver and its automorphisms.

The lattice Z^4 is spanned by the classes g0..g3 of the four simple modules.
The half-turn symmetry phi identifies g0 with g2 and g1 with g3; its
antisymmetric sublattice is spanned by g0-g2 and g1-g3, and the rank-2
quotient carries the induced actions of the two tilting autoequivalences.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations


@dataclass(frozen=True)
class KClass:
    """Integer vector in the rank-4 lattice, coordinates over the basis g0..g3."""

    coords: tuple[int, int, int, int]

    def __post_init__(self):
        if len(self.coords) != 4 or not all(isinstance(c, int) for c in self.coords):
            raise ValueError("KClass needs 4 integer coordinates")

    def __add__(self, other: "KClass") -> "KClass":
        return KClass(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "KClass") -> "KClass":
        return KClass(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "KClass":
        return KClass(tuple(-a for a in self.coords))

    def __rmul__(self, n: int) -> "KClass":
        return KClass(tuple(n * a for a in self.coords))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def to_json(self) -> list[int]:
        return list(self.coords)


@dataclass(frozen=True)
class QuotClass:
    """Integer vector in the rank-2 quotient lattice, basis (g0bar, g1bar)."""

    coords: tuple[int, int]

    def __post_init__(self):
        if len(self.coords) != 2 or not all(isinstance(c, int) for c in self.coords):
            raise ValueError("QuotClass needs 2 integer coordinates")

    def __add__(self, other: "QuotClass") -> "QuotClass":
        return QuotClass((self.coords[0] + other.coords[0], self.coords[1] + other.coords[1]))

    def __sub__(self, other: "QuotClass") -> "QuotClass":
        return QuotClass((self.coords[0] - other.coords[0], self.coords[1] - other.coords[1]))

    def __neg__(self) -> "QuotClass":
        return QuotClass((-self.coords[0], -self.coords[1]))

    def __rmul__(self, n: int) -> "QuotClass":
        return QuotClass((n * self.coords[0], n * self.coords[1]))

    def is_zero(self) -> bool:
        return self.coords == (0, 0)

    def to_json(self) -> list[int]:
        return list(self.coords)


Mat4 = tuple[tuple[int, int, int, int], ...]


def det4(m: Mat4) -> int:
    """Determinant of a 4x4 integer matrix by signed permutation expansion."""
    total = 0
    for perm in permutations(range(4)):
        sign = 1
        for i in range(4):
            for j in range(i + 1, 4):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = 1
        for i in range(4):
            prod *= m[i][perm[i]]
        total += sign * prod
    return total


def mat_mul(a: Mat4, b: Mat4) -> Mat4:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(4)) for j in range(4)) for i in range(4)
    )


def mat_vec(m: Mat4, v: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sum(m[i][k] * v[k] for k in range(len(v))) for i in range(len(m)))


@dataclass(frozen=True)
class LatticeAuto:
    """Integer automorphism of the rank-4 lattice; column i is the image of gi.

    Construction checks invertibility over Z (det = +-1) and that the
    antisymmetric sublattice span(g0-g2, g1-g3) is mapped into itself, so the
    quotient action is always defined.
    """

    matrix: Mat4
    name: str = ""

    def __post_init__(self):
        d = det4(self.matrix)
        if d not in (1, -1):
            raise ValueError(f"matrix is not invertible over Z (det={d})")
        for gen in (KClass((1, 0, -1, 0)), KClass((0, 1, 0, -1))):
            if not project(apply(self, gen)).is_zero():
                raise ValueError("automorphism does not preserve the antisymmetric sublattice")

    def __mul__(self, other: "LatticeAuto") -> "LatticeAuto":
        return LatticeAuto(mat_mul(self.matrix, other.matrix), f"{self.name}*{other.name}")

    def det(self) -> int:
        return det4(self.matrix)

    def inverse(self) -> "LatticeAuto":
        """Exact integer inverse via the adjugate (det is +-1)."""
        m, d = self.matrix, det4(self.matrix)
        cof = [[0] * 4 for _ in range(4)]
        for i in range(4):
            for j in range(4):
                rows = [r for r in range(4) if r != i]
                cols = [c for c in range(4) if c != j]
                sub = [[m[r][c] for c in cols] for r in rows]
                minor = (
                    sub[0][0] * (sub[1][1] * sub[2][2] - sub[1][2] * sub[2][1])
                    - sub[0][1] * (sub[1][0] * sub[2][2] - sub[1][2] * sub[2][0])
                    + sub[0][2] * (sub[1][0] * sub[2][1] - sub[1][1] * sub[2][0])
                )
                cof[i][j] = (-1) ** (i + j) * minor
        inv = tuple(tuple(d * cof[j][i] for j in range(4)) for i in range(4))
        return LatticeAuto(inv, f"{self.name}^-1")


def gamma(i: int) -> KClass:
    """Basis class gi of the i-th simple, 0 <= i <= 3."""
    if not 0 <= i <= 3:
        raise IndexError(f"simple index {i} out of range 0..3")
    return KClass(tuple(1 if j == i else 0 for j in range(4)))


def delta() -> KClass:
    """Class of a point sheaf: the sum of all four simple classes."""
    return KClass((1, 1, 1, 1))


def identity_auto() -> LatticeAuto:
    return LatticeAuto(tuple(tuple(1 if i == j else 0 for j in range(4)) for i in range(4)), "id")


def psi() -> LatticeAuto:
    """Cyclic shift gi -> g(i+1 mod 4) induced by the order-4 symmetry."""
    return LatticeAuto(
        (
            (0, 0, 0, 1),
            (1, 0, 0, 0),
            (0, 1, 0, 0),
            (0, 0, 1, 0),
        ),
        "psi",
    )


def phi() -> LatticeAuto:
    """Half-turn gi -> g(i+2 mod 4), the square of psi."""
    p = psi()
    return LatticeAuto(mat_mul(p.matrix, p.matrix), "phi")


def t() -> LatticeAuto:
    """Automorphism induced by the twist functor: blocks [[2,-1],[1,0]] on (g0,g1) and (g2,g3)."""
    return LatticeAuto(
        (
            (2, -1, 0, 0),
            (1, 0, 0, 0),
            (0, 0, 2, -1),
            (0, 0, 1, 0),
        ),
        "t",
    )


def t_psi() -> LatticeAuto:
    """The psi-conjugate of t."""
    return LatticeAuto(
        (
            (0, 0, 0, 1),
            (0, 2, -1, 0),
            (0, 1, 0, 0),
            (-1, 0, 0, 2),
        ),
        "t_psi",
    )


def apply(a: LatticeAuto, v: KClass) -> KClass:
    return KClass(mat_vec(a.matrix, v.coords))


def project(v: KClass) -> QuotClass:
    """Quotient by the antisymmetric sublattice: (a,b,c,d) -> (a+c, b+d)."""
    a, b, c, d = v.coords
    return QuotClass((a + c, b + d))


def quotient_action(a: LatticeAuto) -> tuple[tuple[int, int], tuple[int, int]]:
    """Induced 2x2 integer matrix on the quotient, column i = image of gibar.

    Raises if the kernel of the projection is not preserved (it is for every
    LatticeAuto by construction, but the check also guards hand-built input).
    """
    for gen in (KClass((1, 0, -1, 0)), KClass((0, 1, 0, -1))):
        if not project(apply(a, gen)).is_zero():
            raise ValueError("automorphism does not descend to the quotient")
    col0 = project(apply(a, gamma(0))).coords
    col1 = project(apply(a, gamma(1))).coords
    return ((col0[0], col1[0]), (col0[1], col1[1]))


def quot_apply(m: tuple[tuple[int, int], tuple[int, int]], v: QuotClass) -> QuotClass:
    return QuotClass(
        (
            m[0][0] * v.coords[0] + m[0][1] * v.coords[1],
            m[1][0] * v.coords[0] + m[1][1] * v.coords[1],
        )
    )


def delta_set(n_max: int) -> list[QuotClass]:
    """Quotient classes of invariantly-stable objects, truncated at n <= n_max.

    The full family is {(n,n+1), (n+1,n) : n >= 0} together with +-(1,1);
    callers needing exact membership of the infinite family should use the
    ratio test behind charge.is_in_hreg instead of a truncation.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    out: list[QuotClass] = []
    seen = set()
    for n in range(n_max + 1):
        for pq in ((n, n + 1), (n + 1, n)):
            if pq not in seen:
                seen.add(pq)
                out.append(QuotClass(pq))
    for pq in ((1, 1), (-1, -1)):
        if pq not in seen:
            seen.add(pq)
            out.append(QuotClass(pq))
    return out


def tits_form_k2(p: int, q: int) -> int:
    """Tits form of the 2-arrow Kronecker quiver: (p-q)^2.

    The Euler form has matrix [[1,-2],[0,1]] on the simple classes, so the
    symmetrized quadratic form is p^2 - 2pq + q^2.
    """
    return (p - q) * (p - q)
