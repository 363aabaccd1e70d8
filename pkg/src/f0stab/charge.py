"""Exact central charges on the rank-2 quotient lattice.

All decisions (half-plane membership, phase comparison, regularity) are made
with rational arithmetic; no phase is ever materialized as a float.  A phase
comparison is a sign test on the cross product re(z1)*im(z2) - im(z1)*re(z2),
which orders arguments exactly inside the semi-closed upper half plane.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .klattice import KClass, QuotClass, project

Rat = Fraction


def _rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


@dataclass(frozen=True)
class ExactComplex:
    """Complex number with exact rational real and imaginary parts."""

    re: Fraction
    im: Fraction

    def __post_init__(self):
        object.__setattr__(self, "re", _rat(self.re))
        object.__setattr__(self, "im", _rat(self.im))

    def __add__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "ExactComplex":
        return ExactComplex(-self.re, -self.im)

    def __mul__(self, other) -> "ExactComplex":
        if isinstance(other, ExactComplex):
            return ExactComplex(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        return ExactComplex(self.re * _rat(other), self.im * _rat(other))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ExactComplex":
        if isinstance(other, ExactComplex):
            d = other.norm_sq()
            if d == 0:
                raise ZeroDivisionError("division by zero charge value")
            return self * ExactComplex(other.re / d, -other.im / d)
        return ExactComplex(self.re / _rat(other), self.im / _rat(other))

    def norm_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def scale(self, n) -> "ExactComplex":
        return ExactComplex(self.re * _rat(n), self.im * _rat(n))


ZERO = ExactComplex(Fraction(0), Fraction(0))
ONE = ExactComplex(Fraction(1), Fraction(0))
I = ExactComplex(Fraction(0), Fraction(1))


def ec(re, im=0) -> ExactComplex:
    return ExactComplex(_rat(re), _rat(im))


def format_charge(z: ExactComplex) -> str:
    """Canonical literal `re+im*i` / `re-im*i` with exact rational parts."""
    im = z.im
    if im < 0:
        return f"{z.re}-{-im}*i"
    return f"{z.re}+{im}*i"


def parse_charge(text: str) -> ExactComplex:
    """Parse the literal grammar `a/b+c/d*i` (optional signs, either part omissible)."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty charge literal")
    if s in ("i", "+i"):
        return I
    if s == "-i":
        return -I
    # split off an imaginary tail `<sign?>rat*i`
    if s.endswith("*i"):
        body = s[:-2]
        # find the split point: a sign not at position 0 and not following '/'
        split = None
        for k in range(len(body) - 1, 0, -1):
            if body[k] in "+-" and body[k - 1] not in "+-/":
                split = k
                break
        if split is None:
            return ExactComplex(Fraction(0), _parse_rat(body))
        return ExactComplex(_parse_rat(body[:split]), _parse_rat(body[split:]))
    return ExactComplex(_parse_rat(s), Fraction(0))


_RAT_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def _parse_rat(s: str) -> Fraction:
    if not _RAT_RE.match(s):
        raise ValueError(f"bad rational literal {s!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError as exc:
        raise ValueError(f"bad rational literal {s!r}") from exc


def in_H(z: ExactComplex) -> bool:
    """Membership in the semi-closed upper half plane: im > 0, or im = 0 and re < 0."""
    return z.im > 0 or (z.im == 0 and z.re < 0)


def cross(z1: ExactComplex, z2: ExactComplex) -> Fraction:
    return z1.re * z2.im - z1.im * z2.re


def phase_cmp(z1: ExactComplex, z2: ExactComplex) -> int:
    """Compare phases of two nonzero half-plane values: -1 less, 0 equal, +1 greater.

    Equality holds exactly when z1 and z2 are positively proportional over R.
    """
    for z in (z1, z2):
        if z.is_zero():
            raise ValueError("phase of zero is undefined")
        if not in_H(z):
            raise ValueError(f"value {format_charge(z)} lies outside the upper half plane")
    c = cross(z1, z2)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


@dataclass(frozen=True)
class CentralCharge:
    """Central charge determined by its values z0, z1 on the quotient basis."""

    z0: ExactComplex
    z1: ExactComplex

    def __call__(self, v) -> ExactComplex:
        return evaluate(self, v)


def evaluate(Z: CentralCharge, v) -> ExactComplex:
    """Value of Z on a lattice or quotient class, by linear extension."""
    if isinstance(v, KClass):
        v = project(v)
    if isinstance(v, QuotClass):
        a, b = v.coords
    else:
        a, b = v
    return Z.z0.scale(a) + Z.z1.scale(b)


def is_in_hreg(Z: CentralCharge) -> bool:
    """Whether Z vanishes on no class of the stable family.

    The infinite family reduces to a finite test: a vanishing class exists iff
    z0 = 0, z1 = 0, or z0/z1 is a negative rational -p/q whose reduced
    numerator and denominator differ by at most 1.
    """
    if Z.z0.is_zero() or Z.z1.is_zero():
        return False
    ratio = Z.z0 / Z.z1
    if ratio.im != 0:
        return True
    r = ratio.re
    if r >= 0:
        return True
    p, q = (-r).numerator, (-r).denominator
    return abs(p - q) > 1


def normalize(Z: CentralCharge) -> tuple[ExactComplex, CentralCharge]:
    """Scalar c with (c*Z)(delta) = i, and the rescaled charge.

    Raises if Z(delta) = 0 (the excluded locus).  Rescaling by c multiplies
    every cross product by |c|^2 > 0, so phase comparisons are preserved.
    """
    zd = Z.z0.scale(2) + Z.z1.scale(2)
    if zd.is_zero():
        raise ValueError("Z(delta) = 0: charge is on the excluded locus")
    c = I / zd
    return c, CentralCharge(c * Z.z0, c * Z.z1)


def _rat_sqrt_upper(x: Fraction) -> Fraction:
    """Exact square root when x is a perfect rational square, else a rational upper bound."""
    if x < 0:
        raise ValueError("negative input")
    a, b = x.numerator, x.denominator
    ra, rb = isqrt(a), isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return Fraction(isqrt(a * b) + 1, b)


def support_constant(Z: CentralCharge, n_max: int = 0) -> Fraction:
    """Rational C with ||v||^2 <= C^2 |Z(v)|^2 for every class v of the stable family.

    With ||(p,q)||^2 = p^2 + q^2 the ratio along each one-parameter family
    n -> (n, n+1) or (n+1, n) is a quotient of quadratics in n converging to
    2/|z0+z1|^2 (the exact value on (1,1)).  The difference from the limit is
    linear in n and the derivative numerator is quadratic, so scanning past
    the crossing point and past a Cauchy bound on the derivative roots makes
    the finite maximum certified for the whole infinite family.
    """
    if not is_in_hreg(Z):
        raise ValueError("support constant requires a regular charge")
    s = Z.z0 + Z.z1
    s2 = s.norm_sq()
    tail = Fraction(2) / s2

    def family_bound(c: ExactComplex) -> int:
        # Q(n) = s2 n^2 + 2<s,c> n + |c|^2, P(n) = 2n^2+2n+1
        sc = s.re * c.re + s.im * c.im
        c2 = c.norm_sq()
        bound = 0
        d1, d0 = 2 * s2 - 4 * sc, s2 - 2 * c2  # P*s2 - 2Q, linear in n
        if d1 != 0:
            bound = max(bound, -d0 / d1)
        w2, w1, w0 = 4 * sc - 2 * s2, 4 * c2 - 2 * s2, 2 * c2 - 2 * sc  # (P/Q)' numerator
        if w2 != 0:
            bound = max(bound, 1 + max(abs(w1), abs(w0)) / abs(w2))
        elif w1 != 0:
            bound = max(bound, 1 + abs(w0) / abs(w1))
        num, den = Fraction(bound).numerator, Fraction(bound).denominator
        return max(0, -(-num // den))  # ceil

    best = tail
    for c, cls in ((Z.z1, lambda n: (n, n + 1)), (Z.z0, lambda n: (n + 1, n))):
        n_stop = max(n_max, family_bound(c)) + 1
        for n in range(n_stop + 1):
            ratio = Fraction(2 * n * n + 2 * n + 1) / evaluate(Z, cls(n)).norm_sq()
            if ratio > best:
                best = ratio
    return _rat_sqrt_upper(best)


# ---------------------------------------------------------------------------
# Lifted GL+(2,R) elements.
#
# An element is a positive-determinant rational matrix together with the
# integer anchor pinning the lift of its circle action: the lifted phase
# function satisfies f(1/2) in (anchor - 1/2, anchor + 1/2].  Phases of exact
# vectors are tracked as pairs (k, v) with v in the half plane, representing
# the real number k + phase(v); comparing two such angles is exact.
# ---------------------------------------------------------------------------

Mat2 = tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]


def _mat2(rows) -> Mat2:
    return tuple(tuple(_rat(x) for x in row) for row in rows)


def mat2_mul(a: Mat2, b: Mat2) -> Mat2:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2)
    )


def mat2_det(a: Mat2) -> Fraction:
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def mat2_inv(a: Mat2) -> Mat2:
    d = mat2_det(a)
    if d == 0:
        raise ZeroDivisionError("singular 2x2 matrix")
    return ((a[1][1] / d, -a[0][1] / d), (-a[1][0] / d, a[0][0] / d))


def mat2_act(a: Mat2, z: ExactComplex) -> ExactComplex:
    return ExactComplex(a[0][0] * z.re + a[0][1] * z.im, a[1][0] * z.re + a[1][1] * z.im)


@dataclass(frozen=True)
class Angle:
    """Exact lifted angle k + phase(v)/pi with v kept in the half plane, phase in (0,1]."""

    k: int
    v: ExactComplex

    @staticmethod
    def of(v: ExactComplex, k: int = 0) -> "Angle":
        if v.is_zero():
            raise ValueError("no angle for the zero vector")
        if in_H(v):
            return Angle(k, v)
        return Angle(k - 1, -v)

    def shifted(self, n: int) -> "Angle":
        return Angle(self.k + n, self.v)

    def cmp(self, other: "Angle") -> int:
        if self.k != other.k:
            return -1 if self.k < other.k else 1
        return phase_cmp(self.v, other.v)

    def round_to_int(self) -> int:
        # value lies in (k, k+1]; it is <= k + 1/2 exactly when re(v) >= 0
        return self.k if self.v.re >= 0 else self.k + 1


HALF = Angle(0, I)  # the angle 1/2


@dataclass(frozen=True)
class LiftedGL:
    """Element of the universal cover of GL+(2,R) with exact rational matrix."""

    matrix: Mat2
    anchor: int = 0

    def __post_init__(self):
        object.__setattr__(self, "matrix", _mat2(self.matrix))
        if mat2_det(self.matrix) <= 0:
            raise ValueError("lifted element needs positive determinant")
        self._half_image()  # validates the anchor window

    def _half_image(self) -> Angle:
        """f(1/2) as an exact angle: the unique lift of g(i) in (anchor-1/2, anchor+1/2]."""
        w = mat2_act(self.matrix, I)
        lo, hi = HALF.shifted(self.anchor - 1), HALF.shifted(self.anchor)
        base = Angle.of(w)
        # lifts of the direction sit at k = base.k + 2Z; the window meets k in {anchor-1, anchor}
        for k in (self.anchor - 1, self.anchor):
            if (k - base.k) % 2 == 0:
                cand = Angle(k, base.v)
                if lo.cmp(cand) < 0 and cand.cmp(hi) <= 0:
                    return cand
        raise ValueError(f"anchor {self.anchor} admits no lift for this matrix")

    def f_at(self, theta: Angle) -> Angle:
        """Value of the lifted phase function at an exact angle.

        Monotonicity and half-turn equivariance confine f(phase(v)) to the open
        width-2 window around f(1/2), which pins a unique lift of g(v).
        """
        w = mat2_act(self.matrix, theta.v)
        half = self._half_image()
        lo, hi = half.shifted(-1), half.shifted(1)
        base = Angle.of(w)
        for k in (half.k - 1, half.k, half.k + 1):
            if (k - base.k) % 2 == 0:
                cand = Angle(k, base.v)
                if lo.cmp(cand) < 0 and cand.cmp(hi) < 0:
                    return cand.shifted(theta.k)
        raise AssertionError("no lift found in the admissible window")

    def compose(self, other: "LiftedGL") -> "LiftedGL":
        """Product (self, f) * (other, f'): matrices multiply, anchors track f(f'(1/2))."""
        m = mat2_mul(self.matrix, other.matrix)
        val = self.f_at(other._half_image())
        return LiftedGL(m, val.round_to_int())

    def inverse(self) -> "LiftedGL":
        """Inverse element; its anchor is pinned by solving f(theta) = 1/2 exactly."""
        minv = mat2_inv(self.matrix)
        w = mat2_act(minv, I)
        base = Angle.of(w)
        span = abs(self.anchor) + 4
        for j in range(-span, span + 1):
            cand = base.shifted(2 * j)
            if self.f_at(cand).cmp(HALF) == 0:
                return LiftedGL(minv, cand.round_to_int())
        raise AssertionError("inverse anchor not found")


def identity_lifted() -> LiftedGL:
    return LiftedGL(((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))), 0)


def act_lifted(Z: CentralCharge, g: LiftedGL) -> CentralCharge:
    """Right action on charges: applies the matrix inverse to both values."""
    minv = mat2_inv(g.matrix)
    return CentralCharge(mat2_act(minv, Z.z0), mat2_act(minv, Z.z1))


def paper_g_element(Z: CentralCharge) -> LiftedGL:
    """The lifted element matching the twist functor on a normalized positive-chamber charge.

    In the real frame e0 = Z(g0bar), e1 = Z(g1bar) the matrix sends
    e0 -> 2e0 + e1 and e1 -> -e0, so it fixes e0 + e1 (the direction i/2) and
    the unique lift with f(1/2) = 1/2 has anchor 0.
    """
    zd = Z.z0.scale(2) + Z.z1.scale(2)
    if not (zd.re == 0 and zd.im == 1):
        raise ValueError("charge must be normalized: Z(delta) = i")
    if not (in_H(Z.z0) and in_H(Z.z1)):
        raise ValueError("both frame values must lie in the half plane")
    if phase_cmp(Z.z0, Z.z1) != -1:
        raise ValueError("charge must lie in the positive chamber (phase z0 < phase z1)")
    e = ((Z.z0.re, Z.z1.re), (Z.z0.im, Z.z1.im))
    if mat2_det(e) == 0:
        raise ValueError("frame vectors are linearly dependent over R")
    core = ((Fraction(2), Fraction(-1)), (Fraction(1), Fraction(0)))
    g = mat2_mul(mat2_mul(e, core), mat2_inv(e))
    return LiftedGL(g, 0)
