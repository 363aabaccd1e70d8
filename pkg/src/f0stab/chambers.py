"""Chamber structure of the normalized charge slice and path lifting.

A normalized charge is pinned by the single coordinate x = Z(g0bar), with
Z(g1bar) = i/2 - x forced by Z(delta) = i.  Composing with the quotient twist
matrix translates x by i/2, so the chamber of the sheet labeled by a reduced
word w is the horizontal strip Im x in (-n/2, (1-n)/2), n the twist exponent
of w, and the charges that vanish somewhere on the stable family are exactly
the punctures x = i*k/2, k integer (hardcoded below from that computation).

Crossing a wall appends one tilt generator to the sheet word; lifting a
piecewise-linear path is the resulting exact bookkeeping of crossings.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .charge import (
    CentralCharge,
    ExactComplex,
    cross,
    ec,
    evaluate,
    format_charge,
)
from .hearts import (
    Heart,
    Label,
    format_label,
    heart_of_word,
    label_or_cone,
    reduce_word,
    word_auto,
    word_exponent,
)
from .klattice import KClass, QuotClass, apply, delta, gamma, project

I_HALF = ec(0, Fraction(1, 2))


@dataclass(frozen=True)
class NormalizedCharge:
    """Invariant charge with Z(delta) = i, recorded by x = Z(g0bar)."""

    x: ExactComplex

    def charge(self) -> CentralCharge:
        return CentralCharge(self.x, I_HALF - self.x)


@dataclass(frozen=True)
class Region:
    kind: str  # 'U+' | 'U-' | 'ray' | 'wall' | 'outside'
    wall: str | None = None  # 'W0+', 'W0-', 'W1+', 'W1-' when kind == 'wall'

    def describe(self) -> str:
        return self.wall if self.kind == "wall" else self.kind


def sheet_region(word, nx: NormalizedCharge) -> Region:
    """Region of x relative to the chamber of the sheet labeled by the word.

    The two tracked values are the charges of the sheet heart's projected
    simple classes; the open chamber needs both strictly above the real line,
    walls are the sign-split real loci, and vanishing values are punctures.
    """
    m = word_auto(reduce_word(word))
    Z = nx.charge()
    z0 = evaluate(Z, project(apply(m, gamma(0))))
    z1 = evaluate(Z, project(apply(m, gamma(1))))
    if z0.is_zero() or z1.is_zero():
        return Region("outside")
    if z0.im > 0 and z1.im > 0:
        c = cross(z0, z1)
        if c > 0:
            return Region("U+")
        if c < 0:
            return Region("U-")
        return Region("ray")
    if z0.im == 0 and z1.im > 0:
        return Region("wall", "W0+" if z0.re > 0 else "W0-")
    if z1.im == 0 and z0.im > 0:
        return Region("wall", "W1+" if z1.re > 0 else "W1-")
    return Region("outside")


def classify(nx: NormalizedCharge) -> Region:
    """Region of x relative to the standard-heart chamber."""
    return sheet_region((), nx)


@dataclass(frozen=True)
class ChamberPoint:
    """A sheet of the covering (reduced word) with a charge in its open chamber."""

    word: tuple[str, ...]
    x: NormalizedCharge

    def __post_init__(self):
        object.__setattr__(self, "word", reduce_word(self.word))

    def region(self) -> Region:
        return sheet_region(self.word, self.x)

    def heart(self) -> Heart:
        return heart_of_word(self.word)


def chamber_point(word, x: ExactComplex) -> ChamberPoint:
    """Validated chamber point; raises when x is outside the word's open chamber."""
    p = ChamberPoint(tuple(word), NormalizedCharge(x))
    r = p.region()
    if r.kind not in ("U+", "U-", "ray"):
        raise ValueError(
            f"x = {format_charge(x)} is not in the open chamber of {list(p.word)} ({r.describe()})"
        )
    return p


# -- stable-object catalogs -----------------------------------------------------

@dataclass(frozen=True)
class StableCatalogEntry:
    kclass: KClass
    quot: QuotClass
    label: Label
    family: str  # 'unique' | 'P1-family'
    note: str

    def to_json(self) -> dict:
        return {
            "class": self.kclass.to_json(),
            "quot": self.quot.to_json(),
            "label": format_label(self.label),
            "family": self.family,
            "note": self.note,
        }


def _base_catalog(kind: str, n_max: int) -> list[tuple[KClass, str]]:
    rows: list[tuple[KClass, str]] = []
    if kind == "ray":
        return [(gamma(i), "unique") for i in range(4)]
    for n in range(n_max + 1):
        if kind == "U+":
            quads = [(n, n + 1, 0, 0), (n + 1, n, 0, 0), (0, 0, n, n + 1), (0, 0, n + 1, n)]
        else:
            quads = [(0, n, n + 1, 0), (0, n + 1, n, 0), (n + 1, 0, 0, n), (n, 0, 0, n + 1)]
        rows.extend((KClass(qd), "unique") for qd in quads)
    if kind == "U+":
        rows.append((KClass((1, 1, 0, 0)), "P1-family"))
        rows.append((KClass((0, 0, 1, 1)), "P1-family"))
    else:
        rows.append((KClass((0, 1, 1, 0)), "P1-family"))
        rows.append((KClass((1, 0, 0, 1)), "P1-family"))
    return rows


def stable_catalog(p: ChamberPoint, n_max: int) -> list[StableCatalogEntry]:
    """Classes of the stable objects of the chamber, truncated at n <= n_max.

    For a general sheet the catalog is the word-matrix image of the base
    catalog of the region the charge occupies relative to the sheet heart.
    Entries are up to shift: a class is listed by the representative the word
    matrix produces, with the catalog label of that class or its negation.
    """
    r = p.region()
    if r.kind == "wall":
        raise ValueError(f"chamber point sits on wall {r.wall}")
    if r.kind == "outside":
        raise ValueError("charge is outside the sheet's chamber")
    m = word_auto(p.word)
    out = []
    for base, family in _base_catalog(r.kind, n_max):
        v = apply(m, base)
        out.append(
            StableCatalogEntry(
                kclass=v,
                quot=project(v),
                label=label_or_cone(v),
                family=family,
                note="up to shift",
            )
        )
    return out


def semistable_delta_witness(p: ChamberPoint) -> tuple[KClass, ExactComplex]:
    """The point class delta with its charge value (i on the normalized slice).

    Its phase agrees with the two fiber families: the two halves of the point
    class carry equal charges on the quotient, so a strictly semistable object
    of class delta exists in every chamber (in the ray chamber everything in
    the heart is semistable anyway).
    """
    Z = p.x.charge()
    d = delta()
    val = evaluate(Z, d)
    half = evaluate(Z, KClass((1, 1, 0, 0)))
    if cross(val, half) != 0:
        raise AssertionError("delta and its halves disagree in phase")
    return d, val


# -- wall crossing and path lifting ----------------------------------------------

_WALL_GENERATOR = {"W0+": "T", "W1+": "Tpsi", "W0-": "Tpsi^-1", "W1-": "T^-1"}


def wall_cross_rule(word, wall: str) -> tuple[str, ...]:
    """Sheet word after crossing the given wall of the word's chamber.

    Base rules conjugate along the sheet: crossing appends the generator on
    the right, and immediate backtracking cancels by free reduction.
    """
    if wall not in _WALL_GENERATOR:
        raise ValueError(f"unknown wall descriptor {wall!r}")
    return reduce_word(tuple(word) + (_WALL_GENERATOR[wall],))


@dataclass(frozen=True)
class PLPath:
    """Piecewise-linear path: straight segments between consecutive waypoints."""

    waypoints: tuple[ExactComplex, ...]

    def __post_init__(self):
        if len(self.waypoints) < 1:
            raise ValueError("a path needs at least one waypoint")
        for a, b in zip(self.waypoints, self.waypoints[1:]):
            if a == b:
                raise ValueError("consecutive waypoints must be distinct")


@dataclass(frozen=True)
class Crossing:
    segment: int
    parameter: Fraction
    wall: str
    new_word: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "segment": self.segment,
            "parameter": str(self.parameter),
            "wall": self.wall,
            "word": list(self.new_word),
        }


def _is_half_integer(v: Fraction) -> bool:
    return (2 * v).denominator == 1


def lift_path(start: ChamberPoint, path: PLPath) -> tuple[ChamberPoint, list[Crossing]]:
    """Unique lift of a piecewise-linear path through the covering.

    Walls are the horizontal lines Im x in Z/2 and punctures their imaginary-
    axis points.  Each transversal crossing appends one generator determined
    by which strip boundary is hit and the sign of the real part there.
    Segments along a wall, crossings at punctures, and waypoints on walls are
    rejected exactly.
    """
    if sheet_region(start.word, start.x).kind not in ("U+", "U-", "ray"):
        raise ValueError("start point is not in its sheet's open chamber")
    if path.waypoints[0] != start.x.x:
        raise ValueError("path must start at the start point's charge")
    for w in path.waypoints:
        if _is_half_integer(w.im):
            raise ValueError(f"waypoint {format_charge(w)} lies on a wall line")
    word = start.word
    crossings: list[Crossing] = []
    for seg, (a, b) in enumerate(zip(path.waypoints, path.waypoints[1:])):
        d_im = b.im - a.im
        if d_im == 0:
            continue  # stays strictly inside its strip (waypoints are off the walls)
        # half-integer levels strictly between a.im and b.im, in traversal order
        lo, hi = min(a.im, b.im), max(a.im, b.im)
        ks = range(_floor2(lo) + 1, _ceil2(hi))
        levels = [Fraction(k, 2) for k in (ks if d_im > 0 else reversed(ks))]
        for level in levels:
            s = (level - a.im) / d_im
            x_star = ExactComplex(a.re + s * (b.re - a.re), level)
            if x_star.re == 0:
                raise ValueError(
                    f"path passes through the puncture {format_charge(x_star)}"
                )
            n = word_exponent(word)
            if level == Fraction(-n, 2):
                val = evaluate(
                    NormalizedCharge(x_star).charge(),
                    project(apply(word_auto(word), gamma(0))),
                )
                wall = "W0+" if val.re > 0 else "W0-"
            elif level == Fraction(1 - n, 2):
                val = evaluate(
                    NormalizedCharge(x_star).charge(),
                    project(apply(word_auto(word), gamma(1))),
                )
                wall = "W1+" if val.re > 0 else "W1-"
            else:
                raise AssertionError("crossed a level that is not a boundary of the sheet")
            if val.im != 0:
                raise AssertionError("wall charge not real at crossing")
            word = wall_cross_rule(word, wall)
            crossings.append(Crossing(seg, s, wall, word))
    end = ChamberPoint(word, NormalizedCharge(path.waypoints[-1]))
    if sheet_region(word, end.x).kind not in ("U+", "U-", "ray"):
        raise AssertionError("lifted endpoint is not in its sheet's chamber")
    return end, crossings


def _floor2(v: Fraction) -> int:
    """floor(2v)."""
    return (2 * v).__floor__()


def _ceil2(v: Fraction) -> int:
    """ceil(2v)."""
    return -((-2 * v).__floor__())


def locate_strip(x: NormalizedCharge) -> int:
    """The integer n with Im(x) + n/2 in [0, 1/2): the deck translation to the base strip."""
    two_im = 2 * x.x.im
    return -(two_im.__floor__())
