"""Hearts as labeled 4-tuples of simple classes, simple and double tilts.

A tilt acts on classes by negating the tilted simple and adding nonnegative
multiples of it to the others; labels are recovered from the class through
the catalog of geometric objects (twists of pushforwards and fiber sheaves),
with an explicit cone(...) fallback for classes outside the catalog.  Ext
data after a single tilt is flagged unknown: no mutation rule for the
quiver-with-potential is assumed anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .charge import CentralCharge, ExactComplex, in_H
from .klattice import (
    KClass,
    LatticeAuto,
    apply,
    det4,
    gamma,
    identity_auto,
    project,
    t,
    t_psi,
)

# arrow counts of the underlying quiver: ext[i][j] = dim Ext^1(S_j, S_i),
# a double arrow on each edge of the 4-cycle (re-derived by geometry.derive_quiver)
QUIVER_EXT: tuple[tuple[int, int, int, int], ...] = (
    (0, 2, 0, 0),
    (0, 0, 2, 0),
    (0, 0, 0, 2),
    (2, 0, 0, 0),
)


# -- labels -------------------------------------------------------------------

@dataclass(frozen=True)
class Label:
    """Symbolic object descriptor.

    kind 'pushforward' is Psi^psi(s*O(a,b)[shift]); kind 'fiber' is
    Psi^psi(s*O_fiber(x)(twist)[shift]) with twist 0 or -1; kind 'cone' is an
    unidentified class, carrying only its printed form.
    """

    kind: str
    a: int = 0
    b: int = 0
    twist: int = 0
    shift: int = 0
    psi: int = 0
    text: str = ""


def format_label(lbl: Label) -> str:
    if lbl.kind == "cone":
        return f"cone({lbl.text})"
    if lbl.kind == "pushforward":
        core = f"s*O({lbl.a},{lbl.b})"
    elif lbl.kind == "fiber":
        core = "s*O_fiber(x)" + ("(-1)" if lbl.twist == -1 else "")
    else:
        raise ValueError(f"unknown label kind {lbl.kind!r}")
    if lbl.shift:
        core += f"[{lbl.shift}]"
    if lbl.psi == 1:
        core = f"Psi({core})"
    elif lbl.psi:
        core = f"Psi^{lbl.psi}({core})"
    return core


def parse_label(text: str) -> Label:
    s = text.strip()
    psi = 0
    if s.startswith("Psi^"):
        head, s = s.split("(", 1)
        psi = int(head[4:])
        if not s.endswith(")"):
            raise ValueError(f"unbalanced label {text!r}")
        s = s[:-1]
    elif s.startswith("Psi("):
        psi = 1
        if not s.endswith(")"):
            raise ValueError(f"unbalanced label {text!r}")
        s = s[4:-1]
    if s.startswith("cone(") and s.endswith(")"):
        return Label("cone", text=s[5:-1])
    shift = 0
    if s.endswith("]"):
        s, tail = s.rsplit("[", 1)
        shift = int(tail[:-1])
    if s.startswith("s*O_fiber(x)"):
        rest = s[len("s*O_fiber(x)"):]
        if rest == "":
            return Label("fiber", twist=0, shift=shift, psi=psi)
        if rest == "(-1)":
            return Label("fiber", twist=-1, shift=shift, psi=psi)
        raise ValueError(f"bad fiber twist in {text!r}")
    if s.startswith("s*O(") and s.endswith(")"):
        a, b = s[4:-1].split(",")
        return Label("pushforward", a=int(a), b=int(b), shift=shift, psi=psi)
    raise ValueError(f"unparseable label {text!r}")


def _bump_shift(lbl: Label, d: int) -> Label:
    return replace(lbl, shift=lbl.shift + d)


def label_for_kclass(v: KClass, _negated: bool = False) -> Label | None:
    """Catalog label of a class, when one exists.

    Matches the twelve one-parameter families of Kronecker-type objects (and
    their fiber-sheaf degenerations); a class matching only after negation is
    reported with the shift bumped by one.
    """
    a0, a1, a2, a3 = v.coords

    def mk(**kw):
        return Label(**kw)

    out = None
    if a2 == 0 and a3 == 0 and (a0, a1) != (0, 0):
        if a0 == a1 + 1 and a1 >= 0:
            out = mk(kind="pushforward", a=a1, b=0)
        elif a1 == a0 + 1 and a0 >= 0:
            out = mk(kind="pushforward", a=-a0 - 1, b=0, shift=1)
        elif a0 == a1 == 1:
            out = mk(kind="fiber")
    elif a0 == 0 and a1 == 0 and (a2, a3) != (0, 0):
        if a2 == a3 + 1 and a3 >= 0:
            out = mk(kind="pushforward", a=a2, b=-1, shift=1)
        elif a3 == a2 + 1 and a2 >= 0:
            out = mk(kind="pushforward", a=-a2, b=-1, shift=2)
        elif a2 == a3 == 1:
            out = mk(kind="fiber", twist=-1, shift=1)
    elif a0 == 0 and a3 == 0 and (a1, a2) != (0, 0):
        if a1 == a2 + 1 and a2 >= 0:
            out = mk(kind="pushforward", a=a2, b=0, psi=1)
        elif a2 == a1 + 1 and a1 >= 0:
            out = mk(kind="pushforward", a=-a1 - 1, b=0, shift=1, psi=1)
        elif a1 == a2 == 1:
            out = mk(kind="fiber", psi=1)
    elif a1 == 0 and a2 == 0 and (a0, a3) != (0, 0):
        if a3 == a0 + 1 and a0 >= 0:
            out = mk(kind="pushforward", a=a0 + 1, b=-1, shift=1, psi=1)
        elif a0 == a3 + 1 and a3 >= 0:
            out = mk(kind="pushforward", a=-a3, b=-1, shift=2, psi=1)
        elif a0 == a3 == 1:
            out = mk(kind="fiber", twist=-1, shift=1, psi=1)
    if out is not None:
        return out
    if not _negated and not v.is_zero():
        neg = label_for_kclass(-v, _negated=True)
        if neg is not None:
            return _bump_shift(neg, 1)
    return None


def _cone_text(v: KClass) -> str:
    terms = []
    for i, c in enumerate(v.coords):
        if c == 0:
            continue
        if c == 1:
            terms.append(f"+g{i}" if terms else f"g{i}")
        elif c == -1:
            terms.append(f"-g{i}")
        else:
            terms.append(f"{c:+d}*g{i}" if terms else f"{c}*g{i}")
    return "".join(terms) if terms else "0"


def label_or_cone(v: KClass) -> Label:
    lbl = label_for_kclass(v)
    return lbl if lbl is not None else Label("cone", text=_cone_text(v))


# -- hearts -------------------------------------------------------------------

@dataclass(frozen=True)
class SimpleObject:
    kclass: KClass
    label: Label

    def to_json(self) -> dict:
        return {"class": self.kclass.to_json(), "label": format_label(self.label)}


@dataclass(frozen=True)
class Heart:
    """Ordered 4-tuple of simples; ext is the arrow-count matrix or None for unknown.

    After a single tilt the ext matrix is unknown, but the tilt that produced
    the heart is remembered in `undo`: inverting a tilt at the shifted simple
    reuses the very multiplicities of the forward tilt (the cone triangles
    pair them off), so the roundtrip needs no new ext data.
    """

    simples: tuple[SimpleObject, SimpleObject, SimpleObject, SimpleObject]
    ext: tuple[tuple[int, int, int, int], ...] | None
    undo: tuple | None = None  # (slot, direction, mults, previous ext)

    def __post_init__(self):
        cols = [s.kclass.coords for s in self.simples]
        d = det4(tuple(tuple(cols[j][i] for j in range(4)) for i in range(4)))
        if d not in (1, -1):
            raise ValueError(f"simple classes are not a lattice basis (det={d})")

    def kclasses(self) -> tuple[KClass, ...]:
        return tuple(s.kclass for s in self.simples)

    def to_json(self) -> list[dict]:
        return [s.to_json() for s in self.simples]


def standard_heart() -> Heart:
    simples = tuple(
        SimpleObject(gamma(i), label_for_kclass(gamma(i))) for i in range(4)
    )
    return Heart(simples, QUIVER_EXT)


def _retag(old: SimpleObject, new_class: KClass, shift: int | None = None) -> SimpleObject:
    """Simple object for a class after a tilt: shift the old label, or re-match."""
    if shift is not None and old.label.kind != "cone":
        return SimpleObject(new_class, _bump_shift(old.label, shift))
    if new_class == old.kclass:
        return SimpleObject(new_class, old.label)
    return SimpleObject(new_class, label_or_cone(new_class))


def simple_tilt(h: Heart, i: int, direction: str) -> Heart:
    """Left or right tilt at the i-th simple, at the level of classes and labels.

    Left: the tilted class negates and every other class gains
    ext^1(X, S_i) copies of it; right uses ext^1(S_i, X).  The resulting ext
    matrix is unknown (no mutation rule is assumed), so iterated single tilts
    beyond the first are rejected by the ext-known precondition.
    """
    if direction not in ("left", "right"):
        raise ValueError("direction must be 'left' or 'right'")
    if not 0 <= i <= 3:
        raise IndexError("tilt slot out of range")
    if h.ext is None:
        return _invert_simple_tilt(h, i, direction)
    if h.ext[i][i] != 0:
        raise ValueError("tilted simple must have no self-extension")
    si = h.simples[i].kclass
    mults = tuple(
        0 if j == i else (h.ext[i][j] if direction == "left" else h.ext[j][i])
        for j in range(4)
    )
    new_simples = []
    for j, s in enumerate(h.simples):
        if j == i:
            new_simples.append(_retag(s, -si, shift=1 if direction == "left" else -1))
            continue
        new_simples.append(_retag(s, s.kclass + mults[j] * si))
    return Heart(tuple(new_simples), None, undo=(i, direction, mults, h.ext))


def _invert_simple_tilt(h: Heart, i: int, direction: str) -> Heart:
    """Undo the single tilt that produced h, at the shifted simple, opposite direction."""
    if h.undo is None:
        raise ValueError("tilt needs a known ext matrix")
    slot, prev_dir, mults, prev_ext = h.undo
    if i != slot or direction == prev_dir:
        raise ValueError(
            "ext matrix unknown: only the inverse tilt at the shifted simple is defined"
        )
    si = h.simples[i].kclass  # the shifted simple, class already negated
    new_simples = []
    for j, s in enumerate(h.simples):
        if j == i:
            new_simples.append(_retag(s, -si, shift=1 if direction == "left" else -1))
        else:
            new_simples.append(_retag(s, s.kclass + mults[j] * si))
    return Heart(tuple(new_simples), prev_ext)


def double_tilt(h: Heart, pair: tuple[int, int], direction: str) -> Heart:
    """Composite tilt at two opposite simples with no extensions between them.

    Vanishing ext both ways makes the two single tilts commute and leaves the
    multiplicities used by the second tilt untouched, so the composite acts in
    one pass.  The result is an autoequivalence image of the starting heart;
    when the start carries the standard matrix the result does too.
    """
    if direction not in ("left", "right"):
        raise ValueError("direction must be 'left' or 'right'")
    i, j = sorted(pair)
    if (i, j) not in ((0, 2), (1, 3)):
        raise ValueError("double tilt pairs opposite slots {0,2} or {1,3}")
    if h.ext is None:
        raise ValueError("tilt needs a known ext matrix")
    if h.ext[i][j] != 0 or h.ext[j][i] != 0:
        raise ValueError("paired slots must have no extensions between them")
    si, sj = h.simples[i].kclass, h.simples[j].kclass
    new_simples = []
    for k, s in enumerate(h.simples):
        if k in (i, j):
            new_simples.append(_retag(s, -s.kclass, shift=1 if direction == "left" else -1))
            continue
        if direction == "left":
            mult_i, mult_j = h.ext[i][k], h.ext[j][k]
        else:
            mult_i, mult_j = h.ext[k][i], h.ext[k][j]
        new_simples.append(_retag(s, s.kclass + mult_i * si + mult_j * sj))
    ext = QUIVER_EXT if h.ext == QUIVER_EXT else None
    return Heart(tuple(new_simples), ext)


# -- words in the tilt generators ----------------------------------------------

GENERATORS = ("T", "T^-1", "Tpsi", "Tpsi^-1")
_INVERSE = {"T": "T^-1", "T^-1": "T", "Tpsi": "Tpsi^-1", "Tpsi^-1": "Tpsi"}


def token_auto(tok: str) -> LatticeAuto:
    if tok == "T":
        return t()
    if tok == "T^-1":
        return t().inverse()
    if tok == "Tpsi":
        return t_psi()
    if tok == "Tpsi^-1":
        return t_psi().inverse()
    raise ValueError(f"unknown tilt generator {tok!r}")


def reduce_word(word) -> tuple[str, ...]:
    """Freely reduce: cancel adjacent inverse pairs."""
    out: list[str] = []
    for tok in word:
        if tok not in GENERATORS:
            raise ValueError(f"unknown tilt generator {tok!r}")
        if out and out[-1] == _INVERSE[tok]:
            out.pop()
        else:
            out.append(tok)
    return tuple(out)


def parse_word(text: str) -> tuple[str, ...]:
    text = text.strip()
    if not text:
        return ()
    return reduce_word(tok.strip() for tok in text.split(","))


def word_auto(word) -> LatticeAuto:
    """Product of the generators, leftmost applied last (word order = composition order)."""
    acc = identity_auto()
    for tok in word:
        acc = acc * token_auto(tok)
    return acc


def word_exponent(word) -> int:
    """Image of the word in the quotient: the power of the quotient twist matrix."""
    n = 0
    for tok in word:
        n += {"T": 1, "T^-1": -1, "Tpsi": -1, "Tpsi^-1": 1}[tok]
    return n


def heart_of_word(word) -> Heart:
    """Heart labeled by a reduced word: word matrix applied to the standard simples.

    Labels are recovered from the transformed classes through the object
    catalog (which reproduces the twist action on pushforward labels), with a
    cone fallback off-catalog.  The result is an autoequivalence image of the
    standard heart, so it carries the standard ext matrix.
    """
    word = reduce_word(word)
    m = word_auto(word)
    simples = tuple(
        SimpleObject(apply(m, gamma(i)), label_or_cone(apply(m, gamma(i)))) for i in range(4)
    )
    return Heart(simples, QUIVER_EXT)


def heart_equal_kclasses(h1: Heart, h2: Heart) -> bool:
    """Equality of the unordered multisets of simple classes."""
    return sorted(s.kclass.coords for s in h1.simples) == sorted(
        s.kclass.coords for s in h2.simples
    )


# -- algebraic stability data ---------------------------------------------------

@dataclass(frozen=True)
class AlgebraicStability:
    """An invariant stability datum: a heart with a compatible quotient charge."""

    heart: Heart
    charge: CentralCharge


def algebraic_stability(h: Heart, values: tuple[ExactComplex, ...]) -> AlgebraicStability:
    """Assign half-plane values to the four simples, enforcing the symmetry.

    Invariance forces value(0) = value(2) and value(1) = value(3); the
    quotient charge is solved from the projected classes of slots 0 and 1.
    """
    if len(values) != 4:
        raise ValueError("need one value per simple")
    for z in values:
        if not in_H(z):
            raise ValueError("every simple must map into the half plane")
    if values[0] != values[2] or values[1] != values[3]:
        raise ValueError("invariance requires value(0)=value(2) and value(1)=value(3)")
    v0 = project(h.simples[0].kclass)
    v1 = project(h.simples[1].kclass)
    if project(h.simples[2].kclass) != v0 or project(h.simples[3].kclass) != v1:
        raise ValueError("heart is not symmetric: projected simples do not pair up")
    (a0, b0), (a1, b1) = v0.coords, v1.coords
    det = a0 * b1 - a1 * b0
    if det == 0:
        raise ValueError("projected simple classes are dependent")
    z0 = (values[0].scale(b1) - values[1].scale(b0)) / det
    z1 = (values[1].scale(a0) - values[0].scale(a1)) / det
    return AlgebraicStability(h, CentralCharge(z0, z1))
