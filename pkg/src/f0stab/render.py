"""SVG figures: the charge fan of a chamber and the real hyperplane slice.

The only place in the package where floats appear; everything drawn is
computed exactly first and converted at the last moment for coordinates.
"""

from __future__ import annotations

from .chambers import ChamberPoint, semistable_delta_witness, stable_catalog
from .charge import evaluate
from .hearts import format_label

_W, _H = 720, 540


def _svg(parts: list[str]) -> str:
    body = "\n".join(parts)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">\n{body}\n</svg>\n'
    )


def _line(x1, y1, x2, y2, color="black", width=1.0, dash=None) -> str:
    d = f' stroke-dasharray="{dash}"' if dash else ""
    return (
        f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
        f'stroke="{color}" stroke-width="{width}"{d}/>'
    )


def _text(x, y, s, size=11) -> str:
    safe = s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    return f'<text x="{x:.2f}" y="{y:.2f}" font-size="{size}">{safe}</text>'


def render_charge_diagram(p: ChamberPoint, n_max: int) -> str:
    """Rays from the origin to the charges of the catalog entries plus delta."""
    Z = p.x.charge()
    entries = stable_catalog(p, n_max)
    d, d_val = semistable_delta_witness(p)
    rays = [(evaluate(Z, e.kclass), format_label(e.label)) for e in entries]
    rays.append((d_val, "O_point (delta)"))
    cx, cy = _W / 2, _H * 0.7
    scale_cap = max(max(abs(float(v.re)), abs(float(v.im))) for v, _ in rays)
    scale = (min(_W, _H) * 0.42) / (scale_cap or 1.0)
    parts = [_line(0, cy, _W, cy, color="#888", dash="4 4")]
    for v, name in rays:
        x = cx + float(v.re) * scale
        y = cy - float(v.im) * scale
        parts.append(_line(cx, cy, x, y, color="#1050a0", width=1.4))
        parts.append(_text(x + 3, y - 3, name, size=9))
    parts.append(_text(8, 16, f"chamber {p.region().describe()}, word {list(p.word)}"))
    return _svg(parts)


def render_arrangement(n_max: int) -> str:
    """The real 2-plane slice with the vanishing lines of the stable family.

    Horizontal coordinate: common value of the odd simples; vertical: the even
    ones.  The class (p, q) vanishes on the line p*v + q*h = 0; the family for
    n <= n_max gives 2(n_max+1)+1 lines counting the diagonal once.
    """
    cx, cy = _W / 2, _H / 2
    r = min(_W, _H) * 0.46
    classes = [(1, 1)]
    for n in range(n_max + 1):
        classes.append((n, n + 1))
        classes.append((n + 1, n))
    seen = set()
    parts = []
    for pq in classes:
        if pq in seen:
            continue
        seen.add(pq)
        p, q = pq
        # direction of {p*v + q*h = 0} in (h, v) coordinates
        dh, dv = p, -q
        norm = (dh * dh + dv * dv) ** 0.5
        ux, uy = dh / norm, dv / norm
        parts.append(
            _line(cx - r * ux, cy + r * uy, cx + r * ux, cy - r * uy, color="#1050a0")
        )
        parts.append(_text(cx + r * ux * 0.92 + 4, cy - r * uy * 0.92, f"({p},{q})", size=9))
    parts.append(_text(cx + r * 0.7, cy - 6, "Z(g1)=Z(g3)"))
    parts.append(_text(cx + 6, cy - r * 0.93, "Z(g0)=Z(g2)"))
    return _svg(parts)
