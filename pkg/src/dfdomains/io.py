"""Group files, JSON reports and SVG pictures."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from xml.sax.saxutils import escape

from . import exactnum as en
from .domains import FundamentalDomain, area, format_word, signature
from .exactnum import mp, parse_quadrat, to_mpf
from .halfplane import INF, MoebiusMap, VerticalLine
from .kleinian import ComplexMoebiusMap, parse_complex


class ParseError(ValueError):
    pass


def fixture_path(name: str) -> Path:
    """Path of a bundled group file (``modular.json``, ``gamma11.json``, ...)."""
    return Path(str(resources.files("dfdomains") / "data" / name))


def _read(source):
    if isinstance(source, dict):
        return source
    path = Path(source)
    if not path.exists() and not path.is_absolute() and fixture_path(path.name).exists():
        path = fixture_path(path.name)
    try:
        return json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read group file {source}: {exc}") from exc


def parse_matrix(rows, d=None) -> MoebiusMap:
    try:
        (a, b), (c, e) = rows
        entries = [parse_quadrat(str(x), d) for x in (a, b, c, e)]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad matrix {rows!r}: {exc}") from exc
    det = entries[0] * entries[3] - entries[1] * entries[2]
    if en.sign(det) <= 0:
        raise ParseError(f"matrix {rows!r} must have positive determinant")
    if en.lift(det).sqrt() is None:
        raise ParseError(f"determinant of {rows!r} is not a square in the field")
    return MoebiusMap(*entries)


def load_group(source) -> list:
    """Generators from ``{"d": ..., "generators": [[["a","b"],["c","d"]], ...]}``."""
    data = _read(source)
    if "generators" not in data:
        raise ParseError("group file has no 'generators'")
    d = data.get("d")
    return [parse_matrix(m, d) for m in data["generators"]]


def load_kleinian(source) -> list:
    data = _read(source)
    if "generators" not in data:
        raise ParseError("group file has no 'generators'")
    d = data.get("d")
    out = []
    for rows in data["generators"]:
        try:
            (a, b), (c, e) = rows
            g = ComplexMoebiusMap(*(parse_complex(x, d) for x in (a, b, c, e)))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad matrix {rows!r}: {exc}") from exc
        if not g.is_unimodular():
            raise ParseError(f"matrix {rows!r} does not have determinant 1")
        out.append(g)
    return out


def load_json(source) -> dict:
    return _read(source)


# ---------------------------------------------------------------------------
# JSON

def num(x) -> str:
    if x is INF:
        return "oo"
    if en.is_exact(x):
        return str(en.lift(x))
    return mp.nstr(mp.mpf(x), 30)


def point_json(p):
    if p is INF:
        return "oo"
    return {"x": num(p.x), "y2": num(p.y2)}


def matrix_json(g) -> list:
    return [[num(g.a), num(g.b)], [num(g.c), num(g.d)]]


def geodesic_json(geo) -> dict:
    if isinstance(geo, VerticalLine):
        return {"type": "vertical", "x": num(geo.x)}
    return {"type": "arc", "center": num(geo.center), "radius_sq": num(geo.radius_sq)}


def _frac(q):
    return None if q is None else str(q)


def domain_json(dom: FundamentalDomain) -> dict:
    sig = signature(dom)
    return {
        "kind": dom.kind,
        "strip": {"left": num(dom.left), "right": num(dom.right), "width": num(dom.width)},
        "center": point_json(dom.center) if dom.center is not None else None,
        "depth": dom.depth,
        "sides": [dict(index=s.index, **geodesic_json(s.geodesic),
                       start=point_json(s.start), end=point_json(s.end),
                       target=s.target, pairing=matrix_json(s.pairing),
                       pairing_word=format_word(s.word))
                  for s in dom.sides],
        "vertices": [{"point": point_json(v.point), "angle_over_pi": _frac(v.angle_over_pi),
                      "ideal": v.ideal} for v in dom.vertices],
        "cycles": [{"members": list(c.members), "order": c.order, "ideal": c.ideal,
                    "angle_sum_over_pi": mp.nstr(c.angle_sum / mp.pi, 20)}
                   for c in dom.cycles],
        "signature": {"genus": sig.genus, "cone_orders": list(sig.cone_orders),
                      "cusps": sig.cusps, "text": str(sig)},
        "area_over_pi": mp.nstr(area(dom) / mp.pi, 20),
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# SVG

PX = 300
TOP = 1.5
MARGIN = 20


def _svg_paths(pieces, left, right):
    """``pieces`` are (geodesic, start, end) triples; returns path strings."""
    def X(x):
        return MARGIN + (float(to_mpf(x)) - left) * PX

    def Y(y):
        return MARGIN + (TOP - y) * PX

    def ycoord(p):
        return TOP if p is INF else min(TOP, float(mp.sqrt(to_mpf(p.y2))))

    out = []
    for geo, start, end in pieces:
        if isinstance(geo, VerticalLine):
            x = X(geo.x)
            out.append(f"M {x:.3f} {Y(ycoord(start)):.3f} L {x:.3f} {Y(ycoord(end)):.3f}")
        else:
            r = float(mp.sqrt(to_mpf(geo.radius_sq))) * PX
            x1, y1 = X(start.x), Y(ycoord(start))
            x2, y2 = X(end.x), Y(ycoord(end))
            sweep = 1 if float(to_mpf(end.x)) > float(to_mpf(start.x)) else 0
            out.append(f"M {x1:.3f} {y1:.3f} A {r:.3f} {r:.3f} 0 0 {sweep} {x2:.3f} {y2:.3f}")
    return out


def svg_document(pieces, left, right, axis=None, title="") -> str:
    left, right = float(to_mpf(left)), float(to_mpf(right))
    width = (right - left) * PX + 2 * MARGIN
    height = TOP * PX + 2 * MARGIN
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1f}" height="{height:.1f}" '
             f'viewBox="0 0 {width:.1f} {height:.1f}">']
    if title:
        lines.append(f"  <title>{escape(title)}</title>")
    base_y = MARGIN + TOP * PX
    lines.append(f'  <line x1="0" y1="{base_y:.3f}" x2="{width:.1f}" y2="{base_y:.3f}" '
                 f'stroke="#999" stroke-width="1"/>')
    for d in _svg_paths(pieces, left, right):
        lines.append(f'  <path d="{d}" fill="none" stroke="black" stroke-width="1.5"/>')
    if axis is not None:
        x = MARGIN + (float(to_mpf(axis)) - left) * PX
        lines.append(f'  <line x1="{x:.3f}" y1="{MARGIN}" x2="{x:.3f}" y2="{base_y:.3f}" '
                     f'stroke="#c00" stroke-width="1" stroke-dasharray="6,4"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def domain_svg(dom: FundamentalDomain, axis=None) -> str:
    pieces = [(s.geodesic, s.start, s.end) for s in dom.sides]
    return svg_document(pieces, dom.left, dom.right, axis, title=f"{dom.kind} domain")


def polygon_svg(Q) -> str:
    n = len(Q.sides)
    pieces = [(Q.sides[i], Q.vertices[i], Q.vertices[(i + 1) % n]) for i in range(n)]
    left, right = Q.sides[0].x, Q.sides[-1].x
    return svg_document(pieces, left, right, right, title="reflection polygon")
