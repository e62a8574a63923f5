"""The rank-2 slice picture: rays of the cones and walls, and the chambers between them.

Every class ``a*A + b*w`` with ``a > 0`` is drawn at its slope ``b/a`` (see
:class:`bzchambers.cones.Slicer`).  Rays carry the roles they play:

* ``psef``: boundary ray of the pseudo-effective cone;
* ``qnef``: boundary ray of the q-nef cone;
* ``nef``: an annotated class with role "nef";
* ``wall``: the line ``D^perp`` of a declared prime inside the positive cone;
* ``prime``: a declared prime that bounds nothing.

Irrational isotropic rays are drawn at their inner rational approximation
and labelled as approximate.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from xml.sax.saxutils import quoteattr, escape

from .chambers import enumerate_blocks
from .cones import IrrationalRay, Slicer, in_psef, in_qnef_cone, psef_cone, qnef_cone
from .errors import Unsupported
from .lattice import ManifoldSpec, format_class, format_number, primitive, qform

ROLE_ORDER = ("psef", "qnef", "nef", "wall", "prime")
WIDTH, HEIGHT, MARGIN = 640, 420, 60


@dataclass(frozen=True)
class SliceRay:
    label: str
    coords: tuple
    slope: Fraction
    roles: tuple
    exact: bool = True

    @property
    def role(self) -> str:
        return " ".join(self.roles)


@dataclass(frozen=True)
class SliceChamber:
    label: str
    block: tuple
    low: Fraction     # slope interval
    high: Fraction


@dataclass(frozen=True)
class SliceFigure:
    rays: tuple
    chambers: tuple
    bound_squared: Fraction


def _labels(spec: ManifoldSpec) -> dict:
    out = {}
    for lab, c, _ in spec.annotations:
        out.setdefault(primitive(c), lab)
    for p in spec.primes:
        out[primitive(p.coords)] = p.label
    return out


def slice_figure(spec: ManifoldSpec) -> SliceFigure:
    """Rays and chambers of a rank-2 spec, rays sorted by slope.

    >>> from bzchambers.specs import hilb2
    >>> fig = slice_figure(hilb2())
    >>> [(r.label, r.role) for r in fig.rays]
    [('H - delta', 'psef qnef'), ('3H-2delta', 'nef'), ('H', 'qnef wall'), ('delta', 'psef')]
    >>> [c.label for c in fig.chambers]
    ['Σ_M', 'Σ_H']
    """
    if spec.rank != 2:
        raise Unsupported(f"slice figures need rank 2, spec has rank {spec.rank}")
    sl = Slicer.of(spec)
    names = _labels(spec)
    found: dict = {}     # primitive coords -> [slope, roles, exact, label]

    def put(coords, slope, role, exact=True, label=None):
        key = primitive(coords)
        entry = found.setdefault(key, [Fraction(slope), set(), exact, label])
        entry[1].add(role)
        if label and not entry[3]:
            entry[3] = label

    for cone, role in ((psef_cone(spec), "psef"), (qnef_cone(spec), "qnef")):
        for r in cone.rays:
            if isinstance(r, IrrationalRay):
                side = "+" if r.side > 0 else "-"
                put(r.inner, sl.slope(r.inner), role, False, f"isotropic{side} (approx)")
            else:
                put(r.coords, r.slope, role)
    for lab, c, role in spec.annotations:
        if role == "nef" and qform(spec, c, spec.ample) > 0:
            put(c, sl.slope(c), "nef", label=lab)
    bound2 = sl.bound_squared
    for p in spec.primes:
        qa = qform(spec, spec.ample, p.coords)
        qw = qform(spec, sl.w, p.coords)
        if qw != 0:
            t = -qa / qw
            if t * t <= bound2:
                put(sl.point(t), t, "wall")
        key = primitive(p.coords)
        if key not in found:
            put(p.coords, sl.slope(p.coords), "prime")

    rays = []
    for coords, (slope, roles, exact, label) in found.items():
        label = label or names.get(coords) or format_class(coords, spec.basis_labels)
        rays.append(SliceRay(label, coords, slope, tuple(r for r in ROLE_ORDER if r in roles), exact))
    rays.sort(key=lambda r: r.slope)

    qnef_rays = [r for r in rays if "qnef" in r.roles]
    chambers = []
    for block in enumerate_blocks(spec):
        if not block:
            lo, hi = qnef_rays[0].slope, qnef_rays[-1].slope
            chambers.append(SliceChamber("Σ_M", block, lo, hi))
            continue
        face = [r for r in qnef_rays
                if tuple(i for i in spec.exceptional_index
                         if qform(spec, r.coords, spec.prime_class(i)) == 0) == block]
        ends = [sl.slope(spec.prime_class(i)) for i in block]
        if face:
            name = face[0].label
            ends.append(face[0].slope)
        else:
            name = ",".join(spec.primes[i].label for i in block)
        chambers.append(SliceChamber(f"Σ_{name}", block, min(ends), max(ends)))
    return SliceFigure(tuple(rays), tuple(chambers), bound2)


def ray_is_member(spec: ManifoldSpec, coords, role: str) -> bool:
    """Check a drawn ray against the membership test of its role."""
    tests = {
        "psef": lambda v: in_psef(spec, v),
        "qnef": lambda v: in_qnef_cone(spec, v),
        "nef": lambda v: in_qnef_cone(spec, v),
        "wall": lambda v: any(qform(spec, v, p.coords) == 0 for p in spec.primes),
        "prime": lambda v: any(primitive(v) == primitive(p.coords) for p in spec.primes),
    }
    return tests[role](coords)


def _coords_text(coords) -> str:
    return " ".join(format_number(x) for x in coords)


def _px(x: Fraction) -> str:
    """Fixed-point text with two decimals, rounded exactly."""
    n = round(Fraction(x) * 100)
    sign = "-" if n < 0 else ""
    n = abs(n)
    return f"{sign}{n // 100}.{n % 100:02d}"


def to_csv(fig: SliceFigure) -> str:
    """One row per ray: label, coords (space separated), roles (space separated)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "coords", "role"])
    for r in fig.rays:
        w.writerow([r.label, _coords_text(r.coords), r.role])
    return buf.getvalue()


def to_svg(fig: SliceFigure, title: str = "chambers") -> str:
    """The slice as an SVG: apex at the bottom, slice segment along the top."""
    slopes = [r.slope for r in fig.rays] or [Fraction(-1), Fraction(1)]
    lo, hi = min(slopes), max(slopes)
    if lo == hi:
        lo, hi = lo - 1, hi + 1
    pad = (hi - lo) / 10
    lo, hi = lo - pad, hi + pad
    apex = (Fraction(WIDTH, 2), Fraction(HEIGHT - MARGIN // 2))
    top = Fraction(MARGIN)

    def x_of(s):
        return MARGIN + (Fraction(s) - lo) / (hi - lo) * (WIDTH - 2 * MARGIN)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f"  <title>{escape(title)}</title>",
        '  <rect width="100%" height="100%" fill="white"/>',
    ]
    shades = ("#dfe9f5", "#f5e6d3", "#e2f0dc", "#efdcef")
    for k, c in enumerate(fig.chambers):
        a, b = x_of(c.low), x_of(c.high)
        pts = f"{_px(apex[0])},{_px(apex[1])} {_px(a)},{_px(top)} {_px(b)},{_px(top)}"
        block = " ".join(str(i) for i in c.block)
        out.append(f'  <polygon class="chamber" data-label={quoteattr(c.label)} '
                   f'data-block="{block}" points="{pts}" fill="{shades[k % len(shades)]}" '
                   f'stroke="none"/>')
        out.append(f'  <text class="chamber-label" x="{_px((a + b) / 2)}" y="{_px(top + 40)}" '
                   f'text-anchor="middle" font-size="14">{escape(c.label)}</text>')
    out.append(f'  <line class="slice" x1="{MARGIN}" y1="{MARGIN}" x2="{WIDTH - MARGIN}" '
               f'y2="{MARGIN}" stroke="#999" stroke-dasharray="4 3"/>')
    colors = {"psef": "#b22222", "qnef": "#1f4e9a", "nef": "#2e7d32", "wall": "#6a1b9a",
              "prime": "#555"}
    for r in fig.rays:
        x = x_of(r.slope)
        dash = "" if r.exact else ' stroke-dasharray="6 3"'
        out.append(f'  <line class="ray" data-label={quoteattr(r.label)} '
                   f'data-coords="{_coords_text(r.coords)}" data-role="{r.role}" '
                   f'data-exact="{str(r.exact).lower()}" x1="{_px(apex[0])}" y1="{_px(apex[1])}" '
                   f'x2="{_px(x)}" y2="{_px(top)}" stroke="{colors[r.roles[0]]}" '
                   f'stroke-width="2"{dash}/>')
        out.append(f'  <text class="ray-label" x="{_px(x)}" y="{_px(top - 10)}" '
                   f'text-anchor="middle" font-size="12">{escape(r.label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
