"""SVG rendering of brick patterns.

Lattice row 0 renders at the bottom (y axis flipped), one rect per brick,
stroked with the mortar color.  Output is byte-deterministic: bricks are
emitted in (y, x) order and numbers use fixed formatting with at most three
decimals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .generate import Pattern
from .rules import PALETTE, SubstitutionRule


@dataclass(frozen=True)
class RenderStyle:
    cell_size: float = 20.0
    mortar_width: float = 1.5
    mortar_color: str = "#808080"
    background: Optional[str] = None
    palette: Tuple[str, ...] = PALETTE


def _fmt(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return s if s and s != "-0" else "0"


def to_svg(pattern: Pattern, style: Optional[RenderStyle] = None,
           rule: Optional[SubstitutionRule] = None) -> str:
    """Render a pattern as an SVG document string.

    Colors come from the rule's brick types when the rule is given,
    otherwise from the style palette in sorted type order.
    """
    if not pattern.bricks:
        raise ValueError("cannot render an empty pattern")
    style = style or RenderStyle()
    if style.cell_size <= 0:
        raise ValueError(f"cell_size must be positive, got {style.cell_size}")

    if rule is not None:
        colors = {t.id: t.color for t in rule.types}
        order = rule.type_ids
    else:
        colors = {}
        order = tuple(sorted({b.type_id for b in pattern.bricks}))
    for i, tid in enumerate(order):
        colors.setdefault(tid, style.palette[i % len(style.palette)])

    min_x, min_y, max_x, max_y = pattern.bbox()
    cs, pad = style.cell_size, style.mortar_width
    width = (max_x - min_x) * cs + 2 * pad
    height = (max_y - min_y) * cs + 2 * pad

    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}"'
             f' height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">']
    if style.background:
        lines.append(f'<rect x="0" y="0" width="{_fmt(width)}"'
                     f' height="{_fmt(height)}" fill="{style.background}"/>')
    for b in sorted(pattern.bricks, key=lambda b: (b.y, b.x)):
        px = (b.x - min_x) * cs + pad
        py = (max_y - b.y - b.height) * cs + pad  # flip so row 0 is at the bottom
        lines.append(f'<rect x="{_fmt(px)}" y="{_fmt(py)}"'
                     f' width="{_fmt(b.width * cs)}" height="{_fmt(b.height * cs)}"'
                     f' fill="{colors[b.type_id]}" stroke="{style.mortar_color}"'
                     f' stroke-width="{_fmt(style.mortar_width)}"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
