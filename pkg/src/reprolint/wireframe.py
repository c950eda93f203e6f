"""Schematic SVG wireframes rendered from screen snapshots.

Stands in for device screenshots: every component is drawn from its bounds
and label, and the component an interaction targets can be outlined.
"""

from __future__ import annotations

from html import escape

from .appmodel import SCREEN_HEIGHT, SCREEN_WIDTH, GuiComponent, ScreenInstance

_FILL = {
    "Button": "#d7e3fc",
    "TextField": "#ffffff",
    "TextView": "none",
    "ImageView": "#eeeeee",
    "Layout": "none",
    "List": "#fbfbfb",
    "Checkbox": "#ffffff",
    "DropDown": "#f1f1f1",
    "MenuItem": "#f8f8f8",
}


def _text(x: int, y: int, content: str, size: int = 12) -> str:
    return (
        f'<text x="{x}" y="{y}" font-family="sans-serif" font-size="{size}" '
        f'fill="#333">{escape(content)}</text>'
    )


def _component_svg(comp: GuiComponent, highlight: str | None) -> list[str]:
    x, y, w, h = comp.bounds
    fill = _FILL.get(comp.comp_type, "none")
    parts: list[str] = []
    stroke = "#999"
    dash = ' stroke-dasharray="4 3"' if comp.comp_type == "Layout" else ""
    rx = ' rx="6"' if comp.comp_type == "Button" else ""
    if comp.comp_type != "TextView":
        parts.append(
            f'<rect x="{x}" y="{y}" width="{w}" height="{h}" fill="{fill}" '
            f'stroke="{stroke}"{dash}{rx}/>'
        )
    if comp.comp_type == "List":
        row = max(h // 4, 12)
        for i in range(1, min(4, h // row + 1)):
            yy = y + i * row
            if yy < y + h:
                parts.append(f'<line x1="{x}" y1="{yy}" x2="{x + w}" y2="{yy}" stroke="#ddd"/>')
    if comp.comp_type == "Checkbox":
        parts.append(f'<rect x="{x + 4}" y="{y + h // 2 - 7}" width="14" height="14" '
                     f'fill="#fff" stroke="#666"/>')
    if comp.comp_type == "DropDown":
        ax = x + w - 18
        ay = y + h // 2 - 3
        parts.append(f'<path d="M{ax} {ay} l10 0 l-5 7 z" fill="#666"/>')
    if comp.comp_type == "ImageView":
        parts.append(f'<line x1="{x}" y1="{y}" x2="{x + w}" y2="{y + h}" stroke="#ccc"/>')
        parts.append(f'<line x1="{x + w}" y1="{y}" x2="{x}" y2="{y + h}" stroke="#ccc"/>')
    caption = comp.text or comp.label
    if caption:
        tx = x + (24 if comp.comp_type == "Checkbox" else 8)
        parts.append(_text(tx, y + min(h - 4, h // 2 + 5), caption))
    if highlight is not None and comp.id == highlight:
        parts.append(
            f'<rect x="{x - 3}" y="{y - 3}" width="{w + 6}" height="{h + 6}" '
            f'fill="none" stroke="#e5383b" stroke-width="3"/>'
        )
    return parts


def render_wireframe(screen: ScreenInstance, highlight: str | None = None) -> str:
    """Render one screen as a self-contained SVG document string."""
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SCREEN_WIDTH} {SCREEN_HEIGHT}" '
        f'width="{SCREEN_WIDTH}" height="{SCREEN_HEIGHT}">',
        f'<rect x="0" y="0" width="{SCREEN_WIDTH}" height="{SCREEN_HEIGHT}" '
        f'fill="#fdfdfd" stroke="#444" stroke-width="2"/>',
        _text(10, 14, screen.name, size=10),
    ]
    for comp in screen.components():
        parts.extend(_component_svg(comp, highlight))
    parts.append("</svg>")
    return "\n".join(parts)
