"""Quality-report data model and the machine/human renderings.

The machine format is versioned JSON with sorted keys, so identical inputs
produce byte-identical documents. The human format is a single self-contained
HTML page with the screen wireframes embedded as SVG.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from html import escape

from .appmodel import screen_from_dict
from .wireframe import render_wireframe

REPORT_VERSION = 1

ANNOTATION_KINDS = ("HQ", "AS", "VM", "MS")
_KIND_TITLES = {
    "HQ": "High quality",
    "AS": "Ambiguous step",
    "VM": "Vocabulary mismatch",
    "MS": "Missing steps",
}
_KIND_COLORS = {"HQ": "#2d6a4f", "AS": "#b07d12", "VM": "#9d2933", "MS": "#1d4e89"}


@dataclass
class QualityAnnotation:
    kind: str
    evidence: dict
    wireframe_refs: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.kind not in ANNOTATION_KINDS:
            raise ValueError(f"unknown annotation kind {self.kind!r}")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "evidence": self.evidence,
                "wireframeRefs": self.wireframe_refs}


@dataclass
class S2REntry:
    order_index: int
    text: str
    span: tuple[int, int]
    tuple_rendered: str
    tuple_parts: dict
    annotations: list[QualityAnnotation]

    def to_dict(self) -> dict:
        return {
            "orderIndex": self.order_index,
            "text": self.text,
            "sentenceSpan": list(self.span),
            "tuple": self.tuple_parts,
            "rendered": self.tuple_rendered,
            "annotations": [a.to_dict() for a in self.annotations],
        }


@dataclass
class QualityReport:
    report_id: str
    source_id: str
    app_name: str
    entries: list[S2REntry]
    diagnostics: dict
    config_echo: dict
    wireframe_screens: dict[str, dict] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "version": REPORT_VERSION,
            "reportId": self.report_id,
            "sourceId": self.source_id,
            "appName": self.app_name,
            "s2rs": [entry.to_dict() for entry in self.entries],
            "diagnostics": self.diagnostics,
            "configEcho": self.config_echo,
        }


def machine_report(qr: QualityReport) -> str:
    """Deterministic JSON rendering (sorted keys, stable layout)."""
    return json.dumps(qr.to_dict(), sort_keys=True, indent=2) + "\n"


def report_from_dict(doc: dict) -> QualityReport:
    entries = [
        S2REntry(
            order_index=e["orderIndex"],
            text=e["text"],
            span=tuple(e["sentenceSpan"]),
            tuple_rendered=e["rendered"],
            tuple_parts=e["tuple"],
            annotations=[
                QualityAnnotation(kind=a["kind"], evidence=a["evidence"],
                                  wireframe_refs=a.get("wireframeRefs", []))
                for a in e["annotations"]
            ],
        )
        for e in doc.get("s2rs", [])
    ]
    return QualityReport(
        report_id=doc["reportId"], source_id=doc.get("sourceId", ""),
        app_name=doc.get("appName", ""), entries=entries,
        diagnostics=doc.get("diagnostics", {}), config_echo=doc.get("configEcho", {}),
    )


def _badge(kind: str) -> str:
    color = _KIND_COLORS[kind]
    return (
        f'<span class="badge" style="background:{color}" '
        f'title="{_KIND_TITLES[kind]}">{kind}</span>'
    )


def _wireframe_svg(qr: QualityReport, ref: str | None, highlight: str | None) -> str:
    if ref is None or ref not in qr.wireframe_screens:
        return "<p class='missing'>wireframe unavailable</p>"
    screen = screen_from_dict(qr.wireframe_screens[ref])
    return render_wireframe(screen, highlight=highlight)


def _interaction_html(qr: QualityReport, info: dict) -> str:
    description = escape(info.get("description", info.get("event", "")))
    svg = _wireframe_svg(qr, info.get("wireframeRef"), info.get("componentId"))
    return (
        "<li><details>"
        f"<summary>{description}</summary>"
        f"<div class='wireframe'>{svg}</div>"
        "</details></li>"
    )


def _annotation_html(qr: QualityReport, annotation: QualityAnnotation) -> str:
    parts = [f"<div class='annotation'>{_badge(annotation.kind)} "
             f"<strong>{_KIND_TITLES[annotation.kind]}</strong>"]
    ev = annotation.evidence
    if annotation.kind == "HQ":
        parts.append("<ul>" + _interaction_html(qr, ev["interaction"]) + "</ul>")
    elif annotation.kind == "MS":
        parts.append("<p>Steps inferred before this one, in execution order:</p>")
        parts.append("<ol>" + "".join(
            _interaction_html(qr, info) for info in ev["interactions"]
        ) + "</ol>")
    elif annotation.kind == "AS":
        parts.append("<p>This step matches more than one target:</p><ul>")
        for cand in ev.get("candidates", []):
            if cand.get("kind") == "component":
                score = cand.get("score")
                shown = f"{score:.2f}" if isinstance(score, (int, float)) else "-"
                parts.append(
                    f"<li>component {escape(str(cand.get('label') or cand.get('componentId')))} "
                    f"(score {shown})</li>"
                )
            else:
                parts.append(f"<li>event {escape(str(cand.get('event')))}</li>")
        parts.append("</ul>")
    elif annotation.kind == "VM":
        values = ev.get("values", {})
        named = ", ".join(
            f"{escape(k)} = {escape(str(v))}" for k, v in sorted(values.items())
        )
        parts.append(
            "<p>No application interaction matches this step. "
            f"Problematic vocabulary: {named or ', '.join(map(escape, ev.get('constituents', [])))}.</p>"
        )
    parts.append("</div>")
    return "".join(parts)


_CSS = """
body { font-family: sans-serif; margin: 2rem auto; max-width: 54rem; color: #222; }
.badge { color: #fff; padding: 0.1rem 0.45rem; border-radius: 0.6rem; font-size: 0.8rem; }
.step { border: 1px solid #ddd; border-radius: 6px; padding: 0.8rem 1rem; margin: 0.8rem 0; }
.step h3 { margin: 0 0 0.4rem 0; font-size: 1rem; }
.tuple { color: #555; font-family: monospace; }
.annotation { margin: 0.6rem 0; }
.wireframe svg { border: 1px solid #ccc; margin-top: 0.4rem; max-width: 280px; height: auto; }
details summary { cursor: pointer; color: #1d4e89; }
.diagnostics { background: #f7f7f7; padding: 0.8rem 1rem; border-radius: 6px; }
.missing { color: #999; }
""".strip()


def html_report(qr: QualityReport) -> str:
    """Self-contained HTML page: steps, annotations, embedded wireframes."""
    body = [
        "<!DOCTYPE html>",
        "<html lang='en'><head><meta charset='utf-8'>",
        f"<title>Quality report {escape(qr.report_id)}</title>",
        f"<style>{_CSS}</style></head><body>",
        f"<h1>Steps-to-reproduce quality report</h1>",
        f"<p>App: <strong>{escape(qr.app_name)}</strong> &middot; "
        f"report <code>{escape(qr.report_id)}</code></p>",
    ]
    if not qr.entries:
        body.append("<p>No steps to reproduce were identified in this report.</p>")
    for entry in qr.entries:
        kinds = "".join(_badge(a.kind) for a in entry.annotations)
        body.append("<div class='step'>")
        body.append(f"<h3>Step {entry.order_index + 1} {kinds}</h3>")
        body.append(f"<p>{escape(entry.text)}</p>")
        body.append(f"<p class='tuple'>{escape(entry.tuple_rendered)}</p>")
        for annotation in entry.annotations:
            body.append(_annotation_html(qr, annotation))
        body.append("</div>")
    body.append("<div class='diagnostics'><h2>Diagnostics</h2>")
    body.append(f"<pre>{escape(json.dumps(qr.diagnostics, indent=2, sort_keys=True))}</pre>")
    body.append("<h2>Configuration</h2>")
    body.append(f"<pre>{escape(json.dumps(qr.config_echo, indent=2, sort_keys=True))}</pre>")
    body.append("</div></body></html>")
    return "\n".join(body) + "\n"
