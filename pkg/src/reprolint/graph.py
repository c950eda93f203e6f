"""Directed execution graph built from exploration traces.

Vertices are screens deduplicated by a structural signature (component count,
types, sizes and hierarchy; labels and ids excluded). Edges are interactions
identified by (source, event, component, input class) with a monotone
execution order used for deterministic tie-breaking.
"""

from __future__ import annotations

import hashlib
import json
from collections import deque
from dataclasses import dataclass, field, replace
from pathlib import Path

from .appmodel import (
    LONG_TAP,
    OPEN_APP,
    TAP,
    TYPE,
    AppModel,
    GuiComponent,
    ScreenInstance,
    input_class,
    prelaunch_screen,
    screen_from_dict,
    screen_to_dict,
)
from .errors import ConfigError, NoPathError
from .simulator import DeviceSession, ExecutedInteraction

GRAPH_VERSION = 1
START_SIGNATURE = "start"


def signature(screen: ScreenInstance) -> str:
    """Structural screen fingerprint; labels/ids/positions do not contribute."""
    if screen.name == prelaunch_screen().name:
        return START_SIGNATURE

    def encode(comp: GuiComponent) -> str:
        _, _, w, h = comp.bounds
        inner = ",".join(encode(c) for c in comp.children)
        return f"{comp.comp_type}:{w}x{h}({inner})"

    return encode(screen.root)


def vertex_id(sig: str) -> str:
    if sig == START_SIGNATURE:
        return START_SIGNATURE
    return hashlib.sha256(sig.encode("utf-8")).hexdigest()[:16]


@dataclass
class Interaction:
    """One graph edge; target may be unknown for freshly resolved interactions."""

    source: str  # vertex signature
    target: str | None
    event: str
    component_id: str | None = None
    input: str | None = None
    exec_order: int = -1

    @property
    def input_cls(self) -> str | None:
        if self.event != TYPE:
            return None
        return input_class(self.input or "")

    def key(self) -> tuple[str, str, str | None, str | None]:
        return (self.source, self.event, self.component_id, self.input_cls)

    def match_key(self) -> tuple[str, str, str | None]:
        """Identity used when matching resolved steps: (source, event, component)."""
        return (self.source, self.event, self.component_id)


@dataclass
class Vertex:
    sig: str
    screen: ScreenInstance
    first_seen: int = 0

    @property
    def id(self) -> str:
        return vertex_id(self.sig)

    @property
    def wireframe_ref(self) -> str:
        return f"wf-{self.id}"


@dataclass
class ExecutionGraph:
    vertices: dict[str, Vertex] = field(default_factory=dict)
    edges: list[Interaction] = field(default_factory=list)
    start: str = START_SIGNATURE
    _edge_keys: dict[tuple, Interaction] = field(default_factory=dict)

    def ensure_vertex(self, screen: ScreenInstance) -> Vertex:
        sig = signature(screen)
        vertex = self.vertices.get(sig)
        if vertex is None:
            vertex = Vertex(sig=sig, screen=screen.clone(), first_seen=len(self.vertices))
            self.vertices[sig] = vertex
        return vertex

    def vertex_by_id(self, vid: str) -> Vertex | None:
        for vertex in self.vertices.values():
            if vertex.id == vid:
                return vertex
        return None

    def add_edge(self, interaction: Interaction) -> Interaction:
        """Insert if its identity key is new; returns the stored edge."""
        existing = self._edge_keys.get(interaction.key())
        if existing is not None:
            return existing
        stored = replace(interaction, exec_order=len(self.edges))
        self.edges.append(stored)
        self._edge_keys[stored.key()] = stored
        return stored

    def out_edges(self, sig: str) -> list[Interaction]:
        return [e for e in self.edges if e.source == sig]

    def find_edge(self, source: str, event: str, component_id: str | None) -> Interaction | None:
        for edge in self.edges:
            if edge.match_key() == (source, event, component_id):
                return edge
        return None

    def launch_target(self) -> str:
        launches = self.out_edges(self.start)
        if len(launches) != 1 or launches[0].target is None:
            raise ConfigError("graph start vertex must have exactly one outgoing launch edge")
        return launches[0].target


def build_graph(trace: list[ExecutedInteraction]) -> ExecutionGraph:
    graph = ExecutionGraph()
    graph.ensure_vertex(prelaunch_screen())
    return merge_trace(graph, trace)


def merge_trace(graph: ExecutionGraph, trace: list[ExecutedInteraction]) -> ExecutionGraph:
    """Fold a trace into the graph; idempotent for repeated traces."""
    for step in trace:
        source = graph.ensure_vertex(step.source)
        target = graph.ensure_vertex(step.target)
        graph.add_edge(Interaction(
            source=source.sig, target=target.sig, event=step.event,
            component_id=step.component_id, input=step.input,
        ))
    return graph


def systematic_explore(model: AppModel, budget: int) -> list[ExecutedInteraction]:
    """Depth-first component sweep: per screen, tap / long-tap / type, top to bottom.

    Screens already visited (by signature) are not re-entered; stops at budget.
    """
    if budget < 1:
        raise ConfigError("exploration budget must be at least 1")
    session = DeviceSession(model)
    trace: list[ExecutedInteraction] = []
    visited: set[str] = set()
    type_counter = [0]

    def spend() -> bool:
        return len(trace) < budget

    session.execute(OPEN_APP)
    trace.append(session.history[-1])
    visited.add(signature(session.current()))

    def visit() -> None:
        screen = session.current()
        for comp in screen.components():
            if not comp.enabled:
                continue
            for event in (TAP, LONG_TAP, TYPE):
                if event == TAP and not comp.tappable:
                    continue
                if event == LONG_TAP and not comp.long_tappable:
                    continue
                if event == TYPE and not comp.typeable:
                    continue
                if not spend():
                    return
                checkpoint = session.checkpoint()
                if event == TYPE:
                    type_counter[0] += 1
                    session.execute(TYPE, comp.id, input=str(type_counter[0]))
                else:
                    session.execute(event, comp.id)
                trace.append(session.history[-1])
                landed = signature(session.current())
                if landed not in visited:
                    visited.add(landed)
                    visit()
                session.restore(checkpoint)

    visit()
    return trace


def shortest_path(graph: ExecutionGraph, source: str, target: str) -> list[Interaction]:
    """Minimum-edge-count path; ties resolved by smallest exec_order per hop."""
    if source not in graph.vertices or target not in graph.vertices:
        raise NoPathError("both endpoints must be graph vertices")
    if source == target:
        return []
    adjacency: dict[str, list[Interaction]] = {}
    for edge in sorted(graph.edges, key=lambda e: e.exec_order):
        if edge.target is not None:
            adjacency.setdefault(edge.source, []).append(edge)
    parent: dict[str, Interaction] = {}
    seen = {source}
    queue = deque([source])
    while queue:
        current = queue.popleft()
        for edge in adjacency.get(current, []):
            if edge.target in seen:
                continue
            seen.add(edge.target)
            parent[edge.target] = edge
            if edge.target == target:
                path: list[Interaction] = []
                at = target
                while at != source:
                    path.append(parent[at])
                    at = parent[at].source
                return list(reversed(path))
            queue.append(edge.target)
    raise NoPathError(f"no path from {vertex_id(source)} to {vertex_id(target)}")


def neighborhood(graph: ExecutionGraph, source: str, depth: int) -> list[tuple[Vertex, int]]:
    """Vertices within `depth` levels with minimal distances.

    Ordered by increasing distance; within a level by the smallest exec_order
    of an edge reaching the vertex from the previous level.
    """
    if source not in graph.vertices:
        raise NoPathError("source vertex is not in the graph")
    adjacency: dict[str, list[Interaction]] = {}
    for edge in sorted(graph.edges, key=lambda e: e.exec_order):
        if edge.target is not None:
            adjacency.setdefault(edge.source, []).append(edge)
    out: list[tuple[Vertex, int]] = [(graph.vertices[source], 0)]
    distance = {source: 0}
    frontier = [source]
    level = 0
    while frontier and level < depth:
        level += 1
        candidates: list[tuple[int, str]] = []
        for sig in frontier:
            for edge in adjacency.get(sig, []):
                if edge.target not in distance:
                    candidates.append((edge.exec_order, edge.target))
        candidates.sort()
        frontier = []
        for _, sig in candidates:
            if sig not in distance:
                distance[sig] = level
                frontier.append(sig)
        out.extend((graph.vertices[sig], level) for sig in frontier)
    return out


def dump_graph(graph: ExecutionGraph) -> str:
    """Deterministic serialization: byte-equal documents mean equal graphs."""
    doc = {
        "version": GRAPH_VERSION,
        "start": graph.start,
        "vertices": [
            {
                "id": vertex.id,
                "signature": vertex.sig,
                "wireframe": vertex.wireframe_ref,
                "screen": screen_to_dict(vertex.screen),
            }
            for vertex in sorted(graph.vertices.values(), key=lambda v: v.first_seen)
        ],
        "edges": [
            {
                "source": edge.source,
                "target": edge.target,
                "event": edge.event,
                "componentId": edge.component_id,
                "input": edge.input,
                "execOrder": edge.exec_order,
            }
            for edge in sorted(graph.edges, key=lambda e: e.exec_order)
        ],
    }
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def load_graph(text: str) -> ExecutionGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"graph cache is not valid JSON: {exc}") from exc
    if doc.get("version") != GRAPH_VERSION:
        raise ConfigError(f"unsupported graph cache version {doc.get('version')!r}")
    graph = ExecutionGraph(start=doc.get("start", START_SIGNATURE))
    for i, vdoc in enumerate(doc.get("vertices", [])):
        sig = vdoc["signature"]
        screen = prelaunch_screen() if sig == START_SIGNATURE else screen_from_dict(vdoc["screen"])
        graph.vertices[sig] = Vertex(sig=sig, screen=screen, first_seen=i)
    for edoc in sorted(doc.get("edges", []), key=lambda e: e["execOrder"]):
        graph.add_edge(Interaction(
            source=edoc["source"], target=edoc["target"], event=edoc["event"],
            component_id=edoc.get("componentId"), input=edoc.get("input"),
        ))
    return graph


def load_graph_file(path: str | Path) -> ExecutionGraph:
    return load_graph(Path(path).read_text(encoding="utf-8"))


def copy_graph(graph: ExecutionGraph) -> ExecutionGraph:
    """Independent working copy for one assessment session."""
    return load_graph(dump_graph(graph))
