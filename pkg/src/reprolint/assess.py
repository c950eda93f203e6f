"""Assessment orchestration: match steps to the graph, execute, annotate.

Each step is resolved over the n-level neighborhood of the current state and
scored 1/(d+1); the chosen interaction is executed after replaying the
shortest path to its source screen, whose edges become the inferred missing
steps. Steps that fail resolution trigger seeded random exploration before
they are annotated as ambiguous or vocabulary-mismatched.
"""

from __future__ import annotations

import copy
import hashlib
import json
import random
from dataclasses import dataclass, field, replace

from .appmodel import OPEN_APP, TAP, TYPE, AppModel, screen_to_dict
from .errors import ConfigError, DivergenceError, IllegalEventError, NoPathError
from .extract import S2R, S2RLabeler, extract_report
from .graph import (
    ExecutionGraph,
    Interaction,
    copy_graph,
    merge_trace,
    neighborhood,
    shortest_path,
    signature,
    vertex_id,
)
from .ingest import BugReport
from .report import QualityAnnotation, QualityReport, S2REntry
from .resolve import (
    InputCounter,
    MatchConfig,
    Mismatch,
    MultipleMatch,
    Resolved,
    resolve_step,
)
from .simulator import DeviceSession

NEW_EDGE_ORDER = 10**9  # freshly resolved interactions sort after explored edges


@dataclass
class AssessConfig:
    depth: int = 6
    rand_iterations: int = 3
    rand_steps: int = 10
    seed: int = 0
    match: MatchConfig = field(default_factory=MatchConfig.from_dict)

    def __post_init__(self):
        if self.depth < 0:
            raise ConfigError("depth must be >= 0")
        if self.rand_iterations < 0:
            raise ConfigError("random iterations must be >= 0")
        if self.rand_steps < 1:
            raise ConfigError("random steps per iteration must be >= 1")

    def echo(self) -> dict:
        return {
            "depth": self.depth,
            "randIterations": self.rand_iterations,
            "randStepsPerIteration": self.rand_steps,
            "similarityThreshold": self.match.threshold,
            "seed": self.seed,
        }


@dataclass
class StepMatch:
    s2r: S2R
    interaction: Interaction
    distance: int
    is_new: bool

    @property
    def score(self) -> float:
        return 1.0 / (self.distance + 1)


def is_open_app_step(s2r: S2R, cfg: MatchConfig) -> bool:
    """True when the step reads as launching the app itself."""
    if "OPEN" not in cfg.groups_of(s2r.action):
        return False
    app_words = set(cfg.app_keywords) | set(cfg.app_terms)
    return any(term in app_words for term in s2r.object_terms() + s2r.object2_terms())


def match_step(graph: ExecutionGraph, current: str, s2r: S2R,
               cfg: AssessConfig) -> StepMatch | MultipleMatch | Mismatch:
    """Resolve the step over the depth-n neighborhood, best score first.

    Score is 1/(d+1), so the nearest resolvable vertex wins; ties inside a
    level fall to the smallest exec_order. When every vertex fails, the
    failure of the nearest vertex is returned.
    """
    hood = neighborhood(graph, current, cfg.depth)
    first_failure: MultipleMatch | Mismatch | None = None
    best: StepMatch | None = None
    best_order: int = 0
    for vertex, distance in hood:
        if best is not None and distance > best.distance:
            break  # deeper levels cannot improve the score
        outcome = resolve_step(s2r, vertex.screen, cfg.match)
        if isinstance(outcome, Resolved):
            comp_id = outcome.component.id if outcome.component else None
            edge = graph.find_edge(vertex.sig, outcome.event, comp_id)
            if edge is None:
                interaction = Interaction(source=vertex.sig, target=None, event=outcome.event,
                                          component_id=comp_id, input=outcome.input,
                                          exec_order=NEW_EDGE_ORDER)
            else:
                value = outcome.input if outcome.event == TYPE else edge.input
                interaction = replace(edge, input=value)
            candidate = StepMatch(s2r=s2r, interaction=interaction, distance=distance,
                                  is_new=edge is None)
            order = interaction.exec_order
            if best is None or (distance, order) < (best.distance, best_order):
                best, best_order = candidate, order
        elif first_failure is None:
            first_failure = outcome
    if best is not None:
        return best
    assert first_failure is not None, "neighborhood always contains the current vertex"
    return first_failure


def execute_and_infer(session: DeviceSession, graph: ExecutionGraph, current: str,
                      match: StepMatch) -> tuple[list[Interaction], list[Interaction], str]:
    """Walk the shortest path to the match source, then execute the match.

    Returns (executed interactions, inferred missing interactions, new state).
    New screens/edges discovered while executing are merged into the graph.
    """
    path = shortest_path(graph, current, match.interaction.source)
    history_start = len(session.history)
    for edge in path:
        screen = session.current()
        if edge.component_id is not None:
            comp = screen.find(edge.component_id)
            if comp is None or not comp.enabled:
                raise DivergenceError(
                    f"path component {edge.component_id!r} missing or disabled on "
                    f"{screen.name!r}"
                )
        landed = session.execute(edge.event, edge.component_id, edge.input)
        if edge.target is not None and signature(landed) != edge.target:
            raise DivergenceError(
                f"expected screen {vertex_id(edge.target)}, got {vertex_id(signature(landed))}"
            )

    final = match.interaction
    screen = session.current()
    if final.component_id is not None:
        comp = screen.find(final.component_id)
        if comp is None or not comp.enabled:
            raise DivergenceError(
                f"matched component {final.component_id!r} missing or disabled on "
                f"{screen.name!r}"
            )
    landed = session.execute(final.event, final.component_id, final.input)
    landed_sig = signature(landed)
    if final.target is not None and landed_sig != final.target:
        raise DivergenceError("matched interaction landed on an unexpected screen")

    merge_trace(graph, session.history[history_start:])
    stored = graph.find_edge(final.source, final.event, final.component_id)
    executed = path + [replace(stored, input=final.input)]
    return executed, list(path), landed_sig


def random_explore(session: DeviceSession, graph: ExecutionGraph, current: str, s2r: S2R,
                   cfg: AssessConfig, rng: random.Random,
                   stats: list[dict]) -> StepMatch | None:
    """Up to y iterations of x random taps; retry the match after each one."""
    for iteration in range(cfg.rand_iterations):
        checkpoint = session.checkpoint()
        edges_before = len(graph.edges)
        executed: set[tuple[str, str]] = set()
        steps = 0
        trace_start = len(session.history)
        for _ in range(cfg.rand_steps):
            screen = session.current()
            sig = signature(screen)
            options = [
                comp for comp in screen.components()
                if comp.tappable and comp.enabled
                and comp.comp_type not in ("Layout", "List")
                and (sig, comp.id) not in executed
            ]
            if not options:
                break  # no components left to interact with
            comp = rng.choice(options)
            executed.add((sig, comp.id))
            session.execute(TAP, comp.id)
            steps += 1
        merge_trace(graph, session.history[trace_start:])
        session.restore(checkpoint)
        outcome = match_step(graph, current, s2r, cfg)
        matched = isinstance(outcome, StepMatch)
        stats.append({
            "iteration": iteration + 1,
            "steps": steps,
            "newEdges": len(graph.edges) - edges_before,
            "matched": matched,
        })
        if matched:
            return outcome
    return None


def describe_interaction(graph: ExecutionGraph, interaction: Interaction) -> str:
    """Short human phrasing of one interaction, used in feedback lists."""
    comp_label = ""
    if interaction.component_id is not None:
        vertex = graph.vertices.get(interaction.source)
        if vertex is not None:
            comp = vertex.screen.find(interaction.component_id)
            if comp is not None:
                comp_label = comp.label or comp.id
    names = {
        OPEN_APP: "Open the app",
        "tapBack": "Tap back",
        "tapMenu": f"Tap menu {comp_label!r}" if comp_label else "Tap the menu button",
        TAP: f"Tap {comp_label!r}",
        "longTap": f"Long-tap {comp_label!r}",
        TYPE: f"Type {interaction.input!r} into {comp_label!r}",
        "swipeUp": "Swipe up", "swipeDown": "Swipe down",
        "swipeLeft": "Swipe left", "swipeRight": "Swipe right",
        "rotateLandscape": "Rotate to landscape", "rotatePortrait": "Rotate to portrait",
    }
    return names.get(interaction.event, interaction.event)


def interaction_evidence(graph: ExecutionGraph, interaction: Interaction) -> dict:
    source = graph.vertices.get(interaction.source)
    target = graph.vertices.get(interaction.target) if interaction.target else None
    return {
        "sourceVertex": vertex_id(interaction.source),
        "targetVertex": target.id if target else None,
        "event": interaction.event,
        "componentId": interaction.component_id,
        "input": interaction.input,
        "wireframeRef": source.wireframe_ref if source else None,
        "description": describe_interaction(graph, interaction),
    }


class _Assessment:
    """State of one assessment run; owns its session, graph copy and counters."""

    def __init__(self, report: BugReport, model: AppModel, graph: ExecutionGraph,
                 cfg: AssessConfig, labeler: S2RLabeler | None):
        self.report = report
        self.model = model
        self.graph = copy_graph(graph)
        self.cfg = copy.deepcopy(cfg)
        self.cfg.match.input_counter = InputCounter()
        self.cfg.match.for_app(model)
        self.labeler = labeler
        self.rng = random.Random(cfg.seed)
        self.session = DeviceSession(model)
        self.entries: list[S2REntry] = []
        self.diagnostics: dict = {"droppedSentences": [], "exploration": [], "notes": []}
        self.wireframe_screens: dict[str, dict] = {}

    def run(self) -> QualityReport:
        extraction = extract_report(self.report, self.labeler)
        self.diagnostics["droppedSentences"] = extraction.dropped
        steps = extraction.s2rs

        self.session.execute(OPEN_APP)
        current = self.graph.launch_target()
        if signature(self.session.current()) != current:
            raise DivergenceError("graph cache does not match the app model launch screen")

        pending = steps
        if steps and is_open_app_step(steps[0], self.cfg.match):
            launch = self.graph.out_edges(self.graph.start)[0]
            self._annotate_success(steps[0], launch, inferred=[])
            self.diagnostics["notes"].append("first step matches the app launch")
            pending = steps[1:]
        elif steps:
            self.diagnostics["notes"].append(
                "report does not start with an open-app step; the launch was executed implicitly"
            )

        for s2r in pending:
            current = self._assess_step(s2r, current)

        return self._build_report()

    def _assess_step(self, s2r: S2R, current: str) -> str:
        outcome = match_step(self.graph, current, s2r, self.cfg)
        if not isinstance(outcome, StepMatch):
            stats: list[dict] = []
            recovered = random_explore(self.session, self.graph, current, s2r,
                                       self.cfg, self.rng, stats)
            if stats:
                self.diagnostics["exploration"].append(
                    {"orderIndex": s2r.order_index, "iterations": stats}
                )
            if recovered is None:
                self._annotate_failure(s2r, outcome)
                return current
            outcome = recovered

        for attempt in range(2):
            try:
                executed, inferred, landed = execute_and_infer(
                    self.session, self.graph, current, outcome
                )
            except (DivergenceError, IllegalEventError, NoPathError) as exc:
                self.diagnostics["notes"].append(
                    f"step {s2r.order_index}: execution failed ({exc}); re-matching"
                )
                if attempt == 1:
                    self._annotate_failure(
                        s2r, Mismatch(constituents=["action"],
                                      values={"action": s2r.action, "reason": str(exc)})
                    )
                    return current
                current = signature(self.session.current())
                retry = match_step(self.graph, current, s2r, self.cfg)
                if not isinstance(retry, StepMatch):
                    self._annotate_failure(s2r, retry)
                    return current
                outcome = retry
            else:
                self._annotate_success(s2r, executed[-1], inferred)
                return landed
        return current

    def _annotate_success(self, s2r: S2R, interaction: Interaction,
                          inferred: list[Interaction]) -> None:
        annotations = [QualityAnnotation(
            kind="HQ",
            evidence={"interaction": self._evidence(interaction)},
            wireframe_refs=self._refs([interaction]),
        )]
        if inferred:
            annotations.append(QualityAnnotation(
                kind="MS",
                evidence={"interactions": [self._evidence(i) for i in inferred]},
                wireframe_refs=self._refs(inferred),
            ))
        self._add_entry(s2r, annotations)

    def _annotate_failure(self, s2r: S2R, failure: MultipleMatch | Mismatch) -> None:
        if isinstance(failure, MultipleMatch):
            annotation = QualityAnnotation(
                kind="AS",
                evidence={"candidates": [c.to_dict() for c in failure.candidates]},
                wireframe_refs=[],
            )
        else:
            annotation = QualityAnnotation(
                kind="VM",
                evidence={
                    "constituents": failure.constituents,
                    "values": failure.values,
                    "queries": failure.queries,
                },
                wireframe_refs=[],
            )
        self._add_entry(s2r, [annotation])

    def _add_entry(self, s2r: S2R, annotations: list[QualityAnnotation]) -> None:
        sentence = self.report.sentences()[s2r.sentence_index]
        self.entries.append(S2REntry(
            order_index=s2r.order_index,
            text=sentence.raw,
            span=sentence.span,
            tuple_rendered=s2r.render(),
            tuple_parts={
                "action": s2r.action,
                "object": s2r.object_terms(),
                "preposition": s2r.prep_term(),
                "object2": s2r.object2_terms(),
            },
            annotations=annotations,
        ))

    def _evidence(self, interaction: Interaction) -> dict:
        return interaction_evidence(self.graph, interaction)

    def _refs(self, interactions: list[Interaction]) -> list[str]:
        refs = []
        for interaction in interactions:
            vertex = self.graph.vertices.get(interaction.source)
            if vertex is None:
                continue
            self.wireframe_screens[vertex.wireframe_ref] = screen_to_dict(vertex.screen)
            refs.append(vertex.wireframe_ref)
        return refs

    def _build_report(self) -> QualityReport:
        entries = sorted(self.entries, key=lambda e: e.order_index)
        echo = self.cfg.echo()
        digest = hashlib.sha256()
        digest.update(self.report.body.encode("utf-8"))
        digest.update(self.model.app_name.encode("utf-8"))
        digest.update(json.dumps(echo, sort_keys=True).encode("utf-8"))
        return QualityReport(
            report_id=digest.hexdigest()[:16],
            source_id=self.report.id,
            app_name=self.model.app_name,
            entries=entries,
            diagnostics=self.diagnostics,
            config_echo=echo,
            wireframe_screens=dict(sorted(self.wireframe_screens.items())),
        )


def assess(report: BugReport, model: AppModel, graph: ExecutionGraph,
           cfg: AssessConfig | None = None, labeler: S2RLabeler | None = None) -> QualityReport:
    """Assess every extracted step of the report against the execution graph."""
    return _Assessment(report, model, graph, cfg or AssessConfig(), labeler).run()
