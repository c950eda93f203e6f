"""Resolution of one extracted step against one screen.

Three stages: the action verb is mapped to an event through action groups,
the event's GUI component is found with a term-level similarity matcher
(longest common substring over lemmas, scored against label, description and
id in that order), and type events get an input value. Any stage can fail
with a mismatch or a multiple-match carrying candidates.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field as dataclass_field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .appmodel import (
    LONG_TAP,
    OPEN_APP,
    ROTATE_LANDSCAPE,
    SWIPE_DOWN,
    TAP,
    TAP_BACK,
    TAP_MENU,
    TYPE,
    AppModel,
    GuiComponent,
    ScreenInstance,
)
from .errors import ConfigError
from .ingest import lemmas

CONFIG_VERSION = 1

OPEN_GROUP = "OPEN"
LONG_CLICK_GROUP = "LONG_CLICK"
CLICK_GROUP = "CLICK"
SWIPE_GROUP = "SWIPE"
TYPE_GROUP = "TYPE"
ROTATE_GROUP = "ROTATE"
GROUP_ORDER = (OPEN_GROUP, LONG_CLICK_GROUP, CLICK_GROUP, SWIPE_GROUP, TYPE_GROUP, ROTATE_GROUP)
_OVERLAP_ALLOWED = {TYPE_GROUP, CLICK_GROUP, ROTATE_GROUP}

_GROUP_EVENT = {
    LONG_CLICK_GROUP: LONG_TAP,
    TYPE_GROUP: TYPE,
    CLICK_GROUP: TAP,
    OPEN_GROUP: TAP,
    SWIPE_GROUP: SWIPE_DOWN,
    ROTATE_GROUP: ROTATE_LANDSCAPE,
}

# the shipped, editable defaults; a --lexicon file overrides them per key
DEFAULTS: dict = json.loads(
    resources.files("reprolint").joinpath("data/match-defaults.json").read_text("utf-8")
)


class InputCounter:
    """Monotone counter for generated type inputs; one per assessment session."""

    def __init__(self) -> None:
        self.value = 0

    def take(self) -> str:
        self.value += 1
        return str(self.value)


@dataclass
class MatchConfig:
    threshold: float = 0.5
    action_groups: dict[str, list[str]] = dataclass_field(default_factory=dict)
    synonyms: dict[str, list[str]] = dataclass_field(default_factory=dict)
    app_keywords: list[str] = dataclass_field(default_factory=list)
    back_keywords: list[str] = dataclass_field(default_factory=list)
    menu_keywords: list[str] = dataclass_field(default_factory=list)
    screen_keywords: list[str] = dataclass_field(default_factory=list)
    swipe_directions: dict[str, str] = dataclass_field(default_factory=dict)
    rotate_directions: dict[str, str] = dataclass_field(default_factory=dict)
    selection_verbs: list[str] = dataclass_field(default_factory=list)
    component_type_words: dict[str, str] = dataclass_field(default_factory=dict)
    literal_preps_object2: list[str] = dataclass_field(default_factory=list)
    literal_preps_object: list[str] = dataclass_field(default_factory=list)
    app_terms: list[str] = dataclass_field(default_factory=list)
    input_counter: InputCounter = dataclass_field(default_factory=InputCounter)

    @classmethod
    def from_dict(cls, doc: dict | None = None) -> "MatchConfig":
        merged = json.loads(json.dumps(DEFAULTS))
        if doc:
            if "version" in doc and doc["version"] != CONFIG_VERSION:
                raise ConfigError(f"unsupported lexicon config version {doc['version']!r}")
            for key, value in doc.items():
                if key == "version":
                    continue
                if key == "keywords":
                    merged["keywords"].update(value)
                else:
                    merged[key] = value
        kw = merged["keywords"]
        cfg = cls(
            threshold=merged["similarityThreshold"],
            action_groups={k: list(v) for k, v in merged["actionGroups"].items()},
            synonyms=dict(merged["synonyms"]),
            app_keywords=list(kw["app"]),
            back_keywords=list(kw["back"]),
            menu_keywords=list(kw["menu"]),
            screen_keywords=list(kw["screen"]),
            swipe_directions=dict(kw["swipeDirections"]),
            rotate_directions=dict(kw["rotateDirections"]),
            selection_verbs=list(merged["selectionVerbs"]),
            component_type_words=dict(merged["componentTypeWords"]),
            literal_preps_object2=list(merged["literalPrepositions"]["object2"]),
            literal_preps_object=list(merged["literalPrepositions"]["object"]),
        )
        cfg.validate()
        return cfg

    @classmethod
    def from_file(cls, path: str | Path) -> "MatchConfig":
        try:
            doc = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"lexicon config is not valid JSON: {exc}") from exc
        return cls.from_dict(doc)

    def validate(self) -> None:
        if not 0 < self.threshold <= 1:
            raise ConfigError("similarity threshold must be in (0, 1]")
        unknown = set(self.action_groups) - set(GROUP_ORDER)
        if unknown:
            raise ConfigError(f"unknown action groups {sorted(unknown)}")
        for a in GROUP_ORDER:
            for b in GROUP_ORDER:
                if a >= b:
                    continue
                shared = set(self.action_groups.get(a, [])) & set(self.action_groups.get(b, []))
                if shared and not ({a, b} <= _OVERLAP_ALLOWED):
                    raise ConfigError(
                        f"verbs {sorted(shared)} shared between {a} and {b}; "
                        f"only TYPE, CLICK and ROTATE may overlap"
                    )

    def for_app(self, model: AppModel) -> "MatchConfig":
        self.app_terms = sorted({term for name in model.app_terms() for term in lemmas(name)})
        return self

    def groups_of(self, action: str) -> list[str]:
        return [grp for grp in GROUP_ORDER if action in self.action_groups.get(grp, [])]


def similarity(s1: list[str], s2: list[str]) -> float:
    """Longest common term-level substring over the average sequence length."""
    if not s1 or not s2:
        return 0.0
    if list(s1) == list(s2):
        return 1.0
    best = 0
    prev = [0] * (len(s2) + 1)
    for a in s1:
        cur = [0] * (len(s2) + 1)
        for j, b in enumerate(s2, start=1):
            if a == b:
                cur[j] = prev[j - 1] + 1
                if cur[j] > best:
                    best = cur[j]
        prev = cur
    return best / ((len(s1) + len(s2)) / 2)


_ID_SPLIT = re.compile(r"[_\-./]|(?<=[a-z0-9])(?=[A-Z])")


@lru_cache(maxsize=4096)
def _terms(text: str) -> tuple[str, ...]:
    return tuple(lemmas(text))


@lru_cache(maxsize=4096)
def _id_terms(comp_id: str) -> tuple[str, ...]:
    return tuple(lemmas(" ".join(_ID_SPLIT.split(comp_id))))


def component_terms(comp: GuiComponent) -> tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...]]:
    """(label, description, id) lemma sequences, the scoring sources in order."""
    return _terms(comp.label), _terms(comp.description), _id_terms(comp.id)


@dataclass(frozen=True)
class Candidate:
    kind: str  # "component" | "event"
    ref: str
    label: str = ""
    score: float | None = None

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.kind == "component":
            out.update({"componentId": self.ref, "label": self.label, "score": self.score})
        else:
            out["event"] = self.ref
        return out


@dataclass
class Resolved:
    event: str
    component: GuiComponent | None = None
    input: str | None = None


@dataclass
class ComponentMatch:
    component: GuiComponent
    score: float | None = None  # None when a heuristic bypassed scoring


@dataclass
class MultipleMatch:
    candidates: list[Candidate]

    def __post_init__(self):
        assert self.candidates, "a multiple-match carries at least one candidate"


@dataclass
class Mismatch:
    constituents: list[str]
    values: dict[str, str] = dataclass_field(default_factory=dict)
    queries: list[list[str]] = dataclass_field(default_factory=list)


def _first_type_word(query: list[str], cfg: MatchConfig) -> str | None:
    """The component type named earliest in the query, bigrams included."""
    for i, term in enumerate(query):
        bigram = f"{term} {query[i + 1]}" if i + 1 < len(query) else None
        if bigram and bigram in cfg.component_type_words:
            return cfg.component_type_words[bigram]
        if term in cfg.component_type_words:
            return cfg.component_type_words[term]
    return None


def _contains_phrase(terms: list[str], phrases: list[str]) -> bool:
    joined = " ".join(terms)
    return any(
        f" {phrase} " in f" {joined} " if " " in phrase else phrase in terms
        for phrase in phrases
    )


def _score_components(query: list[str], components: list[GuiComponent],
                      cfg: MatchConfig) -> list[tuple[GuiComponent, float, int]]:
    candidates = []
    for position, comp in enumerate(components):
        score = 0.0
        for source in component_terms(comp):
            score = similarity(query, list(source))
            if score > 0:
                break  # first non-zero source decides
        if score >= cfg.threshold:
            candidates.append((comp, score, position))
    candidates.sort(key=lambda item: (-item[1], item[2]))
    return candidates


def match_component(query: list[str], components: list[GuiComponent], event: str | None,
                    cfg: MatchConfig, _expand: bool = True) -> ComponentMatch | MultipleMatch | Mismatch:
    """Find the component a query refers to, per the matching algorithm."""
    query = [t for t in query if t]
    if not query:
        return Mismatch(constituents=["query"], queries=[[]])

    # 1. queries about the whole screen pick the first non-interactive component
    if any(term in cfg.screen_keywords for term in query):
        for comp in components:
            if not comp.tappable:
                return ComponentMatch(comp)

    # 2. a named component type with exactly one instance wins outright
    named_type = _first_type_word(query, cfg)
    if named_type is not None:
        of_type = [c for c in components if c.comp_type == named_type]
        if len(of_type) == 1:
            return ComponentMatch(of_type[0])

    # 3. similarity scoring against label, description, id
    scored = _score_components(query, components, cfg)
    if len(scored) == 1:
        return ComponentMatch(scored[0][0], scored[0][1])
    if len(scored) > 1:
        for comp, score, _ in scored:
            if comp.comp_type == "Layout" and len(comp.children) == 1:
                return ComponentMatch(comp.children[0], score)
        if len({comp.comp_type for comp, _, _ in scored}) == 1:
            return ComponentMatch(scored[0][0], scored[0][1])
        if event == TYPE:
            fields = [c for c, _, _ in scored if c.comp_type == "TextField"]
            if len(fields) == 1:
                return ComponentMatch(fields[0])
        if event in (TAP, LONG_TAP):
            buttons = [c for c, _, _ in scored if c.comp_type == "Button"]
            if len(buttons) == 1:
                return ComponentMatch(buttons[0])
        return MultipleMatch(candidates=[
            Candidate(kind="component", ref=comp.id, label=comp.label, score=score)
            for comp, score, _ in scored
        ])

    # no candidates: synonym query replacement, one substitution at a time
    if _expand:
        tried = [query]
        for i, term in enumerate(query):
            for replacement in cfg.synonyms.get(term, []):
                new_query = query[:i] + list(_terms(replacement)) + query[i + 1 :]
                tried.append(new_query)
                result = match_component(new_query, components, event, cfg, _expand=False)
                if isinstance(result, ComponentMatch):
                    return result
        return Mismatch(constituents=["query"], queries=tried)
    return Mismatch(constituents=["query"], queries=[query])


def _direction_event(terms: list[str], table: dict[str, str], default: str) -> str:
    for term in terms:
        if term in table:
            return table[term]
    return default


def _flags_event(comp: GuiComponent) -> str | None:
    if comp.tappable:
        return TAP
    if comp.long_tappable:
        return LONG_TAP
    if comp.typeable:
        return TYPE
    return None


def _disambiguate_groups(s2r, groups: list[str], screen: ScreenInstance,
                         cfg: MatchConfig) -> str | None:
    obj_terms = s2r.object_terms() + s2r.object2_terms()
    if TYPE_GROUP in groups and (s2r.has_literal("object") or s2r.has_literal("object2")):
        return TYPE_GROUP
    if ROTATE_GROUP in groups and any(t in cfg.rotate_directions for t in obj_terms):
        return ROTATE_GROUP
    named_type = _first_type_word(obj_terms, cfg)
    if named_type is not None:
        if named_type == "TextField" and TYPE_GROUP in groups:
            return TYPE_GROUP
        if named_type != "TextField" and CLICK_GROUP in groups:
            return CLICK_GROUP
    query = s2r.object_terms() or s2r.object2_terms()
    if query:
        result = match_component(query, screen.components(), None, cfg)
        if isinstance(result, ComponentMatch):
            comp = result.component
            if comp.typeable and TYPE_GROUP in groups:
                return TYPE_GROUP
            if comp.tappable and CLICK_GROUP in groups:
                return CLICK_GROUP
            if comp.tappable and ROTATE_GROUP in groups:
                return ROTATE_GROUP
    return None


def resolve_event(s2r, screen: ScreenInstance, cfg: MatchConfig) -> Resolved | MultipleMatch | Mismatch:
    """Map the step's action to a concrete event, possibly via component flags."""
    groups = cfg.groups_of(s2r.action)

    if not groups:
        # feature-name fallback: the action may live in a component's texts
        for query in (s2r.all_terms(), [s2r.action]):
            result = match_component(query, screen.components(), None, cfg)
            if isinstance(result, ComponentMatch):
                event = _flags_event(result.component)
                if event is not None:
                    return Resolved(event=event, component=result.component)
        return Mismatch(constituents=["action"], values={"action": s2r.action},
                        queries=[s2r.all_terms(), [s2r.action]])

    if len(groups) > 1:
        chosen = _disambiguate_groups(s2r, groups, screen, cfg)
        if chosen is None:
            return MultipleMatch(candidates=[
                Candidate(kind="event", ref=_GROUP_EVENT[grp]) for grp in groups
            ])
        groups = [chosen]

    group = groups[0]
    obj_terms = s2r.object_terms()
    both_terms = obj_terms + s2r.object2_terms()
    if group == OPEN_GROUP:
        app_words = set(cfg.app_keywords) | set(cfg.app_terms)
        if any(term in app_words for term in both_terms):
            return Resolved(event=OPEN_APP)
        return Resolved(event=TAP)
    if group == CLICK_GROUP:
        if _contains_phrase(both_terms, cfg.back_keywords):
            return Resolved(event=TAP_BACK)
        if _contains_phrase(both_terms, cfg.menu_keywords):
            return Resolved(event=TAP_MENU)
        return Resolved(event=TAP)
    if group == SWIPE_GROUP:
        return Resolved(event=_direction_event(both_terms, cfg.swipe_directions, SWIPE_DOWN))
    if group == ROTATE_GROUP:
        return Resolved(event=_direction_event(both_terms, cfg.rotate_directions, ROTATE_LANDSCAPE))
    if group == LONG_CLICK_GROUP:
        return Resolved(event=LONG_TAP)
    return Resolved(event=TYPE)


def resolve_component(s2r, event: str, screen: ScreenInstance,
                      cfg: MatchConfig) -> ComponentMatch | MultipleMatch | Mismatch:
    """Query ladder from the S2R constituents, per event kind."""
    components = screen.components()

    if event in (TAP, LONG_TAP, TAP_MENU):
        if s2r.action in cfg.selection_verbs:
            components = [c for c in components if c.checkable or c.pickable]
        queries: list[list[str]] = [s2r.all_terms()]
        if s2r.object:
            queries.append(s2r.object_terms())
        if s2r.object2:
            queries.append(s2r.object2_terms())
        if s2r.object:
            queries.append([s2r.action, *s2r.object_terms()])
        last: MultipleMatch | Mismatch | None = None
        seen: set[tuple[str, ...]] = set()
        for query in queries:
            key = tuple(query)
            if key in seen:
                continue
            seen.add(key)
            result = match_component(query, components, event, cfg)
            if isinstance(result, ComponentMatch):
                return result
            last = result
        if isinstance(last, Mismatch):
            last.constituents = _failed_constituents(s2r)
            last.values = _constituent_values(s2r)
        return last if last is not None else Mismatch(constituents=_failed_constituents(s2r))

    if event == TYPE:
        obj_literal = s2r.has_literal("object")
        obj2_literal = s2r.has_literal("object2")
        prep = s2r.prep_term()
        query: list[str] | None = None
        if obj_literal and s2r.object2 and not obj2_literal and prep in cfg.literal_preps_object2:
            query = s2r.object2_terms()
        elif s2r.object and not obj_literal and obj2_literal and prep in cfg.literal_preps_object:
            query = s2r.object_terms()
        elif obj_literal and not s2r.object2 and prep is None:
            query = None  # lone literal: the focused field takes the input
        elif s2r.object2 and not obj2_literal:
            query = s2r.object2_terms()
        elif s2r.object and not obj_literal:
            query = s2r.object_terms()
        if query is None:
            focused = screen.focused_component()
            if focused is not None:
                return ComponentMatch(focused)
            return Mismatch(constituents=["object"], values=_constituent_values(s2r))
        result = match_component(query, components, event, cfg)
        if isinstance(result, Mismatch):
            result.constituents = _failed_constituents(s2r)
            result.values = _constituent_values(s2r)
        return result

    raise ConfigError(f"event {event!r} does not take a component")


def _failed_constituents(s2r) -> list[str]:
    out = []
    if s2r.object:
        out.append("object")
    if s2r.object2:
        out.append("object2")
    return out or ["action"]


def _constituent_values(s2r) -> dict[str, str]:
    values = {"action": s2r.action}
    if s2r.object:
        values["object"] = " ".join(s2r.object_terms())
    if s2r.object2:
        values["object2"] = " ".join(s2r.object2_terms())
    return values


def resolve_input(s2r, cfg: MatchConfig) -> str:
    """Literal/quoted value from the step, else the next generated number."""
    for tokens in (s2r.object, s2r.object2):
        for token in tokens:
            if token.pos == "LITERAL":
                surface = token.surface
                if surface[:1] in "'\"`" and surface[-1:] == surface[:1]:
                    return surface[1:-1]  # quoted text keeps its case
                return surface
    return cfg.input_counter.take()


def resolve_step(s2r, screen: ScreenInstance, cfg: MatchConfig) -> Resolved | MultipleMatch | Mismatch:
    """Compose event, component and input resolution for one step."""
    outcome = resolve_event(s2r, screen, cfg)
    if not isinstance(outcome, Resolved):
        return outcome
    component = outcome.component
    if component is None and outcome.event in (TAP, LONG_TAP, TAP_MENU, TYPE):
        result = resolve_component(s2r, outcome.event, screen, cfg)
        if not isinstance(result, ComponentMatch):
            return result
        component = result.component
    value = resolve_input(s2r, cfg) if outcome.event == TYPE else None
    return Resolved(event=outcome.event, component=component, input=value)
