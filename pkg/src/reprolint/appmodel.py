"""Declarative model of the simulated GUI app: screens, components, transitions.

The model document is versioned JSON; the loader validates referential
integrity (screen names, component ids, transition targets) before any
execution happens.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import AppModelError

SCREEN_WIDTH = 360
SCREEN_HEIGHT = 640
MODEL_VERSION = 1

COMPONENT_TYPES = (
    "Button", "TextField", "TextView", "ImageView", "Layout",
    "List", "Checkbox", "DropDown", "MenuItem",
)

# event kinds, as they appear in documents and transition keys
TAP = "tap"
LONG_TAP = "longTap"
OPEN_APP = "openApp"
TAP_BACK = "tapBack"
TAP_MENU = "tapMenu"
TYPE = "type"
SWIPE_UP = "swipeUp"
SWIPE_DOWN = "swipeDown"
SWIPE_LEFT = "swipeLeft"
SWIPE_RIGHT = "swipeRight"
ROTATE_LANDSCAPE = "rotateLandscape"
ROTATE_PORTRAIT = "rotatePortrait"

EVENT_KINDS = (
    TAP, LONG_TAP, OPEN_APP, TAP_BACK, TAP_MENU, TYPE,
    SWIPE_UP, SWIPE_DOWN, SWIPE_LEFT, SWIPE_RIGHT,
    ROTATE_LANDSCAPE, ROTATE_PORTRAIT,
)
COMPONENT_EVENTS = {TAP, LONG_TAP, TAP_MENU, TYPE}

_FLAG_NAMES = ("tappable", "longTappable", "typeable", "checkable", "pickable", "focused", "disabled")

ROOT_ID = "_root"
PRELAUNCH_SCREEN = "<launcher>"


@dataclass(frozen=True)
class Event:
    kind: str
    input: str | None = None

    def __post_init__(self):
        if self.kind not in EVENT_KINDS:
            raise AppModelError(f"unknown event kind {self.kind!r}")
        if (self.input is not None) != (self.kind == TYPE):
            raise AppModelError("event input is present iff the event is a type event")


@dataclass
class GuiComponent:
    comp_type: str
    id: str
    label: str = ""
    description: str = ""
    bounds: tuple[int, int, int, int] = (0, 0, 0, 0)
    tappable: bool = False
    long_tappable: bool = False
    typeable: bool = False
    checkable: bool = False
    pickable: bool = False
    focused: bool = False
    enabled: bool = True
    children: list["GuiComponent"] = field(default_factory=list)
    text: str = ""  # runtime field contents (type events)

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass
class ScreenInstance:
    name: str
    root: GuiComponent
    state_tags: frozenset[str] = frozenset()

    def components(self, include_root: bool = False) -> list[GuiComponent]:
        """Components in top-to-bottom (preorder) screen order."""
        out = list(self.root.walk())
        return out if include_root else out[1:]

    def find(self, comp_id: str) -> GuiComponent | None:
        for comp in self.root.walk():
            if comp.id == comp_id:
                return comp
        return None

    def focused_component(self) -> GuiComponent | None:
        for comp in self.components():
            if comp.focused:
                return comp
        return None

    def clone(self) -> "ScreenInstance":
        def copy(comp: GuiComponent) -> GuiComponent:
            return replace(comp, children=[copy(c) for c in comp.children])
        return ScreenInstance(name=self.name, root=copy(self.root), state_tags=self.state_tags)


def prelaunch_screen() -> ScreenInstance:
    """The pseudo-screen shown before the app is launched."""
    root = GuiComponent(comp_type="Layout", id=ROOT_ID,
                        bounds=(0, 0, SCREEN_WIDTH, SCREEN_HEIGHT))
    return ScreenInstance(name=PRELAUNCH_SCREEN, root=root)


@dataclass(frozen=True)
class TransitionKey:
    screen: str
    event: str
    component_id: str | None
    input_class: str | None


@dataclass
class AppModel:
    app_name: str
    synonyms: list[str]
    initial_screen: str
    screens: dict[str, ScreenInstance]
    transitions: dict[TransitionKey, str]

    def app_terms(self) -> list[str]:
        return [self.app_name, *self.synonyms]


def input_class(value: str) -> str:
    if value == "":
        return "empty"
    if value.replace(".", "", 1).replace(",", "").isdigit():
        return "numeric"
    return "text"


def _parse_component(doc: dict, screen_name: str) -> GuiComponent:
    comp_type = doc.get("type")
    if comp_type not in COMPONENT_TYPES:
        raise AppModelError(f"screen {screen_name!r}: unknown component type {comp_type!r}")
    comp_id = doc.get("id")
    if not comp_id or not isinstance(comp_id, str):
        raise AppModelError(f"screen {screen_name!r}: component without id")
    bounds = doc.get("bounds", [0, 0, 0, 0])
    if len(bounds) != 4 or not all(isinstance(v, int) for v in bounds):
        raise AppModelError(f"component {comp_id!r}: bounds must be [x, y, width, height]")
    flags = doc.get("flags", [])
    unknown = set(flags) - set(_FLAG_NAMES)
    if unknown:
        raise AppModelError(f"component {comp_id!r}: unknown flags {sorted(unknown)}")
    comp = GuiComponent(
        comp_type=comp_type,
        id=comp_id,
        label=doc.get("label", ""),
        description=doc.get("description", ""),
        bounds=tuple(bounds),
        tappable="tappable" in flags,
        long_tappable="longTappable" in flags,
        typeable="typeable" in flags,
        checkable="checkable" in flags,
        pickable="pickable" in flags,
        focused="focused" in flags,
        enabled="disabled" not in flags,
        children=[_parse_component(c, screen_name) for c in doc.get("children", [])],
    )
    return comp


def _validate_screen(screen: ScreenInstance) -> None:
    seen: set[str] = set()
    focused = 0
    for comp in screen.components():
        if comp.id in seen:
            raise AppModelError(f"screen {screen.name!r}: duplicate component id {comp.id!r}")
        if comp.id == ROOT_ID:
            raise AppModelError(f"screen {screen.name!r}: component id {ROOT_ID!r} is reserved")
        seen.add(comp.id)
        x, y, w, h = comp.bounds
        if x < 0 or y < 0 or w <= 0 or h <= 0 or x + w > SCREEN_WIDTH or y + h > SCREEN_HEIGHT:
            raise AppModelError(
                f"screen {screen.name!r}: component {comp.id!r} bounds {comp.bounds} "
                f"outside the {SCREEN_WIDTH}x{SCREEN_HEIGHT} screen"
            )
        focused += comp.focused
    if focused > 1:
        raise AppModelError(f"screen {screen.name!r}: more than one focused component")


def load_app_model(doc: dict) -> AppModel:
    """Build and validate an AppModel from a parsed document."""
    if not isinstance(doc, dict):
        raise AppModelError("app model document must be a JSON object")
    if doc.get("version") != MODEL_VERSION:
        raise AppModelError(f"unsupported app model version {doc.get('version')!r}")
    app_name = doc.get("appName")
    if not app_name:
        raise AppModelError("app model is missing appName")

    screens: dict[str, ScreenInstance] = {}
    for sdoc in doc.get("screens", []):
        name = sdoc.get("name")
        if not name:
            raise AppModelError("screen without a name")
        if name in screens:
            raise AppModelError(f"duplicate screen name {name!r}")
        root = GuiComponent(comp_type="Layout", id=ROOT_ID,
                            bounds=(0, 0, SCREEN_WIDTH, SCREEN_HEIGHT),
                            children=[_parse_component(c, name) for c in sdoc.get("components", [])])
        screen = ScreenInstance(name=name, root=root,
                                state_tags=frozenset(sdoc.get("stateTags", [])))
        _validate_screen(screen)
        screens[name] = screen

    initial = doc.get("initialScreen")
    if initial not in screens:
        raise AppModelError(f"initial screen {initial!r} is not defined")

    transitions: dict[TransitionKey, str] = {}
    for tdoc in doc.get("transitions", []):
        screen_name = tdoc.get("screen")
        event = tdoc.get("event")
        target = tdoc.get("target")
        comp_id = tdoc.get("componentId")
        klass = tdoc.get("inputClass")
        if screen_name not in screens:
            raise AppModelError(f"transition from unknown screen {screen_name!r}")
        if target not in screens:
            raise AppModelError(f"transition to unknown screen {target!r} (dangling target)")
        if event not in EVENT_KINDS:
            raise AppModelError(f"transition with unknown event {event!r}")
        if event in COMPONENT_EVENTS:
            if not comp_id or screens[screen_name].find(comp_id) is None:
                raise AppModelError(
                    f"transition on {screen_name!r}/{event}: component {comp_id!r} not found"
                )
        elif comp_id is not None:
            raise AppModelError(f"transition event {event!r} must not name a component")
        if klass is not None and event != TYPE:
            raise AppModelError("inputClass is only valid on type transitions")
        key = TransitionKey(screen_name, event, comp_id, klass)
        if key in transitions:
            raise AppModelError(f"duplicate transition {key}")
        transitions[key] = target

    return AppModel(app_name=app_name, synonyms=list(doc.get("synonyms", [])),
                    initial_screen=initial, screens=screens, transitions=transitions)


def load_app_model_file(path: str | Path) -> AppModel:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise AppModelError(f"app model is not valid JSON: {exc}") from exc
    return load_app_model(doc)


def component_to_dict(comp: GuiComponent) -> dict:
    flags = [name for name, on in (
        ("tappable", comp.tappable), ("longTappable", comp.long_tappable),
        ("typeable", comp.typeable), ("checkable", comp.checkable),
        ("pickable", comp.pickable), ("focused", comp.focused),
        ("disabled", not comp.enabled),
    ) if on]
    out = {
        "type": comp.comp_type,
        "id": comp.id,
        "label": comp.label,
        "description": comp.description,
        "bounds": list(comp.bounds),
        "flags": flags,
        "children": [component_to_dict(c) for c in comp.children],
    }
    if comp.text:
        out["text"] = comp.text
    return out


def component_from_dict(doc: dict) -> GuiComponent:
    comp = _parse_component(doc, "<snapshot>")
    comp.text = doc.get("text", "")
    comp.children = [component_from_dict(c) for c in doc.get("children", [])]
    return comp


def screen_to_dict(screen: ScreenInstance) -> dict:
    return {
        "name": screen.name,
        "stateTags": sorted(screen.state_tags),
        "components": [component_to_dict(c) for c in screen.root.children],
    }


def screen_from_dict(doc: dict) -> ScreenInstance:
    root = GuiComponent(comp_type="Layout", id=ROOT_ID,
                        bounds=(0, 0, SCREEN_WIDTH, SCREEN_HEIGHT),
                        children=[component_from_dict(c) for c in doc.get("components", [])])
    return ScreenInstance(name=doc.get("name", ""), root=root,
                          state_tags=frozenset(doc.get("stateTags", [])))
