"""Deterministic executor over an AppModel: plays events, tracks app state.

A DeviceSession is single-owner. Checkpoint/restore snapshots the full
app-internal state (current screen, typed field contents, focus, back stack)
so exploration strategies can rewind.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .appmodel import (
    COMPONENT_EVENTS,
    OPEN_APP,
    TAP,
    TAP_BACK,
    LONG_TAP,
    TAP_MENU,
    TYPE,
    AppModel,
    ScreenInstance,
    TransitionKey,
    input_class,
    prelaunch_screen,
)
from .errors import ForeignCheckpointError, IllegalEventError

_session_ids = itertools.count(1)


@dataclass(frozen=True)
class ExecutedInteraction:
    """One executed event with materialized source/target screen snapshots."""

    source: ScreenInstance
    target: ScreenInstance
    event: str
    component_id: str | None = None
    input: str | None = None


@dataclass(frozen=True)
class Checkpoint:
    session_id: int
    screen_name: str | None
    field_texts: tuple[tuple[tuple[str, str], str], ...]
    focus: tuple[str, str] | None
    state_tags: frozenset[str]
    back_stack: tuple[str, ...]
    history_len: int


_FLAG_FOR_EVENT = {TAP: "tappable", LONG_TAP: "long_tappable",
                   TAP_MENU: "tappable", TYPE: "typeable"}


@dataclass
class DeviceSession:
    model: AppModel
    check_replay: bool = False
    session_id: int = field(default_factory=lambda: next(_session_ids))
    screen_name: str | None = None  # None until the app is launched
    field_texts: dict[tuple[str, str], str] = field(default_factory=dict)
    focus: tuple[str, str] | None = None
    state_tags: set[str] = field(default_factory=set)
    back_stack: list[str] = field(default_factory=list)
    history: list[ExecutedInteraction] = field(default_factory=list)

    @property
    def launched(self) -> bool:
        return self.screen_name is not None

    def current(self) -> ScreenInstance:
        """Materialized current screen (typed text and focus applied)."""
        if self.screen_name is None:
            return prelaunch_screen()
        return self._materialize(self.screen_name)

    def _materialize(self, name: str) -> ScreenInstance:
        screen = self.model.screens[name].clone()
        focus_here = self.focus is not None and self.focus[0] == name
        for comp in screen.components():
            text = self.field_texts.get((name, comp.id))
            if text is not None:
                comp.text = text
            if focus_here:
                comp.focused = comp.id == self.focus[1]
        screen.state_tags = screen.state_tags | frozenset(self.state_tags)
        return screen

    def execute(self, event: str, component_id: str | None = None,
                input: str | None = None) -> ScreenInstance:
        """Execute one event; unmapped events are no-ops on the same screen."""
        source = self.current()

        if event == OPEN_APP:
            self.field_texts.clear()
            self.focus = None
            self.state_tags.clear()
            self.back_stack.clear()
            self.screen_name = self.model.initial_screen
            return self._record(source, event, None, None)

        if not self.launched:
            raise IllegalEventError(f"cannot execute {event!r} before the app is launched")
        assert self.screen_name is not None

        if event in COMPONENT_EVENTS:
            if component_id is None:
                raise IllegalEventError(f"event {event!r} requires a component")
            comp = source.find(component_id)
            if comp is None:
                raise IllegalEventError(
                    f"no component {component_id!r} on screen {self.screen_name!r}"
                )
            if not comp.enabled:
                raise IllegalEventError(f"component {component_id!r} is disabled")
            if not getattr(comp, _FLAG_FOR_EVENT[event]):
                raise IllegalEventError(
                    f"component {component_id!r} does not accept {event!r}"
                )

        if event == TYPE:
            if input is None:
                raise IllegalEventError("type events require an input string")
            self.field_texts[(self.screen_name, component_id)] = input
            self.focus = (self.screen_name, component_id)
            target = self._lookup_type_target(component_id, input)
        elif event == TAP_BACK:
            target = self.model.transitions.get(
                TransitionKey(self.screen_name, TAP_BACK, None, None)
            )
            if target is None and self.back_stack:
                target = self.back_stack.pop()
                self.screen_name = target
                return self._record(source, event, None, None)
        else:
            target = self.model.transitions.get(
                TransitionKey(self.screen_name, event, component_id, None)
            )

        if target is not None and target != self.screen_name:
            self.back_stack.append(self.screen_name)
            self.screen_name = target
        return self._record(source, event, component_id, input)

    def _lookup_type_target(self, component_id: str, value: str) -> str | None:
        exact = TransitionKey(self.screen_name, TYPE, component_id, f"literal:{value}")
        if exact in self.model.transitions:
            return self.model.transitions[exact]
        classed = TransitionKey(self.screen_name, TYPE, component_id, input_class(value))
        return self.model.transitions.get(classed)

    def _record(self, source: ScreenInstance, event: str,
                component_id: str | None, input: str | None) -> ScreenInstance:
        result = self.current()
        self.history.append(ExecutedInteraction(
            source=source, target=result, event=event,
            component_id=component_id, input=input,
        ))
        if self.check_replay:
            self._assert_replay()
        return result

    def checkpoint(self) -> Checkpoint:
        return Checkpoint(
            session_id=self.session_id,
            screen_name=self.screen_name,
            field_texts=tuple(sorted(self.field_texts.items())),
            focus=self.focus,
            state_tags=frozenset(self.state_tags),
            back_stack=tuple(self.back_stack),
            history_len=len(self.history),
        )

    def restore(self, checkpoint: Checkpoint) -> "DeviceSession":
        if checkpoint.session_id != self.session_id:
            raise ForeignCheckpointError(
                f"checkpoint belongs to session {checkpoint.session_id}, not {self.session_id}"
            )
        self.screen_name = checkpoint.screen_name
        self.field_texts = dict(checkpoint.field_texts)
        self.focus = checkpoint.focus
        self.state_tags = set(checkpoint.state_tags)
        self.back_stack = list(checkpoint.back_stack)
        del self.history[checkpoint.history_len :]
        return self

    def _assert_replay(self) -> None:
        """The current screen must equal a fresh replay of the history."""
        twin = DeviceSession(model=self.model)
        for step in self.history:
            twin.execute(step.event, step.component_id, step.input)
        assert twin.screen_name == self.screen_name, (
            f"replay landed on {twin.screen_name!r}, session is on {self.screen_name!r}"
        )
        assert twin.field_texts == self.field_texts
