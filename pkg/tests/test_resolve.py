"""Tests for similarity scoring, event/component/input resolution.

similarity() is verified against an exhaustive oracle that enumerates every
contiguous term subsequence.
"""

from __future__ import annotations

import random
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from reprolint import ingest
from reprolint.appmodel import load_app_model_file
from reprolint.extract import extract_report
from reprolint.resolve import (
    ComponentMatch,
    MatchConfig,
    Mismatch,
    MultipleMatch,
    Resolved,
    match_component,
    resolve_component,
    resolve_event,
    resolve_input,
    resolve_step,
    similarity,
)

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="module")
def model():
    return load_app_model_file(FIXTURES / "expensedroid.app.json")


@pytest.fixture()
def cfg(model):
    return MatchConfig.from_dict().for_app(model)


def step_of(text: str):
    report = ingest.parse_report(text)
    steps = extract_report(report).s2rs
    assert len(steps) == 1, f"expected exactly one step from {text!r}, got {steps}"
    return steps[0]


# --- similarity -------------------------------------------------------------

def oracle_similarity(s1: list[str], s2: list[str]) -> float:
    """Exhaustive: longest contiguous subsequence of s1 occurring in s2."""
    if not s1 or not s2:
        return 0.0
    best = 0
    for i in range(len(s1)):
        for j in range(i + 1, len(s1) + 1):
            window = s1[i:j]
            occurs = any(s2[k : k + len(window)] == window for k in range(len(s2)))
            if occurs:
                best = max(best, len(window))
    return best / ((len(s1) + len(s2)) / 2)


def test_similarity_restore_backup():
    got = similarity(["restore", "backup"], ["restore", "from", "backup"])
    assert abs(got - 0.4) < 1e-9


def test_similarity_identity_and_empty():
    assert similarity(["x"], ["x"]) == 1.0
    assert similarity(["a", "b"], ["a", "b"]) == 1.0
    assert similarity(["x"], []) == 0.0
    assert similarity([], ["x"]) == 0.0


def test_similarity_matches_exhaustive_oracle():
    rng = random.Random(13)
    alphabet = ["a", "b", "c", "d", "e"]
    for _ in range(1000):
        s1 = [rng.choice(alphabet) for _ in range(rng.randint(0, 8))]
        s2 = [rng.choice(alphabet) for _ in range(rng.randint(0, 8))]
        assert abs(similarity(s1, s2) - oracle_similarity(s1, s2)) < 1e-12


@given(
    st.lists(st.sampled_from("abcd"), max_size=8),
    st.lists(st.sampled_from("abcd"), max_size=8),
)
def test_similarity_properties(s1, s2):
    score = similarity(s1, s2)
    assert 0.0 <= score <= 1.0
    assert score == similarity(s2, s1)
    if s1 and s2:
        assert (score == 1.0) == (s1 == s2)
    shared = set(s1) & set(s2)
    if s1 and s2 and not shared:
        assert score == 0.0


# --- event resolution -------------------------------------------------------

def test_open_app_event(model, cfg):
    step = step_of("Open the app.")
    result = resolve_event(step, model.screens["main"], cfg)
    assert isinstance(result, Resolved) and result.event == "openApp"


def test_open_app_by_name(model, cfg):
    step = step_of("Open Expensedroid.")
    result = resolve_event(step, model.screens["main"], cfg)
    assert isinstance(result, Resolved) and result.event == "openApp"


def test_open_non_app_is_tap(model, cfg):
    step = step_of("Open settings.")
    result = resolve_event(step, model.screens["main"], cfg)
    assert isinstance(result, Resolved) and result.event == "tap"


def test_tap_back_keyword(model, cfg):
    step = step_of("Tap back.")
    result = resolve_event(step, model.screens["export"], cfg)
    assert isinstance(result, Resolved) and result.event == "tapBack"


def test_go_back(model, cfg):
    step = step_of("Go back.")
    result = resolve_event(step, model.screens["export"], cfg)
    assert isinstance(result, Resolved) and result.event == "tapBack"


def test_tap_menu_keyword(model, cfg):
    step = step_of("Tap the menu button.")
    result = resolve_event(step, model.screens["main"], cfg)
    assert isinstance(result, Resolved) and result.event == "tapMenu"


def test_swipe_direction(model, cfg):
    step = step_of("Swipe down.")
    result = resolve_event(step, model.screens["main"], cfg)
    assert isinstance(result, Resolved) and result.event == "swipeDown"


def test_rotate_direction(model, cfg):
    step = step_of("Rotate the phone to landscape.")
    result = resolve_event(step, model.screens["main"], cfg)
    assert isinstance(result, Resolved) and result.event == "rotateLandscape"


def test_no_group_feature_verb_matches_component(model, cfg):
    step = step_of("Create an entry for lunch.")
    result = resolve_event(step, model.screens["main"], cfg)
    assert isinstance(result, Resolved)
    assert result.event == "tap"
    assert result.component is not None and result.component.id == "btn_new"


def test_no_group_no_match_is_mismatch(model, cfg):
    step = step_of("Fix the sorting.")
    result = resolve_event(step, model.screens["main"], cfg)
    assert isinstance(result, Mismatch)
    assert result.values.get("action") == "fix"


def test_multi_group_literal_prefers_type(model, cfg):
    step = step_of("Set price to 10.")
    result = resolve_event(step, model.screens["create_entry"], cfg)
    assert isinstance(result, Resolved) and result.event == "type"


def test_multi_group_click_reading(model, cfg):
    step = step_of("Set the accent color.")
    result = resolve_event(step, model.screens["settings"], cfg)
    assert isinstance(result, Resolved) and result.event == "tap"


# --- component matching -----------------------------------------------------

def test_match_screen_keyword_returns_first_non_tappable(model, cfg):
    comps = model.screens["main"].components()
    result = match_component(["screen"], comps, "tap", cfg)
    assert isinstance(result, ComponentMatch)
    assert result.component.id == "txt_title"


def test_match_unique_type_word(model, cfg):
    comps = model.screens["search"].components()
    result = match_component(["search", "box"], comps, "type", cfg)
    assert isinstance(result, ComponentMatch)
    assert result.component.id == "fld_query"


def test_match_by_similarity_unique(model, cfg):
    comps = model.screens["create_entry"].components()
    result = match_component(["price"], comps, "type", cfg)
    assert isinstance(result, ComponentMatch)
    assert result.component.id == "fld_price"
    assert result.score == 1.0


def test_match_never_returns_below_threshold(model, cfg):
    for screen in model.screens.values():
        result = match_component(["restore", "backup"], screen.components(), "tap", cfg)
        if isinstance(result, ComponentMatch) and result.score is not None:
            assert result.score >= cfg.threshold


def test_synonym_replacement_selects_backup_option(model, cfg):
    # "restore backup" scores 0.4 against "Restore from backup" (below 0.5);
    # the synonym "back up" then matches "Back up to SD card" at 0.5
    comps = model.screens["backup"].components()
    result = match_component(["restore", "backup"], comps, "tap", cfg)
    assert isinstance(result, ComponentMatch)
    assert result.component.id == "opt_backup_sd"
    assert result.score is not None and abs(result.score - 0.5) < 1e-9


def test_no_synonyms_is_mismatch(model, cfg):
    comps = model.screens["about"].components()
    result = match_component(["frobnicate"], comps, "tap", cfg)
    assert isinstance(result, Mismatch)


def test_multiple_match_candidates_sorted(model, cfg):
    comps = model.screens["main"].components()
    result = match_component(["filter"], comps, "tap", cfg)
    assert isinstance(result, MultipleMatch)
    assert len(result.candidates) >= 2
    scores = [c.score for c in result.candidates]
    assert scores == sorted(scores, reverse=True)
    ids = {c.ref for c in result.candidates}
    assert ids == {"dd_filter_period", "chk_filter_favorites"}


def test_tap_heuristic_single_button(model, cfg):
    # "create entry" matches the button and the entries list; tap keeps the button
    step = step_of("Tap create entry.")
    result = resolve_component(step, "tap", model.screens["main"], cfg)
    assert isinstance(result, ComponentMatch)
    assert result.component.id == "btn_new"


# --- component resolution ladder / type cases --------------------------------

def test_type_case_literal_on_object2(model, cfg):
    step = step_of("Enter '10' on price.")
    result = resolve_component(step, "type", model.screens["create_entry"], cfg)
    assert isinstance(result, ComponentMatch)
    assert result.component.id == "fld_price"


def test_type_case_object_query(model, cfg):
    step = step_of("Set price to 10.")
    result = resolve_component(step, "type", model.screens["create_entry"], cfg)
    assert isinstance(result, ComponentMatch)
    assert result.component.id == "fld_price"


def test_type_case_lone_literal_uses_focused(model, cfg):
    step = step_of("Enter '10'.")
    result = resolve_component(step, "type", model.screens["create_entry"], cfg)
    assert isinstance(result, ComponentMatch)
    assert result.component.id == "fld_description"  # the focused field


def test_type_lone_literal_without_focus_mismatches(model, cfg):
    step = step_of("Enter '10'.")
    result = resolve_component(step, "type", model.screens["menu"], cfg)
    assert isinstance(result, Mismatch)


def test_selection_verbs_restrict_to_pickable(model, cfg):
    step = step_of("Choose the red color.")
    result = resolve_component(step, "tap", model.screens["color_picker"], cfg)
    assert isinstance(result, ComponentMatch)
    assert result.component.id == "swatch_red"
    # the same query must not match non-pickable components elsewhere
    result = resolve_component(step, "tap", model.screens["settings"], cfg)
    assert not isinstance(result, ComponentMatch)


# --- input resolution ---------------------------------------------------------

def test_input_literal(cfg):
    assert resolve_input(step_of("Enter '10' on price."), cfg) == "10"


def test_input_quoted_text(cfg):
    assert resolve_input(step_of("Set description to 'Lunch'."), cfg) == "Lunch"


def test_input_counter_sequence(cfg):
    first = resolve_input(step_of("Enter some text in the description."), cfg)
    second = resolve_input(step_of("Enter some text in the description."), cfg)
    assert (first, second) == ("1", "2")


# --- full step resolution -----------------------------------------------------

def test_resolve_step_tap_save(model, cfg):
    result = resolve_step(step_of("Tap save."), model.screens["create_entry"], cfg)
    assert isinstance(result, Resolved)
    assert result.event == "tap"
    assert result.component.id == "btn_save"


def test_resolve_step_type_with_input(model, cfg):
    result = resolve_step(step_of("Enter '10' on price."), model.screens["create_entry"], cfg)
    assert isinstance(result, Resolved)
    assert result.event == "type"
    assert result.component.id == "fld_price"
    assert result.input == "10"


def test_resolve_step_mismatch_names_action(model, cfg):
    result = resolve_step(step_of("Fix the sorting."), model.screens["main"], cfg)
    assert isinstance(result, Mismatch)
    assert "action" in result.constituents
    assert result.values["action"] == "fix"


def test_resolve_step_ambiguous_two_fields(model, cfg):
    result = resolve_step(step_of("Tap filter."), model.screens["main"], cfg)
    assert isinstance(result, MultipleMatch)
    assert len(result.candidates) == 2


def test_resolve_step_deterministic(model, cfg):
    step = step_of("Tap the menu button.")
    first = resolve_step(step, model.screens["main"], cfg)
    second = resolve_step(step, model.screens["main"], cfg)
    assert isinstance(first, Resolved) and isinstance(second, Resolved)
    assert (first.event, first.component.id) == (second.event, second.component.id)


def test_config_validation_rejects_bad_overlap():
    from reprolint.errors import ConfigError

    doc = {"actionGroups": {"OPEN": ["tap"], "CLICK": ["tap"]}}
    with pytest.raises(ConfigError, match="overlap"):
        MatchConfig.from_dict(doc)


def test_config_threshold_override():
    cfg = MatchConfig.from_dict({"similarityThreshold": 0.7})
    assert cfg.threshold == 0.7
    with pytest.raises(Exception):
        MatchConfig.from_dict({"similarityThreshold": 0.0})
