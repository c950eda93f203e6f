"""Tests for the app model loader and the device session executor."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from reprolint import appmodel
from reprolint.appmodel import OPEN_APP, TAP, TYPE, load_app_model, load_app_model_file
from reprolint.errors import AppModelError, ForeignCheckpointError, IllegalEventError
from reprolint.simulator import DeviceSession

FIXTURES = Path(__file__).parent / "fixtures"
APP_DOC = FIXTURES / "expensedroid.app.json"


@pytest.fixture(scope="module")
def model():
    return load_app_model_file(APP_DOC)


def minimal_doc(**overrides):
    doc = {
        "version": 1,
        "appName": "Mini",
        "initialScreen": "home",
        "screens": [
            {"name": "home", "components": [
                {"type": "Button", "id": "b1", "label": "Go", "bounds": [0, 0, 40, 40],
                 "flags": ["tappable"]},
            ]},
        ],
        "transitions": [],
    }
    doc.update(overrides)
    return doc


def test_fixture_model_loads(model):
    assert model.app_name == "Expensedroid"
    assert len(model.screens) == 10
    assert model.initial_screen == "main"


def test_minimal_model_openapp_reaches_initial():
    session = DeviceSession(load_app_model(minimal_doc()))
    screen = session.execute(OPEN_APP)
    assert screen.name == "home"


def test_dangling_transition_target_rejected():
    doc = minimal_doc(transitions=[
        {"screen": "home", "event": "tap", "componentId": "b1", "target": "nowhere"},
    ])
    with pytest.raises(AppModelError, match="dangling"):
        load_app_model(doc)


def test_duplicate_component_id_rejected():
    doc = minimal_doc()
    doc["screens"][0]["components"].append(
        {"type": "Button", "id": "b1", "label": "Dup", "bounds": [0, 50, 40, 40]}
    )
    with pytest.raises(AppModelError, match="duplicate component id"):
        load_app_model(doc)


def test_missing_initial_screen_rejected():
    with pytest.raises(AppModelError):
        load_app_model(minimal_doc(initialScreen="ghost"))


def test_unknown_version_rejected():
    with pytest.raises(AppModelError, match="version"):
        load_app_model(minimal_doc(version=99))


def test_bounds_outside_screen_rejected():
    doc = minimal_doc()
    doc["screens"][0]["components"][0]["bounds"] = [350, 0, 40, 40]
    with pytest.raises(AppModelError, match="bounds"):
        load_app_model(doc)


def test_two_focused_components_rejected():
    doc = minimal_doc()
    doc["screens"][0]["components"] = [
        {"type": "TextField", "id": "f1", "bounds": [0, 0, 100, 40], "flags": ["typeable", "focused"]},
        {"type": "TextField", "id": "f2", "bounds": [0, 50, 100, 40], "flags": ["typeable", "focused"]},
    ]
    with pytest.raises(AppModelError, match="focused"):
        load_app_model(doc)


def test_tap_transition(model):
    session = DeviceSession(model)
    session.execute(OPEN_APP)
    screen = session.execute(TAP, "btn_new")
    assert screen.name == "create_entry"
    screen = session.execute(TAP, "btn_save")
    assert screen.name == "main"


def test_unmapped_tap_is_noop(model):
    session = DeviceSession(model)
    session.execute(OPEN_APP)
    before = session.execute(TAP, "btn_settings")
    assert before.name == "settings"
    after = session.execute(TAP, "opt_currency")  # no transition defined
    assert after.name == "settings"


def test_type_on_non_typeable_is_illegal(model):
    session = DeviceSession(model)
    session.execute(OPEN_APP)
    session.execute(TAP, "btn_new")
    with pytest.raises(IllegalEventError):
        session.execute(TYPE, "btn_save", input="hello")


def test_event_on_absent_component_is_illegal(model):
    session = DeviceSession(model)
    session.execute(OPEN_APP)
    with pytest.raises(IllegalEventError):
        session.execute(TAP, "no_such_component")


def test_disabled_component_is_illegal():
    doc = minimal_doc()
    doc["screens"][0]["components"][0]["flags"] = ["tappable", "disabled"]
    session = DeviceSession(load_app_model(doc))
    session.execute(OPEN_APP)
    with pytest.raises(IllegalEventError, match="disabled"):
        session.execute(TAP, "b1")


def test_type_stores_text_and_focus(model):
    session = DeviceSession(model)
    session.execute(OPEN_APP)
    session.execute(TAP, "btn_new")
    screen = session.execute(TYPE, "fld_price", input="12.50")
    price = screen.find("fld_price")
    assert price.text == "12.50"
    assert screen.focused_component().id == "fld_price"


def test_tap_back_defaults_to_previous_screen(model):
    session = DeviceSession(model)
    session.execute(OPEN_APP)
    session.execute(TAP, "btn_menu")
    session.execute(TAP, "opt_export")
    screen = session.execute(appmodel.TAP_BACK)
    assert screen.name == "menu"
    screen = session.execute(appmodel.TAP_BACK)
    assert screen.name == "main"


def test_checkpoint_restore_roundtrip(model):
    session = DeviceSession(model)
    session.execute(OPEN_APP)
    cp = session.checkpoint()
    session.execute(TAP, "btn_settings")
    session.execute(TAP, "opt_color")
    assert session.current().name == "color_picker"
    session.restore(cp)
    assert session.current().name == "main"
    assert len(session.history) == 1


def test_restore_immediately_is_identity(model):
    session = DeviceSession(model)
    session.execute(OPEN_APP)
    cp = session.checkpoint()
    session.restore(cp)
    assert session.current().name == "main"


def test_restore_across_type_event(model):
    session = DeviceSession(model)
    session.execute(OPEN_APP)
    session.execute(TAP, "btn_new")
    session.execute(TYPE, "fld_price", input="7")
    cp = session.checkpoint()
    session.execute(TYPE, "fld_price", input="999")
    session.restore(cp)
    assert session.current().find("fld_price").text == "7"


def test_foreign_checkpoint_rejected(model):
    session_a = DeviceSession(model)
    session_b = DeviceSession(model)
    session_a.execute(OPEN_APP)
    session_b.execute(OPEN_APP)
    with pytest.raises(ForeignCheckpointError):
        session_b.restore(session_a.checkpoint())


def test_identical_sequences_are_deterministic(model):
    def run():
        session = DeviceSession(model, check_replay=True)
        session.execute(OPEN_APP)
        session.execute(TAP, "btn_new")
        session.execute(TYPE, "fld_description", input="coffee")
        session.execute(TAP, "btn_save")
        session.execute(TAP, "btn_menu")
        return [step.target.name for step in session.history]

    assert run() == run()


def test_openapp_resets_state(model):
    session = DeviceSession(model)
    session.execute(OPEN_APP)
    session.execute(TAP, "btn_new")
    session.execute(TYPE, "fld_price", input="3")
    screen = session.execute(OPEN_APP)
    assert screen.name == "main"
    assert session.field_texts == {}


def test_model_file_roundtrip(tmp_path, model):
    # screen snapshots survive a serialize/parse cycle
    main = model.screens["main"]
    doc = appmodel.screen_to_dict(main)
    again = appmodel.screen_from_dict(json.loads(json.dumps(doc)))
    assert [c.id for c in again.components()] == [c.id for c in main.components()]
    assert appmodel.screen_to_dict(again) == doc


def test_fixture_validates_against_shipped_schema():
    import jsonschema
    from importlib import resources

    schema = json.loads(
        resources.files("reprolint").joinpath("data/app-model.schema.json").read_text("utf-8")
    )
    doc = json.loads(APP_DOC.read_text(encoding="utf-8"))
    jsonschema.validate(doc, schema)

    bad = dict(doc, version=99)
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(bad, schema)
