from __future__ import annotations

import io
import json

import pytest

from tourdesk.assets import bundled
from tourdesk.intent import IntentCategory
from tourdesk.knowledge import (
    AttractionRecord,
    Catalog,
    CatalogError,
    answer,
    dump_catalog,
    load_catalog,
)


def make_records(count=6):
    return [
        AttractionRecord(
            id=f"a{i}",
            name=f"Spot {i}",
            highlights=[f"highlight {i}"],
            info={IntentCategory.PRICE: f"{i}00円"},
        )
        for i in range(count)
    ]


def test_catalog_accepts_six_records():
    catalog = Catalog(make_records())
    assert len(catalog.attractions) == 6
    assert catalog.get("a3").name == "Spot 3"


def test_catalog_rejects_wrong_count():
    with pytest.raises(CatalogError):
        Catalog(make_records(5))


def test_catalog_rejects_duplicate_id():
    records = make_records()
    records[5] = AttractionRecord(id="a0", name="Other", highlights=["x"])
    with pytest.raises(CatalogError):
        Catalog(records)


def test_record_requires_name_and_highlights():
    with pytest.raises(CatalogError):
        AttractionRecord(id="x", name="", highlights=["h"])
    with pytest.raises(CatalogError):
        AttractionRecord(id="x", name="X", highlights=[])


def test_no_question_rejected_as_info_key():
    with pytest.raises(CatalogError):
        AttractionRecord(id="x", name="X", highlights=["h"], info={IntentCategory.NO_QUESTION: "?"})


def test_answer_contains_stored_value():
    record = AttractionRecord(
        id="a", name="水族館", highlights=["h"], info={IntentCategory.PRICE: "大人500円"}
    )
    text = answer(record, IntentCategory.PRICE)
    assert "大人500円" in text


def test_answer_missing_field_apologizes_by_name():
    record = AttractionRecord(id="a", name="水族館", highlights=["h"])
    text = answer(record, IntentCategory.PARKING)
    assert "水族館" in text


def test_answer_rejects_no_question():
    record = AttractionRecord(id="a", name="X", highlights=["h"])
    with pytest.raises(ValueError):
        answer(record, IntentCategory.NO_QUESTION)


def test_answer_always_names_value_or_attraction():
    record = AttractionRecord(
        id="a", name="展望台", highlights=["h"], info={IntentCategory.STATION: "駅直結"}
    )
    for category in IntentCategory:
        if category is IntentCategory.NO_QUESTION:
            continue
        text = answer(record, category)
        assert ("駅直結" in text) or ("展望台" in text)


def test_bundled_catalog_loads():
    catalog = load_catalog(bundled("catalog.json"))
    assert len(catalog.attractions) == 6
    assert "aquarium" in catalog


def test_load_rejects_unknown_info_key():
    doc = [
        {"id": f"a{i}", "name": f"S{i}", "highlights": ["h"], "info": {}}
        for i in range(6)
    ]
    doc[0]["info"] = {"wifi": "yes"}
    with pytest.raises(CatalogError):
        load_catalog(io.StringIO(json.dumps(doc)))


def test_load_dump_load_round_trips_byte_identically():
    first = load_catalog(bundled("catalog.json"))
    text = dump_catalog(first)
    second = load_catalog(io.StringIO(text))
    assert dump_catalog(second) == text
