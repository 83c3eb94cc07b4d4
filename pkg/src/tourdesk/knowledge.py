"""Catalog of the six sellable attractions and per-category answer rendering."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Union

from .intent import INFO_CATEGORIES, IntentCategory

CATALOG_SIZE = 6

DEFAULT_ANSWER_TEMPLATES = {
    "price": "{name}の入場料金は、{value}です。",
    "opening_hours": "{name}の営業時間は、{value}です。",
    "opening_days": "{name}の営業日は、{value}です。",
    "station": "{name}の最寄り駅は、{value}です。",
    "highway": "{name}へお車でお越しの場合は、{value}です。",
    "parking": "{name}の駐車場は、{value}です。",
    "missing": "申し訳ありません、{name}のその情報は手元にございません。",
}


class CatalogError(ValueError):
    """Raised when a catalog document violates its schema."""


@dataclass(frozen=True)
class AttractionRecord:
    id: str
    name: str
    highlights: list[str]
    info: dict[IntentCategory, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.name:
            raise CatalogError("attraction name must be non-empty")
        if not self.highlights:
            raise CatalogError(f"attraction {self.id!r} needs at least one highlight")
        if IntentCategory.NO_QUESTION in self.info:
            raise CatalogError("no_question is not an info key")


@dataclass(frozen=True)
class Catalog:
    attractions: list[AttractionRecord]

    def __post_init__(self) -> None:
        if len(self.attractions) != CATALOG_SIZE:
            raise CatalogError(f"catalog must have exactly {CATALOG_SIZE} attractions, got {len(self.attractions)}")
        ids = [a.id for a in self.attractions]
        names = [a.name for a in self.attractions]
        if len(set(ids)) != len(ids):
            raise CatalogError("duplicate attraction id")
        if len(set(names)) != len(names):
            raise CatalogError("duplicate attraction name")

    def get(self, attraction_id: str) -> AttractionRecord:
        for record in self.attractions:
            if record.id == attraction_id:
                return record
        raise KeyError(attraction_id)

    def __contains__(self, attraction_id: str) -> bool:
        return any(a.id == attraction_id for a in self.attractions)


def load_catalog(source: Union[str, Path, IO[str]]) -> Catalog:
    """Parse and validate the JSON catalog document.

    Schema: a top-level list of records with keys ``id``, ``name``,
    ``highlights`` (list of strings) and optional ``info`` (map from
    price/opening_hours/opening_days/station/highway/parking to a string).
    """
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as f:
            doc = json.load(f)
    else:
        doc = json.load(source)
    if not isinstance(doc, list):
        raise CatalogError("catalog document must be a JSON list")
    records = []
    for item in doc:
        if not isinstance(item, dict):
            raise CatalogError("catalog entries must be JSON objects")
        try:
            raw_info = item.get("info", {})
            info = {IntentCategory(key): str(value) for key, value in raw_info.items()}
        except ValueError as exc:
            raise CatalogError(f"unknown info key in {item.get('id')!r}: {exc}") from None
        for required in ("id", "name", "highlights"):
            if required not in item:
                raise CatalogError(f"catalog entry missing {required!r}")
        records.append(
            AttractionRecord(
                id=str(item["id"]),
                name=str(item["name"]),
                highlights=[str(h) for h in item["highlights"]],
                info=info,
            )
        )
    return Catalog(records)


def dump_catalog(catalog: Catalog) -> str:
    """Serialize back to the catalog JSON schema (round-trips with load_catalog)."""
    doc = [
        {
            "id": record.id,
            "name": record.name,
            "highlights": record.highlights,
            "info": {category.value: value for category, value in record.info.items()},
        }
        for record in catalog.attractions
    ]
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def answer(
    record: AttractionRecord,
    category: IntentCategory,
    templates: dict[str, str] = DEFAULT_ANSWER_TEMPLATES,
) -> str:
    """Spoken answer for one info category; apologizes by name when the field is absent."""
    if category is IntentCategory.NO_QUESTION:
        raise ValueError("no_question is not answerable; advance the dialogue instead")
    value = record.info.get(category)
    if value is None:
        return templates["missing"].format(name=record.name)
    return templates[category.value].format(name=record.name, value=value)
