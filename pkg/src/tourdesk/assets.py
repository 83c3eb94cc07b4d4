"""Bundled demo data and engine assembly from data-file paths.

Every data file is replaceable from the command line; the bundled set exists
so the CLI and service work out of the box.
"""
from __future__ import annotations

from dataclasses import dataclass
from importlib.resources import files
from pathlib import Path
from typing import Optional, Union

from .embeddings import load_embeddings
from .intent import load_references, load_rules
from .knowledge import load_catalog
from .scenario import DialogueEngine, ScenarioTemplates
from .tokenizer import DEFAULT_SPOT, Gazetteer

PathLike = Union[str, Path]


def bundled(name: str) -> Path:
    return Path(str(files("tourdesk").joinpath("data", name)))


@dataclass(frozen=True)
class EnginePaths:
    embeddings: Path
    catalog: Path
    rules: Path
    refs: Path
    gazetteer: Path
    templates: Path

    @classmethod
    def with_defaults(
        cls,
        embeddings: Optional[PathLike] = None,
        catalog: Optional[PathLike] = None,
        rules: Optional[PathLike] = None,
        refs: Optional[PathLike] = None,
        gazetteer: Optional[PathLike] = None,
        templates: Optional[PathLike] = None,
    ) -> "EnginePaths":
        return cls(
            embeddings=Path(embeddings) if embeddings else bundled("demo_embeddings.txt"),
            catalog=Path(catalog) if catalog else bundled("catalog.json"),
            rules=Path(rules) if rules else bundled("rules.tsv"),
            refs=Path(refs) if refs else bundled("references.tsv"),
            gazetteer=Path(gazetteer) if gazetteer else bundled("gazetteer.txt"),
            templates=Path(templates) if templates else bundled("templates.json"),
        )


def build_engine(
    paths: Optional[EnginePaths] = None,
    *,
    max_questions: int = 3,
    default_spot: str = DEFAULT_SPOT,
    clock=None,
) -> DialogueEngine:
    paths = paths or EnginePaths.with_defaults()
    table = load_embeddings(paths.embeddings)
    gazetteer = Gazetteer.from_file(paths.gazetteer)
    return DialogueEngine(
        catalog=load_catalog(paths.catalog),
        templates=ScenarioTemplates.from_file(paths.templates),
        rules=load_rules(paths.rules),
        refs=load_references(paths.refs, table, gazetteer),
        table=table,
        gazetteer=gazetteer,
        max_questions=max_questions,
        default_spot=default_spot,
        clock=clock,
    )


def load_impression_items(path: Optional[PathLike] = None) -> list[str]:
    source = Path(path) if path else bundled("impression_items.txt")
    items = [line.strip() for line in source.read_text(encoding="utf-8").splitlines() if line.strip()]
    if len(items) != 9:
        raise ValueError(f"expected 9 impression items, got {len(items)}")
    return items
