"""Three-level coverage model: category / subcategory / sub-subcategory.

The model ships as a JSON data file so the node set can grow without code
changes. Every leaf carries a matcher over parsed statements: a statement
kind, optionally a middleware call type, optionally a structural feature
(IF shape, CALL linkage). Within a category the first matching subcategory
wins, which lets a bare-kind matcher act as the category's catch-all when
listed last.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..errors import SchemaError

LEVELS = ("category", "subcategory", "subsubcategory")


@dataclass
class CoverageNode:
    id: str
    level: str
    name: str
    parent: str | None = None
    match: dict = field(default_factory=dict)
    children: list["CoverageNode"] = field(default_factory=list)


@dataclass
class CoverageModel:
    categories: list[CoverageNode] = field(default_factory=list)
    complex_condition_min_operators: int = 2
    version: int = 1

    def nodes(self) -> list[CoverageNode]:
        out: list[CoverageNode] = []
        for category in self.categories:
            out.append(category)
            for sub in category.children:
                out.append(sub)
                out.extend(sub.children)
        return out

    def node_ids(self) -> list[str]:
        return [n.id for n in self.nodes()]

    def subcategory_ids(self) -> list[str]:
        return [n.id for n in self.nodes() if n.level == "subcategory"]


def load_model(path: str | Path | None = None) -> CoverageModel:
    if path is not None:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    else:
        raw = json.loads(
            resources.files("cobjeval.data").joinpath("coverage_model.json").read_text(encoding="utf-8")
        )
    return model_from_dict(raw)


def model_from_dict(raw: dict) -> CoverageModel:
    categories = []
    seen: set[str] = set()

    def check_id(node_id: str) -> str:
        if not node_id:
            raise SchemaError("coverage node without id")
        if node_id in seen:
            raise SchemaError(f"duplicate coverage node id: {node_id}")
        seen.add(node_id)
        return node_id

    for cat in raw.get("categories", []):
        cat_node = CoverageNode(
            id=check_id(cat.get("id", "")),
            level="category",
            name=cat.get("name", cat.get("id", "")),
        )
        for sub in cat.get("subcategories", []):
            sub_node = CoverageNode(
                id=check_id(sub.get("id", "")),
                level="subcategory",
                name=sub.get("name", sub.get("id", "")),
                parent=cat_node.id,
                match=sub.get("match", {}),
            )
            if not sub_node.match:
                raise SchemaError(f"subcategory {sub_node.id} has no matcher")
            for subsub in sub.get("subsubcategories", []):
                leaf = CoverageNode(
                    id=check_id(subsub.get("id", "")),
                    level="subsubcategory",
                    name=subsub.get("name", subsub.get("id", "")),
                    parent=sub_node.id,
                    match=subsub.get("match", {}),
                )
                if not leaf.match:
                    raise SchemaError(f"sub-subcategory {leaf.id} has no matcher")
                sub_node.children.append(leaf)
            cat_node.children.append(sub_node)
        categories.append(cat_node)

    return CoverageModel(
        categories=categories,
        complex_condition_min_operators=int(raw.get("complex_condition_min_operators", 2)),
        version=int(raw.get("version", 1)),
    )
