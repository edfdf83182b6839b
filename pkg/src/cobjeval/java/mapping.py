"""COBOL-to-Java translation context: variable map, method map, class map.

Two input layouts are accepted: the columnar text blocks produced by the
class-design stage (``## Variable Map`` / ``## Method Map`` / ``## Class Map``
sections) and an equivalent structured object. Both normalize into one
``VariableMapping``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..errors import SchemaError

PLACEHOLDER = "val"

_IDENT_RE = re.compile(r"^[A-Za-z_$][A-Za-z0-9_$]*$")
_LOCAL_DECL_RE = re.compile(r"^\s*(?:final\s+)?[\w.<>\[\]]+\s+([A-Za-z_$][\w$]*)\s*(?:=[^;]*)?;")
_PARAM_RE = re.compile(r"([\w.<>\[\]]+)\s+([A-Za-z_$][\w$]*)")


def _strip_ws(text: str) -> str:
    return re.sub(r"\s+", "", text)


@dataclass
class VariableMapEntry:
    cobol_name: str  # normalized uppercase
    getter_expr: str
    setter_pattern: str

    def __post_init__(self):
        self.cobol_name = self.cobol_name.upper()
        if self.setter_pattern.count(PLACEHOLDER) != 1:
            raise SchemaError(
                f"setter pattern for {self.cobol_name} must contain exactly one '{PLACEHOLDER}' placeholder: "
                f"{self.setter_pattern!r}"
            )

    @property
    def getter_is_identifier(self) -> bool:
        return bool(_IDENT_RE.match(self.getter_expr.strip()))

    @property
    def setter_is_assignment(self) -> bool:
        lhs = self.setter_pattern.split("=", 1)[0].strip()
        return "=" in self.setter_pattern and bool(_IDENT_RE.match(lhs))

    @property
    def setter_assign_target(self) -> str | None:
        if not self.setter_is_assignment:
            return None
        return self.setter_pattern.split("=", 1)[0].strip()

    @property
    def setter_call_chain(self) -> str | None:
        """For call-style setters: the chain before the argument list."""
        if self.setter_is_assignment:
            return None
        stripped = _strip_ws(self.setter_pattern)
        match = re.match(rf"^(.*?)\({re.escape(PLACEHOLDER)}\)$", stripped)
        return match.group(1) if match else None

    @property
    def java_display(self) -> str:
        """Property-style rendering of the getter, for error messages."""
        stripped = self.getter_expr.strip()
        match = re.match(r"^(.*)\.get([A-Za-z0-9_$]+)\(\)$", stripped)
        if match:
            prop = match.group(2)
            return f"{match.group(1)}.{prop[0].lower()}{prop[1:]}"
        return stripped


@dataclass
class MethodMapEntry:
    cobol_paragraph: str  # normalized uppercase
    java_call_pattern: str

    def __post_init__(self):
        self.cobol_paragraph = self.cobol_paragraph.upper()

    @property
    def call_name(self) -> str:
        return self.java_call_pattern.split("(", 1)[0].strip()

    @property
    def call_args(self) -> list[str]:
        match = re.search(r"\((.*)\)\s*$", self.java_call_pattern, re.DOTALL)
        if not match or not match.group(1).strip():
            return []
        return [_strip_ws(a) for a in match.group(1).split(",")]


@dataclass
class ClassSkeleton:
    signature: str = ""
    declared_locals: list[str] = field(default_factory=list)
    params: list[str] = field(default_factory=list)
    raw: str = ""

    @property
    def known_names(self) -> set[str]:
        return set(self.declared_locals) | set(self.params)


@dataclass
class VariableMapping:
    entries: list[VariableMapEntry] = field(default_factory=list)
    method_entries: list[MethodMapEntry] = field(default_factory=list)
    class_skeleton: ClassSkeleton = field(default_factory=ClassSkeleton)

    def __post_init__(self):
        seen: set[str] = set()
        for entry in self.entries:
            if entry.cobol_name in seen:
                raise SchemaError(f"duplicate variable map entry: {entry.cobol_name}")
            seen.add(entry.cobol_name)

    def entry_for(self, cobol_name: str) -> VariableMapEntry | None:
        upper = cobol_name.upper()
        for entry in self.entries:
            if entry.cobol_name == upper:
                return entry
        return None

    def method_entry_for(self, paragraph: str) -> MethodMapEntry | None:
        upper = paragraph.upper()
        for entry in self.method_entries:
            if entry.cobol_paragraph == upper:
                return entry
        return None

    def mapped_java_identifiers(self) -> set[str]:
        """Bare Java identifiers the mapping binds (identifier getters and
        assignment-setter targets)."""
        names: set[str] = set()
        for entry in self.entries:
            if entry.getter_is_identifier:
                names.add(entry.getter_expr.strip())
            target = entry.setter_assign_target
            if target:
                names.add(target)
        return names

    @classmethod
    def empty(cls) -> "VariableMapping":
        return cls()


# ------------------------------------------------------------------ parsing


def parse_mapping_text(variable_map: str = "", method_map: str = "", class_map: str = "") -> VariableMapping:
    """Parse the three columnar text blocks; any block may be empty.

    A single combined text (all three sections concatenated) can be passed
    as ``variable_map``; section headers route the lines.
    """
    sections = _split_sections(variable_map)
    if method_map:
        sections["method"] = sections.get("method", "") + "\n" + method_map
    if class_map:
        sections["class"] = sections.get("class", "") + "\n" + class_map

    entries = []
    for lineno, line in enumerate(sections.get("variable", "").splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        columns = re.split(r"\s{2,}|\t+", line.strip())
        if len(columns) < 3:
            raise SchemaError(f"variable map line needs 3 columns: {line.strip()!r}", lineno)
        entries.append(VariableMapEntry(columns[0], columns[1], " ".join(columns[2:])))

    method_entries = []
    for line in sections.get("method", "").splitlines():
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        columns = re.split(r"\s{2,}|\t+", line.strip(), maxsplit=1)
        if len(columns) < 2:
            raise SchemaError(f"method map line needs 2 columns: {line.strip()!r}")
        method_entries.append(MethodMapEntry(columns[0], columns[1]))

    skeleton = _parse_class_skeleton(sections.get("class", ""))
    return VariableMapping(entries=entries, method_entries=method_entries, class_skeleton=skeleton)


def _split_sections(text: str) -> dict[str, str]:
    sections: dict[str, list[str]] = {}
    current: str | None = None
    for line in text.splitlines():
        header = line.strip().lower()
        if header.startswith("##"):
            label = header.lstrip("#").strip()
            if label.startswith("variable"):
                current = "variable"
            elif label.startswith("method"):
                current = "method"
            elif label.startswith("class"):
                current = "class"
            else:
                current = None
            continue
        if current is None and line.strip() and not sections:
            current = "variable"  # headerless block defaults to variable map
        if current is not None:
            sections.setdefault(current, []).append(line)
    return {k: "\n".join(v) for k, v in sections.items()}


def _parse_class_skeleton(text: str) -> ClassSkeleton:
    skeleton = ClassSkeleton(raw=text.strip())
    if not text.strip():
        return skeleton
    lines = [ln for ln in text.splitlines() if ln.strip()]
    signature = lines[0].strip()
    skeleton.signature = signature.rstrip("{").strip()
    paren = re.search(r"\((.*?)\)", signature)
    if paren:
        for match in _PARAM_RE.finditer(paren.group(1)):
            skeleton.params.append(match.group(2))
    for line in lines[1:]:
        match = _LOCAL_DECL_RE.match(line)
        if match:
            skeleton.declared_locals.append(match.group(1))
    return skeleton


def mapping_from_record(variable_map, method_map=None, class_map=None) -> VariableMapping:
    """Build a mapping from JSONL record fields (text blocks or objects)."""
    if isinstance(variable_map, str) and not isinstance(method_map, (list, dict)) \
            and not isinstance(class_map, (list, dict)):
        return parse_mapping_text(variable_map or "", str(method_map or ""), str(class_map or ""))

    entries = []
    for item in variable_map or []:
        if isinstance(item, dict):
            entries.append(VariableMapEntry(
                item.get("cobol", item.get("cobol_name", "")),
                item.get("getter", item.get("getter_expr", "")),
                item.get("setter", item.get("setter_pattern", "")),
            ))
        else:
            raise SchemaError(f"variable map entries must be objects, got {type(item).__name__}")
    method_entries = []
    for item in method_map or []:
        if isinstance(item, dict):
            method_entries.append(MethodMapEntry(
                item.get("cobol", item.get("cobol_paragraph", "")),
                item.get("java", item.get("java_call_pattern", "")),
            ))
        else:
            raise SchemaError(f"method map entries must be objects, got {type(item).__name__}")
    if isinstance(class_map, dict):
        skeleton = ClassSkeleton(
            signature=class_map.get("signature", ""),
            declared_locals=list(class_map.get("locals", [])),
            params=list(class_map.get("params", [])),
            raw=str(class_map),
        )
    elif isinstance(class_map, str):
        skeleton = _parse_class_skeleton(class_map)
    else:
        skeleton = ClassSkeleton()
    return VariableMapping(entries=entries, method_entries=method_entries, class_skeleton=skeleton)
