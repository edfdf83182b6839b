"""Java method model: tolerant parsing, fact extraction, middleware idioms."""

from .parser import JavaNode, JavaParseTree, parse_java
from .facts import (
    JavaFact,
    FactExtraction,
    count_executable_statements,
    extract_facts,
    extract_java_facts,
)
from .mapping import (
    ClassSkeleton,
    MethodMapEntry,
    VariableMapEntry,
    VariableMapping,
    mapping_from_record,
    parse_mapping_text,
)
from .middleware import extract_java_middleware, load_catalog

__all__ = [
    "JavaNode",
    "JavaParseTree",
    "parse_java",
    "JavaFact",
    "FactExtraction",
    "count_executable_statements",
    "extract_facts",
    "extract_java_facts",
    "ClassSkeleton",
    "MethodMapEntry",
    "VariableMapEntry",
    "VariableMapping",
    "mapping_from_record",
    "parse_mapping_text",
    "extract_java_middleware",
    "load_catalog",
]
