from __future__ import annotations

import pytest

from cobjeval.errors import SchemaError
from cobjeval.java import (
    VariableMapping,
    extract_facts,
    extract_java_facts,
    parse_java,
    parse_mapping_text,
)


@pytest.fixture(scope="module")
def mapping(maps_text):
    return parse_mapping_text(maps_text)


def test_mapping_text_parses_all_sections(mapping):
    assert [e.cobol_name for e in mapping.entries] == [
        "WS-RESP", "WS-RESP2", "WS-COMMAREA-LEN", "CA-RETURN-CODE", "CA-CUSTOMER-NUM",
    ]
    entry = mapping.entry_for("ca-return-code")
    assert entry.getter_expr == "dfhcommarea.getCaReturnCode()"
    assert entry.setter_call_chain == "dfhcommarea.setCaReturnCode"
    assert entry.java_display == "dfhcommarea.caReturnCode"
    method = mapping.method_entry_for("WRITE-ERROR-MESSAGE")
    assert method.call_name == "mainlineWriteErrorMessage"
    assert method.call_args == ["dfhcommarea", "wsResp", "wsResp2"]
    assert mapping.class_skeleton.params == ["dfhcommarea"]
    assert mapping.class_skeleton.declared_locals == ["wsCommareaLen", "wsResp", "wsResp2"]


def test_setter_pattern_requires_single_placeholder():
    with pytest.raises(SchemaError):
        parse_mapping_text("## Variable Map:\nWS-X    wsX    wsX = val val\n")


def test_duplicate_cobol_name_rejected():
    with pytest.raises(SchemaError):
        parse_mapping_text("## Variable Map:\nWS-X  wsX  wsX = val\nWS-X  other  other = val\n")


def test_setter_call_match_yields_mapped_write(mapping):
    facts = extract_java_facts(parse_java("dfhcommarea.setCaReturnCode(80);"), mapping)
    mapped = [f for f in facts if f.cobol_name == "CA-RETURN-CODE"]
    assert len(mapped) == 1
    assert mapped[0].kind == "var_write"
    assert mapped[0].line == 1


def test_assignment_yields_write_and_call_fact(mapping):
    facts = extract_java_facts(parse_java("wsResp = e.getRESP();"), mapping)
    kinds = {(f.kind, f.name) for f in facts}
    assert ("var_write", "wsResp") in kinds
    assert ("method_call", "e.getRESP") in kinds
    assert any(f.cobol_name == "WS-RESP" and f.kind == "var_write" for f in facts)


def test_empty_body_has_no_facts(mapping):
    assert extract_java_facts(parse_java(""), mapping) == []


def test_getter_call_occurrence_is_mapped_read(mapping):
    facts = extract_java_facts(parse_java("foo(dfhcommarea.getCaCustomerNum());"), mapping)
    assert any(f.cobol_name == "CA-CUSTOMER-NUM" and f.kind == "var_read" for f in facts)


def test_uppercase_identifiers_are_not_variable_reads(mapping):
    facts = extract_java_facts(parse_java("String x = String.format(\"%d\", count);"), mapping)
    read_names = {f.name for f in facts if f.kind == "var_read"}
    assert "String" not in read_names
    assert "count" in read_names


def test_golden_fixture_facts(faulty_java, mapping):
    extraction = extract_facts(parse_java(faulty_java), mapping)
    facts = extraction.facts

    assert extraction.declared_names >= {
        "dfhcommarea", "wsResp", "wsResp2", "wsCommareaLen",
        "jdeclKeyedFile", "jdeclRecordHolder", "jdeclLocalCcsid", "jdeclLocalCharSet", "e",
    }
    mapped_writes = {f.cobol_name for f in facts if f.kind == "var_write" and f.cobol_name}
    assert mapped_writes == {"WS-RESP", "WS-RESP2", "WS-COMMAREA-LEN", "CA-RETURN-CODE"}
    mapped_reads = {f.cobol_name for f in facts if f.kind == "var_read" and f.cobol_name}
    assert "CA-CUSTOMER-NUM" not in mapped_reads  # the injected fault
    assert {"WS-RESP", "WS-RESP2", "WS-COMMAREA-LEN"} <= mapped_reads

    # The faulty bare identifier is visible as a raw read.
    assert any(f.kind == "var_read" and f.name == "caCustomerNum" for f in facts)
    calls = {f.name for f in facts if f.kind == "method_call"}
    assert "mainlineWriteErrorMessage" in calls
    assert "Task.getTask().abend" in calls


def test_mapping_rename_symmetry(faulty_java, maps_text):
    # Renaming a getter consistently in both mapping and source leaves the
    # mapped fact set unchanged.
    base_mapping = parse_mapping_text(maps_text)
    base = {(f.kind, f.cobol_name) for f in extract_java_facts(parse_java(faulty_java), base_mapping)
            if f.cobol_name}

    renamed_maps = maps_text.replace("getCaReturnCode", "fetchCaReturnCode") \
                            .replace("setCaReturnCode", "storeCaReturnCode")
    renamed_java = faulty_java.replace("setCaReturnCode", "storeCaReturnCode")
    renamed = {(f.kind, f.cobol_name)
               for f in extract_java_facts(parse_java(renamed_java), parse_mapping_text(renamed_maps))
               if f.cobol_name}
    assert base == renamed


def test_line_fidelity(faulty_java, mapping):
    lines = faulty_java.splitlines()
    for fact in extract_java_facts(parse_java(faulty_java), mapping):
        text = lines[fact.line - 1]
        probe = fact.name.split("(")[0].split(".")[-1] if fact.kind == "method_call" else fact.name
        if fact.cobol_name:
            continue  # mapped facts point at the matching expression line
        assert probe in text


def test_structured_mapping_equivalent(maps_text, faulty_java):
    from cobjeval.java import mapping_from_record

    structured = mapping_from_record(
        [
            {"cobol": "WS-RESP", "getter": "wsResp", "setter": "wsResp = val"},
            {"cobol": "WS-RESP2", "getter": "wsResp2", "setter": "wsResp2 = val"},
            {"cobol": "WS-Commarea-Len", "getter": "wsCommareaLen", "setter": "wsCommareaLen = val"},
            {"cobol": "CA-RETURN-CODE", "getter": "dfhcommarea.getCaReturnCode()",
             "setter": "dfhcommarea.setCaReturnCode(val)"},
            {"cobol": "CA-CUSTOMER-NUM", "getter": "dfhcommarea.getCaCustomerNum()",
             "setter": "dfhcommarea.setCaCustomerNum(val)"},
        ],
        [{"cobol": "WRITE-ERROR-MESSAGE", "java": "mainlineWriteErrorMessage(dfhcommarea, wsResp, wsResp2)"}],
        {"signature": "public void invokeMainline(Dfhcommarea dfhcommarea)",
         "locals": ["wsCommareaLen", "wsResp", "wsResp2"], "params": ["dfhcommarea"]},
    )
    textual = parse_mapping_text(maps_text)
    tree = parse_java(faulty_java)
    facts_structured = {(f.kind, f.name, f.cobol_name) for f in extract_java_facts(tree, structured)}
    facts_textual = {(f.kind, f.name, f.cobol_name) for f in extract_java_facts(tree, textual)}
    assert facts_structured == facts_textual
