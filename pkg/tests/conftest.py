from __future__ import annotations

from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


def read_fixture(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def cobol_source() -> str:
    return read_fixture("customer_write.cbl")


@pytest.fixture(scope="session")
def faulty_java() -> str:
    return read_fixture("customer_write_faulty.java")


@pytest.fixture(scope="session")
def corrected_java() -> str:
    return read_fixture("customer_write_corrected.java")


@pytest.fixture(scope="session")
def wrong_exception_java() -> str:
    return read_fixture("customer_write_wrong_exception.java")


@pytest.fixture(scope="session")
def maps_text() -> str:
    return read_fixture("customer_write_maps.txt")


@pytest.fixture(scope="session")
def judge_response() -> str:
    return read_fixture("judge_response_mainline.txt")


@pytest.fixture()
def mainline(cobol_source):
    from cobjeval.cobol import parse_cobol

    return parse_cobol(cobol_source, "MAINLINE")
