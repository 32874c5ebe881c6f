from pathlib import Path

import pytest

from ternlat.fieldscan import ingest_fields, load_field_file

FIELDS = Path(__file__).resolve().parent.parent / "fields"


@pytest.fixture(scope="session")
def ctx_q():
    return load_field_file(FIELDS / "q.json")


@pytest.fixture(scope="session")
def ctx_sqrt2():
    return load_field_file(FIELDS / "qsqrt2.json")


@pytest.fixture(scope="session")
def ctx_sqrt3():
    return load_field_file(FIELDS / "qsqrt3.json")


@pytest.fixture(scope="session")
def ctx_sqrt5():
    return load_field_file(FIELDS / "qsqrt5.json")


@pytest.fixture(scope="session")
def table():
    return ingest_fields(FIELDS / "quartic_sqrt2.jsonl")


@pytest.fixture(scope="session")
def fields_dir():
    return FIELDS
