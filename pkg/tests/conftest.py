from __future__ import annotations

from pathlib import Path

import pytest

from simrel import BitString, KeyDictionary, build_index

DATA = Path(__file__).resolve().parents[1] / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def s1() -> BitString:
    return BitString.from_text((DATA / "s1.bits").read_text())


@pytest.fixture(scope="session")
def s2() -> BitString:
    return BitString.from_text((DATA / "s2.bits").read_text())


@pytest.fixture(scope="session")
def s3() -> BitString:
    return BitString.from_text((DATA / "s3.bits").read_text())


@pytest.fixture(scope="session")
def s2_keys() -> KeyDictionary:
    return KeyDictionary.from_text((DATA / "s2.keys").read_text())


@pytest.fixture(scope="session")
def s3_keys() -> KeyDictionary:
    # The published key list for the third string: four entries, two of them
    # naming the same nibble value. Feeding it verbatim is the point.
    return KeyDictionary.from_text((DATA / "s3.keys").read_text())


@pytest.fixture(scope="session")
def toy_docs() -> list[tuple[str, str]]:
    return [
        (p.stem, p.read_text()) for p in sorted((DATA / "toy_corpus").glob("*.txt"))
    ]


@pytest.fixture(scope="session")
def toy_index(toy_docs):
    return build_index(toy_docs)
