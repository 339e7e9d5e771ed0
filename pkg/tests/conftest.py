from pathlib import Path

import pytest

from policyaudit import domains, ownership

DATA_DIR = Path(__file__).parent / "data"
PACKAGE_DATA = Path(__file__).parent.parent / "src" / "policyaudit" / "data"


@pytest.fixture(scope="session")
def psl_rules():
    return domains.load_suffix_list(PACKAGE_DATA / "public_suffix_list.dat")


@pytest.fixture(scope="session")
def owner_graph():
    return ownership.load_ownership_db(PACKAGE_DATA / "ownership.jsonl")


@pytest.fixture(scope="session")
def exclusion_terms():
    from policyaudit.audit import load_exclusions

    return load_exclusions(PACKAGE_DATA / "exclusions.txt")
