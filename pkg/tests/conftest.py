"""Shared fixtures: the packaged catalogs and the full matched-pair run.

Everything here is session-scoped; the catalogs are immutable and the
enumeration is deterministic, so tests may share them freely.
"""

import pytest

from g2sum.catalog import load_fano, load_nikulin
from g2sum.enumerator import enumerate_emb


@pytest.fixture(scope="session")
def nikulin():
    return load_nikulin()


@pytest.fixture(scope="session")
def fano():
    return load_fano()


@pytest.fixture(scope="session")
def fano_104(fano):
    """The Fano catalog without the family added in the 2003 erratum."""
    return fano.without("4.13")


@pytest.fixture(scope="session")
def emb_records(fano, nikulin):
    return enumerate_emb(fano, nikulin)


@pytest.fixture(scope="session")
def emb_records_104(fano_104, nikulin):
    return enumerate_emb(fano_104, nikulin)
