import pytest

from kirkman import designs, pauli, resolver


@pytest.fixture(scope="session")
def canonical_design():
    return designs.expand_seeds(tuple(pauli.q_label(q) for q in (12, 10, 4, 11)))


@pytest.fixture(scope="session")
def fano_design(canonical_design):
    return designs.fano_subdesign(canonical_design)


@pytest.fixture(scope="session")
def lex_resolution(canonical_design):
    return resolver.resolve(canonical_design)
