import pytest

from discocirc.resources import default_grammar, default_lexicon


@pytest.fixture(scope="session")
def lex():
    return default_lexicon()


@pytest.fixture(scope="session")
def en():
    return default_grammar("EN")


@pytest.fixture(scope="session")
def bn():
    return default_grammar("BN")


ACCEPTANCE = []   # (number, passed, line), filled by test_acceptance


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for _, _, line in sorted(ACCEPTANCE):
        terminalreporter.write_line(line)
