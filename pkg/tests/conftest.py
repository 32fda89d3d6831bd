import random

import pytest

from moddiv.arith import ParamSet, Variant, keypair_from_private


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def toy_kex():
    """The worked key-exchange example: l=8, m=5, p=10, q=3, r=0, Z=201."""
    return ParamSet(8, 5, 10, 3, 0, 201, Variant.KEXENC)


@pytest.fixture
def toy_sig_key():
    """The worked signature example: l=4, m=8, p=10, q=2, r=0, Z=13, X=200."""
    return keypair_from_private(ParamSet(4, 8, 10, 2, 0, 13, Variant.SIG), 200)


_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
