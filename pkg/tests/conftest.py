import pathlib
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from lassokit import read_automaton

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def fig1():
    return read_automaton((DATA / "fig1.lauto").read_text())


@pytest.fixture(scope="session")
def fig2():
    return read_automaton((DATA / "fig2.lauto").read_text())


@pytest.fixture(scope="session")
def fig3():
    return read_automaton((DATA / "fig3.lauto").read_text())
