import os
import random
from pathlib import Path

import pytest
from hypothesis import settings

from mass_layout.layout import build_floor_plan
from mass_layout.matrix import VACANT, LoadMatrix, parse_load_matrix

settings.register_profile("ci", max_examples=60, deadline=None)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

DATA = Path(__file__).resolve().parent.parent / "data"
NAMES = ("F_I", "F_II", "F_III", "F_IV", "F_V", "F_VI")
I, II, III, IV, V, VI = range(6)

APPENDIX_CSV = (DATA / "appendix_loads.csv").read_text()

# Worked-example tables. "M-x" is the big-M cell minus x; plain numbers are finite.
APPENDIX_FIRST_TABLE = """
M-20 0    M-25 M-20 M-20 5
0    M-10 0    M-10 M-10 M-10
M-30 M-30 M-35 0    M-30 M-30
M-40 M-40 5    M-40 M-40 0
M-10 M-10 M-15 M-10 M-10 0
M-15 M-15 M-20 M-15 0    M-15
"""

APPENDIX_SECOND_TABLE = """
M-20 0    M-25 M-15 M-15 10
0    M-10 0    M-5  M-5  M-5
M-35 M-35 M-40 0    M-30 M-30
M-45 M-45 0    M-40 M-40 0
M-15 M-15 M-20 M-10 M-10 0
M-20 M-20 M-25 M-15 0    M-15
"""

# Lines named in the worked example for each table.
APPENDIX_FIRST_COVER = ({I, II}, {IV, V, VI})
APPENDIX_SECOND_COVER = ({I, VI}, {I, III, IV, VI})


def parse_table(text):
    """Rows of ("M", x) for big-M cells and ints for finite cells."""
    out = []
    for line in text.strip().splitlines():
        row = []
        for tok in line.split():
            row.append(("M", int(tok[2:])) if tok.startswith("M") else int(tok))
        out.append(row)
    return out


def random_load_matrix(rng: random.Random, n: int, density: float = 0.5, hi: int = 60) -> LoadMatrix:
    flow = [[VACANT if i == j or rng.random() > density else rng.randint(0, hi)
             for j in range(n)] for i in range(n)]
    return LoadMatrix(tuple(f"D{k}" for k in range(n)), tuple(map(tuple, flow)))


@pytest.fixture
def appendix():
    return parse_load_matrix(APPENDIX_CSV)


@pytest.fixture
def appendix_plan():
    return build_floor_plan(64, 22, 2, 6)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
