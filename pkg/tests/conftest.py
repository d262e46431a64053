"""
Shared fixtures. The project uses a flat layout with no install step, so the
root goes on sys.path here.
"""

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

GOLDEN_DIR = Path(__file__).resolve().parent / "golden"

# pl(n), unrestricted plane partitions, n = 0..30
PLANE_COUNTS = (
    1, 1, 3, 6, 13, 24, 48, 86, 160, 282, 500, 859, 1479, 2485, 4167, 6879,
    11297, 18334, 29601, 47330, 75278, 118794, 186475, 290783, 451194, 696033,
    1068745, 1632658, 2483234, 3759612, 5668963,
)

# exact modulus: larger than every value the tests look at
EXACT = 10**9


@pytest.fixture
def plane_counts():
    return PLANE_COUNTS


@pytest.fixture
def golden_dir():
    return GOLDEN_DIR
