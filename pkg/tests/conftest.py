import pathlib

import numpy as np
import pytest

import dpi2 as d

DATA = pathlib.Path(__file__).parent / "data"


def grid(text: str) -> d.GridMap:
    """Build a sphere map from token rows written top row first."""
    rows = [ln.split() for ln in text.strip().splitlines()]
    m = len(rows[0]) - 1
    n = len(rows) - 1
    body = "\n".join(" ".join(r) for r in rows)
    return d.load_map(f"dmap v1 w={m} h={n} codomain=S2 basepoint=-1\n{body}\n")


T_TEXT = """
.  .  .  .  .
.  2 -3 -3  .
.  2  1 -2  .
.  3  3 -2  .
.  .  .  .  .
"""

T_INV_TEXT = """
.  .  .  .  .
. -3 -3  2  .
. -2  1  2  .
. -2  3  3  .
.  .  .  .  .
"""


@pytest.fixture
def T():
    return grid(T_TEXT)


@pytest.fixture
def T_inv():
    return grid(T_INV_TEXT)


@pytest.fixture
def zero_map():
    return d.load_map((DATA / "degree_zero_6x5.dmap").read_text())


def brute_force_continuous(arr: np.ndarray, codomain) -> bool:
    """Quadratic reference check: every 8-adjacent cell pair has adjacent values."""
    h, w = arr.shape
    amat = codomain.adjacency_matrix
    for b in range(h):
        for a in range(w):
            for db in (-1, 0, 1):
                for da in (-1, 0, 1):
                    b2, a2 = b + db, a + da
                    if 0 <= b2 < h and 0 <= a2 < w:
                        if not amat[arr[b, a], arr[b2, a2]]:
                            return False
    return True
