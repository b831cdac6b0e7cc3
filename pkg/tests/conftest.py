"""Shared fixtures: the tree corpus and small named trees.

The corpus contains one plane-tree string per homeomorphism type of tree
with at most 4 essential vertices, every essential degree between 3 and
5.  Shapes: radial (1 essential), one edge (2), path (3 and 4), and the
3-star (4).  Degree assignments are enumerated up to the symmetry of the
shape and deduplicated by canonical form.
"""

import sys
from itertools import combinations_with_replacement, product
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import pytest

from treebraid import tree as T

DEGREES = (3, 4, 5)

T_MIN = "((()((()())(()()))))"


def radial_tree(degree):
    return "((" + "()" * (degree - 1) + "))"


def path_tree(degs):
    """Linear tree whose essential vertices along the path have the
    given degrees; basepoint at a leaf of the first."""

    def emit(i):
        if i == len(degs) - 1:
            return "(" + "()" * (degs[i] - 1) + ")"
        return "(" + emit(i + 1) + "()" * (degs[i] - 2) + ")"

    return "(" + emit(0) + ")"


def star_tree(center_deg, outer_degs):
    """3-star: a central essential vertex adjacent to three essential
    vertices; basepoint at a leaf of the first outer vertex."""
    o1, o2, o3 = outer_degs
    arm = lambda d: "(" + "()" * (d - 1) + ")"
    center = ("(" + arm(o2) + arm(o3) + "()" * (center_deg - 3) + ")")
    return "(" + "(" + center + "()" * (o1 - 2) + ")" + ")"


def build_corpus():
    out = {}

    def add(text):
        t = T.parse_tree(text)
        out.setdefault(T.canonical_form(t), text)

    for d in DEGREES:
        add(radial_tree(d))
    for d1, d2 in combinations_with_replacement(DEGREES, 2):
        add(path_tree([d1, d2]))
    for mid in DEGREES:
        for d1, d2 in combinations_with_replacement(DEGREES, 2):
            add(path_tree([d1, mid, d2]))
    for degs in product(DEGREES, repeat=4):
        add(path_tree(list(degs)))
    for c in DEGREES:
        for outer in combinations_with_replacement(DEGREES, 3):
            add(star_tree(c, outer))
    return sorted(out.values())


CORPUS = build_corpus()


@pytest.fixture(scope="session")
def corpus():
    return CORPUS


@pytest.fixture(scope="session")
def tmin():
    return T.parse_tree(T_MIN)
