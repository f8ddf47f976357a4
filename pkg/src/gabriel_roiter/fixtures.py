"""Stock posets, length functions and quivers, plus seeded random generators.

The six-element poset below has minimal elements d, e, f and maximal
elements a, b, c with d < a, e < a, e < b, f < b, f < c. Its length function
with values 4, 5, 6, 3, 2, 1 on a, b, c, d, e, f has iterates that settle into
a period of two from the second step on, while the first and third iterates
differ on b and c.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Sequence

from gabriel_roiter.length_functions import LengthFunction, make_length_function
from gabriel_roiter.order_core import Poset, poset_from_relations
from gabriel_roiter.repcat import Quiver, make_quiver

# ===== POSETS =====

ZIGZAG_ELEMENTS = ("d", "e", "f", "a", "b", "c")
ZIGZAG_RELATIONS = (("d", "a"), ("e", "a"), ("e", "b"), ("f", "b"), ("f", "c"))

# integer labelings of the iterates, each equivalent to the computed one
ZIGZAG_LABELINGS: dict[int, dict[str, int]] = {
    0: {"a": 4, "b": 5, "c": 6, "d": 3, "e": 2, "f": 1},
    1: {"a": 3, "b": 6, "c": 5, "d": 1, "e": 2, "f": 4},
    2: {"a": 6, "b": 4, "c": 2, "d": 5, "e": 3, "f": 1},
    3: {"a": 3, "b": 5, "c": 6, "d": 1, "e": 2, "f": 4},
    4: {"a": 6, "b": 4, "c": 2, "d": 5, "e": 3, "f": 1},
}


def zigzag_poset() -> Poset:
    return poset_from_relations(ZIGZAG_ELEMENTS, ZIGZAG_RELATIONS)


def zigzag_labeling(n: int) -> LengthFunction:
    """The integer labeling of the n-th iterate as a length function."""
    return make_length_function(zigzag_poset(), ZIGZAG_LABELINGS[n])


def chain_poset(n: int, names: Optional[Sequence[str]] = None) -> Poset:
    """The total order 1 < 2 < ... < n."""
    names = list(names) if names is not None else [str(i) for i in range(1, n + 1)]
    return poset_from_relations(names, zip(names, names[1:]))


def antichain_poset(names: Sequence[str]) -> Poset:
    return poset_from_relations(names)


def diamond_poset() -> Poset:
    """bottom < left, right < top."""
    return poset_from_relations(
        ["bottom", "left", "right", "top"],
        [("bottom", "left"), ("bottom", "right"), ("left", "top"), ("right", "top")],
    )


def random_poset(rng: random.Random, n: int, density: float = 0.35) -> Poset:
    """Random poset on x0..x{n-1}; pairs (xi, xj) with i < j drawn independently."""
    names = [f"x{i}" for i in range(n)]
    pairs = [
        (names[i], names[j])
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < density
    ]
    # shuffle element order so input order is not always a linear extension
    order = names[:]
    rng.shuffle(order)
    return poset_from_relations(order, pairs)


def random_length_function(rng: random.Random, p: Poset) -> LengthFunction:
    """Random positive rational values increasing along the order; ties are common."""
    values: dict[str, Fraction] = {}
    for x in p.topological_order():
        floor = max((values[y] for y in p.strictly_below(x)), default=Fraction(0))
        values[x] = floor + Fraction(rng.randint(1, 3), rng.randint(1, 2))
    return make_length_function(p, values)


# ===== QUIVERS =====


def a1() -> Quiver:
    return make_quiver(["1"])


def a2() -> Quiver:
    """1 -> 2."""
    return make_quiver(["1", "2"], [("1", "2")])


A3_ORIENTATIONS = {
    "linear": [("1", "2"), ("2", "3")],
    "reverse": [("2", "1"), ("3", "2")],
    "sink": [("1", "2"), ("3", "2")],
    "source": [("2", "1"), ("2", "3")],
}


def a3(orientation: str = "linear") -> Quiver:
    """The path 1 - 2 - 3 with the named orientation."""
    return make_quiver(["1", "2", "3"], A3_ORIENTATIONS[orientation])


def kronecker() -> Quiver:
    """Two arrows 1 -> 2."""
    return make_quiver(["1", "2"], [("1", "2"), ("1", "2")])
