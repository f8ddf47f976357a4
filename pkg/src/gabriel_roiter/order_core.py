"""Finite posets, finite chains and the lexicographic order on chains.

A chain X is ordered against a chain Y by

    X <= Y  iff  min(Y \\ X) <= min(X \\ Y),

where the minimum of the empty set is a virtual top element. On chains of a
total order this amounts to: at the first position where the two ascending
member lists differ, the list holding the smaller member is the greater
chain, and a proper prefix is the smaller chain. Hence {} < {3} < {2} <
{2,3} < {1} < {1,3} < {1,2} < {1,2,3} on 1 < 2 < 3.

Chain values (the codomain of length functions) are either exact rationals
(``Fraction``) or ascending tuples of chain values of one common depth.
"""

from __future__ import annotations

import enum
import functools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Iterator, Mapping, Optional, Sequence, Union

import networkx as nx

from gabriel_roiter.errors import (
    CycleDetected,
    DepthMismatch,
    InputError,
    NonPositiveMember,
    NotAChain,
    NotARational,
    UnknownElement,
)
from gabriel_roiter.schemas import PosetSpec

logger = logging.getLogger(__name__)

ElementId = str
ChainValue = Union[Fraction, tuple["ChainValue", ...]]

EMPTY_CHAIN: tuple = ()


class CompareResult(enum.Enum):
    LESS_THAN = "LessThan"
    EQUAL = "Equal"
    GREATER_THAN = "GreaterThan"
    INCOMPARABLE = "Incomparable"

    def flip(self) -> CompareResult:
        """Result of the comparison with swapped arguments."""
        return _FLIPPED[self]

    @property
    def is_leq(self) -> bool:
        return self in (CompareResult.LESS_THAN, CompareResult.EQUAL)

    @property
    def is_geq(self) -> bool:
        return self in (CompareResult.GREATER_THAN, CompareResult.EQUAL)


_FLIPPED = {
    CompareResult.LESS_THAN: CompareResult.GREATER_THAN,
    CompareResult.GREATER_THAN: CompareResult.LESS_THAN,
    CompareResult.EQUAL: CompareResult.EQUAL,
    CompareResult.INCOMPARABLE: CompareResult.INCOMPARABLE,
}


# ===== POSETS =====


class Poset:
    """An immutable finite poset.

    Use :func:`poset_from_relations` to build one. ``elements`` keeps the
    input order, which is the tie-break order everywhere in the package.
    """

    __slots__ = ("_elements", "_index", "_leq", "_covers", "_below", "_topo", "_hash")

    def __init__(
        self,
        elements: tuple[ElementId, ...],
        leq: frozenset[tuple[ElementId, ElementId]],
        covers: tuple[tuple[ElementId, ElementId], ...],
        below: Mapping[ElementId, tuple[ElementId, ...]],
        topo: tuple[ElementId, ...],
    ):
        self._elements = elements
        self._index = {x: i for i, x in enumerate(elements)}
        self._leq = leq
        self._covers = covers
        self._below = dict(below)
        self._topo = topo
        self._hash = hash((elements, leq))

    @property
    def elements(self) -> tuple[ElementId, ...]:
        return self._elements

    @property
    def leq_pairs(self) -> frozenset[tuple[ElementId, ElementId]]:
        """The reflexive-transitive closure as a set of pairs."""
        return self._leq

    @property
    def covers(self) -> tuple[tuple[ElementId, ElementId], ...]:
        """Cover pairs (lower, upper) sorted by input index."""
        return self._covers

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator[ElementId]:
        return iter(self._elements)

    def __contains__(self, x: object) -> bool:
        return x in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self._elements == other._elements and self._leq == other._leq

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Poset(elements={list(self._elements)}, covers={list(self._covers)})"

    def require(self, x: ElementId) -> None:
        """Raise UnknownElement unless ``x`` belongs to the poset."""
        if x not in self._index:
            raise UnknownElement(x)

    def index(self, x: ElementId) -> int:
        self.require(x)
        return self._index[x]

    def leq(self, x: ElementId, y: ElementId) -> bool:
        return (x, y) in self._leq

    def lt(self, x: ElementId, y: ElementId) -> bool:
        return x != y and (x, y) in self._leq

    def comparable(self, x: ElementId, y: ElementId) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def strictly_below(self, x: ElementId) -> tuple[ElementId, ...]:
        """Strict predecessors of ``x`` in input order."""
        self.require(x)
        return self._below[x]

    def down_set(self, x: ElementId) -> tuple[ElementId, ...]:
        """Elements ``<= x`` in input order."""
        below = set(self.strictly_below(x)) | {x}
        return tuple(y for y in self._elements if y in below)

    def minimal_elements(self) -> tuple[ElementId, ...]:
        return tuple(x for x in self._elements if not self._below[x])

    def topological_order(self) -> tuple[ElementId, ...]:
        """A linear extension; among available elements input order wins."""
        return self._topo

    def is_total(self) -> bool:
        return all(
            self.comparable(x, y)
            for i, x in enumerate(self._elements)
            for y in self._elements[i + 1 :]
        )

    def to_graph(self) -> nx.DiGraph:
        """The Hasse diagram as a networkx graph."""
        graph = nx.DiGraph()
        graph.add_nodes_from(self._elements)
        graph.add_edges_from(self._covers)
        return graph


def poset_from_relations(
    elements: Sequence[ElementId],
    pairs: Iterable[tuple[ElementId, ElementId]] = (),
) -> Poset:
    """Build a poset from any generating relation.

    Args:
        elements: Element ids; their order is kept as the tie-break order.
        pairs: Pairs ``(x, y)`` meaning ``x <= y``. Reflexive pairs are allowed.

    Raises:
        InputError: On empty or duplicate ids.
        UnknownElement: When a pair references an id not in ``elements``.
        CycleDetected: When the closure is not antisymmetric.
    """
    elements = tuple(elements)
    seen: set[str] = set()
    for x in elements:
        if not isinstance(x, str) or not x:
            raise InputError(f"Element ids must be non-empty strings, got {x!r}")
        if x in seen:
            raise InputError(f"Duplicate element id: {x!r}")
        seen.add(x)

    graph = nx.DiGraph()
    graph.add_nodes_from(elements)
    for x, y in pairs:
        for z in (x, y):
            if z not in seen:
                raise UnknownElement(z)
        if x != y:
            graph.add_edge(x, y)

    if not nx.is_directed_acyclic_graph(graph):
        cycle = nx.find_cycle(graph)
        raise CycleDetected([u for u, _ in cycle])

    index = {x: i for i, x in enumerate(elements)}
    closure = nx.transitive_closure_dag(graph)
    leq = frozenset(closure.edges()) | frozenset((x, x) for x in elements)
    reduction = nx.transitive_reduction(graph)
    covers = tuple(sorted(reduction.edges(), key=lambda e: (index[e[0]], index[e[1]])))
    below = {
        x: tuple(sorted(closure.predecessors(x), key=index.__getitem__)) for x in elements
    }
    topo = tuple(nx.lexicographical_topological_sort(graph, key=index.__getitem__))
    return Poset(elements, leq, covers, below, topo)


def poset_from_json(data: Mapping[str, Any]) -> Poset:
    """Read ``{"elements": [...], "relations": [[lower, upper], ...]}``."""
    spec = PosetSpec.model_validate(data)
    return poset_from_relations(spec.elements, spec.relations)


def poset_to_json(p: Poset) -> dict[str, Any]:
    """Serialize with the cover relation as ``relations``."""
    return PosetSpec(elements=list(p.elements), relations=list(p.covers)).model_dump()


def poset_to_dot(
    p: Poset,
    labels: Optional[Mapping[ElementId, str]] = None,
    name: str = "hasse",
) -> str:
    """Hasse diagram in DOT, one edge per cover from lower to upper element."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for x in p.elements:
        label = (labels or {}).get(x, x)
        lines.append(f'  "{x}" [label="{label}"];')
    for x, y in p.covers:
        lines.append(f'  "{x}" -> "{y}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ===== CHAINS =====


@dataclass(frozen=True)
class Chain:
    """A chain of a poset, members stored ascending."""

    members: tuple[ElementId, ...] = ()

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[ElementId]:
        return iter(self.members)

    def __contains__(self, x: object) -> bool:
        return x in self.members

    @property
    def maximum(self) -> Optional[ElementId]:
        return self.members[-1] if self.members else None

    @property
    def minimum(self) -> Optional[ElementId]:
        return self.members[0] if self.members else None


def make_chain(p: Poset, members: Iterable[ElementId]) -> Chain:
    """Sort ``members`` ascending in ``p`` and check they form a chain."""
    members = list(members)
    for x in members:
        p.require(x)
    if len(set(members)) != len(members):
        raise NotAChain(f"Repeated members in {members}")
    ordered = sorted(members, key=p.topological_order().index)
    for x, y in zip(ordered, ordered[1:]):
        if not p.lt(x, y):
            raise NotAChain(f"{x!r} and {y!r} are incomparable")
    return Chain(tuple(ordered))


def check_chain(p: Poset, chain: Chain) -> None:
    """Raise NotAChain unless ``chain`` is a strictly ascending chain of ``p``."""
    for x in chain.members:
        p.require(x)
    for x, y in zip(chain.members, chain.members[1:]):
        if not p.lt(x, y):
            raise NotAChain(f"{list(chain.members)} is not strictly ascending in the poset")


def enumerate_chains_ending_at(p: Poset, x: ElementId) -> frozenset[Chain]:
    """All chains of ``p`` whose maximum is ``x``."""
    p.require(x)
    return frozenset(_chains_ending_at(p, x))


@functools.lru_cache(maxsize=4096)
def _chains_ending_at(p: Poset, x: ElementId) -> tuple[Chain, ...]:
    # each chain ending at x is {x} or a chain ending at some y < x, plus x
    result = [Chain((x,))]
    for y in p.strictly_below(x):
        result.extend(Chain(c.members + (x,)) for c in _chains_ending_at(p, y))
    return tuple(result)


def enumerate_chains(p: Poset) -> frozenset[Chain]:
    """All chains of ``p``, the empty chain included."""
    chains = {Chain()}
    for x in p.elements:
        chains.update(_chains_ending_at(p, x))
    return frozenset(chains)


def strip_max(chain: Chain) -> Chain:
    """The chain without its maximum; the empty chain stays empty."""
    return Chain(chain.members[:-1])


def lex_compare(x_chain: Chain, y_chain: Chain, p: Poset) -> CompareResult:
    """Compare two chains of ``p`` in the lexicographic order.

    Raises:
        NotAChain: If either argument is not an ascending chain of ``p``.
    """
    check_chain(p, x_chain)
    check_chain(p, y_chain)
    x_set, y_set = set(x_chain.members), set(y_chain.members)
    if x_set == y_set:
        return CompareResult.EQUAL
    x_only = [m for m in x_chain.members if m not in y_set]
    y_only = [m for m in y_chain.members if m not in x_set]
    # min of the empty difference is the virtual top
    if not x_only:
        return CompareResult.LESS_THAN
    if not y_only:
        return CompareResult.GREATER_THAN
    min_x, min_y = x_only[0], y_only[0]
    if p.lt(min_y, min_x):
        return CompareResult.LESS_THAN
    if p.lt(min_x, min_y):
        return CompareResult.GREATER_THAN
    return CompareResult.INCOMPARABLE


def dyadic_encode(chain: Union[Chain, Iterable[Any]]) -> Fraction:
    """Map a chain of positive integers X to the sum of 2^(-x) over X."""
    members = chain.members if isinstance(chain, Chain) else tuple(chain)
    total = Fraction(0)
    for m in members:
        try:
            k = int(m)
        except (TypeError, ValueError) as exc:
            raise NonPositiveMember(f"Member {m!r} is not an integer") from exc
        if k <= 0 or str(k) != str(m).strip():
            raise NonPositiveMember(f"Member {m!r} is not a positive integer")
        total += Fraction(1, 2**k)
    return total


# ===== CHAIN VALUES =====


def scalar(x: Union[int, str, Fraction]) -> Fraction:
    """Exact rational from an int, a Fraction or a string such as ``"3/2"``."""
    if isinstance(x, bool) or isinstance(x, float):
        raise NotARational(f"Scalars must be exact rationals, got {x!r}")
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise NotARational(f"Not a rational: {x!r}") from exc


def value_depth(v: ChainValue) -> int:
    """0 for scalars, 1 + depth of the entries for chains (empty chain: 1)."""
    depth = 0
    while isinstance(v, tuple):
        depth += 1
        if not v:
            break
        v = v[0]
    return depth


def compare_values(v: ChainValue, w: ChainValue) -> CompareResult:
    """Compare chain values of equal depth.

    Scalars compare as rationals and chains by the lexicographic rule applied
    to their ascending entries. The empty chain lies below every chain.

    Raises:
        DepthMismatch: If the depths differ.
    """
    v_chain, w_chain = isinstance(v, tuple), isinstance(w, tuple)
    if not v_chain and not w_chain:
        if v < w:
            return CompareResult.LESS_THAN
        if v > w:
            return CompareResult.GREATER_THAN
        return CompareResult.EQUAL
    if v_chain != w_chain:
        raise DepthMismatch(f"Cannot compare {v!r} with {w!r}")
    if not v or not w:
        if not v and not w:
            return CompareResult.EQUAL
        return CompareResult.LESS_THAN if not v else CompareResult.GREATER_THAN
    if value_depth(v) != value_depth(w):
        raise DepthMismatch(f"Depth {value_depth(v)} vs {value_depth(w)}")
    for a, b in zip(v, w):
        result = compare_values(a, b)
        if result is CompareResult.EQUAL:
            continue
        # the chain holding the smaller entry at the first difference is greater
        return result.flip()
    if len(v) == len(w):
        return CompareResult.EQUAL
    return CompareResult.LESS_THAN if len(v) < len(w) else CompareResult.GREATER_THAN


def value_key(v: ChainValue) -> Any:
    """Sort key for chain values."""
    return _ValueKey(v)


@functools.total_ordering
class _ValueKey:
    __slots__ = ("value",)

    def __init__(self, value: ChainValue):
        self.value = value

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, _ValueKey):
            return NotImplemented
        return compare_values(self.value, other.value) is CompareResult.EQUAL

    def __lt__(self, other: _ValueKey) -> bool:
        return compare_values(self.value, other.value) is CompareResult.LESS_THAN


def sort_values(values: Iterable[ChainValue]) -> list[ChainValue]:
    """Values in ascending order."""
    return sorted(values, key=value_key)


def max_value(values: Iterable[ChainValue], default: ChainValue = EMPTY_CHAIN) -> ChainValue:
    """Maximum of a collection of values, ``default`` when it is empty."""
    best: Optional[ChainValue] = None
    for v in values:
        if best is None or compare_values(best, v) is CompareResult.LESS_THAN:
            best = v
    return default if best is None else best


def chain_value(entries: Iterable[Any]) -> tuple[ChainValue, ...]:
    """Build a chain value from distinct entries of one depth, sorted ascending.

    Raises:
        NotAChain: If two entries are equal.
        DepthMismatch: If the entries have different depths.
    """
    normalized = [e if isinstance(e, tuple) else scalar(e) for e in entries]
    depths = {value_depth(e) for e in normalized if e != ()}
    if len(depths) > 1:
        raise DepthMismatch(f"Entries of mixed depth {sorted(depths)}")
    ordered = sort_values(normalized)
    for a, b in zip(ordered, ordered[1:]):
        if compare_values(a, b) is CompareResult.EQUAL:
            raise NotAChain(f"Repeated value {value_to_json(a)!r}")
    return tuple(ordered)


def value_to_json(v: ChainValue) -> Any:
    """Rationals become strings, chains become nested lists."""
    if isinstance(v, tuple):
        return [value_to_json(e) for e in v]
    return str(v)


def value_from_json(data: Any) -> ChainValue:
    """Inverse of :func:`value_to_json`; integers are accepted as scalars."""
    if isinstance(data, list):
        return chain_value(value_from_json(e) for e in data)
    return scalar(data)


def chain_to_json(chain: Chain) -> list[str]:
    """Members of a chain, in ascending order."""
    return list(chain.members)


def chain_from_json(p: Poset, data: Sequence[str]) -> Chain:
    """Rebuild a chain from its member list; the members must be comparable."""
    return make_chain(p, data)
