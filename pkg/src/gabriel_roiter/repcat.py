"""Representations of finite acyclic quivers over small prime fields.

The category of finite-dimensional representations of an acyclic quiver is
a length category whose simples are the vertex simples S_v. Everything here is
decided exhaustively: morphism spaces by row reduction over F_p, monomorphisms
and isomorphisms by scanning the morphism space, isomorphism classes by
enumerating the base-change orbits of all matrix tuples of a dimension vector.

Matrix tuples of a dimension vector are numbered in base p, entries taken in
arrow order, each matrix row-major, most significant digit first. The
canonical representative of a class is the tuple with the smallest number.
"""

from __future__ import annotations

import functools
import itertools
import logging
import random
import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Iterator, Mapping, Optional, Sequence

import networkx as nx
import numpy as np
from scipy.linalg import block_diag
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from gabriel_roiter.config import get_settings
from gabriel_roiter.errors import (
    BudgetExceeded,
    CyclicQuiver,
    HomSpaceTooLarge,
    InputError,
    InvalidField,
    QuiverMismatch,
    ZeroRepresentation,
)
from gabriel_roiter.length_functions import LengthFunction, make_length_function
from gabriel_roiter.linalg_fp import (
    column_space,
    gl_order,
    has_full_column_rank,
    inverse,
    is_invertible,
    is_prime,
    matrix_power,
    nullspace,
    primitive_root,
    rank,
)
from gabriel_roiter.order_core import Poset, poset_from_relations, poset_to_dot, scalar
from gabriel_roiter.schemas import IndPosetExport, QuiverSpec

logger = logging.getLogger(__name__)

# ===== QUIVERS AND FIELDS =====


@dataclass(frozen=True)
class Quiver:
    """A finite quiver without oriented cycles; parallel arrows are allowed."""

    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices) or not self.vertices:
            raise InputError(f"Vertex ids must be unique and non-empty: {list(self.vertices)}")
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.vertices)
        for s, t in self.arrows:
            if s not in graph or t not in graph:
                raise InputError(f"Arrow {s}->{t} has an unknown endpoint")
            graph.add_edge(s, t)
        if not nx.is_directed_acyclic_graph(graph):
            raise CyclicQuiver(f"Quiver has an oriented cycle: {nx.find_cycle(graph)}")

    @functools.cached_property
    def arrow_indices(self) -> tuple[tuple[int, int], ...]:
        """Arrows as (source index, target index)."""
        index = {v: i for i, v in enumerate(self.vertices)}
        return tuple((index[s], index[t]) for s, t in self.arrows)

    def vertex_index(self, v: str) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise InputError(f"Unknown vertex {v!r}") from None

    def is_kronecker(self) -> bool:
        """Two vertices joined by two arrows of the same direction."""
        return (
            len(self.vertices) == 2
            and len(self.arrows) == 2
            and self.arrows[0] == self.arrows[1]
        )

    @functools.cached_property
    def path_order(self) -> Optional[tuple[str, ...]]:
        """Vertices along the underlying path when the quiver is of type A, else None."""
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.arrows)
        if graph.number_of_edges() != len(self.arrows) or len(self.arrows) != len(self.vertices) - 1:
            return None
        if not nx.is_connected(graph) or max(d for _, d in graph.degree) > 2:
            return None
        start = next(v for v in self.vertices if graph.degree[v] <= 1)
        return tuple(nx.dfs_preorder_nodes(graph, start))

    def support_connected(self, dims: Sequence[int]) -> bool:
        """Whether the vertices with non-zero dimension span a connected subquiver."""
        support = [v for v, d in zip(self.vertices, dims) if d]
        if not support:
            return False
        graph = nx.Graph()
        graph.add_nodes_from(support)
        graph.add_edges_from((s, t) for s, t in self.arrows if s in graph and t in graph)
        return nx.is_connected(graph)


def make_quiver(vertices: Iterable[str], arrows: Iterable[Sequence[str]] = ()) -> Quiver:
    return Quiver(tuple(str(v) for v in vertices), tuple((str(s), str(t)) for s, t in arrows))


@dataclass(frozen=True)
class FieldSpec:
    """The prime field F_p."""

    p: int = 2

    def __post_init__(self) -> None:
        cap = get_settings().max_prime
        if not is_prime(self.p) or self.p > cap:
            raise InvalidField(f"Characteristic must be a prime <= {cap}, got {self.p}")


# ===== REPRESENTATIONS =====


def _frozen(matrix: np.ndarray) -> np.ndarray:
    matrix.setflags(write=False)
    return matrix


@dataclass(frozen=True, eq=False)
class Representation:
    """Vector spaces F_p^dims[v] with one (dim target x dim source) matrix per arrow."""

    quiver: Quiver
    field: FieldSpec
    dims: tuple[int, ...]
    maps: tuple[np.ndarray, ...] = dataclasses.field(repr=False)

    @functools.cached_property
    def key(self) -> tuple:
        return (self.dims, tuple(tuple(m.ravel().tolist()) for m in self.maps))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Representation):
            return NotImplemented
        return (
            self.quiver == other.quiver and self.field == other.field and self.key == other.key
        )

    def __hash__(self) -> int:
        return hash((self.quiver, self.field, self.key))

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def total_dimension(self) -> int:
        return sum(self.dims)

    @property
    def is_zero(self) -> bool:
        return self.total_dimension == 0


def make_representation(
    q: Quiver,
    f: FieldSpec,
    dims: Sequence[int] | Mapping[str, int],
    maps: Sequence[Any] = (),
) -> Representation:
    """Build a representation, reducing the matrices modulo p.

    Args:
        q: The quiver.
        f: The field.
        dims: Dimension per vertex, as a sequence in vertex order or a mapping.
        maps: One matrix per arrow; missing trailing matrices are zero.
    """
    if isinstance(dims, Mapping):
        dims = [int(dims.get(v, 0)) for v in q.vertices]
    dims = tuple(int(d) for d in dims)
    if len(dims) != len(q.vertices) or any(d < 0 for d in dims):
        raise InputError(f"Bad dimension vector {list(dims)} for {len(q.vertices)} vertices")
    if len(maps) > len(q.arrows):
        raise InputError("More matrices than arrows")
    matrices = []
    for k, (s, t) in enumerate(q.arrow_indices):
        shape = (dims[t], dims[s])
        if k < len(maps) and maps[k] is not None:
            m = np.asarray(maps[k], dtype=np.int64).reshape(shape) % f.p
        else:
            m = np.zeros(shape, dtype=np.int64)
        matrices.append(_frozen(m))
    return Representation(q, f, dims, tuple(matrices))


def zero_representation(q: Quiver, f: FieldSpec) -> Representation:
    return make_representation(q, f, [0] * len(q.vertices))


def simple_representation(q: Quiver, f: FieldSpec, v: str) -> Representation:
    """The simple S_v."""
    dims = [0] * len(q.vertices)
    dims[q.vertex_index(v)] = 1
    return make_representation(q, f, dims)


def direct_sum(*reps: Representation) -> Representation:
    """Block-diagonal direct sum; needs at least one summand."""
    if not reps:
        raise InputError("direct_sum needs at least one summand")
    first = reps[0]
    for r in reps[1:]:
        _check_compatible(first, r)
    dims = tuple(sum(r.dims[i] for r in reps) for i in range(len(first.dims)))
    maps = [
        block_diag(*(r.maps[k] for r in reps)).astype(np.int64)
        for k in range(len(first.quiver.arrows))
    ]
    return make_representation(first.quiver, first.field, dims, maps)


def _check_compatible(a: Representation, b: Representation) -> None:
    if a.quiver != b.quiver or a.field != b.field:
        raise QuiverMismatch("Representations over different quivers or fields")


# ===== MORPHISMS =====


@dataclass(frozen=True, eq=False)
class Morphism:
    """Per-vertex blocks phi_v of shape (dims_B(v), dims_A(v))."""

    source: Representation
    target: Representation
    blocks: tuple[np.ndarray, ...] = dataclasses.field(repr=False)

    def is_injective(self) -> bool:
        return all(has_full_column_rank(b, self.source.p) for b in self.blocks)

    def is_intertwining(self) -> bool:
        p = self.source.p
        for k, (s, t) in enumerate(self.source.quiver.arrow_indices):
            left = self.blocks[t] @ self.source.maps[k]
            right = self.target.maps[k] @ self.blocks[s]
            if np.any((left - right) % p):
                return False
        return True

    def compose(self, other: Morphism) -> Morphism:
        """``self`` after ``other``."""
        p = self.source.p
        blocks = tuple(_frozen((a @ b) % p) for a, b in zip(self.blocks, other.blocks))
        return Morphism(other.source, self.target, blocks)


def _offsets(a: Representation, b: Representation) -> np.ndarray:
    sizes = [bd * ad for ad, bd in zip(a.dims, b.dims)]
    return np.concatenate([[0], np.cumsum(sizes)]).astype(np.int64)


def _morphism_from_vector(a: Representation, b: Representation, vec: np.ndarray) -> Morphism:
    off = _offsets(a, b)
    blocks = tuple(
        _frozen(np.array(vec[off[i] : off[i + 1]], dtype=np.int64).reshape(b.dims[i], a.dims[i]))
        for i in range(len(a.dims))
    )
    return Morphism(a, b, blocks)


@functools.lru_cache(maxsize=8192)
def _hom_basis(a: Representation, b: Representation) -> np.ndarray:
    p = a.p
    off = _offsets(a, b)
    ncols = int(off[-1])
    if ncols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    # phi_t A_k = B_k phi_s, vectorized row-major
    rows = []
    for k, (s, t) in enumerate(a.quiver.arrow_indices):
        nrows = b.dims[t] * a.dims[s]
        if nrows == 0:
            continue
        block = np.zeros((nrows, ncols), dtype=np.int64)
        block[:, off[t] : off[t + 1]] += np.kron(
            np.eye(b.dims[t], dtype=np.int64), a.maps[k].T
        )
        block[:, off[s] : off[s + 1]] -= np.kron(
            b.maps[k], np.eye(a.dims[s], dtype=np.int64)
        )
        rows.append(block % p)
    system = np.vstack(rows) if rows else np.zeros((0, ncols), dtype=np.int64)
    return _frozen(nullspace(system, p))


def hom_space(a: Representation, b: Representation) -> list[Morphism]:
    """A basis of Hom(a, b).

    Raises:
        QuiverMismatch: If the representations live over different quivers or fields.
    """
    _check_compatible(a, b)
    return [_morphism_from_vector(a, b, vec) for vec in _hom_basis(a, b)]


def hom_dimension(a: Representation, b: Representation) -> int:
    _check_compatible(a, b)
    return int(_hom_basis(a, b).shape[0])


def endomorphism_dimension(a: Representation) -> int:
    return hom_dimension(a, a)


def _coefficient_chunks(k: int, p: int, chunk: int = 4096) -> Iterator[np.ndarray]:
    """All coefficient vectors of F_p^k, as arrays of shape (m, k)."""
    total = p**k
    weights = p ** np.arange(k - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        index = np.arange(start, min(start + chunk, total), dtype=np.int64)
        yield (index[:, None] // weights[None, :]) % p


@functools.lru_cache(maxsize=64)
def _nonzero_vectors(c: int, p: int) -> np.ndarray:
    """Non-zero vectors of F_p^c as columns, one per line through the origin."""
    vectors = [
        v
        for v in itertools.product(range(p), repeat=c)
        if any(v) and v[next(i for i, x in enumerate(v) if x)] == 1
    ]
    return np.array(vectors, dtype=np.int64).T.reshape(c, -1)


def _injective_mask(blocks: np.ndarray, p: int) -> np.ndarray:
    """For a batch of (r, c) matrices, whether each has trivial kernel."""
    m, r, c = blocks.shape
    if c == 0:
        return np.ones(m, dtype=bool)
    if r < c:
        return np.zeros(m, dtype=bool)
    if (p**c - 1) // (p - 1) <= 2048:
        vectors = _nonzero_vectors(c, p)
        images = np.matmul(blocks, vectors) % p
        return ~np.all(images == 0, axis=1).any(axis=1)
    return np.array([has_full_column_rank(b, p) for b in blocks], dtype=bool)


def _first_injective(a: Representation, b: Representation, cap: Optional[int]) -> Optional[Morphism]:
    basis = _hom_basis(a, b)
    k = basis.shape[0]
    limit = get_settings().hom_dim_cap if cap is None else cap
    if k > limit:
        raise HomSpaceTooLarge(f"dim Hom = {k} exceeds the cap {limit}")
    if k == 0:
        return None
    p = a.p
    off = _offsets(a, b)
    for coeffs in _coefficient_chunks(k, p):
        elements = (coeffs @ basis) % p
        mask = np.ones(len(elements), dtype=bool)
        for i, (ad, bd) in enumerate(zip(a.dims, b.dims)):
            if ad == 0:
                continue
            blocks = elements[:, off[i] : off[i + 1]].reshape(-1, bd, ad)
            mask &= _injective_mask(blocks, p)
            if not mask.any():
                break
        hits = np.nonzero(mask)[0]
        if hits.size:
            return _morphism_from_vector(a, b, elements[hits[0]])
    return None


def find_mono(a: Representation, b: Representation, cap: Optional[int] = None) -> Optional[Morphism]:
    """A monomorphism a -> b, or None."""
    _check_compatible(a, b)
    if a.is_zero:
        return _morphism_from_vector(a, b, np.zeros(int(_offsets(a, b)[-1]), dtype=np.int64))
    if any(ad > bd for ad, bd in zip(a.dims, b.dims)):
        return None
    return _first_injective(a, b, cap)


def iter_monos(a: Representation, b: Representation, cap: Optional[int] = None) -> Iterator[Morphism]:
    """Every monomorphism a -> b."""
    _check_compatible(a, b)
    if any(ad > bd for ad, bd in zip(a.dims, b.dims)):
        return
    basis = _hom_basis(a, b)
    k = basis.shape[0]
    limit = get_settings().hom_dim_cap if cap is None else cap
    if k > limit:
        raise HomSpaceTooLarge(f"dim Hom = {k} exceeds the cap {limit}")
    p = a.p
    off = _offsets(a, b)
    for coeffs in _coefficient_chunks(k, p):
        elements = (coeffs @ basis) % p if k else np.zeros((1, int(off[-1])), dtype=np.int64)
        mask = np.ones(len(elements), dtype=bool)
        for i, (ad, bd) in enumerate(zip(a.dims, b.dims)):
            if ad:
                mask &= _injective_mask(elements[:, off[i] : off[i + 1]].reshape(-1, bd, ad), p)
        for row in np.nonzero(mask)[0]:
            yield _morphism_from_vector(a, b, elements[row])


def exists_mono(a: Representation, b: Representation, cap: Optional[int] = None) -> bool:
    """Whether some morphism a -> b is injective at every vertex.

    Raises:
        HomSpaceTooLarge: If dim Hom(a, b) exceeds the cap (default 20).
    """
    return find_mono(a, b, cap) is not None


def is_isomorphic(a: Representation, b: Representation, cap: Optional[int] = None) -> bool:
    """Whether Hom(a, b) contains an invertible element."""
    _check_compatible(a, b)
    if a.dims != b.dims:
        return False
    if a.key == b.key or a.is_zero:
        return True
    return _first_injective(a, b, cap) is not None


# ===== DECOMPOSITION =====


def _end_elements(
    a: Representation, seed: Optional[int]
) -> Iterator[tuple[np.ndarray, ...]]:
    """Non-zero endomorphisms, by growing support in the basis."""
    basis = _hom_basis(a, a)
    k = basis.shape[0]
    order = list(range(k))
    if seed is not None:
        random.Random(seed).shuffle(order)
    p = a.p
    off = _offsets(a, a)
    for size in range(1, k + 1):
        for support in itertools.combinations(order, size):
            for coeffs in itertools.product(range(1, p), repeat=size):
                vec = np.zeros(basis.shape[1], dtype=np.int64)
                for c, i in zip(coeffs, support):
                    vec = vec + c * basis[i]
                vec %= p
                yield tuple(
                    vec[off[i] : off[i + 1]].reshape(a.dims[i], a.dims[i])
                    for i in range(len(a.dims))
                )


def _find_splitting(
    a: Representation, seed: Optional[int], budget: Optional[int]
) -> Optional[tuple[np.ndarray, ...]]:
    """A power f^N of an endomorphism that is neither zero nor invertible."""
    limit = get_settings().end_scan_budget if budget is None else budget
    p = a.p
    n = max(a.dims)
    total = p ** endomorphism_dimension(a) - 1
    for scanned, f in enumerate(_end_elements(a, seed), start=1):
        if scanned > limit:
            raise HomSpaceTooLarge(
                f"End scan of {total} elements exceeds the budget {limit} for dims {a.dims}"
            )
        power = tuple(matrix_power(block, n, p) for block in f)
        if not any(block.any() for block in power):
            continue
        if all(is_invertible(block, p) for block in power):
            continue
        return power
    return None


def _split(a: Representation, power: tuple[np.ndarray, ...]) -> tuple[Representation, Representation]:
    p = a.p
    bases = []
    for e in power:
        image = column_space(e, p)
        kernel = nullspace(e, p).T
        t = np.hstack([image, kernel]).astype(np.int64)
        bases.append((image.shape[1], t, inverse(t, p)))
    top_maps, bottom_maps = [], []
    for k, (s, t) in enumerate(a.quiver.arrow_indices):
        rs, ts, _ = bases[s]
        rt, _, tinv = bases[t]
        m = (tinv @ a.maps[k] @ ts) % p
        top_maps.append(m[:rt, :rs])
        bottom_maps.append(m[rt:, rs:])
    top_dims = [r for r, _, _ in bases]
    bottom_dims = [d - r for d, r in zip(a.dims, top_dims)]
    return (
        make_representation(a.quiver, a.field, top_dims, top_maps),
        make_representation(a.quiver, a.field, bottom_dims, bottom_maps),
    )


def is_indecomposable(
    a: Representation, seed: Optional[int] = None, budget: Optional[int] = None
) -> bool:
    """Whether End(a) has no idempotent besides 0 and 1.

    Raises:
        ZeroRepresentation: For the zero representation.
        HomSpaceTooLarge: If the endomorphism scan exceeds its budget.
    """
    if a.is_zero:
        raise ZeroRepresentation("The zero representation is not indecomposable")
    return _find_splitting(a, seed, budget) is None


def decompose(
    a: Representation, seed: Optional[int] = None, budget: Optional[int] = None
) -> list[Representation]:
    """Indecomposable summands, sorted by dimension vector.

    Splits along image and kernel of a Fitting power of an endomorphism that
    is neither nilpotent nor invertible, then recurses.
    """
    if a.is_zero:
        return []
    power = _find_splitting(a, seed, budget)
    if power is None:
        return [a]
    top, bottom = _split(a, power)
    parts = decompose(top, seed, budget) + decompose(bottom, seed, budget)
    return sorted(parts, key=lambda r: r.key)


# ===== LENGTHS =====


@dataclass(frozen=True)
class CategoryLengthFunction:
    """A length function on the category, given by its values on the simples."""

    simple_values: tuple[tuple[str, Fraction], ...]

    def __post_init__(self) -> None:
        for v, value in self.simple_values:
            if value <= 0:
                raise InputError(f"Simple value of {v!r} must be positive, got {value}")

    def value(self, v: str) -> Fraction:
        return dict(self.simple_values)[v]

    def to_json(self) -> dict[str, str]:
        return {v: str(value) for v, value in self.simple_values}


def category_length(q: Quiver, values: Mapping[str, Any]) -> CategoryLengthFunction:
    """Length function from simple values; vertices not listed get 1."""
    for v in values:
        q.vertex_index(v)
    return CategoryLengthFunction(
        tuple((v, scalar(values.get(v, 1))) for v in q.vertices)
    )


def ell1(q: Quiver) -> CategoryLengthFunction:
    """Composition length."""
    return category_length(q, {})


def ell_S(q: Quiver, v: str) -> CategoryLengthFunction:
    """1 on S_v and 2 on every other simple."""
    return category_length(q, {w: 1 if w == v else 2 for w in q.vertices})


def ell_top(q: Quiver, v: str) -> CategoryLengthFunction:
    """2 on S_v and 1 on every other simple."""
    return category_length(q, {w: 2 if w == v else 1 for w in q.vertices})


def random_length(q: Quiver, rng: random.Random) -> CategoryLengthFunction:
    """Random positive rational simple values."""
    return category_length(
        q, {v: Fraction(rng.randint(1, 6), rng.randint(1, 3)) for v in q.vertices}
    )


def module_length(a: Representation, ell: CategoryLengthFunction) -> Fraction:
    """Sum of dims(v) * ell(S_v)."""
    values = dict(ell.simple_values)
    return sum((d * values[v] for v, d in zip(a.quiver.vertices, a.dims)), Fraction(0))


def socle_simples(a: Representation) -> tuple[str, ...]:
    """Vertices v such that S_v embeds into ``a``."""
    if a.is_zero:
        raise ZeroRepresentation("The zero representation has no socle")
    return tuple(
        v
        for v in a.quiver.vertices
        if exists_mono(simple_representation(a.quiver, a.field, v), a)
    )


def socle_dimension(a: Representation) -> int:
    """Total dimension of the socle: vectors killed by every outgoing arrow."""
    total = 0
    for i, d in enumerate(a.dims):
        outgoing = [a.maps[k] for k, (s, _) in enumerate(a.quiver.arrow_indices) if s == i]
        if d == 0:
            continue
        stacked = np.vstack(outgoing) if outgoing else np.zeros((0, d), dtype=np.int64)
        total += d - rank(stacked, a.p)
    return total


# ===== FINITE TYPE =====


def _symmetric_cartan(q: Quiver) -> np.ndarray:
    n = len(q.vertices)
    c = 2 * np.eye(n, dtype=np.int64)
    for s, t in q.arrow_indices:
        c[s, t] -= 1
        c[t, s] -= 1
    return c


def is_finite_type(q: Quiver) -> bool:
    """Whether the Tits form is positive definite."""
    return bool(np.all(np.linalg.eigvalsh(_symmetric_cartan(q).astype(float)) > 1e-9))


def positive_roots(q: Quiver) -> list[tuple[int, ...]]:
    """Positive roots of a finite-type quiver, by reflection closure of the simple roots."""
    if not is_finite_type(q):
        raise InputError("Positive roots are only listed for quivers of finite type")
    c = _symmetric_cartan(q)
    n = len(q.vertices)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        root = np.array(frontier.pop(), dtype=np.int64)
        pairing = c @ root
        for i in range(n):
            image = root.copy()
            image[i] -= pairing[i]
            key = tuple(int(x) for x in image)
            if image.min() >= 0 and image.any() and key not in seen:
                seen.add(key)
                frontier.append(key)
    return sorted(seen, key=lambda r: (sum(r), r))


# ===== ORBIT ENUMERATION =====


@dataclass(frozen=True, eq=False)
class _OrbitTable:
    dims: tuple[int, ...]
    labels: np.ndarray
    representatives: np.ndarray
    sizes: np.ndarray


def _arrow_shapes(q: Quiver, dims: Sequence[int]) -> list[tuple[int, int]]:
    return [(dims[t], dims[s]) for s, t in q.arrow_indices]


def _gl_generators(d: int, p: int) -> list[np.ndarray]:
    if d == 0:
        return []
    gens = []
    g = primitive_root(p)
    if g != 1:
        diag = np.eye(d, dtype=np.int64)
        diag[0, 0] = g
        gens.append(diag)
    for i in range(d):
        for j in range(d):
            if i != j:
                transvection = np.eye(d, dtype=np.int64)
                transvection[i, j] = 1
                gens.append(transvection)
    return gens


def _encode(rep: Representation) -> int:
    p = rep.p
    index = 0
    for m in rep.maps:
        for x in m.ravel().tolist():
            index = index * p + int(x)
    return index


def _decode(q: Quiver, f: FieldSpec, dims: tuple[int, ...], index: int) -> Representation:
    shapes = _arrow_shapes(q, dims)
    entries = sum(r * c for r, c in shapes)
    digits = []
    for _ in range(entries):
        index, digit = divmod(index, f.p)
        digits.append(digit)
    digits.reverse()
    maps, pos = [], 0
    for r, c in shapes:
        maps.append(np.array(digits[pos : pos + r * c], dtype=np.int64).reshape(r, c))
        pos += r * c
    return make_representation(q, f, dims, maps)


@functools.lru_cache(maxsize=128)
def _orbit_table(q: Quiver, p: int, dims: tuple[int, ...], budget: int) -> _OrbitTable:
    shapes = _arrow_shapes(q, dims)
    entries = sum(r * c for r, c in shapes)
    if p**entries > budget:
        raise BudgetExceeded(
            f"{p}^{entries} matrix tuples for dimension vector {list(dims)} exceed the budget {budget}",
            dims,
        )
    count = p**entries
    index = np.arange(count, dtype=np.int64)
    weights = p ** np.arange(entries - 1, -1, -1, dtype=np.int64)
    digits = (index[:, None] // weights[None, :]) % p

    sources, targets = [], []
    for w, d in enumerate(dims):
        incident = [k for k, (s, t) in enumerate(q.arrow_indices) if w in (s, t)]
        if not incident:
            continue
        for g in _gl_generators(d, p):
            g_inv = inverse(g, p)
            image = digits.copy()
            pos = 0
            for k, ((s, t), (r, c)) in enumerate(zip(q.arrow_indices, shapes)):
                size = r * c
                if size and k in incident:
                    block = digits[:, pos : pos + size].reshape(-1, r, c)
                    if t == w:
                        block = np.matmul(g, block) % p
                    if s == w:
                        block = np.matmul(block, g_inv) % p
                    image[:, pos : pos + size] = block.reshape(-1, size)
                pos += size
            sources.append(index)
            targets.append(image @ weights)

    if sources:
        rows = np.concatenate(sources)
        cols = np.concatenate(targets)
        graph = csr_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(count, count))
    else:
        graph = csr_matrix((count, count), dtype=np.int8)
    n_orbits, labels = connected_components(graph, directed=True, connection="weak")
    representatives = np.full(n_orbits, count, dtype=np.int64)
    np.minimum.at(representatives, labels, index)
    sizes = np.bincount(labels, minlength=n_orbits)
    logger.debug("dims %s: %d tuples, %d orbits", list(dims), count, n_orbits)
    return _OrbitTable(dims, labels, representatives, sizes)


def canonical_form(a: Representation, budget: Optional[int] = None) -> Representation:
    """The representative with the smallest tuple number in the isomorphism class.

    Raises:
        BudgetExceeded: If the dimension vector has too many matrix tuples.
    """
    limit = get_settings().orbit_budget if budget is None else budget
    table = _orbit_table(a.quiver, a.p, a.dims, limit)
    orbit = table.labels[_encode(a)]
    return _decode(a.quiver, a.field, a.dims, int(table.representatives[orbit]))


def group_order(q: Quiver, p: int, dims: Sequence[int]) -> int:
    """Order of the base-change group, the product of GL_{dims[v]}(F_p)."""
    order = 1
    for d in dims:
        order *= gl_order(d, p)
    return order


def _local_automorphism_count(aut: int, p: int, e: int) -> bool:
    # End local with residue field F_{p^r} has p^e - p^(e-r) units
    return any(aut == p**e - p ** (e - r) for r in range(1, e + 1))


def _dimension_vectors(n: int, max_len: int) -> Iterator[tuple[int, ...]]:
    for total in range(1, max_len + 1):
        for dims in sorted(
            d for d in itertools.product(range(total + 1), repeat=n) if sum(d) == total
        ):
            yield dims


# ===== IND POSET =====


@dataclass(frozen=True)
class IndClass:
    """An isomorphism class of indecomposables with its canonical representative."""

    label: str
    rep: Representation

    @property
    def dims(self) -> tuple[int, ...]:
        return self.rep.dims

    @property
    def length(self) -> int:
        return self.rep.total_dimension


@dataclass(frozen=True, eq=False)
class IndPoset:
    """Indecomposables of total dimension <= max_len under the subobject relation."""

    quiver: Quiver
    field: FieldSpec
    max_len: int
    classes: tuple[IndClass, ...]
    poset: Poset
    complete: bool

    @functools.cached_property
    def _by_label(self) -> dict[str, IndClass]:
        return {c.label: c for c in self.classes}

    @functools.cached_property
    def _by_key(self) -> dict[tuple, str]:
        return {c.rep.key: c.label for c in self.classes}

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(c.label for c in self.classes)

    def __getitem__(self, label: str) -> IndClass:
        try:
            return self._by_label[label]
        except KeyError:
            raise InputError(f"No class labelled {label!r}") from None

    def rep(self, label: str) -> Representation:
        return self[label].rep

    def class_of(self, a: Representation) -> Optional[str]:
        """Label of the class of ``a``, None when ``a`` is not a listed indecomposable."""
        if self.classes:
            _check_compatible(a, self.classes[0].rep)
        if a.is_zero or a.total_dimension > self.max_len:
            return None
        return self._by_key.get(canonical_form(a).key)

    def is_subobject(self, x: str, y: str) -> bool:
        return self.poset.leq(x, y)

    def length_function(self, ell: CategoryLengthFunction) -> LengthFunction:
        """The poset length function X -> ell(X)."""
        return make_length_function(
            self.poset, {c.label: module_length(c.rep, ell) for c in self.classes}
        )

    def export(self, ell: Optional[CategoryLengthFunction] = None) -> IndPosetExport:
        ell = ell or ell1(self.quiver)
        return IndPosetExport(
            elements=list(self.labels),
            relations=list(self.poset.covers),
            lengths={c.label: str(module_length(c.rep, ell)) for c in self.classes},
            dims={c.label: list(c.dims) for c in self.classes},
            labels={c.label: _describe(self.quiver, c) for c in self.classes},
            p=self.field.p,
            max_len=self.max_len,
            complete=self.complete,
        )

    def to_dot(self) -> str:
        names = {c.label: f"{c.label} {list(c.dims)}" for c in self.classes}
        return poset_to_dot(self.poset, names, name="ind")


def _kronecker_label(rep: Representation) -> Optional[str]:
    s, t = rep.quiver.arrow_indices[0]
    ds, dt = rep.dims[s], rep.dims[t]
    if dt == ds + 1:
        return f"P_{dt}"
    if ds == dt + 1:
        return f"Q_{ds}"
    if ds != dt:
        return None
    p = rep.p
    a_map, b_map = rep.maps
    points = [(0, 1)] + [(1, b) for b in range(p)]
    for a, b in points:
        if rank((b * a_map - a * b_map) % p, p) < ds:
            return f"R_{ds}({a}:{b})"
    return None


def _interval_label(rep: Representation, path: tuple[str, ...]) -> Optional[str]:
    dims = dict(zip(rep.quiver.vertices, rep.dims))
    support = [i for i, v in enumerate(path) if dims[v]]
    if any(dims[path[i]] != 1 for i in support) or support != list(range(support[0], support[-1] + 1)):
        return None
    first, last = path[support[0]], path[support[-1]]
    return f"S_{first}" if first == last else f"M[{first},{last}]"


def _describe(q: Quiver, c: IndClass) -> str:
    """Human-readable kind of a class, for exports."""
    dims = "(" + ",".join(map(str, c.dims)) + ")"
    if q.is_kronecker():
        s, t = q.arrow_indices[0]
        if c.dims[t] > c.dims[s]:
            kind = "preprojective"
        elif c.dims[s] > c.dims[t]:
            kind = "preinjective"
        elif "(" in c.label:
            kind = "regular at " + c.label[c.label.index("(") :]
        else:
            kind = "regular"
    elif c.length == 1:
        kind = "simple"
    elif q.path_order is not None and _interval_label(c.rep, q.path_order) == c.label:
        support = [v for v in q.path_order if c.dims[q.vertex_index(v)]]
        kind = f"interval {support[0]}..{support[-1]}"
    else:
        kind = "indecomposable"
    return f"{kind}, dimension vector {dims}"


def _label_classes(q: Quiver, reps: Sequence[Representation]) -> list[str]:
    labels: list[Optional[str]] = []
    for rep in reps:
        if q.is_kronecker():
            labels.append(_kronecker_label(rep))
        elif q.path_order is not None:
            labels.append(_interval_label(rep, q.path_order))
        elif rep.total_dimension == 1:
            labels.append(f"S_{q.vertices[rep.dims.index(1)]}")
        else:
            labels.append(None)
    # classes without a name are numbered within their dimension vector
    counters: dict[tuple[int, ...], int] = {}
    groups: dict[tuple[int, ...], int] = {}
    for rep, label in zip(reps, labels):
        if label is None:
            groups[rep.dims] = groups.get(rep.dims, 0) + 1
    out = []
    for rep, label in zip(reps, labels):
        if label is not None:
            out.append(label)
            continue
        dims = rep.dims
        if q.is_kronecker():
            base = f"R_{dims[0]}"
        else:
            base = "M" + ("".join(map(str, dims)) if max(dims) < 10 else "_".join(map(str, dims)))
        if groups[dims] == 1 and not q.is_kronecker():
            out.append(base)
        else:
            counters[dims] = counters.get(dims, 0) + 1
            out.append(f"{base}[{counters[dims]}]")
    return out


def enumerate_ind(
    q: Quiver,
    f: FieldSpec,
    max_len: int,
    budget: Optional[int] = None,
) -> IndPoset:
    """All indecomposables of total dimension <= max_len up to isomorphism.

    Raises:
        BudgetExceeded: With the offending dimension vector when a dimension
            vector has too many matrix tuples.
    """
    return _enumerate_ind(q, f, max_len, budget)


@functools.lru_cache(maxsize=32)
def _enumerate_ind(q: Quiver, f: FieldSpec, max_len: int, budget: Optional[int]) -> IndPoset:
    settings = get_settings()
    if max_len < 1 or max_len > settings.max_len_cap:
        raise InputError(f"max_len must lie in 1..{settings.max_len_cap}, got {max_len}")
    limit = settings.orbit_budget if budget is None else budget
    p = f.p
    reps: list[Representation] = []
    for dims in _dimension_vectors(len(q.vertices), max_len):
        if not q.support_connected(dims):
            continue
        table = _orbit_table(q, p, dims, limit)
        order = group_order(q, p, dims)
        for orbit in np.argsort(table.representatives, kind="stable"):
            rep = _decode(q, f, dims, int(table.representatives[orbit]))
            aut = order // int(table.sizes[orbit])
            if _local_automorphism_count(aut, p, endomorphism_dimension(rep)):
                reps.append(rep)
    labels = _label_classes(q, reps)
    classes = tuple(IndClass(label, rep) for label, rep in zip(labels, reps))

    pairs = []
    for x in classes:
        for y in classes:
            if x.length >= y.length or any(a > b for a, b in zip(x.dims, y.dims)):
                continue
            if exists_mono(x.rep, y.rep):
                pairs.append((x.label, y.label))
    poset = poset_from_relations(labels, pairs)

    complete = is_finite_type(q) and all(sum(r) <= max_len for r in positive_roots(q))
    logger.debug("%d indecomposables up to length %d, complete=%s", len(classes), max_len, complete)
    return IndPoset(q, f, max_len, classes, poset, complete)


# ===== JSON =====


def quiver_from_json(
    data: Mapping[str, Any],
) -> tuple[Quiver, FieldSpec, int, CategoryLengthFunction]:
    """Read a quiver file: quiver, field, length bound and simple lengths."""
    spec = QuiverSpec.model_validate(data)
    q = make_quiver(spec.vertices, spec.arrows)
    f = FieldSpec(spec.p)
    ell = category_length(q, spec.simple_lengths or {})
    return q, f, spec.max_len, ell


def quiver_to_json(
    q: Quiver, f: FieldSpec, max_len: int, ell: Optional[CategoryLengthFunction] = None
) -> dict[str, Any]:
    spec = QuiverSpec(
        vertices=list(q.vertices),
        arrows=list(q.arrows),
        p=f.p,
        max_len=max_len,
        simple_lengths=(ell or ell1(q)).to_json(),
    )
    return spec.model_dump(by_alias=True)


def length_function_from_export(data: Mapping[str, Any]) -> LengthFunction:
    """Rebuild the poset length function of a file written by ``IndPoset.export``."""
    export = IndPosetExport.model_validate(data)
    p = poset_from_relations(export.elements, export.relations)
    return make_length_function(p, export.lengths)


def is_export(data: Any) -> bool:
    return isinstance(data, Mapping) and "lengths" in data and "elements" in data
