"""Simplicial complexes, boundary matrices and discrete geodesic filters.

Vertices are stored under a dense internal numbering that follows the
ascending order of the original vertex ids, so comparing internal indices
is the same as comparing ids.  Higher simplices are indexed per dimension
in the order they are first encountered; that order is the tie-breaker
used by every downstream computation.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, pairwise

from .errors import EmptyInput, InputError, SealedCenter
from .z2 import SparseZ2Matrix, bits_to_indices, indices_to_bits


class _Infinity:
    """Filter value of unreachable and sealed simplices.

    Orders above every int and refuses arithmetic, so an accidental
    ``r - 1`` on an infinite radius fails loudly.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())

    def __hash__(self):
        return hash("homolocal.INF")

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def _no_arithmetic(self, *args):
        raise TypeError("arithmetic on INF is not allowed")

    __add__ = __radd__ = __sub__ = __rsub__ = _no_arithmetic
    __mul__ = __rmul__ = __neg__ = __floordiv__ = __truediv__ = _no_arithmetic


INF = _Infinity()


def is_finite(value) -> bool:
    return value is not INF


@dataclass(frozen=True)
class Simplex:
    vertices: tuple[int, ...]

    def __post_init__(self):
        vs = self.vertices
        if not vs:
            raise ValueError("a simplex needs at least one vertex")
        if any(v < 0 for v in vs):
            raise ValueError(f"negative vertex id in {vs}")
        if any(a >= b for a, b in pairwise(vs)):
            raise ValueError(f"vertices must be strictly increasing: {vs}")

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def faces(self) -> Iterable[Simplex]:
        """Every nonempty face, the simplex itself included."""
        for k in range(1, len(self.vertices) + 1):
            for face in combinations(self.vertices, k):
                yield Simplex(face)


class SimplicialComplex:
    """Immutable face-closed set of simplices.

    ``simplices[d][i]`` is the sorted tuple of internal vertex indices of the
    i-th d-simplex, ``sealed[d][i]`` marks simplices added by sealing and
    ``labels[v]`` is the original id of internal vertex ``v``.
    """

    def __init__(self, simplices, sealed, labels):
        self.simplices: list[list[tuple[int, ...]]] = simplices
        self.sealed: list[list[bool]] = sealed
        self.labels: list[int] = labels
        self._index = [{s: i for i, s in enumerate(level)} for level in simplices]
        self._vertex_of_label = {lab: v for v, lab in enumerate(labels)}

    # -- sizes and lookup -------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def n(self, d: int) -> int:
        if d < 0 or d > self.dim:
            return 0
        return len(self.simplices[d])

    def __len__(self) -> int:
        return sum(len(level) for level in self.simplices)

    @property
    def n_vertices(self) -> int:
        return len(self.simplices[0])

    def index(self, vertices: Sequence[int]) -> int:
        """Index of the simplex with these internal vertices (sorted)."""
        key = tuple(vertices)
        return self._index[len(key) - 1][key]

    def contains(self, vertices: Sequence[int]) -> bool:
        key = tuple(vertices)
        d = len(key) - 1
        return 0 <= d <= self.dim and key in self._index[d]

    def vertex(self, label: int) -> int:
        """Internal index of an original vertex id."""
        try:
            return self._vertex_of_label[label]
        except KeyError:
            raise InputError(f"unknown vertex id {label}") from None

    def simplex_labels(self, d: int, i: int) -> list[int]:
        return [self.labels[v] for v in self.simplices[d][i]]

    def is_sealed_vertex(self, v: int) -> bool:
        return self.sealed[0][v]

    @cached_property
    def original_vertices(self) -> list[int]:
        return [v for v in range(self.n_vertices) if not self.sealed[0][v]]

    @cached_property
    def offsets(self) -> list[int]:
        """Start of each dimension in the global simplex numbering."""
        out, acc = [], 0
        for level in self.simplices:
            out.append(acc)
            acc += len(level)
        return out

    def global_id(self, d: int, i: int) -> int:
        return self.offsets[d] + i

    def split_global(self, g: int) -> tuple[int, int]:
        for d in range(self.dim, -1, -1):
            if g >= self.offsets[d]:
                return d, g - self.offsets[d]
        raise IndexError(g)

    # -- incidence --------------------------------------------------------
    def facets(self, d: int) -> list[list[int]]:
        """Sorted facet indices of every d-simplex (d >= 1)."""
        return self._facets[d]

    @cached_property
    def _facets(self):
        table = [[]]
        for d in range(1, self.dim + 1):
            lower = self._index[d - 1]
            rows = []
            for s in self.simplices[d]:
                rows.append(sorted(lower[s[:k] + s[k + 1:]] for k in range(d + 1)))
            table.append(rows)
        return table

    @cached_property
    def adjacency(self) -> list[list[int]]:
        """Neighbours through non-sealed edges, ascending."""
        adj: list[list[int]] = [[] for _ in range(self.n_vertices)]
        if self.dim >= 1:
            for (a, b), sealed in zip(self.simplices[1], self.sealed[1]):
                if not sealed:
                    adj[a].append(b)
                    adj[b].append(a)
        for nbrs in adj:
            nbrs.sort()
        return adj

    @cached_property
    def components(self) -> list[list[int]]:
        """Connected components of the non-sealed 1-skeleton.

        Only original vertices are listed; each component is sorted and the
        list is ordered by smallest member.
        """
        seen = [False] * self.n_vertices
        out = []
        for root in self.original_vertices:
            if seen[root]:
                continue
            seen[root] = True
            comp, queue = [root], deque([root])
            while queue:
                u = queue.popleft()
                for w in self.adjacency[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            out.append(sorted(comp))
        return out

    def maximal_simplices(self, unsealed_only: bool = False) -> list[tuple[int, ...]]:
        """Simplices that are not a facet of anything, by dimension then index.

        With ``unsealed_only`` sealed simplices are ignored entirely.
        """
        covered = [set() for _ in self.simplices]
        for d in range(1, self.dim + 1):
            for i, facets in enumerate(self.facets(d)):
                if not (unsealed_only and self.sealed[d][i]):
                    covered[d - 1].update(facets)
        return [
            s
            for d, level in enumerate(self.simplices)
            for i, s in enumerate(level)
            if i not in covered[d] and not (unsealed_only and self.sealed[d][i])
        ]

    # -- derivation ---------------------------------------------------------
    def extended(self, n_new_vertices: int, cofaces: Iterable[tuple[int, ...]], *, sealed: bool):
        """Copy with extra vertices and the closure of ``cofaces`` appended.

        New vertices get ids above the current maximum; ``cofaces`` use
        internal indices and may reference the new vertices.
        """
        simplices = [list(level) for level in self.simplices]
        flags = [list(level) for level in self.sealed]
        index = [dict(level) for level in self._index]
        labels = list(self.labels)
        next_label = max(labels, default=-1) + 1
        for _ in range(n_new_vertices):
            v = len(simplices[0])
            simplices[0].append((v,))
            flags[0].append(sealed)
            index[0][(v,)] = v
            labels.append(next_label)
            next_label += 1
        for top in cofaces:
            _add_closure(tuple(sorted(top)), simplices, flags, index, sealed)
        return SimplicialComplex(simplices, flags, labels)

    def __repr__(self):
        counts = ", ".join(str(len(level)) for level in self.simplices)
        return f"SimplicialComplex(dim={self.dim}, counts=[{counts}])"


def _add_closure(top, simplices, flags, index, sealed):
    for k in range(1, len(top) + 1):
        d = k - 1
        while len(simplices) <= d:
            simplices.append([])
            flags.append([])
            index.append({})
        for face in combinations(top, k):
            if face not in index[d]:
                index[d][face] = len(simplices[d])
                simplices[d].append(face)
                flags[d].append(sealed)


def build_complex(maximal_simplices: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Face closure of the given simplices, deduplicated."""
    tops = []
    for raw in maximal_simplices:
        vs = [int(v) for v in raw]
        if not vs:
            raise InputError("empty simplex in input")
        if any(v < 0 for v in vs):
            raise InputError(f"negative vertex id in {raw}")
        if len(set(vs)) != len(vs):
            raise InputError(f"repeated vertex in simplex {raw}")
        tops.append(vs)
    if not tops:
        raise EmptyInput("no simplices given")

    labels = sorted({v for top in tops for v in top})
    vertex_of = {lab: i for i, lab in enumerate(labels)}
    simplices = [[(i,) for i in range(len(labels))]]
    flags = [[False] * len(labels)]
    index = [{(i,): i for i in range(len(labels))}]
    for top in tops:
        _add_closure(tuple(sorted(vertex_of[v] for v in top)), simplices, flags, index, False)
    return SimplicialComplex(simplices, flags, labels)


def boundary_matrix(K: SimplicialComplex, d: int) -> SparseZ2Matrix:
    """Z2 boundary matrix: rows are (d-1)-simplices, columns d-simplices."""
    if d < 1 or d > K.dim + 1:
        raise ValueError(f"boundary dimension {d} outside 1..{K.dim + 1}")
    if d > K.dim:
        return SparseZ2Matrix(K.n(d - 1), 0, [])
    return SparseZ2Matrix(K.n(d - 1), K.n(d), [list(f) for f in K.facets(d)], check=False)


@dataclass(frozen=True)
class FilterAssignment:
    source_vertex: int
    vertex_values: list
    simplex_values: list  # per dimension

    def value(self, d: int, i: int):
        return self.simplex_values[d][i]


@dataclass(frozen=True)
class BallSpec:
    center: int
    radius: int

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be non-negative")


def bfs_distances(K: SimplicialComplex, p: int) -> list:
    """Hop distances from ``p`` over non-sealed edges; INF where unreachable."""
    dist = [INF] * K.n_vertices
    dist[p] = 0
    queue = deque([p])
    adj = K.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if dist[w] is INF:
                dist[w] = du
                queue.append(w)
    return dist


def geodesic_filter(K: SimplicialComplex, p: int) -> FilterAssignment:
    if not 0 <= p < K.n_vertices:
        raise InputError(f"vertex {p} not in complex")
    if K.sealed[0][p]:
        raise SealedCenter(f"vertex {K.labels[p]} is a sealing cone apex")
    vv = bfs_distances(K, p)
    values = [list(vv)]
    for d in range(1, K.dim + 1):
        level = []
        for s, sealed in zip(K.simplices[d], K.sealed[d]):
            if sealed:
                level.append(INF)
                continue
            m = vv[s[0]]
            for v in s[1:]:
                x = vv[v]
                if x is INF or (m is not INF and x > m):
                    m = x
            level.append(m)
        values.append(level)
    return FilterAssignment(p, vv, values)


def geodesic_ball(K: SimplicialComplex, f: FilterAssignment, r) -> list[list[bool]]:
    """Membership mask of the ball ``{s : f(s) <= r}`` minus sealed simplices."""
    if r is not INF and r < 0:
        raise ValueError("radius must be non-negative")
    mask = []
    for values, sealed in zip(f.simplex_values, K.sealed):
        if r is INF:
            mask.append([not s for s in sealed])
        else:
            mask.append([(v is not INF and v <= r) and not s for v, s in zip(values, sealed)])
    return mask


def ball(K: SimplicialComplex, spec: BallSpec) -> list[list[bool]]:
    return geodesic_ball(K, geodesic_filter(K, spec.center), spec.radius)


def betti(K: SimplicialComplex, d: int) -> int:
    """Z2 Betti number from boundary ranks."""
    from .z2 import rank_dense

    if d < 0 or d > K.dim:
        return 0
    rank_d = rank_dense(boundary_matrix(K, d)) if d >= 1 else 0
    rank_up = rank_dense(boundary_matrix(K, d + 1))
    return K.n(d) - rank_d - rank_up


@dataclass(frozen=True)
class Chain:
    """Z2 chain: the sorted indices of its d-simplices."""

    dim: int
    simplices: tuple[int, ...]

    @classmethod
    def from_bits(cls, dim: int, bits: int) -> Chain:
        return cls(dim, tuple(bits_to_indices(bits)))

    @property
    def bits(self) -> int:
        return indices_to_bits(self.simplices)

    def __len__(self) -> int:
        return len(self.simplices)

    def __add__(self, other: Chain) -> Chain:
        if other.dim != self.dim:
            raise ValueError("chains of different dimension")
        return Chain.from_bits(self.dim, self.bits ^ other.bits)

    def vertices(self, K: SimplicialComplex) -> set[int]:
        return {v for i in self.simplices for v in K.simplices[self.dim][i]}


def boundary_bits(K: SimplicialComplex, chain: Chain) -> int:
    if chain.dim == 0:
        return 0
    facets = K.facets(chain.dim)
    acc = 0
    for i in chain.simplices:
        for j in facets[i]:
            acc ^= 1 << j
    return acc


def is_cycle(K: SimplicialComplex, chain: Chain) -> bool:
    return boundary_bits(K, chain) == 0
