"""Free products of free / free-abelian factors and their Bass-Serre trees.

Elements are kept in syllable normal form (alternating nontrivial
syllables from the two factors).  The tree of the free product A * B
has one vertex per coset gA or gB and one edge per group element; a
finite ball around the base edge is materialized by BFS, with factor
elements enumerated up to a generator exponent cap.  Distances inside
the ball are genuine BFS edge counts, which is what makes the ball an
independent oracle for translation-length statements.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .words import Word, _free_reduce


class FreeProductError(ValueError):
    """Invalid syllable data or resource cap exceeded."""


class ResourceCapError(FreeProductError):
    """A configured enumeration cap was exceeded."""


@dataclass(frozen=True)
class Factor:
    """A free or free-abelian factor of finite rank."""

    kind: str  # "free" | "free_abelian"
    rank: int

    def __post_init__(self) -> None:
        if self.kind not in ("free", "free_abelian"):
            raise FreeProductError(f"unknown factor kind {self.kind!r}")
        if self.rank < 1:
            raise FreeProductError("factor rank must be >= 1")

    # Elements are canonical tuples: reduced letter tuples for free
    # factors, integer vectors for free-abelian ones.

    def identity(self):
        return () if self.kind == "free" else (0,) * self.rank

    def is_identity(self, elem) -> bool:
        return elem == self.identity()

    def validate(self, elem) -> None:
        if self.kind == "free":
            for g, s in elem:
                if not 1 <= g <= self.rank or s not in (-1, 1):
                    raise FreeProductError(f"letter {(g, s)} outside factor of rank {self.rank}")
            if tuple(elem) != _free_reduce(elem):
                raise FreeProductError("free-factor element not reduced")
        else:
            if len(elem) != self.rank:
                raise FreeProductError("abelian element has wrong length")

    def multiply(self, a, b):
        if self.kind == "free":
            return _free_reduce(tuple(a) + tuple(b))
        return tuple(x + y for x, y in zip(a, b))

    def invert(self, a):
        if self.kind == "free":
            return tuple((g, -s) for g, s in reversed(a))
        return tuple(-x for x in a)

    def elements(self, cap: int) -> list:
        """Nontrivial elements with letter count / coordinate size <= cap."""
        if self.kind == "free_abelian":
            out = [v for v in product(range(-cap, cap + 1), repeat=self.rank) if any(v)]
            return sorted(out)
        out = []
        frontier: list[tuple] = [()]
        for _ in range(cap):
            nxt = []
            for w in frontier:
                for g in range(1, self.rank + 1):
                    for s in (-1, 1):
                        if w and w[-1] == (g, -s):
                            continue
                        nxt.append(w + ((g, s),))
            out.extend(nxt)
            frontier = nxt
        return sorted(out)


def free_factor_element(w: Word) -> tuple:
    """Use a free-group word as a free-factor element."""
    return w.letters


Syllable = tuple[int, object]  # (factor tag 0 or 1, canonical factor element)


@dataclass(frozen=True)
class FPWord:
    """An element of factors[0] * factors[1] in syllable normal form."""

    factors: tuple[Factor, Factor]
    syllables: tuple[Syllable, ...]

    def __post_init__(self) -> None:
        prev = None
        for tag, elem in self.syllables:
            if tag not in (0, 1):
                raise FreeProductError(f"bad factor tag {tag}")
            if tag == prev:
                raise FreeProductError("adjacent syllables from the same factor")
            if self.factors[tag].is_identity(elem):
                raise FreeProductError("identity syllable in normal form")
            self.factors[tag].validate(elem)
            prev = tag

    @property
    def syllable_length(self) -> int:
        return len(self.syllables)

    @property
    def is_identity(self) -> bool:
        return not self.syllables

    def __mul__(self, other: "FPWord") -> "FPWord":
        if self.factors != other.factors:
            raise FreeProductError("mismatched factor data")
        return normal_form(self.factors, self.syllables + other.syllables)

    def inverse(self) -> "FPWord":
        inv = tuple((t, self.factors[t].invert(e)) for t, e in reversed(self.syllables))
        return FPWord(self.factors, inv)

    def __pow__(self, n: int) -> "FPWord":
        if n < 0:
            return self.inverse() ** (-n)
        result = FPWord(self.factors, ())
        for _ in range(n):
            result = result * self
        return result

    def conjugate_by(self, h: "FPWord") -> "FPWord":
        return h * self * h.inverse()


def fp_identity(factors: tuple[Factor, Factor]) -> FPWord:
    return FPWord(factors, ())


def normal_form(factors: tuple[Factor, Factor], raw: Sequence[Syllable]) -> FPWord:
    """Merge same-factor neighbours and drop identity syllables."""
    stack: list[Syllable] = []
    for tag, elem in raw:
        if tag not in (0, 1):
            raise FreeProductError(f"bad factor tag {tag}")
        factors[tag].validate(elem)
        if factors[tag].is_identity(elem):
            continue
        while stack and stack[-1][0] == tag:
            merged = factors[tag].multiply(stack.pop()[1], elem)
            if factors[tag].is_identity(merged):
                elem = None
                break
            elem = merged
        if elem is not None:
            stack.append((tag, elem))
    return FPWord(factors, tuple(stack))


def cyclic_normal_form(g: FPWord) -> FPWord:
    """A shortest element in the conjugacy class reachable by cyclic moves."""
    syl = list(g.syllables)
    while len(syl) >= 2 and syl[0][0] == syl[-1][0]:
        tag = syl[0][0]
        merged = g.factors[tag].multiply(syl[-1][1], syl[0][1])
        middle = syl[1:-1]
        if g.factors[tag].is_identity(merged):
            syl = middle
        else:
            syl = [(tag, merged)] + middle
    return FPWord(g.factors, tuple(syl))


def is_elliptic(g: FPWord) -> bool:
    """True iff g is conjugate into one of the factors (fixes a tree vertex)."""
    return cyclic_normal_form(g).syllable_length <= 1


def hyperbolic_length(g: FPWord) -> int:
    """Translation length on the Bass-Serre tree: 0 for elliptic elements,
    otherwise the syllable count of the cyclic normal form."""
    core = cyclic_normal_form(g)
    return 0 if core.syllable_length <= 1 else core.syllable_length


# ---------------------------------------------------------------------------
# Tree balls

A_SIDE = 0  # vertices gA; canonical rep ends with a B-syllable (or is empty)
B_SIDE = 1  # vertices gB; canonical rep ends with an A-syllable (or is empty)

_VertexKey = tuple[int, tuple[int, ...]]  # (side, element-index sequence)


class TreeBall:
    """A radius-R ball around the base edge (v, w) of the Bass-Serre tree.

    Vertices are cosets gA / gB, keyed by the element-index sequence of
    their shortest coset representative.  The ball of a tree is a tree,
    so edges are exactly the BFS parent links plus the base edge.
    """

    def __init__(self, factors: tuple[Factor, Factor], radius: int, cap: int,
                 max_vertices: int = 5_000_000):
        if radius < 1:
            raise FreeProductError("radius must be >= 1")
        if cap < 1:
            raise FreeProductError("exponent cap must be >= 1")
        self.factors = factors
        self.radius = radius
        self.cap = cap
        self.elements = (factors[0].elements(cap), factors[1].elements(cap))
        self.element_index = (
            {e: i for i, e in enumerate(self.elements[0])},
            {e: i for i, e in enumerate(self.elements[1])},
        )
        self._ids: dict[_VertexKey, int] = {}
        self._keys: list[_VertexKey] = []
        self._depth: list[int] = []
        self._parent: list[int] = []
        self._build(max_vertices)
        self._children: list[list[int]] | None = None
        self._dist_cache: dict[int, list[int]] = {}

    # -- construction -------------------------------------------------------

    def _intern(self, key: _VertexKey, depth: int, parent: int) -> int:
        vid = len(self._keys)
        self._ids[key] = vid
        self._keys.append(key)
        self._depth.append(depth)
        self._parent.append(parent)
        return vid

    def _neighbor_keys(self, key: _VertexKey) -> Iterator[_VertexKey]:
        side, idxs = key
        other = 1 - side
        # appending a syllable from this vertex's own factor moves to a
        # new coset of the other side; dropping the trailing syllable
        # (i.e. taking the factor element to be trivial) moves toward
        # the base edge.
        append_side = side  # A-vertex gA: neighbours are g a B
        for i in range(len(self.elements[append_side])):
            yield (other, idxs + (i,))
        yield (other, idxs[:-1])

    def _build(self, max_vertices: int) -> None:
        self.v = self._intern((A_SIDE, ()), 0, -1)
        self.w = self._intern((B_SIDE, ()), 0, -1)
        queue = deque([self.v, self.w])
        while queue:
            vid = queue.popleft()
            depth = self._depth[vid]
            if depth >= self.radius:
                continue
            for key in self._neighbor_keys(self._keys[vid]):
                if key not in self._ids:
                    if len(self._keys) >= max_vertices:
                        raise ResourceCapError(
                            f"tree ball exceeds {max_vertices} vertices; "
                            "lower the radius or exponent cap"
                        )
                    queue.append(self._intern(key, depth + 1, vid))

    # -- basic queries -------------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return len(self._keys)

    @property
    def edge_count(self) -> int:
        # parent links (all vertices except the two roots) + base edge
        return len(self._keys) - 1

    def edges(self) -> Iterator[tuple[int, int]]:
        yield (self.v, self.w)
        for vid, parent in enumerate(self._parent):
            if parent >= 0:
                yield (parent, vid)

    def side(self, vid: int) -> int:
        return self._keys[vid][0]

    def vertex_word(self, vid: int) -> FPWord:
        """The canonical coset representative as an FPWord."""
        side, idxs = self._keys[vid]
        # the rep's final syllable comes from the factor of the opposite
        # side; tags alternate backwards from there
        syls = []
        t = (len(idxs) - side) % 2
        for i in idxs:
            syls.append((t, self.elements[t][i]))
            t = 1 - t
        return FPWord(self.factors, tuple(syls))

    def coset_vertex(self, g: FPWord, side: int) -> int:
        """The vertex g*A (side 0) or g*B (side 1)."""
        if g.factors != self.factors:
            raise FreeProductError("element belongs to a different free product")
        syls = g.syllables
        if syls and syls[-1][0] == side:
            syls = syls[:-1]  # trailing syllable is absorbed by the coset
        for tag, elem in syls:
            if elem not in self.element_index[tag]:
                raise FreeProductError(
                    f"syllable {elem!r} exceeds the exponent cap {self.cap} of this ball"
                )
        key = (side, tuple(self.element_index[tag][elem] for tag, elem in syls))
        if key not in self._ids:
            raise FreeProductError("coset vertex lies outside this ball")
        return self._ids[key]

    # -- distances -----------------------------------------------------------

    def _ensure_children(self) -> None:
        if self._children is None:
            children: list[list[int]] = [[] for _ in self._keys]
            for vid, parent in enumerate(self._parent):
                if parent >= 0:
                    children[parent].append(vid)
            self._children = children

    def distance_map(self, source: int) -> list[int]:
        """BFS distances (edge counts) from a vertex to every ball vertex."""
        if source in self._dist_cache:
            return self._dist_cache[source]
        self._ensure_children()
        assert self._children is not None
        dist = [-1] * len(self._keys)
        dist[source] = 0
        queue = deque([source])
        while queue:
            vid = queue.popleft()
            d = dist[vid] + 1
            neighbors = self._children[vid]
            parent = self._parent[vid]
            extra: tuple[int, ...]
            if parent >= 0:
                extra = (parent,)
            elif vid == self.v:
                extra = (self.w,)
            else:
                extra = (self.v,)
            for nb in list(neighbors) + list(extra):
                if dist[nb] < 0:
                    dist[nb] = d
                    queue.append(nb)
        self._dist_cache[source] = dist
        return dist

    def to_dot(self) -> str:
        """Render the ball as a DOT graph (intended for small balls)."""
        lines = ["graph treeball {"]
        for vid in range(self.vertex_count):
            side = "A" if self.side(vid) == A_SIDE else "B"
            label = str(self.vertex_word(vid).syllables) if vid not in (self.v, self.w) else ("v" if vid == self.v else "w")
            lines.append(f'  n{vid} [label="{side}:{label}"];')
        for x, y in self.edges():
            lines.append(f"  n{x} -- n{y};")
        lines.append("}")
        return "\n".join(lines)


def build_tree_ball(factors: tuple[Factor, Factor], radius: int, cap: int = 2,
                    max_vertices: int = 5_000_000) -> TreeBall:
    """Materialize the ball of the given radius around the base edge."""
    return TreeBall(factors, radius, cap, max_vertices)


def tree_distance(ball: TreeBall, x: int, y: int) -> int:
    """BFS edge count of the geodesic between two ball vertices."""
    if not 0 <= x < ball.vertex_count or not 0 <= y < ball.vertex_count:
        raise FreeProductError("vertex outside ball")
    d = ball.distance_map(x)[y]
    if d < 0:
        raise FreeProductError("vertices not connected inside the ball")
    return d


def hyperbolic_length_bfs(ball: TreeBall, g: FPWord) -> int:
    """Independent oracle: min over ball vertices x of d(x, g.x).

    Only vertices whose translate stays inside the ball participate;
    the ball must be large enough for the minimum to be attained.
    """
    best = None
    for vid in range(ball.vertex_count):
        side = ball.side(vid)
        rep = ball.vertex_word(vid)
        try:
            image = ball.coset_vertex(g * rep, side)
        except FreeProductError:
            continue
        d = tree_distance(ball, vid, image)
        if best is None or d < best:
            best = d
            if best == 0:
                break
    if best is None:
        raise FreeProductError("ball too small to evaluate the length")
    return best
