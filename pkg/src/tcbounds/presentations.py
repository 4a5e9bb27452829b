"""Finite group presentations, abelianization, and maps to free groups.

Abelianization goes through the Smith normal form of the relator
exponent matrix, computed over arbitrary-precision integers.  The
result carries generator images in the abelianized group, so claims
like "powers of x survive while powers of y are trivial" are directly
checkable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .words import Word, WordError, exponent_sum, identity, parse_word


class PresentationError(ValueError):
    """Invalid presentation or homomorphism data."""


@dataclass(frozen=True)
class Presentation:
    """A finite presentation: named generators plus relator words."""

    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self) -> None:
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("duplicate generator names")
        for r in self.relators:
            if r.rank != len(self.generators):
                raise PresentationError("relator rank does not match generator count")
            if r.is_identity:
                raise PresentationError("empty relator not allowed")

    @property
    def rank(self) -> int:
        return len(self.generators)

    def generator_index(self, name: str) -> int:
        try:
            return self.generators.index(name) + 1
        except ValueError:
            raise PresentationError(f"unknown generator {name!r}") from None

    def exponent_matrix(self) -> list[list[int]]:
        """Rows indexed by relators, columns by generators."""
        return [[exponent_sum(r, j + 1) for j in range(self.rank)] for r in self.relators]

    @staticmethod
    def from_strings(generators: Sequence[str], relators: Sequence[str]) -> "Presentation":
        gens = tuple(generators)
        rels = tuple(parse_word(r, gens) for r in relators)
        return Presentation(gens, rels)


# ---------------------------------------------------------------------------
# Smith normal form

def _snf_with_left_transform(matrix: Sequence[Sequence[int]]) -> tuple[list[int], list[list[int]]]:
    """Diagonalize an integer matrix by elementary row/column operations.

    Returns (diagonal, U) where diag(d_1, d_2, ...) = U * M * V for
    unimodular U, V (V is not tracked), with d_1 | d_2 | ... and all
    d_i >= 0.  Pivot choice: minimal nonzero absolute value, ties by
    row-major position.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    a = [list(row) for row in matrix]
    u = [[int(i == j) for j in range(m)] for i in range(m)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        for row in a:
            row[dst] += c * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    size = min(m, n)
    k = 0
    while k < size:
        # pivot: minimal nonzero |entry| in the trailing submatrix
        pivot = None
        for i in range(k, m):
            for j in range(k, n):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(k, pivot[0])
        swap_cols(k, pivot[1])
        # clear row and column k; entries may regrow, so iterate
        while True:
            dirty = False
            for i in range(k + 1, m):
                if a[i][k]:
                    q = a[i][k] // a[k][k]
                    add_row(i, k, -q)
                    if a[i][k]:
                        swap_rows(i, k)
                    dirty = True
            for j in range(k + 1, n):
                if a[k][j]:
                    q = a[k][j] // a[k][k]
                    add_col(j, k, -q)
                    if a[k][j]:
                        swap_cols(j, k)
                    dirty = True
            if not dirty:
                break
        if a[k][k] < 0:
            negate_row(k)
        k += 1

    # enforce the divisibility chain d_i | d_{i+1}
    changed = True
    while changed:
        changed = False
        for i in range(size - 1):
            d, e = a[i][i], a[i + 1][i + 1]
            if d and e % d == 0:
                continue
            if d == 0 and e != 0:
                swap_rows(i, i + 1)
                swap_cols(i, i + 1)
                changed = True
                continue
            if d == 0 and e == 0:
                continue
            # fold the pair (d, e) into (gcd, lcm)
            add_col(i, i + 1, 1)
            while True:
                q = a[i + 1][i] // a[i][i] if a[i][i] else 0
                if a[i][i] and a[i + 1][i] % a[i][i] == 0:
                    add_row(i + 1, i, -q)
                    break
                add_row(i + 1, i, -q)
                swap_rows(i, i + 1)
            # clear the off-diagonal entry in row i
            if a[i][i + 1]:
                add_col(i + 1, i, -(a[i][i + 1] // a[i][i]))
            if a[i][i] < 0:
                negate_row(i)
            if a[i + 1][i + 1] < 0:
                negate_row(i + 1)
            changed = True

    diag = [abs(a[i][i]) for i in range(size)]
    return diag, u


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... (with d_i >= 0) of an integer matrix."""
    if not matrix or not matrix[0]:
        return ()
    diag, _ = _snf_with_left_transform(matrix)
    return tuple(diag)


# ---------------------------------------------------------------------------
# Abelianization

@dataclass(frozen=True)
class AbelianInvariants:
    """H_1 of a presented group: free rank, torsion chain, generator images.

    generator_images[i] gives the image of generator i in the canonical
    decomposition Z/t_1 x ... x Z/t_k x Z^free_rank (torsion coordinates
    first, reduced modulo their torsion order).
    """

    free_rank: int
    torsion: tuple[int, ...]
    generator_images: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        for d, e in zip(self.torsion, self.torsion[1:]):
            if e % d:
                raise PresentationError("torsion coefficients must form a divisibility chain")
        if any(d < 2 for d in self.torsion):
            raise PresentationError("torsion coefficients must be >= 2")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def survives(self, i: int) -> bool:
        """True if generator i (1-based) has nonzero image in H_1."""
        return any(self.generator_images[i - 1])

    def dies(self, i: int) -> bool:
        return not self.survives(i)


def abelianization(p: Presentation) -> AbelianInvariants:
    """Abelianize via Smith normal form of the exponent matrix."""
    g = p.rank
    if g == 0:
        return AbelianInvariants(0, (), ())
    # columns of `cols` are the relator vectors: Z^r -> Z^g, coker = H_1
    rows = p.exponent_matrix()
    if not rows:
        images = tuple(tuple(int(i == j) for j in range(g)) for i in range(g))
        return AbelianInvariants(g, (), images)
    cols = [[rows[i][j] for i in range(len(rows))] for j in range(g)]
    diag, u = _snf_with_left_transform(cols)
    d = list(diag) + [0] * (g - len(diag))
    torsion_coords = [j for j in range(g) if d[j] > 1]
    free_coords = [j for j in range(g) if d[j] == 0]
    images = []
    for i in range(g):
        # image of generator e_i in coker(diag) is column i of U
        col = [u[j][i] for j in range(g)]
        images.append(tuple([col[j] % d[j] for j in torsion_coords] + [col[j] for j in free_coords]))
    return AbelianInvariants(
        free_rank=len(free_coords),
        torsion=tuple(d[j] for j in torsion_coords),
        generator_images=tuple(images),
    )


# ---------------------------------------------------------------------------
# Homomorphisms into free groups

@dataclass(frozen=True)
class FreeHom:
    """A homomorphism from a presented group into a free group.

    Well-definedness (every relator mapping to the identity) is checked
    at construction.
    """

    source: Presentation
    target_rank: int
    images: tuple[Word, ...]

    def __post_init__(self) -> None:
        if len(self.images) != self.source.rank:
            raise PresentationError("need one image per source generator")
        for w in self.images:
            if w.rank != self.target_rank:
                raise PresentationError("image rank does not match target rank")
        ok, witness = check_hom(self.source, self.target_rank, self.images)
        if not ok:
            raise PresentationError(f"not a homomorphism: relator {witness} does not map to 1")

    def __call__(self, w: Word) -> Word:
        return apply_images(w, self.target_rank, self.images)


def apply_images(w: Word, target_rank: int, images: Sequence[Word]) -> Word:
    """Substitute generator images into w and freely reduce."""
    result = identity(target_rank)
    for g, s in w.letters:
        img = images[g - 1]
        result = result * (img if s == 1 else img.inverse())
    return result


def apply_hom(h: FreeHom, w: Word) -> Word:
    if w.rank != h.source.rank:
        raise WordError("word is not over the source generators")
    return h(w)


def check_hom(
    source: Presentation, target_rank: int, images: Sequence[Word]
) -> tuple[bool, Word | None]:
    """Check that candidate images kill every relator.

    Returns (True, None) or (False, failing_relator).
    """
    for r in source.relators:
        if not apply_images(r, target_rank, images).is_identity:
            return False, r
    return True, None
