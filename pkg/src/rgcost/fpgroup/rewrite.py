"""Subgroup presentations and presentation simplification.

Reidemeister-Schreier rewrites a complete coset table into a presentation
of the subgroup on its Schreier generators (one per coset-table edge
outside a breadth-first spanning tree).  Tietze simplification eliminates
generators that occur exactly once in some relator, which is what collapses
those presentations down to useful generator counts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coset import CosetTable, inv_col, letter_to_col
from .presentation import Presentation, Word, cyclic_reduce, free_reduce, invert_word
from .snf import smith_normal_form


@dataclass(frozen=True)
class AbelianInvariants:
    """Abelianization: free rank plus the invariant factors > 1, each
    dividing the next."""

    free_rank: int
    factors: tuple[int, ...]

    def __post_init__(self):
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")

    @property
    def min_generators(self) -> int:
        return self.free_rank + len(self.factors)


def relation_matrix(pres: Presentation) -> list[list[int]]:
    """Exponent-sum matrix, rows = relators, columns = generators."""
    rows = []
    for rel in pres.relators:
        row = [0] * pres.num_generators
        for x in rel:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    return rows


def abelian_invariants(pres: Presentation) -> AbelianInvariants:
    if not pres.relators:
        return AbelianInvariants(free_rank=pres.num_generators, factors=())
    snf = smith_normal_form(relation_matrix(pres))
    return AbelianInvariants(
        free_rank=pres.num_generators - snf.rank,
        factors=tuple(d for d in snf.factors if d > 1),
    )


# ---------------------------------------------------------------------------
# Reidemeister-Schreier


def _spanning_tree(table: CosetTable, policy: str) -> set[tuple[int, int]]:
    """Breadth-first spanning tree of the coset graph, as a set of edge ids.

    An edge id is (coset, generator-column) in the positive direction.  The
    policy picks the column preference order; any policy yields a Schreier
    (prefix-closed) transversal because the search stays breadth-first.
    """
    ncols = 2 * len(table.generators)
    if policy == "forward":
        col_order = list(range(ncols))
    elif policy == "reverse":
        col_order = list(range(ncols - 1, -1, -1))
    else:
        raise ValueError(f"unknown spanning tree policy {policy!r}")
    tree: set[tuple[int, int]] = set()
    seen = {0}
    queue = [0]
    while queue:
        nxt = []
        for a in queue:
            for col in col_order:
                b = table.rows[a][col]
                if b not in seen:
                    seen.add(b)
                    tree.add(_edge_id(table, a, col))
                    nxt.append(b)
        queue = nxt
    return tree


def _edge_id(table: CosetTable, coset: int, col: int) -> tuple[int, int]:
    if col % 2 == 0:
        return (coset, col)
    return (table.rows[coset][col], inv_col(col))


def reidemeister_schreier(pres: Presentation, table: CosetTable,
                          policy: str = "forward") -> Presentation:
    """Presentation of the subgroup a complete coset table describes.

    Generators: one per non-tree edge of the coset graph, named s1, s2,...
    in (coset, generator) order.  Relators: every relator of the ambient
    presentation rewritten from every coset, freely reduced, nonempty.
    """
    tree = _spanning_tree(table, policy)
    gen_index: dict[tuple[int, int], int] = {}
    for coset in range(table.index):
        for g in range(len(table.generators)):
            eid = (coset, 2 * g)
            if eid not in tree:
                gen_index[eid] = len(gen_index) + 1

    def rewrite(start: int, word) -> Word:
        out = []
        coset = start
        for x in word:
            col = letter_to_col(x)
            eid = _edge_id(table, coset, col)
            if eid not in tree:
                out.append(gen_index[eid] if col % 2 == 0 else -gen_index[eid])
            coset = table.rows[coset][col]
        return free_reduce(out)

    relators = []
    for coset in range(table.index):
        for rel in pres.relators:
            w = rewrite(coset, rel)
            if w:
                relators.append(w)
    names = tuple(f"s{i}" for i in range(1, len(gen_index) + 1))
    return Presentation(names, relators)


# ---------------------------------------------------------------------------
# Tietze simplification


def _rotation_key(word: Word) -> Word:
    candidates = []
    for w in (word, invert_word(word)):
        for k in range(len(w)):
            candidates.append(w[k:] + w[:k])
    return min(candidates) if candidates else word


def _substitute(word: Word, gen: int, replacement: Word) -> Word:
    inv_repl = invert_word(replacement)
    out: list[int] = []
    for x in word:
        if x == gen:
            out.extend(replacement)
        elif x == -gen:
            out.extend(inv_repl)
        else:
            out.append(x)
    return free_reduce(out)


def _renumber(word: Word, removed: int) -> Word:
    return tuple(x - 1 if x > removed else (x + 1 if x < -removed else x) for x in word)


def tietze_simplify(pres: Presentation) -> Presentation:
    """Iteratively eliminate generators occurring exactly once in a relator.

    Each pass cyclically reduces relators, drops empties and duplicates (up
    to rotation and inversion), then eliminates through the shortest
    eligible relator.  Deterministic; stops at a fixpoint.
    """
    names = list(pres.generators)
    relators = [cyclic_reduce(r) for r in pres.relators]

    while True:
        relators = [cyclic_reduce(r) for r in relators if cyclic_reduce(r)]
        seen: set[Word] = set()
        deduped = []
        for r in relators:
            key = _rotation_key(r)
            if key not in seen:
                seen.add(key)
                deduped.append(r)
        relators = deduped

        target = None
        for ridx in sorted(range(len(relators)), key=lambda k: (len(relators[k]), k)):
            counts: dict[int, int] = {}
            for x in relators[ridx]:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            once = [g for g, c in counts.items() if c == 1]
            if once:
                target = (ridx, min(once))
                break
        if target is None:
            break

        ridx, gen = target
        rel = relators[ridx]
        pos = next(i for i, x in enumerate(rel) if abs(x) == gen)
        u, v = rel[:pos], rel[pos + 1:]
        if rel[pos] > 0:
            # u g v = 1  =>  g = u^-1 v^-1
            replacement = free_reduce(invert_word(u) + invert_word(v))
        else:
            # u g^-1 v = 1  =>  g = v u
            replacement = free_reduce(v + u)
        del relators[ridx]
        relators = [_substitute(r, gen, replacement) for r in relators]
        relators = [_renumber(r, gen) for r in relators]
        del names[gen - 1]

    return Presentation(tuple(names), relators)


def d_bounds(pres: Presentation) -> tuple[int, int]:
    """Bounds on the minimal number of generators.

    Lower bound: minimal generators of the abelianization (free rank plus
    the number of invariant factors > 1).  Upper bound: generator count
    after Tietze simplification.  Exact d is not computable in general;
    callers get the honest interval.
    """
    inv = abelian_invariants(pres)
    simplified = tietze_simplify(pres)
    return inv.min_generators, simplified.num_generators
