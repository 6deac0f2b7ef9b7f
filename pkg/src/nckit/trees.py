"""Plane trees with no unary vertices, and their noncrossing arrangement counterpart.

Trees are nested tuples: a leaf is the empty tuple, an internal vertex is the
tuple of its children (always at least two).  A tree with n+1 leaves is
"prime" when the root's last child is a leaf.  Prime trees with n+1 leaves
map bijectively onto arrangements: noncrossing forests of binary trees whose
leaves sit on the dots 1..n.  The forward map prunes middle children into
separate components; the inverse re-attaches every component inside the
innermost vertex gap that contains it.

Leaf counts follow the little Schroder numbers, prime counts the large ones.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .ncpart import NoncrossingPartition, enumerate_nc
from .poly import Polynomial, delta, poly_product


class NotPrime(Exception):
    """The map is only defined for trees whose root ends in a leaf."""


class InvalidArrangement(Exception):
    """Component data does not describe a noncrossing forest of binary trees."""


Tree = tuple
LEAF: Tree = ()


# -- basic tree structure ----------------------------------------------------

def n_leaves(t: Tree) -> int:
    if not t:
        return 1
    return sum(n_leaves(c) for c in t)


def internal_count(t: Tree) -> int:
    if not t:
        return 0
    return 1 + sum(internal_count(c) for c in t)


def is_binary(t: Tree) -> bool:
    return not t or (len(t) == 2 and is_binary(t[0]) and is_binary(t[1]))


def _check_tree(t) -> None:
    if not isinstance(t, tuple):
        raise ValueError(f"not a tree node: {t!r}")
    if len(t) == 1:
        raise ValueError("unary vertices are not allowed")
    for c in t:
        _check_tree(c)


def tree_to_json(t: Tree):
    """Leaf encodes as 0, internal vertex as the list of its children."""
    if not t:
        return 0
    return [tree_to_json(c) for c in t]


def tree_from_json(obj) -> Tree:
    if obj == 0:
        return LEAF
    if isinstance(obj, list) and len(obj) >= 2:
        return tuple(tree_from_json(c) for c in obj)
    raise ValueError(f"bad tree encoding: {obj!r}")


# -- enumeration -------------------------------------------------------------

def _compositions(total: int, parts: int) -> Iterator[tuple]:
    # ordered positive compositions of `total` into `parts` parts
    for cuts in combinations(range(1, total), parts - 1):
        prev = 0
        out = []
        for c in cuts:
            out.append(c - prev)
            prev = c
        out.append(total - prev)
        yield tuple(out)


@lru_cache(maxsize=None)
def _trees_with_leaves(m: int) -> tuple:
    if m == 1:
        return (LEAF,)
    out = []
    for d in range(2, m + 1):
        for sizes in _compositions(m, d):
            for kids in product(*(_trees_with_leaves(s) for s in sizes)):
                out.append(tuple(kids))
    out.sort()
    return tuple(out)


def enumerate_schroder(n: int) -> tuple:
    """All no-unary-vertex plane trees with n+1 leaves, in canonical order."""
    if n < 1:
        raise ValueError("need n >= 1")
    return _trees_with_leaves(n + 1)


def is_prime(t: Tree) -> bool:
    """True when the edge to the root's last child ends in a leaf."""
    return bool(t) and t[-1] == LEAF


@lru_cache(maxsize=None)
def enumerate_prime(n: int) -> tuple:
    return tuple(t for t in enumerate_schroder(n) if is_prime(t))


@lru_cache(maxsize=None)
def enumerate_binary(m: int) -> tuple:
    """Full binary trees with m leaves, in canonical order."""
    if m < 1:
        raise ValueError("need m >= 1")
    if m == 1:
        return (LEAF,)
    out = []
    for k in range(1, m):
        for left in enumerate_binary(k):
            for right in enumerate_binary(m - k):
                out.append((left, right))
    out.sort()
    return tuple(out)


# -- the partition of a prime tree ------------------------------------------

def eta(t: Tree) -> NoncrossingPartition:
    """Noncrossing partition read off a prime tree with n+1 leaves.

    Each internal vertex contributes one block: the largest leaf index under
    each of its children except the last.  Leaves are numbered left to right
    from 1.
    """
    if not is_prime(t):
        raise NotPrime("the partition map needs a prime tree")
    n = n_leaves(t) - 1
    blocks: list[tuple] = []
    counter = [0]

    def walk(node: Tree) -> int:
        if not node:
            counter[0] += 1
            return counter[0]
        maxes = [walk(c) for c in node]
        blocks.append(tuple(maxes[:-1]))
        return maxes[-1]

    walk(t)
    blocks.sort()
    return NoncrossingPartition._trusted(blocks, range(1, n + 1))


def weight_tree(t: Tree) -> Polynomial:
    """Product of d_{deg(v)-1} over internal vertices off the leftmost branch."""
    factors = []

    def walk(node: Tree, on_left_branch: bool) -> None:
        if not node:
            return
        if not on_left_branch:
            factors.append(delta(len(node) - 1))
        for i, c in enumerate(node):
            walk(c, on_left_branch and i == 0)

    walk(t, True)
    return poly_product(factors)


# -- arrangements ------------------------------------------------------------

class Arrangement:
    """A noncrossing forest of binary trees with leaves on the dots 1..n.

    Components are (positions, shape) pairs: sorted dot positions carrying the
    leaves of a full binary tree in left-to-right order.
    """

    __slots__ = ("components", "_hash")

    def __init__(self, components: Iterable[tuple]):
        comps = []
        for pos, shape in components:
            pos = tuple(pos)
            if list(pos) != sorted(pos):
                raise InvalidArrangement(f"positions {pos} are not sorted")
            if not is_binary(shape):
                raise InvalidArrangement(f"component shape {shape!r} is not binary")
            if len(pos) != n_leaves(shape):
                raise InvalidArrangement(
                    f"{len(pos)} positions for a shape with {n_leaves(shape)} leaves"
                )
            comps.append((pos, shape))
        comps.sort()
        seen = [x for pos, _ in comps for x in pos]
        n = len(seen)
        if sorted(seen) != list(range(1, n + 1)):
            raise InvalidArrangement("dots must cover 1..n exactly once")
        try:
            NoncrossingPartition([pos for pos, _ in comps])
        except Exception as exc:
            raise InvalidArrangement(f"components cross: {exc}") from exc
        self._init_raw(tuple(comps))

    def _init_raw(self, comps: tuple) -> None:
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "_hash", hash(comps))

    def __setattr__(self, name, value):
        raise AttributeError("Arrangement is immutable")

    @classmethod
    def _trusted(cls, comps: Sequence[tuple]) -> "Arrangement":
        a = object.__new__(cls)
        a._init_raw(tuple(sorted(comps)))
        return a

    @property
    def size(self) -> int:
        return sum(len(pos) for pos, _ in self.components)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Arrangement):
            return NotImplemented
        return self.components == other.components

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(
            f"{''.join(str(p) for p in pos)}:{tree_to_json(shape)}"
            for pos, shape in self.components
        )
        return f"Arrangement({body})"

    def to_json_list(self) -> list:
        return [
            {"positions": list(pos), "tree": tree_to_json(shape)}
            for pos, shape in self.components
        ]


def partition_of(a: Arrangement) -> NoncrossingPartition:
    """The noncrossing partition whose blocks are the component dot sets."""
    return NoncrossingPartition._trusted(
        [pos for pos, _ in a.components], range(1, a.size + 1)
    )


def _component_vertices(pos: tuple, shape: Tree) -> list[tuple]:
    """All internal vertices as (span_min, span_max, gap_lo, gap_hi) tuples."""
    out = []

    def walk(node: Tree, offset: int) -> int:
        # returns the leaf count of the subtree
        if not node:
            return 1
        lcnt = walk(node[0], offset)
        rcnt = walk(node[1], offset + lcnt)
        span_min = pos[offset]
        span_max = pos[offset + lcnt + rcnt - 1]
        gap_lo = pos[offset + lcnt - 1]   # rightmost leaf of the left subtree
        gap_hi = pos[offset + lcnt]       # leftmost leaf of the right subtree
        out.append((span_min, span_max, gap_lo, gap_hi))
        return lcnt + rcnt

    walk(shape, 0)
    return out


def _attachments(a: Arrangement):
    """For each component: the span key of the vertex whose gap holds it, or None.

    A component fits in a vertex gap when its whole dot range lies strictly
    between the gap bounds; the innermost (narrowest) such gap wins.
    """
    gaps = []  # (width, gap_lo, gap_hi, vertex span key)
    for pos, shape in a.components:
        for span_min, span_max, gap_lo, gap_hi in _component_vertices(pos, shape):
            gaps.append((gap_hi - gap_lo, gap_lo, gap_hi, (span_min, span_max)))
    gaps.sort()
    owner = []
    for pos, _ in a.components:
        lo, hi = pos[0], pos[-1]
        key = None
        for _, gap_lo, gap_hi, vertex in gaps:
            if gap_lo < lo and hi < gap_hi:
                key = vertex
                break
        owner.append(key)
    return owner


def cover_counts(a: Arrangement) -> dict:
    """Map from internal vertex span (min dot, max dot) to covered-component count."""
    counts = {
        (span_min, span_max): 0
        for pos, shape in a.components
        for span_min, span_max, _, _ in _component_vertices(pos, shape)
    }
    for key in _attachments(a):
        if key is not None:
            counts[key] += 1
    return counts


def weight_arrangement(a: Arrangement) -> Polynomial:
    """Product of d_{cover(v)+1} over internal vertices off the leftmost branch.

    The leftmost branch consists of the vertices on the path from the root of
    the dot-1 component to dot 1 itself.
    """
    cov = cover_counts(a)
    first_pos, first_shape = a.components[0]
    left_path = set()
    node = first_shape
    while node:
        left_path.add((first_pos[0], first_pos[n_leaves(node) - 1]))
        node = node[0]
    factors = [
        delta(c + 1) for key, c in sorted(cov.items()) if key not in left_path
    ]
    return poly_product(factors)


# -- the bijection with prime trees ------------------------------------------

def phi(t: Tree) -> Arrangement:
    """Prune a prime tree to its arrangement: drop the root, its last leaf and
    every middle edge; middle subtrees become their own components."""
    if not is_prime(t):
        raise NotPrime("only prime trees have an arrangement form")
    components: list[tuple] = []
    counter = [0]

    def walk(node: Tree) -> tuple:
        # returns (positions, binary shape) of the pruned copy of `node`
        if not node:
            counter[0] += 1
            return ((counter[0],), LEAF)
        kids = [walk(c) for c in node]
        for mid in kids[1:-1]:
            components.append(mid)
        (lp, ls), (rp, rs) = kids[0], kids[-1]
        return (lp + rp, (ls, rs))

    for child in t[:-1]:
        components.append(walk(child))
    return Arrangement._trusted(components)


def phi_inv(a: Arrangement) -> Tree:
    """Rebuild the prime tree: re-insert every component as a middle child of
    the vertex whose gap contains it; leftover components hang off a new root,
    followed by one final leaf."""
    owner = _attachments(a)
    children_of: dict[tuple, list[int]] = {}
    top: list[int] = []
    for ci, key in enumerate(owner):
        if key is None:
            top.append(ci)
        else:
            children_of.setdefault(key, []).append(ci)

    def build(ci: int) -> Tree:
        pos, shape = a.components[ci]

        def walk(node: Tree, offset: int) -> tuple:
            if not node:
                return LEAF, 1
            left, lcnt = walk(node[0], offset)
            right, rcnt = walk(node[1], offset + lcnt)
            key = (pos[offset], pos[offset + lcnt + rcnt - 1])
            mids = [build(cj) for cj in children_of.get(key, [])]
            return (left, *mids, right), lcnt + rcnt

        built, _ = walk(shape, 0)
        return built

    # components are sorted by min dot, so the dot-1 component comes first
    return tuple(build(ci) for ci in top) + (LEAF,)


@lru_cache(maxsize=None)
def enumerate_arrangements(n: int) -> tuple:
    """Independent enumeration: one noncrossing partition plus one binary shape
    per block; used to cross-check the prime-tree bijection."""
    out = []
    for p in enumerate_nc(n):
        for shapes in product(*(enumerate_binary(len(b)) for b in p.blocks)):
            out.append(Arrangement._trusted(tuple(zip(p.blocks, shapes))))
    out.sort(key=lambda a: a.components)
    return tuple(out)
