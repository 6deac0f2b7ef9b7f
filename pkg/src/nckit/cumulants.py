"""Transforms between moment and cumulant sequences, with a weight parameter.

The forward direction expands each moment as a weighted sum of cumulant
products over noncrossing partitions.  Three independent routes invert it:

* ``mobius``   -- back-substitution for the top column of the inverse of the
  weighted incidence matrix on the noncrossing partition lattice;
* ``trees``    -- a signed sum over prime plane trees, each contributing the
  moment product of its partition times its weight;
* ``lagrange`` -- residue extraction from a Laurent-series identity that
  involves a Hadamard product.

All three must produce identical polynomials; the test suite enforces this.
Setting every weight variable to 1 specializes to free cumulants, setting
them all to 0 to boolean cumulants.

The second half of the module is verification apparatus for the matrix
inversion: the signed tree sums ``v_pi``, their zeta-weighted accumulations
``w_rho`` (equal to 1 at the full partition and 0 elsewhere), and the
sign-reversing involution ``psi`` on arrangements that proves the
cancellation, together with the cover/interval-count identity it hinges on.
"""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from functools import lru_cache

from .ncpart import (
    NoncrossingPartition,
    coarsest,
    enumerate_nc,
    iota,
    kreweras_inv,
    leq,
    restrict,
    weight,
    zeta,
    zeta_arc_form,
    zeta_c,
)
from .poly import (
    DELTA,
    Polynomial,
    cumulant,
    delta,
    moment,
    poly_product,
    poly_sum,
)
from .series import (
    LaurentSeries,
    constant_series,
    identity_series,
    monomial_series,
    standard_series,
)
from .trees import (
    Arrangement,
    cover_counts,
    enumerate_arrangements,
    enumerate_prime,
    eta,
    internal_count,
    n_leaves,
    partition_of,
    weight_arrangement,
    weight_tree,
)

__all__ = [
    "CUMULANT_METHODS",
    "DIRECTION_CUMULANTS",
    "DIRECTION_MOMENTS",
    "FLAVOR_BOOLEAN",
    "FLAVOR_DELTA",
    "FLAVOR_FREE",
    "LengthMismatch",
    "METHOD_FIXED_POINT",
    "METHOD_LAGRANGE",
    "METHOD_MOBIUS",
    "METHOD_TREES",
    "METHOD_YOSHIDA",
    "NoConvergenceAtOrder",
    "PreconditionViolated",
    "TransformTable",
    "WeightMatrix",
    "boolean_cumulants",
    "clear_caches",
    "cumulants_from_moments",
    "cumulants_from_moments_lagrange",
    "cumulants_from_moments_mobius",
    "cumulants_from_moments_trees",
    "free_cumulants",
    "moments_from_cumulants",
    "moments_series_fixed_point",
    "mu_column_via_trees",
    "mu_matrix",
    "numeric_convert",
    "product_cumulant",
    "product_moment",
    "psi",
    "specialize_table",
    "v_pi",
    "verify_cover_identity",
    "w_rho",
    "w_rho_via_arrangements",
    "zeta_matrix",
]


class NoConvergenceAtOrder(Exception):
    """The fixed-point iteration hit its defensive bound without stabilizing."""


class LengthMismatch(Exception):
    """Numeric conversion needs one weight value per sequence entry."""


class PreconditionViolated(Exception):
    """The pairing map was called outside its domain."""


DIRECTION_MOMENTS = "moments"
DIRECTION_CUMULANTS = "cumulants"
_DIRECTIONS = (DIRECTION_MOMENTS, DIRECTION_CUMULANTS)

METHOD_YOSHIDA = "yoshida"
METHOD_MOBIUS = "mobius"
METHOD_TREES = "trees"
METHOD_LAGRANGE = "lagrange"
METHOD_FIXED_POINT = "fixed-point"
CUMULANT_METHODS = (METHOD_MOBIUS, METHOD_TREES, METHOD_LAGRANGE)
_METHODS = (METHOD_YOSHIDA,) + CUMULANT_METHODS + (METHOD_FIXED_POINT,)

FLAVOR_DELTA = "delta"
FLAVOR_FREE = "free"
FLAVOR_BOOLEAN = "boolean"
_FLAVORS = (FLAVOR_DELTA, FLAVOR_FREE, FLAVOR_BOOLEAN)

_FLAVOR_VALUES = {FLAVOR_FREE: Fraction(1), FLAVOR_BOOLEAN: Fraction(0)}


# -- tables ------------------------------------------------------------------

class TransformTable:
    """Symbolic expressions of one sequence in terms of the other.

    ``entries[k-1]`` expresses the k-th moment (direction "moments") or the
    k-th cumulant (direction "cumulants"); entry k only involves variable
    indices up to k.
    """

    __slots__ = ("n", "direction", "method", "flavor", "entries")

    def __init__(self, n, direction, method, entries, flavor=FLAVOR_DELTA):
        if direction not in _DIRECTIONS:
            raise ValueError(f"unknown direction {direction!r}")
        if method not in _METHODS:
            raise ValueError(f"unknown method {method!r}")
        if flavor not in _FLAVORS:
            raise ValueError(f"unknown flavor {flavor!r}")
        entries = tuple(entries)
        if len(entries) != n or n < 1:
            raise ValueError(f"expected {n} entries, got {len(entries)}")
        for k, entry in enumerate(entries, start=1):
            bad = [v for v in entry.variables() if v.index > k]
            if bad:
                raise ValueError(
                    f"entry {k} is not triangular: contains {bad[0].symbol()}"
                )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "direction", direction)
        object.__setattr__(self, "method", method)
        object.__setattr__(self, "flavor", flavor)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("TransformTable is immutable")

    def entry(self, k: int) -> Polynomial:
        if not 1 <= k <= self.n:
            raise ValueError(f"entry index {k} outside 1..{self.n}")
        return self.entries[k - 1]

    @property
    def target_symbol(self) -> str:
        return "M" if self.direction == DIRECTION_MOMENTS else "C"

    def __eq__(self, other):
        if not isinstance(other, TransformTable):
            return NotImplemented
        return (
            self.n == other.n
            and self.direction == other.direction
            and self.method == other.method
            and self.flavor == other.flavor
            and self.entries == other.entries
        )

    __hash__ = None

    def __repr__(self) -> str:
        return (
            f"TransformTable(n={self.n}, direction={self.direction!r}, "
            f"method={self.method!r}, flavor={self.flavor!r})"
        )

    def render_text(self) -> str:
        sym = self.target_symbol
        return "\n".join(
            f"{sym}{k} = {entry.render()}"
            for k, entry in enumerate(self.entries, start=1)
        )

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "direction": self.direction,
            "method": self.method,
            "flavor": self.flavor,
            "entries": [
                {"index": k, "polynomial": entry.render()}
                for k, entry in enumerate(self.entries, start=1)
            ],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["index", "polynomial"])
        for k, entry in enumerate(self.entries, start=1):
            writer.writerow([k, entry.render()])
        return buf.getvalue()


class WeightMatrix:
    """Square matrix indexed by noncrossing partitions in a fixed linear order.

    The order refines the lattice order (finer partitions first), so the
    weighted incidence matrix is upper unitriangular and its inverse exists
    over the polynomial ring.
    """

    __slots__ = ("n", "partitions", "rows")

    def __init__(self, n, partitions, rows):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "partitions", tuple(partitions))
        object.__setattr__(self, "rows", tuple(tuple(r) for r in rows))

    def __setattr__(self, name, value):
        raise AttributeError("WeightMatrix is immutable")

    @property
    def size(self) -> int:
        return len(self.partitions)

    def index(self, p: NoncrossingPartition) -> int:
        return self.partitions.index(p)

    def entry(self, p: NoncrossingPartition, q: NoncrossingPartition) -> Polynomial:
        return self.rows[self.index(p)][self.index(q)]

    def __matmul__(self, other: "WeightMatrix") -> "WeightMatrix":
        if self.partitions != other.partitions:
            raise ValueError("matrices are indexed by different partition lists")
        size = self.size
        rows = [
            [
                poly_sum(self.rows[i][k] * other.rows[k][j] for k in range(size))
                for j in range(size)
            ]
            for i in range(size)
        ]
        return WeightMatrix(self.n, self.partitions, rows)

    def is_identity(self) -> bool:
        return all(
            entry == (1 if i == j else 0)
            for i, row in enumerate(self.rows)
            for j, entry in enumerate(row)
        )


@lru_cache(maxsize=None)
def _linear_extension(n: int) -> tuple:
    """All noncrossing partitions, finer before coarser."""
    return tuple(
        sorted(enumerate_nc(n), key=lambda p: (-p.block_count, p.blocks))
    )


@lru_cache(maxsize=None)
def zeta_matrix(n: int) -> WeightMatrix:
    parts = _linear_extension(n)
    rows = [[zeta(p, q) for q in parts] for p in parts]
    return WeightMatrix(n, parts, rows)


@lru_cache(maxsize=None)
def mu_matrix(n: int) -> WeightMatrix:
    """Inverse of the weighted incidence matrix, by back-substitution."""
    z = zeta_matrix(n)
    parts = z.partitions
    size = len(parts)
    rows = [[Polynomial.zero()] * size for _ in range(size)]
    for j in range(size):
        rows[j][j] = Polynomial.one()
        for i in range(j - 1, -1, -1):
            if not leq(parts[i], parts[j]):
                continue
            acc = poly_sum(
                z.rows[i][k] * rows[k][j] for k in range(i + 1, j + 1)
            )
            rows[i][j] = -acc
    return WeightMatrix(n, parts, rows)


# -- forward direction -------------------------------------------------------

def product_moment(p: NoncrossingPartition) -> Polynomial:
    """Product of one moment variable per block, indexed by block size."""
    return poly_product(
        Polynomial.from_variable(moment(len(b))) for b in p.blocks
    )


def product_cumulant(p: NoncrossingPartition) -> Polynomial:
    return poly_product(
        Polynomial.from_variable(cumulant(len(b))) for b in p.blocks
    )


@lru_cache(maxsize=None)
def _moment_entry(k: int) -> Polynomial:
    return poly_sum(weight(p) * product_cumulant(p) for p in enumerate_nc(k))


def moments_from_cumulants(n: int) -> TransformTable:
    """Each moment as the weighted sum of cumulant products over the lattice."""
    if n < 1:
        raise ValueError("need n >= 1")
    return TransformTable(
        n,
        DIRECTION_MOMENTS,
        METHOD_YOSHIDA,
        [_moment_entry(k) for k in range(1, n + 1)],
    )


# -- inverse direction: three routes ----------------------------------------

@lru_cache(maxsize=None)
def _mu_top_column(n: int) -> tuple:
    """Pairs (partition, inverse-matrix entry against the full partition).

    Back-substitution never divides: the diagonal entries are 1.
    """
    parts = _linear_extension(n)
    values: dict[NoncrossingPartition, Polynomial] = {parts[-1]: Polynomial.one()}
    for i in range(len(parts) - 2, -1, -1):
        p = parts[i]
        values[p] = -poly_sum(
            zeta_arc_form(p, q) * values[q]
            for q in parts[i + 1 :]
            if leq(p, q)
        )
    return tuple((p, values[p]) for p in parts)


@lru_cache(maxsize=None)
def _mobius_entry(k: int) -> Polynomial:
    return poly_sum(val * product_moment(p) for p, val in _mu_top_column(k))


@lru_cache(maxsize=None)
def _trees_entry(k: int) -> Polynomial:
    return poly_sum(
        Fraction((-1) ** (internal_count(t) - 1))
        * weight_tree(t)
        * product_moment(eta(t))
        for t in enumerate_prime(k)
    )


@lru_cache(maxsize=None)
def _lagrange_entry(k: int) -> Polynomial:
    if k == 1:
        return Polynomial.from_variable(moment(1))
    n_ord = k + 2
    m = standard_series("M", n_ord)
    d = standard_series("Delta", n_ord)
    main = m.derivative() * m.recip().power(2)
    base = main - monomial_series(-2, 1, main.order)
    ratio = base * m.hadamard(d).recip().power(k - 1)
    return ratio.coeff(-1) * Fraction(1, k - 1)


def cumulants_from_moments_mobius(n: int) -> TransformTable:
    if n < 1:
        raise ValueError("need n >= 1")
    return TransformTable(
        n,
        DIRECTION_CUMULANTS,
        METHOD_MOBIUS,
        [_mobius_entry(k) for k in range(1, n + 1)],
    )


def cumulants_from_moments_trees(n: int) -> TransformTable:
    if n < 1:
        raise ValueError("need n >= 1")
    return TransformTable(
        n,
        DIRECTION_CUMULANTS,
        METHOD_TREES,
        [_trees_entry(k) for k in range(1, n + 1)],
    )


def cumulants_from_moments_lagrange(n: int) -> TransformTable:
    if n < 1:
        raise ValueError("need n >= 1")
    return TransformTable(
        n,
        DIRECTION_CUMULANTS,
        METHOD_LAGRANGE,
        [_lagrange_entry(k) for k in range(1, n + 1)],
    )


_CUMULANT_BUILDERS = {
    METHOD_MOBIUS: cumulants_from_moments_mobius,
    METHOD_TREES: cumulants_from_moments_trees,
    METHOD_LAGRANGE: cumulants_from_moments_lagrange,
}


def cumulants_from_moments(n: int, method: str = METHOD_MOBIUS) -> TransformTable:
    try:
        builder = _CUMULANT_BUILDERS[method]
    except KeyError:
        raise ValueError(
            f"unknown cumulant method {method!r}; expected one of {CUMULANT_METHODS}"
        ) from None
    return builder(n)


def mu_column_via_trees(p: NoncrossingPartition, n: int) -> Polynomial:
    """Signed weighted count of prime trees mapping to the given partition.

    Matches the corresponding inverse-matrix entry against the full partition.
    """
    if p.size != n:
        raise ValueError(f"partition has {p.size} elements, expected {n}")
    sign = Fraction((-1) ** (p.block_count - 1))
    return sign * poly_sum(
        weight_tree(t) for t in enumerate_prime(n) if eta(t) == p
    )


# -- specializations ---------------------------------------------------------

def specialize_table(table: TransformTable, flavor: str) -> TransformTable:
    """Substitute every weight variable: 1 for "free", 0 for "boolean"."""
    if flavor == FLAVOR_DELTA:
        return table
    if flavor not in _FLAVOR_VALUES:
        raise ValueError(f"unknown flavor {flavor!r}")
    value = _FLAVOR_VALUES[flavor]
    entries = []
    for entry in table.entries:
        assignment = {
            v: value for v in entry.variables() if v.family == DELTA
        }
        entries.append(entry.substitute(assignment))
    return TransformTable(table.n, table.direction, table.method, entries, flavor)


def free_cumulants(n: int) -> TransformTable:
    return specialize_table(cumulants_from_moments_mobius(n), FLAVOR_FREE)


def boolean_cumulants(n: int) -> TransformTable:
    return specialize_table(cumulants_from_moments_mobius(n), FLAVOR_BOOLEAN)


# -- series fixed point ------------------------------------------------------

def moments_series_fixed_point(order: int) -> LaurentSeries:
    """The moment series as the fixed point of its defining functional equation.

    Solves f = z / (1 - z * C(f (.) Delta)) by iteration, where (.) is the
    coefficientwise product; each pass gains at least one order, so the
    iteration bound can only trip on an implementation bug.
    """
    if order < 2:
        raise ValueError("need order >= 2 for a visible moment")
    c = standard_series("C", order)
    d = standard_series("Delta", order)
    z = identity_series(order)
    current = z
    for _ in range(order):
        inner = c.compose(current.hadamard(d))
        nxt = (z * (constant_series(1, order) - z * inner).recip()).truncate(order)
        if nxt == current:
            return current
        current = nxt
    raise NoConvergenceAtOrder(f"no fixed point within {order} iterations")


# -- numeric conversion ------------------------------------------------------

def numeric_convert(values, deltas, direction: str) -> list:
    """Evaluate the cached symbolic table at rational inputs.

    ``values`` holds the input sequence: cumulants when asking for direction
    "moments", moments when asking for direction "cumulants".  ``deltas``
    holds one weight value per entry.
    """
    if direction not in _DIRECTIONS:
        raise ValueError(f"unknown direction {direction!r}")
    values = [Fraction(x) for x in values]
    deltas = [Fraction(x) for x in deltas]
    if len(values) != len(deltas):
        raise LengthMismatch(
            f"{len(values)} sequence values but {len(deltas)} weight values"
        )
    n = len(values)
    if n == 0:
        return []
    if direction == DIRECTION_MOMENTS:
        table = moments_from_cumulants(n)
        source = cumulant
    else:
        table = cumulants_from_moments_mobius(n)
        source = moment
    assignment = {source(i): values[i - 1] for i in range(1, n + 1)}
    assignment.update({delta(i): deltas[i - 1] for i in range(1, n + 1)})
    return [table.entry(k).evaluate(assignment) for k in range(1, n + 1)]


# -- cancellation apparatus --------------------------------------------------

def v_pi(p: NoncrossingPartition) -> Polynomial:
    """Candidate inverse-column entry, as a signed sum over prime trees."""
    return mu_column_via_trees(p, p.size)


def w_rho(rho: NoncrossingPartition) -> Polynomial:
    """Weighted accumulation of v_pi above rho: 1 at the top, 0 elsewhere."""
    return poly_sum(
        zeta(rho, p) * v_pi(p)
        for p in enumerate_nc(rho.size)
        if leq(rho, p)
    )


def w_rho_via_arrangements(rho: NoncrossingPartition) -> Polynomial:
    """Same accumulation, rewritten as a signed sum over arrangements."""
    n = rho.size
    dual = kreweras_inv(rho)
    total = Polynomial.zero()
    for a in enumerate_arrangements(n):
        abar = partition_of(a)
        if not leq(abar, dual):
            continue
        sign = Fraction((-1) ** (n - len(a.components)))
        total = total + sign * weight_arrangement(a) * zeta_c(abar, dual)
    return total


def _pairing_context(a: Arrangement, rho: NoncrossingPartition):
    """Validate the pairing preconditions; return (dual partition, base block)."""
    n = rho.size
    if a.size != n:
        raise PreconditionViolated(
            f"arrangement on {a.size} dots against a partition of {n}"
        )
    if rho == coarsest(n):
        raise PreconditionViolated("the full partition admits no pairing")
    dual = kreweras_inv(rho)
    if not leq(partition_of(a), dual):
        raise PreconditionViolated(
            "arrangement partition is not below the dual of rho"
        )
    base = next(b for b in dual.blocks if len(b) >= 2)
    return dual, base


def psi(a: Arrangement, rho: NoncrossingPartition) -> Arrangement:
    """Sign-reversing pairing on arrangements below the dual of rho.

    Acts at the base block: the first block of the dual partition with at
    least two elements.  If its endpoints share a component, the component's
    root is removed (split); otherwise their two components are merged under
    a new root.  Involutive, fixed-point free, and weight-compatible.
    """
    _, base = _pairing_context(a, rho)
    lo, hi = base[0], base[-1]
    comps = list(a.components)
    part = partition_of(a)
    if part.block_of(lo) == part.block_of(hi):
        i = next(idx for idx, (pos, _) in enumerate(comps) if lo in pos)
        pos, shape = comps.pop(i)
        cut = n_leaves(shape[0])
        comps.append((pos[:cut], shape[0]))
        comps.append((pos[cut:], shape[1]))
    else:
        i = next(idx for idx, (pos, _) in enumerate(comps) if lo in pos)
        j = next(idx for idx, (pos, _) in enumerate(comps) if hi in pos)
        pos_i, shape_i = comps[i]
        pos_j, shape_j = comps[j]
        for idx in sorted((i, j), reverse=True):
            comps.pop(idx)
        comps.append((pos_i + pos_j, (shape_i, shape_j)))
    return Arrangement(comps)


def verify_cover_identity(a: Arrangement, rho: NoncrossingPartition) -> bool:
    """Check that the split at the base block trades one cover-degree factor
    of the arrangement weight for one interval-count factor of the dual zeta.

    Only defined in the split case; when the base block contains dot 1 both
    weights are untouched and the identity holds vacuously.
    """
    _, base = _pairing_context(a, rho)
    lo, hi = base[0], base[-1]
    part = partition_of(a)
    if part.block_of(lo) != part.block_of(hi):
        raise PreconditionViolated("cover identity concerns the split case only")
    if 1 in base:
        return True
    pos, _ = next(c for c in a.components if lo in c[0])
    cov = cover_counts(a)[(pos[0], pos[-1])]
    hull = range(base[0], base[-1] + 1)
    split_restricted = restrict(partition_of(psi(a, rho)), hull)
    return cov + 1 == iota(split_restricted) - 1


# -- cache control ------------------------------------------------------------

def clear_caches() -> None:
    """Drop every memoized table and enumeration (for timing measurements)."""
    from . import ncpart, trees

    _linear_extension.cache_clear()
    zeta_matrix.cache_clear()
    mu_matrix.cache_clear()
    _moment_entry.cache_clear()
    _mu_top_column.cache_clear()
    _mobius_entry.cache_clear()
    _trees_entry.cache_clear()
    _lagrange_entry.cache_clear()
    ncpart.enumerate_nc.cache_clear()
    ncpart.enumerate_interval.cache_clear()
    trees._trees_with_leaves.cache_clear()
    trees.enumerate_prime.cache_clear()
    trees.enumerate_binary.cache_clear()
    trees.enumerate_arrangements.cache_clear()
