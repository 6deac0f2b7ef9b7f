"""Truncated Laurent series with polynomial coefficients.

A series carries an explicit window [low, order): coefficients are stored for
exponents low <= k < order and are exact there; everything at or above
`order` is unknown.  Every operation propagates the window pessimistically,
so a coefficient you can read is always correct.  Reading at or above the
truncation order raises OutOfTruncationRange instead of guessing.

Window rules (f with window [lf, of), g with [lg, og)):

    add       [min(lf, lg), min(of, og))
    mul       [lf + lg,     min(of + lg, og + lf))
    hadamard  [max(lf, lg), min(of, og))
    recip     [-lf,          of - 2*lf)
    compose   order = min(of * lg, og + (max(lf, 1) - 1) * lg)

Reciprocals and compositional inverses need the leading coefficient to be a
nonzero rational, because those are the only units of the coefficient ring.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .poly import Polynomial, as_polynomial, cumulant, delta, moment


class OutOfTruncationRange(Exception):
    """Requested a coefficient at or above the truncation order."""


class NonUnitLeadingCoefficient(Exception):
    """Inversion needs a nonzero rational leading coefficient."""


class NotInvertible(Exception):
    """The series has no inverse of the requested kind."""


class PositiveValuationRequired(Exception):
    """Composition needs an inner series with valuation >= 1."""


class LaurentSeries:
    """Immutable truncated Laurent series over the polynomial ring."""

    __slots__ = ("low", "order", "coeffs")

    def __init__(self, low: int, coeffs: Sequence, order: int | None = None):
        cs = [_coerce(c) for c in coeffs]
        if order is None:
            order = low + len(cs)
        if len(cs) != order - low:
            raise ValueError(
                f"window [{low}, {order}) needs {order - low} coefficients, got {len(cs)}"
            )
        if order <= low:
            raise ValueError(f"empty window [{low}, {order})")
        # canonical form: strip known-zero leading coefficients, keep the order
        while len(cs) > 1 and cs[0].is_zero:
            cs.pop(0)
            low += 1
        object.__setattr__(self, "low", low)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentSeries is immutable")

    # -- inspection ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        """True when every stored coefficient is zero (the truncated zero series)."""
        return all(c.is_zero for c in self.coeffs)

    def coeff(self, k: int) -> Polynomial:
        if k >= self.order:
            raise OutOfTruncationRange(
                f"coefficient of z^{k} is beyond the truncation order {self.order}"
            )
        if k < self.low:
            return Polynomial.zero()
        return self.coeffs[k - self.low]

    def _at(self, k: int) -> Polynomial:
        # internal: caller guarantees k < self.order
        if k < self.low:
            return Polynomial.zero()
        return self.coeffs[k - self.low]

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self.low == other.low
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    __hash__ = None

    def __repr__(self) -> str:
        body = ", ".join(
            f"z^{k}: {c.render()}" for k, c in enumerate(self.coeffs, start=self.low)
        )
        return f"LaurentSeries[{self.low}, {self.order})({body})"

    def to_json_dict(self) -> dict:
        return {
            "low": self.low,
            "order": self.order,
            "coeffs": [c.render() for c in self.coeffs],
        }

    # -- linear structure ---------------------------------------------------

    def __add__(self, other) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        low = min(self.low, other.low)
        order = min(self.order, other.order)
        return LaurentSeries(
            low, [self._at(k) + other._at(k) for k in range(low, order)], order
        )

    def __sub__(self, other) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self + other.scale(-1)

    def __neg__(self) -> "LaurentSeries":
        return self.scale(-1)

    def scale(self, factor) -> "LaurentSeries":
        """Multiply by an exact scalar or polynomial; the window is unchanged."""
        f = as_polynomial(factor)
        if f is NotImplemented:
            raise TypeError(f"cannot scale by {factor!r}")
        return LaurentSeries(self.low, [c * f for c in self.coeffs], self.order)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by z^k (exact)."""
        return LaurentSeries(self.low + k, self.coeffs, self.order + k)

    def truncate(self, order: int) -> "LaurentSeries":
        """Forget coefficients at or above `order`."""
        if order >= self.order:
            return self
        if order > self.low:
            return LaurentSeries(self.low, self.coeffs[: order - self.low], order)
        return LaurentSeries(order - 1, [Polynomial.zero()], order)

    # -- multiplicative structure -------------------------------------------

    def __mul__(self, other) -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        low = self.low + other.low
        order = min(self.order + other.low, other.order + self.low)
        acc = [Polynomial.zero() for _ in range(order - low)]
        for i, ci in enumerate(self.coeffs, start=self.low):
            if ci.is_zero:
                continue
            for j, cj in enumerate(other.coeffs, start=other.low):
                k = i + j
                if k >= order:
                    break
                if cj.is_zero:
                    continue
                acc[k - low] = acc[k - low] + ci * cj
        return LaurentSeries(low, acc, order)

    __rmul__ = __mul__

    def recip(self) -> "LaurentSeries":
        """Multiplicative inverse; window [-low, order - 2*low)."""
        if self.is_zero:
            raise NotInvertible("cannot invert a series with no visible nonzero term")
        lead = self.coeffs[0].as_rational()
        if lead is None:
            raise NonUnitLeadingCoefficient(
                f"leading coefficient {self.coeffs[0].render()} is not a rational unit"
            )
        c = Fraction(1) / lead
        rel = self.order - self.low
        unit = self.shift(-self.low).scale(c)  # 1 + u with val(u) >= 1, window [0, rel)
        one = constant_series(1, rel)
        u = unit - one
        s = one
        for _ in range(rel - 1):
            s = one - u * s
        return s.scale(c).shift(-self.low)

    def power(self, k: int) -> "LaurentSeries":
        """Integer power; power(f, 0) is 1 on the window [0, order - low)."""
        if not isinstance(k, int):
            raise TypeError("series powers must be integers")
        if k == 0:
            return constant_series(1, self.order - self.low)
        if k < 0:
            return self.recip().power(-k)
        result = self
        for _ in range(k - 1):
            result = result * self
        return result

    __pow__ = power

    def derivative(self) -> "LaurentSeries":
        return LaurentSeries(
            self.low - 1,
            [c * k for k, c in enumerate(self.coeffs, start=self.low)],
            self.order - 1,
        )

    def hadamard(self, other: "LaurentSeries") -> "LaurentSeries":
        """Coefficientwise product; window [max(lows), min(orders))."""
        low = max(self.low, other.low)
        order = min(self.order, other.order)
        if order <= low:
            raise ValueError("hadamard windows do not overlap")
        return LaurentSeries(
            low, [self._at(k) * other._at(k) for k in range(low, order)], order
        )

    # -- composition --------------------------------------------------------

    def compose(self, inner: "LaurentSeries") -> "LaurentSeries":
        if inner.low < 1:
            raise PositiveValuationRequired(
                f"inner series has valuation {inner.low}, need >= 1"
            )
        if self.low < 0:
            raise PositiveValuationRequired(
                f"outer series has valuation {self.low}, need >= 0 to compose"
            )
        k0 = max(self.low, 1)
        target = min(self.order * inner.low, inner.order + (k0 - 1) * inner.low)
        result = zero_series(target)
        pw = None
        for k in range(self.low, self.order):
            c = self.coeffs[k - self.low]
            if k == 0:
                if not c.is_zero:
                    result = result + constant_series(c, target)
                continue
            if pw is None:
                pw = (inner ** k).truncate(target)
            else:
                pw = (pw * inner).truncate(target)
            if not c.is_zero:
                result = result + pw.scale(c)
        return result

    def comp_inverse(self) -> "LaurentSeries":
        """Compositional inverse of a series z*c + O(z^2) with c a nonzero rational."""
        if self.is_zero or self.low != 1:
            raise NotInvertible(
                f"compositional inverse needs valuation exactly 1, got {self.low}"
            )
        lead = self.coeffs[0].as_rational()
        if lead is None:
            raise NonUnitLeadingCoefficient(
                f"linear coefficient {self.coeffs[0].render()} is not a rational unit"
            )
        c = Fraction(1) / lead
        n = self.order
        z = identity_series(n)
        tail = self - z.scale(lead)  # valuation >= 2 after the linear term cancels
        g = z.scale(c)
        for _ in range(n + 1):
            nxt = (z - tail.compose(g)).scale(c)
            if nxt == g:
                return g
            g = nxt
        raise RuntimeError("compositional inverse failed to stabilize")  # unreachable


def _coerce(c) -> Polynomial:
    p = as_polynomial(c)
    if p is NotImplemented:
        raise TypeError(f"series coefficients must be polynomials or rationals, got {c!r}")
    return p


# -- constructors ------------------------------------------------------------

def zero_series(order: int, low: int | None = None) -> LaurentSeries:
    if low is None:
        low = order - 1
    return LaurentSeries(low, [0] * (order - low), order)

def constant_series(value, order: int) -> LaurentSeries:
    if order < 1:
        raise ValueError("a constant needs order >= 1 to be visible")
    return LaurentSeries(0, [value] + [0] * (order - 1), order)

def monomial_series(k: int, value=1, order: int | None = None) -> LaurentSeries:
    if order is None:
        order = k + 1
    if order <= k:
        raise ValueError(f"order {order} does not cover exponent {k}")
    return LaurentSeries(k, [value] + [0] * (order - k - 1), order)

def identity_series(order: int) -> LaurentSeries:
    """The series z, known exactly on [1, order)."""
    return monomial_series(1, 1, order)


_SERIES_KINDS = ("M", "Delta", "C", "F", "B")


def standard_series(kind: str, order: int) -> LaurentSeries:
    """Named generating functions on a window of the given order.

    M     z + M1*z^2 + M2*z^3 + ...
    Delta z + d1*z^2 + d2*z^3 + ...
    C     C1 + C2*z + C3*z^2 + ...
    F     free cumulants of the moment sequence, F1 + F2*z + ..., with each
          F_n expanded as a polynomial in the M variables
    B     boolean cumulants of the moment sequence, likewise in M variables
    """
    if kind not in _SERIES_KINDS:
        raise ValueError(f"unknown series kind {kind!r}; expected one of {_SERIES_KINDS}")
    if kind == "M" or kind == "Delta":
        if order < 2:
            raise ValueError("need order >= 2 to hold the leading z term")
        var = moment if kind == "M" else delta
        return LaurentSeries(
            1, [1] + [var(k - 1) for k in range(2, order)], order
        )
    if kind == "C":
        if order < 1:
            raise ValueError("need order >= 1")
        return LaurentSeries(0, [cumulant(k + 1) for k in range(order)], order)
    if kind == "B":
        m = standard_series("M", order + 2)
        return monomial_series(-1, 1, order) - m.recip()
    # kind == "F": F_n = -1/(n-1) [z^1] M^{-(n-1)} for n >= 2, F_1 = M_1
    m = standard_series("M", order + 2)
    inv = m.recip()
    coeffs: list = [Polynomial.from_variable(moment(1))]
    pw = inv
    for n in range(2, order + 1):
        coeffs.append(pw.coeff(1) * Fraction(-1, n - 1))
        if n <= order - 1:
            pw = pw * inv
    return LaurentSeries(0, coeffs, order)


def lagrange_coeff_inverse(f: LaurentSeries, n: int):
    """Coefficient of z^n in the compositional inverse of f, via residues.

    Uses [z^n] f^{<-1>} = (1/n) [z^{n-1}] (z/f)^n, so only a reciprocal and a
    power of f are needed.  Requires n >= 1 and enough truncation order
    (order > n), else OutOfTruncationRange.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"coefficient index must be a positive integer, got {n!r}")
    if f.is_zero or f.low != 1:
        raise NotInvertible(
            f"compositional inverse needs valuation exactly 1, got {f.low}"
        )
    z_over_f = f.recip().shift(1)
    return (z_over_f ** n).coeff(n - 1) * Fraction(1, n)
