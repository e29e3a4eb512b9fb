"""Periods of Laurent polynomials and identities between them.

The classical period of f has degree-d coefficient c(f^d)/d!, where c(..)
is the constant term; the regularized flavor drops the 1/d!.  All values
are exact rationals (or parameter polynomials for parametrized input).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .laurent import LaurentError, LaurentPolynomial, ParamPoly

CLASSICAL = "classical"
REGULARIZED = "regularized"


@dataclass(frozen=True)
class PeriodSeries:
    order: int
    flavor: str
    param_rank: int
    coefficients: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.flavor not in (CLASSICAL, REGULARIZED):
            raise LaurentError(f"unknown period flavor {self.flavor!r}")

    def regularized(self) -> "PeriodSeries":
        if self.flavor == REGULARIZED:
            return self
        coeffs = tuple(
            c * factorial(d) for d, c in enumerate(self.coefficients)
        )
        return PeriodSeries(self.order, REGULARIZED, self.param_rank, coeffs)

    def classical(self) -> "PeriodSeries":
        if self.flavor == CLASSICAL:
            return self
        coeffs = tuple(
            c * Fraction(1, factorial(d)) for d, c in enumerate(self.coefficients)
        )
        return PeriodSeries(self.order, CLASSICAL, self.param_rank, coeffs)

    def render_list(self) -> list[str]:
        out = []
        for c in self.coefficients:
            if isinstance(c, ParamPoly):
                out.append(c.render(with_parens=False))
            else:
                out.append(str(c))
        return out


def _pruned(g: LaurentPolynomial, hull, remaining: int, zero_inside: bool):
    """Drop terms of g that cannot reach exponent 0 within `remaining` steps."""
    keep = {}
    zero = (0,) * g.rank
    for exp, coeff in g.terms.items():
        if exp == zero:
            keep[exp] = coeff
            continue
        neg = tuple(-e for e in exp)
        if zero_inside:
            if hull.contains_dilated(neg, remaining):
                keep[exp] = coeff
        else:
            if any(hull.contains_dilated(neg, j) for j in range(1, remaining + 1)):
                keep[exp] = coeff
    return LaurentPolynomial(g.rank, g.param_rank, keep)


def period_coefficients(
    f: LaurentPolynomial, order: int, flavor: str = REGULARIZED, fast: bool = False
) -> PeriodSeries:
    """Period series of f to the given order, by incremental powering.

    With ``fast=True`` the running power is restricted to exponent vectors
    that can still return to 0 within the remaining degree budget (a sound
    Newton polytope prune); both modes produce identical series.
    """
    if order < 0:
        raise LaurentError("period order must be nonnegative")
    hull = None
    zero_inside = False
    if fast and not f.is_zero:
        hull = f.newton_polytope().hull
        zero_inside = hull.contains_zero()
    coeffs = [1]
    g = LaurentPolynomial.one(f.rank, f.param_rank)
    for d in range(1, order + 1):
        g = g * f
        if hull is not None:
            g = _pruned(g, hull, order - d, zero_inside)
        coeffs.append(g.constant_term())
    if flavor == CLASSICAL:
        coeffs = [
            c * Fraction(1, factorial(d)) for d, c in enumerate(coeffs)
        ]
    return PeriodSeries(order, flavor, f.param_rank, tuple(coeffs))


def shift_relation_check(f: LaurentPolynomial, a, order: int = 10) -> bool:
    """Check P_{f+a}(t) = e^{at} P_f(t) termwise to the given order."""
    a = Fraction(a)
    shifted = f + LaurentPolynomial.constant(a, f.rank, f.param_rank)
    lhs = period_coefficients(shifted, order, CLASSICAL).coefficients
    base = period_coefficients(f, order, CLASSICAL).coefficients
    for d in range(order + 1):
        rhs = sum(
            (a ** k) * Fraction(1, factorial(k)) * base[d - k] for k in range(d + 1)
        )
        if lhs[d] != rhs:
            return False
    return True


def period_equal_up_to_shift(
    f: LaurentPolynomial, g: LaurentPolynomial, order: int = 10, fast: bool = False
):
    """Shift a with P_g = e^{at} P_f to the given order, or None.

    The only candidate is a = c(g) - c(f); both inputs must be
    unparametrized.
    """
    if f.param_rank or g.param_rank:
        raise LaurentError("period comparison requires unparametrized polynomials")
    a = Fraction(g.constant_term()) - Fraction(f.constant_term())
    pf = period_coefficients(f, order, CLASSICAL, fast=fast).coefficients
    pg = period_coefficients(g, order, CLASSICAL, fast=fast).coefficients
    for d in range(order + 1):
        rhs = sum(
            (a ** k) * Fraction(1, factorial(k)) * pf[d - k] for k in range(d + 1)
        )
        if pg[d] != rhs:
            return None
    return a


def first_period_mismatch(
    f: LaurentPolynomial, g: LaurentPolynomial, order: int = 10, fast: bool = False
):
    """Smallest degree where the shifted periods disagree, with both values."""
    a = Fraction(g.constant_term()) - Fraction(f.constant_term())
    pf = period_coefficients(f, order, CLASSICAL, fast=fast).coefficients
    pg = period_coefficients(g, order, CLASSICAL, fast=fast).coefficients
    for d in range(order + 1):
        rhs = sum(
            (a ** k) * Fraction(1, factorial(k)) * pf[d - k] for k in range(d + 1)
        )
        if pg[d] != rhs:
            return d, rhs * factorial(d), pg[d] * factorial(d)
    return None


def period_distinct(
    f: LaurentPolynomial, g: LaurentPolynomial, order: int = 10, fast: bool = False
) -> bool:
    return period_equal_up_to_shift(f, g, order, fast=fast) is None
