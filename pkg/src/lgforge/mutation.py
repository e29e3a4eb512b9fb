"""Mutations of Laurent polynomials and verification of mutation chains.

A mutation is determined by a primitive weight covector w and a factor
polynomial supported on the hyperplane w = 0; it acts by
x^v -> x^v * a^(w(v)) and is defined exactly when every negative graded
piece is divisible by the corresponding power of the factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from . import period
from .laurent import LaurentError, LaurentPolynomial, laurent_divide


class NotMutableError(LaurentError):
    """The polynomial is not mutable with respect to the given data."""

    def __init__(self, grade: int, message: str | None = None):
        self.grade = grade
        super().__init__(
            message
            or f"graded piece at weight {grade} is not divisible by the factor power"
        )


@dataclass(frozen=True)
class MutationData:
    weight: tuple[int, ...]
    factor: LaurentPolynomial

    def __post_init__(self):
        w = tuple(int(x) for x in self.weight)
        object.__setattr__(self, "weight", w)
        if all(x == 0 for x in w):
            raise LaurentError("mutation weight must be nonzero")
        g = 0
        for x in w:
            g = gcd(g, abs(x))
        if g != 1:
            raise LaurentError(f"mutation weight {w} is not primitive")
        if len(w) != self.factor.rank:
            raise LaurentError("weight length does not match factor rank")
        for exp in self.factor.terms:
            val = sum(a * b for a, b in zip(w, exp))
            if val != 0:
                raise LaurentError(
                    f"factor support {exp} is not on the weight hyperplane (w(v)={val})"
                )


def grade_by_weight(f: LaurentPolynomial, weight) -> dict[int, LaurentPolynomial]:
    """Split f into graded pieces under the weight covector."""
    w = tuple(int(x) for x in weight)
    if all(x == 0 for x in w):
        raise LaurentError("grading weight must be nonzero")
    return f.graded_pieces(w)


def _apply(f: LaurentPolynomial, data: MutationData, sign: int) -> LaurentPolynomial:
    factor = data.factor
    if factor.param_rank == 0 and f.param_rank > 0:
        factor = LaurentPolynomial(f.rank, f.param_rank, dict(factor.terms))
        data = MutationData(data.weight, factor)
    pieces = grade_by_weight(f, data.weight)
    out = LaurentPolynomial.zero(f.rank, f.param_rank)
    for k, piece in pieces.items():
        power = sign * k
        if power >= 0:
            out = out + piece * (data.factor ** power)
        else:
            quotient = laurent_divide(piece, data.factor ** -power)
            if quotient is None:
                raise NotMutableError(k)
            out = out + quotient
    return out


def mutate(f: LaurentPolynomial, data: MutationData) -> LaurentPolynomial:
    """Apply x^v -> x^v a^(w(v)); raises NotMutableError when not Laurent."""
    return _apply(f, data, +1)


def invert_mutation(g: LaurentPolynomial, data: MutationData) -> LaurentPolynomial:
    """Apply x^v -> x^v a^(-w(v)), the inverse field automorphism."""
    return _apply(g, data, -1)


# -- chains ------------------------------------------------------------------


@dataclass(frozen=True)
class MutationStep:
    data: MutationData

    def describe(self) -> str:
        return f"mutation w={list(self.data.weight)} a={self.data.factor.render()}"


@dataclass(frozen=True)
class CoordStep:
    matrix: tuple[tuple[int, ...], ...]

    def describe(self) -> str:
        return f"coords {list(map(list, self.matrix))}"


@dataclass(frozen=True)
class SubstStep:
    assign: tuple[tuple[int, object], ...]  # (parameter index, rational)

    def describe(self) -> str:
        body = ",".join(f"a{i + 1}={v}" for i, v in self.assign)
        return f"subst {body}"


@dataclass(frozen=True)
class MutationChain:
    start: LaurentPolynomial
    steps: tuple = ()


@dataclass
class StepReport:
    index: int
    description: str
    ok: bool
    detail: str = ""


@dataclass
class ChainReport:
    ok: bool
    steps: list[StepReport] = field(default_factory=list)
    final: LaurentPolynomial | None = None
    detail: str = ""


def run_chain(chain: MutationChain, order: int = 10, check_periods: bool = True) -> ChainReport:
    """Execute the chain, checking period preservation across each mutation."""
    report = ChainReport(ok=True)
    current = chain.start
    for index, step in enumerate(chain.steps):
        try:
            if isinstance(step, MutationStep):
                new = mutate(current, step.data)
                detail = ""
                if check_periods and current.param_rank == 0:
                    before = period.period_coefficients(
                        current, order, period.REGULARIZED, fast=True
                    )
                    after = period.period_coefficients(
                        new, order, period.REGULARIZED, fast=True
                    )
                    if before.coefficients != after.coefficients:
                        report.steps.append(
                            StepReport(
                                index,
                                step.describe(),
                                False,
                                "regularized period not preserved",
                            )
                        )
                        report.ok = False
                        report.final = new
                        return report
                    detail = f"period preserved to order {order}"
                report.steps.append(StepReport(index, step.describe(), True, detail))
                current = new
            elif isinstance(step, CoordStep):
                current = current.apply_monomial_map([list(r) for r in step.matrix])
                report.steps.append(StepReport(index, step.describe(), True))
            elif isinstance(step, SubstStep):
                current = current.substitute_parameters(dict(step.assign))
                report.steps.append(StepReport(index, step.describe(), True))
            else:
                raise LaurentError(f"unknown chain step {step!r}")
        except LaurentError as err:
            report.steps.append(StepReport(index, step.describe(), False, str(err)))
            report.ok = False
            report.final = current
            return report
    report.final = current
    return report


def verify_chain(
    chain: MutationChain,
    expected: LaurentPolynomial,
    order: int = 10,
    modulo_constant: bool = False,
) -> ChainReport:
    """Run the chain and compare its end value with the expected polynomial.

    With ``modulo_constant`` the comparison is period equality up to the
    constant-shift relation; otherwise it is exact equality.
    """
    report = run_chain(chain, order=order)
    if not report.ok:
        return report
    final = report.final
    if modulo_constant:
        shift = period.period_equal_up_to_shift(final, expected, order, fast=True)
        if shift is None:
            report.ok = False
            witness = period.first_period_mismatch(final, expected, order, fast=True)
            report.detail = (
                "final value does not match expected up to constant shift"
                + (f" (first mismatch at degree {witness[0]})" if witness else "")
            )
        else:
            report.detail = f"matches expected up to constant shift {shift}"
    else:
        if final != expected:
            report.ok = False
            report.detail = "final value differs from expected polynomial"
        else:
            report.detail = "matches expected exactly"
    return report
