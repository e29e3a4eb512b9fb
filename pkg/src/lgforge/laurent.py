"""Exact multivariate Laurent polynomials over the rationals.

A polynomial is a finite map from integer exponent vectors (tuples of
length ``rank``) to nonzero coefficients.  Coefficients are exact: plain
``int``/``Fraction`` values or, for parametrized polynomials, ``ParamPoly``
values (polynomials in formal parameters ``a1..ar`` with rational
coefficients).  Values are immutable after construction and safe to share
between threads.

Canonical form: no stored coefficient is zero, rationals are in lowest
terms (integral rationals are stored as ``int``), and a ``ParamPoly`` that
is actually constant collapses to its scalar.  Two polynomials are equal
iff their canonical term maps are equal.
"""

from __future__ import annotations

from fractions import Fraction

from . import geometry, intlinalg

Exponent = tuple[int, ...]

_VAR_NAMES = ("x", "y", "z", "w")


class LaurentError(ValueError):
    """Base error for invalid Laurent polynomial operations."""


def _norm_scalar(value):
    """Canonical scalar: Fraction in lowest terms, as int when integral."""
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    raise TypeError(f"not an exact rational: {value!r}")


def grlex_key(exponent: Exponent):
    """Sort key for graded-lexicographic descending order."""
    return (-sum(exponent), tuple(-e for e in exponent))


class ParamPoly:
    """Polynomial in the formal parameters with exact rational coefficients.

    Exponents are tuples of length ``rank``; negative parameter exponents
    are permitted (a few models invert a parameter), but substituting 0 for
    such a parameter is an error.
    """

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: dict):
        self.rank = rank
        self.terms = terms

    @staticmethod
    def of(rank: int, terms: dict):
        """Canonicalize: drop zeros, collapse constants to scalars."""
        clean = {}
        for exp, coeff in terms.items():
            coeff = _norm_scalar(coeff)
            if coeff != 0:
                clean[tuple(exp)] = coeff
        if not clean:
            return 0
        if len(clean) == 1:
            (exp, coeff), = clean.items()
            if all(e == 0 for e in exp):
                return coeff
        return ParamPoly(rank, clean)

    @staticmethod
    def parameter(rank: int, index: int):
        exp = [0] * rank
        exp[index] = 1
        return ParamPoly(rank, {tuple(exp): 1})

    @staticmethod
    def coerce(rank: int, value):
        """View a scalar or ParamPoly as a term map at the given rank."""
        if isinstance(value, ParamPoly):
            return value.terms
        value = _norm_scalar(value)
        return {(0,) * rank: value} if value != 0 else {}

    def __add__(self, other):
        if isinstance(other, ParamPoly) and other.rank != self.rank:
            raise LaurentError("parameter rank mismatch")
        out = dict(self.terms)
        for exp, coeff in ParamPoly.coerce(self.rank, other).items():
            new = out.get(exp, 0) + coeff
            if new == 0:
                out.pop(exp, None)
            else:
                out[exp] = new
        return ParamPoly.of(self.rank, out)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly(self.rank, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, ParamPoly) else -_norm_scalar(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ParamPoly):
            if other.rank != self.rank:
                raise LaurentError("parameter rank mismatch")
            out: dict = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    new = out.get(e, 0) + c1 * c2
                    if new == 0:
                        out.pop(e, None)
                    else:
                        out[e] = new
            return ParamPoly.of(self.rank, out)
        other = _norm_scalar(other)
        if other == 0:
            return 0
        return ParamPoly(self.rank, {e: _norm_scalar(c * other) for e, c in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Fraction(_norm_scalar(other))
        if other == 0:
            raise ZeroDivisionError("division of parameter polynomial by zero")
        return self * (1 / other)

    def __eq__(self, other):
        if isinstance(other, ParamPoly):
            return self.rank == other.rank and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return False  # canonical constants are scalars, never ParamPoly
        return NotImplemented

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def monomial_quotient(self, other: "ParamPoly"):
        """Divide by a single-term ParamPoly; negative exponents allowed."""
        if len(other.terms) != 1:
            raise LaurentError("parameter denominator is not a monomial")
        (dexp, dcoeff), = other.terms.items()
        out = {
            tuple(a - b for a, b in zip(e, dexp)): _norm_scalar(Fraction(c) / dcoeff)
            for e, c in self.terms.items()
        }
        return ParamPoly.of(self.rank, out)

    def substitute(self, values: dict[int, Fraction], new_rank: int, index_map: dict[int, int]):
        """Assign rational values to a subset of parameters, reindex the rest."""
        out: dict = {}
        for exp, coeff in self.terms.items():
            factor = Fraction(1)
            new_exp = [0] * new_rank
            ok = True
            for i, e in enumerate(exp):
                if i in values:
                    val = values[i]
                    if e < 0 and val == 0:
                        raise LaurentError(
                            f"parameter a{i + 1} appears with negative exponent; cannot set it to 0"
                        )
                    if e != 0:
                        if val == 0:
                            ok = False
                            break
                        factor *= Fraction(val) ** e
                else:
                    new_exp[index_map[i]] = e
            if not ok:
                continue
            key = tuple(new_exp)
            new = out.get(key, 0) + coeff * factor
            if new == 0:
                out.pop(key, None)
            else:
                out[key] = new
        return ParamPoly.of(new_rank, out)

    def render(self, with_parens: bool = True) -> str:
        items = sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]))
        parts = []
        for exp, coeff in items:
            factors = [
                f"a{i + 1}" if e == 1 else f"a{i + 1}^{e}"
                for i, e in enumerate(exp)
                if e != 0
            ]
            text = _scalar_term_text(coeff, "*".join(factors))
            parts.append(text)
        body = parts[0] + "".join(
            p if p.startswith("-") else "+" + p for p in parts[1:]
        )
        if with_parens and (len(items) > 1 or body.startswith("-")):
            return "(" + body + ")"
        return body

    def __str__(self):
        return self.render(with_parens=False)

    def __repr__(self):
        return f"ParamPoly({self})"


def _scalar_term_text(coeff, monomial: str) -> str:
    """Join a rational coefficient with a monomial string ('' for none)."""
    if not monomial:
        return str(coeff)
    if coeff == 1:
        return monomial
    if coeff == -1:
        return "-" + monomial
    return f"{coeff}*{monomial}"


def _coeff_is_zero(c) -> bool:
    return c == 0 if not isinstance(c, ParamPoly) else not c.terms


class LaurentPolynomial:
    __slots__ = ("rank", "param_rank", "terms")

    def __init__(self, rank: int, param_rank: int, terms: dict):
        # trusted constructor: terms must already be canonical
        self.rank = rank
        self.param_rank = param_rank
        self.terms = terms

    # -- construction ---------------------------------------------------

    @staticmethod
    def from_terms(rank: int, param_rank: int, terms: dict) -> "LaurentPolynomial":
        clean = {}
        for exp, coeff in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != rank:
                raise LaurentError(
                    f"exponent {exp} has length {len(exp)}, expected rank {rank}"
                )
            if not isinstance(coeff, ParamPoly):
                coeff = _norm_scalar(coeff)
            if not _coeff_is_zero(coeff):
                clean[exp] = coeff
        return LaurentPolynomial(rank, param_rank, clean)

    @staticmethod
    def zero(rank: int, param_rank: int = 0) -> "LaurentPolynomial":
        return LaurentPolynomial(rank, param_rank, {})

    @staticmethod
    def constant(value, rank: int, param_rank: int = 0) -> "LaurentPolynomial":
        return LaurentPolynomial.from_terms(rank, param_rank, {(0,) * rank: value})

    @staticmethod
    def one(rank: int, param_rank: int = 0) -> "LaurentPolynomial":
        return LaurentPolynomial.constant(1, rank, param_rank)

    @staticmethod
    def variable(index: int, rank: int, param_rank: int = 0) -> "LaurentPolynomial":
        exp = [0] * rank
        exp[index] = 1
        return LaurentPolynomial(rank, param_rank, {tuple(exp): 1})

    @staticmethod
    def monomial(exponent, coefficient, rank: int, param_rank: int = 0) -> "LaurentPolynomial":
        return LaurentPolynomial.from_terms(rank, param_rank, {tuple(exponent): coefficient})

    # -- basic queries ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list[Exponent]:
        return sorted(self.terms, key=grlex_key)

    def constant_term(self):
        return self.terms.get((0,) * self.rank, 0)

    def coefficient(self, exponent):
        return self.terms.get(tuple(exponent), 0)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return (
            self.rank == other.rank
            and self.param_rank == other.param_rank
            and self.terms == other.terms
        )

    def __hash__(self):
        items = []
        for exp, coeff in self.terms.items():
            items.append((exp, coeff if not isinstance(coeff, ParamPoly) else coeff))
        return hash((self.rank, self.param_rank, frozenset(items)))

    def _check_compatible(self, other: "LaurentPolynomial"):
        if self.rank != other.rank or self.param_rank != other.param_rank:
            raise LaurentError(
                f"rank mismatch: ({self.rank},{self.param_rank}) vs"
                f" ({other.rank},{other.param_rank})"
            )

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return self + LaurentPolynomial.constant(other, self.rank, self.param_rank)
        self._check_compatible(other)
        out = dict(self.terms)
        for exp, coeff in other.terms.items():
            new = out.get(exp, 0) + coeff
            if _coeff_is_zero(new):
                out.pop(exp, None)
            else:
                out[exp] = new if isinstance(new, ParamPoly) else _norm_scalar(new)
        return LaurentPolynomial(self.rank, self.param_rank, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(
            self.rank, self.param_rank, {e: -c for e, c in self.terms.items()}
        )

    def __sub__(self, other):
        if not isinstance(other, LaurentPolynomial):
            other = LaurentPolynomial.constant(other, self.rank, self.param_rank)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPolynomial):
            # scalar or ParamPoly multiple
            if _coeff_is_zero(other):
                return LaurentPolynomial.zero(self.rank, self.param_rank)
            out = {}
            for exp, coeff in self.terms.items():
                new = coeff * other
                if not _coeff_is_zero(new):
                    out[exp] = new if isinstance(new, ParamPoly) else _norm_scalar(new)
            return LaurentPolynomial(self.rank, self.param_rank, out)
        self._check_compatible(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        rank = self.rank
        if rank == 1:
            for e1, c1 in a.items():
                x1 = e1[0]
                for e2, c2 in b.items():
                    e = (x1 + e2[0],)
                    new = out.get(e, 0) + c1 * c2
                    if _coeff_is_zero(new):
                        out.pop(e, None)
                    else:
                        out[e] = new
        elif rank == 2:
            for e1, c1 in a.items():
                x1, y1 = e1
                for e2, c2 in b.items():
                    e = (x1 + e2[0], y1 + e2[1])
                    new = out.get(e, 0) + c1 * c2
                    if _coeff_is_zero(new):
                        out.pop(e, None)
                    else:
                        out[e] = new
        elif rank == 3:
            for e1, c1 in a.items():
                x1, y1, z1 = e1
                for e2, c2 in b.items():
                    e = (x1 + e2[0], y1 + e2[1], z1 + e2[2])
                    new = out.get(e, 0) + c1 * c2
                    if _coeff_is_zero(new):
                        out.pop(e, None)
                    else:
                        out[e] = new
        else:
            for e1, c1 in a.items():
                for e2, c2 in b.items():
                    e = tuple(i + j for i, j in zip(e1, e2))
                    new = out.get(e, 0) + c1 * c2
                    if _coeff_is_zero(new):
                        out.pop(e, None)
                    else:
                        out[e] = new
        for e, c in out.items():
            if not isinstance(c, ParamPoly):
                out[e] = _norm_scalar(c)
        return LaurentPolynomial(self.rank, self.param_rank, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            if len(self.terms) != 1:
                raise LaurentError("negative power of a non-monomial Laurent polynomial")
            (exp, coeff), = self.terms.items()
            if isinstance(coeff, ParamPoly):
                if len(coeff.terms) != 1:
                    raise LaurentError("cannot invert a multi-term coefficient")
                one = ParamPoly(self.param_rank, {(0,) * self.param_rank: 1})
                inv_coeff = one.monomial_quotient(coeff)
            else:
                inv_coeff = _norm_scalar(Fraction(1) / coeff)
            base = LaurentPolynomial(
                self.rank, self.param_rank, {tuple(-e for e in exp): inv_coeff}
            )
            return base ** (-exponent)
        result = LaurentPolynomial.one(self.rank, self.param_rank)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- structural operations --------------------------------------------

    def apply_monomial_map(self, matrix) -> "LaurentPolynomial":
        """Unimodular change of torus coordinates: x^v -> x^(M v)."""
        m = [[int(x) for x in row] for row in matrix]
        if len(m) != self.rank or any(len(row) != self.rank for row in m):
            raise LaurentError(f"matrix must be {self.rank}x{self.rank}")
        if abs(intlinalg.det(m)) != 1:
            raise LaurentError("monomial substitution matrix must be unimodular")
        out = {}
        for exp, coeff in self.terms.items():
            new_exp = tuple(sum(m[i][j] * exp[j] for j in range(self.rank)) for i in range(self.rank))
            out[new_exp] = coeff
        return LaurentPolynomial(self.rank, self.param_rank, out)

    def substitute_parameters(self, values: dict) -> "LaurentPolynomial":
        """Assign rational values to some parameters; the rest are reindexed."""
        assign = {}
        for index, value in values.items():
            index = int(index)
            if not 0 <= index < self.param_rank:
                raise LaurentError(f"parameter index {index} out of range")
            assign[index] = Fraction(value)
        remaining = [i for i in range(self.param_rank) if i not in assign]
        index_map = {old: new for new, old in enumerate(remaining)}
        new_rank = len(remaining)
        out: dict = {}
        for exp, coeff in self.terms.items():
            if isinstance(coeff, ParamPoly):
                new_coeff = coeff.substitute(assign, new_rank, index_map)
            else:
                new_coeff = coeff
            if _coeff_is_zero(new_coeff):
                continue
            prev = out.get(exp)
            new = new_coeff if prev is None else prev + new_coeff
            if _coeff_is_zero(new):
                out.pop(exp, None)
            else:
                out[exp] = new if isinstance(new, ParamPoly) else _norm_scalar(new)
        return LaurentPolynomial(self.rank, new_rank, out)

    def newton_polytope(self):
        """Vertices of the convex hull of the support (exact)."""
        if self.is_zero:
            raise LaurentError("the zero polynomial has no Newton polytope")
        hull = geometry.convex_hull(self.terms.keys())
        return NewtonPolytopeData(vertices=hull.vertices, dimension=hull.dim, hull=hull)

    def graded_pieces(self, weight) -> dict[int, "LaurentPolynomial"]:
        """Split by the grading <weight, exponent>; only nonzero pieces."""
        weight = tuple(int(w) for w in weight)
        if len(weight) != self.rank:
            raise LaurentError("weight covector has wrong length")
        pieces: dict[int, dict] = {}
        for exp, coeff in self.terms.items():
            k = sum(w * e for w, e in zip(weight, exp))
            pieces.setdefault(k, {})[exp] = coeff
        return {
            k: LaurentPolynomial(self.rank, self.param_rank, terms)
            for k, terms in sorted(pieces.items())
        }

    def drop_coordinate(self, index: int) -> "LaurentPolynomial":
        """Forget a torus coordinate that never appears in the support."""
        if any(exp[index] != 0 for exp in self.terms):
            raise LaurentError(f"coordinate {index} appears in the support")
        out = {exp[:index] + exp[index + 1:]: c for exp, c in self.terms.items()}
        return LaurentPolynomial(self.rank - 1, self.param_rank, out)

    # -- rendering ---------------------------------------------------------

    def render(self) -> str:
        """Deterministic text form: graded-lex descending, exact coefficients."""
        if self.is_zero:
            return "0"
        parts = []
        for exp, coeff in sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0])):
            parts.append(self._term_text(exp, coeff))
        return parts[0] + "".join(
            p if p.startswith("-") else "+" + p for p in parts[1:]
        )

    def _var_name(self, index: int) -> str:
        if self.rank <= 4:
            return _VAR_NAMES[index]
        return f"x{index + 1}"

    def _term_text(self, exp: Exponent, coeff) -> str:
        num_factors = []
        den_factors = []
        for i, e in enumerate(exp):
            name = self._var_name(i)
            if e == 1:
                num_factors.append(name)
            elif e > 1:
                num_factors.append(f"{name}^{e}")
            elif e == -1:
                den_factors.append(name)
            elif e < 0:
                den_factors.append(f"{name}^{-e}")
        num = "*".join(num_factors)
        if isinstance(coeff, ParamPoly):
            ctext = coeff.render(with_parens=True)
            head = f"{ctext}*{num}" if num else ctext
            if head.startswith("(") and not num and len(coeff.terms) == 1:
                head = coeff.render(with_parens=False)
        else:
            head = _scalar_term_text(coeff, num)
            if not num and isinstance(coeff, Fraction) and den_factors:
                # e.g. (3/4) / x would misparse as 3/(4x); guard with parens
                head = f"({coeff})"
        if den_factors:
            if not num_factors and head in ("", "1"):
                head = "1"
            elif not num_factors and head == "-1":
                head = "-1"
            den = "*".join(den_factors)
            if len(den_factors) > 1:
                den = f"({den})"
            return f"{head}/{den}"
        return head if head else "1"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"LaurentPolynomial({self.render()!r}, rank={self.rank}, params={self.param_rank})"


class NewtonPolytopeData:
    """Extreme points of the support hull, plus the supporting system."""

    __slots__ = ("vertices", "dimension", "hull")

    def __init__(self, vertices, dimension, hull):
        self.vertices = tuple(tuple(v) for v in vertices)
        self.dimension = dimension
        self.hull = hull

    def __eq__(self, other):
        if not isinstance(other, NewtonPolytopeData):
            return NotImplemented
        return set(self.vertices) == set(other.vertices)

    def __repr__(self):
        return f"NewtonPolytopeData(vertices={sorted(self.vertices)}, dim={self.dimension})"


# -- module-level operation aliases (functional style) ----------------------


def multiply(f: LaurentPolynomial, g: LaurentPolynomial) -> LaurentPolynomial:
    return f * g


def power(f: LaurentPolynomial, d: int) -> LaurentPolynomial:
    if d < 0:
        raise LaurentError("power exponent must be nonnegative")
    return f ** d


def constant_term(f: LaurentPolynomial):
    return f.constant_term()


def apply_monomial_map(f: LaurentPolynomial, matrix) -> LaurentPolynomial:
    return f.apply_monomial_map(matrix)


def newton_polytope(f: LaurentPolynomial) -> NewtonPolytopeData:
    return f.newton_polytope()


def substitute_parameters(f: LaurentPolynomial, values: dict) -> LaurentPolynomial:
    return f.substitute_parameters(values)


def render(f: LaurentPolynomial) -> str:
    return f.render()


def laurent_divide(p: LaurentPolynomial, q: LaurentPolynomial):
    """Exact quotient p/q in the Laurent ring, or None if q does not divide p.

    Both arguments are shifted into the polynomial ring, then divided by the
    single divisor with graded-lex leading terms; any nonzero remainder means
    non-divisibility.
    """
    p._check_compatible(q)
    if q.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero:
        return p
    rank = p.rank

    def shift_vector(poly):
        return tuple(min(exp[i] for exp in poly.terms) for i in range(rank))

    sp = shift_vector(p)
    sq = shift_vector(q)
    pterms = {tuple(e - s for e, s in zip(exp, sp)): c for exp, c in p.terms.items()}
    qterms = {tuple(e - s for e, s in zip(exp, sq)): c for exp, c in q.terms.items()}

    q_lead = min(qterms, key=grlex_key)
    q_lead_coeff = qterms[q_lead]
    quotient: dict = {}
    remainder = dict(pterms)
    while remainder:
        lead = min(remainder, key=grlex_key)
        diff = tuple(a - b for a, b in zip(lead, q_lead))
        if any(d < 0 for d in diff):
            return None
        lead_coeff = remainder[lead]
        if isinstance(q_lead_coeff, ParamPoly):
            if len(q_lead_coeff.terms) != 1:
                raise LaurentError(
                    "division by a polynomial with a multi-term parameter leading"
                    " coefficient is not supported"
                )
            if not isinstance(lead_coeff, ParamPoly):
                lead_coeff = ParamPoly(
                    q_lead_coeff.rank, ParamPoly.coerce(q_lead_coeff.rank, lead_coeff)
                )
            factor = lead_coeff.monomial_quotient(q_lead_coeff)
        elif isinstance(lead_coeff, ParamPoly):
            factor = lead_coeff / q_lead_coeff
        else:
            factor = _norm_scalar(Fraction(lead_coeff) / q_lead_coeff)
        quotient[diff] = factor
        for qexp, qcoeff in qterms.items():
            target = tuple(a + b for a, b in zip(diff, qexp))
            new = remainder.get(target, 0) - factor * qcoeff
            if _coeff_is_zero(new):
                remainder.pop(target, None)
            else:
                remainder[target] = new
    shift = tuple(a - b for a, b in zip(sp, sq))
    out = {tuple(e + s for e, s in zip(exp, shift)): c for exp, c in quotient.items()}
    return LaurentPolynomial(rank, p.param_rank, out)
