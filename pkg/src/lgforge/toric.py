"""Fans of toric varieties, their class groups, mirror models and
combinatorial quantum-period oracles.

The relation monoid of a fan (nonnegative integer tuples k with
sum k_i v_i = 0) drives two independent computations: the parametrized
ray-sum model whose period is obtained by polynomial powering, and the
closed multinomial formula evaluated directly over the monoid.  Their
agreement is the central cross-check of this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd, isqrt

from . import geometry, intlinalg
from .laurent import LaurentError, LaurentPolynomial, NewtonPolytopeData, ParamPoly
from .period import REGULARIZED, PeriodSeries


class ToricError(LaurentError):
    pass


@dataclass(frozen=True)
class FanData:
    rank: int
    rays: tuple[tuple[int, ...], ...]
    cones: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        rays = tuple(tuple(int(x) for x in ray) for ray in self.rays)
        object.__setattr__(self, "rays", rays)
        if self.cones is not None:
            object.__setattr__(
                self, "cones", tuple(tuple(sorted(int(i) for i in c)) for c in self.cones)
            )
        seen = set()
        for ray in rays:
            if len(ray) != self.rank:
                raise ToricError(f"ray {ray} does not have rank {self.rank}")
            g = 0
            for x in ray:
                g = gcd(g, abs(x))
            if g != 1:
                raise ToricError(f"ray {ray} is not primitive")
            if ray in seen:
                raise ToricError(f"duplicate ray {ray}")
            seen.add(ray)
        if rays and intlinalg.rank_rational([list(r) for r in rays]) != self.rank:
            raise ToricError("rays do not span the ambient lattice")
        if not rays and self.rank != 0:
            raise ToricError("a fan with no rays must have rank 0")

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    @staticmethod
    def from_json(data: dict) -> "FanData":
        return FanData(
            rank=int(data["rank"]),
            rays=tuple(tuple(r) for r in data["rays"]),
            cones=tuple(tuple(c) for c in data["cones"]) if data.get("cones") else None,
        )

    def to_json(self) -> dict:
        out = {"rank": self.rank, "rays": [list(r) for r in self.rays]}
        if self.cones is not None:
            out["cones"] = [list(c) for c in self.cones]
        return out


@dataclass(frozen=True)
class ClassGroupData:
    """Free class group of a fan, with a divisor section for parametrizing.

    ``class_map`` row i is the class of the i-th ray divisor in the chosen
    basis.  ``relation_lattice`` is a basis of {k : sum k_i v_i = 0} and
    equals the transpose of the class projection.  ``section`` row i gives
    the parameter exponents attached to ray i; its columns are effective
    divisor representatives of the basis classes, so applying the class
    projection to the section columns gives the identity matrix.
    """

    class_rank: int
    class_map: tuple[tuple[int, ...], ...]
    relation_lattice: tuple[tuple[int, ...], ...]
    section: tuple[tuple[int, ...], ...]
    nonnegative_basis: bool
    nonnegative_section: bool


def _section_columns(proj0, l: int, r: int):
    """Nonnegative integer columns whose classes form a basis of Z^r.

    Candidates are ordered by (degree, lex); a depth-first search with rank
    pruning returns the first unimodular family, so the result is
    deterministic.  Columns are effective divisors; the family is the
    divisor section defining the parameter monomials of a pair model.
    """

    def vectors_of_degree(total):
        def build(prefix, remaining, slots):
            if slots == 1:
                yield prefix + (remaining,)
                return
            for first in range(remaining + 1):
                yield from build(prefix + (first,), remaining - first, slots - 1)

        yield from build((), total, l)

    candidates = []
    for degree in (1, 2, 3):
        candidates.extend(sorted(vectors_of_degree(degree)))
    classes = {
        c: [sum(proj0[i][j] * c[j] for j in range(l)) for i in range(r)]
        for c in candidates
    }
    budget = [200000]

    def dfs(start, chosen, chosen_classes):
        if budget[0] <= 0:
            return None
        budget[0] -= 1
        if len(chosen) == r:
            if abs(intlinalg.det(intlinalg.transpose(chosen_classes))) == 1:
                return list(chosen)
            return None
        for idx in range(start, len(candidates)):
            cand = candidates[idx]
            cls = classes[cand]
            stack = chosen_classes + [cls]
            if intlinalg.rank_rational(stack) != len(stack):
                continue
            out = dfs(idx + 1, chosen + [list(cand)], stack)
            if out is not None:
                return out
        return None

    return dfs(0, [], [])


def class_group(fan: FanData) -> ClassGroupData:
    """Cokernel presentation of the ray matrix, deterministic in ray order.

    The basis of the class group is chosen as the classes of an effective
    divisor section (when one exists), so that the pair model's parameter
    exponents are nonnegative; whether the ray classes themselves come out
    nonnegative is reported but not forced.
    """
    l, n = fan.n_rays, fan.rank
    a = [list(ray) for ray in fan.rays]  # l x n, rows are rays
    u, d, _ = intlinalg.smith_normal_form(a)
    diag = [d[i][i] for i in range(min(l, n))]
    if any(abs(x) not in (0, 1) for x in diag):
        raise ToricError("class group has torsion; only free class groups are supported")
    rank = sum(1 for x in diag if x != 0)
    if rank != n:
        raise ToricError("rays do not span; class group not defined")
    r = l - n
    proj = [u[i] for i in range(n, l)]  # r x l: class projection / relation basis

    nonneg_section = True
    section_cols = _section_columns(proj, l, r) if r else []
    if section_cols is None:
        nonneg_section = False
        # fall back to an arbitrary integral section of the raw projection
        section_cols = []
        for j in range(r):
            target = [1 if i == j else 0 for i in range(r)]
            x = intlinalg.solve_rational(proj, target)
            section_cols.append([int(v) for v in x])
    else:
        # rewrite the projection in the basis defined by the section classes
        t = [
            [sum(proj[i][j] * section_cols[k][j] for j in range(l)) for k in range(r)]
            for i in range(r)
        ]
        t_inv_cols = [
            intlinalg.solve_rational(t, [1 if i == j else 0 for i in range(r)])
            for j in range(r)
        ]
        t_inv = [[int(t_inv_cols[j][i]) for j in range(r)] for i in range(r)]
        proj = intlinalg.mat_mul(t_inv, proj)

    section_rows = [
        tuple(section_cols[j][i] for j in range(r)) for i in range(l)
    ]
    class_rows = [tuple(proj[i][j] for i in range(r)) for j in range(l)]
    nonneg = all(all(x >= 0 for x in row) for row in class_rows)
    return ClassGroupData(
        class_rank=r,
        class_map=tuple(class_rows),
        relation_lattice=tuple(tuple(row) for row in proj),
        section=tuple(section_rows),
        nonnegative_basis=nonneg,
        nonnegative_section=nonneg_section,
    )


@dataclass(frozen=True)
class RelationMonoidSlice:
    degree_bound: int
    tuples: tuple[tuple[int, ...], ...]


def relation_monoid(fan: FanData, bound: int, s0_indices=None, s0_bound=None) -> RelationMonoidSlice:
    """All k in Z_{>=0}^l with sum k_i v_i = 0 and sum k_i <= bound.

    Depth-first with per-coordinate partial-sum pruning.  When
    ``s0_indices`` is given, ``s0_bound`` additionally caps the subtotal
    over that index set (used by the complete-intersection oracle).
    """
    if bound < 0:
        raise ToricError("degree bound must be nonnegative")
    l, n = fan.n_rays, fan.rank
    rays = fan.rays
    s0 = frozenset(s0_indices) if s0_indices is not None else None
    # suffix coordinate ranges for pruning
    lo = [[0] * n for _ in range(l + 1)]
    hi = [[0] * n for _ in range(l + 1)]
    for i in range(l - 1, -1, -1):
        for c in range(n):
            lo[i][c] = min(lo[i + 1][c], rays[i][c])
            hi[i][c] = max(hi[i + 1][c], rays[i][c])
    found = []
    current = [0] * l

    def dfs(i, total, s0_total, partial):
        if s0 is not None and s0_bound is not None and s0_total > s0_bound:
            return
        budget = bound - total
        for c in range(n):
            if partial[c] + budget * lo[i][c] > 0 or partial[c] + budget * hi[i][c] < 0:
                return
        if i == l:
            if all(x == 0 for x in partial):
                found.append(tuple(current))
            return
        ray = rays[i]
        k = 0
        while total + k <= bound:
            current[i] = k
            dfs(
                i + 1,
                total + k,
                s0_total + (k if s0 is not None and i in s0 else 0),
                [partial[c] + k * ray[c] for c in range(n)],
            )
            k += 1
        current[i] = 0

    dfs(0, 0, 0, [0] * n)
    return RelationMonoidSlice(degree_bound=bound, tuples=tuple(sorted(found)))


def hori_vafa(fan: FanData) -> LaurentPolynomial:
    """Unit-coefficient ray sum."""
    terms = {ray: 1 for ray in fan.rays}
    return LaurentPolynomial.from_terms(fan.rank, 0, terms)


def toric_pair_model(fan: FanData, cg: ClassGroupData) -> LaurentPolynomial:
    """Parametrized ray sum: ray i carries the parameter monomial of its
    section row.  Substituting every parameter to 1 recovers hori_vafa."""
    if not cg.nonnegative_section:
        raise ToricError(
            "no componentwise-nonnegative divisor section found; pin a basis explicitly"
        )
    r = cg.class_rank
    terms = {}
    for ray, srow in zip(fan.rays, cg.section):
        coeff = ParamPoly.of(r, {tuple(srow): 1}) if r else 1
        terms[ray] = coeff
    return LaurentPolynomial.from_terms(fan.rank, r, terms)


def _multinomial(total: int, parts) -> int:
    out = factorial(total)
    for p in parts:
        out //= factorial(p)
    return out


def toric_quantum_period(fan: FanData, cg: ClassGroupData, order: int) -> PeriodSeries:
    """Regularized quantum period from the relation monoid (no powering).

    Degree-d coefficient: sum over monoid tuples with sum k_i = d of
    d!/(k_1! ... k_l!) times the parameter monomial of the tuple's class.
    """
    if order < 0:
        raise ToricError("order must be nonnegative")
    r = cg.class_rank
    slice_ = relation_monoid(fan, order)
    coeffs = [dict() for _ in range(order + 1)]
    for k in slice_.tuples:
        d = sum(k)
        weight = _multinomial(d, k)
        cls = tuple(
            sum(k[i] * cg.section[i][j] for i in range(fan.n_rays)) for j in range(r)
        )
        coeffs[d][cls] = coeffs[d].get(cls, 0) + weight
    out = []
    for d in range(order + 1):
        if r == 0:
            out.append(sum(coeffs[d].values()) if coeffs[d] else 0)
        else:
            out.append(ParamPoly.of(r, coeffs[d]))
    return PeriodSeries(order, REGULARIZED, r, tuple(out))


@dataclass(frozen=True)
class NefPartition:
    """Blocks S_0, S_1, ..., S_s of ray indices; S_0 is the ample block."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(i) for i in b)) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        flat = [i for b in blocks for i in b]
        if len(flat) != len(set(flat)):
            raise ToricError("nef partition blocks must be disjoint")

    def validate(self, n_rays: int):
        flat = sorted(i for b in self.blocks for i in b)
        if flat != list(range(n_rays)):
            raise ToricError("nef partition must cover all rays exactly once")
        if not self.blocks or not self.blocks[0]:
            raise ToricError("nef partition needs a nonempty ample block S_0")
        if len(self.blocks) < 2:
            raise ToricError("nef partition needs at least one hypersurface block")


def ci_quantum_period(
    fan: FanData, cg: ClassGroupData, partition: NefPartition, order: int
) -> PeriodSeries:
    """Complete-intersection quantum period from the nef partition.

    Degree-d coefficient: sum over monoid tuples with the S_0 subtotal
    equal to d of (prod over blocks of (block subtotal)!) / (prod k_i!),
    times the parameter monomial of the tuple's class.
    """
    if order < 0:
        raise ToricError("order must be nonnegative")
    partition.validate(fan.n_rays)
    s0 = partition.blocks[0]
    r = cg.class_rank
    # A tuple with S_0 subtotal 0 would make the slice infinite (S_0 not ample).
    probe = relation_monoid(fan, 2 * fan.n_rays)
    for k in probe.tuples:
        if any(k) and sum(k[i] for i in s0) == 0:
            raise ToricError("S_0 block is not ample: relation with zero S_0 degree")
    total_bound = order * fan.n_rays
    slice_ = relation_monoid(fan, total_bound, s0_indices=s0, s0_bound=order)
    coeffs = [dict() for _ in range(order + 1)]
    for k in slice_.tuples:
        d = sum(k[i] for i in s0)
        num = 1
        for block in partition.blocks:
            num *= factorial(sum(k[i] for i in block))
        den = 1
        for x in k:
            den *= factorial(x)
        weight = Fraction(num, den)
        cls = tuple(
            sum(k[i] * cg.section[i][j] for i in range(fan.n_rays)) for j in range(r)
        )
        coeffs[d][cls] = coeffs[d].get(cls, 0) + weight
    out = []
    for d in range(order + 1):
        if r == 0:
            out.append(sum(coeffs[d].values()) if coeffs[d] else 0)
        else:
            out.append(ParamPoly.of(r, coeffs[d]))
    return PeriodSeries(order, REGULARIZED, r, tuple(out))


def fibre_fan(fan: FanData, projection) -> FanData:
    """Sub-fan of rays (and cones) killed by a surjective projection,
    rewritten in a lattice basis of the projection kernel."""
    proj = [[int(x) for x in row] for row in projection]
    m = len(proj)
    if m == 0 or any(len(row) != fan.rank for row in proj):
        raise ToricError("projection must be an m x n integer matrix")
    _, d, _ = intlinalg.smith_normal_form(proj)
    diag = [d[i][i] for i in range(min(m, fan.rank))]
    if len([x for x in diag if abs(x) == 1]) != m:
        raise ToricError("projection is not surjective onto Z^m")
    kernel = intlinalg.kernel_basis(proj)  # list of n-vectors
    k = len(kernel)
    kt = intlinalg.transpose(kernel) if kernel else [[] for _ in range(fan.rank)]
    new_rays = []
    keep_indices = []
    for idx, ray in enumerate(fan.rays):
        if all(sum(proj[i][j] * ray[j] for j in range(fan.rank)) == 0 for i in range(m)):
            sol = intlinalg.solve_rational(kt, list(ray))
            new_rays.append(tuple(int(x) for x in sol))
            keep_indices.append(idx)
    if not new_rays and k > 0:
        raise ToricError("fibre fan is empty: no ray maps to zero")
    cones = None
    if fan.cones is not None:
        keep = set(keep_indices)
        reindex = {old: new for new, old in enumerate(keep_indices)}
        cones = tuple(
            tuple(reindex[i] for i in cone)
            for cone in fan.cones
            if set(cone) <= keep
        )
    return FanData(rank=k, rays=tuple(new_rays), cones=cones)


def wpp_fan_polytope(w0: int, w1: int, w2: int):
    """Fan polytope of a well-formed weighted projective plane.

    Returns primitive vertices v0, v1, v2 of a triangle in Z^2 with
    w0 v0 + w1 v1 + w2 v2 = 0, in the Hermite-normal-form representative
    of its GL(2,Z) orbit.
    """
    weights = (int(w0), int(w1), int(w2))
    if any(w <= 0 for w in weights):
        raise ToricError("weights must be positive")
    for i in range(3):
        for j in range(i + 1, 3):
            if gcd(weights[i], weights[j]) != 1:
                raise ToricError(
                    f"weights {weights} are not well-formed (gcd of a pair exceeds 1)"
                )
    u, d, _ = intlinalg.smith_normal_form([[w] for w in weights])
    if d[0][0] != 1:
        raise ToricError("weights must have gcd 1")
    # quotient Z^3 / Z<w>: coordinates are rows 1 and 2 of u
    verts = [(u[1][i], u[2][i]) for i in range(3)]
    for i, v in enumerate(verts):
        g = gcd(abs(v[0]), abs(v[1]))
        if g != 1:
            raise ToricError(f"vertex for weight {weights[i]} is not primitive")
    h = intlinalg.row_hermite_form([[verts[0][0], verts[1][0], verts[2][0]],
                                    [verts[0][1], verts[1][1], verts[2][1]]])
    vertices = tuple((h[0][i], h[1][i]) for i in range(3))
    hull = geometry.convex_hull(vertices)
    return NewtonPolytopeData(vertices=vertices, dimension=hull.dim, hull=hull)


@dataclass(frozen=True)
class MarkovTriple:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if min(self.a, self.b, self.c) <= 0:
            raise ToricError("Markov triples have positive entries")
        if self.a ** 2 + self.b ** 2 + self.c ** 2 != 3 * self.a * self.b * self.c:
            raise ToricError(f"({self.a},{self.b},{self.c}) violates a^2+b^2+c^2=3abc")

    def as_tuple(self):
        return (self.a, self.b, self.c)


def markov_mutate(triple: MarkovTriple, slot: int) -> MarkovTriple:
    """Replace one entry x by 3*(product of the others) - x."""
    vals = list(triple.as_tuple())
    if not 0 <= slot <= 2:
        raise ToricError("slot must be 0, 1 or 2")
    others = [vals[i] for i in range(3) if i != slot]
    vals[slot] = 3 * others[0] * others[1] - vals[slot]
    return MarkovTriple(*vals)


def markov_tree(depth: int) -> set[tuple[int, int, int]]:
    """All triples reachable from (1,1,1) by at most ``depth`` mutations."""
    start = MarkovTriple(1, 1, 1)
    seen = {start.as_tuple()}
    frontier = [start]
    for _ in range(depth):
        new_frontier = []
        for t in frontier:
            for slot in range(3):
                nxt = markov_mutate(t, slot)
                if nxt.as_tuple() not in seen:
                    seen.add(nxt.as_tuple())
                    new_frontier.append(nxt)
        frontier = new_frontier
    return seen


def markov_solutions_up_to(max_entry: int) -> set[tuple[int, int, int]]:
    """Brute-force solutions of a^2+b^2+c^2=3abc with all entries <= max_entry,
    as unordered triples (sorted tuples); independent of the mutation tree."""
    out = set()
    for a in range(1, max_entry + 1):
        for b in range(a, max_entry + 1):
            # c^2 - 3ab c + a^2 + b^2 = 0
            disc = 9 * a * a * b * b - 4 * (a * a + b * b)
            if disc < 0:
                continue
            root = isqrt(disc)
            if root * root != disc:
                continue
            for c2 in (3 * a * b - root, 3 * a * b + root):
                if c2 % 2 == 0:
                    c = c2 // 2
                    if b <= c <= max_entry:
                        out.add((a, b, c))
    return out
