"""Fans, class groups, mirror models, quantum-period oracles, Markov triples."""

import random
from fractions import Fraction
from math import gcd

import pytest

from lgforge import (
    FanData,
    MarkovTriple,
    NefPartition,
    ci_quantum_period,
    class_group,
    fibre_fan,
    hori_vafa,
    markov_mutate,
    markov_solutions_up_to,
    markov_tree,
    parse,
    period_coefficients,
    relation_monoid,
    toric_pair_model,
    toric_quantum_period,
    wpp_fan_polytope,
)
from lgforge.toric import ToricError

P1 = FanData(1, ((1,), (-1,)))
P2 = FanData(2, ((1, 0), (0, 1), (-1, -1)))
P3 = FanData(3, ((1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)))
P1xP1 = FanData(2, ((1, 0), (0, 1), (-1, 0), (0, -1)))
P1xP2 = FanData(3, ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, 0, 1), (0, -1, -1)))
BLP_P3 = FanData(3, ((1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1), (-1, 0, 0)))
BL2_P3 = FanData(
    3, ((1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1), (-1, 0, 0), (0, -1, 0))
)
P4 = FanData(
    4,
    ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (-1, -1, -1, -1)),
)


class TestFanData:
    def test_non_primitive_ray_rejected(self):
        with pytest.raises(ToricError):
            FanData(2, ((2, 0), (0, 1), (-1, -1)))

    def test_duplicate_ray_rejected(self):
        with pytest.raises(ToricError):
            FanData(2, ((1, 0), (1, 0), (0, 1)))

    def test_rays_must_span(self):
        with pytest.raises(ToricError):
            FanData(2, ((1, 0), (-1, 0)))


class TestClassGroup:
    def test_p2(self):
        cg = class_group(P2)
        assert cg.class_rank == 1
        assert cg.class_map == ((1,), (1,), (1,))
        assert cg.relation_lattice == ((1, 1, 1),)
        # the section puts the single parameter on the last ray
        assert cg.section == ((0,), (0,), (1,))

    def test_p1(self):
        cg = class_group(P1)
        assert cg.class_rank == 1
        assert cg.class_map == ((1,), (1,))

    def test_bl2_p3_rank(self):
        cg = class_group(BL2_P3)
        assert cg.class_rank == 3
        assert cg.nonnegative_basis

    def test_kills_principal_divisors(self):
        for fan in (P2, P3, P1xP1, BL2_P3):
            cg = class_group(fan)
            n = fan.rank
            for m in range(n):
                char = [fan.rays[i][m] for i in range(fan.n_rays)]
                image = [
                    sum(char[i] * cg.class_map[i][j] for i in range(fan.n_rays))
                    for j in range(cg.class_rank)
                ]
                assert all(x == 0 for x in image)

    def test_section_inverts_class_map(self):
        for fan in (P2, P3, P1xP1, BL2_P3, P1xP2):
            cg = class_group(fan)
            r = cg.class_rank
            for j in range(r):
                combo = [
                    sum(cg.section[i][j] * cg.class_map[i][k] for i in range(fan.n_rays))
                    for k in range(r)
                ]
                assert combo == [1 if k == j else 0 for k in range(r)]

    def test_surjective(self):
        from lgforge.intlinalg import smith_normal_form

        for fan in (P2, BL2_P3, P1xP2):
            cg = class_group(fan)
            if cg.class_rank == 0:
                continue
            _, d, _ = smith_normal_form([list(r) for r in cg.relation_lattice])
            assert all(abs(d[i][i]) == 1 for i in range(cg.class_rank))


class TestRelationMonoid:
    def test_p2_degree_six(self):
        slice_ = relation_monoid(P2, 6)
        assert set(slice_.tuples) == {(0, 0, 0), (1, 1, 1), (2, 2, 2)}

    def test_p1xp1_degree_two(self):
        slice_ = relation_monoid(P1xP1, 2)
        assert set(slice_.tuples) == {(0, 0, 0, 0), (1, 0, 1, 0), (0, 1, 0, 1)}

    def test_degree_zero(self):
        assert relation_monoid(P2, 0).tuples == ((0, 0, 0),)

    def test_closed_under_addition_within_bound(self):
        slice_ = relation_monoid(BL2_P3, 6)
        tuples = set(slice_.tuples)
        for a in tuples:
            for b in tuples:
                total = tuple(x + y for x, y in zip(a, b))
                if sum(total) <= 6:
                    assert total in tuples

    def test_matches_naive_product_enumeration(self):
        from itertools import product as iproduct

        for fan, bound in ((P2, 7), (P1xP1, 5), (BLP_P3, 5)):
            naive = {
                k
                for k in iproduct(range(bound + 1), repeat=fan.n_rays)
                if sum(k) <= bound
                and all(
                    sum(k[i] * fan.rays[i][c] for i in range(fan.n_rays)) == 0
                    for c in range(fan.rank)
                )
            }
            assert set(relation_monoid(fan, bound).tuples) == naive


class TestModels:
    def test_hori_vafa(self):
        assert hori_vafa(P2) == parse("x+y+1/(x*y)", 2)
        assert hori_vafa(P3) == parse("x+y+z+1/(x*y*z)", 3)
        assert hori_vafa(P1xP1) == parse("x+y+1/x+1/y", 2)

    def test_pair_model_p2(self):
        model = toric_pair_model(P2, class_group(P2))
        assert model == parse("x + y + a1/(x*y)", 2, 1)

    def test_pair_model_p1(self):
        assert toric_pair_model(P1, class_group(P1)) == parse("x + a1/x", 1, 1)

    def test_pair_model_blp_p3_support(self):
        model = toric_pair_model(BLP_P3, class_group(BLP_P3))
        ones = model.substitute_parameters({0: 1, 1: 1})
        assert ones == parse("x + y + z + 1/x + 1/(x*y*z)", 3)

    def test_pair_model_specializes_to_hori_vafa(self):
        for fan in (P1, P2, P3, P1xP1, P1xP2, BLP_P3, BL2_P3):
            cg = class_group(fan)
            model = toric_pair_model(fan, cg)
            ones = {i: Fraction(1) for i in range(cg.class_rank)}
            assert model.substitute_parameters(ones) == hori_vafa(fan)


class TestQuantumPeriodOracle:
    def test_p2_values(self):
        series = toric_quantum_period(P2, class_group(P2), 6)
        rendered = series.render_list()
        assert rendered[3] == "6*a1"
        assert rendered[6] == "90*a1^2"

    def test_p3_value(self):
        series = toric_quantum_period(P3, class_group(P3), 4)
        assert series.render_list()[4] == "24*a1"

    def test_order_zero(self):
        series = toric_quantum_period(P2, class_group(P2), 0)
        assert list(series.coefficients) == [1]

    def test_oracle_matches_powering_to_order_eight(self):
        for fan in (P1, P2, P3, P1xP1, P1xP2, BLP_P3):
            cg = class_group(fan)
            model = toric_pair_model(fan, cg)
            direct = period_coefficients(model, 8)
            combinatorial = toric_quantum_period(fan, cg, 8)
            assert direct.coefficients == combinatorial.coefficients, fan


class TestCompleteIntersection:
    def test_cubic_threefold_series(self):
        cg = class_group(P4)
        part = NefPartition(((3, 4), (0, 1, 2)))
        series = ci_quantum_period(P4, cg, part, 4)
        at_one = [
            c if isinstance(c, int) else c.substitute({0: Fraction(1)}, 0, {})
            for c in series.coefficients
        ]
        # (2k)!(3k)!/(k!)^5 at k = 0, 1, 2
        assert at_one == [1, 0, 12, 0, 540]

    def test_cubic_matches_direct_model_up_to_shift(self):
        cg = class_group(P4)
        part = NefPartition(((3, 4), (0, 1, 2)))
        series = ci_quantum_period(P4, cg, part, 8)
        at_one = [
            c if isinstance(c, int) else c.substitute({0: Fraction(1)}, 0, {})
            for c in series.coefficients
        ]
        model = parse("(x+y+1)^3/(x*y*z) + z", 3)
        direct = period_coefficients(model, 8)
        # both regularized; equality up to the constant-shift relation
        from math import factorial

        shift = Fraction(at_one[1]) - Fraction(direct.coefficients[1])
        acc = []
        for d in range(9):
            lhs = Fraction(at_one[d], factorial(d))
            rhs = sum(
                shift ** k / factorial(k) * Fraction(direct.coefficients[d - k], factorial(d - k))
                for k in range(d + 1)
            )
            acc.append(lhs == rhs)
        assert all(acc)

    def test_empty_ample_block_rejected(self):
        with pytest.raises(ToricError):
            NefPartition(((), (0, 1, 2, 3, 4))).validate(5)

    def test_degree_zero(self):
        cg = class_group(P4)
        part = NefPartition(((3, 4), (0, 1, 2)))
        assert ci_quantum_period(P4, cg, part, 0).coefficients[0] == 1

    def test_restricted_constant_term_identity(self):
        """The block polynomials reproduce the combinatorial series:
        sum over a of c(f_1^a f_0^d) with a bounded by polytope containment,
        checked stable under doubling the bound."""
        f0 = parse("w + 1/(x*y*z*w)", 4)
        f1 = parse("x + y + z", 4)
        cg = class_group(P4)
        part = NefPartition(((3, 4), (0, 1, 2)))
        series = ci_quantum_period(P4, cg, part, 4)
        at_one = [
            c if isinstance(c, int) else c.substitute({0: Fraction(1)}, 0, {})
            for c in series.coefficients
        ]
        for d in range(5):
            for bound in (3 * d + 2, 6 * d + 4):
                total = 0
                for a in range(bound + 1):
                    total += ((f1 ** a) * (f0 ** d)).constant_term()
                if bound == 3 * d + 2:
                    first = total
            assert first == total == at_one[d]


class TestFibreFan:
    def test_p1xp2_projects_to_p2(self):
        sub = fibre_fan(P1xP2, [[1, 0, 0]])
        assert sub.rank == 2
        assert set(sub.rays) == {(1, 0), (0, 1), (-1, -1)}

    def test_identity_projection_gives_point_fan(self):
        sub = fibre_fan(P2, [[1, 0], [0, 1]])
        assert sub.rank == 0
        assert sub.rays == ()

    def test_p1xp1_to_p1(self):
        sub = fibre_fan(P1xP1, [[1, 0]])
        assert sub.rank == 1
        assert set(sub.rays) == {(1,), (-1,)}

    def test_non_surjective_rejected(self):
        with pytest.raises(ToricError):
            fibre_fan(P2, [[2, 0]])

    def test_partition_of_rays(self):
        proj = [[1, 0, 0]]
        killed = {
            ray for ray in P1xP2.rays if ray[0] == 0
        }
        sub = fibre_fan(P1xP2, proj)
        assert len(sub.rays) == len(killed)
        assert len(sub.rays) + (P1xP2.n_rays - len(killed)) == P1xP2.n_rays


class TestWeightedProjectivePlane:
    def test_standard_plane(self):
        data = wpp_fan_polytope(1, 1, 1)
        assert set(data.vertices) == {(1, 0), (0, 1), (-1, -1)}

    def test_one_one_two(self):
        data = wpp_fan_polytope(1, 1, 2)
        v = list(data.vertices)
        assert sum(w * x for (w, x) in zip((1, 1, 2), [c[0] for c in v])) == 0
        assert sum(w * x for (w, x) in zip((1, 1, 2), [c[1] for c in v])) == 0
        # canonical representative of the GL(2,Z) orbit of {(1,0),(-1,2),(0,-1)}
        from lgforge.intlinalg import row_hermite_form

        ref = row_hermite_form([[1, -1, 0], [0, 2, -1]])
        assert v == [(ref[0][i], ref[1][i]) for i in range(3)]

    def test_markov_square_weights(self):
        data = wpp_fan_polytope(1, 1, 4)
        assert len(data.vertices) == 3
        for coord in range(2):
            assert sum(
                w * v[coord] for w, v in zip((1, 1, 4), data.vertices)
            ) == 0

    def test_ill_formed_weights_rejected(self):
        with pytest.raises(ToricError):
            wpp_fan_polytope(2, 2, 1)

    def test_output_is_the_unique_gl_orbit(self):
        """Every primitive positively-spanning solution of the weight relation
        is left-GL(2,Z)-equivalent to the returned triple (same Hermite form)."""
        from itertools import product as iproduct

        from lgforge.intlinalg import row_hermite_form

        for weights in ((1, 1, 2), (1, 2, 3), (1, 1, 4)):
            mine = wpp_fan_polytope(*weights).vertices
            canonical = row_hermite_form(
                [[v[0] for v in mine], [v[1] for v in mine]]
            )
            w0, w1, w2 = weights
            found = 0
            box = range(-4, 5)
            for v0 in iproduct(box, box):
                if gcd(abs(v0[0]), abs(v0[1])) != 1:
                    continue
                for v1 in iproduct(box, box):
                    if gcd(abs(v1[0]), abs(v1[1])) != 1:
                        continue
                    v2_scaled = (-(w0 * v0[0] + w1 * v1[0]), -(w0 * v0[1] + w1 * v1[1]))
                    if v2_scaled[0] % w2 or v2_scaled[1] % w2:
                        continue
                    v2 = (v2_scaled[0] // w2, v2_scaled[1] // w2)
                    if gcd(abs(v2[0]), abs(v2[1])) != 1:
                        continue
                    # positively spanning: the three rays are not in a half-plane
                    cross01 = v0[0] * v1[1] - v0[1] * v1[0]
                    cross12 = v1[0] * v2[1] - v1[1] * v2[0]
                    cross20 = v2[0] * v0[1] - v2[1] * v0[0]
                    if cross01 == 0 or cross12 == 0 or cross20 == 0:
                        continue
                    if not (cross01 > 0) == (cross12 > 0) == (cross20 > 0):
                        continue
                    # the rays must generate the full lattice, not a sublattice
                    if gcd(gcd(abs(cross01), abs(cross12)), abs(cross20)) != 1:
                        continue
                    h = row_hermite_form(
                        [[v0[0], v1[0], v2[0]], [v0[1], v1[1], v2[1]]]
                    )
                    assert h == canonical, (weights, v0, v1, v2)
                    found += 1
            assert found > 0

    def test_random_weights_satisfy_relation_and_primitivity(self):
        rng = random.Random(7)
        found = 0
        while found < 50:
            w = tuple(rng.randint(1, 12) for _ in range(3))
            if (
                gcd(w[0], w[1]) != 1
                or gcd(w[0], w[2]) != 1
                or gcd(w[1], w[2]) != 1
            ):
                continue
            data = wpp_fan_polytope(*w)
            for coord in range(2):
                assert sum(wi * v[coord] for wi, v in zip(w, data.vertices)) == 0
            for v in data.vertices:
                assert gcd(abs(v[0]), abs(v[1])) == 1
            found += 1


class TestMarkov:
    def test_first_mutation(self):
        assert markov_mutate(MarkovTriple(1, 1, 1), 2).as_tuple() == (1, 1, 2)

    def test_second_mutation(self):
        assert markov_mutate(MarkovTriple(1, 1, 2), 1).as_tuple() == (1, 5, 2)

    def test_involution(self):
        t = MarkovTriple(2, 5, 29)
        for slot in range(3):
            assert markov_mutate(markov_mutate(t, slot), slot) == t

    def test_invalid_triple_rejected(self):
        with pytest.raises(ToricError):
            MarkovTriple(1, 2, 3)

    def test_tree_depth_eight_satisfies_equation(self):
        for (a, b, c) in markov_tree(8):
            assert a * a + b * b + c * c == 3 * a * b * c

    def test_tree_matches_brute_force_below_frontier(self):
        tree6 = {tuple(sorted(t)) for t in markov_tree(6)}
        tree7 = {tuple(sorted(t)) for t in markov_tree(7)}
        frontier = tree7 - tree6
        threshold = min(max(t) for t in frontier) - 1
        expected = markov_solutions_up_to(threshold)
        got = {t for t in tree6 if max(t) <= threshold}
        assert got == expected
