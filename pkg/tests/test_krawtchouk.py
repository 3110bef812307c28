import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dualpart.config import InputError
from dualpart.krawtchouk import (
    co_nonreflexivity_verdict,
    derivative_smallest_root_floor,
    dual_class_lower_bound,
    eq45_w,
    eq45_w_floor,
    isolate_real_roots,
    ku_build,
    ku_derivative_roots,
    ku_eval,
    ku_partial_sum,
    ku_roots,
    ku_value_vector,
    lemma415_convergence,
    smallest_root_floor,
    thm42_threshold,
)


class TestBuildAndEval:
    def test_k0_is_constant_one(self):
        poly = ku_build(7, 0, 3)
        assert poly.coeffs == (Fraction(1),)

    def test_known_values_422(self):
        assert [ku_eval(4, 2, 2, s) for s in range(5)] == [6, 0, -2, 0, 6]

    def test_value_at_zero(self):
        for n in range(1, 12):
            for k in range(n + 1):
                for q in (2, 3, 4):
                    assert ku_eval(n, k, q, 0) == math.comb(n, k) * (q - 1) ** k

    @pytest.mark.parametrize("q", [2, 3, 4])
    def test_three_engines_agree(self, q):
        for n in range(0, 13):
            for k in range(n + 1):
                for s in range(n + 1):
                    a = ku_eval(n, k, q, s, "sum")
                    b = ku_eval(n, k, q, s, "genfun")
                    c = ku_eval(n, k, q, s, "poly")
                    assert a == b == c

    def test_degree_is_k(self):
        import random

        rng = random.Random(0)
        for _ in range(25):
            n = rng.randrange(1, 31)
            k = rng.randrange(0, n + 1)
            q = rng.choice([2, 3, 4, 5])
            poly = ku_build(n, k, q)
            assert poly.degree == k
            assert poly.coeffs[-1] != 0

    def test_engine_range_errors(self):
        with pytest.raises(InputError):
            ku_eval(4, 2, 2, 5, "sum")
        with pytest.raises(InputError):
            ku_eval(4, 2, 2, -1, "genfun")
        # polynomial evaluation has no range restriction
        assert isinstance(ku_eval(4, 2, 2, 9, "poly"), int)


class TestIdentities:
    @pytest.mark.parametrize("q", [2, 3, 4])
    def test_partial_sum_identity(self, q):
        for n in range(1, 13):
            for k in range(n + 1):
                for s in range(1, n + 1):
                    lhs, rhs = ku_partial_sum(n, k, q, s)
                    assert lhs == rhs

    def test_q2_symmetry(self):
        for n in range(0, 13):
            for k in range(n + 1):
                for s in range(n + 1):
                    assert ku_eval(n, k, 2, n - s) == (-1) ** k * ku_eval(n, k, 2, s)


class TestRoots:
    @pytest.mark.parametrize("q", [2, 3, 4])
    def test_root_counts(self, q):
        for n in range(1, 16):
            for k in range(1, n + 1):
                roots = ku_roots(n, k, q, width=Fraction(1, 1000))
                assert len(roots) == k
                # roots are guaranteed inside (0, n); interval endpoints may
                # touch the boundary
                for lo, hi in roots:
                    assert 0 <= lo <= hi <= n
                assert all(roots[i][1] <= roots[i + 1][0] for i in range(k - 1))

    def test_roots_422_exact(self):
        roots = ku_roots(4, 2, 2)
        assert roots == [(1, 1), (3, 3)]

    def test_width_honoured(self):
        for lo, hi in ku_roots(9, 4, 3):
            assert hi - lo <= Fraction(1, 10**9)

    def test_linear_root_exact(self):
        (lo, hi), = ku_roots(6, 1, 3)
        assert lo == hi == Fraction(6 * 2, 3)

    def test_derivative_interlacing(self):
        for n, k, q in [(6, 3, 2), (8, 4, 3), (10, 5, 2)]:
            r = ku_roots(n, k, q, width=Fraction(1, 10**6))
            d = ku_derivative_roots(n, k, q, width=Fraction(1, 10**6))
            assert len(d) == k - 1
            for i, (dlo, dhi) in enumerate(d):
                assert r[i][1] <= dhi and dlo <= r[i + 1][0]

    def test_smallest_root_floor_matches_isolation(self):
        for n in range(1, 16):
            for k in range(1, n + 1):
                for q in (2, 3):
                    lo, hi = ku_roots(n, k, q, width=Fraction(1, 100))[0]
                    f = smallest_root_floor(n, k, q)
                    assert f <= hi and lo <= f + 1

    def test_derivative_floor_spot(self):
        # k=2 derivative root is the exact rational vertex
        for n in range(3, 12):
            for q in (2, 3):
                poly = ku_build(n, 2, q)
                vertex = -poly.coeffs[1] / (2 * poly.coeffs[2])
                assert derivative_smallest_root_floor(n, 2, q) == math.floor(vertex)

    def test_isolate_rejects_wrong_count(self):
        from dualpart.config import BudgetError

        # x^2 + 1 has no real roots; asking for one must exhaust refinement
        with pytest.raises(BudgetError):
            isolate_real_roots([1, 0, 1], Fraction(0), Fraction(4), 1, max_refine=8)


class TestThresholds:
    def test_q2_clause31_bracket(self):
        assert thm42_threshold(2, "3.1", 15)
        assert not thm42_threshold(2, "3.1", 9)

    def test_large_n_true(self):
        for q in (2, 3, 5):
            assert thm42_threshold(q, "3.1", 10**6)
            assert thm42_threshold(q, "3.3", 10**6)

    @pytest.mark.parametrize("clause,a_of,b_of", [
        ("3.1", lambda q: 9 * (q - 1), lambda q: 48 * q**4 - 144 * q**3 + 189 * q**2 - 162 * q + 81),
        ("3.3", lambda q: 4 * q**2 + 3 * q - 9, lambda q: 48 * q**4 - 72 * q**3 + 9 * q**2 - 54 * q + 81),
    ])
    def test_agrees_with_high_precision_oracle(self, clause, a_of, b_of):
        from decimal import Decimal, getcontext

        getcontext().prec = 100
        for q in (2, 3, 4, 7):
            bound = (Decimal(a_of(q)) + Decimal(b_of(q)).sqrt()) / Decimal(
                2 * (2 * q - 3) ** 2
            ) + 3
            for n in range(3, 40):
                assert thm42_threshold(q, clause, n) == (Decimal(n) >= bound)

    def test_rejects_bad_inputs(self):
        with pytest.raises(InputError):
            thm42_threshold(1, "3.1", 10)
        with pytest.raises(InputError):
            thm42_threshold(2, "3.2", 10)


class TestClosedFormRoot:
    @pytest.mark.parametrize("q", [2, 3])
    def test_matches_isolated_derivative_root(self, q):
        for n in range(4, 30):
            info = eq45_w(n, q)
            lo, hi = ku_derivative_roots(n - 1, 3, q)[0]
            assert float(lo) - 1e-6 <= info["value"] <= float(hi) + 1e-6

    def test_floor_exact_vs_float(self):
        for q in (2, 3, 5):
            for n in range(4, 60):
                info = eq45_w(n, q)
                # floats are only a sanity check; keep clear of ties
                if abs(info["value"] - round(info["value"])) > 1e-6:
                    assert info["floor"] == math.floor(info["value"])

    def test_q2_n20_branch(self):
        assert eq45_w_floor(20, 2) >= Fraction(20, 3)

    def test_rejects_small_n(self):
        with pytest.raises(InputError):
            eq45_w(3, 2)


class TestConvergence:
    def test_linear_case_exact(self):
        rows = lemma415_convergence(1, 3, [5, 10])
        for row in rows:
            assert row["deviation"] == 0

    def test_deviation_decreases(self):
        for k, q in [(2, 2), (3, 2), (2, 3)]:
            rows = lemma415_convergence(k, q, [100, 1000])
            assert rows[1]["deviation"] < rows[0]["deviation"]


class TestVerdicts:
    @pytest.mark.parametrize(
        "n,k,q,expect",
        [
            (5, 3, 2, "non-reflexive"),
            (4, 3, 3, "non-reflexive"),
            (6, 5, 2, "reflexive"),
            (6, 2, 2, "reflexive"),
            (3, 2, 3, "non-reflexive"),
            (7, 7, 5, "reflexive"),
            (9, 1, 4, "reflexive"),
            (4, 2, 3, "non-reflexive"),
        ],
    )
    def test_expected_verdicts(self, n, k, q, expect):
        assert co_nonreflexivity_verdict(n, k, q)["verdict"] == expect

    def test_verdicts_never_contradict_brute_force(self):
        from dualpart.partitions import co_reflexivity_bruteforce

        for q in (2, 3):
            for n in range(1, 11):
                for k in range(1, n + 1):
                    v = co_nonreflexivity_verdict(n, k, q)
                    if v["verdict"] == "undecided-by-criteria":
                        continue
                    brute = co_reflexivity_bruteforce(q, n, k)
                    assert brute["reflexive"] == (v["verdict"] == "reflexive"), (q, n, k, v)

    def test_value_vector_classifies_dual_classes(self):
        from dualpart.partitions import co_support_signature

        q, n, k = 3, 6, 2
        sig_classes = {}
        vec_classes = {}
        for t in range(1, n + 1):
            sig_classes.setdefault(co_support_signature(q, n, k, t), []).append(t)
            vec_classes.setdefault(ku_value_vector(n, k, q, t), []).append(t)
        assert sorted(sig_classes.values()) == sorted(vec_classes.values())

    def test_lower_bound_at_least_co_classes(self):
        for q in (2, 3):
            for n in range(2, 12):
                for k in range(1, n):
                    assert dual_class_lower_bound(n, k, q) >= 1
