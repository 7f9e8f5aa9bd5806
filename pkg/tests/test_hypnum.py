import math
import pickle

import pytest
from hypothesis import given, strategies as st

from hyperfuzzy import hypnum as hn
from hyperfuzzy.hypnum import E1, E2, K, ONE, ZERO, Hyp, Kind, OrderMode, Ordering

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)
hyps = st.builds(Hyp, finite, finite)
unit = st.sampled_from([k / 20 for k in range(21)])
grades = st.builds(Hyp, unit, unit)


class TestConstruction:
    @pytest.mark.parametrize(
        "a1, a2, u, v",
        [(1, 0, 1, 1), (0, 1, 1, -1), (5, 2, 7, 3)],
    )
    def test_from_standard(self, a1, a2, u, v):
        assert hn.from_standard(a1, a2) == Hyp(u, v)

    def test_k_is_e1_minus_e2(self):
        assert hn.from_standard(0, 1) == E1 - E2 == K

    @pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
    def test_rejects_non_finite(self, bad):
        with pytest.raises(hn.InvalidNumberError):
            Hyp(bad, 0)
        with pytest.raises(hn.InvalidNumberError):
            hn.from_standard(0, bad)

    def test_negative_zero_normalised(self):
        h = Hyp(-0.0, -0.0)
        assert math.copysign(1, h.u) == 1 and hn.render(h) == "0e1+0e2"

    def test_immutable_hashable_picklable(self):
        h = Hyp(0.3, 0.7)
        with pytest.raises(AttributeError):
            h.u = 1
        assert {h: 1}[Hyp(0.3, 0.7)] == 1
        assert pickle.loads(pickle.dumps(h)) == h

    def test_not_equal_to_plain_tuple(self):
        assert Hyp(1, 2) != (1.0, 2.0)

    @given(finite, finite)
    def test_standard_round_trip(self, a1, a2):
        x = hn.from_standard(a1, a2)
        b1, b2 = x.to_standard()
        y = hn.from_standard(b1, b2)
        tol = 1e-15 * max(1.0, abs(a1), abs(a2)) * 4
        assert abs(y.u - x.u) <= tol and abs(y.v - x.v) <= tol


class TestRing:
    def test_identities_exact(self):
        assert K * K == ONE
        assert E1 * E1 == E1
        assert E2 * E2 == E2
        assert E1 + E2 == ONE
        assert E1 * E2 == ZERO

    def test_componentwise_examples(self):
        x = Hyp(1.5, -2)
        assert x + ZERO == x
        assert Hyp(7, 3) - Hyp(2, 1) == Hyp(5, 2)
        assert -Hyp(1, -2) == Hyp(-1, 2)

    def test_real_scalars_coerce(self):
        assert 1 - Hyp(0.25, 0.5) == Hyp(0.75, 0.5)
        assert 2 * Hyp(1, 3) == Hyp(2, 6)
        with pytest.raises(TypeError):
            Hyp(1, 1) + "x"

    @given(hyps, hyps)
    def test_standard_product_matches(self, x, y):
        a = hn.standard_product(x, y)
        b = x * y
        scale = max(1.0, abs(x.u) + abs(x.v)) * max(1.0, abs(y.u) + abs(y.v))
        assert hn.isclose(a, b, 1e-12 * scale)

    @given(grades, grades, grades)
    def test_ring_laws(self, x, y, z):
        assert x + y == y + x
        assert x * y == y * x
        assert (x * y) * z == x * (y * z) or hn.isclose((x * y) * z, x * (y * z))
        assert hn.isclose(x * (y + z), x * y + x * z)

    @given(hyps, hyps)
    def test_modulus_multiplicative(self, x, y):
        assert abs(x * y) == abs(x) * abs(y)


class TestClassify:
    def test_examples(self):
        assert hn.classify(E1) is Kind.ZERO_DIVISOR
        assert hn.classify(hn.from_standard(5, 2)) is Kind.POSITIVE
        one_plus_k = hn.from_standard(1, 1)
        assert one_plus_k == Hyp(2, 0)
        assert hn.classify(one_plus_k) is Kind.ZERO_DIVISOR
        assert hn.classify(ZERO) is Kind.ZERO
        assert hn.classify(Hyp(-1, 2)) is Kind.OTHER

    @given(finite, finite)
    def test_positive_iff_a1_dominates(self, a1, a2):
        x = Hyp(a1 + a2, a1 - a2)
        if x.u > 0 and x.v > 0:
            # exact in the idempotent pair; the standard view may round
            b1, b2 = x.to_standard()
            assert b1 >= abs(b2)
        assert hn.is_zero_divisor(x) == (hn.classify(x) is Kind.ZERO_DIVISOR)


class TestOrder:
    def test_examples(self):
        x, y = Hyp(0.3, 0.2), Hyp(0.5, 0.2)
        assert hn.leq(x, y) and x <= y
        assert hn.compare(x, y) is Ordering.LESS
        assert hn.compare(Hyp(0.5, 0.2), Hyp(0.2, 0.5)) is Ordering.INCOMPARABLE
        assert hn.compare(x, x) is Ordering.EQUAL
        assert hn.compare(y, x) is Ordering.GREATER
        assert not hn.lt(x, y)  # strict needs both components

    def test_max_min_examples(self):
        a, b = Hyp(0.06, 0.04), Hyp(0.06, 0.07)
        assert hn.max_d(a, b, OrderMode.STRICT) == b
        assert hn.min_d(Hyp(0.3, 0.6), Hyp(0.5, 0.4), OrderMode.LATTICE) == Hyp(0.3, 0.4)
        with pytest.raises(hn.IncomparableError) as err:
            hn.min_d(Hyp(0.3, 0.6), Hyp(0.5, 0.4), OrderMode.STRICT)
        assert "0.3e1+0.6e2" in str(err.value) and "0.5e1+0.4e2" in str(err.value)

    @given(grades, grades, grades)
    def test_partial_order_axioms(self, x, y, z):
        assert x <= x
        if x <= y and y <= x:
            assert x == y
        if x <= y and y <= z:
            assert x <= z

    @given(grades, grades)
    def test_lattice_laws(self, x, y):
        assert hn.max_d(x, x) == x and hn.min_d(x, x) == x
        assert hn.max_d(x, hn.min_d(x, y)) == x
        assert hn.min_d(x, hn.max_d(x, y)) == x
        if hn.comparable(x, y):
            assert hn.max_d(x, y, OrderMode.STRICT) == hn.max_d(x, y)
            assert hn.min_d(x, y, OrderMode.STRICT) == hn.min_d(x, y)

    def test_mode_parse(self):
        assert OrderMode.parse("Strict") is OrderMode.STRICT
        with pytest.raises(ValueError):
            OrderMode.parse("fuzzy")


class TestMetric:
    def test_modulus(self):
        assert hn.modulus_k(Hyp(-3, 2)) == Hyp(3, 2)
        assert hn.modulus_k(ZERO) == ZERO
        assert hn.modulus_k(Hyp(0.4, 2)) == Hyp(0.4, 2)

    def test_distance_example(self):
        assert hn.d_metric(Hyp(0.2, 0.9), Hyp(0.5, 0.1)) == hn.modulus_k(Hyp(0.2, 0.9) - Hyp(0.5, 0.1))
        assert hn.isclose(hn.d_metric(Hyp(0.2, 0.9), Hyp(0.5, 0.1)), Hyp(0.3, 0.8))

    @given(hyps, hyps, hyps)
    def test_metric_axioms(self, x, y, z):
        assert hn.d_metric(x, x) == ZERO
        assert hn.d_metric(x, y) == hn.d_metric(y, x)
        # exact triangle inequality needs exact subtraction; allow rounding
        lhs = hn.d_metric(x, z)
        rhs = hn.d_metric(x, y) + hn.d_metric(y, z)
        slack = 1e-9 * (1 + abs(rhs.u) + abs(rhs.v))
        assert lhs.u <= rhs.u + slack and lhs.v <= rhs.v + slack

    def test_point_norm(self):
        assert hn.point_norm((3, 4)) == Hyp(5, 5)
        assert hn.point_norm((0, 0, 0)) == ZERO
        assert hn.point_norm((-2,)) == Hyp(2, 2)


class TestInterval:
    def test_length_and_contains(self):
        i = hn.closed(Hyp(0.1, 0.2), Hyp(0.4, 0.6))
        assert hn.isclose(i.length(), Hyp(0.3, 0.4))
        assert i.contains(Hyp(0.2, 0.3))
        assert not i.contains(Hyp(0.5, 0.3))
        assert i.degeneracy() is hn.Degeneracy.NONDEGENERATE

    def test_degenerate_and_point(self):
        a = Hyp(0.1, 0.2)
        assert hn.closed(a, a + Hyp(0.3, 0)).degeneracy() is hn.Degeneracy.DEGENERATE
        assert hn.closed(a, a).degeneracy() is hn.Degeneracy.POINT

    def test_open_interval_is_strict(self):
        i = hn.open_interval(ZERO, ONE)
        assert i.contains(Hyp(0.5, 0.5))
        assert not i.contains(Hyp(0.0, 0.5))
        with pytest.raises(hn.HypError):
            hn.open_interval(ZERO, E1)

    def test_rejects_unordered(self):
        with pytest.raises(hn.HypError):
            hn.closed(Hyp(0.5, 0.2), Hyp(0.2, 0.5))


class TestText:
    @pytest.mark.parametrize(
        "text, expected",
        [
            ("0.3e1+0.7e2", Hyp(0.3, 0.7)),
            ("0.5+(-0.2)k", Hyp(0.3, 0.7)),
            ("0.3e1-0.7e2", Hyp(0.3, -0.7)),
            ("(-3)e1+2e2", Hyp(-3, 2)),
            ("e1", E1),
            ("k", K),
            ("5-2k", Hyp(3, 7)),
            ("2", Hyp(2, 2)),
            ("1e-05e1+2e2", Hyp(1e-5, 2)),
            ("0.7e2 + 0.3e1", Hyp(0.3, 0.7)),
        ],
    )
    def test_parse(self, text, expected):
        assert hn.isclose(hn.parse(text), expected, 1e-15)

    @pytest.mark.parametrize("bad", ["", "e3", "0.3e1+0.3e1", "0.3e1+2k", "0.3e1 0.7e2", "abc"])
    def test_parse_errors(self, bad):
        with pytest.raises(hn.InvalidNumberError):
            hn.parse(bad)

    def test_render(self):
        assert hn.render(Hyp(0.3, 0.7)) == "0.3e1+0.7e2"
        assert hn.render(Hyp(0.3, 0.7), "standard") == "0.5+(-0.2)k"
        assert hn.render(Hyp(1 / 3, 2)) == "0.333333333333e1+2e2"

    @given(hyps)
    def test_round_trip_idempotent(self, x):
        y = hn.parse(hn.render(x))
        assert hn.isclose(x, y, 1e-11 * max(1.0, abs(x.u), abs(x.v)))

    @given(hyps)
    def test_round_trip_standard(self, x):
        y = hn.parse(hn.render(x, "standard"))
        assert hn.isclose(x, y, 1e-11 * max(1.0, abs(x.u), abs(x.v)))
