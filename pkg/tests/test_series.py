from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact.series import (
    IntSeries,
    SeriesOverflowError,
    complete_intersection_series,
    conjectured_series,
    expand_quotient,
    lex_geq,
    series_eq,
    series_sub,
    truncate_positive,
)


def quotient_oracle(n, r, d, max_degree):
    """(1 - t^d)^r by repeated multiplication, then n prefix sums (1/(1-t))."""
    poly = [1] + [0] * max_degree
    for _ in range(r):
        poly = [poly[i] - (poly[i - d] if i >= d else 0) for i in range(max_degree + 1)]
    for _ in range(n):
        acc, out = 0, []
        for c in poly:
            acc += c
            out.append(acc)
        poly = out
    return poly


def test_oracle_matches_hand_expansions():
    # (1 - t^2)^4 / (1 - t)^3 = (1 + t)^3 (1 - t^2)
    assert quotient_oracle(3, 4, 2, 7) == [1, 3, 2, -2, -3, -1, 0, 0]
    # (1 - t^2)^14 / (1 - t)^12 = (1 + t)^12 (1 - t^2)^2
    expected = [comb(12, k) - 2 * (comb(12, k - 2) if k >= 2 else 0)
                + (comb(12, k - 4) if k >= 4 else 0) for k in range(8)]
    assert quotient_oracle(12, 14, 2, 7) == expected


FROZEN_12_14_2 = [1, 12, 64, 196, 364, 364, 0, -572]


def test_frozen_value_agrees_with_oracle():
    assert quotient_oracle(12, 14, 2, 7) == FROZEN_12_14_2


class TestTruncatePositive:
    def test_identity_when_all_positive(self):
        s = IntSeries([1, 2, 1])
        assert truncate_positive(s) == s

    def test_cut_at_first_negative(self):
        assert quotient_oracle(3, 4, 2, 5) == [1, 3, 2, -2, -3, -1]
        assert truncate_positive(IntSeries([1, 3, 2, -2, -3, -1])) == IntSeries([1, 3, 2])

    def test_zero_coefficient_cuts(self):
        assert truncate_positive(IntSeries(FROZEN_12_14_2)) == IntSeries([1, 12, 64, 196, 364, 364])

    def test_leading_zero(self):
        assert truncate_positive(IntSeries([0, 5])) == IntSeries()

    @settings(max_examples=1000, deadline=None)
    @given(st.lists(st.integers(-50, 50), max_size=20))
    def test_idempotent_and_prefix(self, coeffs):
        s = IntSeries(coeffs)
        once = truncate_positive(s)
        assert truncate_positive(once) == once
        assert all(c > 0 for c in once.coeffs)
        assert all(once[i] == s[i] for i in range(len(once)))


class TestExpandQuotient:
    def test_geometric(self):
        assert expand_quotient(1, 0, 2, 3) == IntSeries([1, 1, 1, 1])

    def test_12_14_2(self):
        assert expand_quotient(12, 14, 2, 7) == IntSeries(FROZEN_12_14_2)

    def test_complete_intersection(self):
        s = expand_quotient(3, 3, 2, 4)
        assert s == IntSeries([1, 3, 3, 1])
        assert s[4] == 0

    @pytest.mark.parametrize("n", range(1, 9))
    @pytest.mark.parametrize("r", range(0, 9))
    @pytest.mark.parametrize("d", range(2, 5))
    def test_times_one_minus_t_power(self, n, r, d):
        D = 3 * (n + r) + 2
        s = expand_quotient(n, r, d, D)
        product = (s * IntSeries(quotient_oracle(0, n, 1, n))).truncated(D)
        target = IntSeries(quotient_oracle(0, r, d, D))
        assert product == target
        assert s.coeffs == tuple(IntSeries(quotient_oracle(n, r, d, D)).coeffs)

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            expand_quotient(0, 1, 2, 3)


class TestConjecturedSeries:
    def test_12_14_2(self):
        assert conjectured_series(12, 14, 2) == IntSeries([1, 12, 64, 196, 364, 364])

    def test_2_3_2(self):
        # (1 + t)^2 (1 - t^2) = 1 + 2t + 0t^2 - ...
        assert quotient_oracle(2, 3, 2, 3) == [1, 2, 0, -2]
        assert conjectured_series(2, 3, 2) == IntSeries([1, 2])

    @pytest.mark.parametrize("n", range(1, 7))
    @pytest.mark.parametrize("d", range(2, 5))
    def test_complete_intersection(self, n, d):
        ci = conjectured_series(n, n, d)
        block = IntSeries([1] * d)
        expected = IntSeries([1])
        for _ in range(n):
            expected = expected * block
        assert ci == expected
        assert ci.coeffs == ci.coeffs[::-1]
        assert ci == IntSeries(quotient_oracle(n, n, d, n * (d - 1) + 1))

    @pytest.mark.parametrize("n,r,d", [(3, 4, 2), (5, 9, 3), (9, 11, 3), (13, 16, 2), (4, 40, 2)])
    def test_matches_oracle_truncation(self, n, r, d):
        raw = quotient_oracle(n, r, d, 60)
        cut = next(i for i, c in enumerate(raw) if c <= 0)
        assert conjectured_series(n, r, d) == IntSeries(raw[:cut])

    def test_r_below_n_needs_cap(self):
        with pytest.raises(ValueError):
            conjectured_series(3, 0, 2)
        assert conjectured_series(3, 0, 2, max_degree=3) == IntSeries([1, 3, 6, 10])

    def test_invalid(self):
        with pytest.raises(ValueError):
            conjectured_series(3, 3, 1)


class TestArithmetic:
    def test_sub_to_zero(self):
        a = IntSeries([1, 2])
        assert series_sub(a, a) == IntSeries()
        assert str(series_sub(a, a)) == "0"

    def test_conjectured_delta(self):
        q = IntSeries([1, 12, 64, 196, 364, 364, 64])
        assert series_sub(q, conjectured_series(12, 14, 2)) == IntSeries([0] * 6 + [64])

    def test_lex_geq(self):
        a = IntSeries([1, 3, 2])
        assert lex_geq(a, a, 10)
        assert lex_geq(IntSeries([1, 3, 3]), a, 10)
        assert not lex_geq(a, IntSeries([1, 4]), 10)
        assert lex_geq(a, IntSeries([1, 4]), 0)

    def test_eq_canonical(self):
        assert series_eq(IntSeries([1, 2, 0, 0]), IntSeries([1, 2]))
        assert IntSeries([0, 0]).coeffs == ()

    def test_overflow_reported(self):
        with pytest.raises(SeriesOverflowError):
            IntSeries([2**63])
        with pytest.raises(SeriesOverflowError):
            IntSeries([2**62]) * IntSeries([4])

    def test_complete_intersection_series(self):
        assert complete_intersection_series(2, 3) == IntSeries([1, 2, 3, 2, 1])


class TestFormatting:
    @pytest.mark.parametrize("coeffs,text", [
        ([1, 12, 64], "1 + 12t + 64t^2"),
        ([0, 0, 0, 0, 0, 0, 13, 1], "13t^6 + t^7"),
        ([0, 1], "t"),
        ([1, -1, 0, -3], "1 - t - 3t^3"),
        ([0, 0, -1], "-t^2"),
        ([], "0"),
    ])
    def test_str(self, coeffs, text):
        assert str(IntSeries(coeffs)) == text

    def test_json_round_trip(self):
        s = IntSeries([1, 12, 64])
        assert s.to_json() == [1, 12, 64]
        assert IntSeries.from_json(s.to_json()) == s
        with pytest.raises(ValueError):
            IntSeries.from_json([1, "2"])
