import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubesections import formulas
from cubesections.errors import DomainError, RangeError
from cubesections.formulas import (
    FaceQuery,
    f0_asymptotic,
    f0_codim1_closed_form,
    f0_codim_lower_bound,
    f0_exact,
    f_bounds,
    f_codim_asymptotic,
    f_lower_bound,
    f_upper_bound,
    t_bound,
)

F023 = 24 / math.pi * math.atan(1 / math.sqrt(2))


def valid_queries(n_max, j_min=0):
    for n in range(3, n_max + 1):
        for k in range(1, n):
            for j in range(j_min, k):
                yield j, k, n


def test_face_query_validation():
    assert FaceQuery(0, 1, 2).validate() == (0, 1, 2)
    for bad in [(1, 1, 3), (0, 3, 3), (-1, 2, 3), (2, 1, 3)]:
        with pytest.raises(DomainError):
            FaceQuery(*bad).validate()


class TestF0Exact:
    @pytest.mark.parametrize("n", list(range(2, 31)) + [100, 1000])
    def test_line_sections_have_two_vertices(self, n):
        assert f0_exact(1, n) == pytest.approx(2.0, abs=1e-8)

    def test_square_section_of_3_cube(self):
        assert f0_exact(2, 3) == pytest.approx(F023, abs=1e-8)
        assert f0_exact(2, 3) == pytest.approx(4.7, abs=0.01)

    @pytest.mark.parametrize("n", range(3, 13))
    def test_codim_one_matches_closed_form(self, n):
        assert f0_exact(n - 1, n) == pytest.approx(f0_codim1_closed_form(n), abs=1e-8)

    def test_domain(self):
        with pytest.raises(DomainError):
            f0_exact(0, 3)
        with pytest.raises(DomainError):
            f0_exact(3, 3)

    @pytest.mark.parametrize("j,k,n", [q for q in valid_queries(12) if q[0] == 0])
    def test_between_floor_and_face_count(self, j, k, n):
        value = f0_exact(k, n)
        assert 2**k - 1e-8 <= value <= f_upper_bound((0, k, n))


class TestClosedForm:
    def test_values(self):
        assert f0_codim1_closed_form(2) == pytest.approx(2.0, abs=1e-15)
        assert f0_codim1_closed_form(3) == pytest.approx(F023, abs=1e-15)
        assert f0_codim1_closed_form(3) == pytest.approx(4.7019, abs=1e-4)
        # arctan(1/sqrt 3) = pi/6
        assert f0_codim1_closed_form(4) == pytest.approx(32 / 3, abs=1e-13)

    def test_large_n_ratio(self):
        ratios = [f0_codim1_closed_form(n) / (2.0**n * math.sqrt(n) / math.pi) for n in (10, 100, 1000)]
        assert abs(ratios[-1] - 1) < 1e-3
        assert abs(ratios[0] - 1) > abs(ratios[1] - 1) > abs(ratios[2] - 1)

    def test_overflow_raises(self):
        with pytest.raises(RangeError):
            f0_codim1_closed_form(1100)


class TestCodimLowerBound:
    def test_equality_at_d1(self):
        for n in range(2, 15):
            assert f0_codim_lower_bound(1, n) == pytest.approx(f0_codim1_closed_form(n), rel=1e-15)

    def test_hand_value(self):
        expected = 960 * (math.atan(0.5) / math.pi) ** 2
        assert f0_codim_lower_bound(2, 6) == pytest.approx(expected, rel=1e-15)
        assert f0_codim_lower_bound(2, 6) == pytest.approx(20.9097, abs=1e-4)

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_is_lower_bound(self, d):
        for n in range(d + 1, 13):
            assert f0_codim_lower_bound(d, n) <= f0_exact(n - d, n) + 1e-8


class TestAsymptotic:
    def test_k1(self):
        for n in (2, 10, 10**6):
            assert f0_asymptotic(1, n) == 2.0

    def test_k2_value(self):
        assert f0_asymptotic(2, 10**4) == pytest.approx(15.21, abs=0.01)

    def test_k2_ratio_trend(self):
        ratios = [f0_exact(2, n) / f0_asymptotic(2, n) for n in (10**2, 10**3, 10**4)]
        assert ratios[0] < ratios[1] < ratios[2] < 1


class TestTBound:
    def test_123(self):
        alpha = 0.5
        integral = math.sqrt(2 / (math.pi * alpha)) * math.atan(1 / math.sqrt(alpha))
        expected = min(0.5, math.sqrt(alpha) / math.sqrt(2 * math.pi) * integral)
        assert t_bound(1, 2, 3) == pytest.approx(expected, abs=1e-10)

    def test_small_alpha_approaches_half(self):
        # gamma_j <= 1 gives I(alpha, j) < sqrt(pi / (2 alpha)), so the bound
        # stays below 1/2 and tends to it as alpha = j(k-j)/(n-k+j) -> 0
        values = [t_bound(1, 2, n) for n in (10, 100, 1000, 10_000)]
        assert all(a < b < 0.5 for a, b in zip(values, values[1:]))
        assert 0.5 - values[-1] < 0.01
        # j = 1: closed form arctan(1/sqrt(alpha)) / pi
        assert values[-1] == pytest.approx(math.atan(math.sqrt(9999)) / math.pi, abs=1e-10)

    @pytest.mark.parametrize("j,k,n", list(valid_queries(10, j_min=1)))
    def test_range(self, j, k, n):
        assert 0 < t_bound(j, k, n) <= 0.5


class TestBounds:
    def test_123(self):
        assert f_lower_bound((1, 2, 3)) == pytest.approx(1 / t_bound(1, 2, 3), rel=1e-9)

    def test_upper_examples(self):
        assert f_upper_bound((0, 1, 5)) == 10
        assert f_upper_bound((0, 2, 3)) == 12 >= f0_exact(2, 3)
        for n in range(3, 20):
            assert f_upper_bound((n - 2, n - 1, n)) == 2 * n

    def test_upper_overflow(self):
        with pytest.raises(RangeError):
            f_upper_bound((0, 600, 1200))

    def test_binomials_exact(self):
        assert formulas.binomial(64, 32) == 1832624140942590534
        assert formulas.face_count(32, 64) == 2**32 * 1832624140942590534

    @pytest.mark.parametrize("j,k,n", list(valid_queries(14, j_min=1)))
    def test_ordering(self, j, k, n):
        lower, upper = f_bounds((j, k, n))
        assert lower <= upper

    def test_j0_bounds_use_exact_value(self):
        assert f_bounds((0, 2, 3)).lower == pytest.approx(F023, abs=1e-8)

    def test_lower_rejects_vertices(self):
        with pytest.raises(DomainError):
            f_lower_bound((0, 2, 3))

    def test_codim_lower_bound_approaches_2n(self):
        ratios = [f_lower_bound((n - 2, n - 1, n)) / (2 * n) for n in (8, 16, 32, 64)]
        assert all(a < b for a, b in zip(ratios, ratios[1:]))
        assert ratios[-1] < 1


class TestCodimAsymptotic:
    def test_values(self):
        assert f_codim_asymptotic(1, 2, 20) == 40
        assert f_codim_asymptotic(1, 3, 10) == 200

    def test_lower_bound_ratio_trend(self):
        ratios = [f_lower_bound((n - 2, n - 1, n)) / f_codim_asymptotic(1, 2, n) for n in (8, 16, 32, 64)]
        assert all(a < b for a, b in zip(ratios, ratios[1:]))

    def test_domain(self):
        with pytest.raises(DomainError):
            f_codim_asymptotic(2, 2, 5)


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 40).flatmap(lambda n: st.tuples(st.just(n), st.integers(2, n - 1))))
def test_vertex_count_sandwich_property(nk):
    n, k = nk
    value = f0_exact(k, n)
    assert 2**k - 1e-8 <= value <= 2**k * math.comb(n, k)
