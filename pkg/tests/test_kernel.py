import cmath

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellipsum import (
    DegenerateParameters,
    Nome,
    NomeOutOfRange,
    NonzeroRequired,
    TruncationPolicy,
    eval_E,
    pochhammer_e,
    pochhammer_multi,
    pochhammer_partition,
    theta1,
)
from ellipsum.kernel import CompensatedSum, binom2, pochhammer_frac

from conftest import rel_err
from oracles import theta_sine_series, truncated_product_E

# Frozen from the independent 50-term product oracle.
E_HALF_AT_P01 = 0.3695093618569191
# Frozen from the 31-term sine series oracle.
THETA_03_AT_P02 = 0.3534305437476245 + 0.0j


def complex_in(lo, hi):
    return st.builds(
        lambda m, ph: m * cmath.exp(1j * ph),
        st.floats(lo, hi), st.floats(0.0, 2.0 * cmath.pi))


class TestEvalE:
    def test_classical_case_is_linear(self):
        assert eval_E(0.5, 0) == 0.5
        assert eval_E(2.0 + 1.0j, 0.0) == -1.0 - 1.0j

    def test_reflection_at_fixed_point(self):
        x, p = 0.7 + 0.2j, 0.1
        assert rel_err(eval_E(x, p), -x * eval_E(1 / x, p)) <= 1e-12

    def test_against_truncated_product_oracle(self):
        assert abs(eval_E(0.5, 0.1) - E_HALF_AT_P01) <= 1e-14
        assert abs(eval_E(0.5, 0.1) - truncated_product_E(0.5, 0.1)) <= 1e-14

    def test_rejects_zero_argument(self):
        with pytest.raises(NonzeroRequired):
            eval_E(0.0, 0.1)

    def test_rejects_nome_outside_disk(self):
        with pytest.raises(NomeOutOfRange):
            eval_E(0.5, 1.0)

    def test_zero_at_one_is_exact(self):
        assert eval_E(1.0, 0.37) == 0.0

    def test_truncation_adapts_to_large_arguments(self):
        # |x| >> 1 needs more factors than the |x| ~ 1 default.
        x, p = 1e8 + 0.0j, 0.3
        loose = eval_E(x, p, TruncationPolicy(max_terms=5000, tail_bound=1e-18))
        tight = eval_E(x, p, TruncationPolicy(max_terms=5000, tail_bound=1e-30))
        assert rel_err(loose, tight) <= 1e-12

    @given(complex_in(0.4, 2.2), complex_in(0.02, 0.4))
    @settings(max_examples=150, deadline=None)
    def test_reflection_property(self, x, p):
        ex = eval_E(x, p)
        assert abs(ex + x * eval_E(1 / x, p)) <= 1e-10 * max(1.0, abs(ex))
        assert abs(ex - eval_E(p / x, p)) <= 1e-10 * max(1.0, abs(ex))

    @given(complex_in(0.4, 2.2), complex_in(0.02, 0.4),
           st.integers(min_value=-2, max_value=2).filter(lambda k: k != 0))
    @settings(max_examples=150, deadline=None)
    def test_quasi_periodicity_property(self, x, p, k):
        # Scale-aware comparison: x may land exactly on a zero of E.
        lhs = eval_E(x, p)
        rhs = (-x) ** k * p ** binom2(k) * eval_E(x * p ** k, p)
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs), abs(rhs))


class TestPochhammer:
    def test_single_factor_classical(self):
        assert pochhammer_e(2.0, Nome(0.5, 0.0), 1) == -1.0

    def test_empty_product(self, rnd):
        assert pochhammer_e(rnd(), Nome(rnd(0.3, 0.8), rnd(0.05, 0.3)), 0) == 1.0

    def test_negative_index_matches_reciprocal(self):
        nome = Nome(0.5, 0.1)
        lhs = pochhammer_e(0.3, nome, -2)
        rhs = 1.0 / pochhammer_e(0.3 * 0.5 ** -2, nome, 2)
        assert rel_err(lhs, rhs) <= 1e-13

    def test_negative_index_pole_raises(self):
        # (q; q, p)_{-1} = 1 / E(1) is a pole.
        nome = Nome(0.5, 0.1)
        with pytest.raises(DegenerateParameters):
            pochhammer_e(nome.q, nome, -1)

    def test_min_factor_guard(self):
        nome = Nome(0.5, 0.1)
        with pytest.raises(DegenerateParameters):
            pochhammer_e(1.0, nome, 2, min_factor=1e-8)

    def test_fraction_form_never_divides(self):
        nome = Nome(0.5, 0.1)
        num, den = pochhammer_frac(nome.q, nome, -1)
        assert num == 1.0 and den == 0.0

    def test_multi_singleton(self, rnd):
        nome = Nome(rnd(0.3, 0.8), rnd(0.05, 0.3))
        a = rnd()
        assert pochhammer_multi([a], nome, 3) == pochhammer_e(a, nome, 3)

    def test_multi_classical_pair(self):
        assert pochhammer_multi([2.0, 3.0], Nome(0.5, 0.0), 1) == 2.0

    def test_multi_matches_flat_product(self, rnd):
        q, p = rnd(0.3, 0.8), rnd(0.05, 0.3)
        a1, a2 = rnd(), rnd()
        expected = 1.0
        for a in (a1, a2):
            for k in range(3):
                expected *= truncated_product_E(a * q ** k, p)
        got = pochhammer_multi([a1, a2], Nome(q, p), 3)
        assert rel_err(got, expected) <= 1e-12

    def test_multi_requires_parameters(self):
        with pytest.raises(ValueError):
            pochhammer_multi([], Nome(0.5, 0.1), 1)

    @given(st.integers(min_value=-4, max_value=6))
    @settings(max_examples=60, deadline=None)
    def test_classical_reduction_property(self, n):
        a, q = 0.37 + 0.61j, 0.55 - 0.1j
        got = pochhammer_e(a, Nome(q, 0.0), n)
        if n >= 0:
            want = 1.0
            for k in range(n):
                want *= 1 - a * q ** k
        else:
            want = 1.0
            for k in range(-n):
                want /= 1 - a * q ** (n + k)
        assert rel_err(got, want) <= 1e-12


class TestPartitionIndexed:
    def test_empty_partition(self, rnd):
        nome = Nome(rnd(0.3, 0.8), rnd(0.05, 0.3))
        assert pochhammer_partition(rnd(), nome, rnd(), (0, 0, 0)) == 1.0

    def test_single_row_reduces(self, rnd):
        nome = Nome(rnd(0.3, 0.8), rnd(0.05, 0.3))
        a = rnd()
        assert pochhammer_partition(a, nome, rnd(), (3,)) == \
            pochhammer_e(a, nome, 3)

    def test_two_rows_against_explicit_product(self):
        nome = Nome(0.5, 0.1)
        got = pochhammer_partition(0.4, nome, 0.9, (2, 1))
        want = pochhammer_e(0.4, nome, 2) * pochhammer_e(0.4 / 0.9, nome, 1)
        assert rel_err(got, want) <= 1e-13
        explicit = truncated_product_E(0.4, 0.1) * \
            truncated_product_E(0.4 * 0.5, 0.1) * \
            truncated_product_E(0.4 / 0.9, 0.1)
        assert rel_err(got, explicit) <= 1e-12

    def test_rejects_zero_deformation(self):
        with pytest.raises(NonzeroRequired):
            pochhammer_partition(0.4, Nome(0.5, 0.1), 0.0, (1,))


class TestTheta:
    def test_vanishes_at_origin(self):
        assert abs(theta1(0.0, 0.2)) == 0.0

    def test_odd(self, rnd):
        for _ in range(10):
            z = complex(rnd(0.1, 2.5).real, rnd(0.05, 0.3).imag)
            p = rnd(0.05, 0.45)
            assert rel_err(theta1(-z, p), -theta1(z, p)) <= 1e-12

    def test_product_matches_sine_series_at_fixed_point(self):
        got = theta1(0.3, 0.2)
        assert abs(got - THETA_03_AT_P02) <= 1e-13
        assert rel_err(got, theta_sine_series(0.3, 0.2)) <= 1e-13

    def test_product_matches_sine_series_random(self, rnd):
        for _ in range(25):
            p = rnd(0.05, 0.5)
            z = complex(rnd(0.1, 3.0).real, 0.3 * rnd(0.1, 1.0).real)
            assert rel_err(theta1(z, p), theta_sine_series(z, p)) <= 1e-10

    def test_rejects_nome_outside_disk(self):
        with pytest.raises(NomeOutOfRange):
            theta1(0.3, 1.2)


class TestNome:
    def test_rejects_zero_base(self):
        with pytest.raises(NonzeroRequired):
            Nome(0.0, 0.1)

    def test_rejects_unit_nome(self):
        with pytest.raises(NomeOutOfRange):
            Nome(0.5, 1.0 + 0.0j)

    def test_classical_nome_allowed(self):
        assert Nome(0.5, 0.0).p == 0.0


class TestCompensatedSum:
    def test_recovers_cancellation(self):
        acc = CompensatedSum()
        for x in (1.0, 1e-16, -1.0):
            acc.add(complex(x, 0.0))
        assert acc.value() == 1e-16 + 0.0j

    @given(st.lists(st.complex_numbers(max_magnitude=1e6, allow_nan=False,
                                       allow_infinity=False), max_size=40))
    @settings(max_examples=60, deadline=None)
    def test_matches_plain_sum_to_roundoff(self, values):
        acc = CompensatedSum()
        for z in values:
            acc.add(z)
        plain = sum(values, 0.0 + 0.0j)
        assert abs(acc.value() - plain) <= 1e-9 * (1 + abs(plain))
