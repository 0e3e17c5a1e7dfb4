import json
import math
from fractions import Fraction
from importlib import resources

import mpmath as mp
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fracmt import exponents as ex
from fracmt.errors import ConvergenceError, DomainError
from fracmt.exponents import FractionalParams

ZETA3 = 1.2020569031595942


class TestParams:
    def test_p_is_quotient(self):
        P = FractionalParams(3, 0.7)
        assert P.p == 3 / 0.7

    @pytest.mark.parametrize("s", [0.0, 1.0, -0.2, 1.5])
    def test_bad_s_mentions_constraint(self, s):
        with pytest.raises(DomainError, match="sp = N"):
            FractionalParams(2, s)

    def test_bad_dim(self):
        with pytest.raises(DomainError):
            FractionalParams(0, 0.5)
        with pytest.raises(DomainError):
            FractionalParams(2.5, 0.5)


class TestVolumes:
    def test_low_dims(self):
        assert ex.unit_ball_volume(1) == pytest.approx(2.0, rel=1e-15)
        assert ex.unit_ball_volume(2) == pytest.approx(math.pi, rel=1e-15)
        assert ex.unit_ball_volume(3) == pytest.approx(4 * math.pi / 3, rel=1e-15)

    @pytest.mark.parametrize("dim,expect", [(2, 4 * math.pi ** 2), (3, 16 * math.pi ** 2),
                                            (4, 4 * math.pi ** 4), (5, 64 * math.pi ** 4 / 9)])
    def test_reduction_constant(self, dim, expect):
        assert ex.sphere_area(dim) ** 2 == pytest.approx(expect, rel=1e-14)

    def test_domain(self):
        with pytest.raises(DomainError):
            ex.unit_ball_volume(0)


class TestSeries:
    def test_direct_n2_p4(self):
        r = ex.series_direct(FractionalParams(2, 0.5), 1e-12)
        assert r.value == pytest.approx(ZETA3 / 16, rel=1e-12)
        assert r.method == "direct"

    def test_direct_n1_p2(self):
        r = ex.series_direct(FractionalParams(1, 0.5), 1e-12)
        assert r.value == pytest.approx(math.pi ** 2 / 8, rel=1e-12)

    def test_plain_mode_rigorous_bound(self):
        P = FractionalParams(2, 0.5)
        r = ex.series_direct(P, 1e-8, accelerate=False)
        assert abs(r.value - ZETA3 / 16) <= r.tail_bound + 1e-15
        assert r.tail_bound <= 1e-8 * r.value

    def test_plain_mode_gives_up_near_p_equal_n(self):
        with pytest.raises(ConvergenceError, match="Hurwitz"):
            ex.series_direct(FractionalParams(2, 0.999), 1e-10, accelerate=False)

    def test_rel_tol_domain(self):
        with pytest.raises(DomainError):
            ex.series_direct(FractionalParams(2, 0.5), 0.5)

    def test_pole_limit(self):
        # (p - N) S -> 2^-N as p -> N
        for dim in (2, 3):
            hs = [10.0 ** -k for k in range(1, 5)]
            vals = [h * ex.series_hurwitz_closed(FractionalParams.from_p(dim, dim + h)).value
                    for h in hs]
            assert ex.extrapolate_limit(hs, vals) == pytest.approx(2.0 ** -dim, rel=1e-6)

    def test_hurwitz_n2(self):
        P = FractionalParams(2, 0.5)
        assert ex.series_hurwitz_closed(P).value == pytest.approx(
            ex.series_direct(P).value, rel=1e-11)

    def test_n3_closed_display(self):
        P = FractionalParams(3, 0.5)
        p = P.p
        zeta = lambda x: float(mp.zeta(x))
        closed = 2 ** -(p + 1) * ((2 ** (p - 2) - 1) * zeta(p - 2) - 0.25 * (2 ** p - 1) * zeta(p))
        assert 0.5 * ex.series_hurwitz_closed(P).value == pytest.approx(closed, rel=1e-12)

    def test_n4_closed_display(self):
        P = FractionalParams(4, 0.5)
        p = P.p
        closed = (float(mp.zeta(p - 3)) - float(mp.zeta(p - 1))) / (3 * 2 ** (p + 1))
        assert ex.series_hurwitz_closed(P).value / 6 == pytest.approx(closed, rel=1e-12)

    @pytest.mark.parametrize("dim", [2, 3, 4, 5, 6])
    @pytest.mark.parametrize("s", [0.3, 0.5, 0.7, 0.9])
    def test_method_agreement(self, dim, s):
        P = FractionalParams(dim, s)
        d = ex.series_direct(P).value
        h = ex.series_hurwitz_closed(P).value
        assert abs(d - h) <= 1e-9 * abs(h)

    @pytest.mark.parametrize("dim", [1, 2, 3, 4])
    def test_small_n_agreement(self, dim):
        P = FractionalParams(dim, 0.6)
        assert ex.series_small_n_closed(P).value == pytest.approx(
            ex.series_hurwitz_closed(P).value, rel=1e-11)

    def test_small_n_domain(self):
        with pytest.raises(DomainError):
            ex.series_small_n_closed(FractionalParams(5, 0.5))

    def test_hurwitz_rejects_low_zeta_argument(self):
        # N = 3 with p just above 3 needs zeta(p - 2) near its pole
        with pytest.raises(DomainError):
            ex.series_hurwitz_closed(FractionalParams.from_p(3, 3.0 + 1e-10))

    @pytest.mark.parametrize("dim", [1, 2, 3, 4, 5, 6, 7])
    def test_coefficients_exact(self, dim):
        coeffs = ex.factorial_ratio_coefficients(dim)
        for k in range(21):
            y = Fraction(k) + Fraction(dim, 2)
            lhs = sum(b * y ** d for d, b in enumerate(coeffs))
            assert lhs == math.factorial(dim + k - 1) // math.factorial(k)

    def test_tail_bound_against_reference(self):
        mp.mp.dps = 30
        for dim, s in [(2, 0.5), (3, 0.7), (5, 0.9), (4, 0.3)]:
            P = FractionalParams(dim, s)
            p = mp.mpf(dim) / mp.mpf(s)
            coeffs = ex.factorial_ratio_coefficients(dim)
            ref = 2 ** -p * mp.fsum(mp.mpf(b.numerator) / b.denominator * mp.zeta(p - d, mp.mpf(dim) / 2)
                                    for d, b in enumerate(coeffs) if b)
            r = ex.series_direct(P)
            assert abs(r.value - ref) <= r.tail_bound + 1e-15 * abs(ref)


class TestConstants:
    def test_gamma_n2(self):
        g = ex.gamma_constant(FractionalParams(2, 0.5))
        assert g.gamma_value == pytest.approx(6 * math.pi ** 2 * ZETA3, rel=1e-12)
        assert g.gamma_value == pytest.approx(71.183, abs=5e-4)

    def test_gamma_n1(self):
        g = ex.gamma_constant(FractionalParams(1, 0.5))
        assert g.gamma_value == pytest.approx(2 * math.pi ** 2, rel=1e-12)

    def test_gamma_assembly(self):
        P = FractionalParams(3, 0.4)
        g = ex.gamma_constant(P)
        pref = 2 * ex.sphere_area(3) ** 2 * math.gamma(P.p + 1) / 6
        assert g.gamma_value == pytest.approx(pref * g.series.value, rel=1e-13)

    def test_alpha_star_values(self):
        assert ex.alpha_star(FractionalParams(1, 0.5)) == pytest.approx(2 * math.pi ** 2, rel=1e-10)
        expect = 2 * (6 * math.pi ** 2 * ZETA3) ** (1 / 3)
        assert ex.alpha_star(FractionalParams(2, 0.5)) == pytest.approx(expect, rel=1e-12)
        assert ex.alpha_star(FractionalParams(2, 0.5)) == pytest.approx(8.289, abs=1e-3)

    def test_methods_agree_on_gamma(self):
        P = FractionalParams(4, 0.7)
        vals = [ex.gamma_constant(P, m).gamma_value for m in ("direct", "hurwitz", "small_n")]
        assert max(vals) / min(vals) - 1 < 1e-9

    def test_unknown_method(self):
        with pytest.raises(DomainError):
            ex.gamma_constant(FractionalParams(2, 0.5), "spectral")

    @given(st.integers(1, 6), st.floats(0.05, 0.95))
    def test_alpha_scaling(self, dim, s):
        # alpha* = N g^(s/(N-s)); doubling g multiplies alpha* by 2^(s/(N-s))
        P = FractionalParams(dim, s)
        g = ex.gamma_constant(P).gamma_value
        e = s / (dim - s)
        assert dim * (2 * g) ** e / ex.alpha_star(P) == pytest.approx(2 ** e, rel=1e-12)


class TestLimits:
    @pytest.mark.parametrize("dim", [2, 3])
    def test_gamma_limit(self, dim):
        lim = ex.extrapolated_gamma_limit(dim)
        assert lim == pytest.approx(ex.gamma_limit_s_to_1(dim), rel=1e-2)

    def test_gamma_limit_n2_is_pi_squared(self):
        assert ex.gamma_limit_s_to_1(2) == pytest.approx(math.pi ** 2, rel=1e-15)

    @pytest.mark.parametrize("dim", [2, 3, 4])
    def test_scaled_gamma_bounded_near_one(self, dim):
        lim = ex.gamma_limit_s_to_1(dim)
        for s in (0.95, 0.97, 0.99, 0.995):
            val = (1 - s) * ex.gamma_constant(FractionalParams(dim, s)).gamma_value
            assert 0.5 * lim <= val <= 2 * lim

    def test_alpha_limit(self):
        assert ex.extrapolated_alpha_limit(2) == pytest.approx(2 * math.pi ** 2, rel=1e-2)

    def test_bbm(self):
        assert ex.bbm_constant(2, 2) == pytest.approx(math.pi / 2, rel=1e-14)

    @pytest.mark.parametrize("p", [1.0, 2.0, 3.5, 7.0])
    def test_bbm_circle(self, p):
        ref = float(mp.quad(lambda t: abs(mp.cos(t)) ** p, [0, mp.pi / 2, 3 * mp.pi / 2, 2 * mp.pi])) / p
        assert ex.bbm_constant(p, 2) == pytest.approx(ref, rel=1e-12)
        assert ex.bbm_constant(p, 2) == pytest.approx(
            2 / p * float(mp.beta((p + 1) / 2, 0.5)), rel=1e-12)

    def test_bbm_sphere(self):
        # N = 3: int_{S^2} |cos theta|^p = 4 pi / (p + 1)
        for p in (1.0, 2.0, 4.5):
            assert ex.bbm_constant(p, 3) == pytest.approx(4 * math.pi / ((p + 1) * p), rel=1e-13)

    def test_bbm_consistency_with_moser(self):
        # the s -> 1 limit of (1-s) alpha*_{s,2} is Moser's 4 pi times K(2,2)
        assert 2 * math.pi ** 2 / ex.bbm_constant(2, 2) == pytest.approx(
            ex.moser_classical_exponent(2), rel=1e-13)
        assert ex.moser_classical_exponent(2) == pytest.approx(4 * math.pi, rel=1e-14)

    def test_bbm_domain(self):
        with pytest.raises(DomainError):
            ex.bbm_constant(0.5, 2)
        with pytest.raises(DomainError):
            ex.bbm_constant(2, 1)


def _golden():
    text = resources.files("fracmt").joinpath("data/golden.json").read_text()
    return json.loads(text)["entries"]


@pytest.mark.parametrize("entry", _golden(), ids=lambda e: f"N{e['N']}-s{e['s']}")
def test_golden_regression(entry):
    P = FractionalParams(entry["N"], entry["s"])
    tol = entry["tolerance"]
    assert ex.gamma_constant(P).gamma_value == pytest.approx(entry["gamma"], rel=tol)
    assert ex.alpha_star(P) == pytest.approx(entry["alpha_star"], rel=tol)
