from fractions import Fraction

import pytest

from oagw.elements import GAMMA, LAMBDA, element, lambda_c_unit, unit, zero
from oagw.embeddings import (
    Embedding,
    ExperimentalFeature,
    apply,
    descriptor_window,
    in_image,
    perturb_into_image,
    preimage,
)
from oagw.positions import (
    CRITICAL_CIRCLE,
    g1_circle,
    g1_square,
    g2_circle,
    g2_square,
)
from oagw.sampling import case_rng, random_element, random_positive

S00 = g1_square(0, 0)
F1, F2 = Embedding.F1, Embedding.F2


class TestApply:
    def test_f1_head_square_to_last_g2_square(self):
        a = element(LAMBDA, {S00: {0: 2, 3: -1}})
        assert apply(F1, a) == element(LAMBDA, {g2_square(0): {0: 2, 3: -1}})

    def test_f1_shifts_g2(self):
        a = element(LAMBDA, {g2_circle(0): Fraction(1, 3)})
        assert apply(F1, a) == element(LAMBDA, {g2_circle(1): Fraction(1, 3)})

    def test_f1_fixes_tail(self):
        a = element(LAMBDA, {g1_circle(2): Fraction(5)})
        assert apply(F1, a) == a

    def test_f1_shifts_head_block_squares_down(self):
        a = element(LAMBDA, {g1_square(0, 4): {0: 1}})
        assert apply(F1, a) == element(LAMBDA, {g1_square(0, 3): {0: 1}})

    def test_f2_positions(self):
        assert apply(F2, element(LAMBDA, {g2_square(1): {0: 1}})) == element(
            LAMBDA, {g2_square(0): {0: 1}}
        )
        assert apply(F2, element(LAMBDA, {g2_circle(0): Fraction(1)})) == element(
            LAMBDA, {g1_circle(0): Fraction(1)}
        )
        assert apply(F2, element(LAMBDA, {g2_square(0): {0: 1}})) == element(
            LAMBDA, {g1_square(1, 0): {0: 1}}
        )
        assert apply(F2, element(LAMBDA, {S00: {0: 1}})) == element(
            LAMBDA, {g1_square(1, 1): {0: 1}}
        )
        assert apply(F2, element(LAMBDA, {g1_circle(0): Fraction(1)})) == element(
            LAMBDA, {g1_circle(1): Fraction(1)}
        )
        assert apply(F2, element(LAMBDA, {g1_square(2, 1): {0: 1}})) == element(
            LAMBDA, {g1_square(3, 1): {0: 1}}
        )

    def test_f2_gamma_needs_experimental_flag(self):
        a = element(GAMMA, {g2_square(0): 1})
        with pytest.raises(ExperimentalFeature):
            apply(F2, a)
        apply(F2, a, experimental=True)
        with pytest.raises(ExperimentalFeature):
            in_image(F2, a)

    @pytest.mark.parametrize("emb", [F1, F2])
    @pytest.mark.parametrize("construction", [LAMBDA, GAMMA])
    def test_homomorphism_and_order(self, emb, construction):
        for i in range(300):
            rng = case_rng(17, i)
            a = random_element(rng, construction)
            b = random_element(rng, construction)
            fa = apply(emb, a, experimental=True)
            fb = apply(emb, b, experimental=True)
            assert apply(emb, a + b, experimental=True) == fa + fb
            assert (a < b) == (fa < fb)
            assert preimage(emb, fa, experimental=True) == a


class TestImage:
    def test_f1_image_is_zero_critical_circle(self):
        inside = element(LAMBDA, {g2_square(0): {0: 1}, g1_circle(0): Fraction(1)})
        outside = inside + unit(LAMBDA, CRITICAL_CIRCLE, Fraction(2))
        assert in_image(F1, inside)
        assert not in_image(F1, outside)
        assert preimage(F1, outside) is None

    def test_f1_preimage_examples(self):
        assert preimage(F1, unit(LAMBDA, CRITICAL_CIRCLE, Fraction(1))) is None
        assert preimage(F1, element(LAMBDA, {g2_square(0): {0: 3}})) == element(
            LAMBDA, {S00: {0: 3}}
        )

    def test_f2_image_omits_block0_squares(self):
        assert preimage(F2, element(LAMBDA, {g1_square(0, 5): {0: 1}})) is None
        assert not in_image(F2, element(LAMBDA, {g1_square(0, 5): {0: 1}}))
        assert in_image(F2, element(LAMBDA, {g1_circle(0): Fraction(1)}))

    @pytest.mark.parametrize("emb", [F1, F2])
    def test_image_characterization_random(self, emb):
        for i in range(300):
            rng = case_rng(23, i)
            c = random_element(rng, LAMBDA)
            if emb is F1:
                expected = c.value_at(CRITICAL_CIRCLE) is None
            else:
                expected = not any(
                    pos.area == "G1" and pos.index == 0 and pos.is_square
                    for pos, _ in c.entries
                )
            assert in_image(emb, c) == expected
            assert (preimage(emb, c) is not None) == expected


class TestPerturb:
    def test_documented_case(self):
        t = element(LAMBDA, {g2_square(0): {0: 1}})
        eps = element(LAMBDA, {g1_square(5, 0): {0: 1}})
        t2 = perturb_into_image(t, eps, [(2, t)])
        assert t2 == t + element(LAMBDA, {g1_square(6, 0): {0: 1}})
        d = t2 - t
        assert d.sign() > 0 and d < eps
        assert not (t2 - t).is_divisible(2)

    def test_zero_start(self):
        eps = element(LAMBDA, {g2_circle(1): Fraction(1)})
        t2 = perturb_into_image(zero(LAMBDA), eps, [])
        assert in_image(Embedding.F1, t2)
        assert t2.abs() < eps

    def test_requires_image(self):
        with pytest.raises(ValueError):
            perturb_into_image(unit(LAMBDA, CRITICAL_CIRCLE, Fraction(1)), unit(LAMBDA, S00, {0: 1}), [])

    def test_requires_positive_eps(self):
        with pytest.raises(ValueError):
            perturb_into_image(zero(LAMBDA), zero(LAMBDA), [])

    def test_many_constraints(self):
        for i in range(100):
            rng = case_rng(31, i)
            t = apply(F1, random_element(rng, LAMBDA))
            eps = random_positive(rng, LAMBDA)
            constraints = [
                (rng.choice([2, 3, 5]), random_element(rng, LAMBDA)) for _ in range(3)
            ]
            t2 = perturb_into_image(t, eps, constraints)
            assert in_image(F1, t2)
            assert (t2 - t).abs() < eps
            for n, r in constraints:
                assert not (t2 - r).is_divisible(n)


class TestDescriptorWindow:
    def test_slot0_example(self):
        a = element(LAMBDA, {S00: {0: 3}})
        lo, hi = descriptor_window(a, 2)
        assert lo == element(LAMBDA, {S00: {0: 3, 1: -1}})
        assert hi == element(LAMBDA, {S00: {0: 3, 1: 1}})

    def test_deeper_slot_example(self):
        a = element(LAMBDA, {S00: {0: 2, 1: 1}})
        lo, hi = descriptor_window(a, 2)
        assert lo == element(LAMBDA, {S00: {0: 2, 1: 1, 2: -1}})
        assert hi == element(LAMBDA, {S00: {0: 2, 1: 1, 2: 1}})

    def test_divisible_rejected(self):
        with pytest.raises(ValueError):
            descriptor_window(unit(LAMBDA, g2_circle(0), Fraction(1)), 2)

    def test_window_pins_descriptor(self):
        for i in range(150):
            rng = case_rng(37, i)
            a = random_element(rng, LAMBDA)
            n = rng.choice([2, 3])
            d = a.lead_mod(n)
            if d is None:
                continue
            lo, hi = descriptor_window(a, n)
            assert in_image(F1, lo) and in_image(F1, hi)
            assert lo < hi
            lead = a.lead_descriptor()
            if lead is not None and lead.position == d.position:
                # no divisible support left of the obstruction: a sits inside
                assert lo < a < hi
            # probe strictly inside the window
            probes = [
                lo + lambda_c_unit(g1_square(7, 0), 0),
                hi - lambda_c_unit(g1_square(7, 0), 0),
            ]
            for u in probes:
                assert lo < u < hi
                assert u.lead_mod(n) == d
