"""Transfer audits between the full groups and embedding images."""

from fractions import Fraction

import pytest

from oagw.elements import GAMMA, LAMBDA, element, unit
from oagw.embeddings import Embedding
from oagw.formulas import parse_formula
from oagw.fragments import FragmentConfig
from oagw.positions import g1_square, g2_circle, g2_square
from oagw.suites import closure_audit, gen_corpus


def test_empty_corpus():
    report = closure_audit(Embedding.F1, LAMBDA, [], FragmentConfig())
    assert report.cases == []
    assert report.ok


def test_lambda_existential_corpus_transfers():
    corpus = []
    for i, text in enumerate(gen_corpus("exists", 12, seed=5)):
        corpus.append((parse_formula(text, LAMBDA), {}))
    pool = (
        element(LAMBDA, {g2_square(0): {0: 1}}),
        element(LAMBDA, {g2_square(1): {1: 1}}),
        element(LAMBDA, {g1_square(0, 0): {0: 1}}),
        element(LAMBDA, {g1_square(4, 0): {0: 1}}),
        element(LAMBDA, {g2_circle(1): Fraction(1, 2)}),
    )
    report = closure_audit(
        Embedding.F1, LAMBDA, corpus, FragmentConfig(2, pool, 900, 0)
    )
    assert report.counts["fail"] == 0


def test_gamma_window_sentence_flagged():
    # parameters straddle the critical circle; the only witnesses carry it
    c = "{G2[1].s: 1}"
    b = "{G2[0].s: 1}"
    text = (
        f"E x. (0 < x & (desc_lt(2, {c}, x) | desc_lt(3, {c}, x)))"
        f" & (desc_lt(2, x, {b}) | desc_lt(3, x, {b}))"
    )
    f = parse_formula(text, GAMMA)
    pool = (
        unit(GAMMA, g2_circle(0), 1),  # the witness the image cannot reach
        unit(GAMMA, g2_circle(1), 1),
        unit(GAMMA, g1_square(0, 0), 1),
    )
    report = closure_audit(Embedding.F1, GAMMA, [(f, {})], FragmentConfig(2, pool, 600, 0))
    assert report.counts["fail"] == 1
    assert not report.ok


def test_parameters_must_lie_inside():
    f = parse_formula("E x. x < y", LAMBDA)
    bad = {"y": unit(LAMBDA, g2_circle(0), Fraction(1))}
    with pytest.raises(ValueError):
        closure_audit(Embedding.F1, LAMBDA, [(f, bad)], FragmentConfig())


def test_lambda_window_sentence_transfers():
    # in the polynomial squares the same schema keeps image witnesses
    c = "{G2[1].s: 1}"
    b = "{G2[0].s: 1*c2}"
    text = f"E x. (0 < x & desc_lt(2, {c}, x)) & desc_lt(2, x, {b})"
    f = parse_formula(text, LAMBDA)
    pool = (
        unit(LAMBDA, g2_circle(0), Fraction(1)),
        element(LAMBDA, {g2_square(0): {1: 1}}),
        element(LAMBDA, {g1_square(0, 0): {0: 1}}),
    )
    report = closure_audit(Embedding.F1, LAMBDA, [(f, {})], FragmentConfig(2, pool, 600, 0))
    assert report.counts["fail"] == 0
    assert report.counts["pass"] == 1
