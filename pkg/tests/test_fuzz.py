from __future__ import annotations

import random

import pytest

from app.core.errors import ParseError, PreconditionError, UncertifiedError
from app.core.ordering import Ordering, Sign
from app.services.contexts import SELECTORS, build_context, matrix_endomorphism
from app.services.extension import Invariance
from app.services.fuzz import ALL_LAWS, Law, draw_triple, parse_laws, run_fuzz, shrink
from app.services.words import A, B, X, Y, Word, abelianize, xgen
from app.services.zn_order import IntMatrix2
from app.utils.sampling import WordDistribution, trial_rng

FIGURE8_WORDS = ["a b", "b a b", "a^2 b^-1", "b a^-1"]


# sampling


def test_trial_streams_are_reproducible():
    dist = WordDistribution(alphabet=(X, Y))
    first = [dist.sample(trial_rng(7, i)) for i in range(20)]
    again = [dist.sample(trial_rng(7, i)) for i in range(20)]
    assert first == again
    assert first != [dist.sample(trial_rng(8, i)) for i in range(20)]


def test_sampled_syllables_respect_bounds():
    dist = WordDistribution(alphabet=(A,), indexed=("x",), max_exponent=2, index_range=1)
    rng = random.Random(0)
    for _ in range(500):
        assert 1 <= abs(dist._exponent(rng)) <= 2
        label = dist._label(rng)
        if label.is_indexed:
            assert all(-1 <= i <= 1 for i in label.index)


def test_mean_syllable_count():
    dist = WordDistribution(alphabet=(A, B), mean_syllables=4.0)
    rng = random.Random(1)
    counts = [dist._syllable_count(rng) for _ in range(4000)]
    assert 3.6 < sum(counts) / len(counts) < 4.4


# contexts


def test_selectors_resolve():
    for selector in SELECTORS:
        if selector in ("z2-eigen", "bundle", "bundle:period6", "bundle:swap"):
            continue
        assert build_context(selector).selector == selector


@pytest.mark.parametrize("selector", ["free3", "bundle:nope", "z2-eigen", "bundle"])
def test_bad_selectors(selector):
    with pytest.raises(ParseError):
        build_context(selector)


@pytest.mark.parametrize("selector", ["bundle:period6", "bundle:swap"])
def test_rejected_presets(selector):
    with pytest.raises(UncertifiedError):
        build_context(selector)


def test_z2_eigen_context():
    ctx = build_context("z2-eigen", matrix=IntMatrix2(2, 1, 1, 1))
    assert ctx.invariance is Invariance.BI
    assert ctx.decide(ctx.parse("a")).details["order"] == "eigen(2,1;1,1)"
    with pytest.raises(UncertifiedError):
        build_context("z2-eigen", matrix=IntMatrix2(-2, 1, -1, 0))


def test_matrix_endomorphism_abelianizes_to_matrix():
    m = IntMatrix2(2, 1, 1, 1)
    endo = matrix_endomorphism(m)
    w = Word(((A, 3), (B, -2), (A, 1)))
    assert abelianize(endo(w), (A, B)) == m.apply(abelianize(w, (A, B)))


def test_free2_aliases():
    ctx = build_context("free2-lex")
    assert ctx.parse("a b") == ctx.parse("x[0,0] x[1,0]")
    assert ctx.compare(ctx.parse("1"), ctx.parse("a")) is Ordering.LT


def test_custom_bundle_matches_preset():
    custom = build_context("bundle", monodromy=FIGURE8_WORDS)
    preset = build_context("bundle:figure8")
    assert custom.selector == "bundle:custom"
    for left, right in [("b", "1"), ("a b a^-1 b^-1", "1"), ("t", "a^5")]:
        u, v = custom.parse(left), custom.parse(right)
        assert custom.compare(u, v) is preset.compare(u, v)


def test_parse_reports_line():
    ctx = build_context("klein")
    with pytest.raises(ParseError, match="line 3"):
        ctx.parse("x z", line=3)


def test_klein_notes_left_only():
    ctx = build_context("klein")
    assert ctx.invariance is Invariance.LEFT
    assert any("left-invariant" in note for note in ctx.notes)


def test_surface_explain():
    ctx = build_context("surf3p2")
    decision = ctx.explain(ctx.parse("c^2"), ctx.parse("a b a^-1 b^-1"))
    assert decision.sign is Sign.ZERO


# laws


def test_parse_laws():
    assert parse_laws("all") == ALL_LAWS
    assert parse_laws("right-inv, trichotomy,right-inv") == (Law.RIGHT_INV, Law.TRICHOTOMY)
    with pytest.raises(ParseError):
        parse_laws("associativity")
    with pytest.raises(ParseError):
        parse_laws(" , ")


def test_samples_must_be_positive():
    with pytest.raises(PreconditionError):
        run_fuzz(build_context("z2-lex"), samples=0)


def test_surface_is_right_invariant():
    report = run_fuzz(build_context("surf3p2"), [Law.RIGHT_INV], samples=300, seed=7)
    assert report.passed
    assert report.results[0].status == "pass"
    assert report.render().splitlines()[-1] == "verdict: pass"


def test_klein_fails_right_invariance_as_expected():
    ctx = build_context("klein")
    report = run_fuzz(ctx, [Law.LEFT_INV, Law.RIGHT_INV], samples=300, seed=7)
    left, right = report.results
    assert left.passed
    assert not right.passed and right.expected_failure
    ce = right.counterexample
    assert ctx.compare(ce.u, ce.v) is not ctx.compare(ce.u * ce.g, ce.v * ce.g)
    # shrinking never grows the drawn words
    drawn = draw_triple(ctx, 7, ce.trial)
    assert sum(len(x.syllables) for x in (ce.u, ce.v, ce.g)) <= sum(len(x.syllables) for x in drawn)
    assert not report.passed
    assert "FAIL at trial" in report.render()


def test_reports_are_deterministic():
    ctx = build_context("klein")
    first = run_fuzz(ctx, [Law.CONJ_INV], samples=200, seed=3).to_dict()
    assert run_fuzz(ctx, [Law.CONJ_INV], samples=200, seed=3).to_dict() == first


@pytest.mark.parametrize("selector", ["z2-lex", "free2-lex", "free-indexed-lex", "surf3p2"])
def test_bi_ordered_contexts_pass_all_laws(selector):
    report = run_fuzz(build_context(selector), ALL_LAWS, samples=60, seed=11)
    assert report.passed, report.render()


def test_bundle_passes_core_laws():
    ctx = build_context("bundle:figure8")
    laws = [Law.TRICHOTOMY, Law.LEFT_INV, Law.RIGHT_INV, Law.ENDO_INV]
    assert run_fuzz(ctx, laws, samples=50, seed=5).passed


def test_endo_inv_skipped_without_endomorphism():
    report = run_fuzz(build_context("z2-lex"), [Law.ENDO_INV], samples=10)
    assert report.results[0].status == "skipped"
    assert report.passed


def test_shrink_removes_irrelevant_syllables():
    def check(u, v, g):
        return "has x[0,0]" if any(label == xgen(0, 0) for label, _ in u) else None

    u = Word(((A, 1), (xgen(0, 0), 2), (B, 1)))
    (su, sv, sg), detail = shrink(check, (u, Word.letter(A), Word.letter(B)))
    assert su == Word.letter(xgen(0, 0), 2)
    assert sv.is_identity and sg.is_identity
    assert detail == "has x[0,0]"
