from __future__ import annotations

import pytest

from alphametric.generators import cycle
from alphametric.invariants import Checker, Sample, corpus, run_suite


@pytest.mark.parametrize("name", ["alpha1-suite", "classifier-suite", "approx-suite"])
def test_suites_pass_on_small_corpora(name):
    samples, chk = run_suite(name, seed=3, count=6)
    assert samples > 0 and sum(chk.counts.values()) > 0
    assert chk.violations == []


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope", 0, 1)


def test_checker_records_violations():
    chk = Checker()
    s = Sample.build("c5", cycle(5))
    assert s.alpha == 1 and s.alpha_source == "measured"
    chk.check("demo", True, s)
    chk.check("demo", False, s, "broken")
    assert chk.counts["demo"] == 2
    assert chk.failures("de") == [{"check": "demo", "sample": "c5", "detail": "broken"}]


def test_corpus_is_reproducible():
    a = [s.graph.to_text() for s in corpus("alpha1", 5, 4)]
    b = [s.graph.to_text() for s in corpus("alpha1", 5, 4)]
    assert a == b


def test_class_alpha_without_measuring():
    s = next(corpus("chordal", 1, 1, measure=False))
    assert s.alpha == 1 and s.alpha_source == "class"
