"""Shared fixtures: the seeded 1000-body corpus and its case reports.

Both are session-scoped because the corpus solve is the expensive part of
the suite; acceptance criteria that need per-body results share one pass.
Build durations are recorded in ``corpus_timings`` so the acceptance
criterion that owns the corpus evaluation can count them against its
runtime budget even though the work runs inside fixture setup.
"""

import time

import pytest

from circumquad import case_machine, gen_corpus

CORPUS_SEED = 20260814


def build_corpus():
    """600 random hulls (batches of 8/16/32/64 points), 200 ellipse
    polygons, 200 affine pentagons; deterministic."""
    bodies = []
    for i, n in enumerate((8, 16, 32, 64)):
        bodies += gen_corpus("random", 150, seed=CORPUS_SEED + i, vertices=n)
    bodies += gen_corpus("ellipse", 200, seed=CORPUS_SEED + 10, vertices=64)
    bodies += gen_corpus("affine_pentagon", 200, seed=CORPUS_SEED + 11)
    return bodies


@pytest.fixture(scope="session")
def corpus_timings():
    return {}


@pytest.fixture(scope="session")
def corpus1000(corpus_timings):
    t0 = time.perf_counter()
    bodies = build_corpus()
    corpus_timings["generate"] = time.perf_counter() - t0
    assert len(bodies) == 1000
    return bodies


@pytest.fixture(scope="session")
def corpus_reports(corpus1000, corpus_timings):
    """(body, CaseReport) for the full corpus, or the raised exception."""
    t0 = time.perf_counter()
    out = []
    for body in corpus1000:
        try:
            out.append((body, case_machine(body)))
        except Exception as exc:  # noqa: BLE001 - recorded for the criterion
            out.append((body, exc))
    corpus_timings["classify"] = time.perf_counter() - t0
    return out
