"""Acceptance criteria 1-9.

Each test records one PASS/FAIL line, printed by the terminal-summary hook in
conftest.py (or by ``python tests/test_acceptance.py``).
"""

import subprocess
import sys
import time

import pytest

from sullivan import suite
from sullivan.io import bundled_models
from sullivan.sampler import random_models

SEED = 42
RESULTS = {}

CRITERIA = {
    1: ("validation of bundled models and failure fixtures", 1.0),
    2: ("naive filtration equals cautious filtration", 30.0),
    3: ("delta injectivity, d_nil block bound, coformal refinement", 30.0),
    4: ("weight bounds over the random corpus", 30.0),
    5: ("exponent table and flagged alternatives", None),
    6: ("fundamental theorems on 200 interval elements per model", 10.0),
    7: ("obstruction cocycles, extension round trip, worked example", None),
    8: ("Whitehead suite for 2 <= k <= 6, 1 <= c <= 3", 60.0),
    9: ("selftest --seed 42 --json is byte-identical across runs", None),
}


@pytest.fixture(scope="module")
def models():
    return bundled_models()


@pytest.fixture(scope="module")
def corpus():
    return random_models(suite.CORPUS_SIZE, seed=SEED)


def _timed(number, fn):
    """Run a criterion, record its line, and assert both correctness and runtime."""
    label, limit = CRITERIA[number]
    start = time.perf_counter()
    report = fn()
    elapsed = time.perf_counter() - start
    failed = [c for c in report.checks if c.status == "fail"]
    slow = limit is not None and elapsed >= limit
    ok = not failed and not slow
    detail = f"{elapsed:.2f}s" + (f" (limit {limit:g}s)" if limit else "")
    if failed:
        detail += "; failing: " + "; ".join(f"{c.check}: {c.witness}" for c in failed)
    RESULTS[number] = (ok, f"criterion {number} {label}: {'PASS' if ok else 'FAIL'} [{detail}]")
    assert not failed, "\n".join(f"{c.check}: {c.witness}" for c in failed)
    assert not slow, f"took {elapsed:.2f}s, limit {limit}s"


def test_criterion_1_validation(models):
    _timed(1, lambda: suite.criterion_validation(models))


def test_criterion_2_filtration_equality(models, corpus):
    _timed(2, lambda: suite.criterion_filtrations(list(models.values()) + corpus))


def test_criterion_3_step_lemmas(corpus):
    _timed(3, lambda: suite.criterion_steps(corpus))


def test_criterion_4_weight_bounds(corpus):
    _timed(4, lambda: suite.criterion_weights(corpus))


def test_criterion_5_exponents():
    _timed(5, suite.criterion_exponents)


def test_criterion_6_interval(models):
    _timed(6, lambda: suite.criterion_interval(models, SEED))


def test_criterion_7_obstruction(models):
    _timed(7, lambda: suite.criterion_obstruction(models, SEED))


def test_criterion_8_whitehead():
    _timed(8, suite.criterion_whitehead)


def test_criterion_9_determinism():
    cmd = [sys.executable, "-m", "sullivan", "selftest", "--seed", str(SEED), "--json"]
    runs = [subprocess.run(cmd, capture_output=True) for _ in range(2)]
    same = runs[0].stdout == runs[1].stdout and len(runs[0].stdout) > 0
    clean = all(not r.stderr for r in runs)
    ok = same and clean
    RESULTS[9] = (ok, f"criterion 9 {CRITERIA[9][0]}: {'PASS' if ok else 'FAIL'} "
                      f"[{len(runs[0].stdout)} bytes, exit {runs[0].returncode}]")
    assert clean, runs[0].stderr.decode()
    assert same


def summary_lines():
    return [RESULTS[k][1] if k in RESULTS else f"criterion {k} {CRITERIA[k][0]}: NOT RUN" for k in sorted(CRITERIA)]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
