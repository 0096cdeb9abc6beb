"""Acceptance criteria, one test per criterion.

Each check records a PASS/FAIL line (see ``conftest.py``); running this file
directly prints the same lines without pytest.
"""

import subprocess
import sys
import time

import pytest

from lamlab import corpus, fits
from lamlab.degree import degree_of_term, parallel_normalize, typable
from lamlab.families import count_families
from lamlab.sharing import reduce_optimal
from lamlab.strategies import evaluate_weak, reduce_applicative, reduce_normal_order
from lamlab.terms import delta_fi, fi_fi, size, term1, term2

try:
    from .acceptance_log import record
except ImportError:  # run as a script
    from acceptance_log import record


def test_criterion_1_weak_blowup():
    start = time.perf_counter()
    bad = []
    for mode in ("by_name", "by_need"):
        counts = {n: evaluate_weak(term1(n), mode).stats.identity_firings for n in range(2, 11)}
        for n in range(2, 11):
            if counts[n] < 2 ** n:
                bad.append(f"{mode} n={n}: {counts[n]} < 2^n")
            if n < 10 and counts[n + 1] < 1.9 * counts[n]:
                bad.append(f"{mode} n={n}: ratio {counts[n + 1] / counts[n]:.2f}")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10
    record("1", ok, f"identity firings >= 2^n, ratio >= 1.9, {elapsed:.2f}s" + ("; " + "; ".join(bad) if bad else ""))
    assert ok


def test_criterion_2_innermost_linear():
    ns = list(range(1, 11))
    steps = [reduce_applicative(term1(n)).stats.beta_steps for n in ns]
    ok, resid = fits.fits_polynomial(ns, steps, 1, tol=0.05)
    record("2", ok, f"applicative beta steps {steps}, linear residual {resid:.2%}")
    assert ok


def test_criterion_3a_innermost_peak():
    peaks = {n: reduce_applicative(term2(n)).stats.peak_term_size for n in range(2, 9)}
    ok = all(p >= 2 ** n for n, p in peaks.items())
    record("3a", ok, f"applicative peak sizes {list(peaks.values())} vs 2^n")
    assert ok


@pytest.mark.xfail(strict=True, reason="normal order on I (n two) I I is exponential; see notes")
def test_criterion_3b_normal_order_cubic():
    ns = list(range(2, 9))
    steps = [reduce_normal_order(term2(n)).stats.beta_steps for n in ns]
    below, pred, obs = fits.extrapolation_check(ns, steps, 3, train=5)
    ok_fit, resid = fits.fits_polynomial(ns, steps, 3, tol=0.05)
    ok = below and ok_fit
    record("3b", ok, f"normal-order steps {steps}; cubic from n<=6 predicts {pred.round(1).tolist()} "
                     f"for n=7,8; full cubic residual {resid:.0%}")
    assert ok


def test_criterion_4_optimal_soundness():
    start = time.perf_counter()
    ts = corpus.generate(200, seed=41, max_size=30) + list(corpus.named_terms().values())
    bad = 0
    for t in ts:
        nf, _, status = reduce_optimal(t)
        if status != "normalized" or nf != reduce_normal_order(t).result:
            bad += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 60 and len(ts) >= 50
    record("4", ok, f"{len(ts) - bad}/{len(ts)} terms agree with normal order, {elapsed:.2f}s")
    assert ok


def test_criterion_5_optimality_witness():
    general = corpus.generate(300, seed=51, max_size=40)
    lambda_i = corpus.generate(200, seed=52, max_size=40, lambda_i=True)
    bad = []
    for t in general:
        assert size(t) <= 40
        _, stats, _ = reduce_optimal(t, order="lazy")
        fam = count_families(t).distinct_families
        if stats.beta_interactions != fam:
            bad.append(("lazy", t))
    for t in lambda_i:
        _, stats, _ = reduce_optimal(t, order="fifo")
        if stats.beta_interactions != count_families(t).distinct_families:
            bad.append(("fifo", t))
    ok = not bad
    record("5", ok, f"beta interactions == distinct families on {len(general)} general terms (lazy) "
                    f"and {len(lambda_i)} lambda-I terms (fifo); {len(bad)} mismatches")
    assert ok


def test_criterion_6_family_conformance():
    a = count_families(delta_fi()).distinct_families
    b = count_families(fi_fi()).distinct_families
    ok = a == 3 and b == 4 and a < b
    record("6", ok, f"Delta(F I) -> {a}, (F I)(F I) -> {b}")
    assert ok


def test_criterion_7_degree_bound():
    ts = corpus.generate(220, seed=71, typed=True, max_size=30) + [term1(n) for n in range(1, 5)]
    assert all(typable(t) for t in ts)
    violations = 0
    for t in ts:
        _, steps = parallel_normalize(t)
        if steps > degree_of_term(t):
            violations += 1
    ok = violations == 0 and len(ts) >= 200
    record("7", ok, f"{violations} violations over {len(ts)} typed terms")
    assert ok


def test_criterion_8_strategy_independence():
    ts = corpus.generate(120, seed=81, max_size=20, lambda_i=True)
    fam_bad = sum(count_families(t, "leftmost").distinct_families
                  != count_families(t, "rightmost").distinct_families for t in ts)
    sched_bad = sum(reduce_optimal(t, order="fifo")[1].beta_interactions
                    != reduce_optimal(t, order="lifo")[1].beta_interactions for t in ts)
    ok = fam_bad == 0 and sched_bad == 0
    record("8", ok, f"{len(ts)} lambda-I terms: {fam_bad} family-order and {sched_bad} fifo/lifo disagreements")
    assert ok


def test_criterion_9_bookkeeping_polynomial():
    ns = list(range(2, 9))
    details, ok = [], True
    for fam in (term1, term2):
        book = [reduce_optimal(fam(n))[1].bookkeeping_interactions for n in ns]
        fam_ok, resid = fits.fits_polynomial(ns, book, 3, tol=0.05)
        ok = ok and fam_ok
        details.append(f"{fam.__name__} bookkeeping {book}, cubic residual {resid:.2%}")
    record("9", ok, "; ".join(details))
    assert ok


CLI_COMMANDS = [
    ["reduce", "--strategy", "optimal", "--emit", "json", "church 3 two I I"],
    ["reduce", "--strategy", "cbneed", "--emit", "csv", "church 3 two I I"],
    ["bench", "--family", "term1", "--n", "2..4", "--emit", "csv"],
    ["bench", "--family", "term2", "--n", "2..3", "--emit", "json"],
    ["families", "--emit", "json", r"(\x.x x) ((\z.z y) I)"],
    ["degree", "--emit", "json", "church 2 two I I"],
    ["dot", "--stage", "initial", "church 2 two I I"],
    ["dot", "--stage", "normal", "church 2 two I I"],
]


def test_criterion_10_determinism():
    differing = []
    for argv in CLI_COMMANDS:
        outs = [subprocess.run([sys.executable, "-m", "lamlab.cli", *argv], capture_output=True, check=True).stdout
                for _ in range(2)]
        if outs[0] != outs[1] or not outs[0]:
            differing.append(argv[0])
    ok = not differing
    record("10", ok, f"{len(CLI_COMMANDS)} commands run twice, byte-identical output" if ok else f"differ: {differing}")
    assert ok


if __name__ == "__main__":
    failed = 0
    checks = [fn for name, fn in globals().items() if name.startswith("test_criterion_")]
    for fn in sorted(checks, key=lambda f: int(f.__name__.split("_")[2].rstrip("ab"))):
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
