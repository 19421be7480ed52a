"""Acceptance criteria 1-8, each at its stated sizes, tolerances and time budget.

Every test records one PASS/FAIL line, printed in the pytest terminal summary.
"""

import math
import random
import time
from fractions import Fraction as F

import pytest

from conftest import record_acceptance, sample_points
from meixner import MeixnerSpec
from meixner.algebra import random_polynomial
from meixner.operators import verify_bispectrality, verify_commutativity
from meixner.orthogonality import inner_product, verify_orthogonality
from meixner.parameters import NotInParameterSet, from_weights, parameter_report, validate
from meixner.polynomials import classical_meixner, evaluate, verify_duality, verify_representations
from meixner.report import VerificationReport

DIMS = (1, 2, 3)
BETAS = (F(1), F(3, 2), F(2))
TOL = F(1, 10 ** 10)
REL_TOL = F(1, 10 ** 8)


def specs(d, betas=BETAS):
    return [MeixnerSpec(p, b) for p in sample_points(d) for b in betas]


def finish(number, report: VerificationReport, elapsed: float, budget: float | None, extra=""):
    timely = budget is None or elapsed < budget
    ok = report.passed and timely
    counts = ", ".join(f"{k} {p}/{t}" for k, (t, p) in sorted(report.counts().items()))
    limit = f" (budget {budget:g}s)" if budget else ""
    record_acceptance(number, ok, f"{counts}{extra}; {elapsed:.1f}s{limit}")
    if not report.passed:
        first = report.failures()[0]
        pytest.fail(f"{first.identity} failed: {first.witness}")
    assert timely, f"took {elapsed:.1f}s, budget {budget}s"


def test_criterion_1_parameter_set():
    start = time.perf_counter()
    report = VerificationReport()
    for d in DIMS:
        for point in sample_points(d):
            assert all(0 < ci < 1 for ci in point.c) and sum(point.c) < 1
            report.extend(parameter_report(point))
    finish(1, report, time.perf_counter() - start, 1.0, f" over {3 * 7} points")


@pytest.mark.parametrize("d", DIMS)
def test_criterion_2_representations(d):
    start = time.perf_counter()
    report = VerificationReport()
    for spec in specs(d):
        report.extend(verify_representations(spec, 4, 4))
    finish(2, report, time.perf_counter() - start, 60.0, f" [d={d}]")


@pytest.mark.parametrize("d", DIMS)
def test_criterion_3_duality(d):
    start = time.perf_counter()
    report = VerificationReport()
    for spec in specs(d):
        report.extend(verify_duality(spec, 4))
    finish(3, report, time.perf_counter() - start, 60.0, f" [d={d}]")


@pytest.mark.parametrize("d", DIMS)
def test_criterion_4_bispectrality(d):
    start = time.perf_counter()
    report = VerificationReport()
    for spec in specs(d):
        report.extend(verify_bispectrality(spec, 4, 5))
    finish(4, report, time.perf_counter() - start, 120.0, f" [d={d}]")


@pytest.mark.parametrize("d", (2, 3))
def test_criterion_5_commutativity(d):
    start = time.perf_counter()
    report = VerificationReport()
    for k, spec in enumerate(specs(d)):
        rng = random.Random(1000 * d + k)
        samples = [random_polynomial(rng, d, 5) for _ in range(10)]
        report.extend(verify_commutativity(spec, samples))
    finish(5, report, time.perf_counter() - start, None, f" [d={d}]")


def test_criterion_6_orthogonality():
    start = time.perf_counter()
    report = VerificationReport()
    for d in (1, 2):
        for spec in specs(d, (F(1), F(2))):
            report.extend(verify_orthogonality(spec, 3, TOL, REL_TOL))
    # hand anchor: d=1, c=(1/3), beta=1, n=m=1; sum (1-2x)^2 3^-x = 9/2
    anchor_spec = MeixnerSpec(from_weights([F(1, 3)]), 1)
    anchor = inner_product(anchor_spec, (1,), (1,), TOL)
    ok = abs(anchor.value - F(9, 2)) <= TOL
    report.add("anchor-9/2", {"truncation": anchor.truncation}, ok,
               None if ok else {"value": anchor.value})
    finish(6, report, time.perf_counter() - start, 120.0)


def gauss_oracle(n, x, beta, z):
    total, term = F(0), F(1)
    for k in range(n + 1):
        if k:
            term = F(1)
            for t in range(k):
                term *= F(-n + t) * (-x + t) / (beta + t)
            term *= z ** k / math.factorial(k)
        total += term
    return total


def test_criterion_7_classical():
    start = time.perf_counter()
    report = VerificationReport()
    for spec in specs(1):
        z = 1 - spec.point.U[1][1]
        for n in range(5):
            for x in range(5):
                want = gauss_oracle(n, x, spec.beta, z)
                got = evaluate(spec, (n,), (x,))
                ok = got == want == classical_meixner(spec, n, x)
                report.add("classical-2F1", {"n": n, "x": x}, ok,
                           None if ok else {"got": got, "want": want})
    finish(7, report, time.perf_counter() - start, None)


def suites_catch(point) -> str | None:
    """Name of the first suite of criteria 2-6 that fails at ``point``."""
    d = point.d
    spec = MeixnerSpec(point, F(3, 2))
    rng = random.Random(d)
    runs = [
        ("representations", lambda: verify_representations(spec, 2, 2)),
        ("duality", lambda: verify_duality(spec, 2)),
        ("bispectrality", lambda: verify_bispectrality(spec, 2, 2)),
        ("commutativity", lambda: verify_commutativity(
            spec, [random_polynomial(rng, d, 3) for _ in range(3)])),
    ]
    if d <= 2:
        runs.append(("orthogonality", lambda: verify_orthogonality(
            MeixnerSpec(point, 1), 1, TOL, REL_TOL)))
    for name, run in runs:
        if not run().passed:
            return name
    return None


def test_criterion_8_negative_controls():
    start = time.perf_counter()
    report = VerificationReport()
    caught_by: dict = {}
    for d in DIMS:
        for point in (sample_points(d)[0], sample_points(d)[-2], sample_points(d)[-1]):
            for i in range(1, d + 1):
                for j in range(1, d + 1):
                    bad = point.with_entry(i, j, point.U[i][j] + F(1, 7))
                    name = suites_catch(bad)
                    caught_by[name] = caught_by.get(name, 0) + 1
                    report.add("perturbation-detected", {"d": d, "entry": (i, j)},
                               name is not None, None if name else {"U": bad.U})
            # row and column 0 never enter the polynomials or operators, so
            # perturbing them is a validation matter rather than a suite one
            for i, j in [(0, k) for k in range(d + 1)] + [(k, 0) for k in range(1, d + 1)]:
                bad = point.with_entry(i, j, point.U[i][j] + F(1, 7))
                try:
                    validate(bad)
                    rejected = False
                except NotInParameterSet:
                    rejected = True
                report.add("border-perturbation-rejected", {"d": d, "entry": (i, j)},
                           rejected, None if rejected else {"U": bad.U})
    summary = ", ".join(f"{k}: {v}" for k, v in sorted(caught_by.items(), key=str))
    finish(8, report, time.perf_counter() - start, None, f" (first failing suite {summary})")
