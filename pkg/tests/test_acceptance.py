"""Exit criteria.  Run ``pytest tests/test_acceptance.py`` for the PASS/FAIL summary."""

import io
import time
from fractions import Fraction

import pytest
import sympy as sp

from _golden import CENTRAL_BOXED, F, STIRLING_ROWS, X, load_noncentral_table, parse, poly_to_sympy, stirling_expansion
from multimoments import (
    MultinomialParams,
    catalog,
    falling_factorial,
    oracle_moment,
    sample_moment,
    stirling2,
    symbolic_central,
    symbolic_noncentral,
    to_falling,
    to_ordinary,
    verify_sweep,
)
from multimoments.cli import run
from multimoments.combinatorics import StirlingTable
from multimoments.errata import ERRATA

FLAGGED_ERRATA = {(8,), (7, 1), (5, 3)}


@pytest.mark.criterion("1 stirling golden table")
def test_stirling_table(criterion):
    start = time.perf_counter()
    fresh = StirlingTable(max_p=0)
    checked = 0
    for p, row in enumerate(STIRLING_ROWS):
        for k, value in enumerate(row):
            assert fresh(p, k) == value, (p, k)
            assert stirling2(p, k) == value, (p, k)
            checked += 1
    elapsed = time.perf_counter() - start
    assert checked == 45
    assert elapsed < 1.0
    criterion["detail"] = f"45 entries, {elapsed * 1e3:.1f} ms"


def _substitute(expr: sp.Expr, params: MultinomialParams) -> Fraction:
    subs = {F[k]: falling_factorial(params.m, k) for k in range(1, 10)}
    subs.update({X[i + 1]: sp.Rational(v.numerator, v.denominator) for i, v in enumerate(params.x)})
    value = sp.Rational(expr.subs(subs))
    return Fraction(int(value.p), int(value.q))


@pytest.mark.criterion("2 non-central golden formulas, orders 1-8")
def test_noncentral_golden(criterion):
    table = load_noncentral_table()
    assert len(table) == 66
    start = time.perf_counter()
    ours = {pattern: symbolic_noncentral(pattern) for pattern in table}
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0

    discrepancies = {}
    for pattern, printed in table.items():
        mine = poly_to_sympy(ours[pattern])
        assert mine == stirling_expansion(pattern), pattern
        diff = sp.expand(printed - mine)
        if diff != 0:
            discrepancies[pattern] = diff

    assert FLAGGED_ERRATA <= set(discrepancies), discrepancies
    assert set(discrepancies) == {e.pattern for e in ERRATA}, discrepancies

    # each printed entry disagrees with brute-force enumeration; the expansion agrees
    params = MultinomialParams(9, ["1/7", "1/5", "1/6", "1/9"])
    for pattern in discrepancies:
        p = tuple(pattern) + (0,) * (4 - len(pattern))
        exact = oracle_moment(params, p)
        assert _substitute(poly_to_sympy(ours[pattern]), params) == exact
        assert _substitute(table[pattern], params) != exact

    extra = sorted(set(discrepancies) - FLAGGED_ERRATA)
    criterion["detail"] = (
        f"{66 - len(discrepancies)}/66 term-for-term; errata {sorted(discrepancies)}"
        + (f", unflagged {extra}" if extra else "")
    )


@pytest.mark.criterion("3 central golden formulas, orders 2-4")
def test_central_golden(criterion):
    start = time.perf_counter()
    for pattern, boxed in CENTRAL_BOXED.items():
        assert poly_to_sympy(to_ordinary(symbolic_central(pattern))) == parse(boxed), pattern
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    criterion["detail"] = f"{len(CENTRAL_BOXED)} patterns, {elapsed:.2f} s"


@pytest.mark.slow
@pytest.mark.criterion("4 oracle equivalence sweep")
def test_oracle_sweep(criterion):
    start = time.perf_counter()
    reports = verify_sweep(6, {1, 2, 3}, 6)
    elapsed = time.perf_counter() - start
    failures = [r for r in reports if not r.passed]
    assert {r.mode for r in reports} == {"noncentral", "central", "factorial"}
    assert {r.m for r in reports} == set(range(7))
    assert not failures, failures[0].to_json()
    assert elapsed < 300
    criterion["detail"] = f"{len(reports)} exact checks, 0 failures, {elapsed:.1f} s"


@pytest.mark.criterion("5 power/falling-factorial identity")
def test_proof_identity(criterion):
    for n in range(11):
        for p in range(9):
            assert sum(stirling2(p, k) * falling_factorial(n, k) for k in range(p + 1)) == n**p
    criterion["detail"] = "n in 0..10, p in 0..8"


@pytest.mark.criterion("6 basis round trip on catalog(8)")
def test_basis_round_trip(criterion):
    entries = catalog(8)
    assert len(entries) == 66
    for _, poly in entries:
        ordinary = to_ordinary(poly)
        assert to_falling(ordinary) == poly
    criterion["detail"] = "66 polynomials"


@pytest.mark.criterion("7 Monte Carlo consistency")
def test_monte_carlo(criterion):
    params = MultinomialParams(20, ["1/4", "1/3"])
    start = time.perf_counter()
    worst = 0.0
    for seed, p in enumerate([(2, 0), (1, 1), (2, 1)], start=101):
        for mode in ("noncentral", "central"):
            exact = oracle_moment(params, p, mode)
            est = sample_moment(params, p, mode, n=10**6, seed=seed)
            z = abs(est.mean - float(exact)) / est.standard_error
            worst = max(worst, z)
            assert est.within(exact, 5.0), (p, mode, est, exact)
    again = sample_moment(params, (2, 1), "central", n=10**6, seed=103)
    assert again == sample_moment(params, (2, 1), "central", n=10**6, seed=103)
    elapsed = time.perf_counter() - start
    assert elapsed < 60
    criterion["detail"] = f"6 estimates, max |z| = {worst:.2f}, {elapsed:.1f} s"


@pytest.mark.criterion("8 CLI contract")
@pytest.mark.parametrize(
    "argv, stdout, status",
    [
        ("moment --m 10 --x 1/4 --p 2 --central", "15/8\n", 0),
        ("formula --p 1,1 --format text", "m^(2) x1 x2\n", 0),
        ("moment --m 3 --x 2/3,2/3 --p 1,1", "", 1),
    ],
)
def test_cli_contract(criterion, argv, stdout, status):
    out, err = io.StringIO(), io.StringIO()
    assert run(argv.split(), out=out, err=err) == status
    assert out.getvalue() == stdout
    if status == 1:
        assert "sum(x) = 4/3" in err.getvalue()
    criterion["detail"] = "3 invocations"
