"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line (visible under ``pytest -v``
as well as ``-s``) and then asserts.  Tolerance everywhere is exact equality.
"""

import time
from fractions import Fraction

import pytest

from confbetti.ce import betti_oracle, euler_characteristic_check, surface_ce_spec
from confbetti.core import Kind, Surface
from confbetti.engine import (
    Bounds,
    K_series,
    V_series,
    consistency_check,
    master_series,
    polynomial_fit,
    resolve,
)
from confbetti.formulas import K_dims_formula, K_dims_high_genus
from confbetti.operators import (
    K_dims_oracle,
    V_dims_oracle,
    apply,
    ker_deltaDelta_dims,
    poly_degree,
    stable_complex_dims,
    x_basis,
)
from confbetti.series import TruncatedSeries, X_series, coefficient, polynomial
from confbetti.verify import stable_table_fixture, stable_table_csv, verify_polynomials

GRID = (
    [(Surface.closed_orientable(g), 6) for g in range(3)]
    + [(Surface.closed_nonorientable(h), 8) for h in range(1, 5)]
    + [(Surface.open_nonorientable(h, n), 8) for h, n in ((1, 1), (2, 1), (2, 2))]
    + [(Surface.open_orientable(g, n), 8) for g, n in ((0, 1), (0, 2), (1, 1), (1, 2), (2, 1))]
)


@pytest.fixture
def verdict(capsys):
    def emit(number: int, title: str, ok: bool, detail: str = ""):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'}  criterion {number}: {title}"
                  + (f"  [{detail}]" if detail else ""))
        assert ok, detail
    return emit


@pytest.fixture(scope="module")
def oracle_tables():
    tables, timings = {}, {}
    for s, k in GRID:
        t0 = time.perf_counter()
        tables[s] = betti_oracle(s, k + 1, k)
        timings[s] = time.perf_counter() - t0
    return tables, timings


def test_criterion_1_stable_table(verdict):
    t0 = time.perf_counter()
    fixture = stable_table_fixture()
    by_formula = stable_table_csv(6, 43, "formula")
    by_series = stable_table_csv(6, 43, "series")
    elapsed = time.perf_counter() - t0
    rows = [line.split(",") for line in by_series.splitlines()]
    anchors = rows[44][7] == "66446126460" and rows[4][3] == "16" and rows[5][4] == "90"
    ok = by_formula == fixture and by_series == fixture and anchors and elapsed < 10
    verdict(1, "published stable table, formula and series paths", ok,
            f"byte-equal formula={by_formula == fixture} series={by_series == fixture}, "
            f"anchors={anchors}, {elapsed:.2f}s")


def test_criterion_2_polynomials(verdict):
    t0 = time.perf_counter()
    report = verify_polynomials()
    lead = polynomial_fit(5, "stable", "even").leading_coefficient
    elapsed = time.perf_counter() - t0
    ok = report.passed and lead == Fraction(1, 368640) and elapsed < 5
    verdict(2, "published fixed-genus polynomials (24) and q^st_5", ok,
            f"{'; '.join(r.line() for r in report.results)}; leading {lead}; {elapsed:.2f}s")


def test_criterion_3_oracle_grid(verdict, oracle_tables):
    tables, timings = oracle_tables
    bad, checked = [], 0
    for s, kmax in GRID:
        for k in range(kmax + 1):
            for i in range(k + 2):
                got, prov = resolve(s, i, k)
                want = tables[s][i, k]
                checked += 1
                if got != want:
                    bad.append(f"{s} i={i} k={k} expected={want} got={got} provenance={prov}")
    t2 = timings[Surface.closed_orientable(2)]
    verdict(3, "betti == CE oracle on the surface grid", not bad,
            f"{checked} entries, {len(bad)} mismatches {bad[:3]}; Sigma_2 k<=6 oracle {t2:.2f}s")


def test_criterion_4_kernel_oracles(verdict):
    bad = []
    for g in range(4):
        dims = K_dims_oracle(g, 12)
        if dims != [K_dims_formula(g, i) for i in range(13)]:
            bad.append(f"K_{g} double sum")
        if any(dims[i] != K_dims_high_genus(g, i) for i in range(3, min(g + 2, 12) + 1)):
            bad.append(f"K_{g} single binomial")
    for g in range(3):
        for n in range(4):
            want = [int(c) for c in V_series(g, n, 10).coeffs]
            if V_dims_oracle(g, n, 10) != want:
                bad.append(f"V({g},{n})")
    for g in range(3):
        T = 10
        ker = TruncatedSeries(ker_deltaDelta_dims(g, T), T)
        rhs = polynomial([1, 1], T) * K_series(g, T) - 1 + polynomial([0, 0, 1], T) * X_series(g, T)
        if polynomial([0, 1, 1], T) * ker != rhs:
            bad.append(f"ker dD g={g}")
    verdict(4, "K_g, V(g,n) and ker(delta Delta) against operator brute force", not bad,
            ", ".join(bad) or "K g<=3 i<=12, V g<=2 n<=3 d<=10, ker g<=2 d<=10")


def test_criterion_5_stable_complex(verdict):
    bad = []
    for g in range(3):
        got = stable_complex_dims(g, 6)
        want = [coefficient(master_series(g, "P_st", 6), i) for i in range(7)]
        if got != want:
            bad.append(f"g={g}: {got} vs {want}")
    verdict(5, "stable complex homology equals P_st", not bad, "; ".join(bad) or "g<=2, i<=6")


def _combine(a, b):
    out = dict(a)
    for m, c in b.items():
        out[m] = out.get(m, 0) + c
    return {m: c for m, c in out.items() if c}


def _operator_identity_failures(g, max_degree):
    bad = []
    for d in range(max_degree + 1):
        for m in x_basis(g, d):
            v = {m: Fraction(1)}
            p = poly_degree(m)
            checks = {
                "delta^2": apply(["delta", "delta"], v) == {},
                "h^2": apply(["h", "h"], v) == {},
                "Delta delta": apply(["Delta", "delta"], v) == apply(["delta", "Delta"], v),
            }
            if p > 0:
                checks["delta H + H delta"] = _combine(apply(["delta", "H"], v),
                                                       apply(["H", "delta"], v)) == v
            lhs = apply(["Delta", "H", "Delta", "H"], v)
            rhs = apply(["H", "Delta", "H", "Delta"], v)
            checks["DHDH"] = (lhs == {c: x * Fraction(p - 4, p) for c, x in rhs.items()
                                      if x} if p >= 5 else lhs == {} == rhs)
            bad += [f"{name} g={g} on {m}" for name, ok in checks.items() if not ok]
    return bad


def test_criterion_6_recurrences_and_identities(verdict, oracle_tables):
    tables, _ = oracle_tables
    report = consistency_check(8, Bounds(trunc=40))
    bad = [r.line() for r in report.failures()]
    # D^2 = 0 is asserted inside every homology computation of the oracle runs above
    for s, kmax in GRID:
        spec = surface_ce_spec(s)
        for k in range(kmax + 1):
            chain, hom = euler_characteristic_check(spec, k)
            if chain != hom:
                bad.append(f"Euler {s} k={k}: {chain} vs {hom}")
    for g in range(3):
        bad += _operator_identity_failures(g, 10)
    verdict(6, "recurrences, congruence, D^2=0, Euler characteristic, operator identities",
            not bad, "; ".join(bad[:5]) or f"{len(report.results)} series checks g<=8 trunc=40")


def _vanishing_failures(tables, allowance):
    """Nonzero entries above the line i = k + allowance(s)."""
    bad = []
    for s, kmax in GRID:
        t = tables[s]
        for k in range(kmax + 1):
            for i in range(k + allowance(s) + 1, kmax + 2):
                if t[i, k]:
                    bad.append(f"{s} i={i} k={k} value={t[i, k]}")
    return bad


def _stability_failures(tables):
    bad = []
    for s, kmax in GRID:
        t = tables[s]
        for i in range(kmax):
            values = {t[i, k] for k in range(i + 1, kmax + 1)}
            if len(values) > 1:
                bad.append(f"{s} i={i} takes {sorted(values)} for k > i")
    return bad


@pytest.mark.xfail(strict=True, reason=(
    "closed nonorientable surfaces have nonzero homology at i = k+1 "
    "(beta_3(B_2(RP^2)) = 1), so vanishing above i = k fails for N_h"))
def test_criterion_7_vanishing_and_stability(verdict, oracle_tables):
    tables, _ = oracle_tables
    vanish = _vanishing_failures(
        tables, lambda s: 1 if s.kind is Kind.CLOSED_ORIENTABLE else 0)
    stable = _stability_failures(tables)
    verdict(7, "vanishing above i = k+1 (closed orientable) / i = k (others), stability for k > i",
            not vanish and not stable,
            f"vanishing violations {len(vanish)}: {'; '.join(vanish[:3])}; "
            f"stability violations {len(stable)}")


def test_vanishing_with_closed_nonorientable_allowance(oracle_tables):
    """What does hold: every closed surface may be nonzero at i = k+1, open ones stop at i = k."""
    from confbetti.formulas import betti_closed_nonorientable
    tables, _ = oracle_tables
    assert _vanishing_failures(tables, lambda s: 1 if s.closed else 0) == []
    assert _stability_failures(tables) == []
    for s, kmax in GRID:
        if s.kind is Kind.CLOSED_NONORIENTABLE:
            for k in range(kmax + 1):
                assert tables[s][k + 1, k] == betti_closed_nonorientable(s.h, k + 1, k)
