"""Verification suites shared by the CLI and the acceptance tests.

Each suite returns an :class:`~confbetti.engine.Report`.  Mismatch details
name the surface, bidegree, expected and computed value and the
provenance of the computed value.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from importlib import resources

from .ce import betti_oracle, check_block_cap, surface_ce_spec
from .core import Surface
from .engine import (
    FAMILIES,
    PARITIES,
    Bounds,
    NotPolynomial,
    Report,
    _mismatch,
    consistency_check,
    polynomial_fit,
    resolve,
    stable_column,
)
from .fitting import parse


def _data(name: str) -> str:
    path = resources.files("confbetti").joinpath("data").joinpath(name)
    return path.read_text(encoding="utf-8")


def stable_table_fixture() -> str:
    return _data("stable_table.csv")


def polynomial_fixture() -> dict:
    return json.loads(_data("polynomials.json"))


def stable_table_rows(max_g: int, max_i: int, path: str = "series") -> list[list[int]]:
    """rows[i] = [i, beta_i^st(Sigma_0), ..., beta_i^st(Sigma_max_g)]."""
    cols = [stable_column(g, max_i, path) for g in range(max_g + 1)]
    return [[i] + [c[i] for c in cols] for i in range(max_i + 1)]


def stable_table_csv(max_g: int, max_i: int, path: str = "series") -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i"] + [str(g) for g in range(max_g + 1)])
    for row in stable_table_rows(max_g, max_i, path):
        w.writerow([str(v) for v in row])
    return buf.getvalue()


def verify_stable_table(report: Report | None = None) -> Report:
    report = report or Report()
    fixture = stable_table_fixture()
    by_path = {p: stable_table_csv(6, 43, p) for p in ("formula", "series")}
    for path, text in by_path.items():
        bad = []
        if text != fixture:
            want = list(csv.reader(io.StringIO(fixture)))
            got = list(csv.reader(io.StringIO(text)))
            for r, (a, b) in enumerate(zip(want[1:], got[1:])):
                for g, (x, y) in enumerate(zip(a[1:], b[1:])):
                    if x != y:
                        bad.append(_mismatch(Surface.closed_orientable(g), r, "stable", x, y, path))
            if not bad:
                bad.append("table shape differs from fixture")
        report.add(f"stable table via {path}", not bad, "; ".join(bad[:5]))
    report.add("stable table paths agree", by_path["formula"] == by_path["series"])
    return report


def verify_polynomials(report: Report | None = None) -> Report:
    report = report or Report()
    fixture = polynomial_fixture()
    bad = []
    for g, table in sorted(fixture["polynomials"].items()):
        for fam in FAMILIES:
            for par in PARITIES:
                want = table[f"{fam}/{par}"]
                try:
                    fit = polynomial_fit(int(g), fam, par)
                except NotPolynomial as exc:
                    bad.append(str(exc))
                    continue
                if fit.render() != want or fit.coeffs != parse(want):
                    bad.append(f"{fit.label}: expected {want} got {fit.render()}")
    report.add("fixed-genus polynomials g<=3", not bad, "; ".join(bad))
    want5 = tuple(Fraction(c) for c in fixture["q_stable_genus5"])
    got5 = polynomial_fit(5, "stable", "even").coeffs
    report.add("polynomial q^st_5", got5 == want5,
               "" if got5 == want5 else f"expected {want5} got {got5}")
    return report


def verify_figures() -> Report:
    return verify_polynomials(verify_stable_table())


BASE_GRID = (
    [Surface.closed_orientable(g) for g in range(3)]
    + [Surface.closed_nonorientable(h) for h in range(1, 5)]
    + [Surface.open_nonorientable(1, 1), Surface.open_nonorientable(2, 1),
       Surface.open_nonorientable(2, 2)]
    + [Surface.open_orientable(0, 1), Surface.open_orientable(0, 2),
       Surface.open_orientable(1, 1), Surface.open_orientable(1, 2),
       Surface.open_orientable(2, 1)]
)


def oracle_grid(max_g: int = 2, max_k: int = 6) -> list[tuple[Surface, int]]:
    """(surface, max weight) pairs; non-closed-orientable kinds get two more weights."""
    surfaces = [s for s in BASE_GRID if s.g <= max_g and s.h <= 2 * max_g]
    surfaces += [Surface.closed_orientable(g) for g in range(3, max_g + 1)]
    return [(s, max_k if s.kind.value == "closed-orientable" else max_k + 2) for s in surfaces]


def check_grid_caps(grid, cap: int | None = None) -> None:
    """Raise BlockTooLarge before any work if some block exceeds the cap."""
    for s, k in grid:
        check_block_cap(surface_ce_spec(s), k + 2, k, cap)


def oracle_tables(grid, cap: int | None = None) -> dict:
    return {s: betti_oracle(s, k + 1, k, cap) for s, k in grid}


def verify_oracle(max_g: int = 2, max_k: int = 6, cap: int | None = None,
                  tables: dict | None = None) -> Report:
    grid = oracle_grid(max_g, max_k)
    check_grid_caps(grid, cap)
    tables = tables if tables is not None else oracle_tables(grid, cap)
    report = Report()
    for s, _ in grid:
        bad = []
        for (i, k), v in tables[s].items():
            got, prov = resolve(s, i, k)
            if got != v:
                bad.append(_mismatch(s, i, k, v, got, prov))
        report.add(f"betti == oracle on {s}", not bad, "; ".join(bad[:5]))
    return report


def verify_recurrences(max_g: int = 8, trunc: int = 40) -> Report:
    return consistency_check(max_g, Bounds(trunc=trunc))
