"""Series pipeline for closed orientable surfaces and the unified resolver.

K_g comes from the genus recurrence, V_{g,n} from its closed form, and
the three master series P_st, P_0, P_1 from K_g and X_g.  ``betti``
dispatches every surface kind to the right computation and cross-checks
the series path against the closed formulas.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import formulas
from .core import BettiTable, Kind, ProvenanceConflict, Surface, ext_binom
from .fitting import Poly, lagrange, poly_eval, render
from .series import (
    SeriesError,
    S_series,
    TruncatedSeries,
    X_series,
    coefficient,
    polynomial,
    series_shift,
)


MASTER = ("P_st", "P_0", "P_1")
FAMILIES = {"stable": "P_st", "diag": "P_0", "top": "P_1"}
PARITIES = ("odd", "even")


def _pow(a: TruncatedSeries, e: int) -> TruncatedSeries:
    out = TruncatedSeries.one(a.trunc)
    for _ in range(e):
        out = out * a
    return out


@lru_cache(maxsize=None)
def V_series(g: int, n: int, trunc: int) -> TruncatedSeries:
    """S^g (1+t^3) sum_{j<g+n} t^j (C(2g, j) - C(2g, j-2n)); zero when n = 0."""
    if g < 0 or n < 0:
        raise ValueError("need g, n >= 0")
    if n == 0:
        return TruncatedSeries.zero(trunc)
    inner = polynomial([ext_binom(2 * g, j) - ext_binom(2 * g, j - 2 * n)
                        for j in range(g + n)], trunc)
    return _pow(S_series(trunc), g) * polynomial([1, 0, 0, 1], trunc) * inner


def _k_step(K_g: TruncatedSeries, g: int) -> TruncatedSeries:
    """K_{g+1} from K_g via t K_{g+1} = 1 + t^3 + t S V_{g,1} - K_g (valid for g >= 1)."""
    T = K_g.trunc
    t = polynomial([0, 1], T)
    rhs = 1 + polynomial([0, 0, 0, 1], T) + t * S_series(T) * V_series(g, 1, T) - K_g
    return series_shift(rhs, -1)


@lru_cache(maxsize=None)
def K_series(g: int, trunc: int, check: bool = True) -> TruncatedSeries:
    """Poincare series of K_g = ker(delta) intersect ker(Delta).

    Starts from K_1 = S V_{0,1} and iterates the genus recurrence; the
    result is compared coefficient-wise with the double-sum formula.
    """
    if g < 0:
        raise ValueError("g must be nonnegative")
    if g == 0:
        K = TruncatedSeries.one(trunc)
    else:
        T = trunc + g - 1
        K = S_series(T) * V_series(0, 1, T)
        for h in range(1, g):
            K = _k_step(K, h)
    if check:
        for i in range(trunc + 1):
            want = formulas.K_dims_formula(g, i)
            if K[i] != want:
                raise ProvenanceConflict(
                    f"K_{g}: recurrence gives {K[i]} in degree {i}, formula gives {want}")
    return K


@lru_cache(maxsize=None)
def master_series(g: int, which: str, trunc: int) -> TruncatedSeries:
    """P_st, P_0 or P_1 for the closed genus-g surface, exact to t^trunc."""
    if which not in MASTER:
        raise ValueError(f"unknown series {which!r}; expected one of {MASTER}")
    T = trunc + 2
    K = K_series(g, T)
    X = X_series(g, T)
    p = lambda *cs: polynomial(cs, T)  # noqa: E731
    try:
        if which == "P_st":
            body = p(1, 1) * K + p(0, -1, 1) * X - 1
            out = p(1, 0, 0, 1) * series_shift(body, -2)
        elif which == "P_0":
            body = p(1, 0, 1, 1) * K + p(-1, 1, -1) + p(0, 0, 0, -1, 1) * X
            out = series_shift(body, -1)
        else:
            out = p(0, 0, 1) * K
    except SeriesError as exc:
        raise SeriesError(f"master series not divisible ({which}, g={g}): {exc}") from exc
    return out.truncate(trunc)


def _series_trunc(i: int) -> int:
    # round up so nearby queries share one cached series
    return max(16, -(-(i + 1) // 16) * 16)


def closed_orientable_series_value(g: int, i: int, k: int) -> int:
    if i > k + 1:
        return 0
    which = "P_1" if i == k + 1 else ("P_0" if i == k else "P_st")
    c = coefficient(master_series(g, which, _series_trunc(i)), i)
    if c.denominator != 1 or c < 0:
        raise SeriesError(f"{which} coefficient {c} at t^{i} is not a Betti number")
    return int(c)


def formula_value(s: Surface, i: int, k: int) -> int:
    if s.kind is Kind.CLOSED_ORIENTABLE:
        return formulas.betti_closed_orientable(s.g, i, k)
    if s.kind is Kind.OPEN_ORIENTABLE:
        return formulas.betti_open_orientable(s.g, s.n, i, k)
    if s.kind is Kind.CLOSED_NONORIENTABLE:
        return formulas.betti_closed_nonorientable(s.h, i, k)
    return formulas.betti_open_nonorientable(s.h, s.n, i, k)


def resolve(s: Surface, i: int, k: int, cross_check: bool = True) -> tuple[int, str]:
    """(beta_i(B_k(s)), provenance).

    Closed orientable surfaces go through the master series, everything
    else through the closed formulas.
    """
    if i < 0 or k < 0:
        raise ValueError("need i, k >= 0")
    if s.kind is not Kind.CLOSED_ORIENTABLE:
        return formula_value(s, i, k), "formula"
    value = closed_orientable_series_value(s.g, i, k)
    if cross_check:
        other = formulas.betti_closed_orientable(s.g, i, k)
        if other != value:
            raise ProvenanceConflict(
                f"{s} (i={i}, k={k}): series gives {value}, formula gives {other}")
    return value, "series"


def betti(s: Surface, i: int, k: int) -> int:
    return resolve(s, i, k)[0]


def betti_table(s: Surface, max_i: int, max_k: int,
                paths: tuple[str, ...] = ("formula", "series")) -> BettiTable:
    """Table over i <= max_i, k <= max_k filled by every requested path."""
    table = BettiTable(s)
    for k in range(max_k + 1):
        for i in range(max_i + 1):
            if "formula" in paths:
                table.record(i, k, formula_value(s, i, k), "formula")
            if "series" in paths and s.kind is Kind.CLOSED_ORIENTABLE:
                table.record(i, k, closed_orientable_series_value(s.g, i, k), "series")
    if "oracle" in paths:
        from .ce import betti_oracle
        table.merge(betti_oracle(s, max_i, max_k))
    return table


def stable_column(g: int, max_i: int, path: str = "series") -> list[int]:
    """beta_i^st(B(Sigma_g)) for i = 0..max_i."""
    if path == "series":
        P = master_series(g, "P_st", max(max_i, 0))
        return [int(P[i]) for i in range(max_i + 1)]
    if path == "formula":
        return [formulas.betti_closed_stable(g, i) for i in range(max_i + 1)]
    raise ValueError(f"unknown path {path!r}")


# --- fixed-genus polynomials ---------------------------------------------

class NotPolynomial(ArithmeticError):
    pass


@dataclass(frozen=True)
class FittedPolynomial:
    g: int
    family: str
    parity: str
    coeffs: Poly = field(default=())

    def __call__(self, i) -> Fraction:
        return poly_eval(self.coeffs, i)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading_coefficient(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    @property
    def nonnegative_coefficients(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    @property
    def label(self) -> str:
        letter = "p" if self.parity == "odd" else "q"
        sup = {"stable": "st", "diag": "0", "top": "1"}[self.family]
        return f"{letter}^{sup}_{self.g}"

    def render(self) -> str:
        return render(self.coeffs)


def family_value(g: int, family: str, i: int) -> int:
    """The Betti number the (family, i) pair refers to, from the master series."""
    which = FAMILIES[family]
    return int(coefficient(master_series(g, which, _series_trunc(i)), i))


def polynomial_fit(g: int, family: str, parity: str) -> FittedPolynomial:
    """Interpolate the 2g sampled values and confirm on two more points.

    Nodes are 5, 7, 9, ... (odd) or 6, 8, 10, ... (even).  For g = 0 there
    are no nodes and the fit is the zero polynomial, still checked on the
    two verification points.
    """
    if g < 0:
        raise ValueError("g must be nonnegative")
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {tuple(FAMILIES)}")
    if parity not in PARITIES:
        raise ValueError(f"parity must be 'odd' or 'even', got {parity!r}")
    start = 5 if parity == "odd" else 6
    pts = [start + 2 * r for r in range(2 * g + 2)]
    nodes, extra = pts[: 2 * g], pts[2 * g:]
    coeffs = lagrange(nodes, [family_value(g, family, i) for i in nodes])
    fit = FittedPolynomial(g, family, parity, coeffs)
    for i in extra:
        got, want = fit(i), family_value(g, family, i)
        if got != want:
            raise NotPolynomial(
                f"family not polynomial of stated degree: {fit.label}({i}) = {got}, "
                f"Betti number is {want}")
    if fit.degree > 2 * g - 1:
        raise NotPolynomial(f"{fit.label} has degree {fit.degree} > {2 * g - 1}")
    return fit


# --- consistency report ----------------------------------------------------

@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}" + (
            f"  {self.detail}" if self.detail else "")


@dataclass
class Report:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.results.append(CheckResult(name, passed, detail))

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def render(self) -> str:
        return "\n".join(r.line() for r in self.results)


@dataclass
class Bounds:
    """Which checks :func:`consistency_check` runs; ``None`` switches a group off."""
    trunc: int | None = None
    max_n: int = 3
    oracle_max_k: int | None = None
    cap: int | None = None


def _mismatch(surface, i, k, expected, got, provenance) -> str:
    return f"surface={surface} i={i} k={k} expected={expected} got={got} provenance={provenance}"


def check_V_recurrence(g: int, n: int, trunc: int) -> str | None:
    lhs = V_series(g + 1, n, trunc)
    t = polynomial([0, 1], trunc)
    rhs = S_series(trunc) * (V_series(g, n + 1, trunc) + 2 * t * V_series(g, n, trunc)
                             + t * t * V_series(g, n - 1, trunc))
    if lhs != rhs:
        j = next(j for j in range(trunc + 1) if lhs[j] != rhs[j])
        return f"V_{g + 1},{n}: t^{j} coefficient {lhs[j]} != {rhs[j]}"
    return None


def check_V_congruence(g: int) -> str | None:
    T = g + 1
    V = V_series(g, 1, T)
    rhs = polynomial([1, 0, 0, 1], T) * polynomial([1, 0, -1], T) * X_series(g, T)
    if V != rhs:
        j = next(j for j in range(T + 1) if V[j] != rhs[j])
        return f"V_{g},1 mod t^{g + 2}: t^{j} coefficient {V[j]} != {rhs[j]}"
    return None


def K_closed_form_series(g: int, trunc: int) -> TruncatedSeries:
    return TruncatedSeries([formulas.K_dims_formula(g, i) for i in range(trunc + 1)], trunc)


def check_K_recurrence(g: int, trunc: int) -> str | None:
    """t K_{g+1} = 1 + t^3 + t S V_{g,1} - K_g with both K's from the double sum."""
    T = trunc
    t = polynomial([0, 1], T)
    lhs = t * K_closed_form_series(g + 1, T)
    rhs = 1 + polynomial([0, 0, 0, 1], T) + t * S_series(T) * V_series(g, 1, T) \
        - K_closed_form_series(g, T)
    if lhs != rhs:
        j = next(j for j in range(T + 1) if lhs[j] != rhs[j])
        return f"K_{g + 1}: t^{j} coefficient {lhs[j]} != {rhs[j]}"
    return None


def consistency_check(g: int, bounds: Bounds | None = None) -> Report:
    """Cross-check every computation path for genera 0..g.

    Series checks run when ``bounds.trunc`` is set, oracle and Euler
    characteristic checks when ``bounds.oracle_max_k`` is set.  Failures
    are report entries, never exceptions.
    """
    report = Report()
    if g < 0:
        raise ValueError("g must be nonnegative")
    if bounds is None:
        return report
    if bounds.trunc is not None:
        T = bounds.trunc
        for h in range(g + 1):
            for n in range(1, bounds.max_n + 1):
                if h < g:
                    err = check_V_recurrence(h, n, T)
                    report.add(f"V recurrence g={h} n={n}", err is None, err or "")
            err = check_V_congruence(h)
            report.add(f"V_g,1 congruence g={h}", err is None, err or "")
            if 1 <= h < g:
                err = check_K_recurrence(h, T)
                report.add(f"K recurrence g={h}", err is None, err or "")
            bad = []
            s = Surface.closed_orientable(h)
            for which, fn in (("P_st", formulas.betti_closed_stable),
                              ("P_0", formulas.betti_closed_unstable_diag),
                              ("P_1", formulas.betti_closed_unstable_top)):
                P = master_series(h, which, T)
                for i in range(T):
                    if which == "P_1" and i == 0:
                        if P[0] != 0:
                            bad.append(_mismatch(s, 0, -1, 0, P[0], "series"))
                        continue
                    want = fn(h, i)
                    if P[i] != want:
                        k = {"P_st": i + 1, "P_0": i, "P_1": i - 1}[which]
                        bad.append(_mismatch(s, i, k, want, P[i], "series"))
            report.add(f"formula vs series g={h}", not bad, "; ".join(bad[:5]))
    if bounds.oracle_max_k is not None:
        from .ce import BlockTooLarge, betti_oracle, euler_characteristic_check, surface_ce_spec
        K = bounds.oracle_max_k
        for h in range(g + 1):
            s = Surface.closed_orientable(h)
            try:
                oracle = betti_oracle(s, K + 1, K, bounds.cap)
            except BlockTooLarge as exc:
                report.add(f"formula vs oracle {s} k<={K}", False, str(exc))
                continue
            bad = []
            for (i, k), v in oracle.items():
                got, prov = resolve(s, i, k)
                if got != v:
                    bad.append(_mismatch(s, i, k, v, got, prov))
            report.add(f"formula vs oracle {s} k<={K}", not bad, "; ".join(bad[:5]))
            spec = surface_ce_spec(s)
            bad = []
            for k in range(K + 1):
                chain, hom = euler_characteristic_check(spec, k, bounds.cap)
                if chain != hom:
                    bad.append(f"k={k}: chains {chain}, homology {hom}")
            report.add(f"Euler characteristic {s} k<={K}", not bad, "; ".join(bad))
    return report
