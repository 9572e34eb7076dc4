from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from confbetti.core import (
    BettiTable,
    GradedIndex,
    Kind,
    ProvenanceConflict,
    Surface,
    ext_binom,
    trinomial,
)


@pytest.mark.parametrize("n,k,want", [(4, 2, 6), (-1, -1, 1), (-2, 0, 0), (3, 5, 0),
                                      (0, 0, 1), (-1, 0, 0), (5, -1, 0), (-3, -3, 0)])
def test_ext_binom_values(n, k, want):
    assert ext_binom(n, k) == want


@given(st.integers(0, 60), st.integers(0, 60))
def test_ext_binom_matches_comb_for_natural_arguments(n, k):
    assert ext_binom(n, k) == comb(n, k)


@given(st.integers(1, 60), st.integers(1, 60))
def test_pascal(n, k):
    if k <= n - 1:
        assert ext_binom(n, k) == ext_binom(n - 1, k - 1) + ext_binom(n - 1, k)


@given(st.integers(-20, 40))
def test_bottom_zero(n):
    assert ext_binom(n, 0) == (1 if n >= 0 else 0)


def test_ext_binom_huge_is_exact():
    assert ext_binom(200, 100) == comb(200, 100)


@pytest.mark.parametrize("args,want", [((4, 1, 2), 12), ((2, 0, 3), 0), ((1, 0, 1), 1),
                                       ((-1, 0, 0), 0), ((3, -1, 1), 0)])
def test_trinomial_values(args, want):
    assert trinomial(*args) == want


@given(st.integers(-5, 25), st.integers(-5, 25), st.integers(-5, 25))
def test_trinomial_symmetric_and_multinomial(N, a, b):
    assert trinomial(N, a, b) == trinomial(N, b, a)
    if N >= 0 and a >= 0 and b >= 0 and a + b <= N:
        assert trinomial(N, a, b) == factorial(N) // (factorial(a) * factorial(b) * factorial(N - a - b))


def test_surface_constructors_and_names():
    assert Surface.closed_orientable(2).name == "Sigma_2"
    assert Surface.open_orientable(1, 2).name == "Sigma_1,2"
    assert Surface.closed_nonorientable(3).name == "N_3"
    assert Surface.open_nonorientable(2, 1).name == "N_2,1"
    s = Surface.open_orientable(0, 1)
    assert s.kind is Kind.OPEN_ORIENTABLE and s.orientable and not s.closed
    assert s.to_dict() == {"kind": "open-orientable", "g": 0, "n": 1}


@pytest.mark.parametrize("make", [
    lambda: Surface.open_orientable(1, 0),
    lambda: Surface.open_nonorientable(1, 0),
    lambda: Surface.closed_nonorientable(0),
    lambda: Surface.closed_orientable(-1),
    lambda: Surface(Kind.CLOSED_ORIENTABLE, g=1, n=2),
])
def test_invalid_surfaces(make):
    with pytest.raises(ValueError):
        make()


def test_graded_index():
    assert GradedIndex(1, 2) < GradedIndex(2, 0)
    with pytest.raises(ValueError):
        GradedIndex(-1, 0)


def test_betti_table_provenance():
    t = BettiTable(Surface.closed_orientable(1))
    t.record(1, 1, 2, "formula")
    t.record(1, 1, 2, "oracle")
    assert t[1, 1] == 2 and t.provenance(1, 1) == ["formula", "oracle"]
    with pytest.raises(ProvenanceConflict):
        t.record(1, 1, 3, "series")
    with pytest.raises(ValueError):
        t.record(0, 0, -1, "formula")
    with pytest.raises(ValueError):
        t.record(0, 0, 1, "guess")
    assert t.to_json()["entries"] == [{"i": 1, "k": 1, "betti": "2", "provenance": "formula|oracle"}]
