"""Closed-form Betti numbers of configuration spaces of surfaces.

Every function returns an exact nonnegative ``int``.  Small-degree cases
of the closed orientable formulas are table-driven; the generic branches
are signed double sums over (j, m) of trinomial coefficients whose top
argument is an integer divided by 4 (checked, never rounded).
"""

from __future__ import annotations

from .core import ext_binom, trinomial


class FormulaError(ArithmeticError):
    pass


class OutOfRange(ValueError):
    pass


def _nonneg(value: int, what: str) -> int:
    if value < 0:
        raise FormulaError(f"{what} evaluated to a negative number {value}")
    return value


# --- nonorientable and open surfaces -------------------------------------

def betti_closed_nonorientable(h: int, i: int, k: int) -> int:
    if h < 1 or i < 0 or k < 0:
        raise ValueError("need h >= 1 and i, k >= 0")
    tail = ext_binom(h + i - 5, h - 2)
    if i <= k:
        return ext_binom(h + i - 2, h - 2) + tail
    if i == k + 1:
        return tail
    return 0


def betti_open_nonorientable(h: int, n: int, i: int, k: int) -> int:
    if h < 1 or n < 1 or i < 0 or k < 0:
        raise ValueError("need h, n >= 1 and i, k >= 0")
    if i > k:
        return 0
    r = h + n - 3
    return ext_binom(r + i, r) + ext_binom(r + i - 1, r)


def bc_h_dims(g: int, i: int, k: int) -> int:
    """Homology of CE of the Lie algebra on a_i, b_i with [a_i, b_i] = p~, bidegree (i, k)."""
    if g < 0:
        raise ValueError("g must be nonnegative")
    if 0 <= i <= g and i == k:
        return _nonneg(ext_binom(2 * g, i) - ext_binom(2 * g, i - 2), "bc_h_dims")
    if g + 1 <= i <= 2 * g + 1 and i == k - 1:
        return _nonneg(ext_binom(2 * g, i - 1) - ext_binom(2 * g, i + 1), "bc_h_dims")
    return 0


def w_dims(g: int, n: int, i: int, k: int) -> int:
    """dim_{i,k} of Sym(p, a~_r, b~_r, u_s, u~_s) for the n-punctured genus-g surface."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if i < 0 or k < 0 or i > k:
        return 0
    return sum(ext_binom(n + i - 2 * l - 2, n - 2) * ext_binom(2 * g + l - 1, 2 * g - 1)
               for l in range(i // 2 + 1))


def betti_open_orientable(g: int, n: int, i: int, k: int) -> int:
    if g < 0 or n < 1:
        raise ValueError("need g >= 0 and n >= 1")
    if i < 0 or k < 0 or i > k:
        return 0
    stable = i <= k - 1
    total = 0
    for j in range(g + 1):
        c = ext_binom(2 * g, j) - ext_binom(2 * g, j - 2)
        if not c:
            continue
        inner = 0
        for l in range((i - j) // 2 + 1):
            term = ext_binom(n + i - j - 2 * l - 2, n - 2)
            if stable:
                term += ext_binom(n + i + j - 2 * g - 2 * l - 3, n - 2)
            inner += ext_binom(2 * g + l - 1, 2 * g - 1) * term
        total += c * inner
    return _nonneg(total, "betti_open_orientable")


# --- closed orientable surfaces ------------------------------------------

def _top(j: int, m: int, i: int, g: int, offset: int, sign: int) -> int:
    num = 6 * j + 2 * i + 2 * g - 2 * m + offset + sign * 3 * (-1) ** (i + j + g + m)
    if num % 4:
        raise FormulaError(f"non-integral trinomial top {num}/4 at (g={g}, i={i}, j={j}, m={m})")
    return num // 4


def kernel_sum(g: int, i: int, shifts: tuple[tuple[int, int], ...]) -> int:
    """sum_{j<g} sum_{m<=j} (-1)^(g+j+1) (2j-2m+2)/(2j-m+2) sum_s trinomial(top_s, m, 2j-m+1).

    ``shifts`` lists (offset, sign) so that top_s = (6j+2i+2g-2m+offset
    + sign*3*(-1)^(i+j+g+m))/4.
    """
    total = 0
    for j in range(g):
        sgn = -1 if (g + j + 1) % 2 else 1
        for m in range(j + 1):
            tri = sum(trinomial(_top(j, m, i, g, off, s), m, 2 * j - m + 1) for off, s in shifts)
            num = (2 * j - 2 * m + 2) * tri
            den = 2 * j - m + 2
            if num % den:
                raise FormulaError(f"non-integral summand at (g={g}, i={i}, j={j}, m={m})")
            total += sgn * (num // den)
    return total


K_SHIFTS = ((-1, -1),)
TOP_SHIFTS = ((-5, -1),)
DIAG_SHIFTS = ((1, 1), (-3, 1), (-5, -1))
STABLE_SHIFTS = ((3, -1), (1, 1), (-3, 1), (-5, -1))


def K_dims_formula(g: int, i: int) -> int:
    """dim_i of ker(delta) intersect ker(Delta) on X_g, by the double sum."""
    if g < 0 or i < 0:
        raise ValueError("need g, i >= 0")
    if i <= 2:
        return (1, 0, 2 * g)[i]
    return _nonneg(kernel_sum(g, i, K_SHIFTS), "K_dims_formula")


def K_dims_high_genus(g: int, i: int) -> int:
    """Single-binomial form, valid for 3 <= i <= g + 2."""
    if not 3 <= i <= g + 2:
        raise OutOfRange(f"(g={g}, i={i}) outside 3 <= i <= g+2")
    return ext_binom(2 * g + i - 3, i - 1)


def betti_closed_unstable_top(g: int, i: int) -> int:
    """beta_i(B_{i-1}(Sigma_g))."""
    if g < 0 or i < 1:
        raise ValueError("need g >= 0 and i >= 1")
    if i < 5:
        return (0, 1, 0, 2 * g)[i - 1]
    return _nonneg(kernel_sum(g, i, TOP_SHIFTS), "betti_closed_unstable_top")


def _exact_div(num: int, den: int) -> int:
    if num % den:
        raise FormulaError(f"{num}/{den} is not an integer")
    return num // den


def _cubic(g: int) -> int:
    return _exact_div(4 * g ** 3 - g + 3, 3)


def _quartic(g: int) -> int:
    return _exact_div(4 * g ** 4 + 4 * g ** 3 - g ** 2 + 11 * g, 6)


def betti_closed_unstable_diag(g: int, i: int) -> int:
    """beta_i(B_i(Sigma_g))."""
    if g < 0 or i < 0:
        raise ValueError("need g, i >= 0")
    if i == 0:
        return 1
    if i == 1:
        return 2 * g
    if i == 2:
        return 2 * g * g - g
    if i == 3:
        return 4 if g == 1 else _cubic(g)
    if i == 4:
        return {0: 0, 1: 4, 2: 24}.get(g, _quartic(g))
    value = -ext_binom(2 * g + i - 4, 2 * g - 2) + kernel_sum(g, i, DIAG_SHIFTS)
    return _nonneg(value, "betti_closed_unstable_diag")


def betti_closed_stable(g: int, i: int) -> int:
    """beta_i(B_k(Sigma_g)) for any k > i."""
    if g < 0 or i < 0:
        raise ValueError("need g, i >= 0")
    if i == 0:
        return 1
    if i == 1:
        return 2 * g
    if i == 2:
        return {0: 0, 1: 3}.get(g, 2 * g * g - g)
    if i == 3:
        return {0: 1, 1: 5, 2: 16}.get(g, _cubic(g))
    if i == 4:
        return {0: 0, 1: 7, 2: 28, 3: 90}.get(g, _quartic(g))
    value = (-ext_binom(2 * g + i - 1, 2 * g - 2) - ext_binom(2 * g + i - 4, 2 * g - 2)
             + kernel_sum(g, i, STABLE_SHIFTS))
    return _nonneg(value, "betti_closed_stable")


def betti_genus_stable(g: int, i: int, k: int) -> int:
    """Two-binomial form of beta_i(B_k(Sigma_g)) when 5 <= i <= g."""
    if not 5 <= i <= g:
        raise OutOfRange(f"(g={g}, i={i}) outside genus-stable range 5 <= i <= g")
    if k < 0:
        raise ValueError("k must be nonnegative")
    tail = ext_binom(2 * g + i - 5, i - 3)
    if i <= k:
        return ext_binom(2 * g + i - 2, i) + tail
    if i == k + 1:
        return tail
    return 0


def betti_closed_orientable(g: int, i: int, k: int) -> int:
    """beta_i(B_k(Sigma_g)) routed through the three closed-form families."""
    if i < 0 or k < 0:
        raise ValueError("need i, k >= 0")
    if i > k + 1:
        return 0
    if i == k + 1:
        return betti_closed_unstable_top(g, i)
    if i == k:
        return betti_closed_unstable_diag(g, i)
    return betti_closed_stable(g, i)
