"""The algebra X_g = Q[a~_i, b~_i] (x) Lambda[a_i, b_i] and its operators.

Generator order is a_1, b_1, ..., a_g, b_g (odd, degree 1) followed by
a~_1, b~_1, ..., a~_g, b~_g (even, degree 2).  A monomial is its exponent
vector in that order.

    Delta = sum_j d/db_j d/da_j            degree -2
    delta = sum_c c~ d/dc                  degree +1
    h     = sum_c c d/dc~                  degree -1
    H     = h / (polynomial degree)        degree -1, zero on constants

All four preserve the charge vector (#a_j + #a~_j - #b_j - #b~_j)_j, so
every kernel and homology computation below is done one charge sector at
a time.  The results are plain dimensions; nothing from the closed
formulas is used here.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .ce import BlockTooLarge, max_block_dim
from .linalg import SparseRationalMatrix, homology_dim, rank

Mono = tuple[int, ...]
Vec = dict  # {key: Fraction}

OPERATORS = ("Delta", "delta", "h", "H")
DEGREE_SHIFT = {"Delta": -2, "delta": 1, "h": -1, "H": -1}


@lru_cache(maxsize=None)
def x_basis(g: int, degree: int) -> tuple[Mono, ...]:
    """Monomials of X_g in a given homological degree, descending lex order."""
    if degree < 0:
        return ()
    out = []
    ext = [0] * (2 * g)
    for mask in range(1 << (2 * g)):
        for j in range(2 * g):
            ext[j] = (mask >> j) & 1
        rem = degree - sum(ext)
        if rem < 0 or rem % 2:
            continue
        for poly in _compositions(rem // 2, 2 * g):
            out.append(tuple(ext) + poly)
    out.sort(reverse=True)
    return tuple(out)


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def x_degree(mono: Mono) -> int:
    half = len(mono) // 2
    return sum(mono[:half]) + 2 * sum(mono[half:])


def poly_degree(mono: Mono) -> int:
    """Number of factors: the grading H divides by."""
    return sum(mono)


def charge(mono: Mono) -> tuple[int, ...]:
    g = len(mono) // 4
    ext, poly = mono[: 2 * g], mono[2 * g:]
    return tuple(ext[2 * j] + poly[2 * j] - ext[2 * j + 1] - poly[2 * j + 1] for j in range(g))


def _sign_before(mono: Mono, pos: int) -> int:
    # odd generators occupy positions 0 .. 2g-1
    return -1 if sum(mono[:pos]) % 2 else 1


def _d_odd(mono: Mono, pos: int):
    """d/dc for the odd generator at ``pos``: (sign, monomial) or None."""
    if not mono[pos]:
        return None
    s = _sign_before(mono, pos)
    new = list(mono)
    new[pos] = 0
    return s, tuple(new)


def _mul_odd(mono: Mono, pos: int):
    """Left multiplication by the odd generator at ``pos``, reordered."""
    if mono[pos]:
        return None
    s = _sign_before(mono, pos)
    new = list(mono)
    new[pos] = 1
    return s, tuple(new)


def op_Delta(mono: Mono) -> Vec:
    g = len(mono) // 4
    out: Vec = {}
    for j in range(g):
        r = _d_odd(mono, 2 * j)
        if r is None:
            continue
        s1, m1 = r
        r = _d_odd(m1, 2 * j + 1)
        if r is None:
            continue
        s2, m2 = r
        out[m2] = out.get(m2, 0) + s1 * s2
    return {k: Fraction(v) for k, v in out.items() if v}


def op_delta(mono: Mono) -> Vec:
    g = len(mono) // 4
    out: Vec = {}
    for c in range(2 * g):
        r = _d_odd(mono, c)
        if r is None:
            continue
        s, m = r
        new = list(m)
        new[2 * g + c] += 1
        key = tuple(new)
        out[key] = out.get(key, 0) + s
    return {k: Fraction(v) for k, v in out.items() if v}


def op_h(mono: Mono) -> Vec:
    g = len(mono) // 4
    out: Vec = {}
    for c in range(2 * g):
        e = mono[2 * g + c]
        if not e:
            continue
        new = list(mono)
        new[2 * g + c] -= 1
        r = _mul_odd(tuple(new), c)
        if r is None:
            continue
        s, m = r
        out[m] = out.get(m, 0) + s * e
    return {k: Fraction(v) for k, v in out.items() if v}


def op_H(mono: Mono) -> Vec:
    p = poly_degree(mono)
    if p == 0:
        return {}
    return {k: v / p for k, v in op_h(mono).items()}


_OPS: dict[str, Callable[[Mono], Vec]] = {
    "Delta": op_Delta, "delta": op_delta, "h": op_h, "H": op_H,
}


def apply(word: Sequence[str], vec: Vec) -> Vec:
    """Apply operators right to left, as written: apply(["delta", "Delta"], v) = delta(Delta(v))."""
    for name in reversed(word):
        fn = _OPS[name]
        out: Vec = {}
        for m, c in vec.items():
            for m2, c2 in fn(m).items():
                w = out.get(m2, 0) + c * c2
                if w:
                    out[m2] = w
                else:
                    out.pop(m2, None)
        vec = out
    return vec


def operator_matrix(g: int, which: str | Sequence[str], degree: int) -> SparseRationalMatrix:
    """Matrix of an operator (or composite word) on the degree block of X_g."""
    word = [which] if isinstance(which, str) else list(which)
    for w in word:
        if w not in _OPS:
            raise ValueError(f"unknown operator {w!r}; expected one of {OPERATORS}")
    src = x_basis(g, degree)
    tgt = x_basis(g, degree + sum(DEGREE_SHIFT[w] for w in word))
    row_of = {m: r for r, m in enumerate(tgt)}
    entries = {}
    for c, m in enumerate(src):
        for m2, v in apply(word, {m: Fraction(1)}).items():
            entries[(row_of[m2], c)] = v
    return SparseRationalMatrix.from_dict(len(tgt), len(src), entries)


# Generic sector-by-sector kernel and homology.  A column is a pair
# (tag, monomial); an image function sends it to {(tag, monomial): coeff}.

Column = tuple[str, Mono]


def _check_cap(n: int, what: str, cap: int | None):
    limit = max_block_dim(cap)
    if n > limit:
        raise BlockTooLarge(f"{what} has dimension {n} > cap {limit}")


def _by_charge(cols: Iterable[Column]) -> dict[tuple, list[Column]]:
    parts: dict[tuple, list[Column]] = {}
    for col in cols:
        parts.setdefault(charge(col[1]), []).append(col)
    return parts


def _matrix_from_images(cols: list[Column], image, rows: list[Column] | None = None):
    row_of: dict = {} if rows is None else {r: j for j, r in enumerate(rows)}
    entries = {}
    for c, col in enumerate(cols):
        for key, v in image(col).items():
            if key not in row_of:
                if rows is not None:
                    raise KeyError(f"image {key} outside the target block")
                row_of[key] = len(row_of)
            entries[(row_of[key], c)] = v
    return SparseRationalMatrix.from_dict(len(row_of), len(cols), entries)


def kernel_dim(cols: list[Column], image) -> int:
    total = 0
    for part in _by_charge(cols).values():
        total += len(part) - rank(_matrix_from_images(part, image))
    return total


def graded_homology(chains: Callable[[int], list[Column]], d, i: int) -> int:
    """dim H_i of a complex with differential of degree -1, checking d^2 = 0."""
    here = _by_charge(chains(i))
    below = _by_charge(chains(i - 1)) if i > 0 else {}
    above = _by_charge(chains(i + 1))
    total = 0
    for ch, mons in here.items():
        d_out = _matrix_from_images(mons, d, below.get(ch, []))
        d_in = _matrix_from_images(above.get(ch, []), d, mons)
        total += homology_dim(d_out, d_in)
    return total


def _lift(tag: str, vec: Vec) -> dict:
    return {(tag, m): c for m, c in vec.items()}


def _add(*vecs: dict) -> dict:
    out: dict = {}
    for v in vecs:
        for k, c in v.items():
            w = out.get(k, 0) + c
            if w:
                out[k] = w
            else:
                out.pop(k, None)
    return out


def _scale(vec: dict, c) -> dict:
    return {k: c * v for k, v in vec.items()}


def K_dims_oracle(g: int, max_i: int, cap: int | None = None) -> list[int]:
    """dim_i of ker(delta) intersect ker(Delta) on X_g, for i = 0..max_i."""
    out = []
    for i in range(max_i + 1):
        cols = [("x", m) for m in x_basis(g, i)]
        _check_cap(len(cols), f"X_{g} degree {i}", cap)

        def image(col):
            v = {col[1]: Fraction(1)}
            return _add(_lift("delta", apply(["delta"], v)), _lift("Delta", apply(["Delta"], v)))

        out.append(kernel_dim(cols, image))
    return out


def V_dims_oracle(g: int, n: int, max_degree: int, cap: int | None = None) -> list[int]:
    """Graded dimensions of V(g, n) = {(q, r) : Delta^n q = delta Delta^(n-1) r, Delta^n r = 0}.

    q lives in X_g and r in X_g[3], so a pair of total degree d has
    q in X_d and r in X_(d-3).  V(g, 0) is zero by convention.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return [0] * (max_degree + 1)
    dn = ["Delta"] * n
    ddn = ["delta"] + ["Delta"] * (n - 1)

    def image(col):
        tag, m = col
        v = {m: Fraction(1)}
        if tag == "q":
            return _lift("eq1", apply(dn, v))
        return _add(_lift("eq1", _scale(apply(ddn, v), -1)), _lift("eq2", apply(dn, v)))

    out = []
    for d in range(max_degree + 1):
        cols = [("q", m) for m in x_basis(g, d)] + [("r", m) for m in x_basis(g, d - 3)]
        _check_cap(len(cols), f"V({g},{n}) degree {d}", cap)
        out.append(kernel_dim(cols, image))
    return out


def ker_deltaDelta_dims(g: int, max_i: int, cap: int | None = None) -> list[int]:
    """Graded dimensions of the kernel of delta . Delta on X_g."""
    out = []
    for i in range(max_i + 1):
        cols = [("x", m) for m in x_basis(g, i)]
        _check_cap(len(cols), f"X_{g} degree {i}", cap)
        out.append(kernel_dim(cols, lambda col: apply(["delta", "Delta"], {col[1]: Fraction(1)})))
    return out


def _stable_chains(g: int):
    def chains(i: int) -> list[Column]:
        return [("x", m) for m in x_basis(g, i)] + [("x3", m) for m in x_basis(g, i - 3)]
    return chains


def stable_differential(col: Column) -> dict:
    """d_st(q, r) = (delta Delta q, Delta^2 q - delta Delta r)."""
    tag, m = col
    v = {m: Fraction(1)}
    if tag == "x":
        return _add(_lift("x", apply(["delta", "Delta"], v)),
                    _lift("x3", apply(["Delta", "Delta"], v)))
    return _lift("x3", _scale(apply(["delta", "Delta"], v), -1))


def stable_complex_dims(g: int, max_i: int, cap: int | None = None) -> list[int]:
    """Homology dimensions of (X_g + X_g[3], d_st) in degrees 0..max_i."""
    chains = _stable_chains(g)
    _check_cap(len(chains(max_i + 1)), f"stable complex degree {max_i + 1}", cap)
    return [graded_homology(chains, stable_differential, i) for i in range(max_i + 1)]
