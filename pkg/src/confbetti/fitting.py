"""Exact polynomial interpolation and a single-fraction text format.

Polynomials are coefficient tuples of ``Fraction``, constant term first.
The text format writes a polynomial in ``i`` as a single fraction with an
integer numerator, e.g. ``(2i^3+3i^2+10i+9)/8``, ``2i-1`` or ``i/2``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import lcm
from typing import Sequence

Poly = tuple[Fraction, ...]


def _trim(cs) -> Poly:
    cs = [Fraction(c) for c in cs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def poly_eval(p: Sequence[Fraction], x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def lagrange(xs: Sequence[int], ys: Sequence) -> Poly:
    """The unique polynomial of degree < len(xs) through the points."""
    if len(xs) != len(ys):
        raise ValueError("need as many values as nodes")
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    total = [Fraction(0)] * len(xs)
    for j, (xj, yj) in enumerate(zip(xs, ys)):
        if not yj:
            continue
        basis: Poly = (Fraction(1),)
        den = Fraction(1)
        for m, xm in enumerate(xs):
            if m != j:
                basis = poly_mul(basis, (Fraction(-xm), Fraction(1)))
                den *= xj - xm
        scale = Fraction(yj) / den
        for d, c in enumerate(basis):
            total[d] += scale * c
    return _trim(total)


def render(p: Sequence[Fraction], var: str = "i") -> str:
    p = _trim(p)
    if not p:
        return "0"
    den = 1
    for c in p:
        den = lcm(den, c.denominator)
    terms = []
    for d in range(len(p) - 1, -1, -1):
        n = p[d] * den
        if not n:
            continue
        n = int(n)
        mag = abs(n)
        if d == 0:
            body = str(mag)
        else:
            mono = var if d == 1 else f"{var}^{d}"
            body = mono if mag == 1 else f"{mag}{mono}"
        if not terms:
            terms.append(body if n > 0 else "-" + body)
        else:
            terms.append(("+" if n > 0 else "-") + body)
    num = "".join(terms)
    if den == 1:
        return num
    if len(terms) > 1:
        num = f"({num})"
    return f"{num}/{den}"


_TERM = re.compile(r"([+-]?)(\d*)(?:([a-z])(?:\^(\d+))?)?")


def parse(text: str, var: str = "i") -> Poly:
    """Inverse of :func:`render`."""
    s = text.replace(" ", "")
    den = 1
    m = re.fullmatch(r"\(?(.*?)\)?/(\d+)", s)
    if m:
        s, den = m.group(1), int(m.group(2))
    coeffs: dict[int, Fraction] = {}
    pos = 0
    while pos < len(s):
        t = _TERM.match(s, pos)
        if not t or t.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
        sign, digits, sym, power = t.groups()
        if sym is not None and sym != var:
            raise ValueError(f"unexpected variable {sym!r}")
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        d = 0 if sym is None else (int(power) if power else 1)
        coeffs[d] = coeffs.get(d, 0) + Fraction(c, den)
        pos = t.end()
    top = max(coeffs, default=-1)
    return _trim(coeffs.get(d, 0) for d in range(top + 1))
