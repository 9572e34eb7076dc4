"""The weighted Chevalley-Eilenberg complex of a surface, built by brute force.

The complex is Sym on generators of weight 1 and 2 with a quadratic
differential: every pair of weight-1 factors in a monomial is replaced by
their bracket.  Homology in degree i and weight k is beta_i(B_k(surface)),
so this module is the ground truth the closed formulas are checked against.

Brackets use the sign-free convention: D(x y) = [x, y] exactly, with only
the Koszul sign of moving the pair to the front of the monomial.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterator

from .core import BettiTable, Kind, Surface
from .linalg import SparseRationalMatrix, homology_dim

DEFAULT_MAX_BLOCK_DIM = 20000
CAP_ENV = "CONFBETTI_MAX_BLOCK_DIM"

Monomial = tuple[int, ...]


class BlockTooLarge(RuntimeError):
    pass


def max_block_dim(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get(CAP_ENV)
    return int(env) if env else DEFAULT_MAX_BLOCK_DIM


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    degree: int
    weight: int

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be nonnegative")
        if self.weight not in (1, 2):
            raise ValueError("weight must be 1 or 2")

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1


@dataclass(frozen=True)
class CESpec:
    """Generators plus the bracket table ``{(x, y): {z: coeff}}`` with x <= y.

    ``charges`` assigns each generator an integer vector preserved by the
    differential; blocks split along it.  An empty charge vector means no
    splitting.
    """

    generators: tuple[GeneratorSpec, ...]
    brackets: dict = field(default_factory=dict)
    charges: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        gens = self.generators
        names = [x.name for x in gens]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        for (x, y), out in self.brackets.items():
            if not 0 <= x <= y < len(gens):
                raise ValueError(f"bad bracket key {(x, y)}")
            gx, gy = gens[x], gens[y]
            if gx.weight != 1 or gy.weight != 1:
                raise ValueError("brackets are only defined on weight-1 generators")
            if x == y and gx.odd:
                raise ValueError("an odd generator squares to zero")
            for z in out:
                gz = gens[z]
                if gz.weight != 2 or gz.degree != gx.degree + gy.degree - 1:
                    raise ValueError(f"[{gx.name},{gy.name}] cannot land on {gz.name}")
                if self.charges and _vadd(self.charges[x], self.charges[y]) != self.charges[z]:
                    raise ValueError("bracket does not preserve the charge grading")
        if self.charges and len(self.charges) != len(gens):
            raise ValueError("one charge vector per generator")

    def index(self, name: str) -> int:
        for j, x in enumerate(self.generators):
            if x.name == name:
                return j
        raise KeyError(name)

    def degree(self, mono: Monomial) -> int:
        return sum(e * x.degree for e, x in zip(mono, self.generators))

    def weight(self, mono: Monomial) -> int:
        return sum(e * x.weight for e, x in zip(mono, self.generators))

    def charge(self, mono: Monomial) -> tuple[int, ...]:
        if not self.charges:
            return ()
        tot = [0] * len(self.charges[0])
        for e, ch in zip(mono, self.charges):
            if e:
                for j, c in enumerate(ch):
                    tot[j] += e * c
        return tuple(tot)

    def render(self, mono: Monomial) -> str:
        parts = []
        for e, x in zip(mono, self.generators):
            if e == 1:
                parts.append(x.name)
            elif e > 1:
                parts.append(f"{x.name}^{e}")
        return "*".join(parts) if parts else "1"


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _gens_closed_orientable(g: int):
    gens = [GeneratorSpec("p", 0, 1)]
    for i in range(1, g + 1):
        gens += [GeneratorSpec(f"a{i}", 1, 1), GeneratorSpec(f"b{i}", 1, 1)]
    gens.append(GeneratorSpec("v", 2, 1))
    gens.append(GeneratorSpec("p~", 1, 2))
    for i in range(1, g + 1):
        gens += [GeneratorSpec(f"a{i}~", 2, 2), GeneratorSpec(f"b{i}~", 2, 2)]
    gens.append(GeneratorSpec("v~", 3, 2))
    return gens


def _symplectic_charges(gens, g: int):
    """a_i, a_i~ carry +e_i and b_i, b_i~ carry -e_i; everything else 0."""
    out = []
    for x in gens:
        ch = [0] * g
        base = x.name.rstrip("~")
        if base[:1] in "ab" and base[1:].isdigit():
            ch[int(base[1:]) - 1] = 1 if base[0] == "a" else -1
        out.append(tuple(ch))
    return tuple(out)


def surface_ce_spec(s: Surface) -> CESpec:
    """Generators and brackets of CE(g_Sigma) for any surface of finite type."""
    if not isinstance(s, Surface):
        raise TypeError("expected a Surface")
    if s.kind is Kind.CLOSED_ORIENTABLE:
        gens = _gens_closed_orientable(s.g)
        ix = {x.name: j for j, x in enumerate(gens)}
        br = {}
        for i in range(1, s.g + 1):
            br[(ix[f"a{i}"], ix[f"b{i}"])] = {ix["p~"]: 1}
        br[(ix["p"], ix["v"])] = {ix["p~"]: 1}
        for i in range(1, s.g + 1):
            br[(ix[f"a{i}"], ix["v"])] = {ix[f"a{i}~"]: 1}
            br[(ix[f"b{i}"], ix["v"])] = {ix[f"b{i}~"]: 1}
        br[(ix["v"], ix["v"])] = {ix["v~"]: 1}
        return CESpec(tuple(gens), br, _symplectic_charges(gens, s.g) if s.g else ())
    if s.kind is Kind.OPEN_ORIENTABLE:
        gens = [GeneratorSpec("p", 0, 1)]
        for i in range(1, s.g + 1):
            gens += [GeneratorSpec(f"a{i}", 1, 1), GeneratorSpec(f"b{i}", 1, 1)]
        gens += [GeneratorSpec(f"u{j}", 1, 1) for j in range(1, s.n)]
        gens.append(GeneratorSpec("p~", 1, 2))
        for i in range(1, s.g + 1):
            gens += [GeneratorSpec(f"a{i}~", 2, 2), GeneratorSpec(f"b{i}~", 2, 2)]
        gens += [GeneratorSpec(f"u{j}~", 2, 2) for j in range(1, s.n)]
        ix = {x.name: j for j, x in enumerate(gens)}
        br = {(ix[f"a{i}"], ix[f"b{i}"]): {ix["p~"]: 1} for i in range(1, s.g + 1)}
        return CESpec(tuple(gens), br, _symplectic_charges(gens, s.g) if s.g else ())
    if s.kind is Kind.CLOSED_NONORIENTABLE:
        gens = [GeneratorSpec("p", 0, 1)]
        gens += [GeneratorSpec(f"u{j}", 1, 1) for j in range(1, s.h)]
        gens += [GeneratorSpec(f"u{j}~", 2, 2) for j in range(1, s.h)]
        gens.append(GeneratorSpec("v~", 3, 2))
        return CESpec(tuple(gens), {})
    gens = [GeneratorSpec("p", 0, 1)]
    gens += [GeneratorSpec(f"u{j}", 1, 1) for j in range(1, s.h + s.n)]
    gens += [GeneratorSpec(f"u{j}~", 2, 2) for j in range(1, s.h + s.n - 1)]
    return CESpec(tuple(gens), {})


def heisenberg_ce_spec(g: int) -> CESpec:
    """CE of the Lie algebra spanned by a_i, b_i and their bracket p~.

    This is the tensor factor of the punctured-surface complex that carries
    the whole differential.
    """
    gens = []
    for i in range(1, g + 1):
        gens += [GeneratorSpec(f"a{i}", 1, 1), GeneratorSpec(f"b{i}", 1, 1)]
    gens.append(GeneratorSpec("p~", 1, 2))
    ix = {x.name: j for j, x in enumerate(gens)}
    br = {(ix[f"a{i}"], ix[f"b{i}"]): {ix["p~"]: 1} for i in range(1, g + 1)}
    return CESpec(tuple(gens), br, _symplectic_charges(gens, g) if g else ())


def block_dims(spec: CESpec, max_i: int, max_k: int) -> list[list[int]]:
    """dims[i][k] of every block, counted without enumerating monomials."""
    dims = [[0] * (max_k + 1) for _ in range(max_i + 1)]
    dims[0][0] = 1
    for x in spec.generators:
        if x.odd:
            for d in range(max_i, x.degree - 1, -1):
                for w in range(max_k, x.weight - 1, -1):
                    dims[d][w] += dims[d - x.degree][w - x.weight]
        else:
            for d in range(x.degree, max_i + 1):
                for w in range(x.weight, max_k + 1):
                    dims[d][w] += dims[d - x.degree][w - x.weight]
    return dims


def check_block_cap(spec: CESpec, max_i: int, max_k: int, cap: int | None = None) -> None:
    limit = max_block_dim(cap)
    for i, row in enumerate(block_dims(spec, max_i, max_k)):
        for k, n in enumerate(row):
            if n > limit:
                raise BlockTooLarge(
                    f"block (i={i}, k={k}) has dimension {n} > cap {limit}")


def enumerate_basis(spec: CESpec, max_i: int, max_k: int,
                    cap: int | None = None) -> dict[tuple[int, int], list[Monomial]]:
    """All monomials of degree <= max_i and weight <= max_k, grouped by (i, k).

    Odd generators appear with exponent 0 or 1.  Every (i, k) in range gets
    a (possibly empty) block; within a block monomials are sorted in
    descending lexicographic order of exponent vectors.
    """
    if max_i < 0 or max_k < 0:
        raise ValueError("bounds must be nonnegative")
    check_block_cap(spec, max_i, max_k, cap)
    gens = spec.generators
    blocks: dict[tuple[int, int], list[Monomial]] = {
        (i, k): [] for i in range(max_i + 1) for k in range(max_k + 1)}
    exps = [0] * len(gens)

    def rec(j: int, deg: int, wt: int):
        if j == len(gens):
            blocks[(deg, wt)].append(tuple(exps))
            return
        x = gens[j]
        top = 1 if x.odd else max_k
        e = 0
        while e <= top:
            d, w = deg + e * x.degree, wt + e * x.weight
            if d > max_i or w > max_k:
                break
            exps[j] = e
            rec(j + 1, d, w)
            e += 1
        exps[j] = 0

    rec(0, 0, 0)
    for mons in blocks.values():
        mons.sort(reverse=True)
    return blocks


def _odd_before(spec: CESpec, mono, pos: int, skip: int = -1) -> int:
    gens = spec.generators
    return sum(1 for j in range(pos) if j != skip and mono[j] and gens[j].odd)


def apply_differential(spec: CESpec, mono: Monomial) -> dict[Monomial, int]:
    """D applied to a single monomial, as {monomial: integer coefficient}."""
    gens = spec.generators
    out: dict[Monomial, int] = {}
    for (x, y), targets in spec.brackets.items():
        ex, ey = mono[x], mono[y]
        if x == y:
            if ex < 2:
                continue
            mult = comb(ex, 2)
            sign = 1
            rest = list(mono)
            rest[x] -= 2
        else:
            if not ex or not ey:
                continue
            mult = ex * ey
            sign = 1
            if gens[x].odd and _odd_before(spec, mono, x) % 2:
                sign = -sign
            if gens[y].odd and _odd_before(spec, mono, y, skip=x) % 2:
                sign = -sign
            rest = list(mono)
            rest[x] -= 1
            rest[y] -= 1
        for z, c in targets.items():
            zsign = sign
            new = list(rest)
            if gens[z].odd:
                if new[z]:
                    continue
                if _odd_before(spec, new, z) % 2:
                    zsign = -zsign
            new[z] += 1
            key = tuple(new)
            val = out.get(key, 0) + zsign * mult * Fraction(c)
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def build_differential(spec: CESpec, basis: dict, block: tuple[int, int]) -> SparseRationalMatrix:
    """Matrix of D from block (i, k) to block (i-1, k).

    Rows index the target basis, columns the source basis.
    """
    i, k = block
    src = basis.get((i, k), [])
    tgt = basis.get((i - 1, k), []) if i >= 1 else []
    return _matrix(spec, src, tgt)


def _matrix(spec: CESpec, src, tgt) -> SparseRationalMatrix:
    row_of = {m: r for r, m in enumerate(tgt)}
    entries = {}
    for c, mono in enumerate(src):
        for img, v in apply_differential(spec, mono).items():
            entries[(row_of[img], c)] = v
    return SparseRationalMatrix.from_dict(len(tgt), len(src), entries)


def _split(spec: CESpec, mons) -> dict[tuple, list]:
    parts: dict[tuple, list] = {}
    for m in mons:
        parts.setdefault(spec.charge(m), []).append(m)
    return parts


def block_homology(spec: CESpec, basis: dict, i: int, k: int, split: bool = True) -> int:
    """dim H_{i,k}; D^2 = 0 is checked on the way."""
    here = basis[(i, k)]
    below = basis.get((i - 1, k), []) if i >= 1 else []
    above = basis.get((i + 1, k))
    if above is None:
        raise KeyError(f"block ({i + 1}, {k}) was not enumerated")
    if not split or not spec.charges:
        return homology_dim(_matrix(spec, here, below), _matrix(spec, above, here))
    h_parts, b_parts, a_parts = _split(spec, here), _split(spec, below), _split(spec, above)
    total = 0
    for ch, mons in h_parts.items():
        total += homology_dim(_matrix(spec, mons, b_parts.get(ch, [])),
                              _matrix(spec, a_parts.get(ch, []), mons))
    return total


def betti_oracle(s: Surface, max_i: int, max_k: int, cap: int | None = None,
                 split: bool = True) -> BettiTable:
    """beta_i(B_k(s)) for all i <= max_i, k <= max_k from the CE complex."""
    spec = surface_ce_spec(s)
    basis = enumerate_basis(spec, max_i + 1, max_k, cap)
    table = BettiTable(s)
    for k in range(max_k + 1):
        for i in range(max_i + 1):
            table.record(i, k, block_homology(spec, basis, i, k, split), "oracle")
    return table


def top_degree(spec: CESpec, k: int) -> int:
    """Largest degree of a monomial of weight exactly k (bounded knapsack)."""
    NEG = -1
    best = [0] + [NEG] * k
    for x in spec.generators:
        uses = 1 if x.odd else k
        for _ in range(uses):
            for w in range(k, x.weight - 1, -1):
                prev = best[w - x.weight]
                if prev != NEG and prev + x.degree > best[w]:
                    best[w] = prev + x.degree
    return max(best[k], 0)


def weight_homology(spec: CESpec, k: int, cap: int | None = None,
                    split: bool = True) -> tuple[list[int], list[int]]:
    """Block dimensions and homology dimensions in every degree of weight k."""
    top = top_degree(spec, k)
    basis = enumerate_basis(spec, top + 1, k, cap)
    dims = [len(basis[(i, k)]) for i in range(top + 1)]
    hom = [block_homology(spec, basis, i, k, split) for i in range(top + 1)]
    return dims, hom


def euler_characteristic_check(spec: CESpec, k: int, cap: int | None = None) -> tuple[int, int]:
    """(chain-level, homology-level) Euler characteristics of weight k."""
    dims, hom = weight_homology(spec, k, cap)
    return (sum((-1) ** i * d for i, d in enumerate(dims)),
            sum((-1) ** i * d for i, d in enumerate(hom)))


def iter_monomials(spec: CESpec, basis: dict, block) -> Iterator[str]:
    for m in basis.get(block, []):
        yield spec.render(m)


def dump_block(spec: CESpec, basis: dict, block: tuple[int, int]) -> str:
    """JSON debug dump of a block's basis and its outgoing differential."""
    i, k = block
    d = build_differential(spec, basis, block)
    return json.dumps({
        "generators": [{"name": x.name, "degree": x.degree, "weight": x.weight}
                       for x in spec.generators],
        "block": {"i": i, "k": k},
        "basis": [list(m) for m in basis.get(block, [])],
        "target_basis": [list(m) for m in basis.get((i - 1, k), [])] if i else [],
        "differential": d.to_json(),
    }, indent=2)
