"""Exact sparse linear algebra over Q.

Matrices are stored as coordinate triplets.  Rank is computed by
incremental row echelon reduction on integer rows (rationals are cleared
row by row), dividing out the content after every step so entries stay
small.  Nothing here ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable


class DimensionMismatch(ValueError):
    pass


class NotAComplex(ValueError):
    pass


@dataclass(frozen=True)
class SparseRationalMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, int, Fraction], ...] = field(default=())

    def __post_init__(self):
        seen = set()
        clean = []
        for r, c, v in self.entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            if (r, c) in seen:
                raise ValueError(f"duplicate entry at ({r}, {c})")
            seen.add((r, c))
            v = Fraction(v)
            if v:
                clean.append((r, c, v))
        object.__setattr__(self, "entries", tuple(sorted(clean)))

    @classmethod
    def from_dict(cls, rows: int, cols: int, d: dict) -> SparseRationalMatrix:
        """Build from {(row, col): value}; zero values are dropped."""
        return cls(rows, cols, tuple((r, c, v) for (r, c), v in d.items() if v))

    @classmethod
    def from_dense(cls, rows: list[list]) -> SparseRationalMatrix:
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        return cls(nr, nc, tuple((r, c, v) for r, row in enumerate(rows)
                                 for c, v in enumerate(row) if v))

    @classmethod
    def zero(cls, rows: int, cols: int) -> SparseRationalMatrix:
        return cls(rows, cols, ())

    @classmethod
    def identity(cls, n: int) -> SparseRationalMatrix:
        return cls(n, n, tuple((i, i, 1) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries:
            out[r][c] = v
        return out

    def transpose(self) -> SparseRationalMatrix:
        return SparseRationalMatrix(self.cols, self.rows,
                                    tuple((c, r, v) for r, c, v in self.entries))

    def row_dicts(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [{} for _ in range(self.rows)]
        for r, c, v in self.entries:
            out[r][c] = v
        return out

    def __matmul__(self, other: SparseRationalMatrix) -> SparseRationalMatrix:
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot compose {self.shape} with {other.shape}")
        right = other.row_dicts()
        acc: dict[tuple[int, int], Fraction] = {}
        for r, k, v in self.entries:
            for c, w in right[k].items():
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        return SparseRationalMatrix.from_dict(self.rows, other.cols, acc)

    def scaled(self, c) -> SparseRationalMatrix:
        c = Fraction(c)
        return SparseRationalMatrix(self.rows, self.cols,
                                    tuple((r, k, c * v) for r, k, v in self.entries))

    def is_zero(self) -> bool:
        return not self.entries

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[r, c, str(v)] for r, c, v in self.entries]}


def vstack(blocks: Iterable[SparseRationalMatrix]) -> SparseRationalMatrix:
    blocks = list(blocks)
    if not blocks:
        raise ValueError("nothing to stack")
    cols = blocks[0].cols
    entries = []
    off = 0
    for b in blocks:
        if b.cols != cols:
            raise DimensionMismatch("vstack needs equal column counts")
        entries.extend((r + off, c, v) for r, c, v in b.entries)
        off += b.rows
    return SparseRationalMatrix(off, cols, tuple(entries))


def hstack(blocks: Iterable[SparseRationalMatrix]) -> SparseRationalMatrix:
    blocks = list(blocks)
    if not blocks:
        raise ValueError("nothing to stack")
    return vstack(b.transpose() for b in blocks).transpose()


def block_matrix(grid: list[list[SparseRationalMatrix | None]]) -> SparseRationalMatrix:
    """Assemble a block matrix; ``None`` entries are zero blocks.

    Every row of blocks must contain at least one matrix to fix its height,
    and likewise every column.
    """
    heights = []
    for row in grid:
        hs = {b.rows for b in row if b is not None}
        if len(hs) != 1:
            raise DimensionMismatch("inconsistent block heights")
        heights.append(hs.pop())
    widths = []
    for j in range(len(grid[0])):
        ws = {row[j].cols for row in grid if row[j] is not None}
        if len(ws) != 1:
            raise DimensionMismatch("inconsistent block widths")
        widths.append(ws.pop())
    entries = []
    r0 = 0
    for i, row in enumerate(grid):
        c0 = 0
        for j, b in enumerate(row):
            if b is not None:
                entries.extend((r + r0, c + c0, v) for r, c, v in b.entries)
            c0 += widths[j]
        r0 += heights[i]
    return SparseRationalMatrix(sum(heights), sum(widths), tuple(entries))


def _integer_row(row: dict[int, Fraction]) -> dict[int, int]:
    den = 1
    for v in row.values():
        den = lcm(den, v.denominator)
    out = {c: int(v * den) for c, v in row.items()}
    return _primitive(out)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def rank(m: SparseRationalMatrix) -> int:
    """Exact rank over Q."""
    if m.rows == 0 or m.cols == 0 or not m.entries:
        return 0
    # Eliminate along the shorter side.
    if m.rows > m.cols:
        m = m.transpose()
    rows = [r for r in m.row_dicts() if r]
    rows.sort(key=len)
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        cur = _integer_row(row)
        while cur:
            c = min(cur)
            piv = pivots.get(c)
            if piv is None:
                pivots[c] = cur
                break
            a, b = piv[c], cur[c]
            g = gcd(a, b)
            a //= g
            b //= g
            nxt = {k: a * v for k, v in cur.items()}
            for k, v in piv.items():
                w = nxt.get(k, 0) - b * v
                if w:
                    nxt[k] = w
                else:
                    nxt.pop(k, None)
            cur = _primitive(nxt)
    return len(pivots)


def nullity(m: SparseRationalMatrix) -> int:
    return m.cols - rank(m)


def homology_dim(d_out: SparseRationalMatrix, d_in: SparseRationalMatrix,
                 check: bool = True) -> int:
    """dim ker(d_out) - rank(d_in) for  higher --d_in--> block --d_out--> lower."""
    if d_out.cols != d_in.rows:
        raise DimensionMismatch(
            f"d_out has {d_out.cols} columns but d_in has {d_in.rows} rows")
    if check and not (d_out @ d_in).is_zero():
        raise NotAComplex("not a complex: d_out . d_in != 0")
    return d_out.cols - rank(d_out) - rank(d_in)
