"""Surfaces of finite type and the integer combinatorics shared by every formula."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb


class Kind(str, Enum):
    CLOSED_ORIENTABLE = "closed-orientable"
    OPEN_ORIENTABLE = "open-orientable"
    CLOSED_NONORIENTABLE = "closed-nonorientable"
    OPEN_NONORIENTABLE = "open-nonorientable"


@dataclass(frozen=True)
class Surface:
    """A surface of finite type.

    Orientable kinds use ``g`` (genus), nonorientable kinds use ``h``
    (number of crosscaps); ``n`` counts punctures and is zero exactly for
    the closed kinds.  Prefer the classmethod constructors.
    """

    kind: Kind
    g: int = 0
    h: int = 0
    n: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        for name in ("g", "h", "n"):
            if not isinstance(getattr(self, name), int) or getattr(self, name) < 0:
                raise ValueError(f"{name} must be a nonnegative integer")
        if self.orientable:
            if self.h != 0:
                raise ValueError("orientable surfaces carry no crosscaps")
        else:
            if self.h < 1:
                raise ValueError("nonorientable surfaces need h >= 1")
            if self.g != 0:
                raise ValueError("nonorientable surfaces are described by h, not g")
        if self.closed and self.n != 0:
            raise ValueError("closed surfaces have n = 0")
        if not self.closed and self.n < 1:
            raise ValueError("open surfaces need n >= 1")

    @classmethod
    def closed_orientable(cls, g: int) -> Surface:
        return cls(Kind.CLOSED_ORIENTABLE, g=g)

    @classmethod
    def open_orientable(cls, g: int, n: int) -> Surface:
        return cls(Kind.OPEN_ORIENTABLE, g=g, n=n)

    @classmethod
    def closed_nonorientable(cls, h: int) -> Surface:
        return cls(Kind.CLOSED_NONORIENTABLE, h=h)

    @classmethod
    def open_nonorientable(cls, h: int, n: int) -> Surface:
        return cls(Kind.OPEN_NONORIENTABLE, h=h, n=n)

    @property
    def orientable(self) -> bool:
        return self.kind in (Kind.CLOSED_ORIENTABLE, Kind.OPEN_ORIENTABLE)

    @property
    def closed(self) -> bool:
        return self.kind in (Kind.CLOSED_ORIENTABLE, Kind.CLOSED_NONORIENTABLE)

    @property
    def name(self) -> str:
        if self.kind is Kind.CLOSED_ORIENTABLE:
            return f"Sigma_{self.g}"
        if self.kind is Kind.OPEN_ORIENTABLE:
            return f"Sigma_{self.g},{self.n}"
        if self.kind is Kind.CLOSED_NONORIENTABLE:
            return f"N_{self.h}"
        return f"N_{self.h},{self.n}"

    def to_dict(self) -> dict:
        d = {"kind": self.kind.value}
        if self.orientable:
            d["g"] = self.g
        else:
            d["h"] = self.h
        if not self.closed:
            d["n"] = self.n
        return d

    def __str__(self):
        return self.name


@dataclass(frozen=True, order=True)
class GradedIndex:
    i: int
    k: int

    def __post_init__(self):
        if self.i < 0 or self.k < 0:
            raise ValueError("degree and weight must be nonnegative")


def ext_binom(n: int, k: int) -> int:
    """Binomial coefficient that vanishes off the usual range.

    The single exception is ``ext_binom(-1, -1) == 1``.  Negative tops give
    0 otherwise, including ``ext_binom(-2, 0)``.
    """
    if n == -1 and k == -1:
        return 1
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def trinomial(N: int, k1: int, k2: int) -> int:
    """N! / (k1! k2! (N-k1-k2)!), or 0 if any part is negative."""
    rest = N - k1 - k2
    if N < 0 or k1 < 0 or k2 < 0 or rest < 0:
        return 0
    return comb(N, k1) * comb(N - k1, k2)


PROVENANCES = ("formula", "series", "oracle")


class ProvenanceConflict(ValueError):
    pass


class BettiTable:
    """Betti numbers beta_i(B_k(surface)) keyed by (i, k).

    Each entry remembers every computation path that produced it; two paths
    disagreeing is an error, never a silent overwrite.
    """

    def __init__(self, surface: Surface):
        self.surface = surface
        self._values: dict[tuple[int, int], int] = {}
        self._prov: dict[tuple[int, int], list[str]] = {}

    def record(self, i: int, k: int, value: int, provenance: str) -> None:
        if provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {provenance!r}")
        if not isinstance(value, int) or value < 0:
            raise ValueError(f"Betti number must be a nonnegative integer, got {value!r}")
        key = (i, k)
        GradedIndex(i, k)
        old = self._values.get(key)
        if old is not None and old != value:
            raise ProvenanceConflict(
                f"{self.surface} (i={i}, k={k}): {self._prov[key]} gave {old}, "
                f"{provenance} gives {value}")
        self._values[key] = value
        provs = self._prov.setdefault(key, [])
        if provenance not in provs:
            provs.append(provenance)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self._values[key]

    def __contains__(self, key) -> bool:
        return key in self._values

    def __len__(self):
        return len(self._values)

    def provenance(self, i: int, k: int) -> list[str]:
        return list(self._prov[(i, k)])

    def items(self):
        return sorted(self._values.items())

    def merge(self, other: BettiTable) -> None:
        if other.surface != self.surface:
            raise ValueError("tables describe different surfaces")
        for key, v in other.items():
            for p in other._prov[key]:
                self.record(key[0], key[1], v, p)

    def to_json(self) -> dict:
        return {
            "surface": self.surface.to_dict(),
            "entries": [
                {"i": i, "k": k, "betti": str(v), "provenance": "|".join(self._prov[(i, k)])}
                for (i, k), v in self.items()
            ],
        }
