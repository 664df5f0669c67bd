"""H-function calculus on Z^n for algebraically split links.

A link model stores, for every nonempty sublink I, the finitely supported
Moebius transform h'_I.  Everything else is reconstructed from those tables:

    h_J(s) = sum over nonempty I subset of J of h'_I(s_I)
    H(s)   = h(s) + sum_i H_O(s_i),      H_O(s) = max(0, -s)

Sublinks are bitmasks: bit i-1 set means component i belongs to the sublink.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .errors import DimensionMismatch, EmptySublink


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_indices(mask: int) -> tuple[int, ...]:
    """0-based component indices in a sublink mask, increasing."""
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def full_mask(n: int) -> int:
    return (1 << n) - 1


def sublinks(n: int, proper: bool = False) -> list[int]:
    top = full_mask(n)
    return [m for m in range(1, top + 1) if not (proper and m == top)]


def restrict_point(s, mask: int) -> tuple[int, ...]:
    return tuple(s[i] for i in mask_indices(mask))


def box(n: int, radius: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(-radius, radius + 1), repeat=n)


def unknot_H(s: int) -> int:
    """H-function of the unknot."""
    return max(0, -s)


@dataclass(frozen=True)
class HPrimeTable:
    """Finitely supported integer function on Z^arity (zero values dropped)."""

    arity: int
    support: Mapping[tuple, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for pt, v in dict(self.support).items():
            pt = tuple(int(x) for x in pt)
            if len(pt) != self.arity:
                raise DimensionMismatch(f"point {pt} in a table of arity {self.arity}")
            if v:
                clean[pt] = int(v)
        object.__setattr__(self, "support", clean)

    def __call__(self, s) -> int:
        return self.support.get(tuple(s), 0)

    def __bool__(self):
        return bool(self.support)

    def __eq__(self, other):
        if not isinstance(other, HPrimeTable):
            return NotImplemented
        return self.arity == other.arity and self.support == other.support

    def __hash__(self):
        return hash((self.arity, frozenset(self.support.items())))

    def radius(self) -> int:
        return max((max(abs(x) for x in pt) for pt in self.support), default=0)

    def total(self) -> int:
        return sum(self.support.values())

    def is_symmetric(self) -> bool:
        return all(self(tuple(-x for x in pt)) == v for pt, v in self.support.items())

    def to_json(self) -> list:
        return [[list(pt), v] for pt, v in sorted(self.support.items())]

    @classmethod
    def from_json(cls, arity: int, data) -> "HPrimeTable":
        return cls(arity, {tuple(pt): v for pt, v in data})


class Provenance(enum.Enum):
    FROM_ALEXANDER = "FromAlexander"
    MANUAL = "Manual"


@dataclass(frozen=True)
class HModel:
    n: int
    tables: Mapping[int, HPrimeTable]
    provenance: Provenance = Provenance.MANUAL

    def __post_init__(self):
        tables = dict(self.tables)
        for mask in sublinks(self.n):
            t = tables.setdefault(mask, HPrimeTable(popcount(mask)))
            if t.arity != popcount(mask):
                raise DimensionMismatch(f"table for sublink {mask} has arity {t.arity}")
        extra = set(tables) - set(sublinks(self.n))
        if extra:
            raise DimensionMismatch(f"tables for sublinks {sorted(extra)} outside {self.n} components")
        object.__setattr__(self, "tables", tables)

    @classmethod
    def unlink(cls, n: int) -> "HModel":
        return cls(n, {})

    @property
    def full(self) -> HPrimeTable:
        return self.tables[full_mask(self.n)]

    def radius(self) -> int:
        return max((t.radius() for t in self.tables.values()), default=0)

    def _check(self, s):
        if len(s) != self.n:
            raise DimensionMismatch(f"point {tuple(s)} for a {self.n}-component model")

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "tables": {str(m): self.tables[m].to_json() for m in sorted(self.tables)},
        }

    @classmethod
    def from_json(cls, data, provenance=Provenance.MANUAL) -> "HModel":
        n = int(data["n"])
        tables = {
            int(k): HPrimeTable.from_json(popcount(int(k)), v) for k, v in data.get("tables", {}).items()
        }
        return cls(n, tables, provenance)


def eval_h(m: HModel, s) -> int:
    m._check(s)
    return sum(t(restrict_point(s, mask)) for mask, t in m.tables.items() if t)


def eval_H(m: HModel, s) -> int:
    return eval_h(m, s) + sum(unknot_H(x) for x in s)


def eval_h_prime(m: HModel, s) -> int:
    m._check(s)
    return m.full(s)


def restrict_sublink(m: HModel, mask: int) -> HModel:
    """Model of the sublink L_I, components renumbered in increasing order."""
    if mask == 0:
        raise EmptySublink("the empty sublink has no model")
    if mask >> m.n:
        raise DimensionMismatch(f"sublink {mask} outside {m.n} components")
    idx = mask_indices(mask)
    pos = {c: j for j, c in enumerate(idx)}
    tables = {}
    for sub, t in m.tables.items():
        if sub & ~mask:
            continue
        new = sum(1 << pos[c] for c in mask_indices(sub))
        tables[new] = t
    return HModel(len(idx), tables, m.provenance)


@dataclass(frozen=True)
class Violation:
    axiom: str
    point: tuple
    detail: str = ""

    def __str__(self):
        return f"{self.axiom} at {self.point}" + (f": {self.detail}" if self.detail else "")


# axiom ids, named after the property they check
H_NONNEGATIVE = "H>=0"
H_STEP = "H-step"
H_SYMMETRY = "H-symmetry"
h_MONOTONE = "h-monotone"
h_NONNEGATIVE = "h>=0"


def validate(m: HModel, box_radius: int | None = None) -> list[Violation]:
    """Check the H-function axioms pointwise on [-r, r]^n."""
    r = m.radius() + 2 if box_radius is None else box_radius
    n = m.n
    H = {s: eval_H(m, s) for s in box(n, r)}
    out: list[Violation] = []
    for s, v in H.items():
        if v < 0:
            out.append(Violation(H_NONNEGATIVE, s, f"H={v}"))
        h = v - sum(unknot_H(x) for x in s)
        if h < 0:
            out.append(Violation(h_NONNEGATIVE, s, f"h={h}"))
        neg = tuple(-x for x in s)
        if H[neg] != v + sum(s):
            out.append(Violation(H_SYMMETRY, s, f"H(-s)={H[neg]}, H(s)+|s|={v + sum(s)}"))
        for i in range(n):
            if s[i] == -r:
                continue
            t = s[:i] + (s[i] - 1,) + s[i + 1:]
            jump = H[t] - v
            if jump not in (0, 1):
                out.append(Violation(H_STEP, s, f"H(s-e{i + 1})-H(s)={jump}"))
            ht = H[t] - sum(unknot_H(x) for x in t)
            if s[i] > 0 and ht < h:
                out.append(Violation(h_MONOTONE, s, f"h(s-e{i + 1})={ht} < h(s)={h}"))
            if s[i] <= 0 and ht > h:
                out.append(Violation(h_MONOTONE, s, f"h(s-e{i + 1})={ht} > h(s)={h}"))
    return out


def h_sum(m: HModel) -> int:
    """Sum of h over Z^n; only finite when no proper sublink contributes."""
    if any(t for mask, t in m.tables.items() if mask != full_mask(m.n)):
        raise ValueError("h is not finitely supported: a proper sublink has nonzero h'")
    return m.full.total()


def h_support_box(m: HModel) -> int:
    """Radius r such that every value of h appears on [-r, r]^n."""
    return m.radius() + 1
