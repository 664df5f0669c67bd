"""Conversions between Alexander polynomials and H-function models.

Polynomials are carried in the symmetric normalization: for n >= 2
components Delta(t^-1) = (-1)^n Delta(t), and for knots Delta(t^-1) = Delta(t)
with Delta(1) = 1.  The generating function of chi(HFL^-) is then
(t_1...t_n)^(1/2) Delta for links and Delta / (1 - t^-1) for knots.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

from .errors import (
    DimensionMismatch,
    HypothesisMissing,
    NotDivisible,
    NotLSpaceStaircase,
    SymmetryViolation,
    ValidationFailed,
)
from .laurent import LaurentPoly, divide_exact
from .lattice import (
    HModel,
    HPrimeTable,
    Provenance,
    eval_H,
    full_mask,
    popcount,
    sublinks,
    validate,
)

log = logging.getLogger(__name__)


class ChiPrimeTable(HPrimeTable):
    """Moebius transform of torsion Euler characteristics; must be symmetric."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_symmetric():
            raise SymmetryViolation("chi' table is not invariant under s -> -s")


@dataclass(frozen=True)
class NormalizedAlexander:
    poly: LaurentPoly

    @property
    def n(self) -> int:
        return self.poly.n

    def check_symmetry(self) -> None:
        sign = 1 if self.n == 1 else (-1) ** self.n
        if self.poly.invert_variables() != sign * self.poly:
            raise SymmetryViolation(f"Alexander polynomial {self.poly} is not symmetric")

    def tilde(self) -> LaurentPoly:
        """(t_1...t_n)^(1/2) * Delta; integer exponents for split links."""
        if self.n == 1:
            raise ValueError("for knots the generating function is an infinite series; use knot_series")
        return self.poly.shift((1,) * self.n)

    def knot_series(self, lo: int, hi: int) -> dict[int, int]:
        """Coefficients of Delta / (1 - t^-1) = Delta * (1 + t^-1 + t^-2 + ...) for lo <= s <= hi."""
        if self.n != 1:
            raise DimensionMismatch("knot_series needs a knot polynomial")
        coeffs = {e[0] // 2: c for e, c in self.poly.terms.items()}
        return {s: sum(c for k, c in coeffs.items() if k >= s) for s in range(lo, hi + 1)}


def _denominator(n: int) -> LaurentPoly:
    d = LaurentPoly.constant(n, 1)
    for i in range(n):
        d = d * LaurentPoly.half_difference(n, i)
    return d


def delta_prime(a: NormalizedAlexander) -> LaurentPoly:
    """Delta divided by prod_i (t_i^(1/2) - t_i^(-1/2)); exponents land on Z^n."""
    if a.n < 2:
        raise DimensionMismatch("delta_prime is defined for links with at least two components")
    q = divide_exact(a.poly, _denominator(a.n))
    if any(x % 2 for e in q.terms for x in e):
        raise NotDivisible(f"quotient {q} has half-integer exponents; Delta is misnormalized")
    return q


def hprime_from_alexander(a: NormalizedAlexander, lspace: bool = True) -> HPrimeTable:
    """Full-link h' table of an L-space link: h'(s) = (-1)^(n+1) [t^s] Delta'."""
    if not lspace:
        raise HypothesisMissing("h' is determined by Delta only for L-space links")
    n = a.n
    q = delta_prime(a)
    sign = (-1) ** (n + 1)
    table = HPrimeTable(n, {tuple(x // 2 for x in e): sign * c for e, c in q.terms.items()})
    if not table.is_symmetric():
        raise SymmetryViolation(f"extracted h' table is not symmetric (Delta' = {q})")
    return table


def knot_h_from_alexander(a: NormalizedAlexander) -> HPrimeTable:
    """h-table of an L-space knot via torsion coefficients h(s) = sum_{k>s} (k-s) a_k."""
    if a.n != 1:
        raise DimensionMismatch("knot_h_from_alexander needs a knot polynomial")
    try:
        a.check_symmetry()
    except SymmetryViolation as exc:
        raise NotLSpaceStaircase(str(exc)) from exc
    if any(e[0] % 2 for e in a.poly.terms):
        raise NotLSpaceStaircase("knot polynomial has half-integer exponents")
    coeffs = {e[0] // 2: c for e, c in a.poly.terms.items()}
    if sum(coeffs.values()) != 1:
        raise NotLSpaceStaircase(f"Delta(1) = {sum(coeffs.values())}, expected 1")
    top = max(coeffs)
    values = {}
    for s in range(0, top):
        v = sum((k - s) * c for k, c in coeffs.items() if k > s)
        if v:
            values[(s,)] = v
            values[(-s,)] = v
    table = HPrimeTable(1, values)
    bad = validate(HModel(1, {1: table}))
    if bad:
        raise NotLSpaceStaircase(f"torsion coefficients do not define an L-space knot H-function: {bad[0]}")
    return table


# uppercase alias for callers that think in H; the table returned is h = H - H_O
knot_H_from_alexander = knot_h_from_alexander


def _alternating(f, s, n: int) -> int:
    total = 0
    for r in range(n + 1):
        for B in itertools.combinations(range(n), r):
            t = tuple(x - (i in B) for i, x in enumerate(s))
            total += (-1) ** r * f(t)
    return total


def alternating_sum(f, s) -> int:
    """sum over J subset {1..n} of (-1)^|J| f(s - e_J)."""
    return _alternating(f, tuple(s), len(s))


def hfl_euler(m: HModel, chi: HPrimeTable | None = None, box_radius: int | None = None) -> LaurentPoly:
    """Generating function sum_s chi(HFL^-(s)) t^s on the box [-R, R+1]^n.

    Returned with doubled exponents (2s).  For n >= 2 this is the whole
    polynomial (t_1...t_n)^(1/2) Delta; for knots it is a truncation of the
    series Delta / (1 - t^-1).
    """
    n = m.n
    R = (max(m.radius(), chi.radius() if chi else 0) + 2) if box_radius is None else box_radius
    if chi is not None and n == 1:
        raise DimensionMismatch("chi' data is only meaningful for links with n >= 2")

    def g(t):
        return (chi(t) if chi is not None else 0) - eval_H(m, t)

    terms = {}
    for s in itertools.product(range(-R, R + 2), repeat=n):
        v = _alternating(g, s, n)
        if v:
            terms[tuple(2 * x for x in s)] = v
    return LaurentPoly(n, terms)


def alexander_from_model(m: HModel, chi: HPrimeTable | None = None) -> NormalizedAlexander:
    """Delta = prod(t_i^(1/2) - t_i^(-1/2)) * (-1)^n sum_s (chi'(s) - h'(s)) t^s."""
    n = m.n
    if n < 2:
        raise DimensionMismatch("alexander_from_model is defined for n >= 2")
    if chi is not None and chi.arity != n:
        raise DimensionMismatch("chi' table arity differs from the model")
    pts = set(m.full.support) | (set(chi.support) if chi is not None else set())
    terms = {}
    for s in pts:
        v = (-1) ** n * ((chi(s) if chi is not None else 0) - m.full(s))
        if v:
            terms[tuple(2 * x for x in s)] = v
    return NormalizedAlexander(_denominator(n) * LaurentPoly(n, terms))


def full_table(record) -> HPrimeTable:
    """h' of the whole link described by a catalog record (L-space links only)."""
    a = NormalizedAlexander(record.alexander)
    a.check_symmetry()
    if record.n == 1:
        return knot_h_from_alexander(a)
    if a.poly.is_zero():
        return HPrimeTable(record.n)
    return hprime_from_alexander(a, lspace=record.flags.lspace)


def _assemble(record, catalog, full: HPrimeTable) -> HModel:
    tables = {full_mask(record.n): full}
    for mask in sublinks(record.n, proper=True):
        sub = catalog.resolve_sublink(record, mask)
        if sub is None:
            tables[mask] = HPrimeTable(popcount(mask))
        else:
            tables[mask] = full_table(sub)
    return HModel(record.n, tables, Provenance.FROM_ALEXANDER)


def build_model(record, catalog, check: bool = True) -> HModel:
    """Assemble the per-sublink h' tables of a catalog record and validate them.

    The stored sign of Delta is kept when it yields a valid model.  Otherwise
    the opposite sign is tried; if both are valid the record's expected a2
    (the sum of h') breaks the tie.
    """
    if not record.flags.lspace:
        raise HypothesisMissing(f"{record.name}: models are built from Delta only for L-space links")
    full = full_table(record)
    model = _assemble(record, catalog, full)
    if not check:
        return model
    bad = validate(model)
    if record.n == 1 or not full:
        if bad:
            raise ValidationFailed(f"{record.name}: model violates {bad[0]}", bad)
        return model
    flipped = _assemble(record, catalog, HPrimeTable(record.n, {k: -v for k, v in full.support.items()}))
    bad_flipped = validate(flipped)
    if bad and bad_flipped:
        raise ValidationFailed(f"{record.name}: model violates {bad[0]}", bad)
    if not bad and not bad_flipped:
        expected = record.expected.get("a2")
        if expected is None:
            raise ValidationFailed(f"{record.name}: both signs of Delta give valid models and no expected a2")
        for cand in (model, flipped):
            if cand.full.total() == expected:
                return cand
        raise ValidationFailed(f"{record.name}: neither sign matches expected a2={expected}")
    if bad:
        log.warning("%s: stored Delta has the opposite sign convention; using -Delta", record.name)
        return flipped
    return model


def check_sublinks_exist(record, catalog) -> None:
    for mask in sublinks(record.n, proper=True):
        catalog.resolve_sublink(record, mask)
