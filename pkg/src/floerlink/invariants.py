"""Numerical invariants: Conway a2, Sato-Levine, triple linking, Casson, d-invariants.

Sign convention: a2(L) = sum_s (h'(s) - chi'(s)) for every component count.
For knots this is sum_s h(s); for links it equals (-1)^(n+1) Delta'(1, ..., 1).
This is the convention under which Hoste's state sum gives
lambda(S^3_{1,1}(Whitehead)) = lambda(S^3_{1,1,1}(Borromean)) = 1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    IndexOutOfRange,
    MissingSublink,
    NotLarge,
    NotPerfectSquare,
    WrongArity,
)
from .lattice import HModel, HPrimeTable, box, eval_H, eval_h, mask_indices, restrict_sublink, sublinks


class Kind(enum.Enum):
    EXACT = "Exact"
    UPPER_BOUND = "UpperBound"


class Coefficients(enum.Enum):
    F2 = "F2"
    Q = "Q"
    COPRIME = "any-field-coprime"


@dataclass(frozen=True)
class DInvariantBound:
    value: Fraction
    kind: Kind
    coefficients: tuple[Coefficients, ...] = (Coefficients.F2,)
    hypotheses: tuple[str, ...] = ()
    anchor: str = ""

    def to_json(self) -> dict:
        return {
            "invariant": "d",
            "value": format_rational(self.value),
            "kind": self.kind.value,
            "coefficients": [c.value for c in self.coefficients],
            "hypotheses": list(self.hypotheses),
            "paper_anchor": self.anchor,
        }


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def a2(model: HModel, chi: HPrimeTable | None = None) -> int:
    """Second Conway coefficient (first one for knots): sum of h' - chi' over Z^n."""
    total = model.full.total()
    if chi is not None:
        if chi.arity != model.n:
            raise WrongArity("chi' table arity differs from the model")
        total -= chi.total()
    return total


def sato_levine(model: HModel, chi: HPrimeTable | None = None) -> int:
    if model.n != 2:
        raise WrongArity(f"Sato-Levine invariant needs 2 components, got {model.n}")
    return a2(model, chi)


def is_square(k: int) -> bool:
    return k >= 0 and math.isqrt(k) ** 2 == k


def mu123_squared(model: HModel, chi: HPrimeTable | None = None, brunnian_lspace: bool = False):
    """Return (mu_123^2, |mu_123| or None).

    Under Brunnian + L-space flags the value must be a perfect square; a
    non-square signals inconsistent input and raises NotPerfectSquare.
    """
    if model.n != 3:
        raise WrongArity(f"triple linking needs 3 components, got {model.n}")
    sq = abs(a2(model, chi))
    if is_square(sq):
        return sq, math.isqrt(sq)
    if brunnian_lspace:
        raise NotPerfectSquare(f"sum of h is {sq}, not a perfect square")
    return sq, None


def casson_surgery(
    model: HModel,
    q: Sequence[int],
    chi: Mapping[int, HPrimeTable] | None = None,
    lspace: bool = True,
) -> int:
    """Casson invariant of S^3_{1/q_1,...,1/q_n}(L) by Hoste's state sum.

    ``chi`` maps sublink masks to their chi' tables; it may be omitted for
    L-space links, whose chi' vanish on every sublink.
    """
    if len(q) != model.n:
        raise WrongArity(f"{len(q)} framings for a {model.n}-component link")
    chi = dict(chi or {})
    if not lspace:
        missing = [m for m in sublinks(model.n) if popcount_gt1(m) and m not in chi]
        if missing:
            raise MissingSublinkData(f"chi' tables missing for sublinks {missing}")
    total = 0
    for mask in sublinks(model.n):
        prod = math.prod(q[i] for i in mask_indices(mask))
        if prod:
            total += prod * a2(restrict_sublink(model, mask), chi.get(mask))
    return total


def popcount_gt1(mask: int) -> bool:
    return mask & (mask - 1) != 0


class MissingSublinkData(MissingSublink):
    pass


def d_lens(m: int, i: int) -> Fraction:
    """d(L(m,1), i) = ((2i - m)^2 - m) / (4m)."""
    if m < 1:
        raise IndexOutOfRange(f"lens space L({m},1) needs m >= 1")
    if not 0 <= i < m:
        raise IndexOutOfRange(f"Spin^c index {i} outside [0, {m})")
    return Fraction((2 * i - m) ** 2 - m, 4 * m)


def knot_genus(table: HPrimeTable) -> int:
    return max((pt[0] for pt in table.support if table(pt) > 0), default=-1) + 1


def d_large_surgery_knot(table: HPrimeTable, m: int, i: int) -> DInvariantBound:
    """d(S^3_m(K), s_i) = d(L(m,1), i) - 2 H(min(i, m-i)) for an L-space knot K."""
    g = knot_genus(table)
    if m < 1 or m < 2 * g - 1:
        raise NotLarge(f"surgery coefficient {m} is below 2g-1 = {2 * g - 1}")
    i %= m
    j = min(i, m - i)
    H = eval_H(HModel(1, {1: table}), (j,))
    return DInvariantBound(
        d_lens(m, i) - 2 * H,
        Kind.EXACT,
        (Coefficients.F2,),
        ("L-space knot", f"m={m} >= 2g-1={2 * g - 1}"),
        "large surgery formula, lens space plus -2H",
    )


def d_one_surgery_bound(model: HModel, lspace: bool = False) -> DInvariantBound:
    """Bound d(S^3_{1,...,1}(L)) <= -2 h(0); exact when h is supported at the origin."""
    origin = (0,) * model.n
    h0 = eval_h(model, origin)
    r = model.radius() + 1
    only_origin = all(eval_h(model, s) == 0 for s in box(model.n, r) if s != origin)
    hyps = ["algebraically split"]
    if lspace and only_origin:
        hyps += ["L-space link", "h supported at the origin (surgery complex truncates)"]
        return DInvariantBound(Fraction(-2 * h0), Kind.EXACT, (Coefficients.F2,), tuple(hyps),
                               "truncated surgery complex: d = -2H(0)")
    return DInvariantBound(Fraction(-2 * h0), Kind.UPPER_BOUND, (Coefficients.F2,), tuple(hyps),
                           "+1 surgery versus large surgery: d <= -2h(0)")


@dataclass(frozen=True)
class DVerdict:
    applicable: bool
    bound: DInvariantBound | None = None
    reason: str = ""
    hypotheses: tuple[str, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        out = {
            "invariant": "d(S^3_{1,1,1})",
            "applicable": self.applicable,
            "reason": self.reason,
            "hypotheses": list(self.hypotheses),
        }
        if self.bound is not None:
            out.update({k: v for k, v in self.bound.to_json().items() if k != "invariant"})
        return out


def triple_linking_d_verdict(
    model: HModel | None,
    algebraically_split: bool,
    sublinks_lspace: bool,
    chi: HPrimeTable | None = None,
    mu: int | None = None,
) -> DVerdict:
    """Certify d(S^3_{1,1,1}(L)) <= -2 when mu_123 != 0 and every 2-component sublink is L-space.

    ``mu`` overrides the value computed from the model when |mu_123| is known
    from elsewhere (e.g. the model is unavailable for a non-L-space link).
    """
    hyps = []
    if (model is not None and model.n != 3) or (model is None and mu is None):
        return DVerdict(False, reason="needs a 3-component link")
    if not algebraically_split:
        return DVerdict(False, reason="link is not algebraically split")
    hyps.append("algebraically split")
    if not sublinks_lspace:
        return DVerdict(False, reason="some 2-component sublink is not an L-space link", hypotheses=tuple(hyps))
    hyps.append("all 2-component sublinks are L-space links")
    if mu is None:
        sq, mu_abs = mu123_squared(model, chi)
    else:
        mu_abs = abs(mu)
        sq = mu_abs * mu_abs
    if sq == 0:
        return DVerdict(False, reason="mu_123 = 0", hypotheses=tuple(hyps))
    hyps.append("mu_123 != 0")
    coeffs = [Coefficients.Q]
    if mu_abs is not None and mu_abs % 2:
        coeffs += [Coefficients.F2]
        hyps.append("mu_123 odd")
    coeffs.append(Coefficients.COPRIME)
    bound = DInvariantBound(Fraction(-2), Kind.UPPER_BOUND, tuple(coeffs), tuple(hyps),
                            "nonzero triple linking forces d <= -2")
    return DVerdict(True, bound, "bound certified", tuple(hyps))


def hf_inf_rank_zero_surgery(mu123: int) -> int:
    """Rank of HF^infty(S^3_{0,0,0}(L), s_0) over F_2[U, U^-1]."""
    return 6 if mu123 % 2 else 8
