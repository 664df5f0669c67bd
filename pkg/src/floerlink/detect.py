"""Detection and feasibility classifiers over validated H-function models.

Every classifier checks its hypotheses first and raises HypothesisMissing
(or WrongArity) instead of guessing, so a positive conclusion always comes
with the full list of flags it relied on.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import HypothesisMissing, WrongArity
from .invariants import a2, is_square, knot_genus
from .lattice import HModel, HPrimeTable, box, eval_h, h_sum


class Conclusion(enum.Enum):
    UNLINK = "Unlink"
    WHITEHEAD = "Whitehead"
    BORROMEAN = "Borromean"
    WHITEHEAD_OR_SPLIT_TREFOIL = "WhiteheadOrSplitTrefoil"
    INFEASIBLE = "Infeasible"
    FEASIBLE = "Feasible"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Flags:
    lspace: bool = False
    brunnian: bool = False
    unknotted_components: bool = False
    split: bool = False
    algebraically_split: bool = True
    phs_surgery: bool = False

    def trail(self, *names: str) -> tuple[str, ...]:
        return tuple(names)


@dataclass(frozen=True)
class Verdict:
    conclusion: Conclusion
    hypotheses_used: tuple[str, ...] = ()
    witness: object = None
    anchor: str = ""
    detail: str = ""
    positive: bool = field(default=False)

    def to_json(self) -> dict:
        w = self.witness
        if isinstance(w, tuple):
            w = list(w)
        return {
            "conclusion": self.conclusion.value,
            "positive": self.positive,
            "hypotheses": list(self.hypotheses_used),
            "witness": w,
            "detail": self.detail,
            "paper_anchor": self.anchor,
        }


def _require(cond: bool, what: str):
    if not cond:
        raise HypothesisMissing(f"hypothesis not certified: {what}")


def _h_is_delta(model: HModel) -> bool:
    origin = (0,) * model.n
    return all(eval_h(model, s) == (1 if s == origin else 0) for s in box(model.n, model.radius() + 1))


def detect_unlink(model: HModel, flags: Flags) -> Verdict:
    """An L-space link with h(0) = 0 is the unlink."""
    _require(flags.lspace, "L-space link")
    hyps = ["L-space link"]
    n = model.n
    h0 = eval_h(model, (0,) * n)
    if n >= 4 and flags.brunnian:
        hyps += ["Brunnian", f"{n} >= 4 components"]
        return Verdict(Conclusion.UNLINK, tuple(hyps), h0, "Brunnian L-space links with 4+ components are unlinks",
                       "forced: a2 vanishes for 4+ components so sum of h is 0", positive=True)
    if h0 == 0:
        return Verdict(Conclusion.UNLINK, tuple(hyps), h0, "h(0) = 0 detects the unlink", positive=True)
    return Verdict(Conclusion.INCONCLUSIVE, tuple(hyps), h0, "h(0) = 0 detects the unlink", f"h(0) = {h0} > 0")


def detect_whitehead(model: HModel, flags: Flags, beta: int | None = None) -> Verdict:
    """Whitehead link iff h is the indicator of the origin (or |beta| = 1 with unknotted components)."""
    if model.n != 2:
        raise WrongArity(f"Whitehead detection needs 2 components, got {model.n}")
    _require(flags.algebraically_split, "algebraically split")
    _require(flags.lspace, "L-space link")
    hyps = ["2 components", "algebraically split", "L-space link"]
    if _h_is_delta(model):
        return Verdict(Conclusion.WHITEHEAD, tuple(hyps), (0, 0), "h = indicator of the origin detects Whitehead",
                       "h(0,0) = 1, h = 0 elsewhere", positive=True)
    if flags.unknotted_components:
        b = a2(model) if beta is None else beta
        if abs(b) == 1:
            return Verdict(Conclusion.WHITEHEAD, tuple(hyps + ["unknotted components"]), b,
                           "beta = +-1 detects Whitehead", positive=True)
    return Verdict(Conclusion.INCONCLUSIVE, tuple(hyps), eval_h(model, (0, 0)),
                   "h = indicator of the origin detects Whitehead", "h is not the Whitehead h-function")


def _split_trefoil_pattern(model: HModel) -> int | None:
    """Index (0 or 1) of the trefoil component if h matches O u T(2,3), else None."""
    r = model.radius() + 1
    for k in (0, 1):
        if all(eval_h(model, s) == (1 if s[k] == 0 else 0) for s in box(2, r)):
            return k
    return None


def detect_whitehead_or_split_trefoil(model: HModel, flags: Flags) -> Verdict:
    """Algebraically split L-space link with S^3_{1,1} = Poincare sphere: Whitehead or O u T(2,3)."""
    if model.n != 2:
        raise WrongArity(f"needs 2 components, got {model.n}")
    _require(flags.algebraically_split, "algebraically split")
    _require(flags.lspace, "L-space link")
    _require(flags.phs_surgery, "(+1,+1)-surgery is the Poincare homology sphere")
    hyps = ("2 components", "algebraically split", "L-space link", "(+1,+1)-surgery is the Poincare sphere")
    anchor = "Poincare (+1,+1)-surgery: Whitehead or split trefoil"
    if _h_is_delta(model):
        return Verdict(Conclusion.WHITEHEAD_OR_SPLIT_TREFOIL, hyps, (0, 0), anchor,
                       "Whitehead link (h = indicator of the origin)", positive=True)
    k = _split_trefoil_pattern(model)
    if k is not None:
        return Verdict(Conclusion.WHITEHEAD_OR_SPLIT_TREFOIL, hyps, f"trefoil component {2 - k}", anchor,
                       "split union of T(2,3) and the unknot", positive=True)
    return Verdict(Conclusion.INCONCLUSIVE, hyps, None, anchor,
                   "h matches neither alternative; the hypotheses are inconsistent with the data")


def feasibility_brunnian(model: HModel, flags: Flags) -> Verdict:
    """Arithmetic constraints on sum h for 3-component Brunnian L-space links."""
    if model.n != 3:
        raise WrongArity(f"needs 3 components, got {model.n}")
    _require(flags.brunnian, "Brunnian")
    _require(flags.lspace, "L-space link")
    hyps = ("3 components", "Brunnian", "L-space link")
    anchor = "Brunnian triple linking: mu^2 = sum h, parity of h(0), mu != +-2"
    total = h_sum(model)
    h0 = eval_h(model, (0, 0, 0))
    if not is_square(total):
        return Verdict(Conclusion.INFEASIBLE, hyps, total, anchor, f"sum of h = {total} is not a perfect square")
    mu = math.isqrt(total)
    if mu == 2:
        return Verdict(Conclusion.INFEASIBLE, hyps, total, anchor, "|mu_123| = 2 is impossible")
    if mu % 2 != h0 % 2:
        return Verdict(Conclusion.INFEASIBLE, hyps, (mu, h0), anchor,
                       f"|mu_123| = {mu} and h(0) = {h0} have different parity")
    return Verdict(Conclusion.FEASIBLE, hyps, mu, anchor, f"|mu_123| = {mu} is feasible")


def detect_borromean(model: HModel, flags: Flags, mu: int | None = None) -> Verdict:
    """Brunnian L-space 3-component link: |mu_123| = 1 gives Borromean, mu = 0 gives the unlink."""
    if model.n != 3:
        raise WrongArity(f"needs 3 components, got {model.n}")
    _require(flags.brunnian, "Brunnian")
    _require(flags.lspace, "L-space link")
    hyps = ("3 components", "Brunnian", "L-space link")
    total = h_sum(model)
    if mu is None:
        mu = math.isqrt(total) if is_square(total) else None
    if mu is not None and abs(mu) == 1:
        return Verdict(Conclusion.BORROMEAN, hyps, 1, "mu_123 = +-1 detects the Borromean rings",
                       "sum of h = 1", positive=True)
    if mu == 0:
        return Verdict(Conclusion.UNLINK, hyps, 0, "mu_123 = 0 detects the unlink", "sum of h = 0", positive=True)
    return Verdict(Conclusion.INCONCLUSIVE, hyps, total, "mu_123 = +-1 detects the Borromean rings",
                   f"sum of h = {total}; no detection theorem applies")


def lspace_knot_genus(table: HPrimeTable, lspace: bool = True) -> int:
    """g(K) = max{s : h(s) > 0} + 1 for L-space knots."""
    _require(lspace, "L-space knot")
    if table.arity != 1:
        raise WrongArity("knot genus needs a one-variable h table")
    return knot_genus(table)


def classify(model: HModel | None, flags: Flags) -> list[Verdict]:
    """Run every classifier whose hypotheses hold; the first entry is the headline."""
    out: list[Verdict] = []
    if model is None or not flags.lspace:
        return [Verdict(Conclusion.INCONCLUSIVE, (), None, "", "no L-space model: detection theorems do not apply")]
    n = model.n
    if n == 3 and flags.brunnian:
        out.append(detect_borromean(model, flags))
        out.append(feasibility_brunnian(model, flags))
    if n == 2 and flags.algebraically_split:
        out.append(detect_whitehead(model, flags))
        if flags.phs_surgery:
            out.append(detect_whitehead_or_split_trefoil(model, flags))
    out.append(detect_unlink(model, flags))
    positives = [v for v in out if v.positive]
    return positives + [v for v in out if not v.positive]
