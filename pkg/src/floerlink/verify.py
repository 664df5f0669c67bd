"""Catalog-wide verification report: round trips, axioms and golden values."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .alexander import (
    NormalizedAlexander,
    alexander_from_model,
    build_model,
    full_table,
    hfl_euler,
)
from .catalog import Catalog, LinkRecord, read_catalog
from .detect import Conclusion, classify, feasibility_brunnian, lspace_knot_genus
from .errors import FloerLinkError, ValidationFailed
from .invariants import (
    a2,
    casson_surgery,
    d_large_surgery_knot,
    d_one_surgery_bound,
    format_rational,
    hf_inf_rank_zero_surgery,
    mu123_squared,
    sato_levine,
)
from .lattice import HModel, eval_H, full_mask, sublinks
from .staircase import genus as staircase_genus
from .staircase import staircase, staircase_H


@dataclass(frozen=True)
class Check:
    record: str
    name: str
    ok: bool
    anchor: str = ""
    detail: str = ""

    def to_json(self) -> dict:
        return {"record": self.record, "check": self.name, "ok": self.ok, "anchor": self.anchor, "detail": self.detail}


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, *args, **kw):
        self.checks.append(Check(*args, **kw))

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def render(self) -> str:
        lines = []
        for c in self.checks:
            mark = "PASS" if c.ok else "FAIL"
            tail = f" [{c.anchor}]" if c.anchor else ""
            msg = f" - {c.detail}" if c.detail else ""
            lines.append(f"{mark} {c.record}: {c.name}{msg}{tail}")
        n_fail = len(self.failures())
        lines.append(f"{len(self.checks) - n_fail}/{len(self.checks)} checks passed")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": [c.to_json() for c in self.checks]}


def chi_tables(record: LinkRecord, cat: Catalog) -> dict:
    """chi' tables by sublink mask, for the records that carry one."""
    out = {}
    if record.chi_prime is not None:
        out[full_mask(record.n)] = record.chi_prime
    for mask in sublinks(record.n, proper=True):
        sub = cat.resolve_sublink(record, mask)
        if sub is not None and sub.chi_prime is not None and sub.n > 1:
            out[mask] = sub.chi_prime
    return out


def golden_value(key: str, record: LinkRecord, model: HModel, cat: Catalog) -> Fraction:
    """Evaluate one named invariant of a catalog record."""
    chi = record.chi_prime
    if key == "a2":
        return Fraction(a2(model, chi))
    if key == "beta":
        return Fraction(sato_levine(model, chi))
    if key == "mu123":
        sq, mu = mu123_squared(model, chi, brunnian_lspace=record.flags.brunnian and record.flags.lspace)
        if mu is None:
            raise ValueError(f"mu_123^2 = {sq} is not a square")
        return Fraction(mu)
    if key == "casson":
        return Fraction(casson_surgery(model, [1] * record.n, chi_tables(record, cat), record.flags.lspace))
    if key == "d-one-bound":
        return d_one_surgery_bound(model, record.flags.lspace).value
    if key == "genus":
        return Fraction(lspace_knot_genus(model.full, record.flags.lspace))
    if key == "rank-zero-surgery":
        _, mu = mu123_squared(model, chi, brunnian_lspace=True)
        return Fraction(hf_inf_rank_zero_surgery(mu))
    if key.startswith("d-large:"):
        _, m, i = key.split(":")
        return d_large_surgery_knot(model.full, int(m), int(i)).value
    raise KeyError(f"unknown invariant {key!r}")


ANCHORS = {
    "alexander-symmetry": "symmetric normalization of Delta",
    "model-build": "h' extracted from Delta' for L-space links",
    "axioms": "H-function axioms (nonnegativity, unit steps, symmetry, monotonicity)",
    "round-trip": "Delta = prod(t^1/2 - t^-1/2) * (-1)^n sum (chi' - h') t^s",
    "euler-characteristic": "alternating sum of H reproduces the Alexander generating function",
    "staircase": "torsion coefficients agree with the staircase complex",
    "brunnian-feasibility": "Brunnian triple linking constraints",
    "verdict": "detection theorems",
}


def _build(record: LinkRecord, cat: Catalog, report: Report) -> HModel | None:
    name = record.name
    try:
        model = build_model(record, cat)
        report.add(name, "model-build", True, ANCHORS["model-build"])
        report.add(name, "axioms", True, ANCHORS["axioms"])
        return model
    except ValidationFailed as exc:
        report.add(name, "model-build", True, ANCHORS["model-build"])
        report.add(name, "axioms", False, ANCHORS["axioms"], f"{len(exc.violations)} violations, first: {exc}")
        return build_model(record, cat, check=False)
    except FloerLinkError as exc:
        report.add(name, "model-build", False, ANCHORS["model-build"], f"{type(exc).__name__}: {exc}")
        return None


def _check_polynomials(record: LinkRecord, model: HModel, report: Report) -> None:
    name = record.name
    delta = record.alexander
    if record.n >= 2 and record.alexander:
        if model.full != full_table(record):
            delta = -delta
    if record.n >= 2:
        back = alexander_from_model(model, record.chi_prime).poly
        report.add(name, "round-trip", back == delta, ANCHORS["round-trip"],
                   "" if back == delta else f"got {back}, stored {delta}")
        euler = hfl_euler(model, record.chi_prime)
        tilde = NormalizedAlexander(delta).tilde()
        report.add(name, "euler-characteristic", euler == tilde, ANCHORS["euler-characteristic"],
                   "" if euler == tilde else f"got {euler}, expected {tilde}")
        return
    R = model.radius() + 2
    euler = hfl_euler(model)
    series = NormalizedAlexander(delta).knot_series(-R, R + 1)
    ok = all(euler.coefficient((2 * s,)) == v for s, v in series.items())
    report.add(name, "euler-characteristic", ok, ANCHORS["euler-characteristic"])
    try:
        gens = staircase(delta)
    except FloerLinkError as exc:
        report.add(name, "staircase", False, ANCHORS["staircase"], f"{type(exc).__name__}: {exc}")
        return
    g = staircase_genus(gens)
    bad = [s for s in range(-g - 3, g + 4) if staircase_H(gens, s) != eval_H(model, (s,))]
    ok = not bad and g == lspace_knot_genus(model.full)
    report.add(name, "staircase", ok, ANCHORS["staircase"], f"mismatch at s={bad}" if bad else f"genus {g}")


def verify_record(record: LinkRecord, cat: Catalog, report: Report) -> None:
    name = record.name
    try:
        NormalizedAlexander(record.alexander).check_symmetry()
        report.add(name, "alexander-symmetry", True, ANCHORS["alexander-symmetry"])
    except FloerLinkError as exc:
        report.add(name, "alexander-symmetry", False, ANCHORS["alexander-symmetry"], f"{type(exc).__name__}: {exc}")
    if not record.flags.lspace:
        report.add(name, "model-build", True, ANCHORS["model-build"], "skipped: not flagged as an L-space link")
        return
    model = _build(record, cat, report)
    if model is None:
        return
    try:
        _check_polynomials(record, model, report)
    except FloerLinkError as exc:
        report.add(name, "round-trip", False, ANCHORS["round-trip"], f"{type(exc).__name__}: {exc}")
    if record.n == 3 and record.flags.brunnian:
        v = feasibility_brunnian(model, record.flags)
        report.add(name, "brunnian-feasibility", v.conclusion != Conclusion.INFEASIBLE,
                   ANCHORS["brunnian-feasibility"], f"{v.conclusion.value}: {v.detail}")
    for key, want in sorted(record.expected.items()):
        try:
            got = golden_value(key, record, model, cat)
        except (FloerLinkError, ValueError, KeyError) as exc:
            report.add(name, f"golden {key}", False, "expected value", f"{type(exc).__name__}: {exc}")
            continue
        report.add(name, f"golden {key}", got == want, "expected value",
                   f"{format_rational(got)}" if got == want else f"got {format_rational(got)}, want {format_rational(want)}")
    if record.expected_verdict is not None:
        head = classify(model, record.flags)[0]
        ok = head.conclusion.value == record.expected_verdict
        report.add(name, "verdict", ok, head.anchor or ANCHORS["verdict"],
                   head.conclusion.value if ok else f"got {head.conclusion.value}, want {record.expected_verdict}")


def verify_catalog(cat: Catalog) -> Report:
    report = Report()
    for name in cat.names():
        verify_record(cat.records[name], cat, report)
    return report


def verify_path(path) -> Report:
    try:
        cat = read_catalog(path)
    except FloerLinkError as exc:
        report = Report()
        report.add("<catalog>", "parse", False, "catalog structure", f"{type(exc).__name__}: {exc}")
        return report
    return verify_catalog(cat)


def dumps(report: Report) -> str:
    return json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n"
