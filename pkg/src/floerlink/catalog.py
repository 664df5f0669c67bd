"""Link catalog: JSON records of algebraically split links and their sublinks.

Polynomials use the doubled-exponent encoding of LaurentPoly.to_json.
Sublink references are keyed by decimal bitmask strings ("5" = components
1 and 3).  A missing sublink entry is resolved through the smallest listed
superset; for Brunnian records any unresolved proper sublink is an unlink.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import jsonschema

from .alexander import ChiPrimeTable, build_model
from .detect import Flags
from .errors import (
    FloerLinkError,
    MissingSublink,
    NotAlgebraicallySplit,
    ParseError,
    UnknownLink,
    ValidationFailed,
)
from .lattice import HModel, full_mask, mask_indices, popcount, sublinks
from .laurent import LaurentPoly

ENV_VAR = "FLOER_CATALOG"


def _data_file(name: str):
    return resources.files("floerlink").joinpath("data").joinpath(name)


def default_catalog_path() -> str:
    env = os.environ.get(ENV_VAR)
    if env:
        return env
    return str(_data_file("catalog.json"))


def _schema() -> dict:
    return json.loads(_data_file("catalog.schema.json").read_text())


@dataclass(frozen=True)
class LinkRecord:
    name: str
    n: int
    linking: tuple[tuple[int, ...], ...]
    alexander: LaurentPoly
    flags: Flags
    sublinks: dict[int, str] = field(default_factory=dict)
    chi_prime: ChiPrimeTable | None = None
    expected: dict[str, Fraction] = field(default_factory=dict)
    expected_verdict: str | None = None

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "n": self.n,
            "linking": [list(row) for row in self.linking],
            "alexander": self.alexander.to_json(),
            "flags": {
                "lspace": self.flags.lspace,
                "brunnian": self.flags.brunnian,
                "unknotted_components": self.flags.unknotted_components,
                "split": self.flags.split,
                "phs_surgery": self.flags.phs_surgery,
            },
            "sublinks": {str(k): v for k, v in sorted(self.sublinks.items())},
        }
        if self.chi_prime is not None:
            out["chi_prime"] = self.chi_prime.to_json()
        if self.expected:
            out["expected"] = {k: _fmt(v) for k, v in sorted(self.expected.items())}
        if self.expected_verdict is not None:
            out["expected_verdict"] = self.expected_verdict
        return out


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_record(raw: dict) -> LinkRecord:
    name = raw["name"]
    n = raw["n"]
    linking = tuple(tuple(int(x) for x in row) for row in raw.get("linking", [[0] * n] * n))
    if len(linking) != n or any(len(row) != n for row in linking):
        raise ParseError(f"{name}: linking matrix is not {n}x{n}")
    for i in range(n):
        for j in range(n):
            if linking[i][j] != linking[j][i]:
                raise ParseError(f"{name}: linking matrix is not symmetric at ({i + 1},{j + 1})")
            if i != j and linking[i][j]:
                raise NotAlgebraicallySplit(
                    f"{name}: lk(L{i + 1}, L{j + 1}) = {linking[i][j]}, the link is not algebraically split"
                )
    try:
        poly = LaurentPoly.from_json(raw["alexander"], n)
        subs = {int(k): v for k, v in raw.get("sublinks", {}).items()}
        chi = ChiPrimeTable.from_json(n, raw["chi_prime"]) if "chi_prime" in raw else None
        expected = {k: Fraction(v) for k, v in raw.get("expected", {}).items()}
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"{name}: {exc}") from exc
    for mask in subs:
        if not 0 < mask < full_mask(n):
            raise ParseError(f"{name}: sublink mask {mask} is not a proper nonempty sublink of {n} components")
    f = raw.get("flags", {})
    flags = Flags(
        lspace=f.get("lspace", False),
        brunnian=f.get("brunnian", False),
        unknotted_components=f.get("unknotted_components", False),
        split=f.get("split", False),
        phs_surgery=f.get("phs_surgery", False),
    )
    return LinkRecord(name, n, linking, poly, flags, subs, chi, expected, raw.get("expected_verdict"))


@dataclass
class Catalog:
    records: dict[str, LinkRecord]
    models: dict[str, HModel] = field(default_factory=dict)

    def __getitem__(self, name: str) -> LinkRecord:
        try:
            return self.records[name]
        except KeyError:
            raise UnknownLink(f"no link named {name!r} in the catalog") from None

    def __contains__(self, name) -> bool:
        return name in self.records

    def names(self) -> list[str]:
        return sorted(self.records)

    def resolve_sublink(self, record: LinkRecord, mask: int) -> LinkRecord | None:
        """Record describing the sublink ``mask`` of ``record``; None means an unlink."""
        if mask in record.sublinks:
            return self[record.sublinks[mask]]
        supers = [m for m in record.sublinks if m & mask == mask]
        if supers:
            sup = min(supers, key=lambda m: (popcount(m), m))
            parent = self[record.sublinks[sup]]
            pos = {c: j for j, c in enumerate(mask_indices(sup))}
            inner = sum(1 << pos[c] for c in mask_indices(mask))
            if inner == full_mask(parent.n):
                return parent
            return self.resolve_sublink(parent, inner)
        if record.flags.brunnian:
            return None
        raise MissingSublink(f"{record.name}: no catalog entry for sublink {mask} ({_components(mask)})")

    def model(self, name: str) -> HModel:
        if name not in self.models:
            self.models[name] = build_model(self[name], self)
        return self.models[name]

    def to_json(self) -> dict:
        return {"records": [self.records[k].to_json() for k in self.names()]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


def _components(mask: int) -> str:
    return "components " + ",".join(str(i + 1) for i in mask_indices(mask))


def _check_structure(cat: Catalog) -> None:
    for rec in cat.records.values():
        for mask, ref in rec.sublinks.items():
            if ref not in cat.records:
                raise MissingSublink(f"{rec.name}: sublink {mask} refers to unknown record {ref!r}")
            if cat.records[ref].n != popcount(mask):
                raise ParseError(
                    f"{rec.name}: sublink {mask} has {popcount(mask)} components but {ref} has {cat.records[ref].n}"
                )
    state: dict[str, int] = {}

    def visit(name: str, path: list[str]):
        if state.get(name) == 2:
            return
        if state.get(name) == 1:
            raise ParseError("sublink references form a cycle: " + " -> ".join(path + [name]))
        state[name] = 1
        for ref in cat.records[name].sublinks.values():
            visit(ref, path + [name])
        state[name] = 2

    for name in sorted(cat.records):
        visit(name, [])
    for rec in cat.records.values():
        for mask in sublinks(rec.n, proper=True):
            cat.resolve_sublink(rec, mask)


def parse_catalog(data) -> Catalog:
    """Structural parse: schema, linking numbers, sublink graph.  No models are built."""
    try:
        jsonschema.validate(data, _schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ParseError(f"catalog schema violation at {where}: {exc.message}") from exc
    records: dict[str, LinkRecord] = {}
    for raw in data["records"]:
        rec = _parse_record(raw)
        if rec.name in records:
            raise ParseError(f"duplicate record name {rec.name!r}")
        records[rec.name] = rec
    cat = Catalog(records)
    _check_structure(cat)
    return cat


def read_catalog(path) -> Catalog:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read catalog {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: malformed JSON: {exc}") from exc
    return parse_catalog(data)


def build_all(cat: Catalog) -> Catalog:
    """Build and validate every L-space record; the first failure aborts with its record name."""
    for name in cat.names():
        rec = cat.records[name]
        if not rec.flags.lspace:
            continue
        try:
            cat.model(name)
        except ValidationFailed as exc:
            if name not in str(exc):
                raise ValidationFailed(f"{name}: {exc}", exc.violations, exc.cause) from exc
            raise
        except FloerLinkError as exc:
            raise ValidationFailed(f"{name}: {type(exc).__name__}: {exc}", cause=exc) from exc
    return cat


def load_catalog(path=None) -> Catalog:
    """Parse, check and build every model of the catalog at ``path`` (fail-fast)."""
    return build_all(read_catalog(path or default_catalog_path()))
