import json
import subprocess
import sys
import time

import pytest

from floerlink.catalog import default_catalog_path, load_catalog, parse_catalog, read_catalog
from floerlink.cli import main
from floerlink.errors import (
    MissingSublink,
    NotAlgebraicallySplit,
    NotDivisible,
    ParseError,
    UnknownLink,
    ValidationFailed,
)
from floerlink.verify import verify_path
from tests.conftest import bundled_raw, raw_record

WHITEHEAD_GRID = (
    "        : s2\n"
    "  2  1  0  0  0\n"
    "  2  1  0  0  0\n"
    "..2..1..1..0..0 > s1\n"
    "  3  2  1  1  1\n"
    "  4  3  2  2  2\n"
    "        :\n"
)

BUNDLED = ["borromean", "t25", "t34", "trefoil", "trefoil_unknot", "unknot", "unlink2", "unlink3", "unlink4", "whitehead"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, raw, name="catalog.json"):
    p = tmp_path / name
    p.write_text(json.dumps(raw))
    return str(p)


# ---- loading ----


def test_bundled_catalog_loads(catalog):
    assert catalog.names() == BUNDLED
    assert set(catalog.models) == set(BUNDLED)


def test_nonzero_linking_is_rejected():
    raw = bundled_raw()
    raw_record(raw, "whitehead")["linking"] = [[0, 1], [1, 0]]
    with pytest.raises(NotAlgebraicallySplit):
        parse_catalog(raw)


def test_asymmetric_linking_matrix_is_a_parse_error():
    raw = bundled_raw()
    raw_record(raw, "whitehead")["linking"] = [[0, 1], [0, 0]]
    with pytest.raises(ParseError):
        parse_catalog(raw)


def test_torres_failure_surfaces_as_validation_failure(tmp_path):
    raw = bundled_raw()
    raw_record(raw, "whitehead")["alexander"] = [[[0, 0], 1]]
    with pytest.raises(ValidationFailed) as info:
        load_catalog(write(tmp_path, raw))
    assert isinstance(info.value.cause, NotDivisible)
    assert "whitehead" in str(info.value)


def test_missing_sublinks():
    raw = bundled_raw()
    raw_record(raw, "whitehead")["sublinks"] = {"1": "nope", "2": "unknot"}
    with pytest.raises(MissingSublink):
        parse_catalog(raw)
    raw = bundled_raw()
    raw_record(raw, "trefoil_unknot")["sublinks"] = {"1": "trefoil"}
    with pytest.raises(MissingSublink):
        parse_catalog(raw)


def test_sublink_arity_must_match():
    raw = bundled_raw()
    raw_record(raw, "borromean")["sublinks"]["3"] = "unknot"
    with pytest.raises(ParseError):
        parse_catalog(raw)


def test_schema_and_syntax_errors(tmp_path):
    raw = bundled_raw()
    raw_record(raw, "unknot")["flags"]["colour"] = True
    with pytest.raises(ParseError):
        parse_catalog(raw)
    raw = bundled_raw()
    raw["records"].append(raw_record(raw, "unknot"))
    with pytest.raises(ParseError):
        parse_catalog(raw)
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ParseError):
        read_catalog(str(bad))
    with pytest.raises(ParseError):
        read_catalog(str(tmp_path / "absent.json"))


def test_brunnian_sublinks_resolve_through_supersets(catalog):
    rec = catalog["borromean"]
    assert catalog.resolve_sublink(rec, 0b011).name == "unlink2"
    assert catalog.resolve_sublink(rec, 0b100) is None
    tu = catalog["trefoil_unknot"]
    assert catalog.resolve_sublink(tu, 1).name == "trefoil"


def test_unknown_link(catalog):
    with pytest.raises(UnknownLink):
        catalog["figure_eight"]


def test_serialization_is_canonical(catalog):
    with open(default_catalog_path()) as fh:
        on_disk = fh.read()
    assert catalog.dumps() == on_disk
    again = parse_catalog(json.loads(catalog.dumps()))
    assert again.dumps() == on_disk
    shuffled = bundled_raw()
    shuffled["records"].reverse()
    assert parse_catalog(shuffled).dumps() == on_disk


# ---- CLI: compute ----


def test_whitehead_grid_is_byte_exact(capsys):
    code, out, _ = run(capsys, "compute", "--link", "whitehead", "H", "--box", "2")
    assert code == 0
    assert out == WHITEHEAD_GRID


def test_compute_examples(capsys):
    assert run(capsys, "compute", "--link", "unknot", "h")[1] == "0 everywhere\n"
    assert run(capsys, "compute", "--link", "borromean", "delta_prime")[1] == "1\n"
    assert run(capsys, "compute", "--link", "borromean", "h")[1] == "h(0,0,0) = 1\n"
    assert run(capsys, "compute", "--link", "trefoil", "H", "--box", "2")[1] == "H(s), s = -2..2: 2 1 1 0 0\n"
    out = run(capsys, "compute", "--link", "whitehead", "alexander")[1]
    assert out.startswith("-t1^(1/2)*t2^(1/2)")


def test_compute_json(capsys):
    code, out, _ = run(capsys, "--json", "compute", "--link", "whitehead", "H", "--box", "2")
    data = json.loads(out)
    assert code == 0 and data["radius"] == 2
    values = {tuple(s): v for s, v in data["values"]}
    assert values[(0, 0)] == 1 and values[(-1, -2)] == 3 and len(values) == 25


def test_compute_unknown_link(capsys):
    code, _, err = run(capsys, "compute", "--link", "nope", "H")
    assert code == 2 and "UnknownLink" in err


# ---- CLI: invariant ----


def test_invariant_examples(capsys):
    assert run(capsys, "invariant", "--link", "borromean", "casson", "--q", "1,1,1")[1].splitlines()[0] == "1"
    assert run(capsys, "invariant", "d-lens", "--m", "5", "--i", "0")[1].splitlines()[0] == "1"
    assert run(capsys, "invariant", "--link", "whitehead", "beta")[1].splitlines()[0] == "1"
    assert run(capsys, "invariant", "d-lens", "--m", "2", "--i", "1")[1].splitlines()[0] == "-1/4"
    assert run(capsys, "invariant", "--link", "borromean", "mu123")[1].splitlines()[0] == "1"
    assert run(capsys, "invariant", "--link", "borromean", "rank-zero-surgery")[1].splitlines()[0] == "6"


def test_invariant_trails(capsys):
    out = run(capsys, "invariant", "--link", "whitehead", "d-one-bound")[1]
    assert out.splitlines()[0] == "-2"
    assert "kind: Exact" in out and "anchor:" in out


def test_invariant_json(capsys):
    data = json.loads(run(capsys, "invariant", "--link", "trefoil", "d-large", "--m", "5", "--i", "0", "--json")[1])
    assert data["value"] == "-1" and data["kind"] == "Exact"
    data = json.loads(run(capsys, "invariant", "d-lens", "--m", "3", "--i", "1", "--json")[1])
    assert data["value"] == "-1/6"


def test_invariant_errors(capsys):
    assert run(capsys, "invariant", "--link", "borromean", "beta")[0] == 2
    assert run(capsys, "invariant", "--link", "t25", "d-large", "--m", "2", "--i", "0")[0] == 2
    code, out, _ = run(capsys, "--json", "invariant", "--link", "whitehead", "mu123")
    assert code == 2 and json.loads(out)["error"] == "WrongArity"


# ---- CLI: detect ----


@pytest.mark.parametrize("link,conclusion", [("whitehead", "Whitehead"), ("unlink3", "Unlink"), ("borromean", "Borromean")])
def test_detect_examples(capsys, link, conclusion):
    code, out, _ = run(capsys, "detect", "--link", link)
    assert code == 0 and out.splitlines()[0] == conclusion
    data = json.loads(run(capsys, "detect", "--link", link, "--json")[1])
    assert data["verdicts"][0]["conclusion"] == conclusion


# ---- CLI: verify and catalog validate ----


def test_verify_bundled_is_green_and_fast(capsys):
    start = time.perf_counter()
    code, out, _ = run(capsys, "verify")
    assert time.perf_counter() - start < 10
    assert code == 0
    assert "FAIL" not in out


def test_verify_reports_tampered_whitehead_sign(tmp_path, capsys):
    raw = bundled_raw()
    rec = raw_record(raw, "whitehead")
    rec["alexander"] = [[e, -c if e == [1, 1] else c] for e, c in rec["alexander"]]
    path = write(tmp_path, raw)
    report = verify_path(path)
    failed = {c.name: c.detail for c in report.failures() if c.record == "whitehead"}
    assert "SymmetryViolation" in failed["alexander-symmetry"]
    code, out, _ = run(capsys, "verify", "--catalog", path)
    assert code == 1 and "SymmetryViolation" in out


def test_verify_flags_infeasible_brunnian_record(tmp_path):
    raw = bundled_raw()
    fake = json.loads(json.dumps(raw_record(raw, "borromean")))
    fake["name"] = "brunnian_sum4"
    fake["alexander"] = [[e, 4 * c] for e, c in fake["alexander"]]
    fake.pop("expected")
    fake.pop("expected_verdict")
    raw["records"].append(fake)
    report = verify_path(write(tmp_path, raw))
    failed = {c.name: c.detail for c in report.failures() if c.record == "brunnian_sum4"}
    assert failed["brunnian-feasibility"].startswith("Infeasible")
    assert "axioms" in failed
    assert not [c for c in report.failures() if c.record != "brunnian_sum4"]


def test_verify_reports_parse_failures(tmp_path):
    raw = bundled_raw()
    raw_record(raw, "whitehead")["linking"] = [[0, 2], [2, 0]]
    report = verify_path(write(tmp_path, raw))
    assert not report.ok and "NotAlgebraicallySplit" in report.failures()[0].detail


def test_catalog_validate(tmp_path, capsys):
    assert run(capsys, "catalog", "validate", default_catalog_path())[1] == "ok: 10 records\n"
    raw = bundled_raw()
    raw_record(raw, "whitehead")["alexander"] = [[[0, 0], 1]]
    code, _, err = run(capsys, "catalog", "validate", write(tmp_path, raw))
    assert code == 2 and "NotDivisible" in err


def test_env_var_selects_catalog(tmp_path, monkeypatch, capsys):
    raw = bundled_raw()
    raw["records"] = [r for r in raw["records"] if r["name"] in ("unknot", "trefoil")]
    monkeypatch.setenv("FLOER_CATALOG", write(tmp_path, raw))
    code, out, _ = run(capsys, "verify")
    assert code == 0 and "whitehead" not in out and "trefoil" in out
    assert run(capsys, "compute", "--link", "whitehead", "H")[0] == 2


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "floerlink.cli", "invariant", "d-lens", "--m", "5", "--i", "0"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert proc.stdout.splitlines()[0] == "1"
