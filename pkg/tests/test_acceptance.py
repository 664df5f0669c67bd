"""Acceptance suite: nine exact-value criteria over the bundled catalog.

Each criterion prints one PASS/FAIL line.  Run directly with
``python -m tests.test_acceptance`` or through pytest (``pytest -s`` shows the lines).
"""

from fractions import Fraction

import pytest

from floerlink.alexander import NormalizedAlexander, alexander_from_model, build_model, hfl_euler, knot_H_from_alexander
from floerlink.catalog import load_catalog
from floerlink.detect import Conclusion, Flags, detect_unlink, detect_whitehead, feasibility_brunnian, lspace_knot_genus
from floerlink.invariants import (
    Kind,
    a2,
    casson_surgery,
    d_lens,
    d_one_surgery_bound,
    hf_inf_rank_zero_surgery,
    mu123_squared,
    sato_levine,
)
from floerlink.laurent import LaurentPoly
from floerlink.lattice import HModel, HPrimeTable, box, eval_H, eval_h, restrict_sublink, sublinks, unknot_H, validate
from floerlink.staircase import staircase, staircase_H

WHITEHEAD_H = {
    2: [2, 1, 0, 0, 0],
    1: [2, 1, 0, 0, 0],
    0: [2, 1, 1, 0, 0],
    -1: [3, 2, 1, 1, 1],
    -2: [4, 3, 2, 2, 2],
}


def lens_recursive(p, q, i):
    if p == 1:
        return Fraction(0)
    return Fraction(-1, 4) + Fraction((2 * i + 1 - p - q) ** 2, 4 * p * q) - lens_recursive(q, p % q, i % q)


def criterion_1(cat):
    m = build_model(cat["whitehead"], cat)
    got = {s2: [eval_H(m, (s1, s2)) for s1 in range(-2, 3)] for s2 in range(2, -3, -1)}
    return got == WHITEHEAD_H, "25/25 Whitehead H values" if got == WHITEHEAD_H else f"got {got}"


def criterion_2(cat):
    bad = []
    for name in cat.names():
        rec = cat[name]
        if not rec.flags.lspace:
            continue
        m = cat.model(name)
        if rec.n >= 2:
            if alexander_from_model(m, rec.chi_prime).poly != rec.alexander:
                bad.append(name)
            elif hfl_euler(m, rec.chi_prime) != (NormalizedAlexander(rec.alexander).tilde()):
                bad.append(name + " (euler)")
            continue
        # knots: Delta coefficient a_s = chi(s) - chi(s+1) with chi(s) = H(s-1) - H(s)
        R = m.radius() + 3
        chi = {s: eval_H(m, (s - 1,)) - eval_H(m, (s,)) for s in range(-R, R + 2)}
        back = LaurentPoly(1, {(2 * s,): chi[s] - chi[s + 1] for s in range(-R, R + 1)})
        if back != rec.alexander:
            bad.append(name)
    return not bad, "all L-space records round-trip" if not bad else f"failed: {bad}"


def criterion_3(cat):
    m = cat.model("borromean")
    total = sum(eval_h(m, s) for s in box(3, m.radius() + 1))
    sq, mu = mu123_squared(m, brunnian_lspace=True)
    b = d_one_surgery_bound(m, lspace=True)
    values = (total, sq, mu, casson_surgery(m, (1, 1, 1)), (b.value, b.kind), hf_inf_rank_zero_surgery(mu))
    want = (1, 1, 1, 1, (Fraction(-2), Kind.EXACT), 6)
    shown = (total, sq, mu, values[3], f"{b.value} {b.kind.value}", values[5])
    return values == want, "sum h, mu^2, |mu|, casson, d bound, rank = " + ", ".join(map(str, shown))


def criterion_4(cat):
    wh = cat.model("whitehead")
    tu = cat.model("trefoil_unknot")
    b = d_one_surgery_bound(wh, lspace=True)
    flags = Flags(lspace=True)
    checks = {
        "beta(Wh) = 1": sato_levine(wh) == 1,
        "d bound Exact -2": (b.value, b.kind) == (-2, Kind.EXACT),
        "detect Wh": detect_whitehead(wh, flags).conclusion is Conclusion.WHITEHEAD,
        "beta(T u O) = 0": sato_levine(tu) == 0,
        "T u O rejected": detect_whitehead(tu, flags).conclusion is not Conclusion.WHITEHEAD,
    }
    bad = [k for k, ok in checks.items() if not ok]
    return not bad, "; ".join(checks) if not bad else f"failed: {bad}"


def criterion_5(_cat):
    bad = []
    for m in range(1, 13):
        if d_lens(m, 0) != Fraction(m - 1, 4):
            bad.append(("i=0", m))
        for i in range(m):
            if d_lens(m, i) != d_lens(m, (m - i) % m):
                bad.append(("conj", m, i))
            if d_lens(m, i) != lens_recursive(m, 1, i):
                bad.append(("recursion", m, i))
    return not bad, "m = 1..12, all i" if not bad else f"failed: {bad[:5]}"


def _pointwise_axioms(m):
    r = m.radius() + 2
    n = m.n
    H = {s: eval_H(m, s) for s in box(n, r)}
    h = {s: H[s] - sum(unknot_H(x) for x in s) for s in H}
    for s in H:
        neg = tuple(-x for x in s)
        assert H[s] >= 0, ("H>=0", s)
        assert h[s] >= 0, ("h>=0", s)
        assert H[neg] == H[s] + sum(s), ("H symmetry", s)
        assert h[neg] == h[s], ("h symmetry", s)
        for i in range(n):
            if s[i] == -r:
                continue
            t = s[:i] + (s[i] - 1,) + s[i + 1:]
            assert H[t] - H[s] in (0, 1), ("step", s, i)
            if s[i] > 0:
                assert h[t] >= h[s], ("monotone", s, i)
            else:
                assert h[t] <= h[s], ("monotone", s, i)


def criterion_6(cat):
    bad = []
    for name in cat.names():
        m = cat.model(name)
        if validate(m, m.radius() + 2):
            bad.append(name)
            continue
        try:
            _pointwise_axioms(m)
        except AssertionError as exc:
            bad.append(f"{name} {exc}")
    return not bad, f"{len(cat.names())} models clean" if not bad else f"failed: {bad}"


def criterion_7(cat):
    results = []
    for name, genus in (("trefoil", 1), ("t25", 2), ("t34", 3)):
        delta = cat[name].alexander
        table = knot_H_from_alexander(NormalizedAlexander(delta))
        m = HModel(1, {1: table})
        gens = staircase(delta)
        same = all(eval_H(m, (s,)) == staircase_H(gens, s) for s in range(-12, 13))
        results.append(same and lspace_knot_genus(table) == genus)
    return all(results), f"staircase agreement and genus 1, 2, 3: {results}"


def criterion_8(cat):
    four = [n for n in cat.names() if cat[n].n == 4]
    a2_ok = bool(four) and all(a2(cat.model(n)) == 0 for n in four)
    synthetic = HModel(3, {7: HPrimeTable(3, {(0, 0, 0): 4})})
    flags = Flags(lspace=True, brunnian=True)
    infeasible = feasibility_brunnian(synthetic, flags).conclusion is Conclusion.INFEASIBLE
    zoo = [cat.model(n) for n in cat.names()] + [
        synthetic,
        HModel(2, {3: HPrimeTable(2, {(0, 0): 2})}),
        HModel(1, {1: HPrimeTable(1, {(0,): 1, (1,): 1, (-1,): 1})}),
    ]
    exact = all(
        (detect_unlink(m, Flags(lspace=True)).conclusion is Conclusion.UNLINK) == (eval_h(m, (0,) * m.n) == 0)
        for m in zoo
    )
    ok = a2_ok and infeasible and exact
    return ok, f"a2(4-comp)=0: {a2_ok}; sum h = 4 infeasible: {infeasible}; unlink detection exact: {exact}"


def criterion_9(cat):
    m = cat.model("borromean")
    got = {}
    for mask in sublinks(3):
        coeff = 0
        for sub in sublinks(3) + [0]:
            if sub & ~mask:
                continue
            q = tuple((sub >> i) & 1 for i in range(3))
            coeff += (-1) ** (bin(mask ^ sub).count("1")) * casson_surgery(m, q)
        got[mask] = coeff
    want = {mask: a2(restrict_sublink(m, mask)) for mask in sublinks(3)}
    expected = {mask: (1 if mask == 7 else 0) for mask in sublinks(3)}
    ok = got == want == expected
    return ok, f"finite differences {got}"


CRITERIA = [
    (1, "Whitehead golden grid", criterion_1),
    (2, "Alexander round trip", criterion_2),
    (3, "Borromean Milnor/Casson chain", criterion_3),
    (4, "Whitehead invariants and split trefoil", criterion_4),
    (5, "lens space d-invariants", criterion_5),
    (6, "H-function axioms", criterion_6),
    (7, "knot pipeline", criterion_7),
    (8, "degenerate and feasibility cases", criterion_8),
    (9, "Casson multilinearity", criterion_9),
]


def run_criterion(cat, number, title, fn):
    try:
        ok, detail = fn(cat)
    except Exception as exc:  # a crash is a failure of the criterion, reported like one
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} - {detail}"
    return ok, line


@pytest.fixture(scope="module")
def bundled():
    return load_catalog()


@pytest.mark.parametrize("number,title,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(bundled, capsys, number, title, fn):
    ok, line = run_criterion(bundled, number, title, fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    import sys

    cat = load_catalog()
    results = [run_criterion(cat, *c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
