"""Plain-text rendering of lattice functions, verdicts and invariant values."""

from __future__ import annotations

from .lattice import HModel, HPrimeTable, box, eval_H, eval_h, mask_indices

CELL = 3


def grid(f, radius: int) -> str:
    """2-variable lattice function as a grid: s1 grows rightward, s2 upward.

    The s2 = 0 row is drawn with dots as the horizontal axis and the s1 = 0
    column is marked by colons above and below the grid.
    """
    axis_col = " " * (CELL * radius + CELL - 1)
    lines = [axis_col + ": s2"]
    for s2 in range(radius, -radius - 1, -1):
        fill = "." if s2 == 0 else " "
        row = "".join(str(f((s1, s2))).rjust(CELL, fill) for s1 in range(-radius, radius + 1))
        lines.append(row + " > s1" if s2 == 0 else row)
    lines.append(axis_col + ":")
    return "\n".join(lines) + "\n"


def line(f, radius: int, label: str) -> str:
    values = " ".join(str(f((s,))) for s in range(-radius, radius + 1))
    return f"{label}(s), s = {-radius}..{radius}: {values}\n"


def points(f, n: int, radius: int, label: str) -> str:
    rows = [f"{label}({','.join(map(str, s))}) = {v}" for s in box(n, radius) if (v := f(s))]
    return ("\n".join(rows) if rows else "0 everywhere") + "\n"


def table(t: HPrimeTable, label: str = "h'") -> str:
    if not t:
        return "0 everywhere\n"
    return "\n".join(f"{label}({','.join(map(str, pt))}) = {v}" for pt, v in sorted(t.support.items())) + "\n"


def lattice_function(model: HModel, which: str, radius: int) -> str:
    """Render H or h of a model on the box of the given radius."""
    f = (lambda s: eval_H(model, s)) if which == "H" else (lambda s: eval_h(model, s))
    if which == "h" and not any(f(s) for s in box(model.n, model.radius() + 1)):
        return "0 everywhere\n"
    if model.n == 1:
        return line(f, radius, which)
    if model.n == 2:
        return grid(f, radius)
    return points(f, model.n, radius, which)


def hprime_tables(model: HModel) -> str:
    out = []
    for mask in sorted(model.tables, key=lambda m: (bin(m).count("1"), m)):
        comps = ",".join(str(i + 1) for i in mask_indices(mask))
        body = table(model.tables[mask]).rstrip("\n").replace("\n", "\n  ")
        out.append(f"sublink {{{comps}}}:\n  {body}")
    return "\n".join(out) + "\n"


def verdict(v) -> str:
    lines = [v.conclusion.value]
    if v.detail:
        lines.append(f"  detail: {v.detail}")
    if v.hypotheses_used:
        lines.append(f"  hypotheses: {', '.join(v.hypotheses_used)}")
    if v.witness is not None:
        lines.append(f"  witness: {v.witness}")
    if v.anchor:
        lines.append(f"  anchor: {v.anchor}")
    return "\n".join(lines) + "\n"
