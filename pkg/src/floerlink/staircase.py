"""Staircase complexes of L-space knots.

For an L-space knot the Alexander polynomial has the form
sum_{j=0}^{2k} (-1)^j t^{n_j} with n_0 > n_1 > ... > n_{2k}, and CFK^infty
is a staircase with generators x_0, ..., x_{2k}.  Even generators sit at the
outer corners (Maslov grading 0); odd generators have differentials to their
two neighbours.  H(s) is read off the corners directly, independently of
the torsion-coefficient formula.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotLSpaceStaircase
from .laurent import LaurentPoly


@dataclass(frozen=True)
class Generator:
    index: int
    i: int
    j: int

    @property
    def alexander(self) -> int:
        return self.j - self.i

    @property
    def maslov_parity(self) -> int:
        return self.index % 2


def staircase(delta: LaurentPoly) -> list[Generator]:
    """Generators of the staircase complex; raises unless delta has staircase shape."""
    if delta.n != 1 or delta.is_zero():
        raise NotLSpaceStaircase("need a nonzero one-variable polynomial")
    if any(e[0] % 2 for e in delta.terms):
        raise NotLSpaceStaircase("half-integer exponents")
    terms = sorted(((e[0] // 2, c) for e, c in delta.terms.items()), reverse=True)
    for j, (_, c) in enumerate(terms):
        if c != (-1) ** j:
            raise NotLSpaceStaircase(f"coefficients are not +1, -1, +1, ...: {terms}")
    if len(terms) % 2 == 0:
        raise NotLSpaceStaircase("staircase needs an odd number of terms")
    exps = [k for k, _ in terms]
    g = exps[0]
    if exps[-1] != -g:
        raise NotLSpaceStaircase("polynomial is not symmetric")
    gens = [Generator(0, 0, g)]
    i, j = 0, g
    for idx in range(1, len(exps)):
        step = exps[idx - 1] - exps[idx]
        if idx % 2:
            i += step
        else:
            j -= step
        gens.append(Generator(idx, i, j))
    return gens


def differential(gens: list[Generator]) -> dict[int, tuple[int, ...]]:
    """d(x_odd) = x_{odd-1} + x_{odd+1} over F_2."""
    return {g.index: (g.index - 1, g.index + 1) for g in gens if g.index % 2}


def staircase_H(gens: list[Generator], s: int) -> int:
    """H(s) = min over corner generators of max(i, j - s)."""
    return min(max(g.i, g.j - s) for g in gens if g.index % 2 == 0)


def genus(gens: list[Generator]) -> int:
    return gens[0].j
