"""Sparse multivariable Laurent polynomials with half-integer exponents.

Exponents are stored doubled, so ``t^(1/2)`` has key ``(1,)`` and ``t^-1``
has key ``(-2,)``.  Coefficients are Python ints (arbitrary precision).
Instances are immutable; every operation returns a new polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DimensionMismatch, NotDivisible, NotSymmetric



class LaurentPoly:
    __slots__ = ("_n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[tuple, int] | Iterable = ()):
        if n < 1:
            raise ValueError("variable count must be at least 1")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[tuple, int] = {}
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise DimensionMismatch(f"exponent {exp} has length {len(exp)}, expected {n}")
            c = int(c)
            clean[exp] = clean.get(exp, 0) + c
        self._n = n
        self._terms = {e: c for e, c in clean.items() if c != 0}
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "LaurentPoly":
        return cls(n)

    @classmethod
    def constant(cls, n: int, c: int) -> "LaurentPoly":
        return cls(n, {(0,) * n: c})

    @classmethod
    def monomial(cls, exponents, c: int = 1) -> "LaurentPoly":
        """Monomial from *true* exponents (ints, Fractions or halves)."""
        doubled = []
        for e in exponents:
            d = Fraction(e) * 2
            if d.denominator != 1:
                raise ValueError(f"exponent {e} is not a half-integer")
            doubled.append(int(d))
        return cls(len(doubled), {tuple(doubled): c})

    @classmethod
    def half_difference(cls, n: int, i: int) -> "LaurentPoly":
        """The factor t_i^(1/2) - t_i^(-1/2) in n variables (i is 0-based)."""
        up = [0] * n
        down = [0] * n
        up[i], down[i] = 1, -1
        return cls(n, {tuple(up): 1, tuple(down): -1})

    # -- basic protocol ---------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coefficient(self, doubled_exp) -> int:
        return self._terms.get(tuple(doubled_exp), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(self._n, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._n == other._n and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self._n}, {self.items()!r})"

    def __str__(self):
        return format_poly(self)

    # -- ring operations --------------------------------------------------

    def _check(self, other: "LaurentPoly"):
        if self._n != other._n:
            raise DimensionMismatch(f"{self._n} variables vs {other._n}")

    def _coerce(self, other):
        if isinstance(other, int):
            return LaurentPoly.constant(self._n, other)
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self._n, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self._n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(self._n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = LaurentPoly.constant(self._n, 1)
        for _ in range(k):
            result = result * self
        return result

    def shift(self, doubled_offset) -> "LaurentPoly":
        """Multiply by the monomial with the given doubled exponent."""
        off = tuple(doubled_offset)
        if len(off) != self._n:
            raise DimensionMismatch("offset length")
        return LaurentPoly(
            self._n, {tuple(a + b for a, b in zip(e, off)): c for e, c in self._terms.items()}
        )

    def invert_variables(self) -> "LaurentPoly":
        """Substitute t_i -> t_i^-1 for all i."""
        return LaurentPoly(self._n, {tuple(-a for a in e): c for e, c in self._terms.items()})

    # -- derived quantities -----------------------------------------------

    def degree_bounds(self, i: int) -> tuple[int, int]:
        """(min, max) doubled exponent in variable i; raises on zero."""
        vals = [e[i] for e in self._terms]
        return min(vals), max(vals)

    def leading(self):
        """Lexicographically largest (exponent, coefficient)."""
        e = max(self._terms)
        return e, self._terms[e]

    def to_json(self) -> list:
        return [[list(e), c] for e, c in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, data, n: int | None = None) -> "LaurentPoly":
        if n is None:
            if not data:
                raise ValueError("cannot infer variable count of empty polynomial")
            n = len(data[0][0])
        return cls(n, [(tuple(e), c) for e, c in data])


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def divide_exact(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Return q with q * d == p, or raise NotDivisible.

    Lexicographic leading-term division.  Quotient monomials are confined to
    the box forced by per-variable degree additivity, which guarantees
    termination when the division is not exact.
    """
    p._check(d)
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return LaurentPoly.zero(p.n)
    n = p.n
    lo = []
    hi = []
    for i in range(n):
        pmin, pmax = p.degree_bounds(i)
        dmin, dmax = d.degree_bounds(i)
        lo.append(pmin - dmin)
        hi.append(pmax - dmax)
    d_exp, d_coef = d.leading()
    quotient: dict[tuple, int] = {}
    rem = dict(p.terms)
    while rem:
        r_exp = max(rem)
        r_coef = rem[r_exp]
        m_exp = tuple(a - b for a, b in zip(r_exp, d_exp))
        if r_coef % d_coef or any(not (lo[i] <= m_exp[i] <= hi[i]) for i in range(n)):
            raise NotDivisible(f"nonzero remainder dividing {p} by {d}")
        m_coef = r_coef // d_coef
        quotient[m_exp] = quotient.get(m_exp, 0) + m_coef
        for e, c in d.terms.items():
            k = tuple(a + b for a, b in zip(e, m_exp))
            v = rem.get(k, 0) - m_coef * c
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return LaurentPoly(n, quotient)


def specialize_diagonal(p: LaurentPoly) -> LaurentPoly:
    """Set every t_i equal to a single variable t."""
    out: dict[tuple, int] = {}
    for e, c in p.terms.items():
        k = (sum(e),)
        out[k] = out.get(k, 0) + c
    return LaurentPoly(1, out)


def evaluate_at_one(p: LaurentPoly) -> int:
    return sum(p.terms.values())


def _z_power(k: int) -> LaurentPoly:
    return LaurentPoly.half_difference(1, 0) ** k


def conway_substitute(p: LaurentPoly) -> dict[int, int]:
    """Rewrite a (+/-)-palindromic one-variable p as a polynomial in z = t^(1/2) - t^(-1/2).

    Returns ``{k: coefficient of z^k}`` with zero coefficients omitted.
    """
    if p.n != 1:
        raise NotSymmetric("conway_substitute needs a one-variable polynomial")
    if p.is_zero():
        return {}
    parities = {e[0] % 2 for e in p.terms}
    if len(parities) != 1:
        raise NotSymmetric(f"{p} mixes integer and half-integer exponents")
    sign = -1 if parities.pop() else 1
    if p.invert_variables() != sign * p:
        raise NotSymmetric(f"{p} is not {'anti-' if sign < 0 else ''}palindromic")
    coeffs: dict[int, int] = {}
    rem = p
    while not rem.is_zero():
        (top,), c = rem.leading()
        if top < 0:
            raise NotSymmetric(f"{p} has no expansion in z")
        coeffs[top] = c
        rem = rem - c * _z_power(top)
    return coeffs


def from_conway(coeffs: Mapping[int, int]) -> LaurentPoly:
    """Back-substitute z = t^(1/2) - t^(-1/2) into a z-polynomial."""
    out = LaurentPoly.zero(1)
    for k, c in coeffs.items():
        out = out + c * _z_power(k)
    return out


def _format_exp(d: int) -> str:
    if d % 2 == 0:
        v = d // 2
        return "" if v == 1 else f"^{v}"
    return f"^({d}/2)"


def format_poly(p: LaurentPoly, names=None) -> str:
    """Human-readable rendering, e.g. ``-t1^(1/2)*t2^(1/2) + 1``."""
    if p.is_zero():
        return "0"
    if names is None:
        names = ["t"] if p.n == 1 else [f"t{i + 1}" for i in range(p.n)]
    pieces = []
    for e, c in sorted(p.terms.items(), reverse=True):
        mono = "*".join(f"{names[i]}{_format_exp(d)}" for i, d in enumerate(e) if d)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        pieces.append(("-" if c < 0 else "+", body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
