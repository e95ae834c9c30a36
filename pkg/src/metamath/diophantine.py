"""Binomial parity, the seven-unknown parity gadget, and equation combining.

Polynomials here have natural coefficients and are built with ``+`` and
``*`` only, so there is no subtraction anywhere in the representation.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .config import guards
from .errors import EquationSyntaxError, ParameterOutOfRange

# ---------------------------------------------------------------- polynomials

Monomial = tuple  # sorted ((var, exp), ...), exp >= 1


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


class NatPolynomial:
    """Multivariate polynomial with strictly positive natural coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict] = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}
        for c in self.terms.values():
            if not isinstance(c, int) or c < 0:
                raise ValueError(f"coefficient {c!r} is not a natural number")

    @classmethod
    def const(cls, c: int) -> "NatPolynomial":
        return cls({(): c})

    @classmethod
    def var(cls, name: str) -> "NatPolynomial":
        return cls({((name, 1),): 1})

    def __add__(self, other):
        other = _lift(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return NatPolynomial(terms)

    __radd__ = __add__

    def __mul__(self, other):
        other = _lift(other)
        terms: dict = {}
        for (ma, ca), (mb, cb) in itertools.product(self.terms.items(), other.terms.items()):
            m = _mono_mul(ma, mb)
            terms[m] = terms.get(m, 0) + ca * cb
        return NatPolynomial(terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a natural number")
        out = NatPolynomial.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        return isinstance(other, NatPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    @property
    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def __call__(self, **values) -> int:
        total = 0
        for m, c in self.terms.items():
            for v, e in m:
                c *= values[v] ** e
            total += c
        return total

    def sorted_terms(self, order: Optional[list] = None) -> list:
        """Terms in graded lexicographic order."""
        order = sorted(self.variables) if order is None else order
        rank = {v: i for i, v in enumerate(order)}

        def key(item):
            m, _ = item
            vec = [0] * len(order)
            for v, e in m:
                vec[rank[v]] = e
            return (-sum(vec), [-x for x in vec])

        return sorted(self.terms.items(), key=key)

    def to_str(self, order: Optional[list] = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms(order):
            factors = [v if e == 1 else f"{v}^{e}" for v, e in m]
            if c != 1 or not factors:
                factors.insert(0, str(c))
            parts.append("*".join(factors))
        return " + ".join(parts)

    __str__ = to_str

    def __repr__(self):
        return f"NatPolynomial({self.to_str()!r})"


def _lift(x) -> NatPolynomial:
    if isinstance(x, NatPolynomial):
        return x
    if isinstance(x, int) and x >= 0:
        return NatPolynomial.const(x)
    raise TypeError(f"cannot use {x!r} in a natural-number polynomial")


@dataclass(frozen=True)
class Equation:
    lhs: NatPolynomial
    rhs: NatPolynomial
    variables: tuple = field(default=())

    def __post_init__(self):
        covered = self.lhs.variables | self.rhs.variables
        if not self.variables:
            object.__setattr__(self, "variables", tuple(sorted(covered)))
        elif not covered <= set(self.variables):
            raise ValueError("variable list does not cover both sides")

    def holds(self, **values) -> bool:
        return self.lhs(**values) == self.rhs(**values)

    def __str__(self):
        order = list(self.variables)
        return f"{self.lhs.to_str(order)} = {self.rhs.to_str(order)}"


def combine_equations(eqs: Iterable[Equation]) -> Equation:
    """Merge a system into one equation with the same natural solutions.

    Uses sum(L_i**2 + R_i**2) = sum(2*L_i*R_i), i.e. sum((L_i - R_i)**2) = 0
    written without subtraction.
    """
    eqs = list(eqs)
    if not eqs:
        raise ValueError("need at least one equation")
    lhs = NatPolynomial()
    rhs = NatPolynomial()
    for eq in eqs:
        lhs = lhs + eq.lhs * eq.lhs + eq.rhs * eq.rhs
        rhs = rhs + 2 * eq.lhs * eq.rhs
    names = sorted(set().union(*(e.variables for e in eqs)))
    return Equation(lhs, rhs, tuple(names))


# tiny equation syntax: L = R with + * ^, parentheses, naturals, identifiers
_EQ_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\^|\*|\+|\(|\)|=))")


def _tokenize(text: str) -> list:
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _EQ_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise EquationSyntaxError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, name, op = m.groups()
        out.append(("num", int(num)) if num else ("var", name) if name else ("op", op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, op=None):
        tok = self.peek()
        if op is not None and tok != ("op", op):
            raise EquationSyntaxError(f"expected {op!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    def sum(self):
        p = self.product()
        while self.peek() == ("op", "+"):
            self.take()
            p = p + self.product()
        return p

    def product(self):
        p = self.power()
        while self.peek() == ("op", "*"):
            self.take()
            p = p * self.power()
        return p

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise EquationSyntaxError("exponents must be natural constants")
            return base**val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return NatPolynomial.const(val)
        if kind == "var":
            return NatPolynomial.var(val)
        if val == "(":
            p = self.sum()
            self.take(")")
            return p
        raise EquationSyntaxError(f"unexpected {val!r}")


def parse_equation(text: str) -> Equation:
    p = _Parser(_tokenize(text))
    lhs = p.sum()
    p.take("=")
    rhs = p.sum()
    if p.i != len(p.toks):
        raise EquationSyntaxError("trailing input after equation")
    return Equation(lhs, rhs)


def parse_equations(text: str) -> list:
    return [parse_equation(line) for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]


# ------------------------------------------------------------ binomial parity


def lucas_parity(n: int, k: int) -> int:
    """Parity of C(n, k): odd iff every 1 bit of k is also a 1 bit of n."""
    if n < 0 or k < 0:
        raise ValueError("naturals only")
    return 1 if k & ~n == 0 else 0


_rows: list = [[1]]


def pascal_row(n: int) -> list:
    """Row n of Pascal's triangle by the addition recurrence (exact big ints)."""
    limit = guards().binomial_n
    if n > limit:
        raise ParameterOutOfRange(f"n={n} above oracle guard {limit}")
    while len(_rows) <= n:
        prev = _rows[-1]
        _rows.append([1] + [a + b for a, b in zip(prev, prev[1:])] + [1])
    return _rows[n]


def binomial_parity_oracle(n: int, k: int) -> int:
    row = pascal_row(n)
    return row[k] & 1 if 0 <= k <= n else 0


# ------------------------------------------------------ seven-unknown gadget


@dataclass(frozen=True)
class MJWitness:
    N: int
    K: int
    b: int
    x: int
    y: int
    z: int
    u: int
    v: int
    w: int

    def unknowns(self) -> dict:
        return {k: getattr(self, k) for k in "bxyzuvw"}


def mj_system(N: int, K: int) -> list:
    """The five equations for fixed parameters N, K in unknowns b,x,y,z,u,v,w."""
    b, x, y, z, u, v, w = (NatPolynomial.var(c) for c in "bxyzuvw")
    one = NatPolynomial.const(1)
    order = tuple("bxyzuvw")
    return [
        Equation(b, NatPolynomial.const(2**N), order),
        Equation((b + one) ** N, x * b ** (K + 1) + y * b**K + z, order),
        Equation(z + u + one, b**K, order),
        Equation(y + v + one, b, order),
        Equation(y, 2 * w + one, order),
    ]


def mj_holds(N: int, K: int, s: dict) -> bool:
    """Check the five equations directly on integer values."""
    b, x, y, z, u, v, w = (s[c] for c in "bxyzuvw")
    return (
        b == 2**N
        and (b + 1) ** N == x * b ** (K + 1) + y * b**K + z
        and z + u + 1 == b**K
        and y + v + 1 == b
        and y == 2 * w + 1
    )


def _check_params(N: int, K: int):
    if N < 1 or K < 0 or K > N:
        raise ParameterOutOfRange(f"need N >= 1 and 0 <= K <= N, got N={N}, K={K}")


def mj_witness(N: int, K: int) -> Optional[MJWitness]:
    """Read the candidate off the base-2**N digits of (2**N + 1)**N.

    Returns None when the K-th digit, C(N, K), is even.
    """
    _check_params(N, K)
    b = 1 << N
    bk = b**K
    total = (b + 1) ** N
    high, z = divmod(total, bk)
    x, y = divmod(high, b)
    if y % 2 == 0:
        return None
    wit = MJWitness(N, K, b, x, y, z, bk - z - 1, b - y - 1, (y - 1) // 2)
    if not mj_holds(N, K, wit.unknowns()):
        raise AssertionError(f"constructed witness fails for N={N}, K={K}")
    return wit


def mj_solutions(N: int, K: int, search_radius: Optional[int] = None) -> list:
    """All solutions in the region the constraints allow, by search over x and y.

    z, u, v and w each sit in an equation where they have unit (or, for w,
    factor 2) coefficient, so a choice of x and y leaves at most one
    candidate for each; those candidates are checked against all five
    equations.  ``search_radius`` caps every enumerated unknown.
    """
    _check_params(N, K)
    if N > 6:
        raise ParameterOutOfRange("exhaustive search is limited to N <= 6")
    b = 1 << N
    bk = b**K
    total = (b + 1) ** N
    x_max = total // b ** (K + 1)
    y_max = b - 1
    if search_radius is not None:
        x_max = min(x_max, search_radius)
        y_max = min(y_max, search_radius)
    found = []
    for x in range(x_max + 1):
        for y in range(y_max + 1):
            z = total - x * b ** (K + 1) - y * bk
            if z < 0 or z >= bk or y % 2 == 0:
                continue
            if search_radius is not None and z > search_radius:
                continue
            s = {"b": b, "x": x, "y": y, "z": z, "u": bk - z - 1, "v": b - y - 1, "w": (y - 1) // 2}
            if mj_holds(N, K, s):
                found.append(s)
    return found


def mj_uniqueness_check(N: int, K: int, search_radius: Optional[int] = None) -> bool:
    """True iff the search finds exactly the constructed witness (or nothing when none exists)."""
    wit = mj_witness(N, K)
    found = mj_solutions(N, K, search_radius)
    if wit is None:
        return not found
    return found == [wit.unknowns()]
