"""Exact series, certified digit streams and elementary number theory.

Every real here is handled through a bracket: a pair of rationals
``lo <= x <= hi``.  A digit is emitted only when ``lo`` and ``hi`` agree on
it, so no emitted digit can later change.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd, isqrt
from typing import Callable, Iterator, Optional, Sequence

import gmpy2

from .config import guards
from .errors import (
    BaseOutOfRange,
    CommonFactor,
    DuplicateAbscissa,
    NoSignChange,
    ParameterOutOfRange,
    RatioOutOfRange,
    Uncertifiable,
)

Bracket = Callable[[int], tuple]  # precision level -> (lo, hi)

# ------------------------------------------------------------------- series


def geometric_partial(r, n: int) -> Fraction:
    """1 + r + ... + r**n via the closed form (1 - r**(n+1)) / (1 - r)."""
    r = Fraction(r)
    if r == 1:
        return Fraction(n + 1)
    return (1 - r ** (n + 1)) / (1 - r)


def geometric_limit(r) -> Fraction:
    r = Fraction(r)
    if abs(r) >= 1:
        raise RatioOutOfRange(f"|r| = {abs(r)} >= 1; the series diverges")
    return 1 / (1 - r)


def harmonic_partial(n: int) -> Fraction:
    if n < 1:
        raise ValueError("n >= 1")
    return sum((Fraction(1, i) for i in range(1, n + 1)), Fraction(0))


def leibniz_pi_partial(n: int) -> Fraction:
    """4 * (1 - 1/3 + 1/5 - ...) over the first n terms."""
    if n < 1:
        raise ValueError("n >= 1")
    # common denominator keeps this linear in n instead of quadratic
    lcm = 1
    for i in range(n):
        lcm = lcm * (2 * i + 1) // gcd(lcm, 2 * i + 1)
    num = sum((-1) ** i * (lcm // (2 * i + 1)) for i in range(n))
    return Fraction(4 * num, lcm)


def euler_e_partial(n: int) -> Fraction:
    """1/0! + 1/1! + ... + 1/n!; the remainder is below 2/(n+1)!."""
    if n < 0:
        raise ValueError("n >= 0")
    total = Fraction(0)
    term = Fraction(1)
    for i in range(n + 1):
        if i:
            term /= i
        total += term
    return total


def _factorials() -> Iterator[int]:
    m, f = 1, 1
    while True:
        yield f
        m += 1
        f *= m


def liouville_digit(i: int) -> int:
    """Decimal digit i (i >= 1) after the point of sum 10**-(m!)."""
    if i < 1:
        raise ValueError("digit positions start at 1")
    for f in _factorials():
        if f >= i:
            return int(f == i)
    raise AssertionError("unreachable")


def prime_reciprocal_partial(n: int) -> Fraction:
    """Sum of 1/p over primes p <= n."""
    if n < 2:
        raise ValueError("n >= 2")
    return sum((Fraction(1, p) for p in primes_upto(n)), Fraction(0))


# -------------------------------------------------------------- digit streams


@dataclass(frozen=True)
class DigitStream:
    """Certified positional expansion of a non-negative real.

    ``digits`` are the fractional digits (gmpy2 alphabet 0-9a-zA-Z).  When
    ``exact`` is set the value is a rational met exactly; a terminating
    expansion then carries no trailing zeros.
    """

    base: int
    integer_part: int
    digits: str
    exact: bool
    level: int
    width: Fraction

    def __iter__(self):
        return (int(d, 36) if d.isalnum() else 0 for d in self.digits)

    def values(self) -> list:
        return [_DIGIT_VALUE[d] for d in self.digits]

    def text(self) -> str:
        head = gmpy2.mpz(self.integer_part).digits(self.base)
        return f"{head}.{self.digits}" if self.digits else head

    def to_json(self) -> dict:
        return {
            "base": str(self.base),
            "integer_part": str(self.integer_part),
            "digits": self.digits,
            "count": str(len(self.digits)),
            "exact": self.exact,
            "level": str(self.level),
            "width": f"{self.width.numerator}/{self.width.denominator}",
        }


_ALPHABET = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
_DIGIT_VALUE = {c: i for i, c in enumerate(_ALPHABET)}


def _expand(x: Fraction, base: int, count: int) -> tuple:
    """(integer part, count fractional digits) of floor(x * base**count)."""
    scaled = (x.numerator * base**count) // x.denominator
    ip, frac = divmod(scaled, base**count)
    s = gmpy2.mpz(frac).digits(base) if count else ""
    return ip, s.rjust(count, "0") if count else ""


def certified_prefix(lo: Fraction, hi: Fraction, base: int, count: int) -> tuple:
    """Digits of every x in [lo, hi] that the two ends agree on (at most count)."""
    ip_lo, d_lo = _expand(lo, base, count)
    ip_hi, d_hi = _expand(hi, base, count)
    if ip_lo != ip_hi:
        return None, ""
    n = 0
    while n < count and d_lo[n] == d_hi[n]:
        n += 1
    return ip_lo, d_lo[:n]


def digit_stream(bracket: Bracket, base: int, count: int, level: int = 8, max_level: int = 1 << 24) -> DigitStream:
    """Raise the precision level until ``count`` digits are certified."""
    if base < 2 or base > len(_ALPHABET):
        raise BaseOutOfRange(f"base {base} outside 2..{len(_ALPHABET)}")
    limit = guards().digit_count
    if count > limit:
        raise ParameterOutOfRange(f"count {count} above guard {limit}")
    while True:
        lo, hi = (Fraction(v) for v in bracket(level))
        if lo > hi:
            raise AssertionError("bracket ends out of order")
        if lo == hi:
            ip, digits = _expand(lo, base, count)
            terminating = (lo * base**count).denominator == 1
            if terminating:
                digits = digits.rstrip("0")
            return DigitStream(base, ip, digits, True, level, Fraction(0))
        ip, digits = certified_prefix(lo, hi, base, count)
        if ip is not None and len(digits) == count:
            return DigitStream(base, ip, digits, False, level, hi - lo)
        if level >= max_level:
            raise Uncertifiable(f"only {len(digits)} of {count} digits certified at level {level}")
        level *= 2


def iter_digits(bracket: Bracket, base: int, chunk: int = 64) -> Iterator[int]:
    """Lazily extend a stream, yielding digit values one at a time."""
    done = 0
    count = chunk
    level = 8
    while True:
        s = digit_stream(bracket, base, count, level)
        for d in s.digits[done:]:
            yield _DIGIT_VALUE[d]
        done = len(s.digits)
        if s.exact and done < count:
            return
        level = s.level
        count *= 2


# brackets for the named constants


def _arctan_inv_bracket(m: int, terms: int) -> tuple:
    # alternating series with decreasing terms: consecutive partial sums bracket
    s = Fraction(0)
    prev = s
    for j in range(terms + 1):
        prev = s
        s += Fraction((-1) ** j, (2 * j + 1) * m ** (2 * j + 1))
    return min(prev, s), max(prev, s)


def pi_bracket(level: int) -> tuple:
    """Machin: pi = 16 atan(1/5) - 4 atan(1/239), each bracketed."""
    terms = max(1, level)
    a_lo, a_hi = _arctan_inv_bracket(5, terms)
    b_lo, b_hi = _arctan_inv_bracket(239, terms)
    return 16 * a_lo - 4 * b_hi, 16 * a_hi - 4 * b_lo


def e_bracket(level: int) -> tuple:
    s = euler_e_partial(level)
    return s, s + Fraction(2, factorial(level + 1))


def leibniz_bracket(n: int) -> tuple:
    a, b = leibniz_pi_partial(n), leibniz_pi_partial(n + 1)
    return min(a, b), max(a, b)


def liouville_bracket(level: int) -> tuple:
    """Terms 10**-(m!) with m! <= level; the rest is below twice the next term."""
    s = Fraction(0)
    m, f = 1, 1
    while f <= max(1, level):
        s += Fraction(1, 10**f)
        m += 1
        f *= m
    return s, s + Fraction(2, 10**f)


def series_terms(b: int, c: int, level: int) -> int:
    """Number of Bailey-Crandall terms used at a precision level."""
    k = 1
    while c ** (k + 1) <= level and k < 64:
        k += 1
    return k


def bailey_crandall_bracket(b: int, c: int) -> Bracket:
    def bracket(level: int) -> tuple:
        k = series_terms(b, c, level)
        s = sum((Fraction(1, c**i * b ** (c**i)) for i in range(1, k + 1)), Fraction(0))
        nxt = Fraction(1, c ** (k + 1) * b ** (c ** (k + 1)))
        return s, s + 2 * nxt

    return bracket


def _check_bc(b: int, c: int):
    if b < 2 or c < 2:
        raise BaseOutOfRange(f"need b >= 2 and c >= 2, got b={b}, c={c}")
    if gcd(b, c) != 1:
        raise CommonFactor(f"gcd({b}, {c}) = {gcd(b, c)}")


def bailey_crandall_digits(b: int, c: int, count: int) -> DigitStream:
    """Base-b digits of sum 1/(c**k * b**(c**k)), k >= 1."""
    _check_bc(b, c)
    return digit_stream(bailey_crandall_bracket(b, c), b, count, level=max(8, count))


def stoneham_bits(count: int) -> DigitStream:
    return bailey_crandall_digits(2, 3, count)


# -------------------------------------------------- polynomials and bisection


def poly_eval(coeffs: Sequence, x):
    """Horner evaluation; coefficients in ascending degree."""
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


class IntPolynomial:
    def __init__(self, coeffs: Sequence[int]):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            raise ValueError("the zero polynomial has no roots to isolate")
        self.coeffs = tuple(int(c) for c in coeffs)

    def __call__(self, x):
        return poly_eval(self.coeffs, x)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"


class Bisection:
    """Exact rational interval halving around a simple root."""

    def __init__(self, p: IntPolynomial, alpha, beta):
        self.p = p
        lo, hi = Fraction(alpha), Fraction(beta)
        if lo > hi:
            lo, hi = hi, lo
        if p(lo) * p(hi) >= 0:
            raise NoSignChange(f"p({lo}) and p({hi}) do not have strictly opposite signs")
        self.lo, self.hi = lo, hi
        self.steps = 0
        self.root: Optional[Fraction] = None

    def step(self):
        if self.root is not None:
            return
        mid = (self.lo + self.hi) / 2
        fm = self.p(mid)
        if fm == 0:
            self.root = mid
            self.lo = self.hi = mid
        elif (fm < 0) == (self.p(self.lo) < 0):
            self.lo = mid
        else:
            self.hi = mid
        self.steps += 1

    def bracket(self, level: int) -> tuple:
        while self.steps < level and self.root is None:
            self.step()
        return self.lo, self.hi


def algebraic_digits(p, alpha, beta, base: int = 10, count: int = 10) -> DigitStream:
    """Digits of the root of p in [alpha, beta] by bisection.

    A root met exactly at a midpoint ends the stream with ``exact`` set.
    """
    if not isinstance(p, IntPolynomial):
        p = IntPolynomial(p)
    bis = Bisection(p, alpha, beta)
    # about log2(base) halvings per digit
    start = max(8, (count + 2) * base.bit_length())
    return digit_stream(bis.bracket, base, count, level=start)


def sqrt2_bracket(level: int) -> tuple:
    return Bisection(IntPolynomial([-2, 0, 1]), 1, 2).bracket(level)


NAMED_BRACKETS: dict = {
    "pi": pi_bracket,
    "e": e_bracket,
    "sqrt2": sqrt2_bracket,
    "liouville": liouville_bracket,
    "stoneham": bailey_crandall_bracket(2, 3),
}


def named_digits(name: str, base: int, count: int, level: Optional[int] = None) -> DigitStream:
    if name not in NAMED_BRACKETS:
        raise ParameterOutOfRange(f"unknown constant {name!r}; choose from {sorted(NAMED_BRACKETS)}")
    if level is None:
        level = max(8, count) if name in ("stoneham", "sqrt2") else 8
    if name == "sqrt2":
        level = max(level, (count + 2) * base.bit_length())
    return digit_stream(NAMED_BRACKETS[name], base, count, level=level)


# ------------------------------------------------------------ interpolation


def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _field(v):
    return Fraction(v) if isinstance(v, (int, str)) else v


def lagrange_interpolate(points: Sequence) -> list:
    """Coefficients (ascending) of the unique polynomial of degree < len(points).

    Plain field arithmetic only, so Fractions and symbolic values both work.
    """
    points = [(_field(x), _field(y)) for x, y in points]
    xs = [x for x, _ in points]
    for i, a in enumerate(xs):
        for b in xs[i + 1 :]:
            if a == b:
                raise DuplicateAbscissa(f"abscissa {a} appears twice")
    coeffs = [0] * max(len(points), 1)
    for i, (xi, yi) in enumerate(points):
        basis = [1]
        denom = 1
        for j, xj in enumerate(xs):
            if j != i:
                basis = _poly_mul(basis, [-xj, 1])
                denom = denom * (xi - xj)
        for d, c in enumerate(basis):
            coeffs[d] += yi * c / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


# ------------------------------------------------------------- number theory


def is_prime(n: int) -> bool:
    """Deterministic trial division."""
    if n > guards().trial_division:
        raise ParameterOutOfRange(f"{n} above the trial-division guard")
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def primes_upto(n: int) -> list:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def composite_gap(N: int) -> list:
    """N!+2, ..., N!+N, each paired with a divisor that proves it composite."""
    if N < 2:
        raise ValueError("N >= 2")
    f = factorial(N)
    return [(f + i, i) for i in range(2, N + 1)]


def euclid_bound_check(N: int) -> tuple:
    """Least prime above N, and whether it is at most N! + 1."""
    if not 2 <= N <= 20:
        raise ParameterOutOfRange("N must lie in 2..20")
    p = N + 1
    while not is_prime(p):
        p += 1
    return p, p <= factorial(N) + 1


def proper_divisor_sum(n: int) -> int:
    total = 1 if n > 1 else 0
    for d in range(2, isqrt(n) + 1):
        if n % d == 0:
            total += d
            if d != n // d:
                total += n // d
    return total


def perfect_from_mersenne(n: int) -> Optional[int]:
    """2**(n-1) * (2**n - 1) when 2**n - 1 is prime, checked by divisor sum."""
    if n < 2:
        raise ValueError("n >= 2")
    m = 2**n - 1
    if not is_prime(m):
        return None
    perfect = 2 ** (n - 1) * m
    if proper_divisor_sum(perfect) != perfect:
        raise AssertionError(f"{perfect} failed the divisor-sum check")
    return perfect
