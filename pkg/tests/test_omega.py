from fractions import Fraction as F

import pytest

from metamath import machine, omega
from metamath.errors import PrecisionTooLarge, Uncertifiable
from metamath.machine import Kind, ToyProgram


def brute_lower_bound(L, budget=10_000):
    """Sum 2**-size over bodies <= L that halt in a plain long simulation."""
    total = F(0)
    for body in machine.bodies(L):
        if machine.run_budgeted(ToyProgram(body), budget).halts:
            total += F(1, 2 ** (2 * len(body) + 2))
    return total


def test_small_approximations():
    assert omega.omega_approx(0).value == 0
    assert omega.omega_approx(1).value == 0
    r = omega.omega_approx(2)
    assert r.value == F(1, 4)
    assert r.halted_programs == [("", 0, 0)]


def test_approx_ten():
    r = omega.omega_approx(10)
    assert r.value >= F(1, 4) + F(1, 8) + F(1, 16) + F(1, 32)
    for body, out, steps in r.halted_programs:
        assert 2 * len(body) + 2 <= 10 and steps <= 10
    assert r.value == sum(F(1, 2 ** (2 * len(b) + 2)) for b, _, _ in r.halted_programs)


def test_approx_monotone():
    vals = [omega.omega_approx(n).value for n in range(21)]
    assert vals == sorted(vals)


def test_exact_examples():
    iv = omega.omega_exact(0)
    assert (iv.lo, iv.hi) == (F(1, 4), F(1, 2))
    iv4 = omega.omega_exact(4)
    assert iv4.lo == F(1, 4) + F(1, 8) + F(1, 16) + F(1, 32) + F(15, 1024)
    assert iv4.hi == iv4.lo + F(1, 64)
    assert omega.omega_exact(4).contains(omega.omega_exact(8))


@pytest.mark.parametrize("L", range(11))
def test_exact_lo_matches_simulation(L):
    assert omega.omega_exact(L).lo == brute_lower_bound(L)


def test_only_one_length_four_body_diverges():
    diverging = [b for b in machine.bodies(4, 4) if machine.decide_halting(ToyProgram(b)).kind is Kind.DIVERGES]
    assert diverging == ["0010"]


def test_intervals_nest_with_exact_width():
    ivs = [omega.omega_exact(L) for L in range(17)]
    for L, iv in enumerate(ivs):
        assert iv.width == F(1, 2 ** (L + 2))
        assert iv.lo <= iv.hi
    for a, b in zip(ivs, ivs[1:]):
        assert a.contains(b)


def test_tail_bound_is_the_total_mass():
    # bodies of length l carry 2**l * 2**-(2l+2) = 2**-(l+2); all lengths give 1/2
    assert omega.codeword_mass(30) == F(1, 2) - F(1, 2**32)


def test_approx_below_exact_upper_bounds():
    his = [omega.omega_exact(L).hi for L in range(9)]
    for N in range(21):
        v = omega.omega_approx(N).value
        assert all(v <= h for h in his)


def test_kraft():
    assert omega.kraft_sum(2) == F(1, 4)
    sums = [omega.kraft_sum(N) for N in range(21)]
    assert all(s <= 1 for s in sums)
    assert sums == sorted(sums)


def test_first_bit():
    assert omega.omega_bit(1) == 0
    # independently: lengths <= 4 plus the tail bound keep Omega below 1/2
    lo = brute_lower_bound(4)
    assert lo + F(1, 64) < F(1, 2)
    # [495/1024, 511/1024] = [0.48339.., 0.49902..]
    assert round(float(lo), 4) == 0.4834 and lo + F(1, 64) < F("0.4991")


def test_bits_agree_with_floor_of_lower_bound():
    for n in range(1, 9):
        m, L = omega.certify_prefix(n)
        iv = omega.omega_exact(L)
        assert m == (iv.lo * 2**n).__floor__()
        bits = omega.omega_bits(n)
        assert int(bits, 2) == m
        assert [omega.omega_bit(i) for i in range(1, n + 1)] == [int(c) for c in bits]


def test_uncertifiable_with_tiny_guard():
    with pytest.raises(Uncertifiable):
        omega.omega_bit(8, guard=3)


def test_precision_guard():
    with pytest.raises(PrecisionTooLarge):
        omega.omega_exact(30)
    with pytest.raises(PrecisionTooLarge):
        omega.omega_exact(9, guard=8)


def test_chaitin_predicate():
    for n in range(1, 6):
        assert omega.chaitin_bit_predicate(n, 1).kind is Kind.DIVERGES
    # bit 1 is 0, and every approximation sits below Omega
    for k in range(1, 21):
        assert omega.chaitin_bit_predicate(1, k).kind is Kind.DIVERGES


def test_chaitin_predicate_stabilises():
    for n in range(2, 7):
        target = omega.omega_bit(n)
        verdicts = [omega.chaitin_bit_predicate(n, k).halts for k in range(1, 27)]
        # find where the approximation's bit settles and check it stays there
        k0 = max(i for i, v in enumerate(verdicts) if v != bool(target)) + 1 if any(v != bool(target) for v in verdicts) else 0
        assert k0 < len(verdicts)
        assert all(v == bool(target) for v in verdicts[k0:])


def test_ord_kieu():
    assert omega.ord_kieu_count(0) == 0
    assert omega.ord_kieu_count(1) == 0
    for n in range(1, 9):
        assert omega.ord_kieu_count(n) % 2 == omega.omega_bit(n)


def test_ord_kieu_count_matches_predicate():
    # count the k the predicate accepts with a late approximation stage
    for n in range(1, 6):
        count = sum(omega.ord_kieu_predicate(n, k, 22) for k in range(0, 2**n + 1))
        assert count == omega.ord_kieu_count(n)


def test_dyadic_json():
    d = omega.DyadicRational.from_fraction(F(495, 1024))
    assert d.to_json() == {"numerator": "495", "exponent": "10"}
    assert d.value == F(495, 1024)
    with pytest.raises(ValueError):
        omega.DyadicRational.from_fraction(F(1, 3))


def test_parallel_matches_serial():
    a = omega.omega_approx(14, jobs=1)
    b = omega.omega_approx(14, jobs=3)
    assert a == b
    assert omega.omega_exact(9, jobs=2) == omega.omega_exact(9)
