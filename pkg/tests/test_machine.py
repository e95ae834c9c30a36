import numpy as np
import pytest
from hypothesis import given, strategies as st

from metamath import codec, machine
from metamath.errors import NotSelfDelimiting
from metamath.machine import DIVERGES, Kind, ToyProgram, decide_halting, halts, load, run_budgeted


def test_load():
    assert load("01").body == ""
    assert load("000001").body == "00"
    assert load("0000110001").ops == (machine.INC, machine.JNZ)
    assert ToyProgram("001").ops == (machine.INC, machine.HALT)


@pytest.mark.parametrize("bad", ["", "0", "00", "0101", "000", "10"])
def test_load_rejects(bad):
    with pytest.raises(NotSelfDelimiting):
        load(bad)


@pytest.mark.parametrize(
    "body, budget, expected",
    [
        ("", 0, halts(0, 0)),
        ("00", 10, halts(1, 1)),
        ("11", 5, halts(0, 1)),
        ("11", 0, machine.HaltVerdict(Kind.UNKNOWN, budget=0)),
        ("0010", 1000, machine.HaltVerdict(Kind.UNKNOWN, budget=1000)),
        ("0110", 5, halts(0, 2)),
        ("1", 5, halts(0, 1)),
        ("000000", 3, halts(3, 3)),
    ],
)
def test_run_budgeted(body, budget, expected):
    assert run_budgeted(ToyProgram(body), budget) == expected


@pytest.mark.parametrize(
    "body, expected",
    [
        ("", halts(0, 0)),
        ("0010", DIVERGES),
        ("0110", halts(0, 2)),
        ("00", halts(1, 1)),
        # INC INC DEC JNZ: reg climbs by one per pass
        ("00000110", DIVERGES),
        # INC DEC JNZ: reg returns to 0 and the jump falls through
        ("000110", halts(0, 3)),
        # INC INC JNZ DEC... never reaches DEC
        ("00001001", DIVERGES),
        # DEC DEC INC JNZ: every pass ends with reg=1 at the jump
        ("01010010", DIVERGES),
        # INC DEC DEC JNZ: reg is back to 0 at the jump
        ("00010110", halts(0, 4)),
    ],
)
def test_decide(body, expected):
    assert decide_halting(ToyProgram(body)) == expected


def test_native_and_python_runners_agree():
    for body in machine.bodies(10):
        ops = ToyProgram(body).ops
        done, reg, steps = machine._run_native(np.array(ops, dtype=np.int8), 2000)
        assert machine._run_python(ops, 2000) == (bool(done), int(reg), int(steps))


@pytest.mark.parametrize("length", range(11))
def test_decider_matches_simulation(length):
    for body in machine.bodies(length, length):
        p = ToyProgram(body)
        d = decide_halting(p)
        r = run_budgeted(p, 20_000)
        if r.halts:
            assert d == r
        else:
            assert d.kind is Kind.DIVERGES
        assert d.kind is not Kind.UNKNOWN


@given(st.text(alphabet="01", min_size=11, max_size=40))
def test_decider_on_long_bodies(body):
    p = ToyProgram(body)
    d = decide_halting(p)
    if d.halts:
        assert run_budgeted(p, d.steps) == d
        if d.steps:
            assert not run_budgeted(p, d.steps - 1).halts
    else:
        assert run_budgeted(p, 100_000).kind is Kind.UNKNOWN


def test_decide_is_deterministic():
    for body in ("", "0010", "01010010", "0001100111"):
        assert len({decide_halting(ToyProgram(body)) for _ in range(3)}) == 1


def test_canonical_order():
    assert list(machine.bodies(2)) == ["", "0", "1", "00", "01", "10", "11"]
    sizes = [p.size for p in machine.programs_up_to(10)]
    assert sizes == sorted(sizes) and max(sizes) == 10
    assert list(machine.programs_up_to(1)) == []


@given(st.text(alphabet="01", max_size=30), st.text(alphabet="01", max_size=30))
def test_programs_prefix_free(a, b):
    if a != b:
        ea, eb = ToyProgram(a).encoded, ToyProgram(b).encoded
        assert not ea.startswith(eb) and not eb.startswith(ea)


@given(st.text(alphabet="01", max_size=30), st.text(alphabet="01", max_size=30))
def test_reading_stops_at_codeword(body, junk):
    # the codeword's own structure marks its end
    enc = ToyProgram(body).encoded
    assert codec.decode(codec.Scheme.DOUBLED, enc + junk) == (body, junk)


def test_taken_jump_means_divergence():
    # a pass is monotone in its starting reg, so once a jump is taken every
    # later pass jumps again: halting runs execute each opcode at most once
    for body in machine.bodies(12):
        p = ToyProgram(body)
        d = decide_halting(p)
        if d.halts:
            assert d.steps <= len(p.ops)
