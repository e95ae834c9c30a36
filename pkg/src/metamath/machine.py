"""A prefix-free toy machine with an exact halting decider.

A program is a DOUBLED codeword; its decoded body is read two bits at a
time as opcodes::

    00  INC   reg += 1
    01  DEC   reg = max(reg - 1, 0)
    10  JNZ   if reg != 0: jump to instruction 0
    11  HALT

A single leftover bit at the end of the body acts as HALT and running past
the last instruction also halts.  The machine starts at pc=0 with reg=0 and
outputs reg.  Every executed opcode costs one step, HALT included.

Because the only jump target is instruction 0, halting is decidable: see
``decide_halting``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional

import numpy as np

from . import codec
from .errors import MMError, NotSelfDelimiting

INC, DEC, JNZ, HALT = 0, 1, 2, 3
_MNEMONIC = ("INC", "DEC", "JNZ", "HALT")

# the compiled runner keeps reg in an int64; reg can never exceed the budget
_NATIVE_BUDGET_LIMIT = 1 << 62


@dataclass(frozen=True)
class ToyProgram:
    body: str

    @property
    def encoded(self) -> str:
        return codec.encode_doubled(self.body)

    @property
    def size(self) -> int:
        """Length of the self-delimiting encoding in bits."""
        return 2 * len(self.body) + 2

    @cached_property
    def ops(self) -> tuple:
        body = self.body
        ops = [int(body[i : i + 2], 2) for i in range(0, len(body) - 1, 2)]
        if len(body) % 2:
            ops.append(HALT)
        return tuple(ops)

    def listing(self) -> str:
        return " ".join(_MNEMONIC[o] for o in self.ops) or "(empty)"


def load(encoded: str) -> ToyProgram:
    """Read a program from its self-delimiting encoding."""
    try:
        body, rest = codec.decode(codec.Scheme.DOUBLED, encoded)
    except MMError as exc:
        raise NotSelfDelimiting(f"not a complete DOUBLED codeword: {exc}") from exc
    if rest:
        raise NotSelfDelimiting(f"{len(rest)} bits after the end of the program")
    if encoded[len(encoded) - 2 :] != "01":
        raise NotSelfDelimiting("program must end with the canonical 01 terminator")
    return ToyProgram(body)


class Kind(str, enum.Enum):
    HALTS = "HALTS"
    DIVERGES = "DIVERGES"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class HaltVerdict:
    kind: Kind
    output: Optional[int] = None
    steps: Optional[int] = None
    budget: Optional[int] = None

    @property
    def halts(self) -> bool:
        return self.kind is Kind.HALTS

    def __str__(self):
        if self.kind is Kind.HALTS:
            return f"HALTS output={self.output} steps={self.steps}"
        if self.kind is Kind.UNKNOWN:
            return f"UNKNOWN budget={self.budget}"
        return "DIVERGES"


def halts(output: int, steps: int) -> HaltVerdict:
    return HaltVerdict(Kind.HALTS, output=output, steps=steps)


DIVERGES = HaltVerdict(Kind.DIVERGES)


def _run_python(ops: tuple, budget: int) -> tuple:
    pc = reg = steps = 0
    n = len(ops)
    while pc < n:
        if steps >= budget:
            return False, reg, steps
        op = ops[pc]
        steps += 1
        if op == INC:
            reg += 1
            pc += 1
        elif op == DEC:
            if reg:
                reg -= 1
            pc += 1
        elif op == JNZ:
            pc = 0 if reg else pc + 1
        else:
            return True, reg, steps
    return True, reg, steps


try:
    import numba

    @numba.njit(cache=True)
    def _run_native(ops, budget):  # pragma: no cover - compiled
        pc = 0
        reg = 0
        steps = 0
        n = ops.shape[0]
        while pc < n:
            if steps >= budget:
                return False, reg, steps
            op = ops[pc]
            steps += 1
            if op == 0:
                reg += 1
                pc += 1
            elif op == 1:
                if reg > 0:
                    reg -= 1
                pc += 1
            elif op == 2:
                if reg != 0:
                    pc = 0
                else:
                    pc += 1
            else:
                return True, reg, steps
        return True, reg, steps

except ImportError:  # pragma: no cover
    _run_native = None


def run_budgeted(p: ToyProgram, budget: int) -> HaltVerdict:
    """Plain step-by-step simulation for at most ``budget`` steps."""
    if budget < 0:
        raise ValueError("budget must be >= 0")
    if _run_native is not None and budget < _NATIVE_BUDGET_LIMIT and budget > 256:
        done, reg, steps = _run_native(np.array(p.ops, dtype=np.int8), budget)
        done, reg, steps = bool(done), int(reg), int(steps)
    else:
        done, reg, steps = _run_python(p.ops, budget)
    if done:
        return halts(reg, steps)
    return HaltVerdict(Kind.UNKNOWN, budget=budget)


def _pass(ops: tuple, reg: int) -> tuple:
    """Run from pc=0 until HALT, falling off, or a taken jump back to 0.

    Each instruction executes at most once per pass.  Returns
    ``(returned_to_start, reg, steps)``.
    """
    steps = 0
    for op in ops:
        steps += 1
        if op == INC:
            reg += 1
        elif op == DEC:
            if reg:
                reg -= 1
        elif op == JNZ:
            if reg:
                return True, reg, steps
        else:
            return False, reg, steps
    return False, reg, steps


def decide_halting(p: ToyProgram) -> HaltVerdict:
    """Exact verdict: HALTS with output and step count, or DIVERGES.

    Between visits to pc=0 the machine computes a fixed function of reg.
    Above the saturation bound B (the number of DEC opcodes) every JNZ
    fires, so a pass follows the same path for every such reg and changes
    it by a constant delta.  The orbit of reg at pc=0 therefore either
    repeats inside [0, B], runs off to infinity (delta >= 0 above B), or
    comes back down (delta < 0).
    """
    return decide_ops(p.ops)


def decide_ops(ops: tuple) -> HaltVerdict:
    """``decide_halting`` on a bare opcode tuple."""
    bound = ops.count(DEC)
    seen = set()
    reg = steps = 0
    while True:
        if reg > bound:
            back, after, _ = _pass(ops, reg)
            if back and after >= reg:
                return DIVERGES
        elif reg in seen:
            return DIVERGES
        else:
            seen.add(reg)
        back, reg, used = _pass(ops, reg)
        steps += used
        if not back:
            return halts(reg, steps)


def bodies(max_len: int, min_len: int = 0) -> Iterator[str]:
    """All bodies in canonical order: by length, then lexicographically."""
    for n in range(min_len, max_len + 1):
        for t in itertools.product("01", repeat=n):
            yield "".join(t)


def programs_up_to(size: int) -> Iterator[ToyProgram]:
    """Every program whose encoding has at most ``size`` bits, canonically ordered."""
    if size < 2:
        return
    for body in bodies((size - 2) // 2):
        yield ToyProgram(body)
