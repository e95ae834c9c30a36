"""Evaluator for the small LISP dialect.

Semantics in brief: numbers and ``()`` evaluate to themselves, a word
evaluates to its binding or to itself when unbound, ``(f x y)`` evaluates
its arguments left to right and applies ``f``.  ``if``, ``'`` and ``let``
are the only forms that do not evaluate all of their arguments.
"""

from __future__ import annotations

import sys
import threading
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from . import sexpr
from .errors import (
    ApplyNonFunction,
    ArityMismatch,
    BudgetExhausted,
    MMError,
    NotANumber,
    RecursionTooDeep,
)

TRUE = "true"
FALSE = "false"

DEFAULT_BUDGET = 1_000_000
_RECURSION_LIMIT = 100_000
_STACK_BYTES = 512 * 1024 * 1024
_deep_stack_lock = threading.Lock()


class Env:
    """Chain of binding frames; lookup finds the innermost binding."""

    __slots__ = ("frame", "parent")

    def __init__(self, frame: Optional[dict] = None, parent: Optional["Env"] = None):
        self.frame = frame or {}
        self.parent = parent

    def lookup(self, name: str):
        env = self
        while env is not None:
            if name in env.frame:
                return True, env.frame[name]
            env = env.parent
        return False, None

    def extend(self, frame: dict) -> "Env":
        return Env(frame, self)


@dataclass(eq=False)
class Function:
    name: str
    params: tuple
    body: object
    env: Env = field(repr=False)

    def __str__(self):
        # printed as the equivalent lambda expression
        return sexpr.to_str(("lambda", self.params, self.body))


class Budget:
    """Counts operator applications; running out is an error, never a value."""

    def __init__(self, max_steps: int = DEFAULT_BUDGET):
        self.max_steps = max_steps
        self.used = 0

    def tick(self):
        if self.used >= self.max_steps:
            raise BudgetExhausted(f"evaluation exceeded {self.max_steps} steps")
        self.used += 1


def _num(x, op):
    if not sexpr.is_number(x):
        raise NotANumber(f"{op}: expected a number, got {sexpr.to_str(x)}")
    return x


def _bool(b: bool) -> str:
    return TRUE if b else FALSE


def _equal(a, b) -> bool:
    if isinstance(a, Function) or isinstance(b, Function):
        return a is b
    if type(a) is not type(b):
        return False
    return a == b


def _car(x):
    return x[0] if isinstance(x, tuple) and x else x


def _cdr(x):
    return x[1:] if isinstance(x, tuple) and x else x


def _cons(x, y):
    # a non-list tail is treated as the empty list
    return (x,) + (y if isinstance(y, tuple) else ())


PRIMITIVES = {
    "+": (2, lambda a, b: _num(a, "+") + _num(b, "+")),
    "-": (2, lambda a, b: max(_num(a, "-") - _num(b, "-"), 0)),
    "*": (2, lambda a, b: _num(a, "*") * _num(b, "*")),
    "^": (2, lambda a, b: _num(a, "^") ** _num(b, "^")),
    "=": (2, lambda a, b: _bool(_equal(a, b))),
    "atom": (1, lambda x: _bool(not isinstance(x, tuple) or x == ())),
    "car": (1, _car),
    "cdr": (1, _cdr),
    "cons": (2, _cons),
}
SPECIAL_FORMS = {"if": 3, "'": 1, "let": 3}


def _arity(name, expected, got):
    if expected != got:
        raise ArityMismatch(f"{name} takes {expected} argument(s), got {got}")


class Evaluator:
    def __init__(self, budget: Optional[Budget] = None):
        self.budget = budget if budget is not None else Budget()

    def eval(self, expr, env: Env):
        if isinstance(expr, str):
            found, value = env.lookup(expr)
            return value if found else expr
        if not isinstance(expr, tuple) or expr == ():
            return expr
        head, args = expr[0], expr[1:]

        if isinstance(head, str) and not env.lookup(head)[0]:
            if head in SPECIAL_FORMS:
                _arity(head, SPECIAL_FORMS[head], len(args))
                self.budget.tick()
                return self._special(head, args, env)
            if head in PRIMITIVES:
                arity, fn = PRIMITIVES[head]
                _arity(head, arity, len(args))
                values = [self.eval(a, env) for a in args]
                self.budget.tick()
                return fn(*values)

        fn = self.eval(head, env)
        if isinstance(fn, str) and fn in PRIMITIVES and fn != head:
            # a word bound to a primitive's name, e.g. (let g car (g x))
            return self.eval((fn,) + args, env)
        if not isinstance(fn, Function):
            raise ApplyNonFunction(f"cannot apply {sexpr.to_str(fn)}")
        _arity(fn.name, len(fn.params), len(args))
        values = [self.eval(a, env) for a in args]
        self.budget.tick()
        frame = {fn.name: fn}
        frame.update(zip(fn.params, values))
        return self.eval(fn.body, fn.env.extend(frame))

    def _special(self, head, args, env):
        if head == "'":
            return args[0]
        if head == "if":
            cond = self.eval(args[0], env)
            return self.eval(args[2] if cond == FALSE else args[1], env)
        # let
        target, defn, body = args
        if isinstance(target, tuple) and target and all(isinstance(p, str) for p in target):
            name, params = target[0], target[1:]
            fn = Function(name, params, defn, None)
            fn.env = env.extend({name: fn})
            return self.eval(body, env.extend({name: fn}))
        if not isinstance(target, str):
            raise ApplyNonFunction(f"let: cannot bind {sexpr.to_str(target)}")
        return self.eval(body, env.extend({target: self.eval(defn, env)}))


def evaluate(expr, env: Optional[Env] = None, budget: Optional[Budget] = None):
    """Evaluate a parsed S-expression and return its value.

    Runs on a helper thread with a large stack so deep (non-tail)
    recursion in LISP does not overflow the C stack.
    """
    ev = Evaluator(budget)
    env = env if env is not None else Env()
    result: dict = {}

    def work():
        try:
            result["value"] = ev.eval(expr, env)
        except RecursionError:
            result["error"] = RecursionTooDeep("evaluation nested too deeply")
        except BaseException as exc:  # re-raised on the calling thread
            result["error"] = exc

    with _deep_stack_lock:
        old_limit = sys.getrecursionlimit()
        old_stack = threading.stack_size(_STACK_BYTES)
        sys.setrecursionlimit(max(old_limit, _RECURSION_LIMIT))
        try:
            t = threading.Thread(target=work)
            t.start()
            t.join()
        finally:
            threading.stack_size(old_stack)
            sys.setrecursionlimit(old_limit)
    if "error" in result:
        raise result["error"]
    return result["value"]


def eval_text(text: str, budget: int = DEFAULT_BUDGET) -> str:
    """Parse, evaluate and print one expression."""
    return sexpr.to_str(evaluate(sexpr.parse(text), Env(), Budget(budget)))


def repl(lines: Iterable[str], persist: bool = False, budget: int = DEFAULT_BUDGET) -> Iterator[str]:
    """Evaluate one expression per non-blank line, yielding printed results.

    Errors are yielded as ``error: <Name>: <message>`` and do not stop the
    stream.  With ``persist``, a two-argument ``(let x y)`` line installs a
    top-level binding visible to later lines.
    """
    top = Env()
    for line in lines:
        if not line.strip():
            continue
        try:
            expr = sexpr.parse(line)
            env = top if persist else Env()
            if (
                persist
                and isinstance(expr, tuple)
                and len(expr) == 3
                and expr[0] == "let"
                and not top.lookup("let")[0]
            ):
                yield _define(top, expr[1], expr[2], budget)
                continue
            yield sexpr.to_str(evaluate(expr, env, Budget(budget)))
        except MMError as exc:
            yield f"error: {exc.code}: {exc}"


def _define(top: Env, target, defn, budget: int) -> str:
    if isinstance(target, tuple) and target and all(isinstance(p, str) for p in target):
        fn = Function(target[0], target[1:], defn, top)
        top.frame[fn.name] = fn
        return fn.name
    if not isinstance(target, str):
        raise ApplyNonFunction(f"let: cannot bind {sexpr.to_str(target)}")
    top.frame[target] = evaluate(defn, top, Budget(budget))
    return target
