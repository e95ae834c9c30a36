import pytest
from hypothesis import given, strategies as st

from metamath import lisp, sexpr
from metamath.errors import ApplyNonFunction, ArityMismatch, BudgetExhausted, NotANumber, RecursionTooDeep
from metamath.lisp import Budget, Env, eval_text, evaluate, repl

FACTORIAL = """
   (let (factorial N)
           (if (= N 0)
               1
               (* N (factorial (- N 1)))
           )
    (factorial 5)
   )
"""

MAP_FACTORIAL = """
   (let (factorial N)
           (if (= N 0)
               1
               (* N (factorial (- N 1)))
           )

   (let (map f x)
      (if (atom x)
          x
          (cons (f (car x))
                (map f (cdr x))
          )
      )

    (map factorial (' (4 1 3 2 5)))

   ))
"""


@pytest.mark.parametrize(
    "src, expected",
    [
        ("(if true (+ 1 2) (+ 3 4))", "3"),
        ("(if false (+ 1 2) (+ 3 4))", "7"),
        ("(' (a b c))", "(a b c)"),
        ("(let n (+ 1 2) (* 3 n))", "9"),
        ("(let (f n) (* n n) (f 10))", "100"),
        ("(car (' (a b c)))", "a"),
        ("(cdr (' (a b c)))", "(b c)"),
        ("(cons (' a) (' (b c)))", "(a b c)"),
        (FACTORIAL, "120"),
        (MAP_FACTORIAL, "(24 1 6 2 120)"),
    ],
)
def test_worked_programs(src, expected):
    assert eval_text(src) == expected


@pytest.mark.parametrize(
    "src, expected",
    [
        ("(+ 12 24)", "36"),
        ("()", "()"),
        ("(^ 2 15)", "32768"),
        ("(^ 2 10)", "1024"),
        ("(^ 0 0)", "1"),
        ("(- 3 5)", "0"),
        ("(= (' (a 1)) (' (a 1)))", "true"),
        ("(= 1 (' a))", "false"),
        ("(atom ())", "true"),
        ("(atom (' (a)))", "false"),
        ("(atom 7)", "true"),
        ("(car ())", "()"),
        ("(cdr (' (a)))", "()"),
        ("(car 5)", "5"),
        ("unbound", "unbound"),
        ("(if (atom x) yes no)", "yes"),
        ("(if 0 yes no)", "yes"),
        ("(let + 5 +)", "5"),
        ("(let x 4 (let x 5 x))", "5"),
        ("(let x 4 (+ (let x 5 x) x))", "9"),
    ],
)
def test_semantics(src, expected):
    assert eval_text(src) == expected


def test_if_evaluates_one_branch():
    # the untaken branch would exhaust any budget
    loop = "(let (f n) (f n) (if true 1 (f 0)))"
    assert eval_text(loop, budget=100) == "1"


def test_functions_are_first_class():
    src = "(let (twice g x) (g (g x)) (let (sq n) (* n n) (twice sq 3)))"
    assert eval_text(src) == "81"


def test_primitive_passed_by_name():
    src = "(let (map f x) (if (atom x) x (cons (f (car x)) (map f (cdr x)))) (map car (' ((1 2) (3)))))"
    assert eval_text(src) == "(1 3)"


def test_big_numbers():
    assert eval_text("(^ 2 200)") == str(2**200)
    assert eval_text("(let (factorial N) (if (= N 0) 1 (* N (factorial (- N 1)))) (factorial 30))") == str(
        265252859812191058636308480000000
    )


@pytest.mark.parametrize(
    "src, err",
    [
        ("(+ 1)", ArityMismatch),
        ("(car 1 2)", ArityMismatch),
        ("(if true 1)", ArityMismatch),
        ("(let (f n) n (f 1 2))", ArityMismatch),
        ("(1 2 3)", ApplyNonFunction),
        ("(g 1)", ApplyNonFunction),
        ("(+ a 1)", NotANumber),
        ("(let + 5 (+ 1 2))", ApplyNonFunction),
    ],
)
def test_errors(src, err):
    with pytest.raises(err):
        eval_text(src)


def test_budget_exhaustion_is_an_error():
    with pytest.raises(BudgetExhausted):
        eval_text("(let (f n) (f (+ n 1)) (f 0))", budget=1000)


def test_deep_recursion_reports_cleanly():
    with pytest.raises((RecursionTooDeep, BudgetExhausted)):
        eval_text("(let (f n) (+ 1 (f n)) (f 0))", budget=10**7)


def _steps(src):
    b = Budget(10**6)
    evaluate(sexpr.parse(src), Env(), b)
    return b.used


def test_budget_monotone():
    need = _steps(FACTORIAL)
    assert eval_text(FACTORIAL, budget=need) == "120"
    for extra in (0, 1, 50, 10**4):
        assert eval_text(FACTORIAL, budget=need + extra) == "120"
    with pytest.raises(BudgetExhausted):
        eval_text(FACTORIAL, budget=need - 1)


naturals = st.integers(min_value=0, max_value=10**30)
lists = st.lists(st.integers(min_value=0, max_value=99) | st.sampled_from(["a", "b", "c"]), max_size=6).map(tuple)


@given(naturals, naturals)
def test_monus(a, b):
    d = int(eval_text(f"(- {a} {b})"))
    assert d + b >= a
    if b >= a:
        assert d == 0


@given(st.integers(min_value=0, max_value=99) | st.sampled_from(["a", "b"]) | lists, lists)
def test_car_cdr_cons(x, y):
    xs, ys = sexpr.to_str(x), sexpr.to_str(y)
    assert eval_text(f"(car (cons (' {xs}) (' {ys})))") == xs
    assert eval_text(f"(cdr (cons (' {xs}) (' {ys})))") == ys


def test_determinism():
    assert {eval_text(MAP_FACTORIAL) for _ in range(5)} == {"(24 1 6 2 120)"}


def test_repl_fresh_env_and_errors():
    out = list(repl(["(+ 12 24)", "()", "(car 1 2)", "", "(^ 2 15)"]))
    assert out[0] == "36" and out[1] == "()" and out[3] == "32768"
    assert out[2].startswith("error: ArityMismatch")


def test_repl_persist():
    lines = ["(let (sq n) (* n n))", "(let k 7)", "(sq k)"]
    assert list(repl(lines, persist=True)) == ["sq", "k", "49"]
    # without persistence the two-argument let is an arity error and sq is unbound
    out = list(repl(lines))
    assert out[0].startswith("error: ArityMismatch")
    assert out[2].startswith("error: ApplyNonFunction")


def test_function_prints_as_lambda():
    assert eval_text("(let (f n) (* n n) f)") == "(lambda (n) (* n n))"
