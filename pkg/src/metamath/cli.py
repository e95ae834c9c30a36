"""The ``mm`` command line.

Exit codes: 0 success, 1 usage error, 2 domain error.  With ``--json``
every result is a JSON object whose numbers are decimal strings, and a
domain error is written to stderr as ``{"error": <Name>, "message": ...}``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import codec, complexity, constants, diophantine, lisp, machine, normality, omega, sexpr
from .config import guards
from .errors import BoundTooLarge, MMError, ParameterOutOfRange


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _frac(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _read_input(arg) -> str:
    if arg is None or arg == "-":
        return sys.stdin.read()
    return Path(arg).read_text()


def _bits_arg(arg) -> str:
    text = sys.stdin.read() if arg is None or arg == "-" else arg
    return "".join(text.split())


# ---------------------------------------------------------------- handlers


def cmd_lisp_eval(a):
    value = lisp.evaluate(sexpr.parse(_read_input(a.source)), lisp.Env(), lisp.Budget(a.budget))
    text = sexpr.to_str(value)
    return {"value": text}, text


def cmd_lisp_parse(a):
    text = sexpr.to_str(sexpr.parse(_read_input(a.source)))
    return {"sexpr": text}, text


def cmd_codec_number(a):
    if a.to_text:
        text = codec.number_to_text(int(a.value))
        return {"number": a.value, "text": text}, text
    if a.from_text:
        n = codec.text_to_number(a.value)
        return {"text": a.value, "number": str(n)}, str(n)
    bits = codec.number_to_bits(int(a.value))
    return {"number": a.value, "bits": bits}, bits


def cmd_lisp_repl(a):
    for out in lisp.repl(sys.stdin, persist=a.persist, budget=a.budget):
        print(out, flush=True)
    return None, None


def cmd_codec_encode(a):
    payload = _bits_arg(a.bits)
    enc = codec.encode(a.scheme, payload)
    return {"scheme": a.scheme, "payload": payload, "encoded": enc}, enc


def cmd_codec_decode(a):
    stream = _bits_arg(a.bits)
    if a.once:
        payload, rest = codec.decode(a.scheme, stream)
        return {"scheme": a.scheme, "payload": payload, "remainder": rest}, f"{payload}\n{rest}"
    parts = codec.decode_all(a.scheme, stream)
    return {"scheme": a.scheme, "payloads": parts}, "\n".join(parts)


def _verdict_json(v: machine.HaltVerdict) -> dict:
    d = {"kind": v.kind.value}
    if v.output is not None:
        d["output"] = str(v.output)
        d["steps"] = str(v.steps)
    if v.budget is not None:
        d["budget"] = str(v.budget)
    return d


def cmd_machine_run(a):
    p = machine.load(_bits_arg(a.bits))
    v = machine.run_budgeted(p, a.budget)
    return {"body": p.body, "verdict": _verdict_json(v)}, str(v)


def cmd_machine_decide(a):
    p = machine.load(_bits_arg(a.bits))
    v = machine.decide_halting(p)
    return {"body": p.body, "verdict": _verdict_json(v)}, str(v)


def cmd_omega_predicate(a):
    if a.kind == "chaitin":
        v = omega.chaitin_bit_predicate(a.n, a.k)
        return {"n": str(a.n), "k": str(a.k), "verdict": _verdict_json(v)}, str(v)
    ok = omega.ord_kieu_predicate(a.n, a.k, a.stages)
    return {"n": str(a.n), "k": str(a.k), "stages": str(a.stages), "holds": ok}, "true" if ok else "false"


def _check_program_bits(n):
    limit = guards().program_bits
    if n > limit:
        raise BoundTooLarge(f"{n} bits exceeds guard {limit} (set MM_GUARD)")


def cmd_omega_approx(a):
    _check_program_bits(a.N)
    r = omega.omega_approx(a.N, jobs=a.jobs)
    lines = [f"N={a.N} value={_frac(r.value)} halted={len(r.halted_programs)}"]
    lines += [f"{b or '-'} output={o} steps={s}" for b, o, s in r.halted_programs] if a.verbose else []
    return r.to_json(), "\n".join(lines)


def cmd_omega_exact(a):
    iv = omega.omega_exact(a.L, jobs=a.jobs)
    return iv.to_json(), f"L={a.L} lo={_frac(iv.lo)} hi={_frac(iv.hi)} width={_frac(iv.width)}"


def cmd_omega_bits(a):
    m, L = omega.certify_prefix(a.upto, jobs=a.jobs)
    bits = format(m, "b").zfill(a.upto) if a.upto else ""
    count = {str(n): str(omega.ord_kieu_count(n, jobs=a.jobs)) for n in range(a.upto + 1)}
    return {"bits": bits, "certified_at_L": str(L), "ord_kieu_counts": count}, f"0.{bits}"


def cmd_omega_kraft(a):
    _check_program_bits(a.N)
    k = omega.kraft_sum(a.N, jobs=a.jobs)
    return {"N": str(a.N), "kraft_sum": omega.DyadicRational.from_fraction(k).to_json()}, _frac(k)


def cmd_complexity_h(a):
    r = complexity.h_of(a.n, a.bound)
    text = "NONE" if r.h is None else f"H({a.n})={r.h} witness={r.witness.encoded}"
    return r.to_json(), text


def cmd_complexity_elegant(a):
    progs = complexity.elegant_programs(a.bound)
    rows = [(p, complexity.verdict(p).output) for p in progs]
    return (
        {"bound": str(a.bound), "elegant": [{"program": p.encoded, "output": str(o)} for p, o in rows]},
        "\n".join(f"{p.encoded} output={o} size={p.size}" for p, o in rows),
    )


def cmd_complexity_mutual(a):
    mi = complexity.mutual_information(a.x, a.y, a.bound, symmetric=a.symmetric)
    return {"x": str(a.x), "y": str(a.y), "mutual_information": str(mi)}, str(mi)


def cmd_dioph_lucas(a):
    word = "odd" if diophantine.lucas_parity(a.n, a.k) else "even"
    return {"n": str(a.n), "k": str(a.k), "parity": word}, word


def cmd_dioph_mj(a):
    w = diophantine.mj_witness(a.N, a.K)
    out = {"N": str(a.N), "K": str(a.K), "witness": None}
    text = "NONE"
    if w is not None:
        out["witness"] = {k: str(v) for k, v in w.unknowns().items()}
        text = " ".join(f"{k}={v}" for k, v in w.unknowns().items())
    if a.check_unique:
        ok = diophantine.mj_uniqueness_check(a.N, a.K)
        out["unique"] = ok
        text += f"\nunique={'true' if ok else 'false'}"
    return out, text


def cmd_dioph_combine(a):
    eq = diophantine.combine_equations(diophantine.parse_equations(_read_input(a.file)))
    return {"equation": str(eq)}, str(eq)


def _stream_json(s: constants.DigitStream) -> dict:
    return s.to_json()


def cmd_const_digits(a):
    s = constants.named_digits(a.name, a.base, a.count)
    return _stream_json(s), s.text()


def cmd_const_bc(a):
    s = constants.bailey_crandall_digits(a.b, a.c, a.count)
    return _stream_json(s), s.text()


def cmd_const_root(a):
    coeffs = [int(c) for c in a.poly.replace(",", " ").split()]
    s = constants.algebraic_digits(coeffs, Fraction(a.lo), Fraction(a.hi), a.base, a.count)
    return _stream_json(s), s.text()


def cmd_const_series(a):
    if a.kind == "geometric":
        r = Fraction(a.r)
        value = constants.geometric_partial(r, a.n) if a.n is not None else constants.geometric_limit(r)
    elif a.kind == "harmonic":
        value = constants.harmonic_partial(a.n)
    elif a.kind == "prime-recip":
        value = constants.prime_reciprocal_partial(a.n)
    elif a.kind == "leibniz":
        value = constants.leibniz_pi_partial(a.n)
    else:
        value = constants.euler_e_partial(a.n)
    return {"series": a.kind, "value": _frac(value)}, _frac(value)


def cmd_const_interp(a):
    pts = []
    for line in _read_input(a.file).splitlines():
        if line.strip() and not line.lstrip().startswith("#"):
            x, y = line.split()
            pts.append((Fraction(x), Fraction(y)))
    coeffs = constants.lagrange_interpolate(pts)
    return {"coefficients": [_frac(c) for c in coeffs]}, " ".join(_frac(c) for c in coeffs)


def cmd_const_primes(a):
    if a.kind == "gap":
        rows = constants.composite_gap(a.N)
        return (
            {"N": str(a.N), "gap": [{"value": str(v), "divisor": str(d)} for v, d in rows]},
            "\n".join(f"{v} {d}" for v, d in rows),
        )
    if a.kind == "euclid":
        p, ok = constants.euclid_bound_check(a.N)
        return {"N": str(a.N), "next_prime": str(p), "bound_holds": ok}, f"{p} {'true' if ok else 'false'}"
    v = constants.perfect_from_mersenne(a.N)
    return {"n": str(a.N), "perfect": None if v is None else str(v)}, "NONE" if v is None else str(v)


def _source_digits(source: str, base: int, count: int) -> str:
    if source in constants.NAMED_BRACKETS:
        return constants.named_digits(source, base, count).digits
    text = "".join(Path(source).read_text().split())
    if len(text) < count:
        raise ParameterOutOfRange(f"{source} holds {len(text)} digits, {count} requested")
    return text[:count]


def cmd_normal_blocks(a):
    digits = "".join(_read_input(a.digits).split()) if a.digits == "-" or Path(a.digits).is_file() else a.digits
    st = normality.block_frequencies(digits, a.base, a.k)
    d = st.max_deviation
    lines = [f"{b} {c}" for b, c in st.counts.items()] + [f"max_deviation={_frac(d)}"]
    return st.to_json(), "\n".join(lines)


def cmd_normal_test(a):
    digits = _source_digits(a.source, a.base, a.count)
    verdict = normality.simple_normal_test(digits, a.base, a.threshold, a.k)
    out = {
        "source": a.source,
        "count": str(len(digits)),
        "k": str(a.k),
        "passed": verdict.passed,
        "max_deviation": _frac(verdict.statistic),
        "threshold": str(a.threshold),
    }
    text = str(verdict)
    if a.emit_plot_data:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "block", "frequency"])
        w.writerows(normality.plot_rows(normality.normality_profile(digits, a.base, a.k)))
        text += "\n" + buf.getvalue().rstrip("\n")
        out["plot_data"] = buf.getvalue()
    return out, text


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    # SUPPRESS so a subcommand's default never overwrites a flag given earlier
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit a JSON object")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes for enumerations")

    p = _Parser(prog="mm", description="Algorithmic information theory workbench", parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def group(name, help_):
        g = sub.add_parser(name, help=help_, parents=[common])
        return g.add_subparsers(dest="action", required=True, parser_class=_Parser)

    def cmd(g, name, fn, help_):
        c = g.add_parser(name, help=help_, parents=[common])
        c.set_defaults(fn=fn)
        return c

    g = group("lisp", "evaluate the LISP dialect")
    c = cmd(g, "eval", cmd_lisp_eval, "evaluate one expression from a file or stdin ('-')")
    c.add_argument("source")
    c.add_argument("--budget", type=int, default=lisp.DEFAULT_BUDGET)
    c = cmd(g, "parse", cmd_lisp_parse, "read one expression and print it canonically")
    c.add_argument("source")
    c = cmd(g, "repl", cmd_lisp_repl, "one expression per line from stdin")
    c.add_argument("--persist", action="store_true", help="keep (let x y) bindings across lines")
    c.add_argument("--budget", type=int, default=lisp.DEFAULT_BUDGET)

    g = group("codec", "self-delimiting codes")
    for name, fn in (("encode", cmd_codec_encode), ("decode", cmd_codec_decode)):
        c = cmd(g, name, fn, f"{name} ASCII 0/1 strings")
        c.add_argument("bits", nargs="?", help="bit string (default: stdin)")
        c.add_argument("--scheme", choices=[s.value for s in codec.Scheme], required=True)
        if name == "decode":
            c.add_argument("--once", action="store_true", help="decode one codeword, print payload and remainder")

    c = cmd(g, "number", cmd_codec_number, "natural number to binary, or text to and from numbers")
    c.add_argument("value")
    mode = c.add_mutually_exclusive_group()
    mode.add_argument("--from-text", action="store_true", help="ASCII text to its number")
    mode.add_argument("--to-text", action="store_true", help="number back to ASCII text")

    g = group("machine", "the toy prefix-free machine")
    c = cmd(g, "run", cmd_machine_run, "simulate with a step budget")
    c.add_argument("bits")
    c.add_argument("--budget", type=int, default=10_000)
    c = cmd(g, "decide", cmd_machine_decide, "exact halting decision")
    c.add_argument("bits")

    g = group("omega", "halting probability of the toy machine")
    c = cmd(g, "approx", cmd_omega_approx, "N-th approximation from below")
    c.add_argument("N", type=int)
    c.add_argument("--verbose", action="store_true", help="list halted programs")
    c = cmd(g, "exact", cmd_omega_exact, "certified interval from bodies up to length L")
    c.add_argument("L", type=int)
    c = cmd(g, "bits", cmd_omega_bits, "certified leading bits")
    c.add_argument("--upto", type=int, required=True)
    c = cmd(g, "kraft", cmd_omega_kraft, "Kraft sum of discovered halting programs")
    c.add_argument("N", type=int)

    c = cmd(g, "predicate", cmd_omega_predicate, "the bit predicates behind the Omega diophantine boxes")
    c.add_argument("kind", choices=["chaitin", "ord-kieu"])
    c.add_argument("n", type=int)
    c.add_argument("k", type=int)
    c.add_argument("--stages", type=int, default=16, help="ord-kieu: approximation stage")

    g = group("complexity", "program-size complexity")
    c = cmd(g, "h", cmd_complexity_h, "H(n) by exhaustive search")
    c.add_argument("n", type=int)
    c.add_argument("--bound", type=int, default=16)
    c = cmd(g, "elegant", cmd_complexity_elegant, "elegant programs up to a size bound")
    c.add_argument("--bound", type=int, default=16)
    c = cmd(g, "mutual", cmd_complexity_mutual, "H(x) + H(y) - H(x, y)")
    c.add_argument("x", type=int)
    c.add_argument("y", type=int)
    c.add_argument("--bound", type=int, default=24)
    c.add_argument("--symmetric", action="store_true", help="pair the unordered {x, y}")

    g = group("dioph", "binomial parity and diophantine gadgets")
    c = cmd(g, "lucas", cmd_dioph_lucas, "parity of C(n, k)")
    c.add_argument("n", type=int)
    c.add_argument("k", type=int)
    c = cmd(g, "mj", cmd_dioph_mj, "seven-unknown witness for C(N, K) odd")
    c.add_argument("N", type=int)
    c.add_argument("K", type=int)
    c.add_argument("--check-unique", action="store_true")
    c = cmd(g, "combine", cmd_dioph_combine, "combine 'L = R' lines into one equation")
    c.add_argument("file")

    g = group("const", "certified constants and number theory")
    c = cmd(g, "digits", cmd_const_digits, "certified digits of a named constant")
    c.add_argument("name", choices=sorted(constants.NAMED_BRACKETS))
    c.add_argument("--base", type=int, default=10)
    c.add_argument("--count", type=int, default=30)
    c = cmd(g, "bc", cmd_const_bc, "Bailey-Crandall number sum 1/(c^k b^(c^k))")
    c.add_argument("--b", type=int, required=True)
    c.add_argument("--c", type=int, required=True)
    c.add_argument("--count", type=int, default=64)
    c = cmd(g, "root", cmd_const_root, "bisection digits of a polynomial root")
    c.add_argument("--poly", required=True, help="integer coefficients, constant term first")
    c.add_argument("--lo", required=True)
    c.add_argument("--hi", required=True)
    c.add_argument("--base", type=int, default=10)
    c.add_argument("--count", type=int, default=30)
    c = cmd(g, "series", cmd_const_series, "exact partial sums")
    c.add_argument("kind", choices=["geometric", "harmonic", "prime-recip", "leibniz", "e"])
    c.add_argument("--r", default="1/2", help="ratio for the geometric series")
    c.add_argument("--n", type=int, help="number of terms (geometric: omit for the limit)")
    c = cmd(g, "interp", cmd_const_interp, "Lagrange interpolation through 'x y' lines")
    c.add_argument("file")
    c = cmd(g, "primes", cmd_const_primes, "composite gaps, Euclid's bound, perfect numbers")
    c.add_argument("kind", choices=["gap", "euclid", "perfect"])
    c.add_argument("N", type=int)

    g = group("normal", "block-frequency normality statistics")
    c = cmd(g, "blocks", cmd_normal_blocks, "overlapping block counts of a digit string")
    c.add_argument("digits", help="digits, a file of digits, or '-' for stdin")
    c.add_argument("--base", type=int, default=2)
    c.add_argument("--k", type=int, default=1)
    c = cmd(g, "test", cmd_normal_test, "threshold test on a digit prefix")
    c.add_argument("--source", required=True, help=f"one of {sorted(constants.NAMED_BRACKETS)} or a file of digits")
    c.add_argument("--base", type=int, default=2)
    c.add_argument("--k", type=int, default=1)
    c.add_argument("--count", type=int, default=1 << 14)
    c.add_argument("--threshold", type=float, default=0.02)
    c.add_argument("--emit-plot-data", action="store_true", help="append CSV rows k,block,frequency")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.json = getattr(args, "json", False)
        args.jobs = getattr(args, "jobs", 1)
        if getattr(args, "kind", None) in ("harmonic", "prime-recip", "leibniz", "e") and args.n is None:
            raise UsageError(f"mm const series {args.kind}: --n is required")
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return 0 if exc.code in (0, None) else 1
    try:
        payload, text = args.fn(args)
    except (MMError, ValueError, ZeroDivisionError, OSError) as exc:
        name = exc.code if isinstance(exc, MMError) else type(exc).__name__
        if args.json:
            print(json.dumps({"error": name, "message": str(exc)}), file=sys.stderr)
        else:
            print(f"error: {name}: {exc}", file=sys.stderr)
        return 2
    if payload is None:
        return 0
    if args.json:
        print(json.dumps(payload, indent=None, separators=(", ", ": ")))
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
