"""Command-line front end: expression parsing, field and couple queries,
lambda terms, couple classification, set-property queries, extension
chains, and the verification suites, all reporting JSON.

Exit codes: 0 success, 1 failing suite or internal delegate error,
2 usage, syntax, or semantic input error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from . import extend, pcseq, setprops
from .acouple import (
    Report,
    classify_couple,
    closure_count,
    conformance_grid,
    identity_suite,
    psi,
    verify_couple_axioms,
)
from .logts import Frac, Monomial, Series, check_axioms, dominance, ell
from .ogroup import GroupElem, vector_json

DEFAULT_SEED = 17


class ExprSyntaxError(ValueError):
    """Malformed expression text; carries the offset of the problem."""

    def __init__(self, message: str, pos: int) -> None:
        super().__init__(f"{message} at offset {pos}")
        self.pos = pos


class ExprSemanticError(ValueError):
    """Well-formed text denoting nothing in the field."""


# ---------------------------------------------------------------------------
# Expression AST.

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Gen:
    index: int


@dataclass(frozen=True)
class Neg:
    a: "Ast"


@dataclass(frozen=True)
class Add:
    a: "Ast"
    b: "Ast"


@dataclass(frozen=True)
class Sub:
    a: "Ast"
    b: "Ast"


@dataclass(frozen=True)
class Mul:
    a: "Ast"
    b: "Ast"


@dataclass(frozen=True)
class Div:
    a: "Ast"
    b: "Ast"


@dataclass(frozen=True)
class Pow:
    base: "Ast"
    exp: Fraction


@dataclass(frozen=True)
class Der:
    a: "Ast"


Ast = Union[Num, Gen, Neg, Add, Sub, Mul, Div, Pow, Der]


# ---------------------------------------------------------------------------
# Tokenizer and recursive-descent parser.

@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    out: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(_Token("num", text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum()):
                j += 1
            out.append(_Token("name", text[i:j], i))
            i = j
            continue
        if ch in "+-*/^()":
            out.append(_Token(ch, ch, i))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    out.append(_Token("end", "", n))
    return out


class _Parser:
    def __init__(self, text: str) -> None:
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self, kind: str) -> _Token:
        tok = self.tokens[self.i]
        if tok.kind != kind:
            want = "end of input" if kind == "end" else repr(kind)
            raise ExprSyntaxError(f"expected {want}", tok.pos)
        self.i += 1
        return tok

    def parse(self) -> Ast:
        node = self.expr()
        self.take("end")
        return node

    def expr(self) -> Ast:
        if self.peek().kind == "-":
            self.take("-")
            node: Ast = Neg(self.term())
        else:
            node = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take(self.peek().kind)
            rhs = self.term()
            node = Add(node, rhs) if op.kind == "+" else Sub(node, rhs)
        return node

    def term(self) -> Ast:
        node = self.factor()
        while self.peek().kind in ("*", "/"):
            op = self.take(self.peek().kind)
            rhs = self.factor()
            node = Mul(node, rhs) if op.kind == "*" else Div(node, rhs)
        return node

    def factor(self) -> Ast:
        node = self.base()
        if self.peek().kind == "^":
            self.take("^")
            node = Pow(node, self.exponent())
        return node

    def exponent(self) -> Fraction:
        # A bare exponent is a possibly signed integer; anything with a
        # denominator needs parentheses, else it would swallow a division.
        if self.peek().kind == "(":
            self.take("(")
            value = self.signed_rational()
            self.take(")")
            return value
        sign = 1
        if self.peek().kind == "-":
            self.take("-")
            sign = -1
        return Fraction(sign * int(self.take("num").text))

    def signed_rational(self) -> Fraction:
        sign = 1
        if self.peek().kind == "-":
            self.take("-")
            sign = -1
        num = int(self.take("num").text)
        if self.peek().kind == "/":
            self.take("/")
            den_tok = self.take("num")
            den = int(den_tok.text)
            if den == 0:
                raise ExprSyntaxError("zero denominator in exponent", den_tok.pos)
            return Fraction(sign * num, den)
        return Fraction(sign * num)

    def base(self) -> Ast:
        tok = self.peek()
        if tok.kind == "num":
            self.take("num")
            return Num(Fraction(int(tok.text)))
        if tok.kind == "name":
            self.take("name")
            if tok.text == "x":
                return Gen(0)
            if tok.text == "D":
                self.take("(")
                inner = self.expr()
                self.take(")")
                return Der(inner)
            if tok.text.startswith("l") and tok.text[1:].isdigit():
                index = int(tok.text[1:])
                if index < 1:
                    raise ExprSyntaxError("generator indices start at l1", tok.pos)
                return Gen(index)
            raise ExprSyntaxError(f"unknown name {tok.text!r}", tok.pos)
        if tok.kind == "(":
            self.take("(")
            inner = self.expr()
            self.take(")")
            return inner
        raise ExprSyntaxError("expected a value", tok.pos)


def parse(text: str) -> Ast:
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Printing and evaluation.

_PREC = {Add: 1, Sub: 1, Neg: 1, Mul: 2, Div: 2, Pow: 3, Num: 4, Gen: 4, Der: 4}


def print_ast(node: Ast) -> str:
    return _print(node, 0)


def _print(node: Ast, parent_prec: int) -> str:
    prec = _PREC[type(node)]
    if isinstance(node, Num):
        text = str(node.value)
    elif isinstance(node, Gen):
        text = "x" if node.index == 0 else f"l{node.index}"
    elif isinstance(node, Der):
        text = f"D({_print(node.a, 0)})"
    elif isinstance(node, Neg):
        text = f"-{_print(node.a, 2)}"
    elif isinstance(node, Pow):
        exp = node.exp
        etext = f"^{exp}" if exp.denominator == 1 and exp >= 0 else f"^({exp})"
        text = f"{_print(node.base, 4)}{etext}"
    elif isinstance(node, (Add, Sub)):
        op = "+" if isinstance(node, Add) else "-"
        text = f"{_print(node.a, 1)} {op} {_print(node.b, 2)}"
    else:
        op = "*" if isinstance(node, Mul) else "/"
        text = f"{_print(node.a, 2)}{op}{_print(node.b, 3)}"
    return f"({text})" if prec < parent_prec else text


def evaluate(node: Ast) -> Frac:
    if isinstance(node, Num):
        return Frac.from_rat(node.value)
    if isinstance(node, Gen):
        return ell(node.index)
    if isinstance(node, Neg):
        return -evaluate(node.a)
    if isinstance(node, Add):
        return evaluate(node.a) + evaluate(node.b)
    if isinstance(node, Sub):
        return evaluate(node.a) - evaluate(node.b)
    if isinstance(node, Mul):
        return evaluate(node.a) * evaluate(node.b)
    if isinstance(node, Div):
        den = evaluate(node.b)
        if den.is_zero():
            raise ExprSemanticError("division by zero")
        return evaluate(node.a) / den
    if isinstance(node, Der):
        return evaluate(node.a).derivative()
    if isinstance(node, Pow):
        base = evaluate(node.base)
        if node.exp.denominator == 1:
            return base ** int(node.exp)
        mono = _as_pure_monomial(base)
        if mono is None:
            raise ExprSemanticError(
                "rational exponents need a coefficient-one monomial base")
        return Frac(Series.monomial(Monomial(mono.exponents.scale(node.exp))))
    raise TypeError(f"unknown node {node!r}")


def _as_pure_monomial(f: Frac) -> Optional[Monomial]:
    if f.den != Series.ONE or len(f.num) != 1:
        return None
    mono, coeff = f.num.leading()
    return mono if coeff == 1 else None


def random_expression(rng: random.Random, depth: int = 3) -> Ast:
    """Corpus generator for round-trip checks; stays inside the printable
    fragment (integer literals, negation only at expression heads)."""
    if depth <= 0 or rng.random() < 0.3:
        pick = rng.random()
        if pick < 0.3:
            return Num(Fraction(rng.randint(0, 9)))
        if pick < 0.8:
            return Gen(rng.randint(0, 4))
        base = Gen(rng.randint(0, 3))
        exp = rng.choice([Fraction(2), Fraction(-1), Fraction(-2), Fraction(1, 2),
                          Fraction(-3, 2), Fraction(5)])
        return Pow(base, exp)
    kind = rng.randint(0, 5)
    a = random_expression(rng, depth - 1)
    b = random_expression(rng, depth - 1)
    if kind == 0:
        return Add(a, b)
    if kind == 1:
        return Sub(a, b)
    if kind == 2:
        return Mul(a, b)
    if kind == 3:
        return Div(a, b)
    if kind == 4:
        return Der(a)
    return Neg(a) if rng.random() < 0.5 else Mul(a, b)


# ---------------------------------------------------------------------------
# Set-descriptor s-expressions.

def parse_descriptor(text: str) -> setprops.SetDescriptor:
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    node, rest = _sexpr(tokens)
    if rest:
        raise ExprSemanticError(f"trailing descriptor tokens: {' '.join(rest)}")
    return node


def _sexpr(tokens: list[str]) -> tuple[setprops.SetDescriptor, list[str]]:
    if not tokens:
        raise ExprSemanticError("empty descriptor")
    head, rest = tokens[0], tokens[1:]
    if head == "psidown":
        return setprops.PSI_DOWN, rest
    if head != "(":
        raise ExprSemanticError(f"unexpected descriptor token {head!r}")
    if not rest:
        raise ExprSemanticError("unclosed descriptor")
    op, rest = rest[0], rest[1:]
    if op in ("less", "leq"):
        vec, rest = _sexpr_vector(rest)
        rest = _expect_close(rest)
        return (setprops.LessThan(vec) if op == "less" else setprops.LessEq(vec)), rest
    if op == "affine":
        vec, rest = _sexpr_vector(rest)
        if not rest or not rest[0].lstrip("-").isdigit():
            raise ExprSemanticError("affine descriptor needs an integer scale")
        n = int(rest[0])
        inner, rest = _sexpr(rest[1:])
        return setprops.Affine(vec, n, inner), _expect_close(rest)
    if op in ("down", "int"):
        inner, rest = _sexpr(rest)
        rest = _expect_close(rest)
        return (setprops.DownClosure(inner) if op == "down" else setprops.IntImage(inner)), rest
    if op == "exts":
        if not rest or rest[0] not in extend.KINDS:
            raise ExprSemanticError(
                f"exts descriptor needs one of {', '.join(extend.KINDS)}")
        sc = extend.example(rest[0])
        return extend.s_descriptor(sc), _expect_close(rest[1:])
    raise ExprSemanticError(f"unknown descriptor operator {op!r}")


def _expect_close(tokens: list[str]) -> list[str]:
    if not tokens or tokens[0] != ")":
        raise ExprSemanticError("expected ')' in descriptor")
    return tokens[1:]


def _sexpr_vector(tokens: list[str]) -> tuple[GroupElem, list[str]]:
    text = " ".join(tokens)
    if not text.startswith("["):
        raise ExprSemanticError("expected a bracketed vector")
    end = text.index("]")
    vec = GroupElem.parse(text[:end + 1])
    rest = text[end + 1:].split()
    return vec, rest


def parse_vector(text: str) -> GroupElem:
    try:
        return GroupElem.parse(text)
    except ValueError as exc:
        raise ExprSemanticError(str(exc)) from None


# ---------------------------------------------------------------------------
# Suites registry.

def _suite_couple(cases: int, seed: int, length: int) -> Report:
    return verify_couple_axioms(cases, seed, "logfull")


def _suite_couple_gap(cases: int, seed: int, length: int) -> Report:
    return verify_couple_axioms(cases, seed, "loggap")


def _suite_identities(cases: int, seed: int, length: int) -> Report:
    return identity_suite(cases, seed)


def _suite_grid(cases: int, seed: int, length: int) -> Report:
    return conformance_grid()


def _suite_field(cases: int, seed: int, length: int) -> Report:
    return check_axioms(cases, seed)


def _suite_jammedness(cases: int, seed: int, length: int) -> Report:
    fails = setprops.DownClosure(setprops.IntImage(
        extend.s_descriptor(extend.smallint_example())))
    return setprops.jammedness_suite(seed=seed, fails_descriptor=fails)


def _suite_exclusion(cases: int, seed: int, length: int) -> Report:
    return setprops.exclusion_suite(_exclusion_descriptors(), cases, seed)


def _exclusion_descriptors() -> list[tuple[str, setprops.SetDescriptor]]:
    small = extend.s_descriptor(extend.smallint_example())
    big = extend.s_descriptor(extend.bigint_example())
    return [
        ("negative-cone", setprops.LessThan(GroupElem.ZERO)),
        ("principal", setprops.LessThan(GroupElem([(0, 1)]))),
        ("psi-down", setprops.PSI_DOWN),
        ("small-integrals", small),
        ("big-integrals", big),
        ("integrated-small", setprops.IntImage(small)),
        ("closed-small", setprops.DownClosure(setprops.IntImage(small))),
        ("capped", setprops.LessEq(GroupElem([(1, 1)]))),
    ]


def _suite_lambda(cases: int, seed: int, length: int) -> Report:
    return pcseq.lambda_suite(prefix_len=length, corpus_size=cases, seed=seed)


def _suite_kaplansky(cases: int, seed: int, length: int) -> Report:
    return pcseq.kaplansky_suite()


def _make_extend_suite(kind: str):
    def run(cases: int, seed: int, length: int) -> Report:
        return extend.verify_downward_no_max(extend.example(kind), cases, seed)
    return run


SUITES = {
    "couple": (_suite_couple, 10000),
    "couple-gap": (_suite_couple_gap, 10000),
    "identities": (_suite_identities, 10000),
    "grid": (_suite_grid, 0),
    "field": (_suite_field, 1000),
    "jammedness": (_suite_jammedness, 0),
    "exclusion": (_suite_exclusion, 1000),
    "lambda": (_suite_lambda, 1000),
    "kaplansky": (_suite_kaplansky, 0),
    "extend-smallint": (_make_extend_suite(extend.SMALL_INT), 50),
    "extend-smallexpint": (_make_extend_suite(extend.SMALL_EXP_INT), 50),
    "extend-bigint": (_make_extend_suite(extend.BIG_INT), 50),
}


# ---------------------------------------------------------------------------
# Commands.

def _emit(payload: dict, pretty: bool) -> None:
    if pretty:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(json.dumps(payload, sort_keys=True))


def _vjson(v) -> object:
    return vector_json(v) if isinstance(v, GroupElem) else "infinity"


def _cmd_val(args: argparse.Namespace) -> int:
    f = evaluate(parse(args.expr))
    _emit({"valuation": _vjson(f.valuation())}, args.pretty)
    return 0


def _cmd_psi(args: argparse.Namespace) -> int:
    f = evaluate(parse(args.expr))
    v = f.valuation()
    if not isinstance(v, GroupElem) or v.is_zero():
        raise ExprSemanticError("psi needs an element with nonzero finite valuation")
    _emit({"psi": vector_json(psi(v))}, args.pretty)
    return 0


def _cmd_cmp(args: argparse.Namespace) -> int:
    f = evaluate(parse(args.left))
    g = evaluate(parse(args.right))
    _emit({
        "left": _vjson(f.valuation()),
        "right": _vjson(g.valuation()),
        "dominance": dominance(f, g).value,
        "equal": f == g,
    }, args.pretty)
    return 0


def _cmd_lambda(args: argparse.Namespace) -> int:
    if args.n < 0:
        raise ExprSemanticError("lambda index must be nonnegative")
    _emit({"expr": str(pcseq.lambda_term(args.n))}, args.pretty)
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    try:
        result = classify_couple(args.couple, seed=args.seed)
    except ValueError as exc:
        raise ExprSemanticError(str(exc)) from None
    payload = result.to_dict()
    if args.lambda_free is not None:
        payload["closures"] = closure_count(result, args.lambda_free)
    _emit(payload, args.pretty)
    return 0


def _cmd_suite(args: argparse.Namespace) -> int:
    if args.name not in SUITES:
        raise ExprSemanticError(
            f"unknown suite {args.name!r}; choices: {', '.join(sorted(SUITES))}")
    run, default_cases = SUITES[args.name]
    cases = args.cases if args.cases is not None else default_cases
    report = run(cases, args.seed, args.len)
    _emit(report.to_dict(), args.pretty)
    return 0 if report.ok else 1


def _cmd_extend(args: argparse.Namespace) -> int:
    sc = extend.example(args.kind)
    if args.s is not None:
        given = evaluate(parse(args.s))
        if given != sc.s:
            raise ExprSemanticError(
                "custom scenario elements are not supported; the shipped "
                f"{args.kind} scenario uses s = {sc.s}")
    _emit(extend.chain_report(sc, args.iters), args.pretty)
    return 0


def _cmd_set(args: argparse.Namespace) -> int:
    desc = parse_descriptor(args.descriptor)
    query = args.query.strip()
    try:
        if query == "jammed":
            payload = setprops.is_jammed(desc).to_dict()
        elif query == "yardstick":
            payload = setprops.has_yardstick(desc).to_dict()
        elif query == "derived-yardstick":
            payload = setprops.has_derived_yardstick(desc).to_dict()
        elif query == "sup":
            sup = setprops.sup_in_divhull(desc)
            payload = {"sup": None if sup is None else vector_json(sup)}
        elif query == "half":
            payload = {"half": setprops.subset_half(desc)}
        elif query.startswith("member"):
            vec = parse_vector(query[len("member"):].strip())
            payload = {"member": setprops.member(desc, vec)}
        else:
            raise ExprSemanticError(
                f"unknown query {query!r}; choices: jammed, yardstick, "
                "derived-yardstick, sup, half, member [vector]")
    except setprops.UnsupportedDescriptor as exc:
        raise ExprSemanticError(str(exc)) from None
    _emit(payload, args.pretty)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aclab",
        description="Exact computations in the logarithmic asymptotic couple and field.")
    default_seed = int(os.environ.get("ACLAB_SEED", str(DEFAULT_SEED)))
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--pretty", action="store_true", help="indent the JSON output")
        p.add_argument("--json", action="store_true",
                       help="machine output (the default; accepted for symmetry)")
        p.add_argument("--seed", type=int, default=default_seed)

    p = sub.add_parser("val", help="valuation of an expression")
    p.add_argument("expr")
    common(p)
    p.set_defaults(fn=_cmd_val)

    p = sub.add_parser("psi", help="psi of the valuation of an expression")
    p.add_argument("expr")
    common(p)
    p.set_defaults(fn=_cmd_psi)

    p = sub.add_parser("cmp", help="compare two expressions")
    p.add_argument("left")
    p.add_argument("right")
    common(p)
    p.set_defaults(fn=_cmd_cmp)

    p = sub.add_parser("lambda", help="the n-th lambda term")
    p.add_argument("n", type=int)
    common(p)
    p.set_defaults(fn=_cmd_lambda)

    p = sub.add_parser("classify", help="trichotomy class of a couple")
    p.add_argument("couple", help="logfull, loggap, or trunc:N")
    p.add_argument("--lambda-free", choices=["yes", "no", "unknown"], default=None)
    common(p)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("suite", help="run a verification suite")
    p.add_argument("name")
    p.add_argument("--cases", type=int, default=None)
    p.add_argument("--len", type=int, default=12, help="prefix length where applicable")
    common(p)
    p.set_defaults(fn=_cmd_suite)

    p = sub.add_parser("extend", help="extension scenario operations")
    esub = p.add_subparsers(dest="extend_command", required=True)
    ps = esub.add_parser("step", help="iterate the yardstick step")
    ps.add_argument("--kind", choices=list(extend.KINDS), required=True)
    ps.add_argument("--s", default=None, help="scenario element (must match the shipped one)")
    ps.add_argument("--iters", type=int, default=1)
    common(ps)
    ps.set_defaults(fn=_cmd_extend)

    p = sub.add_parser("set", help="query a set descriptor")
    p.add_argument("descriptor", help="s-expression, e.g. (down (int (exts smallint)))")
    p.add_argument("query", help="jammed, yardstick, derived-yardstick, sup, half, member [v]")
    common(p)
    p.set_defaults(fn=_cmd_set)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ExprSyntaxError, ExprSemanticError) as exc:
        print(json.dumps({"error": str(exc)}, sort_keys=True))
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        print(json.dumps({"error": str(exc)}, sort_keys=True))
        return 2
    except ArithmeticError as exc:
        print(json.dumps({"error": str(exc)}, sort_keys=True))
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
