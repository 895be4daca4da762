"""A tiny term language for polytopes.

    simplex:d | cross:d | cube:d | hypersimplex:d,k
    pyr(E) | bipyr(E) | prod(E, E, ...)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce

from .face_lattice import (
    Polytope,
    bipyramid,
    make_cross,
    make_cube,
    make_hypersimplex,
    make_simplex,
    product,
    pyramid,
)


class ExprError(ValueError):
    pass


ATOMS = {"simplex": 1, "cross": 1, "cube": 1, "hypersimplex": 2}
COMBINATORS = {"pyr": 1, "bipyr": 1, "prod": None}

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[a-z]+)|(?P<punct>[:,()]))")


@dataclass(frozen=True)
class PolytopeExpr:
    op: str
    args: tuple  # ints for atoms, PolytopeExpr for combinators

    def __str__(self) -> str:
        if self.op in ATOMS:
            return f"{self.op}:{','.join(map(str, self.args))}"
        return f"{self.op}({','.join(map(str, self.args))})"

    def evaluate(self) -> Polytope:
        try:
            if self.op == "simplex":
                return make_simplex(*self.args)
            if self.op == "cross":
                return make_cross(*self.args)
            if self.op == "cube":
                return make_cube(*self.args)
            if self.op == "hypersimplex":
                return make_hypersimplex(*self.args)
        except ValueError as exc:
            raise ExprError(str(exc)) from None
        parts = [a.evaluate() for a in self.args]
        if self.op == "pyr":
            return pyramid(parts[0])
        if self.op == "bipyr":
            return bipyramid(parts[0])
        return reduce(product, parts)


def _tokens(text: str) -> list[str]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExprError(f"unexpected character {text[pos]!r} at position {pos}")
        out.append(m.group(m.lastgroup))
        pos = m.end()
    return out


def parse(text: str) -> PolytopeExpr:
    toks = _tokens(text)
    pos = 0

    def peek() -> str | None:
        return toks[pos] if pos < len(toks) else None

    def take(expected: str | None = None) -> str:
        nonlocal pos
        tok = peek()
        if tok is None:
            raise ExprError(f"unexpected end of expression {text!r}")
        if expected is not None and tok != expected:
            raise ExprError(f"expected {expected!r} but found {tok!r} in {text!r}")
        pos += 1
        return tok

    def integer() -> int:
        tok = take()
        if not tok.isdigit():
            raise ExprError(f"expected an integer but found {tok!r}")
        return int(tok)

    def expr() -> PolytopeExpr:
        name = take()
        if name in ATOMS:
            take(":")
            args = [integer()]
            for _ in range(ATOMS[name] - 1):
                take(",")
                args.append(integer())
            return PolytopeExpr(name, tuple(args))
        if name in COMBINATORS:
            take("(")
            args = [expr()]
            while peek() == ",":
                take(",")
                args.append(expr())
            take(")")
            arity = COMBINATORS[name]
            if arity is not None and len(args) != arity:
                raise ExprError(f"{name} takes {arity} argument, got {len(args)}")
            return PolytopeExpr(name, tuple(args))
        raise ExprError(f"unknown polytope or combinator {name!r}")

    result = expr()
    if pos != len(toks):
        raise ExprError(f"trailing input {' '.join(toks[pos:])!r} in {text!r}")
    return result


def build(text: str) -> Polytope:
    return parse(text).evaluate()
