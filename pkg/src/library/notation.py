"""Compact structural notation, e.g. "(0,0,21)" or "(0,λ21+31,−21+λ31,2λ.41+32)".

Entry k lists d e_k; the term "21" stands for e2∧e1. A trailing "xR" takes
the product with a line, appended as the last basis element.
"""

from __future__ import annotations

import json
from typing import Optional

import sympy

from .exceptions import NotationSyntaxError, UnprintableCoefficientError
from .exterior import Form
from .lie_structure import LieAlgebra, product_with_line
from .scalars import ScalarPoly, normalize, symbol

_MINUS = ("-", "−")
_PRODUCT_SUFFIX = "xR"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, reason: str, position: Optional[int] = None) -> NotationSyntaxError:
        return NotationSyntaxError(self.text, self.pos if position is None else position, reason)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_spaces(self) -> None:
        while self.peek() == " ":
            self.pos += 1

    def expect(self, char: str) -> None:
        if self.peek() != char:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise self.error(f"expected '{char}', found {found}")
        self.pos += 1

    def digits(self) -> str:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        return self.text[start:self.pos]

    def letters(self) -> str:
        start = self.pos
        while self.peek().isalpha():
            self.pos += 1
        return self.text[start:self.pos]

    def algebra(self) -> list[list[tuple[ScalarPoly, int, int, int]]]:
        self.skip_spaces()
        self.expect("(")
        entries = [self.entry()]
        while self.peek() == ",":
            self.pos += 1
            entries.append(self.entry())
        self.expect(")")
        return entries

    def entry(self) -> list[tuple[ScalarPoly, int, int, int]]:
        self.skip_spaces()
        if self.peek() == "0" and self.text[self.pos + 1:self.pos + 2] in (",", ")", " "):
            self.pos += 1
            self.skip_spaces()
            return []
        terms = []
        sign = 1
        if self.peek() in _MINUS:
            sign = -1
            self.pos += 1
        elif self.peek() == "+":
            raise self.error("entry cannot start with '+'")
        terms.append(self.term(sign))
        self.skip_spaces()
        while self.peek() in ("+", *_MINUS) and self.peek():
            sign = 1 if self.peek() == "+" else -1
            self.pos += 1
            self.skip_spaces()
            terms.append(self.term(sign))
            self.skip_spaces()
        return terms

    def index_pair(self, run: str, start: int) -> tuple[int, int]:
        if len(run) != 2:
            raise self.error("an index pair has exactly two digits", start)
        i, j = int(run[0]), int(run[1])
        if i == 0 or j == 0:
            raise self.error("indices start at 1", start)
        if i == j:
            raise self.error(f"repeated index in '{run}'", start)
        return i, j

    def pair_after_separator(self) -> tuple[int, int, int]:
        if self.peek() == ".":
            self.pos += 1
        start = self.pos
        run = self.digits()
        if not run:
            raise self.error("expected an index pair")
        i, j = self.index_pair(run, start)
        return i, j, start

    def denominator(self) -> int:
        start = self.pos
        run = self.digits()
        if not run or int(run) == 0:
            raise self.error("expected a nonzero integer denominator", start)
        if self.peek() not in (".",) and not self.peek().isalpha():
            raise self.error("a fraction must be followed by '.' before the index pair")
        return int(run)

    def term(self, sign: int) -> tuple[ScalarPoly, int, int, int]:
        start = self.pos
        coefficient: ScalarPoly = sympy.Integer(sign)
        char = self.peek()
        if char.isdigit():
            run = self.digits()
            if self.peek() == "/":
                self.pos += 1
                coefficient *= sympy.Rational(int(run), self.denominator())
                if self.peek().isalpha():
                    coefficient *= symbol(self.letters())
                i, j, pos = self.pair_after_separator()
                return coefficient, i, j, pos
            if self.peek() == "." or self.peek().isalpha():
                coefficient *= int(run)
                if self.peek().isalpha():
                    coefficient *= symbol(self.letters())
                i, j, pos = self.pair_after_separator()
                return coefficient, i, j, pos
            if len(run) < 2:
                raise self.error("expected an index pair", start)
            if len(run) > 2:
                coefficient *= int(run[:-2])
            i, j = self.index_pair(run[-2:], self.pos - 2)
            return coefficient, i, j, self.pos - 2
        if char.isalpha():
            coefficient *= symbol(self.letters())
            if self.peek() == "/":
                self.pos += 1
                coefficient /= self.denominator()
            i, j, pos = self.pair_after_separator()
            return coefficient, i, j, pos
        found = repr(char) if char else "end of input"
        raise self.error(f"expected a term, found {found}")


def parse(text: str, name: str = "") -> LieAlgebra:
    """Parses compact notation into a LieAlgebra.

    Raises:
        NotationSyntaxError: malformed text, with the offending position.
    """
    body = text.strip()
    product = body.endswith(_PRODUCT_SUFFIX)
    if product:
        body = body[: -len(_PRODUCT_SUFFIX)].rstrip()
    parser = _Parser(body)
    entries = parser.algebra()
    parser.skip_spaces()
    if parser.pos != len(body):
        raise parser.error("unexpected trailing text")

    n = len(entries)
    coeffs: list[dict[tuple[int, int], ScalarPoly]] = [{} for _ in range(n)]
    for k, terms in enumerate(entries):
        for coefficient, i, j, position in terms:
            if i > n or j > n:
                raise NotationSyntaxError(body, position, f"index out of range for dimension {n}")
            # "ij" is e_i ∧ e_j
            key, value = ((i, j), coefficient) if i < j else ((j, i), -coefficient)
            coeffs[k][key] = coeffs[k].get(key, 0) + value
    alg = LieAlgebra([Form(n, 2, c) for c in coeffs], name=name or text.strip())
    if product:
        alg = product_with_line(alg, name=name or text.strip())
    return alg


def load_algebra(text: str, name: str = "") -> LieAlgebra:
    """Accepts compact notation or the algebra JSON document."""
    if text.lstrip().startswith("{"):
        alg = LieAlgebra.from_json(json.loads(text))
        return alg.with_name(name) if name else alg
    return parse(text, name=name)


def _letters_only(s: sympy.Symbol) -> bool:
    return str(s).isalpha()


def _format_coefficient(value: ScalarPoly) -> tuple[int, str]:
    """Sign and body of a printable coefficient; body "" stands for 1."""
    value = normalize(value)
    if value.is_Rational:
        sign = -1 if value < 0 else 1
        magnitude = abs(value)
        return sign, "" if magnitude == 1 else str(magnitude)
    coeff, rest = value.as_coeff_Mul()
    num, den = sympy.fraction(coeff)
    if isinstance(rest, sympy.Symbol) and _letters_only(rest):
        sign = -1 if coeff < 0 else 1
        num = abs(num)
        if den == 1:
            return sign, ("" if num == 1 else str(num)) + str(rest)
        if num == 1:
            return sign, f"{rest}/{den}"
        return sign, f"{num}/{den}{rest}"
    raise UnprintableCoefficientError(value)


def to_notation(alg: LieAlgebra) -> str:
    """Prints an algebra in compact notation; parse(to_notation(a)) == a."""
    entries = []
    for form in alg.d_basis:
        if form.is_zero():
            entries.append("0")
            continue
        out = ""
        for (i, j), c in sorted(form, key=lambda item: (item[0][0], item[0][1])):
            sign, body = _format_coefficient(-c)
            if body and body[-1].isdigit():
                body += "."
            if out:
                out += "+" if sign > 0 else "-"
            elif sign < 0:
                out += "-"
            out += f"{body}{j}{i}"
        entries.append(out)
    return "(" + ",".join(entries) + ")"
