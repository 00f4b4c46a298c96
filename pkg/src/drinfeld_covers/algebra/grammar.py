"""Text grammar for field elements, polynomials and twisted polynomials.

Terms are ``c*X^k`` joined by ``+``.  Prime-field coefficients are integers
0..p-1; extension-field coefficients are polynomials in the generator symbol
(``w`` for the first level above F_p, ``w2`` for the second, ...), wrapped in
parentheses when they have more than one term.  Whitespace is ignored.
Canonical output lists powers in descending order, omits zero terms, and
omits a coefficient equal to 1.

The parser is slightly more permissive than the output: it accepts ``-``,
arbitrary nesting of parentheses and any product of factors.
"""

from __future__ import annotations

import re

from drinfeld_covers.algebra.field import FiniteField

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|(.))")


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    for num, ident, op in _TOKEN.findall(text):
        if num:
            out.append(("num", num))
        elif ident:
            out.append(("id", ident))
        elif op.strip():
            if op not in "+-*^()":
                raise ParseError(f"unexpected character {op!r} in {text!r}")
            out.append(("op", op))
    return out


class _Algebra:
    """Callbacks used by the expression evaluator."""

    def zero(self):
        raise NotImplementedError

    def from_int(self, n):
        raise NotImplementedError

    def symbol(self, name):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def power(self, a, k):
        result = self.from_int(1)
        for _ in range(k):
            result = self.mul(result, a)
        return result


def evaluate(text: str, alg: _Algebra):
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty expression")
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def unexpected(val):
        what = "end of input" if val is None else repr(val)
        return ParseError(f"unexpected {what} in {text!r}")

    def take(kind=None, val=None):
        nonlocal pos
        tok = peek()
        if tok[0] is None or (kind and tok[0] != kind) or (val and tok[1] != val):
            raise unexpected(tok[1])
        pos += 1
        return tok

    def expr():
        neg = False
        if peek() == ("op", "-"):
            take()
            neg = True
        acc = term()
        if neg:
            acc = alg.neg(acc)
        while peek()[1] in ("+", "-") and peek()[0] == "op":
            op = take()[1]
            t = term()
            acc = alg.add(acc, t if op == "+" else alg.neg(t))
        return acc

    def term():
        acc = factor()
        while peek() == ("op", "*"):
            take()
            acc = alg.mul(acc, factor())
        return acc

    def factor():
        base = atom()
        if peek() == ("op", "^"):
            take()
            k = int(take("num")[1])
            base = alg.power(base, k)
        return base

    def atom():
        kind, val = peek()
        if kind == "num":
            take()
            return alg.from_int(int(val))
        if kind == "id":
            take()
            return alg.symbol(val)
        if (kind, val) == ("op", "("):
            take()
            v = expr()
            take("op", ")")
            return v
        raise unexpected(val)

    value = expr()
    if pos != len(toks):
        raise ParseError(f"trailing input {toks[pos][1]!r} in {text!r}")
    return value


class FieldAlgebra(_Algebra):
    def __init__(self, field: FiniteField):
        self.field = field
        self.symbols = {f.symbol: f.generator for f in field.levels()[1:]}

    def zero(self):
        return 0

    def from_int(self, n):
        return self.field.scale_int(1, n)

    def symbol(self, name):
        if name not in self.symbols:
            raise ParseError(f"unknown symbol {name!r} for {self.field!r}")
        return self.symbols[name]

    def add(self, a, b):
        return self.field.add(a, b)

    def neg(self, a):
        return self.field.neg(a)

    def mul(self, a, b):
        return self.field.mul(a, b)

    def power(self, a, k):
        return self.field.pow(a, k)


class PolyAlgebra(_Algebra):
    def __init__(self, field: FiniteField, var: str):
        from drinfeld_covers.algebra.poly import Poly

        self.Poly = Poly
        self.field = field
        self.var = var
        self.coeff = FieldAlgebra(field)

    def zero(self):
        return self.Poly(self.field)

    def from_int(self, n):
        return self.Poly.const(self.field, self.coeff.from_int(n))

    def symbol(self, name):
        if name == self.var:
            return self.Poly.x(self.field)
        return self.Poly.const(self.field, self.coeff.symbol(name))

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def power(self, a, k):
        return a**k


def parse_element(field: FiniteField, text: str) -> int:
    return evaluate(text, FieldAlgebra(field))


def parse_poly(field: FiniteField, text: str, var: str = "T"):
    return evaluate(text, PolyAlgebra(field, var))


def _term(coef: str, var: str, k: int) -> str:
    if k == 0:
        return coef
    mono = var if k == 1 else f"{var}^{k}"
    if coef == "1":
        return mono
    if "+" in coef:
        coef = f"({coef})"
    return f"{coef}*{mono}"


def format_poly_coeffs(field: FiniteField, coeffs, var: str) -> str:
    terms = [_term(format_element(field, c), var, k) for k, c in enumerate(coeffs) if c]
    return "+".join(reversed(terms)) if terms else "0"


def format_element(field: FiniteField, x: int) -> str:
    if field.parent is None:
        return str(x)
    if field.degree == 1:
        return format_element(field.parent, x)
    return format_poly_coeffs(field.parent, field.digits(x), field.symbol)


def format_matrix(ring, m) -> str:
    return "[[" + ",".join(ring.format(x) for x in m[:2]) + "],[" + ",".join(ring.format(x) for x in m[2:]) + "]]"


def parse_matrix(ring, text: str) -> tuple[int, int, int, int]:
    s = "".join(text.split())
    m = re.fullmatch(r"\[\[([^\[\],]+),([^\[\],]+)\],\[([^\[\],]+),([^\[\],]+)\]\]", s)
    if not m:
        raise ParseError(f"matrix must look like [[a,b],[c,d]], got {text!r}")
    return tuple(ring.parse(e) for e in m.groups())
