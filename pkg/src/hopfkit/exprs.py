"""Expression grammar shared by the CLI, the presentation files, and reports.

Precedence (tightest first):  ^  >  *  >  @  >  unary -  >  binary + -
Multiplication is noncommutative and always explicit; juxtaposition is a
parse error.  '/' exists only between integer literals (rational literals);
exact division by h is spelled divh(expr, k) because it changes the trusted
truncation order.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    Alphabet,
    AlgebraElement,
    TensorElement,
    apply_series,
    series_inverse,
)
from .errors import ParseError, SlotMismatch, UnknownSymbol
from .scalars import TruncatedScalar

_FUNCTIONS = ("exp", "sinh", "cosh", "sinhc", "inv", "divh")
_SYMBOLS = "+-*@^()/,"


@dataclass(frozen=True)
class _Token:
    kind: str  # int | name | symbol | end
    text: str
    pos: int


def _tokenize(src: str) -> list[_Token]:
    tokens = []
    i = 0
    while i < len(src):
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            tokens.append(_Token("int", src[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(src) and (src[j].isalnum() or src[j] == "_"):
                j += 1
            tokens.append(_Token("name", src[i:j], i))
            i = j
            continue
        if ch in _SYMBOLS:
            tokens.append(_Token("symbol", ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", column=i + 1)
    tokens.append(_Token("end", "", len(src)))
    return tokens


_PREC_ADD = 1
_PREC_UNARY = 2
_PREC_TENSOR = 3
_PREC_MUL = 4


class _Parser:
    def __init__(self, src: str, alphabet: Alphabet, order: int, eps_bound: int,
                 allow_eps: bool):
        self.src = src
        self.tokens = _tokenize(src)
        self.idx = 0
        self.alphabet = alphabet
        self.order = order
        self.eps_bound = eps_bound
        self.allow_eps = allow_eps

    # -- token plumbing ------------------------------------------------------

    def peek(self) -> _Token:
        return self.tokens[self.idx]

    def advance(self) -> _Token:
        token = self.tokens[self.idx]
        self.idx += 1
        return token

    def expect_symbol(self, text: str) -> None:
        token = self.advance()
        if token.kind != "symbol" or token.text != text:
            raise ParseError(f"expected {text!r}, found {token.text or 'end of input'!r}",
                             column=token.pos + 1)

    def fail(self, message: str, token: _Token | None = None):
        token = token or self.peek()
        raise ParseError(message, column=token.pos + 1)

    # -- value helpers -------------------------------------------------------

    def _scalar_element(self, scalar: TruncatedScalar) -> AlgebraElement:
        return AlgebraElement.from_scalar(self.alphabet, scalar)

    def _as_tensor(self, value, nslots: int) -> TensorElement:
        if isinstance(value, TensorElement):
            if value.nslots != nslots:
                raise SlotMismatch(
                    f"cannot combine a {value.nslots}-slot and a {nslots}-slot tensor"
                )
            return value
        if all(not w for w in value.terms):
            scalar = value.terms.get((), TruncatedScalar.zero(self.order, self.eps_bound))
            return TensorElement.unit(
                self.alphabet, nslots, self.order, self.eps_bound
            ).scale_scalar(scalar)
        raise SlotMismatch("cannot mix a tensor with a non-scalar plain element")

    def _combine(self, op: str, lhs, rhs):
        lt, rt = isinstance(lhs, TensorElement), isinstance(rhs, TensorElement)
        if lt or rt:
            nslots = lhs.nslots if lt else rhs.nslots
            lhs = self._as_tensor(lhs, nslots)
            rhs = self._as_tensor(rhs, nslots)
        if op == "+":
            return lhs + rhs
        if op == "-":
            return lhs - rhs
        return lhs * rhs

    def _tensor_join(self, lhs, rhs) -> TensorElement:
        left_slots = lhs.nslots if isinstance(lhs, TensorElement) else 1
        right_slots = rhs.nslots if isinstance(rhs, TensorElement) else 1
        total = left_slots + right_slots
        if total > 3:
            raise SlotMismatch(f"tensor products are limited to 3 slots, got {total}")
        terms = {}
        lterms = lhs.terms if isinstance(lhs, TensorElement) else {
            (w,): c for w, c in lhs.terms.items()
        }
        rterms = rhs.terms if isinstance(rhs, TensorElement) else {
            (w,): c for w, c in rhs.terms.items()
        }
        for s1, c1 in lterms.items():
            for s2, c2 in rterms.items():
                coeff = c1 * c2
                if coeff.is_zero():
                    continue
                key = s1 + s2
                acc = terms.get(key)
                terms[key] = coeff if acc is None else acc + coeff
        return TensorElement(self.alphabet, total, self.order, self.eps_bound, terms)

    def _power(self, base, exponent: int):
        acc = base.one_like()
        for _ in range(exponent):
            acc = acc * base
        return acc

    # -- grammar -------------------------------------------------------------

    def parse(self):
        value = self.parse_expr(0)
        token = self.peek()
        if token.kind != "end":
            self.fail(
                f"unexpected {token.text!r}; multiplication must be written with an explicit '*'",
                token,
            )
        return value

    def parse_expr(self, min_prec: int):
        lhs = self.atom()
        while True:
            token = self.peek()
            if token.kind != "symbol":
                break
            if token.text in "+-":
                prec = _PREC_ADD
            elif token.text == "@":
                prec = _PREC_TENSOR
            elif token.text == "*":
                prec = _PREC_MUL
            elif token.text == "/":
                self.fail(
                    "division is only available between integer literals or as exact "
                    "h-division: divh(expr, k)", token,
                )
            else:
                break
            if prec < min_prec:
                break
            self.advance()
            rhs = self.parse_expr(prec + 1)
            if token.text == "@":
                lhs = self._tensor_join(lhs, rhs)
            else:
                lhs = self._combine(token.text, lhs, rhs)
        return lhs

    def atom(self):
        token = self.advance()
        if token.kind == "symbol" and token.text == "-":
            return -self.parse_expr(_PREC_UNARY + 1)
        if token.kind == "symbol" and token.text == "(":
            value = self.parse_expr(0)
            self.expect_symbol(")")
            return self.maybe_power(value)
        if token.kind == "int":
            value = self.rational_literal(token)
            return self.maybe_power(value)
        if token.kind == "name":
            return self.name_atom(token)
        self.fail(f"expected a value, found {token.text or 'end of input'!r}", token)

    def rational_literal(self, token: _Token) -> AlgebraElement:
        numerator = int(token.text)
        if self.peek().kind == "symbol" and self.peek().text == "/":
            slash = self.advance()
            denom_token = self.advance()
            if denom_token.kind != "int":
                self.fail("'/' is only a rational literal between integers; "
                          "use divh(expr, k) for exact h-division", slash)
            denominator = int(denom_token.text)
            if denominator == 0:
                self.fail("zero denominator", denom_token)
            return self._scalar_element(
                TruncatedScalar.rational(Fraction(numerator, denominator),
                                         self.order, self.eps_bound)
            )
        return self._scalar_element(
            TruncatedScalar.rational(numerator, self.order, self.eps_bound)
        )

    def name_atom(self, token: _Token):
        name = token.text
        if name in _FUNCTIONS:
            return self.function_call(name, token)
        if name == "h":
            return self.maybe_power(
                self._scalar_element(TruncatedScalar.h_power(1, self.order, self.eps_bound))
            )
        if name in ("e", "eps"):
            if not self.allow_eps:
                raise UnknownSymbol(
                    f"{name!r} (the contraction parameter) is not available here"
                )
            return self.eps_atom(token)
        if name in self.alphabet:
            return self.maybe_power(
                AlgebraElement.generator(self.alphabet, name, self.order, self.eps_bound)
            )
        raise UnknownSymbol(
            f"unknown symbol {name!r}; generators here are {', '.join(self.alphabet.names)}"
        )

    def eps_atom(self, token: _Token):
        # the one place a negative exponent is legal: e^-1 etc.
        if self.peek().kind == "symbol" and self.peek().text == "^":
            self.advance()
            sign = 1
            if self.peek().kind == "symbol" and self.peek().text == "-":
                self.advance()
                sign = -1
            exp_token = self.advance()
            if exp_token.kind != "int":
                self.fail("expected an integer exponent", exp_token)
            return self._scalar_element(
                TruncatedScalar.eps_power(sign * int(exp_token.text),
                                          self.order, self.eps_bound)
            )
        return self._scalar_element(
            TruncatedScalar.eps_power(1, self.order, self.eps_bound)
        )

    def maybe_power(self, value):
        while self.peek().kind == "symbol" and self.peek().text == "^":
            caret = self.advance()
            exp_token = self.advance()
            if exp_token.kind == "symbol" and exp_token.text == "-":
                self.fail("negative exponents are only defined for the contraction "
                          "parameter e", caret)
            if exp_token.kind != "int":
                self.fail("expected a non-negative integer exponent", exp_token)
            value = self._power(value, int(exp_token.text))
        return value

    def function_call(self, name: str, token: _Token):
        self.expect_symbol("(")
        first = self.parse_expr(0)
        if name == "divh":
            self.expect_symbol(",")
            k_token = self.advance()
            if k_token.kind != "int" or int(k_token.text) < 1:
                self.fail("divh needs a positive integer power", k_token)
            self.expect_symbol(")")
            return self.maybe_power(first.exact_divide_h(int(k_token.text)))
        self.expect_symbol(")")
        if name == "inv":
            return self.maybe_power(series_inverse(first))
        return self.maybe_power(apply_series(name, first))


def parse_expression_text(src: str, alphabet: Alphabet, order: int, eps_bound: int = 0,
                          allow_eps: bool = False):
    """Parse into an AlgebraElement or TensorElement (no normal-forming)."""
    return _Parser(src, alphabet, order, eps_bound, allow_eps).parse()


def parse_expression(src: str, presentation):
    """Parse against a presentation's alphabet and truncation config."""
    return parse_expression_text(
        src, presentation.alphabet, presentation.order, presentation.eps_bound,
        allow_eps=presentation.eps_bound > 0,
    )
