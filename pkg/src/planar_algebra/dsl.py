#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Word DSL

Parses elements such as `r1 r1 - (1/delta) h1`, `((q-q^-1)/2) a1 h2`,
`2 r1 h2*`. Letters are r, h (the 2-box and cup-cap), a and b (the
crossings α = a + b·h + D·r and β = α^-1). A trailing `*` takes the adjoint of
its term. Coefficients are a parenthesized rational function in q, I and the
parameter names, or a plain rational number.
"""

import logging
import re

from planar_algebra.errors import DslSyntaxError
from planar_algebra.exactnum import FieldElem, parse_field
from planar_algebra.skein import AlgElem

logger = logging.getLogger(__name__)

_LETTER = re.compile(r"([rhab])(\d+)")
_NUMBER = re.compile(r"\d+(?:/\d+)?")


class _Scanner:
    def __init__(self, text: str, m: int):
        self.text = text
        self.m = m
        self.pos = 0

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, message: str) -> DslSyntaxError:
        return DslSyntaxError(message, position=self.pos)

    def coefficient(self):
        ch = self.peek()
        if ch == "(":
            depth = 0
            start = self.pos
            for j in range(self.pos, len(self.text)):
                if self.text[j] == "(":
                    depth += 1
                elif self.text[j] == ")":
                    depth -= 1
                    if depth == 0:
                        inner = self.text[start + 1:j]
                        try:
                            value = parse_field(inner)
                        except DslSyntaxError:
                            raise DslSyntaxError(f"bad coefficient '{inner}'", position=start)
                        self.pos = j + 1
                        return value
            raise self.error("unbalanced parenthesis")
        match = _NUMBER.match(self.text, self.pos)
        if match:
            self.pos = match.end()
            return parse_field(match.group(0))
        return None

    def word(self) -> AlgElem:
        out = AlgElem.identity(self.m)
        seen = False
        while True:
            self.skip()
            match = _LETTER.match(self.text, self.pos)
            if not match:
                break
            kind, i = match.group(1), int(match.group(2))
            self.pos = match.end()
            if kind == "a":
                letter = AlgElem.alpha(i, self.m)
            elif kind == "b":
                letter = AlgElem.beta(i, self.m)
            else:
                letter = AlgElem.letter(kind, i, self.m)
            out = out * letter
            seen = True
        return out if seen else None

    def term(self) -> AlgElem:
        start = self.pos
        coeff = self.coefficient()
        word = self.word()
        if coeff is None and word is None:
            self.pos = start
            raise self.error("expected a coefficient or a letter")
        value = (word or AlgElem.identity(self.m)).scale(coeff if coeff is not None else FieldElem(1))
        if self.peek() == "*":
            self.pos += 1
            value = value.adjoint()
        return value

    def element(self) -> AlgElem:
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        total = self.term().scale(sign)
        while True:
            ch = self.peek()
            if not ch:
                return total
            if ch not in "+-":
                raise self.error(f"unexpected '{ch}'")
            self.pos += 1
            nxt = self.term()
            total = total + nxt if ch == "+" else total - nxt


def parse_word_dsl(text: str, m: int) -> AlgElem:
    """Parse an element of the m-box algebra.

    Raises:
        DslSyntaxError: Malformed input, with the offending position
        IndexOutOfRange: A letter index outside 1..m-1
    """
    if not text.strip():
        raise DslSyntaxError("empty expression", position=0)
    value = _Scanner(text, m).element()
    logger.debug(f"Parsed '{text}' as {value}")
    return value
