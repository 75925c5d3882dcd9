#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Exact scalar arithmetic

Gaussian rationals, rational functions of q over Q(i), cyclotomic
specializations at q = exp(i*pi/(2N+2)), quantum integers and the parameter
dictionary (delta, r, a, b, D). Heavy lifting is delegated to the sympy
polynomial domains; the classes here fix canonical forms and the involution.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import mpmath
from sympy import I, Rational, Symbol, exp, pi
from sympy.parsing.sympy_parser import (convert_xor, implicit_multiplication,
                                        parse_expr, standard_transformations)
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from planar_algebra.errors import (CertificationInconclusive, DivisionByZero,
                                   DslSyntaxError, InvalidParams,
                                   PoleAtRootOfUnity)

logger = logging.getLogger(__name__)

Q_SYMBOL = Symbol("q")
FIELD_DOMAIN = QQ_I.frac_field(Q_SYMBOL)
_FIELD = FIELD_DOMAIN.field
_RING = _FIELD.ring
_Q = _FIELD.gens[0]


def _qq(value: Any):
    """Coerce ints, Fractions, strings and sympy rationals into QQ."""
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if hasattr(value, "numerator") and hasattr(value, "denominator") and not isinstance(value, float):
        return QQ(int(value.numerator), int(value.denominator))
    return QQ.from_sympy(Rational(value))


def _fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def _mpf(value):
    return mpmath.mpf(int(value.numerator)) / int(value.denominator)


def _render_rational(value) -> str:
    f = _fraction(value)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


class GaussRat:
    """A Gaussian rational re + im*I."""

    __slots__ = ("value",)

    def __init__(self, re: Any = 0, im: Any = 0):
        if isinstance(re, GaussRat):
            self.value = re.value
        elif type(re).__name__ == "GaussianRational":
            self.value = re
        else:
            self.value = QQ_I.new(_qq(re), _qq(im))

    @property
    def re(self) -> Fraction:
        return _fraction(self.value.x)

    @property
    def im(self) -> Fraction:
        return _fraction(self.value.y)

    def _coerce(self, other):
        if isinstance(other, GaussRat):
            return other.value
        if isinstance(other, (int, Fraction)):
            return QQ_I.new(_qq(other), QQ(0))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else GaussRat(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else GaussRat(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else GaussRat(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else GaussRat(self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise DivisionByZero("division of a Gaussian rational by zero")
        return GaussRat(self.value / o)

    def __neg__(self):
        return GaussRat(-self.value)

    def __eq__(self, other):
        o = self._coerce(other)
        return o is not None and self.value == o

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.value)

    def conj(self) -> "GaussRat":
        return GaussRat(QQ_I.new(self.value.x, -self.value.y))

    def to_complex(self) -> mpmath.mpc:
        return mpmath.mpc(_mpf(self.value.x), _mpf(self.value.y))

    def __str__(self):
        re, im = _render_rational(self.value.x), _render_rational(self.value.y)
        if not self.value.y:
            return re
        if not self.value.x:
            return "I" if im == "1" else ("-I" if im == "-1" else f"{im}*I")
        sign = "-" if self.value.y < 0 else "+"
        mag = _render_rational(abs(self.value.y))
        return f"{re}{sign}{'' if mag == '1' else mag + '*'}I"

    __repr__ = __str__

    @classmethod
    def parse(cls, text: str) -> "GaussRat":
        """Parse strings such as '3/5+4/5*I'."""
        value = parse_field(text)
        num, den = value.laurent()
        if set(num) - {0} or set(den) != {0}:
            raise InvalidParams(f"'{text}' is not a Gaussian rational")
        return num.get(0, GaussRat(0)) / den[0]


Scalar = Union[int, Fraction, GaussRat, "FieldElem"]


class FieldElem:
    """Element of Q(i)(q), kept as a reduced fraction of polynomials in q."""

    __slots__ = ("_f", "_key")

    def __init__(self, value: Any = 0):
        self._key = None
        if isinstance(value, FieldElem):
            self._f = value._f
        elif isinstance(value, GaussRat):
            self._f = _FIELD.ground_new(value.value)
        elif isinstance(value, (int, Fraction)):
            self._f = _FIELD.ground_new(QQ_I.new(_qq(value), QQ(0)))
        elif type(value).__name__ == "FracElement":
            self._f = value
        else:
            raise TypeError(f"cannot build a FieldElem from {type(value).__name__}")

    @classmethod
    def from_raw(cls, raw) -> "FieldElem":
        obj = cls.__new__(cls)
        obj._f = raw
        obj._key = None
        return obj

    @property
    def raw(self):
        return self._f

    @staticmethod
    def _other(other) -> Optional[Any]:
        if isinstance(other, FieldElem):
            return other._f
        if isinstance(other, (int, Fraction)):
            return _FIELD.ground_new(QQ_I.new(_qq(other), QQ(0)))
        if isinstance(other, GaussRat):
            return _FIELD.ground_new(other.value)
        return None

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else FieldElem.from_raw(self._f + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else FieldElem.from_raw(self._f - o)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else FieldElem.from_raw(o - self._f)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else FieldElem.from_raw(self._f * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not o:
            raise DivisionByZero("division by the zero rational function")
        return FieldElem.from_raw(self._f / o)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not self._f:
            raise DivisionByZero("division by the zero rational function")
        return FieldElem.from_raw(o / self._f)

    def __neg__(self):
        return FieldElem.from_raw(-self._f)

    def __pow__(self, n: int):
        if n < 0 and not self._f:
            raise DivisionByZero("negative power of zero")
        return FieldElem.from_raw(self._f ** n)

    def __bool__(self):
        return bool(self._f)

    def is_zero(self) -> bool:
        return not self._f

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return not (self._f - o)

    def __hash__(self):
        return hash(self._canonical_key())

    def inv(self) -> "FieldElem":
        return 1 / self

    def conj(self) -> "FieldElem":
        """The involution q -> 1/q, I -> -I."""
        if not self._f:
            return self
        num = _conj_poly(self._f.numer)
        den = _conj_poly(self._f.denom)
        shift = self._f.denom.degree() - self._f.numer.degree()
        head = _Q ** shift if shift >= 0 else 1 / _Q ** (-shift)
        return FieldElem.from_raw(head * _FIELD.new(num, den))

    def laurent(self) -> Tuple[Dict[int, GaussRat], Dict[int, GaussRat]]:
        """Canonical Laurent form: denominator monic with lowest exponent 0."""
        num = {e[0]: c for e, c in self._f.numer.terms()}
        den = {e[0]: c for e, c in self._f.denom.terms()}
        low = min(den)
        lead = den[max(den)]
        return ({e - low: GaussRat(c / lead) for e, c in num.items()},
                {e - low: GaussRat(c / lead) for e, c in den.items()})

    def _canonical_key(self):
        if self._key is None:
            num, den = self.laurent()
            self._key = (tuple(sorted((e, c.re, c.im) for e, c in num.items())),
                         tuple(sorted((e, c.re, c.im) for e, c in den.items())))
        return self._key

    def evaluate(self, z) -> mpmath.mpc:
        """Numeric value at a complex q (mpmath precision of the caller)."""
        z = mpmath.mpc(z)
        num = sum((_gauss_mpc(c) * z ** e[0] for e, c in self._f.numer.terms()), mpmath.mpc(0))
        den = sum((_gauss_mpc(c) * z ** e[0] for e, c in self._f.denom.terms()), mpmath.mpc(0))
        return num / den

    def __str__(self):
        num, den = self.laurent()
        if not num:
            return "0"
        if den == {0: GaussRat(1)}:
            return _render_laurent(num)
        return f"({_render_laurent(num)})/({_render_laurent(den)})"

    def __repr__(self):
        return f"FieldElem({self})"


def _gauss_mpc(c) -> mpmath.mpc:
    return mpmath.mpc(_mpf(c.x), _mpf(c.y))


def _conj_poly(poly):
    """Coefficient-conjugated reversal: p(q) -> q^deg * conj(p)(1/q)."""
    if not poly:
        return poly
    deg = poly.degree()
    terms = {(deg - e[0],): QQ_I.new(c.x, -c.y) for e, c in poly.terms()}
    return _RING.from_dict(terms)


def _render_monomial(coeff: GaussRat, e: int) -> Tuple[str, str]:
    """Sign and body of one Laurent term."""
    negative = (coeff.im == 0 and coeff.re < 0) or (coeff.re == 0 and coeff.im < 0)
    c = -coeff if negative else coeff
    mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
    text = str(c)
    if c.re != 0 and c.im != 0:
        text = f"({text})"
    if not mono:
        body = text
    elif text == "1":
        body = mono
    else:
        body = f"{text}*{mono}"
    return ("-" if negative else "+"), body


def _render_laurent(terms: Dict[int, GaussRat]) -> str:
    out = ""
    for e in sorted(terms, reverse=True):
        sign, body = _render_monomial(terms[e], e)
        if not out:
            out = body if sign == "+" else f"-{body}"
        else:
            out += f"{sign}{body}"
    return out


# --- constants and the parameter dictionary --------------------------------

def q() -> FieldElem:
    return FieldElem.from_raw(_Q)


def imag_unit() -> FieldElem:
    return FieldElem(GaussRat(0, 1))


def qint(n: int) -> FieldElem:
    """Quantum integer [n] = (q^n - q^-n)/(q - q^-1)."""
    if n < 0:
        raise InvalidParams(f"quantum integer needs n >= 0, got {n}")
    x = q()
    total = FieldElem(0)
    for k in range(n):
        total = total + x ** (n - 1 - 2 * k)
    return total


class Params:
    """The scalars delta, r, a, b, D (and z = q - q^-1) as rational functions."""

    __slots__ = ("q", "z", "delta", "r", "a", "b", "D")

    def __init__(self):
        x, i = q(), imag_unit()
        self.q = x
        self.z = x - x ** -1
        self.delta = i * (x + x ** -1) / (x - x ** -1)
        self.r = i * x ** -1
        self.a = (x - x ** -1) / 2
        self.b = (x - x ** -1) / (2 * i)
        self.D = (x + x ** -1) / 2

    def circle_identity(self) -> FieldElem:
        """(r - r^-1)/(q - q^-1); equals delta."""
        return (self.r - self.r ** -1) / self.z

    def as_dict(self) -> Dict[str, FieldElem]:
        return {name: getattr(self, name) for name in self.__slots__}


@lru_cache(maxsize=1)
def params() -> Params:
    return Params()


def field_arith(x: FieldElem, y: Optional[FieldElem], op: str) -> FieldElem:
    """Dispatch one of add, sub, mul, div, inv, conj."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "inv":
        return x.inv()
    if op == "conj":
        return x.conj()
    raise InvalidParams(f"unknown field operation '{op}'")


_TRANSFORMS = standard_transformations + (convert_xor, implicit_multiplication)


def parse_field(text: str) -> FieldElem:
    """Parse a rational-function literal such as '(q-q^-1)/2' or 'I*q^-1'."""
    p = params()
    local = {"q": Q_SYMBOL, "I": I, "i": I}
    for name, value in (("delta", p.delta), ("d", p.delta), ("r", p.r), ("a", p.a),
                        ("b", p.b), ("D", p.D), ("z", p.z)):
        local[name] = value.raw.as_expr()
    try:
        expr = parse_expr(text.strip(), local_dict=local, transformations=_TRANSFORMS)
    except Exception as e:
        raise DslSyntaxError(f"cannot parse coefficient '{text}': {e}", 0)
    unknown = {s.name for s in expr.free_symbols} - {"q"}
    if unknown:
        raise DslSyntaxError(f"unknown symbols {sorted(unknown)} in '{text}'", 0)
    try:
        return FieldElem.from_raw(_FIELD.from_expr(expr))
    except (ValueError, ZeroDivisionError) as e:
        raise DslSyntaxError(f"coefficient '{text}' is not a rational function of q: {e}", 0)


# --- cyclotomic specialization ---------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic_field(N: int):
    """Q(zeta) with zeta = exp(i*pi/(2N+2)), a primitive (4N+4)-th root of unity."""
    if N < 1:
        raise InvalidParams(f"level N must be positive, got {N}")
    logger.debug(f"Building cyclotomic field of order {4 * N + 4}")
    return QQ.algebraic_field(exp(I * pi / (2 * N + 2)))


@lru_cache(maxsize=None)
def _zeta_powers(N: int) -> Tuple[Any, ...]:
    K = cyclotomic_field(N)
    powers = [K.one]
    for _ in range(4 * N + 3):
        powers.append(powers[-1] * K.unit)
    return tuple(powers)


def _k_const(K, value):
    return K([value]) if value else K.zero


class CycloElem:
    """Element of Q(zeta_{4N+4}) in the power basis of zeta."""

    __slots__ = ("N", "_a")

    def __init__(self, N: int, raw):
        self.N = N
        self._a = raw

    @classmethod
    def from_coeffs(cls, N: int, coeffs: Sequence[Any]) -> "CycloElem":
        powers = _zeta_powers(N)
        K = cyclotomic_field(N)
        total = K.zero
        for k, c in enumerate(coeffs):
            if c:
                total += _k_const(K, _qq(c)) * powers[k % len(powers)]
        return cls(N, total)

    @property
    def raw(self):
        return self._a

    @property
    def order(self) -> int:
        return 4 * self.N + 4

    @property
    def coeffs(self) -> List[Fraction]:
        """Rational coordinates in the power basis, lowest power first."""
        degree = cyclotomic_field(self.N).mod.degree()
        dense = [_fraction(c) for c in reversed(self._a.to_list())]
        return dense + [Fraction(0)] * (degree - len(dense))

    def _other(self, other):
        if isinstance(other, CycloElem):
            if other.N != self.N:
                raise InvalidParams("cyclotomic elements of different levels")
            return other._a
        if isinstance(other, (int, Fraction)):
            return _k_const(cyclotomic_field(self.N), _qq(other))
        return None

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else CycloElem(self.N, self._a + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else CycloElem(self.N, self._a - o)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else CycloElem(self.N, o - self._a)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else CycloElem(self.N, self._a * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not o:
            raise DivisionByZero("division by zero in a cyclotomic field")
        return CycloElem(self.N, self._a / o)

    def __neg__(self):
        return CycloElem(self.N, -self._a)

    def __pow__(self, n: int):
        if n < 0:
            return CycloElem(self.N, cyclotomic_field(self.N).one / self._a ** (-n))
        return CycloElem(self.N, self._a ** n)

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self._a == o

    def __hash__(self):
        return hash((self.N, tuple(self.coeffs)))

    def __bool__(self):
        return bool(self._a)

    def conj(self) -> "CycloElem":
        return CycloElem(self.N, _cyclo_conj(self.N, self._a))

    def is_real(self) -> bool:
        return self == self.conj()

    def to_complex(self) -> mpmath.mpc:
        return _cyclo_complex(self.N, self._a)

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
                parts.append(f"{c}" if not mono else (mono if c == 1 else f"{c}*{mono}"))
        return "+".join(parts).replace("+-", "-") or "0"

    def __repr__(self):
        return f"CycloElem(N={self.N}, {self})"


def _cyclo_conj(N: int, raw):
    powers = _zeta_powers(N)
    K = cyclotomic_field(N)
    order = len(powers)
    total = K.zero
    for k, c in enumerate(reversed(raw.to_list())):
        if c:
            total += _k_const(K, c) * powers[(-k) % order]
    return total


def _cyclo_complex(N: int, raw) -> mpmath.mpc:
    total = mpmath.mpc(0)
    for k, c in enumerate(reversed(raw.to_list())):
        if c:
            total += _mpf(c) * mpmath.expjpi(mpmath.mpf(k) / (2 * N + 2))
    return total


def _evaluate_poly(poly, point, zero, imag, const):
    """Evaluate a Q(i)-polynomial in q at `point` of another ring."""
    total = zero
    for e, c in poly.terms():
        term = const(c.x)
        if c.y:
            term = term + const(c.y) * imag
        if e[0]:
            term = term * point ** e[0]
        total = total + term
    return total


def specialize(x: FieldElem, N: int) -> CycloElem:
    """Image of x under q -> zeta_{4N+4}, I -> zeta^(N+1)."""
    K = cyclotomic_field(N)
    powers = _zeta_powers(N)
    const = lambda v: _k_const(K, v)
    num = _evaluate_poly(x.raw.numer, powers[1], K.zero, powers[N + 1], const)
    den = _evaluate_poly(x.raw.denom, powers[1], K.zero, powers[N + 1], const)
    if not den:
        raise PoleAtRootOfUnity(f"{x} has a pole at q = exp(i*pi/{2 * N + 2})", N=N)
    return CycloElem(N, num / den)


def specialized_float(x: FieldElem, N: int) -> mpmath.mpc:
    return x.evaluate(mpmath.expjpi(mpmath.mpf(1) / (2 * N + 2)))


# --- evaluation contexts ---------------------------------------------------

class Specialization:
    """Where scalars live: Q(i)(q), a Gaussian-rational probe point, or Q(zeta).

    The skein engine and the tower work with the raw domain elements of
    `domain`; `wrap` turns a raw value back into FieldElem, GaussRat or
    CycloElem.
    """

    def __init__(self, kind: str, N: Optional[int] = None, point: Optional[GaussRat] = None):
        self.kind = kind
        self.N = N
        self.point = point
        if kind == "generic":
            self.domain = FIELD_DOMAIN
            self.one, self.zero = _FIELD.one, _FIELD.zero
            self.i = _FIELD.ground_new(QQ_I.new(QQ(0), QQ(1)))
            self.q = _Q
        elif kind == "probe":
            if point is None:
                raise InvalidParams("probe specialization needs a point")
            self.domain = QQ_I
            self.one, self.zero = QQ_I.one, QQ_I.zero
            self.i = QQ_I.new(QQ(0), QQ(1))
            self.q = point.value
            if self.q.x ** 2 + self.q.y ** 2 != 1:
                logger.warning(f"Probe point {point} is off the unit circle; conj will not match q -> 1/q")
        elif kind == "root_of_unity":
            if N is None or N < 1:
                raise InvalidParams(f"root of unity specialization needs N >= 1, got {N}")
            K = cyclotomic_field(N)
            self.domain = K
            self.one, self.zero = K.one, K.zero
            powers = _zeta_powers(N)
            self.i = powers[N + 1]
            self.q = powers[1]
        else:
            raise InvalidParams(f"unknown specialization '{kind}'")
        p = params()
        self.a = self.convert(p.a)
        self.b = self.convert(p.b)
        self.D = self.convert(p.D)
        self.delta = self.convert(p.delta)
        self.r = self.convert(p.r)
        self.z = self.convert(p.z)

    @classmethod
    def generic(cls) -> "Specialization":
        return _generic()

    @classmethod
    def probe(cls, point: Union[str, GaussRat] = "3/5+4/5*I") -> "Specialization":
        return _probe(str(point))

    @classmethod
    def root_of_unity(cls, N: int) -> "Specialization":
        return _root_of_unity(N)

    @property
    def key(self) -> str:
        if self.kind == "generic":
            return "generic"
        if self.kind == "probe":
            return f"probe:{self.point}"
        return f"N={self.N}"

    @property
    def is_generic_like(self) -> bool:
        """Generic q or an exact point standing in for it."""
        return self.kind in ("generic", "probe")

    def __repr__(self):
        return f"Specialization({self.key})"

    def convert(self, x: Union[FieldElem, int]):
        """Map a rational function to a raw element of this domain."""
        if not isinstance(x, FieldElem):
            x = FieldElem(x)
        if self.kind == "generic":
            return x.raw
        if self.kind == "root_of_unity":
            return specialize(x, self.N).raw
        const = lambda v: QQ_I.new(v, QQ(0))
        num = _evaluate_poly(x.raw.numer, self.q, self.zero, self.i, const)
        den = _evaluate_poly(x.raw.denom, self.q, self.zero, self.i, const)
        if not den:
            raise DivisionByZero(f"{x} has a pole at the probe point {self.point}")
        return num / den

    def from_int(self, n: int):
        return self.domain.convert(n)

    def wrap(self, raw) -> Union[FieldElem, GaussRat, CycloElem]:
        if self.kind == "generic":
            return FieldElem.from_raw(raw)
        if self.kind == "probe":
            return GaussRat(raw)
        return CycloElem(self.N, raw)

    def conj(self, raw):
        if self.kind == "generic":
            return FieldElem.from_raw(raw).conj().raw
        if self.kind == "probe":
            return QQ_I.new(raw.x, -raw.y)
        return _cyclo_conj(self.N, raw)

    def to_complex(self, raw) -> mpmath.mpc:
        if self.kind == "generic":
            return FieldElem.from_raw(raw).evaluate(_probe("3/5+4/5*I").point.to_complex())
        if self.kind == "probe":
            return _gauss_mpc(raw)
        return _cyclo_complex(self.N, raw)

    def q_complex(self) -> mpmath.mpc:
        if self.kind == "root_of_unity":
            return mpmath.expjpi(mpmath.mpf(1) / (2 * self.N + 2))
        if self.kind == "probe":
            return self.point.to_complex()
        return _probe("3/5+4/5*I").point.to_complex()

    def ipow(self, k: int):
        """I^k for any integer k."""
        return [self.one, self.i, -self.one, -self.i][k % 4]

    def power(self, x, k: int):
        if k >= 0:
            return x ** k
        if not x:
            raise DivisionByZero("negative power of zero")
        return (self.one / x) ** (-k)

    @classmethod
    def from_key(cls, key: str) -> "Specialization":
        """Inverse of `key`."""
        if key == "generic":
            return cls.generic()
        if key.startswith("probe:"):
            return cls.probe(key.split(":", 1)[1])
        if key.startswith("N="):
            return cls.root_of_unity(int(key[2:]))
        raise InvalidParams(f"unknown specialization key '{key}'")

    def dumps(self, raw) -> Any:
        """JSON-friendly exact form of a raw value."""
        if self.kind == "generic":
            return str(FieldElem.from_raw(raw))
        if self.kind == "probe":
            return [str(_fraction(raw.x)), str(_fraction(raw.y))]
        return [str(c) for c in CycloElem(self.N, raw).coeffs]

    def loads(self, obj: Any):
        if self.kind == "generic":
            return parse_field(obj).raw
        if self.kind == "probe":
            return GaussRat(Fraction(obj[0]), Fraction(obj[1])).value
        return CycloElem.from_coeffs(self.N, [Fraction(c) for c in obj]).raw

    def render(self, raw) -> str:
        return str(self.wrap(raw))


@lru_cache(maxsize=1)
def _generic() -> Specialization:
    return Specialization("generic")


@lru_cache(maxsize=None)
def _probe(point: str) -> Specialization:
    return Specialization("probe", point=GaussRat.parse(point))


@lru_cache(maxsize=None)
def _root_of_unity(N: int) -> Specialization:
    return Specialization("root_of_unity", N=N)


# --- certified signs -------------------------------------------------------

def certified_sign(x: Union[CycloElem, GaussRat], precision_bits: int = 128,
                   max_precision_bits: int = 1024) -> int:
    """Sign of a real number, decided exactly for zero and by intervals otherwise."""
    if not x:
        return 0
    if isinstance(x, GaussRat):
        if x.im != 0:
            raise InvalidParams(f"{x} is not real")
        return 1 if x.re > 0 else -1
    if not x.is_real():
        raise InvalidParams(f"{x} is not real")
    bits = precision_bits
    saved = mpmath.iv.prec
    try:
        while bits <= max_precision_bits:
            mpmath.iv.prec = bits
            total = mpmath.iv.mpf(0)
            for k, c in enumerate(x.coeffs):
                if c:
                    angle = mpmath.iv.pi * k / (2 * x.N + 2)
                    total += mpmath.iv.mpf(c.numerator) / c.denominator * mpmath.iv.cos(angle)
            if total.a > 0:
                return 1
            if total.b < 0:
                return -1
            logger.debug(f"Sign of {x} unresolved at {bits} bits")
            bits *= 2
    finally:
        mpmath.iv.prec = saved
    raise CertificationInconclusive(f"sign of {x} unresolved at {max_precision_bits} bits")


# --- exact matrices --------------------------------------------------------

def matrix(rows: Sequence[Sequence[Any]], spec: Specialization) -> DomainMatrix:
    """DomainMatrix over the specialization's domain from raw entries."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    return DomainMatrix(rows, (len(rows), ncols), spec.domain)


def rank_and_pivots(M: DomainMatrix) -> Tuple[int, Tuple[int, ...]]:
    _, pivots = M.rref()
    return len(pivots), tuple(pivots)


def nullspace(M: DomainMatrix) -> DomainMatrix:
    """Rows of the result span the right kernel of M."""
    return M.nullspace()


def solve(A: DomainMatrix, B: DomainMatrix) -> DomainMatrix:
    return A.inv() * B


def leading_minors(M: DomainMatrix) -> List[Any]:
    n = M.shape[0]
    return [M.extract(list(range(k)), list(range(k))).det() for k in range(1, n + 1)]


def charpoly(M: DomainMatrix) -> List[Any]:
    """Coefficients of det(t - M), highest power first."""
    return M.charpoly()


def entries(M: DomainMatrix) -> List[List[Any]]:
    return M.to_list()
