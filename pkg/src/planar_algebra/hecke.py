#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Hecke Algebra of Type A

Elements of H_n in the permutation basis {T_w} with (T_s - q)(T_s + q^-1) = 0,
symmetrizers and antisymmetrizers, Young idempotents, the branching morphisms
between H_{n-1} ⊗ 1 and H_n, and the Murphy element.

Coefficients live in the raw domain of a Specialization, generic q by default.
"""

import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Any, Dict, Iterable, List, Optional, Tuple

from planar_algebra.errors import (DegenerateNormalization, DslSyntaxError,
                                   InvalidParams, StrandMismatch,
                                   VanishingQuantumInteger)
from planar_algebra.exactnum import FieldElem, Specialization, qint
from planar_algebra.young import YoungDiagram, content

logger = logging.getLogger(__name__)

Perm = Tuple[int, ...]


@lru_cache(maxsize=None)
def reduced_word(w: Perm) -> Tuple[int, ...]:
    """0-based simple reflections s_i (swapping positions i, i+1) with T_w = T_{i1}...T_{ik}."""
    v = list(w)
    recorded = []
    changed = True
    while changed:
        changed = False
        for i in range(len(v) - 1):
            if v[i] > v[i + 1]:
                v[i], v[i + 1] = v[i + 1], v[i]
                recorded.append(i)
                changed = True
                break
    return tuple(reversed(recorded))


@lru_cache(maxsize=None)
def all_perms(n: int) -> Tuple[Perm, ...]:
    """S_n by length, then lexicographically."""
    return tuple(sorted(permutations(range(n)), key=lambda w: (len(reduced_word(w)), w)))


def _swap(w: Perm, i: int) -> Perm:
    v = list(w)
    v[i], v[i + 1] = v[i + 1], v[i]
    return tuple(v)


class HeckeElem:
    """Σ c_w T_w in H_n; immutable once built."""

    __slots__ = ("n", "terms", "spec")

    def __init__(self, n: int, terms: Optional[Dict[Perm, Any]] = None,
                 spec: Optional[Specialization] = None):
        self.n = n
        self.spec = spec or Specialization.generic()
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    def _check(self, other: "HeckeElem") -> None:
        if other.n != self.n:
            raise StrandMismatch(f"H_{self.n} and H_{other.n} elements do not multiply", left=self.n, right=other.n)
        if other.spec is not self.spec:
            raise InvalidParams(f"elements over {self.spec.key} and {other.spec.key}")

    def _scalar(self, c: Any):
        if isinstance(c, FieldElem):
            return self.spec.convert(c)
        if isinstance(c, int):
            return self.spec.from_int(c)
        return c

    def __add__(self, other: "HeckeElem") -> "HeckeElem":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, self.spec.zero) + c
        return HeckeElem(self.n, out, self.spec)

    def __sub__(self, other: "HeckeElem") -> "HeckeElem":
        return self + other.scale(-1)

    def __neg__(self) -> "HeckeElem":
        return self.scale(-1)

    def scale(self, c: Any) -> "HeckeElem":
        c = self._scalar(c)
        return HeckeElem(self.n, {w: c * v for w, v in self.terms.items()}, self.spec)

    def __mul__(self, other):
        if isinstance(other, HeckeElem):
            return hecke_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, HeckeElem):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def coeff(self, w: Perm):
        """Wrapped coefficient of T_w."""
        return self.spec.wrap(self.terms.get(tuple(w), self.spec.zero))

    def right_generator(self, i: int) -> "HeckeElem":
        """x·T_{s_i}, i 0-based."""
        out: Dict[Perm, Any] = {}
        z = self.spec.z
        for w, c in self.terms.items():
            ws = _swap(w, i)
            out[ws] = out.get(ws, self.spec.zero) + c
            if w[i] > w[i + 1]:
                out[w] = out.get(w, self.spec.zero) + z * c
        return HeckeElem(self.n, out, self.spec)

    def to_json(self) -> Dict[str, Any]:
        return {"n": self.n, "terms": {"".join(str(k + 1) for k in w): self.spec.dumps(c)
                                       for w, c in sorted(self.terms.items())}}

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({self.spec.render(c)})*T[{''.join(str(k + 1) for k in w)}]"
                          for w, c in sorted(self.terms.items(), key=lambda kv: (len(reduced_word(kv[0])), kv[0])))

    def __repr__(self):
        return f"HeckeElem(n={self.n}, {len(self.terms)} terms)"


def identity(n: int, spec: Optional[Specialization] = None) -> HeckeElem:
    spec = spec or Specialization.generic()
    return HeckeElem(n, {tuple(range(n)): spec.one}, spec)


def basis_element(w: Perm, spec: Optional[Specialization] = None) -> HeckeElem:
    spec = spec or Specialization.generic()
    return HeckeElem(len(w), {tuple(w): spec.one}, spec)


def sigma(n: int, i: int, spec: Optional[Specialization] = None) -> HeckeElem:
    """σ_i = T_{s_i} crossing strands i and i+1 (1-based)."""
    if not 1 <= i < n:
        raise InvalidParams(f"σ_{i} does not exist in H_{n}")
    return basis_element(_swap(tuple(range(n)), i - 1), spec)


def sigma_inv(n: int, i: int, spec: Optional[Specialization] = None) -> HeckeElem:
    """σ_i^-1 = T_{s_i} - (q - q^-1)."""
    s = sigma(n, i, spec)
    return s - identity(n, s.spec).scale(s.spec.z)


def hecke_mul(x: HeckeElem, y: HeckeElem) -> HeckeElem:
    """Product in the T_w basis by right multiplication along reduced words."""
    x._check(y)
    total = HeckeElem(x.n, {}, x.spec)
    for v, c in y.terms.items():
        partial = x
        for i in reduced_word(v):
            partial = partial.right_generator(i)
        total = total + partial.scale(c)
    return total


def inverse_basis(w: Perm, spec: Optional[Specialization] = None) -> HeckeElem:
    """T_w^-1 as the reversed product of σ^-1 factors."""
    n = len(w)
    out = identity(n, spec)
    for i in reversed(reduced_word(tuple(w))):
        out = out * sigma_inv(n, i + 1, out.spec)
    return out


def star(x: HeckeElem) -> HeckeElem:
    """Antilinear anti-involution T_w ↦ T_w^-1, scalars conjugated."""
    total = HeckeElem(x.n, {}, x.spec)
    for w, c in x.terms.items():
        total = total + inverse_basis(w, x.spec).scale(x.spec.conj(c))
    return total


def embed(x: HeckeElem, n: int) -> HeckeElem:
    """x ⊗ 1 in H_n, acting on the first x.n strands."""
    if n < x.n:
        raise StrandMismatch(f"cannot embed H_{x.n} into H_{n}")
    tail = tuple(range(x.n, n))
    return HeckeElem(n, {w + tail: c for w, c in x.terms.items()}, x.spec)


def shift(x: HeckeElem, k: int = 1) -> HeckeElem:
    """1_k ⊗ x, acting on the last x.n strands of H_{x.n + k}."""
    return HeckeElem(x.n + k, {tuple(range(k)) + tuple(v + k for v in w): c for w, c in x.terms.items()}, x.spec)


def place(x: HeckeElem, n: int, offset: int) -> HeckeElem:
    """1_offset ⊗ x ⊗ 1 in H_n."""
    return embed(shift(x, offset), n) if offset else embed(x, n)


def _quantum_ratio(l: int, spec: Specialization):
    num, den = spec.convert(qint(l - 1)), spec.convert(qint(l))
    if not den:
        raise VanishingQuantumInteger(f"[{l}] vanishes at {spec.key}", l=l)
    return num / den


@lru_cache(maxsize=None)
def _symmetrizer(l: int, kind: str, recursion: str, spec: Specialization) -> HeckeElem:
    if l == 1:
        return identity(1, spec)
    prev = _symmetrizer(l - 1, kind, recursion, spec)
    if recursion == "left":
        f = embed(prev, l)
        s = sigma(l, l - 1, spec)
    else:
        f = shift(prev)
        s = sigma(l, 1, spec)
    one = identity(l, spec)
    if kind == "sym":
        middle = one.scale(spec.q) - s
    else:
        middle = one.scale(spec.one / spec.q) + s
    return f - (f * middle * f).scale(_quantum_ratio(l, spec))


def symmetrizer(l: int, kind: str = "sym", recursion: str = "left",
                spec: Optional[Specialization] = None) -> HeckeElem:
    """f^(l) (kind 'sym') or g^(l) (kind 'antisym').

    The left recursion extends f^(l-1) ⊗ 1 by σ_{l-1}; the right recursion
    extends 1 ⊗ f^(l-1) by σ_1. Both give the same idempotent.
    """
    if kind not in ("sym", "antisym"):
        raise InvalidParams(f"unknown symmetrizer kind '{kind}'")
    if recursion not in ("left", "right"):
        raise InvalidParams(f"unknown recursion '{recursion}'")
    if l < 1:
        raise InvalidParams(f"symmetrizer size must be positive, got {l}")
    spec = spec or Specialization.generic()
    for k in range(2, l + 1):
        if not spec.convert(qint(k)):
            raise VanishingQuantumInteger(f"[{k}] vanishes at {spec.key}", l=k)
    return _symmetrizer(l, kind, recursion, spec)


@dataclass
class YoungIdem:
    """Minimal idempotent y_λ = ẏ_λ / m_λ."""

    lam: YoungDiagram
    element: HeckeElem
    norm: Any

    @property
    def n(self) -> int:
        return self.element.n


def _block_product(blocks: Iterable[int], kind: str, n: int, spec: Specialization) -> HeckeElem:
    out = identity(n, spec)
    offset = 0
    for size in blocks:
        if size > 1:
            out = out * place(symmetrizer(size, kind, spec=spec), n, offset)
        offset += size
    return out


def reading_permutation(lam: YoungDiagram) -> Perm:
    """w with w[column position] = row position for every cell of λ."""
    cols = lam.transpose().rows
    n = lam.size
    w = [0] * n
    for i, j in lam.cells():
        row_pos = sum(lam.rows[:i - 1]) + (j - 1)
        col_pos = sum(cols[:j - 1]) + (i - 1)
        w[col_pos] = row_pos
    return tuple(w)


def _inverse_perm(w: Perm) -> Perm:
    inv = [0] * len(w)
    for k, v in enumerate(w):
        inv[v] = k
    return tuple(inv)


def _quasi_norm(x: HeckeElem) -> Any:
    """m with x·x = m·x, or None when x is not quasi-idempotent."""
    square = x * x
    w = next(iter(sorted(x.terms)))
    m = square.terms.get(w, x.spec.zero) / x.terms[w]
    if not (square - x.scale(m)).is_zero():
        return None
    return m


@lru_cache(maxsize=None)
def _young_idempotent(rows: Tuple[int, ...], spec: Specialization) -> YoungIdem:
    lam = YoungDiagram(rows)
    n = lam.size
    if n == 0:
        return YoungIdem(lam, identity(0, spec), spec.one)
    F = _block_product(lam.rows, "sym", n, spec)
    G = _block_product(lam.transpose().rows, "antisym", n, spec)
    w = reading_permutation(lam)
    for candidate in (w, _inverse_perm(w)):
        Tw = basis_element(candidate, spec)
        head = F * Tw * G
        if not head.is_zero():
            break
        logger.debug(f"F·T_w·G vanishes for w={candidate}, trying the inverse")
    else:
        raise DegenerateNormalization(f"no nonzero Young symmetrizer for {lam} at {spec.key}")
    quasi = head * inverse_basis(candidate, spec) * F
    if quasi.is_zero():
        raise DegenerateNormalization(f"ẏ_{lam} vanishes at {spec.key}")
    m = _quasi_norm(quasi)
    if m is None:
        raise DegenerateNormalization(f"ẏ_{lam} is not quasi-idempotent at {spec.key}")
    if not m:
        raise DegenerateNormalization(f"m_{lam} vanishes at {spec.key}", lam=lam)
    logger.debug(f"Young idempotent for {lam}: {len(quasi.terms)} terms")
    return YoungIdem(lam, quasi.scale(spec.one / m), m)


def young_idempotent(lam: YoungDiagram, spec: Optional[Specialization] = None) -> YoungIdem:
    """Rows symmetrized on both ends, columns antisymmetrized in the middle."""
    spec = spec or Specialization.generic()
    if lam.rows and len(lam.rows) == 1:
        return YoungIdem(lam, symmetrizer(lam.size, "sym", spec=spec), spec.one)
    if lam.rows and all(r == 1 for r in lam.rows):
        return YoungIdem(lam, symmetrizer(lam.size, "antisym", spec=spec), spec.one)
    return _young_idempotent(lam.rows, spec)


@dataclass
class BranchMorphism:
    """ρ_{μ<λ} (up) and ρ_{λ>μ} (down) with down·up = y_λ."""

    mu: YoungDiagram
    lam: YoungDiagram
    up: HeckeElem
    down: HeckeElem
    pairing_norm: Any

    def projection(self) -> HeckeElem:
        return self.up * self.down


def branch(mu: YoungDiagram, lam: YoungDiagram, spec: Optional[Specialization] = None) -> BranchMorphism:
    """Branching morphisms between y_μ ⊗ 1 and y_λ, |λ| = |μ| + 1."""
    spec = spec or Specialization.generic()
    lam.cell_difference(mu)
    n = lam.size
    y_mu = embed(young_idempotent(mu, spec).element, n)
    y_lam = young_idempotent(lam, spec).element
    ups = []
    for v in all_perms(n):
        up = y_mu * basis_element(v, spec) * y_lam
        if not up.is_zero():
            ups.append(up)
            break
    if not ups:
        raise DegenerateNormalization(f"no morphism from {mu} ⊗ [1] to {lam}")
    up = ups[0]
    for v in all_perms(n):
        down = y_lam * basis_element(v, spec) * y_mu
        if down.is_zero():
            continue
        product = down * up
        if product.is_zero():
            continue
        w = next(iter(sorted(y_lam.terms)))
        c = product.terms.get(w, spec.zero) / y_lam.terms[w]
        if not (product - y_lam.scale(c)).is_zero():
            raise DegenerateNormalization(f"y_{lam} H y_{lam} is not one-dimensional at {spec.key}")
        return BranchMorphism(mu, lam, up, down.scale(spec.one / c), c)
    raise DegenerateNormalization(f"pairing of {mu} < {lam} vanishes at {spec.key}")


def branching_sum(mu: YoungDiagram, spec: Optional[Specialization] = None) -> HeckeElem:
    """Σ_{λ > μ} up·down; equals y_μ ⊗ 1."""
    spec = spec or Specialization.generic()
    n = mu.size + 1
    total = HeckeElem(n, {}, spec)
    for cell in mu.addable_cells():
        total = total + branch(mu, mu.add_cell(cell), spec).projection()
    return total


def jucys_murphy(n: int, spec: Optional[Specialization] = None) -> HeckeElem:
    """σ_{n-1}···σ_1·σ_1···σ_{n-1}; the identity for n = 1."""
    out = identity(n, spec)
    for i in list(range(n - 1, 0, -1)) + list(range(1, n)):
        out = out * sigma(n, i, out.spec)
    return out


def murphy(n: int, spec: Optional[Specialization] = None) -> HeckeElem:
    if n < 1:
        raise InvalidParams(f"Murphy element needs n >= 1, got {n}")
    return jucys_murphy(n, spec)


def murphy_eigenvalue(mu: YoungDiagram, lam: YoungDiagram) -> int:
    """Exponent 2·cn(λ - μ) of the Murphy eigenvalue on ρ_{λ>μ}."""
    return 2 * content(lam.cell_difference(mu))


_TOKEN = re.compile(r"\s*s(\d+)(\^-1)?")


def parse_hecke_word(text: str, n: int, spec: Optional[Specialization] = None) -> HeckeElem:
    """Parse 's1 s2 s1^-1' into a product of generators of H_n."""
    out = identity(n, spec)
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DslSyntaxError(f"unexpected '{text[pos:pos + 1]}' in Hecke word", pos)
        i = int(m.group(1))
        gen = sigma_inv(n, i, out.spec) if m.group(2) else sigma(n, i, out.spec)
        out = out * gen
        pos = m.end()
    return out
