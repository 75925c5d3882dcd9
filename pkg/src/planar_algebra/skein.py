#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Skein Engine

The partition function ζ on closed R-diagrams, obtained by resolving every R
into a crossing and peeling off the HOMFLY-PT value, Markov traces of words in
the letters r_i and h_i, Gram matrices of word sets, relation checks through
trace pairings and the canonical Brauer words spanning each level.
"""

import heapq
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy.polys.matrices import DomainMatrix
from tqdm import tqdm

from config.settings import AppSettings
from planar_algebra.diagrams import (ClosedDiagram, Letter, Word, oriented_pairs,
                                     turnback_pairs)
from planar_algebra.errors import IndexOutOfRange, InvalidParams
from planar_algebra.exactnum import FieldElem, Specialization, imag_unit, params
from planar_algebra.homfly import HomflyEvaluator

logger = logging.getLogger(__name__)


def word_str(word: Sequence[Letter]) -> str:
    return " ".join(f"{k}{i}" for k, i in word) if word else "1"


def parse_plain_word(text: str) -> Word:
    """'r1 h2' -> (('r', 1), ('h', 2)); '1' is the empty word."""
    text = text.strip()
    if text in ("", "1"):
        return ()
    out = []
    for token in text.split():
        if token[0] not in "rh" or not token[1:].isdigit():
            raise InvalidParams(f"'{token}' is not a letter")
        out.append((token[0], int(token[1:])))
    return tuple(out)


def adjoint_word(word: Sequence[Letter]) -> Word:
    return tuple(reversed(tuple(word)))


def cyclic_key(word: Word) -> Word:
    """Least rotation of the word; traces are invariant under rotation."""
    if not word:
        return word
    return min(word[k:] + word[:k] for k in range(len(word)))


class AlgElem:
    """Σ c_w · w over words in r_i, h_i (1 ≤ i < m), coefficients in Q(i)(q)."""

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: Optional[Dict[Word, FieldElem]] = None):
        self.m = m
        self.terms: Dict[Word, FieldElem] = {}
        for word, c in (terms or {}).items():
            word = tuple(word)
            for kind, i in word:
                if kind not in ("r", "h"):
                    raise InvalidParams(f"unknown letter '{kind}'")
                if not 1 <= i < m:
                    raise IndexOutOfRange(f"letter {kind}{i} needs index below {m}", letter=f"{kind}{i}", m=m)
            c = c if isinstance(c, FieldElem) else FieldElem(c)
            if c:
                self.terms[word] = self.terms[word] + c if word in self.terms else c
        self.terms = {w: c for w, c in self.terms.items() if c}

    @classmethod
    def identity(cls, m: int) -> "AlgElem":
        return cls(m, {(): FieldElem(1)})

    @classmethod
    def word(cls, word: Sequence[Letter], m: int) -> "AlgElem":
        return cls(m, {tuple(word): FieldElem(1)})

    @classmethod
    def letter(cls, kind: str, i: int, m: int) -> "AlgElem":
        return cls(m, {((kind, i),): FieldElem(1)})

    @classmethod
    def alpha(cls, i: int, m: int) -> "AlgElem":
        """α_i = a + b·h_i + D·r_i, the positive crossing."""
        p = params()
        return cls(m, {(): p.a, (("h", i),): p.b, (("r", i),): p.D})

    @classmethod
    def beta(cls, i: int, m: int) -> "AlgElem":
        """β_i = α_i^-1 = -a + b·h_i + D·r_i."""
        p = params()
        return cls(m, {(): -p.a, (("h", i),): p.b, (("r", i),): p.D})

    def _check(self, other: "AlgElem") -> None:
        if other.m != self.m:
            raise InvalidParams(f"{self.m}-box and {other.m}-box elements do not combine")

    def __add__(self, other: "AlgElem") -> "AlgElem":
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms[w] + c if w in terms else c
        return AlgElem(self.m, terms)

    def __sub__(self, other: "AlgElem") -> "AlgElem":
        return self + other.scale(-1)

    def __neg__(self) -> "AlgElem":
        return self.scale(-1)

    def scale(self, c: Union[FieldElem, int]) -> "AlgElem":
        return AlgElem(self.m, {w: v * c for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgElem):
            self._check(other)
            terms: Dict[Word, FieldElem] = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    terms[w] = terms[w] + c1 * c2 if w in terms else c1 * c2
            return AlgElem(self.m, terms)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def adjoint(self) -> "AlgElem":
        """Reverse every word and conjugate the coefficients."""
        return AlgElem(self.m, {adjoint_word(w): c.conj() for w, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
            coeff = "" if c == 1 else f"({c})"
            body = " ".join(f"{k}{i}" for k, i in w)
            parts.append(f"{coeff} {body}".strip() if body else (coeff or "1"))
        return " + ".join(parts)

    def __repr__(self):
        return f"AlgElem(m={self.m}, {self})"


# --- canonical Brauer words ------------------------------------------------

def _identity_matching(m: int) -> Tuple[Tuple[int, int], ...]:
    return tuple((j, m + j) for j in range(m))


def _apply_letter(matching: Tuple[Tuple[int, int], ...], letter: Letter, m: int):
    """Stack a letter on top of a Brauer diagram; None when a closed loop appears."""
    partner = {}
    for a, b in matching:
        partner[a], partner[b] = b, a
    kind, i = letter
    left, right = m + i - 1, m + i
    if kind == "r":
        new = dict(partner)
        a, b = partner[left], partner[right]
        new[left], new[right] = b, a
        new[b], new[a] = left, right
        if a == right:
            new[left], new[right] = right, left
    else:
        a, b = partner[left], partner[right]
        if a == right:
            return None
        new = dict(partner)
        new[a], new[b] = b, a
        new[left], new[right] = right, left
    return tuple(sorted({tuple(sorted((x, y))) for x, y in new.items()}))


@lru_cache(maxsize=None)
def canonical_words(m: int) -> Tuple[Word, ...]:
    """One word per Brauer diagram on m strands: fewest r letters, then shortest, then least."""
    if m < 1:
        raise InvalidParams(f"box size must be positive, got {m}")
    letters = [("h", i) for i in range(1, m)] + [("r", i) for i in range(1, m)]
    start = _identity_matching(m)
    best: Dict[Any, Word] = {}
    heap = [(0, 0, (), start)]
    target = 1
    for k in range(1, 2 * m, 2):
        target *= k
    while heap and len(best) < target:
        n_r, length, word, matching = heapq.heappop(heap)
        if matching in best:
            continue
        best[matching] = word
        for letter in letters:
            nxt = _apply_letter(matching, letter, m)
            if nxt is None or nxt in best:
                continue
            heapq.heappush(heap, (n_r + (letter[0] == "r"), length + 1, word + (letter,), nxt))
    words = sorted(best.values(), key=lambda w: (sum(1 for k, _ in w if k == "r"), len(w), w))
    logger.debug(f"{len(words)} canonical words at level {m}")
    return tuple(words)


# --- relations -------------------------------------------------------------

@dataclass
class Relation:
    """lhs = rhs in the m-box space; `sampled` relations use a probe sample."""

    name: str
    m: int
    lhs: AlgElem
    rhs: AlgElem
    sampled: bool = False


def _w(text: str, m: int) -> AlgElem:
    return AlgElem.word(parse_plain_word(text), m)


def yang_baxter_rhs() -> AlgElem:
    """Expansion of r1 r2 r1 - r2 r1 r2 over words with fewer r letters."""
    delta = params().delta
    one, two = FieldElem(1) / delta ** 2, FieldElem(1) / delta
    m = 3
    out = (_w("r1", m) - _w("r2", m)).scale(one)
    linear = (_w("r1 r2 h1", m) + _w("r1 h2 r1", m) + _w("h1 r2 r1", m)
              - _w("r2 r1 h2", m) - _w("r2 h1 r2", m) - _w("h2 r1 r2", m))
    out = out - linear.scale(two)
    tl = _w("r1 h2 h1", m) + _w("h1 h2 r1", m) - _w("r2 h1 h2", m) - _w("h2 h1 r2", m)
    return out - tl.scale(one)


def relation_catalogue(max_boxes: int = 3) -> List[Relation]:
    """The defining relations and their consequences, for m ≤ max_boxes (at most 3)."""
    p = params()
    i = imag_unit()
    rels: List[Relation] = []
    m = 2
    rels += [
        Relation("R^2 = id - e", m, _w("r1 r1", m), AlgElem.identity(m) - _w("h1", m).scale(FieldElem(1) / p.delta)),
        Relation("R uncappable (h R)", m, _w("h1 r1", m), AlgElem(m)),
        Relation("R uncappable (R h)", m, _w("r1 h1", m), AlgElem(m)),
        Relation("h^2 = delta h", m, _w("h1 h1", m), _w("h1", m).scale(p.delta)),
        Relation("alpha beta = 1", m, AlgElem.alpha(1, m) * AlgElem.beta(1, m), AlgElem.identity(m)),
        Relation("Hecke relation", m, AlgElem.alpha(1, m) - AlgElem.beta(1, m), AlgElem.identity(m).scale(p.z)),
        Relation("alpha h = q h", m, AlgElem.alpha(1, m) * _w("h1", m), _w("h1", m).scale(p.q)),
        Relation("h alpha = q h", m, _w("h1", m) * AlgElem.alpha(1, m), _w("h1", m).scale(p.q)),
    ]
    if max_boxes < 3:
        return rels
    m = 3
    a1, a2 = AlgElem.alpha(1, m), AlgElem.alpha(2, m)
    b1, b2 = AlgElem.beta(1, m), AlgElem.beta(2, m)
    h1, h2 = _w("h1", m), _w("h2", m)
    rels += [
        Relation("TL h1 h2 h1 = h1", m, _w("h1 h2 h1", m), h1),
        Relation("TL h2 h1 h2 = h2", m, _w("h2 h1 h2", m), h2),
        Relation("h1 r2 h1 = 0", m, _w("h1 r2 h1", m), AlgElem(m)),
        Relation("h2 r1 h2 = 0", m, _w("h2 r1 h2", m), AlgElem(m)),
        Relation("Yang-Baxter", m, _w("r1 r2 r1", m) - _w("r2 r1 r2", m), yang_baxter_rhs()),
        Relation("braid relation", m, a1 * a2 * a1, a2 * a1 * a2),
        Relation("alpha1 alpha2 h1 = i h2 h1", m, a1 * a2 * h1, _w("h2 h1", m).scale(i)),
        Relation("h2 alpha1 alpha2 = i h2 h1", m, h2 * a1 * a2, _w("h2 h1", m).scale(i)),
        Relation("h1 beta2 beta1 = -i h1 h2", m, h1 * b2 * b1, _w("h1 h2", m).scale(-i)),
        Relation("beta2 beta1 h2 = -i h1 h2", m, b2 * b1 * h2, _w("h1 h2", m).scale(-i)),
        Relation("h1 h2 alpha1 = i h1 beta2", m, _w("h1 h2", m) * a1, (h1 * b2).scale(i)),
        Relation("h1 alpha2 h1 = r h1", m, h1 * a2 * h1, h1.scale(p.r)),
        Relation("h2 alpha1 h2 = r h2", m, h2 * a1 * h2, h2.scale(p.r)),
        Relation("r1 h2 h1 = -i r2 h1", m, _w("r1 h2 h1", m), _w("r2 h1", m).scale(-i)),
        Relation("h1 h2 r1 = i h1 r2", m, _w("h1 h2 r1", m), _w("h1 r2", m).scale(i)),
        Relation("beta1 h2 h1 = -i alpha2 h1", m, b1 * _w("h2 h1", m), (a2 * h1).scale(-i)),
    ]
    return rels


def far_commutation_relations() -> List[Relation]:
    """Letters at distance two commute (m = 4, checked against sampled probes)."""
    m = 4
    rels = []
    for x, y in (("r1", "r3"), ("h1", "h3"), ("r1", "h3"), ("h1", "r3")):
        rels.append(Relation(f"{x} {y} = {y} {x}", m, _w(f"{x} {y}", m), _w(f"{y} {x}", m), sampled=True))
    rels.append(Relation("alpha1 alpha3 = alpha3 alpha1", m, AlgElem.alpha(1, m) * AlgElem.alpha(3, m),
                         AlgElem.alpha(3, m) * AlgElem.alpha(1, m), sampled=True))
    return rels


# --- persistent trace cache ------------------------------------------------

class TraceStore:
    """JSON file of word traces for one specialization under a cache directory."""

    def __init__(self, cache_dir: Path, spec: Specialization):
        self.spec = spec
        safe = spec.key.replace(":", "_").replace("/", "_").replace("*", "").replace("+", "p").replace("=", "")
        self.path = Path(cache_dir) / f"traces-{safe}.json"
        self.entries: Dict[str, Any] = {}
        self.dirty = False
        if self.path.exists():
            try:
                self.entries = json.loads(self.path.read_text())
                logger.info(f"Loaded {len(self.entries)} cached traces from {self.path}")
            except (OSError, json.JSONDecodeError) as e:
                logger.warning(f"Ignoring unreadable trace cache {self.path}: {e}")

    @staticmethod
    def _key(m: int, word: Word) -> str:
        return f"{m}|{word_str(word)}"

    def get(self, m: int, word: Word) -> Optional[Any]:
        found = self.entries.get(self._key(m, word))
        return None if found is None else self.spec.loads(found)

    def put(self, m: int, word: Word, value: Any) -> None:
        self.entries[self._key(m, word)] = self.spec.dumps(value)
        self.dirty = True

    def flush(self) -> None:
        if not self.dirty:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.write_text(json.dumps(self.entries, sort_keys=True))
        self.dirty = False
        logger.info(f"Wrote {len(self.entries)} traces to {self.path}")


def _trace_job(payload: Tuple[str, str, int, Tuple[Word, ...]]) -> List[Any]:
    settings_json, spec_key, m, words = payload
    settings = AppSettings.model_validate_json(settings_json)
    spec = Specialization.from_key(spec_key)
    engine = SkeinEngine(settings, spec, use_store=False)
    return [spec.dumps(engine.trace_word_raw(w, m)) for w in words]


class SkeinEngine:
    """Evaluates closed diagrams and traces in one specialization, with caches."""

    def __init__(self, settings: AppSettings, spec: Optional[Specialization] = None, use_store: bool = True):
        """Initialize the engine.

        Args:
            settings: Application settings
            spec: Where scalars live (generic q by default)
            use_store: Whether to read and write the on-disk trace cache
        """
        self.settings = settings
        self.spec = spec or Specialization.generic()
        self.homfly = HomflyEvaluator(self.spec, settings.skein.cache_size)
        self.zeta_cache: Dict[Any, Any] = {}
        self.trace_cache: Dict[Tuple[int, Word], Any] = {}
        self.full_traces: Dict[Tuple[int, Word], Any] = {}
        self.simplify_cache: Dict[Word, Dict[Word, Any]] = {}
        cache_dir = settings.runtime.cache_dir or os.environ.get("PLANAR_CACHE_DIR")
        self.store = TraceStore(Path(cache_dir), self.spec) if (use_store and cache_dir) else None

    # -- ζ ------------------------------------------------------------------

    def zeta(self, T: ClosedDiagram, choice: Optional[Tuple[Sequence[int], Dict[int, int]]] = None):
        """ζ(T), wrapped for the specialization. `choice` fixes (orientation flips, signs)."""
        if choice is None:
            return self.spec.wrap(self.zeta_raw(T))
        if T.capped_node() is not None:
            return self.spec.wrap(self.spec.zero)
        if not T.nodes:
            return self.spec.wrap(self.spec.power(self.spec.delta, T.circles))
        flips, signs = choice
        return self.spec.wrap(self._resolve(T, flips, signs))

    def zeta_raw(self, T: ClosedDiagram):
        spec = self.spec
        if T.capped_node() is not None:
            return spec.zero
        value = spec.power(spec.delta, T.circles) if T.circles else spec.one
        for piece in T.split():
            value = value * self._zeta_piece(piece)
            if not value:
                return spec.zero
        return value

    def _zeta_piece(self, piece: ClosedDiagram):
        code = piece.canonical_code()
        if code in self.zeta_cache:
            return self.zeta_cache[code]
        if self.settings.skein.zeta_mode == "averaged":
            value = self._averaged(piece)
        else:
            value = self._resolve(piece, None, None)
        if len(self.zeta_cache) >= self.settings.skein.cache_size:
            self.zeta_cache.clear()
        self.zeta_cache[code] = value
        return value

    def choices(self, T: ClosedDiagram) -> List[Tuple[Tuple[int, ...], Dict[int, int]]]:
        """All (orientation flips, sign) choices for T."""
        k = len(T.strand_components())
        nodes = sorted(T.nodes)
        out = []
        for flips in product((0, 1), repeat=k):
            for signs in product((1, -1), repeat=len(nodes)):
                out.append((flips, dict(zip(nodes, signs))))
        return out

    def _resolve(self, T: ClosedDiagram, flips, signs):
        """ζ(T) from HOMFLY of the oriented diagram minus the partially smoothed terms."""
        spec = self.spec
        link = T.orient(flips, signs)
        H = self.homfly.evaluate(link)
        nodes = sorted(T.nodes)
        options = []
        denominator = spec.one
        for v in nodes:
            p, s = link.nodes[v]
            keep = spec.D * spec.ipow(p - T.nodes[v])
            denominator = denominator * keep
            options.append((
                (spec.a if s == 1 else -spec.a, oriented_pairs(p)),
                (spec.b, turnback_pairs(p)),
                (keep, None),
            ))
        total = spec.zero
        for combo in product(range(3), repeat=len(nodes)):
            if all(c == 2 for c in combo):
                continue
            coef = spec.one
            pairings = {}
            for v, c, opts in zip(nodes, combo, options):
                factor, pairs = opts[c]
                coef = coef * factor
                if pairs is not None:
                    pairings[v] = pairs
            sub = T.splice(pairings)
            if sub.capped_node() is not None:
                continue
            total = total + coef * self.zeta_raw(sub)
        return (H - total) / denominator

    def _averaged(self, T: ClosedDiagram):
        spec = self.spec
        choices = self.choices(T)
        total = spec.zero
        for flips, signs in choices:
            total = total + self._resolve(T, flips, signs)
        return total / spec.from_int(len(choices))

    def zeta_averaged(self, T: ClosedDiagram):
        """ζ(T) as the average over every orientation and sign choice."""
        spec = self.spec
        if T.capped_node() is not None:
            return spec.wrap(spec.zero)
        if not T.nodes:
            return spec.wrap(spec.power(spec.delta, T.circles))
        return spec.wrap(self._averaged(T))

    # -- words ----------------------------------------------------------------

    def simplify(self, word: Word) -> Dict[Word, Any]:
        """Local rewriting to a combination of shorter words (raw coefficients)."""
        word = tuple(word)
        if word in self.simplify_cache:
            return self.simplify_cache[word]
        spec = self.spec
        result = None
        for k in range(len(word) - 1):
            x, y = word[k], word[k + 1]
            head, tail = word[:k], word[k + 2:]
            if x[1] == y[1]:
                if x[0] == "r" and y[0] == "r":
                    result = self._combine([(spec.one, head + tail),
                                            (-spec.one / spec.delta, head + (("h", x[1]),) + tail)])
                elif x[0] != y[0]:
                    result = {}
                else:
                    result = self._combine([(spec.delta, head + (x,) + tail)])
                break
            if k + 2 < len(word):
                z = word[k + 2]
                if x[0] == "h" and z == x and abs(y[1] - x[1]) == 1:
                    result = {} if y[0] == "r" else self._combine([(spec.one, head + (x,) + word[k + 3:])])
                    break
        if result is None:
            result = {word: spec.one}
        self.simplify_cache[word] = result
        return result

    def _combine(self, pieces: Iterable[Tuple[Any, Word]]) -> Dict[Word, Any]:
        out: Dict[Word, Any] = {}
        for coef, w in pieces:
            for w2, c2 in self.simplify(w).items():
                out[w2] = out.get(w2, self.spec.zero) + coef * c2
        return {w: c for w, c in out.items() if c}

    def closure_trace_raw(self, word: Word, m: int):
        """ζ of the Markov closure of a single word, cached up to rotation."""
        key = (m, cyclic_key(tuple(word)))
        if key in self.trace_cache:
            return self.trace_cache[key]
        value = self.store.get(*key) if self.store else None
        if value is None:
            value = self.zeta_raw(ClosedDiagram.from_word(key[1], m))
            if self.store:
                self.store.put(*key, value)
        self.trace_cache[key] = value
        return value

    def trace_word_raw(self, word: Word, m: int):
        spec = self.spec
        if not self.settings.skein.simplify_words:
            return self.closure_trace_raw(word, m)
        total = spec.zero
        for w, c in self.simplify(tuple(word)).items():
            total = total + c * self.closure_trace_raw(w, m)
        return total

    def word_trace_raw(self, x: AlgElem):
        total = self.spec.zero
        for w, c in x.terms.items():
            total = total + self.spec.convert(c) * self.trace_word_raw(w, x.m)
        return total

    def word_trace(self, x: AlgElem):
        """Markov trace tr_m(x): close with m right caps and evaluate."""
        return self.spec.wrap(self.word_trace_raw(x))

    def full_trace_raw(self, word: Word, m: int):
        """tr_m of a word after simplification, memoized up to rotation."""
        key = (m, cyclic_key(tuple(word)))
        if key not in self.full_traces:
            self.full_traces[key] = self.trace_word_raw(key[1], m)
        return self.full_traces[key]

    def pair_trace_raw(self, left: Word, right: Word, m: int):
        return self.full_trace_raw(tuple(left) + tuple(right), m)

    def prefetch(self, words: Sequence[Word], m: int, jobs: Optional[int] = None) -> None:
        """Fill the trace memo, in worker processes when jobs > 1."""
        jobs = jobs or self.settings.runtime.jobs
        done = {w for (mm, w) in self.full_traces if mm == m}
        todo = sorted({cyclic_key(tuple(w)) for w in words} - done)
        if jobs <= 1 or len(todo) < 2 * jobs:
            for w in tqdm(todo, disable=not self.settings.runtime.progress, desc="traces"):
                self.full_trace_raw(w, m)
            return
        chunks = [tuple(todo[k::jobs]) for k in range(jobs)]
        payload = self.settings.model_dump_json()
        logger.info(f"Computing {len(todo)} traces in {jobs} worker processes")
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(_trace_job, [(payload, self.spec.key, m, chunk) for chunk in chunks])
            for chunk, values in zip(chunks, results):
                for w, v in zip(chunk, values):
                    self.full_traces[(m, w)] = self.spec.loads(v)

    def gram(self, words: Sequence[Word], m: int, hermitian: bool = True) -> DomainMatrix:
        """G_kl = tr(w_k* · w_l) as an exact matrix over the specialization."""
        n = len(words)
        spec = self.spec
        pairs = [(k, l) for k in range(n) for l in range(n) if not hermitian or l >= k]
        self.prefetch([adjoint_word(words[k]) + tuple(words[l]) for k, l in pairs], m)
        rows = [[spec.zero] * n for _ in range(n)]
        for k, l in tqdm(pairs, disable=not self.settings.runtime.progress, desc="gram"):
            value = self.pair_trace_raw(adjoint_word(words[k]), words[l], m)
            rows[k][l] = value
            if hermitian and l != k:
                rows[l][k] = spec.conj(value)
        logger.info(f"Gram matrix of {n} words at level {m} over {spec.key}")
        return DomainMatrix(rows, (n, n), spec.domain)

    def verify_relation(self, lhs: AlgElem, rhs: AlgElem, m: int,
                        probes: Optional[Sequence[Word]] = None) -> bool:
        """True iff tr((lhs - rhs)·p*) = 0 for every probe word p."""
        return not self.relation_defects(lhs, rhs, m, probes)

    def relation_defects(self, lhs: AlgElem, rhs: AlgElem, m: int,
                         probes: Optional[Sequence[Word]] = None) -> List[Tuple[Word, Any]]:
        if lhs.m != m or rhs.m != m:
            raise InvalidParams(f"relation sides must be {m}-boxes")
        probes = canonical_words(m) if probes is None else probes
        diff = lhs - rhs
        defects = []
        # word rewriting uses the catalogue relations, so pairings are closed unsimplified
        for p in probes:
            value = self.spec.zero
            for w, c in diff.terms.items():
                value = value + self.spec.convert(c) * self.closure_trace_raw(tuple(w) + adjoint_word(p), m)
            if value:
                defects.append((tuple(p), value))
        return defects

    def sample_probes(self, m: int, count: int, seed: Optional[int] = None) -> List[Word]:
        words = canonical_words(m)
        rng = np.random.default_rng(self.settings.runtime.seed if seed is None else seed)
        idx = rng.choice(len(words), size=min(count, len(words)), replace=False)
        return [words[k] for k in sorted(int(j) for j in idx)]

    def check_relation(self, relation: Relation) -> bool:
        probes = None
        if relation.sampled:
            probes = self.sample_probes(relation.m, self.settings.tower.far_commutation_probes)
        ok = self.verify_relation(relation.lhs, relation.rhs, relation.m, probes)
        logger.info(f"Relation '{relation.name}' at m={relation.m}: {'holds' if ok else 'FAILS'}")
        return ok

    def flush(self) -> None:
        if self.store:
            self.store.flush()
