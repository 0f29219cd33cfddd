# src/brauer.py
from __future__ import annotations

import logging
import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from sympy import factorial2

from linalg import Subspace
from scalar import FieldSpec, IndexOutOfRange, PreconditionError, Scalar, SizeMismatch

log = logging.getLogger(__name__)

Gen = Tuple[str, int]  # ("s" | "e", i) con 1 <= i <= n-1


# ---------------- Diagramas ----------------

@dataclass(frozen=True)
class Diagram:
    """Perfect matching on 2n vertices: top row 0..n-1, bottom row n..2n-1."""

    n: int
    pairs: Tuple[Tuple[int, int], ...]

    @classmethod
    def from_pairs(cls, n: int, pairs: Sequence[Tuple[int, int]]) -> "Diagram":
        canon = tuple(sorted((min(a, b), max(a, b)) for a, b in pairs))
        seen = [v for p in canon for v in p]
        if len(canon) != n or sorted(seen) != list(range(2 * n)):
            raise PreconditionError(f"not a perfect matching on {2 * n} vertices: {pairs}")
        return cls(n, canon)

    @classmethod
    def identity(cls, n: int) -> "Diagram":
        return cls(n, tuple((k, n + k) for k in range(n)))

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "Diagram":
        """Top k joined to bottom perm[k]."""
        n = len(perm)
        return cls.from_pairs(n, [(k, n + perm[k]) for k in range(n)])

    @property
    def partner(self) -> List[int]:
        out = [0] * (2 * self.n)
        for a, b in self.pairs:
            out[a], out[b] = b, a
        return out

    def top_arcs(self) -> List[Tuple[int, int]]:
        return [(a, b) for a, b in self.pairs if b < self.n]

    def bottom_arcs(self) -> List[Tuple[int, int]]:
        return [(a - self.n, b - self.n) for a, b in self.pairs if a >= self.n]

    def through_strands(self) -> List[Tuple[int, int]]:
        return [(a, b - self.n) for a, b in self.pairs if a < self.n <= b]

    def num_arcs(self) -> int:
        return len(self.top_arcs())

    def is_permutation(self) -> bool:
        return self.num_arcs() == 0

    def as_permutation(self) -> List[int]:
        perm = [0] * self.n
        for a, b in self.through_strands():
            perm[a] = b
        return perm

    def flip(self) -> "Diagram":
        """Reflection in the horizontal axis (the usual anti-involution)."""
        n = self.n
        sw = lambda v: v + n if v < n else v - n
        return Diagram.from_pairs(n, [(sw(a), sw(b)) for a, b in self.pairs])

    def __str__(self) -> str:
        n = self.n
        lab = lambda v: str(v + 1) if v < n else f"{v - n + 1}'"
        return "[" + ",".join(f"({lab(a)},{lab(b)})" for a, b in self.pairs) + "]"

    @classmethod
    def parse(cls, text: str, n: Optional[int] = None) -> "Diagram":
        """Reads "[(1,2),(1',2')]"; n defaults to half the number of vertices."""
        toks = re.findall(r"\(\s*(\d+'?)\s*,\s*(\d+'?)\s*\)", text)
        size = n if n is not None else len(toks)

        def _v(t: str) -> int:
            if t.endswith("'"):
                return size + int(t[:-1]) - 1
            return int(t) - 1

        return cls.from_pairs(size, [(_v(a), _v(b)) for a, b in toks])


def _check_same(d1: Diagram, d2: Diagram) -> None:
    if d1.n != d2.n:
        raise SizeMismatch(f"diagrams on {d1.n} and {d2.n} strands")


class _UF:
    def __init__(self, n: int):
        self.p = list(range(n))

    def find(self, x: int) -> int:
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a: int, b: int) -> None:
        a, b = self.find(a), self.find(b)
        if a != b:
            self.p[b] = a


def compose(d1: Diagram, d2: Diagram) -> Tuple[Diagram, int]:
    """D1 above D2: returns the composite diagram and the number of interior loops."""
    _check_same(d1, d2)
    n = d1.n
    uf = _UF(3 * n)
    up = lambda v: v if v < n else v  # filas: 0..n-1 arriba, n..2n-1 en medio
    down = lambda v: n + v if v < n else n + v  # D2: arriba -> medio, abajo -> 2n..3n-1
    for a, b in d1.pairs:
        uf.union(up(a), up(b))
    for a, b in d2.pairs:
        uf.union(down(a), down(b))
    outer: Dict[int, List[int]] = {}
    for v in list(range(n)) + list(range(2 * n, 3 * n)):
        outer.setdefault(uf.find(v), []).append(v)
    roots_mid = {uf.find(v) for v in range(n, 2 * n)}
    loops = sum(1 for r in roots_mid if r not in outer)
    pairs = []
    for vs in outer.values():
        a, b = vs
        pairs.append((a if a < n else a - n, b if b < n else b - n))
    return Diagram.from_pairs(n, pairs), loops


# ---------------- enumeración ----------------

def dimension(n: int) -> int:
    if n < 1:
        raise PreconditionError("n must be positive")
    return int(factorial2(2 * n - 1))


def _matchings(vs: Tuple[int, ...]) -> Iterator[List[Tuple[int, int]]]:
    if not vs:
        yield []
        return
    a = vs[0]
    for k in range(1, len(vs)):
        rest = vs[1:k] + vs[k + 1:]
        for m in _matchings(rest):
            yield [(a, vs[k])] + m


@lru_cache(maxsize=16)
def enumerate_diagrams(n: int) -> Tuple[Diagram, ...]:
    if n < 1:
        raise PreconditionError("n must be positive")
    return tuple(Diagram.from_pairs(n, m) for m in _matchings(tuple(range(2 * n))))


@lru_cache(maxsize=16)
def diagram_index(n: int) -> Dict[Diagram, int]:
    return {d: k for k, d in enumerate(enumerate_diagrams(n))}


# ---------------- generadores y palabras ----------------

def generator(kind: str, i: int, n: int) -> Diagram:
    if kind not in ("s", "e"):
        raise PreconditionError(f"unknown generator kind {kind!r}")
    if not 1 <= i <= n - 1:
        raise IndexOutOfRange(f"{kind}_{i} needs 1 <= i <= {n - 1}")
    j = i - 1
    pairs = [(k, n + k) for k in range(n) if k not in (j, j + 1)]
    if kind == "s":
        pairs += [(j, n + j + 1), (j + 1, n + j)]
    else:
        pairs += [(j, j + 1), (n + j, n + j + 1)]
    return Diagram.from_pairs(n, pairs)


def _perm_word(perm: List[int], last_descent: bool = False) -> List[Gen]:
    """Word in the s_j for the permutation diagram of perm (P_p = s_j P_{p o (j j+1)})."""
    p = list(perm)
    word: List[Gen] = []
    while True:
        desc = [j for j in range(len(p) - 1) if p[j] > p[j + 1]]
        if not desc:
            return word
        j = desc[-1] if last_descent else desc[0]
        word.append(("s", j + 1))
        p[j], p[j + 1] = p[j + 1], p[j]


def factorize(d: Diagram, anchor: str = "left", last_descent: bool = False) -> List[Gen]:
    """Generator word for d as sigma * E * tau with E a product of disjoint e's.

    anchor="left" puts the cups of E at (1,2),(3,4),...; anchor="right" at the right end.
    """
    n = d.n
    tops, bots, thr = d.top_arcs(), d.bottom_arcs(), d.through_strands()
    f = len(tops)
    if anchor == "left":
        anchors = [(2 * r, 2 * r + 1) for r in range(f)]
    else:
        anchors = [(n - 2 - 2 * r, n - 1 - 2 * r) for r in range(f)]
    used = {v for a in anchors for v in a}
    free = [c for c in range(n) if c not in used]
    sigma = [0] * n
    tau = [0] * n
    for (k, l), (a, b) in zip(tops, anchors):
        sigma[k], sigma[l] = a, b
    for (k, l), (a, b) in zip(bots, anchors):
        tau[a], tau[b] = k, l
    for (k, b), c in zip(sorted(thr), free):
        sigma[k] = c
        tau[c] = b
    word = _perm_word(sigma, last_descent)
    word += [("e", a + 1) for a, _ in anchors]
    word += _perm_word(tau, last_descent)
    return word


# ---------------- BrauerElt ----------------

class BrauerElt:
    """Linear combination of n-diagrams in the Brauer algebra with parameter -2m."""

    def __init__(self, n: int, m: int, fs: FieldSpec, terms: Optional[Dict[Diagram, Any]] = None):
        if m < 1:
            raise PreconditionError("m must be a positive integer")
        self.n = n
        self.m = m
        self.field = fs
        self.terms: Dict[Diagram, Any] = {}
        for d, c in (terms or {}).items():
            if d.n != n:
                raise SizeMismatch(f"diagram on {d.n} strands in an element on {n}")
            if c:
                self.terms[d] = c

    @property
    def delta(self):
        return self.field.domain(-2 * self.m)

    @classmethod
    def of(cls, d: Diagram, m: int, fs: FieldSpec, coeff: Any = 1) -> "BrauerElt":
        return cls(d.n, m, fs, {d: fs.domain(coeff)})

    @classmethod
    def one(cls, n: int, m: int, fs: FieldSpec) -> "BrauerElt":
        return cls.of(Diagram.identity(n), m, fs)

    def _check(self, other: "BrauerElt") -> None:
        if (self.n, self.m, self.field) != (other.n, other.m, other.field):
            raise SizeMismatch("elements of different Brauer algebras")

    def __add__(self, other: "BrauerElt") -> "BrauerElt":
        self._check(other)
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out.get(d, self.field.domain.zero) + c
        return BrauerElt(self.n, self.m, self.field, out)

    def __neg__(self) -> "BrauerElt":
        return BrauerElt(self.n, self.m, self.field, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other: "BrauerElt") -> "BrauerElt":
        return self + (-other)

    def scale(self, c: Any) -> "BrauerElt":
        a = self.field.domain(c) if isinstance(c, int) else c
        return BrauerElt(self.n, self.m, self.field, {d: a * x for d, x in self.terms.items()})

    def __mul__(self, other: "BrauerElt") -> "BrauerElt":
        self._check(other)
        out: Dict[Diagram, Any] = {}
        delta = self.delta
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                d, loops = compose(d1, d2)
                c = c1 * c2 * delta ** loops
                out[d] = out.get(d, self.field.domain.zero) + c
        return BrauerElt(self.n, self.m, self.field, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BrauerElt):
            return NotImplemented
        return (self.n, self.m, self.field) == (other.n, other.m, other.field) and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, d: Diagram) -> Scalar:
        return Scalar.from_elem(self.field, self.terms.get(d, self.field.domain.zero))

    def coords(self) -> Dict[int, Any]:
        idx = diagram_index(self.n)
        return {idx[d]: c for d, c in self.terms.items()}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({Scalar.from_elem(self.field, c)})*{d}" for d, c in sorted(self.terms.items(), key=lambda t: t[0].pairs))


def multiply(d1: Diagram, d2: Diagram, m: int, fs: Optional[FieldSpec] = None) -> Tuple[Diagram, int, BrauerElt]:
    """D1 . D2 = (-2m)^loops * (D1 o D2)."""
    fs = fs or FieldSpec.rationals()
    d, loops = compose(d1, d2)
    return d, loops, BrauerElt.of(d, m, fs, (-2 * m) ** loops)


def evaluate_word(word: Sequence[Gen], n: int, m: int, fs: Optional[FieldSpec] = None) -> BrauerElt:
    fs = fs or FieldSpec.rationals()
    out = BrauerElt.one(n, m, fs)
    for kind, i in word:
        out = out * BrauerElt.of(generator(kind, i, n), m, fs)
    return out


# ---------------- relaciones ----------------

@dataclass(frozen=True)
class Relation:
    family: str
    lhs: Tuple[Gen, ...]
    rhs: Tuple[Gen, ...]
    delta_power: int = 0  # rhs va multiplicado por (-2m)^delta_power


def defining_relations(n: int) -> List[Relation]:
    rels: List[Relation] = []
    s = lambda i: ("s", i)
    e = lambda i: ("e", i)
    for i in range(1, n):
        rels.append(Relation("s_i^2=1", (s(i), s(i)), ()))
        rels.append(Relation("e_i^2=(-2m)e_i", (e(i), e(i)), (e(i),), 1))
        rels.append(Relation("e_is_i=e_i", (e(i), s(i)), (e(i),)))
        rels.append(Relation("s_ie_i=e_i", (s(i), e(i)), (e(i),)))
    for i in range(1, n):
        for j in range(i + 2, n):
            rels.append(Relation("s_is_j=s_js_i", (s(i), s(j)), (s(j), s(i))))
            rels.append(Relation("s_ie_j=e_js_i", (s(i), e(j)), (e(j), s(i))))
            rels.append(Relation("s_je_i=e_is_j", (s(j), e(i)), (e(i), s(j))))
            rels.append(Relation("e_ie_j=e_je_i", (e(i), e(j)), (e(j), e(i))))
    for i in range(1, n - 1):
        rels.append(Relation("s_is_{i+1}s_i=s_{i+1}s_is_{i+1}", (s(i), s(i + 1), s(i)), (s(i + 1), s(i), s(i + 1))))
        rels.append(Relation("e_ie_{i+1}e_i=e_i", (e(i), e(i + 1), e(i)), (e(i),)))
        rels.append(Relation("e_{i+1}e_ie_{i+1}=e_{i+1}", (e(i + 1), e(i), e(i + 1)), (e(i + 1),)))
        rels.append(Relation("s_ie_{i+1}e_i=s_{i+1}e_i", (s(i), e(i + 1), e(i)), (s(i + 1), e(i))))
        rels.append(Relation("e_{i+1}e_is_{i+1}=e_{i+1}s_i", (e(i + 1), e(i), s(i + 1)), (e(i + 1), s(i))))
    return rels


def check_relations(n: int, m: int, fs: Optional[FieldSpec] = None) -> List[Tuple[Relation, bool]]:
    fs = fs or FieldSpec.rationals()
    out = []
    for rel in defining_relations(n):
        lhs = evaluate_word(rel.lhs, n, m, fs)
        rhs = evaluate_word(rel.rhs, n, m, fs).scale((-2 * m) ** rel.delta_power)
        out.append((rel, lhs == rhs))
    return out


# ---------------- ideales ----------------

@dataclass
class BrauerIdeal:
    n: int
    f: int
    diagrams: Tuple[Diagram, ...]
    span: Subspace = field(repr=False)

    @property
    def dim(self) -> int:
        return self.span.dim


def ideal_generator(n: int, f: int) -> List[Gen]:
    return [("e", 2 * r + 1) for r in range(f)]


def ideal_Bf(n: int, f: int, m: int = 1, fs: Optional[FieldSpec] = None) -> BrauerIdeal:
    """Two-sided ideal generated by e_1 e_3 ... e_{2f-1}, saturated under generator multiplication."""
    fs = fs or FieldSpec.rationals()
    top = n // 2 + 1
    if not 0 <= f <= top:
        raise IndexOutOfRange(f"f must lie in 0..{top}")
    N = dimension(n)
    idx = diagram_index(n)
    if f == top:
        return BrauerIdeal(n, f, (), Subspace.zero(fs, N))
    start = evaluate_word(ideal_generator(n, f), n, m, fs)
    gens = [generator(k, i, n) for k in ("s", "e") for i in range(1, n)]
    delta = fs.domain(-2 * m)
    seen = set(start.terms)
    queue = deque(seen)
    while queue:
        d = queue.popleft()
        for g in gens:
            for a, b in ((d, g), (g, d)):
                c, loops = compose(a, b)
                if loops and not delta:
                    continue
                if c not in seen:
                    seen.add(c)
                    queue.append(c)
    diags = tuple(sorted(seen, key=lambda d: idx[d]))
    one = fs.domain.one
    span = Subspace.span(fs, N, [{idx[d]: one} for d in diags])
    log.debug("ideal B_%d^(%d): dim %d of %d", n, f, span.dim, N)
    return BrauerIdeal(n, f, diags, span)


def ideal_by_arcs(n: int, f: int, fs: Optional[FieldSpec] = None) -> Subspace:
    """Span of the diagrams with at least f arcs in each row."""
    fs = fs or FieldSpec.rationals()
    idx = diagram_index(n)
    one = fs.domain.one
    return Subspace.span(fs, dimension(n), [{idx[d]: one} for d in enumerate_diagrams(n) if d.num_arcs() >= f])


def is_two_sided_ideal(ideal: BrauerIdeal, m: int = 1, fs: Optional[FieldSpec] = None) -> bool:
    fs = fs or FieldSpec.rationals()
    n = ideal.n
    gens = [BrauerElt.of(generator(k, i, n), m, fs) for k in ("s", "e") for i in range(1, n)]
    for d in ideal.diagrams:
        x = BrauerElt.of(d, m, fs)
        for g in gens:
            for y in (x * g, g * x):
                if not ideal.span.contains(y.coords()):
                    return False
    return True
