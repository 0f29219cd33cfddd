# src/spsw.py
from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy import Rational

import brauer
import config
from brauer import Diagram, Gen
from fdalg import Algebra, DomDimResult, dominant_dimension_at_least_2
from linalg import Mat, QuotientSpace, Subspace, Vec, commutant, kernel_vectors, span_of_matrices
from scalar import (
    CapExceeded,
    CharTooSmall,
    FieldSpec,
    IndexOutOfRange,
    PreconditionError,
    SizeMismatch,
)

log = logging.getLogger(__name__)


# ---------------- espacio simpléctico ----------------

@dataclass(frozen=True)
class SymplecticSpace:
    """V = K^{2m} with <v_i, v_i'> = 1 = -<v_i', v_i> for i <= m, where i' = 2m+1-i."""

    m: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise PreconditionError("m must be a positive integer")

    @property
    def dim(self) -> int:
        return 2 * self.m

    def dual_index(self, i: int) -> int:
        return 2 * self.m + 1 - i

    def dual_sign(self, i: int) -> int:
        """v_i^* = dual_sign(i) * v_{i'}."""
        return 1 if i <= self.m else -1

    def epsilon(self, i: int, j: int) -> int:
        if j != self.dual_index(i):
            return 0
        return 1 if i < j else -1

    def form(self, fs: FieldSpec) -> Mat:
        d = self.dim
        return Mat.from_entries(fs, (d, d), {(i - 1, j - 1): self.epsilon(i, j)
                                             for i in range(1, d + 1) for j in range(1, d + 1)
                                             if self.epsilon(i, j)})

    def pairing(self, i: int, j: int) -> int:
        """<v_i, v_j^*>."""
        return self.dual_sign(j) * self.epsilon(i, self.dual_index(j))

    def letter_weight(self, i: int) -> Tuple[int, ...]:
        w = [0] * self.m
        if i <= self.m:
            w[i - 1] = 1
        else:
            w[self.dual_index(i) - 1] = -1
        return tuple(w)


class TensorSpace:
    """V^{(x)n} with basis words (i_1..i_n) in lexicographic (mixed-radix) order.

    Matrices use the column convention: column x holds the coordinates of
    (basis word x) . g, so a word g_1...g_k acts by M_{g_k} ... M_{g_1}.
    """

    def __init__(self, space: SymplecticSpace, n: int, fs: FieldSpec):
        if n < 1:
            raise PreconditionError("n must be positive")
        self.space = space
        self.n = n
        self.field = fs
        self.dim = space.dim ** n
        self._gen: Dict[Gen, Mat] = {}

    @property
    def m(self) -> int:
        return self.space.m

    def word(self, x: int) -> Tuple[int, ...]:
        d = self.space.dim
        out = []
        for _ in range(self.n):
            x, r = divmod(x, d)
            out.append(r + 1)
        return tuple(reversed(out))

    def index(self, w: Sequence[int]) -> int:
        d = self.space.dim
        x = 0
        for i in w:
            x = x * d + (i - 1)
        return x

    def weight(self, x: int) -> Tuple[int, ...]:
        acc = [0] * self.m
        for i in self.word(x):
            for k, c in enumerate(self.space.letter_weight(i)):
                acc[k] += c
        return tuple(acc)

    # ---------- acción de 𝔅_n ----------
    def generator_matrix(self, kind: str, i: int) -> Mat:
        if not 1 <= i <= self.n - 1:
            raise IndexOutOfRange(f"{kind}_{i} needs 1 <= i <= {self.n - 1}")
        key = (kind, i)
        if key not in self._gen:
            self._gen[key] = self._build(kind, i)
        return self._gen[key]

    def _build(self, kind: str, i: int) -> Mat:
        fs, V = self.field, self.space
        j = i - 1
        entries: Dict[Tuple[int, int], int] = {}
        for x in range(self.dim):
            w = list(self.word(x))
            if kind == "s":
                w[j], w[j + 1] = w[j + 1], w[j]
                entries[(self.index(w), x)] = -1
                continue
            eps = V.epsilon(w[j], w[j + 1])
            if not eps:
                continue
            for k in range(1, V.dim + 1):
                w[j], w[j + 1] = V.dual_index(k), k
                y = self.index(w)
                entries[(y, x)] = entries.get((y, x), 0) + eps * V.dual_sign(k)
        return Mat.from_entries(fs, (self.dim, self.dim), {k: v for k, v in entries.items() if v})

    def generator_matrices(self) -> List[Mat]:
        return [self.generator_matrix(k, i) for k in ("s", "e") for i in range(1, self.n)]

    def word_matrix(self, word: Sequence[Gen]) -> Mat:
        M = Mat.identity(self.field, self.dim)
        for kind, i in word:
            M = self.generator_matrix(kind, i) @ M
        return M

    def action_matrix(self, g: Any) -> Mat:
        """Matrix of a Diagram, a generator ("s"|"e", i) or a generator word."""
        if isinstance(g, Diagram):
            if g.n != self.n:
                raise SizeMismatch(f"diagram on {g.n} strands acting on V^(x){self.n}")
            return self.word_matrix(brauer.factorize(g))
        if isinstance(g, tuple) and len(g) == 2 and isinstance(g[0], str):
            return self.generator_matrix(*g)
        return self.word_matrix(list(g))

    def weight_projections(self) -> List[Mat]:
        groups: Dict[Tuple[int, ...], List[int]] = {}
        for x in range(self.dim):
            groups.setdefault(self.weight(x), []).append(x)
        one = self.field.domain.one
        return [Mat.from_dod(self.field, (self.dim, self.dim), {x: {x: one} for x in xs})
                for _, xs in sorted(groups.items())]


def tensor_space(m: int, n: int, fs: Optional[FieldSpec] = None, dim_cap: Optional[int] = None) -> TensorSpace:
    fs = fs or FieldSpec.rationals()
    cap = dim_cap if dim_cap is not None else config.dim_cap()
    if (2 * m) ** n > cap:
        raise CapExceeded(f"(2m)^n = {(2 * m) ** n} exceeds the dimension cap {cap}")
    return TensorSpace(SymplecticSpace(m), n, fs)


def representation_is_homomorphism_check(n: int, m: int, fs: Optional[FieldSpec] = None) -> bool:
    """Every defining Brauer relation holds between the action matrices."""
    T = tensor_space(m, n, fs)
    ok = True
    for rel in brauer.defining_relations(n):
        lhs = T.word_matrix(rel.lhs)
        rhs = T.word_matrix(rel.rhs).scale((-2 * m) ** rel.delta_power)
        if lhs != rhs:
            log.warning("[spsw] relation %s fails on V^(x)%d (m=%d)", rel.family, n, m)
            ok = False
    return ok


def factorizations_agree(T: TensorSpace, d: Diagram) -> bool:
    a = T.word_matrix(brauer.factorize(d, anchor="left"))
    b = T.word_matrix(brauer.factorize(d, anchor="right", last_descent=True))
    return a == b


# ---------------- álgebra de Schur simpléctica ----------------

@dataclass
class SchurAlgebraRep:
    tensorspace: TensorSpace
    brauer_gen_mats: List[Mat] = field(repr=False)
    Ssy: Algebra = field(repr=False)

    @property
    def dim(self) -> int:
        return self.Ssy.dim

    def module(self):
        return self.Ssy.natural_module()


def schur_algebra(m: int, n: int, fs: Optional[FieldSpec] = None, dim_cap: Optional[int] = None) -> SchurAlgebraRep:
    """End_{B_n}(V^(x)n) as the commutant of the Brauer generator matrices."""
    T = tensor_space(m, n, fs, dim_cap)
    gens = T.generator_matrices()
    if gens:
        basis = commutant(gens)
    else:
        basis = [Mat.unflatten(T.field, (T.dim, T.dim), {i * T.dim + j: T.field.domain.one})
                 for i in range(T.dim) for j in range(T.dim)]
    A = Algebra.from_matrices(T.field, basis, name=f"Ssy({m},{n})",
                              extra_generators=T.weight_projections(), check=False)
    log.info("[spsw] S^sy(%d,%d) over %s: dim %d on V^(x)n of dim %d", m, n, T.field, A.dim, T.dim)
    return SchurAlgebraRep(T, gens, A)


def schur_dominant_dimension(rep: SchurAlgebraRep) -> DomDimResult:
    return dominant_dimension_at_least_2(rep.Ssy, rep.module(), centralizer_gens=rep.brauer_gen_mats or None)


@dataclass
class PhiResult:
    rank: int
    expected: int

    @property
    def injective(self) -> bool:
        return self.rank == self.expected


def phi_injectivity_check(m: int, n: int, fs: Optional[FieldSpec] = None, dim_cap: Optional[int] = None) -> PhiResult:
    """Rank of the map from the diagram basis of B_n(-2m) to End_K(V^(x)n)."""
    T = tensor_space(m, n, fs, dim_cap)
    diags = brauer.enumerate_diagrams(n)
    span = Subspace.span(T.field, T.dim * T.dim, [T.action_matrix(d).flatten() for d in diags])
    log.info("[spsw] phi rank %d of %d at (m,n)=(%d,%d)", span.dim, len(diags), m, n)
    return PhiResult(span.dim, len(diags))


# ---------------- tensores armónicos ----------------

def _closure(fs: FieldSpec, N: int, vecs: Sequence[Vec], mats: Sequence[Mat]) -> Subspace:
    W = Subspace.span(fs, N, vecs)
    frontier = W.vectors()
    while frontier:
        new = []
        for v in frontier:
            for g in mats:
                w = g.apply(v)
                if w and W.reduce(w):
                    W = Subspace.span(fs, N, W.vectors() + [w])
                    new.append(w)
        frontier = new
    return W


def ideal_image(T: TensorSpace, f: int) -> Subspace:
    """W_f = V^(x)n . B^(f)."""
    top = T.n // 2 + 1
    if not 0 <= f <= top:
        raise IndexOutOfRange(f"f must lie in 0..{top}")
    if f == top:
        return Subspace.zero(T.field, T.dim)
    E = T.word_matrix(brauer.ideal_generator(T.n, f))
    cols = [E.column(j) for j in range(T.dim)]
    return _closure(T.field, T.dim, cols, T.generator_matrices())


def ideal_annihilator(T: TensorSpace, f: int) -> Subspace:
    """H_f^* = {x : x . B^(f) = 0}."""
    top = T.n // 2 + 1
    if not 0 <= f <= top:
        raise IndexOutOfRange(f"f must lie in 0..{top}")
    if f == top:
        return Subspace.full(T.field, T.dim)
    E = T.word_matrix(brauer.ideal_generator(T.n, f))
    # funcionales: filas de M_E, cerradas bajo phi -> phi M_g
    rows = _closure(T.field, T.dim, [E.row(i) for i in range(T.dim)],
                    [g.T for g in T.generator_matrices()])
    if rows.dim == 0:
        return Subspace.full(T.field, T.dim)
    return Subspace.span(T.field, T.dim, kernel_vectors(rows.basis))


@dataclass
class HarmonicSpaces:
    m: int
    n: int
    f: int
    W: Subspace = field(repr=False)
    Q: QuotientSpace = field(repr=False)
    H: Subspace = field(repr=False)
    HT: Subspace = field(repr=False)

    @property
    def dims(self) -> Dict[str, int]:
        return {"W": self.W.dim, "Q": self.Q.dim, "H": self.H.dim, "HT": self.HT.dim}


def subquotient_spaces(m: int, n: int, f: int, fs: Optional[FieldSpec] = None,
                       T: Optional[TensorSpace] = None) -> HarmonicSpaces:
    T = T or tensor_space(m, n, fs)
    if not 0 <= f <= n // 2:
        raise IndexOutOfRange(f"f must lie in 0..{n // 2}")
    W = ideal_image(T, f)
    H = ideal_annihilator(T, f)
    HT = W & ideal_annihilator(T, f + 1)
    log.debug("[spsw] (m,n,f)=(%d,%d,%d): W=%d H=%d HT=%d", m, n, f, W.dim, H.dim, HT.dim)
    return HarmonicSpaces(m, n, f, W, QuotientSpace(W), H, HT)


def layer_dimension(m: int, n: int, f: int, fs: Optional[FieldSpec] = None) -> int:
    """dim V^(x)n B^(f) / V^(x)n B^(f+1)."""
    T = tensor_space(m, n, fs)
    return ideal_image(T, f).dim - ideal_image(T, f + 1).dim


def char_bound(m: int, n: int, f: int) -> int:
    return min(n - f + m, n)


def _check_char(fs: FieldSpec, m: int, n: int, f: int) -> None:
    p = fs.characteristic
    if p and p <= char_bound(m, n, f):
        raise CharTooSmall(f"char {p} <= min(n-f+m, n) = {char_bound(m, n, f)}")


@dataclass
class DecompositionResult:
    dim_W: int
    dim_H: int
    dim_meet: int
    ambient: int

    @property
    def holds(self) -> bool:
        return self.dim_meet == 0 and self.dim_W + self.dim_H == self.ambient


def check_harmonic_decomposition(m: int, n: int, f: int, fs: Optional[FieldSpec] = None) -> DecompositionResult:
    """V^(x)n = W_f (+) H_f^* when the characteristic is large enough."""
    fs = fs or FieldSpec.rationals()
    _check_char(fs, m, n, f)
    sp = subquotient_spaces(m, n, f, fs)
    meet = sp.W & sp.H
    return DecompositionResult(sp.W.dim, sp.H.dim, meet.dim, sp.W.ambient_dim)


# ---------------- S_f^sy y el teorema principal ----------------

@dataclass
class QuotientAction:
    spaces: HarmonicSpaces
    rep: SchurAlgebraRep
    sf_basis: List[Mat] = field(repr=False)
    brauer_induced: List[Mat] = field(repr=False)
    weight_induced: List[Mat] = field(repr=False)

    @property
    def dim_Q(self) -> int:
        return self.spaces.Q.dim


def quotient_action(m: int, n: int, f: int, fs: Optional[FieldSpec] = None,
                    rep: Optional[SchurAlgebraRep] = None) -> QuotientAction:
    """pi_f(S^sy) and the induced B_n action on Q_f = V^(x)n / W_f."""
    rep = rep or schur_algebra(m, n, fs)
    T = rep.tensorspace
    sp = subquotient_spaces(m, n, f, T.field, T)
    Q = sp.Q
    if Q.dim == 0:
        return QuotientAction(sp, rep, [], [], [])
    P, S = Q.projection_matrix(), Q.section_matrix()
    W = sp.W
    for g in rep.brauer_gen_mats:
        for v in W.vectors():
            if not W.contains(g.apply(v)):
                raise PreconditionError("W_f is not stable under the Brauer action")
    images = [P @ X @ S for X in rep.Ssy.basis_mats]
    nonzero = [Y for Y in images if not Y.is_zero()]
    span = span_of_matrices(nonzero) if nonzero else None
    sf = [Mat.unflatten(T.field, (Q.dim, Q.dim), v) for v in span.vectors()] if span else []
    brauer_ind = [P @ g @ S for g in rep.brauer_gen_mats]
    weight_ind = [P @ D @ S for D in rep.Ssy.extra_generators]
    weight_ind = [D for D in weight_ind if not D.is_zero()]
    return QuotientAction(sp, rep, sf, brauer_ind, weight_ind)


def _commutant_on_quotient(qa: QuotientAction) -> List[Mat]:
    fs = qa.rep.tensorspace.field
    if qa.brauer_induced:
        return commutant(qa.brauer_induced)
    d = qa.dim_Q
    return [Mat.from_dod(fs, (d, d), {i: {j: fs.domain.one}}) for i in range(d) for j in range(d)]


def check_commdiag(qa: QuotientAction) -> bool:
    """pi_f(S^sy) lies in End_{B_n}(Q_f)."""
    return all(X @ g == g @ X for X in qa.sf_basis for g in qa.brauer_induced)


def quotient_algebra(qa: QuotientAction) -> Algebra:
    fs = qa.rep.tensorspace.field
    return Algebra.from_matrices(fs, qa.sf_basis, name=f"Ssy_{qa.spaces.f}({qa.spaces.m},{qa.spaces.n})",
                                 extra_generators=qa.weight_induced, check=False)


def check_delta_injective(qa: QuotientAction) -> bool:
    """S_f^sy -> End_K(Q_f) = Q_f^{dim Q_f} is injective."""
    if not qa.sf_basis:
        return True
    A = quotient_algebra(qa)
    res = dominant_dimension_at_least_2(A, A.natural_module(), centralizer_gens=_centralizer_gens(A, qa))
    return res.delta.rank() == A.dim


def _centralizer_gens(A: Algebra, qa: QuotientAction) -> Optional[List[Mat]]:
    if not qa.brauer_induced:
        return None
    nonzero = [g for g in qa.brauer_induced if not g.is_zero()]
    ident = Mat.identity(A.field, qa.dim_Q)
    return nonzero or [ident]


@dataclass
class PhiFResult:
    surjective: bool
    ideal_acts_trivially: bool
    dim_image: int
    dim_end: int


def check_phi_f_surjective(qa: QuotientAction) -> PhiFResult:
    """B_n -> End_{S_f}(Q_f) is onto and B^(f) acts as zero on Q_f."""
    sp, T = qa.spaces, qa.rep.tensorspace
    if qa.dim_Q == 0:
        return PhiFResult(True, True, 0, 0)
    Q = sp.Q
    P, S = Q.projection_matrix(), Q.section_matrix()
    n = T.n
    diags = brauer.enumerate_diagrams(n)
    images = [P @ T.action_matrix(d) @ S for d in diags]
    trivial = all(Y.is_zero() for d, Y in zip(diags, images) if d.num_arcs() >= sp.f)
    nonzero = [Y for Y in images if not Y.is_zero()]
    img = span_of_matrices(nonzero) if nonzero else Subspace.zero(T.field, qa.dim_Q ** 2)
    end = commutant(qa.weight_induced + qa.sf_basis) if qa.sf_basis else []
    dim_end = len(end)
    ok = dim_end == img.dim and all(img.contains(X.flatten()) for X in end)
    return PhiFResult(ok, trivial, img.dim, dim_end)


@dataclass
class QuotientReport:
    m: int
    n: int
    f: int
    field: str
    dim_tensor: int
    dim_ssy: int
    dim_W: int
    dim_Q: int
    dim_sf: int
    dim_end: int
    commdiag: bool
    equal: bool
    delta_injective: bool
    domdim: Optional[DomDimResult] = field(default=None, repr=False)

    @property
    def domdim_holds(self) -> bool:
        return self.domdim is None or (self.domdim.holds and self.domdim.exact)

    @property
    def passed(self) -> bool:
        return self.commdiag and self.equal and self.delta_injective and self.domdim_holds

    def as_dict(self) -> Dict[str, Any]:
        out = {k: getattr(self, k) for k in (
            "m", "n", "f", "field", "dim_tensor", "dim_ssy", "dim_W", "dim_Q", "dim_sf", "dim_end",
            "commdiag", "equal", "delta_injective")}
        out["domdim"] = self.domdim_holds
        out["passed"] = self.passed
        return out


def check_quotient_centralizer(m: int, n: int, f: int, fs: Optional[FieldSpec] = None,
                               rep: Optional[SchurAlgebraRep] = None) -> QuotientReport:
    """S_f^sy equals End_{B_n}(Q_f), with an exact 0 -> S_f -> Q_f^r -> Q_f^s witness."""
    fs = fs or FieldSpec.rationals()
    _check_char(fs, m, n, f)
    qa = quotient_action(m, n, f, fs, rep)
    end = _commutant_on_quotient(qa)
    sf_span = span_of_matrices(qa.sf_basis) if qa.sf_basis else None
    end_span = span_of_matrices(end) if end else None
    commdiag = check_commdiag(qa)
    if sf_span is None or end_span is None:
        equal = sf_span is None and end_span is None
    else:
        equal = sf_span == end_span
    domdim = None
    delta_inj = True
    if qa.sf_basis:
        A = quotient_algebra(qa)
        domdim = dominant_dimension_at_least_2(A, A.natural_module(), centralizer_gens=_centralizer_gens(A, qa))
        delta_inj = domdim.delta.rank() == A.dim
    rep = qa.rep
    report = QuotientReport(
        m, n, f, str(fs), rep.tensorspace.dim, rep.dim, qa.spaces.W.dim, qa.dim_Q,
        len(qa.sf_basis), len(end), commdiag, equal, delta_inj, domdim,
    )
    log.info("[spsw] quotient (m,n,f)=(%d,%d,%d): dim S_f=%d, dim End=%d, passed=%s",
             m, n, f, report.dim_sf, report.dim_end, report.passed)
    return report


# ---------------- pesos ----------------

@dataclass(frozen=True)
class Weight:
    parts: Tuple[int, ...]

    @classmethod
    def of(cls, *xs: int) -> "Weight":
        return cls(tuple(int(x) for x in xs))

    @property
    def m(self) -> int:
        return len(self.parts)

    def _same(self, other: "Weight") -> None:
        if other.m != self.m:
            raise SizeMismatch(f"weights of rank {self.m} and {other.m}")

    def __add__(self, other: "Weight") -> "Weight":
        self._same(other)
        return Weight(tuple(a + b for a, b in zip(self.parts, other.parts)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._same(other)
        return Weight(tuple(a - b for a, b in zip(self.parts, other.parts)))

    def scale(self, c: int) -> "Weight":
        return Weight(tuple(c * a for a in self.parts))

    def pair(self, other: "Weight") -> int:
        self._same(other)
        return sum(a * b for a, b in zip(self.parts, other.parts))

    def size(self) -> int:
        return sum(self.parts)

    def is_dominant(self) -> bool:
        p = self.parts
        return all(p[i] >= p[i + 1] for i in range(len(p) - 1)) and (not p or p[-1] >= 0)

    def __str__(self) -> str:
        return "(" + ",".join(str(a) for a in self.parts) + ")"


def _unit(m: int, i: int, c: int = 1) -> List[int]:
    v = [0] * m
    v[i] = c
    return v


def simple_roots(m: int) -> List[Weight]:
    out = [Weight(tuple(_unit(m, i, 1)[k] - _unit(m, i + 1, 1)[k] for k in range(m))) for i in range(m - 1)]
    out.append(Weight(tuple(_unit(m, m - 1, 2))))
    return out


def positive_roots(m: int) -> List[Weight]:
    """Type C_m: e_i - e_j, e_i + e_j (i < j) and 2 e_i."""
    out = []
    for i in range(m):
        for j in range(i + 1, m):
            a, b = _unit(m, i), _unit(m, j)
            out.append(Weight(tuple(x - y for x, y in zip(a, b))))
            out.append(Weight(tuple(x + y for x, y in zip(a, b))))
    for i in range(m):
        out.append(Weight(tuple(_unit(m, i, 2))))
    return out


def coroot(beta: Weight) -> Weight:
    if beta.pair(beta) == 4 and sum(1 for a in beta.parts if a) == 1:
        return Weight(tuple(a // 2 for a in beta.parts))
    return beta


def rho(m: int) -> Weight:
    return Weight(tuple(m - i for i in range(m)))


def dominance_leq(lam: Weight, mu: Weight) -> bool:
    """lam <= mu iff mu - lam is an N-combination of e_i - e_{i+1} and 2 e_m."""
    lam._same(mu)
    d = (mu - lam).parts
    m = len(d)
    acc = 0
    for k in range(m - 1):
        acc += d[k]
        if acc < 0:
            return False
    total = acc + d[m - 1]
    return total >= 0 and total % 2 == 0


def dominant_weights(m: int, n: int) -> List[Weight]:
    """Lambda^+(m, n): partitions of n - 2r with at most m parts, 0 <= r <= n//2."""
    out = []
    for r in range(n // 2 + 1):
        out.extend(_partitions(n - 2 * r, m))
    return out


def _partitions(k: int, m: int, cap: Optional[int] = None) -> List[Weight]:
    cap = k if cap is None else cap
    if m == 0:
        return [Weight(())] if k == 0 else []
    out = []
    for first in range(min(k, cap), -1, -1):
        for rest in _partitions(k - first, m - 1, first):
            out.append(Weight((first,) + rest.parts))
    return out


def lambda_f_plus(m: int, n: int, f: int) -> List[Weight]:
    if not 0 <= f <= n // 2:
        raise IndexOutOfRange(f"f must lie in 0..{n // 2}")
    out = []
    for r in range(f, n // 2 + 1):
        out.extend(_partitions(n - 2 * r, m))
    return out


def lambda_f_complement(m: int, n: int, f: int) -> List[Weight]:
    plus = set(lambda_f_plus(m, n, f))
    return [w for w in dominant_weights(m, n) if w not in plus]


def dot_action(mu: Weight, beta: Weight, k: int, p: int) -> Weight:
    """s_{beta, kp} . mu = mu - <mu + rho, beta^v> beta + k p beta."""
    c = (mu + rho(mu.m)).pair(coroot(beta))
    return mu - beta.scale(c) + beta.scale(k * p)


def _k_range(mu: Weight, beta: Weight, n: int, p: int) -> range:
    c = abs((mu + rho(mu.m)).pair(coroot(beta)))
    bound = (c + n * p) // p
    return range(-bound, bound + 1)


def cross_block_separation_check(m: int, n: int, f: int, p: int) -> bool:
    """No single dot-reflection step mu < nu goes from Lambda_f^+ into Lambda_f^c."""
    comp = set(lambda_f_complement(m, n, f))
    for mu in lambda_f_plus(m, n, f):
        for beta in positive_roots(m):
            for k in _k_range(mu, beta, n, p):
                nu = dot_action(mu, beta, k, p)
                if nu in comp and nu != mu and dominance_leq(mu, nu):
                    log.info("[weights] %s -> %s via beta=%s, k=%d leaves Lambda_f^+", mu, nu, beta, k)
                    return False
    return True


def linkage_chain_search(m: int, n: int, f: int, p: int) -> Optional[List[Weight]]:
    """Chain mu = nu_0 < nu_1 < ... < nu_r in Lambda^+ of dot-reflections from
    Lambda_f^+ ending in Lambda_f^c, or None if there is none."""
    allowed = set(dominant_weights(m, n))
    comp = set(lambda_f_complement(m, n, f))
    for start in lambda_f_plus(m, n, f):
        prev: Dict[Weight, Optional[Weight]] = {start: None}
        queue = deque([start])
        while queue:
            mu = queue.popleft()
            for beta in positive_roots(m):
                for k in _k_range(mu, beta, n, p):
                    nu = dot_action(mu, beta, k, p)
                    if nu not in allowed or nu in prev or nu == mu or not dominance_leq(mu, nu):
                        continue
                    prev[nu] = mu
                    if nu in comp:
                        chain = [nu]
                        while prev[chain[-1]] is not None:
                            chain.append(prev[chain[-1]])
                        return list(reversed(chain))
                    queue.append(nu)
    return None


def layer_order_check(m: int, n: int) -> bool:
    """lam (size n-2a) is never <= mu (size n-2b) when a < b."""
    for a, b in itertools.combinations(range(n // 2 + 1), 2):
        for lam in _partitions(n - 2 * a, m):
            for mu in _partitions(n - 2 * b, m):
                if dominance_leq(lam, mu):
                    return False
    return True


def weyl_dimension(lam: Weight) -> int:
    """Weyl's dimension formula for Sp_{2m}."""
    r = rho(lam.m)
    num = Rational(1)
    for beta in positive_roots(lam.m):
        cv = coroot(beta)
        num *= Rational((lam + r).pair(cv), r.pair(cv))
    if num.q != 1:
        raise PreconditionError(f"non-integral Weyl dimension at {lam}")
    return int(num)


def weyl_sum_of_squares(m: int, n: int) -> int:
    return sum(weyl_dimension(w) ** 2 for w in dominant_weights(m, n))


__all__ = [
    "SymplecticSpace", "TensorSpace", "SchurAlgebraRep", "Weight", "HarmonicSpaces", "QuotientReport",
    "tensor_space", "representation_is_homomorphism_check", "schur_algebra", "phi_injectivity_check",
    "subquotient_spaces", "check_harmonic_decomposition", "check_quotient_centralizer", "dominance_leq", "lambda_f_plus",
    "dot_action", "cross_block_separation_check", "linkage_chain_search", "weyl_dimension",
    "check_phi_f_surjective", "check_delta_injective", "check_commdiag", "layer_order_check",
]
