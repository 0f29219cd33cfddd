# src/fdalg.py
from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from linalg import (
    Mat,
    QuotientSpace,
    Subspace,
    Vec,
    commutant,
    intertwiners,
    kernel,
    span_of_matrices,
)
from scalar import (
    AlgebraMismatch,
    BadIdempotent,
    CharUnsupported,
    FieldSpec,
    LabError,
    NotEmbeddable,
    NotSplit,
    PreconditionError,
    Scalar,
    ShapeMismatch,
    StarNotFixing,
    to_elem,
)

log = logging.getLogger(__name__)


# ---------------- Algebra ----------------

class Algebra:
    """Finite-dimensional algebra, given by structure constants or as a span of matrices.

    Structure constants are stored as left-regular matrices: column j of left(i) holds
    the coordinates of e_i e_j. Matrix algebras keep their RREF matrix basis and build
    the regular representation lazily.
    """

    def __init__(
        self,
        field: FieldSpec,
        dim: int,
        unit: Vec,
        name: str = "",
        left: Optional[List[Mat]] = None,
        basis_mats: Optional[List[Mat]] = None,
        pivots: Optional[Tuple[int, ...]] = None,
        extra_generators: Optional[List[Mat]] = None,
    ):
        if dim <= 0:
            raise PreconditionError("algebras must be nonzero")
        self.field = field
        self.dim = dim
        self.unit = unit
        self.name = name
        self._left = left
        self._right: Optional[List[Mat]] = None
        self.basis_mats = basis_mats
        self._pivots = pivots
        self.extra_generators = list(extra_generators or [])
        self._gens: Optional[List[int]] = None
        self._natural: Optional[LeftModule] = None
        self._regular: Optional[LeftModule] = None
        self._radical: Optional[Subspace] = None

    # ---------- constructores ----------
    @classmethod
    def from_structure_constants(
        cls, fs: FieldSpec, table: Sequence[Sequence[Sequence[Any]]], unit: Sequence[Any], name: str = ""
    ) -> "Algebra":
        d = len(table)
        left = []
        for i in range(d):
            if len(table[i]) != d:
                raise ShapeMismatch(f"row {i} of the multiplication table has {len(table[i])} entries")
            cols = []
            for j in range(d):
                if len(table[i][j]) != d:
                    raise ShapeMismatch(f"product e{i}e{j} has {len(table[i][j])} coordinates")
                cols.append({k: to_elem(fs, x) for k, x in enumerate(table[i][j])})
            left.append(Mat.from_columns(fs, d, cols))
        u = {k: to_elem(fs, x) for k, x in enumerate(unit)}
        A = cls(fs, d, {k: x for k, x in u.items() if x}, name=name, left=left)
        A.verify()
        return A

    @classmethod
    def from_products(cls, fs: FieldSpec, d: int, products: Dict[Tuple[int, int], Dict[int, Any]],
                      unit: Dict[int, Any], name: str = "") -> "Algebra":
        """Sparse form: products[(i, j)] = {k: coeff}; missing products are zero."""
        table = [[[0] * d for _ in range(d)] for _ in range(d)]
        for (i, j), v in products.items():
            for k, x in v.items():
                table[i][j][k] = x
        u = [0] * d
        for k, x in unit.items():
            u[k] = x
        return cls.from_structure_constants(fs, table, u, name)

    @classmethod
    def from_matrices(cls, fs: FieldSpec, mats: Sequence[Mat], name: str = "",
                      extra_generators: Optional[Sequence[Mat]] = None, check: bool = True) -> "Algebra":
        if not mats:
            raise PreconditionError("empty matrix basis")
        n = mats[0].rows
        span = span_of_matrices(list(mats))
        basis = [Mat.unflatten(fs, (n, n), v) for v in span.vectors()]
        ident = Mat.identity(fs, n).flatten()
        if not span.contains(ident):
            raise PreconditionError("matrix span does not contain the identity")
        A = cls(fs, span.dim, span.coords(ident), name=name, basis_mats=basis,
                pivots=span.pivots, extra_generators=list(extra_generators or []))
        if check and span.dim <= 64:
            for X in basis:
                for Y in basis:
                    if not span.contains((X @ Y).flatten()):
                        raise PreconditionError("matrix span is not closed under multiplication")
        return A

    # ---------- estructura ----------
    @property
    def is_matrix_algebra(self) -> bool:
        return self.basis_mats is not None

    def _mat_coords(self, M: Mat) -> Vec:
        flat = M.flatten()
        return {k: flat[p] for k, p in enumerate(self._pivots) if p in flat}

    def left(self, i: int) -> Mat:
        return self._left_all()[i]

    def _left_all(self) -> List[Mat]:
        if self._left is None:
            log.debug("building regular representation of %s (dim %d)", self.name, self.dim)
            B = self.basis_mats
            self._left = [
                Mat.from_columns(self.field, self.dim, [self._mat_coords(B[i] @ B[j]) for j in range(self.dim)])
                for i in range(self.dim)
            ]
        return self._left

    def right(self, i: int) -> Mat:
        if self._right is None:
            L = self._left_all()
            self._right = [
                Mat.from_columns(self.field, self.dim, [L[j].column(i) for j in range(self.dim)])
                for i in range(self.dim)
            ]
        return self._right[i]

    def mul(self, x: Vec, y: Vec) -> Vec:
        if self.is_matrix_algebra and self._left is None:
            return self._mat_coords(self.to_matrix(x) @ self.to_matrix(y))
        acc: Vec = {}
        for i, a in x.items():
            for k, v in self.left(i).apply(y).items():
                acc[k] = acc.get(k, self.field.domain.zero) + a * v
        return {k: v for k, v in acc.items() if v}

    def to_matrix(self, x: Vec) -> Mat:
        n = self.basis_mats[0].rows
        acc = Mat.zeros(self.field, n, n)
        for i, a in x.items():
            acc = acc + self.basis_mats[i].scale(Scalar.from_elem(self.field, a))
        return acc

    def basis_vector(self, i: int) -> Vec:
        return {i: self.field.domain.one}

    def structure_constants(self) -> List[List[List[str]]]:
        L = self._left_all()
        return [[[str(L[i][k, j]) for k in range(self.dim)] for j in range(self.dim)] for i in range(self.dim)]

    def verify(self) -> None:
        """Associativity on all basis triples and two-sided unit."""
        L = self._left_all()
        d = self.dim
        I = Mat.identity(self.field, d)
        U = self.element_in(L, self.unit)
        if U != I:
            raise PreconditionError(f"{self.name}: unit is not a left identity")
        for i in range(d):
            if L[i].apply(self.unit) != {i: self.field.domain.one}:
                raise PreconditionError(f"{self.name}: unit is not a right identity")
        for i in range(d):
            for j in range(d):
                lhs = L[i] @ L[j]
                rhs = self.element_in(L, L[i].column(j))
                if lhs != rhs:
                    raise PreconditionError(f"{self.name}: not associative at (e{i}, e{j})")

    def element_in(self, action: Sequence[Mat], x: Vec) -> Mat:
        n = action[0].rows
        dod: Dict[int, Dict[int, Any]] = {}
        for i, a in x.items():
            for r, row in action[i].dod.items():
                tgt = dod.setdefault(r, {})
                for c, v in row.items():
                    tgt[c] = tgt.get(c, self.field.domain.zero) + a * v
        return Mat.from_dod(self.field, (n, action[0].cols), dod)

    def generator_indices(self) -> List[int]:
        """Greedy algebra generators among the basis vectors (all of them for large matrix algebras)."""
        if self._gens is None:
            if self.is_matrix_algebra and self.dim > 64:
                self._gens = list(range(self.dim))
            else:
                self._gens = self._greedy_generators()
        return self._gens

    def _greedy_generators(self) -> List[int]:
        gens: List[int] = []
        closure = Subspace.span(self.field, self.dim, [self.unit])
        for i in range(self.dim):
            if closure.contains(self.basis_vector(i)):
                continue
            gens.append(i)
            closure = self._generated(gens)
            if closure.dim == self.dim:
                break
        return gens or [0]

    def _generated(self, gens: Sequence[int]) -> Subspace:
        L = self._left_all()
        W = Subspace.span(self.field, self.dim, [self.unit])
        frontier = [dict(self.unit)]
        while frontier:
            new = []
            for v in frontier:
                for g in gens:
                    w = L[g].apply(v)
                    r = W.reduce(w)
                    if r:
                        W = Subspace.span(self.field, self.dim, W.vectors() + [w])
                        new.append(w)
            frontier = new
        return W

    # ---------- módulos canónicos ----------
    def regular_module(self) -> "LeftModule":
        if self._regular is None:
            self._regular = LeftModule(self, self._left_all(), name=f"{self.name}_reg")
        return self._regular

    def natural_module(self) -> "LeftModule":
        if not self.is_matrix_algebra:
            raise PreconditionError(f"{self.name} is not a matrix algebra")
        if self._natural is None:
            self._natural = LeftModule(self, self.basis_mats, name=f"{self.name}_nat",
                                       extra=self.extra_generators, natural=True)
        return self._natural

    def opposite(self) -> "Algebra":
        return Algebra(self.field, self.dim, dict(self.unit), name=f"{self.name}^op",
                       left=[self.right(i) for i in range(self.dim)])

    # ---------- radical ----------
    def radical(self) -> Subspace:
        """Jacobson radical as the kernel of the trace form of the regular representation."""
        if self._radical is None:
            if not self.field.allows_trace_radical(self.dim):
                raise CharUnsupported(f"trace-form radical needs char 0 or char > {self.dim}, got {self.field}")
            L = self._left_all()
            gram: Dict[int, Dict[int, Any]] = {}
            for i in range(self.dim):
                for j in range(i, self.dim):
                    t = (L[i] @ L[j]).trace()
                    if t:
                        gram.setdefault(i, {})[j] = t
                        gram.setdefault(j, {})[i] = t
            self._radical = kernel(Mat.from_dod(self.field, (self.dim, self.dim), gram))
        return self._radical

    def is_idempotent(self, e: Vec) -> bool:
        return self.mul(e, e) == {k: v for k, v in e.items() if v}

    def __repr__(self) -> str:
        kind = "matrix" if self.is_matrix_algebra else "structure"
        return f"Algebra({self.name or '?'}, dim={self.dim}, {kind}, over {self.field})"


# ---------------- módulos ----------------

class LeftModule:
    """Left module given by the matrices of the basis elements of its algebra."""

    def __init__(self, algebra: Algebra, action: Sequence[Mat], name: str = "",
                 extra: Optional[Sequence[Mat]] = None, natural: bool = False):
        if len(action) != algebra.dim:
            raise ShapeMismatch(f"{len(action)} action matrices for an algebra of dim {algebra.dim}")
        self.algebra = algebra
        self.action = list(action)
        self.dim = self.action[0].rows if self.action else 0
        self.name = name
        self.extra = list(extra) if extra is not None else None
        self.natural = natural

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    @classmethod
    def zero(cls, A: Algebra) -> "LeftModule":
        return cls(A, [Mat.zeros(A.field, 0, 0)] * A.dim, name="0")

    def act(self, x: Vec) -> Mat:
        if self.dim == 0:
            return Mat.zeros(self.field, 0, 0)
        return self.algebra.element_in(self.action, x)

    def verify(self) -> None:
        A = self.algebra
        if self.act(A.unit) != Mat.identity(self.field, self.dim):
            raise PreconditionError(f"{self.name}: unit does not act as identity")
        for i in range(A.dim):
            for j in range(A.dim):
                if self.action[i] @ self.action[j] != self.act(A.left(i).column(j)):
                    raise PreconditionError(f"{self.name}: action fails at (e{i}, e{j})")

    def gen_pairs(self, other: "LeftModule") -> Tuple[List[Mat], List[Mat]]:
        src, tgt = [], []
        if self.extra is not None and other.extra is not None:
            src += self.extra
            tgt += other.extra
        for i in self.algebra.generator_indices():
            src.append(self.action[i])
            tgt.append(other.action[i])
        return src, tgt

    # ---------- construcciones ----------
    def submodule(self, sub: Subspace, name: str = "") -> Tuple["LeftModule", "ModMap"]:
        if sub.ambient_dim != self.dim:
            raise ShapeMismatch("subspace lives in another space")
        vecs = sub.vectors()
        try:
            action = [
                Mat.from_columns(self.field, sub.dim, [sub.coords(rho.apply(w)) for w in vecs])
                if sub.dim else Mat.zeros(self.field, 0, 0)
                for rho in self.action
            ]
        except LabError as exc:
            raise PreconditionError(f"{self.name}: subspace is not a submodule") from exc
        S = LeftModule(self.algebra, action, name=name or f"sub({self.name})")
        incl = Mat.from_columns(self.field, self.dim, vecs) if vecs else Mat.zeros(self.field, self.dim, 0)
        return S, ModMap(S, self, incl)

    def quotient(self, sub: Subspace, name: str = "") -> Tuple["LeftModule", "ModMap"]:
        Q = QuotientSpace(sub)
        if Q.dim == 0:
            Z = LeftModule.zero(self.algebra)
            return Z, ModMap(self, Z, Mat.zeros(self.field, 0, self.dim))
        P, S = Q.projection_matrix(), Q.section_matrix()
        action = [P @ rho @ S for rho in self.action]
        M = LeftModule(self.algebra, action, name=name or f"{self.name}/sub")
        return M, ModMap(self, M, P)

    def generated_by(self, vecs: Sequence[Vec]) -> Subspace:
        W = Subspace.span(self.field, self.dim, vecs)
        frontier = W.vectors()
        gens = [self.action[i] for i in self.algebra.generator_indices()]
        while frontier:
            new = []
            for v in frontier:
                for g in gens:
                    w = g.apply(v)
                    if W.reduce(w):
                        W = Subspace.span(self.field, self.dim, W.vectors() + [w])
                        new.append(w)
            frontier = new
        return W

    def power(self, r: int) -> "LeftModule":
        return direct_sum([self] * r) if r > 0 else LeftModule.zero(self.algebra)

    def dual_op(self) -> "LeftModule":
        """Linear dual as a left module over the opposite algebra."""
        return LeftModule(self.algebra.opposite(), [rho.T for rho in self.action], name=f"D({self.name})")

    def __repr__(self) -> str:
        return f"LeftModule({self.name or '?'}, dim={self.dim} over {self.algebra.name})"


def direct_sum(mods: Sequence[LeftModule], name: str = "") -> LeftModule:
    mods = [M for M in mods if M.dim > 0]
    if not mods:
        raise PreconditionError("direct sum of no nonzero modules")
    A = mods[0].algebra
    for M in mods:
        if M.algebra is not A:
            raise AlgebraMismatch(f"{M.name} lives over {M.algebra.name}")
    action = [Mat.block_diag(A.field, [M.action[i] for M in mods]) for i in range(A.dim)]
    extra = None
    if all(M.extra is not None for M in mods):
        extra = [Mat.block_diag(A.field, [M.extra[k] for M in mods]) for k in range(len(mods[0].extra))]
    return LeftModule(A, action, name=name or "+".join(M.name for M in mods), extra=extra)


@dataclass
class ModMap:
    source: LeftModule
    target: LeftModule
    matrix: Mat

    def __post_init__(self) -> None:
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ShapeMismatch(f"map of shape {self.matrix.shape} between dims {self.source.dim}->{self.target.dim}")

    def is_homomorphism(self) -> bool:
        if self.source.algebra is not self.target.algebra:
            return False
        X = self.matrix
        return all(X @ s == t @ X for s, t in zip(self.source.action, self.target.action))

    def rank(self) -> int:
        return self.matrix.rank() if self.matrix.rows and self.matrix.cols else 0

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def kernel(self) -> Subspace:
        if self.target.dim == 0:
            return Subspace.full(self.source.field, self.source.dim)
        return kernel(self.matrix)

    def image(self) -> Subspace:
        if self.source.dim == 0:
            return Subspace.zero(self.target.field, self.target.dim)
        return Subspace.from_mat(self.matrix.T)

    def compose(self, other: "ModMap") -> "ModMap":
        """self after other."""
        return ModMap(other.source, self.target, self.matrix @ other.matrix)


@dataclass
class AlgebraHom:
    source: Algebra
    target: Algebra
    matrix: Mat
    injective: bool = False
    surjective: bool = False

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective


@dataclass
class AntiInvolution:
    algebra: Algebra
    matrix: Mat

    def apply(self, x: Vec) -> Vec:
        return self.matrix.apply(x)

    def verify(self) -> None:
        A, S = self.algebra, self.matrix
        if S @ S != Mat.identity(A.field, A.dim):
            raise PreconditionError("star is not an involution")
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = S.apply(A.left(i).column(j))
                rhs = A.mul(S.column(j), S.column(i))
                if lhs != rhs:
                    raise PreconditionError(f"star is not anti-multiplicative at (e{i}, e{j})")


# ---------------- Hom / End ----------------

def hom_space(M: LeftModule, N: LeftModule) -> List[ModMap]:
    if M.algebra is not N.algebra:
        raise AlgebraMismatch(f"{M.name} and {N.name} live over different algebras")
    if M.dim == 0 or N.dim == 0:
        return []
    src, tgt = M.gen_pairs(N)
    return [ModMap(M, N, X) for X in intertwiners(src, tgt)]


def hom_dim(M: LeftModule, N: LeftModule) -> int:
    return len(hom_space(M, N))


def endomorphism_algebra(M: LeftModule) -> Tuple[Algebra, LeftModule]:
    """End_A(M) acting on M on the left (matrix composition)."""
    mats = [f.matrix for f in hom_space(M, M)]
    E = Algebra.from_matrices(M.field, mats, name=f"End({M.name})")
    return E, E.natural_module()


def generated_subalgebra(fs: FieldSpec, gens: Sequence[Mat]) -> Subspace:
    n = gens[0].rows
    one = Mat.identity(fs, n)
    W = Subspace.span(fs, n * n, [one.flatten()])
    frontier = [one]
    while frontier:
        new = []
        for X in frontier:
            for g in gens:
                Y = g @ X
                if W.reduce(Y.flatten()):
                    W = Subspace.span(fs, n * n, W.vectors() + [Y.flatten()])
                    new.append(Y)
        frontier = new
    return W


def algebra_generators(fs: FieldSpec, basis: Sequence[Mat]) -> List[Mat]:
    """Greedy generating set of the matrix algebra spanned by basis."""
    target = len(basis)
    gens: List[Mat] = []
    n = basis[0].rows
    W = Subspace.span(fs, n * n, [Mat.identity(fs, n).flatten()])
    for B in basis:
        if W.dim == target:
            break
        if W.contains(B.flatten()):
            continue
        gens.append(B)
        W = generated_subalgebra(fs, gens)
    return gens or [Mat.identity(fs, n)]


def _checked_generators(fs: FieldSpec, a1: List[Mat], gens: Sequence[Mat]) -> List[Mat]:
    span = span_of_matrices(a1)
    for g in gens:
        if not span.contains(g.flatten()):
            raise PreconditionError("supplied centralizer generator is not in End_A(T)")
    if generated_subalgebra(fs, list(gens)).dim != len(a1):
        raise PreconditionError("supplied generators do not generate End_A(T)")
    return list(gens)


@dataclass
class DCPResult:
    hom: AlgebraHom
    dim_a: int
    dim_a1: int
    dim_a2: int
    rank: int
    a1_basis: List[Mat] = field(default_factory=list, repr=False)
    a2_basis: List[Mat] = field(default_factory=list, repr=False)

    @property
    def surjective(self) -> bool:
        return self.hom.surjective

    @property
    def injective(self) -> bool:
        return self.hom.injective

    @property
    def bijective(self) -> bool:
        return self.hom.bijective


def double_centralizer_map(A: Algebra, T: LeftModule, centralizer_gens: Optional[Sequence[Mat]] = None) -> DCPResult:
    """Canonical map A -> A'' = End_{A'}(T), with A' = End_A(T) acting on T on the left."""
    if T.algebra is not A:
        raise AlgebraMismatch(f"{T.name} is not a module over {A.name}")
    fs = A.field
    if T.dim == 0:
        M = Mat.zeros(fs, 0, A.dim)
        return DCPResult(AlgebraHom(A, A, M, injective=False, surjective=True), A.dim, 0, 0, 0)
    a1 = [f.matrix for f in hom_space(T, T)]
    if centralizer_gens is not None:
        gens = _checked_generators(fs, a1, centralizer_gens)
    else:
        gens = algebra_generators(fs, a1)
    a2 = commutant(gens)
    a2_span = span_of_matrices(a2)
    cols = [a2_span.coords(rho.flatten()) for rho in T.action]
    M = Mat.from_columns(fs, a2_span.dim, cols)
    r = M.rank()
    B = Algebra.from_matrices(fs, a2, name=f"{A.name}''", check=False)
    hom = AlgebraHom(A, B, M, injective=(r == A.dim), surjective=(r == a2_span.dim))
    log.info("[dcp] %s on %s: dim A=%d, A'=%d, A''=%d, rank=%d", A.name, T.name, A.dim, len(a1), a2_span.dim, r)
    return DCPResult(hom, A.dim, len(a1), a2_span.dim, r, a1, a2)


def triple_centralizer_check(res: DCPResult) -> bool:
    """End_{A''}(T) equals A' (always true for a faithful balanced T)."""
    if not res.a2_basis:
        return res.dim_a1 == 0
    fs = res.a2_basis[0].field
    gens = algebra_generators(fs, res.a2_basis)
    a3 = commutant(gens)
    return span_of_matrices(a3) == span_of_matrices(res.a1_basis)


def is_faithful(M: LeftModule) -> bool:
    if M.dim == 0:
        return False
    return span_of_matrices(M.action).dim == M.algebra.dim


# ---------------- aproximaciones y encajes ----------------

def is_left_approximation(f: ModMap, T: LeftModule) -> bool:
    """Hom(C, T) -> Hom(M, T), h -> h f, is surjective."""
    target = hom_space(f.source, T)
    if not target:
        return True
    pulled = [(h.matrix @ f.matrix).flatten() for h in hom_space(f.target, T)]
    return Subspace.span(T.field, T.dim * f.source.dim, pulled).dim == len(target)


@dataclass
class Embedding:
    r: int
    map: ModMap


def universal_map(M: LeftModule, T: LeftModule) -> Tuple[List[ModMap], Mat]:
    H = hom_space(M, T)
    if not H:
        return [], Mat.zeros(M.field, 0, M.dim)
    return H, Mat.vstack(M.field, [h.matrix for h in H])


def embed_into_add(M: LeftModule, T: LeftModule, minimize: bool = True) -> Embedding:
    """Injective M -> T^r from the universal evaluation map, greedily shortened."""
    if M.dim == 0:
        return Embedding(0, ModMap(M, LeftModule.zero(M.algebra), Mat.zeros(M.field, 0, 0)))
    H, U = universal_map(M, T)
    if not H or U.rank() < M.dim:
        raise NotEmbeddable(f"{M.name} has a nonzero common kernel against {T.name}")
    keep = list(range(len(H)))
    if minimize:
        for k in list(keep):
            trial = [j for j in keep if j != k]
            if trial and Mat.vstack(M.field, [H[j].matrix for j in trial]).rank() == M.dim:
                keep = trial
    mat = Mat.vstack(M.field, [H[j].matrix for j in keep])
    return Embedding(len(keep), ModMap(M, T.power(len(keep)), mat))


# ---------------- dimensión dominante ----------------

@dataclass
class DomDimResult:
    holds: bool
    stage: str  # "ok" | "embed" | "cokernel"
    r: int
    s: int
    delta: Optional[Mat] = field(default=None, repr=False)
    eps: Optional[Mat] = field(default=None, repr=False)
    exact: bool = False
    coker_dim: int = 0
    method: str = "universal"


def dominant_dimension_at_least_2(A: Algebra, T: LeftModule,
                                  centralizer_gens: Optional[Sequence[Mat]] = None) -> DomDimResult:
    """Look for 0 -> A -> T^r -> T^s exact with the first map the universal approximation."""
    if T.algebra is not A:
        raise AlgebraMismatch(f"{T.name} is not a module over {A.name}")
    if T.natural:
        return _domdim_natural(A, T, centralizer_gens)
    return _domdim_universal(A, T)


def _domdim_universal(A: Algebra, T: LeftModule) -> DomDimResult:
    fs = A.field
    R = A.regular_module()
    H, U = universal_map(R, T)
    r = len(H)
    if not H or U.rank() < A.dim:
        log.info("[domdim] %s: stage 1 fails, %s is not faithful", A.name, T.name)
        return DomDimResult(False, "embed", r, 0, U)
    Tr = T.power(r)
    delta = ModMap(R, Tr, U)
    C, pi = Tr.quotient(delta.image(), name=f"coker({A.name}->{T.name}^{r})")
    if C.dim == 0:
        return DomDimResult(True, "ok", r, 0, U, Mat.zeros(fs, 0, Tr.dim), exact=True, coker_dim=0)
    try:
        emb = embed_into_add(C, T)
    except NotEmbeddable:
        log.info("[domdim] %s: cokernel of dim %d does not embed into add(%s)", A.name, C.dim, T.name)
        return DomDimResult(False, "cokernel", r, 0, U, coker_dim=C.dim)
    eps = emb.map.matrix @ pi.matrix
    exact = (eps @ U).is_zero() and eps.rank() == Tr.dim - A.dim
    return DomDimResult(True, "ok", r, emb.r, U, eps, exact=exact, coker_dim=C.dim)


def commutator_map(fs: FieldSpec, d: int, gens: Sequence[Mat]) -> Mat:
    """X -> (X b - b X) for each b in gens, on End_K(T) = T^d stacked by columns.

    Column k*d + j is the unit matrix E_{jk}; block g of the rows holds the
    commutator with gens[g] in the same coordinates."""
    dod: Dict[int, Dict[int, Any]] = {}

    def add(row: int, col: int, v: Any) -> None:
        r = dod.setdefault(row, {})
        r[col] = r.get(col, fs.domain.zero) + v

    for g, b in enumerate(gens):
        off = g * d * d
        by_col: Dict[int, Dict[int, Any]] = {}
        for i, row in b.dod.items():
            for j, v in row.items():
                by_col.setdefault(j, {})[i] = v
        for k in range(d):
            row_k = b.dod.get(k, {})
            for j in range(d):
                c = k * d + j
                for l, v in row_k.items():          # (E_jk b)[j, l] = b[k, l]
                    add(off + l * d + j, c, v)
                for i, v in by_col.get(j, {}).items():  # (b E_jk)[i, k] = b[i, j]
                    add(off + k * d + i, c, -v)
    return Mat.from_dod(fs, (len(gens) * d * d, d * d), dod)


def _domdim_natural(A: Algebra, T: LeftModule, centralizer_gens: Optional[Sequence[Mat]]) -> DomDimResult:
    """Matrix algebra on its natural module.

    Hom_A(A, T) = T, so the universal map is delta: a -> (a t_1, ..., a t_d), i.e. A
    inside End_K(T) = T^d. Generators b of A' = End_A(T) give the A-linear
    eps = commutator_map: T^d -> T^{sd}; the witness is accepted only when
    eps delta = 0 and rank eps = d^2 - dim A. Otherwise the cokernel is tested
    for an embedding into add(T) as in the general case."""
    fs = A.field
    d = T.dim
    delta = Mat.from_columns(fs, d * d, [B.T.flatten() for B in A.basis_mats])
    a1 = [f.matrix for f in hom_space(T, T)]
    gens = _checked_generators(fs, a1, centralizer_gens) if centralizer_gens is not None else algebra_generators(fs, a1)
    for B in A.basis_mats:
        for b in gens:
            if B @ b != b @ B:
                raise PreconditionError("centralizer generator does not commute with A")
    eps = commutator_map(fs, d, gens)
    rank_eps = eps.rank()
    exact = (eps @ delta).is_zero() and rank_eps == d * d - A.dim
    log.info("[domdim] %s natural: dim A=%d, rank eps=%d of %d", A.name, A.dim, rank_eps, d * d)
    if exact:
        return DomDimResult(True, "ok", d, len(gens) * d, delta, eps,
                            exact=True, coker_dim=d * d - A.dim, method="natural")
    res = _domdim_universal(A, T)
    res.method = "natural+universal"
    return res


# ---------------- proyectivos, radicales ----------------

def check_idempotents(A: Algebra, idempotents: Sequence[Vec], star: Optional[AntiInvolution] = None) -> None:
    for k, e in enumerate(idempotents):
        if not e or not A.is_idempotent(e):
            raise BadIdempotent(f"idempotent #{k} is zero or not idempotent")
        if star is not None and star.apply(e) != {i: v for i, v in e.items() if v}:
            raise StarNotFixing(f"idempotent #{k} is not fixed by the anti-involution")


def projective_module(A: Algebra, e: Vec, name: str = "") -> LeftModule:
    """A e as a submodule of the regular module."""
    R = A.regular_module()
    Re = A.element_in([A.right(i) for i in range(A.dim)], e)
    sub = Subspace.from_mat(Re.T)
    P, _ = R.submodule(sub, name=name or "Ae")
    return P


def module_radical(M: LeftModule) -> Subspace:
    J = M.algebra.radical()
    vecs = []
    for x in J.vectors():
        X = M.act(x)
        for j in range(M.dim):
            v = X.column(j)
            if v:
                vecs.append(v)
    return Subspace.span(M.field, M.dim, vecs)


def top(M: LeftModule) -> Tuple[LeftModule, ModMap]:
    return M.quotient(module_radical(M), name=f"top({M.name})")


def socle(M: LeftModule) -> Subspace:
    J = M.algebra.radical()
    mats = [M.act(x) for x in J.vectors()]
    if not mats:
        return Subspace.full(M.field, M.dim)
    return kernel(Mat.vstack(M.field, mats))


def multiplicity(M: LeftModule, e: Vec) -> int:
    """[M : L] for the simple L with primitive idempotent e (split case)."""
    if M.dim == 0:
        return 0
    return M.act(e).rank()


def verify_split(A: Algebra, idempotents: Sequence[Vec]) -> List[LeftModule]:
    """Simple tops of the A e_i: End is K, pairwise distinct and exhausting A/J."""
    simples = []
    for k, e in enumerate(idempotents):
        L, _ = top(projective_module(A, e))
        if hom_dim(L, L) != 1:
            raise NotSplit(f"End of simple #{k} is not the ground field")
        simples.append(L)
    for a, e in enumerate(idempotents):
        for b, L in enumerate(simples):
            if multiplicity(L, e) != (1 if a == b else 0):
                raise NotSplit(f"idempotents #{a} and #{b} do not separate the simple tops")
    if sum(L.dim ** 2 for L in simples) != A.dim - A.radical().dim:
        raise NotSplit("simple tops do not exhaust A/J")
    return simples


def check_split(A: Algebra, idempotents: Optional[Sequence[Vec]] = None) -> None:
    """Raise NotSplit unless A/J is split semisimple.

    With primitive idempotents this is verify_split (End of each simple is K).
    Without them, the centre of A/J must be a product of copies of K: every
    central element has a characteristic polynomial with linear factors only.
    Over F_p that is the whole condition; over Q a non-commutative division
    block is only caught when idempotents are supplied."""
    if idempotents:
        verify_split(A, idempotents)
        return
    fs = A.field
    J = A.radical()
    AJ = QuotientSpace(J)
    if AJ.dim == 0:
        raise NotSplit(f"{A.name} is nilpotent")
    P = AJ.projection_matrix()
    cond = Mat.vstack(fs, [P @ (A.left(i) - A.right(i)) for i in range(A.dim)])
    for z in kernel(cond).vectors():
        if not P.apply(z):
            continue
        Lz = Mat.zeros(fs, A.dim, A.dim)
        for i, a in z.items():
            Lz = Lz + A.left(i).scale(Scalar.from_elem(fs, a))
        _, factors = AJ.induced(Lz).charpoly().factor_list()
        bad = [f for f, _ in factors if f.degree() > 1]
        if bad:
            raise NotSplit(f"{A.name}: central element with irreducible factor {bad[0].as_expr()} over {fs}")
    log.debug("[split] %s: centre of A/J is split", A.name)


ISO_EXHAUSTIVE_LIMIT = 4096


def _combination(fs: FieldSpec, mats: Sequence[Mat], coeffs: Sequence[int]) -> Mat:
    X = Mat.zeros(fs, mats[0].rows, mats[0].cols)
    for c, h in zip(coeffs, mats):
        if c:
            X = X + h.scale(c)
    return X


def is_isomorphic(M: LeftModule, N: LeftModule, seed: int = 0, tries: int = 32) -> bool:
    """Some element of Hom(M, N) is invertible.

    Over F_p with p^h <= ISO_EXHAUSTIVE_LIMIT (h = dim Hom) every combination up to
    scaling is tried, so the answer is exact. Otherwise seeded random
    combinations are used; over Q the coefficients range far beyond dim M."""
    if M.dim != N.dim:
        return False
    if M.dim == 0:
        return True
    H = hom_space(M, N)
    if not H:
        return False
    fs = M.field
    mats = [h.matrix for h in H]
    if any(X.rank() == M.dim for X in mats):
        return True
    p, h = fs.characteristic, len(mats)
    if p and p ** h <= ISO_EXHAUSTIVE_LIMIT:
        for coeffs in itertools.product(range(p), repeat=h):
            lead = next((c for c in coeffs if c), 0)
            if lead != 1:
                continue
            if _combination(fs, mats, coeffs).rank() == M.dim:
                return True
        return False
    rng = random.Random(seed)
    top = p - 1 if p else max(10 ** 6, 100 * M.dim)
    for _ in range(tries):
        if _combination(fs, mats, [rng.randint(0, top) for _ in mats]).rank() == M.dim:
            return True
    log.debug("[iso] %s vs %s: no invertible map in %d random tries", M.name, N.name, tries)
    return False


def is_local_endomorphism_ring(M: LeftModule) -> bool:
    if M.dim == 0:
        return False
    E, _ = endomorphism_algebra(M)
    return E.dim - E.radical().dim == 1


# ---------------- plenamente fiel en proyectivos ----------------

@dataclass
class FullyFaithfulResult:
    fully_faithful: bool
    dcp: bool

    @property
    def agree(self) -> bool:
        return self.fully_faithful == self.dcp


def fully_faithful_on_projectives(A: Algebra, star: AntiInvolution, idempotents: Sequence[Vec]) -> FullyFaithfulResult:
    """Hom_A(M, -) fully faithful on projectives for M = (+) A e_i, compared with DCP on M."""
    check_idempotents(A, idempotents, star)
    fs = A.field
    M = direct_sum([projective_module(A, e, name=f"Ae{k}") for k, e in enumerate(idempotents)], name="M")
    if not is_faithful(M):
        raise PreconditionError("(+) A e_i is not faithful")
    R = A.regular_module()
    H = [h.matrix for h in hom_space(M, R)]
    E = [f.matrix for f in hom_space(M, M)]
    hspan = span_of_matrices(H)
    # E actúa sobre Hom(M, A) por precomposición, A^op por poscomposición
    phi = [Mat.from_columns(fs, len(H), [hspan.coords((h @ g).flatten()) for h in H]) for g in E]
    psi = [Mat.from_columns(fs, len(H), [hspan.coords((A.right(i) @ h).flatten()) for h in H])
           for i in range(A.dim)]
    cent = commutant(phi)
    psi_rank = span_of_matrices(psi).dim
    ff = psi_rank == A.dim and len(cent) == A.dim
    dcp = double_centralizer_map(A, M).bijective
    return FullyFaithfulResult(ff, dcp)


def hom_dim_via_duals(M: LeftModule, N: LeftModule) -> int:
    """dim Hom_A(M, N) computed as dim Hom_{A^op}(D N, D M)."""
    Aop = M.algebra.opposite()
    DM = LeftModule(Aop, [rho.T for rho in M.action])
    DN = LeftModule(Aop, [rho.T for rho in N.action])
    return hom_dim(DN, DM)


def kernel_submodule(f: ModMap) -> Tuple[LeftModule, ModMap]:
    return f.source.submodule(f.kernel(), name=f"ker({f.source.name}->{f.target.name})")


def verify_algebra(A: Algebra) -> None:
    A.verify()


def verify_module(M: LeftModule) -> None:
    M.verify()


def composition_factors(M: LeftModule, idempotents: Sequence[Vec]) -> List[int]:
    """[M : L_i] for the simples picked out by the given primitive idempotents."""
    return [multiplicity(M, e) for e in idempotents]


__all__ = [
    "Algebra", "LeftModule", "ModMap", "AlgebraHom", "AntiInvolution", "DCPResult", "DomDimResult",
    "Embedding", "FullyFaithfulResult", "hom_space", "hom_dim", "endomorphism_algebra",
    "double_centralizer_map", "is_faithful", "is_left_approximation", "embed_into_add",
    "dominant_dimension_at_least_2", "commutator_map", "fully_faithful_on_projectives", "direct_sum",
    "projective_module",
    "module_radical", "top", "socle", "multiplicity", "verify_split", "check_split", "is_isomorphic",
    "is_local_endomorphism_ring", "triple_centralizer_check", "hom_dim_via_duals", "kernel_submodule",
    "verify_algebra", "verify_module", "composition_factors",
]
