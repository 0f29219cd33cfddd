# src/strat.py
from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, Iterable, List, Optional, Sequence, Set, Tuple

import config
from fdalg import (
    Algebra,
    AntiInvolution,
    DCPResult,
    LeftModule,
    ModMap,
    check_idempotents,
    direct_sum,
    double_centralizer_map,
    embed_into_add,
    endomorphism_algebra,
    hom_space,
    is_faithful,
    is_isomorphic,
    is_local_endomorphism_ring,
    module_radical,
    multiplicity,
    projective_module,
    socle,
    verify_split,
)
from linalg import Mat, QuotientSpace, Subspace, Vec, kernel, span_of_matrices
from scalar import (
    HypothesisFailed,
    NonTermination,
    NotEmbeddable,
    PreconditionError,
    StarNotFixing,
)

log = logging.getLogger(__name__)

Label = Hashable


# ---------------- utilidades de módulos ----------------

def trace_submodule(M: LeftModule, N: LeftModule) -> Subspace:
    """Tr_M(N): sum of the images of all homomorphisms M -> N."""
    if M.dim == 0 or N.dim == 0:
        return Subspace.zero(N.field, N.dim)
    cols = [h.matrix.column(j) for h in hom_space(M, N) for j in range(M.dim)]
    return Subspace.span(N.field, N.dim, cols)


def _image_in(incl: ModMap, sub: Subspace) -> Subspace:
    return Subspace.span(incl.target.field, incl.target.dim, [incl.matrix.apply(v) for v in sub.vectors()])


def _preimage(f: ModMap, sub: Subspace) -> Subspace:
    """{x : f(x) in sub}."""
    if sub.dim == f.target.dim:
        return Subspace.full(f.source.field, f.source.dim)
    P = QuotientSpace(sub).projection_matrix()
    return kernel(P @ f.matrix)


def injective_module(A: Algebra, e: Vec, name: str = "") -> LeftModule:
    """I = D(eA): the right ideal eA dualised, a acting by the transpose of x -> x a."""
    fs = A.field
    Le = A.element_in([A.left(i) for i in range(A.dim)], e)
    sub = Subspace.from_mat(Le.T)
    vecs = sub.vectors()
    action = [
        Mat.from_columns(fs, sub.dim, [sub.coords(A.right(i).apply(w)) for w in vecs]).T
        for i in range(A.dim)
    ]
    return LeftModule(A, action, name=name or "D(eA)")


def _surjection_count(T: LeftModule, N: LeftModule) -> Optional[int]:
    """Least k found greedily with T^k -> N onto, or None."""
    if N.dim == 0:
        return 0
    H = hom_space(T, N)
    got = Subspace.zero(N.field, N.dim)
    k = 0
    for h in H:
        img = got + h.image()
        if img.dim > got.dim:
            got, k = img, k + 1
        if got.dim == N.dim:
            return k
    return None


# ---------------- álgebra estratificada ----------------

@dataclass
class StratFlags:
    standardly_stratified: bool
    properly_stratified: bool
    quasi_hereditary: bool
    partial_order: bool


@dataclass
class Presentation:
    P0: LeftModule
    cover: ModMap
    K: LeftModule
    incl: ModMap
    tops: List[Label]


@dataclass
class Ext1Result:
    dim: int
    cocycles: List[Mat] = field(default_factory=list, repr=False)
    presentation: Optional[Presentation] = field(default=None, repr=False)


class StratifiedAlgebra:
    """Algebra with primitive idempotents labelled by Lambda^+ and a preorder on the labels."""

    def __init__(self, algebra: Algebra, labels: Sequence[Label], idempotents: Sequence[Vec],
                 preorder: Iterable[Tuple[Label, Label]] = (), star: Optional[AntiInvolution] = None,
                 name: str = ""):
        if len(labels) != len(idempotents):
            raise PreconditionError("one idempotent per label")
        if len(set(labels)) != len(labels):
            raise PreconditionError("labels must be distinct")
        self.algebra = algebra
        self.labels = list(labels)
        self.idempotents: Dict[Label, Vec] = dict(zip(labels, idempotents))
        self.name = name or algebra.name
        self.star = star
        if star is not None:
            star.verify()
        check_idempotents(algebra, idempotents, star)
        self._leq = self._closure(preorder)
        simples = verify_split(algebra, idempotents)
        self.simples: Dict[Label, LeftModule] = dict(zip(labels, simples))
        self._cache: Dict[Tuple[str, Label], Any] = {}
        self._pres: Dict[Tuple[str, Label], Presentation] = {}
        self._flags: Optional[StratFlags] = None

    # ---------- orden ----------
    def _closure(self, pairs: Iterable[Tuple[Label, Label]]) -> Set[Tuple[Label, Label]]:
        rel = {(a, a) for a in self.labels}
        for a, b in pairs:
            if a not in self.idempotents or b not in self.idempotents:
                raise PreconditionError(f"unknown label in preorder pair {(a, b)}")
            rel.add((a, b))
        changed = True
        while changed:
            changed = False
            for (a, b), (c, d) in itertools.product(list(rel), list(rel)):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
        return rel

    def leq(self, a: Label, b: Label) -> bool:
        return (a, b) in self._leq

    def lt(self, a: Label, b: Label) -> bool:
        return self.leq(a, b) and not self.leq(b, a)

    def equivalent(self, a: Label, b: Label) -> bool:
        return self.leq(a, b) and self.leq(b, a)

    def above(self, lam: Label, strict: bool = True) -> List[Label]:
        if strict:
            return [mu for mu in self.labels if self.lt(lam, mu)]
        return [mu for mu in self.labels if self.leq(lam, mu)]

    def is_partial(self) -> bool:
        return all(not self.equivalent(a, b) for a, b in itertools.combinations(self.labels, 2))

    def maximal(self, among: Sequence[Label]) -> Label:
        for lam in among:
            if not any(self.lt(lam, mu) for mu in among):
                return lam
        raise PreconditionError("empty label set")

    def top_down(self) -> List[Label]:
        """Labels ordered so that larger labels come first."""
        rest = list(self.labels)
        out = []
        while rest:
            lam = self.maximal(rest)
            out.append(lam)
            rest.remove(lam)
        return out

    # ---------- módulos básicos ----------
    def _cached(self, kind: str, lam: Label, build) -> Any:
        key = (kind, lam)
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def pim(self, lam: Label) -> LeftModule:
        return self._cached("P", lam, lambda: projective_module(self.algebra, self.idempotents[lam], name=f"P({lam})"))

    def injective(self, lam: Label) -> LeftModule:
        return self._cached("I", lam, lambda: injective_module(self.algebra, self.idempotents[lam], name=f"I({lam})"))

    def simple(self, lam: Label) -> LeftModule:
        return self.simples[lam]

    def standard(self, lam: Label) -> LeftModule:
        def build():
            P = self.pim(lam)
            U = Subspace.zero(P.field, P.dim)
            for mu in self.above(lam):
                U = U + trace_submodule(self.pim(mu), P)
            D, _ = P.quotient(U, name=f"Delta({lam})")
            return D

        return self._cached("D", lam, build)

    def proper_standard(self, lam: Label) -> LeftModule:
        def build():
            P = self.pim(lam)
            R, incl = P.submodule(module_radical(P), name=f"rad P({lam})")
            U = Subspace.zero(P.field, P.dim)
            for mu in self.above(lam, strict=False):
                U = U + _image_in(incl, trace_submodule(self.pim(mu), R))
            D, _ = P.quotient(U, name=f"pDelta({lam})")
            return D

        return self._cached("pD", lam, build)

    def costandard(self, lam: Label) -> LeftModule:
        def build():
            I = self.injective(lam)
            mats = [h.matrix for mu in self.above(lam) for h in hom_space(I, self.injective(mu))]
            sub = kernel(Mat.vstack(I.field, mats)) if mats else Subspace.full(I.field, I.dim)
            N, _ = I.submodule(sub, name=f"Nabla({lam})")
            return N

        return self._cached("N", lam, build)

    def proper_costandard(self, lam: Label) -> LeftModule:
        def build():
            I = self.injective(lam)
            Ibar, p = I.quotient(socle(I))
            if Ibar.dim == 0:
                sub = Subspace.full(I.field, I.dim)
            else:
                mats = [h.matrix for mu in self.above(lam, strict=False)
                        for h in hom_space(Ibar, self.injective(mu))]
                kbar = kernel(Mat.vstack(I.field, mats)) if mats else Subspace.full(I.field, Ibar.dim)
                sub = _preimage(p, kbar)
            N, _ = I.submodule(sub, name=f"pNabla({lam})")
            return N

        return self._cached("pN", lam, build)

    def composition_factors(self, M: LeftModule) -> Dict[Label, int]:
        return {lam: multiplicity(M, self.idempotents[lam]) for lam in self.labels}

    # ---------- presentaciones y Ext^1 ----------
    def projective_cover(self, M: LeftModule) -> Tuple[LeftModule, ModMap, List[Label]]:
        """(+) P(lam) -> M onto, one summand per simple in the top of M."""
        fs = M.field
        rad = module_radical(M)
        gens: List[Vec] = []
        tops: List[Label] = []
        for lam in self.labels:
            E = M.act(self.idempotents[lam])
            eM = Subspace.span(fs, M.dim, [E.column(j) for j in range(M.dim)])
            have = (eM & rad)
            for v in eM.vectors():
                if not have.contains(v):
                    gens.append(v)
                    tops.append(lam)
                    have = have + Subspace.span(fs, M.dim, [v])
        if not gens:
            raise PreconditionError(f"{M.name} is zero")
        pims = [self.pim(lam) for lam in tops]
        P0 = direct_sum(pims, name="P0")
        cols: List[Vec] = []
        for lam, m in zip(tops, gens):
            for w in projective_module_basis(self.algebra, self.idempotents[lam]):
                cols.append(self.algebra.element_in(M.action, w).apply(m))
        cover = ModMap(P0, M, Mat.from_columns(fs, M.dim, cols))
        if not cover.is_surjective():
            raise PreconditionError(f"top lifts do not generate {M.name}")
        return P0, cover, tops

    def presentation(self, M: LeftModule) -> Presentation:
        P0, cover, tops = self.projective_cover(M)
        K, incl = P0.submodule(cover.kernel(), name=f"Omega({M.name})")
        return Presentation(P0, cover, K, incl, tops)

    def _presentation_of(self, kind: str, lam: Label) -> Presentation:
        key = (kind, lam)
        if key not in self._pres:
            M = self.standard(lam) if kind == "D" else self.proper_standard(lam)
            self._pres[key] = self.presentation(M)
        return self._pres[key]

    def ext1(self, M: LeftModule, N: LeftModule, pres: Optional[Presentation] = None) -> Ext1Result:
        """Ext^1(M, N) = Hom(Omega M, N) / restrictions of Hom(P0, N)."""
        if M.dim == 0 or N.dim == 0:
            return Ext1Result(0)
        pres = pres or self.presentation(M)
        if pres.K.dim == 0:
            return Ext1Result(0, [], pres)
        H = [h.matrix for h in hom_space(pres.K, N)]
        if not H:
            return Ext1Result(0, [], pres)
        fs = N.field
        n = N.dim * pres.K.dim
        R = Subspace.span(fs, n, [(h.matrix @ pres.incl.matrix).flatten() for h in hom_space(pres.P0, N)])
        cocycles = []
        for X in H:
            v = X.flatten()
            if not R.contains(v):
                cocycles.append(X)
                R = R + Subspace.span(fs, n, [v])
        return Ext1Result(len(cocycles), cocycles, pres)

    def ext1_from_standard(self, lam: Label, N: LeftModule) -> Ext1Result:
        return self.ext1(self.standard(lam), N, self._presentation_of("D", lam))

    def universal_extension(self, M: LeftModule, lam: Label) -> Tuple[LeftModule, ModMap, int]:
        """0 -> M -> E -> Delta(lam)^e -> 0 realising a basis of Ext^1(Delta(lam), M)."""
        ext = self.ext1_from_standard(lam, M)
        if ext.dim == 0:
            return M, ModMap(M, M, Mat.identity(M.field, M.dim)), 0
        pres = ext.presentation
        e = ext.dim
        B = direct_sum([M] + [pres.P0] * e, name=f"{M.name}+P0^{e}")
        p0 = pres.P0.dim
        vecs: List[Vec] = []
        for j, c in enumerate(ext.cocycles):
            off = M.dim + j * p0
            for t in range(pres.K.dim):
                v = dict(c.column(t))
                for i, x in pres.incl.matrix.column(t).items():
                    v[off + i] = -x
                vecs.append(v)
        Z = Subspace.span(M.field, B.dim, vecs)
        E, proj = B.quotient(Z, name=f"E({M.name},{lam})")
        emb = Mat.from_dod(M.field, (B.dim, M.dim), {i: {i: M.field.domain.one} for i in range(M.dim)})
        return E, ModMap(M, E, proj.matrix @ emb), e

    # ---------- filtraciones ----------
    def filtration_witness(self, M: LeftModule) -> Optional[List[Tuple[Label, int]]]:
        """Delta-filtration from the bottom: the trace of P(lam), lam maximal, must be a sum of Delta(lam)."""
        steps: List[Tuple[Label, int]] = []
        cur = M
        while cur.dim:
            cf = self.composition_factors(cur)
            present = [lam for lam in self.labels if cf[lam]]
            top_lab = self.maximal(present)
            cls = [lam for lam in present if self.equivalent(lam, top_lab)]
            U = Subspace.zero(cur.field, cur.dim)
            for lam in cls:
                U = U + trace_submodule(self.pim(lam), cur)
            Umod, _ = cur.submodule(U)
            mult = self._split_as_standards(Umod, cls)
            if mult is None:
                return None
            steps.extend((lam, k) for lam, k in mult.items() if k)
            cur, _ = cur.quotient(U)
        return steps

    def _split_as_standards(self, U: LeftModule, cls: List[Label]) -> Optional[Dict[Label, int]]:
        dims = [self.standard(lam).dim for lam in cls]
        ranges = [range(U.dim // d + 1) for d in dims]
        for ks in itertools.product(*ranges):
            if sum(k * d for k, d in zip(ks, dims)) != U.dim:
                continue
            parts = [self.standard(lam) for lam, k in zip(cls, ks) for _ in range(k)]
            if parts and is_isomorphic(U, direct_sum(parts)):
                return dict(zip(cls, ks))
        return None

    def _proper_filtered(self, M: LeftModule, lam: Label) -> bool:
        """M has a filtration with all factors pDelta(lam)."""
        target = self.proper_standard(lam)
        cur = M
        while cur.dim:
            top_cf = self.composition_factors(cur.quotient(module_radical(cur))[0])
            k = top_cf[lam]
            if k == 0 or any(top_cf[mu] for mu in self.labels if mu != lam):
                return False
            R, incl = cur.submodule(module_radical(cur))
            X = Subspace.zero(cur.field, cur.dim)
            for mu in self.above(lam, strict=False):
                X = X + _image_in(incl, trace_submodule(self.pim(mu), R))
            Q, _ = cur.quotient(X)
            if not is_isomorphic(Q, target.power(k)):
                return False
            cur, _ = cur.submodule(X)
        return True

    def flags(self) -> StratFlags:
        if self._flags is None:
            ss = True
            for lam in self.labels:
                D = self.standard(lam)
                cf = self.composition_factors(D)
                if any(k and not self.leq(mu, lam) for mu, k in cf.items()):
                    ss = False
                    break
                P = self.pim(lam)
                U = Subspace.zero(P.field, P.dim)
                for mu in self.above(lam):
                    U = U + trace_submodule(self.pim(mu), P)
                Umod, _ = P.submodule(U)
                wit = self.filtration_witness(Umod)
                if wit is None or any(not self.lt(lam, mu) for mu, _ in wit):
                    ss = False
                    break
            ps = ss
            if ps:
                for lam in self.labels:
                    pD = self.proper_standard(lam)
                    cf = self.composition_factors(pD)
                    cf[lam] -= 1
                    if any(k and not self.lt(mu, lam) for mu, k in cf.items()):
                        ps = False
                        break
                    if not self._proper_filtered(self.standard(lam), lam):
                        ps = False
                        break
            qh = ss and self.is_partial() and all(
                self.standard(lam).dim == self.proper_standard(lam).dim for lam in self.labels)
            self._flags = StratFlags(ss, ps, qh, self.is_partial())
            log.info("[strat] %s flags: %s", self.name, self._flags)
        return self._flags

    def _require(self, qh: bool = False) -> None:
        fl = self.flags()
        if not fl.standardly_stratified:
            raise PreconditionError(f"{self.name} is not standardly stratified for this preorder")
        if qh and not fl.quasi_hereditary:
            raise PreconditionError(f"{self.name} is not quasi-hereditary for this order")

    def has_delta_filtration(self, M: LeftModule) -> Tuple[bool, Optional[List[Tuple[Label, int]]]]:
        """Ext^1(M, pNabla(nu)) = 0 for all nu, with a witness when it holds."""
        self._require()
        if M.dim == 0:
            return True, []
        pres = self.presentation(M)
        for nu in self.labels:
            if self.ext1(M, self.proper_costandard(nu), pres).dim:
                return False, None
        return True, self.filtration_witness(M)

    def has_proper_nabla_filtration(self, M: LeftModule) -> bool:
        self._require()
        return all(self.ext1_from_standard(nu, M).dim == 0 for nu in self.labels)

    def is_tilting(self, M: LeftModule) -> bool:
        return self.has_delta_filtration(M)[0] and self.has_proper_nabla_filtration(M)

    # ---------- tilting ----------
    def tilting(self, lam: Label, max_steps: Optional[int] = None) -> LeftModule:
        def build():
            self._require(qh=True)
            bound = max_steps if max_steps is not None else int(config.setting("tilting_max_steps"))
            M = self.standard(lam)
            step = 0
            while True:
                pending = [mu for mu in self.labels if self.ext1_from_standard(mu, M).dim]
                if not pending:
                    break
                if step >= bound:
                    raise NonTermination(f"T({lam}) not reached after {bound} universal extensions")
                mu = self.maximal(pending)
                M, _, e = self.universal_extension(M, mu)
                step += 1
                log.debug("[tilting] T(%s): step %d, extended by Delta(%s)^%d -> dim %d", lam, step, mu, e, M.dim)
            if not is_local_endomorphism_ring(M):
                raise HypothesisFailed(f"T({lam}) came out decomposable", label=lam)
            M.name = f"T({lam})"
            return M

        return self._cached("T", lam, build)

    def characteristic_tilting(self) -> Tuple[LeftModule, Dict[Label, Tuple[int, int]]]:
        blocks: Dict[Label, Tuple[int, int]] = {}
        off = 0
        mods = []
        for lam in self.labels:
            T = self.tilting(lam)
            blocks[lam] = (off, T.dim)
            off += T.dim
            mods.append(T)
        return direct_sum(mods, name="T~"), blocks

    def tilting_from_multiplicities(self, mults: Dict[Label, int]) -> LeftModule:
        mods = [self.tilting(lam) for lam in self.labels for _ in range(mults.get(lam, 0))]
        if not mods:
            return LeftModule.zero(self.algebra)
        name = "+".join(f"T({lam})^{mults[lam]}" for lam in self.labels if mults.get(lam))
        return direct_sum(mods, name=name)

    def __repr__(self) -> str:
        return f"StratifiedAlgebra({self.name}, labels={self.labels})"


def projective_module_basis(A: Algebra, e: Vec) -> List[Vec]:
    """Basis of A e as vectors of A (same order as projective_module)."""
    Re = A.element_in([A.right(i) for i in range(A.dim)], e)
    return Subspace.from_mat(Re.T).vectors()


# ---------------- operaciones ----------------

def standard_module(S: StratifiedAlgebra, lam: Label) -> LeftModule:
    return S.standard(lam)


def proper_standard(S: StratifiedAlgebra, lam: Label) -> LeftModule:
    return S.proper_standard(lam)


def costandard(S: StratifiedAlgebra, lam: Label) -> LeftModule:
    return S.costandard(lam)


def proper_costandard(S: StratifiedAlgebra, lam: Label) -> LeftModule:
    return S.proper_costandard(lam)


def ext1(S: StratifiedAlgebra, M: LeftModule, N: LeftModule) -> Ext1Result:
    return S.ext1(M, N)


def has_delta_filtration(S: StratifiedAlgebra, M: LeftModule) -> Tuple[bool, Optional[List[Tuple[Label, int]]]]:
    return S.has_delta_filtration(M)


def has_proper_nabla_filtration(S: StratifiedAlgebra, M: LeftModule) -> bool:
    return S.has_proper_nabla_filtration(M)


def tilting_indecomposable(S: StratifiedAlgebra, lam: Label) -> LeftModule:
    return S.tilting(lam)


def is_properly_stratified(S: StratifiedAlgebra) -> bool:
    return S.flags().properly_stratified


def is_quasi_hereditary(S: StratifiedAlgebra) -> bool:
    return S.flags().quasi_hereditary


# ---------------- dualidad ----------------

@dataclass
class Duality:
    stratalg: StratifiedAlgebra
    star: AntiInvolution

    def dual_module(self, M: LeftModule) -> LeftModule:
        """M° = D(M) with a acting through a*."""
        S = self.star.matrix
        action = [M.act(S.column(i)).T for i in range(M.algebra.dim)]
        return LeftModule(M.algebra, action, name=f"{M.name}°")

    def verify(self) -> None:
        self.star.verify()
        for lam in self.stratalg.labels:
            L = self.stratalg.simple(lam)
            if not is_isomorphic(self.dual_module(L), L):
                raise StarNotFixing(f"the duality moves L({lam})")


def duality_of(S: StratifiedAlgebra) -> Duality:
    if S.star is None:
        raise PreconditionError(f"{S.name} has no anti-involution")
    D = Duality(S, S.star)
    D.verify()
    return D


def dual_module(M: LeftModule, D: Duality) -> LeftModule:
    return D.dual_module(M)


# ---------------- dual de Ringel ----------------

@dataclass
class RingelDual:
    stratalg: StratifiedAlgebra
    algebra: Algebra
    tilde: LeftModule
    blocks: Dict[Label, Tuple[int, int]]

    def idempotent(self, lam: Label) -> Vec:
        off, d = self.blocks[lam]
        fs = self.algebra.field
        n = self.tilde.dim
        E = Mat.from_dod(fs, (n, n), {off + k: {off + k: fs.domain.one} for k in range(d)})
        return self.algebra._mat_coords(E)

    def apply(self, M: LeftModule) -> LeftModule:
        """R(M) = Hom_A(M, T~) with End(T~) acting by postcomposition."""
        H = [h.matrix for h in hom_space(M, self.tilde)]
        R = self.algebra
        if not H:
            return LeftModule.zero(R)
        span = span_of_matrices(H)
        shape = H[0].shape
        basis = [Mat.unflatten(R.field, shape, v) for v in span.vectors()]
        action = [Mat.from_columns(R.field, span.dim, [span.coords((X @ h).flatten()) for h in basis])
                  for X in R.basis_mats]
        return LeftModule(R, action, name=f"R({M.name})")

    def projective(self, lam: Label) -> LeftModule:
        return projective_module(self.algebra, self.idempotent(lam), name=f"R(A)e({lam})")


def ringel_dual(S: StratifiedAlgebra) -> RingelDual:
    S._require(qh=True)
    T, blocks = S.characteristic_tilting()
    E, _ = endomorphism_algebra(T)
    E.name = f"R({S.name})"
    log.info("[ringel] %s: dim T~=%d, dim R(A)=%d", S.name, T.dim, E.dim)
    return RingelDual(S, E, T, blocks)


# ---------------- tilting mínimo con DCP ----------------

@dataclass
class MinimalTilting:
    labels: List[Label]
    module: LeftModule
    dcp: DCPResult = field(repr=False)
    oracle: Optional[List[Label]] = None
    faithful_dcp_subsets: List[List[Label]] = field(default_factory=list, repr=False)

    @property
    def agrees_with_oracle(self) -> bool:
        return self.oracle is None or sorted(map(str, self.oracle)) == sorted(map(str, self.labels))


def _basic(S: StratifiedAlgebra, labels: Sequence[Label]) -> LeftModule:
    return S.tilting_from_multiplicities({lam: 1 for lam in labels})


def minimal_tilting_oracle(S: StratifiedAlgebra) -> Tuple[Optional[List[Label]], List[List[Label]]]:
    """Smallest label subsets whose basic tilting module is faithful with bijective DCP."""
    A = S.algebra
    found: List[List[Label]] = []
    first: Optional[List[Label]] = None
    for size in range(1, len(S.labels) + 1):
        for sub in itertools.combinations(S.labels, size):
            T = _basic(S, sub)
            if is_faithful(T) and double_centralizer_map(A, T).bijective:
                found.append(list(sub))
                if first is None:
                    first = list(sub)
    return first, found


def minimal_dcp_tilting(S: StratifiedAlgebra, run_oracle: Optional[bool] = None) -> MinimalTilting:
    """Basic part of R^{-1} of the projective cover of T~ over the Ringel dual."""
    duality_of(S)
    R = ringel_dual(S)
    E = R.algebra
    nat = E.natural_module()
    J = E.radical()
    fs = E.field
    rad_cols = []
    for x in J.vectors():
        X = nat.act(x)
        rad_cols.extend(X.column(j) for j in range(nat.dim))
    JT = Subspace.span(fs, nat.dim, rad_cols)
    chosen = []
    for lam in S.labels:
        Eps = nat.act(R.idempotent(lam))
        if any(not JT.contains(Eps.column(j)) for j in range(nat.dim)):
            chosen.append(lam)
    T = _basic(S, chosen)
    res = double_centralizer_map(S.algebra, T)
    out = MinimalTilting(chosen, T, res)
    cap = int(config.setting("oracle_max_labels"))
    if run_oracle is None:
        run_oracle = len(S.labels) <= cap
    if run_oracle:
        out.oracle, out.faithful_dcp_subsets = minimal_tilting_oracle(S)
    log.info("[mintilt] %s: construction %s, oracle %s", S.name, chosen, out.oracle)
    return out


# ---------------- comprobadores ----------------

@dataclass
class CheckReport:
    check: str
    instance: str
    hypotheses: List[Dict[str, Any]] = field(default_factory=list)
    conclusions: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c["holds"] for c in self.hypotheses + self.conclusions)

    def add(self, where: str, name: str, holds: bool, **extra: Any) -> None:
        getattr(self, where).append({"name": name, "holds": bool(holds), **extra})

    def as_dict(self) -> Dict[str, Any]:
        return {"check": self.check, "instance": self.instance, "hypotheses": self.hypotheses,
                "conclusions": self.conclusions, "pass": self.passed}


def _tilting_hypothesis(S: StratifiedAlgebra, T: LeftModule, rep: CheckReport) -> None:
    ok = S.is_tilting(T)
    rep.add("hypotheses", "tilting", ok)
    if not ok:
        raise HypothesisFailed(f"{T.name} is not a tilting module")


def check_embedding_criterion(S: StratifiedAlgebra, T: LeftModule, r: Optional[int] = None) -> CheckReport:
    """Delta(lam) -> T^r and T^r -> pNabla(lam) for every lam give faithfulness and DCP."""
    rep = CheckReport("embedding-epimorphism criterion", f"{S.name} / {T.name}")
    _tilting_hypothesis(S, T, rep)
    need = 0
    for lam in S.labels:
        try:
            emb = embed_into_add(S.standard(lam), T)
        except NotEmbeddable as exc:
            rep.add("hypotheses", f"Delta({lam}) embeds", False)
            raise HypothesisFailed(str(exc), label=lam) from exc
        k = _surjection_count(T, S.proper_costandard(lam))
        if k is None:
            rep.add("hypotheses", f"T^r onto pNabla({lam})", False)
            raise HypothesisFailed(f"no surjection from add({T.name}) onto pNabla({lam})", label=lam)
        need = max(need, emb.r, k)
        rep.add("hypotheses", f"Delta({lam}) -> T^{emb.r}, T^{k} -> pNabla({lam})", True)
    r = need if r is None else r
    if r < need:
        rep.add("hypotheses", f"r={r} suffices", False, needed=need)
        raise HypothesisFailed(f"r={r} is too small, need {need}")
    rep.add("hypotheses", f"r={r} suffices", True, needed=need)
    rep.add("conclusions", "faithful", is_faithful(T))
    res = double_centralizer_map(S.algebra, T)
    rep.add("conclusions", "double centralizer", res.bijective, dim_a=res.dim_a, dim_a2=res.dim_a2)
    return rep


def check_faithful_tilting_embedding(S: StratifiedAlgebra, T: LeftModule) -> CheckReport:
    """A -> T^r with cokernel in F(Delta), and T^{dim Nabla(lam)} -> Nabla(lam) onto."""
    duality_of(S)
    S._require(qh=True)
    rep = CheckReport("faithful tilting embedding", f"{S.name} / {T.name}")
    if not is_faithful(T):
        rep.add("hypotheses", "faithful", False)
        raise HypothesisFailed(f"{T.name} is not faithful")
    rep.add("hypotheses", "faithful", True)
    _tilting_hypothesis(S, T, rep)
    R = S.algebra.regular_module()
    emb = embed_into_add(R, T, minimize=False)  # left add(T)-approximation
    C, _ = emb.map.target.quotient(emb.map.image(), name=f"T^{emb.r}/A")
    ok, wit = S.has_delta_filtration(C)
    rep.add("conclusions", f"coker(A -> T^{emb.r}) in F(Delta)", ok, witness=[(str(a), k) for a, k in (wit or [])])
    for lam in S.labels:
        N = S.costandard(lam)
        k = _surjection_count(T, N)
        rep.add("conclusions", f"T^{N.dim} -> Nabla({lam}) onto", k is not None and k <= N.dim)
        try:
            e = embed_into_add(S.standard(lam), T)
            rep.add("conclusions", f"Delta({lam}) -> T^{N.dim}", e.r <= N.dim)
        except NotEmbeddable:
            rep.add("conclusions", f"Delta({lam}) -> T^{N.dim}", False)
    return rep


def check_faithful_tilting_dcp(S: StratifiedAlgebra, T: LeftModule) -> CheckReport:
    """Faithful tilting over a quasi-hereditary algebra with duality has DCP."""
    rep = check_faithful_tilting_embedding(S, T)
    rep.check = "faithful tilting double centralizer"
    res = double_centralizer_map(S.algebra, T)
    rep.add("conclusions", "double centralizer", res.bijective, dim_a=res.dim_a, dim_a2=res.dim_a2)
    return rep


def multiplicities_in_tilting(S: StratifiedAlgebra, T: LeftModule) -> Dict[Label, int]:
    """(T : T(lam)) from (T : Delta(mu)) = dim Hom(T, Nabla(mu)), solved top-down."""
    S._require(qh=True)
    delta_mult = {mu: len(hom_space(T, S.costandard(mu))) for mu in S.labels}
    table = {lam: {mu: len(hom_space(S.tilting(lam), S.costandard(mu))) for mu in S.labels} for lam in S.labels}
    out: Dict[Label, int] = {}
    for lam in S.top_down():
        t = delta_mult[lam] - sum(out[nu] * table[nu][lam] for nu in out)
        if t < 0 or table[lam][lam] != 1:
            raise HypothesisFailed(f"{T.name} is not a sum of indecomposable tiltings", label=lam)
        out[lam] = t
    return out


@dataclass
class SaturatedResult:
    saturated: bool
    support: List[Label]
    faithful: bool
    dcp: Optional[bool] = None


def is_saturated_tilting(S: StratifiedAlgebra, T: LeftModule) -> SaturatedResult:
    mult = multiplicities_in_tilting(S, T)
    support = [lam for lam in S.labels if mult[lam]]
    sat = all(mu in support for lam in support for mu in S.labels if S.leq(mu, lam))
    faithful = is_faithful(T)
    dcp = double_centralizer_map(S.algebra, T).bijective if faithful else None
    return SaturatedResult(sat, support, faithful, dcp)


def random_multiplicities(S: StratifiedAlgebra, rng: random.Random, top: int = 2) -> Dict[Label, int]:
    return {lam: rng.randint(0, top) for lam in S.labels}


__all__ = [
    "StratifiedAlgebra", "StratFlags", "Duality", "RingelDual", "MinimalTilting", "CheckReport",
    "SaturatedResult", "Ext1Result", "trace_submodule", "injective_module", "dual_module", "duality_of",
    "ringel_dual", "minimal_dcp_tilting", "minimal_tilting_oracle", "check_embedding_criterion",
    "check_faithful_tilting_embedding", "check_faithful_tilting_dcp", "multiplicities_in_tilting", "is_saturated_tilting",
    "random_multiplicities", "standard_module", "proper_standard", "costandard", "proper_costandard", "ext1",
    "has_delta_filtration", "has_proper_nabla_filtration", "tilting_indecomposable", "is_properly_stratified",
    "is_quasi_hereditary",
]
