# src/corpus.py
from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from fdalg import Algebra, AntiInvolution, LeftModule, check_split
from linalg import Mat, Vec
from scalar import CharUnsupported, FieldSpec, PreconditionError, elem_to_json, to_elem
from strat import StratifiedAlgebra

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1


@dataclass
class CorpusEntry:
    """Algebra plus the stratification data needed by strat (labels, idempotents, preorder, star)."""

    name: str
    algebra: Algebra
    labels: List[str]
    idempotents: List[Vec]
    preorder: List[Tuple[str, str]] = field(default_factory=list)
    star: Optional[Mat] = None
    notes: str = ""

    @property
    def fieldspec(self) -> FieldSpec:
        return self.algebra.field

    def anti_involution(self) -> Optional[AntiInvolution]:
        return AntiInvolution(self.algebra, self.star) if self.star is not None else None

    def stratified(self) -> StratifiedAlgebra:
        return StratifiedAlgebra(self.algebra, self.labels, self.idempotents, self.preorder,
                                 star=self.anti_involution(), name=self.name)


# ---------------- helpers ----------------

def _vec(fs: FieldSpec, coords: Dict[int, Any]) -> Vec:
    out = {k: to_elem(fs, x) for k, x in coords.items()}
    return {k: x for k, x in out.items() if x}


def _perm_star(fs: FieldSpec, images: Sequence[int]) -> Mat:
    """Star sending basis element i to basis element images[i]."""
    return Mat.from_entries(fs, (len(images), len(images)), {(j, i): 1 for i, j in enumerate(images)})


def _chain(labels: Sequence[str]) -> List[Tuple[str, str]]:
    return [(a, b) for a, b in zip(labels, labels[1:])]


# ---------------- álgebras ----------------

def ground_field(fs: FieldSpec) -> CorpusEntry:
    A = Algebra.from_products(fs, 1, {(0, 0): {0: 1}}, {0: 1}, name="K")
    return CorpusEntry("K", A, ["1"], [_vec(fs, {0: 1})], star=_perm_star(fs, [0]))


def product_of_fields(fs: FieldSpec, k: int = 3) -> CorpusEntry:
    A = Algebra.from_products(fs, k, {(i, i): {i: 1} for i in range(k)}, {i: 1 for i in range(k)}, name=f"K^{k}")
    labels = [str(i + 1) for i in range(k)]
    return CorpusEntry(f"K^{k}", A, labels, [_vec(fs, {i: 1}) for i in range(k)], _chain(labels),
                       star=_perm_star(fs, list(range(k))), notes="semisimple")


def matrix_algebra_2(fs: FieldSpec) -> CorpusEntry:
    # basis E11, E12, E21, E22
    idx = {(1, 1): 0, (1, 2): 1, (2, 1): 2, (2, 2): 3}
    prods = {}
    for (i, j), a in idx.items():
        for (k, l), b in idx.items():
            if j == k:
                prods[(a, b)] = {idx[(i, l)]: 1}
    A = Algebra.from_products(fs, 4, prods, {0: 1, 3: 1}, name="M2")
    return CorpusEntry("M2", A, ["1"], [_vec(fs, {0: 1})], star=_perm_star(fs, [0, 2, 1, 3]),
                       notes="transpose duality")


def matrix_times_field(fs: FieldSpec) -> CorpusEntry:
    idx = {(1, 1): 0, (1, 2): 1, (2, 1): 2, (2, 2): 3}
    prods: Dict[Tuple[int, int], Dict[int, Any]] = {(4, 4): {4: 1}}
    for (i, j), a in idx.items():
        for (k, l), b in idx.items():
            if j == k:
                prods[(a, b)] = {idx[(i, l)]: 1}
    A = Algebra.from_products(fs, 5, prods, {0: 1, 3: 1, 4: 1}, name="M2xK")
    return CorpusEntry("M2xK", A, ["a", "b"], [_vec(fs, {0: 1}), _vec(fs, {4: 1})], [("b", "a")],
                       star=_perm_star(fs, [0, 2, 1, 3, 4]))


def path_algebra_a2(fs: FieldSpec, order: str = "1<2") -> CorpusEntry:
    """Path algebra of 1 -> 2; basis e1, e2, a with a = e2 a e1."""
    prods = {(0, 0): {0: 1}, (1, 1): {1: 1}, (1, 2): {2: 1}, (2, 0): {2: 1}}
    A = Algebra.from_products(fs, 3, prods, {0: 1, 1: 1}, name="A2")
    pre = [("1", "2")] if order == "1<2" else [("2", "1")]
    return CorpusEntry(f"A2[{order}]", A, ["1", "2"], [_vec(fs, {0: 1}), _vec(fs, {1: 1})], pre,
                       notes="upper triangular 2x2 matrices")


def truncated_polynomial(fs: FieldSpec, k: int = 2) -> CorpusEntry:
    """K[x]/(x^k); k = 2 gives the dual numbers."""
    prods = {(i, j): {i + j: 1} for i in range(k) for j in range(k) if i + j < k}
    A = Algebra.from_products(fs, k, prods, {0: 1}, name=f"K[x]/x^{k}")
    return CorpusEntry(f"K[x]/x^{k}", A, ["1"], [_vec(fs, {0: 1})], star=_perm_star(fs, list(range(k))),
                       notes="local, commutative")


def exterior_algebra_2(fs: FieldSpec) -> CorpusEntry:
    # 1, x, y, xy
    prods = {(0, 0): {0: 1}, (0, 1): {1: 1}, (0, 2): {2: 1}, (0, 3): {3: 1},
             (1, 0): {1: 1}, (2, 0): {2: 1}, (3, 0): {3: 1},
             (1, 2): {3: 1}, (2, 1): {3: -1}}
    A = Algebra.from_products(fs, 4, prods, {0: 1}, name="Lambda(K^2)")
    return CorpusEntry("Lambda(K^2)", A, ["1"], [_vec(fs, {0: 1})], notes="local")


def kronecker(fs: FieldSpec) -> CorpusEntry:
    """Two arrows a, b : 1 -> 2."""
    prods = {(0, 0): {0: 1}, (1, 1): {1: 1}, (1, 2): {2: 1}, (2, 0): {2: 1}, (1, 3): {3: 1}, (3, 0): {3: 1}}
    A = Algebra.from_products(fs, 4, prods, {0: 1, 1: 1}, name="Kronecker")
    return CorpusEntry("Kronecker", A, ["1", "2"], [_vec(fs, {0: 1}), _vec(fs, {1: 1})], [("1", "2")])


def cyclic_group_2(fs: FieldSpec) -> CorpusEntry:
    A = Algebra.from_products(fs, 2, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: 1}},
                              {0: 1}, name="K[C2]")
    star = _perm_star(fs, [0, 1])
    if fs.characteristic == 2:
        return CorpusEntry("K[C2]", A, ["1"], [_vec(fs, {0: 1})], star=star, notes="local in char 2")
    half = to_elem(fs, "1/2")
    e_plus = {0: half, 1: half}
    e_minus = {0: half, 1: -half}
    return CorpusEntry("K[C2]", A, ["+", "-"], [e_plus, e_minus], [("+", "-")], star=star, notes="semisimple")


def zigzag(fs: FieldSpec) -> CorpusEntry:
    """Basis e1, e2, a: 1->2, b: 2->1, c = ba; ab = 0. Quasi-hereditary for 1 < 2, star swaps a and b."""
    prods = {
        (0, 0): {0: 1}, (1, 1): {1: 1},
        (1, 2): {2: 1}, (2, 0): {2: 1},  # a = e2 a e1
        (0, 3): {3: 1}, (3, 1): {3: 1},  # b = e1 b e2
        (3, 2): {4: 1},                  # b a = c
        (0, 4): {4: 1}, (4, 0): {4: 1},
    }
    A = Algebra.from_products(fs, 5, prods, {0: 1, 1: 1}, name="Zigzag")
    return CorpusEntry("Zigzag", A, ["1", "2"], [_vec(fs, {0: 1}), _vec(fs, {1: 1})], [("1", "2")],
                       star=_perm_star(fs, [0, 1, 3, 2, 4]), notes="quasi-hereditary with duality")


def symplectic_schur_1_2(fs: FieldSpec) -> CorpusEntry:
    """S^sy(1,2) with labels the weights (2) and (0); star is the matrix transpose."""
    from spsw import schur_algebra

    rep = schur_algebra(1, 2, fs)
    A = rep.Ssy
    T = rep.tensorspace
    top = T.index((1, 1))
    P = Mat.from_entries(fs, (T.dim, T.dim), {(top, top): 1})
    E = T.generator_matrix("e", 1).scale("-1/2")
    star = Mat.from_columns(fs, A.dim, [A._mat_coords(B.T) for B in A.basis_mats])
    return CorpusEntry("Ssy(1,2)", A, ["2", "0"], [A._mat_coords(P), A._mat_coords(E)], [("0", "2")],
                       star=star, notes="semisimple in char 0 and char > 2")


BUILDERS: Dict[str, Callable[[FieldSpec], CorpusEntry]] = {
    "K": ground_field,
    "K^3": product_of_fields,
    "M2": matrix_algebra_2,
    "M2xK": matrix_times_field,
    "A2[1<2]": lambda fs: path_algebra_a2(fs, "1<2"),
    "A2[2<1]": lambda fs: path_algebra_a2(fs, "2<1"),
    "K[x]/x^2": lambda fs: truncated_polynomial(fs, 2),
    "K[x]/x^3": lambda fs: truncated_polynomial(fs, 3),
    "Lambda(K^2)": exterior_algebra_2,
    "Kronecker": kronecker,
    "K[C2]": cyclic_group_2,
    "Zigzag": zigzag,
}


def builtin(name: str, fs: Optional[FieldSpec] = None) -> CorpusEntry:
    fs = fs or FieldSpec.rationals()
    if name == "Ssy(1,2)":
        return symplectic_schur_1_2(fs)
    try:
        return BUILDERS[name](fs)
    except KeyError:
        raise PreconditionError(f"unknown corpus algebra {name!r}; known: {', '.join(names())}") from None


def names() -> List[str]:
    return list(BUILDERS) + ["Ssy(1,2)"]


def all_entries(fs: Optional[FieldSpec] = None, include_schur: bool = False) -> List[CorpusEntry]:
    fs = fs or FieldSpec.rationals()
    out = [build(fs) for build in BUILDERS.values()]
    if include_schur:
        out.append(symplectic_schur_1_2(fs))
    return out


# ---------------- JSON ----------------

def _vec_json(fs: FieldSpec, v: Vec, n: int) -> List[str]:
    return [elem_to_json(fs, v[k]) if k in v else "0" for k in range(n)]


def _mat_json(fs: FieldSpec, M: Mat) -> List[List[str]]:
    return [[elem_to_json(fs, M.get(i, j)) for j in range(M.cols)] for i in range(M.rows)]


def entry_to_json(entry: CorpusEntry) -> Dict[str, Any]:
    A, fs = entry.algebra, entry.fieldspec
    return {
        "schema": SCHEMA_VERSION,
        "name": entry.name,
        "field": str(fs),
        "dim": A.dim,
        "mult": A.structure_constants(),
        "unit": _vec_json(fs, A.unit, A.dim),
        "labels": list(entry.labels),
        "idempotents": [_vec_json(fs, e, A.dim) for e in entry.idempotents],
        "preorder": [list(p) for p in entry.preorder],
        "star": _mat_json(fs, entry.star) if entry.star is not None else None,
    }


def entry_from_json(data: Dict[str, Any], fs: Optional[FieldSpec] = None) -> CorpusEntry:
    fs = fs or FieldSpec.parse(data.get("field", "Q"))
    for key in ("dim", "mult", "unit"):
        if key not in data:
            raise PreconditionError(f"algebra file misses {key!r}")
    A = Algebra.from_structure_constants(fs, data["mult"], data["unit"], name=data.get("name", "A"))
    if A.dim != int(data["dim"]):
        raise PreconditionError(f"dim {data['dim']} does not match a table of size {A.dim}")
    idem = [_vec(fs, dict(enumerate(e))) for e in data.get("idempotents") or []]
    labels = [str(x) for x in data.get("labels") or [str(k + 1) for k in range(len(idem))]]
    star = None
    if data.get("star") is not None:
        star = Mat.from_rows(fs, data["star"])
    pre = [(str(a), str(b)) for a, b in data.get("preorder") or []]
    try:
        check_split(A, idem or None)
    except CharUnsupported as exc:
        log.warning("[corpus] splitness of %s not checked: %s", A.name, exc)
    return CorpusEntry(A.name, A, labels, idem, pre, star)


def dump(entry: CorpusEntry, path: str) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(entry_to_json(entry), f, indent=2, sort_keys=True)
    log.info("[corpus] wrote %s to %s", entry.name, path)


def load(path: str, fs: Optional[FieldSpec] = None) -> CorpusEntry:
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)
    return entry_from_json(data, fs)


def module_from_json(A: Algebra, data: Dict[str, Any]) -> LeftModule:
    """{dim, action: [matrix, ...]} with one matrix per basis element of A."""
    fs = A.field
    d = int(data["dim"])
    mats = [Mat.from_rows(fs, rows, cols=d) if d else Mat.zeros(fs, 0, 0) for rows in data["action"]]
    M = LeftModule(A, mats, name=data.get("name", "M"))
    M.verify()
    return M


__all__ = ["CorpusEntry", "builtin", "names", "all_entries", "entry_to_json", "entry_from_json", "dump", "load",
           "module_from_json", "SCHEMA_VERSION"]
