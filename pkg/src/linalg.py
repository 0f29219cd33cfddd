# src/linalg.py
from __future__ import annotations

import json
import logging
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import Poly, Symbol
from sympy.polys.matrices import DomainMatrix

from scalar import (
    AmbientMismatch,
    FieldMismatch,
    FieldSpec,
    NoSolution,
    Scalar,
    ShapeMismatch,
    elem_to_json,
    to_elem,
)

log = logging.getLogger(__name__)

Vec = Dict[int, Any]  # vector disperso: índice -> elemento del dominio

# filas máximas por sistema directo antes de pasar al refinamiento secuencial
_DIRECT_ROWS = 60000


def _clean(dod: Dict[int, Dict[int, Any]]) -> Dict[int, Dict[int, Any]]:
    out: Dict[int, Dict[int, Any]] = {}
    for i, row in dod.items():
        r = {j: v for j, v in row.items() if v}
        if r:
            out[i] = r
    return out


class Mat:
    """Exact sparse matrix over a FieldSpec (wraps a sympy DomainMatrix in SDM format)."""

    __slots__ = ("dm", "field")

    def __init__(self, dm: DomainMatrix, field: FieldSpec):
        if dm.domain != field.domain:
            raise FieldMismatch(f"matrix over {dm.domain}, expected {field}")
        self.dm = dm.to_sparse()
        self.field = field

    # ---------- constructores ----------
    @classmethod
    def from_dod(cls, fs: FieldSpec, shape: Tuple[int, int], dod: Dict[int, Dict[int, Any]]) -> "Mat":
        return cls(DomainMatrix(_clean(dod), shape, fs.domain), fs)

    @classmethod
    def zeros(cls, fs: FieldSpec, rows: int, cols: int) -> "Mat":
        return cls(DomainMatrix({}, (rows, cols), fs.domain), fs)

    @classmethod
    def identity(cls, fs: FieldSpec, n: int) -> "Mat":
        return cls(DomainMatrix.eye(n, fs.domain), fs)

    @classmethod
    def from_rows(cls, fs: FieldSpec, rows: Sequence[Sequence[Any]], cols: Optional[int] = None) -> "Mat":
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        dod: Dict[int, Dict[int, Any]] = {}
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise ShapeMismatch(f"row {i} has {len(r)} entries, expected {ncols}")
            dod[i] = {j: to_elem(fs, x) for j, x in enumerate(r)}
        return cls.from_dod(fs, (len(rows), ncols), dod)

    @classmethod
    def from_entries(cls, fs: FieldSpec, shape: Tuple[int, int], entries: Dict[Tuple[int, int], Any]) -> "Mat":
        dod: Dict[int, Dict[int, Any]] = {}
        for (i, j), x in entries.items():
            dod.setdefault(i, {})[j] = to_elem(fs, x)
        return cls.from_dod(fs, shape, dod)

    @classmethod
    def diagonal_of(cls, fs: FieldSpec, values: Sequence[Any]) -> "Mat":
        return cls.from_dod(fs, (len(values), len(values)), {i: {i: to_elem(fs, v)} for i, v in enumerate(values)})

    @classmethod
    def from_vectors(cls, fs: FieldSpec, n: int, vecs: Sequence[Vec]) -> "Mat":
        """Rows = the given sparse vectors."""
        return cls.from_dod(fs, (len(vecs), n), {i: dict(v) for i, v in enumerate(vecs)})

    @classmethod
    def from_columns(cls, fs: FieldSpec, n: int, vecs: Sequence[Vec]) -> "Mat":
        return cls.from_vectors(fs, n, vecs).T

    # ---------- acceso ----------
    @property
    def rows(self) -> int:
        return self.dm.shape[0]

    @property
    def cols(self) -> int:
        return self.dm.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.dm.shape

    @property
    def dod(self) -> Dict[int, Dict[int, Any]]:
        return self.dm.rep

    def get(self, i: int, j: int):
        return self.dm.rep.get(i, {}).get(j, self.field.domain.zero)

    def __getitem__(self, ij: Tuple[int, int]) -> Scalar:
        return Scalar.from_elem(self.field, self.get(*ij))

    def row(self, i: int) -> Vec:
        return dict(self.dm.rep.get(i, {}))

    def column(self, j: int) -> Vec:
        return {i: r[j] for i, r in self.dm.rep.items() if j in r}

    def nnz(self) -> int:
        return sum(len(r) for r in self.dm.rep.values())

    # ---------- aritmética ----------
    def _same(self, other: "Mat") -> None:
        if not isinstance(other, Mat):
            raise TypeError(f"expected Mat, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __matmul__(self, other: "Mat") -> "Mat":
        self._same(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"{self.shape} @ {other.shape}")
        return Mat(self.dm * other.dm, self.field)

    def __add__(self, other: "Mat") -> "Mat":
        self._same(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        return Mat(self.dm + other.dm, self.field)

    def __sub__(self, other: "Mat") -> "Mat":
        self._same(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} - {other.shape}")
        return Mat(self.dm - other.dm, self.field)

    def __neg__(self) -> "Mat":
        return Mat(-self.dm, self.field)

    def scale(self, c: Any) -> "Mat":
        a = to_elem(self.field, c)
        if not a:
            return Mat.zeros(self.field, *self.shape)
        return Mat.from_dod(self.field, self.shape, {i: {j: a * v for j, v in r.items()} for i, r in self.dod.items()})

    @property
    def T(self) -> "Mat":
        return Mat(self.dm.transpose(), self.field)

    def transpose(self) -> "Mat":
        return self.T

    def apply(self, v: Vec) -> Vec:
        """Matrix times sparse column vector."""
        out: Vec = {}
        for i, r in self.dod.items():
            acc = None
            for j, a in r.items():
                x = v.get(j)
                if x:
                    acc = a * x if acc is None else acc + a * x
            if acc:
                out[i] = acc
        return out

    def is_zero(self) -> bool:
        return not self.dod

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_diagonal(self) -> bool:
        return all(set(r) <= {i} for i, r in self.dod.items())

    def diagonal_values(self) -> List[Any]:
        K = self.field.domain
        return [self.dod.get(i, {}).get(i, K.zero) for i in range(min(self.shape))]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.dod == other.dod

    def __hash__(self) -> int:
        return hash((self.shape, tuple(sorted((i, j) for i, r in self.dod.items() for j in r))))

    def trace(self):
        K = self.field.domain
        acc = K.zero
        for i, r in self.dod.items():
            if i in r:
                acc += r[i]
        return acc

    def flatten(self) -> Vec:
        c = self.cols
        return {i * c + j: v for i, r in self.dod.items() for j, v in r.items()}

    @classmethod
    def unflatten(cls, fs: FieldSpec, shape: Tuple[int, int], v: Vec) -> "Mat":
        c = shape[1]
        dod: Dict[int, Dict[int, Any]] = {}
        for idx, x in v.items():
            dod.setdefault(idx // c, {})[idx % c] = x
        return cls.from_dod(fs, shape, dod)

    def rank(self) -> int:
        return rref(self)[2]

    def charpoly(self, x: Optional[Symbol] = None) -> Poly:
        """Characteristic polynomial as a sympy Poly over the ground domain."""
        K = self.field.domain
        coeffs = self.dm.to_dense().charpoly()
        return Poly([K.to_sympy(c) for c in coeffs], x or Symbol("x"), domain=K)

    # ---------- bloques ----------
    @staticmethod
    def vstack(fs: FieldSpec, mats: Sequence["Mat"], cols: Optional[int] = None) -> "Mat":
        ncols = cols if cols is not None else mats[0].cols
        dod: Dict[int, Dict[int, Any]] = {}
        off = 0
        for M in mats:
            if M.cols != ncols:
                raise ShapeMismatch("vstack with different column counts")
            for i, r in M.dod.items():
                dod[off + i] = dict(r)
            off += M.rows
        return Mat.from_dod(fs, (off, ncols), dod)

    @staticmethod
    def hstack(fs: FieldSpec, mats: Sequence["Mat"], rows: Optional[int] = None) -> "Mat":
        nrows = rows if rows is not None else mats[0].rows
        return Mat.vstack(fs, [M.T for M in mats], nrows).T

    @staticmethod
    def block_diag(fs: FieldSpec, mats: Sequence["Mat"]) -> "Mat":
        dod: Dict[int, Dict[int, Any]] = {}
        ro = co = 0
        for M in mats:
            for i, r in M.dod.items():
                dod[ro + i] = {co + j: v for j, v in r.items()}
            ro += M.rows
            co += M.cols
        return Mat.from_dod(fs, (ro, co), dod)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Mat":
        cpos = {c: k for k, c in enumerate(cols)}
        dod: Dict[int, Dict[int, Any]] = {}
        for a, i in enumerate(rows):
            r = self.dod.get(i)
            if not r:
                continue
            dod[a] = {cpos[j]: v for j, v in r.items() if j in cpos}
        return Mat.from_dod(self.field, (len(rows), len(cols)), dod)

    # ---------- I/O ----------
    def to_json(self) -> Dict[str, Any]:
        entries = [elem_to_json(self.field, self.get(i, j)) for i in range(self.rows) for j in range(self.cols)]
        return {"rows": self.rows, "cols": self.cols, "field": str(self.field), "entries": entries}

    @classmethod
    def from_json(cls, data: Dict[str, Any], fs: Optional[FieldSpec] = None) -> "Mat":
        field = fs or FieldSpec.parse(data["field"])
        r, c = int(data["rows"]), int(data["cols"])
        ent = data["entries"]
        if len(ent) != r * c:
            raise ShapeMismatch(f"{len(ent)} entries for a {r}x{c} matrix")
        dod: Dict[int, Dict[int, Any]] = {}
        for k, x in enumerate(ent):
            a = to_elem(field, x)
            if a:
                dod.setdefault(k // c, {})[k % c] = a
        return cls.from_dod(field, (r, c), dod)

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def tolist(self) -> List[List[str]]:
        return [[str(self[i, j]) for j in range(self.cols)] for i in range(self.rows)]

    def __repr__(self) -> str:
        return f"Mat({self.rows}x{self.cols} over {self.field}, nnz={self.nnz()})"


# ---------------- eliminación ----------------

def rref(M: Mat) -> Tuple[Mat, Tuple[int, ...], int]:
    R, piv = M.dm.rref()
    R = R.to_sparse()
    return Mat(R, M.field), tuple(piv), len(piv)


def _nullspace_vectors(fs: FieldSpec, dod: Dict[int, Dict[int, Any]], shape: Tuple[int, int]) -> List[Vec]:
    """Basis of {x : Mx = 0} as sparse vectors, one per free column (free coordinate = 1)."""
    n = shape[1]
    if not dod:
        one = fs.domain.one
        return [{j: one} for j in range(n)]
    R, piv = DomainMatrix(_clean(dod), shape, fs.domain).rref()
    R = R.to_sparse().rep
    pivset = set(piv)
    K = fs.domain
    # columna libre -> entradas en filas pivote
    by_free: Dict[int, Vec] = {j: {j: K.one} for j in range(n) if j not in pivset}
    for k, p in enumerate(piv):
        row = R.get(k, {})
        for j, v in row.items():
            if j != p:
                by_free[j][p] = -v
    return [by_free[j] for j in sorted(by_free)]


def kernel(M: Mat) -> "Subspace":
    return Subspace.span(M.field, M.cols, _nullspace_vectors(M.field, M.dod, M.shape))


def kernel_vectors(M: Mat) -> List[Vec]:
    return _nullspace_vectors(M.field, M.dod, M.shape)


def image(M: Mat) -> "Subspace":
    """Column space of M inside K^rows."""
    return Subspace.from_mat(M.T)


def solve(M: Mat, b: Mat) -> Mat:
    """One solution x of M x = b (b a column)."""
    if b.rows != M.rows or b.cols != 1:
        raise ShapeMismatch(f"rhs of shape {b.shape} for a {M.shape} system")
    aug = Mat.hstack(M.field, [M, b])
    R, piv, _ = rref(aug)
    n = M.cols
    if n in piv:
        raise NoSolution("inconsistent system")
    x = {p: R.get(k, n) for k, p in enumerate(piv) if R.get(k, n)}
    return Mat.from_columns(M.field, n, [x])


# ---------------- Subspace ----------------

class Subspace:
    """Row space with its canonical RREF basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots", "_rows")

    def __init__(self, field: FieldSpec, ambient_dim: int, basis: Mat, pivots: Tuple[int, ...]):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots
        self._rows = [basis.row(k) for k in range(len(pivots))]

    @classmethod
    def from_mat(cls, rows: Mat) -> "Subspace":
        R, piv, r = rref(rows)
        keep = R.submatrix(list(range(r)), list(range(rows.cols)))
        return cls(rows.field, rows.cols, keep, piv)

    @classmethod
    def span(cls, fs: FieldSpec, n: int, vecs: Iterable[Vec]) -> "Subspace":
        vs = [v for v in vecs if v]
        if not vs:
            return cls.zero(fs, n)
        return cls.from_mat(Mat.from_vectors(fs, n, vs))

    @classmethod
    def zero(cls, fs: FieldSpec, n: int) -> "Subspace":
        return cls(fs, n, Mat.zeros(fs, 0, n), ())

    @classmethod
    def full(cls, fs: FieldSpec, n: int) -> "Subspace":
        return cls(fs, n, Mat.identity(fs, n), tuple(range(n)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def vectors(self) -> List[Vec]:
        return [dict(r) for r in self._rows]

    def reduce(self, v: Vec) -> Vec:
        out = dict(v)
        for k, p in enumerate(self.pivots):
            c = v.get(p)
            if not c:
                continue
            for j, w in self._rows[k].items():
                x = out.get(j)
                y = (x - c * w) if x is not None else -c * w
                if y:
                    out[j] = y
                else:
                    out.pop(j, None)
        return out

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def coords(self, v: Vec) -> Vec:
        if self.reduce(v):
            raise NoSolution("vector not in subspace")
        return {k: v[p] for k, p in enumerate(self.pivots) if v.get(p)}

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(w) for w in other._rows)

    def _check(self, other: "Subspace") -> None:
        if other.ambient_dim != self.ambient_dim:
            raise AmbientMismatch(f"{self.ambient_dim} vs {other.ambient_dim}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and self.basis == other.basis
        )

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim} in K^{self.ambient_dim} over {self.field})"


def subspace_sum(U: Subspace, W: Subspace) -> Subspace:
    U._check(W)
    return Subspace.span(U.field, U.ambient_dim, U.vectors() + W.vectors())


def intersect(U: Subspace, W: Subspace) -> Subspace:
    U._check(W)
    if U.dim == 0 or W.dim == 0:
        return Subspace.zero(U.field, U.ambient_dim)
    # (a, b) con aU + bW = 0  ->  aU en la intersección
    stacked = Mat.vstack(U.field, [U.basis, W.basis])
    coeffs = kernel_vectors(stacked.T)
    out: List[Vec] = []
    for c in coeffs:
        acc: Vec = {}
        for k, x in c.items():
            if k >= U.dim:
                continue
            for j, w in U._rows[k].items():
                y = acc.get(j)
                acc[j] = x * w if y is None else y + x * w
        out.append({j: y for j, y in acc.items() if y})
    return Subspace.span(U.field, U.ambient_dim, out)


# ---------------- QuotientSpace ----------------

class QuotientSpace:
    """V/sub with the non-pivot coordinates of sub as the section."""

    def __init__(self, sub: Subspace):
        self.sub = sub
        self.field = sub.field
        self.ambient_dim = sub.ambient_dim
        pv = set(sub.pivots)
        self.section = [j for j in range(self.ambient_dim) if j not in pv]
        self._pos = {j: k for k, j in enumerate(self.section)}

    @property
    def dim(self) -> int:
        return len(self.section)

    def project(self, v: Vec) -> Vec:
        r = self.sub.reduce(v)
        return {self._pos[j]: x for j, x in r.items()}

    def lift(self, q: Vec) -> Vec:
        return {self.section[k]: x for k, x in q.items()}

    def projection_matrix(self) -> Mat:
        K = self.field.domain
        dod: Dict[int, Dict[int, Any]] = {k: {j: K.one} for k, j in enumerate(self.section)}
        for k, p in enumerate(self.sub.pivots):
            for j, w in self.sub._rows[k].items():
                if j in self._pos:
                    dod.setdefault(self._pos[j], {})[p] = -w
        return Mat.from_dod(self.field, (self.dim, self.ambient_dim), dod)

    def section_matrix(self) -> Mat:
        K = self.field.domain
        return Mat.from_dod(self.field, (self.ambient_dim, self.dim), {j: {k: K.one} for k, j in enumerate(self.section)})

    def induced(self, M: Mat) -> Mat:
        """Matrix of M on the quotient; M must preserve sub."""
        return self.projection_matrix() @ M @ self.section_matrix()


# ---------------- productos tensoriales ----------------

def kron(A: Mat, B: Mat) -> Mat:
    A._same(B)
    br, bc = B.shape
    dod: Dict[int, Dict[int, Any]] = {}
    for i, ra in A.dod.items():
        for k, rb in B.dod.items():
            row = dod.setdefault(i * br + k, {})
            for j, a in ra.items():
                for l, b in rb.items():
                    row[j * bc + l] = a * b
    return Mat.from_dod(A.field, (A.rows * br, A.cols * bc), dod)


# ---------------- intertwiners / conmutantes ----------------

def _monomial(M: Mat) -> Optional[Tuple[Any, List[int]]]:
    """(c, tau) if M = c * permutation with M e_j = c e_{tau(j)}."""
    n = M.rows
    if M.cols != n or len(M.dod) != n:
        return None
    tau = [-1] * n
    c = None
    for i, r in M.dod.items():
        if len(r) != 1:
            return None
        (j, v), = r.items()
        if c is None:
            c = v
        elif v != c:
            return None
        if tau[j] != -1:
            return None
        tau[j] = i
    return c, tau


class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def intertwiners(src: Sequence[Mat], tgt: Sequence[Mat]) -> List[Mat]:
    """Basis of {X : X src[g] = tgt[g] X for all g}; X has shape (dim tgt, dim src)."""
    if len(src) != len(tgt):
        raise ShapeMismatch("generator lists differ in length")
    if not src:
        raise ShapeMismatch("need at least one generator pair")
    fs = src[0].field
    s, t = src[0].rows, tgt[0].rows
    K = fs.domain
    diag, perm, general = [], [], []
    for S, T in zip(src, tgt):
        if S.shape != (s, s) or T.shape != (t, t):
            raise ShapeMismatch("generator matrices must be square of fixed size")
        if S.is_diagonal() and T.is_diagonal():
            diag.append((S, T))
            continue
        ms, mt = _monomial(S), _monomial(T)
        if ms and mt and ms[0] == mt[0]:
            perm.append((ms[1], mt[1]))
            continue
        general.append((S, T))

    # posiciones permitidas por las parejas diagonales
    if diag:
        dvs = [S.diagonal_values() for S, _ in diag]
        dvt = [T.diagonal_values() for _, T in diag]
        key_k = [tuple(d[k] for d in dvs) for k in range(s)]
        key_i = [tuple(d[i] for d in dvt) for i in range(t)]
        cols_by_key: Dict[Tuple, List[int]] = {}
        for k, key in enumerate(key_k):
            cols_by_key.setdefault(key, []).append(k)
        allowed = [i * s + k for i in range(t) for k in cols_by_key.get(key_i[i], [])]
    else:
        allowed = list(range(t * s))
    aset = set(allowed)

    dsu = _DSU(t * s)
    dead = set()
    for sig, tau in perm:
        for pos in allowed:
            i, k = divmod(pos, s)
            img = tau[i] * s + sig[k]
            if img in aset:
                dsu.union(pos, img)
            else:
                dead.add(pos)
    dead_roots = {dsu.find(p) for p in dead}
    var_of: Dict[int, int] = {}
    orbits: List[List[int]] = []
    for pos in allowed:
        r = dsu.find(pos)
        if r in dead_roots:
            continue
        if r not in var_of:
            var_of[r] = len(orbits)
            orbits.append([])
        orbits[var_of[r]].append(pos)
    pos2var = {pos: v for v, ps in enumerate(orbits) for pos in ps}
    nvars = len(orbits)
    log.debug("intertwiners %dx%d: %d diag, %d perm, %d general, %d unknowns",
              t, s, len(diag), len(perm), len(general), nvars)

    def _expand(coeffs: Vec) -> Mat:
        dod: Dict[int, Dict[int, Any]] = {}
        for v, c in coeffs.items():
            for pos in orbits[v]:
                i, k = divmod(pos, s)
                dod.setdefault(i, {})[k] = c
        return Mat.from_dod(fs, (t, s), dod)

    if nvars == 0:
        return []
    if not general:
        return [_expand({v: K.one}) for v in range(nvars)]

    # sistema directo sobre las variables de órbita
    batch, rest = [], list(general)
    rows_used = 0
    while rest and (not batch or rows_used + t * s <= _DIRECT_ROWS):
        batch.append(rest.pop(0))
        rows_used += t * s
    eqs: Dict[int, Dict[int, Any]] = {}
    r = 0
    for S, T in batch:
        ST = S.T.dod
        Td = T.dod
        for i in range(t):
            trow = Td.get(i, {})
            for l in range(s):
                row: Dict[int, Any] = {}
                for k, a in ST.get(l, {}).items():
                    v = pos2var.get(i * s + k)
                    if v is not None:
                        row[v] = row.get(v, K.zero) + a
                for j, a in trow.items():
                    v = pos2var.get(j * s + l)
                    if v is not None:
                        row[v] = row.get(v, K.zero) - a
                row = {v: a for v, a in row.items() if a}
                if row:
                    eqs[r] = row
                    r += 1
    basis = [_expand(c) for c in _nullspace_vectors(fs, eqs, (r, nvars))]

    # refinamiento secuencial para el resto
    for S, T in rest:
        if not basis:
            break
        dod: Dict[int, Dict[int, Any]] = {}
        for l, X in enumerate(basis):
            D = (X @ S) - (T @ X)
            for pos, v in D.flatten().items():
                dod.setdefault(pos, {})[l] = v
        if not dod:
            continue
        combos = _nullspace_vectors(fs, _clean(dod), (t * s, len(basis)))
        new = []
        for c in combos:
            acc = None
            for l, a in c.items():
                term = basis[l].scale(Scalar.from_elem(fs, a))
                acc = term if acc is None else acc + term
            new.append(acc if acc is not None else Mat.zeros(fs, t, s))
        basis = new
    return basis


def commutant(gens: Sequence[Mat]) -> List[Mat]:
    return intertwiners(gens, gens)


def span_of_matrices(mats: Sequence[Mat]) -> Subspace:
    if not mats:
        raise ShapeMismatch("empty matrix list")
    fs = mats[0].field
    n = mats[0].rows * mats[0].cols
    return Subspace.span(fs, n, [M.flatten() for M in mats])
