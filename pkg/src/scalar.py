# src/scalar.py
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Tuple, Union

from sympy import Rational, isprime
from sympy.polys.domains import GF, QQ

log = logging.getLogger(__name__)

P_MAX = 2**31


# ---------------- Errores ----------------

class LabError(Exception):
    """Base de todos los errores de la librería."""


class PreconditionError(LabError):
    """Entrada rechazada antes de calcular (exit code 2 en la CLI)."""


class FieldMismatch(PreconditionError):
    pass


class DivisionByZero(LabError):
    pass


class ShapeMismatch(PreconditionError):
    pass


class AmbientMismatch(PreconditionError):
    pass


class NoSolution(LabError):
    pass


class AlgebraMismatch(PreconditionError):
    pass


class NotEmbeddable(LabError):
    pass


class BadIdempotent(PreconditionError):
    pass


class StarNotFixing(PreconditionError):
    pass


class NotSplit(PreconditionError):
    pass


class CharUnsupported(PreconditionError):
    pass


class CharTooSmall(PreconditionError):
    pass


class CapExceeded(PreconditionError):
    pass


class SizeMismatch(PreconditionError):
    pass


class IndexOutOfRange(PreconditionError):
    pass


class HypothesisFailed(LabError):
    def __init__(self, message: str, label: Any = None):
        super().__init__(message)
        self.label = label


class NonTermination(LabError):
    pass


# ---------------- FieldSpec ----------------

@dataclass(frozen=True)
class FieldSpec:
    kind: str  # "Q" | "Fp"
    p: int = 0

    def __post_init__(self) -> None:
        if self.kind == "Q":
            if self.p != 0:
                raise PreconditionError("Q does not take a modulus")
        elif self.kind == "Fp":
            if self.p < 2 or self.p >= P_MAX or not isprime(self.p):
                raise PreconditionError(f"F_p needs a prime 2 <= p < 2^31, got {self.p}")
        else:
            raise PreconditionError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("Q")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("Fp", int(p))

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Accepts "Q", "QQ", "F7", "GF(7)", "7"."""
        t = (text or "").strip().upper()
        if t in ("Q", "QQ"):
            return cls.rationals()
        m = re.fullmatch(r"(?:F_?|GF\(?|FP)?(\d+)\)?", t)
        if not m:
            raise PreconditionError(f"cannot parse field {text!r}")
        return cls.prime(int(m.group(1)))

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def domain(self):
        return _domain(self)

    def allows_trace_radical(self, dim: int) -> bool:
        return self.p == 0 or self.p > dim

    def __str__(self) -> str:
        return "Q" if self.kind == "Q" else f"F{self.p}"


@lru_cache(maxsize=None)
def _domain(fs: FieldSpec):
    if fs.kind == "Q":
        return QQ
    return GF(fs.p, symmetric=False)


def to_elem(fs: FieldSpec, x: Any):
    """Convierte int, Fraction/Rational, str "a/b" o Scalar al dominio de fs."""
    K = fs.domain
    if isinstance(x, Scalar):
        if x.field != fs:
            raise FieldMismatch(f"{x.field} vs {fs}")
        return x.elem
    if isinstance(x, str):
        x = Rational(x.split(" mod ")[0].strip())
    if isinstance(x, int):
        return K(x)
    r = Rational(x)
    if fs.kind == "Q":
        return K(int(r.p), int(r.q))
    if r.q % fs.p == 0:
        raise DivisionByZero(f"{x} has no image in F{fs.p}")
    return K(int(r.p)) / K(int(r.q))


def elem_to_str(fs: FieldSpec, a: Any) -> str:
    v = fs.domain.to_sympy(a)
    if fs.kind == "Q":
        return str(v)
    return f"{int(v)} mod {fs.p}"


def elem_to_json(fs: FieldSpec, a: Any) -> str:
    # JSON matrices store bare residues / fractions
    return str(fs.domain.to_sympy(a))


# ---------------- Scalar ----------------

@dataclass(frozen=True)
class Scalar:
    field: FieldSpec
    num: int
    den: int = 1

    def __post_init__(self) -> None:
        # forma canónica
        if self.den == 0:
            raise DivisionByZero("zero denominator")
        if self.field.kind == "Q":
            r = Rational(self.num, self.den)
            object.__setattr__(self, "num", int(r.p))
            object.__setattr__(self, "den", int(r.q))
        else:
            p = self.field.p
            if self.den % p == 0:
                raise DivisionByZero("zero denominator in F_p")
            object.__setattr__(self, "num", (self.num * pow(self.den, -1, p)) % p)
            object.__setattr__(self, "den", 1)

    @classmethod
    def of(cls, fs: FieldSpec, x: Union[int, str, "Scalar", Any]) -> "Scalar":
        return cls.from_elem(fs, to_elem(fs, x))

    @classmethod
    def from_elem(cls, fs: FieldSpec, a: Any) -> "Scalar":
        v = fs.domain.to_sympy(a)
        if fs.kind == "Q":
            r = Rational(v)
            return cls(fs, int(r.p), int(r.q))
        return cls(fs, int(v))

    @property
    def elem(self):
        K = self.field.domain
        if self.field.kind == "Q":
            return K(self.num, self.den)
        return K(self.num)

    def is_zero(self) -> bool:
        return self.num == 0

    def _check(self, other: "Scalar") -> None:
        if not isinstance(other, Scalar):
            raise TypeError(f"expected Scalar, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def _lift(self, other: Any) -> "Scalar":
        if isinstance(other, int):
            return Scalar.of(self.field, other)
        self._check(other)
        return other

    def __add__(self, other: Any) -> "Scalar":
        o = self._lift(other)
        return Scalar.from_elem(self.field, self.elem + o.elem)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "Scalar":
        o = self._lift(other)
        return Scalar.from_elem(self.field, self.elem - o.elem)

    def __rsub__(self, other: Any) -> "Scalar":
        return self._lift(other) - self

    def __mul__(self, other: Any) -> "Scalar":
        o = self._lift(other)
        return Scalar.from_elem(self.field, self.elem * o.elem)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "Scalar":
        o = self._lift(other)
        if o.is_zero():
            raise DivisionByZero(f"{self} / 0")
        return Scalar.from_elem(self.field, self.elem / o.elem)

    def __neg__(self) -> "Scalar":
        return Scalar.from_elem(self.field, -self.elem)

    def inverse(self) -> "Scalar":
        return Scalar.of(self.field, 1) / self

    def canon(self) -> "Scalar":
        return Scalar(self.field, self.num, self.den)

    def as_tuple(self) -> Tuple[int, int]:
        return self.num, self.den

    def __str__(self) -> str:
        if self.field.kind == "Q":
            return str(self.num) if self.den == 1 else f"{self.num}/{self.den}"
        return f"{self.num} mod {self.field.p}"


def add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def sub(a: Scalar, b: Scalar) -> Scalar:
    return a - b


def mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def div(a: Scalar, b: Scalar) -> Scalar:
    return a / b


def parse_scalar(fs: FieldSpec, text: str) -> Scalar:
    """Textual form: "a/b", "a" or "a mod p"."""
    t = text.strip()
    if " mod " in t:
        a, p = t.split(" mod ")
        if fs.kind != "Fp" or int(p) != fs.p:
            raise FieldMismatch(f"{text!r} is not an element of {fs}")
        return Scalar(fs, int(a))
    return Scalar.of(fs, t)
