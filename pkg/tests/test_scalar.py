# tests/test_scalar.py
from __future__ import annotations

import pytest

from scalar import (
    DivisionByZero,
    FieldMismatch,
    FieldSpec,
    PreconditionError,
    Scalar,
    parse_scalar,
    to_elem,
)


def test_rational_arithmetic_is_exact(Q: FieldSpec) -> None:
    assert Scalar.of(Q, "1/2") + Scalar.of(Q, "1/3") == Scalar.of(Q, "5/6")
    assert str(Scalar.of(Q, "6/4")) == "3/2"
    assert Scalar.of(Q, "2/3").inverse() == Scalar.of(Q, "3/2")


def test_prime_field_arithmetic(F7: FieldSpec) -> None:
    assert Scalar.of(F7, 3) * Scalar.of(F7, 5) == Scalar.of(F7, 1)
    assert Scalar.of(F7, 10) == Scalar.of(F7, 3)
    assert str(Scalar.of(F7, -1)) == "6 mod 7"
    assert parse_scalar(F7, "1/2") == Scalar.of(F7, 4)
    assert parse_scalar(F7, "3 mod 7") == Scalar.of(F7, 3)


def test_division_by_zero(Q: FieldSpec, F7: FieldSpec) -> None:
    with pytest.raises(DivisionByZero):
        Scalar.of(Q, 1) / Scalar.of(Q, 0)
    with pytest.raises(DivisionByZero):
        to_elem(F7, "1/7")


def test_mixing_fields_is_rejected(Q: FieldSpec, F7: FieldSpec) -> None:
    with pytest.raises(FieldMismatch):
        Scalar.of(Q, 1) + Scalar.of(F7, 1)
    with pytest.raises(FieldMismatch):
        parse_scalar(FieldSpec.prime(11), "3 mod 7")


@pytest.mark.parametrize("text, expected", [
    ("Q", "Q"), ("QQ", "Q"), ("F7", "F7"), ("GF(11)", "F11"), ("13", "F13"), ("f_5", "F5"),
])
def test_field_parse(text: str, expected: str) -> None:
    assert str(FieldSpec.parse(text)) == expected


@pytest.mark.parametrize("text", ["F4", "GF(1)", "R", ""])
def test_field_parse_rejects(text: str) -> None:
    with pytest.raises(PreconditionError):
        FieldSpec.parse(text)


def test_trace_radical_needs_large_characteristic() -> None:
    assert FieldSpec.rationals().allows_trace_radical(100)
    assert FieldSpec.prime(7).allows_trace_radical(5)
    assert not FieldSpec.prime(3).allows_trace_radical(5)
