# tests/test_brauer.py
from __future__ import annotations

import itertools

import pytest

import brauer
from brauer import BrauerElt, Diagram
from scalar import FieldSpec, IndexOutOfRange, PreconditionError, Scalar, SizeMismatch


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 3), (3, 15), (4, 105), (5, 945)])
def test_dimension(n: int, expected: int) -> None:
    assert brauer.dimension(n) == expected
    assert len(brauer.enumerate_diagrams(n)) == expected
    assert len(set(brauer.enumerate_diagrams(n))) == expected


def test_parse_and_print() -> None:
    e1 = brauer.generator("e", 1, 2)
    assert Diagram.parse("[(1,2),(1',2')]") == e1
    assert str(e1) == "[(1,2),(1',2')]"
    assert Diagram.parse(str(brauer.generator("s", 2, 3)), 3) == brauer.generator("s", 2, 3)
    with pytest.raises(PreconditionError):
        Diagram.parse("[(1,2),(1,2')]")


def test_loops_give_powers_of_minus_two_m() -> None:
    e1 = brauer.generator("e", 1, 2)
    d, loops, elt = brauer.multiply(e1, e1, 3)
    assert d == e1 and loops == 1
    assert elt.coefficient(e1) == Scalar.of(FieldSpec.rationals(), -6)


def test_loop_vanishes_in_characteristic_two() -> None:
    e1 = brauer.generator("e", 1, 2)
    _, loops, elt = brauer.multiply(e1, e1, 1, FieldSpec.prime(2))
    assert loops == 1 and elt.is_zero()


def test_permutations_compose() -> None:
    for pi, rho in itertools.product(itertools.permutations(range(3)), repeat=2):
        d, loops = brauer.compose(Diagram.permutation(pi), Diagram.permutation(rho))
        assert loops == 0
        assert d == Diagram.permutation([rho[pi[k]] for k in range(3)])


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_defining_relations(n: int) -> None:
    for m in (1, 2):
        failed = [rel.family for rel, ok in brauer.check_relations(n, m) if not ok]
        assert not failed


def test_relations_over_prime_field() -> None:
    assert all(ok for _, ok in brauer.check_relations(4, 1, FieldSpec.prime(5)))


@pytest.mark.parametrize("n", [3, 4])
def test_factorization_reproduces_every_diagram(n: int) -> None:
    for d in brauer.enumerate_diagrams(n):
        for anchor in ("left", "right"):
            word = brauer.factorize(d, anchor=anchor)
            assert brauer.evaluate_word(word, n, 1) == BrauerElt.of(d, 1, FieldSpec.rationals())


def test_flip_is_an_anti_automorphism() -> None:
    n = 3
    for d1 in brauer.enumerate_diagrams(n):
        for d2 in brauer.enumerate_diagrams(n)[:5]:
            a, la = brauer.compose(d1, d2)
            b, lb = brauer.compose(d2.flip(), d1.flip())
            assert b == a.flip() and la == lb


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_ideals_are_spanned_by_diagrams_with_arcs(n: int) -> None:
    dims = []
    for f in range(n // 2 + 1):
        ideal = brauer.ideal_Bf(n, f)
        assert ideal.span == brauer.ideal_by_arcs(n, f)
        dims.append(ideal.dim)
    assert dims[0] == brauer.dimension(n)
    assert all(a > b for a, b in zip(dims, dims[1:]))
    assert brauer.ideal_Bf(n, n // 2 + 1).dim == 0


def test_ideal_dimension_for_two_strands() -> None:
    assert brauer.ideal_Bf(2, 1).dim == 1


def test_ideal_is_two_sided() -> None:
    assert brauer.is_two_sided_ideal(brauer.ideal_Bf(4, 1))
    assert brauer.is_two_sided_ideal(brauer.ideal_Bf(4, 2))


def test_out_of_range() -> None:
    with pytest.raises(IndexOutOfRange):
        brauer.generator("e", 3, 3)
    with pytest.raises(IndexOutOfRange):
        brauer.ideal_Bf(4, 4)
    with pytest.raises(SizeMismatch):
        brauer.compose(brauer.generator("s", 1, 2), brauer.generator("s", 1, 3))
