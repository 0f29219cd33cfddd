# tests/test_strat.py
from __future__ import annotations

import random

import pytest

import corpus
import strat
from fdalg import direct_sum, double_centralizer_map, hom_dim, is_faithful, is_isomorphic
from scalar import (
    BadIdempotent,
    FieldSpec,
    HypothesisFailed,
    NonTermination,
    PreconditionError,
)

QH_WITH_DUALITY = ["K", "K^3", "M2", "M2xK", "K[C2]", "Zigzag", "Ssy(1,2)"]
QH = QH_WITH_DUALITY + ["A2[1<2]", "A2[2<1]", "Kronecker"]
LOCAL = ["K[x]/x^2", "K[x]/x^3", "Lambda(K^2)"]


def _strat(name: str, fs: FieldSpec | None = None) -> strat.StratifiedAlgebra:
    return corpus.builtin(name, fs).stratified()


# ---------------- construcciones ----------------

def test_standard_modules_depend_on_the_order() -> None:
    S = _strat("A2[1<2]")
    assert S.standard("1").dim == 1 and S.standard("2").dim == 1
    S = _strat("A2[2<1]")
    assert S.standard("1").dim == 2 and S.standard("2").dim == 1
    assert is_isomorphic(S.standard("1"), S.pim("1"))


def test_trace_of_simple_projective_is_the_socle() -> None:
    S = _strat("A2[1<2]")
    tr = strat.trace_submodule(S.pim("2"), S.pim("1"))
    assert tr.dim == 1
    assert strat.trace_submodule(S.algebra.regular_module(), S.pim("1")).dim == 2


def test_ext1_between_simples() -> None:
    S = _strat("A2[1<2]")
    L1, L2 = S.simple("1"), S.simple("2")
    assert S.ext1(L1, L2).dim == 1
    assert S.ext1(L2, L1).dim == 0
    assert S.ext1(S.pim("1"), L2).dim == 0


def test_zigzag_modules() -> None:
    S = _strat("Zigzag")
    assert S.pim("1").dim == 3 and S.pim("2").dim == 2
    assert S.standard("1").dim == 1 and S.standard("2").dim == 2
    assert S.composition_factors(S.standard("2")) == {"1": 1, "2": 1}
    assert S.costandard("2").dim == 2
    assert S.tilting("1").dim == 1
    assert S.tilting("2").dim == 3
    assert is_isomorphic(S.tilting("2"), S.pim("1"))


def test_tilting_on_path_algebra() -> None:
    S = _strat("A2[1<2]")
    assert S.tilting("2").dim == 2
    assert S.tilting("1").dim == 1
    assert S.is_tilting(S.tilting("2"))
    assert not S.is_tilting(S.pim("2"))


@pytest.mark.parametrize("name", QH)
def test_quasi_hereditary_corpus(name: str) -> None:
    S = _strat(name)
    fl = S.flags()
    assert fl.standardly_stratified and fl.properly_stratified and fl.quasi_hereditary and fl.partial_order
    assert strat.is_quasi_hereditary(S)


@pytest.mark.parametrize("name", QH)
def test_ext_orthogonality_of_standards_and_costandards(name: str) -> None:
    S = _strat(name)
    for lam in S.labels:
        for mu in S.labels:
            D, pN = S.standard(lam), S.proper_costandard(mu)
            assert S.ext1(D, pN).dim == 0
            assert hom_dim(D, pN) == (1 if lam == mu else 0)


@pytest.mark.parametrize("name", QH)
def test_regular_module_is_delta_filtered(name: str) -> None:
    S = _strat(name)
    ok, witness = S.has_delta_filtration(S.algebra.regular_module())
    assert ok and witness is not None
    assert sum(k * S.standard(lam).dim for lam, k in witness) == S.algebra.dim


@pytest.mark.parametrize("name", LOCAL)
def test_local_algebras_are_properly_stratified_only(name: str) -> None:
    S = _strat(name)
    fl = S.flags()
    assert fl.standardly_stratified and fl.properly_stratified
    assert not fl.quasi_hereditary
    assert S.proper_standard("1").dim == 1
    assert S.standard("1").dim == S.algebra.dim
    with pytest.raises(PreconditionError):
        S.tilting("1")


def test_ties_in_the_preorder() -> None:
    entry = corpus.builtin("K^3")
    S = strat.StratifiedAlgebra(entry.algebra, entry.labels, entry.idempotents, [("1", "2"), ("2", "1")])
    assert S.equivalent("1", "2")
    assert not S.flags().partial_order
    assert not S.flags().quasi_hereditary
    assert S.flags().standardly_stratified


def test_bad_input_is_rejected() -> None:
    entry = corpus.builtin("K")
    two = {0: entry.fieldspec.domain(2)}
    with pytest.raises(BadIdempotent):
        strat.StratifiedAlgebra(entry.algebra, ["1"], [two])
    with pytest.raises(PreconditionError):
        strat.StratifiedAlgebra(entry.algebra, ["1"], entry.idempotents, [("1", "9")])


def test_tilting_step_bound() -> None:
    S = _strat("A2[1<2]")
    with pytest.raises(NonTermination):
        S.tilting("2", max_steps=0)
    assert S.tilting("1", max_steps=0).dim == 1


# ---------------- dualidad y Ringel ----------------

def test_duality_swaps_standard_and_costandard() -> None:
    S = _strat("Zigzag")
    D = strat.duality_of(S)
    for lam in S.labels:
        assert is_isomorphic(D.dual_module(S.standard(lam)), S.costandard(lam))
        assert is_isomorphic(D.dual_module(S.tilting(lam)), S.tilting(lam))
    P1 = S.pim("1")
    assert is_isomorphic(D.dual_module(D.dual_module(P1)), P1)


def test_path_algebra_has_no_duality() -> None:
    with pytest.raises(PreconditionError):
        strat.duality_of(_strat("A2[1<2]"))


def test_ringel_dual_sends_tilting_to_projective() -> None:
    S = _strat("Zigzag")
    R = strat.ringel_dual(S)
    assert R.algebra.dim == 5
    assert is_isomorphic(R.apply(R.tilde), R.algebra.regular_module())
    for lam in S.labels:
        assert is_isomorphic(R.apply(S.tilting(lam)), R.projective(lam))


def test_ringel_dual_of_semisimple() -> None:
    R = strat.ringel_dual(_strat("K^3"))
    assert R.algebra.dim == 3


# ---------------- tilting mínimo ----------------

@pytest.mark.parametrize("name, expected", [
    ("Zigzag", ["2"]),
    ("K^3", ["1", "2", "3"]),
    ("M2", ["1"]),
    ("K[C2]", ["+", "-"]),
    ("Ssy(1,2)", ["2", "0"]),
])
def test_minimal_dcp_tilting(name: str, expected) -> None:
    res = strat.minimal_dcp_tilting(_strat(name), run_oracle=True)
    assert sorted(res.labels) == sorted(expected)
    assert res.dcp.bijective
    assert res.agrees_with_oracle


def test_minimal_tilting_is_a_summand_of_every_faithful_dcp_tilting() -> None:
    S = _strat("Zigzag")
    first, found = strat.minimal_tilting_oracle(S)
    assert first == ["2"]
    assert all("2" in sub for sub in found)


@pytest.mark.parametrize("name", ["Zigzag", "M2xK", "K[C2]"])
def test_every_faithful_tilting_has_dcp(name: str) -> None:
    S = _strat(name)
    minimal = strat.minimal_dcp_tilting(S, run_oracle=False).labels
    rng = random.Random(7)
    seen = 0
    for _ in range(12):
        mults = strat.random_multiplicities(S, rng)
        T = S.tilting_from_multiplicities(mults)
        if T.dim == 0 or not is_faithful(T):
            continue
        seen += 1
        assert double_centralizer_map(S.algebra, T).bijective
        assert all(mults[lam] >= 1 for lam in minimal)
    assert seen


# ---------------- comprobadores ----------------

def test_embedding_criterion_on_zigzag() -> None:
    S = _strat("Zigzag")
    T, _ = S.characteristic_tilting()
    rep = strat.check_embedding_criterion(S, T)
    assert rep.passed
    assert rep.as_dict()["pass"] is True
    rep = strat.check_embedding_criterion(S, S.tilting("2"))
    assert rep.passed


def test_embedding_criterion_needs_the_embeddings() -> None:
    S = _strat("Zigzag")
    with pytest.raises(HypothesisFailed):
        strat.check_embedding_criterion(S, S.tilting("1"))


@pytest.mark.parametrize("name", ["Zigzag", "Ssy(1,2)"])
def test_faithful_tilting_dcp(name: str) -> None:
    S = _strat(name)
    T = S.tilting_from_multiplicities({lam: 1 for lam in S.labels})
    rep = strat.check_faithful_tilting_dcp(S, T)
    assert rep.passed
    names = [c["name"] for c in rep.conclusions]
    assert "double centralizer" in names


def test_faithful_tilting_dcp_on_the_natural_module() -> None:
    entry = corpus.builtin("Ssy(1,2)")
    S = entry.stratified()
    rep = strat.check_faithful_tilting_dcp(S, entry.algebra.natural_module())
    assert rep.passed


def test_non_faithful_tilting_is_a_failed_hypothesis() -> None:
    S = _strat("Zigzag")
    with pytest.raises(HypothesisFailed):
        strat.check_faithful_tilting_dcp(S, S.tilting("1"))


def test_saturated_tilting() -> None:
    S = _strat("Zigzag")
    T, _ = S.characteristic_tilting()
    assert strat.multiplicities_in_tilting(S, T) == {"1": 1, "2": 1}
    res = strat.is_saturated_tilting(S, T)
    assert res.saturated and res.faithful and res.dcp
    T2 = S.tilting_from_multiplicities({"2": 2})
    assert strat.multiplicities_in_tilting(S, T2) == {"1": 0, "2": 2}
    res = strat.is_saturated_tilting(S, T2)
    assert not res.saturated and res.faithful and res.dcp


def test_characteristic_tilting_blocks() -> None:
    S = _strat("Zigzag")
    T, blocks = S.characteristic_tilting()
    assert T.dim == 4
    assert blocks == {"1": (0, 1), "2": (1, 3)}
    assert is_isomorphic(T, direct_sum([S.tilting("1"), S.tilting("2")]))


def test_over_a_prime_field() -> None:
    S = _strat("Zigzag", FieldSpec.prime(7))
    assert S.flags().quasi_hereditary
    assert S.tilting("2").dim == 3
    assert strat.minimal_dcp_tilting(S).labels == ["2"]
