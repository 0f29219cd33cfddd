# tests/test_spsw.py
from __future__ import annotations

import pytest

import spsw
from brauer import enumerate_diagrams
from linalg import Mat
from scalar import CapExceeded, CharTooSmall, FieldSpec, IndexOutOfRange, to_elem
from spsw import SymplecticSpace, Weight

F7, F11 = FieldSpec.prime(7), FieldSpec.prime(11)


def test_symplectic_form() -> None:
    V = SymplecticSpace(2)
    assert V.dim == 4 and V.dual_index(1) == 4
    assert (V.epsilon(1, 4), V.epsilon(4, 1), V.epsilon(1, 2)) == (1, -1, 0)
    J = V.form(FieldSpec.rationals())
    assert J.T == -J


def test_generator_action_on_words(Q: FieldSpec) -> None:
    T = spsw.tensor_space(1, 2, Q)
    x = T.index((1, 2))
    s = T.generator_matrix("s", 1)
    assert s.column(x) == {T.index((2, 1)): to_elem(Q, -1)}
    e = T.generator_matrix("e", 1)
    assert e.column(x) == {T.index((2, 1)): to_elem(Q, 1), T.index((1, 2)): to_elem(Q, -1)}
    assert e.column(T.index((1, 1))) == {}


@pytest.mark.parametrize("m, n", [(1, 2), (1, 3), (2, 2), (2, 3), (1, 4)])
def test_action_respects_the_relations(m: int, n: int) -> None:
    assert spsw.representation_is_homomorphism_check(n, m)


def test_e_squared(Q: FieldSpec) -> None:
    T = spsw.tensor_space(2, 2, Q)
    e = T.generator_matrix("e", 1)
    assert e @ e == e.scale(-4)


def test_two_factorizations_act_alike(Q: FieldSpec) -> None:
    T = spsw.tensor_space(1, 4, Q)
    assert all(spsw.factorizations_agree(T, d) for d in enumerate_diagrams(4))


@pytest.mark.parametrize("m, n, expected", [(1, 1, 4), (1, 2, 10), (2, 2, 126), (1, 3, 20)])
def test_schur_algebra_dimension(m: int, n: int, expected: int) -> None:
    rep = spsw.schur_algebra(m, n)
    assert rep.dim == expected
    assert spsw.weyl_sum_of_squares(m, n) == expected


@pytest.mark.parametrize("fs", [F7, F11])
def test_schur_algebra_dimension_is_characteristic_free(fs: FieldSpec) -> None:
    assert spsw.schur_algebra(1, 3, fs).dim == 20


@pytest.mark.parametrize("m, n", [(1, 2), (1, 3), (2, 2)])
def test_schur_algebra_dominant_dimension(m: int, n: int) -> None:
    rep = spsw.schur_algebra(m, n)
    res = spsw.schur_dominant_dimension(rep)
    assert res.holds and res.exact and res.method == "natural"
    assert (res.eps @ res.delta).is_zero()
    assert res.eps.rank() == (2 * m) ** (2 * n) - rep.dim


def test_dimension_cap() -> None:
    with pytest.raises(CapExceeded):
        spsw.tensor_space(2, 7, dim_cap=100)


def test_phi_injective_when_m_at_least_n() -> None:
    res = spsw.phi_injectivity_check(2, 2)
    assert res.injective and res.rank == 3
    res = spsw.phi_injectivity_check(1, 3)
    assert not res.injective and res.rank < 15


@pytest.mark.slow
def test_phi_injective_three_strands() -> None:
    res = spsw.phi_injectivity_check(3, 3)
    assert res.injective and res.rank == 15


def test_subquotient_dimensions() -> None:
    sp = spsw.subquotient_spaces(1, 2, 1)
    assert (sp.W.dim, sp.Q.dim, sp.H.dim) == (1, 3, 3)
    sp0 = spsw.subquotient_spaces(1, 2, 0)
    assert sp0.W.dim == 4 and sp0.Q.dim == 0
    with pytest.raises(IndexOutOfRange):
        spsw.subquotient_spaces(1, 2, 2)


@pytest.mark.parametrize("m, n", [(1, 2), (1, 3), (2, 2)])
def test_layer_dimensions_do_not_depend_on_the_field(m: int, n: int) -> None:
    for f in range(n // 2 + 1):
        dims = {spsw.layer_dimension(m, n, f, fs) for fs in (FieldSpec.rationals(), F7, F11)}
        assert len(dims) == 1


@pytest.mark.parametrize("m, n, f", [(1, 2, 1), (1, 3, 1), (2, 2, 1), (2, 3, 1)])
def test_harmonic_decomposition(m: int, n: int, f: int) -> None:
    res = spsw.check_harmonic_decomposition(m, n, f)
    assert res.holds
    assert res.dim_meet == 0 and res.dim_W + res.dim_H == (2 * m) ** n


def test_harmonic_decomposition_rejects_small_characteristic() -> None:
    with pytest.raises(CharTooSmall):
        spsw.check_harmonic_decomposition(1, 2, 1, FieldSpec.prime(2))


@pytest.mark.parametrize("m, n, f", [(1, 2, 1), (1, 3, 1), (2, 2, 1)])
def test_quotient_centralizer(m: int, n: int, f: int) -> None:
    rep = spsw.check_quotient_centralizer(m, n, f)
    assert rep.passed
    assert rep.commdiag and rep.equal and rep.delta_injective
    assert rep.as_dict()["passed"] is True


def test_quotient_centralizer_over_prime_field() -> None:
    assert spsw.check_quotient_centralizer(1, 3, 1, F7).passed


@pytest.mark.slow
def test_quotient_centralizer_four_dimensional_space() -> None:
    assert spsw.check_quotient_centralizer(2, 3, 1).passed


def test_phi_f_surjective_and_ideal_acts_trivially() -> None:
    qa = spsw.quotient_action(1, 3, 1)
    res = spsw.check_phi_f_surjective(qa)
    assert res.surjective and res.ideal_acts_trivially
    assert spsw.check_commdiag(qa) and spsw.check_delta_injective(qa)


# ---------------- pesos ----------------

def test_dominance_order() -> None:
    assert spsw.dominance_leq(Weight.of(0, 0), Weight.of(2, 0))
    assert not spsw.dominance_leq(Weight.of(2, 0), Weight.of(0, 0))
    assert spsw.dominance_leq(Weight.of(1, 1), Weight.of(2, 0))
    assert not spsw.dominance_leq(Weight.of(1, 0), Weight.of(2, 0))


def test_weight_sets() -> None:
    assert spsw.lambda_f_plus(1, 2, 1) == [Weight.of(0)]
    assert spsw.lambda_f_complement(1, 2, 1) == [Weight.of(2)]
    assert set(spsw.dominant_weights(2, 3)) == {Weight.of(3, 0), Weight.of(2, 1), Weight.of(1, 0)}


@pytest.mark.parametrize("lam, expected", [((1, 0), 4), ((2, 0), 10), ((1, 1), 5), ((3, 0), 20), ((2, 1), 16)])
def test_weyl_dimension(lam, expected: int) -> None:
    assert spsw.weyl_dimension(Weight.of(*lam)) == expected


def test_dot_action_at_level_zero() -> None:
    beta = Weight.of(1, -1)
    mu = Weight.of(2, 0)
    # <mu + rho, beta> = (2+2) - (0+1) = 3
    assert spsw.dot_action(mu, beta, 0, 7) == Weight.of(-1, 3)
    assert spsw.dot_action(mu, beta, 1, 7) == Weight.of(6, -4)


@pytest.mark.parametrize("m, n, f, p", [(1, 2, 1, 5), (2, 3, 1, 7), (2, 4, 1, 7)])
def test_blocks_are_separated(m: int, n: int, f: int, p: int) -> None:
    assert spsw.cross_block_separation_check(m, n, f, p)
    assert spsw.linkage_chain_search(m, n, f, p) is None


@pytest.mark.parametrize("m", [1, 2, 3])
def test_order_between_sizes(m: int) -> None:
    for n in range(1, 7):
        assert spsw.layer_order_check(m, n)
