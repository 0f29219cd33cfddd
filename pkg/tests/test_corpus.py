from __future__ import annotations

import json

import pytest

import corpus
from scalar import FieldSpec, NotSplit, PreconditionError


def test_names_cover_builtins() -> None:
    names = corpus.names()
    assert "Zigzag" in names and "Ssy(1,2)" in names
    assert len(corpus.all_entries()) == len(names) - 1
    assert len(corpus.all_entries(include_schur=True)) == len(names)


def test_unknown_builtin() -> None:
    with pytest.raises(PreconditionError, match="unknown corpus algebra"):
        corpus.builtin("Q8")


@pytest.mark.parametrize("name", ["Zigzag", "A2[2<1]", "K[C2]", "Lambda(K^2)"])
def test_dump_load_round_trip(name: str, tmp_path) -> None:
    entry = corpus.builtin(name)
    path = str(tmp_path / "algs" / f"{name}.json")
    corpus.dump(entry, path)
    back = corpus.load(path)
    assert back.algebra.dim == entry.algebra.dim
    assert back.algebra.structure_constants() == entry.algebra.structure_constants()
    assert back.labels == entry.labels
    assert back.preorder == entry.preorder
    assert (back.star is None) == (entry.star is None)


def test_load_over_other_field(tmp_path, F7: FieldSpec) -> None:
    path = str(tmp_path / "zigzag.json")
    corpus.dump(corpus.builtin("Zigzag"), path)
    back = corpus.load(path, F7)
    assert back.fieldspec == F7
    assert back.stratified().flags().quasi_hereditary


def test_missing_key() -> None:
    data = corpus.entry_to_json(corpus.builtin("K"))
    del data["mult"]
    with pytest.raises(PreconditionError, match="mult"):
        corpus.entry_from_json(data)


def test_dim_mismatch() -> None:
    data = corpus.entry_to_json(corpus.builtin("K^3"))
    data["dim"] = 4
    with pytest.raises(PreconditionError, match="does not match"):
        corpus.entry_from_json(data)


def test_module_from_json() -> None:
    A = corpus.builtin("Zigzag").algebra
    simple = {"dim": 1, "action": [[[1]], [[0]], [[0]], [[0]], [[0]]], "name": "L1"}
    M = corpus.module_from_json(A, simple)
    assert M.dim == 1 and M.name == "L1"

    broken = dict(simple, action=[[[0]]] * 5)
    with pytest.raises(PreconditionError):
        corpus.module_from_json(A, broken)


def test_schur_entry() -> None:
    entry = corpus.builtin("Ssy(1,2)")
    assert entry.labels == ["2", "0"]
    assert entry.algebra.dim == 10
    assert entry.anti_involution() is not None


def _gaussian_rationals(**extra):
    # Q(i): e0 = 1, e1 = i, i^2 = -1
    mult = [[[1, 0], [0, 1]], [[0, 1], [-1, 0]]]
    return dict({"name": "Q(i)", "dim": 2, "mult": mult, "unit": [1, 0]}, **extra)


def test_non_split_algebra_is_rejected_on_load(tmp_path) -> None:
    with pytest.raises(NotSplit, match="irreducible factor"):
        corpus.entry_from_json(_gaussian_rationals())
    with pytest.raises(NotSplit, match="not the ground field"):
        corpus.entry_from_json(_gaussian_rationals(idempotents=[[1, 0]], labels=["1"]))

    path = tmp_path / "qi.json"
    path.write_text(json.dumps(_gaussian_rationals()), encoding="utf-8")
    with pytest.raises(NotSplit):
        corpus.load(str(path))


@pytest.mark.parametrize("p, split", [(3, False), (5, True)])
def test_splitness_depends_on_the_field(p: int, split: bool) -> None:
    fs = FieldSpec.prime(p)
    if split:
        assert corpus.entry_from_json(_gaussian_rationals(), fs).algebra.dim == 2
    else:
        with pytest.raises(NotSplit):
            corpus.entry_from_json(_gaussian_rationals(), fs)
