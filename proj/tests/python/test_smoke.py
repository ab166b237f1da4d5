import math

import pytest

import dirimix


def test_shift_witness_is_exactly_equal():
    pair = dirimix.shift_witness(["1", "1"])
    assert len(pair["g1"]["atoms"]) == 2
    cert = dirimix.decide_equality(pair["g0"], pair["g1"])
    assert cert["verdict"] == "equal"
    assert cert["method"] == "exact_polynomial"
    assert cert["residual"] == "0"
    assert cert["sign_counts"] == [2, 1]


def test_float_witness_uses_closed_form_l2():
    pair = dirimix.shift_witness([1.5, 2.5, 3.0], exact=False)
    cert = dirimix.decide_equality(pair["g0"], pair["g1"])
    assert (cert["verdict"], cert["method"]) == ("equal", "closed_form_l2")
    assert dirimix.l2_distance(pair["g0"], pair["g1"]) <= 1e-10


def test_expand_atom_keeps_equality():
    pair = dirimix.shift_witness(["1/2", "3/2"])
    expanded = dirimix.expand_atom(pair["g1"], 0)
    assert len(expanded["atoms"]) == 3
    assert dirimix.decide_equality(pair["g0"], expanded)["verdict"] == "equal"


def test_distinct_point_masses_differ():
    a = {"family": "dirichlet", "atoms": [{"alpha": [1, 1], "weight": 1}]}
    b = {"family": "dirichlet", "atoms": [{"alpha": [1.5, 1.5], "weight": 1}]}
    assert dirimix.decide_equality(a, b)["verdict"] == "not_equal"


def test_certify_few_atoms():
    g = {
        "family": "dirichlet",
        "atoms": [{"alpha": [1, 5, 9], "weight": 0.25}, {"alpha": [4, 1, 1], "weight": 0.75}],
    }
    assert dirimix.certify(g) == [{"J": 3, "atom_count": 2, "regime": "few_atoms"}]


def test_relation_basis_obeys_sign_bound():
    basis = dirimix.null_relation_basis(2, 3)
    assert len(basis) == 6
    for relation in basis:
        assert max(dirimix.sign_counts(relation)) >= 2


def test_gram_null_space_of_shift_set():
    vectors, condition = dirimix.gram_null_space([[2, 2, 2], [3, 2, 2], [2, 3, 2], [2, 2, 3]])
    assert len(vectors) == 1
    for got, want in zip(vectors[0], [1, -1 / 3, -1 / 3, -1 / 3]):
        assert abs(got - want) <= 1e-8
    assert condition > 1e8


def test_densities_and_transports():
    assert math.isclose(dirimix.inner_product([2, 2], [2, 2]), 6 / 5, rel_tol=1e-13)
    assert math.isclose(dirimix.dirichlet_log_density([1, 1, 1], [0.2, 0.3]), math.log(2), rel_tol=1e-14)
    assert math.isclose(dirimix.inverted_dirichlet_log_density([1, 1], [1.0]), math.log(0.25), rel_tol=1e-14)
    x = dirimix.chart_transform([1.0, 1.0])
    assert all(math.isclose(v, 1 / 3) for v in x)
    t = dirimix.alr_transform([0.25, 0.25, 0.5])
    back = dirimix.alr_inverse(t)
    assert all(math.isclose(u, v) for u, v in zip(back, [0.25, 0.25, 0.5]))
    assert dirimix.dirichlet_moment(["2", "3"], [1, 0]) == "2/5"


def test_series_within_bound():
    e = dirimix.h_series_eval([1, 1], [0.25], 20)
    assert abs(e["value"] - 1.25**-2) <= e["tail_bound"]


def test_errors_raise_dirimix_error():
    with pytest.raises(dirimix.DirimixError):
        dirimix.inner_product([0.2, 1], [0.2, 1])
    with pytest.raises(ValueError):
        dirimix.shift_witness(["1", "-1"])
    with pytest.raises(dirimix.DirimixError, match="feasibility"):
        dirimix.null_relation_basis(4, 8)
