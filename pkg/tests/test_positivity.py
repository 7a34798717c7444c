import numpy as np
import pytest

import ergospec as es
from ergospec.ensembles import (
    random_circulant_stochastic_instance,
    random_polynomial_instance,
)
from ergospec.linalg import Subspace
from ergospec.serialize import representation_from_json

from conftest import load_fixture, n1_rep


def test_klein_rep_is_positive(klein_rep):
    assert es.check_positive(klein_rep).is_positive


def test_imaginary_entry_violation():
    rep = n1_rep(np.diag([1j]))
    cert = es.check_positive(rep)
    assert not cert.is_positive
    idx, (i, j), value = cert.first_violation
    assert (idx, i, j) == (0, 0, 0)
    assert value == 1j


def test_negative_entry_violation():
    rep = n1_rep(np.array([[0.5, -0.25], [0.0, 0.5]], dtype=complex))
    cert = es.check_positive(rep)
    assert not cert.is_positive
    assert cert.first_violation[1] == (0, 1)


def test_circulant_fixture_nisa():
    rep = representation_from_json(load_fixture("circulant_stochastic_8"))
    rep = es.certify_boundedness(rep)
    assert es.check_positive(rep).is_positive
    report = es.nisa_suite(rep)
    assert report.agree
    assert report.quasi_compact
    assert report.fix_dim == 1          # irreducible aperiodic circulant
    assert report.projection_rank == 1


def test_klein_nisa(klein_rep):
    report = es.nisa_suite(klein_rep)
    assert report.agree
    assert report.fix_dim == 2
    assert report.projection_rank == 2


def test_nilpotent_generator_nisa():
    rep = n1_rep(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex))
    report = es.nisa_suite(rep)
    assert report.agree
    assert report.fix_dim == 0
    assert report.projection_rank == 0
    ergodic = es.mean_ergodic_analysis(rep)
    np.testing.assert_allclose(ergodic.mean_projection, np.zeros((2, 2)), atol=1e-12)


def test_nisa_rejects_non_positive():
    rep = n1_rep(np.diag([1j]))
    with pytest.raises(ValueError, match="not positive"):
        es.nisa_suite(rep)


def test_domination_cyclic_permutation():
    shift = np.roll(np.eye(4), -1, axis=0).astype(complex)
    rep = n1_rep(shift)
    report = es.domination_check(rep)
    assert report.fix_dim == 1
    assert len(report.profile) == 4      # all fourth roots of unity
    assert all(dim == 1 for _, dim in report.profile)


def test_domination_klein(klein_rep):
    report = es.domination_check(klein_rep)
    assert report.fix_dim == 2
    assert sorted(dim for _, dim in report.profile) == [1, 1, 2]


def test_domination_identity():
    rep = n1_rep(np.eye(3, dtype=complex))
    report = es.domination_check(rep)
    assert report.fix_dim == 3
    assert [dim for _, dim in report.profile] == [3]


def test_positivity_preserved_by_direct_sum(klein_rep):
    total = es.direct_sum(klein_rep, klein_rep)
    assert es.check_positive(total).is_positive


def test_positivity_preserved_by_coordinate_restriction():
    rep = n1_rep(np.diag([0.5, 0.25, 1.0]).astype(complex))
    basis = np.eye(3, dtype=complex)[:, :2]
    sub = es.restrict(rep, Subspace(3, basis))
    assert es.check_positive(sub).is_positive


def test_circulant_ensemble_smoke():
    for seed in range(12):
        rep = random_circulant_stochastic_instance(seed, max_dim=12)
        assert es.check_positive(rep).is_positive
        assert es.nisa_suite(rep, seed=seed).agree
        es.domination_check(rep, seed=seed)


def test_polynomial_ensemble_smoke():
    for seed in range(12):
        rep = random_polynomial_instance(seed, max_dim=12)
        assert es.check_positive(rep).is_positive
        assert es.nisa_suite(rep, seed=seed).agree
        es.domination_check(rep, seed=seed)
