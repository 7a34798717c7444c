import numpy as np
import pytest

import ergospec as es
from ergospec.errors import (
    BadNeutral,
    HomomorphismViolation,
    MismatchedSemigroup,
    NotCommuting,
    NotInvariant,
)
from ergospec.linalg import Subspace
from ergospec.representations import representation_from_generators

from conftest import free, n1_rep


def test_validate_klein_permutation_rep(klein_rep):
    assert klein_rep.dim == 4
    assert klein_rep.boundedness.is_certified


def test_validate_free_scalars():
    rep = es.validate_representation(free(2), [np.array([[1j]]), np.array([[-1.0]])])
    assert rep.dim == 1


def test_bad_neutral_matrix(klein_monoid):
    mats = [2.0 * np.eye(4) for _ in range(4)]
    with pytest.raises(BadNeutral):
        es.validate_representation(klein_monoid, mats)


def test_homomorphism_violation(klein_monoid, klein_rep):
    mats = [a.copy() for a in klein_rep.matrices]
    mats[3] = np.eye(4, dtype=complex)  # breaks M[1] M[2] = M[3]
    with pytest.raises(HomomorphismViolation):
        es.validate_representation(klein_monoid, mats)


def test_generators_must_commute():
    a = np.array([[0.0, 1.0], [0.0, 0.0]])
    b = np.array([[0.0, 0.0], [1.0, 0.0]])
    with pytest.raises(NotCommuting):
        es.validate_representation(free(2), [a, b])


def test_from_generators_matches_direct(klein_monoid, klein_rep):
    rebuilt = representation_from_generators(
        klein_monoid, [1, 2], [klein_rep.matrices[1], klein_rep.matrices[2]])
    for a, b in zip(rebuilt.matrices, klein_rep.matrices):
        np.testing.assert_allclose(a, b)


def test_from_generators_requires_generating_set(klein_monoid, klein_rep):
    with pytest.raises(ValueError, match="missing"):
        representation_from_generators(klein_monoid, [0], [np.eye(4)])


def test_certify_shear_unbounded():
    rep = es.validate_representation(free(1), [np.array([[1.0, 1.0], [0.0, 1.0]])])
    rep = es.certify_boundedness(rep)
    assert rep.boundedness.status == "unbounded"
    assert rep.boundedness.witness == (1,)
    # the witness direction really grows
    norms = [es.operator_norm(np.linalg.matrix_power(rep.matrices[0], t))
             for t in (1, 4, 16)]
    assert norms[2] > norms[1] > norms[0]


def test_certify_contractive_jordan():
    rep = n1_rep(np.array([[0.5, 1.0], [0.0, 0.5]], dtype=complex))
    assert rep.boundedness.is_certified


def test_certify_unitary_diagonals():
    rep = es.validate_representation(
        free(2), [np.diag([1.0, 1j]), np.diag([-1.0, 1.0])])
    assert es.certify_boundedness(rep).boundedness.is_certified


def test_certify_modulus_above_one():
    rep = es.validate_representation(free(1), [np.diag([1.2, 0.5])])
    rep = es.certify_boundedness(rep)
    assert rep.boundedness.status == "unbounded"


def test_certified_norms_stay_bounded_on_grid():
    from ergospec.ensembles import random_certified_instance
    rep, _ = random_certified_instance(17, max_rank=2, max_dim=8)
    exponents = [0, 1, 2, 4, 8, 16, 32, 64]
    worst = 0.0
    for a in exponents:
        for b in exponents:
            worst = max(worst, es.operator_norm(rep.matrix((a, b))))
    assert worst < 10.0  # similarity condition is ~3, no growth permitted


def test_rotate_by_trivial_character(klein_rep):
    one = es.trivial_character(klein_rep.semigroup)
    rotated = es.rotate(klein_rep, one)
    for a, b in zip(rotated.matrices, klein_rep.matrices):
        np.testing.assert_allclose(a, b)


def test_rotate_klein_by_chi(klein_rep):
    dual = es.enumerate_unitary_dual(klein_rep.semigroup)
    chi = [c for c in dual
           if tuple(int(round(v.real)) for v in c.values()) == (1, -1, 1, -1)][0]
    rotated = es.rotate(klein_rep, chi)
    np.testing.assert_allclose(rotated.matrices[1], -klein_rep.matrices[1])
    np.testing.assert_allclose(rotated.matrices[2], klein_rep.matrices[2])


def test_rotate_diag_i_to_identity():
    rep = n1_rep(np.diag([1j]))
    chi = es.character_from_gen_values(rep.semigroup, [-1j])
    rotated = es.rotate(rep, chi)
    np.testing.assert_allclose(rotated.matrices[0], np.eye(1))


def test_rotate_round_trip(klein_rep):
    dual = es.enumerate_unitary_dual(klein_rep.semigroup)
    for chi in dual:
        back = es.rotate(es.rotate(klein_rep, chi), es.char_conj(chi))
        for a, b in zip(back.matrices, klein_rep.matrices):
            assert es.operator_norm(a - b) <= 1e-12


def test_rotate_mismatched_semigroup(klein_rep):
    chi = es.character_from_gen_values(free(1), [1j])
    with pytest.raises(MismatchedSemigroup):
        es.rotate(klein_rep, chi)


def test_restrict_klein_to_chi_line(klein_rep):
    vec = np.array([1.0, -1.0, 0.0, 0.0], dtype=complex) / np.sqrt(2)
    space = Subspace(4, vec.reshape(4, 1))
    sub = es.restrict(klein_rep, space)
    values = [complex(a[0, 0]) for a in sub.matrices]
    assert values == pytest.approx([1, -1, 1, -1])


def test_restrict_rejects_non_invariant(klein_rep):
    vec = np.array([1.0, 0.0, 0.0, 0.0], dtype=complex)
    with pytest.raises(NotInvariant):
        es.restrict(klein_rep, Subspace(4, vec.reshape(4, 1)))


def test_dual_is_transpose_involution(klein_rep):
    back = es.dual_representation(es.dual_representation(klein_rep))
    for a, b in zip(back.matrices, klein_rep.matrices):
        np.testing.assert_allclose(a, b)


def test_direct_sum_diagonal_characters(klein_monoid):
    dual = es.enumerate_unitary_dual(klein_monoid)
    chi, tau = dual[1], dual[2]
    rep1 = es.validate_representation(
        klein_monoid, [np.array([[v]]) for v in chi.values()])
    rep2 = es.validate_representation(
        klein_monoid, [np.array([[v]]) for v in tau.values()])
    total = es.direct_sum(rep1, rep2)
    assert total.dim == 2
    es.validate_representation(klein_monoid, total.matrices)  # still valid
    for a, v1, v2 in zip(total.matrices, chi.values(), tau.values()):
        np.testing.assert_allclose(a, np.diag([v1, v2]))


def test_regular_representation_is_valid_and_positive(threshold_monoid):
    rep = es.regular_representation(threshold_monoid)
    assert rep.boundedness.is_certified
    assert es.check_positive(rep).is_positive


def test_matrix_of_free_element():
    rep = n1_rep(np.diag([0.25, 1.0]).astype(complex))
    np.testing.assert_allclose(rep.matrix((3,)), np.diag([0.25**3, 1.0]))
    np.testing.assert_allclose(rep.matrix((0,)), np.eye(2))
