"""Matrix representations of commutative monoids and their derived forms.

A representation stores one matrix per element (finite monoid) or one per
generator (N^k). Validation checks the homomorphism law against the Cayley
table, or pairwise commutation of the generators. Boundedness over N^k is
decided exactly from the joint block structure: every block whose joint
value is unimodular in some generator must be acted on by that generator
as the scalar itself.
"""

from dataclasses import dataclass, replace

import numpy as np

from .config import DEFAULT_CONFIG, DEFAULT_SEED
from .errors import (
    BadNeutral,
    HomomorphismViolation,
    MismatchedSemigroup,
    NotBounded,
    NotCommuting,
    NotInvariant,
)
from .linalg import as_complex_matrix, joint_block_decomposition, operator_norm
from .semigroups import FiniteCommutativeMonoid, FreeCommutativeMonoid

CERTIFIED = "certified"
UNBOUNDED = "unbounded"
NOT_CHECKED = "not_checked"


@dataclass(frozen=True)
class BoundednessCertificate:
    status: str
    witness: tuple = None   # generator direction for unbounded growth
    detail: str = ""

    @property
    def is_certified(self):
        return self.status == CERTIFIED

    def to_json(self):
        out = {"status": self.status}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass(frozen=True, eq=False)
class Representation:
    semigroup: object
    dim: int
    matrices: tuple  # per element (finite) or per generator (N^k)
    boundedness: BoundednessCertificate = BoundednessCertificate(NOT_CHECKED)

    @property
    def is_finite(self):
        return isinstance(self.semigroup, FiniteCommutativeMonoid)

    def family(self):
        """The matrices that generate the image: all elements for a finite
        monoid, the generators for N^k."""
        return list(self.matrices)

    def matrix(self, s):
        """The matrix representing an arbitrary element."""
        if self.is_finite:
            return self.matrices[s]
        result = np.eye(self.dim, dtype=np.complex128)
        for gen, exponent in zip(self.matrices, s):
            if exponent:
                result = result @ np.linalg.matrix_power(gen, int(exponent))
        return result

    def generating_elements(self):
        """Elements whose matrices are stored directly."""
        if self.is_finite:
            return list(self.semigroup.elements())
        k = self.semigroup.rank
        return [tuple(1 if i == j else 0 for i in range(k)) for j in range(k)]


def validate_representation(semigroup, matrices, config=None):
    """Check the homomorphism law and wrap the matrices."""
    config = DEFAULT_CONFIG if config is None else config
    mats = tuple(as_complex_matrix(a) for a in matrices)
    if not mats:
        raise ValueError("representation needs at least one matrix")
    n = mats[0].shape[0]
    for a in mats:
        if a.shape != (n, n):
            raise ValueError("all matrices must be square of equal dimension")
    if n > config.max_dim:
        raise ValueError(f"dimension {n} exceeds supported maximum {config.max_dim}")

    if isinstance(semigroup, FiniteCommutativeMonoid):
        if len(mats) != semigroup.size:
            raise ValueError("finite monoid needs one matrix per element")
        eye = np.eye(n)
        if operator_norm(mats[semigroup.neutral] - eye) > config.tol_hom:
            raise BadNeutral(semigroup.neutral)
        scale = max(1.0, max(operator_norm(a) for a in mats) ** 2)
        for s in semigroup.elements():
            for t in range(s, semigroup.size):
                residual = operator_norm(mats[s] @ mats[t] - mats[semigroup.add(s, t)])
                if residual > config.tol_hom * scale:
                    raise HomomorphismViolation(s, t, residual)
    elif isinstance(semigroup, FreeCommutativeMonoid):
        if len(mats) != semigroup.rank:
            raise ValueError("N^k needs one matrix per generator")
        for i in range(len(mats)):
            for j in range(i + 1, len(mats)):
                residual = operator_norm(mats[i] @ mats[j] - mats[j] @ mats[i])
                bound = config.tol_commute * max(1.0, operator_norm(mats[i])) \
                    * max(1.0, operator_norm(mats[j]))
                if residual > bound:
                    raise NotCommuting(i, j, residual)
    else:
        raise TypeError("unsupported semigroup type")

    return Representation(semigroup=semigroup, dim=n, matrices=mats)


def representation_from_generators(monoid, generator_indices, generator_matrices,
                                   config=None):
    """Materialize a finite-monoid representation from matrices on a
    generating set, by walking the Cayley table, then validate it."""
    config = DEFAULT_CONFIG if config is None else config
    gens = [as_complex_matrix(a) for a in generator_matrices]
    if len(gens) != len(generator_indices):
        raise ValueError("one matrix per generator index required")
    n = gens[0].shape[0]
    known = {monoid.neutral: np.eye(n, dtype=np.complex128)}
    frontier = [monoid.neutral]
    while frontier:
        s = frontier.pop()
        for g_idx, g_mat in zip(generator_indices, gens):
            t = monoid.add(s, g_idx)
            if t not in known:
                known[t] = known[s] @ g_mat
                frontier.append(t)
    if len(known) != monoid.size:
        missing = [s for s in monoid.elements() if s not in known]
        raise ValueError(f"generators do not generate the monoid; missing {missing}")
    return validate_representation(monoid, [known[s] for s in monoid.elements()], config)


def _require_certified(rep):
    if not rep.boundedness.is_certified:
        raise NotBounded("operation requires a Certified boundedness certificate; "
                         "run certify_boundedness first")


def certify_boundedness(rep, config=None, seed=DEFAULT_SEED):
    """Attach a boundedness certificate.

    Finite monoids are always bounded (finite range). Over N^k the joint
    block decomposition of the generators is inspected: a block is
    admissible iff every generator value has modulus <= 1 + tol_char, and
    each generator with a peripheral value acts on the block as that exact
    scalar (no nilpotent part). Any violation yields an Unbounded
    certificate with the growth direction.
    """
    config = DEFAULT_CONFIG if config is None else config
    if rep.is_finite:
        cert = BoundednessCertificate(CERTIFIED, detail="finite range")
        return replace(rep, boundedness=cert)

    decomp = joint_block_decomposition(rep.matrices, config, seed)
    u = decomp.unitary
    transformed = [u.conj().T @ a @ u for a in rep.matrices]
    for b, block in enumerate(decomp.block_slices()):
        values = decomp.block_values[b]
        for j, psi in enumerate(values):
            if abs(psi) > 1.0 + config.tol_char:
                cert = BoundednessCertificate(
                    UNBOUNDED,
                    witness=tuple(1 if i == j else 0 for i in range(len(values))),
                    detail=f"block {b}: generator {j} has joint value of modulus "
                           f"{abs(psi):.6f} > 1")
                return replace(rep, boundedness=cert)
            if abs(psi) >= 1.0 - config.tol_char:
                width = block.stop - block.start
                diag_block = transformed[j][block, block]
                defect = operator_norm(diag_block - psi * np.eye(width))
                scale = max(1.0, operator_norm(rep.matrices[j]))
                if defect > config.tol_rank * scale * max(1, width):
                    cert = BoundednessCertificate(
                        UNBOUNDED,
                        witness=tuple(1 if i == j else 0 for i in range(len(values))),
                        detail=f"block {b}: generator {j} is peripheral but acts "
                               f"with nilpotent defect {defect:.3e}")
                    return replace(rep, boundedness=cert)
    return replace(rep, boundedness=BoundednessCertificate(
        CERTIFIED, detail="all peripheral blocks act as exact scalars"))


def rotate(rep, chi):
    """The twisted representation s -> chi(s) T_s."""
    if chi.semigroup != rep.semigroup:
        raise MismatchedSemigroup("character over a different semigroup")
    if rep.is_finite:
        mats = tuple(chi(s) * rep.matrices[s] for s in rep.semigroup.elements())
    else:
        mats = tuple(z * a for z, a in zip(chi.gen_values, rep.matrices))
    # |chi| = 1, so the certificate transfers verbatim
    return replace(rep, matrices=mats)


def restrict(rep, subspace, config=None):
    """Express the representation on an invariant subspace."""
    config = DEFAULT_CONFIG if config is None else config
    if subspace.ambient_dim != rep.dim:
        raise ValueError("subspace lives in a different ambient dimension")
    basis = subspace.basis
    proj = basis @ basis.conj().T
    eye = np.eye(rep.dim)
    for label, a in zip(rep.generating_elements(), rep.matrices):
        residual = operator_norm((eye - proj) @ a @ proj)
        if residual > config.tol_hom * max(1.0, operator_norm(a)):
            raise NotInvariant(label, residual)
    mats = tuple(basis.conj().T @ a @ basis for a in rep.matrices)
    return Representation(semigroup=rep.semigroup, dim=subspace.dim,
                          matrices=mats, boundedness=rep.boundedness)


def dual_representation(rep):
    """Transpose every matrix (bilinear dual pairing convention)."""
    return replace(rep, matrices=tuple(a.T.copy() for a in rep.matrices))


def direct_sum(rep1, rep2):
    if rep1.semigroup != rep2.semigroup:
        raise MismatchedSemigroup("summands over different semigroups")
    mats = []
    for a, b in zip(rep1.matrices, rep2.matrices):
        block = np.zeros((rep1.dim + rep2.dim,) * 2, dtype=np.complex128)
        block[: rep1.dim, : rep1.dim] = a
        block[rep1.dim:, rep1.dim:] = b
        mats.append(block)
    if rep1.boundedness.is_certified and rep2.boundedness.is_certified:
        cert = BoundednessCertificate(CERTIFIED, detail="sum of certified summands")
    else:
        cert = BoundednessCertificate(NOT_CHECKED)
    return Representation(semigroup=rep1.semigroup, dim=rep1.dim + rep2.dim,
                          matrices=tuple(mats), boundedness=cert)


def identity_representation(semigroup, dim):
    """Every element acts as the identity on C^dim."""
    eye = np.eye(dim, dtype=np.complex128)
    if isinstance(semigroup, FreeCommutativeMonoid):
        mats = (eye.copy(),) * semigroup.rank
    else:
        mats = tuple(eye.copy() for _ in semigroup.elements())
    return Representation(semigroup=semigroup, dim=dim, matrices=mats,
                          boundedness=BoundednessCertificate(CERTIFIED, detail="identity"))


def regular_representation(monoid):
    """Left translations on C^|S|; entrywise 0/1, hence positive."""
    m = monoid.size
    mats = []
    for s in monoid.elements():
        a = np.zeros((m, m), dtype=np.complex128)
        for t in monoid.elements():
            a[monoid.add(s, t), t] = 1.0
        mats.append(a)
    rep = validate_representation(monoid, mats)
    return certify_boundedness(rep)
