"""The unitary spectrum of a representation and its cross-checks.

In finite dimension the unitary spectrum coincides with the unitary point
spectrum: a unitary character belongs to the spectrum exactly when the
commuting family has a joint eigenvector for it. Candidates are read off
the joint block decomposition and confirmed by a nonzero joint kernel.
The coefficient-inequality falsifier provides an independent one-sided
refutation route.
"""

from dataclasses import dataclass

import numpy as np

from .characters import (
    UnitaryCharacter,
    char_distance,
    enumerate_unitary_dual,
    nearest_character,
)
from .config import DEFAULT_CONFIG, DEFAULT_SEED
from .errors import NotBounded, NotNormalized
from .linalg import (
    Subspace,
    joint_block_decomposition,
    null_space,
    operator_norm,
    subspace_intersect,
)


@dataclass
class UnitarySpectrumResult:
    characters: list          # UnitaryCharacter, canonically ordered
    eigenspaces: list         # Subspace per character, each nonzero
    witnesses: list           # one joint eigenvector per character
    decomposition: object = None

    def __len__(self):
        return len(self.characters)

    def contains(self, chi, tol=None):
        tol = DEFAULT_CONFIG.tol_cluster if tol is None else tol
        return any(char_distance(chi, c) <= tol for c in self.characters)

    def index_of(self, chi, tol=None):
        tol = DEFAULT_CONFIG.tol_cluster if tol is None else tol
        for i, c in enumerate(self.characters):
            if char_distance(chi, c) <= tol:
                return i
        return None


def eigenspace(rep, chi, config=None):
    """ker(chi - T): the joint kernel over the generating matrices.

    For N^k the generators suffice (a joint generator eigenvector is an
    eigenvector of every product); for a finite monoid all elements are
    intersected.
    """
    config = DEFAULT_CONFIG if config is None else config
    n = rep.dim
    eye = np.eye(n, dtype=np.complex128)
    kernels = []
    for s, mat in zip(rep.generating_elements(), rep.matrices):
        kernels.append(null_space(chi(s) * eye - mat, config.tol_rank,
                                  scale=max(1.0, operator_norm(mat))))
        if kernels[-1].dim == 0:
            return Subspace.zero(n)
    return subspace_intersect(kernels, config.tol_rank)


def _candidate_characters(rep, decomposition, config):
    """Unimodular per-block value tuples, turned into characters."""
    semigroup = rep.semigroup
    is_finite = rep.is_finite
    dual = enumerate_unitary_dual(semigroup) if is_finite else None
    seen = []
    for values in decomposition.block_values:
        if any(abs(abs(v) - 1.0) > config.tol_char for v in values):
            continue
        if is_finite:
            chi = nearest_character(dual, values, 10 * config.tol_char)
            if chi is None:
                continue
        else:
            unit = tuple(v / abs(v) for v in values)
            chi = UnitaryCharacter(semigroup, gen_values=unit)
        if all(char_distance(chi, other) > config.tol_cluster for other in seen):
            seen.append(chi)
    return seen


def unitary_spectrum(rep, config=None, seed=DEFAULT_SEED):
    """Compute sigma_uni(T) with eigenspaces and witnesses.

    Requires a Certified representation. An empty result is a valid
    outcome (a stable representation), not an error.
    """
    config = DEFAULT_CONFIG if config is None else config
    if not rep.boundedness.is_certified:
        raise NotBounded("unitary_spectrum requires a Certified representation")

    decomposition = joint_block_decomposition(rep.family(), config, seed)
    candidates = _candidate_characters(rep, decomposition, config)

    characters, spaces, witnesses = [], [], []
    for chi in candidates:
        space = eigenspace(rep, chi, config)
        if space.dim == 0:
            continue
        characters.append(chi)
        spaces.append(space)
        witnesses.append(space.basis[:, 0])

    order = sorted(range(len(characters)),
                   key=lambda i: characters[i].canonical_key())
    return UnitarySpectrumResult(
        characters=[characters[i] for i in order],
        eigenspaces=[spaces[i] for i in order],
        witnesses=[witnesses[i] for i in order],
        decomposition=decomposition,
    )


def approximate_eigenvector_check(rep, chi, v, eps):
    """True iff max_s ||chi(s) v - T_s v|| <= eps over the generating set."""
    v = np.asarray(v, dtype=np.complex128)
    if abs(np.linalg.norm(v) - 1.0) > 1e-8:
        raise NotNormalized("test vector must have unit norm")
    worst = 0.0
    for s, mat in zip(rep.generating_elements(), rep.matrices):
        worst = max(worst, float(np.linalg.norm(chi(s) * v - mat @ v)))
    return worst <= eps


@dataclass
class FalsifierVerdict:
    refuted: bool
    elements: list = None
    coefficients: list = None
    lhs: float = 0.0
    rhs: float = 0.0
    trials: int = 0

    @property
    def label(self):
        return "Refuted" if self.refuted else "ConsistentWithMembership"


def laplace_falsifier(rep, chi, trials=64, config=None, seed=DEFAULT_SEED):
    """Search for coefficients violating |sum b_k chi(s_k)| <= ||sum b_k T_{s_k}||.

    A violation proves chi is not in the unitary spectrum (with the found
    witness); no violation proves nothing. Always tries the conjugate
    pattern b_s = conj(chi(s)) over all elements (finite monoid), the
    deterministic +-1 sign patterns for monoids with at most 16 elements,
    and `trials` random coefficient vectors over small element subsets.
    """
    config = DEFAULT_CONFIG if config is None else config
    if not rep.boundedness.is_certified:
        raise NotBounded("laplace_falsifier requires a Certified representation")
    rng = np.random.default_rng(seed)
    attempts = 0

    def check(elements, coeffs):
        lhs = abs(sum(c * chi(s) for c, s in zip(coeffs, elements)))
        rhs = operator_norm(sum(c * rep.matrix(s) for c, s in zip(coeffs, elements)))
        return lhs, rhs

    candidates = []
    if rep.is_finite:
        elements = list(rep.semigroup.elements())
        candidates.append((elements, [np.conj(chi(s)) for s in elements]))
        if rep.semigroup.size <= 16:
            m = rep.semigroup.size
            for bits in range(2 ** (m - 1)):
                signs = [1.0] + [1.0 if (bits >> i) & 1 == 0 else -1.0
                                 for i in range(m - 1)]
                candidates.append((elements, signs))
    else:
        k = rep.semigroup.rank
        base = [tuple(1 if i == j else 0 for i in range(k)) for j in range(k)]
        candidates.append((base, [np.conj(chi(g)) for g in base]))

    for elements, coeffs in candidates:
        attempts += 1
        lhs, rhs = check(elements, coeffs)
        if lhs > rhs + config.tol_char:
            return FalsifierVerdict(True, [list(s) if isinstance(s, tuple) else s
                                           for s in elements],
                                    [complex(c) for c in coeffs], lhs, rhs, attempts)

    for _ in range(trials):
        attempts += 1
        if rep.is_finite:
            m = rep.semigroup.size
            size = int(rng.integers(1, min(m, 8) + 1))
            elements = list(rng.choice(m, size=size, replace=False))
            elements = [int(s) for s in elements]
        else:
            k = rep.semigroup.rank
            size = int(rng.integers(1, 9))
            elements = [tuple(int(x) for x in rng.integers(0, 6, size=k))
                        for _ in range(size)]
        coeffs = rng.standard_normal(len(elements)) + 1j * rng.standard_normal(len(elements))
        lhs, rhs = check(elements, coeffs)
        if lhs > rhs + config.tol_char:
            return FalsifierVerdict(True, [list(s) if isinstance(s, tuple) else s
                                           for s in elements],
                                    [complex(c) for c in coeffs], lhs, rhs, attempts)

    return FalsifierVerdict(False, trials=attempts)


def brute_force_spectrum(rep, config=None):
    """Independent oracle: enumerate joint eigenvalue tuples directly.

    Finite monoid: test every character of the enumerated dual for a
    nonzero joint kernel. N^k: try every tuple of per-generator
    eigenvalues. Only intended for small dimensions.
    """
    config = DEFAULT_CONFIG if config is None else config
    n = rep.dim
    eye = np.eye(n, dtype=np.complex128)

    def joint_kernel_dim(values, mats):
        stacked = np.vstack([v * eye - a for v, a in zip(values, mats)])
        scale = max(1.0, max(operator_norm(a) for a in mats))
        return null_space(stacked, config.tol_rank, scale=scale).dim

    found = []
    if rep.is_finite:
        for chi in enumerate_unitary_dual(rep.semigroup):
            values = chi.values()
            if joint_kernel_dim(values, rep.matrices) > 0:
                found.append(chi)
        return found

    import itertools
    spectra = [np.linalg.eigvals(a) for a in rep.matrices]
    for combo in itertools.product(*spectra):
        if any(abs(abs(v) - 1.0) > config.tol_char for v in combo):
            continue
        if joint_kernel_dim(combo, rep.matrices) == 0:
            continue
        unit = tuple(v / abs(v) for v in combo)
        chi = UnitaryCharacter(rep.semigroup, gen_values=unit)
        if all(char_distance(chi, other) > config.tol_cluster for other in found):
            found.append(chi)
    return found
