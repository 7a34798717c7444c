"""Positivity on C^n with entrywise order, and the equivalence suite for
positive representations: quasi-compactness, uniform mean ergodicity with
finite fixed space, and the Riesz-point property of the constant character
must coincide, and no unimodular eigenspace may exceed the fixed space in
dimension.
"""

from dataclasses import dataclass

import numpy as np

from .characters import trivial_character
from .config import DEFAULT_CONFIG, DEFAULT_SEED
from .errors import DominationViolation, EquivalenceViolation, NotBounded
from .ergodic import is_pole, mean_ergodic_analysis, quasi_compactness_verdict
from .spectrum import unitary_spectrum


@dataclass
class PositivityCertificate:
    is_positive: bool
    first_violation: tuple = None  # (matrix index, (row, col), value)


def check_positive(rep, config=None):
    """Entrywise nonnegativity of the representing matrices."""
    config = DEFAULT_CONFIG if config is None else config
    for idx, mat in enumerate(rep.matrices):
        bad_real = mat.real < -config.tol_char
        bad_imag = np.abs(mat.imag) > config.tol_char
        bad = bad_real | bad_imag
        if bad.any():
            i, j = map(int, np.argwhere(bad)[0])
            return PositivityCertificate(False, (idx, (i, j), complex(mat[i, j])))
    return PositivityCertificate(True)


@dataclass
class NisaReport:
    quasi_compact: bool
    ume_with_finite_fix: bool
    trivial_char_riesz: bool
    fix_dim: int
    projection_rank: int

    @property
    def agree(self):
        return self.quasi_compact == self.ume_with_finite_fix == self.trivial_char_riesz


def nisa_suite(rep, config=None, seed=DEFAULT_SEED):
    """Evaluate the three equivalent verdicts for a positive representation
    by three independent routes and assert they agree."""
    config = DEFAULT_CONFIG if config is None else config
    if not rep.boundedness.is_certified:
        raise NotBounded("nisa_suite requires a Certified representation")
    cert = check_positive(rep, config)
    if not cert.is_positive:
        raise ValueError(f"representation is not positive: {cert.first_violation}")

    qc = quasi_compactness_verdict(rep, config, seed)
    ergodic = mean_ergodic_analysis(rep, config, seed)
    pole = is_pole(rep, trivial_character(rep.semigroup), config, seed)

    fix_dim = ergodic.fix_dim
    ume_finite = ergodic.is_ume and np.isfinite(fix_dim)
    riesz = pole.counts_as_pole and pole.riesz
    projection_rank = 0
    if ergodic.mean_projection is not None:
        projection_rank = int(round(np.trace(ergodic.mean_projection).real))

    report = NisaReport(
        quasi_compact=qc.is_quasi_compact,
        ume_with_finite_fix=bool(ume_finite),
        trivial_char_riesz=bool(riesz),
        fix_dim=fix_dim,
        projection_rank=projection_rank,
    )
    if not report.agree:
        raise EquivalenceViolation(
            f"quasi_compact={report.quasi_compact}, "
            f"ume_with_finite_fix={report.ume_with_finite_fix}, "
            f"trivial_char_riesz={report.trivial_char_riesz}")
    if projection_rank != fix_dim and ergodic.mean_projection is not None:
        raise EquivalenceViolation(
            f"mean projection rank {projection_rank} != fix dimension {fix_dim}")
    return report


@dataclass
class DominationReport:
    fix_dim: int
    profile: list  # (character, eigenspace dim) per spectral character


def domination_check(rep, config=None, seed=DEFAULT_SEED):
    """dim ker(chi - T) <= dim fix(T) for every spectral character of a
    positive uniformly mean ergodic representation."""
    config = DEFAULT_CONFIG if config is None else config
    cert = check_positive(rep, config)
    if not cert.is_positive:
        raise ValueError(f"representation is not positive: {cert.first_violation}")
    ergodic = mean_ergodic_analysis(rep, config, seed)
    if not ergodic.is_ume:
        raise ValueError("domination check requires a uniformly mean ergodic input")

    spectrum = unitary_spectrum(rep, config, seed)
    fix_dim = ergodic.fix_dim
    profile = []
    for chi, space in zip(spectrum.characters, spectrum.eigenspaces):
        profile.append((chi, space.dim))
        if space.dim > fix_dim:
            raise DominationViolation(chi, (space.dim, fix_dim))
    return DominationReport(fix_dim=fix_dim, profile=profile)
