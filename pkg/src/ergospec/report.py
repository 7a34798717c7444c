"""Full-pipeline analysis and its JSON report.

The report is deterministic for a fixed input, seed, and tolerance
configuration, except for the "timings" section, which is excluded from
the determinism contract.
"""

import math
import time
from dataclasses import dataclass, field

from .config import DEFAULT_CONFIG, DEFAULT_SEED
from .ergodic import (
    is_pole,
    mean_ergodic_analysis,
    peripheral_decomposition,
    quasi_compactness_verdict,
    semigroup_at_infinity,
    stability_verdict,
)
from .positivity import check_positive, domination_check, nisa_suite
from .representations import certify_boundedness
from .serialize import (
    character_to_json,
    digest,
    matrix_to_json,
    representation_to_json,
)
from .spectrum import unitary_spectrum


@dataclass
class AnalysisReport:
    data: dict
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def to_json(self):
        return self.data


def _character_entry(chi):
    return character_to_json(chi)


def _complex_str(z):
    return f"{z.real:+.6f}{z.imag:+.6f}i"


def analyze(rep, config=None, seed=DEFAULT_SEED, input_json=None,
            sections=None):
    """Run the full pipeline and collect a structured report.

    sections: optional iterable restricting the analysis
    ("spectrum", "ergodic", "poles", "decomposition", "stability",
    "quasicompact", "positivity"); dependencies are pulled in as needed.
    """
    config = DEFAULT_CONFIG if config is None else config
    wanted = set(sections) if sections is not None else {
        "spectrum", "ergodic", "poles", "decomposition", "stability",
        "quasicompact", "positivity"}
    violations = []
    timings = {}
    report = {
        "schema": "v1",
        "input_digest": digest(input_json if input_json is not None
                               else representation_to_json(rep)),
        "tolerances": config.to_dict(),
        "seed": seed,
        "conventions": {"dual_pairing": "transpose (bilinear)"},
    }

    def timed(name, fn):
        start = time.perf_counter()
        result = fn()
        timings[name] = round(time.perf_counter() - start, 6)
        return result

    rep = timed("certify", lambda: certify_boundedness(rep, config, seed))
    report["boundedness"] = rep.boundedness.to_json()
    if not rep.boundedness.is_certified:
        report["skipped"] = {"reason": "representation is not certified bounded; "
                                       "spectral and ergodic analyses refuse"}
        report["timings"] = timings
        return AnalysisReport(report, violations)

    spectrum = timed("spectrum", lambda: unitary_spectrum(rep, config, seed))
    report["unitary_spectrum"] = {
        "count": len(spectrum),
        "characters": [_character_entry(c) for c in spectrum.characters],
        "eigenspace_dims": [sp.dim for sp in spectrum.eigenspaces],
        "eigenspace_bases": [matrix_to_json(sp.basis) for sp in spectrum.eigenspaces],
        "decomposition_seed": spectrum.decomposition.seed,
        "decomposition_warnings": list(spectrum.decomposition.warnings),
    }

    if "ergodic" in wanted or "poles" in wanted or "quasicompact" in wanted:
        ergodic = timed("ergodic", lambda: mean_ergodic_analysis(rep, config, seed))
        entry = {
            "is_uniformly_mean_ergodic": ergodic.is_ume,
            "fix_dim": ergodic.fix_dim,
            "range_dim": ergodic.range_space.dim,
            "net_divergence": ergodic.net_divergence,
        }
        def finite_or_none(x):
            return x if x is not None and math.isfinite(x) else None

        if ergodic.mean_projection is not None:
            entry["mean_projection"] = matrix_to_json(ergodic.mean_projection)
        if ergodic.kernel_average_residual is not None:
            entry["kernel_average_residual"] = \
                finite_or_none(ergodic.kernel_average_residual)
        if ergodic.cesaro_trace:
            entry["cesaro_trace"] = [
                {"side": side, "plain": finite_or_none(plain),
                 "composed": finite_or_none(comp)}
                for side, plain, comp in ergodic.cesaro_trace]
        report["ergodic"] = entry
        if ergodic.net_divergence:
            violations.append("ergodic net failed to reach cesaro_target "
                              "although the algebraic verdict is ergodic")

    if "poles" in wanted:
        def pole_table():
            rows = []
            for chi in spectrum.characters:
                verdict = is_pole(rep, chi, config, seed)
                rows.append({
                    "character": _character_entry(chi),
                    "status": verdict.status,
                    "eigenspace_dim": verdict.eigenspace_dim,
                    "riesz": verdict.riesz,
                    "complement_clear": verdict.complement_clear,
                })
                if not verdict.is_pole:
                    violations.append("spectral character failed the pole test")
                elif verdict.complement_clear is False:
                    violations.append("pole post-check failed: character still in "
                                      "the spectrum of the complementary restriction")
            return rows
        report["poles"] = timed("poles", pole_table)

    if "decomposition" in wanted:
        decomposition = timed("decomposition",
                              lambda: peripheral_decomposition(rep, config, seed))
        report["peripheral_decomposition"] = {
            "reversible_dim": decomposition.reversible.dim,
            "stable_dim": decomposition.stable.dim,
            "characters": [_character_entry(c) for c in decomposition.characters],
            "projection": matrix_to_json(decomposition.projection),
            "cross_residual": decomposition.cross_residual,
            "stability_witness": list(decomposition.stability_witness)
            if isinstance(decomposition.stability_witness, tuple)
            else decomposition.stability_witness,
            "stability_norm": decomposition.stability_norm,
        }
        if decomposition.reversible.dim + decomposition.stable.dim != rep.dim:
            violations.append("peripheral decomposition does not span the space")
        if decomposition.cross_residual > 10 * config.tol_hom:
            violations.append("pairwise products of spectral projections do not vanish")

    if "stability" in wanted:
        stability = timed("stability", lambda: stability_verdict(rep, config, seed))
        report["stability"] = {
            "status": stability.status,
            "witness": list(stability.witness) if isinstance(stability.witness, tuple)
            else stability.witness,
            "witness_norm": stability.witness_norm,
            "budget_exceeded": stability.budget_exceeded,
            "zero_in_range": stability.zero_in_range,
            "blocking_character": _character_entry(stability.blocking_character)
            if stability.blocking_character is not None else None,
        }
        if rep.is_finite:
            if stability.is_stable != bool(stability.zero_in_range):
                violations.append("finite-monoid stability disagrees with the "
                                  "zero-in-range criterion")
            infinity = semigroup_at_infinity(rep, config)
            report["semigroup_at_infinity"] = {
                "count": len(infinity.operators),
                "operators": [matrix_to_json(op) for op in infinity.operators],
            }

    if "quasicompact" in wanted:
        qc = timed("quasicompact",
                   lambda: quasi_compactness_verdict(rep, config, seed))
        report["quasi_compactness"] = {
            "status": qc.status,
            "eigenspace_dims": qc.eigenspace_dims,
            "riesz_all": qc.riesz_all,
            "norm_witness": {"element": qc.norm_witness[0]
                             if not isinstance(qc.norm_witness[0], tuple)
                             else list(qc.norm_witness[0]),
                             "distance": qc.norm_witness[1]},
            "decomposition_consistent": qc.decomposition_consistent,
        }
        if not qc.is_quasi_compact or not qc.decomposition_consistent:
            violations.append("quasi-compactness cross-checks disagree")

    if "positivity" in wanted:
        positivity = check_positive(rep, config)
        entry = {"is_positive": positivity.is_positive}
        if not positivity.is_positive:
            idx, (i, j), value = positivity.first_violation
            entry["first_violation"] = {"matrix": idx, "row": i, "col": j,
                                        "value": _complex_str(value)}
            entry["nisa"] = {"skipped": "representation is not positive"}
            entry["domination"] = {"skipped": "representation is not positive"}
        else:
            def positive_suites():
                out = {}
                try:
                    nisa = nisa_suite(rep, config, seed)
                    out["nisa"] = {
                        "quasi_compact": nisa.quasi_compact,
                        "ume_with_finite_fix": nisa.ume_with_finite_fix,
                        "trivial_char_riesz": nisa.trivial_char_riesz,
                        "fix_dim": nisa.fix_dim,
                        "projection_rank": nisa.projection_rank,
                        "agree": nisa.agree,
                    }
                except Exception as exc:  # equivalence violations surface, not crash
                    out["nisa"] = {"error": str(exc)}
                    violations.append(f"nisa suite: {exc}")
                try:
                    domination = domination_check(rep, config, seed)
                    out["domination"] = {
                        "fix_dim": domination.fix_dim,
                        "profile": [{"character": _character_entry(c), "dim": d}
                                    for c, d in domination.profile],
                    }
                except Exception as exc:
                    out["domination"] = {"error": str(exc)}
                    violations.append(f"domination check: {exc}")
                return out
            entry.update(timed("positivity", positive_suites))
        report["positivity"] = entry

    report["violations"] = list(violations)
    report["timings"] = timings
    return AnalysisReport(report, violations)


def summarize(report_data):
    """Short human-readable synopsis of a report dict."""
    lines = []
    lines.append(f"input digest : {report_data['input_digest'][:16]}...")
    bound = report_data.get("boundedness", {})
    lines.append(f"boundedness  : {bound.get('status')} {bound.get('detail', '')}".rstrip())
    spec = report_data.get("unitary_spectrum")
    if spec:
        lines.append(f"spectrum     : {spec['count']} character(s), "
                     f"eigenspace dims {spec['eigenspace_dims']}")
    erg = report_data.get("ergodic")
    if erg:
        lines.append(f"ergodic      : ume={erg['is_uniformly_mean_ergodic']} "
                     f"fix_dim={erg['fix_dim']} range_dim={erg['range_dim']}")
    dec = report_data.get("peripheral_decomposition")
    if dec:
        lines.append(f"decomposition: reversible {dec['reversible_dim']} + "
                     f"stable {dec['stable_dim']}")
    stab = report_data.get("stability")
    if stab:
        lines.append(f"stability    : {stab['status']} witness={stab['witness']} "
                     f"norm={stab['witness_norm']}")
    qc = report_data.get("quasi_compactness")
    if qc:
        lines.append(f"quasicompact : {qc['status']} dims={qc['eigenspace_dims']}")
    pos = report_data.get("positivity")
    if pos:
        lines.append(f"positivity   : {pos['is_positive']}")
        if "nisa" in pos and "agree" in pos.get("nisa", {}):
            lines.append(f"nisa         : agree={pos['nisa']['agree']} "
                         f"fix_dim={pos['nisa']['fix_dim']}")
    violations = report_data.get("violations", [])
    lines.append(f"violations   : {len(violations)}")
    for v in violations:
        lines.append(f"  - {v}")
    return "\n".join(lines)
