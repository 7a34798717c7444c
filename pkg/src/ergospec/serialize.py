"""JSON wire formats.

Semigroups:      {"type": "cayley", "size": m, "neutral": i, "table": [[...], ...]}
                 {"type": "free_commutative", "rank": k}
Matrices:        {"rows": n, "cols": n, "re": [...], "im": [...]}   (row-major)
Representations: {"semigroup": {...}, "dim": n,
                  "matrices": {"per": "element" | "generator", "list": [...]}}
Characters:      {"angles": [["p", "q"], ...]} or {"gen_values": [{"re": .., "im": ..}, ...]}
"""

import hashlib
import json
from fractions import Fraction

import numpy as np

from .characters import UnitaryCharacter, character_from_gen_values
from .errors import ParseError
from .representations import validate_representation
from .semigroups import FiniteCommutativeMonoid, FreeCommutativeMonoid, validate_monoid


def canonical_dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest(obj):
    """Stable hex digest of a JSON-serializable object."""
    return hashlib.sha256(canonical_dumps(obj).encode()).hexdigest()


def semigroup_to_json(semigroup):
    return semigroup.to_json()


def semigroup_from_json(data):
    kind = data.get("type")
    if kind == "cayley":
        return validate_monoid(data["table"], data["neutral"])
    if kind == "free_commutative":
        return FreeCommutativeMonoid(rank=int(data["rank"]))
    raise ParseError(f"unknown semigroup type {kind!r}")


def matrix_to_json(mat):
    mat = np.asarray(mat, dtype=np.complex128)
    return {
        "rows": mat.shape[0],
        "cols": mat.shape[1],
        "re": [float(x) for x in mat.real.ravel()],
        "im": [float(x) for x in mat.imag.ravel()],
    }


def matrix_from_json(data):
    rows, cols = int(data["rows"]), int(data["cols"])
    re = np.asarray(data["re"], dtype=np.float64)
    im = np.asarray(data["im"], dtype=np.float64)
    if re.size != rows * cols or im.size != rows * cols:
        raise ParseError("matrix entry count does not match rows * cols")
    return (re + 1j * im).reshape(rows, cols)


def representation_to_json(rep):
    return {
        "semigroup": semigroup_to_json(rep.semigroup),
        "dim": rep.dim,
        "matrices": {
            "per": "element" if rep.is_finite else "generator",
            "list": [matrix_to_json(a) for a in rep.matrices],
        },
    }


def representation_from_json(data, config=None):
    semigroup = semigroup_from_json(data["semigroup"])
    per = data["matrices"]["per"]
    expected = "element" if isinstance(semigroup, FiniteCommutativeMonoid) else "generator"
    if per != expected:
        raise ParseError(f'matrices must be given per "{expected}" for this semigroup')
    mats = [matrix_from_json(m) for m in data["matrices"]["list"]]
    rep = validate_representation(semigroup, mats, config)
    if rep.dim != int(data["dim"]):
        raise ParseError(f'declared dim {data["dim"]} does not match matrices ({rep.dim})')
    return rep


def load_representation(path, config=None):
    with open(path) as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    return representation_from_json(data, config), data


def character_to_json(chi):
    return chi.to_json()


def character_from_json(data, semigroup):
    if "angles" in data:
        if not isinstance(semigroup, FiniteCommutativeMonoid):
            raise ParseError("angle characters require a finite monoid")
        angles = tuple(Fraction(int(p), int(q)) % 1 for p, q in data["angles"])
        if len(angles) != semigroup.size:
            raise ParseError("need one angle per element")
        chi = UnitaryCharacter(semigroup, angles=angles)
        values = chi.values()
        for s in semigroup.elements():
            for t in semigroup.elements():
                if abs(values[s] * values[t] - values[semigroup.add(s, t)]) > 1e-9:
                    raise ParseError(f"angles are not multiplicative at ({s}, {t})")
        return chi
    if "gen_values" in data:
        values = [complex(v["re"], v["im"]) for v in data["gen_values"]]
        return character_from_gen_values(semigroup, values)
    raise ParseError("character needs either angles or gen_values")


def subspace_to_json(space):
    return {"ambient_dim": space.ambient_dim, "dim": space.dim,
            "basis": matrix_to_json(space.basis)}
