"""Unitary semigroup characters and the dual group of a finite monoid.

Characters of a finite monoid are stored exactly, as rational angles p/q
(the value at s is exp(2*pi*i*p/q)); this keeps deduplication and the group
structure of the dual exact. Characters of N^k are stored by their values
on the k generators, as unit complex floats.
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .config import DEFAULT_CONFIG
from .errors import MismatchedSemigroup
from .semigroups import FreeCommutativeMonoid, element_order, kernel_group


_EXACT_QUARTERS = {
    Fraction(0): 1.0 + 0.0j,
    Fraction(1, 4): 1.0j,
    Fraction(1, 2): -1.0 + 0.0j,
    Fraction(3, 4): -1.0j,
}


def _angle_value(angle):
    exact = _EXACT_QUARTERS.get(angle % 1)
    if exact is not None:
        return exact
    return cmath.exp(2j * math.pi * float(angle))


@dataclass(frozen=True)
class UnitaryCharacter:
    """A unitary character, exact (rational angles) over a finite monoid or
    generator values over N^k."""

    semigroup: object
    angles: tuple = None      # finite monoid: one Fraction in [0,1) per element
    gen_values: tuple = None  # N^k: one unit complex number per generator

    def __post_init__(self):
        if (self.angles is None) == (self.gen_values is None):
            raise ValueError("exactly one of angles / gen_values required")

    @property
    def is_exact(self):
        return self.angles is not None

    def __call__(self, s):
        if self.is_exact:
            return _angle_value(self.angles[s])
        value = 1.0 + 0.0j
        for z, exponent in zip(self.gen_values, s):
            value *= z ** exponent
        return value

    def values(self):
        """Value on every element (finite monoid only)."""
        return tuple(_angle_value(a) for a in self.angles)

    def canonical_key(self):
        if self.is_exact:
            return self.angles
        return tuple((z.real, z.imag) for z in self.gen_values)

    def to_json(self):
        if self.is_exact:
            return {"angles": [[str(a.numerator), str(a.denominator)]
                               for a in self.angles]}
        return {"gen_values": [{"re": z.real, "im": z.imag}
                               for z in self.gen_values]}


def trivial_character(semigroup):
    if isinstance(semigroup, FreeCommutativeMonoid):
        return UnitaryCharacter(semigroup, gen_values=(1.0 + 0.0j,) * semigroup.rank)
    return UnitaryCharacter(semigroup, angles=(Fraction(0),) * semigroup.size)


def character_from_gen_values(semigroup, gen_values, tol=None):
    """Build and validate an N^k character from generator values."""
    tol = DEFAULT_CONFIG.tol_char if tol is None else tol
    if not isinstance(semigroup, FreeCommutativeMonoid):
        raise ValueError("gen_values characters only exist over N^k")
    values = tuple(complex(z) for z in gen_values)
    if len(values) != semigroup.rank:
        raise ValueError("need one generator value per generator")
    for z in values:
        if abs(abs(z) - 1.0) > tol:
            raise ValueError(f"generator value {z} is not unimodular")
    values = tuple(z / abs(z) for z in values)
    return UnitaryCharacter(semigroup, gen_values=values)


def char_mul(chi, tau):
    if chi.semigroup != tau.semigroup:
        raise MismatchedSemigroup("characters over different semigroups")
    if chi.is_exact and tau.is_exact:
        angles = tuple((a + b) % 1 for a, b in zip(chi.angles, tau.angles))
        return UnitaryCharacter(chi.semigroup, angles=angles)
    values = tuple(a * b for a, b in zip(chi.gen_values, tau.gen_values))
    return UnitaryCharacter(chi.semigroup, gen_values=values)


def char_conj(chi):
    if chi.is_exact:
        return UnitaryCharacter(chi.semigroup,
                                angles=tuple((-a) % 1 for a in chi.angles))
    return UnitaryCharacter(chi.semigroup,
                            gen_values=tuple(z.conjugate() for z in chi.gen_values))


def char_eval(chi, s):
    return chi(s)


def char_distance(chi, tau):
    """Canonical metric: max angular distance over the generating data."""
    if chi.is_exact and tau.is_exact:
        worst = 0.0
        for a, b in zip(chi.angles, tau.angles):
            d = float((a - b) % 1)
            worst = max(worst, min(d, 1.0 - d) * 2 * math.pi)
        return worst
    return max(abs(cmath.phase(a / b)) for a, b in zip(chi.gen_values, tau.gen_values))


def enumerate_unitary_dual(monoid):
    """Every unitary character of a finite commutative monoid, exactly.

    Characters factor through s -> s + e (e the minimal idempotent): any
    unimodular idempotent value must be 1, so restriction to the kernel
    group K is a bijection onto the dual of K. The dual of K is built
    cyclic extension by cyclic extension: adjoin a generator g of maximal
    order, and extend each character by the d-th roots of its value on
    d*g, where d is the index of the step. The result has exactly |K|
    characters.
    """
    group = kernel_group(monoid)
    e = group.identity
    carrier = list(group.carrier)

    subgroup = [e]
    in_subgroup = {e}
    chars = [{e: Fraction(0)}]  # partial characters: element -> angle

    while len(subgroup) < len(carrier):
        outside = [g for g in carrier if g not in in_subgroup]
        g = max(outside, key=lambda x: element_order(monoid, group, x))
        # d = index of the extension: smallest j >= 1 with j*g in the subgroup
        d = 1
        power = g
        while power not in in_subgroup:
            power = monoid.add(power, g)
            d += 1
        anchor = power  # = d*g, already has an angle in every partial character

        new_chars = []
        for partial in chars:
            base = partial[anchor]
            for t in range(d):
                root = Fraction(base + t, d) % 1
                extended = dict(partial)
                jg = None
                for j in range(1, d):
                    jg = g if jg is None else monoid.add(jg, g)
                    for h in subgroup:
                        extended[monoid.add(h, jg)] = (partial[h] + j * root) % 1
                new_chars.append(extended)
        chars = new_chars

        new_elements = []
        jg = None
        for j in range(1, d):
            jg = g if jg is None else monoid.add(jg, g)
            new_elements.extend(monoid.add(h, jg) for h in subgroup)
        subgroup.extend(new_elements)
        in_subgroup.update(new_elements)

    result = []
    for table in chars:
        angles = tuple(table[monoid.add(s, e)] for s in monoid.elements())
        result.append(UnitaryCharacter(monoid, angles=angles))
    result.sort(key=lambda chi: chi.angles)

    if len({chi.angles for chi in result}) != len(carrier):
        raise AssertionError("dual enumeration lost or duplicated characters")
    return result


def nearest_character(candidates, values, tol):
    """Match a tuple of complex values against exact characters.

    Returns the unique candidate whose value tuple is within tol of
    `values` in max norm, or None.
    """
    best, best_dist = None, float("inf")
    for chi in candidates:
        dist = max(abs(a - b) for a, b in zip(chi.values(), values))
        if dist < best_dist:
            best, best_dist = chi, dist
    if best is not None and best_dist <= tol:
        return best
    return None
