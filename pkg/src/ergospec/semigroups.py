"""Commutative monoids: Cayley tables, the free monoid N^k, and kernel groups.

Finite monoids are given by explicit row-major Cayley tables with a named
neutral element; N^k elements are exponent tuples. Both carriers share the
divisibility preorder s <= t iff s + r = t for some r.
"""

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_CONFIG
from .errors import (
    BadNeutral,
    ExponentOverflow,
    InternalInconsistency,
    NotAssociative,
    NotCommutative,
)

_INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class FiniteCommutativeMonoid:
    """A validated commutative monoid on {0, ..., size-1}."""

    size: int
    table: tuple  # tuple of tuples, table[i][j] = i + j
    neutral: int

    def add(self, s, t):
        return self.table[s][t]

    def elements(self):
        return range(self.size)

    @property
    def is_finite(self):
        return True

    def to_json(self):
        return {
            "type": "cayley",
            "size": self.size,
            "neutral": self.neutral,
            "table": [list(row) for row in self.table],
        }


@dataclass(frozen=True)
class FreeCommutativeMonoid:
    """The free commutative monoid N^rank with componentwise addition."""

    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be at least 1")

    def add(self, s, t):
        return add_exponents(s, t)

    @property
    def neutral(self):
        return (0,) * self.rank

    @property
    def is_finite(self):
        return False

    def to_json(self):
        return {"type": "free_commutative", "rank": self.rank}


@dataclass(frozen=True)
class KernelGroup:
    """The minimal ideal of a finite commutative monoid, which is a group."""

    carrier: tuple  # sorted element indices
    identity: int
    inverse: dict = field(compare=False)


def validate_monoid(table, neutral):
    """Validate a Cayley table and return the monoid.

    Raises NotCommutative / NotAssociative / BadNeutral with the first
    witness found (scanning in row-major order).
    """
    arr = np.asarray(table, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("table must be square")
    m = arr.shape[0]
    if m > DEFAULT_CONFIG.max_monoid_size:
        raise ValueError(f"monoid size {m} exceeds supported maximum "
                         f"{DEFAULT_CONFIG.max_monoid_size}")
    if arr.min() < 0 or arr.max() >= m:
        bad = np.argwhere((arr < 0) | (arr >= m))[0]
        raise ValueError(f"table entry at {tuple(bad)} out of range [0, {m})")
    if not (0 <= neutral < m):
        raise ValueError("neutral index out of range")

    diff = arr != arr.T
    if diff.any():
        i, j = np.argwhere(diff)[0]
        raise NotCommutative(int(i), int(j))

    bad = arr[neutral] != np.arange(m)
    if bad.any():
        raise BadNeutral(int(np.argwhere(bad)[0][0]))

    # (i+j)+k vs i+(j+k), both shaped (m, m, m)
    left = arr[arr]
    right = arr[:, arr]
    diff = left != right
    if diff.any():
        i, j, k = np.argwhere(diff)[0]
        raise NotAssociative(int(i), int(j), int(k))

    rows = tuple(tuple(int(x) for x in row) for row in arr)
    return FiniteCommutativeMonoid(size=m, table=rows, neutral=int(neutral))


def add_exponents(s, t):
    """Componentwise sum of two exponent tuples; overflow is an error."""
    if len(s) != len(t):
        raise ValueError("exponent tuples of different rank")
    out = []
    for a, b in zip(s, t):
        c = a + b
        if c > _INT64_MAX:
            raise ExponentOverflow(f"exponent sum {a} + {b} exceeds 64 bits")
        out.append(c)
    return tuple(out)


def leq(s, t, semigroup):
    """Divisibility preorder: true iff s + r = t for some r."""
    if isinstance(semigroup, FreeCommutativeMonoid):
        return all(a <= b for a, b in zip(s, t))
    row = semigroup.table[s]
    return any(row[r] == t for r in range(semigroup.size))


def idempotents(monoid):
    """All x with x + x = x, ascending."""
    return [x for x in monoid.elements() if monoid.add(x, x) == x]


def kernel_group(monoid):
    """Compute the kernel K = S + e where e is the minimal idempotent.

    e is the sum of all idempotents; in a finite commutative monoid this is
    the unique minimal idempotent and K is a group with identity e.
    """
    idem = idempotents(monoid)
    e = idem[0]
    for x in idem[1:]:
        e = monoid.add(e, x)
    carrier = sorted({monoid.add(s, e) for s in monoid.elements()})
    cset = set(carrier)

    if monoid.add(e, e) != e or e not in cset:
        raise InternalInconsistency("kernel identity is not idempotent")
    inverse = {}
    for k in carrier:
        if monoid.add(e, k) != k:
            raise InternalInconsistency(f"identity fails on kernel element {k}")
        inv = [x for x in carrier if monoid.add(k, x) == e]
        if len(inv) != 1:
            raise InternalInconsistency(f"kernel element {k} has {len(inv)} inverses")
        inverse[k] = inv[0]
    for a in carrier:
        for b in carrier:
            if monoid.add(a, b) not in cset:
                raise InternalInconsistency("kernel not closed under addition")

    return KernelGroup(carrier=tuple(carrier), identity=e, inverse=inverse)


def element_order(monoid, group, g):
    """Order of g in the kernel group (smallest d >= 1 with d*g = identity)."""
    x = g
    d = 1
    while x != group.identity:
        x = monoid.add(x, g)
        d += 1
        if d > monoid.size:
            raise InternalInconsistency("order computation did not terminate")
    return d
