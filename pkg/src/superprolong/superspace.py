"""Graded supervector spaces, the Koszul sign oracle, Hom and super-Lambda^k.

Sign convention (used verbatim everywhere else in the package): inside a
super exterior power, exchanging two adjacent symbols contributes -1 unless
both symbols are odd, in which case it contributes +1.  Even symbols never
repeat in a monomial; odd symbols may.  All cochain evaluation routes
through :func:`koszul_sign` / :func:`sort_with_sign`; no other module does
inline sign arithmetic on permutations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

EVEN = 0
ODD = 1


def parity_from_str(s):
    if s in (0, "even", "0"):
        return EVEN
    if s in (1, "odd", "1"):
        return ODD
    raise ValueError("bad parity %r" % (s,))


def parity_to_str(p):
    return "even" if p == EVEN else "odd"


@dataclass(frozen=True)
class BasisVector:
    name: str
    degree: int
    parity: int  # EVEN or ODD


class GradedSuperSpace:
    """An ordered basis of Z-graded, Z2-parity-tagged vectors."""

    def __init__(self, basis):
        self.basis = tuple(basis)
        names = [b.name for b in self.basis]
        if len(set(names)) != len(names):
            raise ValueError("duplicate basis names")
        self._index = {b.name: i for i, b in enumerate(self.basis)}

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __getitem__(self, i):
        return self.basis[i]

    def index(self, name):
        return self._index[name]

    def degrees(self):
        return sorted({b.degree for b in self.basis})

    def superdim(self, degree=None):
        """(even, odd) dimension, optionally of a single degree slice."""
        p = q = 0
        for b in self.basis:
            if degree is not None and b.degree != degree:
                continue
            if b.parity == EVEN:
                p += 1
            else:
                q += 1
        return (p, q)

    def indices_of_degree(self, degree):
        return [i for i, b in enumerate(self.basis) if b.degree == degree]

    def __repr__(self):
        dims = ", ".join(
            "%d: (%d|%d)" % (d, *self.superdim(d)) for d in self.degrees()
        )
        return "GradedSuperSpace{%s}" % dims


# ---------------------------------------------------------------------------
# sign oracle
# ---------------------------------------------------------------------------

def koszul_sign(parities, perm):
    """Sign of rearranging parity-tagged symbols under the exterior convention.

    perm[i] is the position in the original list of the symbol that ends up
    at slot i.  Each inversion contributes -1, except inversions of two odd
    symbols which contribute +1.
    """
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError("not a permutation: %r" % (perm,))
    sign = 1
    for i in range(n):
        for j in range(i + 1, n):
            if perm[i] > perm[j]:
                if not (parities[perm[i]] == ODD and parities[perm[j]] == ODD):
                    sign = -sign
    return sign


def sort_with_sign(indices, parities):
    """Sort index tuple ascending, returning (sorted_tuple, koszul sign).

    Returns sign 0 when an even-parity index repeats (the monomial dies).
    Insertion sort; inputs here are tiny.
    """
    items = list(indices)
    pars = list(parities)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            if not (pars[j - 1] == ODD and pars[j] == ODD):
                sign = -sign
            items[j - 1], items[j] = items[j], items[j - 1]
            pars[j - 1], pars[j] = pars[j], pars[j - 1]
            j -= 1
    for k in range(1, len(items)):
        if items[k] == items[k - 1] and pars[k] == EVEN:
            return tuple(items), 0
    return tuple(items), sign


def extraction_sign(parities, positions):
    """Sign of pulling the listed slots (in the given order) to the front.

    Equivalent to koszul_sign of the permutation that places the extracted
    slots first and keeps everything else in order.
    """
    return _extraction_sign_cached(tuple(parities), tuple(positions))


@lru_cache(maxsize=None)
def _extraction_sign_cached(parities, positions):
    order = list(positions) + [
        i for i in range(len(parities)) if i not in set(positions)
    ]
    return koszul_sign(parities, order)


# ---------------------------------------------------------------------------
# super exterior powers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExteriorBasisMonomial:
    """Canonical monomial in super-Lambda^k: weakly increasing indices,
    strictly increasing on even-parity indices."""

    indices: tuple
    degree: int
    parity: int


def exterior_power_basis(space, k):
    """All canonical k-monomials on the given space."""
    if k < 0:
        raise ValueError("k must be >= 0")
    n = len(space)
    out = []

    def rec(start, chosen):
        if len(chosen) == k:
            deg = sum(space[i].degree for i in chosen)
            par = sum(space[i].parity for i in chosen) % 2
            out.append(ExteriorBasisMonomial(tuple(chosen), deg, par))
            return
        for i in range(start, n):
            nxt = i if space[i].parity == ODD else i + 1
            chosen.append(i)
            rec(nxt, chosen)
            chosen.pop()

    rec(0, [])
    return out


def exterior_dim(p, q, k):
    """dim Lambda^k of a (p|q)-dimensional space: sum_j C(p,k-j)*C(q+j-1,j)."""
    total = 0
    for j in range(k + 1):
        if k - j > p:
            continue
        multiset = 1 if j == 0 else (0 if q == 0 else comb(q + j - 1, j))
        total += comb(p, k - j) * multiset
    return total


# ---------------------------------------------------------------------------
# Hom components
# ---------------------------------------------------------------------------

def hom_degree_component(src, dst, d):
    """Degree-d component of Hom(src, dst) as a GradedSuperSpace.

    Basis: elementary maps e* (x) f with degree(f) - degree(e) = d, tagged
    with parity(e) + parity(f); all carry Z-degree d.
    """
    basis = []
    for e in src:
        for f in dst:
            if f.degree - e.degree == d:
                basis.append(
                    BasisVector(
                        name="%s*|%s" % (e.name, f.name),
                        degree=d,
                        parity=(e.parity + f.parity) % 2,
                    )
                )
    return GradedSuperSpace(basis)
