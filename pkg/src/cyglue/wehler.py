"""Wehler (2,2,2) K3 surfaces: covering involutions and their composite.

The Picard lattice of a very general (2,2,2) hypersurface in P1xP1xP1 is
spanned by the three elliptic fibre classes e1, e2, e3 with ei.ei = 0 and
ei.ej = 2.  The involution of the double cover S -> Pi x Pj fixes ei, ej and
sends ek to 2ei + 2ej - ek.

The family involution of the special K3 (the one with a flop in the total
space) acts on the special fibre as the identity on e1, e2, e3, while on the
very general fibre it acts as i12.  Only these two pullback matrices are
modelled; the function-field description u -> -u - f3/f2 of the involution
is not.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .lattice import (
    DivisorClass,
    Isometry,
    Lattice,
    compose,
    identity,
    identity_matrix,
)

WEHLER_GRAM = ((0, 2, 2), (2, 0, 2), (2, 2, 0))


@lru_cache(maxsize=None)
def wehler_lattice() -> Lattice:
    return Lattice("wehler", WEHLER_GRAM, ("e1", "e2", "e3"),
                   fiber_classes=((1, 0, 0), (0, 1, 0), (0, 0, 1)))


@dataclass(frozen=True)
class WehlerModel:
    lattice: Lattice

    @property
    def fiber_classes(self) -> tuple[DivisorClass, DivisorClass, DivisorClass]:
        e1, e2, e3 = self.lattice.basis()
        return e1, e2, e3

    @property
    def reference_ample(self) -> DivisorClass:
        return self.lattice(1, 1, 1)


def wehler_model() -> WehlerModel:
    return WehlerModel(wehler_lattice())


def involution_pullback(i: int, j: int) -> Isometry:
    """Pullback of the covering involution of S -> Pi x Pj (1-based, i < j)."""
    if not (1 <= i < j <= 3):
        raise ValueError(f"need 1 <= i < j <= 3, got ({i}, {j})")
    (k,) = {1, 2, 3} - {i, j}
    cols = [list(col) for col in identity_matrix(3)]
    image = [0, 0, 0]
    image[i - 1] = image[j - 1] = 2
    image[k - 1] = -1
    cols[k - 1] = image
    matrix = tuple(tuple(cols[c][r] for c in range(3)) for r in range(3))
    return Isometry(wehler_lattice(), matrix, name=f"iota{i}{j}")


def iota() -> Isometry:
    """Pullback of iota = iota12 o iota13."""
    m = compose(involution_pullback(1, 2), involution_pullback(1, 3))
    return Isometry(m.lattice, m.matrix, name="iota")


def power_closed_form(a: int) -> Isometry:
    """``(iota^a)^*`` from the closed form; valid for every integer ``a``."""
    matrix = (
        (1, 4 * a * a - 2 * a, 4 * a * a + 2 * a),
        (0, 1 - 2 * a, -2 * a),
        (0, 2 * a, 1 + 2 * a),
    )
    return Isometry(wehler_lattice(), matrix, name=f"iota^{a}")


@dataclass(frozen=True)
class Growth:
    """Outcome of :func:`order_and_growth`.

    ``kind`` is ``"finite"`` (``order`` set), ``"polynomial"`` (``degree``
    set) or ``"exponential"``.
    """

    kind: str
    order: int | None = None
    degree: int | None = None

    @property
    def infinite(self) -> bool:
        return self.kind != "finite"


def _finite_difference_degree(seq: list[int]) -> int | None:
    """Smallest d whose (d+1)-st differences vanish, if visible in ``seq``."""
    diffs = list(seq)
    for d in range(len(seq) - 1):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        if not any(diffs):
            return d
    return None


def order_and_growth(m: Isometry, max_test: int = 12) -> Growth:
    """Finite order up to ``max_test``, otherwise polynomial degree of entry growth.

    Eigenvalues cannot separate a parabolic isometry (all eigenvalues 1)
    from a finite-order one, so the entries of ``m^k`` for k = 0..max_test
    are fitted by exact finite differences instead.  A degree is reported
    only when the vanishing difference leaves at least two confirming
    samples; otherwise the growth is called exponential.
    """
    if max_test < 1:
        raise ValueError("max_test must be >= 1")
    powers = [identity(m.lattice)]
    for n in range(1, max_test + 1):
        powers.append(compose(powers[-1], m))
        if powers[-1].is_identity():
            return Growth("finite", order=n)
    n = m.lattice.rank
    degree = 0
    for r in range(n):
        for c in range(n):
            seq = [p.matrix[r][c] for p in powers]
            d = _finite_difference_degree(seq)
            if d is None or d + 2 >= len(seq):
                return Growth("exponential")
            degree = max(degree, d)
    return Growth("polynomial", degree=degree)


def family_pullback_discrepancy() -> tuple[Isometry, Isometry, DivisorClass]:
    """Special-fibre pullback, generic-fibre pullback and their difference on e3.

    On the special K3 of the family the involution acts trivially on
    e1, e2, e3, while on the very general member it is iota12.  The class
    ``iota12^*(e3) - e3 = 2e1 + 2e2 - 2e3`` records how the pullbacks
    disagree; it is the lattice trace of the flop along the curves
    E1, ..., E8 where the family involution is not a morphism.
    """
    lat = wehler_lattice()
    special = identity(lat)
    generic = involution_pullback(1, 2)
    e3 = lat(0, 0, 1)
    return special, generic, generic(e3) - special(e3)
