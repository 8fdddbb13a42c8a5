"""Euler numbers and b2 of the glued variety X0 and of its smoothing X.

e(component) = e(ambient) + sum of e(center), because blowing up a curve
replaces it by a P1-bundle; a curve C on a K3 has e(C) = 2 - 2g = -C^2.
Mayer-Vietoris along the double locus gives e(X0) = e(X1) + e(X2) - 24,
and under the Clemens contraction X -> X0 the double locus is replaced by
an S^1-bundle over the K3, so e(X) = e(X0) - 24 and b2(X) = b2(X0) - 1.

b2(X0) = rank Pic X0 is the rank of the kernel of
(L1, L2) -> r1(L1) - twist(r2(L2)) from Pic X1 + Pic X2 to Pic S.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .lattice import Matrix, hstack, kernel_rank, mat_mul, rank
from .snc import ComponentDescriptor, GluingDescriptor, restriction_matrix

EULER_K3 = 24


def euler_of_component(c: ComponentDescriptor) -> int:
    return c.ambient.euler_number + sum(-center.square for center in c.centers)


def difference_matrix(g: GluingDescriptor) -> Matrix:
    """Matrix of (L1, L2) -> r1(L1) - twist(r2(L2)); columns are Pic X1 then Pic X2."""
    r1 = restriction_matrix(g.x1)
    r2 = mat_mul(g.twist.matrix, restriction_matrix(g.x2))
    return hstack(r1, tuple(tuple(-x for x in row) for row in r2))


@dataclass(frozen=True)
class PicardRank:
    rank: int
    surjective: bool  # difference map onto Pic S over Q
    image_rank: int


def picard_rank_of_snc(g: GluingDescriptor) -> PicardRank:
    d = difference_matrix(g)
    ncols = g.x1.picard_rank + g.x2.picard_rank
    img = rank(d)
    return PicardRank(kernel_rank(d, ncols), img == g.s_lattice.rank, img)


def b2_of_snc(g: GluingDescriptor) -> int:
    return picard_rank_of_snc(g).rank


def b2_of_smoothing(g: GluingDescriptor) -> int:
    return b2_of_snc(g) - 1


@dataclass(frozen=True)
class InvariantReport:
    euler_x1: int
    euler_x2: int
    euler_x0: int
    euler_x: int
    b2_x0: int
    b2_x: int
    surjective: bool = True
    breakdown: tuple[tuple[str, int], ...] = ()
    warnings: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.euler_x0 != self.euler_x1 + self.euler_x2 - EULER_K3:
            raise ValueError("inconsistent e(X0)")
        if self.euler_x != self.euler_x0 - EULER_K3:
            raise ValueError("inconsistent e(X)")
        if self.b2_x != self.b2_x0 - 1:
            raise ValueError("inconsistent b2(X)")

    def as_dict(self) -> dict:
        return {
            "b2_x0": self.b2_x0,
            "b2_x": self.b2_x,
            "e_x1": self.euler_x1,
            "e_x2": self.euler_x2,
            "e_x0": self.euler_x0,
            "e_x": self.euler_x,
            "b2_exact": self.surjective,
            "breakdown": [[k, v] for k, v in self.breakdown],
            "warnings": list(self.warnings),
        }


def _component_breakdown(tag: str, c: ComponentDescriptor) -> list[tuple[str, int]]:
    rows = [(f"e({tag} ambient {c.ambient.kind})", c.ambient.euler_number)]
    total_centers = sum(-center.square for center in c.centers)
    if c.centers:
        rows.append((f"sum e(centers of {tag}) [{len(c.centers)} curves]", total_centers))
    return rows


def euler_of_smoothing(g: GluingDescriptor) -> tuple[int, int, int, int, list[tuple[str, int]]]:
    """(e(X1), e(X2), e(X0), e(X), breakdown)."""
    e1 = euler_of_component(g.x1)
    e2 = euler_of_component(g.x2)
    e0 = e1 + e2 - EULER_K3
    ex = e0 - EULER_K3
    breakdown = _component_breakdown("X1", g.x1) + _component_breakdown("X2", g.x2) + [
        ("-e(K3) double locus in X0", -EULER_K3),
        ("-e(K3) S^1-bundle correction in X", -EULER_K3),
    ]
    return e1, e2, e0, ex, breakdown


def invariant_report(g: GluingDescriptor) -> InvariantReport:
    e1, e2, e0, ex, breakdown = euler_of_smoothing(g)
    pic = picard_rank_of_snc(g)
    warnings = ()
    if not pic.surjective:
        warnings = (
            f"difference map has rank {pic.image_rank} < rank Pic S = {g.s_lattice.rank}; "
            "b2 is reported as the rank of Pic X0 (lower bound for b2(X0))",)
    breakdown += [("rank Pic X1 + rank Pic X2", g.x1.picard_rank + g.x2.picard_rank),
                  ("-rank of difference map", -pic.image_rank),
                  ("-1 Clemens S^1 class", -1)]
    return InvariantReport(e1, e2, e0, ex, pic.rank, pic.rank - 1, pic.surjective,
                           tuple(breakdown), warnings)
