"""Glued normal-crossing varieties X0 = X1 u X2 along a K3 surface S.

Each component is a blow-up of a rational threefold (P1xP1xP1 or P3) along
curves lying on an anticanonical K3 surface S; the strict transform of S
is again anticanonical.  Only the classes of the centers on S are tracked,
and the restriction of the exceptional divisor E_j to S is the center
class itself.

Picard coordinates of a component are ordered ambient classes first, then
E_1, ..., E_r in the order of ``centers``.

The gluing identifies S inside X1 with S inside X2 through an automorphism
phi; ``twist`` is phi^*, taking restrictions from the X2 side to the X1
side.  d-semistability is the lattice equation N1 + phi^* N2 = 0 for the
normal bundle classes N_i of S in X_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .lattice import (
    DivisorClass,
    Isometry,
    Lattice,
    Matrix,
    identity_matrix,
    mat_vec,
    sum_classes,
    transpose,
)


@dataclass(frozen=True)
class AmbientSpace:
    kind: str  # "P1xP1xP1" or "P3"
    picard_rank: int
    euler_number: int
    anticanonical_on_S: DivisorClass
    ambient_restriction: Matrix  # rows: Pic S coords, columns: ambient Picard coords

    def __post_init__(self) -> None:
        expected = {"P1xP1xP1": (3, 8), "P3": (1, 4)}
        if self.kind not in expected:
            raise ValueError(f"unknown ambient kind {self.kind!r}")
        if (self.picard_rank, self.euler_number) != expected[self.kind]:
            raise ValueError(f"{self.kind} has Picard rank/Euler number {expected[self.kind]}")
        rows = len(self.ambient_restriction)
        if rows != self.anticanonical_on_S.lattice.rank or any(
                len(r) != self.picard_rank for r in self.ambient_restriction):
            raise ValueError("ambient restriction has the wrong shape")

    @property
    def lattice(self) -> Lattice:
        return self.anticanonical_on_S.lattice


def product_of_lines(s_lattice: Lattice) -> AmbientSpace:
    """P1xP1xP1 with S a (2,2,2) surface: O(c1,c2,c3) restricts to c1e1+c2e2+c3e3."""
    if s_lattice.rank != 3:
        raise ValueError("P1xP1xP1 needs a rank-3 lattice with basis e1, e2, e3")
    return AmbientSpace("P1xP1xP1", 3, 8, s_lattice(2, 2, 2), identity_matrix(3))


def projective_space(hyperplane: DivisorClass) -> AmbientSpace:
    """P3 with S a quartic: O(1) restricts to ``hyperplane``."""
    return AmbientSpace("P3", 1, 4, 4 * hyperplane,
                        tuple((x,) for x in hyperplane.coords))


@dataclass(frozen=True)
class ComponentDescriptor:
    ambient: AmbientSpace
    centers: tuple[DivisorClass, ...] = ()
    label: str = "X"

    def __post_init__(self) -> None:
        object.__setattr__(self, "centers", tuple(self.centers))
        for c in self.centers:
            if c.lattice != self.ambient.lattice:
                raise ValueError(f"{self.label}: center {c} is not in {self.ambient.lattice.name}")

    @property
    def picard_rank(self) -> int:
        return self.ambient.picard_rank + len(self.centers)

    @property
    def lattice(self) -> Lattice:
        return self.ambient.lattice

    def with_centers(self, centers) -> "ComponentDescriptor":
        return ComponentDescriptor(self.ambient, tuple(centers), self.label)


@dataclass(frozen=True)
class GluingDescriptor:
    x1: ComponentDescriptor
    x2: ComponentDescriptor
    twist: Isometry
    name: str = field(default="X0", compare=False)

    def __post_init__(self) -> None:
        lat = self.twist.lattice
        if self.x1.lattice != lat or self.x2.lattice != lat:
            raise ValueError("components and twist must share the K3 lattice")

    @property
    def s_lattice(self) -> Lattice:
        return self.twist.lattice

    def replace(self, *, x1=None, x2=None, twist=None) -> "GluingDescriptor":
        return GluingDescriptor(x1 or self.x1, x2 or self.x2, twist or self.twist, self.name)


def restriction_matrix(c: ComponentDescriptor) -> Matrix:
    """Pic(component) -> Pic S: ambient block followed by one column per center."""
    cols = list(transpose(c.ambient.ambient_restriction)) + [d.coords for d in c.centers]
    return transpose(cols)


def restrict(c: ComponentDescriptor, coords) -> DivisorClass:
    return c.lattice(mat_vec(restriction_matrix(c), coords))


def normal_bundle_class(c: ComponentDescriptor) -> DivisorClass:
    """N_{S/X} = (-K_ambient)|_S minus the sum of the blown-up centers."""
    return c.ambient.anticanonical_on_S - sum_classes(c.lattice, c.centers)


def d_semistability_check(g: GluingDescriptor) -> tuple[bool, DivisorClass]:
    """(True, 0) iff N1 + twist(N2) = 0; otherwise (False, obstruction class)."""
    obstruction = normal_bundle_class(g.x1) + g.twist(normal_bundle_class(g.x2))
    return obstruction.is_zero(), obstruction


def solve_center_class(g: GluingDescriptor, side: int = 1, index: int = -1) -> DivisorClass:
    """The unique class at ``centers[index]`` of component ``side`` making ``g`` d-semistable.

    Whatever currently sits in that slot is ignored.
    """
    if side not in (1, 2):
        raise ValueError("side must be 1 or 2")
    comp = g.x1 if side == 1 else g.x2
    if not comp.centers:
        raise ValueError(f"component {side} has no center slot to solve for")
    idx = index % len(comp.centers)
    others = sum_classes(comp.lattice, (c for i, c in enumerate(comp.centers) if i != idx))
    if side == 1:
        return comp.ambient.anticanonical_on_S - others + g.twist(normal_bundle_class(g.x2))
    return comp.ambient.anticanonical_on_S - others + g.twist.inverse()(normal_bundle_class(g.x1))


def with_solved_center(g: GluingDescriptor, side: int = 1, index: int = -1) -> GluingDescriptor:
    comp = g.x1 if side == 1 else g.x2
    centers = list(comp.centers)
    centers[index] = solve_center_class(g, side, index)
    new = comp.with_centers(centers)
    return g.replace(x1=new) if side == 1 else g.replace(x2=new)


@dataclass(frozen=True)
class HypothesisReport:
    d_semistable: bool
    obstruction: DivisorClass
    omega_trivial: bool
    cohomology_vanishing: bool
    assumptions: tuple[str, ...]

    @property
    def all_satisfied(self) -> bool:
        return self.d_semistable and self.omega_trivial and self.cohomology_vanishing

    def as_dict(self) -> dict:
        return {
            "d_semistable": {"value": self.d_semistable, "status": "verified",
                             "obstruction": list(self.obstruction.coords)},
            "omega_trivial": {"value": self.omega_trivial, "status": "structural"},
            "cohomology_vanishing": {"value": self.cohomology_vanishing, "status": "structural"},
            "assumptions": list(self.assumptions),
        }


RATIONAL_AMBIENTS = frozenset({"P1xP1xP1", "P3"})


def hypothesis_report(g: GluingDescriptor) -> HypothesisReport:
    """Smoothing hypotheses: (a) d-semistability, computed; (b), (c) structural.

    (b) omega_{X0} is trivial when each double locus is an anticanonical
    member of its component; that holds by construction for an
    anticanonical K3 in a rational threefold blown up along curves on it.
    (c) H^1(X0, O) = 0 and H^2 of the normalisation vanish when both
    components are rational.  Neither is computed here.
    """
    ok, obstruction = d_semistability_check(g)
    rational = all(c.ambient.kind in RATIONAL_AMBIENTS for c in (g.x1, g.x2))
    assumptions = (
        "blow-up centers are disjoint smooth curves on S (not checked)",
        "S is an anticanonical member of each ambient space (by construction)",
        "omega triviality and cohomology vanishing are structural, not computed",
    )
    return HypothesisReport(ok, obstruction, rational, rational, assumptions)
