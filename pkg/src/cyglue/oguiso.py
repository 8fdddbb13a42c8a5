"""Oguiso's quartic K3 surface containing two skew lines.

Pic S has the hyperplane section H and the two lines L, M with
H^2 = 4, H.L = H.M = 1, L^2 = M^2 = -2, L.M = 0.  The working basis is

    f = H - L,   e = H - L + M,   v = -6H + 7L - 3M,

in which the form is [[0,1,0],[1,0,0],[0,0,-20]].  |f| is an elliptic
fibration with zero section M and, for every integer c, a section
Gamma_c in |(10c^2 - 1)f + e + cv|; iota^a is translation by Gamma_a.
"""

from __future__ import annotations

from functools import lru_cache

from .lattice import DivisorClass, Isometry, Lattice, Matrix, change_basis, mat_vec

HLM_GRAM = ((4, 1, 1), (1, -2, 0), (1, 0, -2))
# rows: f, e, v in (H, L, M) coordinates
FEV_IN_HLM = ((1, -1, 0), (1, -1, 1), (-6, 7, -3))
OGUISO_GRAM = ((0, 1, 0), (1, 0, 0), (0, 0, -20))


@lru_cache(maxsize=None)
def hlm_lattice() -> Lattice:
    return Lattice("oguiso_hlm", HLM_GRAM, ("H", "L", "M"))


@lru_cache(maxsize=None)
def oguiso_lattice() -> Lattice:
    return Lattice("oguiso", OGUISO_GRAM, ("f", "e", "v"), fiber_classes=((1, 0, 0),))


def basis_change() -> tuple[Lattice, Matrix]:
    """(f, e, v)-lattice computed from the H, L, M data, and the HLM -> fev coordinate map."""
    return change_basis(hlm_lattice(), FEV_IN_HLM, "oguiso", ("f", "e", "v"))


def hyperplane_class() -> DivisorClass:
    """h = O_S(1), obtained by converting H = (1, 0, 0) to (f, e, v) coordinates."""
    _, to_fev = basis_change()
    return oguiso_lattice()(mat_vec(to_fev, (1, 0, 0)))


def fiber_class() -> DivisorClass:
    return oguiso_lattice()(1, 0, 0)


def section_class(c: int) -> DivisorClass:
    """Class of the section Gamma_c = (10c^2 - 1)f + e + cv."""
    return oguiso_lattice()(10 * c * c - 1, 1, c)


def translation_pullback(a: int) -> Isometry:
    """``(iota^a)^*`` for translation by Gamma_a."""
    matrix = ((1, 10 * a * a, 20 * a), (0, 1, 0), (0, a, 1))
    return Isometry(oguiso_lattice(), matrix, name=f"tau^{a}")


def polarization(a: int) -> DivisorClass:
    """l = h + (iota^a)^* h."""
    h = hyperplane_class()
    return h + translation_pullback(a)(h)


def center_class(a: int) -> DivisorClass:
    """The blow-up center 4l - af on S."""
    return 4 * polarization(a) - a * fiber_class()
