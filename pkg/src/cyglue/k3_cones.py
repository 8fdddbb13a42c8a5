"""Ampleness and freeness certificates on the two K3 models.

A certificate is a list of exact checks; each check stores the integer it
evaluated and whether the required inequality held, so a stored certificate
can be re-derived and compared verbatim (:func:`recheck`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd, isqrt

from .lattice import DivisorClass, IncompatibleClasses, Lattice
from .oguiso import fiber_class, oguiso_lattice, polarization, section_class
from .wehler import wehler_lattice


@dataclass(frozen=True)
class Check:
    description: str
    value: int
    satisfied: bool

    @classmethod
    def positive(cls, description: str, value: int) -> "Check":
        return cls(description, value, value > 0)


@dataclass(frozen=True)
class AmpleCertificate:
    cls: DivisorClass
    method: str  # wehler_positive_cone | oguiso_inequalities
    checks: tuple[Check, ...]
    ample: bool
    params: dict = field(default_factory=dict, compare=False)
    notes: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "kind": "ample",
            "class": list(self.cls.coords),
            "lattice": self.cls.lattice.name,
            "method": self.method,
            "ample": self.ample,
            "checks": [{"description": c.description, "value": c.value, "satisfied": c.satisfied}
                       for c in self.checks],
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------------------
# (-2)-classes


@dataclass(frozen=True)
class NoMinusTwoCertificate:
    lattice_name: str
    modulus: int          # every self-intersection lies in modulus * Z
    excludes_minus_two: bool
    bound: int
    found: tuple[tuple[int, ...], ...]  # classes of square -2 met by the enumeration

    def as_dict(self) -> dict:
        return {
            "kind": "no_minus_two",
            "lattice": self.lattice_name,
            "modulus": self.modulus,
            "excludes_minus_two": self.excludes_minus_two,
            "bound": self.bound,
            "found": [list(v) for v in self.found],
        }


def square_modulus(lattice: Lattice) -> int:
    """gcd of all values D^2: gcd of the diagonal and twice the off-diagonal Gram entries."""
    n = lattice.rank
    g = 0
    for i in range(n):
        g = gcd(g, lattice.gram[i][i])
        for j in range(i + 1, n):
            g = gcd(g, 2 * lattice.gram[i][j])
    return g


def no_minus_two_certificate(lattice: Lattice, bound: int = 10) -> NoMinusTwoCertificate:
    g = square_modulus(lattice)
    excludes = g != 0 and (-2) % g != 0
    found = tuple(
        v for v in product(range(-bound, bound + 1), repeat=lattice.rank)
        if lattice.form(v, v) == -2
    )
    return NoMinusTwoCertificate(lattice.name, g, excludes, bound, found)


@lru_cache(maxsize=None)
def wehler_no_minus_two_certificate(bound: int = 10) -> NoMinusTwoCertificate:
    return no_minus_two_certificate(wehler_lattice(), bound)


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def oguiso_minus_two_classes(z_bound: int) -> list[DivisorClass]:
    """All d = xf + ye + zv with d^2 = -2, f.d = y >= 0 and |z| <= z_bound.

    d^2 = 2xy - 20z^2, so the condition is xy = 10z^2 - 1.  For z = 0 this
    forces (x, y) = (-1, 1); otherwise 10z^2 - 1 > 0 and y >= 0 make both
    factors positive, so (x, y) runs over the divisor pairs.
    """
    if z_bound < 0:
        raise ValueError("z_bound must be >= 0")
    lat = oguiso_lattice()
    out = []
    for z in range(-z_bound, z_bound + 1):
        n = 10 * z * z - 1
        if n < 0:
            out.append(lat(-1, 1, z))
            continue
        for y in _divisors(n):
            out.append(lat(n // y, y, z))
    return sorted(out, key=lambda d: (d.coords[2], d.coords[0], d.coords[1]))


# ---------------------------------------------------------------------------
# ampleness


def wehler_is_ample(d: DivisorClass) -> AmpleCertificate:
    """Ample iff D^2 > 0 and D.H > 0 with H = e1 + e2 + e3.

    This is the interior of the positive cone, which equals the ample cone
    because the lattice has no (-2)-classes at all.
    """
    lat = wehler_lattice()
    if d.lattice != lat:
        raise IncompatibleClasses(f"class of {d.lattice.name} passed to the Wehler ampleness test")
    checks = (
        Check.positive("D^2 > 0", d.square),
        Check.positive("D.H > 0", d.dot(lat(1, 1, 1))),
    )
    return AmpleCertificate(
        d, "wehler_positive_cone", checks, all(c.satisfied for c in checks),
        notes=("no class of square -2: all squares lie in 4Z",))


def oguiso_ample_certificate(a: int, k: int, z_bound: int = 50) -> AmpleCertificate:
    """Certificate that l' = l - kf is ample on Oguiso's K3.

    Two independent halves must both pass: the inequalities
    (A) 30a^2 + 20a + 2 - k > 0, (C) 45a^2 + 4 - 3k > 0,
    (D) 4(90a^2 - 15a + 4) - 27k > 0, which bound l'.d from below for every
    (-2)-class, and a direct evaluation of l'.d > 0 over all (-2)-classes
    with |z| <= z_bound.
    """
    if a < 1 or k < 1:
        raise ValueError("a and k must be positive")
    if z_bound < 1:
        raise ValueError("z_bound must be >= 1")
    lprime = polarization(a) - k * fiber_class()
    cond_a = 30 * a * a + 20 * a + 2 - k
    cond_c = 45 * a * a + 4 - 3 * k
    cond_d = 4 * (90 * a * a - 15 * a + 4) - 27 * k
    sq = lprime.square
    worst = None
    violations = 0
    for d in oguiso_minus_two_classes(z_bound):
        val = lprime.dot(d)
        if worst is None or val < worst:
            worst = val
        if val <= 0:
            violations += 1
    checks = (
        Check.positive("(A) 30a^2+20a+2-k > 0", cond_a),
        Check.positive("(C) 45a^2+4-3k > 0", cond_c),
        Check.positive("(D) 4(90a^2-15a+4)-27k > 0", cond_d),
        Check("l'^2 = 4(45a^2+4-3k)", sq, sq == 4 * cond_c),
        Check.positive(f"min l'.d over (-2)-classes with |z| <= {z_bound}", worst),
        Check(f"violations among (-2)-classes with |z| <= {z_bound}", violations, violations == 0),
    )
    return AmpleCertificate(
        lprime, "oguiso_inequalities", checks, all(c.satisfied for c in checks),
        params={"a": a, "k": k, "z_bound": z_bound})


def recheck(cert: AmpleCertificate) -> bool:
    """Re-derive ``cert`` from scratch and compare every stored value."""
    if cert.method == "wehler_positive_cone":
        fresh = wehler_is_ample(cert.cls)
    elif cert.method == "oguiso_inequalities":
        fresh = oguiso_ample_certificate(**cert.params)
    else:
        raise ValueError(f"unknown method {cert.method}")
    return fresh == cert


def section_identities(c: int) -> tuple[Check, Check]:
    """Gamma_c^2 = -2 and Gamma_c.f = 1; uniqueness of the section is not checked."""
    g = section_class(c)
    return (Check("Gamma_c^2 = -2", g.square, g.square == -2),
            Check("Gamma_c.f = 1", g.dot(fiber_class()), g.dot(fiber_class()) == 1))


# ---------------------------------------------------------------------------
# freeness


@dataclass(frozen=True)
class FreeDecomposition:
    """D = multiple * ample + fiber_multiple * fiber."""

    multiple: int
    ample: AmpleCertificate
    fiber_multiple: int
    fiber: DivisorClass


@dataclass(frozen=True)
class FreeCertificate:
    cls: DivisorClass
    rule: str | None  # "W", "O" or None when undetermined
    free: bool | None
    checks: tuple[Check, ...] = ()
    sub_certificates: tuple = ()
    reason: str = ""

    def as_dict(self) -> dict:
        return {
            "kind": "free",
            "class": list(self.cls.coords),
            "lattice": self.cls.lattice.name,
            "rule": self.rule,
            "free": self.free,
            "status": "undetermined" if self.free is None else ("free" if self.free else "not certified"),
            "checks": [{"description": c.description, "value": c.value, "satisfied": c.satisfied}
                       for c in self.checks],
            "sub_certificates": [s.as_dict() for s in self.sub_certificates],
            "reason": self.reason,
        }


def free_system_certificate(d: DivisorClass, decomposition: FreeDecomposition | None = None) -> FreeCertificate:
    """Certify that |D| is base-point free.

    Rule W: the lattice has no (-2)-classes and D is ample (an ample class
    on a K3 without smooth rational curves is free).  Rule O: D = mA + nF
    with m >= 2, A certified ample and F a free elliptic fibre class
    (|mA| is free for m >= 2, and adding a free pencil keeps it free).
    Failing both, the answer is undetermined; that says nothing about |D|.
    """
    if decomposition is not None:
        dec = decomposition
        lat = d.lattice
        if dec.ample.cls.lattice != lat or dec.fiber.lattice != lat:
            raise IncompatibleClasses("decomposition lives in a different lattice")
        recombined = dec.multiple * dec.ample.cls + dec.fiber_multiple * dec.fiber
        checks = (
            Check("m >= 2", dec.multiple, dec.multiple >= 2),
            Check("A certified ample", int(dec.ample.ample), dec.ample.ample),
            Check("n >= 0", dec.fiber_multiple, dec.fiber_multiple >= 0),
            Check("F is a registered elliptic fibre class", int(dec.fiber.coords in lat.fiber_classes),
                  dec.fiber.coords in lat.fiber_classes),
            Check("F^2 = 0", dec.fiber.square, dec.fiber.square == 0),
            Check("D = mA + nF", int(recombined == d), recombined == d),
        )
        if all(c.satisfied for c in checks):
            return FreeCertificate(d, "O", True, checks, (dec.ample,))
        return FreeCertificate(d, None, None, checks, (dec.ample,),
                               reason="decomposition does not satisfy rule O")

    if d.lattice == wehler_lattice():
        no_m2 = wehler_no_minus_two_certificate()
        amp = wehler_is_ample(d)
        if no_m2.excludes_minus_two and amp.ample:
            return FreeCertificate(d, "W", True, amp.checks, (no_m2, amp))
        return FreeCertificate(d, None, None, amp.checks, (no_m2, amp),
                               reason="class is not ample; rule W does not apply")
    return FreeCertificate(d, None, None, reason="no decomposition supplied and no (-2)-free certificate")


def oguiso_center_free_certificate(a: int, z_bound: int = 50) -> FreeCertificate:
    """|4l - af| = |4(l - af) + 3a f| via rule O."""
    amp = oguiso_ample_certificate(a, a, z_bound)
    center = 4 * polarization(a) - a * fiber_class()
    dec = FreeDecomposition(4, amp, 3 * a, fiber_class())
    return free_system_certificate(center, dec)
