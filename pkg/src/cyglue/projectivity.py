"""Line bundles on X0 that are effective on both components.

A line bundle on X0 is a pair (L1, L2) with r1(L1) = twist(r2(L2)) in
Pic S.  If a smoothing of X0 were projective, some such pair would be big
and effective on both sides.  Effectivity is replaced by the necessary
condition that the ambient part of each L_i (its pushforward to P1xP1xP1
or P3) has nonnegative coordinates; bigness is modelled by the S-restriction
having positive square.  So TrivialOnly and FiberRayOnly verdicts soundly
exclude big effective pairs, while BigPairExists proves nothing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .cones import ConeGenerators, extreme_rays
from .invariants import difference_matrix
from .lattice import DivisorClass, Vector, integer_kernel, primitive, rank
from .snc import ComponentDescriptor, GluingDescriptor, restrict

TRIVIAL_ONLY = "TrivialOnly"
FIBER_RAY_ONLY = "FiberRayOnly"
BIG_PAIR_EXISTS = "BigPairExists"
UNDETERMINED = "Undetermined"

KODAIRA_BOUND = {TRIVIAL_ONLY: 0, FIBER_RAY_ONLY: 1, BIG_PAIR_EXISTS: "unbounded", UNDETERMINED: "unbounded"}


@dataclass(frozen=True)
class CompatiblePairLattice:
    gluing: GluingDescriptor
    basis: tuple[tuple[Vector, Vector], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def flat(self) -> list[Vector]:
        return [l1 + l2 for l1, l2 in self.basis]


def _split(g: GluingDescriptor, v: Vector) -> tuple[Vector, Vector]:
    n1 = g.x1.picard_rank
    return tuple(v[:n1]), tuple(v[n1:])


def compatible_pairs(g: GluingDescriptor) -> CompatiblePairLattice:
    ker = integer_kernel(difference_matrix(g), g.x1.picard_rank + g.x2.picard_rank)
    return CompatiblePairLattice(g, tuple(_split(g, v) for v in ker))


def is_compatible(g: GluingDescriptor, l1: Vector, l2: Vector) -> bool:
    return restrict(g.x1, l1) == g.twist(restrict(g.x2, l2))


@dataclass(frozen=True)
class Inequality:
    coeffs: Vector
    description: str

    def holds(self, coords: Vector) -> bool:
        return sum(a * x for a, x in zip(self.coeffs, coords)) >= 0


def effectivity_cone(c: ComponentDescriptor) -> list[Inequality]:
    """Necessary conditions for effectivity: nonnegative ambient pullback coordinates.

    The pushforward of an effective divisor is effective, and effective
    classes on P1xP1xP1 or P3 have nonnegative coordinates.  Exceptional
    coordinates are left free, so the cone is larger than the effective cone.
    """
    n = c.picard_rank
    return [Inequality(tuple(int(i == j) for i in range(n)), f"{c.label}: ambient coordinate {j + 1} >= 0")
            for j in range(c.ambient.picard_rank)]


@dataclass(frozen=True)
class ProjectivityVerdict:
    classification: str
    kodaira_bound: object
    witness: tuple[Vector, Vector] | None = None
    certificate: tuple[str, ...] = ()
    generators: ConeGenerators | None = field(default=None, compare=False)

    def as_dict(self) -> dict:
        return {
            "classification": self.classification,
            "kodaira_bound": self.kodaira_bound,
            "witness": None if self.witness is None else {"L1": list(self.witness[0]),
                                                          "L2": list(self.witness[1])},
            "certificate": list(self.certificate),
        }


def _ambient_mask(g: GluingDescriptor) -> list[bool]:
    return ([True] * g.x1.ambient.picard_rank + [False] * len(g.x1.centers)
            + [True] * g.x2.ambient.picard_rank + [False] * len(g.x2.centers))


def _combine(basis: list[Vector], lam: Vector) -> Vector:
    return tuple(sum(l * b[i] for l, b in zip(lam, basis)) for i in range(len(basis[0])))


def _solve_any(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """One solution of a consistent square system (free variables set to 0)."""
    n = len(a)
    m = [row[:] + [rhs] for row, rhs in zip(a, b)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, n) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(n):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    sol = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        sol[c] = m[i][n]
    return sol


def _balanced(v: Vector, lines: list[Vector], mask: list[bool]) -> Vector:
    """Shift ``v`` along the lineality space to minimise its exceptional part (least squares)."""
    lines = [l for l in lines if any(x for x, amb in zip(l, mask) if not amb)]
    if not lines:
        return primitive(v)
    exc = [i for i, amb in enumerate(mask) if not amb]
    gram = [[Fraction(sum(p[i] * q[i] for i in exc)) for q in lines] for p in lines]
    rhs = [Fraction(-sum(p[i] * v[i] for i in exc)) for p in lines]
    t = _solve_any(gram, rhs)
    shifted = [Fraction(x) + sum(ti * l[i] for ti, l in zip(t, lines)) for i, x in enumerate(v)]
    den = lcm(*(x.denominator for x in shifted))
    return primitive([int(x * den) for x in shifted])


def _positive_witness(vecs: list[Vector], lines: list[Vector], q) -> Vector | None:
    """An exact element of the cone with q > 0, if a cheap search finds one."""
    gens = list(vecs) + list(lines) + [tuple(-x for x in l) for l in lines]
    if not gens:
        return None
    total = tuple(sum(col) for col in zip(*vecs)) if vecs else None
    if total is not None and q(total, total) > 0:
        return total
    diag = [q(g_, g_) for g_ in gens]
    for g_, d in zip(gens, diag):
        if d > 0:
            return g_
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            qii, qjj, qij = diag[i], diag[j], q(gens[i], gens[j])
            if qij <= 0:
                continue
            if qii == 0:
                s, t = -qjj + 1, 1
            elif qjj == 0:
                s, t = 1, -qii + 1
            elif qij * qij > qii * qjj:
                s, t = qij, -qii
            else:
                continue
            cand = tuple(s * x + t * y for x, y in zip(gens[i], gens[j]))
            if q(cand, cand) > 0:
                return cand
    return None


def _merge_duplicates(c: ComponentDescriptor) -> tuple[ComponentDescriptor, list[int]]:
    """One center per distinct class; returns the group sizes in merged order."""
    counts: dict = {}
    for center in c.centers:
        counts[center] = counts.get(center, 0) + 1
    return c.with_centers(counts), list(counts.values())


def _expand(part: Vector, n_amb: int, sizes: list[int]) -> list[Fraction]:
    out = [Fraction(x) for x in part[:n_amb]]
    for s, m in zip(part[n_amb:], sizes):
        out += [Fraction(s, m)] * m
    return out


def classify(g: GluingDescriptor, max_rank: int = 64) -> ProjectivityVerdict:
    """Classify the pairs in the compatible lattice that pass both effectivity tests.

    Identical centers are merged first.  Differences of their exceptional
    coordinates span a lineality space with zero ambient part and zero
    restriction, so the verdict is unchanged; a witness is expanded back by
    spreading each merged coordinate evenly over its group.
    """
    m1, s1 = _merge_duplicates(g.x1)
    m2, s2 = _merge_duplicates(g.x2)
    if len(s1) == len(g.x1.centers) and len(s2) == len(g.x2.centers):
        return _classify(g, max_rank)
    v = _classify(g.replace(x1=m1, x2=m2), max_rank)
    note = (f"identical centers merged: X1 {len(g.x1.centers)} -> {len(s1)}, "
            f"X2 {len(g.x2.centers)} -> {len(s2)}")
    witness = v.witness
    if witness is not None:
        full = (_expand(witness[0], g.x1.ambient.picard_rank, s1)
                + _expand(witness[1], g.x2.ambient.picard_rank, s2))
        den = lcm(*(x.denominator for x in full))
        witness = _split(g, primitive([int(x * den) for x in full]))
    return ProjectivityVerdict(v.classification, v.kodaira_bound, witness,
                               (note,) + v.certificate, v.generators)


def _classify(g: GluingDescriptor, max_rank: int) -> ProjectivityVerdict:
    pairs = compatible_pairs(g)
    basis = pairs.flat()
    k = len(basis)
    trace = [f"compatible-pair lattice has rank {k}"]
    if k == 0:
        trace.append("compatible lattice is zero: only the trivial bundle glues")
        return ProjectivityVerdict(TRIVIAL_ONLY, 0, None, tuple(trace))

    mask = _ambient_mask(g)
    n1 = g.x1.picard_rank
    ineqs = ([(ineq, 0) for ineq in effectivity_cone(g.x1)]
             + [(ineq, n1) for ineq in effectivity_cone(g.x2)])

    def row(coeffs: Vector, offset: int) -> list[int]:
        return [sum(a * b[offset + i] for i, a in enumerate(coeffs)) for b in basis]

    rows = [row(ineq.coeffs, off) for ineq, off in ineqs]
    trace.append(f"{len(rows)} effectivity inequalities on ambient coordinates")

    amb_idx = [i for i, m in enumerate(mask) if m]
    amb_image = [[b[i] for i in amb_idx] for b in basis]
    for w in _left_relations(amb_image, len(amb_idx)):
        terms = " + ".join(f"{c}*amb[{i}]" for i, c in enumerate(w) if c)
        trace.append(f"ambient coordinates satisfy {terms} = 0 on all compatible pairs")

    gens = extreme_rays(rows, k, max_dim=max_rank)
    trace.append(f"necessary-condition cone: {len(gens.lines)} lines, {len(gens.rays)} extreme rays")

    def lift(lam: Vector) -> Vector:
        return _combine(basis, lam)

    lines = [lift(l) for l in gens.lines]
    rays = [lift(r) for r in gens.rays]

    ambient_zero = all(not any(v[i] for i in amb_idx) for v in lines + rays)
    if ambient_zero:
        trace.append("every pair in the cone has zero ambient part on both components")
        exc_rows = [row(tuple(int(i == j) for i in range(len(basis[0]))), 0)
                    for j, m in enumerate(mask) if not m]
        # an effective divisor with zero pushforward is a nonnegative sum of exceptional divisors
        gens = extreme_rays(rows + exc_rows, k, max_dim=max_rank)
        lines = [lift(l) for l in gens.lines]
        rays = [lift(r) for r in gens.rays]
        trace.append("adding exceptional coordinates >= 0 (effective exceptional divisors): "
                     f"{len(lines)} lines, {len(rays)} rays")
        if not lines and not rays:
            trace.append("only the trivial pair survives: L0 = O_X0")
            return ProjectivityVerdict(TRIVIAL_ONLY, 0, None, tuple(trace), gens)

    if not lines and not rays:
        trace.append("cone is the origin: only the trivial pair")
        return ProjectivityVerdict(TRIVIAL_ONLY, 0, None, tuple(trace), gens)

    def s_res(v: Vector) -> DivisorClass:
        return restrict(g.x1, v[:n1])

    def q(u: Vector, v: Vector) -> int:
        return s_res(u).dot(s_res(v))

    allgens = rays + lines
    total = [sum(col) for col in zip(*rays)] if rays else [0] * len(mask)
    kappas = _ambient_kappas(g, total)
    kappa = max(kappas)
    trace.append(f"ambient pushforwards bound the Iitaka dimension on X1, X2 by {kappas[0]}, {kappas[1]}")

    if kappa <= 1:
        witness = _fiber_witness(rays, lines, mask, rows, basis, max_rank)
        if witness is not None:
            trace.append("every pair pushes forward to multiples of a single fibre class: "
                         "no pair is big; Kodaira dimension at most 1")
            return ProjectivityVerdict(FIBER_RAY_ONLY, 1, _split(g, witness), tuple(trace), gens)

    isotropic = all(q(u, v) == 0 for u in allgens for v in allgens)
    if isotropic:
        images = [s_res(v).coords for v in allgens]
        img_rank = rank(images)
        trace.append(f"S-restrictions of all generators are pairwise orthogonal and isotropic "
                     f"(span rank {img_rank})")
        if img_rank <= 1:
            witness = _fiber_witness(rays, lines, mask, rows, basis, max_rank)
            if witness is not None:
                trace.append("every compatible pair restricts to a multiple of one isotropic class: "
                             "no pair is big; Kodaira dimension at most 1")
                return ProjectivityVerdict(FIBER_RAY_ONLY, 1, _split(g, witness), tuple(trace), gens)
        trace.append("isotropic cone without a usable fibration witness")
        return ProjectivityVerdict(UNDETERMINED, "unbounded", None, tuple(trace), gens)

    if min(kappas) < 3:
        trace.append("no pair has a big pushforward on both components, "
                     "but no fibration witness was found")
        return ProjectivityVerdict(UNDETERMINED, "unbounded", None, tuple(trace), gens)

    big = _positive_witness(rays, lines, q)
    if big is not None:
        big = _push_inside(big, total, q)
        trace.append(f"pair with positive ambient parts and S-restriction square {q(big, big)} > 0 "
                     "found: candidate big bundle")
        return ProjectivityVerdict(BIG_PAIR_EXISTS, "unbounded", _split(g, primitive(big)), tuple(trace), gens)
    trace.append("restriction form is not identically zero but no positive element was found")
    return ProjectivityVerdict(UNDETERMINED, "unbounded", None, tuple(trace), gens)


def _ambient_kappas(g: GluingDescriptor, v: Vector) -> tuple[int, int]:
    """Iitaka dimension of the ambient part of ``v`` on each component.

    Sections of L_i inject into sections of its pushforward, and sections of
    L0 inject into those of L1 and L2, so these bound kappa(L0) from above.
    For a cone element with maximal support they bound the whole cone.
    """
    out = []
    offset = 0
    for c in (g.x1, g.x2):
        amb = v[offset:offset + c.ambient.picard_rank]
        positive = sum(1 for x in amb if x > 0)
        out.append(positive if c.ambient.kind == "P1xP1xP1" else 3 * bool(positive))
        offset += c.picard_rank
    return out[0], out[1]


def _push_inside(c: Vector, total: list[int], q) -> Vector:
    """k*c + total for the least k >= 1 with positive square.

    ``total`` has every ambient coordinate positive and ``c`` has them
    nonnegative, so the sum keeps them positive; q(c) > 0 makes k finite.
    """
    k = 1
    while True:
        cand = tuple(k * x + t for x, t in zip(c, total))
        if q(cand, cand) > 0:
            return cand
        k *= 2


def _left_relations(image_rows: list[Vector], width: int) -> list[Vector]:
    """Integer w with sum_i w_i * row[i] = 0 for every row (relations among columns)."""
    if not image_rows:
        return [tuple(int(i == j) for i in range(width)) for j in range(width)]
    return integer_kernel(image_rows, width)


def _fiber_witness(rays: list[Vector], lines: list[Vector], mask: list[bool],
                   rows: list[list[int]], basis: list[Vector], max_rank: int) -> Vector | None:
    """A representative fibration pair: pure pullbacks if the cone has one, else a balanced ray."""
    width = len(basis[0])
    exc_eq = []
    for j, amb in enumerate(mask):
        if not amb:
            r = [b[j] for b in basis]
            exc_eq += [r, [-x for x in r]]
    pure = extreme_rays(rows + exc_eq, len(basis), max_dim=max_rank)
    if pure.rays:
        total = [sum(col) for col in zip(*pure.rays)]
        return primitive(_combine(basis, tuple(total)))
    candidates = []
    for idx, r in enumerate(rays):
        if not any(x for x, amb in zip(r, mask) if amb):
            continue
        b = _balanced(r, lines, mask)
        amb_total = sum(x for x, amb in zip(b, mask) if amb)
        exc_norm = sum(x * x for x, amb in zip(b, mask) if not amb)
        candidates.append((Fraction(exc_norm, amb_total * amb_total), idx, b))
    if not candidates or width == 0:
        return None
    return min(candidates)[2]


def nonprojectivity_report(verdict: ProjectivityVerdict) -> dict:
    if verdict.classification in (TRIVIAL_ONLY, FIBER_RAY_ONLY):
        lines = [
            "no compatible pair passing the effectivity conditions is big",
            "hence X0 carries no big line bundle effective on both components",
            "hence no projective smoothing: X0 and X are not projective",
            "X is then not Kaehler either (H^2(X,O) = 0 would make a Kaehler X projective); cited, not checked",
        ]
        if verdict.classification == TRIVIAL_ONLY:
            lines.insert(0, "strengthening: every line bundle effective on both components is trivial")
        return {"non_projective": True, "certificate": lines}
    return {"non_projective": None, "certificate": ["no obstruction found by this method"]}


@dataclass(frozen=True)
class AlgdimEvidence:
    value: object  # 0, 1 or "inconclusive"
    witness: tuple[Vector, Vector] | None
    label: str = "lattice-level evidence consistent with the algebraic dimension of X"

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "witness": None if self.witness is None else {"L1": list(self.witness[0]),
                                                          "L2": list(self.witness[1])},
            "label": self.label,
        }


def algdim_evidence(verdict: ProjectivityVerdict) -> AlgdimEvidence:
    if verdict.classification == TRIVIAL_ONLY:
        return AlgdimEvidence(0, None)
    if verdict.classification == FIBER_RAY_ONLY:
        return AlgdimEvidence(1, verdict.witness)
    return AlgdimEvidence("inconclusive", None)
