"""Exact generators of polyhedral cones {x : A x >= 0}.

Motzkin's double description: constraints are added one at a time; a line
that the new constraint does not vanish on is used to eliminate it from
every other generator, otherwise rays on opposite sides are combined
pairwise (only adjacent pairs, by the combinatorial test).  All vectors are
primitive integer vectors; nothing is ever rounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .lattice import Vector, primitive


class ConeTooLarge(RuntimeError):
    """Exact elimination refused because the cone dimension exceeds the budget."""


@dataclass(frozen=True)
class ConeGenerators:
    lines: tuple[Vector, ...]  # basis of the lineality space
    rays: tuple[Vector, ...]   # extreme rays modulo lineality

    @property
    def is_origin(self) -> bool:
        return not self.lines and not self.rays


def _dot(a: Sequence[int], x: Sequence[int]) -> int:
    return sum(p * q for p, q in zip(a, x))


def _comb(s: int, u: Sequence[int], t: int, v: Sequence[int]) -> Vector:
    return primitive([s * p + t * q for p, q in zip(u, v)])


def extreme_rays(constraints: Sequence[Sequence[int]], dim: int, max_dim: int = 64) -> ConeGenerators:
    if dim > max_dim:
        raise ConeTooLarge(f"cone of dimension {dim} exceeds the exact-elimination budget {max_dim}")
    lines: list[Vector] = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays: list[Vector] = []
    done: list[Sequence[int]] = []
    for a in constraints:
        if not any(a):
            done.append(a)
            continue
        pivot = next((l for l in lines if _dot(a, l)), None)
        if pivot is not None:
            ap = _dot(a, pivot)
            sign = 1 if ap > 0 else -1
            lines = [_comb(ap, l, -_dot(a, l), pivot) if _dot(a, l) else l
                     for l in lines if l is not pivot]
            rays = [_comb(abs(ap), r, -sign * _dot(a, r), pivot) if _dot(a, r) else r for r in rays]
            rays.append(tuple(sign * x for x in pivot))
        else:
            vals = [_dot(a, r) for r in rays]
            pos = [r for r, v in zip(rays, vals) if v > 0]
            neg = [r for r, v in zip(rays, vals) if v < 0]
            new = [r for r, v in zip(rays, vals) if v >= 0]
            zero_sets = {r: frozenset(i for i, c in enumerate(done) if _dot(c, r) == 0) for r in rays}
            for p in pos:
                for n in neg:
                    common = zero_sets[p] & zero_sets[n]
                    if any(r != p and r != n and common <= zero_sets[r] for r in rays):
                        continue
                    new.append(_comb(_dot(a, p), n, -_dot(a, n), p))
            rays = list(dict.fromkeys(new))
        done.append(a)
    return ConeGenerators(tuple(lines), tuple(rays))
