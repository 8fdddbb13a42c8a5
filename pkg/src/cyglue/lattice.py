"""Exact integral lattices, divisor classes and isometries.

Everything here is plain Python ``int`` arithmetic; matrices are tuples of
row tuples.  Isometry matrices act on coordinate column vectors, i.e. they
are pullback matrices: column ``j`` holds the image of the ``j``-th basis
class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


class IncompatibleClasses(ValueError):
    """Raised when classes or maps from different lattices are combined."""


class NotAnIsometry(ValueError):
    pass


# ---------------------------------------------------------------------------
# small matrix kit


def as_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    out = tuple(tuple(int(x) for x in row) for row in rows)
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("ragged matrix")
    return out


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zero_matrix(m: int, n: int) -> Matrix:
    return tuple((0,) * n for _ in range(m))


def transpose(a: Sequence[Sequence[int]]) -> Matrix:
    return tuple(zip(*a)) if a else ()


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def hstack(*blocks: Sequence[Sequence[int]]) -> Matrix:
    blocks = tuple(b for b in blocks if b and len(b[0]))
    if not blocks:
        return ()
    return tuple(tuple(x for b in blocks for x in b[i]) for i in range(len(blocks[0])))


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rational_inverse(a: Sequence[Sequence[int]]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def integer_inverse(a: Sequence[Sequence[int]]) -> Matrix:
    inv = rational_inverse(a)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in row) for row in inv)


def rank(a: Sequence[Sequence[int]]) -> int:
    """Rank over Q by integer row elimination (rows are gcd-normalised)."""
    rows = [list(r) for r in a if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r]
        for i in range(r + 1, len(rows)):
            x = rows[i][c]
            if x:
                new = [p[c] * y - x * z for y, z in zip(rows[i], p)]
                g = 0
                for y in new:
                    g = gcd(g, y)
                rows[i] = [y // g for y in new] if g > 1 else new
        r += 1
        if r == len(rows):
            break
    return r


def kernel_rank(a: Sequence[Sequence[int]], ncols: int | None = None) -> int:
    """Rank of the integer kernel, ``ncols - rank(a)``."""
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    return n - rank(a)


def primitive(v: Sequence[int]) -> Vector:
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(v) if g in (0, 1) else tuple(x // g for x in v)


def hermite_normal_form(a: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, list[int]]:
    """Column-style Hermite normal form.

    Returns ``(H, U, pivots)`` with ``A @ U = H``, ``U`` unimodular and ``H``
    in column echelon form: the pivot columns listed in ``pivots`` come
    first-row-first, have positive pivots and reduced entries to their
    left in each pivot row; all remaining columns of ``H`` are zero.

    Columns of ``U`` are stored sparsely during elimination, which keeps the
    many-repeated-column matrices of fiber blow-ups cheap.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    cols = [[a[i][j] for i in range(m)] for j in range(n)]
    trans: list[dict[int, int]] = [{j: 1} for j in range(n)]

    def axpy(dst: int, q: int, src: int) -> None:
        # col[dst] -= q * col[src]
        cd, cs = cols[dst], cols[src]
        for i in range(m):
            if cs[i]:
                cd[i] -= q * cs[i]
        td = trans[dst]
        for k, v in trans[src].items():
            nv = td.get(k, 0) - q * v
            if nv:
                td[k] = nv
            else:
                td.pop(k, None)

    active = list(range(n))
    pivots: list[int] = []
    pivot_rows: list[int] = []
    for i in range(m):
        live = [j for j in active if cols[j][i]]
        while len(live) > 1:
            p = min(live, key=lambda j: abs(cols[j][i]))
            for j in live:
                if j != p:
                    axpy(j, cols[j][i] // cols[p][i], p)
            live = [j for j in live if cols[j][i]]
        if live:
            p = live[0]
            if cols[p][i] < 0:
                cols[p] = [-x for x in cols[p]]
                trans[p] = {k: -v for k, v in trans[p].items()}
            # reduce earlier pivot columns in this row
            for q_col in pivots:
                axpy(q_col, cols[q_col][i] // cols[p][i], p)
            pivots.append(p)
            pivot_rows.append(i)
            active.remove(p)

    order = pivots + active
    h = tuple(tuple(cols[j][i] for j in order) for i in range(m))
    u_cols = [trans[j] for j in order]
    u = tuple(tuple(u_cols[c].get(r, 0) for c in range(n)) for r in range(n))
    return h, u, pivots


def integer_kernel(a: Sequence[Sequence[int]], ncols: int | None = None) -> list[Vector]:
    """Z-basis of ``{x : A x = 0}``.

    The basis is read off the unimodular transform of the Hermite normal
    form, so the returned lattice is saturated and every vector primitive.
    ``ncols`` is needed only when ``A`` has no rows.
    """
    if not a:
        n = ncols or 0
        return [tuple(int(i == j) for i in range(n)) for j in range(n)]
    _, u, pivots = hermite_normal_form(a)
    n = len(u)
    return [tuple(u[r][c] for r in range(n)) for c in range(len(pivots), n)]


# ---------------------------------------------------------------------------
# lattices and classes


@dataclass(frozen=True)
class Lattice:
    name: str
    gram: Matrix
    basis_labels: tuple[str, ...] = ()
    # classes known to be free elliptic fibre classes (used by freeness rules)
    fiber_classes: tuple[Vector, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        gram = as_matrix(self.gram)
        object.__setattr__(self, "gram", gram)
        n = len(gram)
        if n < 1 or any(len(r) != n for r in gram):
            raise ValueError(f"{self.name}: Gram matrix must be square of rank >= 1")
        if any(gram[i][j] != gram[j][i] for i in range(n) for j in range(n)):
            raise ValueError(f"{self.name}: Gram matrix is not symmetric")
        labels = tuple(self.basis_labels) or tuple(f"b{i + 1}" for i in range(n))
        if len(labels) != n:
            raise ValueError(f"{self.name}: need {n} basis labels, got {len(labels)}")
        object.__setattr__(self, "basis_labels", labels)
        object.__setattr__(self, "fiber_classes", tuple(tuple(v) for v in self.fiber_classes))

    @property
    def rank(self) -> int:
        return len(self.gram)

    def __call__(self, *coords: int) -> "DivisorClass":
        if len(coords) == 1 and not isinstance(coords[0], int):
            coords = tuple(coords[0])
        return DivisorClass(self, tuple(coords))

    def zero(self) -> "DivisorClass":
        return DivisorClass(self, (0,) * self.rank)

    def basis(self) -> list["DivisorClass"]:
        return [DivisorClass(self, v) for v in identity_matrix(self.rank)]

    def form(self, x: Sequence[int], y: Sequence[int]) -> int:
        return sum(xi * gij * yj for xi, row in zip(x, self.gram) for gij, yj in zip(row, y))

    def determinant(self) -> int:
        return determinant(self.gram)


@dataclass(frozen=True)
class DivisorClass:
    lattice: Lattice
    coords: Vector

    def __post_init__(self) -> None:
        coords = tuple(int(c) for c in self.coords)
        if len(coords) != self.lattice.rank:
            raise ValueError(
                f"class of length {len(coords)} in rank-{self.lattice.rank} lattice {self.lattice.name}")
        object.__setattr__(self, "coords", coords)

    def _check(self, other: "DivisorClass") -> None:
        if not isinstance(other, DivisorClass) or other.lattice != self.lattice:
            raise IncompatibleClasses(
                f"cannot combine classes of {self.lattice.name} and "
                f"{getattr(getattr(other, 'lattice', None), 'name', other)!r}")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(self.lattice, tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(self.lattice, tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.lattice, tuple(-x for x in self.coords))

    def __rmul__(self, k: int) -> "DivisorClass":
        return DivisorClass(self.lattice, tuple(k * x for x in self.coords))

    def dot(self, other: "DivisorClass") -> int:
        return pairing(self, other)

    @property
    def square(self) -> int:
        return self.lattice.form(self.coords, self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.coords)) + ")"


def pairing(d: DivisorClass, e: DivisorClass) -> int:
    d._check(e)
    return d.lattice.form(d.coords, e.coords)


def self_intersection(d: DivisorClass) -> int:
    return d.square


def sum_classes(lattice: Lattice, classes: Iterable[DivisorClass]) -> DivisorClass:
    total = lattice.zero()
    for c in classes:
        total = total + c
    return total


# ---------------------------------------------------------------------------
# isometries


@dataclass(frozen=True)
class Isometry:
    lattice: Lattice
    matrix: Matrix
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        mat = as_matrix(self.matrix)
        n = self.lattice.rank
        if len(mat) != n or any(len(r) != n for r in mat):
            raise ValueError(f"isometry of {self.lattice.name} must be {n}x{n}")
        object.__setattr__(self, "matrix", mat)
        if mat_mul(mat_mul(transpose(mat), self.lattice.gram), mat) != self.lattice.gram:
            raise NotAnIsometry(f"{self.name or 'matrix'} does not preserve the form of {self.lattice.name}")
        if abs(determinant(mat)) != 1:
            raise NotAnIsometry(f"{self.name or 'matrix'} is not invertible over Z")

    def __call__(self, d: DivisorClass) -> DivisorClass:
        return apply_isometry(self, d)

    def inverse(self) -> "Isometry":
        return Isometry(self.lattice, integer_inverse(self.matrix), name=f"{self.name}^-1" if self.name else "")

    def power(self, k: int) -> "Isometry":
        """``k``-th power in the pullback convention; ``k < 0`` uses the inverse."""
        base = self if k >= 0 else self.inverse()
        result = identity(self.lattice)
        for _ in range(abs(k)):
            result = compose(result, base)
        return result

    def is_identity(self) -> bool:
        return self.matrix == identity_matrix(self.lattice.rank)


def identity(lattice: Lattice) -> Isometry:
    return Isometry(lattice, identity_matrix(lattice.rank), name="id")


def apply_isometry(m: Isometry, d: DivisorClass) -> DivisorClass:
    if m.lattice != d.lattice:
        raise IncompatibleClasses(f"isometry of {m.lattice.name} applied to class of {d.lattice.name}")
    return DivisorClass(d.lattice, mat_vec(m.matrix, d.coords))


def compose(m: Isometry, n: Isometry) -> Isometry:
    """Pullback of the composite map ``m o n``: ``(m o n)^* = n^* m^*``.

    ``m`` and ``n`` are given by their pullbacks, so the matrix is
    ``n.matrix @ m.matrix``.
    """
    if m.lattice != n.lattice:
        raise IncompatibleClasses(f"cannot compose isometries of {m.lattice.name} and {n.lattice.name}")
    return Isometry(m.lattice, mat_mul(n.matrix, m.matrix))


def change_basis(lattice: Lattice, new_basis: Sequence[Sequence[int]], name: str,
                 labels: Sequence[str] = ()) -> tuple[Lattice, Matrix]:
    """Re-express ``lattice`` in the basis whose old coordinates are the rows of ``new_basis``.

    Returns the new lattice and the integer matrix taking old coordinates to
    new ones.  ``new_basis`` must be unimodular.
    """
    p = transpose(as_matrix(new_basis))  # columns = new basis vectors
    to_new = integer_inverse(p)
    gram = mat_mul(mat_mul(transpose(p), lattice.gram), p)
    return Lattice(name, gram, tuple(labels)), to_new
