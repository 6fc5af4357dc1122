"""Matrices and canonical subspaces over either level of a field tower.

A subspace is always stored as the reduced row echelon form of a basis
matrix, so equality and hashing are structural.  Enumeration of all
d-dimensional subspaces of K^N walks pivot-column sets in lexicographic
order and fills the free cells in row-major base-|K| counting order
(enumeration order tag: ``subspace-enum/1``); the search module shards by
this order.

Rows are tuples of int-encoded field elements.  When the base field is
GF(2) the rows also pack into ints, which the rank helpers below use.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from .fields import FieldLevel, FieldTower

ENUM_ORDER_TAG = "subspace-enum/1"


class AmbientMismatch(ValueError):
    """Operands live in different ambient spaces or field levels."""


# ---------------------------------------------------------------------------
# Dense row-reduction over an arbitrary field level.
# ---------------------------------------------------------------------------


def rref(rows: Sequence[Sequence[int]], level: FieldLevel,
         ) -> Tuple[Tuple[Tuple[int, ...], ...], int, Tuple[int, ...]]:
    """Reduced row echelon form; returns (rows, rank, pivot columns)."""
    work = [list(r) for r in rows]
    ncols = len(work[0]) if work else 0
    pivots: List[int] = []
    r = 0
    mul, sub, inv = level.mul, level.sub, level.inv
    for c in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        f = inv(work[r][c])
        if f != 1:
            work[r] = [mul(f, v) for v in work[r]]
        row_r = work[r]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                g = work[i][c]
                work[i] = [sub(v, mul(g, w)) for v, w in zip(work[i], row_r)]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    out = tuple(tuple(work[i]) for i in range(r))
    return out, r, tuple(pivots)


def rank_of(rows: Sequence[Sequence[int]], level: FieldLevel) -> int:
    if not rows:
        return 0
    if level.order == 2:
        return rank_gf2([pack_gf2(r) for r in rows])
    return rref(rows, level)[1]


# ---------------------------------------------------------------------------
# Bit-packed GF(2) helpers (rows as ints, bit i = column i).
# ---------------------------------------------------------------------------


def pack_gf2(row: Sequence[int]) -> int:
    x = 0
    for i, v in enumerate(row):
        if v:
            x |= 1 << i
    return x


def unpack_gf2(x: int, ncols: int) -> Tuple[int, ...]:
    return tuple((x >> i) & 1 for i in range(ncols))


def rank_gf2(rows: Iterable[int]) -> int:
    basis = {}  # lowest set bit -> reduced row with that pivot
    for v in rows:
        while v:
            low = v & -v
            b = basis.get(low)
            if b is None:
                basis[low] = v
                break
            v ^= b
    return len(basis)


# ---------------------------------------------------------------------------
# Matrix wrapper (only for I/O and generator-matrix plumbing).
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Matrix:
    tower: FieldTower
    level_name: str  # "F" or "E"
    rows: Tuple[Tuple[int, ...], ...]

    @property
    def level(self) -> FieldLevel:
        return self.tower.F if self.level_name == "F" else self.tower.E

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def to_json(self) -> dict:
        enc = self.tower.encode if self.level_name == "E" else (lambda x: x)
        return {
            "level": self.level_name,
            "rows": [[enc(v) for v in row] for row in self.rows],
        }

    @staticmethod
    def from_json(tower: FieldTower, obj: dict) -> "Matrix":
        level_name = obj["level"]
        dec = tower.decode if level_name == "E" else (lambda x: x)
        rows = tuple(tuple(dec(v) for v in row) for row in obj["rows"])
        return Matrix(tower, level_name, rows)


def mat_vec(level: FieldLevel, rows: Sequence[Sequence[int]],
            vec: Sequence[int]) -> Tuple[int, ...]:
    """vec * rows (row vector times matrix)."""
    ncols = len(rows[0]) if rows else 0
    add, mul = level.add, level.mul
    out = [0] * ncols
    for c, row in zip(vec, rows):
        if c == 0:
            continue
        for j, v in enumerate(row):
            if v:
                out[j] = add(out[j], mul(c, v))
    return tuple(out)


def dot(level: FieldLevel, a: Sequence[int], b: Sequence[int]) -> int:
    acc = 0
    add, mul = level.add, level.mul
    for x, y in zip(a, b):
        if x and y:
            acc = add(acc, mul(x, y))
    return acc


# ---------------------------------------------------------------------------
# Canonical subspaces.
# ---------------------------------------------------------------------------


class Subspace:
    """A subspace of K^N in canonical RREF form (K = one tower level)."""

    __slots__ = ("tower", "level_name", "ambient", "rows", "pivots", "_packed")

    def __init__(self, tower: FieldTower, level_name: str, ambient: int,
                 rows: Tuple[Tuple[int, ...], ...],
                 pivots: Tuple[int, ...]):
        self.tower = tower
        self.level_name = level_name
        self.ambient = ambient
        self.rows = rows
        self.pivots = pivots
        self._packed: Optional[List[int]] = None

    # -- constructors ------------------------------------------------------
    @staticmethod
    def span(tower: FieldTower, level_name: str, ambient: int,
             vectors: Sequence[Sequence[int]]) -> "Subspace":
        level = tower.F if level_name == "F" else tower.E
        vecs = [v for v in vectors if any(v)]
        if not vecs:
            return Subspace(tower, level_name, ambient, (), ())
        if any(len(v) != ambient for v in vecs):
            raise AmbientMismatch("vector length does not match ambient")
        rows, _, pivots = rref(vecs, level)
        return Subspace(tower, level_name, ambient, rows, pivots)

    @staticmethod
    def zero(tower: FieldTower, level_name: str, ambient: int) -> "Subspace":
        return Subspace(tower, level_name, ambient, (), ())

    @staticmethod
    def full(tower: FieldTower, level_name: str, ambient: int) -> "Subspace":
        rows = tuple(
            tuple(1 if j == i else 0 for j in range(ambient))
            for i in range(ambient)
        )
        return Subspace(tower, level_name, ambient, rows, tuple(range(ambient)))

    # -- basics --------------------------------------------------------------
    @property
    def level(self) -> FieldLevel:
        return self.tower.F if self.level_name == "F" else self.tower.E

    @property
    def dim(self) -> int:
        return len(self.rows)

    def packed(self) -> List[int]:
        """Rows as GF(2) bitmasks; only valid when |K| = 2."""
        if self._packed is None:
            self._packed = [pack_gf2(r) for r in self.rows]
        return self._packed

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace)
                and self.level_name == other.level_name
                and self.ambient == other.ambient
                and self.rows == other.rows)

    def __hash__(self) -> int:
        return hash((self.level_name, self.ambient, self.rows))

    def __repr__(self) -> str:  # pragma: no cover
        return (f"Subspace({self.level_name}^{self.ambient}, dim={self.dim})")

    def _check_compat(self, other: "Subspace") -> None:
        if (self.level_name != other.level_name
                or self.ambient != other.ambient
                or self.tower is not other.tower and self.tower != other.tower):
            raise AmbientMismatch("subspaces live in different spaces")

    # -- membership ----------------------------------------------------------
    def reduce_vector(self, vec: Sequence[int]) -> Tuple[int, ...]:
        """Reduce vec modulo this subspace (eliminate pivot coordinates)."""
        level = self.level
        sub_, mul = level.sub, level.mul
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c != 0:
                v = [sub_(x, mul(c, y)) for x, y in zip(v, row)]
        return tuple(v)

    def contains_vector(self, vec: Sequence[int]) -> bool:
        return not any(self.reduce_vector(vec))

    def contains(self, other: "Subspace") -> bool:
        self._check_compat(other)
        return all(self.contains_vector(r) for r in other.rows)

    # -- lattice operations ----------------------------------------------------
    def sum(self, other: "Subspace") -> "Subspace":
        self._check_compat(other)
        return Subspace.span(self.tower, self.level_name, self.ambient,
                             list(self.rows) + list(other.rows))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: RREF of [[A|A],[B|0]]; zero-left rows carry A cap B."""
        self._check_compat(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.tower, self.level_name, self.ambient)
        n = self.ambient
        stacked = [tuple(r) + tuple(r) for r in self.rows]
        stacked += [tuple(r) + (0,) * n for r in other.rows]
        rows, _, _ = rref(stacked, self.level)
        inter = [r[n:] for r in rows if not any(r[:n])]
        return Subspace.span(self.tower, self.level_name, n, inter)

    def intersection_dim(self, other: "Subspace") -> int:
        """dim(A) + dim(B) - dim(A+B), via one rank computation."""
        self._check_compat(other)
        if self.dim == 0 or other.dim == 0:
            return 0
        if self.level.order == 2:
            stacked = self.packed() + other.packed()
            total = rank_gf2(stacked)
        else:
            total = rref(list(self.rows) + list(other.rows), self.level)[1]
        return self.dim + other.dim - total

    def quotient_dim(self, other: "Subspace") -> int:
        """Dimension of the image of this subspace in ambient / other."""
        self._check_compat(other)
        if self.dim == 0:
            return 0
        return self.dim - self.intersection_dim(other)

    # -- duality ------------------------------------------------------------
    def dual(self) -> "Subspace":
        """Orthogonal complement under the standard bilinear form a.b^T."""
        n = self.ambient
        if self.dim == 0:
            return Subspace.full(self.tower, self.level_name, n)
        level = self.level
        neg = level.neg
        free = [c for c in range(n) if c not in self.pivots]
        basis = []
        # for each free column c: vector with 1 at c and -row[c] at pivots
        for c in free:
            v = [0] * n
            v[c] = 1
            for row, p in zip(self.rows, self.pivots):
                v[p] = neg(row[c])
            basis.append(tuple(v))
        return Subspace.span(self.tower, self.level_name, n, basis)

    # -- serialization -------------------------------------------------------
    def to_json(self) -> dict:
        tower = self.tower
        enc = tower.encode if self.level_name == "E" else (lambda x: x)
        obj = {
            "level": self.level_name,
            "ambient": self.ambient,
            "dim": self.dim,
            "rref_basis": [[enc(v) for v in row] for row in self.rows],
        }
        if self.level_name == "F" and self.ambient % tower.m == 0:
            k = self.ambient // tower.m
            obj["view"] = f"E^{k} as F^{self.ambient}"
        return obj

    @staticmethod
    def from_json(tower: FieldTower, obj: dict) -> "Subspace":
        level_name = obj["level"]
        dec = tower.decode if level_name == "E" else (lambda x: x)
        rows = [[dec(v) for v in row] for row in obj["rref_basis"]]
        return Subspace.span(tower, level_name, obj["ambient"], rows)


# ---------------------------------------------------------------------------
# Deterministic enumeration of all d-dimensional subspaces of K^N.
# ---------------------------------------------------------------------------


def free_cells(pivots: Sequence[int], ncols: int) -> List[Tuple[int, int]]:
    """Row-major list of fillable cells for an RREF pivot set."""
    pivset = set(pivots)
    cells = []
    for r, p in enumerate(pivots):
        for c in range(p + 1, ncols):
            if c not in pivset:
                cells.append((r, c))
    return cells


def rref_from_fill(pivots: Sequence[int], ncols: int,
                   cells: Sequence[Tuple[int, int]],
                   fill: int, order: int) -> List[List[int]]:
    rows = [[0] * ncols for _ in pivots]
    for r, p in enumerate(pivots):
        rows[r][p] = 1
    x = fill
    for (r, c) in cells:
        x, d = divmod(x, order)
        rows[r][c] = d
    return rows


def enumerate_subspaces(tower: FieldTower, level_name: str, ambient: int,
                        d: int) -> Iterator[Subspace]:
    """Yield every d-dimensional subspace of K^N exactly once.

    Order: pivot-column sets lexicographically, then free cells filled in
    row-major base-|K| counting order (tag ``subspace-enum/1``).
    """
    if d < 0 or d > ambient:
        return
    if d == 0:
        yield Subspace.zero(tower, level_name, ambient)
        return
    level = tower.F if level_name == "F" else tower.E
    order = level.order
    for pivots in itertools.combinations(range(ambient), d):
        cells = free_cells(pivots, ambient)
        for fill in range(order ** len(cells)):
            rows = rref_from_fill(pivots, ambient, cells, fill, order)
            yield Subspace(tower, level_name, ambient,
                           tuple(tuple(r) for r in rows), tuple(pivots))


def subspaces_of(sub: Subspace, d: int) -> Iterator[Subspace]:
    """All d-dimensional subspaces of a given subspace, in the order induced
    by enumerating coefficient space and mapping through the basis."""
    s = sub.dim
    if d > s:
        return
    tower, level = sub.tower, sub.level
    for coeff in enumerate_subspaces(tower, sub.level_name, s, d):
        vecs = [mat_vec(level, sub.rows, row) for row in coeff.rows]
        yield Subspace.span(tower, sub.level_name, sub.ambient, vecs)


# ---------------------------------------------------------------------------
# Moving between the E-level and the flattened F-level view of E^k.
# ---------------------------------------------------------------------------


def flatten_vector(tower: FieldTower, vec: Sequence[int]) -> Tuple[int, ...]:
    """E^k -> F^(km): concatenate the basis coordinates of each component."""
    out: List[int] = []
    for x in vec:
        out.extend(tower.to_coords(x))
    return tuple(out)


def unflatten_vector(tower: FieldTower, vec: Sequence[int]) -> Tuple[int, ...]:
    m = tower.m
    return tuple(
        tower.from_coords(vec[j * m:(j + 1) * m]) for j in range(len(vec) // m)
    )


def flatten_subspace(esub: Subspace) -> Subspace:
    """View an E-subspace of E^k as an F-subspace of F^(km), dim times m."""
    tower = esub.tower
    if esub.level_name != "E":
        raise AmbientMismatch("flatten_subspace expects an E-level subspace")
    vecs = []
    for row in esub.rows:
        for tau in tower.basis:
            scaled = tuple(tower.xmul(tau, x) for x in row)
            vecs.append(flatten_vector(tower, scaled))
    return Subspace.span(tower, "F", esub.ambient * tower.m, vecs)


def espan_of_flat(fsub: Subspace) -> Subspace:
    """The E-span of a flattened F-subspace, as an E-subspace of E^k."""
    tower = fsub.tower
    if fsub.level_name != "F" or fsub.ambient % tower.m != 0:
        raise AmbientMismatch("expected an F-subspace of some F^(km)")
    k = fsub.ambient // tower.m
    vecs = [unflatten_vector(tower, row) for row in fsub.rows]
    return Subspace.span(tower, "E", k, vecs)


def embed_f_vectors(tower: FieldTower, fsub: Subspace) -> Subspace:
    """Embed an F-subspace of F^n into the flattened view of E^n."""
    vecs = [flatten_vector(tower, row) for row in fsub.rows]
    return Subspace.span(tower, "F", fsub.ambient * tower.m, vecs)


def f_rational_part(tower: FieldTower, esub: Subspace) -> Subspace:
    """A cap F^n for an E-subspace A of E^n, returned inside F^n.

    Computed by intersecting the flattened space with the embedded copy of
    F^n and pulling coordinates back.
    """
    n = esub.ambient
    flat = flatten_subspace(esub)
    embedded = embed_f_vectors(tower, Subspace.full(tower, "F", n))
    inter = flat.intersect(embedded)
    one = tower.to_coords(1)
    j = next(i for i, c in enumerate(one) if c != 0)
    cinv = tower.finv(one[j])
    m = tower.m
    vecs = []
    for row in inter.rows:
        vecs.append(tuple(tower.fmul(cinv, row[b * m + j]) for b in range(n)))
    return Subspace.span(tower, "F", n, vecs)
