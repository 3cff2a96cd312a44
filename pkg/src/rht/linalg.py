"""Sparse exact linear algebra over the rationals.

Vectors are dicts mapping a hashable column key to a nonzero Fraction.
All routines are deterministic: columns are processed in sorted order and
row choices break ties by input position, so reduced forms are canonical
for a given column ordering.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Sequence

Vec = dict[Hashable, Fraction]


def vec_add(u: Vec, v: Vec, scale: Fraction = Fraction(1)) -> Vec:
    """u + scale*v with zero entries dropped."""
    out = dict(u)
    for k, c in v.items():
        s = out.get(k, Fraction(0)) + scale * c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vec_scale(u: Vec, scale: Fraction) -> Vec:
    if not scale:
        return {}
    return {k: scale * c for k, c in u.items()}


def _column_order(rows: Iterable[Vec]) -> list:
    cols = set()
    for r in rows:
        cols.update(r.keys())
    return sorted(cols)


class RowSpace:
    """A subspace given by its reduced row echelon form.

    Rows are kept fully reduced with pivot coefficient 1; pivot columns are
    strictly increasing in the fixed column order.  Because RREF is unique,
    two RowSpaces are equal iff they describe the same subspace.
    """

    def __init__(self, rows: Iterable[Vec] = ()):  # rows need not be reduced
        self.rows: list[Vec] = []
        self.pivots: list = []
        for r in rows:
            self.add(r)

    def reduce(self, v: Vec) -> Vec:
        """Residual of v modulo the span (fully reduced)."""
        out = dict(v)
        for piv, row in zip(self.pivots, self.rows):
            c = out.get(piv)
            if c:
                out = vec_add(out, row, -c)
        return out

    def add(self, v: Vec) -> bool:
        """Insert v; returns True if the rank grew."""
        r = self.reduce(v)
        if not r:
            return False
        piv = min(r.keys())
        r = vec_scale(r, 1 / r[piv])
        # eliminate the new pivot from existing rows, keep rows sorted by pivot
        for i, row in enumerate(self.rows):
            c = row.get(piv)
            if c:
                self.rows[i] = vec_add(row, r, -c)
        idx = 0
        while idx < len(self.pivots) and self.pivots[idx] < piv:
            idx += 1
        self.pivots.insert(idx, piv)
        self.rows.insert(idx, r)
        return True

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def contains_space(self, other: "RowSpace") -> bool:
        return all(self.contains(r) for r in other.rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def key(self) -> tuple:
        """Canonical hashable form (sorted items per row)."""
        return tuple(tuple(sorted(r.items())) for r in self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, RowSpace) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def basis(self) -> list[Vec]:
        return [dict(r) for r in self.rows]


def rank(rows: Iterable[Vec]) -> int:
    return RowSpace(rows).dim


def kernel_of_map(columns: Sequence[Vec], keys: Sequence[Hashable]) -> list[Vec]:
    """Kernel of the linear map sending basis vector keys[j] to columns[j].

    Returns vectors keyed by `keys` spanning {x : sum_j x_j * columns[j] = 0},
    in a deterministic (RREF over the key order) form.
    """
    kernel: list[Vec] = []
    # sweep in order; track each image in terms of processed keys
    reps: list[tuple[Vec, Vec]] = []  # (reduced image, combination)
    for j, col in enumerate(columns):
        img = dict(col)
        comb = {keys[j]: Fraction(1)}
        for rimg, rcomb in reps:
            piv = min(rimg.keys())
            c = img.get(piv)
            if c:
                scale = -c / rimg[piv]
                img = vec_add(img, rimg, scale)
                comb = vec_add(comb, rcomb, scale)
        if img:
            reps.append((img, comb))
        else:
            kernel.append(comb)
    ker = RowSpace(kernel)
    return ker.basis()


def image_space(columns: Iterable[Vec]) -> RowSpace:
    return RowSpace(columns)


def solve(columns: Sequence[Vec], keys: Sequence[Hashable], target: Vec):
    """Solve sum_j x_j*columns[j] = target exactly.

    Returns (solution dict keyed by `keys`, None) on success, or
    (None, certificate) where the certificate is the irreducible residual
    of the target against the column span (the witness of infeasibility).
    """
    reps: list[tuple[Vec, Vec]] = []
    for j, col in enumerate(columns):
        img = dict(col)
        comb = {keys[j]: Fraction(1)}
        for rimg, rcomb in reps:
            piv = min(rimg.keys())
            c = img.get(piv)
            if c:
                scale = -c / rimg[piv]
                img = vec_add(img, rimg, scale)
                comb = vec_add(comb, rcomb, scale)
        if img:
            reps.append((img, comb))
    residual = dict(target)
    solution: Vec = {}
    for rimg, rcomb in reps:
        piv = min(rimg.keys())
        c = residual.get(piv)
        if c:
            scale = c / rimg[piv]
            residual = vec_add(residual, rimg, -scale)
            solution = vec_add(solution, rcomb, scale)
    if residual:
        return None, residual
    return solution, None
