"""Exact rational linear algebra.

Everything here is exact: rationals are `fractions.Fraction` over Python's
arbitrary-precision integers, and rank decisions are exact-zero decisions.
No floating point is ever used; a single rounding error would flip a
dimension count downstream.

Matrices are stored sparsely (dict-of-columns per row).  The rank engine
clears denominators row-wise and runs a fraction-free elimination over the
integers with Markowitz-style pivoting and per-row gcd normalization, which
keeps intermediate growth tame on the structured matrices this package
produces.

All values are immutable after construction and safe to share across
threads; individual computations are sequential, but callers may run many
of them in parallel.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "RatMatrix",
    "binom",
    "rational_from_str",
    "rational_to_str",
]


def binom(a: int, b: int) -> int:
    """Binomial coefficient with the convention C(a, b) = 0 whenever a < b.

    The zero convention (including negative a) is what makes the closed-form
    dimension counts in this package correct near their degree boundaries.

    Raises:
        ValueError: if b < 0.
    """
    if b < 0:
        raise ValueError(f"binom requires b >= 0, got b={b}")
    if a < b:
        return 0
    out = 1
    for i in range(b):
        out = out * (a - i) // (i + 1)
    return out


def rational_to_str(q: Fraction) -> str:
    """Serialize a rational as "p/q", or "p" when the denominator is 1."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rational_from_str(s: str) -> Fraction:
    """Parse the "p/q" serialization (also accepts plain integers)."""
    return Fraction(s.strip())


def _normalize_int_row(row: dict[int, int]) -> dict[int, int]:
    """Divide a nonzero integer row by the gcd of its entries."""
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def _to_int_rows(rows: Iterable[dict[int, Fraction]]) -> list[dict[int, int]]:
    """Clear denominators per row and gcd-normalize; drops zero rows."""
    out = []
    for row in rows:
        if not row:
            continue
        lcm = 1
        for v in row.values():
            d = v.denominator
            lcm = lcm // gcd(lcm, d) * d
        irow = {c: int(v * lcm) for c, v in row.items()}
        out.append(_normalize_int_row(irow))
    return out


def _sparse_int_rank(rows: list[dict[int, int]]) -> int:
    """Rank of a sparse integer matrix by fraction-free elimination.

    Pivot selection approximates the Markowitz criterion: among a handful of
    least-populated columns, pick the entry minimizing predicted fill, with
    strong preference for unit pivots (their updates never need a division).
    Updated rows are renormalized by their gcd so entries stay in lowest
    terms after each pivot.
    """
    live: dict[int, dict[int, int]] = {i: r for i, r in enumerate(rows) if r}
    colmap: dict[int, set[int]] = {}
    for rid, row in live.items():
        for c in row:
            colmap.setdefault(c, set()).add(rid)

    rank = 0
    while live:
        # candidate columns: a few with the fewest live rows
        cand_cols = sorted(colmap, key=lambda c: len(colmap[c]))[:6]
        best = None
        for c in cand_cols:
            ccount = len(colmap[c])
            for rid in colmap[c]:
                row = live[rid]
                v = abs(row[c])
                score = (len(row) - 1) * (ccount - 1)
                if v != 1:
                    score += 10_000_000  # unit pivots first, always
                key = (score, v, len(row))
                if best is None or key < best[0]:
                    best = (key, rid, c)
        _, prid, pc = best
        piv = live.pop(prid)
        for c in piv:
            s = colmap[c]
            s.discard(prid)
            if not s:
                del colmap[c]
        rank += 1
        pv = piv[pc]

        touched = list(colmap.pop(pc, ()))
        for rid in touched:
            row = live[rid]
            rv = row[pc]
            g = gcd(pv, rv)
            a = pv // g
            b = rv // g
            # new_row = a*row - b*piv  (pivot column cancels exactly)
            new_row: dict[int, int] = {}
            if a == 1:
                for c, v in row.items():
                    w = piv.get(c)
                    nv = v - b * w if w is not None else v
                    if nv:
                        new_row[c] = nv
            else:
                for c, v in row.items():
                    w = piv.get(c)
                    nv = a * v - b * w if w is not None else a * v
                    if nv:
                        new_row[c] = nv
            for c, w in piv.items():
                if c not in row:
                    new_row[c] = -b * w
            new_row.pop(pc, None)
            if new_row:
                new_row = _normalize_int_row(new_row)
            # update column index incrementally
            for c in row:
                if c != pc and c not in new_row:
                    s = colmap[c]
                    s.discard(rid)
                    if not s:
                        del colmap[c]
            for c in new_row:
                if c not in row:
                    colmap.setdefault(c, set()).add(rid)
            if new_row:
                live[rid] = new_row
            else:
                del live[rid]
    return rank


class RatMatrix:
    """An immutable exact rational matrix.

    Rows are stored as sparse column->Fraction dicts; dense row lists are
    accepted at construction.  Arithmetic never rounds.
    """

    __slots__ = ("_rows", "_ncols", "_rank")

    def __init__(self, rows: Sequence[dict[int, Fraction]], ncols: int):
        cleaned = []
        for row in rows:
            r = {}
            for c, v in row.items():
                if not 0 <= c < ncols:
                    raise IndexError(f"column {c} out of range for {ncols} columns")
                v = Fraction(v)
                if v:
                    r[c] = v
            cleaned.append(r)
        self._rows: tuple[dict[int, Fraction], ...] = tuple(cleaned)
        self._ncols = ncols
        self._rank: int | None = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        """Build from dense row lists of ints/Fractions/strings."""
        ncols = len(rows[0]) if rows else 0
        sparse = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            sparse.append(
                {j: Fraction(v) for j, v in enumerate(row) if Fraction(v) != 0}
            )
        return cls(sparse, ncols)

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    def entry(self, i: int, j: int) -> Fraction:
        if not 0 <= j < self._ncols:
            raise IndexError(j)
        return self._rows[i].get(j, Fraction(0))

    def row_dicts(self) -> tuple[dict[int, Fraction], ...]:
        return self._rows

    def transpose(self) -> "RatMatrix":
        rows: list[dict[int, Fraction]] = [dict() for _ in range(self._ncols)]
        for i, row in enumerate(self._rows):
            for c, v in row.items():
                rows[c][i] = v
        return RatMatrix(rows, len(self._rows))

    def rank(self) -> int:
        """Exact rank over the rationals."""
        if self._rank is None:
            self._rank = _sparse_int_rank(_to_int_rows(self._rows))
        return self._rank

    def kernel_dim(self) -> int:
        """Dimension of the (right) null space: ncols - rank."""
        return self._ncols - self.rank()

    def rref(self) -> tuple[list[int], list[dict[int, Fraction]]]:
        """Reduced row echelon form.

        Returns (pivot_columns, rows): pivot columns in increasing order and
        the corresponding unit-pivot reduced rows.  Meant for the small
        matrices (graded pieces of single ideals) where an explicit basis is
        needed; rank of large systems should go through rank().
        """
        rows = [dict(r) for r in self._rows if r]
        pivots: list[int] = []
        reduced: list[dict[int, Fraction]] = []
        while rows:
            # sparsest row first keeps the reduction cheap
            rows.sort(key=len)
            row = rows.pop(0)
            if not row:
                continue
            pc = min(row)
            pv = row[pc]
            if pv != 1:
                row = {c: v / pv for c, v in row.items()}
            # reduce previously found rows and the remaining ones
            for other_list in (reduced, rows):
                for k, other in enumerate(other_list):
                    ov = other.get(pc)
                    if ov:
                        new = dict(other)
                        for c, v in row.items():
                            nv = new.get(c, Fraction(0)) - ov * v
                            if nv:
                                new[c] = nv
                            else:
                                new.pop(c, None)
                        other_list[k] = new
            pivots.append(pc)
            reduced.append(row)
        order = sorted(range(len(pivots)), key=lambda k: pivots[k])
        return [pivots[k] for k in order], [reduced[k] for k in order]

    def kernel_basis(self) -> list[dict[int, Fraction]]:
        """A basis of the null space {w : M w = 0}, as sparse vectors.

        Equivalently, a basis of the linear functionals vanishing on the
        row space; built from the reduced form, one vector per non-pivot
        column.
        """
        pivots, reduced = self.rref()
        pivot_set = set(pivots)
        basis = []
        for c in range(self._ncols):
            if c in pivot_set:
                continue
            vec = {c: Fraction(1)}
            for pc, row in zip(pivots, reduced):
                v = row.get(c)
                if v:
                    vec[pc] = -v
            basis.append(vec)
        return basis

    def row_space_contains(self, vector: dict[int, Fraction]) -> bool:
        """Exact membership of a vector in the row space."""
        vec = {c: Fraction(v) for c, v in vector.items() if Fraction(v) != 0}
        for c in vec:
            if not 0 <= c < self._ncols:
                raise IndexError(c)
        _, reduced = self.rref()
        for row in reduced:
            pc = min(row)
            coeff = vec.get(pc)
            if coeff:
                for c, v in row.items():
                    nv = vec.get(c, Fraction(0)) - coeff * v
                    if nv:
                        vec[c] = nv
                    else:
                        vec.pop(c, None)
        return not vec

    def __repr__(self) -> str:
        return f"RatMatrix({self.nrows}x{self.ncols})"
