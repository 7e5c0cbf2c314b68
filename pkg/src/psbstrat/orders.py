"""Monomial orders represented as full-rank integer weight matrices.

Comparison applies the weight rows top-down: the first row on which the
weighted sums of two exponent vectors differ decides.  Every order used by
the engine (degree-lexicographic, the local valuation-compatible order,
block orders, the degree-first homogenizing order) is built as such a
matrix, so a single comparison kernel serves all of them.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import DimensionMismatch, RankDeficientOrder

LESS, EQUAL, GREATER = -1, 0, 1


def _full_rank(rows: tuple[tuple[int, ...], ...], n: int) -> bool:
    if n == 0:
        return True
    mat = [[Fraction(w) for w in row] for row in rows]
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [v * inv for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank == n


class MonomialOrder:
    """A total order on exponent vectors given by integer weight rows.

    The matrix must have full rank over the rationals so that vectors
    comparing equal on every row are actually equal.
    """

    __slots__ = ("rows", "nvars", "_classification", "_key_cache")

    def __init__(self, rows):
        rows = tuple(tuple(int(w) for w in row) for row in rows)
        if not rows and rows != ():
            raise DimensionMismatch("order needs at least one row")
        n = len(rows[0]) if rows else 0
        if any(len(row) != n for row in rows):
            raise DimensionMismatch("order rows have inconsistent lengths")
        if not _full_rank(rows, n):
            raise RankDeficientOrder("order matrix is rank-deficient")
        self.rows = rows
        self.nvars = n
        self._classification = None
        self._key_cache: dict = {}

    def sort_key(self, exp: tuple[int, ...]) -> tuple[int, ...]:
        """Weight-row image of ``exp``; tuples compare exactly like the order."""
        key = self._key_cache.get(exp)
        if key is None:
            if len(exp) != self.nvars:
                raise DimensionMismatch(
                    f"exponent of length {len(exp)} under an order on {self.nvars} variables"
                )
            key = tuple(sum(w * e for w, e in zip(row, exp)) for row in self.rows)
            self._key_cache[exp] = key
        return key

    def compare(self, a: tuple[int, ...], b: tuple[int, ...]) -> int:
        ka, kb = self.sort_key(a), self.sort_key(b)
        return (ka > kb) - (ka < kb)

    @property
    def classification(self) -> str:
        """'global' (1 minimal), 'local' (1 maximal) or 'mixed'."""
        if self._classification is None:
            zero = (0,) * self.nvars
            signs = set()
            for i in range(self.nvars):
                unit = tuple(1 if j == i else 0 for j in range(self.nvars))
                signs.add(self.compare(unit, zero))
            if signs <= {GREATER}:
                self._classification = "global"
            elif signs <= {LESS}:
                self._classification = "local"
            else:
                self._classification = "mixed"
        return self._classification

    @property
    def is_global(self) -> bool:
        return self.classification == "global"

    @property
    def is_local(self) -> bool:
        return self.classification == "local"

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"MonomialOrder({list(map(list, self.rows))})"


def compare_monomials(order: MonomialOrder, a, b) -> int:
    """Compare two exponent vectors under ``order``; -1/0/1."""
    return order.compare(tuple(a), tuple(b))


def _unit_rows(n: int, indices) -> list[tuple[int, ...]]:
    return [tuple(1 if j == i else 0 for j in range(n)) for i in indices]


def make_deglex(n: int, prefer_high: bool = False) -> MonomialOrder:
    """Degree-lexicographic order on ``n`` variables.

    Ties of equal total degree go to the lower-indexed variable by default;
    with ``prefer_high`` the higher-indexed variable wins instead.
    """
    if n < 1:
        if n == 0:
            return MonomialOrder(())
        raise DimensionMismatch("variable count must be non-negative")
    rows = [(1,) * n]
    if prefer_high:
        rows += _unit_rows(n, range(n - 1, 0, -1))
    else:
        rows += _unit_rows(n, range(n - 1))
    return MonomialOrder(rows)


def make_valuation_compatible(n: int) -> MonomialOrder:
    """The default local order: higher total degree compares smaller.

    Ties break toward the higher-indexed variable (x2 beats x1), realized as
    the opposite of plain deglex: first row all -1, then negated unit rows
    for the leading variables.
    """
    if n < 1:
        raise DimensionMismatch("variable count must be positive")
    rows = [(-1,) * n]
    rows += [tuple(-1 if j == i else 0 for j in range(n)) for i in range(n - 1)]
    return MonomialOrder(rows)


def make_block(outer: MonomialOrder, inner: MonomialOrder) -> MonomialOrder:
    """Block order: compare the first variable group by ``outer``, ties by ``inner``."""
    no, ni = outer.nvars, inner.nvars
    rows = [row + (0,) * ni for row in outer.rows]
    rows += [(0,) * no + row for row in inner.rows]
    return MonomialOrder(rows)


def make_homogenizing(x_order: MonomialOrder) -> MonomialOrder:
    """Degree-first order on (x, z) used after homogenizing with one extra variable.

    Total degree (including z) is compared first; ties fall back to the
    given order on the x-part alone, making the result degree-compatible
    hence global.
    """
    n = x_order.nvars
    rows = [(1,) * (n + 1)]
    rows += [row + (0,) for row in x_order.rows]
    return MonomialOrder(rows)


def make_order(kind: str, n: int, **kwargs) -> MonomialOrder:
    """Build one of the named orders; dispatcher used by the CLI layer."""
    if kind == "deglex":
        return make_deglex(n)
    if kind in ("deglex-hi", "deglex_high"):
        return make_deglex(n, prefer_high=True)
    if kind in ("valcomp", "valuation_compatible"):
        return make_valuation_compatible(n)
    if kind == "block":
        return make_block(kwargs["outer"], kwargs["inner"])
    if kind == "homogenizing":
        return make_homogenizing(kwargs["x_order"])
    raise ValueError(f"unknown order kind {kind!r}")
