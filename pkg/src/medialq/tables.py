"""Finite quasigroup Cayley tables: validation, division, derived properties, isotopy.

Elements are always encoded as 0..n-1.  All types are immutable values; every
operation here is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import MedialqError

#: Largest order accepted by validate_table without complaint.  Brute-force
#: n**4 equation checks stay around 10**6 at this size.
DEFAULT_MAX_ORDER = 32


class TableError(MedialqError):
    """A Cayley table could not be constructed."""


class NotLatinError(TableError):
    """The array is not a Latin square.

    ``kind`` is ``"row"`` or ``"col"``; ``index`` names the offending line and
    ``value`` is the first duplicated entry in row-major scan order.
    """

    def __init__(self, kind: str, index: int, value: int):
        self.kind = kind
        self.index = index
        self.value = value
        super().__init__(f"{kind} {index} duplicates value {value}")


@dataclass(frozen=True)
class Mapping:
    """A bijection on {0, ..., n-1}, stored as its tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(n)):
            raise MedialqError(f"not a permutation of 0..{n - 1}: {self.images!r}")

    @property
    def order(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def inverse(self) -> "Mapping":
        inv = [0] * len(self.images)
        for i, y in enumerate(self.images):
            inv[y] = i
        return Mapping(tuple(inv))

    def compose(self, other: "Mapping") -> "Mapping":
        """Right-to-left composition: ``a.compose(b)(x) == a(b(x))``."""
        return Mapping(tuple(self.images[y] for y in other.images))

    @staticmethod
    def identity(n: int) -> "Mapping":
        return Mapping(tuple(range(n)))

    @staticmethod
    def from_callable(n: int, fn: Callable[[int], int]) -> "Mapping":
        return Mapping(tuple(fn(x) for x in range(n)))


def _scan_latin(cells: tuple[tuple[int, ...], ...]) -> None:
    n = len(cells)
    if n == 0:
        raise TableError("empty table")
    if any(len(row) != n for row in cells):
        raise TableError("table is not square")
    row_seen = [0] * n
    col_seen = [0] * n
    for i in range(n):
        for j in range(n):
            v = cells[i][j]
            if not isinstance(v, int) or not 0 <= v < n:
                raise TableError(f"entry at ({i},{j}) out of range [0,{n}): {v!r}")
            bit = 1 << v
            if row_seen[i] & bit:
                raise NotLatinError("row", i, v)
            if col_seen[j] & bit:
                raise NotLatinError("col", j, v)
            row_seen[i] |= bit
            col_seen[j] |= bit


@dataclass(frozen=True)
class QuasigroupTable:
    """An order-n Cayley table whose rows and columns are permutations."""

    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        _scan_latin(self.cells)

    @property
    def order(self) -> int:
        return len(self.cells)

    def __call__(self, a: int, b: int) -> int:
        return self.cells[a][b]


def validate_table(cells: Iterable[Iterable[int]],
                   max_order: int = DEFAULT_MAX_ORDER) -> QuasigroupTable:
    """Validate an integer array as a Latin square and freeze it.

    Raises NotLatinError on the first row/column duplicate in row-major scan
    order, TableError for shape or range problems.
    """
    frozen = tuple(tuple(row) for row in cells)
    if len(frozen) > max_order:
        raise TableError(f"order {len(frozen)} exceeds the configured cap {max_order}")
    return QuasigroupTable(frozen)


def table_from_function(n: int, fn: Callable[[int, int], int]) -> QuasigroupTable:
    return validate_table([[fn(x, y) for y in range(n)] for x in range(n)])


def left_divide(q: QuasigroupTable, a: int, b: int) -> int:
    """The unique x with q(a, x) = b."""
    return q.cells[a].index(b)


def right_divide(q: QuasigroupTable, a: int, b: int) -> int:
    """The unique y with q(y, a) = b."""
    for y in range(q.order):
        if q.cells[y][a] == b:
            return y
    raise AssertionError("unreachable: Latin invariant guarantees a solution")


def check_property(q: QuasigroupTable, prop: str) -> bool:
    """Brute-force check of 'commutative', 'associative' or 'idempotent'."""
    t = q.cells
    rng = range(q.order)
    if prop == "commutative":
        return all(t[x][y] == t[y][x] for x in rng for y in rng)
    if prop == "associative":
        return all(t[t[x][y]][z] == t[x][t[y][z]] for x in rng for y in rng for z in rng)
    if prop == "idempotent":
        return all(t[x][x] == x for x in rng)
    raise MedialqError(f"unknown property {prop!r}")


def principal_isotope(q: QuasigroupTable, e: int) -> QuasigroupTable:
    """The loop isotope x*y = q(R^-1(x), L^-1(y)) with R(x)=q(x,e), L(y)=q(e,y).

    The result always has the two-sided identity q(e, e).
    """
    n = q.order
    rinv = Mapping(tuple(q.cells[x][e] for x in range(n))).inverse().images
    linv = Mapping(q.cells[e]).inverse().images
    return QuasigroupTable(tuple(
        tuple(q.cells[rinv[x]][linv[y]] for y in range(n)) for x in range(n)))


def apply_isotopy(q: QuasigroupTable, alpha: Mapping, beta: Mapping,
                  gamma: Mapping) -> QuasigroupTable:
    """The isotope g(x,y) = gamma(q(alpha^-1(x), beta^-1(y)))."""
    n = q.order
    if not alpha.order == beta.order == gamma.order == n:
        raise MedialqError("isotopy mappings must have the same order as the table")
    ainv = alpha.inverse().images
    binv = beta.inverse().images
    g = gamma.images
    return QuasigroupTable(tuple(
        tuple(g[q.cells[ainv[x]][binv[y]]] for y in range(n)) for x in range(n)))
