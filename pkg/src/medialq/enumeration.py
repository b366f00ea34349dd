"""Exhaustive generation of small Latin squares, with censuses.

Two independently written backtracking generators (row-filling and
column-filling) cross-check each other's counts.  Column usage is tracked in
a single integer with n bits per column, so compatibility of a whole
candidate row is one AND.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .equations import (BalancedEquation, CatalogEntry, pair_catalog,
                        satisfies, single_catalog)
from .errors import MedialqError, OrderTooLargeError
from .linearize import LinearizationError, linearize_pair
from .tables import QuasigroupTable, check_property

DEFAULT_ORDER_CAP = 5
DEFAULT_PAIR_ORDER_CAP = 3


def _row_candidates(n: int):
    """(permutation, packed column mask) for every row candidate."""
    out = []
    for p in itertools.permutations(range(n)):
        mask = 0
        for j, v in enumerate(p):
            mask |= 1 << (j * n + v)
        out.append((p, mask))
    return out


def enumerate_quasigroups(order: int, force: bool = False):
    """Yield every Latin square of the given order exactly once, in row-major
    lexicographic order."""
    if order < 1:
        raise MedialqError("order must be positive")
    if order > DEFAULT_ORDER_CAP and not force:
        raise OrderTooLargeError(
            f"full enumeration capped at order {DEFAULT_ORDER_CAP}; use force")
    candidates = _row_candidates(order)
    rows: list[tuple[int, ...]] = []

    def rec(used: int):
        if len(rows) == order:
            yield QuasigroupTable(tuple(rows))
            return
        for perm, mask in candidates:
            if not used & mask:
                rows.append(perm)
                yield from rec(used | mask)
                rows.pop()

    yield from rec(0)


def count_quasigroups_rowwise(order: int, force: bool = False) -> int:
    """Count Latin squares by row-filling backtracking, without building tables."""
    if order > DEFAULT_ORDER_CAP and not force:
        raise OrderTooLargeError(
            f"full enumeration capped at order {DEFAULT_ORDER_CAP}; use force")
    candidates = [mask for _, mask in _row_candidates(order)]

    def rec(depth: int, used: int) -> int:
        if depth == order:
            return 1
        return sum(rec(depth + 1, used | mask)
                   for mask in candidates if not used & mask)

    return rec(0, 0)


def count_quasigroups_colwise(order: int, force: bool = False) -> int:
    """Count Latin squares by column-filling backtracking.

    Written independently of the row-wise generator: columns are filled left
    to right with permutations checked against per-row usage packed as n bits
    per row.
    """
    if order > DEFAULT_ORDER_CAP and not force:
        raise OrderTooLargeError(
            f"full enumeration capped at order {DEFAULT_ORDER_CAP}; use force")
    columns = []
    for perm in itertools.permutations(range(order)):
        packed = 0
        for i in range(order):
            packed |= 1 << (i * order + perm[i])
        columns.append(packed)

    def fill(col: int, used: int) -> int:
        if col == order:
            return 1
        total = 0
        for packed in columns:
            if used & packed == 0:
                total += fill(col + 1, used | packed)
        return total

    return fill(0, 0)


@dataclass(frozen=True)
class EnumerationSpec:
    """What to enumerate: order, optional single-operation filter, and mode
    ("stream", "count" or "census")."""

    order: int
    equation: BalancedEquation | None = None
    mode: str = "stream"
    force: bool = False


def run_spec(spec: EnumerationSpec):
    if spec.mode == "count":
        if spec.equation is None:
            return count_quasigroups_rowwise(spec.order, spec.force)
        return sum(1 for _ in run_spec(EnumerationSpec(
            spec.order, spec.equation, "stream", spec.force)))
    if spec.mode == "stream":
        stream = enumerate_quasigroups(spec.order, spec.force)
        if spec.equation is None:
            return stream
        eq = spec.equation
        if len(eq.ops) != 1:
            raise MedialqError("stream filters take single-operation equations")
        op = eq.ops[0]
        return (q for q in stream if satisfies(eq, {op: q}) is True)
    if spec.mode == "census":
        return census_single(spec.order, force=spec.force)
    raise MedialqError(f"unknown enumeration mode {spec.mode!r}")


def census_single(order: int, entries: list[CatalogEntry] | None = None,
                  force: bool = False) -> dict[str, int]:
    """Per-catalog-entry satisfaction counts over all order-n quasigroups,
    in catalog label order."""
    if entries is None:
        entries = single_catalog()
    counts = {e.label: 0 for e in entries}
    for q in enumerate_quasigroups(order, force):
        for e in entries:
            if satisfies(e.equation, {"f": q}) is True:
                counts[e.label] += 1
    return counts


@dataclass(frozen=True)
class PairCensusRow:
    count: int
    commutative_pairs: int
    linear_pairs: int


def census_pairs(order: int, entries: list[CatalogEntry] | None = None,
                 force: bool = False) -> dict[str, PairCensusRow]:
    """Satisfaction counts over all ordered pairs of order-n quasigroups,
    cross-tabulated with commutativity and pair-linearizability."""
    if order > DEFAULT_PAIR_ORDER_CAP and not force:
        raise OrderTooLargeError(
            f"pair census capped at order {DEFAULT_PAIR_ORDER_CAP}; use force")
    if entries is None:
        entries = pair_catalog()
    squares = list(enumerate_quasigroups(order, force))
    commutative = [check_property(q, "commutative") for q in squares]
    out = {}
    for e in entries:
        count = comm = linear = 0
        for i, f in enumerate(squares):
            for j, g in enumerate(squares):
                if satisfies(e.equation, {"f": f, "g": g}) is not True:
                    continue
                count += 1
                if commutative[i] and commutative[j]:
                    comm += 1
                try:
                    linearize_pair(f, g, 0)
                except LinearizationError:
                    pass
                else:
                    linear += 1
        out[e.label] = PairCensusRow(count, comm, linear)
    return out
