"""Exhaustive enumeration of rigid and basic spectral-type classes.

Candidates are multisets of nontrivial monotone partitions of a fixed order
n, generated in descending lexicographic order (so every candidate is
already canonical and no two candidates coincide).  The self-index pins the
total of the partition weights n^2 - sum(parts^2):

  * rigid classes: total weight 2n^2 - 2, then the reduction chain must
    reach order one;
  * basic classes of index p: total weight 2n^2 - p, with the fixed-point
    condition equivalent to sum over partitions of
    sum_{v>=2} (m_1 - m_v) m_v <= -p, and the tuple indivisible.

Each nontrivial partition weighs at least 2n - 2, which bounds the number
of partitions; orders of basic tuples of index p are bounded by 6 - 3p.
"""

from __future__ import annotations

import math
import multiprocessing
from dataclasses import dataclass
from functools import lru_cache

from .spectype import SpectralType, to_text


class EnumerationError(ValueError):
    pass


@lru_cache(maxsize=None)
def _nontrivial_partitions(n: int) -> tuple[tuple[int, ...], ...]:
    """Monotone partitions of n with at least two parts, descending lex."""
    out: list[tuple[int, ...]] = []

    def rec(left, cap, acc):
        if left == 0:
            if len(acc) > 1:
                out.append(tuple(acc))
            return
        for p in range(min(cap, left), 0, -1):
            acc.append(p)
            rec(left - p, p, acc)
            acc.pop()

    rec(n, n - 1 if n > 1 else 1, [])
    out.sort(reverse=True)
    return tuple(out)


def _weight(n: int, row: tuple[int, ...]) -> int:
    return n * n - sum(p * p for p in row)


def _excess(row: tuple[int, ...]) -> int:
    """sum_{v>=2} (m_1 - m_v) m_v for a monotone partition."""
    return sum((row[0] - p) * p for p in row[1:])


def _reduces_to_one(rows: tuple[tuple[int, ...], ...], n: int) -> bool:
    """Run the maximal reduction chain on monotone rows; True when it
    reaches order one.  Rows stay monotone; trivial rows are dropped."""
    rows = [list(r) for r in rows]
    while True:
        if n == 1:
            return True
        if not rows:
            return False
        d = sum(r[0] for r in rows) - (len(rows) - 2) * n
        if d <= 0:
            return False
        n -= d
        nxt = []
        for r in rows:
            first = r[0] - d
            if first < 0:
                return False
            rest = r[1:]
            if first:
                at = len(rest)
                while at and rest[at - 1] < first:
                    at -= 1
                rest.insert(at, first)
            if rest and rest != [n]:
                nxt.append(rest)
        rows = nxt


def _multisets(parts, weights, total, extra_cap=None, extras=None):
    """Non-decreasing index multisets with the prescribed total weight.

    ``extras``/``extra_cap`` optionally bound a second additive statistic
    (used for the basic fixed-point condition).
    """
    size = len(parts)
    minw = [0] * (size + 1)
    cur = None
    for i in range(size - 1, -1, -1):
        cur = weights[i] if cur is None else min(cur, weights[i])
        minw[i] = cur
    results = []
    acc: list[int] = []

    def rec(j0, remaining, budget):
        if remaining == 0:
            results.append(tuple(acc))
            return
        if j0 >= size or remaining < minw[j0]:
            return
        for j in range(j0, size):
            w = weights[j]
            if w > remaining:
                continue
            if extras is not None:
                e = extras[j]
                if e > budget:
                    continue
            else:
                e = 0
            rest = remaining - w
            if rest and rest < minw[j]:
                continue
            acc.append(j)
            rec(j, rest, budget - e)
            acc.pop()

    rec(0, total, extra_cap if extra_cap is not None else 0)
    return results


@dataclass(frozen=True)
class EnumerationReport:
    """Deduplicated canonical classes plus counts."""

    kind: str  # "rigid" or "basic"
    parameter: int  # the order n, resp. the index p
    items: tuple[SpectralType, ...]
    total: int
    by_npart: tuple[tuple[int, int], ...]  # (#partitions, count), sorted

    def count(self, npart: int) -> int:
        return dict(self.by_npart).get(npart, 0)

    def to_lines(self) -> list[str]:
        return ["%d:%s" % (m.order, to_text(m)) for m in self.items]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "parameter": self.parameter,
            "total": self.total,
            "by_npart": [list(pair) for pair in self.by_npart],
            "items": [m.as_lists() for m in self.items],
        }


def _make_report(kind: str, parameter: int, grids) -> EnumerationReport:
    items = tuple(
        SpectralType(rows, trim=False) for rows in sorted(set(grids))
    )
    by_npart: dict[int, int] = {}
    for m in items:
        by_npart[m.npart] = by_npart.get(m.npart, 0) + 1
    return EnumerationReport(
        kind, parameter, items, len(items), tuple(sorted(by_npart.items()))
    )


def _rigid_grids(n: int, first: int | None = None):
    parts = _nontrivial_partitions(n)
    weights = tuple(_weight(n, row) for row in parts)
    found = []
    for combo in _multisets(parts, weights, 2 * n * n - 2):
        if first is not None and combo[0] != first:
            continue
        rows = tuple(parts[j] for j in combo)
        if _reduces_to_one(rows, n):
            found.append(rows)
    return found


def _rigid_chunk(args):
    n, first = args
    return _rigid_grids(n, first)


def enumerate_rigid(
    n: int, *, max_order: int = 14, jobs: int = 1
) -> EnumerationReport:
    """All canonical rigid classes of order n.

    Candidates are the multisets of nontrivial partitions with self-index 2
    (at most n+1 partitions); rigidity is then the success of the reduction
    chain.  ``max_order`` guards the combinatorial blow-up; raise it for
    long-running jobs.  ``jobs`` > 1 splits the space by the first
    partition across processes.
    """
    if n < 2:
        raise EnumerationError("order must be >= 2; order 1 has the single class 1")
    if n > max_order:
        raise EnumerationError(
            "order %d exceeds max_order=%d; pass a larger bound explicitly"
            % (n, max_order)
        )
    if jobs > 1:
        firsts = range(len(_nontrivial_partitions(n)))
        with multiprocessing.Pool(jobs) as pool:
            chunks = pool.map(_rigid_chunk, [(n, f) for f in firsts])
        grids = [rows for chunk in chunks for rows in chunk]
    else:
        grids = _rigid_grids(n)
    return _make_report("rigid", n, grids)


def _basic_grids(p: int, n: int, first: int | None = None):
    parts = _nontrivial_partitions(n)
    usable = [
        (row, _weight(n, row), _excess(row))
        for row in parts
        if _excess(row) <= -p
    ]
    if not usable:
        return []
    rows_ = tuple(u[0] for u in usable)
    weights = tuple(u[1] for u in usable)
    excesses = tuple(u[2] for u in usable)
    found = []
    for combo in _multisets(
        rows_, weights, 2 * n * n - p, extra_cap=-p, extras=excesses
    ):
        if first is not None and combo[0] != first:
            continue
        grid = tuple(rows_[j] for j in combo)
        if math.gcd(*(q for row in grid for q in row)) == 1:
            found.append(grid)
    return found


def _basic_chunk(args):
    p, n, first = args
    return _basic_grids(p, n, first)


def enumerate_basic(p: int, *, jobs: int = 1) -> EnumerationReport:
    """All canonical basic classes of self-index p (p <= 0, even).

    Basicness of a monotone indivisible tuple with index p amounts to the
    per-partition excesses summing to at most -p, and the order is bounded
    by 6 - 3p, so the search is finite.
    """
    if p > 0 or p % 2:
        raise EnumerationError("index must be an even integer <= 0")
    grids = []
    orders = range(2, 6 - 3 * p + 1)
    if jobs > 1:
        tasks = [
            (p, n, f)
            for n in orders
            for f in range(len(_nontrivial_partitions(n)))
        ]
        with multiprocessing.Pool(jobs) as pool:
            chunks = pool.map(_basic_chunk, tasks)
        for chunk in chunks:
            grids.extend(chunk)
    else:
        for n in orders:
            grids.extend(_basic_grids(p, n))
    return _make_report("basic", p, grids)


def count_table(max_n: int, max_p: int, *, jobs: int = 1) -> dict:
    """Aggregated counts: rigid classes by order (total and triples) for
    2 <= n <= max_n, and basic classes by even index down to max_p (total,
    triples and 4-tuples)."""
    rigid_rows = []
    for n in range(2, max_n + 1):
        rep = enumerate_rigid(n, max_order=max(max_n, 14), jobs=jobs)
        rigid_rows.append((n, rep.count(3), rep.total))
    basic_rows = []
    p = 0
    while p >= max_p:
        rep = enumerate_basic(p, jobs=jobs)
        basic_rows.append((p, rep.total, rep.count(3), rep.count(4)))
        p -= 2
    return {"rigid": rigid_rows, "basic": basic_rows}
