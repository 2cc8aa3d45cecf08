"""Reduction calculus on spectral types and realizability classification.

The reduction step subtracts the defect d (sum of the marked multiplicities
minus (k-1) times the order) from one marked column per partition.  Marking
the first maximal column of every partition and iterating drives every
spectral type to one of three terminal situations: order one (rigid), a
fixed point (basic core), or a well-definedness failure (not realizable as
an irreducible tuple).  The module also decides rigidity, irreducible
realizability, basicness, fundamentality and the nilpotent variant, and
implements the exact existence test for prescribed conjugacy classes with
concrete rational eigenvalues.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .paramform import ParamForm
from .rootlattice import classify_root, root_of
from .spectype import (
    SpectralType,
    SpectralTypeError,
    canonicalize,
    divide,
    gcd_of,
    idx,
    pidx,
)


class WellDefinednessViolation(ValueError):
    """A reduction step would drive a multiplicity negative.

    Attributes ``position`` (the offending partition index) and ``defect``
    carry the failing data; inside a reduction this signals that the input
    is not irreducibly realizable.
    """

    def __init__(self, position: int, defect: int, m: SpectralType):
        self.position = position
        self.defect = defect
        self.m = m
        super().__init__(
            "column %d of %s is smaller than the defect %d"
            % (position, m, defect)
        )


class SchemeError(ValueError):
    """Invalid eigenvalue scheme (congruence or trace condition)."""


def d_ell(m: SpectralType, ells: Sequence[int]) -> int:
    """Reduction defect for marked columns ``ells`` (1-based, one per stored
    partition; columns beyond a partition read as 0)."""
    ells = tuple(ells)
    if len(ells) != m.npart:
        raise SpectralTypeError(
            "need %d column marks, got %d" % (m.npart, len(ells))
        )
    if any(l < 1 for l in ells):
        raise SpectralTypeError("column marks must be >= 1")
    k = m.npart - 1
    return sum(m.part(j, l) for j, l in enumerate(ells)) - (k - 1) * m.order


def partial_ell_raw(m: SpectralType, ells: Sequence[int]) -> SpectralType:
    """One reduction step at the marked columns, zero parts removed but
    partitions left unsorted and untrimmed.

    Well-defined only when every marked multiplicity is at least the
    defect.  With a negative defect the step grows the marked columns, so
    it also realises the inverse step.
    """
    d = d_ell(m, ells)
    rows = []
    for j, (row, l) in enumerate(zip(m.partitions, ells)):
        if m.part(j, l) < d:
            raise WellDefinednessViolation(j, d, m)
        padded = list(row) + [0] * (l - len(row))
        padded[l - 1] -= d
        rows.append(tuple(p for p in padded if p) or (0,))
    return SpectralType(rows, trim=False)


def partial_ell(m: SpectralType, ells: Sequence[int]) -> SpectralType:
    """Canonicalized reduction step at the marked columns."""
    return canonicalize(partial_ell_raw(m, ells))


def _pmax_marks(m: SpectralType) -> tuple[int, ...]:
    """First maximal column of every partition."""
    return tuple(row.index(max(row)) + 1 for row in m.partitions)


def dmax_value(m: SpectralType) -> int:
    """Defect of the maximal-column marking: sum of the partition maxima
    minus (k-1) times the order.  Nonpositive exactly on reduction fixed
    points."""
    k = m.npart - 1
    return sum(max(row) for row in m.partitions) - (k - 1) * m.order


def partial_max(m: SpectralType) -> tuple[tuple[int, ...], SpectralType]:
    """Reduction at the first maximal column of every partition.

    Returns the marks and the canonicalized output.  Order-1 input is a
    terminal and returned unchanged, as is any input whose defect is
    nonpositive (a fixed point; the order would not decrease).
    """
    ells = _pmax_marks(m)
    if m.order == 1:
        return ells, m
    if d_ell(m, ells) <= 0:
        return ells, m
    return ells, partial_ell(m, ells)


class Verdict(enum.Enum):
    RIGID = "rigid"
    REALIZABLE_NOT_RIGID = "realizable-not-rigid"
    NOT_REALIZABLE = "not-realizable"


@dataclass(frozen=True)
class ReductionStep:
    m: SpectralType
    ells: tuple[int, ...]
    d: int
    raw: SpectralType | None  # pre-canonical output; None when ill-defined
    out: SpectralType | None  # canonical output; equals m on a fixed point

    def to_json(self) -> dict:
        data = {"m": self.m.as_lists(), "ell": list(self.ells), "d": self.d}
        if self.raw is not None:
            data["raw"] = self.raw.as_lists()
        if self.out is not None:
            data["out"] = self.out.as_lists()
        return data


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[ReductionStep, ...]
    verdict: Verdict
    terminal: SpectralType

    def d_values(self) -> tuple[int, ...]:
        return tuple(s.d for s in self.steps)

    def to_json(self) -> dict:
        return {
            "steps": [s.to_json() for s in self.steps],
            "verdict": self.verdict.value,
            "terminal": self.terminal.as_lists(),
        }


def reduce(m: SpectralType) -> ReductionTrace:
    """Iterate the canonicalized maximal reduction until a terminal.

    Terminals: order one (rigid; this forces self-index 2), a fixed point
    with nonpositive defect (realizable-not-rigid when the tuple is
    indivisible or has negative self-index, not realizable otherwise), or a
    well-definedness failure (not realizable).  The order strictly drops
    while the defect is positive, so the loop terminates.
    """
    steps: list[ReductionStep] = []
    cur = canonicalize(m)
    while True:
        if cur.order == 1:
            verdict = Verdict.RIGID
            break
        ells = _pmax_marks(cur)
        d = d_ell(cur, ells)
        if d <= 0:
            steps.append(ReductionStep(cur, ells, d, cur, cur))
            if gcd_of(cur) == 1 or idx(cur) < 0:
                verdict = Verdict.REALIZABLE_NOT_RIGID
            else:
                verdict = Verdict.NOT_REALIZABLE
            break
        try:
            raw = partial_ell_raw(cur, ells)
        except WellDefinednessViolation:
            steps.append(ReductionStep(cur, ells, d, None, None))
            verdict = Verdict.NOT_REALIZABLE
            break
        nxt = canonicalize(raw)
        steps.append(ReductionStep(cur, ells, d, raw, nxt))
        cur = nxt
    return ReductionTrace(tuple(steps), verdict, cur)


@dataclass(frozen=True)
class Classification:
    indivisible: bool
    rigid: bool
    irreducibly_realizable: bool
    basic: bool
    fundamental: bool

    def to_json(self) -> dict:
        return {
            "indivisible": self.indivisible,
            "rigid": self.rigid,
            "irreducibly_realizable": self.irreducibly_realizable,
            "basic": self.basic,
            "fundamental": self.fundamental,
        }


def classify(m: SpectralType) -> Classification:
    """Realizability record of a spectral type.

    A divisible tuple c*b is irreducibly realizable exactly when its
    indivisible core b is and the self-index is negative; it is fundamental
    exactly when the core is basic with negative self-index.
    """
    c = canonicalize(m)
    g = gcd_of(c)
    trace = reduce(c)
    irr = trace.verdict is not Verdict.NOT_REALIZABLE
    basic = g == 1 and dmax_value(c) <= 0
    if g == 1:
        fundamental = basic
    else:
        core = canonicalize(divide(c, g))
        fundamental = dmax_value(core) <= 0 and idx(core) < 0
    return Classification(
        indivisible=g == 1,
        rigid=trace.verdict is Verdict.RIGID,
        irreducibly_realizable=irr,
        basic=basic,
        fundamental=fundamental,
    )


def reflect_by_rigid(
    m: SpectralType, mr: SpectralType, *, check: bool = True
) -> SpectralType:
    """Subtract idx(m, mr) copies of the rigid tuple ``mr`` componentwise.

    This is the reflection of ``m`` in the norm-2 lattice vector of ``mr``
    and preserves the self-index; it maps irreducibly realizable tuples to
    irreducibly realizable tuples whenever ord m > idx(m, mr) * ord mr
    (automatic when m is not rigid).  Columns are aligned as stored, the
    shorter tuple padded with trivial partitions and zero columns.
    """
    if check:
        if not classify(mr).rigid:
            raise SpectralTypeError("%s is not rigid" % mr)
        if not classify(m).irreducibly_realizable:
            raise SpectralTypeError("%s is not irreducibly realizable" % m)
    c = idx(m, mr)
    if m.order <= c * mr.order:
        raise SpectralTypeError(
            "order %d too small for reflection step %d * %d"
            % (m.order, c, mr.order)
        )
    rows = []
    nrows = max(m.npart, mr.npart)
    for j in range(nrows):
        p = m.partitions[j] if j < m.npart else (m.order,)
        q = mr.partitions[j] if j < mr.npart else (mr.order,)
        width = max(len(p), len(q))
        p = p + (0,) * (width - len(p))
        q = q + (0,) * (width - len(q))
        row = tuple(a - c * b for a, b in zip(p, q))
        if any(x < 0 for x in row):
            raise SpectralTypeError(
                "reflection of %s by %s leaves partition %d negative"
                % (m, mr, j)
            )
        rows.append(tuple(x for x in row if x) or (0,))
    out = SpectralType(rows, trim=False)
    assert idx(out) == idx(m)
    return out


_SPECIAL_KINDS = ("D4", "E6", "E7", "E8")


def special_family(kind: str, scale: int) -> SpectralType:
    """The four distinguished families of index 2 - 2*scale.

    For scale m they are (parts listed per partition, zeros removed):
    D4: m,m-1,1 / m,m / m,m / m,m;  E6: m,m,m-1,1 / m^3 / m^3;
    E7: m^3,m-1,1 / m^4 / 2m,2m;  E8: m^5,m-1,1 / 2m,2m,2m / 3m,3m.
    Their orders are 2m, 3m, 4m and 6m.
    """
    kind = kind.upper()
    if kind not in _SPECIAL_KINDS:
        raise SpectralTypeError("kind must be one of %s" % (_SPECIAL_KINDS,))
    if scale < 1:
        raise SpectralTypeError("scale must be >= 1")
    s = scale
    rows = {
        "D4": ((s, s - 1, 1), (s, s), (s, s), (s, s)),
        "E6": ((s, s, s - 1, 1), (s, s, s), (s, s, s)),
        "E7": ((s, s, s, s - 1, 1), (s, s, s, s), (2 * s, 2 * s)),
        "E8": ((s, s, s, s, s, s - 1, 1), (2 * s, 2 * s, 2 * s), (3 * s, 3 * s)),
    }[kind]
    return SpectralType(
        (tuple(p for p in row if p) for row in rows), trim=False
    )


def nilpotent_realizable(m: SpectralType) -> bool:
    """Existence of an irreducible zero-sum tuple with all eigenvalues zero
    and the prescribed multiplicities.

    Holds exactly for order one, or for fundamental tuples other than the
    special families at scale >= 2.
    """
    if m.order == 1:
        return True
    if not classify(m).fundamental:
        return False
    c = canonicalize(m)
    for kind, unit in zip(_SPECIAL_KINDS, (2, 3, 4, 6)):
        if c.order % unit == 0:
            scale = c.order // unit
            if scale >= 2 and canonicalize(special_family(kind, scale)) == c:
                return False
    return True


class Scheme:
    """A spectral type with an eigenvalue attached to every column.

    Eigenvalues are rational-affine forms in named parameters; constant
    forms describe concrete schemes.  The table must be congruent to the
    shape (one form per stored column).
    """

    __slots__ = ("shape", "eigenvalues")

    def __init__(self, shape: SpectralType, eigenvalues):
        rows = tuple(
            tuple(ParamForm.of(e) for e in row) for row in eigenvalues
        )
        if len(rows) != shape.npart or any(
            len(r) != len(p) for r, p in zip(rows, shape.partitions)
        ):
            raise SchemeError("eigenvalue table is not congruent to the shape")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "eigenvalues", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Scheme is immutable")

    @classmethod
    def generic(cls, shape: SpectralType, prefix: str = "l") -> "Scheme":
        """Scheme with an independent parameter per column."""
        return cls(
            shape,
            tuple(
                tuple(
                    ParamForm.var("%s%d_%d" % (prefix, j, v + 1))
                    for v in range(len(row))
                )
                for j, row in enumerate(shape.partitions)
            ),
        )

    def trace_form(self) -> ParamForm:
        """Sum of multiplicity times eigenvalue over all columns."""
        total = ParamForm(0)
        for row, evs in zip(self.shape.partitions, self.eigenvalues):
            for p, e in zip(row, evs):
                total = total + p * e
        return total

    def is_constant(self) -> bool:
        return all(e.is_constant() for row in self.eigenvalues for e in row)

    def constant_table(self) -> tuple[tuple[Fraction, ...], ...]:
        if not self.is_constant():
            raise SchemeError("scheme has non-constant eigenvalues")
        return tuple(
            tuple(e.const for e in row) for row in self.eigenvalues
        )

    def __eq__(self, other):
        return (
            isinstance(other, Scheme)
            and self.shape == other.shape
            and self.eigenvalues == other.eigenvalues
        )

    def __repr__(self):
        return "Scheme(%r, %r)" % (self.shape, self.eigenvalues)


def _sub_rows(row: Sequence[int], s: int) -> list[tuple[int, ...]]:
    """Componentwise sub-rows of ``row`` with sum ``s``."""
    out: list[tuple[int, ...]] = []
    acc: list[int] = []

    def rec(i: int, left: int):
        if i == len(row):
            if left == 0:
                out.append(tuple(acc))
            return
        if left > sum(row[i:]):
            return
        for c in range(min(row[i], left), -1, -1):
            acc.append(c)
            rec(i + 1, left - c)
            acc.pop()

    rec(0, s)
    return out


def _grid_sub(a, b):
    rows = []
    for p, q in zip(a, b):
        row = tuple(x - y for x, y in zip(p, q))
        if any(x < 0 for x in row):
            return None
        rows.append(row)
    return tuple(rows)


def _zero_sum_parts(m: SpectralType, lam) -> list[tuple]:
    """Proper componentwise sub-grids with equal row sums whose eigenvalue
    sum vanishes.

    Eigenvalues are cleared to integers once; the last row is resolved by
    hash lookup on the needed complement, the others by depth-first search
    pruned with achievable-range bounds.
    """
    n = m.order
    rows = m.partitions
    den = 1
    for lrow in lam:
        for l in lrow:
            den = den * l.denominator // math.gcd(den, l.denominator)
    ilam = [[int(l * den) for l in lrow] for lrow in lam]
    parts = []
    for s in range(1, n):
        options = []
        for j, row in enumerate(rows):
            opts = [
                (sub, sum(c * l for c, l in zip(sub, ilam[j]) if c))
                for sub in _sub_rows(row, s)
            ]
            options.append(opts)
        if any(not o for o in options):
            continue
        lo = [min(v for _, v in o) for o in options]
        hi = [max(v for _, v in o) for o in options]
        suf_lo = [0] * (len(rows) + 1)
        suf_hi = [0] * (len(rows) + 1)
        for j in range(len(rows) - 1, -1, -1):
            suf_lo[j] = suf_lo[j + 1] + lo[j]
            suf_hi[j] = suf_hi[j + 1] + hi[j]
        last_index: dict[int, list[tuple[int, ...]]] = {}
        for sub, val in options[-1]:
            last_index.setdefault(val, []).append(sub)
        depth = len(rows) - 1
        chosen: list[tuple[int, ...]] = []

        def rec(j, total):
            if j == depth:
                for sub in last_index.get(-total, ()):
                    parts.append(tuple(chosen) + (sub,))
                return
            if total + suf_lo[j] > 0 or total + suf_hi[j] < 0:
                return
            for sub, val in options[j]:
                chosen.append(sub)
                rec(j + 1, total + val)
                chosen.pop()

        rec(0, 0)
    return parts


def ds_existence(s: Scheme, *, bound: int = 12) -> bool:
    """Irreducible zero-sum realizability of a concrete rational scheme.

    Requires the exact trace condition.  The scheme is realizable exactly
    when the lattice vector of the shape is a positive root and no
    decomposition of the shape into at least two positive-root summands,
    all of whose eigenvalue sums vanish, reaches the accessory-parameter
    count of the whole (the count is superadditive on violating splits).
    The decomposition search runs over componentwise sub-grids and is
    memoized; exponential worst case, intended for small orders.
    """
    m = s.shape
    if m.order > bound:
        raise SchemeError(
            "order %d exceeds the existence-test bound %d" % (m.order, bound)
        )
    if not s.is_constant():
        raise SchemeError("existence test needs constant rational eigenvalues")
    trace = s.trace_form().const
    if trace != 0:
        raise SchemeError("trace condition violated: sum is %s" % trace)
    if not classify_root(root_of(m)).is_positive:
        return False
    lam = s.constant_table()
    candidates = []
    for grid in _zero_sum_parts(m, lam):
        st = SpectralType(grid, trim=False)
        if classify_root(root_of(st)).is_positive:
            candidates.append((grid, pidx(st)))
    candidates.sort()
    target = pidx(m)
    full = tuple(m.partitions)
    memo: dict = {}

    def best(rem, i):
        """Maximal accessory-parameter total over decompositions of rem."""
        if all(all(x == 0 for x in row) for row in rem):
            return 0
        if i >= len(candidates):
            return None
        key = (rem, i)
        if key in memo:
            return memo[key]
        res = best(rem, i + 1)
        left = _grid_sub(rem, candidates[i][0])
        if left is not None:
            deeper = best(left, i)
            if deeper is not None:
                cand = candidates[i][1] + deeper
                if res is None or cand > res:
                    res = cand
        memo[key] = res
        return res

    achieved = best(full, 0)
    return achieved is None or achieved < target
