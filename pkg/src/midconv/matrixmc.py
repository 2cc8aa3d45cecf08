"""Zero-sum tuples of rational matrices: normal forms, conjugacy-class data,
orbit dimensions, and addition / convolution / middle convolution.

Everything is exact rational arithmetic.  The middle convolution of a tuple
(A_0,...,A_k) with respect to parameters (mu_0,...,mu_k) shifts by -mu',
builds the size-kn convolution blocks at the total parameter, passes to the
quotient by the invariant subspace spanned by the blockwise kernels and the
kernel of the zeroth block, and shifts by -mu' again; the eigenvalue
multiplicity data of the result is the marked-column reduction of the input
data when the parameter total is nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy

from .katz import Scheme, Verdict, reduce as katz_reduce
from .linalg import (
    LinAlgError,
    RationalMatrix,
    extend_basis,
    from_columns,
    hstack,
    independent_columns,
    vstack,
)
from .spectype import SpectralType


class IrrationalEigenvalueError(ValueError):
    """The characteristic polynomial does not split over the rationals."""


class McAssumptionError(ValueError):
    """Middle-convolution kernel/image assumptions fail; carries the report."""

    def __init__(self, report: "McReport"):
        self.report = report
        super().__init__(
            "middle convolution assumptions violated: %s"
            % "; ".join(
                "%s at i=%d, tau=%s" % (kind, i, tau)
                for kind, i, tau in report.violations
            )
        )


class DegenerateSchemeError(ValueError):
    """Eigenvalue scheme too special for the requested construction."""


class MatrixTuple:
    """Square rational matrices (A_0,...,A_k) of equal size with zero sum."""

    __slots__ = ("matrices",)

    def __init__(self, matrices: Sequence[RationalMatrix]):
        mats = tuple(
            m if isinstance(m, RationalMatrix) else RationalMatrix(m)
            for m in matrices
        )
        if len(mats) < 2:
            raise LinAlgError("a tuple needs at least two matrices")
        n = mats[0].nrows
        if any(not m.is_square() or m.nrows != n for m in mats):
            raise LinAlgError("matrices must be square and of equal size")
        total = mats[0]
        for m in mats[1:]:
            total = total + m
        if not total.is_zero():
            raise LinAlgError("matrices must sum to zero")
        object.__setattr__(self, "matrices", mats)

    def __setattr__(self, name, value):
        raise AttributeError("MatrixTuple is immutable")

    @property
    def size(self) -> int:
        return self.matrices[0].nrows

    @property
    def k(self) -> int:
        return len(self.matrices) - 1

    def __eq__(self, other) -> bool:
        return isinstance(other, MatrixTuple) and self.matrices == other.matrices

    def __repr__(self) -> str:
        return "MatrixTuple(size=%d, k=%d)" % (self.size, self.k)

    def to_json(self) -> list:
        return [m.to_json() for m in self.matrices]


def normal_form(parts: Sequence[int], eigvals: Sequence) -> RationalMatrix:
    """Block upper-bidiagonal normal form for eigenvalue multiplicities.

    Diagonal blocks eig_i * I of sizes ``parts``; the block right above the
    diagonal is the rectangular identity.  Non-monotone multiplicities are
    stably permuted to non-increasing order together with their eigenvalues.
    """
    if len(parts) != len(eigvals):
        raise LinAlgError("need one eigenvalue per part")
    if any(p < 1 for p in parts):
        raise LinAlgError("parts must be positive")
    order = sorted(range(len(parts)), key=lambda i: -parts[i])
    parts = [parts[i] for i in order]
    eigvals = [Fraction(eigvals[i]) for i in order]
    n = sum(parts)
    offsets = []
    at = 0
    for p in parts:
        offsets.append(at)
        at += p
    rows = [[Fraction(0)] * n for _ in range(n)]
    for b, (p, lam) in enumerate(zip(parts, eigvals)):
        o = offsets[b]
        for t in range(p):
            rows[o + t][o + t] = lam
        if b + 1 < len(parts):
            q = parts[b + 1]
            for t in range(q):
                rows[o + t][offsets[b + 1] + t] = Fraction(1)
    return RationalMatrix(rows)


def jordan_cell(size: int, eig) -> RationalMatrix:
    """Single Jordan block, as the normal form of all-ones multiplicities."""
    return normal_form([1] * size, [eig] * size)


def rational_eigenvalues(a: RationalMatrix) -> dict[Fraction, int]:
    """Eigenvalues with algebraic multiplicities; the characteristic
    polynomial must split over the rationals."""
    coeffs = a.charpoly()
    x = sympy.Symbol("x")
    poly = sympy.Poly(
        sum(sympy.Rational(c.numerator, c.denominator) * x ** (len(coeffs) - 1 - i)
            for i, c in enumerate(coeffs)),
        x,
    )
    roots = poly.ground_roots()
    found = {}
    total = 0
    for root, mult in roots.items():
        r = Fraction(int(sympy.numer(root)), int(sympy.denom(root)))
        found[r] = int(mult)
        total += int(mult)
    if total != a.nrows:
        raise IrrationalEigenvalueError(
            "characteristic polynomial does not split over the rationals"
        )
    return found


@dataclass(frozen=True)
class SpectralData:
    """Per-eigenvalue multiplicity partitions of one matrix, sorted by
    eigenvalue.  The partition entry t counts rank (A-e)^{t-1} minus rank
    (A-e)^t, so it is automatically non-increasing."""

    entries: tuple[tuple[Fraction, tuple[int, ...]], ...]

    def eigenvalues(self) -> tuple[Fraction, ...]:
        return tuple(e for e, _ in self.entries)

    def partition_for(self, eig) -> tuple[int, ...]:
        return dict(self.entries).get(Fraction(eig), ())

    def to_json(self) -> list:
        return [[str(e), list(p)] for e, p in self.entries]


def spectral_data_of(a: RationalMatrix) -> SpectralData:
    """Conjugacy-class data by exact rank filtration at every eigenvalue."""
    eigs = rational_eigenvalues(a)
    entries = []
    for eig in sorted(eigs):
        mult = eigs[eig]
        shifted = a.shift(-eig)
        power = shifted
        prev_rank = a.nrows
        parts = []
        while prev_rank > a.nrows - mult:
            r = power.rank()
            parts.append(prev_rank - r)
            prev_rank = r
            power = power @ shifted
        entries.append((eig, tuple(parts)))
    return SpectralData(tuple(entries))


def expected_spectral_data(parts: Sequence[int], eigvals: Sequence) -> SpectralData:
    """Spectral data the normal form of (parts, eigvals) will produce:
    group by eigenvalue, sort each group non-increasingly."""
    groups: dict[Fraction, list[int]] = {}
    for p, e in zip(parts, eigvals):
        if p:
            groups.setdefault(Fraction(e), []).append(p)
    return SpectralData(
        tuple(
            (e, tuple(sorted(groups[e], reverse=True))) for e in sorted(groups)
        )
    )


def tuple_spectral_data(at: MatrixTuple) -> tuple[SpectralData, ...]:
    return tuple(spectral_data_of(m) for m in at.matrices)


def _commutator_matrix(a: RationalMatrix) -> RationalMatrix:
    """Matrix of X -> AX - XA on row-major flattened X."""
    n = a.nrows
    rows = []
    for p in range(n):
        for q in range(n):
            row = [Fraction(0)] * (n * n)
            for r in range(n):
                row[r * n + q] += a.rows[p][r]
            for s in range(n):
                row[p * n + s] -= a.rows[s][q]
            rows.append(row)
    return RationalMatrix(rows)


def centralizer_dim(a: RationalMatrix, *, bound: int = 12) -> int:
    """Dimension of the commutant {X : AX = XA} by exact nullspace."""
    if a.nrows > bound:
        raise LinAlgError("size %d exceeds bound %d" % (a.nrows, bound))
    n = a.nrows
    return n * n - _commutator_matrix(a).rank()


def joint_centralizer_dim(at: MatrixTuple, *, bound: int = 12) -> int:
    if at.size > bound:
        raise LinAlgError("size %d exceeds bound %d" % (at.size, bound))
    stacked = vstack([_commutator_matrix(m) for m in at.matrices])
    return at.size ** 2 - stacked.rank()


@dataclass(frozen=True)
class OrbitDims:
    """Dimension bookkeeping for a zero-sum tuple.

    ``dim_classes_orbit`` is the manifold of tuples with the same local
    conjugacy classes and the same sum; ``dim_conj_orbit`` the simultaneous
    conjugation orbit.  Their gap is even and vanishes exactly in the rigid
    irreducible case (index 2).
    """

    dim_centralizer: int
    index: int
    pidx: int
    dim_conj_orbit: int
    dim_classes_orbit: int

    def to_json(self) -> dict:
        return {
            "dim_centralizer": self.dim_centralizer,
            "index": self.index,
            "pidx": self.pidx,
            "dim_conj_orbit": self.dim_conj_orbit,
            "dim_classes_orbit": self.dim_classes_orbit,
        }


def orbit_dims(at: MatrixTuple, *, bound: int = 12) -> OrbitDims:
    n = at.size
    k = at.k
    zj = [centralizer_dim(m, bound=bound) for m in at.matrices]
    z = joint_centralizer_dim(at, bound=bound)
    index = sum(zj) - (k - 1) * n * n
    assert index % 2 == 0, "rigidity index must be even"
    pidx = z - index // 2
    assert pidx >= 0, "accessory-parameter count must be nonnegative"
    assert index <= 2 * z
    dim_conj = n * n - z
    dim_classes = k * n * n + z - sum(zj)
    assert (dim_classes - dim_conj) % 2 == 0
    return OrbitDims(z, index, pidx, dim_conj, dim_classes)


def addition(at: MatrixTuple, shifts: Sequence) -> MatrixTuple:
    """Shift A_j by shifts[j-1] for j >= 1 and A_0 by minus their total."""
    shifts = [Fraction(s) for s in shifts]
    if len(shifts) != at.k:
        raise LinAlgError("need one shift per matrix past the zeroth")
    mats = [at.matrices[0].shift(-sum(shifts))]
    mats.extend(m.shift(s) for m, s in zip(at.matrices[1:], shifts))
    return MatrixTuple(mats)


def convolution(at: MatrixTuple, lam) -> MatrixTuple:
    """Size-kn convolution blocks: block row j of G_j is (A_1,...,A_j+lam,
    ...,A_k), all other rows zero; G_0 closes the sum to zero."""
    lam = Fraction(lam)
    n = at.size
    k = at.k
    blocks = []
    for j in range(1, k + 1):
        rows = [[Fraction(0)] * (k * n) for _ in range(k * n)]
        for q in range(1, k + 1):
            block = at.matrices[q]
            for r in range(n):
                for c in range(n):
                    val = block.rows[r][c]
                    if q == j and r == c:
                        val = val + lam
                    rows[(j - 1) * n + r][(q - 1) * n + c] = val
        blocks.append(RationalMatrix(rows))
    total = blocks[0]
    for b in blocks[1:]:
        total = total + b
    return MatrixTuple([-total] + blocks)


@dataclass(frozen=True)
class McReport:
    """Kernel/image condition check for middle convolution parameters.

    A violation ("kernel", i, tau) means the common kernel of A_j - mu_j
    (j != i) meets ker(A_0 - tau) nontrivially; ("image", i, tau) means the
    corresponding image sum misses part of the space.  Only rational
    eigenvalues tau of A_0 need checking; other tau satisfy both conditions
    trivially.
    """

    violations: tuple[tuple[str, int, Fraction], ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_mc_assumptions(at: MatrixTuple, mu: Sequence) -> McReport:
    mu = [Fraction(x) for x in mu]
    if len(mu) != at.k + 1:
        raise LinAlgError("need one parameter per matrix")
    n = at.size
    taus = sorted(rational_eigenvalues(at.matrices[0]))
    violations = []
    for i in range(1, at.k + 1):
        others = [
            at.matrices[j].shift(-mu[j])
            for j in range(1, at.k + 1)
            if j != i
        ]
        for tau in taus:
            a0 = at.matrices[0].shift(-tau)
            stack = vstack(others + [a0]) if others else a0
            if stack.rank() < n:
                violations.append(("kernel", i, tau))
            spread = hstack(others + [a0]) if others else a0
            if spread.rank() < n:
                violations.append(("image", i, tau))
    return McReport(tuple(violations))


def _quotient_tuple(mats, space, size) -> list[RationalMatrix]:
    """Action induced on the quotient by an invariant column-span."""
    base = independent_columns(space)
    r = len(base)
    if r == size:
        raise LinAlgError("middle convolution collapses to dimension zero")
    full = extend_basis(base, size)
    p = from_columns(full)
    pinv = p.inverse()
    out = []
    for g in mats:
        t = pinv @ g @ p
        for i in range(r, size):
            for j in range(r):
                assert t.rows[i][j] == 0, "subspace is not invariant"
        out.append(RationalMatrix(tuple(row[r:] for row in t.rows[r:])))
    return out


def middle_convolution(
    at: MatrixTuple, mu: Sequence, *, check: bool = True
) -> MatrixTuple:
    """Middle convolution with parameters (mu_0,...,mu_k).

    Shift by minus (mu_1,...,mu_k), convolve at the parameter total, divide
    out the blockwise kernels plus the kernel of the zeroth block, shift
    again.  With ``check`` the kernel/image conditions are verified first
    and a violation raises :class:`McAssumptionError`.
    """
    mu = [Fraction(x) for x in mu]
    if len(mu) != at.k + 1:
        raise LinAlgError("need one parameter per matrix")
    if check:
        report = check_mc_assumptions(at, mu)
        if not report.ok:
            raise McAssumptionError(report)
    shifts = [-x for x in mu[1:]]
    shifted = addition(at, shifts)
    total = sum(mu)
    conv = convolution(shifted, total)
    n = at.size
    k = at.k
    blockwise: list[tuple[Fraction, ...]] = []
    for j in range(1, k + 1):
        for vec in shifted.matrices[j].nullspace():
            embedded = [Fraction(0)] * (k * n)
            embedded[(j - 1) * n : j * n] = list(vec)
            blockwise.append(tuple(embedded))
    zeroth = conv.matrices[0].nullspace()
    space = blockwise + zeroth
    if total != 0 and space:
        # the two kernels can only meet at a vanishing parameter total
        assert len(independent_columns(space)) == len(blockwise) + len(zeroth)
    reduced = _quotient_tuple(conv.matrices, space, k * n)
    return addition(MatrixTuple(reduced), shifts)


def scheme_of(at: MatrixTuple) -> Scheme:
    """Concrete scheme (shape plus constant eigenvalue table) of a tuple,
    columns ordered by decreasing multiplicity then by eigenvalue."""
    shape_rows = []
    eig_rows = []
    for data in tuple_spectral_data(at):
        cols = []
        for eig, parts in data.entries:
            cols.extend((p, eig) for p in parts)
        cols.sort(key=lambda pe: (-pe[0], pe[1]))
        shape_rows.append(tuple(p for p, _ in cols))
        eig_rows.append(tuple(e for _, e in cols))
    return Scheme(SpectralType(shape_rows, trim=False), eig_rows)


def _replay_forward(shape: SpectralType, table):
    """Run the maximal reduction on (multiplicities, eigenvalues) jointly,
    collecting the middle-convolution parameters of every step."""
    rows = [list(r) for r in shape.partitions]
    lams = [list(r) for r in table]
    chain = []
    orders = []
    order = shape.order
    while order > 1:
        for row, lam in zip(rows, lams):
            if len(set(lam)) != len(lam):
                raise DegenerateSchemeError(
                    "coinciding eigenvalues within one point: %s" % (lam,)
                )
        ells = [row.index(max(row)) for row in rows]
        d = sum(row[e] for row, e in zip(rows, ells)) - (len(rows) - 2) * order
        if d <= 0 or any(row[e] < d for row, e in zip(rows, ells)):
            raise DegenerateSchemeError("shape is not rigid")
        mu = tuple(lam[e] for lam, e in zip(lams, ells))
        total = sum(mu)
        if total == 0:
            raise DegenerateSchemeError(
                "parameter total vanishes at order %d" % order
            )
        chain.append(mu)
        orders.append(order)
        order -= d
        for j, (row, lam, e) in enumerate(zip(rows, lams, ells)):
            new_row = []
            new_lam = []
            for v, (p, l) in enumerate(zip(row, lam)):
                if v == e:
                    p = p - d
                    l = -mu[j]
                else:
                    l = l + total - 2 * mu[j]
                if p:
                    new_row.append(p)
                    new_lam.append(l)
            rows[j] = new_row
            lams[j] = new_lam
    return chain, orders, [lam[0] for lam in lams]


def construct_rigid(scheme: Scheme) -> MatrixTuple:
    """Irreducible zero-sum tuple realizing a rigid concrete scheme.

    The eigenvalue bookkeeping of the reduction chain is replayed down to
    scalars and inverted with one middle convolution per step.  Degenerate
    eigenvalue choices (vanishing parameter totals, coinciding eigenvalues,
    failed convolution assumptions) raise :class:`DegenerateSchemeError`;
    resample and retry in that case.
    """
    shape = scheme.shape
    if katz_reduce(shape).verdict is not Verdict.RIGID:
        raise DegenerateSchemeError("shape %s is not rigid" % shape)
    if not scheme.is_constant():
        raise DegenerateSchemeError("need constant rational eigenvalues")
    table = scheme.constant_table()
    trace = sum(
        p * l
        for row, lrow in zip(shape.partitions, table)
        for p, l in zip(row, lrow)
    )
    if trace != 0:
        raise DegenerateSchemeError("trace condition violated: %s" % trace)
    chain, orders, scalars = _replay_forward(shape, table)
    if sum(scalars) != 0:
        raise AssertionError("scalar terminal does not sum to zero")
    at = MatrixTuple([RationalMatrix([[s]]) for s in scalars])
    for mu, order in zip(reversed(chain), reversed(orders)):
        try:
            at = middle_convolution(at, tuple(-x for x in mu))
        except (McAssumptionError, LinAlgError) as exc:
            raise DegenerateSchemeError(
                "middle convolution degenerated: %s" % exc
            ) from exc
        if at.size != order:
            raise DegenerateSchemeError(
                "expected order %d, got %d" % (order, at.size)
            )
    for a, row, lrow in zip(at.matrices, shape.partitions, table):
        if spectral_data_of(a) != expected_spectral_data(row, lrow):
            raise DegenerateSchemeError("spectral data mismatch at %r" % a)
    if joint_centralizer_dim(at) != 1:
        raise DegenerateSchemeError("constructed tuple is not irreducible")
    return at


def random_scheme(shape: SpectralType, rng, *, num_range: int = 10 ** 6) -> Scheme:
    """Random constant scheme on ``shape`` with exact zero trace: common
    denominator, numerators uniform in [-num_range, num_range], one column
    solved for the trace condition, rows kept collision-free."""
    den = rng.randint(1, 97)
    for _ in range(50):
        table = [
            [Fraction(rng.randint(-num_range, num_range), den) for _ in row]
            for row in shape.partitions
        ]
        head = sum(
            p * l
            for row, lrow in zip(shape.partitions, table)
            for p, l in zip(row, lrow)
        )
        solved = head - shape.partitions[0][0] * table[0][0]
        table[0][0] = -solved / shape.partitions[0][0]
        if all(len(set(row)) == len(row) for row in table):
            return Scheme(shape, table)
    raise DegenerateSchemeError("failed to sample a collision-free scheme")


def construct_rigid_random(
    shape: SpectralType, rng, *, retries: int = 20, num_range: int = 10 ** 6
) -> tuple[Scheme, MatrixTuple]:
    """Sample generic schemes on a rigid shape until construction succeeds.

    Smaller ``num_range`` keeps the exact arithmetic light downstream.
    """
    last: Exception | None = None
    for _ in range(retries):
        scheme = random_scheme(shape, rng, num_range=num_range)
        try:
            return scheme, construct_rigid(scheme)
        except DegenerateSchemeError as exc:
            last = exc
    raise DegenerateSchemeError(
        "no generic scheme found after %d tries: %s" % (retries, last)
    )
