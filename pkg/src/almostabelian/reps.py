"""Faithful matrix representations of almost Abelian groups and algebras.

Entries of a represented matrix live in the field of rational functions of
tau together with finitely many transcendental atoms of the shape
``coeff * exp(a) * cos(b)`` (or ``sin``).  An atom collapses to an exact
field element whenever its arguments allow it (zero exponent, quarter-turn
trigonometric argument), so nilpotent data and torsion times produce fully
exact matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ExactnessUnavailable, UnsupportedLattice
from .expmap import block_exp_numeric, torsion
from .jordan import GroupElement, MultiplicityFunction, group_element
from .linalg import Matrix, inverse, mat_vec, rank, vec
from .scalars import TAU, TauScalar, as_tau, tau_floor

ZERO = TauScalar(0)
ONE = TauScalar(1)

_COS_QUARTER = (ONE, ZERO, -ONE, ZERO)
_SIN_QUARTER = (ZERO, ONE, ZERO, -ONE)


# ---------------------------------------------------------------------------
# matrix entries


@dataclass(frozen=True)
class ExpAtom:
    """A single transcendental entry coeff * e^exp_arg * trig(trig_arg).

    trig is one of "one", "cos", "sin".  Instances are only created through
    make_entry, which guarantees coeff != 0 and that no exact collapse
    applies, so structural equality of atoms is meaningful.
    """

    coeff: TauScalar
    exp_arg: TauScalar
    trig: str = "one"
    trig_arg: TauScalar = ZERO

    def numeric(self) -> float:
        value = float(self.coeff) * math.exp(float(self.exp_arg))
        if self.trig == "cos":
            value *= math.cos(float(self.trig_arg))
        elif self.trig == "sin":
            value *= math.sin(float(self.trig_arg))
        return value

    def __str__(self) -> str:
        coeff_str = str(self.coeff)
        if coeff_str == "1":
            parts = []
        elif coeff_str == "-1":
            parts = ["-1"]
        elif "+" in coeff_str or "-" in coeff_str[1:] or "*" in coeff_str:
            parts = [f"({coeff_str})"]
        else:
            parts = [coeff_str]
        if not self.exp_arg.is_zero:
            parts.append(f"exp({self.exp_arg})")
        if self.trig != "one":
            parts.append(f"{self.trig}({self.trig_arg})")
        return "*".join(parts)


Entry = "TauScalar | ExpAtom"


def _leading_negative(x: TauScalar) -> bool:
    for c in x.num:
        if c:
            return c < 0
    return False


def make_entry(coeff, exp_arg=ZERO, trig: str = "one", trig_arg=ZERO):
    """Build an entry, collapsing to an exact scalar whenever possible."""
    coeff = as_tau(coeff)
    exp_arg = as_tau(exp_arg)
    trig_arg = as_tau(trig_arg)
    if trig not in ("one", "cos", "sin"):
        raise ValueError(f"unknown trig tag {trig!r}")
    if coeff.is_zero:
        return ZERO
    if trig != "one":
        turns = trig_arg / TAU
        quarters = turns * 4
        if quarters.is_rational and quarters.is_integer:
            table = _COS_QUARTER if trig == "cos" else _SIN_QUARTER
            coeff = coeff * table[quarters.as_integer() % 4]
            trig, trig_arg = "one", ZERO
            if coeff.is_zero:
                return ZERO
        elif _leading_negative(trig_arg):
            trig_arg = -trig_arg
            if trig == "sin":
                coeff = -coeff
    if exp_arg.is_zero and trig == "one":
        return coeff
    return ExpAtom(coeff, exp_arg, trig, trig_arg)


def entry_neg(entry):
    if isinstance(entry, ExpAtom):
        return ExpAtom(-entry.coeff, entry.exp_arg, entry.trig, entry.trig_arg)
    return -entry


def entry_numeric(entry) -> float:
    if isinstance(entry, ExpAtom):
        return entry.numeric()
    return float(entry)


# ---------------------------------------------------------------------------
# represented matrices


@dataclass(frozen=True)
class RepMatrix:
    """A square matrix whose entries are exact scalars or ExpAtom values."""

    entries: tuple

    @property
    def dimension(self) -> int:
        return len(self.entries)

    @property
    def is_exact(self) -> bool:
        return all(
            isinstance(e, TauScalar) for row in self.entries for e in row
        )

    @property
    def is_identity(self) -> bool:
        if not self.is_exact:
            return False
        n = self.dimension
        return all(
            self.entries[i][j] == (ONE if i == j else ZERO)
            for i in range(n)
            for j in range(n)
        )

    def exact(self) -> Matrix:
        """Return the entries as a plain exact matrix.

        Raises ExactnessUnavailable when a transcendental atom survives.
        """
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                if isinstance(e, ExpAtom):
                    raise ExactnessUnavailable(
                        f"entry ({i}, {j}) = {e} has no exact value"
                    )
        return self.entries

    def numeric(self) -> np.ndarray:
        return np.array(
            [[entry_numeric(e) for e in row] for row in self.entries],
            dtype=float,
        )

    def mul(self, other: "RepMatrix") -> "RepMatrix":
        """Exact matrix product; defined only when both factors are exact."""
        if self.dimension != other.dimension:
            raise ValueError("dimension mismatch")
        a = self.exact()
        b = other.exact()
        n = self.dimension
        rows = tuple(
            tuple(
                sum((a[i][l] * b[l][j] for l in range(n)), ZERO)
                for j in range(n)
            )
            for i in range(n)
        )
        return RepMatrix(rows)

    def row_strings(self) -> list:
        return [" ".join(str(e) for e in row) for row in self.entries]

    def __str__(self) -> str:
        return "\n".join(self.row_strings())


def _grid(n: int) -> list:
    return [[ZERO] * n for _ in range(n)]


def _freeze(rows) -> RepMatrix:
    return RepMatrix(tuple(tuple(row) for row in rows))


# ---------------------------------------------------------------------------
# exponential of t*J with symbolic entries


def rep_exp_tj(aleph: MultiplicityFunction, t) -> RepMatrix:
    """e^{tJ} as a d x d RepMatrix; always defined, exact when possible.

    Entry (k, k+j) of a single Jordan block carries t^j/j! times the
    exponential-and-rotation factor of the eigenvalue; realified blocks get
    the corresponding 2x2 rotation cells.
    """
    t = as_tau(t)
    rows = _grid(aleph.dim)
    for block in aleph.blocks:
        a = TauScalar(block.eigenvalue.re)
        b = block.eigenvalue.im
        o = block.offset
        exp_arg = t * a
        for k in range(block.size):
            for j in range(block.size - k):
                coeff = t ** j / math.factorial(j)
                if not block.realified:
                    rows[o + k][o + k + j] = make_entry(coeff, exp_arg)
                else:
                    cos_e = make_entry(coeff, exp_arg, "cos", t * b)
                    sin_e = make_entry(coeff, exp_arg, "sin", t * b)
                    r = o + 2 * k
                    c = o + 2 * (k + j)
                    rows[r][c] = cos_e
                    rows[r][c + 1] = entry_neg(sin_e)
                    rows[r + 1][c] = sin_e
                    rows[r + 1][c + 1] = cos_e
    return _freeze(rows)


# ---------------------------------------------------------------------------
# algebra and group representations


def algebra_rep(aleph: MultiplicityFunction, x) -> RepMatrix:
    """(d+1)-dimensional faithful algebra representation [[0, 0], [v, tJ]]."""
    from .jordan import build_jordan

    d = aleph.dim
    jmat = build_jordan(aleph).matrix
    rows = _grid(d + 1)
    for i in range(d):
        rows[i + 1][0] = x.v[i]
        for j in range(d):
            rows[i + 1][j + 1] = x.t * jmat[i][j]
    return _freeze(rows)


def group_rep_G(aleph: MultiplicityFunction, g: GroupElement) -> RepMatrix:
    """(d+1)-dimensional representation [[1, 0], [v, e^{tJ}]].

    Faithful exactly when G is simply connected; in general its kernel is
    the central subgroup {0} x T.
    """
    d = aleph.dim
    etj = rep_exp_tj(aleph, g.t)
    rows = _grid(d + 1)
    rows[0][0] = ONE
    for i in range(d):
        rows[i + 1][0] = g.v[i]
        for j in range(d):
            rows[i + 1][j + 1] = etj.entries[i][j]
    return _freeze(rows)


def group_rep_GI(aleph: MultiplicityFunction, g: GroupElement) -> RepMatrix:
    """(d+2)-dimensional faithful representation with corner entry e^t."""
    base = group_rep_G(aleph, g)
    d = aleph.dim
    rows = _grid(d + 2)
    for i in range(d + 1):
        for j in range(d + 1):
            rows[i][j] = base.entries[i][j]
    rows[d + 1][d + 1] = make_entry(ONE, g.t)
    return _freeze(rows)


def group_rep_GII(aleph: MultiplicityFunction, g: GroupElement) -> RepMatrix:
    """(d+2)-dimensional faithful representation with corner row entry t."""
    base = group_rep_G(aleph, g)
    d = aleph.dim
    rows = _grid(d + 2)
    for i in range(d + 1):
        for j in range(d + 1):
            rows[i][j] = base.entries[i][j]
    rows[d + 1][0] = g.t
    rows[d + 1][d + 1] = ONE
    return _freeze(rows)


def algebra_rep_GI(aleph: MultiplicityFunction, x) -> RepMatrix:
    """Derivative of group_rep_GI at the identity: [[0,0,0],[v,tJ,0],[0,0,t]]."""
    base = algebra_rep(aleph, x)
    d = aleph.dim
    rows = _grid(d + 2)
    for i in range(d + 1):
        for j in range(d + 1):
            rows[i][j] = base.entries[i][j]
    rows[d + 1][d + 1] = x.t
    return _freeze(rows)


def is_simply_connected_G(aleph: MultiplicityFunction) -> bool:
    """True when exp is a diffeomorphism candidate domain-wise: T = {0}."""
    return torsion(aleph).is_trivial


_REP_KINDS = ("G", "GI", "GII")


def group_rep_numeric(aleph, v: np.ndarray, t: float, kind: str = "G") -> np.ndarray:
    """Float version of the group representations, for numeric probes."""
    if kind not in _REP_KINDS:
        raise ValueError(f"unknown representation kind {kind!r}")
    d = aleph.dim
    n = d + 1 if kind == "G" else d + 2
    out = np.zeros((n, n))
    out[0, 0] = 1.0
    out[1 : d + 1, 0] = v
    out[1 : d + 1, 1 : d + 1] = block_exp_numeric(aleph, t)
    if kind == "GI":
        out[d + 1, d + 1] = math.exp(t)
    elif kind == "GII":
        out[d + 1, 0] = t
        out[d + 1, d + 1] = 1.0
    return out


# ---------------------------------------------------------------------------
# splitting off the maximal Euclidean factor


@dataclass(frozen=True)
class Decomposition:
    """Splitting G = G_0 x R^{d-d_0} along the trivial Jordan blocks.

    d0 is the dimension of the core factor; abelian_coordinates lists the
    coordinates spanning the split Euclidean factor (always the trailing
    ones in canonical block order); core_aleph is the multiplicity function
    of the core.
    """

    d0: int
    abelian_coordinates: tuple
    core_aleph: MultiplicityFunction


def decompose(aleph: MultiplicityFunction) -> Decomposition:
    """Split off the R^{d-d_0} factor spanned by the (0, 1) Jordan blocks.

    >>> from .jordan import multiplicity_function
    >>> from .scalars import GaussRational
    >>> dec = decompose(multiplicity_function(
    ...     {(GaussRational(0, 1), 1): 1, (GaussRational(0, 0), 1): 2}))
    >>> dec.d0, dec.abelian_coordinates
    (2, (2, 3))
    """
    abelian = aleph.abelian_coordinates
    core_entries = {
        (eig, size): mult
        for eig, size, mult in aleph.entries
        if not (eig.is_zero and size == 1)
    }
    return Decomposition(
        d0=aleph.dim - len(abelian),
        abelian_coordinates=abelian,
        core_aleph=MultiplicityFunction(core_entries),
    )


# ---------------------------------------------------------------------------
# quotient charts and faithful representations of G/N


def _lattice_columns(subgroup) -> list:
    return [
        vec(tuple(g.v) + (g.t,)) for g in subgroup.generators
    ]


def quotient_chart(aleph: MultiplicityFunction, g: GroupElement, subgroup) -> GroupElement:
    """Canonical representative of g modulo the discrete central subgroup.

    The subgroup is central, so g N consists of the translates of g by the
    generator lattice; the representative subtracts the floor of each exact
    lattice coordinate.  Coordinates outside the lattice span pass through
    unchanged, and the chart is idempotent.
    """
    cols = _lattice_columns(subgroup)
    if not cols:
        return g
    k = len(cols)
    # pivot coordinates: positions where the generator span has full rank
    pivots = []
    for i in range(len(cols[0])):
        candidate = pivots + [i]
        rows = [tuple(col[j] for col in cols) for j in candidate]
        if rank(tuple(rows)) == len(candidate):
            pivots = candidate
        if len(pivots) == k:
            break
    point = tuple(g.v) + (g.t,)
    system = tuple(tuple(col[i] for col in cols) for i in pivots)
    target = vec(point[i] for i in pivots)
    coords = mat_vec(inverse(system), target)
    shift = [ZERO] * len(point)
    for col, coord in zip(cols, coords):
        n = tau_floor(coord)
        if n:
            for i, c in enumerate(col):
                shift[i] = shift[i] + n * c
    reduced = tuple(point[i] - shift[i] for i in range(len(point)))
    return group_element(aleph, reduced[:-1], reduced[-1])


def build_P(aleph: MultiplicityFunction, subgroup, completion=None):
    """Inverse of a completed generator matrix on the (w, t) coordinates.

    The subgroup generators, written in the coordinates of the split
    Euclidean factor together with t, form the first k columns; completion
    supplies the remaining m - k (defaulting to a greedy choice of standard
    basis vectors).  Returns (P, P_par, P_perp): the full inverse, its first
    k rows, and the rest.
    """
    dec = decompose(aleph)
    d = aleph.dim
    d0 = dec.d0
    m = d - d0 + 1
    cols = []
    for g in subgroup.generators:
        for i in range(d0):
            if not as_tau(g.v[i]).is_zero:
                raise UnsupportedLattice(
                    f"generator {g} is not supported on the split Euclidean "
                    "factor; normalize the subgroup first"
                )
        cols.append(vec(tuple(g.v[d0:]) + (g.t,)))
    k = len(cols)
    if completion is None:
        completion = []
        for i in range(m):
            candidate = cols + completion + [vec(unit for unit in _unit(m, i))]
            if rank(tuple(candidate)) == len(candidate):
                completion.append(candidate[-1])
            if k + len(completion) == m:
                break
    else:
        completion = [vec(c) for c in completion]
    if k + len(completion) != m:
        raise ValueError("completion does not have the right size")
    full = cols + completion
    matrix = tuple(tuple(full[j][i] for j in range(m)) for i in range(m))
    p = inverse(matrix)
    return p, p[:k], p[k:]


def _unit(n: int, i: int):
    return tuple(ONE if j == i else ZERO for j in range(n))


@dataclass(frozen=True)
class QuotientRep:
    """Faithful representation of G/N for a discrete central subgroup N.

    Block diagonal: the affine core block [[1, 0], [v0, e^{tJ0}]], one 2x2
    rotation cell per lattice generator (angle tau times the corresponding
    P_par coordinate), and one diagonal exponential per complementary
    P_perp coordinate.  The kernel is exactly N.
    """

    aleph: MultiplicityFunction
    subgroup: object
    decomposition: Decomposition
    p_par: Matrix
    p_perp: Matrix
    dimension: int

    def _split(self, v, t):
        d0 = self.decomposition.d0
        wt = vec(tuple(v[d0:]) + (t,))
        x_par = mat_vec(self.p_par, wt) if self.p_par else ()
        y_perp = mat_vec(self.p_perp, wt) if self.p_perp else ()
        return v[:d0], x_par, y_perp

    def matrix(self, g: GroupElement) -> RepMatrix:
        g = group_element(self.aleph, g.v, g.t)
        d0 = self.decomposition.d0
        v0, x_par, y_perp = self._split(g.v, g.t)
        core = group_rep_G(self.decomposition.core_aleph, group_element(
            self.decomposition.core_aleph, v0, g.t))
        rows = _grid(self.dimension)
        for i in range(d0 + 1):
            for j in range(d0 + 1):
                rows[i][j] = core.entries[i][j]
        o = d0 + 1
        for x in x_par:
            angle = TAU * x
            c = make_entry(ONE, ZERO, "cos", angle)
            s = make_entry(ONE, ZERO, "sin", angle)
            rows[o][o] = c
            rows[o][o + 1] = entry_neg(s)
            rows[o + 1][o] = s
            rows[o + 1][o + 1] = c
            o += 2
        for y in y_perp:
            rows[o][o] = make_entry(ONE, y)
            o += 1
        return _freeze(rows)

    def numeric(self, v: np.ndarray, t: float) -> np.ndarray:
        dec = self.decomposition
        d0 = dec.d0
        par = np.array([[float(e) for e in row] for row in self.p_par]) if self.p_par else np.zeros((0, len(v) - d0 + 1))
        perp = np.array([[float(e) for e in row] for row in self.p_perp]) if self.p_perp else np.zeros((0, len(v) - d0 + 1))
        wt = np.concatenate([np.asarray(v, dtype=float)[d0:], [t]])
        x_par = par @ wt
        y_perp = perp @ wt
        out = np.zeros((self.dimension, self.dimension))
        out[: d0 + 1, : d0 + 1] = group_rep_numeric(
            dec.core_aleph, np.asarray(v, dtype=float)[:d0], t)
        o = d0 + 1
        tau = 2 * math.pi
        for x in x_par:
            c, s = math.cos(tau * x), math.sin(tau * x)
            out[o, o] = c
            out[o, o + 1] = -s
            out[o + 1, o] = s
            out[o + 1, o + 1] = c
            o += 2
        for y in y_perp:
            out[o, o] = math.exp(y)
            o += 1
        return out


def quotient_faithful_rep(aleph: MultiplicityFunction, subgroup, completion=None) -> QuotientRep:
    """Representation of G whose kernel is exactly the given central subgroup.

    Requires the subgroup generators to be supported on the split Euclidean
    factor (raises UnsupportedLattice otherwise).  With k generators the
    representation acts on dimension d + 2 + k.
    """
    dec = decompose(aleph)
    _, p_par, p_perp = build_P(aleph, subgroup, completion)
    k = len(p_par)
    return QuotientRep(
        aleph=aleph,
        subgroup=subgroup,
        decomposition=dec,
        p_par=tuple(p_par),
        p_perp=tuple(p_perp),
        dimension=aleph.dim + 2 + k,
    )
