"""Closed-form exponential machinery and spectral decision procedures.

Covers the phi function phi(A) = (e^A - id)/A with phi(0) = id, block
exponentials e^{tJ}, the group exponential exp(v, t) = [phi(tJ)v, t], the
logarithm on the central cylinder, the torsion subgroup T of times t with
e^{tJ} = id, exponentiality of the group, the dilation group of the datum,
and the center.

Exact arithmetic is per block: a block contributes exactly when it is
nilpotent (finite series), or the time satisfies t*b in tau*Z for a purely
imaginary eigenvalue ib (the rotation factor collapses to the identity), or
the vector being moved vanishes on the block.  Anything else raises
ExactnessUnavailable naming the block; it never falls back to floats.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ExactnessUnavailable, NotCentral, NoWitness
from .jordan import (
    AlgebraElement,
    Block,
    GroupElement,
    MultiplicityFunction,
    build_jordan,
    in_kernel,
    kernel_basis,
)
from .linalg import (
    Matrix,
    Vector,
    identity,
    inverse,
    mat,
    mat_mul,
    mat_sub,
    vec,
)
from .scalars import TAU, GaussRational, TauScalar, as_tau, rat_gcd

ZERO = TauScalar(0)
ONE = TauScalar(1)


# ---------------------------------------------------------------------------
# torsion and center


@dataclass(frozen=True)
class TorsionDescription:
    """The subgroup T = {t : e^{tJ} = id} of the time axis.

    Nontrivial exactly when every block has size 1 and a purely imaginary
    (or zero) eigenvalue, with at least one nonzero; then T = t0*Z with
    t0 = tau/omega0 and omega0 the rational gcd of the imaginary parts.
    """

    is_trivial: bool
    omega0: Fraction | None = None
    t0: TauScalar | None = None

    def contains(self, t) -> bool:
        t = as_tau(t)
        if t.is_zero:
            return True
        if self.is_trivial:
            return False
        return (t / self.t0).is_integer

    def __str__(self):
        if self.is_trivial:
            return "{0}"
        return f"({self.t0})Z"


@lru_cache(maxsize=None)
def torsion(aleph: MultiplicityFunction) -> TorsionDescription:
    """Compute T for the datum.

    >>> from .jordan import multiplicity_function
    >>> from .scalars import GaussRational as G
    >>> from fractions import Fraction as F
    >>> mix = multiplicity_function({(G(0, F(2, 3)), 1): 1, (G(0, 1), 1): 1})
    >>> t = torsion(mix)
    >>> (t.omega0, str(t.t0))
    (Fraction(1, 3), '3*tau')
    """
    ims = []
    for eig, size, _ in aleph.entries:
        if size != 1 or eig.re != 0:
            return TorsionDescription(True)
        if eig.im != 0:
            ims.append(abs(eig.im))
    if not ims:
        return TorsionDescription(True)
    omega0 = ims[0]
    for b in ims[1:]:
        omega0 = rat_gcd(omega0, b)
    return TorsionDescription(False, omega0, TAU / as_tau(omega0))


@dataclass(frozen=True)
class CenterDescription:
    """Z(G) = {[u, s] : u in ker J, s in T}; identity component exp(ker J) x {0}."""

    aleph: MultiplicityFunction
    kernel_basis: tuple
    torsion: TorsionDescription

    def contains(self, g: GroupElement) -> bool:
        return in_kernel(self.aleph, g.v) and self.torsion.contains(g.t)


def center(aleph: MultiplicityFunction) -> CenterDescription:
    return CenterDescription(aleph, kernel_basis(aleph), torsion(aleph))


def is_central(aleph: MultiplicityFunction, g: GroupElement) -> bool:
    return center(aleph).contains(g)


# ---------------------------------------------------------------------------
# exact per-block exponential and phi


def _integer_turns(t: TauScalar, b: Fraction) -> bool:
    """Whether t*b is an integer multiple of tau (rotation collapses to id)."""
    return ((t * as_tau(b)) / TAU).is_integer


def _exp_block_exact(block: Block, t: TauScalar):
    """Rows of e^{t J_block}, or None when no exact closed form applies."""
    n = block.size
    if t.is_zero:
        return [list(r) for r in identity(block.width)]
    if block.eigenvalue.is_zero:
        rows = [[ZERO] * n for _ in range(n)]
        for k in range(n):
            for j in range(n - k):
                rows[k][k + j] = t ** j / math.factorial(j)
        return rows
    if block.eigenvalue.re == 0 and _integer_turns(t, block.eigenvalue.im):
        w = block.width
        rows = [[ZERO] * w for _ in range(w)]
        for k in range(n):
            for j in range(n - k):
                c = t ** j / math.factorial(j)
                rows[2 * k][2 * (k + j)] = c
                rows[2 * k + 1][2 * (k + j) + 1] = c
        return rows
    return None


def _phi_block_exact(block: Block, t: TauScalar):
    """Rows of phi(t J_block), or None when no exact closed form applies."""
    n = block.size
    if t.is_zero:
        return [list(r) for r in identity(block.width)]
    if block.eigenvalue.is_zero:
        rows = [[ZERO] * n for _ in range(n)]
        for k in range(n):
            for j in range(n - k):
                rows[k][k + j] = t ** j / math.factorial(j + 1)
        return rows
    if block.eigenvalue.re == 0 and _integer_turns(t, block.eigenvalue.im):
        w = block.width
        if n == 1:
            return [[ZERO, ZERO], [ZERO, ZERO]]
        exp_rows = mat(_exp_block_exact(block, t))
        j_rows = _block_matrix(block)
        tj = mat([[t * x for x in row] for row in j_rows])
        return [list(r) for r in mat_mul(mat_sub(exp_rows, identity(w)), inverse(tj))]
    return None


@lru_cache(maxsize=None)
def _block_matrix(block: Block) -> Matrix:
    """The block's own Jordan matrix (offset-independent)."""
    n, a, b = block.size, block.eigenvalue.re, block.eigenvalue.im
    if not block.realified:
        rows = [[Fraction(0)] * n for _ in range(n)]
        for k in range(n):
            rows[k][k] = a
            if k + 1 < n:
                rows[k][k + 1] = Fraction(1)
    else:
        w = block.width
        rows = [[Fraction(0)] * w for _ in range(w)]
        for k in range(n):
            i = 2 * k
            rows[i][i] = a
            rows[i][i + 1] = -b
            rows[i + 1][i] = b
            rows[i + 1][i + 1] = a
            if k + 1 < n:
                rows[i][i + 2] = Fraction(1)
                rows[i + 1][i + 3] = Fraction(1)
    return mat(rows)


def _unavailable(block: Block, t: TauScalar, what: str) -> ExactnessUnavailable:
    return ExactnessUnavailable(
        f"no exact closed form for {what} at t = {t} on block "
        f"({block.eigenvalue}, {block.size}) at coordinate {block.offset}; "
        "exact evaluation needs a nilpotent block, a whole number of turns, "
        "or a vector vanishing there"
    )


def _assemble(aleph: MultiplicityFunction, t: TauScalar, block_fn, what: str) -> Matrix:
    d = aleph.dim
    rows = [[ZERO] * d for _ in range(d)]
    for block in build_jordan(aleph).blocks:
        sub = block_fn(block, t)
        if sub is None:
            raise _unavailable(block, t, what)
        o = block.offset
        for i, row in enumerate(sub):
            for j, x in enumerate(row):
                rows[o + i][o + j] = x
    return mat(rows)


def _apply_blockwise(
    aleph: MultiplicityFunction, t: TauScalar, v: Vector, block_fn, what: str
) -> Vector:
    """Apply the blockwise matrix to v, skipping blocks where v vanishes."""
    out = [ZERO] * len(v)
    for block in build_jordan(aleph).blocks:
        chunk = [as_tau(v[i]) for i in block.coords]
        if all(x.is_zero for x in chunk):
            continue
        sub = block_fn(block, t)
        if sub is None:
            raise _unavailable(block, t, what)
        for i, row in enumerate(sub):
            acc = ZERO
            for c, x in zip(row, chunk):
                if not c.is_zero:
                    acc = acc + c * x
            out[block.offset + i] = acc
    return vec(out)


def apply_exp_tj(aleph: MultiplicityFunction, t, v) -> Vector:
    """Exact e^{tJ} v, defined blockwise wherever v meets an exact block."""
    return _apply_blockwise(aleph, as_tau(t), vec(v), _exp_block_exact, "e^(tJ)")


def apply_phi_tj(aleph: MultiplicityFunction, t, v) -> Vector:
    """Exact phi(tJ) v, defined blockwise wherever v meets an exact block."""
    return _apply_blockwise(aleph, as_tau(t), vec(v), _phi_block_exact, "phi(tJ)")


def apply_exp_integral(aleph: MultiplicityFunction, s, v) -> Vector:
    """Exact ((e^{sJ} - id)/J) v = s*phi(sJ) v, the displacement integral."""
    s = as_tau(s)
    return vec([s * x for x in apply_phi_tj(aleph, s, v)])


def block_exp(t, aleph: MultiplicityFunction, mode: str = "exact"):
    """The full matrix e^{tJ}.

    Exact mode covers nilpotent data at any time and whole numbers of turns
    on every rotation block (in particular all t in T).  Numeric mode
    evaluates the closed form per block in floats.

    >>> from .jordan import multiplicity_function
    >>> from .scalars import GaussRational as G
    >>> heis = multiplicity_function({(G(0), 2): 1})
    >>> [[str(x) for x in row] for row in block_exp(1, heis)]
    [['1', '1'], ['0', '1']]
    """
    if mode == "numeric":
        return block_exp_numeric(aleph, float(t))
    return _assemble(aleph, as_tau(t), _exp_block_exact, "e^(tJ)")


def phi_matrix(t, aleph: MultiplicityFunction, mode: str = "exact"):
    """The full matrix phi(tJ) = (e^{tJ} - id)/(tJ), with phi(0) = id.

    On ker J the value is the identity for every t; at a nonzero t in T
    the whole matrix collapses to the projection onto ker J (zero on the
    rotation blocks, identity on the kernel coordinates).
    """
    if mode == "numeric":
        return phi_numeric(aleph, float(t))
    return _assemble(aleph, as_tau(t), _phi_block_exact, "phi(tJ)")


def exp_map(aleph: MultiplicityFunction, x: AlgebraElement, mode: str = "exact"):
    """Group exponential exp(v, t) = [phi(tJ) v, t].

    >>> from .jordan import algebra_element, multiplicity_function
    >>> from .scalars import GaussRational as G
    >>> heis = multiplicity_function({(G(0), 2): 1})
    >>> str(exp_map(heis, algebra_element(heis, [1, 2], 3)))
    '[4, 2 | 3]'
    """
    if mode == "numeric":
        v = np.array([float(c) for c in x.v], dtype=float)
        t = float(x.t)
        return phi_numeric(aleph, t) @ v, t
    return GroupElement(apply_phi_tj(aleph, x.t, x.v), x.t)


def central_log(aleph: MultiplicityFunction, g: GroupElement) -> AlgebraElement:
    """Inverse of exp on the cylinder ker J + R e0, where exp is the identity
    in coordinates: [v, t] -> (v, t) for v in ker J, any t."""
    if not in_kernel(aleph, g.v):
        raise NotCentral(
            "logarithm is only defined over ker J: the vector part has a "
            "component outside the kernel coordinates"
        )
    return AlgebraElement(g.v, g.t)


# ---------------------------------------------------------------------------
# exponentiality


@dataclass(frozen=True)
class ExponentialityVerdict:
    exponential: bool
    witness: GaussRational | None = None


@dataclass(frozen=True)
class E2Witness:
    """A copy of the universal cover of E(2) inside the group.

    W is the 2-dimensional invariant subspace carrying the first purely
    imaginary rotation block; together with the time direction it spans a
    subalgebra on which exp already fails to be surjective.  At the
    collision time tau/b the phi matrix kills W, so [collision_vector,
    collision_time] and [0, collision_time] are distinct exponentials of
    nothing and of (0, collision_time) respectively.
    """

    block_index: int
    block: Block
    coordinates: tuple
    restriction: Matrix
    collision_time: TauScalar
    collision_vector: Vector


def is_exponential(aleph: MultiplicityFunction) -> ExponentialityVerdict:
    """exp is onto iff no eigenvalue is nonzero purely imaginary."""
    for eig, _, _ in aleph.entries:
        if eig.re == 0 and eig.im != 0:
            return ExponentialityVerdict(False, eig)
    return ExponentialityVerdict(True)


def e2_witness(aleph: MultiplicityFunction) -> E2Witness:
    """The first rotation block witnessing non-exponentiality.

    >>> from .jordan import multiplicity_function
    >>> from .scalars import GaussRational as G
    >>> w = e2_witness(multiplicity_function({(G(0, 1), 1): 1}))
    >>> (w.coordinates, [[str(x) for x in r] for r in w.restriction])
    ((0, 1), [['0', '-1'], ['1', '0']])
    """
    for index, block in enumerate(build_jordan(aleph).blocks):
        eig = block.eigenvalue
        if eig.re == 0 and eig.im != 0:
            b = eig.im
            d = aleph.dim
            collision = [ZERO] * d
            collision[block.offset] = ONE
            return E2Witness(
                block_index=index,
                block=block,
                coordinates=(block.offset, block.offset + 1),
                restriction=mat([[Fraction(0), -b], [b, Fraction(0)]]),
                collision_time=TAU / as_tau(b),
                collision_vector=vec(collision),
            )
    raise NoWitness("the group is exponential; no rotation block to exhibit")


# ---------------------------------------------------------------------------
# dilations


class DilationGroup(enum.Enum):
    """Scalars alpha != 0 with alpha*J similar to J."""

    TRIVIAL = "{1}"
    PLUS_MINUS_ONE = "{1, -1}"
    ALL_NONZERO = "R\\{0}"

    def __str__(self):
        return self.value


def _spectrum_symmetric(aleph: MultiplicityFunction) -> bool:
    table = {(eig, size): mult for eig, size, mult in aleph.entries}
    for (eig, size), mult in table.items():
        mirror = GaussRational(-eig.re, eig.im)
        if table.get((mirror, size), 0) != mult:
            return False
    return True


def dilation_group(aleph: MultiplicityFunction) -> DilationGroup:
    """All nonzero reals for nilpotent J; {1, -1} for a negation-symmetric
    spectrum; {1} otherwise."""
    if aleph.is_nilpotent:
        return DilationGroup.ALL_NONZERO
    if _spectrum_symmetric(aleph):
        return DilationGroup.PLUS_MINUS_ONE
    return DilationGroup.TRIVIAL


def dilation_contains(aleph: MultiplicityFunction, alpha) -> bool:
    alpha = as_tau(alpha)
    if alpha.is_zero:
        return False
    group = dilation_group(aleph)
    if group is DilationGroup.ALL_NONZERO:
        return True
    if group is DilationGroup.PLUS_MINUS_ONE:
        return alpha == ONE or alpha == -ONE
    return alpha == ONE


def dilation_conjugator(aleph: MultiplicityFunction, alpha) -> Matrix:
    """An invertible Delta with Delta J = alpha J Delta, for alpha in Dil.

    For nilpotent J each block gets diag(alpha^{n-1}, ..., alpha, 1); for
    alpha = -1 a signed block (anti)diagonal pairs each eigenvalue with its
    negation, with diag(1, -1) cells reversing every rotation.
    """
    alpha = as_tau(alpha)
    if not dilation_contains(aleph, alpha):
        raise ValueError(f"{alpha} is not in the dilation group {dilation_group(aleph)}")
    d = aleph.dim
    if alpha == ONE:
        return identity(d)
    if aleph.is_nilpotent:
        rows = [[ZERO] * d for _ in range(d)]
        for block in build_jordan(aleph).blocks:
            for k in range(block.size):
                rows[block.offset + k][block.offset + k] = alpha ** (
                    block.size - 1 - k
                )
        return mat(rows)
    return _flip_matrix(aleph)


def _block_flip_cells(block: Block):
    """Signed (anti-commuting) diagonal for one block: cell k of a size-n
    block carries the scalar (-1)^(n-1-k), times diag(1, -1) if realified."""
    n = block.size
    rows = [[ZERO] * block.width for _ in range(block.width)]
    for k in range(n):
        sign = ONE if (n - 1 - k) % 2 == 0 else -ONE
        if block.realified:
            rows[2 * k][2 * k] = sign
            rows[2 * k + 1][2 * k + 1] = -sign
        else:
            rows[k][k] = sign
    return rows


def _flip_matrix(aleph: MultiplicityFunction) -> Matrix:
    d = aleph.dim
    rows = [[ZERO] * d for _ in range(d)]
    by_key: dict = {}
    for block in build_jordan(aleph).blocks:
        by_key.setdefault((block.eigenvalue, block.size), []).append(block)

    def place(target: Block, source: Block):
        sub = _block_flip_cells(source)
        for i in range(source.width):
            for j in range(source.width):
                rows[target.offset + i][source.offset + j] = sub[i][j]

    for (eig, size), blocks in by_key.items():
        if eig.re == 0:
            for b in blocks:
                place(b, b)
        elif eig.re > 0:
            partners = by_key[(GaussRational(-eig.re, eig.im), size)]
            for b_pos, b_neg in zip(blocks, partners):
                place(b_neg, b_pos)
                place(b_pos, b_neg)
    return mat(rows)


# ---------------------------------------------------------------------------
# numeric closed forms (independent of any generic matrix-exponential routine)


def block_exp_numeric(aleph: MultiplicityFunction, t: float) -> np.ndarray:
    """e^{tJ} in floats, assembled from the per-block closed form
    e^{ta} * t^j/j! * (rotation by tb on realified cells)."""
    d = aleph.dim
    out = np.zeros((d, d))
    for block in build_jordan(aleph).blocks:
        o, n = block.offset, block.size
        a, b = float(block.eigenvalue.re), float(block.eigenvalue.im)
        ea = math.exp(t * a)
        if not block.realified:
            for k in range(n):
                for j in range(n - k):
                    out[o + k, o + k + j] = ea * t ** j / math.factorial(j)
        else:
            rot = np.array(
                [
                    [math.cos(t * b), -math.sin(t * b)],
                    [math.sin(t * b), math.cos(t * b)],
                ]
            )
            for k in range(n):
                for j in range(n - k):
                    cell = ea * t ** j / math.factorial(j) * rot
                    out[o + 2 * k : o + 2 * k + 2, o + 2 * (k + j) : o + 2 * (k + j) + 2] = cell
    return out


def _phi_block_numeric(block: Block, t: float) -> np.ndarray:
    w = block.width
    a, b = float(block.eigenvalue.re), float(block.eigenvalue.im)
    if block.eigenvalue.is_zero:
        out = np.zeros((w, w))
        for k in range(block.size):
            for j in range(block.size - k):
                out[k, k + j] = t ** j / math.factorial(j + 1)
        return out
    jb = np.array([[float(x) for x in row] for row in _block_matrix(block)])
    scale = abs(t) * math.hypot(a, b)
    if scale < 0.5:
        # series sum (tJ)^k/(k+1)!, geometric-dominated tail
        acc = np.eye(w)
        term = np.eye(w)
        k = 1
        while True:
            term = term @ (t * jb) / (k + 1)
            acc = acc + term
            if np.max(np.abs(term)) < 1e-18:
                return acc
            k += 1
    # block invertible away from zero eigenvalue: phi = (e^{tJ} - I) (tJ)^{-1}
    amb = MultiplicityFunction({(block.eigenvalue, block.size): 1})
    eb = block_exp_numeric(amb, t)
    return np.linalg.solve((t * jb).T, (eb - np.eye(w)).T).T


def phi_numeric(aleph: MultiplicityFunction, t: float) -> np.ndarray:
    """phi(tJ) in floats, per block: exact polynomial on nilpotent blocks,
    series for small arguments, otherwise (e^{tJ_b} - id)(tJ_b)^{-1}."""
    d = aleph.dim
    out = np.zeros((d, d))
    for block in build_jordan(aleph).blocks:
        o, w = block.offset, block.width
        out[o : o + w, o : o + w] = _phi_block_numeric(block, t)
    return out
