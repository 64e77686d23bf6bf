"""Jordan data of real almost Abelian Lie algebras and the ambient group law.

An almost Abelian algebra R^d x| R is determined by a multiplicity function:
finitely many (eigenvalue, block size) pairs with positive multiplicities,
describing the real Jordan normal form J of ad_{e0} restricted to R^d.
Eigenvalues are Gaussian rationals; a pair with nonzero imaginary part stands
for the conjugate pair and realifies to a 2n x 2n block.

Canonical block order: descending block size; within one size, nonzero
eigenvalues first, ascending lexicographically by (re, im), zero blocks last.
This makes the kernel-coordinate grading match the displayed block-triangular
normal form of restricted automorphisms, and puts the (0,1) blocks (the
abelian directions split off by the d0-decomposition) at the trailing
coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DegenerateDatum
from .linalg import (
    Matrix,
    Vector,
    mat,
    mat_vec,
    row_space_basis,
    vec,
    vec_is_zero,
    zero_vec,
)
from .scalars import GaussRational, TauScalar, as_tau


@dataclass(frozen=True)
class Block:
    """One realified Jordan block in the canonical layout."""

    eigenvalue: GaussRational
    size: int
    offset: int

    @property
    def realified(self) -> bool:
        return self.eigenvalue.im != 0

    @property
    def width(self) -> int:
        return 2 * self.size if self.realified else self.size

    @property
    def coords(self) -> range:
        return range(self.offset, self.offset + self.width)


class MultiplicityFunction:
    """Finitely supported map (eigenvalue, size) -> multiplicity.

    Eigenvalues with negative imaginary part are replaced by their conjugate
    representative.  The all-(0,1) datum is rejected: it describes an Abelian
    algebra, which is out of scope.

    >>> MultiplicityFunction({(GaussRational(0), 2): 1}).dim
    2
    """

    __slots__ = ("entries", "dim")

    def __init__(self, data):
        merged = {}
        for (eig, size), mult in dict(data).items():
            if not isinstance(eig, GaussRational):
                eig = GaussRational(eig)
            if eig.im < 0:
                eig = eig.conjugate()
            if not isinstance(size, int) or size < 1:
                raise ValueError(f"block size must be a positive integer, got {size!r}")
            if not isinstance(mult, int) or mult < 1:
                raise ValueError(f"multiplicity must be a positive integer, got {mult!r}")
            key = (eig, size)
            merged[key] = merged.get(key, 0) + mult
        if not merged:
            raise DegenerateDatum("empty multiplicity function")
        if all(eig.is_zero and size == 1 for (eig, size) in merged):
            raise DegenerateDatum(
                "all blocks are (0, 1): the algebra is Abelian, not almost Abelian"
            )
        ordered = sorted(
            merged.items(),
            key=lambda item: (
                -item[0][1],
                item[0][0].is_zero,
                item[0][0].re,
                item[0][0].im,
            ),
        )
        entries = tuple((eig, size, mult) for (eig, size), mult in ordered)
        d = sum(
            mult * size * (2 if eig.im != 0 else 1) for eig, size, mult in entries
        )
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "dim", d)

    def __setattr__(self, name, value):
        raise AttributeError("MultiplicityFunction is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, MultiplicityFunction) and self.entries == other.entries
        )

    def __hash__(self):
        return hash(self.entries)

    def multiplicity(self, eigenvalue, size: int) -> int:
        eig = eigenvalue if isinstance(eigenvalue, GaussRational) else GaussRational(eigenvalue)
        if eig.im < 0:
            eig = eig.conjugate()
        for e, s, m in self.entries:
            if e == eig and s == size:
                return m
        return 0

    @property
    def blocks(self) -> tuple:
        """Expanded blocks (multiplicities unrolled) with coordinate offsets."""
        out = []
        offset = 0
        for eig, size, mult in self.entries:
            for _ in range(mult):
                b = Block(eig, size, offset)
                out.append(b)
                offset += b.width
        return tuple(out)

    @property
    def is_nilpotent(self) -> bool:
        return all(eig.is_zero for eig, _, _ in self.entries)

    @property
    def spectrum(self) -> tuple:
        return tuple(eig for eig, _, _ in self.entries)

    @property
    def kernel_coordinates(self) -> tuple:
        """Coordinates spanning ker J: the top coordinate of each zero block."""
        return tuple(b.offset for b in self.blocks if b.eigenvalue.is_zero)

    @property
    def abelian_coordinates(self) -> tuple:
        """Coordinates of the (0,1) blocks (trailing in the canonical order)."""
        return tuple(
            b.offset for b in self.blocks if b.eigenvalue.is_zero and b.size == 1
        )

    def __str__(self):
        inner = ", ".join(
            f"({eig},{size}):{mult}" for eig, size, mult in self.entries
        )
        return "{" + inner + "}"

    def __repr__(self):
        return f"MultiplicityFunction({str(self)})"


def multiplicity_function(data) -> MultiplicityFunction:
    """Build a MultiplicityFunction from {(eigenvalue, size): multiplicity}."""
    return MultiplicityFunction(data)


@dataclass(frozen=True)
class JordanMatrix:
    """Realified Jordan matrix J with its block layout."""

    aleph: MultiplicityFunction
    matrix: Matrix
    blocks: tuple

    @property
    def dim(self) -> int:
        return self.aleph.dim


@lru_cache(maxsize=None)
def build_jordan(aleph: MultiplicityFunction) -> JordanMatrix:
    """Assemble the block-diagonal real Jordan matrix of the datum.

    A real block is x*id + N (ones on the superdiagonal); a complex block
    a+bi realifies to 2x2 cells [[a, -b], [b, a]] on the diagonal and 2x2
    identity cells on the superdiagonal.
    """
    d = aleph.dim
    rows = [[Fraction(0)] * d for _ in range(d)]
    for block in aleph.blocks:
        o = block.offset
        a, b = block.eigenvalue.re, block.eigenvalue.im
        if not block.realified:
            for k in range(block.size):
                rows[o + k][o + k] = a
                if k + 1 < block.size:
                    rows[o + k][o + k + 1] = Fraction(1)
        else:
            for k in range(block.size):
                i = o + 2 * k
                rows[i][i] = a
                rows[i][i + 1] = -b
                rows[i + 1][i] = b
                rows[i + 1][i + 1] = a
                if k + 1 < block.size:
                    rows[i][i + 2] = Fraction(1)
                    rows[i + 1][i + 3] = Fraction(1)
    return JordanMatrix(aleph, mat(rows), aleph.blocks)


@lru_cache(maxsize=None)
def jordan_numeric(aleph: MultiplicityFunction) -> np.ndarray:
    j = build_jordan(aleph).matrix
    return np.array([[float(x) for x in row] for row in j], dtype=float)


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True)
class AlgebraElement:
    """Element (v, t) of R^d x| R with exact coordinates."""

    v: Vector
    t: TauScalar

    def __str__(self):
        return f"({', '.join(str(x) for x in self.v)} | {self.t})"


@dataclass(frozen=True)
class GroupElement:
    """Element [v, t] of the simply connected group R^d x| R, exact coordinates."""

    v: Vector
    t: TauScalar

    @property
    def is_identity(self) -> bool:
        return self.t.is_zero and vec_is_zero(self.v)

    def __str__(self):
        return f"[{', '.join(str(x) for x in self.v)} | {self.t}]"


def algebra_element(aleph: MultiplicityFunction, v, t) -> AlgebraElement:
    v = vec(v)
    if len(v) != aleph.dim:
        raise ValueError(f"expected {aleph.dim} coordinates, got {len(v)}")
    return AlgebraElement(v, as_tau(t))


def group_element(aleph: MultiplicityFunction, v, t) -> GroupElement:
    v = vec(v)
    if len(v) != aleph.dim:
        raise ValueError(f"expected {aleph.dim} coordinates, got {len(v)}")
    return GroupElement(v, as_tau(t))


def group_identity(aleph: MultiplicityFunction) -> GroupElement:
    return GroupElement(zero_vec(aleph.dim), TauScalar(0))


def in_kernel(aleph: MultiplicityFunction, v) -> bool:
    """Whether v lies in ker J (a coordinate subspace in the canonical layout)."""
    v = vec(v)
    kernel = set(aleph.kernel_coordinates)
    return all(x.is_zero for i, x in enumerate(v) if i not in kernel)


def kernel_basis(aleph: MultiplicityFunction) -> tuple:
    """Standard basis vectors spanning ker J."""
    d = aleph.dim
    out = []
    for i in aleph.kernel_coordinates:
        e = [TauScalar(0)] * d
        e[i] = TauScalar(1)
        out.append(tuple(e))
    return tuple(out)


# ---------------------------------------------------------------------------
# structure operations


def commutator(
    aleph: MultiplicityFunction, x: AlgebraElement, y: AlgebraElement
) -> AlgebraElement:
    """Lie bracket [(v_x, t_x), (v_y, t_y)] = (t_x J v_y - t_y J v_x, 0).

    >>> heis = multiplicity_function({(GaussRational(0), 2): 1})
    >>> x = algebra_element(heis, [0, 1], 0)
    >>> y = algebra_element(heis, [0, 0], 1)
    >>> str(commutator(heis, x, y))
    '(-1, 0 | 0)'
    """
    j = build_jordan(aleph).matrix
    left = vec([x.t * c for c in mat_vec(j, y.v)])
    right = vec([y.t * c for c in mat_vec(j, x.v)])
    return AlgebraElement(
        tuple(a - b for a, b in zip(left, right)), TauScalar(0)
    )


def derived_algebra_basis(aleph: MultiplicityFunction) -> tuple:
    """Echelonized basis of [g, g] = im J (columns of J)."""
    j = build_jordan(aleph).matrix
    cols = list(zip(*j))
    return tuple(row_space_basis([c for c in cols if not vec_is_zero(c)]))


def group_mul(
    aleph: MultiplicityFunction,
    g: GroupElement,
    h: GroupElement,
    mode: str = "exact",
):
    """Product [v_g, t_g][v_h, t_h] = [v_g + e^{t_g J} v_h, t_g + t_h].

    Exact mode requires e^{t_g J} v_h to have a closed rational form: per
    block, the block is nilpotent, or the block exponential at t_g is the
    identity, or v_h vanishes on the block.  Otherwise ExactnessUnavailable
    is raised naming the first offending block.
    """
    from . import expmap

    if mode == "numeric":
        vg, tg = element_numeric(g)
        vh, th = element_numeric(h)
        return vg + expmap.block_exp_numeric(aleph, tg) @ vh, tg + th
    moved = expmap.apply_exp_tj(aleph, g.t, h.v)
    return GroupElement(
        tuple(a + b for a, b in zip(g.v, moved)), g.t + h.t
    )


def group_inverse(
    aleph: MultiplicityFunction, g: GroupElement, mode: str = "exact"
):
    """Inverse [v, t]^{-1} = [-e^{-t J} v, -t], same exactness domain as mul.

    >>> heis = multiplicity_function({(GaussRational(0), 2): 1})
    >>> str(group_inverse(heis, group_element(heis, [4, 2], 3)))
    '[2, -2 | -3]'
    """
    from . import expmap

    if mode == "numeric":
        v, t = element_numeric(g)
        return -(expmap.block_exp_numeric(aleph, -t) @ v), -t
    moved = expmap.apply_exp_tj(aleph, -g.t, g.v)
    return GroupElement(tuple(-x for x in moved), -g.t)


def element_numeric(x) -> tuple:
    """Float coordinates (numpy vector, float time) of an exact element."""
    return np.array([float(c) for c in x.v], dtype=float), float(x.t)
