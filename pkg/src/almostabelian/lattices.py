"""Discrete central subgroups: normal forms and automorphism relatedness.

A discrete central subgroup is free of finite rank, generated by elements
[v_i, t_i] with v_i in ker J and t_i an integer multiple of the torsion
generator.  Generator reduction, equality testing, and the relatedness
criterion all run in exact arithmetic on the (v; t) coordinate columns.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .expmap import torsion
from .integers import bezout_row_reduce, det_int, is_unimodular
from .jordan import (
    MultiplicityFunction,
    group_element,
    in_kernel,
)
from .linalg import (
    from_columns,
    identity,
    is_invertible,
    rank,
    solve,
    solve_columns,
    vec,
)
from .scalars import TauScalar

ZERO = TauScalar(0)
ONE = TauScalar(1)


@dataclass(frozen=True)
class DiscreteCentralSubgroup:
    """Free central subgroup given by a tuple of generators [v_i, t_i]."""

    aleph: MultiplicityFunction
    generators: tuple

    def __init__(self, aleph, generators):
        object.__setattr__(self, "aleph", aleph)
        object.__setattr__(
            self,
            "generators",
            tuple(group_element(aleph, g.v, g.t) for g in generators),
        )

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def time_multiples(self) -> tuple:
        """Generator times as integer multiples of the torsion generator."""
        tor = torsion(self.aleph)
        out = []
        for g in self.generators:
            if tor.is_trivial:
                out.append(0)
            else:
                out.append((g.t / tor.t0).as_integer())
        return tuple(out)

    def columns(self) -> list:
        return [vec(tuple(g.v) + (g.t,)) for g in self.generators]

    def __str__(self) -> str:
        inside = ", ".join(str(g) for g in self.generators)
        return f"<{inside}>" if inside else "<trivial>"


def subgroup_from_data(aleph, gens) -> DiscreteCentralSubgroup:
    """Build a subgroup from (vector, time) pairs without validation."""
    return DiscreteCentralSubgroup(
        aleph, tuple(group_element(aleph, v, t) for v, t in gens)
    )


def validate_subgroup(aleph: MultiplicityFunction, subgroup) -> tuple:
    """Centrality, independence, and rank-bound check.

    Returns a tuple of violation descriptions; empty when the generators
    define a valid discrete central subgroup.
    """
    violations = []
    tor = torsion(aleph)
    for g in subgroup.generators:
        if not in_kernel(aleph, g.v):
            violations.append(f"generator {g} has vector part outside ker J")
        if not tor.contains(g.t):
            violations.append(f"generator {g} has time outside the torsion subgroup")
    cols = [vec(tuple(g.v) + (g.t,)) for g in subgroup.generators]
    k = len(cols)
    if cols and rank(tuple(cols)) < k:
        violations.append("generators are linearly dependent")
    bound = len(aleph.kernel_coordinates) + 1
    if k > bound:
        violations.append(f"rank {k} exceeds dim ker J + 1 = {bound}")
    return tuple(violations)


# ---------------------------------------------------------------------------
# generator reduction and lattice equality


def reduce_generators(subgroup: DiscreteCentralSubgroup):
    """Unimodular change of generators zeroing all times but the first.

    Returns (reduced, A) with A in GL(Z, k) acting by column operations
    on the generator matrix (new generator j is the A-column-j combination
    of the old ones); the surviving time is gcd of the integer multiples,
    nonnegative, times the torsion generator.
    """
    gens = subgroup.generators
    k = len(gens)
    if k == 0:
        return subgroup, ()
    d = subgroup.aleph.dim
    _, a = bezout_row_reduce(subgroup.time_multiples)
    new_gens = []
    for j in range(k):
        v = [ZERO] * d
        t = ZERO
        for i in range(k):
            c = a[i][j]
            if c:
                for idx in range(d):
                    v[idx] = v[idx] + c * gens[i].v[idx]
                t = t + c * gens[i].t
        new_gens.append(group_element(subgroup.aleph, v, t))
    reduced = DiscreteCentralSubgroup(subgroup.aleph, tuple(new_gens))
    return reduced, tuple(tuple(row) for row in a)


def is_economic(subgroup) -> bool:
    """True when only the first generator may carry a nonzero time."""
    return all(g.t.is_zero for g in subgroup.generators[1:])


def lattice_equal(n: DiscreteCentralSubgroup, m: DiscreteCentralSubgroup) -> bool:
    """Whether the two generator sets span the same subgroup.

    Each generator of one must have integer coordinates in the other,
    solved exactly over the coordinate field.
    """
    if n.aleph != m.aleph:
        raise ValueError("subgroups live in different groups")
    return _integer_inside(n, m) and _integer_inside(m, n)


def _integer_inside(n, m) -> bool:
    cols_n = n.columns()
    if not cols_n:
        return True
    cols_m = m.columns()
    if not cols_m:
        return False
    span = from_columns(cols_m)
    sols = solve_columns(span, cols_n)
    if sols is None:
        return False
    return all(c.is_integer for lam in sols for c in lam)


# ---------------------------------------------------------------------------
# normalization by automorphisms


def normalize_subgroup(subgroup: DiscreteCentralSubgroup):
    """Automorphism splitting the subgroup into kernel and torsion parts.

    Returns (phi, image) with image = phi(subgroup) generated by [0, t1]
    (when a nonzero time survives reduction) together with time-zero
    generators; every image generator has either v = 0 or t = 0.
    Reduction to economic form happens first, which also makes the
    surviving time positive, so the dilation component is 1.
    """
    from .autos import GenericAut, apply_aut, identity_aut

    aleph = subgroup.aleph
    reduced, _ = reduce_generators(subgroup)
    gens = reduced.generators
    if not gens or gens[0].t.is_zero:
        return identity_aut(aleph), reduced
    t1 = gens[0].t
    gamma = tuple(-(c / t1) for c in gens[0].v)
    phi = GenericAut(identity(aleph.dim), gamma, 1)
    image = DiscreteCentralSubgroup(
        aleph, tuple(apply_aut(aleph, phi, g) for g in gens)
    )
    return phi, image


def quotient_iso_certificate(n, m, phi) -> bool:
    """Whether phi carries the first subgroup exactly onto the second.

    A true answer certifies that the quotients by the two subgroups are
    isomorphic via the map induced by phi.
    """
    from .autos import apply_aut

    aleph = n.aleph
    image = DiscreteCentralSubgroup(
        aleph, tuple(apply_aut(aleph, phi, g) for g in n.generators)
    )
    return lattice_equal(image, m)


# ---------------------------------------------------------------------------
# relatedness by automorphisms


def _kernel_grading(aleph: MultiplicityFunction) -> list:
    """Kernel multiplicities grouped by block size, sizes descending."""
    return [(size, mult) for eig, size, mult in aleph.entries if eig.is_zero]


def _significant(subgroup) -> list:
    """Generator vectors restricted to the ker-J coordinates."""
    coords = subgroup.aleph.kernel_coordinates
    return [vec(g.v[i] for i in coords) for g in subgroup.generators]


def _block_boundaries(aleph) -> list:
    out = []
    start = 0
    for _, mult in _kernel_grading(aleph):
        out.append((start, start + mult))
        start += mult
    return out


def _has_triangular_pattern(aleph, delta_tilde) -> bool:
    for r0, r1 in _block_boundaries(aleph):
        for r in range(r0, r1):
            for c in range(r0):
                if not delta_tilde[r][c].is_zero:
                    return False
    return True


def related_by_aut_check(n, m, delta_tilde, a) -> bool:
    """Verify a relatedness certificate (restricted operator, integer A).

    The restricted operator acts on the ker-J coordinates and must be
    invertible and block upper triangular in the descending block-size
    grading; A must be unimodular, with first row forced to (+-1, 0, ..)
    when the surviving time is nonzero; the surviving times must agree
    up to sign; and the operator must carry the significant generator
    columns onto the A-combinations of the target's, on every constrained
    column (all of them at time zero, columns 2..k otherwise: the first
    column is absorbed by the translational part of the automorphism).

    Raises ValueError when either subgroup is not economic or the
    operator is not square of the right size.
    """
    aleph = n.aleph
    if not (is_economic(n) and is_economic(m)):
        raise ValueError("both subgroups must be in economic form")
    q = len(aleph.kernel_coordinates)
    if len(delta_tilde) != q or any(len(row) != q for row in delta_tilde):
        raise ValueError(f"restricted operator must be {q} x {q}")
    delta_tilde = tuple(vec(row) for row in delta_tilde)
    if not _has_triangular_pattern(aleph, delta_tilde):
        return False
    if not is_invertible(delta_tilde):
        return False
    if n.rank != m.rank:
        return False
    k = n.rank
    if k == 0:
        return True
    if len(a) != k or any(len(row) != k for row in a):
        return False
    if not is_unimodular(a):
        return False
    a = tuple(tuple(int(x) for x in row) for row in a)
    t1 = n.generators[0].t
    s1 = m.generators[0].t
    if t1 != s1 and t1 != -s1:
        return False
    if not t1.is_zero:
        # the time row of the automorphism identity forces the first
        # generator to map with coefficient +-1 and nothing else
        if abs(a[0][0]) != 1 or any(a[0][j] != 0 for j in range(1, k)):
            return False
    v_cols = _significant(n)
    u_cols = _significant(m)
    constrained = range(k) if t1.is_zero else range(1, k)
    for j in constrained:
        lhs = [
            sum((delta_tilde[r][c] * v_cols[j][c] for c in range(q)), ZERO)
            for r in range(q)
        ]
        rhs = [
            sum((u_cols[i][r] * a[i][j] for i in range(k)), ZERO)
            for r in range(q)
        ]
        if lhs != rhs:
            return False
    return True


def related_by_aut_search(n, m, bound: int = 1):
    """Brute-force search for a relatedness certificate.

    Enumerates unimodular A with entries up to the bound, solving for a
    near-identity restricted operator on the constrained columns.  A hit
    always passes related_by_aut_check; no hit means only that nothing
    was found within the bound, except that differing surviving times
    are definitively unrelated.
    """
    aleph = n.aleph
    if not (is_economic(n) and is_economic(m)):
        raise ValueError("both subgroups must be in economic form")
    if n.rank != m.rank:
        return None
    q = len(aleph.kernel_coordinates)
    k = n.rank
    if k == 0:
        return identity(q), ()
    t1 = n.generators[0].t
    s1 = m.generators[0].t
    if t1 != s1 and t1 != -s1:
        return None
    positions = _pattern_positions(aleph)
    v_cols = _significant(n)
    u_cols = _significant(m)
    constrained = list(range(k)) if t1.is_zero else list(range(1, k))
    for a in _unimodular_candidates(k, bound, first_row_fixed=not t1.is_zero):
        delta = _solve_delta(q, positions, v_cols, u_cols, a, constrained)
        if delta is None:
            continue
        if related_by_aut_check(n, m, delta, a):
            return delta, a
    return None


def _pattern_positions(aleph) -> list:
    """Entry positions allowed by the block-triangular pattern."""
    boundaries = _block_boundaries(aleph)
    q = boundaries[-1][1] if boundaries else 0
    positions = []
    for r0, r1 in boundaries:
        for r in range(r0, r1):
            for c in range(r0, q):
                positions.append((r, c))
    return positions


def _unimodular_candidates(k, bound, first_row_fixed):
    values = range(-bound, bound + 1)
    if first_row_fixed:
        first_rows = [(sign,) + (0,) * (k - 1) for sign in (1, -1)]
    else:
        first_rows = list(itertools.product(values, repeat=k))
    for tail in itertools.product(values, repeat=k * (k - 1)):
        rows_tail = [tail[i * k : (i + 1) * k] for i in range(k - 1)]
        for first in first_rows:
            a = [list(first)] + [list(r) for r in rows_tail]
            if abs(det_int(a)) == 1:
                yield tuple(tuple(row) for row in a)


def _solve_delta(q, positions, v_cols, u_cols, a, constrained):
    # solve (id + X) V = U A on the constrained columns with X supported
    # on the triangular pattern, free entries left at zero
    k = len(a)
    rows = []
    targets = []
    for j in constrained:
        for r in range(q):
            coeffs = [v_cols[j][c] if rr == r else ZERO for (rr, c) in positions]
            rows.append(vec(coeffs))
            rhs = sum((u_cols[i][r] * a[i][j] for i in range(k)), ZERO)
            targets.append(rhs - v_cols[j][r])
    if rows:
        x = solve(tuple(rows), vec(targets))
        if x is None:
            return None
    else:
        x = [ZERO] * len(positions)
    delta = [[ONE if r == c else ZERO for c in range(q)] for r in range(q)]
    for (r, c), value in zip(positions, x):
        delta[r][c] = delta[r][c] + value
    delta = tuple(tuple(row) for row in delta)
    if not is_invertible(delta):
        return None
    return delta


# ---------------------------------------------------------------------------
# faithful representability of the quotient


@dataclass(frozen=True)
class FaithfulQuotientDecision:
    """Outcome of the representability test for the quotient by a lattice.

    When representable, phi is an automorphism carrying the subgroup onto
    image, whose generators are supported on the split Euclidean factor
    and the time axis, and rep is the faithful representation of the
    quotient by image (equivalently, of the original quotient through
    the isomorphism induced by phi).
    """

    representable: bool
    phi: object = None
    image: DiscreteCentralSubgroup = None
    rep: object = None


def has_faithful_quotient_rep(
    aleph: MultiplicityFunction, subgroup
) -> FaithfulQuotientDecision:
    """Decide whether the quotient admits a faithful matrix representation.

    The criterion is exact: the real span of the generator columns must
    meet the derived subalgebra, embedded at time zero, only in the
    origin.  On success the normalizing chain (a shear clearing the
    derived-subalgebra components, then the torsion splitting) lands the
    generators on the split Euclidean factor and the time axis, and the
    representation of the transformed quotient is built.
    """
    from .autos import apply_aut, compose
    from .jordan import derived_algebra_basis
    from .reps import quotient_faithful_rep

    gen_cols = [vec(tuple(g.v) + (g.t,)) for g in subgroup.generators]
    derived = [vec(tuple(b) + (ZERO,)) for b in derived_algebra_basis(aleph)]
    if gen_cols:
        separate = rank(tuple(gen_cols)) + len(derived) == rank(
            tuple(gen_cols + derived)
        )
    else:
        separate = True
    if not separate:
        return FaithfulQuotientDecision(representable=False)
    shear = _kernel_shear(aleph, subgroup)
    sheared = DiscreteCentralSubgroup(
        aleph, tuple(apply_aut(aleph, shear, g) for g in subgroup.generators)
    )
    splitter, image = normalize_subgroup(sheared)
    phi = compose(splitter, shear)
    rep = quotient_faithful_rep(aleph, image)
    return FaithfulQuotientDecision(
        representable=True, phi=phi, image=image, rep=rep
    )


def _kernel_shear(aleph, subgroup):
    """Automorphism clearing the deep-kernel rows of the generators.

    Kernel coordinates of zero blocks of size at least two lie in the
    derived subalgebra, so the separation criterion makes the clearing
    shear solvable (deep coordinates only exist when the torsion is
    trivial, forcing every generator time to zero).  The shear fixes J,
    hence is an automorphism with trivial dilation.
    """
    from .autos import GenericAut, identity_aut

    abelian = sorted(aleph.abelian_coordinates)
    deep = [i for i in aleph.kernel_coordinates if i not in set(abelian)]
    if not deep or not subgroup.generators:
        return identity_aut(aleph)
    v_deep = [vec(g.v[i] for i in deep) for g in subgroup.generators]
    v_ab = [vec(g.v[i] for i in abelian) for g in subgroup.generators]
    # solve L v_ab = v_deep columnwise; unknown L is |deep| x |abelian|
    rows = []
    targets = []
    for j in range(len(subgroup.generators)):
        for r in range(len(deep)):
            coeffs = []
            for rr in range(len(deep)):
                for c in range(len(abelian)):
                    coeffs.append(v_ab[j][c] if rr == r else ZERO)
            rows.append(vec(coeffs))
            targets.append(v_deep[j][r])
    x = solve(tuple(rows), vec(targets))
    if x is None:
        raise ValueError("separation criterion violated during shear solve")
    d = aleph.dim
    delta = [[ONE if i == j else ZERO for j in range(d)] for i in range(d)]
    for r in range(len(deep)):
        for c in range(len(abelian)):
            delta[deep[r]][abelian[c]] = -x[r * len(abelian) + c]
    return GenericAut(tuple(tuple(row) for row in delta), (0,) * d, 1)
