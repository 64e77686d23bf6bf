"""Dense exact linear algebra over the field Q(tau).

Matrices are tuples of row tuples, vectors are tuples; every entry is a
TauScalar.  Everything here is plain Gaussian elimination over a field;
smallness of the ambient dimensions (a handful of Jordan blocks) makes
asymptotics irrelevant, exactness is the point.
"""

from __future__ import annotations

from .scalars import TauScalar, as_tau

Vector = tuple
Matrix = tuple

_ZERO = TauScalar(0)
_ONE = TauScalar(1)


def vec(entries) -> Vector:
    return tuple(as_tau(e) for e in entries)


def mat(rows) -> Matrix:
    out = tuple(vec(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def zero_vec(n: int) -> Vector:
    return (_ZERO,) * n


def unit_vec(n: int, i: int) -> Vector:
    return tuple(_ONE if j == i else _ZERO for j in range(n))


def identity(n: int) -> Matrix:
    return tuple(unit_vec(n, i) for i in range(n))


def zeros(rows: int, cols: int) -> Matrix:
    return ((_ZERO,) * cols,) * rows


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(x + y for x, y in zip(u, v, strict=True))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(x - y for x, y in zip(u, v, strict=True))


def vec_scale(c, u: Vector) -> Vector:
    c = as_tau(c)
    return tuple(c * x for x in u)


def vec_is_zero(u: Vector) -> bool:
    return all(x.is_zero for x in u)


def mat_vec(a: Matrix, u: Vector) -> Vector:
    return tuple(sum((row[j] * u[j] for j in range(len(u))), _ZERO) for row in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), _ZERO) for col in bt) for row in a
    )


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(vec_add(ra, rb) for ra, rb in zip(a, b, strict=True))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(vec_sub(ra, rb) for ra, rb in zip(a, b, strict=True))


def mat_scale(c, a: Matrix) -> Matrix:
    return tuple(vec_scale(c, row) for row in a)


def from_columns(cols) -> Matrix:
    return transpose(mat(cols))


def columns(a: Matrix):
    return list(transpose(a))


def _rref(rows):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    work = [list(r) for r in rows]
    nrows = len(work)
    ncols = len(work[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if not work[i][c].is_zero), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = _ONE / work[r][c]
        work[r] = [inv * x for x in work[r]]
        for i in range(nrows):
            if i != r and not work[i][c].is_zero:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return [tuple(row) for row in work], pivots


def rank(a: Matrix) -> int:
    if not a:
        return 0
    return len(_rref(a)[1])


def row_space_basis(vectors) -> list:
    """Echelonized basis of the span of the given vectors."""
    vectors = [vec(v) for v in vectors]
    if not vectors:
        return []
    rows, pivots = _rref(vectors)
    return [rows[i] for i in range(len(pivots))]


def in_span(vectors, target) -> bool:
    """Whether target lies in the span of the given vectors."""
    vectors = [vec(v) for v in vectors]
    target = vec(target)
    if vec_is_zero(target):
        return True
    if not vectors:
        return False
    base = rank(tuple(vectors))
    return rank(tuple(vectors) + (target,)) == base


def solve(a: Matrix, b: Vector):
    """One exact solution of a x = b, or None if inconsistent.

    Free variables are set to zero.
    """
    sols = solve_columns(a, (tuple(b),))
    return None if sols is None else sols[0]


def solve_columns(a: Matrix, bs):
    """Solve a x = b for each b in bs; None if any system is inconsistent."""
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    bs = [vec(b) for b in bs]
    aug = [tuple(a[i]) + tuple(b[i] for b in bs) for i in range(nrows)]
    rows, pivots = _rref(aug)
    main_pivots = [p for p in pivots if p < ncols]
    if len(main_pivots) != len(pivots):
        return None
    out = []
    for k in range(len(bs)):
        x = [_ZERO] * ncols
        for r, c in enumerate(main_pivots):
            x[c] = rows[r][ncols + k]
        out.append(tuple(x))
    return out


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("inverse of a non-square matrix")
    aug = [tuple(a[i]) + unit_vec(n, i) for i in range(n)]
    rows, pivots = _rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(r[n:] for r in rows)


def is_invertible(a: Matrix) -> bool:
    n = len(a)
    return n == 0 or (len(a[0]) == n and rank(a) == n)


def nullspace(a: Matrix) -> list:
    """Basis of {x : a x = 0}."""
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    if ncols == 0:
        return []
    if nrows == 0:
        return [unit_vec(ncols, j) for j in range(ncols)]
    rows, pivots = _rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [_ZERO] * ncols
        x[f] = _ONE
        for r, c in enumerate(pivots):
            x[c] = -rows[r][f]
        basis.append(tuple(x))
    return basis


def span_intersection(vectors_a, vectors_b) -> list:
    """Basis of span(vectors_a) intersected with span(vectors_b)."""
    va = [vec(v) for v in vectors_a]
    vb = [vec(v) for v in vectors_b]
    if not va or not vb:
        return []
    stacked = from_columns(va + [vec_scale(-1, v) for v in vb])
    out = []
    for rel in nullspace(stacked):
        combo = zero_vec(len(va[0]))
        for c, v in zip(rel[: len(va)], va):
            combo = vec_add(combo, vec_scale(c, v))
        if not vec_is_zero(combo):
            out.append(combo)
    return row_space_basis(out)
