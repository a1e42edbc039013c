"""Exact linear algebra helpers.

Three layers, matching how the rest of the package stores data:

* integer matrices/vectors (tuples of ints) — root coordinates, Weyl group
  elements, base-change matrices; includes a Smith normal form with
  unimodular transforms on both sides;
* Scalar matrices — Cartan matrices and bilinear forms over the exact
  coefficient field (Gaussian elimination, determinants, kernels, solving);
* a rational cone-membership test (exact Phase-I simplex with Bland's rule)
  used to decide whether a vector is a nonnegative combination of a small
  set of generators.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from gmpy2 import mpq, mpz

from .errors import ParameterizedInput
from .scalars import Scalar

IVec = Tuple[int, ...]
IMat = Tuple[IVec, ...]


# ---------------------------------------------------------------------------
# integer matrices


def imat_identity(n: int) -> IMat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def imat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IMat:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    bt = list(zip(*b))
    return tuple(
        tuple(sum(ra[x] * cb[x] for x in range(k)) for cb in bt) for ra in a)


def imat_vec(a: Sequence[Sequence[int]], v: Sequence[int]) -> IVec:
    return tuple(sum(r[i] * v[i] for i in range(len(v))) for r in a)


def ivec_mat(v: Sequence[int], a: Sequence[Sequence[int]]) -> IVec:
    return tuple(sum(v[i] * a[i][j] for i in range(len(v)))
                 for j in range(len(a[0])))


def imat_transpose(a: Sequence[Sequence[int]]) -> IMat:
    return tuple(zip(*a))


def ivec_add(u: Sequence[int], v: Sequence[int]) -> IVec:
    return tuple(x + y for x, y in zip(u, v))


def ivec_sub(u: Sequence[int], v: Sequence[int]) -> IVec:
    return tuple(x - y for x, y in zip(u, v))


def ivec_scale(c: int, v: Sequence[int]) -> IVec:
    return tuple(c * x for x in v)


def imat_det(a: Sequence[Sequence[int]]) -> int:
    """Integer determinant (fraction-free Bareiss elimination)."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(mat: Sequence[Sequence[int]]) -> Tuple[IMat, IMat, IMat]:
    """Return (U, D, V) with ``mat = U @ D @ V``, U and V unimodular and D
    diagonal with nonnegative entries, each dividing the next."""
    m, n = len(mat), len(mat[0]) if mat else 0
    a = [list(r) for r in mat]
    u = [list(r) for r in imat_identity(m)]
    v = [list(r) for r in imat_identity(n)]

    # Row/column operations are applied to ``a``; the *inverse* operation is
    # folded into u (columns) / v (rows), keeping  mat == u @ a @ v  invariant.

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        for r in u:
            r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        v[i], v[j] = v[j], v[i]

    def row_add(i, j, c):  # row i += c * row j
        a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        for r in u:
            r[j] -= c * r[i]

    def col_add(i, j, c):  # col i += c * col j
        for r in a:
            r[i] += c * r[j]
        v[j] = [x - c * y for x, y in zip(v[j], v[i])]

    def row_negate(i):
        a[i] = [-x for x in a[i]]
        for r in u:
            r[i] = -r[i]

    def clear_at(t):
        while True:
            # pull the smallest nonzero magnitude in the trailing block to (t,t)
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if a[i][j] and (best is None
                                    or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return False
            if best[0] != t:
                row_swap(t, best[0])
            if best[1] != t:
                col_swap(t, best[1])
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_add(i, t, -q)
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_add(j, t, -q)
                    if a[t][j]:
                        done = False
            if done:
                if a[t][t] < 0:
                    row_negate(t)
                return True

    rank = 0
    for t in range(min(m, n)):
        if clear_at(t):
            rank += 1
        else:
            break

    while True:
        fixed = True
        for t in range(rank - 1):
            if a[t + 1][t + 1] % a[t][t]:
                row_add(t, t + 1, 1)
                clear_at(t)
                clear_at(t + 1)
                fixed = False
        if fixed:
            break

    U = tuple(tuple(r) for r in u)
    D = tuple(tuple(r) for r in a)
    V = tuple(tuple(r) for r in v)
    assert imat_mul(imat_mul(U, D), V) == tuple(tuple(r) for r in mat)
    return U, D, V


# ---------------------------------------------------------------------------
# Scalar matrices (lists/tuples of Scalar entries)

SMat = Tuple[Tuple[Scalar, ...], ...]


def smat(field, rows) -> SMat:
    return tuple(tuple(field.scalar(x) for x in row) for row in rows)


def smat_mul(a: SMat, b: SMat) -> SMat:
    bt = list(zip(*b))
    return tuple(
        tuple(_dot(ra, cb) for cb in bt) for ra in a)


def _dot(u, v) -> Scalar:
    acc = u[0] * v[0]
    for x, y in zip(u[1:], v[1:]):
        acc = acc + x * y
    return acc


def smat_vec(a: SMat, v: Sequence[Scalar]) -> Tuple[Scalar, ...]:
    return tuple(_dot(r, v) for r in a)


def svec_mat(v: Sequence[Scalar], a: SMat) -> Tuple[Scalar, ...]:
    return tuple(_dot(v, col) for col in zip(*a))


def smat_det(a: SMat) -> Scalar:
    n = len(a)
    field = a[0][0].field if n else None
    if n == 0:
        raise ValueError("determinant of an empty matrix")
    m = [list(r) for r in a]
    det = field.one()
    for k in range(n):
        piv = next((i for i in range(k, n) if not m[i][k].is_zero), None)
        if piv is None:
            return field.zero()
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det = det * m[k][k]
        inv = m[k][k].inverse()
        for i in range(k + 1, n):
            if not m[i][k].is_zero:
                c = m[i][k] * inv
                m[i] = [x - c * y for x, y in zip(m[i], m[k])]
    return det


def _row_echelon(a: SMat):
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    m = [list(r) for r in a]
    rows, cols = len(m), len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if not m[i][c].is_zero), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and not m[i][c].is_zero:
                ci = m[i][c]
                m[i] = [x - ci * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def smat_rank(a: SMat) -> int:
    return len(_row_echelon(a)[1])


def smat_kernel(a: SMat) -> Tuple[Tuple[Scalar, ...], ...]:
    """Basis of the right kernel {x : a @ x = 0}."""
    if not a:
        return ()
    field = a[0][0].field
    cols = len(a[0])
    m, pivots = _row_echelon(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [field.zero()] * cols
        vec[f] = field.one()
        for r, c in enumerate(pivots):
            vec[c] = -m[r][f]
        basis.append(tuple(vec))
    return tuple(basis)


def smat_solve(a: SMat, b: Sequence[Scalar]) -> Optional[Tuple[Scalar, ...]]:
    """One solution of ``a @ x = b``, or None if inconsistent."""
    if not a:
        return ()
    field = a[0][0].field
    cols = len(a[0])
    aug = tuple(tuple(list(row) + [bi]) for row, bi in zip(a, b))
    m, pivots = _row_echelon(aug)
    if cols in pivots:
        return None
    x = [field.zero()] * cols
    for r, c in enumerate(pivots):
        x[c] = m[r][cols]
    return tuple(x)


def smat_inverse(a: SMat) -> Optional[SMat]:
    n = len(a)
    field = a[0][0].field
    aug = tuple(
        tuple(list(row) + [field.one() if i == j else field.zero()
                           for j in range(n)])
        for i, row in enumerate(a))
    m, pivots = _row_echelon(aug)
    if pivots != list(range(n)):
        return None
    return tuple(tuple(m[i][n:]) for i in range(n))


# ---------------------------------------------------------------------------
# rational cone membership


def _as_mpq(x) -> mpq:
    if isinstance(x, Scalar):
        return x.as_mpq()  # raises ParameterizedInput on non-rational values
    if isinstance(x, (int, mpz)) or type(x) is mpq:
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    raise ParameterizedInput(f"{x!r} is not an exact rational")


def cone_membership(generators: Sequence[Sequence],
                    target: Sequence) -> Optional[Tuple[Fraction, ...]]:
    """Nonnegative rational coefficients expressing ``target`` in the cone
    spanned by ``generators``, or None if no such combination exists.

    All entries must be exact rationals; scalars that involve a formal
    parameter raise :class:`ParameterizedInput`.  Exact Phase-I simplex with
    Bland's rule, so the answer is a certificate, not an approximation.
    """
    gens = [[_as_mpq(x) for x in g] for g in generators]
    tgt = [_as_mpq(x) for x in target]
    n = len(gens)
    dim = len(tgt)
    if any(len(g) != dim for g in gens):
        raise ValueError("generator/target dimension mismatch")
    if all(x == 0 for x in tgt):
        return tuple(Fraction(0) for _ in range(n))
    if n == 0:
        return None

    # tableau rows: [coefficient columns | artificial columns | rhs]
    width = n + dim + 1
    rows: List[List[mpq]] = []
    for i in range(dim):
        coeffs = [gens[j][i] for j in range(n)]
        rhs = tgt[i]
        if rhs < 0:
            coeffs = [-c for c in coeffs]
            rhs = -rhs
        art = [mpq(1) if k == i else mpq(0) for k in range(dim)]
        rows.append(coeffs + art + [rhs])
    basis = [n + i for i in range(dim)]
    # Phase-I objective: minimize the sum of artificials.  Reduced-cost row
    # starts as  c_j - sum of rows  (artificial columns cancel to zero).
    obj = [mpq(0)] * width
    for j in range(n):
        obj[j] = -sum(r[j] for r in rows)
    obj[-1] = -sum(r[-1] for r in rows)

    while True:
        enter = next((j for j in range(n + dim) if obj[j] < 0), None)
        if enter is None:
            break
        pivot_row, best = None, None
        for i in range(dim):
            if rows[i][enter] > 0:
                ratio = rows[i][-1] / rows[i][enter]
                if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[pivot_row]):
                    pivot_row, best = i, ratio
        if pivot_row is None:
            break  # cannot happen in Phase I, defensive
        p = rows[pivot_row][enter]
        rows[pivot_row] = [x / p for x in rows[pivot_row]]
        for i in range(dim):
            if i != pivot_row and rows[i][enter]:
                c = rows[i][enter]
                rows[i] = [x - c * y for x, y in zip(rows[i], rows[pivot_row])]
        if obj[enter]:
            c = obj[enter]
            obj = [x - c * y for x, y in zip(obj, rows[pivot_row])]
        basis[pivot_row] = enter

    infeasibility = sum(rows[i][-1] for i in range(dim) if basis[i] >= n)
    if infeasibility != 0:
        return None
    sol = [mpq(0)] * n
    for i in range(dim):
        if basis[i] < n:
            sol[basis[i]] = rows[i][-1]
    assert all(c >= 0 for c in sol)
    for i in range(dim):
        assert sum(gens[j][i] * sol[j] for j in range(n)) == tgt[i]
    return tuple(Fraction(int(c.numerator), int(c.denominator)) for c in sol)
