"""Symmetry groups of the skeleton and the spine.

Vertices whose Cartan data are diagonal rescalings of the base vertex form
a group: transporting the path v -> u2 so that it starts at u1 lands on a
well-defined product vertex u1 * u2.  The b-coordinate matrices give a
faithful matrix model of this group, and the two routes -- path transport
and matrix multiplication -- are compared on every product this module
computes.

On affine components the group embeds into a picture built from a
W-invariant bilinear form: translations t_nu move the affine hyperplane,
and the skeleton group splits as the Weyl group times the spine group.

Matrix convention: every matrix in this module acts on column vectors of
Q_v coordinates, matching the Weyl-element matrices of the roots module.
For a vertex u the matrix ``sigma_b`` is the transpose of ``u.c_b`` (whose
rows are the simple roots of u), so the product law reads
``sigma_b(u1 * u2) = sigma_b(u1) @ sigma_b(u2)``.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .errors import (
    InvalidParameters,
    NotAffine,
    NotAnAutomorphism,
    NotSymmetrizable,
)
from .linalg import (
    imat_det,
    imat_identity,
    imat_mul,
    imat_transpose,
    imat_vec,
    smat_kernel,
    smat_rank,
)
from .cartan import CartanDatum, d_equivalence, symmetrize
from .groupoid import MarkedGraph, Vertex, transport_namesake
from .roots import RootVector


# ---------------------------------------------------------------------------
# group elements and the transport product


@dataclass(frozen=True)
class DGroupElement:
    """A vertex D-equivalent to the base, as a group element.

    ``sigma_b`` is the integer matrix sending Sigma_v coordinates to
    Sigma_vertex coordinates (columns are the simple roots of the vertex);
    ``diag_d`` is the diagonal certificate with A^vertex = D * A^base.
    """

    index: int
    vertex: Vertex
    sigma_b: tuple
    diag_d: tuple

    @property
    def is_identity(self) -> bool:
        return self.sigma_b == imat_identity(len(self.sigma_b))


def _bfs_paths(graph: MarkedGraph):
    """Mark sequence of one shortest path from the origin to every vertex."""
    adj = {}
    for i, j, mark in graph.edges:
        adj.setdefault(i, {})[mark] = j
        adj.setdefault(j, {})[mark] = i
    paths = {0: ()}
    queue = [0]
    while queue:
        i = queue.pop(0)
        for mark, j in sorted(adj.get(i, {}).items()):
            if j not in paths:
                paths[j] = paths[i] + (mark,)
                queue.append(j)
    return paths


class DSymmetryGroup:
    """The group of D-equivalent vertices of one explored graph.

    For complete graphs the multiplication table is total and ``order`` is
    the group order.  For truncated graphs products may fall outside the
    explored region (table entry None) and infinite order is certified by
    pairwise-distinct matrix powers up to ``power_bound``.
    """

    __slots__ = ("graph", "elements", "complete", "table", "order",
                 "power_bound", "infinite_verified", "abelian")

    def __init__(self, graph: MarkedGraph, elements, table,
                 power_bound: int, infinite_verified):
        self.graph = graph
        self.elements = tuple(elements)
        self.complete = graph.complete
        self.table = table
        self.order = len(self.elements) if graph.complete else None
        self.power_bound = power_bound
        self.infinite_verified = infinite_verified
        self.abelian = all(
            table.get((i, j)) == table.get((j, i))
            for i in range(len(self.elements))
            for j in range(i)
        )

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> DGroupElement:
        return self.elements[0]

    @property
    def is_trivial(self) -> bool:
        return self.complete and len(self.elements) == 1

    def multiply(self, i: int, j: int) -> Optional[int]:
        return self.table.get((i, j))

    def element_order(self, i: int, bound: int = 64) -> Optional[int]:
        """Order of element i from matrix powers, or None beyond ``bound``."""
        ident = imat_identity(len(self.elements[i].sigma_b))
        power = self.elements[i].sigma_b
        for k in range(1, bound + 1):
            if power == ident:
                return k
            power = imat_mul(power, self.elements[i].sigma_b)
        return None

    def to_json_dict(self) -> dict:
        if self.complete:
            order = str(len(self.elements))
        else:
            n = max(self.infinite_verified.values(), default=0)
            order = "infinite (powers distinct to %d)" % n if n else "unknown (truncated)"
        gens = []
        for g in self.elements:
            if g.is_identity and len(self.elements) > 1:
                continue
            gens.append({
                "vertex": g.index,
                "sigma_b": [list(row) for row in g.sigma_b],
                "diag_D": [str(d) for d in g.diag_d],
            })
        relations = []
        for (i, j), k in sorted(self.table.items()):
            if k is not None:
                relations.append("g%d*g%d=g%d" % (i, j, k))
        return {
            "order": order,
            "complete": self.complete,
            "abelian": self.abelian,
            "generators": gens,
            "relations_checked": relations,
        }


def _imat_inverse_unimodular(m) -> tuple:
    """Inverse of an integer matrix with determinant +-1 (adjugate)."""
    n = len(m)
    det = imat_det(m)
    assert det in (1, -1), "matrix is not unimodular"
    if n == 1:
        return ((det,),)
    adj = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = tuple(
                tuple(m[r][c] for c in range(n) if c != i)
                for r in range(n) if r != j
            )
            sign = -1 if (i + j) % 2 else 1
            row.append(sign * imat_det(minor) * det)
        adj.append(tuple(row))
    out = tuple(adj)
    assert imat_mul(m, out) == imat_identity(n)
    return out


def d_symmetry_group(graph: MarkedGraph, base: Optional[Vertex] = None,
                     power_bound: int = 10) -> DSymmetryGroup:
    """The group of vertices D-equivalent to the exploration origin.

    Products are computed by namesake transport (walk the path v -> u2
    starting from u1) and every product found inside the explored region is
    checked against the matrix product of the factors; products of elements
    whose transported endpoint was not explored are recorded as None.
    """
    origin = graph.vertices[0]
    if base is None:
        base = origin
    if base.c_b != origin.c_b:
        raise InvalidParameters("the base vertex must be the exploration origin")

    elements = []
    for idx, u in enumerate(graph.vertices):
        diag = d_equivalence(u.cartan, base.cartan)
        if diag is not None:
            elements.append(DGroupElement(
                index=idx,
                vertex=u,
                sigma_b=imat_transpose(u.c_b),
                diag_d=diag,
            ))
    assert elements and elements[0].index == 0, "the base vertex must be element 0"

    paths = _bfs_paths(graph)
    index_of = {g.index: pos for pos, g in enumerate(elements)}
    table = {}
    infinite_verified = {}
    for i, g1 in enumerate(elements):
        for j, g2 in enumerate(elements):
            endpoint = transport_namesake(origin, paths[g2.index], g1.vertex)
            found = graph.find(endpoint.c_b)
            product_matrix = imat_mul(g1.sigma_b, g2.sigma_b)
            # the two routes to the product must agree even off the graph
            assert imat_transpose(endpoint.c_b) == product_matrix, (
                "transport product disagrees with the matrix product"
            )
            if found is None:
                table[(i, j)] = None
                continue
            pos = index_of.get(found)
            assert pos is not None, (
                "a product of D-equivalent vertices must be D-equivalent"
            )
            table[(i, j)] = pos
    if graph.complete:
        assert all(k is not None for k in table.values()), (
            "complete graph must give a total multiplication table"
        )
        # identity and inverses
        for i in range(len(elements)):
            assert table[(0, i)] == i and table[(i, 0)] == i
            assert any(table[(i, j)] == 0 for j in range(len(elements)))
    else:
        ident = imat_identity(len(origin.c_b))
        for i, g in enumerate(elements):
            if g.is_identity:
                continue
            seen = {ident, g.sigma_b}
            power = g.sigma_b
            distinct = True
            for _ in range(power_bound - 1):
                power = imat_mul(power, g.sigma_b)
                if power in seen:
                    distinct = False
                    break
                seen.add(power)
            if distinct:
                infinite_verified[i] = power_bound
    return DSymmetryGroup(graph, elements, table, power_bound, infinite_verified)


def sp_d_group(spine: MarkedGraph, base: Optional[Vertex] = None,
               power_bound: int = 10) -> DSymmetryGroup:
    """The group Sp^D(v) of the explored spine."""
    from .groupoid import SPINE

    if spine.mode != SPINE:
        raise InvalidParameters("sp_d_group expects a spine graph")
    return d_symmetry_group(spine, base, power_bound=power_bound)


# ---------------------------------------------------------------------------
# Dynkin-diagram automorphisms


def dynkin_hom(g: DGroupElement, pd) -> tuple:
    """The permutation that ``g`` induces on the principal roots.

    The group elements act on Sigma_pr; the induced permutation preserves
    parities and the coroot pairing table.  A failure of either property
    signals an upstream bug, reported as NotAnAutomorphism.
    """
    assert pd.saturated, "Dynkin automorphisms need saturated principal data"
    index_of = {alpha.coords: i for i, alpha in enumerate(pd.sigma_pr)}
    perm = []
    for alpha in pd.sigma_pr:
        image = tuple(imat_vec(g.sigma_b, alpha.coords))
        pos = index_of.get(image)
        if pos is None:
            raise NotAnAutomorphism(
                "image %s of %s is not a principal root" % (image, alpha.coords))
        if pd.sigma_pr[pos].parity != alpha.parity:
            raise NotAnAutomorphism("parity not preserved on %s" % (alpha.coords,))
        perm.append(pos)
    if len(set(perm)) != len(perm):
        raise NotAnAutomorphism("image roots collide")
    for i in range(len(perm)):
        for j in range(len(perm)):
            if pd.b_pr[perm[i]][perm[j]] != pd.b_pr[i][j]:
                raise NotAnAutomorphism("coroot pairings not preserved")
    # faithfulness on the principal roots when they span the coordinate space
    from .scalars import QQ

    rows = tuple(tuple(QQ.scalar(c) for c in a.coords) for a in pd.sigma_pr)
    if rows and smat_rank(rows) == pd.n and perm == list(range(len(perm))):
        assert g.is_identity, (
            "a nontrivial element acted trivially on a spanning Sigma_pr")
    return tuple(perm)


# ---------------------------------------------------------------------------
# skeleton structure: W x Sp^D factorization


def sk_d_structure(skeleton: MarkedGraph, sp_d: DSymmetryGroup,
                   weyl: Sequence, *, delta=None) -> dict:
    """Bounded verification that Sk^D(v) = W x| Sp^D(v).

    ``weyl`` is a list of Weyl elements (column-matrix convention).  Checks,
    within the explored/enumerated ranges: the skeleton's D-equivalent
    vertices, triviality of W cap Sp^D, uniqueness of the w*s factorization,
    and commutation of the two factors.  When ``delta`` (the coordinates of
    the affine generator) is given, each Weyl element is additionally split
    as finite-order part times a delta-translation.
    """
    skd = d_symmetry_group(skeleton, power_bound=sp_d.power_bound)
    w_matrices = {w.matrix for w in weyl}

    overlap = [g for g in sp_d.elements
               if not g.is_identity and g.sigma_b in w_matrices]
    skd_by_matrix = {g.sigma_b: i for i, g in enumerate(skd.elements)}

    hits = {}
    ambiguous = 0
    for w in weyl:
        for s in sp_d.elements:
            prod = imat_mul(w.matrix, s.sigma_b)
            pos = skd_by_matrix.get(prod)
            if pos is None:
                continue
            if pos in hits:
                ambiguous += 1
            hits.setdefault(pos, (w, s))

    commutes = all(
        imat_mul(w.matrix, s.sigma_b) == imat_mul(s.sigma_b, w.matrix)
        for w in weyl for s in sp_d.elements
    )

    report = {
        "skd_enumerated": len(skd.elements),
        "spd_enumerated": len(sp_d.elements),
        "w_enumerated": len(weyl),
        "w_cap_spd_trivial": not overlap,
        "factored": len(hits),
        "factored_ambiguously": ambiguous,
        "factorization_unique": ambiguous == 0,
        "spd_commutes_with_w": commutes,
        "truncated": not (skeleton.complete and sp_d.complete),
    }

    if delta is not None:
        d = tuple(delta.coords) if isinstance(delta, RootVector) else tuple(delta)
        finite = []
        for w in weyl:
            power = w.matrix
            for k in range(1, 2 * len(weyl) + 2):
                if power == imat_identity(len(d)):
                    finite.append(w)
                    break
                power = imat_mul(power, w.matrix)
        split = 0
        for w in weyl:
            for wd in finite:
                t = imat_mul(w.matrix, _imat_inverse_unimodular(wd.matrix))
                if _is_delta_translation(t, d):
                    split += 1
                    break
        report["weyl_split_checked"] = len(weyl)
        report["weyl_split_found"] = split
    return report


def _is_delta_translation(matrix, delta) -> bool:
    """Whether (matrix - I) maps every basis vector into Q*delta."""
    n = len(delta)
    for col in range(n):
        column = tuple(matrix[row][col] - (1 if row == col else 0) for row in range(n))
        if not any(column):
            continue
        # column must be a rational multiple of delta
        ratio = None
        for c, dc in zip(column, delta):
            if dc == 0:
                if c != 0:
                    return False
                continue
            r = Fraction(c, dc)
            if ratio is None:
                ratio = r
            elif r != ratio:
                return False
        if ratio is None and any(column):
            return False
    return True


# ---------------------------------------------------------------------------
# bilinear frames and affine translations


class AffineFrame:
    """Coordinates for the invariant bilinear form of one component.

    The frame spans V_b plus one dual direction for every radical dimension:
    the Gram matrix is the symmetric Cartan matrix extended by dual vectors
    pairing as Kronecker delta against an integral basis of the radical and
    isotropically against each other.  All maps returned for a frame act on
    column vectors of extended coordinates.
    """

    __slots__ = ("vertex", "field", "n", "corank", "gram", "radical", "delta")

    def __init__(self, vertex, field, gram, radical, delta):
        self.vertex = vertex
        self.field = field
        self.n = vertex.size
        self.corank = len(radical)
        self.gram = gram
        self.radical = radical
        self.delta = delta

    @property
    def dim(self) -> int:
        return self.n + self.corank

    def embed(self, coords) -> tuple:
        """Extended coordinates of a V_b vector."""
        if len(coords) != self.n:
            raise InvalidParameters("expected %d coordinates" % self.n)
        out = [self.field.scalar(c) for c in coords]
        return tuple(out) + tuple(self.field.zero() for _ in range(self.corank))

    def scalars(self, extended) -> tuple:
        if len(extended) != self.dim:
            raise InvalidParameters("expected %d extended coordinates" % self.dim)
        return tuple(self.field.scalar(c) for c in extended)

    def form(self, lam, mu):
        """The bilinear form on extended coordinate vectors."""
        lam = self.scalars(lam)
        mu = self.scalars(mu)
        total = self.field.zero()
        for i, li in enumerate(lam):
            if li.is_zero:
                continue
            row = self.gram[i]
            for j, mj in enumerate(mu):
                if mj.is_zero:
                    continue
                total = total + li * row[j] * mj
        return total

    @property
    def delta_extended(self) -> Optional[tuple]:
        if self.delta is None:
            return None
        return self.embed(self.delta.coords)

    def lambda_direction(self, j: int = 0) -> tuple:
        """Extended coordinates of the j-th dual vector."""
        if not 0 <= j < self.corank:
            raise InvalidParameters("no dual direction %d" % j)
        return tuple(
            self.field.one() if i == self.n + j else self.field.zero()
            for i in range(self.dim)
        )


def _primitive_integer(vec) -> Optional[tuple]:
    """Scale a rational vector to a primitive integer vector."""
    fracs = []
    for s in vec:
        if not s.is_rational:
            return None
        fracs.append(s.as_fraction())
    denom = 1
    for f in fracs:
        denom = denom * f.denominator // _gcd(denom, f.denominator)
    ints = [int(f * denom) for f in fracs]
    g = 0
    for c in ints:
        g = _gcd(g, c)
    if g == 0:
        return None
    ints = [c // g for c in ints]
    if sum(ints) < 0:
        ints = [-c for c in ints]
    return tuple(ints)


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def bilinear_frame(vertex: Vertex) -> AffineFrame:
    """The invariant bilinear form of the component of ``vertex``.

    The vertex must carry a symmetric Cartan matrix (the Gram matrix of its
    simple roots); a symmetrizable but unsymmetrized matrix is rescaled
    first, so the caller controls normalization by choosing the vertex.
    The form is extended beyond V_b by one dual vector per radical
    dimension, pairing as Kronecker delta against an integral basis of the
    radical; the extension is checked to be nondegenerate and the restricted
    form W-invariant on the anisotropic reflections of the vertex.
    """
    datum = vertex.cartan
    field = datum.field
    n = datum.size
    b = datum.matrix
    if any(b[x][y] != b[y][x] for x in range(n) for y in range(n)):
        rescaled = symmetrize(datum)
        if rescaled is None:
            raise NotSymmetrizable("the Cartan matrix has no symmetric rescaling")
        b = rescaled[1].matrix
    assert all(b[x][y] == b[y][x] for x in range(n) for y in range(n))

    kernel = smat_kernel(b)
    radical = []
    for vec in kernel:
        prim = _primitive_integer(vec)
        if prim is None:
            raise InvalidParameters("the radical has no rational integral basis")
        radical.append(prim)
    corank = len(radical)

    # dual block: C with C * radical^T = identity, supported on pivot columns
    c_block = [[field.zero()] * n for _ in range(corank)]
    if corank:
        pivots = []
        taken = []
        work = [list(map(Fraction, r)) for r in radical]
        for row in range(corank):
            piv = next(
                (c for c in range(n) if c not in taken and work[row][c] != 0),
                None,
            )
            assert piv is not None, "radical basis is not independent"
            taken.append(piv)
            pivots.append(piv)
            scale = work[row][piv]
            work[row] = [x / scale for x in work[row]]
            for other in range(corank):
                if other != row and work[other][piv] != 0:
                    factor = work[other][piv]
                    work[other] = [x - factor * y for x, y in zip(work[other], work[row])]
        # solve the corank x corank system on the pivot columns
        sub = [[Fraction(radical[k][p]) for k in range(corank)] for p in pivots]
        inv = _fraction_inverse(sub)
        for j in range(corank):
            for k, p in enumerate(pivots):
                c_block[j][p] = field.scalar(inv[j][k])
        for j in range(corank):
            for k in range(corank):
                val = sum(
                    (Fraction(radical[k][x]) * _scalar_fraction(c_block[j][x])
                     for x in range(n)),
                    Fraction(0),
                )
                assert val == (1 if j == k else 0), "dual pairing failed"

    dim = n + corank
    gram = []
    for i in range(dim):
        row = []
        for j in range(dim):
            if i < n and j < n:
                row.append(b[i][j])
            elif i < n:
                row.append(c_block[j - n][i])
            elif j < n:
                row.append(c_block[i - n][j])
            else:
                row.append(field.zero())
        gram.append(tuple(row))
    gram = tuple(gram)
    assert smat_rank(gram) == dim, "extended form must be nondegenerate"

    delta = None
    if corank == 1:
        delta = RootVector.from_coords(radical[0], vertex.base.parity)

    frame = AffineFrame(vertex, field, gram, tuple(radical), delta)

    # W-invariance on the anisotropic reflections available at the vertex
    for x in range(n):
        axx = datum.a(x, x)
        if axx.is_zero:
            continue
        s_rows = []
        for y in range(n):
            row = [field.one() if y == z else field.zero() for z in range(n)]
            coeff = (field.scalar(2) / axx) * datum.a(x, y)
            row[x] = row[x] - coeff
            s_rows.append(row)
        for y in range(n):
            for z in range(n):
                lhs = sum(
                    (s_rows[y][i] * b[i][j] * s_rows[z][j]
                     for i in range(n) for j in range(n)
                     if not s_rows[y][i].is_zero and not s_rows[z][j].is_zero),
                    field.zero(),
                )
                assert lhs == b[y][z], "the form is not reflection-invariant"
    return frame


def _scalar_fraction(s) -> Fraction:
    return s.as_fraction() if not s.is_zero else Fraction(0)


def _fraction_inverse(mat):
    """Inverse of a square matrix of Fractions (Gauss-Jordan)."""
    k = len(mat)
    work = [list(row) + [Fraction(1) if i == j else Fraction(0) for j in range(k)]
            for i, row in enumerate(mat)]
    for col in range(k):
        piv = next((r for r in range(col, k) if work[r][col] != 0), None)
        assert piv is not None, "singular matrix"
        work[col], work[piv] = work[piv], work[col]
        scale = work[col][col]
        work[col] = [x / scale for x in work[col]]
        for r in range(k):
            if r != col and work[r][col] != 0:
                factor = work[r][col]
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return [row[k:] for row in work]


def translation(frame: AffineFrame, nu) -> tuple:
    """The matrix of t_nu on the frame, for nu in V_b coordinates.

    t_nu(lam) = lam + k*nu - ((lam,nu) + (k/2)(nu,nu)) delta with
    k = (lam, delta).  Requires a one-dimensional radical.  The matrix acts
    on column vectors of extended coordinates.
    """
    if frame.corank != 1:
        raise NotAffine("translations need a one-dimensional radical")
    field = frame.field
    nu_ext = frame.embed(nu)
    delta_ext = frame.delta_extended
    nu_nu = frame.form(nu_ext, nu_ext)
    half = field.scalar(Fraction(1, 2))

    columns = []
    for i in range(frame.dim):
        e = tuple(field.one() if j == i else field.zero() for j in range(frame.dim))
        k = frame.form(e, delta_ext)
        lam_nu = frame.form(e, nu_ext)
        coeff = lam_nu + half * k * nu_nu
        col = [e[j] + k * nu_ext[j] - coeff * delta_ext[j] for j in range(frame.dim)]
        columns.append(col)
    matrix = tuple(tuple(columns[j][i] for j in range(frame.dim))
                   for i in range(frame.dim))

    # basic sanity on the spot: delta is fixed, V_b vectors move by
    # multiples of delta only
    assert _apply(matrix, delta_ext) == tuple(delta_ext)
    for x in range(frame.n):
        e = tuple(field.one() if j == x else field.zero() for j in range(frame.dim))
        image = _apply(matrix, e)
        shift = [image[j] - e[j] for j in range(frame.dim)]
        expected = [-frame.form(e, nu_ext) * delta_ext[j] for j in range(frame.dim)]
        assert list(shift) == expected, "t_nu must shift V_b vectors along delta"
    return matrix


def _apply(matrix, vec) -> tuple:
    return tuple(
        sum((matrix[i][j] * vec[j] for j in range(1, len(vec))),
            matrix[i][0] * vec[0])
        for i in range(len(matrix))
    )


def reflection_matrix(frame: AffineFrame, alpha) -> tuple:
    """The reflection s_alpha on the frame, for non-isotropic alpha.

    alpha is given in extended coordinates; the matrix acts on column
    vectors and is checked to be an involution preserving the form.
    """
    alpha = frame.scalars(alpha)
    field = frame.field
    norm = frame.form(alpha, alpha)
    if norm.is_zero:
        raise InvalidParameters("isotropic vectors have no reflection")
    two = field.scalar(2)
    columns = []
    for i in range(frame.dim):
        e = tuple(field.one() if j == i else field.zero() for j in range(frame.dim))
        coeff = two * frame.form(e, alpha) / norm
        columns.append([e[j] - coeff * alpha[j] for j in range(frame.dim)])
    matrix = tuple(tuple(columns[j][i] for j in range(frame.dim))
                   for i in range(frame.dim))
    # involution and orthogonality
    square = _mat_mul_scalar(matrix, matrix, field)
    ident = tuple(
        tuple(field.one() if i == j else field.zero() for j in range(frame.dim))
        for i in range(frame.dim)
    )
    assert square == ident, "reflection must be an involution"
    for i in range(frame.dim):
        col_i = tuple(matrix[r][i] for r in range(frame.dim))
        for j in range(frame.dim):
            col_j = tuple(matrix[r][j] for r in range(frame.dim))
            assert frame.form(col_i, col_j) == frame.gram[i][j], (
                "reflection must preserve the form"
            )
    return matrix


def _mat_mul_scalar(a, b, field):
    n = len(a)
    return tuple(
        tuple(
            sum((a[i][k] * b[k][j] for k in range(1, n)), a[i][0] * b[0][j])
            for j in range(n)
        )
        for i in range(n)
    )


def translation_identities(frame: AffineFrame, nu, mu, phis=()) -> bool:
    """Exact verification of the translation identities.

    (i) t_nu t_mu = t_{nu+mu}; (ii) t_nu(beta) = beta - (beta,nu) delta on
    V_b; (iii) t_{c delta} = id; (iv) phi t_nu phi^{-1} = t_{phi(nu)} for
    form-preserving phi fixing delta (phis are extended-coordinate
    matrices).  AssertionError on any failure.
    """
    field = frame.field
    t_nu = translation(frame, nu)
    t_mu = translation(frame, mu)
    both = translation(frame, [a + b for a, b in zip(_sc(frame, nu), _sc(frame, mu))])
    assert _mat_mul_scalar(t_nu, t_mu, field) == both, "t_nu t_mu != t_{nu+mu}"
    assert _mat_mul_scalar(t_mu, t_nu, field) == both, "translations must commute"

    # (ii) is asserted inside translation(); (iii):
    ident = tuple(
        tuple(field.one() if i == j else field.zero() for j in range(frame.dim))
        for i in range(frame.dim)
    )
    for c in (1, 2, -3):
        t_cd = translation(frame, [field.scalar(c * d) for d in frame.delta.coords])
        assert t_cd == ident, "t_{c delta} must be the identity"

    for phi in phis:
        image = _apply_to_rows(phi, _sc_ext(frame, nu), field)
        lhs = _mat_mul_scalar(_mat_mul_scalar(phi, t_nu, field),
                              _scalar_inverse(phi, field), field)
        rhs = translation(frame, image[: frame.n])
        assert all(image[frame.n + j].is_zero for j in range(frame.corank)), (
            "phi must keep nu inside V_b")
        assert lhs == rhs, "conjugation formula failed"
    return True


def _sc(frame, vec):
    return [frame.field.scalar(c) for c in vec]


def _sc_ext(frame, vec):
    return frame.embed(vec)


def _apply_to_rows(matrix, vec, field):
    return _apply(matrix, vec)


def _scalar_inverse(matrix, field):
    """Inverse of a Scalar matrix via Gauss-Jordan."""
    n = len(matrix)
    work = [list(row) + [field.one() if i == j else field.zero() for j in range(n)]
            for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not work[r][col].is_zero), None)
        assert piv is not None, "singular matrix"
        work[col], work[piv] = work[piv], work[col]
        scale = work[col][col]
        work[col] = [x / scale for x in work[col]]
        for r in range(n):
            if r != col and not work[r][col].is_zero:
                factor = work[r][col]
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)
