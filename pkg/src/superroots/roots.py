"""Root-system computations on top of explored spine/skeleton graphs.

Everything here works in the coordinate lattice Q_v = Z^n attached to the
vertex where exploration started: a root is an integer vector of
coefficients on the simple roots of that vertex.  The module derives the
principal roots and the associated generalized Cartan matrix, generates the
Weyl group, enumerates real roots by orbit, decides membership in the
totally positive cone, recognizes imaginary roots, classifies components
(Fin/Aff/Ind and parity type I/II), and handles root bases.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .cartan import (
    AFF,
    EVEN,
    FIN,
    ODD,
    CartanDatum,
    d_equivalence,
    gcm_block_types,
    gcm_type,
    reflectable,
    validate_gcm,
    vertex_flags,
)
from .errors import (
    Decomposable,
    InfiniteSystem,
    InvalidParameters,
    NotAGCM,
    NotGCM,
    NotKacMoody,
    ParameterizedInput,
)
from .groupoid import SPINE, MarkedGraph, Vertex, is_isotropic
from .linalg import cone_membership, smith_normal_form
from .scalars import Scalar, integrality_probe


# ---------------------------------------------------------------------------
# Root vectors


@dataclass(frozen=True)
class RootVector:
    """An element of Q_v: integer coordinates on the base simple roots.

    ``parity`` is the value of the additive extension of the base parity
    function, so it is determined by ``coords``; it is stored to avoid
    threading the base datum through every computation.
    """

    coords: tuple
    parity: int

    @staticmethod
    def from_coords(coords, parity_vector) -> "RootVector":
        coords = tuple(int(c) for c in coords)
        par = sum(c * p for c, p in zip(coords, parity_vector)) % 2
        return RootVector(coords, par)

    @property
    def height(self) -> int:
        return sum(self.coords)

    @property
    def support(self) -> frozenset:
        return frozenset(i for i, c in enumerate(self.coords) if c)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __neg__(self) -> "RootVector":
        return RootVector(tuple(-c for c in self.coords), self.parity)

    def __add__(self, other: "RootVector") -> "RootVector":
        return RootVector(
            tuple(a + b for a, b in zip(self.coords, other.coords)),
            (self.parity + other.parity) % 2,
        )

    def __sub__(self, other: "RootVector") -> "RootVector":
        return self + (-other)

    def scale(self, k: int) -> "RootVector":
        return RootVector(tuple(k * c for c in self.coords), (k * self.parity) % 2)

    def __repr__(self) -> str:  # compact; used in assertion messages
        return "RootVector(%s)" % (self.coords,)


def _as_int_coords(mu) -> tuple:
    if isinstance(mu, RootVector):
        return mu.coords
    return tuple(int(c) for c in mu)


# ---------------------------------------------------------------------------
# Weyl elements


@dataclass(frozen=True)
class WeylElement:
    """A Weyl-group element: a word in the reflections attached to pi and
    the integer matrix of its action on Q_v (columns = images of the base
    simple roots)."""

    word: tuple
    matrix: tuple

    @staticmethod
    def identity(n: int) -> "WeylElement":
        return WeylElement((), tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def length(self) -> int:
        return len(self.word)

    def apply(self, coords: Sequence[int]) -> tuple:
        return tuple(sum(row[j] * coords[j] for j in range(len(coords))) for row in self.matrix)

    def apply_root(self, root: RootVector) -> RootVector:
        # The action is linear on Q_v and preserves parity: reflections add
        # integer multiples of even lattice vectors (alpha for alpha in pi).
        return RootVector(self.apply(root.coords), root.parity)

    def then(self, other: "WeylElement") -> "WeylElement":
        """Composition self o other (apply ``other`` first)."""
        n = len(self.matrix)
        prod = tuple(
            tuple(sum(self.matrix[i][k] * other.matrix[k][j] for k in range(n)) for j in range(n))
            for i in range(n)
        )
        return WeylElement(self.word + other.word, prod)

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.matrix == other.matrix


# ---------------------------------------------------------------------------
# Principal data


class PrincipalData:
    """Principal roots, pi, coroot pairings and the associated GCM.

    ``pairing_rows`` holds, for each element of ``pi``, the integer row w
    with <mu, alpha^vee> = w . mu for mu in Q_v; ``b_pi[i][j]`` is then
    w_i . pi[j].  ``sigma_pairing_rows`` is the same for Sigma_pr.
    """

    __slots__ = (
        "field",
        "n",
        "base_matrix",
        "base_parity",
        "sigma_pr",
        "pi",
        "sigma_pairing_rows",
        "pairing_rows",
        "b_pr",
        "b_pi",
        "saturated",
        "purely_anisotropic",
        "fully_reflectable",
        "iso_simples",
        "nr_simples",
    )

    def __init__(self, **kw):
        for name in self.__slots__:
            object.__setattr__(self, name, kw[name])

    def __setattr__(self, name, value):
        raise AttributeError("PrincipalData is immutable")

    def pairing(self, mu, i: int) -> int:
        """<mu, pi[i]^vee> for mu with integer coordinates."""
        row = self.pairing_rows[i]
        coords = _as_int_coords(mu)
        return sum(r * c for r, c in zip(row, coords))

    def s_matrix(self, i: int) -> tuple:
        """Matrix of the reflection attached to pi[i], acting on columns."""
        alpha = self.pi[i].coords
        row = self.pairing_rows[i]
        n = self.n
        return tuple(
            tuple((1 if a == b else 0) - alpha[a] * row[b] for b in range(n)) for a in range(n)
        )

    def reflection(self, i: int) -> WeylElement:
        return WeylElement((i,), self.s_matrix(i))

    def report(self, classification: Optional[dict] = None) -> dict:
        out = {
            "sigma_pr": [list(a.coords) for a in self.sigma_pr],
            "pi": [list(a.coords) for a in self.pi],
            "b_pi": [list(row) for row in self.b_pi],
            "saturated": self.saturated,
        }
        if classification is not None:
            out["type"] = classification["type"]
            out["parity_type"] = classification["parity_type"]
        return out


def _spine_vertices_with_depths(spine: MarkedGraph):
    return list(zip(spine.vertices, spine.depths))


def _pairing_row(field, base_matrix, u: Vertex, x: int):
    """Integer pairing row of the coroot of b_u(x) (anisotropic x at u).

    The coroot is (2 / a^u_xx) a_u(x) in a-coordinates; pairing against the
    base simple roots is right-multiplication by the base Cartan matrix.
    All entries must be integers for a principal root.
    """
    axx = u.cartan.a(x, x)
    two = field.scalar(2)
    coroot = [two / axx * c for c in u.c_a[x]]
    n = len(coroot)
    row = []
    for j in range(n):
        entry = field.zero()
        for k in range(n):
            entry = entry + coroot[k] * base_matrix[k][j]
        probe = integrality_probe(entry)
        if not probe.is_integer:
            raise NotAGCM(
                "coroot pairing of a principal root is not integral: entry %s" % (entry,)
            )
        row.append(probe.value)
    return tuple(row)


def principal_data(spine: MarkedGraph, *, saturated_override: Optional[bool] = None) -> PrincipalData:
    """Collect Sigma_pr, pi, coroot pairings and B_pi from a spine graph.

    Sigma_pr consists of the anisotropic reflectable simple roots found at
    the explored spine vertices.  pi keeps the even ones and doubles the odd
    ones (with coroot halved).  Raises NotAGCM when the pairing table
    violates the generalized-Cartan-matrix conditions, which signals a
    broken component upstream.
    """
    if spine.mode != SPINE:
        raise InvalidParameters("principal_data expects a spine exploration")
    base = spine.vertices[0]
    field = base.cartan.field
    n = base.size
    base_matrix = base.cartan.matrix
    base_parity = base.cartan.parity

    sigma: list[RootVector] = []
    sigma_rows: list[tuple] = []
    sigma_first_depth: list[int] = []
    seen_sigma: dict[tuple, int] = {}
    iso_simples: list[RootVector] = []
    seen_iso: set = set()
    nr_simples: list[RootVector] = []
    seen_nr: set = set()
    fully_reflectable = True
    d_class_reps: list[CartanDatum] = []
    d_class_first_depth: list[int] = []

    for u, depth in _spine_vertices_with_depths(spine):
        known = False
        for rep in d_class_reps:
            if rep == u.cartan or d_equivalence(rep, u.cartan) is not None:
                known = True
                break
        if not known:
            d_class_reps.append(u.cartan)
            d_class_first_depth.append(depth)
        for x in range(n):
            can_reflect = reflectable(u.cartan, x)
            if not can_reflect:
                fully_reflectable = False
                root = RootVector.from_coords(u.c_b[x], base_parity)
                if root.coords not in seen_nr:
                    seen_nr.add(root.coords)
                    nr_simples.append(root)
                continue
            if is_isotropic(u.cartan, x):
                root = RootVector.from_coords(u.c_b[x], base_parity)
                if root.coords not in seen_iso:
                    seen_iso.add(root.coords)
                    iso_simples.append(root)
                continue
            root = RootVector.from_coords(u.c_b[x], base_parity)
            row = _pairing_row(field, base_matrix, u, x)
            if root.coords in seen_sigma:
                prev = sigma_rows[seen_sigma[root.coords]]
                assert prev == row, (
                    "coroot of a principal root depends on the witnessing vertex: %s vs %s"
                    % (prev, row)
                )
                continue
            expected_parity = u.cartan.p(x)
            assert root.parity == expected_parity, (
                "parity of %s disagrees with the coordinate extension" % (root,)
            )
            seen_sigma[root.coords] = len(sigma)
            sigma.append(root)
            sigma_rows.append(row)
            sigma_first_depth.append(depth)

    # Pairing table over Sigma_pr, with the GCM conditions of the pairing
    # lemma: diagonal 2, off-diagonal nonpositive integers, zero-symmetric,
    # and even entries in rows attached to odd roots.
    m = len(sigma)
    b_pr = tuple(
        tuple(sum(r * c for r, c in zip(sigma_rows[i], sigma[j].coords)) for j in range(m))
        for i in range(m)
    )
    for i in range(m):
        if b_pr[i][i] != 2:
            raise NotAGCM("principal pairing table has diagonal %s" % (b_pr[i][i],))
        for j in range(m):
            if i == j:
                continue
            if b_pr[i][j] > 0:
                raise NotAGCM("positive off-diagonal pairing %s" % (b_pr[i][j],))
            if (b_pr[i][j] == 0) != (b_pr[j][i] == 0):
                raise NotAGCM("pairing table not zero-symmetric")
            if sigma[i].parity == ODD and b_pr[i][j] % 2 != 0:
                raise NotAGCM("odd principal root with odd pairing %s" % (b_pr[i][j],))

    # pi: keep even entries, double odd ones (coroot halves).
    pi: list[RootVector] = []
    pi_rows: list[tuple] = []
    for i in range(m):
        if sigma[i].parity == EVEN:
            pi.append(sigma[i])
            pi_rows.append(sigma_rows[i])
        else:
            assert all(r % 2 == 0 for r in sigma_rows[i]), (
                "halved coroot of a doubled odd root must stay integral"
            )
            pi.append(sigma[i].scale(2))
            pi_rows.append(tuple(r // 2 for r in sigma_rows[i]))
    assert len({a.coords for a in pi}) == len(pi), "doubling collided two pi elements"
    for i in range(m):
        pair = sum(r * c for r, c in zip(pi_rows[i], pi[i].coords))
        assert pair == 2, "normalization <alpha, alpha^vee> = 2 failed"

    b_pi = tuple(
        tuple(sum(r * c for r, c in zip(pi_rows[i], pi[j].coords)) for j in range(m))
        for i in range(m)
    )
    if m:
        try:
            validate_gcm(b_pi)
        except NotGCM as exc:
            raise NotAGCM(str(exc)) from exc

    if saturated_override is not None:
        saturated = bool(saturated_override)
    elif spine.complete:
        saturated = True
    else:
        depths = spine.depths
        dmax = max(depths)
        # The layer at dmax may be cut off; the last full layer is dmax - 1.
        last_full = dmax - 1
        saturated = (
            last_full >= 1
            and all(d < last_full for d in sigma_first_depth)
            and all(d < last_full for d in d_class_first_depth)
        )

    return PrincipalData(
        field=field,
        n=n,
        base_matrix=base_matrix,
        base_parity=base_parity,
        sigma_pr=tuple(sigma),
        pi=tuple(pi),
        sigma_pairing_rows=tuple(sigma_rows),
        pairing_rows=tuple(pi_rows),
        b_pr=b_pr,
        b_pi=b_pi,
        saturated=saturated,
        purely_anisotropic=not iso_simples,
        fully_reflectable=fully_reflectable,
        iso_simples=tuple(iso_simples),
        nr_simples=tuple(nr_simples),
    )


# ---------------------------------------------------------------------------
# Indecomposables oracle


def indecomposables_oracle(roots: Iterable[RootVector]) -> set:
    """Elements of a finite set that are not sums of two members.

    Brute force on purpose: this is the independent cross-check for
    Sigma_pr (principal roots = indecomposable anisotropic positive roots).
    """
    pool = {r.coords: r for r in roots}
    out = set()
    for coords, root in pool.items():
        decomposable = False
        for other in pool.values():
            rest = tuple(a - b for a, b in zip(coords, other.coords))
            if rest in pool:
                decomposable = True
                break
        if not decomposable:
            out.add(root)
    return out


# ---------------------------------------------------------------------------
# Weyl group generation


def _check_reduced(pd: PrincipalData, word: tuple) -> None:
    """A geodesic word must have pairwise distinct inversion roots
    gamma_t = s_{i_1} ... s_{i_{t-1}} (pi[i_t])."""
    seen = set()
    prefix = WeylElement.identity(pd.n)
    for t, i in enumerate(word):
        gamma = prefix.apply(pd.pi[i].coords)
        assert gamma not in seen, "BFS produced a non-reduced word %s" % (word,)
        seen.add(gamma)
        prefix = prefix.then(pd.reflection(i))


def weyl_generate(pd: PrincipalData, max_length: int) -> list:
    """All Weyl-group elements of length <= max_length, BFS order.

    Elements are deduplicated by matrix; the BFS depth is the Coxeter
    length, verified on every element through the inversion-root criterion.
    """
    assert pd.saturated, "Weyl generation needs saturated principal data"
    gens = [pd.reflection(i) for i in range(len(pd.pi))]
    for g in gens:
        sq = g.then(g)
        assert sq == WeylElement.identity(pd.n), "reflection is not an involution"
    identity = WeylElement.identity(pd.n)
    found = {identity.matrix: identity}
    frontier = [identity]
    order = [identity]
    depth = 0
    while frontier and depth < max_length:
        depth += 1
        new_frontier = []
        for w in frontier:
            for i, g in enumerate(gens):
                cand = w.then(g)
                if cand.matrix in found:
                    assert found[cand.matrix].length <= cand.length
                    continue
                _check_reduced(pd, cand.word)
                found[cand.matrix] = cand
                new_frontier.append(cand)
                order.append(cand)
        frontier = new_frontier
    return order


def _weyl_orbit(pd: PrincipalData, seeds: Iterable[RootVector], height_bound: int) -> set:
    """Closure of ``seeds`` under the reflections of pi, kept within
    |height| <= height_bound (with an internal cushion so that short
    excursions above the bound cannot disconnect the orbit)."""
    cushion = 2 * max((abs(a.height) for a in pd.pi), default=0)
    work_bound = height_bound + cushion
    gens = [pd.reflection(i) for i in range(len(pd.pi))]
    pool = {}
    frontier = []
    for s in seeds:
        if abs(s.height) <= work_bound and s.coords not in pool:
            pool[s.coords] = s
            frontier.append(s)
    while frontier:
        nxt = []
        for mu in frontier:
            for g in gens:
                img = g.apply_root(mu)
                if abs(img.height) > work_bound or img.coords in pool:
                    continue
                pool[img.coords] = img
                nxt.append(img)
        frontier = nxt
    return {r for r in pool.values() if abs(r.height) <= height_bound}


def real_roots(pd: PrincipalData, spine: MarkedGraph, height_bound: int) -> dict:
    """Real roots within |height| <= height_bound, split into the three
    classes: anisotropic (Weyl orbit of Sigma_pr), isotropic (orbit of the
    isotropic simple roots over the spine, closed under negation) and
    non-reflectable (orbit of the non-reflectable simple roots)."""
    assert pd.saturated, "real-root enumeration needs saturated principal data"
    an = _weyl_orbit(pd, pd.sigma_pr, height_bound)
    iso_seeds = list(pd.iso_simples) + [-r for r in pd.iso_simples]
    iso = _weyl_orbit(pd, iso_seeds, height_bound)
    nr = _weyl_orbit(pd, pd.nr_simples, height_bound)
    an_c = {r.coords for r in an}
    iso_c = {r.coords for r in iso}
    nr_c = {r.coords for r in nr}
    assert not (an_c & iso_c) and not (an_c & nr_c) and not (iso_c & nr_c), (
        "real-root classes must be disjoint"
    )
    return {"anisotropic": an, "isotropic": iso, "nonreflectable": nr}


# ---------------------------------------------------------------------------
# Descent, the totally positive cone, imaginary roots


class NotInPositiveCone:
    """Sentinel outcome of descent: an iterate left Q^+_v."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return "NotInPositiveCone"


NOT_IN_POSITIVE_CONE = NotInPositiveCone()


def descend_to_dominant(pd: PrincipalData, mu):
    """Repeatedly reflect away positive pairings (lowest pi index first).

    Returns (w, mu0) with w.apply(mu0) == mu and all pairings of mu0
    nonpositive, or the NOT_IN_POSITIVE_CONE sentinel as soon as an iterate
    acquires a negative coordinate.  Heights strictly decrease, so the loop
    terminates.
    """
    coords = _as_int_coords(mu)
    current = RootVector.from_coords(coords, pd.base_parity)
    if any(c < 0 for c in current.coords):
        return NOT_IN_POSITIVE_CONE
    w = WeylElement.identity(pd.n)
    while True:
        pick = None
        for i in range(len(pd.pi)):
            if pd.pairing(current, i) > 0:
                pick = i
                break
        if pick is None:
            return w, current
        nxt = pd.reflection(pick).apply_root(current)
        assert nxt.height < current.height, "descent failed to decrease height"
        if any(c < 0 for c in nxt.coords):
            return NOT_IN_POSITIVE_CONE
        w = w.then(pd.reflection(pick))
        current = nxt


@dataclass(frozen=True)
class ConeVerdict:
    """Truth value plus an honesty bit for truncated explorations."""

    value: bool
    truncated: bool

    def __bool__(self) -> bool:
        return self.value


def _rational_coords(mu):
    out = []
    for c in mu.coords if isinstance(mu, RootVector) else mu:
        if isinstance(c, Scalar):
            if not c.is_rational:
                raise ParameterizedInput(
                    "totally-positive test needs rational coordinates"
                )
            out.append(Fraction(c.as_fraction()))
        else:
            out.append(Fraction(c))
    return out


def totally_positive(pd: PrincipalData, graph: MarkedGraph, mu, *, mode: Optional[str] = None):
    """Membership of mu in the totally positive cone.

    On a Kac-Moody component (all explored vertices fully reflectable) the
    test descends to the antidominant chamber and checks membership in the
    cone over pi.  Otherwise it falls back to the defining intersection of
    simple-root cones over the explored vertices and reports truncation
    honestly.  The fallback expects a skeleton exploration, since the
    defining intersection ranges over the whole skeleton.
    """
    rational = _rational_coords(mu)
    if mode is None:
        mode = "weyl" if pd.fully_reflectable else "cones"
    if mode == "weyl":
        assert pd.saturated, "cone test by descent needs saturated principal data"
        denom = 1
        for c in rational:
            denom = denom * c.denominator // _gcd(denom, c.denominator)
        scaled = [int(c * denom) for c in rational]
        outcome = descend_to_dominant(pd, scaled)
        if outcome is NOT_IN_POSITIVE_CONE:
            return ConeVerdict(False, False)
        _, mu0 = outcome
        if mu0.is_zero():
            return ConeVerdict(True, False)
        gens = [a.coords for a in pd.pi]
        cert = cone_membership(gens, mu0.coords)
        return ConeVerdict(cert is not None, False)
    if mode != "cones":
        raise InvalidParameters("unknown totally-positive mode %r" % (mode,))
    value = True
    for u in graph.vertices:
        gens = [tuple(row) for row in u.c_b]
        if cone_membership(gens, tuple(rational)) is None:
            value = False
            break
    return ConeVerdict(value, not graph.complete)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _support_connected(matrix, support) -> bool:
    """Connectivity of a coordinate support in the Dynkin graph of the base
    vertex (edges wherever the Cartan matrix has a nonzero off-diagonal
    entry in either direction)."""
    nodes = sorted(support)
    if not nodes:
        return False
    reach = {nodes[0]}
    frontier = [nodes[0]]
    nodeset = set(nodes)
    while frontier:
        x = frontier.pop()
        for y in nodeset - reach:
            if not matrix[x][y].is_zero or not matrix[y][x].is_zero:
                reach.add(y)
                frontier.append(y)
    return reach == nodeset


def _gcm_imaginary(b: Sequence[Sequence[int]], nu: Sequence[int]) -> bool:
    """Positive-imaginary test for a plain GCM lattice: descend by the rows
    of the GCM inside the nonnegative orthant, then require nonpositive
    pairings and connected support."""
    m = len(b)
    nu = [int(c) for c in nu]
    if all(c == 0 for c in nu):
        return False
    if any(c < 0 for c in nu):
        return False
    guard = sum(nu) + 1
    for _ in range(guard + 1):
        pick = None
        pairing = 0
        for i in range(m):
            pairing = sum(b[i][j] * nu[j] for j in range(m))
            if pairing > 0:
                pick = i
                break
        if pick is None:
            break
        # In pi-coordinates the reflection only moves the picked entry.
        nu[pick] -= pairing
        if any(c < 0 for c in nu):
            return False
    else:  # pragma: no cover - guarded by strict height decrease
        raise AssertionError("descent in the GCM lattice failed to terminate")
    support = {i for i, c in enumerate(nu) if c}
    if not support:
        return False
    reach = {min(support)}
    frontier = [min(support)]
    while frontier:
        x = frontier.pop()
        for y in support - reach:
            if b[x][y] != 0 or b[y][x] != 0:
                reach.add(y)
                frontier.append(y)
    return reach == support


def _pi_coordinates(pd: PrincipalData, coords: Sequence[int]):
    """Integer coordinates of a vector on pi, when pi is linearly
    independent and the vector lies in its integer span; None otherwise.
    Returns the string "dependent" when pi is not independent."""
    from .linalg import smat_rank, smat_solve, smat

    field = pd.field
    m = len(pd.pi)
    if m == 0:
        return "dependent" if any(coords) else []
    cols = smat(field, [[pd.pi[j].coords[i] for j in range(m)] for i in range(pd.n)])
    if smat_rank(cols) < m:
        return "dependent"
    target = [field.scalar(int(c)) for c in coords]
    sol = smat_solve(cols, target)
    if sol is None:
        return None
    out = []
    for s in sol:
        probe = integrality_probe(s)
        if not probe.is_integer:
            return None
        out.append(probe.value)
    return out


def is_imaginary(pd: PrincipalData, spine: MarkedGraph, mu) -> bool:
    """Imaginary-root test: totally positive with connected support.

    Requires a Kac-Moody component.  Cross-checks are asserted inline: the
    support condition is vacuous unless the component is purely
    anisotropic, and doubling must land in the imaginary set of the GCM
    lattice attached to pi whenever pi is linearly independent.
    """
    if not pd.fully_reflectable:
        raise NotKacMoody("imaginary roots are defined for fully reflectable components")
    coords = _as_int_coords(mu)
    if not any(coords):
        return False  # zero is never a root
    in_cone = bool(totally_positive(pd, spine, coords))
    root = RootVector.from_coords(coords, pd.base_parity)
    connected = _support_connected(pd.base_matrix, root.support)
    value = in_cone and connected
    if not pd.purely_anisotropic:
        assert value == in_cone, (
            "support condition must be vacuous when an isotropic simple root exists"
        )
    pi_coords = _pi_coordinates(pd, tuple(2 * c for c in coords))
    if pi_coords != "dependent":
        doubled = pi_coords is not None and _gcm_imaginary(pd.b_pi, pi_coords)
        assert doubled == value, (
            "doubling formula disagrees: mu=%s pi-side=%s direct=%s"
            % (coords, doubled, value)
        )
    return value


# ---------------------------------------------------------------------------
# Component classification (Fin/Aff/Ind, parity type I/II)


def _quotient_shape(n: int, generators: list) -> tuple:
    """Invariant factors and free rank of Z^n / <generators>."""
    if not generators:
        return (), n
    _, d, _ = smith_normal_form([list(g) for g in generators])
    rows = len(generators)
    invariants = tuple(d[i][i] for i in range(min(rows, n)) if d[i][i] != 0)
    return invariants, n - len(invariants)


def classify_component(
    pd: PrincipalData,
    spine: MarkedGraph,
    height_bound: int = 8,
    extra_even_roots: Iterable = (),
) -> dict:
    """Fin/Aff/Ind type of B_pi plus parity type I/II.

    The parity type is read off the quotient of Q_v by the lattice spanned
    by the even roots; generators are the even real roots up to the height
    bound, the doubled odd anisotropic ones, and any caller-supplied even
    roots (the escape hatch for families with known closed forms).  The
    quotient must come out trivial, Z or Z/2 -- anything else means the
    height bound starved the generator set.
    """
    for u in spine.vertices:
        if not vertex_flags(u.cartan).indecomposable:
            raise Decomposable("component has a decomposable vertex matrix")
    if pd.pi:
        blocks = gcm_block_types(pd.b_pi)
        if pd.fully_reflectable and len(blocks) > 1:
            kinds = {t for _, t in blocks}
            assert len(kinds) == 1, (
                "blocks of B_pi on a Kac-Moody component must share one type"
            )
        kind = gcm_type(pd.b_pi)
    else:
        kind = FIN

    enumerated = real_roots(pd, spine, height_bound)
    generators: list = []
    seen: set = set()

    def _push(coords):
        key = tuple(coords)
        if key not in seen and any(key):
            seen.add(key)
            generators.append(key)

    for group in ("anisotropic", "isotropic", "nonreflectable"):
        for r in enumerated[group]:
            if r.parity == EVEN:
                _push(r.coords)
    for r in enumerated["anisotropic"]:
        if r.parity == ODD:
            _push(tuple(2 * c for c in r.coords))
    for r in extra_even_roots:
        _push(_as_int_coords(r))

    invariants, free_rank = _quotient_shape(pd.n, generators)
    torsion = tuple(d for d in invariants if d != 1)
    if free_rank == 1 and not torsion:
        parity_type = "I"
        quotient = "Z"
    elif free_rank == 0 and not torsion:
        parity_type = "II"
        quotient = "1"
    elif free_rank == 0 and torsion == (2,):
        parity_type = "II"
        quotient = "Z_2"
    else:
        raise InvalidParameters(
            "even-root lattice quotient is not 1, Z or Z_2 "
            "(free rank %d, torsion %s): increase the height bound or pass "
            "the missing even roots explicitly" % (free_rank, torsion)
        )
    return {
        "type": kind,
        "parity_type": parity_type,
        "q0_quotient": quotient,
        "height_bound": height_bound,
        "saturated": pd.saturated,
    }


# ---------------------------------------------------------------------------
# S-principal elements


def _in_rational_span(field, vectors: list, target) -> bool:
    from .linalg import smat_solve

    if not vectors:
        return all(c == 0 for c in target)
    rows = tuple(tuple(field.scalar(v[i]) for v in vectors) for i in range(len(target)))
    tgt = [field.scalar(int(c)) for c in target]
    return smat_solve(rows, tgt) is not None


def pi_S_enumerate(
    spine: MarkedGraph,
    bound: Optional[int] = None,
    parity_type: Optional[str] = None,
):
    """S-principal elements over the explored spine vertices.

    These are the simple roots b_u(x) that are even, together with the
    doubles 2 b_u(x) of the odd anisotropic ones.  ``bound`` caps the
    height.  On saturated data the span property is asserted: if some
    isotropic simple root lies in the span of pi_S then pi_S must span the
    whole coordinate space; on type-I components no isotropic simple root
    may lie in that span.
    """
    base = spine.vertices[0]
    field = base.cartan.field
    parity = base.cartan.parity
    out: list[RootVector] = []
    seen: set = set()
    iso_simples: list[tuple] = []
    for u in spine.vertices:
        for x in range(base.size):
            root = RootVector.from_coords(u.c_b[x], parity)
            if is_isotropic(u.cartan, x) and u.cartan.p(x) == ODD:
                if root.coords not in iso_simples:
                    iso_simples.append(root.coords)
            element = None
            if u.cartan.p(x) == EVEN:
                element = root
            elif not is_isotropic(u.cartan, x):
                element = root.scale(2)
            if element is None:
                continue
            if bound is not None and abs(element.height) > bound:
                continue
            if element.coords in seen:
                continue
            seen.add(element.coords)
            out.append(element)
    saturated = spine.complete
    if saturated:
        vectors = [e.coords for e in out]
        hit = [t for t in iso_simples if _in_rational_span(field, vectors, t)]
        if hit:
            from .linalg import smat_rank

            rows = tuple(tuple(field.scalar(c) for c in v) for v in vectors)
            assert smat_rank(rows) == base.size, (
                "an isotropic root in the span of pi_S forces pi_S to span"
            )
        if parity_type == "I":
            assert not hit, "type-I component with an isotropic root in span(pi_S)"
    return tuple(out), saturated


# ---------------------------------------------------------------------------
# Root bases and positive systems


def _solve_on_basis(field, basis: Sequence[RootVector], coords) -> Optional[list]:
    from .linalg import smat_solve

    rows = tuple(tuple(field.scalar(b.coords[i]) for b in basis) for i in range(len(coords)))
    tgt = [field.scalar(int(c)) for c in coords]
    sol = smat_solve(rows, tgt)
    if sol is None:
        return None
    out = []
    for s in sol:
        probe = integrality_probe(s)
        if not probe.is_integer:
            return None
        out.append(probe.value)
    return out


def _uniform_sign(values: Sequence[int]) -> bool:
    return all(v >= 0 for v in values) or all(v <= 0 for v in values)


def enumerate_finite_system(pd: PrincipalData, spine: MarkedGraph, max_height: int = 60) -> set:
    """The full (finite) root system of a Fin component.

    Raises InfiniteSystem when the component cannot be certified finite:
    the spine must be completely explored, B_pi must be of type Fin, and
    the real-root enumeration must stabilize under growth of the bound.
    """
    if not spine.complete:
        raise InfiniteSystem("spine exploration is truncated")
    if len(pd.pi) and gcm_type(pd.b_pi) != FIN:
        raise InfiniteSystem("B_pi is not of finite type")
    bound = 4
    prev: Optional[set] = None
    while bound <= max_height:
        groups = real_roots(pd, spine, bound)
        full = set()
        for group in groups.values():
            full |= {r for r in group}
        for r in list(full):
            # 2*alpha is a root exactly for odd anisotropic alpha.
            if r.parity == ODD and r in groups["anisotropic"]:
                full.add(r.scale(2))
        for r in set(full):
            full.add(-r)
        coords = {r.coords for r in full}
        if prev is not None and coords == prev:
            return full
        prev = coords
        bound *= 2
    raise InfiniteSystem("root enumeration did not stabilize below height %d" % max_height)


def root_bases(delta: Iterable[RootVector]) -> list:
    """All root bases of a fully enumerated finite root system.

    Brute force: every linearly independent subset S of the right size is
    tested for Delta within the union of the nonnegative and nonpositive
    integer spans of S.  Returns a list of tuples sorted by coordinates.
    """
    from .scalars import QQ

    roots = sorted({r.coords: r for r in delta}.values(), key=lambda r: r.coords)
    if not roots:
        return []
    n = len(roots[0].coords)
    from .linalg import smat_rank

    rank = smat_rank(tuple(tuple(QQ.scalar(c) for c in r.coords) for r in roots))
    bases = []
    for combo in itertools.combinations(roots, rank):
        rows = tuple(tuple(QQ.scalar(c) for c in r.coords) for r in combo)
        if smat_rank(rows) != rank:
            continue
        good = True
        for r in roots:
            sol = _solve_on_basis(QQ, combo, r.coords)
            if sol is None or not _uniform_sign(sol):
                good = False
                break
        if good:
            bases.append(tuple(combo))
    return bases


def positive_system(delta: Iterable[RootVector], h: Sequence) -> tuple:
    """Split a root set by a generic rational functional.

    ``h`` lists the pairings with the base simple roots; every root must
    pair to a nonzero value, otherwise the functional is not generic and
    InvalidParameters is raised.  Returns (positive half, indecomposable
    elements of the positive half).
    """
    weights = [Fraction(x) for x in h]
    positive = []
    for r in delta:
        val = sum(w * c for w, c in zip(weights, r.coords))
        if val == 0:
            raise InvalidParameters("functional vanishes on %s" % (r,))
        if val > 0:
            positive.append(r)
    positive.sort(key=lambda r: r.coords)
    tilde = indecomposables_oracle(positive)
    return tuple(positive), tuple(sorted(tilde, key=lambda r: r.coords))


@dataclass(frozen=True)
class RootBasisVerdict:
    kind: str  # "yes" | "no" | "unknown"
    bound: Optional[int] = None

    def __repr__(self) -> str:
        if self.kind == "unknown":
            return "Unknown(bound=%s)" % (self.bound,)
        return self.kind.capitalize()


YES = RootBasisVerdict("yes")
NO = RootBasisVerdict("no")


def _affine_delta(pd: PrincipalData) -> Optional[RootVector]:
    """The primitive positive imaginary generator of an Aff component,
    computed from the kernel of B_pi pushed through pi."""
    from .linalg import smat, smat_kernel

    if not pd.pi or gcm_type(pd.b_pi) != AFF:
        return None
    field = pd.field
    rows = smat(field, pd.b_pi)
    kernel = smat_kernel(rows)
    if len(kernel) != 1:
        return None
    marks = []
    for s in kernel[0]:
        if not s.is_rational:
            return None
        marks.append(Fraction(s.as_fraction()))
    denom = 1
    for m in marks:
        denom = denom * m.denominator // _gcd(denom, m.denominator)
    ints = [int(m * denom) for m in marks]
    if all(v <= 0 for v in ints):
        ints = [-v for v in ints]
    if not all(v > 0 for v in ints):
        return None
    coords = [0] * pd.n
    for a, pi_el in zip(ints, pd.pi):
        for i, c in enumerate(pi_el.coords):
            coords[i] += a * c
    g = 0
    for c in coords:
        g = _gcd(g, c)
    if g == 0:
        return None
    coords = [c // g for c in coords]
    return RootVector.from_coords(coords, pd.base_parity)


def is_root_basis(
    sigma_prime: Sequence[RootVector],
    pd: PrincipalData,
    spine: MarkedGraph,
    height_bound: int,
    delta: Optional[RootVector] = None,
) -> RootBasisVerdict:
    """Decide whether a linearly independent root set is a root basis.

    Finite components are decided exactly.  Affine Kac-Moody components are
    decided through a periodicity certificate: once the enumerated windows
    of positive real roots repeat by translation by delta and the
    coefficient patterns stay uniformly signed one period past
    stabilization, every further root is a translate with the same signs.
    Everything else is verified up to the height bound and reported as
    Unknown when nothing failed.
    """
    from .scalars import QQ
    from .linalg import smat_rank

    basis = list(sigma_prime)
    rows = tuple(tuple(QQ.scalar(c) for c in b.coords) for b in basis)
    assert smat_rank(rows) == len(basis), "candidate set must be linearly independent"

    try:
        delta_full = enumerate_finite_system(pd, spine)
        finite = True
    except InfiniteSystem:
        finite = False

    if finite:
        for r in delta_full:
            sol = _solve_on_basis(QQ, basis, r.coords)
            if sol is None or not _uniform_sign(sol):
                return NO
        return YES

    groups = real_roots(pd, spine, height_bound) if pd.saturated else None
    if groups is None:
        return RootBasisVerdict("unknown", height_bound)
    enumerated = set()
    for group in groups.values():
        enumerated |= {r for r in group}
    for r in list(groups["anisotropic"]):
        if r.parity == ODD:
            enumerated.add(r.scale(2))
    for r in set(enumerated):
        enumerated.add(-r)

    dlt = delta if delta is not None else _affine_delta(pd)
    if dlt is not None and pd.fully_reflectable:
        h = dlt.height
        k_top = height_bound // h if h else 0
        if k_top >= 3:
            for k in range(1, k_top + 1):
                enumerated.add(dlt.scale(k))
                enumerated.add(dlt.scale(-k))

    solved = {}
    for r in sorted(enumerated, key=lambda r: r.coords):
        sol = _solve_on_basis(QQ, basis, r.coords)
        if sol is None or not _uniform_sign(sol):
            return NO
        solved[r.coords] = sol

    if dlt is None or not pd.fully_reflectable:
        return RootBasisVerdict("unknown", height_bound)

    # Periodicity certificate for the affine case.
    h = dlt.height
    if h <= 0 or height_bound < 4 * h:
        return RootBasisVerdict("unknown", height_bound)
    c_delta = solved.get(dlt.coords)
    if c_delta is None:
        sol = _solve_on_basis(QQ, basis, dlt.coords)
        if sol is None or not _uniform_sign(sol):
            return NO
        c_delta = sol
    windows = []
    count = height_bound // h
    positives = [r for r in enumerated if r.height > 0]
    for k in range(count):
        window = {r.coords for r in positives if k * h <= r.height < (k + 1) * h}
        windows.append(window)
    shift = dlt.coords
    for period in (1, 2, 3):
        if len(windows) < 2 * period + 1:
            continue
        stable = True
        for k in range(1, len(windows) - period):
            translated = {
                tuple(c + period * s for c, s in zip(coords, shift)) for coords in windows[k]
            }
            if translated != windows[k + period]:
                stable = False
                break
        if stable:
            return YES
    return RootBasisVerdict("unknown", height_bound)


# ---------------------------------------------------------------------------
# Report


def component_report(pd: PrincipalData, classification: Optional[dict] = None) -> dict:
    """The summary dictionary used by the command-line export."""
    return pd.report(classification)
