"""Reflexions and bounded exploration of skeleton/spine graphs.

A vertex of the exploration graph is a realization of the root datum whose
simple roots and coroots are written in the coordinates of the exploration
origin: integer row vectors for the b-side (simple roots), Scalar row
vectors for the a-side (coroots), plus the local Cartan datum.  Reflexions
move between vertices; the skeleton uses all reflectable generators, the
spine only the isotropic ones.  Graphs are deduplicated by the ordered tuple
of b-coordinate rows, and every rediscovery re-checks that the a-side and
the Cartan datum agree — the uniqueness statement behind the dedup rule is
asserted rather than assumed.
"""
from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .cartan import CartanDatum, EVEN, ODD, d_equivalence, reflectable
from .errors import NotDEquivalent, NotReflectable, PathBreaks
from .linalg import IMat, imat_det, imat_identity
from .scalars import Scalar, integrality_probe

SPINE = "spine"
SKELETON = "skeleton"

COMPLETE = "complete"
TRUNCATED = "truncated"


def is_isotropic(d: CartanDatum, x: int) -> bool:
    return d.a(x, x).is_zero and d.p(x) == ODD


class Vertex:
    """A realization reached from the exploration origin by reflexions."""

    __slots__ = ("base", "c_b", "c_a", "cartan")

    def __init__(self, base: CartanDatum, c_b: IMat,
                 c_a: Tuple[Tuple[Scalar, ...], ...], cartan: CartanDatum):
        self.base = base
        self.c_b = c_b
        self.c_a = c_a
        self.cartan = cartan

    @classmethod
    def origin(cls, datum: CartanDatum) -> "Vertex":
        n = datum.size
        one, zero = datum.field.one(), datum.field.zero()
        c_a = tuple(tuple(one if i == j else zero for j in range(n))
                    for i in range(n))
        return cls(datum, imat_identity(n), c_a, datum)

    @property
    def size(self) -> int:
        return self.base.size

    def key(self) -> IMat:
        return self.c_b

    def simple_roots(self) -> IMat:
        """Ordered simple roots, as integer vectors in the origin basis."""
        return self.c_b

    def recomputed_matrix(self) -> Tuple[Tuple[Scalar, ...], ...]:
        """The Cartan matrix from first principles: pair every coroot row
        with every root row through the origin matrix."""
        n = self.size
        av = self.base.matrix
        rows = []
        for x in range(n):
            mid = [sum((self.c_a[x][i] * av[i][j] for i in range(1, n)),
                       self.c_a[x][0] * av[0][j]) for j in range(n)]
            rows.append(tuple(
                sum((mid[j] * self.c_b[y][j] for j in range(1, n)),
                    mid[0] * self.c_b[y][0]) for y in range(n)))
        return tuple(rows)

    def verify(self) -> None:
        """Assert the realization invariants: independent integer roots, the
        Cartan matrix recomputation, and parity being additive in root
        coordinates."""
        assert imat_det(self.c_b) != 0, "b-coordinate rows must be independent"
        assert self.recomputed_matrix() == self.cartan.matrix, \
            "Cartan matrix does not match the coordinate pairing"
        for x in range(self.size):
            par = sum(c * p for c, p in zip(self.c_b[x], self.base.parity)) % 2
            assert par == self.cartan.p(x), "parity is not coordinate-additive"

    def __eq__(self, other):
        if not isinstance(other, Vertex):
            return NotImplemented
        return (self.c_b == other.c_b and self.c_a == other.c_a
                and self.cartan == other.cartan)

    def __hash__(self):
        return hash(self.c_b)

    def __repr__(self):
        return f"Vertex(b={self.c_b}, p={''.join(map(str, self.cartan.parity))})"


def apply_reflexion(u: Vertex, x: int) -> Vertex:
    """The reflexion r_x at vertex u.

    Anisotropic generators reflect both coordinate systems and keep the
    Cartan datum; isotropic generators shear the neighbours of x, flip
    their parity, and update the Cartan matrix accordingly.
    """
    d = u.cartan
    if not reflectable(d, x):
        raise NotReflectable(f"generator {x} is not reflectable here")
    n = u.size
    field = d.field
    axx = d.a(x, x)

    if not axx.is_zero:
        new_b: List[Tuple[int, ...]] = []
        new_a = []
        for y in range(n):
            coeff_b = integrality_probe(2 * d.a(x, y) / axx)
            assert coeff_b.is_integer, "reflectability forces integral ratios"
            kb = coeff_b.value
            new_b.append(tuple(by - kb * bx
                               for by, bx in zip(u.c_b[y], u.c_b[x])))
            ka = 2 * d.a(y, x) / axx
            new_a.append(tuple(ay - ka * ax
                               for ay, ax in zip(u.c_a[y], u.c_a[x])))
        return Vertex(u.base, tuple(new_b), tuple(new_a), d)

    # isotropic: a_xx = 0 and p(x) odd
    shear_a: List[Optional[Scalar]] = []
    shear_b: List[int] = []
    for y in range(n):
        if y == x:
            shear_a.append(field.scalar(-2))
            shear_b.append(-2)
        elif d.a(x, y).is_zero:
            shear_a.append(None)
            shear_b.append(0)
        else:
            shear_a.append(d.a(y, x) / d.a(x, y))
            shear_b.append(1)
    new_b = tuple(
        tuple(by + shear_b[y] * bx for by, bx in zip(u.c_b[y], u.c_b[x]))
        for y in range(n))
    new_a = tuple(
        u.c_a[y] if shear_a[y] is None else
        tuple(ay + shear_a[y] * ax for ay, ax in zip(u.c_a[y], u.c_a[x]))
        for y in range(n))
    mat = [[d.a(y, z) for z in range(n)] for y in range(n)]
    for y in range(n):
        ey = shear_a[y]
        fy = shear_b[y]
        for z in range(n):
            val = mat[y][z]
            if shear_b[z]:
                val = val + shear_b[z] * d.a(y, x)
            if ey is not None:
                val = val + ey * d.a(x, z)
            mat[y][z] = val
    parity = tuple(
        (1 - d.p(y)) if (y != x and not d.a(x, y).is_zero) else d.p(y)
        for y in range(n))
    return Vertex(u.base, new_b, new_a,
                  CartanDatum(field, mat, parity))


def admissible_marks(u: Vertex, mode: str) -> List[int]:
    d = u.cartan
    if mode == SPINE:
        return [x for x in range(u.size) if is_isotropic(d, x)]
    return [x for x in range(u.size) if reflectable(d, x)]


class MarkedGraph:
    """Exploration result: vertices in BFS order, undirected marked edges."""

    __slots__ = ("mode", "vertices", "edges", "status", "bound", "depths")

    def __init__(self, mode: str, vertices: Tuple[Vertex, ...],
                 edges: Tuple[Tuple[int, int, int], ...], status: str,
                 bound: int, depths: Tuple[int, ...]):
        self.mode = mode
        self.vertices = vertices
        self.edges = edges          # (i, j, mark) with i < j
        self.status = status
        self.bound = bound
        self.depths = depths

    @property
    def complete(self) -> bool:
        return self.status == COMPLETE

    def __len__(self) -> int:
        return len(self.vertices)

    def neighbors(self, i: int) -> List[Tuple[int, int]]:
        out = []
        for a, b, mark in self.edges:
            if a == i:
                out.append((b, mark))
            elif b == i:
                out.append((a, mark))
        return sorted(out)

    def edge_marks(self) -> List[int]:
        return sorted(m for _, _, m in self.edges)

    def is_spine_edge(self, i: int, j: int, mark: int) -> bool:
        return is_isotropic(self.vertices[i].cartan, mark)

    def find(self, c_b: IMat) -> Optional[int]:
        for i, u in enumerate(self.vertices):
            if u.c_b == c_b:
                return i
        return None

    # -- exports ------------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "mode": self.mode,
            "status": self.status,
            "bound": self.bound,
            "base": self.vertices[0].base.to_json_dict(),
            "vertices": [
                {
                    "index": i,
                    "b_coords": [list(row) for row in u.c_b],
                    "a_coords": [[str(s) for s in row] for row in u.c_a],
                    "parity": list(u.cartan.parity),
                    "matrix": [[str(s) for s in row] for row in u.cartan.matrix],
                    "depth": self.depths[i],
                }
                for i, u in enumerate(self.vertices)
            ],
            "edges": [
                {"from": i, "to": j, "mark": m,
                 "isotropic": self.is_spine_edge(i, j, m)}
                for i, j, m in self.edges
            ],
        }

    def to_dot(self) -> str:
        lines = [f"graph {self.mode} {{",
                 '  node [shape=box, fontname="monospace"];']
        for i, u in enumerate(self.vertices):
            roots = " ".join("(" + ",".join(str(c) for c in row) + ")"
                             for row in u.c_b)
            par = ",".join(str(p) for p in u.cartan.parity)
            lines.append(f'  v{i} [label="{roots}\\np = {par}"];')
        for i, j, m in sorted(self.edges):
            style = ", style=bold, penwidth=2" if self.is_spine_edge(i, j, m) \
                else ""
            lines.append(f'  v{i} -- v{j} [label="r_{m + 1}"{style}];')
        lines.append("}")
        return "\n".join(lines)


def explore(start, mode: str = SKELETON, bound: int = 10000) -> MarkedGraph:
    """Breadth-first exploration from ``start`` (a Vertex or CartanDatum).

    Deterministic: vertices are numbered in BFS discovery order with marks
    taken in ascending order.  Hitting ``bound`` flips the status to
    truncated — never an error, because affine and indefinite components
    have infinite skeleta.
    """
    if bound < 1:
        raise ValueError("exploration bound must be at least 1")
    if isinstance(start, CartanDatum):
        start = Vertex.origin(start)
    if mode not in (SPINE, SKELETON):
        raise ValueError(f"unknown exploration mode {mode!r}")
    vertices: List[Vertex] = [start]
    depths: List[int] = [0]
    index: Dict[IMat, int] = {start.key(): 0}
    edges = set()
    status = COMPLETE
    head = 0
    while head < len(vertices):
        u = vertices[head]
        for x in admissible_marks(u, mode):
            w = apply_reflexion(u, x)
            j = index.get(w.key())
            if j is None:
                if len(vertices) >= bound:
                    status = TRUNCATED
                    continue
                j = len(vertices)
                index[w.key()] = j
                vertices.append(w)
                depths.append(depths[head] + 1)
            else:
                existing = vertices[j]
                assert existing.c_a == w.c_a and existing.cartan == w.cartan, \
                    "rediscovered vertex disagrees beyond its b-coordinates"
            edges.add((min(head, j), max(head, j), x))
        head += 1
    return MarkedGraph(mode, tuple(vertices), tuple(sorted(edges)),
                       status, bound, tuple(depths))


def transport_namesake(origin: Vertex, path: Sequence[int],
                       start: Vertex) -> Vertex:
    """Walk the mark sequence ``path`` starting from ``start``, a vertex
    whose Cartan datum is a diagonal rescaling of ``origin``'s.

    The rescaling certificate D is checked up front, the namesake walk is
    performed step by step, and the defining property — the endpoint's
    Cartan matrix is D times the matrix reached from ``origin`` — is
    re-verified before returning.
    """
    if start.size != origin.size:
        raise NotDEquivalent("start and path origin have different rank")
    diag = d_equivalence(start.cartan, origin.cartan)
    if diag is None:
        raise NotDEquivalent(
            "start vertex is not a diagonal rescaling of the path origin")
    u_ref, u_new = origin, start
    for step, x in enumerate(path):
        if not reflectable(u_new.cartan, x):
            raise PathBreaks(f"mark {x} not reflectable at step {step}")
        u_ref = apply_reflexion(u_ref, x)
        u_new = apply_reflexion(u_new, x)
    for x in range(origin.size):
        for y in range(origin.size):
            assert u_new.cartan.a(x, y) == diag[x] * u_ref.cartan.a(x, y), \
                "transport did not preserve the rescaling certificate"
    assert u_new.cartan.parity == u_ref.cartan.parity
    return u_new


# ---------------------------------------------------------------------------
# marked-graph isomorphism (vertices opaque, edge marks preserved)


def marked_graph_isomorphic(g1: MarkedGraph, g2: MarkedGraph) -> bool:
    if len(g1) != len(g2) or len(g1.edges) != len(g2.edges):
        return False
    import networkx as nx
    from networkx.algorithms import isomorphism

    def build(g: MarkedGraph):
        h = nx.MultiGraph()
        h.add_nodes_from(range(len(g)))
        for i, j, m in g.edges:
            h.add_edge(i, j, mark=m)
        return h

    matcher = isomorphism.GraphMatcher(
        build(g1), build(g2),
        edge_match=isomorphism.categorical_multiedge_match("mark", None))
    return matcher.is_isomorphic()
