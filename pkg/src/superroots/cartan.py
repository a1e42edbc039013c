"""Cartan data and matrix-level predicates.

A Cartan datum is a square matrix of exact scalars together with a parity
function on its index set.  This module hosts everything that can be decided
by looking at one such matrix: which indices are reflectable, whether the
datum is weakly symmetrizable / symmetrizable / indecomposable, rescaling
equivalence between two data, and the finite/affine/indefinite trichotomy
for generalized Cartan matrices.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import NotGCM
from .linalg import imat_det
from .scalars import QQ, Scalar, ScalarField, integrality_probe

EVEN, ODD = 0, 1

FIN, AFF, IND = "Fin", "Aff", "Ind"
_TYPE_ORDER = {FIN: 0, AFF: 1, IND: 2}


class CartanDatum:
    """Square Scalar matrix with a parity marking on the index set.

    Immutable; entries are coerced into ``field`` on construction.
    """

    __slots__ = ("field", "size", "matrix", "parity")

    def __init__(self, field: ScalarField, matrix: Sequence[Sequence],
                 parity: Sequence[int]):
        n = len(matrix)
        if n < 1:
            raise ValueError("a Cartan datum needs at least one index")
        if any(len(row) != n for row in matrix):
            raise ValueError("Cartan matrix must be square")
        if len(parity) != n or any(p not in (EVEN, ODD) for p in parity):
            raise ValueError("parity must assign 0 or 1 to each index")
        self.field = field
        self.size = n
        self.matrix = tuple(tuple(field.scalar(x) for x in row)
                            for row in matrix)
        self.parity = tuple(int(p) for p in parity)

    def a(self, x: int, y: int) -> Scalar:
        return self.matrix[x][y]

    def p(self, x: int) -> int:
        return self.parity[x]

    def __eq__(self, other):
        if not isinstance(other, CartanDatum):
            return NotImplemented
        return (self.parity == other.parity and self.matrix == other.matrix
                and self.field.compatible(other.field))

    def __hash__(self):
        return hash((self.parity, self.matrix))

    def __repr__(self):
        rows = "; ".join(",".join(str(x) for x in row) for row in self.matrix)
        par = "".join(str(p) for p in self.parity)
        return f"CartanDatum([{rows}], p={par})"

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "size": self.size,
            "parity": list(self.parity),
            "matrix": [[str(x) for x in row] for row in self.matrix],
            "field": self.field.to_json_dict(),
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "CartanDatum":
        field = ScalarField.from_json_dict(d.get("field", {}))
        datum = cls(field, d["matrix"], d["parity"])
        if "size" in d and d["size"] != datum.size:
            raise ValueError("declared size does not match the matrix")
        return datum


# ---------------------------------------------------------------------------
# reflectability


def reflectable(d: CartanDatum, x: int) -> bool:
    """Whether the generator ``x`` admits a reflexion.

    Isotropic case: a_xx = 0 with odd parity.  Anisotropic cases: a_xx ≠ 0
    and the rescaled row is nonpositive-integral — 2a_xy/a_xx for even x,
    a_xy/a_xx for odd x.
    """
    axx = d.a(x, x)
    if axx.is_zero:
        return d.p(x) == ODD
    num = 2 if d.p(x) == EVEN else 1
    for y in range(d.size):
        if y == x:
            continue
        ratio = num * d.a(x, y) / axx
        if not integrality_probe(ratio).is_nonpositive_integer:
            return False
    return True


@dataclass(frozen=True)
class VertexFlags:
    weakly_symmetrizable: bool
    fully_reflectable: bool
    indecomposable: bool
    symmetrizable: bool


def _is_indecomposable(d: CartanDatum) -> bool:
    """Strong connectivity of the nonzero-pattern digraph: some closed walk
    passes through every index (trivially true for a single index)."""
    n = d.size
    if n == 1:
        return True
    fwd = [[y for y in range(n) if y != x and not d.a(x, y).is_zero]
           for x in range(n)]
    bwd = [[y for y in range(n) if y != x and not d.a(y, x).is_zero]
           for x in range(n)]

    def reaches_all(adj) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            for y in adj[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == n

    return reaches_all(fwd) and reaches_all(bwd)


def vertex_flags(d: CartanDatum) -> VertexFlags:
    refl = [reflectable(d, x) for x in range(d.size)]
    weak = all(
        d.a(y, x).is_zero
        for x in range(d.size) if refl[x]
        for y in range(d.size) if d.a(x, y).is_zero)
    return VertexFlags(
        weakly_symmetrizable=weak,
        fully_reflectable=all(refl),
        indecomposable=_is_indecomposable(d),
        symmetrizable=symmetrize(d) is not None,
    )


# ---------------------------------------------------------------------------
# rescaling equivalence and symmetrization


def d_equivalence(d1: CartanDatum, d2: CartanDatum
                  ) -> Optional[Tuple[Scalar, ...]]:
    """Diagonal D with ``d1.matrix == D @ d2.matrix`` (and equal parities),
    or None.  Rows that vanish in both matrices get entry 1."""
    if d1.size != d2.size:
        raise ValueError("data of different size cannot be D-equivalent")
    if d1.parity != d2.parity:
        return None
    n = d1.size
    field = d1.field if not d1.field.is_rationals else d2.field
    diag: List[Scalar] = []
    for x in range(n):
        anchor = next((y for y in range(n) if not d2.a(x, y).is_zero), None)
        if anchor is None:
            if any(not d1.a(x, y).is_zero for y in range(n)):
                return None
            diag.append(field.one())
            continue
        dx = d1.a(x, anchor) / d2.a(x, anchor)
        if dx.is_zero:
            return None
        for y in range(n):
            if d1.a(x, y) != dx * d2.a(x, y):
                return None
        diag.append(dx)
    return tuple(diag)


def symmetrize(d: CartanDatum
               ) -> Optional[Tuple[Tuple[Scalar, ...], CartanDatum]]:
    """Invertible diagonal D with D·A symmetric, plus the rescaled datum.

    The entries are fixed by propagating d_y = d_x·a_xy/a_yx along the
    nonzero pattern, anchoring the first index of every connected block at 1;
    a consistency sweep over all pairs rejects non-symmetrizable data.
    """
    n = d.size
    field = d.field
    zero_sym = all(d.a(x, y).is_zero == d.a(y, x).is_zero
                   for x in range(n) for y in range(n))
    if not zero_sym:
        return None
    diag: List[Optional[Scalar]] = [None] * n
    for start in range(n):
        if diag[start] is not None:
            continue
        diag[start] = field.one()
        stack = [start]
        while stack:
            x = stack.pop()
            for y in range(n):
                if y == x or diag[y] is not None or d.a(x, y).is_zero:
                    continue
                diag[y] = diag[x] * d.a(x, y) / d.a(y, x)
                stack.append(y)
    for x in range(n):
        for y in range(n):
            if diag[x] * d.a(x, y) != diag[y] * d.a(y, x):
                return None
    rescaled = CartanDatum(
        field,
        [[diag[x] * d.a(x, y) for y in range(n)] for x in range(n)],
        d.parity)
    return tuple(diag), rescaled


# ---------------------------------------------------------------------------
# generalized Cartan matrices


def validate_gcm(b: Sequence[Sequence[int]]) -> Tuple[Tuple[int, ...], ...]:
    n = len(b)
    rows = []
    for i, row in enumerate(b):
        if len(row) != n:
            raise NotGCM("matrix is not square")
        out = []
        for j, x in enumerate(row):
            if isinstance(x, Scalar):
                r = integrality_probe(x)
                if not r.is_integer:
                    raise NotGCM(f"entry ({i},{j}) = {x} is not an integer")
                x = r.value
            out.append(int(x))
        rows.append(tuple(out))
    for i in range(n):
        if rows[i][i] != 2:
            raise NotGCM(f"diagonal entry ({i},{i}) = {rows[i][i]} ≠ 2")
        for j in range(n):
            if i == j:
                continue
            if rows[i][j] > 0:
                raise NotGCM(f"positive off-diagonal entry at ({i},{j})")
            if (rows[i][j] == 0) != (rows[j][i] == 0):
                raise NotGCM(f"zero pattern is not symmetric at ({i},{j})")
    return tuple(rows)


def _gcm_blocks(b) -> List[List[int]]:
    n = len(b)
    seen, blocks = set(), []
    for start in range(n):
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in range(n):
                if y not in seen and (b[x][y] or b[y][x]):
                    seen.add(y)
                    stack.append(y)
        blocks.append(sorted(comp))
    return blocks


def _indecomposable_gcm_type(b, idx: List[int]) -> str:
    k = len(idx)
    minors_by_size = {s: [] for s in range(1, k + 1)}
    for mask in range(1, 1 << k):
        sub = [i for i in range(k) if mask >> i & 1]
        sel = [idx[i] for i in sub]
        det = imat_det([[b[x][y] for y in sel] for x in sel])
        minors_by_size[len(sel)].append(det)
    proper_positive = all(m > 0 for s in range(1, k)
                          for m in minors_by_size[s])
    full = minors_by_size[k][0]
    if proper_positive and full > 0:
        return FIN
    if proper_positive and full == 0:
        return AFF
    return IND


def gcm_block_types(b: Sequence[Sequence[int]]) -> Tuple[Tuple[Tuple[int, ...], str], ...]:
    """Connected blocks of a GCM with the trichotomy type of each."""
    rows = validate_gcm(b)
    return tuple((tuple(idx), _indecomposable_gcm_type(rows, idx))
                 for idx in _gcm_blocks(rows))


def gcm_type(b: Sequence[Sequence[int]],
             require_indecomposable: bool = False) -> str:
    """Finite/affine/indefinite trichotomy via exact principal minors.

    Decomposable input: worst block type under Fin < Aff < Ind, unless
    ``require_indecomposable`` asks for an error instead.
    """
    blocks = gcm_block_types(b)
    if require_indecomposable and len(blocks) > 1:
        from .errors import Decomposable

        raise Decomposable(f"GCM splits into {len(blocks)} blocks")
    return max((t for _, t in blocks), key=_TYPE_ORDER.__getitem__)
