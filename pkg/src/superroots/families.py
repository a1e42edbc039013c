"""Built-in Cartan data for the standard contragredient families.

Each family is addressed by a short text name -- ``A(1|1)``, ``C(3)^(1)``,
``q_4^(2)``, ``Q+(1,1,2)``, ``D(2|1;a)`` and so on -- and resolves to a
:class:`FamilySpec`.  From a spec one can

* :func:`construct` the Cartan datum at the family's distinguished base
  vertex (exact matrices over the rationals, a quadratic extension, or a
  rational function field for the formally parametrised families),
* ask for :func:`expected_metadata` (spine/skeleton counts, the symmetry
  group of the spine, component type and parity type), and
* for the families with a closed combinatorial model, build an independent
  :func:`spine_oracle` -- a marked graph of letter words that the explored
  spine must be isomorphic to.

The linear algebra is deliberately independent from the groupoid machinery:
bases are written down as explicit vectors in an epsilon/delta coordinate
space and the Gram matrices are computed from the bilinear form, so the two
routes (constructed datum vs. word model vs. explored graph) can check each
other.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .cartan import CartanDatum
from .errors import InvalidParameters, NoOracle
from .scalars import QQ, ScalarField

__all__ = [
    "FamilySpec",
    "SpineOracle",
    "WordGraph",
    "parse_family",
    "construct",
    "expected_metadata",
    "named_vectors",
    "spine_oracle",
    "family_registry",
]

INFINITE = "infinite"


# ---------------------------------------------------------------------------
# family specification


@dataclass(frozen=True)
class FamilySpec:
    """A parsed family name.

    ``kind`` is the internal dispatch tag, ``params`` the integer
    parameters and ``scalar`` the extra scalar parameter (a
    :class:`~fractions.Fraction`, or ``None`` when the parameter stays
    formal, as in ``D(2|1;a)`` with a transcendental ``a``).
    """

    name: str
    kind: str
    params: Tuple[int, ...] = ()
    scalar: Optional[Fraction] = None

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "params": list(self.params),
            "scalar": None if self.scalar is None else str(self.scalar),
        }


_PATTERNS = (
    (re.compile(r"^A\((\d+)\|(\d+)\)\^\(1\)$"), "Aaff"),
    (re.compile(r"^A\((\d+)\|(\d+)\)$"), "A"),
    (re.compile(r"^B\((\d+)\|(\d+)\)$"), "B"),
    (re.compile(r"^C\((\d+)\)\^\(1\)$"), "Caff"),
    (re.compile(r"^C\((\d+)\)$"), "C"),
    (re.compile(r"^D\((\d+)\|(\d+);([^)]+)\)$"), "D21a"),
    (re.compile(r"^D\((\d+)\|(\d+)\)$"), "D"),
    (re.compile(r"^G\(3\)$"), "G3"),
    (re.compile(r"^F\(4\)$"), "F4"),
    (re.compile(r"^G3_1$"), "G3_1"),
    (re.compile(r"^G3_2$"), "G3_2"),
    (re.compile(r"^q_?(\d+)\^\(2\)$"), "q2"),
    (re.compile(r"^Q\^?([+-]?)\((\d+),(\d+),(\d+)\)$"), "Q"),
    (re.compile(r"^S\(1\|2;([^)]+)\)$"), "S12"),
    (re.compile(r"^NR4\(([^)]+)\)$"), "NR4"),
)


def _parse_scalar(text: str, formal_name: str) -> Optional[Fraction]:
    """``None`` for the formal parameter, a Fraction for a literal value."""
    if text == formal_name:
        return None
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InvalidParameters(
            "cannot read %r as the parameter %s (use %r for the formal one)"
            % (text, formal_name, formal_name)
        ) from None


def parse_family(text: str) -> FamilySpec:
    """Resolve a family name like ``"A(1|1)^(1)"`` or ``"Q(1,1,2)"``."""
    cleaned = text.replace(" ", "")
    for rx, kind in _PATTERNS:
        m = rx.match(cleaned)
        if not m:
            continue
        if kind in ("A", "Aaff"):
            a, b = int(m.group(1)), int(m.group(2))
            if (a, b) == (0, 0):
                raise InvalidParameters("%s needs m + n >= 1" % cleaned)
            suffix = "^(1)" if kind == "Aaff" else ""
            return FamilySpec("A(%d|%d)%s" % (a, b, suffix), kind, (a, b))
        if kind == "B":
            a, b = int(m.group(1)), int(m.group(2))
            if b < 1:
                raise InvalidParameters("B(m|n) needs n >= 1")
            return FamilySpec("B(%d|%d)" % (a, b), kind, (a, b))
        if kind in ("C", "Caff"):
            k = int(m.group(1))
            if k < 2:
                raise InvalidParameters("C(n+1) needs n + 1 >= 2")
            suffix = "^(1)" if kind == "Caff" else ""
            return FamilySpec("C(%d)%s" % (k, suffix), kind, (k,))
        if kind == "D":
            a, b = int(m.group(1)), int(m.group(2))
            if a < 2 or b < 1:
                raise InvalidParameters("D(m|n) needs m >= 2 and n >= 1")
            return FamilySpec("D(%d|%d)" % (a, b), kind, (a, b))
        if kind == "D21a":
            a, b = int(m.group(1)), int(m.group(2))
            if (a, b) != (2, 1):
                raise InvalidParameters(
                    "the one-parameter deformation exists for D(2|1) only"
                )
            val = _parse_scalar(m.group(3), "a")
            if val in (0, -1):
                raise InvalidParameters("D(2|1;a) needs a outside {0, -1}")
            shown = "a" if val is None else str(val)
            return FamilySpec("D(2|1;%s)" % shown, kind, (2, 1), val)
        if kind in ("G3", "F4", "G3_1", "G3_2"):
            return FamilySpec(
                {"G3": "G(3)", "F4": "F(4)"}.get(kind, kind), kind
            )
        if kind == "q2":
            n = int(m.group(1))
            if n < 3:
                raise InvalidParameters("q_n^(2) needs n >= 3")
            return FamilySpec("q_%d^(2)" % n, kind, (n,))
        if kind == "Q":
            branch = m.group(1) or "+"
            mm, nn, tt = (int(m.group(i)) for i in (2, 3, 4))
            if min(mm, nn, tt) < 1 or mm * nn * tt <= 1:
                raise InvalidParameters(
                    "Q(m,n,t) needs positive integers with mnt > 1"
                )
            return FamilySpec(
                "Q%s(%d,%d,%d)" % (branch, mm, nn, tt),
                "Q", (mm, nn, tt), Fraction(1 if branch == "+" else -1),
            )
        if kind == "S12":
            val = _parse_scalar(m.group(1), "b")
            if val is not None and val.denominator == 1:
                raise InvalidParameters("S(1|2;b) needs b outside the integers")
            shown = "b" if val is None else str(val)
            return FamilySpec("S(1|2;%s)" % shown, kind, (1, 2), val)
        if kind == "NR4":
            if m.group(1) != "t":
                raise InvalidParameters(
                    "the non-reflectable rank-4 example is only built over the "
                    "formal parameter: use NR4(t)"
                )
            return FamilySpec("NR4(t)", kind)
    raise InvalidParameters("unknown family name %r" % text)


# ---------------------------------------------------------------------------
# vector realizations
#
# Coordinates are (eps_1..eps_p | delta_1..delta_q) with the form
# +1 on the eps block, -1 on the delta block, zero across.  A root is odd
# exactly when its delta-coordinate sum is odd.  Affine data get one extra
# leading null coordinate for the formal delta.


def _gram_datum(vecs, p, q, null=0, field=QQ):
    size = len(vecs)

    def form(x, y):
        s = sum(x[null + k] * y[null + k] for k in range(p))
        return s - sum(x[null + p + k] * y[null + p + k] for k in range(q))

    rows = [
        [field.scalar(form(vecs[i], vecs[j])) for j in range(size)]
        for i in range(size)
    ]
    parity = tuple(sum(v[null + p:]) % 2 for v in vecs)
    return CartanDatum(field, rows, parity)


def _unit(size, i):
    v = [0] * size
    v[i] = 1
    return v


def _sub(x, y):
    return [a - b for a, b in zip(x, y)]


def _add(x, y):
    return [a + b for a, b in zip(x, y)]


def _a_base(m, n, null=0):
    """eps_1-eps_2, ..., eps_{m+1}-delta_1, ..., delta_n-delta_{n+1}."""
    size = null + (m + 1) + (n + 1)
    eps = [_unit(size, null + i) for i in range(m + 1)]
    dlt = [_unit(size, null + m + 1 + j) for j in range(n + 1)]
    chain = eps + dlt
    return [_sub(chain[i], chain[i + 1]) for i in range(m + n + 1)]


def _build_A(spec):
    m, n = spec.params
    return _gram_datum(_a_base(m, n), m + 1, n + 1)


def _build_B(spec):
    m, n = spec.params
    size = m + n
    eps = [_unit(size, i) for i in range(m)]
    dlt = [_unit(size, m + j) for j in range(n)]
    chain = eps + dlt
    vecs = [_sub(chain[i], chain[i + 1]) for i in range(size - 1)]
    vecs.append(dlt[n - 1])
    return _gram_datum(vecs, m, n)


def _build_C(spec):
    n = spec.params[0] - 1
    size = 1 + n
    eps1 = _unit(size, 0)
    dlt = [_unit(size, 1 + j) for j in range(n)]
    vecs = [_sub(eps1, dlt[0])]
    vecs += [_sub(dlt[j], dlt[j + 1]) for j in range(n - 1)]
    vecs.append([2 * c for c in dlt[n - 1]])
    return _gram_datum(vecs, 1, n)


def _build_D(spec):
    m, n = spec.params
    size = m + n
    eps = [_unit(size, i) for i in range(m)]
    dlt = [_unit(size, m + j) for j in range(n)]
    vecs = [_sub(dlt[j], dlt[j + 1]) for j in range(n - 1)]
    vecs.append(_sub(dlt[n - 1], eps[0]))
    vecs += [_sub(eps[i], eps[i + 1]) for i in range(m - 1)]
    vecs.append(_add(eps[m - 2], eps[m - 1]))
    return _gram_datum(vecs, m, n)


def _build_D21a(spec):
    # Three sl(2) legs with norms tied to the parameter: at a = 1 this
    # degenerates to the plain D(2|1) Gram matrix.
    if spec.scalar is None:
        F = ScalarField(param="a")
        a = F.parameter()
    else:
        F = QQ
        a = F.scalar(spec.scalar)
    zero, one, two = F.zero(), F.one(), F.scalar(2)
    rows = [
        [zero, -one, -a],
        [-one, two, zero],
        [-a, zero, two * a],
    ]
    return CartanDatum(F, rows, (1, 0, 0))


def _build_G3(spec):
    # Base {eps_2, eps_3 - delta_1, delta_1 - eps_2} over the G_2 plane
    # (eps_i, eps_i) = 1, (eps_i, eps_j) = -1/2, (delta_1, delta_1) = -1.
    h = Fraction(1, 2)
    rows = [
        [1, -h, -1],
        [-h, 0, Fraction(3, 2)],
        [-1, Fraction(3, 2), 0],
    ]
    return CartanDatum(QQ, [[QQ.scalar(e) for e in r] for r in rows], (0, 1, 1))


def _build_F4(spec):
    # Base {(delta-eps_1-eps_2-eps_3)/2, eps_3, eps_2-eps_3, eps_1-eps_2}
    # with (eps_i, eps_j) = delta_ij and (delta, delta) = -3.
    h = Fraction(1, 2)
    rows = [
        [0, -h, 0, 0],
        [-h, 1, -1, 0],
        [0, -1, 2, -1],
        [0, 0, -1, 2],
    ]
    return CartanDatum(QQ, [[QQ.scalar(e) for e in r] for r in rows],
                       (1, 0, 0, 0))


def _build_Aaff(spec):
    m, n = spec.params
    size = 1 + (m + 1) + (n + 1)
    finite = _a_base(m, n, null=1)
    # alpha_0 = delta - eps_1 + delta_{n+1}
    alpha0 = _unit(size, 0)
    alpha0 = _sub(alpha0, _unit(size, 1))
    alpha0 = _add(alpha0, _unit(size, size - 1))
    return _gram_datum([alpha0] + finite, m + 1, n + 1, null=1)


def _build_Caff(spec):
    n = spec.params[0] - 1
    size = 1 + 1 + n  # delta, eps_1, delta_1..delta_n
    dlt = [_unit(size, 2 + j) for j in range(n)]
    eps1 = _unit(size, 1)
    alpha0 = _sub(_unit(size, 0), [2 * c for c in dlt[0]])
    vecs = [alpha0]
    vecs += [_sub(dlt[j], dlt[j + 1]) for j in range(n - 1)]
    vecs.append(_sub(dlt[n - 1], eps1))
    vecs.append(_add(dlt[n - 1], eps1))
    return _gram_datum(vecs, 1, n, null=1)


def _build_G3_1(spec):
    h = Fraction(1, 2)
    rows = [
        [0, Fraction(-3, 2), -h, Fraction(3, 2)],
        [Fraction(-3, 2), 3, 0, 0],
        [-h, 0, 1, -1],
        [Fraction(3, 2), 0, -1, 0],
    ]
    return CartanDatum(QQ, [[QQ.scalar(e) for e in r] for r in rows],
                       (1, 0, 0, 1))


def _build_G3_2(spec):
    rows = [
        [0, -3, -1, 3],
        [-3, 6, 0, 0],
        [-1, 0, 2, -2],
        [3, 0, -2, 0],
    ]
    return CartanDatum(QQ, [[QQ.scalar(e) for e in r] for r in rows],
                       (1, 0, 0, 1))


def _build_q2(spec):
    # A cycle of length n: one odd isotropic node, n - 1 even nodes,
    # off-diagonal entries in {0, +-1}, all row sums zero.
    n = spec.params[0]
    rows = [[Fraction(0)] * n for _ in range(n)]
    rows[0][1] = Fraction(1)
    rows[0][n - 1] = Fraction(-1)
    for i in range(1, n):
        rows[i][i] = Fraction(2)
        rows[i][(i + 1) % n] += Fraction(-1)
        rows[i][(i - 1) % n] += Fraction(-1)
    return CartanDatum(QQ, [[QQ.scalar(e) for e in r] for r in rows],
                       (1,) + (0,) * (n - 1))


def _q_quadratic(m, n, t):
    """Integer coefficients (A, B, C) with A a^2 + B a + C = 0."""
    aq = (1 + t) * (n + 1) - 1
    bq = (1 + t) * (1 + (m + 1) * (n + 1)) - (n + 1) - (m + 1)
    cq = (1 + t) * (m + 1) - 1
    return aq, bq, cq


def _build_Q(spec):
    m, n, t = spec.params
    plus = spec.scalar == 1
    aq, bq, cq = _q_quadratic(m, n, t)
    disc = bq * bq - 4 * aq * cq
    root = math.isqrt(disc) if disc >= 0 else None
    if root is not None and root * root == disc:
        # The quadratic splits over the rationals; pick the branch root.
        F = QQ
        r1 = Fraction(-bq + root, 2 * aq)
        r2 = Fraction(-bq - root, 2 * aq)
        candidates = [r for r in (r1, r2) if (r > -1) == plus]
        if len(candidates) != 1:
            raise InvalidParameters(
                "branch root of the Q(m,n,t) quadratic is not isolated"
            )
        a = F.scalar(candidates[0])
    else:
        interval = ("-1", "0") if plus else (str(Fraction(-bq, aq)), "-1")
        F = ScalarField(
            minpoly=[str(Fraction(cq, aq)), str(Fraction(bq, aq)), "1"],
            interval=interval,
        )
        a = F.theta()
    b = -F.scalar(n + 1) - F.one() / a
    c = -F.one() / (a + F.scalar(m + 1))
    rows = [
        [F.zero(), a, F.one()],
        [F.one(), F.zero(), b],
        [c, F.one(), F.zero()],
    ]
    return CartanDatum(F, rows, (1, 1, 1))


def _build_S12(spec):
    if spec.scalar is None:
        F = ScalarField(param="b")
        b = F.parameter()
    else:
        F = QQ
        b = F.scalar(spec.scalar)
    one, zero, two = F.one(), F.zero(), F.scalar(2)
    rows = [
        [zero, one, b - one],
        [one, zero, -b - one],
        [-one, -one, two],
    ]
    return CartanDatum(F, rows, (1, 1, 0))


def _build_NR4(spec):
    F = ScalarField(param="t")
    t = F.parameter()
    one, zero, two = F.one(), F.zero(), F.scalar(2)
    rows = [
        [two, -one, -one, zero],
        [-one, zero, one, -t],
        [-one, one, zero, t],
        [zero, -t, t, two],
    ]
    return CartanDatum(F, rows, (0, 1, 1, 0))


_BUILDERS = {
    "A": _build_A,
    "B": _build_B,
    "C": _build_C,
    "D": _build_D,
    "D21a": _build_D21a,
    "G3": _build_G3,
    "F4": _build_F4,
    "Aaff": _build_Aaff,
    "Caff": _build_Caff,
    "G3_1": _build_G3_1,
    "G3_2": _build_G3_2,
    "q2": _build_q2,
    "Q": _build_Q,
    "S12": _build_S12,
    "NR4": _build_NR4,
}


def construct(spec: FamilySpec) -> CartanDatum:
    """Cartan datum of the family at its distinguished base vertex."""
    try:
        builder = _BUILDERS[spec.kind]
    except KeyError:
        raise InvalidParameters("unknown family kind %r" % spec.kind) from None
    return builder(spec)


# ---------------------------------------------------------------------------
# expected metadata

TRIVIAL = "1"
Z2 = "Z_2"
Z = "Z"
Z_RTIMES_Z2 = "Z rtimes Z_2"


def expected_metadata(spec: FamilySpec) -> dict:
    """Reference counts and classification for the family.

    ``spine``/``skeleton`` are vertex counts (or ``"infinite"``), ``sp_d``
    names the isomorphism class of the spine symmetry group, ``type`` is
    the Fin/Aff/Ind label of the principal block and ``parity_type`` the
    I/II label.  ``None`` marks values that are not pinned for the family.
    """
    k = spec.kind
    if k == "A":
        m, n = spec.params
        return {
            "spine": math.comb(m + n + 2, m + 1),
            "skeleton": math.factorial(m + n + 2),
            "sp_d": Z2 if m == n else TRIVIAL,
            "type": "Fin",
            "parity_type": "I",
            "fully_reflectable": True,
        }
    if k == "B":
        m, n = spec.params
        return {
            "spine": math.comb(m + n, m),
            "skeleton": 2 ** (m + n) * math.factorial(m + n),
            "sp_d": TRIVIAL,
            "type": "Fin",
            "parity_type": "II",
            "fully_reflectable": True,
        }
    if k == "C":
        n = spec.params[0] - 1
        return {
            "spine": 2 * n + 1,
            "skeleton": (2 * n + 1) * 2 ** n * math.factorial(n),
            "sp_d": TRIVIAL,
            "type": "Fin",
            "parity_type": "I",
            "fully_reflectable": True,
        }
    if k in ("D", "D21a"):
        m, n = spec.params
        return {
            "spine": math.comb(m + n, m) + math.comb(m + n - 1, m),
            "skeleton": 2 ** (m + n - 1) * (m + 2 * n)
            * math.factorial(m + n - 1),
            "sp_d": TRIVIAL,
            "type": "Fin",
            "parity_type": "II",
            "fully_reflectable": True,
        }
    if k == "G3":
        return {
            "spine": 4,
            "skeleton": 96,
            "sp_d": TRIVIAL,
            "type": "Fin",
            "parity_type": "II",
            "fully_reflectable": True,
        }
    if k == "F4":
        return {
            "spine": 6,
            "skeleton": 576,
            "sp_d": TRIVIAL,
            "type": "Fin",
            "parity_type": "II",
            "fully_reflectable": True,
        }
    if k == "Aaff":
        m, n = spec.params
        return {
            "spine": INFINITE,
            "skeleton": INFINITE,
            "sp_d": Z_RTIMES_Z2 if m == n else Z,
            "type": "Aff",
            "parity_type": "I",
            "fully_reflectable": True,
        }
    if k == "Caff":
        return {
            "spine": INFINITE,
            "skeleton": INFINITE,
            "sp_d": Z,
            "type": "Aff",
            "parity_type": "I",
            "fully_reflectable": True,
        }
    if k in ("G3_1", "G3_2"):
        return {
            "spine": 5,
            "skeleton": INFINITE,
            "sp_d": TRIVIAL,
            "type": "Aff",
            "parity_type": "II",
            "fully_reflectable": True,
        }
    if k == "q2":
        n = spec.params[0]
        return {
            "spine": 2 ** (n - 1),
            "skeleton": INFINITE,
            "sp_d": Z2 if n % 2 == 0 else TRIVIAL,
            "type": "Aff",
            "parity_type": "II",
            "fully_reflectable": True,
        }
    if k == "Q":
        return {
            "spine": 4,
            "skeleton": INFINITE,
            "sp_d": TRIVIAL,
            "type": "Ind",
            "parity_type": "II",
            "fully_reflectable": True,
        }
    if k == "S12":
        return {
            "spine": INFINITE,
            "skeleton": INFINITE,
            "sp_d": TRIVIAL,
            "type": "Aff",
            "parity_type": "I",
            "fully_reflectable": True,
        }
    if k == "NR4":
        # Not fully reflectable: the type labels describe the principal
        # block (a single even root) rather than a Kac-Moody component.
        return {
            "spine": INFINITE,
            "skeleton": INFINITE,
            "sp_d": None,
            "type": "Fin",
            "parity_type": "II",
            "fully_reflectable": False,
        }
    raise InvalidParameters("unknown family kind %r" % spec.kind)


def named_vectors(spec: FamilySpec) -> Dict[str, Tuple[int, ...]]:
    """Family-specific named roots in base-vertex coordinates.

    Generic names (``alpha_i`` unit vectors) are handled by callers; this
    map only lists distinguished vectors like the null root ``delta``.
    """
    k = spec.kind
    out: Dict[str, Tuple[int, ...]] = {}
    if k == "Aaff":
        m, n = spec.params
        out["delta"] = (1,) * (m + n + 2)
        if m == n:
            out["str"] = (0,) + tuple(range(1, n + 2)) + tuple(
                range(n, 0, -1))
    elif k == "Caff":
        n = spec.params[0] - 1
        out["delta"] = (1,) + (2,) * (n - 1) + (1, 1)
    elif k in ("G3_1", "G3_2"):
        out["delta"] = (2, 1, 3, 2)
    elif k == "q2":
        out["delta"] = (1,) * spec.params[0]
    elif k == "Q":
        out["delta"] = (1, 1, 1)
    elif k == "NR4":
        out["delta"] = (1, 1, 1, 0)
        out["str"] = (1, 2, 0, 0)
        out["beta"] = (0, 0, 0, 1)
    return out


# ---------------------------------------------------------------------------
# combinatorial spine models


class WordGraph:
    """A finite marked graph over opaque vertex labels.

    Duck-compatible with explored graphs for isomorphism checks: it only
    needs ``len`` and the ``edges`` triples ``(i, j, mark)`` with i < j.
    """

    __slots__ = ("labels", "edges", "complete")

    def __init__(self, labels, edges):
        self.labels = tuple(labels)
        seen = set()
        for e in edges:
            i, j, mark = e
            assert 0 <= i < j < len(self.labels)
            assert e not in seen
            seen.add(e)
        self.edges = tuple(sorted(edges))
        self.complete = True

    def __len__(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class SpineOracle:
    """Closed-form spine model plus the counts it certifies."""

    graph: WordGraph
    spine_count: int
    skeleton_count: object  # int or "infinite"


def _word_graph(m_eps: int, n_delta: int, signed: bool) -> WordGraph:
    """Words of eps/delta letters with adjacent-swap edges.

    ``signed`` enables the variant where words ending in a delta carry an
    extra +- sign, there are no edges between opposite signs, and a swap
    in the last two positions is marked by the last index when the signed
    endpoint carries "-".
    """
    length = m_eps + n_delta
    words = sorted(
        {
            w
            for w in (
                "".join(p)
                for p in _distinct_arrangements("e" * m_eps + "d" * n_delta)
            )
        }
    )
    labels = []
    for w in words:
        if signed and w.endswith("d"):
            labels.append((w, "+"))
            labels.append((w, "-"))
        else:
            labels.append((w, ""))
    index = {lab: i for i, lab in enumerate(labels)}
    edges = set()
    for (w, s), i in index.items():
        for pos in range(length - 1):
            if w[pos] == w[pos + 1]:
                continue
            swapped = w[:pos] + w[pos + 1] + w[pos] + w[pos + 2:]
            if not signed or pos < length - 2:
                j = index[(swapped, s)]
                mark = pos
            else:
                # The swap moves the last letter across the eps/delta
                # boundary: the unsigned endpoint meets both signs.
                if s in ("+", "-"):
                    j = index[(swapped, "")]
                    mark = pos if s == "+" else pos + 1
                else:
                    for sign, mark in (("+", pos), ("-", pos + 1)):
                        j = index[(swapped, sign)]
                        edges.add((min(i, j), max(i, j), mark))
                    continue
            edges.add((min(i, j), max(i, j), mark))
    return WordGraph(labels, edges)


def _distinct_arrangements(word: str):
    letters = sorted(word)
    n = len(letters)
    if n == 0:
        yield ()
        return
    # itertools.permutations repeats equal letters; do a small multiset DFS.
    counts = {c: letters.count(c) for c in set(letters)}
    out = []

    def rec(prefix):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for c in sorted(counts):
            if counts[c]:
                counts[c] -= 1
                prefix.append(c)
                yield from rec(prefix)
                prefix.pop()
                counts[c] += 1

    yield from rec(out)


def spine_oracle(spec: FamilySpec) -> SpineOracle:
    """Independent combinatorial model of the spine, where one exists."""
    meta = expected_metadata(spec)
    k = spec.kind
    if k == "A":
        m, n = spec.params
        graph = _word_graph(m + 1, n + 1, signed=False)
    elif k == "B":
        m, n = spec.params
        graph = _word_graph(m, n, signed=False)
    elif k in ("D", "D21a"):
        m, n = spec.params
        graph = _word_graph(m, n, signed=True)
    elif k == "C":
        n = spec.params[0] - 1
        marks = list(range(n)) + [n] + list(range(n - 2, -1, -1))
        graph = WordGraph(
            ["v%d" % (i - n) for i in range(2 * n + 1)],
            [(i, i + 1, marks[i]) for i in range(2 * n)],
        )
    elif k == "Q":
        graph = WordGraph(
            ["center", "leaf1", "leaf2", "leaf3"],
            [(0, 1, 0), (0, 2, 1), (0, 3, 2)],
        )
    else:
        raise NoOracle(
            "no closed combinatorial spine model for %s; expected metadata "
            "is still available" % spec.name
        )
    assert len(graph) == meta["spine"]
    return SpineOracle(graph, meta["spine"], meta["skeleton"])


# ---------------------------------------------------------------------------
# registry


_REGISTRY_NAMES = (
    "A(1|0)",
    "A(1|1)",
    "A(2|1)",
    "B(1|1)",
    "B(2|1)",
    "C(2)",
    "C(3)",
    "D(2|1)",
    "D(2|2)",
    "D(2|1;a)",
    "G(3)",
    "F(4)",
    "A(1|0)^(1)",
    "A(1|1)^(1)",
    "C(3)^(1)",
    "G3_1",
    "G3_2",
    "q_3^(2)",
    "q_4^(2)",
    "Q+(1,1,2)",
    "Q-(1,1,2)",
    "S(1|2;b)",
    "NR4(t)",
)


def family_registry() -> Tuple[FamilySpec, ...]:
    """Representative instances of every built-in family."""
    return tuple(parse_family(name) for name in _REGISTRY_NAMES)
